//! Points, planes and lines of P³ (and points of P²) over Q(φ).
//!
//! Every flat is stored in a canonical representative (see
//! [`normalize_projective`]) so structural equality is projective equality.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::{normalize_projective, FieldElement};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("points do not span a line (they coincide)")]
    DegenerateSpan,
    #[error("points are collinear and do not span a plane")]
    Collinear,
    #[error("lines are identical")]
    IdenticalLines,
    #[error("lines do not meet")]
    Skew,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("coordinates do not satisfy the Pluecker relation")]
    NotALine,
}

fn dot(u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let mut s = FieldElement::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s += &(a * b);
        }
    }
    s
}

fn det3(m: [[&FieldElement; 3]; 3]) -> FieldElement {
    let t0 = m[0][0] * &(m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let t1 = m[0][1] * &(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    let t2 = m[0][2] * &(m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    t0 - t1 + t2
}

/// The four signed 3×3 minors of a 3×4 matrix: the linear form vanishing on
/// its three rows (all zero iff the rows are dependent).
fn cross4(
    p: &[FieldElement; 4],
    q: &[FieldElement; 4],
    r: &[FieldElement; 4],
) -> [FieldElement; 4] {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        det3([
            [&p[cols[0]], &p[cols[1]], &p[cols[2]]],
            [&q[cols[0]], &q[cols[1]], &q[cols[2]]],
            [&r[cols[0]], &r[cols[1]], &r[cols[2]]],
        ])
    };
    [minor(0), -minor(1), minor(2), -minor(3)]
}

macro_rules! homogeneous_type {
    ($(#[$meta:meta])* $name:ident, $n:expr) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name([FieldElement; $n]);

        impl $name {
            pub fn new(coords: [FieldElement; $n]) -> Result<Self, ProjectiveError> {
                let mut c = coords;
                if !normalize_projective(&mut c) {
                    return Err(ProjectiveError::ZeroVector);
                }
                Ok($name(c))
            }

            pub fn from_ints(coords: [i64; $n]) -> Result<Self, ProjectiveError> {
                Self::new(coords.map(FieldElement::from_int))
            }

            pub fn coords(&self) -> &[FieldElement; $n] {
                &self.0
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, " : ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                self.0.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let c = <[FieldElement; $n]>::deserialize(d)?;
                $name::new(c).map_err(serde::de::Error::custom)
            }
        }
    };
}

homogeneous_type!(
    /// A point `[x:y:z:w]` of P³.
    ProjPoint,
    4
);
homogeneous_type!(
    /// A plane `{ax + by + cz + dw = 0}` of P³, stored by its coefficients.
    ProjPlane,
    4
);
homogeneous_type!(
    /// A point `[x:y:z]` of the projective plane.
    PlanePoint,
    3
);

impl ProjPoint {
    /// The plane whose coefficient tuple equals this point's coordinates.
    pub fn dual_plane(&self) -> ProjPlane {
        ProjPlane(self.0.clone())
    }
}

impl ProjPlane {
    /// Plane through three non-collinear points.
    pub fn through(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<Self, ProjectiveError> {
        ProjPlane::new(cross4(&p.0, &q.0, &r.0)).map_err(|_| ProjectiveError::Collinear)
    }

    /// Plane spanned by a line and a point off it.
    pub fn through_line(l: &ProjLine, p: &ProjPoint) -> Result<Self, ProjectiveError> {
        Self::through(&l.through[0], &l.through[1], p)
    }

    pub fn evaluate(&self, p: &ProjPoint) -> FieldElement {
        dot(&self.0, &p.0)
    }
}

pub fn point_on_plane(p: &ProjPoint, v: &ProjPlane) -> bool {
    v.evaluate(p).is_zero()
}

/// A line of P³ in Plücker coordinates `(p01, p02, p03, p12, p13, p23)`,
/// together with two points spanning it.
#[derive(Clone)]
pub struct ProjLine {
    pluecker: [FieldElement; 6],
    through: [ProjPoint; 2],
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl ProjLine {
    pub fn pluecker(&self) -> &[FieldElement; 6] {
        &self.pluecker
    }

    pub fn spanning_points(&self) -> &[ProjPoint; 2] {
        &self.through
    }

    /// Rebuilds a line from Plücker coordinates.
    pub fn from_pluecker(coords: [FieldElement; 6]) -> Result<Self, ProjectiveError> {
        let [p01, p02, p03, p12, p13, p23] = &coords;
        if !(p01 * p23 - p02 * p13 + p03 * p12).is_zero() {
            return Err(ProjectiveError::NotALine);
        }
        // Columns of the skew matrix L_ij = p_i q_j - p_j q_i are points of the line.
        let mut m = vec![vec![FieldElement::zero(); 4]; 4];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            m[i][j] = coords[k].clone();
            m[j][i] = -&coords[k];
        }
        let cols: Vec<[FieldElement; 4]> = (0..4)
            .map(|c| {
                [
                    m[0][c].clone(),
                    m[1][c].clone(),
                    m[2][c].clone(),
                    m[3][c].clone(),
                ]
            })
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        let first = cols.first().ok_or(ProjectiveError::ZeroVector)?;
        let p = ProjPoint::new(first.clone())?;
        for c in &cols[1..] {
            let q = ProjPoint::new(c.clone())?;
            if q != p {
                return line_through(&p, &q);
            }
        }
        Err(ProjectiveError::DegenerateSpan)
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.pluecker == other.pluecker
    }
}

impl Eq for ProjLine {}

impl Hash for ProjLine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.pluecker.hash(state)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjLine{:?}", self.pluecker)
    }
}

impl Serialize for ProjLine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.pluecker.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjLine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = <[FieldElement; 6]>::deserialize(d)?;
        ProjLine::from_pluecker(c).map_err(serde::de::Error::custom)
    }
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, ProjectiveError> {
    let (a, b) = (&p.0, &q.0);
    let mut pl = PAIRS.map(|(i, j)| &a[i] * &b[j] - &a[j] * &b[i]);
    if !normalize_projective(&mut pl) {
        return Err(ProjectiveError::DegenerateSpan);
    }
    Ok(ProjLine {
        pluecker: pl,
        through: [p.clone(), q.clone()],
    })
}

pub fn point_on_line(p: &ProjPoint, l: &ProjLine) -> bool {
    cross4(&l.through[0].0, &l.through[1].0, &p.0)
        .iter()
        .all(FieldElement::is_zero)
}

/// Bilinear Plücker pairing; zero iff the lines are coplanar.
pub fn pluecker_pairing(l1: &ProjLine, l2: &ProjLine) -> FieldElement {
    let [p01, p02, p03, p12, p13, p23] = &l1.pluecker;
    let [q01, q02, q03, q12, q13, q23] = &l2.pluecker;
    p01 * q23 - p02 * q13 + p03 * q12 + p23 * q01 - p13 * q02 + p12 * q03
}

/// Whether two distinct lines meet (false means skew).
pub fn lines_meet(l1: &ProjLine, l2: &ProjLine) -> Result<bool, ProjectiveError> {
    if l1 == l2 {
        return Err(ProjectiveError::IdenticalLines);
    }
    Ok(pluecker_pairing(l1, l2).is_zero())
}

/// Common point of two distinct meeting lines.
pub fn intersection_point(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, ProjectiveError> {
    if !lines_meet(l1, l2)? {
        return Err(ProjectiveError::Skew);
    }
    // a p1 + b q1 - c p2 - d q2 = 0
    let cols = [
        &l1.through[0].0,
        &l1.through[1].0,
        &l2.through[0].0,
        &l2.through[1].0,
    ];
    let m: Vec<Vec<FieldElement>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    if c < 2 {
                        cols[c][r].clone()
                    } else {
                        -&cols[c][r]
                    }
                })
                .collect()
        })
        .collect();
    let ns = linalg::nullspace(&m, 4);
    let v = ns.first().ok_or(ProjectiveError::Skew)?;
    let pt: [FieldElement; 4] =
        std::array::from_fn(|i| &v[0] * &l1.through[0].0[i] + &v[1] * &l1.through[1].0[i]);
    ProjPoint::new(pt)
}

pub fn line_in_plane(l: &ProjLine, v: &ProjPlane) -> bool {
    point_on_plane(&l.through[0], v) && point_on_plane(&l.through[1], v)
}

/// Invertible 4×4 matrix acting on P³ by `p ↦ M p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMatrix {
    rows: [[FieldElement; 4]; 4],
    inverse: [[FieldElement; 4]; 4],
}

fn to_array(m: Vec<Vec<FieldElement>>) -> [[FieldElement; 4]; 4] {
    let mut it = m
        .into_iter()
        .map(|r| <[FieldElement; 4]>::try_from(r).expect("4 columns"));
    std::array::from_fn(|_| it.next().expect("4 rows"))
}

impl ProjMatrix {
    pub fn new(rows: [[FieldElement; 4]; 4]) -> Result<Self, ProjectiveError> {
        let v: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.to_vec()).collect();
        let inv = linalg::inverse(&v).ok_or(ProjectiveError::SingularMatrix)?;
        Ok(ProjMatrix {
            rows,
            inverse: to_array(inv),
        })
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Result<Self, ProjectiveError> {
        Self::new(rows.map(|r| r.map(FieldElement::from_int)))
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).expect("identity")
    }

    /// A matrix sending `vertex` to `[0:0:0:1]`. Its inverse has columns
    /// `e_i, e_j, e_k, vertex`, dropping the unit vector at the last nonzero
    /// coordinate of the vertex.
    pub fn sending_to_last(vertex: &ProjPoint) -> Self {
        let k = (0..4)
            .rev()
            .find(|&i| !vertex.0[i].is_zero())
            .expect("nonzero vertex");
        let units: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        let mut inv = vec![vec![FieldElement::zero(); 4]; 4];
        for (col, &u) in units.iter().enumerate() {
            inv[u][col] = FieldElement::one();
        }
        for r in 0..4 {
            inv[r][3] = vertex.0[r].clone();
        }
        let m = linalg::inverse(&inv).expect("unit vectors and vertex are independent");
        ProjMatrix {
            rows: to_array(m),
            inverse: to_array(inv),
        }
    }

    pub fn rows(&self) -> &[[FieldElement; 4]; 4] {
        &self.rows
    }

    pub fn inverse_rows(&self) -> &[[FieldElement; 4]; 4] {
        &self.inverse
    }

    pub fn inverse(&self) -> ProjMatrix {
        ProjMatrix {
            rows: self.inverse.clone(),
            inverse: self.rows.clone(),
        }
    }

    pub fn apply_raw(&self, v: &[FieldElement; 4]) -> [FieldElement; 4] {
        std::array::from_fn(|i| dot(&self.rows[i], v))
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.apply_raw(&p.0)).expect("invertible map")
    }

    /// Image of a plane: coefficients transform by the inverse transpose.
    pub fn apply_plane(&self, v: &ProjPlane) -> ProjPlane {
        let c: [FieldElement; 4] = std::array::from_fn(|j| {
            (0..4).fold(FieldElement::zero(), |acc, i| {
                acc + &v.0[i] * &self.inverse[i][j]
            })
        });
        ProjPlane::new(c).expect("invertible map")
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        line_through(
            &self.apply_point(&l.through[0]),
            &self.apply_point(&l.through[1]),
        )
        .expect("invertible map")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    #[test]
    fn canonical_points() {
        let p = ProjPoint::new([
            FieldElement::from_ints(0, 0),
            FieldElement::from_ints(0, -2),
            FieldElement::from_ints(4, 0),
            FieldElement::from_ints(2, 2),
        ])
        .unwrap();
        // [0 : -2φ : 4 : 2φ²] / (-2φ) = [0 : 1 : -2/φ : -φ] = [0 : 1 : 2 - 2φ : -φ]
        assert_eq!(
            p.coords(),
            &[
                FieldElement::zero(),
                FieldElement::one(),
                FieldElement::from_ints(2, -2),
                FieldElement::from_ints(0, -1)
            ]
        );
        assert_eq!(
            ProjPoint::from_ints([0, 0, 0, 0]),
            Err(ProjectiveError::ZeroVector)
        );
    }

    #[test]
    fn axis_line() {
        let l = line_through(&pt([1, 0, 0, 0]), &pt([0, 1, 0, 0])).unwrap();
        let expect = [1, 0, 0, 0, 0, 0].map(FieldElement::from_int);
        assert_eq!(l.pluecker(), &expect);
        assert_eq!(
            line_through(&pt([1, 2, 3, 4]), &pt([2, 4, 6, 8])).unwrap_err(),
            ProjectiveError::DegenerateSpan
        );
    }

    #[test]
    fn meeting_and_skew() {
        let a = line_through(&pt([1, 0, 0, 0]), &pt([0, 1, 0, 0])).unwrap();
        let b = line_through(&pt([1, 0, 0, 0]), &pt([0, 0, 1, 0])).unwrap();
        let c = line_through(&pt([0, 0, 1, 0]), &pt([0, 0, 0, 1])).unwrap();
        assert!(lines_meet(&a, &b).unwrap());
        assert!(!lines_meet(&a, &c).unwrap());
        assert_eq!(
            lines_meet(&a, &a.clone()),
            Err(ProjectiveError::IdenticalLines)
        );
        assert_eq!(intersection_point(&a, &b).unwrap(), pt([1, 0, 0, 0]));
        assert_eq!(intersection_point(&a, &c), Err(ProjectiveError::Skew));
    }

    #[test]
    fn plane_through_points() {
        let v =
            ProjPlane::through(&pt([1, 0, 0, 0]), &pt([0, 1, 0, 0]), &pt([1, 1, 1, 0])).unwrap();
        assert_eq!(v, ProjPlane::from_ints([0, 0, 0, 1]).unwrap());
        let l = line_through(&pt([1, 0, 0, 0]), &pt([0, 1, 0, 0])).unwrap();
        assert!(line_in_plane(&l, &v));
        assert!(point_on_line(&pt([3, -5, 0, 0]), &l));
        assert!(!point_on_line(&pt([3, -5, 1, 0]), &l));
        assert_eq!(
            ProjPlane::through(&pt([1, 0, 0, 0]), &pt([0, 1, 0, 0]), &pt([1, 1, 0, 0])),
            Err(ProjectiveError::Collinear)
        );
    }

    #[test]
    fn pluecker_roundtrip() {
        let l = line_through(&pt([1, 2, 0, -1]), &pt([0, 1, 3, 5])).unwrap();
        let back = ProjLine::from_pluecker(l.pluecker().clone()).unwrap();
        assert_eq!(back, l);
        let bad = [1, 0, 0, 0, 0, 1].map(FieldElement::from_int);
        assert_eq!(
            ProjLine::from_pluecker(bad).unwrap_err(),
            ProjectiveError::NotALine
        );
    }

    #[test]
    fn vertex_to_last() {
        let v = pt([3, -2, 7, 5]);
        let m = ProjMatrix::sending_to_last(&v);
        assert_eq!(m.apply_point(&v), pt([0, 0, 0, 1]));
        let v = pt([3, -2, 7, 0]);
        let m = ProjMatrix::sending_to_last(&v);
        assert_eq!(m.apply_point(&v), pt([0, 0, 0, 1]));
        assert_eq!(ProjMatrix::identity().apply_point(&v), v);
        assert_eq!(
            ProjMatrix::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0]])
                .unwrap_err(),
            ProjectiveError::SingularMatrix
        );
    }
}
