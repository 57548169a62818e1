//! Exact dense linear algebra over Q(φ).
//!
//! Nullspaces are computed with fraction-free (Bareiss) elimination over the
//! integer ring Z[φ]; every row is first rescaled by a rational so that its
//! entries are integral. Small square systems (determinants, inverses) use
//! plain Gauss-Jordan over the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::field::{FieldElement, Rational, ZPhi};

/// Row echelon form produced by fraction-free elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<ZPhi>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integral_row(row: &[FieldElement]) -> Vec<ZPhi> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(&x.denom_lcm());
    }
    let s = Rational::from_integer(lcm);
    row.iter()
        .map(|x| ZPhi::try_from(&x.scale(&s)).expect("row cleared to Z[phi]"))
        .collect()
}

/// Fraction-free Gaussian elimination. All divisions are exact in Z[φ].
pub fn bareiss_echelon(matrix: &[Vec<FieldElement>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<ZPhi>> = matrix.iter().map(|r| integral_row(r)).collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = ZPhi::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..ncols {
                let v = pivot_row[c].mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            // entries left of c are already zero
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(matrix: &[Vec<FieldElement>], ncols: usize) -> usize {
    bareiss_echelon(matrix, ncols).rank()
}

/// Basis of the right nullspace `{v : M v = 0}`, one vector per free column.
/// Each vector has a 1 in its free column and zeros in the other free columns.
pub fn nullspace(matrix: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let ech = bareiss_echelon(matrix, ncols);
    let rows: Vec<Vec<FieldElement>> = ech
        .rows
        .iter()
        .map(|r| r.iter().map(ZPhi::to_field).collect())
        .collect();
    let pivot_set: Vec<bool> = (0..ncols).map(|c| ech.pivots.contains(&c)).collect();
    let pivot_inv: Vec<FieldElement> = ech
        .pivots
        .iter()
        .enumerate()
        .map(|(i, &c)| rows[i][c].inv().expect("nonzero pivot"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !pivot_set[c]) {
        let mut v = vec![FieldElement::zero(); ncols];
        v[free] = FieldElement::one();
        for i in (0..ech.rank()).rev() {
            let pc = ech.pivots[i];
            let mut s = FieldElement::zero();
            for j in pc + 1..ncols {
                if !v[j].is_zero() && !rows[i][j].is_zero() {
                    s += &(&rows[i][j] * &v[j]);
                }
            }
            v[pc] = -(&s * &pivot_inv[i]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix by Gaussian elimination over the field.
pub fn determinant(matrix: &[Vec<FieldElement>]) -> FieldElement {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = FieldElement::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return FieldElement::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let inv = m[c][c].inv().expect("nonzero pivot");
        det = &det * &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= &t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(matrix: &[Vec<FieldElement>]) -> Option<Vec<Vec<FieldElement>>> {
    let n = matrix.len();
    let mut m: Vec<Vec<FieldElement>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    FieldElement::one()
                } else {
                    FieldElement::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(p, c);
        let inv = m[c][c].inv().ok()?;
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..2 * n {
                let t = &f * &m[c][j];
                m[i][j] -= &t;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
