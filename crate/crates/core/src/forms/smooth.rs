//! Exact smoothness test for plane curves.
//!
//! In characteristic zero the singular points of `V(f)` are the common zeros
//! of the three partials. After a coordinate change we eliminate `y` from two
//! combinations `A, B` and `A, C` of the partials. Their resultants are binary
//! forms in `(x, z)` whose common roots contain the projections of all
//! singular points; if they have none, and `[0:1:0]` is not singular, the
//! curve is smooth. A common root is either a real singularity or an artefact
//! of the projection, so we retry with fresh random coordinates and only
//! report a singularity once an exact witness has been checked.
//!
//! The resultants are first computed modulo a prime `𝔭` of `Z[φ]` with
//! residue field `F_p`. Reduction commutes with the resultant of the two
//! binary forms, so if the reductions have no common root on `P¹(F̄_p)` the
//! exact ones have none either. This settles smooth curves quickly; the exact
//! computation is only needed when the reductions share a root.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::Modulus;
use super::univariate::UPoly;
use super::{gcd_forms, FormError, HomForm};
use crate::field::FieldElement;
use crate::linalg;
use crate::projective::PlanePoint;

const ATTEMPTS: usize = 8;
const PRIMES: usize = 3;

/// Prime and image of φ used for a modular certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularTrail {
    pub p: u64,
    pub phi: u64,
}

/// One elimination round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessAttempt {
    /// Integer coordinate change `x ↦ M x` applied before elimination.
    pub transform: [[i64; 3]; 3],
    /// Integer weights `(s, t)` giving `B = f_y + s f_z`, `C = f_z + t f_y`.
    pub weights: [i64; 2],
    /// Degrees of the dehomogenized resultants; `None` if identically zero.
    pub resultant_degrees: [Option<usize>; 2],
    /// Degree of their gcd, `None` when a resultant vanished.
    pub gcd_degree: Option<usize>,
    pub common_root_at_infinity: bool,
    /// Set when the reduced resultants already have no common root.
    pub modular: Option<ModularTrail>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularWitness {
    /// A point where `f` and all partials vanish.
    Point { point: PlanePoint },
    /// A common factor of the partials; `f` is singular along all of it.
    CommonComponent { factor: HomForm },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    Smooth {
        attempts: Vec<SmoothnessAttempt>,
    },
    Singular {
        witness: SingularWitness,
        attempts: Vec<SmoothnessAttempt>,
    },
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessVerdict::Smooth { .. })
    }
}

/// Decides smoothness of `V(f) ⊂ P²` over the algebraic closure.
pub fn plane_curve_is_smooth(f: &HomForm, seed: u64) -> Result<SmoothnessVerdict, FormError> {
    if f.nvars() != 3 {
        return Err(FormError::UnsupportedVariables(f.nvars()));
    }
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    if f.degree() <= 1 {
        return Ok(SmoothnessVerdict::Smooth {
            attempts: Vec::new(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = Vec::new();
    let mut saw_zero_resultant = false;
    for k in 0..ATTEMPTS {
        let (m, weights) = if k == 0 {
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0])
        } else {
            (
                random_transform(&mut rng),
                [rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
            )
        };
        let mf = to_field(&m);
        let g = f.linear_substitute(&mf);
        let (gx, gy, gz) = (g.derivative(0), g.derivative(1), g.derivative(2));
        let s = FieldElement::from_int(weights[0]);
        let t = FieldElement::from_int(weights[1]);
        let a = gx.clone();
        let b = gy.add(&gz.scale(&s))?;
        let c = gz.add(&gy.scale(&t))?;

        if let Some(p) = check_point(&[&gx, &gy, &gz], &[0, 1, 0], &mf) {
            attempts.push(SmoothnessAttempt {
                transform: m,
                weights,
                resultant_degrees: [None, None],
                gcd_degree: None,
                common_root_at_infinity: false,
                modular: None,
            });
            return Ok(SmoothnessVerdict::Singular {
                witness: SingularWitness::Point { point: p },
                attempts,
            });
        }

        let n = (g.degree() - 1) as usize;
        if let Some(trail) = modular_certificate(&a, &b, &c, n) {
            attempts.push(SmoothnessAttempt {
                transform: m,
                weights,
                resultant_degrees: [Some(trail.1[0]), Some(trail.1[1])],
                gcd_degree: Some(0),
                common_root_at_infinity: false,
                modular: Some(trail.0),
            });
            return Ok(SmoothnessVerdict::Smooth { attempts });
        }
        let r1 = resultant_y(&a, &b, n);
        let r2 = resultant_y(&a, &c, n);
        let mut attempt = SmoothnessAttempt {
            transform: m,
            weights,
            resultant_degrees: [r1.degree(), r2.degree()],
            gcd_degree: None,
            common_root_at_infinity: false,
            modular: None,
        };
        if r1.is_zero() || r2.is_zero() {
            saw_zero_resultant = true;
            attempts.push(attempt);
            continue;
        }
        let top = n * n;
        let at_infinity = r1.coeff(top).is_zero() && r2.coeff(top).is_zero();
        let h = r1.gcd(&r2);
        let hd = h.degree().expect("nonzero");
        attempt.gcd_degree = Some(hd);
        attempt.common_root_at_infinity = at_infinity;
        attempts.push(attempt);
        if hd == 0 && !at_infinity {
            return Ok(SmoothnessVerdict::Smooth { attempts });
        }
        let mut candidates = Vec::new();
        if let Some(x0) = h.squarefree().linear_root() {
            candidates.push([x0, FieldElement::one()]);
        }
        if at_infinity {
            candidates.push([FieldElement::one(), FieldElement::zero()]);
        }
        for [x0, z0] in candidates {
            if let Some(p) = witness_over(&[&gx, &gy, &gz], &x0, &z0, &mf) {
                return Ok(SmoothnessVerdict::Singular {
                    witness: SingularWitness::Point { point: p },
                    attempts,
                });
            }
        }
    }
    if saw_zero_resultant {
        let (fx, fy, fz) = (f.derivative(0), f.derivative(1), f.derivative(2));
        let h = gcd_forms(&gcd_forms(&fx, &fy)?, &fz)?;
        if h.degree() > 0 {
            return Ok(SmoothnessVerdict::Singular {
                witness: SingularWitness::CommonComponent { factor: h },
                attempts,
            });
        }
    }
    Err(FormError::Indeterminate(ATTEMPTS))
}

/// Checks the two resultants modulo a few primes; returns the prime and the
/// degrees of the reduced resultants on success.
fn modular_certificate(
    a: &HomForm,
    b: &HomForm,
    c: &HomForm,
    n: usize,
) -> Option<(ModularTrail, [usize; 2])> {
    let one = FieldElement::one();
    'primes: for k in 0..PRIMES {
        let md = Modulus::nth(k);
        let count = n * n + 1;
        let mut values = [Vec::with_capacity(count), Vec::with_capacity(count)];
        for x in 0..count as i64 {
            let xf = FieldElement::from_int(x);
            let mut reduced = Vec::with_capacity(3);
            for p in [a, b, c] {
                let coeffs: Option<Vec<u64>> = coeffs_in_y(p, &xf, &one, n)
                    .iter()
                    .map(|v| md.reduce(v))
                    .collect();
                let Some(coeffs) = coeffs else {
                    continue 'primes;
                };
                reduced.push(coeffs);
            }
            values[0].push(md.determinant(sylvester_mod(&reduced[0], &reduced[1])));
            values[1].push(md.determinant(sylvester_mod(&reduced[0], &reduced[2])));
        }
        let r1 = md.interpolate(&values[0]);
        let r2 = md.interpolate(&values[1]);
        let top = n * n;
        if r1[top] == 0 && r2[top] == 0 {
            continue;
        }
        if md.gcd_degree(&r1, &r2) == Some(0) {
            let deg = |r: &[u64]| r.iter().rposition(|&v| v != 0).unwrap_or(0);
            return Some((
                ModularTrail {
                    p: md.p,
                    phi: md.phi,
                },
                [deg(&r1), deg(&r2)],
            ));
        }
    }
    None
}

fn sylvester_mod(a: &[u64], b: &[u64]) -> Vec<Vec<u64>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(a, n), (b, m)] {
        for i in 0..shifts {
            let mut row = vec![0u64; size];
            for (j, &c) in src.iter().rev().enumerate() {
                row[i + j] = c;
            }
            rows.push(row);
        }
    }
    rows
}

fn random_transform(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in &mut m {
            for e in row.iter_mut() {
                *e = rng.gen_range(-5..=5);
            }
        }
        if !linalg::determinant(&to_field(&m)).is_zero() {
            return m;
        }
    }
}

fn to_field(m: &[[i64; 3]; 3]) -> Vec<Vec<FieldElement>> {
    m.iter()
        .map(|r| r.iter().map(|&v| FieldElement::from_int(v)).collect())
        .collect()
}

/// Coefficients of `p(x0, y, z0)` in ascending powers of `y`, padded to `n + 1`.
fn coeffs_in_y(p: &HomForm, x0: &FieldElement, z0: &FieldElement, n: usize) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); n + 1];
    for (e, c) in p.poly().terms() {
        let v = &(c * &x0.pow(e[0])) * &z0.pow(e[2]);
        out[e[1] as usize] += &v;
    }
    out
}

fn sylvester(a: &[FieldElement], b: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(a, n), (b, m)] {
        for i in 0..shifts {
            let mut row = vec![FieldElement::zero(); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `Res_y(a, b)(x, 1)` with both taken of formal degree `n` in `y`, recovered
/// by interpolation; its `x^{n²}` coefficient is the value at `[1:0]`.
fn resultant_y(a: &HomForm, b: &HomForm, n: usize) -> UPoly {
    let one = FieldElement::one();
    let count = n * n + 1;
    let xs: Vec<FieldElement> = (0..count as i64).map(FieldElement::from_int).collect();
    let ys: Vec<FieldElement> = xs
        .iter()
        .map(|x| {
            linalg::determinant(&sylvester(
                &coeffs_in_y(a, x, &one, n),
                &coeffs_in_y(b, x, &one, n),
            ))
        })
        .collect();
    UPoly::interpolate(&xs, &ys)
}

/// Searches the fibre over `[x0 : z0]` for a common zero of the partials.
fn witness_over(
    partials: &[&HomForm; 3],
    x0: &FieldElement,
    z0: &FieldElement,
    m: &[Vec<FieldElement>],
) -> Option<PlanePoint> {
    let n = partials[0].degree() as usize;
    let mut g = UPoly::new(vec![]);
    for p in partials {
        g = g.gcd(&UPoly::new(coeffs_in_y(p, x0, z0, n)));
    }
    let y0 = g.linear_root()?;
    let v = [x0.clone(), y0, z0.clone()];
    check_coords(partials, &v, m)
}

fn check_point(
    partials: &[&HomForm; 3],
    v: &[i64; 3],
    m: &[Vec<FieldElement>],
) -> Option<PlanePoint> {
    check_coords(partials, &v.map(FieldElement::from_int), m)
}

/// Maps a verified common zero back to the original coordinates.
fn check_coords(
    partials: &[&HomForm; 3],
    v: &[FieldElement; 3],
    m: &[Vec<FieldElement>],
) -> Option<PlanePoint> {
    let vv = v.to_vec();
    if !partials.iter().all(|p| p.poly().evaluate(&vv).is_zero()) {
        return None;
    }
    let image: [FieldElement; 3] = std::array::from_fn(|i| {
        m[i].iter()
            .zip(v)
            .fold(FieldElement::zero(), |acc, (a, b)| &acc + &(a * b))
    });
    PlanePoint::new(image).ok()
}
