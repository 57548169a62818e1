//! Homogeneous forms in 3 or 4 variables over Q(φ).
//!
//! Monomials are ordered graded-lexicographically with `x > y > z > w`; this
//! fixes the column order of interpolation matrices and the serialized term
//! order. Forms compare structurally, so two forms are equal only if their
//! coefficients agree exactly; use [`HomForm::canonical`] to compare up to
//! scale.

pub mod modp;
pub mod poly;
pub mod smooth;
pub mod univariate;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg;
use crate::projective::{PlanePoint, ProjPlane, ProjPoint};

pub use poly::MPoly;
pub use smooth::{
    plane_curve_is_smooth, ModularTrail, SingularWitness, SmoothnessAttempt, SmoothnessVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension mismatch: form has {form} variables, argument has {arg}")]
    DimensionMismatch { form: usize, arg: usize },
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("gcd of two zero forms")]
    BothZero,
    #[error("form is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("unsupported number of variables {0}; expected 3 or 4")]
    UnsupportedVariables(usize),
    #[error("smoothness test indeterminate after {0} coordinate changes")]
    Indeterminate(usize),
    #[error("the zero form defines no curve")]
    ZeroForm,
}

/// Anything carrying homogeneous coordinates.
pub trait HomogeneousCoords {
    fn homogeneous_coords(&self) -> &[FieldElement];
}

impl HomogeneousCoords for ProjPoint {
    fn homogeneous_coords(&self) -> &[FieldElement] {
        self.coords()
    }
}

impl HomogeneousCoords for PlanePoint {
    fn homogeneous_coords(&self) -> &[FieldElement] {
        self.coords()
    }
}

impl HomogeneousCoords for Vec<FieldElement> {
    fn homogeneous_coords(&self) -> &[FieldElement] {
        self
    }
}

/// Exponent vectors of degree `d` in `n` variables, graded-lex descending
/// (`x^d` first).
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// `C(d + n - 1, n - 1)`.
pub fn monomial_count(n: usize, d: u32) -> usize {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 1..n as u128 {
        num *= u128::from(d) + i;
        den *= i;
    }
    (num / den) as usize
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomForm {
    degree: u32,
    poly: MPoly,
}

impl HomForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomForm {
            degree,
            poly: MPoly::zero(nvars),
        }
    }

    pub fn from_poly(poly: MPoly, degree: u32) -> Result<Self, FormError> {
        if poly.terms().keys().any(|e| e.iter().sum::<u32>() != degree) {
            return Err(FormError::NotHomogeneous(degree));
        }
        Ok(HomForm { degree, poly })
    }

    /// Builds a form from a homogeneous polynomial, reading the degree off it.
    /// The zero polynomial becomes the zero form of degree 0.
    pub fn from_homogeneous(poly: MPoly) -> Result<Self, FormError> {
        let d = poly.total_degree().unwrap_or(0);
        Self::from_poly(poly, d)
    }

    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self, FormError> {
        Self::from_poly(MPoly::from_terms(nvars, terms), degree)
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        let poly = MPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        );
        HomForm { degree: 1, poly }
    }

    pub fn from_plane(v: &ProjPlane) -> Self {
        Self::linear(v.coords())
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        HomForm {
            degree: 0,
            poly: MPoly::constant(c, nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.poly.coeff(e)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.poly.terms().iter().rev()
    }

    pub fn evaluate<P: HomogeneousCoords + ?Sized>(
        &self,
        p: &P,
    ) -> Result<FieldElement, FormError> {
        let c = p.homogeneous_coords();
        if c.len() != self.nvars() {
            return Err(FormError::DimensionMismatch {
                form: self.nvars(),
                arg: c.len(),
            });
        }
        Ok(self.poly.evaluate(c))
    }

    /// Whether the form vanishes at `p` (scale-invariant).
    pub fn vanishes_at<P: HomogeneousCoords + ?Sized>(&self, p: &P) -> Result<bool, FormError> {
        Ok(self.evaluate(p)?.is_zero())
    }

    pub fn multiply(&self, other: &HomForm) -> Result<HomForm, FormError> {
        self.check_same(other)?;
        Ok(HomForm {
            degree: self.degree + other.degree,
            poly: &self.poly * &other.poly,
        })
    }

    pub fn add(&self, other: &HomForm) -> Result<HomForm, FormError> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(FormError::NotHomogeneous(self.degree));
        }
        Ok(HomForm {
            degree: self.degree,
            poly: &self.poly + &other.poly,
        })
    }

    pub fn scale(&self, c: &FieldElement) -> HomForm {
        HomForm {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }

    /// Product of a list of forms; the empty product is the constant 1.
    pub fn product(nvars: usize, forms: &[HomForm]) -> Result<HomForm, FormError> {
        forms
            .iter()
            .try_fold(HomForm::constant(nvars, FieldElement::one()), |acc, f| {
                acc.multiply(f)
            })
    }

    pub fn derivative(&self, var: usize) -> HomForm {
        HomForm {
            degree: self.degree.saturating_sub(1),
            poly: self.poly.derivative(var),
        }
    }

    /// `f(M x)`: substitutes `x_i ↦ Σ_j m[i][j] x_j`.
    pub fn linear_substitute(&self, m: &[Vec<FieldElement>]) -> HomForm {
        HomForm {
            degree: self.degree,
            poly: self.poly.linear_substitute(m),
        }
    }

    /// Representative scaled so its first nonzero graded-lex coefficient is 1.
    pub fn canonical(&self) -> HomForm {
        match self.terms().next() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Whether `self` and `other` agree up to a nonzero scalar.
    pub fn proportional(&self, other: &HomForm) -> bool {
        self.canonical() == other.canonical()
    }

    fn check_same(&self, other: &HomForm) -> Result<(), FormError> {
        if self.nvars() != other.nvars() {
            return Err(FormError::DimensionMismatch {
                form: self.nvars(),
                arg: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Linearly independent forms sharing degree and variable count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormBasis {
    pub nvars: usize,
    pub degree: u32,
    pub forms: Vec<HomForm>,
}

impl FormBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

/// Exact basis of the degree-`d` forms in `n` variables vanishing at every
/// point. Rows of the evaluation matrix are points, columns graded-lex
/// monomials; the nullspace is found by fraction-free elimination.
pub fn vanishing_space<P: HomogeneousCoords>(
    points: &[P],
    degree: u32,
    nvars: usize,
) -> Result<FormBasis, FormError> {
    if !(3..=4).contains(&nvars) {
        return Err(FormError::UnsupportedVariables(nvars));
    }
    let mons = monomials(nvars, degree);
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        let c = p.homogeneous_coords();
        if c.len() != nvars {
            return Err(FormError::DimensionMismatch {
                form: nvars,
                arg: c.len(),
            });
        }
        let powers: Vec<Vec<FieldElement>> = c
            .iter()
            .map(|x| {
                let mut v = vec![FieldElement::one()];
                for k in 1..=degree as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        rows.push(
            mons.iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .fold(FieldElement::one(), |acc, (i, &k)| {
                            &acc * &powers[i][k as usize]
                        })
                })
                .collect::<Vec<_>>(),
        );
    }
    let forms = linalg::nullspace(&rows, mons.len())
        .into_iter()
        .map(|v| {
            let f = HomForm::from_terms(nvars, degree, mons.iter().cloned().zip(v))
                .expect("homogeneous by construction");
            f.canonical()
        })
        .collect();
    Ok(FormBasis {
        nvars,
        degree,
        forms,
    })
}

/// Dimension of the space of degree-`d` forms through the points.
pub fn vanishing_dimension<P: HomogeneousCoords>(
    points: &[P],
    degree: u32,
    nvars: usize,
) -> Result<usize, FormError> {
    Ok(vanishing_space(points, degree, nvars)?.dim())
}

/// The quotient `g / f` when `f` divides `g`.
pub fn quotient(f: &HomForm, g: &HomForm) -> Result<Option<HomForm>, FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroDivisor);
    }
    f.check_same(g)?;
    if g.is_zero() {
        return Ok(Some(HomForm::zero(f.nvars(), 0)));
    }
    if f.degree > g.degree {
        return Ok(None);
    }
    Ok(g.poly.exact_div(&f.poly).map(|q| HomForm {
        degree: g.degree - f.degree,
        poly: q,
    }))
}

/// Whether `g = f·q` for some form `q`.
pub fn divides(f: &HomForm, g: &HomForm) -> Result<bool, FormError> {
    Ok(quotient(f, g)?.is_some())
}

/// Canonical greatest common divisor.
pub fn gcd_forms(f: &HomForm, g: &HomForm) -> Result<HomForm, FormError> {
    f.check_same(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(FormError::BothZero);
    }
    let p = f.poly.gcd(&g.poly);
    let h = HomForm::from_homogeneous(p).expect("gcd of forms is homogeneous");
    Ok(h.canonical())
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<u32>,
    coeff: FieldElement,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    nvars: usize,
    degree: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for HomForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            nvars: self.nvars(),
            degree: self.degree,
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exponents: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        if r.terms.iter().any(|t| t.exponents.len() != r.nvars) {
            return Err(serde::de::Error::custom(
                "exponent vector length differs from nvars",
            ));
        }
        HomForm::from_terms(
            r.nvars,
            r.degree,
            r.terms.into_iter().map(|t| (t.exponents, t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize, n: usize) -> HomForm {
        let mut c = vec![FieldElement::zero(); n];
        c[i] = FieldElement::one();
        HomForm::linear(&c)
    }

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(3, 2);
        assert_eq!(
            m,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(monomial_count(3, 6), 28);
        assert_eq!(monomial_count(4, 2), 10);
        assert_eq!(monomials(4, 5).len(), monomial_count(4, 5));
    }

    #[test]
    fn multiply_examples() {
        let (x, y) = (var(0, 3), var(1, 3));
        let p = x
            .add(&y)
            .unwrap()
            .multiply(&x.add(&y.scale(&FieldElement::from_int(-1))).unwrap())
            .unwrap();
        let expect = x
            .multiply(&x)
            .unwrap()
            .add(&y.multiply(&y).unwrap().scale(&FieldElement::from_int(-1)))
            .unwrap();
        assert_eq!(p, expect);
        let one = HomForm::constant(3, FieldElement::one());
        assert_eq!(p.multiply(&one).unwrap(), p);
        assert!(matches!(
            p.multiply(&var(0, 4)),
            Err(FormError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn divisibility_examples() {
        let (x, y) = (var(0, 3), var(1, 3));
        let s = x.add(&y).unwrap();
        assert!(divides(&s, &s.multiply(&s).unwrap()).unwrap());
        assert!(!divides(&x, &y.multiply(&y).unwrap()).unwrap());
        assert_eq!(
            divides(&HomForm::zero(3, 1), &x),
            Err(FormError::ZeroDivisor)
        );
        let q = quotient(&s, &s.multiply(&x).unwrap()).unwrap().unwrap();
        assert_eq!(q, x);
    }

    #[test]
    fn gcd_examples() {
        let (x, y) = (var(0, 3), var(1, 3));
        let a = x.multiply(&x.add(&y).unwrap()).unwrap();
        let b = x
            .multiply(&x.add(&y.scale(&FieldElement::from_int(-1))).unwrap())
            .unwrap();
        assert_eq!(gcd_forms(&a, &b).unwrap(), x);
        assert_eq!(gcd_forms(&a, &a).unwrap(), a.canonical());
        assert_eq!(
            gcd_forms(&HomForm::zero(3, 0), &HomForm::zero(3, 0)),
            Err(FormError::BothZero)
        );
    }

    #[test]
    fn line_through_two_plane_points() {
        let pts = vec![
            PlanePoint::from_ints([1, 0, 1]).unwrap(),
            PlanePoint::from_ints([0, 1, 1]).unwrap(),
        ];
        let b = vanishing_space(&pts, 1, 3).unwrap();
        assert_eq!(b.dim(), 1);
        // x + y - z, canonical
        let expect = HomForm::linear(&[1, 1, -1].map(FieldElement::from_int));
        assert_eq!(b.forms[0], expect);
    }

    #[test]
    fn evaluation_checks_dimension() {
        let f = var(0, 3);
        assert!(matches!(
            f.evaluate(&ProjPoint::from_ints([1, 0, 0, 0]).unwrap()),
            Err(FormError::DimensionMismatch { .. })
        ));
        // a point whose only nonzero coordinate misses every monomial
        let g = var(0, 3).multiply(&var(1, 3)).unwrap();
        assert!(g
            .vanishes_at(&PlanePoint::from_ints([0, 0, 1]).unwrap())
            .unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let f = var(0, 3)
            .multiply(&var(2, 3).scale(&FieldElement::phi()))
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":3,"degree":2,"terms":[{"exponents":[1,0,1],"coeff":{"a":"0","b":"1"}}]}"#
        );
        let back: HomForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<HomForm>(
            r#"{"nvars":3,"degree":2,"terms":[{"exponents":[1,0,0],"coeff":1}]}"#
        )
        .is_err());
    }
}
