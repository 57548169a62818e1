//! Exact arithmetic in the real quadratic field Q(√5) = Q(φ).
//!
//! Elements are stored on the basis {1, φ} where φ = (1 + √5)/2 satisfies
//! φ² = φ + 1. Both coordinates are reduced big rationals, so equality and
//! hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in Q(sqrt5)")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    Parse(String),
}

/// `a + b·φ` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        FieldElement {
            a: Rational::from_integer(a.into()),
            b: Rational::from_integer(b.into()),
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_ints(a, 0)
    }

    pub fn from_bigints(a: BigInt, b: BigInt) -> Self {
        FieldElement {
            a: Rational::from_integer(a),
            b: Rational::from_integer(b),
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        FieldElement {
            a,
            b: Rational::zero(),
        }
    }

    /// The golden ratio.
    pub fn phi() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of φ.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when both coordinates are integers, i.e. the element lies in Z[φ].
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Galois conjugate, sending √5 to −√5 (φ ↦ 1 − φ).
    pub fn conjugate(&self) -> Self {
        FieldElement {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Field norm `N(a + bφ) = a² + ab − b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Field trace `2a + b`.
    pub fn trace(&self) -> Rational {
        &self.a + &self.a + &self.b
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(FieldElement {
            a: c.a / &n,
            b: c.b / n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Integer coordinates, assuming `is_integral()`.
    pub fn to_integers(&self) -> (BigInt, BigInt) {
        debug_assert!(self.is_integral());
        (self.a.to_integer(), self.b.to_integer())
    }

    /// Sign of the real number `a + bφ`, computed exactly.
    pub fn signum(&self) -> Ordering {
        // a + bφ = (u + v√5)/2 with u = 2a + b, v = b.
        let u = self.trace();
        let v = &self.b;
        let su = u.cmp(&Rational::zero());
        let sv = v.cmp(&Rational::zero());
        match (su, sv) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (s, _) => {
                // opposite signs: compare u² with 5v²
                let lhs = &u * &u;
                let rhs = v * v * Rational::from_integer(5.into());
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => s.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Floating point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * phi
    }
}

impl From<i64> for FieldElement {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for FieldElement {
    fn from(v: Rational) -> Self {
        Self::from_rational(v)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        // (a1 + b1φ)(a2 + b2φ) = a1a2 + b1b2 + (a1b2 + a2b1 + b1b2)φ
        let bb = &self.b * &rhs.b;
        FieldElement {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b + bb,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -self.a,
            b: -self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "φ"),
            (true, false) => write!(f, "{}φ", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}φ", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}φ", self.a, self.b)
                }
            }
        }
    }
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let bad = || FieldError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FieldElement", 2)?;
        st.serialize_field("a", &format_rational(&self.a))?;
        st.serialize_field("b", &format_rational(&self.b))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Str(String),
    Int(i64),
}

impl RationalRepr {
    fn into_rational(self) -> Result<Rational, FieldError> {
        match self {
            RationalRepr::Str(s) => parse_rational(&s),
            RationalRepr::Int(i) => Ok(Rational::from_integer(i.into())),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Pair { a: RationalRepr, b: RationalRepr },
    Bare(RationalRepr),
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match FieldRepr::deserialize(deserializer)? {
            FieldRepr::Pair { a, b } => Ok(FieldElement {
                a: a.into_rational().map_err(de::Error::custom)?,
                b: b.into_rational().map_err(de::Error::custom)?,
            }),
            FieldRepr::Bare(r) => Ok(FieldElement::from_rational(
                r.into_rational().map_err(de::Error::custom)?,
            )),
        }
    }
}

/// Element of the ring of integers Z[φ], used by fraction-free elimination.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZPhi {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZPhi {
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn one() -> Self {
        ZPhi {
            a: BigInt::one(),
            b: BigInt::zero(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn mul(&self, rhs: &ZPhi) -> ZPhi {
        let bb = &self.b * &rhs.b;
        ZPhi {
            a: &self.a * &rhs.a + &bb,
            b: &self.a * &rhs.b + &rhs.a * &self.b + bb,
        }
    }

    pub fn sub(&self, rhs: &ZPhi) -> ZPhi {
        ZPhi {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }

    /// Exact quotient `self / rhs`, or `None` when it leaves Z[φ].
    pub fn exact_div(&self, rhs: &ZPhi) -> Option<ZPhi> {
        let n = rhs.norm();
        if n.is_zero() {
            return None;
        }
        // self * conj(rhs) / N(rhs)
        let conj = ZPhi {
            a: &rhs.a + &rhs.b,
            b: -&rhs.b,
        };
        let p = self.mul(&conj);
        let (qa, ra) = p.a.div_rem(&n);
        let (qb, rb) = p.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(ZPhi { a: qa, b: qb })
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::from_bigints(self.a.clone(), self.b.clone())
    }
}

impl TryFrom<&FieldElement> for ZPhi {
    type Error = ();
    fn try_from(x: &FieldElement) -> Result<Self, ()> {
        if !x.is_integral() {
            return Err(());
        }
        let (a, b) = x.to_integers();
        Ok(ZPhi { a, b })
    }
}

/// Rescales `v` to its canonical projective representative: divide by the
/// first nonzero entry, then multiply by the least positive integer that puts
/// every entry in Z[φ] and divide by the integer content. The first nonzero
/// entry ends up a positive integer.
///
/// Scaling by units of Z[φ] (powers of φ) is absorbed by the first step, so
/// any two nonzero multiples of a vector normalize identically.
///
/// Returns `false` when `v` is identically zero.
pub fn normalize_projective(v: &mut [FieldElement]) -> bool {
    let Some(first) = v.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if !v[first].is_one() {
        let inv = v[first].inv().expect("nonzero entry");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = lcm.lcm(&x.denom_lcm());
    }
    let scaled: Vec<(BigInt, BigInt)> = v
        .iter()
        .map(|x| x.scale(&Rational::from_integer(lcm.clone())).to_integers())
        .collect();
    let mut g = BigInt::zero();
    for (a, b) in &scaled {
        g = g.gcd(a).gcd(b);
    }
    for (x, (a, b)) in v.iter_mut().zip(scaled) {
        *x = FieldElement::from_bigints(a / &g, b / &g);
    }
    true
}
