//! Sparse multivariate polynomials over Q(φ).
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors; the map's key
//! order is lexicographic with variable 0 most significant. Exact division
//! and a recursive subresultant gcd live here; [`super::HomForm`] builds on
//! top of them.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::FieldElement;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, FieldElement>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(FieldElement::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, FieldElement::one())
    }

    pub fn monomial(exps: Exponents, c: FieldElement) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Whether every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn coeff(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponents, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Scales so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            p.add_term(
                e2,
                &c.scale(&crate::field::Rational::from_integer(e[v].into())),
            );
        }
        p
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let maxdeg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                v.push(FieldElement::one());
                for k in 1..=maxdeg {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut s = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                    if t.is_zero() {
                        break;
                    }
                }
            }
            s += &t;
        }
        s
    }

    /// Substitutes `x_v = value`, keeping the variable count.
    pub fn specialize(&self, v: usize, value: &FieldElement) -> Self {
        let maxdeg = self.degree_in(v).unwrap_or(0) as usize;
        let mut pw = vec![FieldElement::one()];
        for k in 1..=maxdeg {
            let next = &pw[k - 1] * value;
            pw.push(next);
        }
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            p.add_term(e2, &(c * &pw[k]));
        }
        p
    }

    /// Image under the linear substitution `x_i ↦ Σ_j m[i][j] x_j`.
    pub fn linear_substitute(&self, m: &[Vec<FieldElement>]) -> Self {
        let n = self.nvars;
        let images: Vec<MPoly> = (0..n)
            .map(|i| MPoly::from_terms(n, (0..n).map(|j| (unit(j, n), m[i][j].clone()))))
            .collect();
        let maxdeg = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|l| {
                let mut v = vec![MPoly::one(n)];
                for k in 1..=maxdeg {
                    let next = &v[k - 1] * l;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(n);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone(), n);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients as a polynomial in `x_v`: entry `k` multiplies `x_v^k`
    /// and does not involve `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        if self.is_zero() {
            return vec![];
        }
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].add_term(e2, c);
        }
        out
    }

    pub fn from_coefficients_in(v: usize, nvars: usize, coeffs: &[MPoly]) -> Self {
        let mut p = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                p.add_term(e2, x);
            }
        }
        p
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Uses the lex division algorithm: with a single divisor the remainder is
    /// zero exactly when the division is exact, and a leading term not
    /// divisible by `LT(d)` already proves non-divisibility.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (dl_e, dl_c) = d.leading()?;
        let dl_inv = dl_c.inv().expect("nonzero");
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((e, c)) = r.leading() {
            if e.iter().zip(dl_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(dl_e).map(|(a, b)| a - b).collect();
            let qc = c * &dl_inv;
            for (de, dc) in &d.terms {
                let te: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                r.add_term(te, &-(dc * &qc));
            }
            q.add_term(qe, &qc);
        }
        Some(q)
    }

    /// Greatest common divisor, normalized to a monic (lex-leading coefficient 1)
    /// polynomial. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        gcd_rec(self, other)
    }
}

fn unit(j: usize, n: usize) -> Exponents {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c);
        }
        p
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), &-c);
        }
        p
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, &(c1 * c2));
            }
        }
        p
    }
}

/// Highest-index variable that occurs in `p`.
fn main_var(p: &MPoly) -> Option<usize> {
    (0..p.nvars)
        .rev()
        .find(|&v| p.degree_in(v).unwrap_or(0) > 0)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero(p.nvars);
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    let v = match (main_var(a), main_var(b)) {
        (Some(x), Some(y)) => x.max(y),
        _ => return MPoly::one(n),
    };
    let da = a.degree_in(v).unwrap_or(0);
    let db = b.degree_in(v).unwrap_or(0);
    if da == 0 {
        return gcd_rec(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = subresultant_gcd(&pa, &pb, v);
    let g = g.exact_div(&content_in(&g, v)).expect("content divides");
    (&c * &g).monic()
}

fn lead_coeff(coeffs: &[MPoly]) -> &MPoly {
    coeffs.last().expect("nonzero polynomial")
}

fn trim(mut coeffs: Vec<MPoly>) -> Vec<MPoly> {
    while coeffs.last().is_some_and(MPoly::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b` in `x_v`.
fn pseudo_remainder(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = lead_coeff(b).clone();
    let mut steps = (a.len() as i64) - (b.len() as i64) + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = lead_coeff(&r).clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| &lb * c).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bc);
        }
        r = trim(next);
        steps -= 1;
    }
    // bring the multiplier up to the full power
    if steps > 0 {
        let f = lb.pow(steps as u32);
        r = r.iter().map(|c| &f * c).collect();
    }
    r
}

/// Subresultant remainder sequence in `x_v` for primitive inputs; returns the
/// last nonzero remainder (a multiple of the gcd).
fn subresultant_gcd(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let n = a.nvars;
    let (mut f, mut g) = {
        let fa = a.coefficients_in(v);
        let fb = b.coefficients_in(v);
        if fa.len() >= fb.len() {
            (fa, fb)
        } else {
            (fb, fa)
        }
    };
    let mut gg = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            return MPoly::from_coefficients_in(v, n, &g);
        }
        if r.len() == 1 {
            return MPoly::one(n);
        }
        let divisor = &gg * &h.pow(delta);
        f = g;
        g = r
            .iter()
            .map(|c| {
                c.exact_div(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        gg = lead_coeff(&f).clone();
        if delta > 0 {
            let num = gg.pow(delta);
            let den = h.pow(delta - 1);
            h = num.exact_div(&den).expect("subresultant division is exact");
        }
    }
}
