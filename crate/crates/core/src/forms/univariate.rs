//! Dense univariate polynomials over Q(φ).

use crate::field::FieldElement;

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<FieldElement>);

impl UPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                UPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.0[dd].inv().expect("nonzero");
        let mut r = self.0.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = &r[top] * &inv;
            if !q.is_zero() {
                let shift = top - dd;
                for (k, c) in d.0.iter().enumerate() {
                    let t = &q * c;
                    r[k + shift] -= &t;
                }
            }
            r.pop();
            while r.last().is_some_and(FieldElement::is_zero) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &FieldElement::from_int(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.0[dd].inv().expect("nonzero");
        let mut r = self.0.clone();
        let mut q = vec![FieldElement::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = &r[top] * &inv;
            let shift = top - dd;
            for (k, dc) in d.0.iter().enumerate() {
                let t = &c * dc;
                r[k + shift] -= &t;
            }
            q[shift] = c;
            r.pop();
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Newton interpolation through `(xs[i], ys[i])`; the `xs` must be distinct.
    pub fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> UPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<FieldElement> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - j];
                dd[i] = num.checked_div(&den).expect("distinct nodes");
            }
        }
        // Horner on the Newton form
        let mut acc = UPoly::new(vec![]);
        for i in (0..n).rev() {
            // acc = acc * (x - xs[i]) + dd[i]
            let mut next = vec![FieldElement::zero(); acc.0.len() + 1];
            for (k, c) in acc.0.iter().enumerate() {
                next[k + 1] += c;
                let t = c * &xs[i];
                next[k] -= &t;
            }
            next[0] += &dd[i];
            acc = UPoly::new(next);
        }
        acc
    }

    /// A root in Q(φ) when the polynomial is linear.
    pub fn linear_root(&self) -> Option<FieldElement> {
        if self.degree() != Some(1) {
            return None;
        }
        Some(-(self.0[0].checked_div(&self.0[1]).expect("nonzero")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| FieldElement::from_int(x)).collect())
    }

    #[test]
    fn gcd_and_remainder() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), p(&[1]));
        assert_eq!(a.rem(&p(&[-1, 1])), p(&[]));
        assert_eq!(a.div_rem(&p(&[-1, 1])), (p(&[-2, 1]), p(&[])));
        // (x-1)²(x+2)
        assert_eq!(p(&[2, -3, 0, 1]).squarefree(), p(&[-2, 1, 1]));
        assert_eq!(p(&[1, -2, 1]).squarefree(), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UPoly::new(vec![
            FieldElement::phi(),
            FieldElement::from_int(-2),
            FieldElement::from_ints(1, 1),
        ]);
        let xs: Vec<FieldElement> = (0..5).map(FieldElement::from_int).collect();
        let ys: Vec<FieldElement> = xs.iter().map(|x| f.evaluate(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), f);
        assert_eq!(p(&[-6, 2]).linear_root(), Some(FieldElement::from_int(3)));
    }
}
