//! Arithmetic in the residue field `Z[φ]/𝔭 ≅ F_p` for primes `p ≡ ±1 (mod 5)`.
//!
//! Reduction is a ring map on the elements whose denominators are prime to
//! `p`, so determinants and resultants computed after reduction agree with
//! the reductions of the exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::field::{FieldElement, Rational};

/// A prime `p ≡ 3 (mod 4)`, `p ≡ ±1 (mod 5)`, with a chosen image of φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    pub p: u64,
    pub phi: u64,
}

impl Modulus {
    /// The `k`-th admissible prime below `2^61`.
    pub fn nth(k: usize) -> Modulus {
        let mut found = 0;
        let mut n = (1u64 << 61) - 1;
        loop {
            if n % 4 == 3 && matches!(n % 5, 1 | 4) && is_prime(n) {
                if found == k {
                    return Modulus::with_prime(n);
                }
                found += 1;
            }
            n -= 2;
        }
    }

    fn with_prime(p: u64) -> Modulus {
        let s = pow_mod(5, (p + 1) / 4, p);
        assert_eq!(mul_mod(s, s, p), 5, "5 is a square mod p");
        let phi = mul_mod((1 + s) % p, (p + 1) / 2, p);
        Modulus { p, phi }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| pow_mod(a, self.p - 2, self.p))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced")
    }

    fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let den = self.inv(self.reduce_int(r.denom()))?;
        Some(self.mul(self.reduce_int(r.numer()), den))
    }

    /// Image of `a + bφ`, or `None` if a denominator is divisible by `p`.
    pub fn reduce(&self, x: &FieldElement) -> Option<u64> {
        let a = self.reduce_rational(x.a())?;
        let b = self.reduce_rational(x.b())?;
        Some(self.add(a, self.mul(b, self.phi)))
    }

    pub fn determinant(&self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                m.swap(piv, col);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[col][col]);
            let inv = self.inv(m[col][col]).expect("nonzero pivot");
            for r in col + 1..n {
                if m[r][col] == 0 {
                    continue;
                }
                let factor = self.mul(m[r][col], inv);
                for c in col..n {
                    let t = self.mul(factor, m[col][c]);
                    m[r][c] = self.sub(m[r][c], t);
                }
            }
        }
        det
    }

    /// Newton interpolation at the nodes `0, 1, …, ys.len() − 1`; ascending
    /// coefficients, untrimmed.
    pub fn interpolate(&self, ys: &[u64]) -> Vec<u64> {
        let n = ys.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            let inv = self.inv(j as u64 % self.p).expect("p exceeds node count");
            for i in (j..n).rev() {
                dd[i] = self.mul(self.sub(dd[i], dd[i - 1]), inv);
            }
        }
        let mut acc: Vec<u64> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let xi = i as u64 % self.p;
            let mut next = vec![0u64; acc.len() + 1];
            for (k, &c) in acc.iter().enumerate() {
                next[k + 1] = self.add(next[k + 1], c);
                next[k] = self.sub(next[k], self.mul(c, xi));
            }
            next[0] = self.add(next[0], dd[i]);
            acc = next;
        }
        acc.resize(n, 0);
        acc
    }

    /// Degree of `gcd(a, b)`; `None` if both are zero.
    pub fn gcd_degree(&self, a: &[u64], b: &[u64]) -> Option<usize> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a.len().checked_sub(1)
    }

    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let db = b.len() - 1;
        let inv = self.inv(b[db]).expect("trimmed");
        let mut r = a.to_vec();
        while r.len() > db {
            let top = r.len() - 1;
            let q = self.mul(r[top], inv);
            let shift = top - db;
            for (k, &c) in b.iter().enumerate() {
                r[k + shift] = self.sub(r[k + shift], self.mul(q, c));
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        r
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_satisfies_its_equation() {
        for k in 0..3 {
            let m = Modulus::nth(k);
            assert!(is_prime(m.p));
            assert_eq!(m.mul(m.phi, m.phi), m.add(m.phi, 1));
        }
        assert_eq!(Modulus::nth(0).p, (1u64 << 61) - 1);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let m = Modulus::nth(1);
        let x = FieldElement::from_ints(3, -7);
        let y =
            FieldElement::from_rational(Rational::new(5.into(), 11.into())) + FieldElement::phi();
        let (rx, ry) = (m.reduce(&x).unwrap(), m.reduce(&y).unwrap());
        assert_eq!(m.reduce(&(&x * &y)).unwrap(), m.mul(rx, ry));
        assert_eq!(m.reduce(&(&x + &y)).unwrap(), m.add(rx, ry));
    }

    #[test]
    fn small_linear_algebra() {
        let m = Modulus::nth(0);
        assert_eq!(m.determinant(vec![vec![1, 2], vec![3, 4]]), m.from_i64(-2));
        // x² + 1 through 0, 1, 2
        assert_eq!(m.interpolate(&[1, 2, 5]), vec![1, 0, 1]);
        // (x−1)(x−2), (x−1)(x+3)
        let a = [2, m.from_i64(-3), 1];
        let b = [m.from_i64(-3), 2, 1];
        assert_eq!(m.gcd_degree(&a, &b), Some(1));
        assert_eq!(m.gcd_degree(&[1, 0, 1], &[0, 1]), Some(0));
    }
}
