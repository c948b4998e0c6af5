//! Integer polynomials, coefficients listed from the constant term up.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matcore::IntMatrix;

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier.
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.order();
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let am: Vec<Vec<BigRational>> = (0..n).map(|r| (0..n).map(|c| q(a.get(r, c))).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut s = BigRational::zero();
                for t in 0..n {
                    s += &am[r][t] * &m[t][c];
                }
                if r == c {
                    s += &coeffs[n - k + 1];
                }
                next[r][c] = s;
            }
        }
        m = next;
        let mut trace = BigRational::zero();
        for r in 0..n {
            for t in 0..n {
                trace += &am[r][t] * &m[t][r];
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs.into_iter().map(|c| c.to_integer()).collect()
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient of `p` by `(x - r)`; `r` must be a root.
pub fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let deg = p.len() - 1;
    let mut out = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (1..=deg).rev() {
        carry = &carry * r + &p[i];
        out[i - 1] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Removes every integer root of a monic integer polynomial, with
/// multiplicity; returns the roots and the remaining factor.
pub fn strip_integer_roots(p: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut p = p.to_vec();
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(BigInt::zero());
        p.remove(0);
    }
    if p.len() <= 1 {
        return (roots, p);
    }
    for d in divisors(&p[0]) {
        for cand in [d.clone(), -d] {
            while p.len() > 1 && eval(&p, &cand).is_zero() {
                p = deflate(&p, &cand);
                roots.push(cand.clone());
            }
        }
    }
    (roots, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn char_poly_of_small_matrix() {
        // [[2, 1], [1, 2]]: x^2 - 4x + 3
        let a = IntMatrix::from_fn(2, |r, c| BigInt::from(if r == c { 2 } else { 1 }));
        assert_eq!(characteristic_polynomial(&a), ints(&[3, -4, 1]));
    }

    #[test]
    fn strips_roots_with_multiplicity() {
        // (x - 2)^2 (x + 3) x (x^2 + 4)
        let p = ints(&[0, 48, -32, 8, -4, -1, 1]);
        let (mut roots, rest) = strip_integer_roots(&p);
        roots.sort();
        assert_eq!(roots, ints(&[-3, 0, 2, 2]));
        assert_eq!(rest, ints(&[4, 0, 1]));
    }
}
