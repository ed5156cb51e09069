//! Solving `|μ|² = r` over the Gaussian rationals.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::gaussian::GaussianRational;
use super::rational::{exact_sqrt, Rational};

/// Largest integer handled by the brute-force two-squares search.
const SEARCH_LIMIT: u128 = 1 << 50;

/// Finds `x, y ≥ 0` with `x² + y² = n`, if one exists.
pub fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    if n < &BigInt::zero() {
        return None;
    }
    // pull out small square factors
    let mut m = n.clone();
    let mut scale = BigInt::one();
    let mut p: u64 = 2;
    while p < 10_000 {
        let pp = BigInt::from(p * p);
        while (&m % &pp).is_zero() {
            m /= &pp;
            scale *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let m_small = m.to_u128()?;
    if m_small > SEARCH_LIMIT {
        return None;
    }
    let mut x: u128 = 0;
    while x * x <= m_small {
        let rest = BigInt::from(m_small - x * x);
        if let Some(y) = exact_sqrt(&rest) {
            return Some((&scale * BigInt::from(x), &scale * y));
        }
        x += 1;
    }
    None
}

/// A Gaussian rational `μ` with `|μ|² = r`, when one exists and is found.
pub fn norm_preimage(r: &Rational) -> Option<GaussianRational> {
    if !r.is_positive() {
        return None;
    }
    let p = r.numer();
    let q = r.denom();
    // the search returns the smaller square first; put the larger one in the real part
    let (x, y) = two_squares(&(&p * &q))?;
    Some(GaussianRational::new(
        Rational::from_bigints(y, q.clone()),
        Rational::from_bigints(x, q),
    ))
}

/// Exact square root of a non-negative rational, if rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let a = exact_sqrt(&r.numer())?;
    let b = exact_sqrt(&r.denom())?;
    Some(Rational::from_bigints(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preimages() {
        for (p, q) in [(1, 2), (2, 1), (5, 9), (25, 1), (1, 1), (13, 8), (50, 49)] {
            let r = Rational::new(p, q);
            let mu = norm_preimage(&r).unwrap();
            assert_eq!(mu.norm_sqr(), r, "{p}/{q}");
        }
        assert!(norm_preimage(&Rational::new(3, 1)).is_none());
        assert!(norm_preimage(&Rational::new(1, 3)).is_none());
        assert!(norm_preimage(&Rational::new(-1, 1)).is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            rational_sqrt(&Rational::new(9, 4)),
            Some(Rational::new(3, 2))
        );
        assert_eq!(rational_sqrt(&Rational::new(2, 1)), None);
    }
}
