//! Signatures, sign patterns and the signed bilinear form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub n: usize,
    pub ell: usize,
}

impl Signature {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n < 2 || ell > n - 1 {
            return Err(Error::Invalid(format!(
                "need n >= 2 and 0 <= ell <= n-1, got n={n}, ell={ell}"
            )));
        }
        Ok(Signature { n, ell })
    }

    /// `ℓ ≤ (n−1)/2`.
    pub fn normalized(&self) -> bool {
        2 * self.ell < self.n
    }

    /// `ℓ' − ℓ`, for a target signature `ℓ' ≥ ℓ`.
    pub fn tau(&self, ell_target: usize) -> Option<usize> {
        ell_target.checked_sub(self.ell)
    }

    /// Signature of the same quadric with `z` and `w` reflected.
    pub fn flipped(&self) -> Signature {
        Signature {
            n: self.n,
            ell: self.n - 1 - self.ell,
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        standard_signs(self.n - 1, self.ell)
    }
}

/// `len` signs, the first `ell` of them negative.
pub fn standard_signs(len: usize, ell: usize) -> Vec<i8> {
    (0..len).map(|j| if j < ell { -1 } else { 1 }).collect()
}

/// The sign pattern with `−1` at positions `j ≤ ℓ` and `n ≤ j ≤ n+ℓ'−ℓ−1`
/// (one-based) among `N−1` positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GeneralizedDelta {
    pub ell: usize,
    pub ell_target: usize,
    pub n: usize,
    pub big_n: usize,
}

impl GeneralizedDelta {
    pub fn new(ell: usize, ell_target: usize, n: usize, big_n: usize) -> Result<Self> {
        if ell_target < ell {
            return Err(Error::Invalid(format!(
                "need ell' >= ell, got {ell_target} < {ell}"
            )));
        }
        if n < 2 || ell > n - 1 || big_n < n {
            return Err(Error::Invalid(format!(
                "need 2 <= n <= N and ell <= n-1 (n={n}, N={big_n}, ell={ell})"
            )));
        }
        if n + ell_target - ell > big_n {
            return Err(Error::Invalid(format!(
                "pattern needs n + ell' - ell - 1 <= N - 1 (n={n}, ell={ell}, ell'={ell_target}, N={big_n})"
            )));
        }
        Ok(GeneralizedDelta {
            ell,
            ell_target,
            n,
            big_n,
        })
    }

    pub fn signs(&self) -> Vec<i8> {
        (1..self.big_n)
            .map(|j| {
                let neg = j <= self.ell || (j >= self.n && j + self.ell < self.n + self.ell_target);
                if neg {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }
}

/// `Σ s_j x_j y_j` (no conjugation).
pub fn signed_inner(
    x: &[GaussianRational],
    y: &[GaussianRational],
    signs: &[i8],
) -> Result<GaussianRational> {
    if x.len() != y.len() || x.len() != signs.len() {
        return Err(Error::Dimension {
            expected: signs.len(),
            got: x.len().max(y.len()),
        });
    }
    let mut acc = GaussianRational::zero();
    for ((a, b), &s) in x.iter().zip(y).zip(signs) {
        let t = a * b;
        if s < 0 {
            acc -= &t;
        } else {
            acc += &t;
        }
    }
    Ok(acc)
}

/// `|x|²_s = Σ s_j |x_j|²`.
pub fn signed_norm_sq(x: &[GaussianRational], signs: &[i8]) -> Result<GaussianRational> {
    let c: Vec<GaussianRational> = x.iter().map(|v| v.conj()).collect();
    signed_inner(x, &c, signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64) -> GaussianRational {
        GaussianRational::from(a)
    }

    #[test]
    fn inner_examples() {
        let v = signed_inner(&[g(1), g(2)], &[g(3), g(4)], &standard_signs(2, 1)).unwrap();
        assert_eq!(v, g(5));
        let plain = signed_inner(&[g(1), g(2)], &[g(3), g(4)], &standard_signs(2, 0)).unwrap();
        assert_eq!(plain, g(11));
        let x = [GaussianRational::from_ints(1, 1), g(2)];
        assert!(signed_norm_sq(&x, &[1, -1]).unwrap().is_real());
        assert!(signed_inner(&[g(1)], &[g(1), g(2)], &[1, 1]).is_err());
    }

    #[test]
    fn generalized_pattern() {
        let d = GeneralizedDelta::new(1, 2, 3, 5).unwrap();
        assert_eq!(d.signs(), vec![-1, 1, -1, 1]);
        // degenerate case agrees with the plain pattern
        let e = GeneralizedDelta::new(2, 2, 5, 7).unwrap();
        assert_eq!(e.signs(), standard_signs(6, 2));
        for ell in 0..3 {
            for lp in ell..5 {
                for n in (ell + 1).max(2)..6 {
                    for big_n in n..8 {
                        if let Ok(d) = GeneralizedDelta::new(ell, lp, n, big_n) {
                            let negs = d.signs().iter().filter(|&&s| s < 0).count();
                            assert_eq!(negs, lp);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signature_checks() {
        assert!(Signature::new(3, 3).is_err());
        let s = Signature::new(5, 2).unwrap();
        assert!(s.normalized());
        assert_eq!(s.tau(3), Some(1));
        assert_eq!(s.flipped().ell, 2);
        assert!(!Signature::new(3, 2).unwrap().normalized());
    }
}
