//! Segre varieties of hyperquadrics: complex hyperplanes cut out by the
//! polarized defining function with the antiholomorphic slot frozen.

use serde::{Deserialize, Serialize};

use super::hyperquadric::Hyperquadric;
use super::signature::signed_inner;
use crate::error::{Error, Result};
use crate::exactalg::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SegreVariety {
    pub base: Vec<GaussianRational>,
    pub quadric: Hyperquadric,
}

/// `ρ(p, q̄) = (w_p − conj w_q)/(2i) − Σ s_j z_{p,j} conj(z_{q,j})`.
pub fn polarized_rho(
    quadric: &Hyperquadric,
    p: &[GaussianRational],
    q: &[GaussianRational],
) -> Result<GaussianRational> {
    let n = quadric.n();
    if p.len() != n || q.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: p.len().min(q.len()),
        });
    }
    let qz: Vec<GaussianRational> = q[..n - 1].iter().map(|x| x.conj()).collect();
    let h = signed_inner(&p[..n - 1], &qz, quadric.signs())?;
    let dw = &p[n - 1] - &q[n - 1].conj();
    let half_over_i = GaussianRational::from_fracs(0, 1, -1, 2);
    Ok(&(&dw * &half_over_i) - &h)
}

impl SegreVariety {
    pub fn new(base: Vec<GaussianRational>, quadric: Hyperquadric) -> Result<Self> {
        if base.len() != quadric.n() {
            return Err(Error::Dimension {
                expected: quadric.n(),
                got: base.len(),
            });
        }
        Ok(SegreVariety { base, quadric })
    }

    /// `w = conj(w_q) + 2i⟨z, conj z_q⟩`.
    pub fn member(&self, p: &[GaussianRational]) -> Result<bool> {
        Ok(polarized_rho(&self.quadric, p, &self.base)?.is_zero())
    }

    /// The affine function `w − conj(w_q) − 2i⟨z, conj z_q⟩`; its coefficients
    /// on `z_1..z_{n−1}`, then `w`, then the constant.
    pub fn equation(&self) -> Vec<GaussianRational> {
        let n = self.quadric.n();
        let two_i = GaussianRational::from_ints(0, 2);
        let mut out: Vec<GaussianRational> = self.base[..n - 1]
            .iter()
            .zip(self.quadric.signs())
            .map(|(zq, &s)| -(&two_i * &zq.conj()).scale(&(s as i64).into()))
            .collect();
        out.push(GaussianRational::one());
        out.push(-self.base[n - 1].conj());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
        (0..n)
            .map(|_| GaussianRational::from_ints(rng.gen_range(-3..4), rng.gen_range(-3..4)))
            .collect()
    }

    #[test]
    fn origin_segre_is_w_zero() {
        let q = Hyperquadric::standard(3, 1).unwrap();
        let s = SegreVariety::new(vec![0.into(), 0.into(), 0.into()], q).unwrap();
        assert!(s
            .member(&[5.into(), GaussianRational::i(), 0.into()])
            .unwrap());
        assert!(!s.member(&[0.into(), 0.into(), 1.into()]).unwrap());
        let eq = s.equation();
        assert_eq!(eq[2], GaussianRational::one());
        assert!(eq.iter().enumerate().all(|(k, c)| k == 2 || c.is_zero()));
    }

    #[test]
    fn reflexive_and_self_containing() {
        let q = Hyperquadric::standard(4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = rand_point(&mut rng, 4);
            let mut r = rand_point(&mut rng, 4);
            // force r onto Q_p half the time
            if rng.gen_bool(0.5) {
                let v = polarized_rho(&q, &r, &p).unwrap();
                r[3] = &r[3] - &(&v * &GaussianRational::from_ints(0, 2));
                assert!(polarized_rho(&q, &r, &p).unwrap().is_zero());
            }
            let sp = SegreVariety::new(p.clone(), q.clone()).unwrap();
            let sr = SegreVariety::new(r.clone(), q.clone()).unwrap();
            assert_eq!(sp.member(&r).unwrap(), sr.member(&p).unwrap());
        }
        for _ in 0..20 {
            let z = rand_point(&mut rng, 3);
            let p = q.lift_point(&z, &rng.gen_range(-5i64..5).into()).unwrap();
            assert!(SegreVariety::new(p.clone(), q.clone())
                .unwrap()
                .member(&p)
                .unwrap());
        }
    }
}
