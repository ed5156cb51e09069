use serde::{Deserialize, Serialize};

use super::signature::{signed_norm_sq, standard_signs, GeneralizedDelta, Signature};
use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HermPoly, HoloPoly, Poly, Rational, VariableSpace};

/// The real hypersurface `Im w = Σ s_j |z_j|²` in `ℂⁿ`.
///
/// Standard quadrics have their negative signs first; generalized sign
/// patterns are also accepted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Hyperquadric {
    n: usize,
    signs: Vec<i8>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    OnQuadric,
    InsideSiegel,
    OutsideClosure,
}

impl Hyperquadric {
    pub fn standard(n: usize, ell: usize) -> Result<Self> {
        let sig = Signature::new(n, ell)?;
        Ok(Hyperquadric {
            n,
            signs: sig.signs(),
        })
    }

    pub fn from_signature(sig: Signature) -> Self {
        Hyperquadric {
            n: sig.n,
            signs: sig.signs(),
        }
    }

    pub fn generalized(d: GeneralizedDelta) -> Self {
        Hyperquadric {
            n: d.big_n,
            signs: d.signs(),
        }
    }

    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid(
                "signs must be a nonempty list of +1/-1".into(),
            ));
        }
        Ok(Hyperquadric {
            n: signs.len() + 1,
            signs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Number of negative signs.
    pub fn ell(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_standard(&self) -> bool {
        self.signs == standard_signs(self.n - 1, self.ell())
    }

    pub fn signature(&self) -> Signature {
        Signature {
            n: self.n,
            ell: self.ell(),
        }
    }

    pub fn space(&self) -> VariableSpace {
        VariableSpace::new(self.n).expect("n >= 2 by construction")
    }

    /// `ρ = (w − w̄)/(2i) − Σ s_j z_j z̄_j`.
    pub fn defining_poly(&self) -> HermPoly {
        let space = self.space();
        let mut rho = HermPoly::im_of(&HoloPoly::w(space));
        for (j, &s) in self.signs.iter().enumerate() {
            let t = HermPoly::abs_sq(&HoloPoly::z(space, j));
            rho = if s < 0 { &rho + &t } else { &rho - &t };
        }
        rho
    }

    /// `Σ s_j z_j z̄_j` as a polynomial in the `2n` Hermitian variables.
    pub fn levi_poly(&self) -> Poly {
        let space = self.space();
        let mut h = HermPoly::zero(space);
        for (j, &s) in self.signs.iter().enumerate() {
            let t = HermPoly::abs_sq(&HoloPoly::z(space, j));
            h = if s < 0 { &h - &t } else { &h + &t };
        }
        h.into_poly()
    }

    pub fn rho_at(&self, p: &[GaussianRational]) -> Result<Rational> {
        if p.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: p.len(),
            });
        }
        let w = &p[self.n - 1];
        let h = signed_norm_sq(&p[..self.n - 1], &self.signs)?;
        Ok(&w.im - &h.re)
    }

    pub fn classify_point(&self, p: &[GaussianRational]) -> Result<PointClass> {
        let r = self.rho_at(p)?;
        Ok(match r.signum() {
            0 => PointClass::OnQuadric,
            1 => PointClass::InsideSiegel,
            _ => PointClass::OutsideClosure,
        })
    }

    /// `w` on the quadric above `z` with real part `u`.
    pub fn lift_point(
        &self,
        z: &[GaussianRational],
        u: &Rational,
    ) -> Result<Vec<GaussianRational>> {
        let h = signed_norm_sq(z, &self.signs)?;
        let mut p = z.to_vec();
        p.push(GaussianRational::new(u.clone(), h.re));
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn defining_polynomials() {
        let h = Hyperquadric::standard(3, 1).unwrap();
        assert_eq!(
            h.defining_poly().to_string(),
            "-1/2*i*w + 1/2*i*conj(w) + z1*conj(z1) - z2*conj(z2)"
        );
        let h5 = Hyperquadric::standard(5, 2).unwrap();
        assert_eq!(h5.defining_poly().len(), 6);
        let v = h
            .defining_poly()
            .evaluate(&[g(1, 0), g(0, 0), g(0, -1)])
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn classification() {
        let h = Hyperquadric::standard(3, 1).unwrap();
        assert_eq!(
            h.classify_point(&[g(0, 0), g(0, 0), g(0, 1)]).unwrap(),
            PointClass::InsideSiegel
        );
        assert_eq!(
            h.classify_point(&[g(1, 0), g(0, 0), g(0, -1)]).unwrap(),
            PointClass::OnQuadric
        );
        assert_eq!(
            h.classify_point(&[g(0, 0), g(0, 0), g(0, -1)]).unwrap(),
            PointClass::OutsideClosure
        );
    }
}
