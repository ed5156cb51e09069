//! The Cayley transform to the projective ball model.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HermPoly, HoloPoly, Rational, VariableSpace};

/// Homogeneous coordinates `[x_0 : … : x_n]`, not all zero.
#[derive(Clone, Serialize, Deserialize)]
pub struct ProjectivePoint {
    coords: Vec<GaussianRational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<GaussianRational>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("all homogeneous coordinates vanish".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    /// `|x_0|² + … + |x_ℓ|² − |x_{ℓ+1}|² − … − |x_n|²`; its sign is scale invariant.
    pub fn ball_form(&self, ell: usize) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.coords.iter().enumerate() {
            let t = c.norm_sqr();
            if k <= ell {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }

    /// Strictly inside `B^n_ℓ`.
    pub fn in_ball(&self, ell: usize) -> bool {
        self.ball_form(ell).is_positive()
    }

    pub fn on_boundary(&self, ell: usize) -> bool {
        self.ball_form(ell).is_zero()
    }
}

impl PartialEq for ProjectivePoint {
    /// Proportionality, tested by `x_i y_j = x_j y_i`.
    fn eq(&self, o: &Self) -> bool {
        if self.coords.len() != o.coords.len() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| &self.coords[i] * &o.coords[j] == &self.coords[j] * &o.coords[i])
        })
    }
}

impl Eq for ProjectivePoint {}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", s.join(" : "))
    }
}

/// `Ψ(z, w) = [i + w : 2z : i − w]`.
pub fn cayley_transform(p: &[GaussianRational]) -> Result<ProjectivePoint> {
    if p.len() < 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: p.len(),
        });
    }
    let i = GaussianRational::i();
    let w = p.last().unwrap();
    let mut coords = vec![&i + w];
    coords.extend(p[..p.len() - 1].iter().map(|z| z.scale(&Rational::from(2))));
    coords.push(&i - w);
    ProjectivePoint::new(coords)
}

/// The components `[i + w, 2z_1, …, 2z_{n−1}, i − w]` as polynomials.
pub fn cayley_components(space: VariableSpace) -> Vec<HoloPoly> {
    let i = HoloPoly::constant(space, GaussianRational::i());
    let w = HoloPoly::w(space);
    let mut out = vec![&i + &w];
    for j in 0..space.nz() {
        out.push(HoloPoly::z(space, j).scale(&GaussianRational::from(2)));
    }
    out.push(&i - &w);
    out
}

/// The ball form pulled back by `Ψ`, as a Hermitian polynomial.
pub fn cayley_pullback(space: VariableSpace, ell: usize) -> HermPoly {
    let comps = cayley_components(space);
    let mut acc = HermPoly::zero(space);
    for (k, c) in comps.iter().enumerate() {
        let t = HermPoly::abs_sq(c);
        acc = if k <= ell { &acc + &t } else { &acc - &t };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::Hyperquadric;

    fn g(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ints(a, b)
    }

    #[test]
    fn origin_maps_to_pole() {
        let p = cayley_transform(&[g(0, 0), g(0, 0)]).unwrap();
        assert_eq!(
            p,
            ProjectivePoint::new(vec![g(1, 0), g(0, 0), g(1, 0)]).unwrap()
        );
        assert_ne!(
            p,
            ProjectivePoint::new(vec![g(1, 0), g(0, 0), g(-1, 0)]).unwrap()
        );
    }

    #[test]
    fn pullback_is_four_rho() {
        for n in 2..=4 {
            for ell in 0..n {
                let q = Hyperquadric::standard(n, ell).unwrap();
                let lhs = cayley_pullback(q.space(), ell);
                assert_eq!(lhs, q.defining_poly().scale(&Rational::from(4)));
            }
        }
    }

    #[test]
    fn interior_point_lands_in_ball() {
        let p = cayley_transform(&[g(0, 0), g(0, 0), g(0, 1)]).unwrap();
        assert!(p.in_ball(1));
        let on = cayley_transform(&[g(1, 0), g(0, 0), g(0, -1)]).unwrap();
        assert!(on.on_boundary(1));
    }
}
