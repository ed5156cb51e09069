//! Holomorphic polynomials in `(z_1, …, z_{n-1}, w)` with `wt z = 1`, `wt w = 2`.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct VariableSpace {
    n: usize,
}

impl VariableSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!(
                "source dimension must be at least 2, got {n}"
            )));
        }
        Ok(VariableSpace { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of `z` variables.
    pub fn nz(&self) -> usize {
        self.n - 1
    }

    pub fn w_index(&self) -> usize {
        self.n - 1
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w = vec![1; self.n - 1];
        w.push(2);
        w
    }

    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..self.n).map(|j| format!("z{j}")).collect();
        v.push("w".into());
        v
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HoloPoly {
    space: VariableSpace,
    poly: Poly,
}

impl HoloPoly {
    pub fn from_poly(space: VariableSpace, poly: Poly) -> Self {
        assert_eq!(
            poly.nvars(),
            space.n(),
            "polynomial arity does not match space"
        );
        HoloPoly { space, poly }
    }

    pub fn zero(space: VariableSpace) -> Self {
        Self::from_poly(space, Poly::zero(space.n()))
    }

    pub fn one(space: VariableSpace) -> Self {
        Self::constant(space, GaussianRational::one())
    }

    pub fn constant(space: VariableSpace, c: GaussianRational) -> Self {
        Self::from_poly(space, Poly::constant(space.n(), c))
    }

    /// `z_{j+1}` (zero-based index).
    pub fn z(space: VariableSpace, j: usize) -> Self {
        assert!(j < space.nz(), "z index out of range");
        Self::from_poly(space, Poly::var(space.n(), j))
    }

    pub fn w(space: VariableSpace) -> Self {
        Self::from_poly(space, Poly::var(space.n(), space.w_index()))
    }

    pub fn space(&self) -> VariableSpace {
        self.space
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn try_add(&self, o: &HoloPoly) -> Result<HoloPoly> {
        Ok(Self::from_poly(self.space, self.poly.try_add(&o.poly)?))
    }

    pub fn try_mul(&self, o: &HoloPoly) -> Result<HoloPoly> {
        Ok(Self::from_poly(self.space, self.poly.try_mul(&o.poly)?))
    }

    pub fn scale(&self, c: &GaussianRational) -> HoloPoly {
        Self::from_poly(self.space, self.poly.scale(c))
    }

    pub fn pow(&self, e: u32) -> HoloPoly {
        Self::from_poly(self.space, self.poly.pow(e))
    }

    pub fn conj_coeffs(&self) -> HoloPoly {
        Self::from_poly(self.space, self.poly.conj_coeffs())
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        self.poly.eval(point)
    }

    /// Composition `self ∘ images`; the images may live in another space.
    pub fn substitute(&self, images: &[HoloPoly]) -> Result<HoloPoly> {
        let space = images.first().map(|p| p.space).unwrap_or(self.space);
        let polys: Vec<Poly> = images.iter().map(|p| p.poly.clone()).collect();
        Ok(Self::from_poly(space, self.poly.substitute(&polys)?))
    }

    pub fn weighted_degree(&self) -> u32 {
        self.poly.weighted_degree(&self.space.weights())
    }

    pub fn weighted_order(&self) -> Option<u32> {
        self.poly.weighted_order(&self.space.weights())
    }

    /// Nonzero weighted-homogeneous parts, in increasing weight.
    pub fn weighted_components(&self) -> Vec<(u32, HoloPoly)> {
        self.poly
            .graded_parts(&self.space.weights())
            .into_iter()
            .map(|(k, p)| (k, Self::from_poly(self.space, p)))
            .collect()
    }

    pub fn weight_part(&self, k: u32) -> HoloPoly {
        Self::from_poly(
            self.space,
            self.poly.homogeneous_part(&self.space.weights(), k),
        )
    }

    pub fn truncate(&self, max: u32) -> HoloPoly {
        Self::from_poly(self.space, self.poly.truncate(&self.space.weights(), max))
    }

    pub fn mul_truncated(&self, o: &HoloPoly, max: u32) -> HoloPoly {
        Self::from_poly(
            self.space,
            self.poly.mul_truncated(&o.poly, &self.space.weights(), max),
        )
    }

    /// True when no term involves `w`.
    pub fn is_w_free(&self) -> bool {
        self.poly.degree_in(self.space.w_index()) == 0
    }
}

impl Deref for HoloPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.poly
    }
}

impl fmt::Display for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.fmt_with(&self.space.names()))
    }
}

impl fmt::Debug for HoloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

super::wrapper_ops!(HoloPoly, space);

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize) -> VariableSpace {
        VariableSpace::new(n).unwrap()
    }

    #[test]
    fn components_by_weight() {
        let s = sp(3);
        let z1 = HoloPoly::z(s, 0);
        let w = HoloPoly::w(s);
        let p = &z1 + &(&(&z1 * &z1) * &w);
        let comps = p.weighted_components();
        assert_eq!(comps.iter().map(|c| c.0).collect::<Vec<_>>(), vec![1, 4]);
        assert_eq!(w.pow(2).weighted_components().len(), 1);
        assert_eq!(w.pow(2).weighted_components()[0].0, 4);
    }

    #[test]
    fn substitute_square() {
        let s = sp(3);
        let z1 = HoloPoly::z(s, 0);
        let z2 = HoloPoly::z(s, 1);
        let w = HoloPoly::w(s);
        let sq = z1.pow(2);
        let out = sq.substitute(&[&z1 + &w, z2.clone(), w.clone()]).unwrap();
        assert_eq!(out.to_string(), "z1^2 + 2*z1*w + w^2");
        let id = z1.substitute(&[z1.clone(), z2, w]).unwrap();
        assert_eq!(id, z1);
    }

    #[test]
    fn evaluate_square() {
        let s = sp(3);
        let z1 = HoloPoly::z(s, 0);
        let v = z1.pow(2).evaluate(&[3.into(), 0.into(), 0.into()]).unwrap();
        assert_eq!(v, GaussianRational::from(9));
        assert!(z1.evaluate(&[1.into()]).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let s = sp(2);
        let z1 = HoloPoly::z(s, 0);
        let i = HoloPoly::constant(s, GaussianRational::i());
        assert_eq!((&(&z1 + &i) * &(&z1 - &i)).to_string(), "1 + z1^2");
        assert!((&z1 + &(-&z1)).is_zero());
    }
}
