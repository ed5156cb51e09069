//! Maps truncated at a weighted order.

use super::automorphism::AutParams;
use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HoloPoly};
use crate::qmap::QuadricMap;
use crate::quadric::Hyperquadric;

/// Components `(f̃_1, …, f̃_{N−1}, g)` of a map, each truncated at weight `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    pub source: Hyperquadric,
    pub target: Hyperquadric,
    pub comps: Vec<HoloPoly>,
    pub order: u32,
}

/// Power-series inverse of `d` (with `d(0) ≠ 0`) through weight `order`.
pub fn inverse_series(d: &HoloPoly, order: u32) -> Result<HoloPoly> {
    let d0 = d.constant_term();
    let inv0 = d0
        .inv()
        .ok_or_else(|| Error::Invalid("series inverse of a function vanishing at 0".into()))?;
    let space = d.space();
    let one = HoloPoly::one(space);
    // 1/d = (1/d0) Σ e^k with e = 1 − d/d0
    let e = &one - &d.scale(&inv0);
    let mut acc = one.clone();
    for _ in 0..order {
        acc = &one + &e.mul_truncated(&acc, order);
    }
    Ok(acc.scale(&inv0))
}

impl Jet {
    pub fn from_map(map: &QuadricMap, order: u32) -> Result<Self> {
        let comps = match &map.denom {
            None => map.components().iter().map(|c| c.truncate(order)).collect(),
            Some(d) => {
                let inv = inverse_series(d, order)?;
                map.components()
                    .iter()
                    .map(|c| c.truncate(order).mul_truncated(&inv, order))
                    .collect()
            }
        };
        Ok(Jet {
            source: map.source.clone(),
            target: map.target.clone(),
            comps,
            order,
        })
    }

    pub fn f(&self) -> &[HoloPoly] {
        &self.comps[..self.comps.len() - 1]
    }

    pub fn g(&self) -> &HoloPoly {
        self.comps.last().expect("nonempty")
    }

    /// The polynomial map given by the stored truncation.
    pub fn to_map(&self) -> Result<QuadricMap> {
        QuadricMap::new(
            self.source.clone(),
            self.target.clone(),
            self.f().to_vec(),
            self.g().clone(),
        )
    }

    /// `τ∘F` truncated at the same order.
    pub fn apply(&self, params: &AutParams) -> Result<Jet> {
        params.validate(&self.target)?;
        let space = self.source.space();
        let (f, g) = params.numerators(self.f(), self.g());
        let delta = params.delta_of(
            self.f(),
            self.g(),
            &HoloPoly::one(space),
            self.target.signs(),
        );
        let inv = inverse_series(&delta.truncate(self.order), self.order)?;
        let mut comps: Vec<HoloPoly> = f
            .iter()
            .map(|c| c.mul_truncated(&inv, self.order))
            .collect();
        comps.push(g.mul_truncated(&inv, self.order));
        Ok(Jet {
            comps,
            ..self.clone()
        })
    }

    /// `F∘φ` for a polynomial source map `φ` into this jet's source.
    pub fn precompose(&self, inner: &QuadricMap) -> Result<Jet> {
        if inner.is_rational() || inner.target.n() != self.source.n() {
            return Err(Error::Invalid(
                "inner map must be a polynomial self-map of the source space".into(),
            ));
        }
        let images: Vec<_> = inner
            .components()
            .iter()
            .map(|c| c.poly().clone())
            .collect();
        let w = inner.space().weights();
        let comps = self
            .comps
            .iter()
            .map(|c| {
                c.poly()
                    .substitute_truncated(&images, &w, self.order)
                    .map(|p| HoloPoly::from_poly(inner.space(), p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Jet {
            source: inner.source.clone(),
            target: self.target.clone(),
            comps,
            order: self.order,
        })
    }

    /// Coefficient of the monomial `z_j` in component `k`.
    pub fn linear_coeff(&self, k: usize, j: usize) -> GaussianRational {
        let n = self.source.n();
        self.comps[k].coeff(&crate::exactalg::Monomial::var(n, j, 1))
    }

    /// Coefficient of `w^e` in component `k`.
    pub fn w_coeff(&self, k: usize, e: u16) -> GaussianRational {
        let n = self.source.n();
        self.comps[k].coeff(&crate::exactalg::Monomial::var(n, n - 1, e))
    }
}
