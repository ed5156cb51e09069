use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, HoloPoly, VariableSpace};
use crate::quadric::Hyperquadric;

/// A polynomial or rational map `F = (f̃, g)/D` from one quadric's ambient
/// space to another's.
///
/// `denom = None` means `D = 1`. For rational maps `f` and `g` hold numerators.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadricMap {
    pub source: Hyperquadric,
    pub target: Hyperquadric,
    pub f: Vec<HoloPoly>,
    pub g: HoloPoly,
    pub denom: Option<HoloPoly>,
}

/// Rational maps share the representation; the alias names intent.
pub type RationalMap = QuadricMap;

impl QuadricMap {
    pub fn new(
        source: Hyperquadric,
        target: Hyperquadric,
        f: Vec<HoloPoly>,
        g: HoloPoly,
    ) -> Result<Self> {
        Self::build(source, target, f, g, None)
    }

    pub fn rational(
        source: Hyperquadric,
        target: Hyperquadric,
        f: Vec<HoloPoly>,
        g: HoloPoly,
        denom: HoloPoly,
    ) -> Result<Self> {
        Self::build(source, target, f, g, Some(denom))
    }

    fn build(
        source: Hyperquadric,
        target: Hyperquadric,
        f: Vec<HoloPoly>,
        g: HoloPoly,
        denom: Option<HoloPoly>,
    ) -> Result<Self> {
        if f.len() != target.n() - 1 {
            return Err(Error::Dimension {
                expected: target.n() - 1,
                got: f.len(),
            });
        }
        let space = source.space();
        for p in f.iter().chain(std::iter::once(&g)).chain(denom.iter()) {
            if p.space() != space {
                return Err(Error::SpaceMismatch(space.n(), p.space().n()));
            }
        }
        let denom = match denom {
            Some(d) if d.constant_term().is_zero() => {
                return Err(Error::Invalid("denominator vanishes at the origin".into()));
            }
            Some(d) if d.len() == 1 && d.constant_term().is_one() => None,
            Some(d) if d.len() == 1 => {
                // constant denominator: fold it into the numerators
                let inv = d.constant_term().inv().unwrap();
                return Ok(QuadricMap {
                    source,
                    target,
                    f: f.iter().map(|p| p.scale(&inv)).collect(),
                    g: g.scale(&inv),
                    denom: None,
                });
            }
            other => other,
        };
        Ok(QuadricMap {
            source,
            target,
            f,
            g,
            denom,
        })
    }

    pub fn space(&self) -> VariableSpace {
        self.source.space()
    }

    pub fn is_rational(&self) -> bool {
        self.denom.is_some()
    }

    /// Numerators `f_1, …, f_{N−1}, g`.
    pub fn components(&self) -> Vec<HoloPoly> {
        let mut v = self.f.clone();
        v.push(self.g.clone());
        v
    }

    pub fn denominator(&self) -> HoloPoly {
        self.denom
            .clone()
            .unwrap_or_else(|| HoloPoly::one(self.space()))
    }

    /// `F(0) = 0`.
    pub fn base_normalized(&self) -> bool {
        self.f.iter().all(|p| p.constant_term().is_zero()) && self.g.constant_term().is_zero()
    }

    pub fn evaluate(&self, p: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let d = match &self.denom {
            Some(d) => d.evaluate(p)?,
            None => GaussianRational::one(),
        };
        if d.is_zero() {
            return Err(Error::Invalid("denominator vanishes at the point".into()));
        }
        self.components()
            .iter()
            .map(|c| Ok(&c.evaluate(p)? / &d))
            .collect()
    }

    /// `self ∘ inner` for a polynomial `inner` between matching spaces.
    pub fn precompose(&self, inner: &QuadricMap) -> Result<QuadricMap> {
        if inner.is_rational() {
            return Err(Error::Invalid(
                "precomposition with a rational map is not supported".into(),
            ));
        }
        if inner.target.n() != self.source.n() {
            return Err(Error::Dimension {
                expected: self.source.n(),
                got: inner.target.n(),
            });
        }
        let images = inner.components();
        let sub = |p: &HoloPoly| p.substitute(&images);
        let f = self.f.iter().map(sub).collect::<Result<Vec<_>>>()?;
        let g = sub(&self.g)?;
        let denom = self.denom.as_ref().map(sub).transpose()?;
        Self::build(inner.source.clone(), self.target.clone(), f, g, denom)
    }
}

impl fmt::Debug for QuadricMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", comps.join(", "))?;
        if let Some(d) = &self.denom {
            write!(f, " / ({d})")?;
        }
        Ok(())
    }
}
