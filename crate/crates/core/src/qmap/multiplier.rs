//! The multiplier identity `ρ'∘F = A·ρ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::map::QuadricMap;
use crate::error::{Error, Result};
use crate::exactalg::herm::{lift_anti, lift_holo};
use crate::exactalg::{ChartPoly, GaussianRational, HermPoly, Poly, Rational};
use crate::quadric::Hyperquadric;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Verified,
    Refuted,
}

/// Outcome of dividing `|D|²·ρ'∘F` by `ρ`.
///
/// When verified, `|D|²·(ρ'∘F) = multiplier·ρ` holds exactly; for polynomial
/// maps `D = 1` and `multiplier` is `A` itself.
#[derive(Clone, Debug)]
pub struct MultiplierCertificate {
    pub status: CertStatus,
    pub multiplier: Option<HermPoly>,
    /// `|D|²`, present for rational maps.
    pub denom_sq: Option<HermPoly>,
    /// Remainder restricted to the source chart `(z, z̄, u)`.
    pub remainder: Option<ChartPoly>,
    /// A source point on `ρ = 0` where `ρ'∘F ≠ 0`.
    pub witness: Option<Vec<GaussianRational>>,
    pub witness_value: Option<Rational>,
}

impl MultiplierCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == CertStatus::Verified
    }

    /// The verified multiplier, or [`Error::Unverified`].
    pub fn a(&self) -> Result<&HermPoly> {
        self.multiplier
            .as_ref()
            .filter(|_| self.is_verified())
            .ok_or(Error::Unverified)
    }

    /// Value of `A = multiplier/|D|²` at a point.
    pub fn a_at(&self, p: &[GaussianRational]) -> Result<Rational> {
        let num = self.a()?.evaluate_real(p)?;
        match &self.denom_sq {
            Some(d) => {
                let dv = d.evaluate_real(p)?;
                if dv.is_zero() {
                    return Err(Error::Invalid("denominator vanishes at the point".into()));
                }
                Ok(&num / &dv)
            }
            None => Ok(num),
        }
    }

    /// Recomputes `|D|²·ρ'∘F − multiplier·ρ` and checks that it vanishes.
    pub fn recheck(&self, map: &QuadricMap) -> bool {
        match (&self.status, &self.multiplier) {
            (CertStatus::Verified, Some(a)) => {
                let lhs = pullback(map);
                let rhs = a * &map.source.defining_poly();
                lhs == rhs
            }
            (CertStatus::Refuted, _) => match &self.witness {
                Some(p) => {
                    map.source.rho_at(p).map(|r| r.is_zero()).unwrap_or(false)
                        && map
                            .evaluate(p)
                            .and_then(|v| map.target.rho_at(&v))
                            .map(|r| !r.is_zero())
                            .unwrap_or(false)
                }
                None => false,
            },
            _ => false,
        }
    }
}

/// `|D|²·(ρ'∘F)` written as `Im(N_g·D̄) − Σ s'_j |N_j|²`.
pub fn pullback(map: &QuadricMap) -> HermPoly {
    let space = map.space();
    let signs = map.target.signs();
    let d = map.denominator();
    let ng_dbar = &lift_holo(&map.g) * &lift_anti(&d);
    let mut acc = Poly::zero(2 * space.n());
    let half_over_i = GaussianRational::from_fracs(0, 1, -1, 2);
    let im =
        (&ng_dbar - &crate::exactalg::herm::conj_swap(&ng_dbar, space.n())).scale(&half_over_i);
    acc = &acc + &im;
    for (fj, &s) in map.f.iter().zip(signs) {
        let t = &lift_holo(fj) * &lift_anti(fj);
        acc = if s < 0 { &acc + &t } else { &acc - &t };
    }
    HermPoly::new(space, acc).expect("pullback is Hermitian")
}

/// Divides `p` (in the Hermitian variables of `quadric`) by its defining
/// function as a polynomial in `w̄`; returns `(quotient, remainder)`.
///
/// With `R = w − 2i⟨z, z̄⟩` one has `ρ = (i/2)(w̄ − R)`, so the remainder is
/// `p|_{w̄ = R}` and the quotient is `−2i` times the synthetic-division quotient.
pub fn divide_by_rho(p: &Poly, quadric: &Hyperquadric) -> (Poly, Poly) {
    let n = quadric.n();
    let nv = 2 * n;
    assert_eq!(p.nvars(), nv, "arity");
    let wbar = 2 * n - 1;
    let two_i = GaussianRational::from_ints(0, 2);
    let r = &Poly::var(nv, n - 1) - &quadric.levi_poly().scale(&two_i);
    let c = p.coefficients_in(wbar);
    let d = c.len() - 1;
    if d == 0 {
        return (Poly::zero(nv), p.clone());
    }
    let mut q: Vec<Poly> = vec![Poly::zero(nv); d];
    q[d - 1] = c[d].clone();
    for k in (1..d).rev() {
        q[k - 1] = &c[k] + &(&r * &q[k]);
    }
    let rem = &c[0] + &(&r * &q[0]);
    let mut quot = Poly::zero(nv);
    let mut wpow = Poly::one(nv);
    let wb = Poly::var(nv, wbar);
    for qk in &q {
        quot = &quot + &(qk * &wpow);
        wpow = &wpow * &wb;
    }
    (quot.scale(&-two_i), rem)
}

pub fn multiplier(map: &QuadricMap) -> Result<MultiplierCertificate> {
    let space = map.space();
    let p = pullback(map);
    let (quot, rem) = divide_by_rho(p.poly(), &map.source);
    let denom_sq = map.denom.as_ref().map(HermPoly::abs_sq);
    if rem.is_zero() {
        let a = HermPoly::new(space, quot)
            .map_err(|_| Error::Invalid("quotient is not Hermitian".into()))?;
        return Ok(MultiplierCertificate {
            status: CertStatus::Verified,
            multiplier: Some(a),
            denom_sq,
            remainder: None,
            witness: None,
            witness_value: None,
        });
    }
    let chart = ChartPoly::from_mixed(space, &rem, map.source.signs());
    let (witness, value) = find_witness(map, &chart)?;
    Ok(MultiplierCertificate {
        status: CertStatus::Refuted,
        multiplier: None,
        denom_sq,
        remainder: Some(chart),
        witness: Some(witness),
        witness_value: Some(value),
    })
}

/// A point of the source quadric where the chart remainder is nonzero.
fn find_witness(map: &QuadricMap, chart: &ChartPoly) -> Result<(Vec<GaussianRational>, Rational)> {
    let m = map.space().nz();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..4000u32 {
        let h = 1 + (attempt / 200) as i64;
        let z: Vec<GaussianRational> = (0..m)
            .map(|_| {
                GaussianRational::from_fracs(
                    rng.gen_range(-h..=h),
                    rng.gen_range(1..=2),
                    rng.gen_range(-h..=h),
                    rng.gen_range(1..=2),
                )
            })
            .collect();
        let u = Rational::new(rng.gen_range(-h..=h), rng.gen_range(1..=3));
        if chart.evaluate(&z, &u.clone().into())?.is_zero() {
            continue;
        }
        let p = map.source.lift_point(&z, &u)?;
        let Ok(img) = map.evaluate(&p) else { continue };
        let v = map.target.rho_at(&img)?;
        if !v.is_zero() {
            return Ok((p, v));
        }
    }
    Err(Error::Invalid(
        "nonzero remainder but no witness point found".into(),
    ))
}
