//! Transversality, side behaviour and the loci where they fail.

use serde::Serialize;

use super::map::QuadricMap;
use super::multiplier::{multiplier, MultiplierCertificate};
use crate::error::{Error, Result};
use crate::exactalg::{ChartPoly, GaussianRational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    TransversalPositive,
    TransversalNegative,
    NonTransversal,
}

impl Verdict {
    pub fn from_sign(s: i32) -> Self {
        match s {
            1 => Verdict::TransversalPositive,
            -1 => Verdict::TransversalNegative,
            _ => Verdict::NonTransversal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SideSample {
    pub eps: Rational,
    /// `ρ'(F(p + (0, iε)))`
    pub target_rho: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalityReport {
    pub point: Vec<GaussianRational>,
    pub a_value: Rational,
    pub verdict: Verdict,
    pub samples: Vec<SideSample>,
    /// Every sample lies on the side predicted by the sign of `A(p)`.
    pub side_consistent: bool,
}

const SAMPLE_EPS: [(i64, i64); 4] = [(1, 1), (1, 2), (1, 4), (1, 8)];

pub fn transversality(map: &QuadricMap, p: &[GaussianRational]) -> Result<TransversalityReport> {
    let cert = multiplier(map)?;
    transversality_with(map, &cert, p)
}

pub fn transversality_with(
    map: &QuadricMap,
    cert: &MultiplierCertificate,
    p: &[GaussianRational],
) -> Result<TransversalityReport> {
    let rho = map.source.rho_at(p)?;
    if !rho.is_zero() {
        return Err(Error::NotOnQuadric(rho.to_string()));
    }
    let a = cert.a_at(p)?;
    let verdict = Verdict::from_sign(a.signum());
    let mut samples = Vec::new();
    for (num, den) in SAMPLE_EPS {
        let eps = Rational::new(num, den);
        let mut q = p.to_vec();
        let last = q.len() - 1;
        q[last] = &q[last] + &GaussianRational::new(Rational::zero(), eps.clone());
        let Ok(img) = map.evaluate(&q) else { continue };
        samples.push(SideSample {
            eps,
            target_rho: map.target.rho_at(&img)?,
        });
    }
    let side_consistent = samples.iter().all(|s| s.target_rho.signum() == a.signum());
    Ok(TransversalityReport {
        point: p.to_vec(),
        a_value: a,
        verdict,
        samples,
        side_consistent,
    })
}

/// The multiplier on the source chart; its zero set is where transversality fails.
#[derive(Clone, Debug)]
pub struct Locus {
    pub chart: ChartPoly,
}

impl Locus {
    pub fn is_empty(&self) -> bool {
        self.chart.len() == 1 && self.chart.constant_term().re.signum() != 0
    }

    /// `z_j = 0` when the chart polynomial is a multiple of `|z_j|²`, `empty`
    /// for a nonzero constant, otherwise `<polynomial> = 0`.
    pub fn describe(&self) -> String {
        if self.chart.is_zero() {
            return "everywhere".into();
        }
        if self.is_empty() {
            return "empty".into();
        }
        if self.chart.len() == 1 {
            let (m, _) = self.chart.terms().next().unwrap();
            let k = self.chart.space().nz();
            let e = m.exps();
            let nonzero: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
            if nonzero.len() == 2 && nonzero[1] == nonzero[0] + k && e[nonzero[0]] == e[nonzero[1]]
            {
                return format!("z{} = 0", nonzero[0] + 1);
            }
        }
        format!("{} = 0", self.chart)
    }
}

pub fn nontransversality_locus(map: &QuadricMap) -> Result<Locus> {
    let cert = multiplier(map)?;
    locus_from(map, &cert)
}

pub fn locus_from(map: &QuadricMap, cert: &MultiplierCertificate) -> Result<Locus> {
    let a = cert.a()?;
    Ok(Locus {
        chart: ChartPoly::from_herm(a, map.source.signs()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureReport {
    pub verdict: Verdict,
    pub applicable: bool,
    pub checks: Vec<ConditionCheck>,
    /// All eigenvalue-count conditions hold (vacuously true when not applicable).
    pub consistent: bool,
}

/// Eigenvalue-count conditions implied by transversality at the origin.
pub fn signature_necessary_conditions(map: &QuadricMap) -> Result<SignatureReport> {
    let cert = multiplier(map)?;
    let origin = vec![GaussianRational::zero(); map.source.n()];
    let verdict = Verdict::from_sign(cert.a_at(&origin)?.signum());
    let (n, l) = (map.source.n() as i64, map.source.ell() as i64);
    let (big_n, lp) = (map.target.n() as i64, map.target.ell() as i64);
    let check = |condition: String, holds: bool| ConditionCheck { condition, holds };
    let checks = match verdict {
        Verdict::TransversalPositive => vec![
            check(format!("ell <= ell' ({l} <= {lp})"), l <= lp),
            check(
                format!("n - ell <= N - ell' ({} <= {})", n - l, big_n - lp),
                n - l <= big_n - lp,
            ),
        ],
        Verdict::TransversalNegative => vec![
            check(
                format!("ell' >= n - 1 - ell ({lp} >= {})", n - 1 - l),
                lp >= n - 1 - l,
            ),
            check(
                format!("N - 1 - ell' >= ell ({} >= {l})", big_n - 1 - lp),
                big_n - 1 - lp >= l,
            ),
        ],
        Verdict::NonTransversal => Vec::new(),
    };
    let consistent = checks.iter().all(|c| c.holds);
    Ok(SignatureReport {
        verdict,
        applicable: verdict != Verdict::NonTransversal,
        checks,
        consistent,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingOutcome {
    /// A hypothesis applies and `g ≡ 0`.
    Consistent,
    /// A hypothesis applies but `g` is not identically zero.
    Inconsistent,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub outcome: VanishingOutcome,
    pub positive_side_found: bool,
    pub negative_side_found: bool,
    pub hypothesis_a: bool,
    pub hypothesis_b: bool,
    pub g_vanishes: bool,
    pub notes: Vec<String>,
}

/// Checks the vanishing of `g` for maps with `∂g/∂w(0) = 0`.
///
/// Side behaviour is decided from the sign of `A` at sampled quadric points:
/// `A(p) > 0` means interior points near `p` map into the target Siegel
/// domain, `A(p) < 0` into the complement of its closure.
pub fn vanishing_check(map: &QuadricMap) -> Result<VanishingReport> {
    let cert = multiplier(map)?;
    let a = cert.a()?;
    let (n, l) = (map.source.n(), map.source.ell());
    let (big_n, lp) = (map.target.n(), map.target.ell());
    let g_vanishes = map.g.is_zero();
    let mut notes = Vec::new();
    let mut report = VanishingReport {
        outcome: VanishingOutcome::NotApplicable,
        positive_side_found: false,
        negative_side_found: false,
        hypothesis_a: false,
        hypothesis_b: false,
        g_vanishes,
        notes: Vec::new(),
    };
    if !map.base_normalized() {
        notes.push("F(0) != 0".into());
        report.notes = notes;
        return Ok(report);
    }
    let origin = vec![GaussianRational::zero(); n];
    if !cert.a_at(&origin)?.is_zero() {
        notes.push("dg/dw(0) != 0: map is transversal at the origin".into());
        report.notes = notes;
        return Ok(report);
    }
    if 2 * l > n - 1 || 2 * lp > big_n - 1 {
        notes.push("signatures are not normalized".into());
        report.notes = notes;
        return Ok(report);
    }
    if a.is_zero() {
        notes.push("A = 0: F maps a neighbourhood into the target quadric".into());
        report.outcome = if g_vanishes {
            VanishingOutcome::Consistent
        } else {
            VanishingOutcome::Inconsistent
        };
        report.notes = notes;
        return Ok(report);
    }
    for p in sample_points(map) {
        let Ok(v) = cert.a_at(&p) else { continue };
        match v.signum() {
            1 => report.positive_side_found = true,
            -1 => report.negative_side_found = true,
            _ => {}
        }
    }
    report.hypothesis_a = report.positive_side_found && lp < 2 * l;
    report.hypothesis_b = report.negative_side_found && lp < n - 1;
    if !(report.hypothesis_a || report.hypothesis_b) {
        notes.push(format!(
            "ell' = {lp}, 2*ell = {}, n - 1 = {}: no hypothesis applies",
            2 * l,
            n - 1
        ));
    } else {
        report.outcome = if g_vanishes {
            VanishingOutcome::Consistent
        } else {
            VanishingOutcome::Inconsistent
        };
    }
    report.notes = notes;
    Ok(report)
}

/// Deterministic grid of source-quadric points.
pub(crate) fn sample_points(map: &QuadricMap) -> Vec<Vec<GaussianRational>> {
    let m = map.space().nz();
    let vals = [
        GaussianRational::from_ints(1, 0),
        GaussianRational::from_ints(-1, 0),
        GaussianRational::from_ints(0, 1),
        GaussianRational::from_fracs(1, 2, 1, 3),
        GaussianRational::from_fracs(-2, 3, 1, 2),
    ];
    let mut out = Vec::new();
    for k in 0..(vals.len().pow(m.min(4) as u32)).min(400) {
        let mut idx = k;
        let z: Vec<GaussianRational> = (0..m)
            .map(|_| {
                let v = vals[idx % vals.len()].clone();
                idx /= vals.len();
                v
            })
            .collect();
        for u in [Rational::zero(), Rational::new(1, 2)] {
            if let Ok(p) = map.source.lift_point(&z, &u) {
                out.push(p);
            }
        }
    }
    out
}
