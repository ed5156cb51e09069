//! Seeded corpora of normal forms conjugated by target automorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use quadmap_core::autnorm::{compose, make_automorphism, random_aut_params, AutParams};
use quadmap_core::exactalg::{GaussianRational, HoloPoly, Monomial, Poly, VariableSpace};
use quadmap_core::gallery::normal_form_map;
use quadmap_core::qmap::multiplier;
use quadmap_core::{Error, Result};

use crate::mapfile::{GroundTruth, MapFile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub n: usize,
    pub ell: usize,
    pub big_n: usize,
    pub ell_target: usize,
    /// Largest weighted degree of a `ψ` term.
    pub psi_degree: u32,
    /// Height bound for automorphism parameters.
    pub height: i64,
    pub count: usize,
    pub seed: u64,
    /// Use `ψ = 0` instead of sampling.
    #[serde(default)]
    pub zero_psi: bool,
    /// Use `γ = id` instead of sampling.
    #[serde(default)]
    pub identity_gamma: bool,
}

impl CorpusSpec {
    pub fn new(
        n: usize,
        ell: usize,
        big_n: usize,
        ell_target: usize,
        count: usize,
        seed: u64,
    ) -> Self {
        CorpusSpec {
            n,
            ell,
            big_n,
            ell_target,
            psi_degree: 4,
            height: 2,
            count,
            seed,
            zero_psi: false,
            identity_gamma: false,
        }
    }

    /// `ℓ' < 2ℓ`, the regime in which normal forms are reachable.
    pub fn regime_a(&self) -> bool {
        self.ell_target < 2 * self.ell
    }

    /// Per-entry seed.
    pub fn entry_seed(&self, index: usize) -> u64 {
        self.seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(index as u64)
    }
}

/// A nonzero ψ with terms of weight `2..=max_weight` and no weight-2 `w` term.
pub fn random_psi<R: Rng>(space: VariableSpace, max_weight: u32, rng: &mut R) -> HoloPoly {
    let weights = space.weights();
    let n = space.n();
    let mut monos = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(j: usize, left: u32, weights: &[u32], exps: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if j == exps.len() {
            out.push(exps.clone());
            return;
        }
        let mut e = 0;
        while e * weights[j] <= left {
            exps[j] = e as u16;
            rec(j + 1, left - e * weights[j], weights, exps, out);
            e += 1;
        }
        exps[j] = 0;
    }
    rec(0, max_weight, &weights, &mut exps, &mut monos);
    monos.retain(|e| {
        let m = Monomial::from_exps(e);
        let wt = m.weighted_degree(&weights);
        wt >= 2 && !(wt == 2 && e[n - 1] > 0)
    });
    monos.sort();
    loop {
        let mut p = Poly::zero(n);
        for e in &monos {
            if rng.gen_bool(0.3) {
                let c = GaussianRational::from_ints(rng.gen_range(-2..=2), rng.gen_range(-1..=1));
                p.add_term(Monomial::from_exps(e), &c);
            }
        }
        if !p.is_zero() {
            return HoloPoly::from_poly(space, p);
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub file: MapFile,
    pub psi: Vec<HoloPoly>,
    pub gamma: AutParams,
}

pub fn gen_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    if spec.ell_target < spec.ell || 2 * spec.ell > spec.n.saturating_sub(1) {
        return Err(Error::Regime(format!(
            "need ell <= (n-1)/2 and ell <= ell', got n = {}, ell = {}, ell' = {}",
            spec.n, spec.ell, spec.ell_target
        )));
    }
    let space = VariableSpace::new(spec.n)?;
    let k = spec.ell_target - spec.ell;
    let mut out = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let seed = spec.entry_seed(index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi: Vec<HoloPoly> = (0..k)
            .map(|_| {
                if spec.zero_psi {
                    HoloPoly::zero(space)
                } else {
                    random_psi(space, spec.psi_degree, &mut rng)
                }
            })
            .collect();
        let f0 = normal_form_map(spec.n, spec.ell, spec.big_n, spec.ell_target, &psi)?;
        let gamma = if spec.identity_gamma {
            AutParams::identity(spec.big_n - 1)
        } else {
            random_aut_params(&f0.target, spec.height, false, &mut rng)
        };
        let map = if spec.identity_gamma {
            f0
        } else {
            let cert = multiplier(&f0)?;
            let tau = make_automorphism(&f0.target, gamma.clone())?;
            compose(&tau, &f0, &cert)?.map
        };
        let mut file = MapFile::from_map(&map).with_name(&format!("corpus-{}-{index}", spec.seed));
        file.metadata.seed = Some(seed);
        file.metadata.notes = Some(format!("regime_a = {}", spec.regime_a()));
        file.ground_truth = Some(GroundTruth {
            psi: psi.iter().map(|p| p.to_string()).collect(),
            gamma: gamma.clone(),
        });
        out.push(CorpusEntry { file, psi, gamma });
    }
    Ok(out)
}
