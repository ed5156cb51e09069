//! Checks of the vanishing statement for `Σ a_i(z)·conj(b_i)(ξ̄) = A·⟨z,ξ̄⟩_ℓ^{r+1}`.

use rand::Rng;

use super::division::{divide_by_form, polarized_form, Division};
use crate::error::{Error, Result};
use crate::exactalg::{BiholoPoly, GaussianRational, HoloPoly, Monomial, Poly, VariableSpace};

/// One layer `Σ_i a_i·conj(b_i)`; unequal lengths are padded with zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub a: Vec<HoloPoly>,
    pub b: Vec<HoloPoly>,
}

impl Layer {
    pub fn new(a: Vec<HoloPoly>, b: Vec<HoloPoly>) -> Self {
        Layer { a, b }
    }

    /// Number of products after padding.
    pub fn count(&self) -> usize {
        self.a.len().max(self.b.len())
    }

    pub fn sum(&self, space: VariableSpace) -> BiholoPoly {
        let mut s = BiholoPoly::zero(space);
        for (a, b) in self.a.iter().zip(&self.b) {
            s = &s + &BiholoPoly::holo_times_conj(a, b);
        }
        s
    }
}

/// Families of germs in `z ∈ ℂ^{n−1}`, stored as w-free polynomials on the
/// `n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaInstance {
    pub n: usize,
    pub ell: usize,
    /// Layer `j` is multiplied by `⟨z,ξ̄⟩_ℓ^j`.
    pub layers: Vec<Layer>,
}

impl LemmaInstance {
    pub fn single(n: usize, ell: usize, a: Vec<HoloPoly>, b: Vec<HoloPoly>) -> Result<Self> {
        Self::layered(n, ell, vec![Layer::new(a, b)])
    }

    pub fn layered(n: usize, ell: usize, layers: Vec<Layer>) -> Result<Self> {
        if n < 2 || 2 * ell > n - 1 {
            return Err(Error::Invalid(format!(
                "need n >= 2 and ell <= (n-1)/2, got n = {n}, ell = {ell}"
            )));
        }
        if layers.is_empty() {
            return Err(Error::Invalid("at least one layer is required".into()));
        }
        for p in layers.iter().flat_map(|l| l.a.iter().chain(&l.b)) {
            if p.space().n() != n {
                return Err(Error::SpaceMismatch(p.space().n(), n));
            }
            if !p.is_w_free() {
                return Err(Error::Invalid(format!("family member {p} depends on w")));
            }
        }
        Ok(LemmaInstance { n, ell, layers })
    }

    pub fn space(&self) -> VariableSpace {
        VariableSpace::new(self.n).expect("validated")
    }

    /// `1 ≤ k_j ≤ n−2` for every layer.
    pub fn hypotheses_hold(&self) -> bool {
        self.layers
            .iter()
            .all(|l| (1..=self.n - 2).contains(&l.count()))
    }

    /// The full left-hand side `Σ_j layer_j·Q^j`.
    pub fn lhs(&self) -> BiholoPoly {
        let space = self.space();
        let q = polarized_form(space, self.ell);
        let mut qj = BiholoPoly::from_poly(space, Poly::one(2 * self.n));
        let mut s = BiholoPoly::zero(space);
        for l in &self.layers {
            s = &s + &(&l.sum(space) * &qj);
            qj = &qj * &q;
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisibilityVerdict {
    /// Hypotheses hold, the sum is divisible, and every conclusion holds.
    Confirmed,
    /// Hypotheses hold and the sum is not divisible; nothing to conclude.
    NotDivisible,
    /// Some layer count is outside `1..=n−2`; reported without a claim.
    HypothesisViolated,
    /// Hypotheses hold, the sum is divisible, and a conclusion fails.
    Counterexample,
}

#[derive(Clone, Debug)]
pub struct DivisibilityReport {
    pub n: usize,
    pub ell: usize,
    pub counts: Vec<usize>,
    pub hypotheses: bool,
    /// `A` when `Q^{r+1}` divides the sum.
    pub quotient: Option<BiholoPoly>,
    /// Point on `Q = 0` where the partial quotient does not vanish.
    pub witness: Option<(
        Vec<GaussianRational>,
        Vec<GaussianRational>,
        GaussianRational,
    )>,
    /// Which layer sums vanish identically.
    pub layer_zero: Vec<bool>,
    pub verdict: DivisibilityVerdict,
}

impl DivisibilityReport {
    pub fn divisible(&self) -> bool {
        self.quotient.is_some()
    }

    pub fn quotient_is_zero(&self) -> bool {
        self.quotient.as_ref().is_some_and(|a| a.is_zero())
    }
}

/// Tests divisibility of the layered sum by `⟨z,ξ̄⟩_ℓ^{r+1}` and checks the
/// vanishing conclusions on divisible instances.
pub fn divisibility_check(inst: &LemmaInstance) -> DivisibilityReport {
    let space = inst.space();
    let mut cur = inst.lhs();
    let mut quotient = None;
    let mut witness = None;
    for step in 0..inst.layers.len() {
        match divide_by_form(&cur, inst.ell) {
            Division::Divisible { quotient: q } => {
                cur = q;
                if step + 1 == inst.layers.len() {
                    quotient = Some(cur.clone());
                }
            }
            Division::NotDivisible { z, xibar, value } => {
                witness = Some((z, xibar, value));
                break;
            }
        }
    }
    let layer_zero: Vec<bool> = inst.layers.iter().map(|l| l.sum(space).is_zero()).collect();
    let hypotheses = inst.hypotheses_hold();
    let verdict = match (&quotient, hypotheses) {
        (_, false) => DivisibilityVerdict::HypothesisViolated,
        (None, true) => DivisibilityVerdict::NotDivisible,
        (Some(a), true) if a.is_zero() && layer_zero.iter().all(|&z| z) => {
            DivisibilityVerdict::Confirmed
        }
        (Some(_), true) => DivisibilityVerdict::Counterexample,
    };
    DivisibilityReport {
        n: inst.n,
        ell: inst.ell,
        counts: inst.layers.iter().map(Layer::count).collect(),
        hypotheses,
        quotient,
        witness,
        layer_zero,
        verdict,
    }
}

/// `k = n−1`, `a = (z_j)`, `b = (s_j z_j)`: the sum is exactly `⟨z,ξ̄⟩_ℓ`, so `A = 1`.
pub fn sharpness_instance(n: usize, ell: usize) -> Result<LemmaInstance> {
    let space = VariableSpace::new(n)?;
    let signs = crate::quadric::standard_signs(n - 1, ell);
    let a: Vec<HoloPoly> = (0..n - 1).map(|j| HoloPoly::z(space, j)).collect();
    let b = a
        .iter()
        .zip(&signs)
        .map(|(z, &s)| z.scale(&GaussianRational::from(s as i64)))
        .collect();
    LemmaInstance::single(n, ell, a, b)
}

/// Nonconstant z-monomials of degree at most `deg`.
pub fn z_monomials(space: VariableSpace, deg: u32) -> Vec<HoloPoly> {
    let nz = space.nz();
    let mut out = Vec::new();
    let mut exps = vec![0u16; space.n()];
    fn rec(j: usize, left: u32, nz: usize, exps: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if j == nz {
            out.push(exps.clone());
            return;
        }
        for e in 0..=left {
            exps[j] = e as u16;
            rec(j + 1, left - e, nz, exps, out);
        }
        exps[j] = 0;
    }
    let mut raw = Vec::new();
    rec(0, deg, nz, &mut exps, &mut raw);
    raw.sort_by_key(|e| {
        (
            e.iter().map(|&x| x as u32).sum::<u32>(),
            std::cmp::Reverse(e.clone()),
        )
    });
    for e in raw {
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        out.push(HoloPoly::from_poly(
            space,
            Poly::monomial(Monomial::from_exps(&e), GaussianRational::one()),
        ));
    }
    out
}

/// Single-layer instances with one-term entries `c·z^α`, `1 ≤ |α| ≤ 2`,
/// `c ∈ {±1, ±2}` and `a_1` monic, for every `ℓ ≤ (n−1)/2` and `1 ≤ k ≤ n−2`.
/// Returns the number of instances visited.
pub fn for_each_exhaustive_instance<F: FnMut(&LemmaInstance)>(n: usize, mut visit: F) -> usize {
    let space = VariableSpace::new(n).expect("n >= 1");
    let monos = z_monomials(space, 2);
    let coeffs: Vec<GaussianRational> = [1, -1, 2, -2]
        .iter()
        .map(|&c| GaussianRational::from(c))
        .collect();
    let scaled: Vec<HoloPoly> = monos
        .iter()
        .flat_map(|m| coeffs.iter().map(move |c| m.scale(c)))
        .collect();
    let mut count = 0;
    for ell in 0..=(n - 1) / 2 {
        for k in 1..=n.saturating_sub(2) {
            // index tuples over: a_1 ∈ monos, then 2k−1 entries from `scaled`
            let slots = 2 * k - 1;
            let mut idx = vec![0usize; slots];
            for a1 in &monos {
                loop {
                    let mut a = vec![a1.clone()];
                    a.extend(idx[..k - 1].iter().map(|&i| scaled[i].clone()));
                    let b = idx[k - 1..].iter().map(|&i| scaled[i].clone()).collect();
                    visit(&LemmaInstance::single(n, ell, a, b).expect("valid"));
                    count += 1;
                    if !advance(&mut idx, scaled.len()) {
                        break;
                    }
                }
            }
        }
    }
    count
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// A w-free polynomial with up to `terms` terms of degree `1..=deg` and
/// Gaussian-integer coefficients of height `≤ height`.
pub fn random_germ<R: Rng>(
    space: VariableSpace,
    deg: u32,
    terms: usize,
    height: i64,
    rng: &mut R,
) -> HoloPoly {
    let monos = z_monomials(space, deg);
    let mut p = HoloPoly::zero(space);
    for _ in 0..terms {
        let m = &monos[rng.gen_range(0..monos.len())];
        let c = GaussianRational::from_ints(
            rng.gen_range(-height..=height),
            rng.gen_range(-height..=height),
        );
        p = &p + &m.scale(&c);
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceShape {
    /// Independent random families.
    Generic,
    /// Terms cancel in pairs, so the sum is divisible with `A = 0`.
    Cancelling,
    /// `n−1` products spelling `C·Q` with one product removed.
    NearMiss,
}

/// Randomized single-layer instance with `k ≤ n−2` of the given shape.
pub fn random_divisibility_instance<R: Rng>(
    n: usize,
    ell: usize,
    shape: InstanceShape,
    rng: &mut R,
) -> LemmaInstance {
    let space = VariableSpace::new(n).expect("n >= 1");
    let kmax = n - 2;
    let k = rng.gen_range(1..=kmax);
    let germ = |rng: &mut R| random_germ(space, 2, rng.gen_range(1..=3), 2, rng);
    let (a, b) = match shape {
        InstanceShape::Generic => (
            (0..k).map(|_| germ(rng)).collect(),
            (0..k).map(|_| germ(rng)).collect(),
        ),
        InstanceShape::Cancelling => {
            let mut a: Vec<HoloPoly> = (0..k).map(|_| germ(rng)).collect();
            let mut b: Vec<HoloPoly> = (0..k).map(|_| germ(rng)).collect();
            for j in (0..k).step_by(2) {
                if j + 1 < k {
                    a[j + 1] = a[j].clone();
                    b[j + 1] = -&b[j];
                } else {
                    b[j] = HoloPoly::zero(space);
                }
            }
            (a, b)
        }
        InstanceShape::NearMiss => {
            // Σ_j (c·z_j)·conj(s_j z_j) = c·Q; drop one product
            let signs = crate::quadric::standard_signs(n - 1, ell);
            let c = germ(rng);
            let drop = rng.gen_range(0..n - 1);
            let mut a = Vec::new();
            let mut b = Vec::new();
            for j in (0..n - 1).filter(|&j| j != drop) {
                a.push(&c * &HoloPoly::z(space, j));
                b.push(HoloPoly::z(space, j).scale(&GaussianRational::from(signs[j] as i64)));
            }
            (a, b)
        }
    };
    LemmaInstance::single(n, ell, a, b).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sharpness_witness_has_unit_quotient() {
        for (n, ell) in [(3, 0), (3, 1), (4, 1), (5, 2)] {
            let r = divisibility_check(&sharpness_instance(n, ell).unwrap());
            assert_eq!(r.verdict, DivisibilityVerdict::HypothesisViolated);
            let a = r.quotient.unwrap();
            assert_eq!(a.poly(), &Poly::one(2 * n));
        }
    }

    #[test]
    fn cancelling_instance_confirms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_divisibility_instance(4, 1, InstanceShape::Cancelling, &mut rng);
        assert_eq!(
            divisibility_check(&inst).verdict,
            DivisibilityVerdict::Confirmed
        );
    }

    #[test]
    fn near_miss_is_not_divisible() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let inst = random_divisibility_instance(4, 1, InstanceShape::NearMiss, &mut rng);
            let r = divisibility_check(&inst);
            assert!(
                matches!(
                    r.verdict,
                    DivisibilityVerdict::NotDivisible | DivisibilityVerdict::Confirmed
                ),
                "{r:?}"
            );
            if let Some((z, xb, v)) = &r.witness {
                assert!(!v.is_zero());
                let mut holo = z.clone();
                holo.push(GaussianRational::zero());
                let mut anti = xb.clone();
                anti.push(GaussianRational::zero());
                assert!(polarized_form(inst.space(), 1)
                    .evaluate(&holo, &anti)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn layered_cancellation_needs_the_hypothesis() {
        // layer 0 = Q (k = n−1), layer 1 = −1: the total vanishes but layer 0 does not
        let n = 3;
        let s = VariableSpace::new(n).unwrap();
        let sharp = sharpness_instance(n, 0).unwrap().layers.remove(0);
        let inst = LemmaInstance::layered(
            n,
            0,
            vec![
                sharp,
                Layer::new(
                    vec![HoloPoly::one(s)],
                    vec![HoloPoly::one(s).scale(&GaussianRational::from(-1))],
                ),
            ],
        )
        .unwrap();
        let r = divisibility_check(&inst);
        assert!(r.quotient_is_zero());
        assert_eq!(r.layer_zero, vec![false, false]);
        assert_eq!(r.verdict, DivisibilityVerdict::HypothesisViolated);
    }

    #[test]
    fn exhaustive_family_sizes() {
        // n = 3: k = 1, five monomials, twenty scaled ones, two signatures
        assert_eq!(for_each_exhaustive_instance(3, |_| {}), 2 * 5 * 20);
    }
}
