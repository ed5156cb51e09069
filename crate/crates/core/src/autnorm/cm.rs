//! The linearized map equation `𝓛(p, q) = A` and the rank classes `S̃_k`.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::herm::lift_holo;
use crate::exactalg::{
    ChartPoly, GaussianRational, HermPoly, HoloPoly, Matrix, Monomial, Poly, Rational,
    VariableSpace,
};

/// `Im{q − 2i Σ s_j z̄_j p_j}` restricted to `w = u + i⟨z, z̄⟩`.
pub fn cm_operator(
    space: VariableSpace,
    signs: &[i8],
    p: &[HoloPoly],
    q: &HoloPoly,
) -> Result<ChartPoly> {
    if p.len() != space.nz() {
        return Err(Error::Dimension {
            expected: space.nz(),
            got: p.len(),
        });
    }
    let n = space.n();
    let nv = 2 * n;
    let mut x = lift_holo(q);
    let minus_two_i = GaussianRational::from_ints(0, -2);
    for (j, (pj, &s)) in p.iter().zip(signs).enumerate() {
        let zbar = Poly::var(nv, n + j);
        x = &x
            + &(&zbar * &lift_holo(pj)).scale(&(&minus_two_i * &GaussianRational::from(s as i64)));
    }
    Ok(ChartPoly::from_mixed(space, &x, signs).imag_part())
}

/// One bidegree block of `A`: `Σ_j p_j(z) conj(q_j(z))·w^γ w̄^δ`.
#[derive(Clone, Debug)]
pub struct StildeBlock {
    /// `(μ, ν, γ, δ)`: degrees in `z`, `z̄`, `w`, `w̄`.
    pub index: (u32, u32, u16, u16),
    pub rank: usize,
    pub p: Vec<HoloPoly>,
    pub q: Vec<HoloPoly>,
}

#[derive(Clone, Debug)]
pub struct StildeReport {
    pub k: usize,
    pub member: bool,
    pub max_rank: usize,
    pub blocks: Vec<StildeBlock>,
}

impl StildeReport {
    /// Re-expands the factorizations.
    pub fn reconstruct(&self, space: VariableSpace) -> Poly {
        let n = space.n();
        let nv = 2 * n;
        let mut acc = Poly::zero(nv);
        for b in &self.blocks {
            let ww = Monomial::from_exps(&{
                let mut e = vec![0u16; nv];
                e[n - 1] = b.index.2;
                e[2 * n - 1] = b.index.3;
                e
            });
            let wpow = Poly::monomial(ww, GaussianRational::one());
            for (pj, qj) in b.p.iter().zip(&b.q) {
                let t = &lift_holo(pj) * &crate::exactalg::herm::lift_anti(qj);
                acc = &acc + &(&t * &wpow);
            }
        }
        acc
    }
}

/// Rank of every bidegree block of `A`, with explicit rank factorizations.
pub fn stilde_membership(a: &HermPoly, k: usize) -> Result<StildeReport> {
    let space = a.space();
    let n = space.n();
    if let Some(ord) = a.poly().terms().map(|(m, _)| m.degree()).min() {
        if ord < 2 {
            return Err(Error::Invalid(
                "A must vanish to order 2 at the origin".into(),
            ));
        }
    }
    // group terms by (μ, ν, γ, δ), then by (holomorphic z-monomial, antiholomorphic z-monomial)
    type Key = (u32, u32, u16, u16);
    let mut groups: BTreeMap<Key, Vec<(Vec<u16>, Vec<u16>, GaussianRational)>> = BTreeMap::new();
    for (m, c) in a.poly().terms() {
        let e = m.exps();
        let hz: Vec<u16> = e[..n - 1].to_vec();
        let az: Vec<u16> = e[n..2 * n - 1].to_vec();
        let mu = hz.iter().map(|&x| x as u32).sum();
        let nu = az.iter().map(|&x| x as u32).sum();
        groups
            .entry((mu, nu, e[n - 1], e[2 * n - 1]))
            .or_default()
            .push((hz, az, c.clone()));
    }
    let mut blocks = Vec::new();
    let mut max_rank = 0;
    for (index, entries) in groups {
        let mut rows: Vec<Vec<u16>> = entries.iter().map(|e| e.0.clone()).collect();
        rows.sort();
        rows.dedup();
        let mut cols: Vec<Vec<u16>> = entries.iter().map(|e| e.1.clone()).collect();
        cols.sort();
        cols.dedup();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (h, an, c) in &entries {
            let i = rows.binary_search(h).unwrap();
            let j = cols.binary_search(an).unwrap();
            m.set(i, j, c.clone());
        }
        let (cm, rm) = m.rank_factorization();
        let rank = cm.cols();
        max_rank = max_rank.max(rank);
        let z_mono = |exps: &[u16]| {
            let mut e = exps.to_vec();
            e.push(0);
            Monomial::from_exps(&e)
        };
        let p = (0..rank)
            .map(|t| {
                let poly = Poly::from_terms(
                    n,
                    rows.iter()
                        .enumerate()
                        .map(|(i, r)| (z_mono(r), cm.get(i, t).clone())),
                );
                HoloPoly::from_poly(space, poly)
            })
            .collect();
        // conj(q_t) has coefficients rm[t][j] on z̄^cols[j]
        let q = (0..rank)
            .map(|t| {
                let poly = Poly::from_terms(
                    n,
                    cols.iter()
                        .enumerate()
                        .map(|(j, c)| (z_mono(c), rm.get(t, j).conj())),
                );
                HoloPoly::from_poly(space, poly)
            })
            .collect();
        blocks.push(StildeBlock { index, rank, p, q });
    }
    Ok(StildeReport {
        k,
        member: max_rank <= k,
        max_rank,
        blocks,
    })
}

/// A real weighted-homogeneous `A` of degree `s` in `S̃_k`, built as
/// `Σ_{j≤k} (P_j Q̄_j + Q_j P̄_j)` with `2 ≤ wt P_j < wt Q_j`, and `P_j` free of `w`
/// when `wt P_j = 2`, the shape `Σ ⟨φ^{(s₁)}, φ̄^{(s₂)}⟩` takes for a normalized map.
///
/// Outside this shape the system is solvable: `z_j·h̄ + h·z̄_j` is `𝓛(p, 0)` with
/// `p_j = h` up to sign, and `w·h̄ + h·w̄` is reached with `q` and `p` divisible by `h`.
pub fn random_stilde<R: Rng>(
    space: VariableSpace,
    s: u32,
    k: usize,
    height: i64,
    rng: &mut R,
) -> HermPoly {
    assert!(s >= 5, "needs two distinct weights of at least 2");
    let nv = 2 * space.n();
    let mut acc = Poly::zero(nv);
    for _ in 0..k {
        let a = rng.gen_range(2..=(s - 1) / 2);
        let b = s - a;
        let p = loop {
            let p = random_weighted(space, a, height, rng);
            let p = if a == 2 {
                let wi = space.n() - 1;
                let terms = p
                    .poly()
                    .terms()
                    .filter(|(m, _)| m.get(wi) == 0)
                    .map(|(m, c)| (m.clone(), c.clone()));
                HoloPoly::from_poly(space, Poly::from_terms(space.n(), terms))
            } else {
                p
            };
            if !p.is_zero() {
                break p;
            }
        };
        let q = random_weighted(space, b, height, rng);
        let pq = &lift_holo(&p) * &crate::exactalg::herm::lift_anti(&q);
        let qp = &lift_holo(&q) * &crate::exactalg::herm::lift_anti(&p);
        acc = &acc + &(&pq + &qp);
    }
    HermPoly::new(space, acc).expect("symmetric by construction")
}

/// Sparse holomorphic polynomial of exact weight `t`.
pub fn random_weighted<R: Rng>(space: VariableSpace, t: u32, height: i64, rng: &mut R) -> HoloPoly {
    loop {
        let mut p = Poly::zero(space.n());
        for m in weighted_monomials(space, t) {
            if rng.gen_bool(0.4) {
                let c = GaussianRational::from_ints(
                    rng.gen_range(-height..=height),
                    rng.gen_range(-height..=height),
                );
                p.add_term(m, &c);
            }
        }
        if !p.is_zero() {
            return HoloPoly::from_poly(space, p);
        }
    }
}

/// All monomials in `(z, w)` of weighted degree exactly `t`.
pub fn weighted_monomials(space: VariableSpace, t: u32) -> Vec<Monomial> {
    let n = space.n();
    let m = space.nz();
    let mut out = Vec::new();
    for e in 0..=(t / 2) {
        let d = t - 2 * e;
        let mut exps = vec![0u16; n];
        exps[n - 1] = e as u16;
        compositions(d, m, 0, &mut exps, &mut out);
    }
    out.sort();
    out
}

fn compositions(rest: u32, m: usize, i: usize, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if i + 1 == m {
        exps[i] = rest as u16;
        out.push(Monomial::from_exps(exps));
        return;
    }
    for k in 0..=rest {
        exps[i] = k as u16;
        compositions(rest - k, m, i + 1, exps, out);
    }
    exps[i] = 0;
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmConsistency {
    /// Outcome agrees with `p ≡ 0, q ≡ 0, A ≡ 0`.
    Consistent,
    /// A nontrivial solution exists although the hypotheses hold.
    Inconsistent,
    /// `s < 5` or `A` not in `S̃_{n−2}`.
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct CmSolution {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub solvable: bool,
    /// One solution `(p, q)` when solvable.
    pub particular: Option<(Vec<HoloPoly>, HoloPoly)>,
    pub in_stilde: bool,
    pub consistency: CmConsistency,
}

/// Reduced row-echelon form over ℚ, built one sparse row at a time.
struct Echelon {
    ncols: usize,
    pivots: HashMap<usize, BTreeMap<usize, Rational>>,
    inconsistent: bool,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: HashMap::new(),
            inconsistent: false,
        }
    }

    /// Column `ncols` holds the right-hand side.
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        loop {
            let Some((&c, _)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                break;
            };
            let f = row.remove(&c).unwrap();
            for (k, v) in &self.pivots[&c] {
                if *k == c {
                    continue;
                }
                let e = row.entry(*k).or_insert_with(Rational::zero);
                *e -= &(&f * v);
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        let Some((&lead, lv)) = row.iter().next() else {
            return;
        };
        if lead == self.ncols {
            self.inconsistent = true;
            return;
        }
        let inv = lv.recip().unwrap();
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        // back-substitute into existing pivot rows
        for prow in self.pivots.values_mut() {
            if let Some(f) = prow.remove(&lead) {
                for (k, v) in &row {
                    if *k == lead {
                        continue;
                    }
                    let e = prow.entry(*k).or_insert_with(Rational::zero);
                    *e -= &(&f * v);
                    if e.is_zero() {
                        prow.remove(k);
                    }
                }
            }
        }
        self.pivots.insert(lead, row);
    }
}

/// Solves `𝓛(p, q) = A|_{chart}` for weighted-homogeneous `p` (degree `s−1`) and `q` (degree `s`).
pub fn cm_kernel_solve(n: usize, ell: usize, s: u32, a: Option<&HermPoly>) -> Result<CmSolution> {
    if s < 2 {
        return Err(Error::Invalid("s must be at least 2".into()));
    }
    let space = VariableSpace::new(n)?;
    let signs = crate::quadric::standard_signs(n - 1, ell);
    if let Some(a) = a {
        if a.space() != space {
            return Err(Error::SpaceMismatch(n, a.space().n()));
        }
        if !a.is_zero()
            && a.poly()
                .terms()
                .any(|(m, _)| m.weighted_degree(&a.weights()) != s)
        {
            return Err(Error::Invalid(format!(
                "A is not weighted homogeneous of degree {s}"
            )));
        }
    }
    let p_monos = weighted_monomials(space, s - 1);
    let q_monos = weighted_monomials(space, s);
    // unknown slot: (component (n−1 = q), monomial)
    let mut slots: Vec<(usize, Monomial)> = Vec::new();
    for j in 0..n - 1 {
        slots.extend(p_monos.iter().map(|m| (j, m.clone())));
    }
    slots.extend(q_monos.iter().map(|m| (n - 1, m.clone())));
    let nunk = 2 * slots.len();
    // image of each real unknown
    let mut eqs: BTreeMap<Monomial, BTreeMap<usize, GaussianRational>> = BTreeMap::new();
    for (idx, (comp, mono)) in slots.iter().enumerate() {
        for (part, c) in [(0, GaussianRational::one()), (1, GaussianRational::i())] {
            let basis = HoloPoly::from_poly(space, Poly::monomial(mono.clone(), c));
            let mut p = vec![HoloPoly::zero(space); n - 1];
            let mut q = HoloPoly::zero(space);
            if *comp < n - 1 {
                p[*comp] = basis;
            } else {
                q = basis;
            }
            let img = cm_operator(space, &signs, &p, &q)?;
            for (m, v) in img.terms() {
                eqs.entry(m.clone())
                    .or_default()
                    .insert(2 * idx + part, v.clone());
            }
        }
    }
    let rhs = match a {
        Some(a) => ChartPoly::from_herm(a, &signs).poly().clone(),
        None => Poly::zero(2 * (n - 1) + 1),
    };
    for (m, v) in rhs.terms() {
        eqs.entry(m.clone())
            .or_default()
            .insert(usize::MAX, v.clone());
    }
    let mut ech = Echelon::new(nunk);
    let mut nequations = 0;
    for (_, row) in eqs {
        // each complex coefficient gives a real and an imaginary equation
        for take_im in [false, true] {
            let mut r = BTreeMap::new();
            for (k, v) in &row {
                let x = if take_im { v.im.clone() } else { v.re.clone() };
                if !x.is_zero() {
                    r.insert(if *k == usize::MAX { nunk } else { *k }, x);
                }
            }
            if !r.is_empty() {
                nequations += 1;
                ech.insert(r);
            }
        }
    }
    let rank = ech.pivots.len();
    let kernel_dim = nunk - rank;
    let solvable = !ech.inconsistent;
    let particular = solvable.then(|| {
        let mut x = vec![Rational::zero(); nunk];
        for (&c, row) in &ech.pivots {
            if let Some(v) = row.get(&nunk) {
                x[c] = v.clone();
            }
        }
        let mut p = vec![Poly::zero(n); n - 1];
        let mut q = Poly::zero(n);
        for (idx, (comp, mono)) in slots.iter().enumerate() {
            let c = GaussianRational::new(x[2 * idx].clone(), x[2 * idx + 1].clone());
            if c.is_zero() {
                continue;
            }
            if *comp < n - 1 {
                p[*comp].add_term(mono.clone(), &c);
            } else {
                q.add_term(mono.clone(), &c);
            }
        }
        (
            p.into_iter()
                .map(|x| HoloPoly::from_poly(space, x))
                .collect(),
            HoloPoly::from_poly(space, q),
        )
    });
    let a_zero = a.is_none_or(|a| a.is_zero());
    let in_stilde = match a {
        Some(a) if !a.is_zero() => stilde_membership(a, n - 2)
            .map(|r| r.member)
            .unwrap_or(false),
        _ => true,
    };
    let consistency = if s < 5 || !in_stilde {
        CmConsistency::NotApplicable
    } else if kernel_dim == 0 && (a_zero || !solvable) {
        CmConsistency::Consistent
    } else {
        CmConsistency::Inconsistent
    };
    Ok(CmSolution {
        unknowns: nunk,
        equations: nequations,
        rank,
        kernel_dim,
        solvable,
        particular,
        in_stilde,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(n: usize) -> VariableSpace {
        VariableSpace::new(n).unwrap()
    }

    #[test]
    fn operator_examples() {
        let s = sp(3);
        let signs = [-1, 1];
        let zero = vec![HoloPoly::zero(s); 2];
        let w = HoloPoly::w(s);
        let l = cm_operator(s, &signs, &zero, &w).unwrap();
        assert_eq!(l.to_string(), "-z1*conj(z1) + z2*conj(z2)");
        let l2 = cm_operator(s, &signs, &zero, &(&w * &w)).unwrap();
        let q = crate::quadric::Hyperquadric::standard(3, 1).unwrap();
        let re_w = &lift_holo(&w) + &crate::exactalg::herm::lift_anti(&w);
        assert_eq!(
            l2,
            ChartPoly::from_mixed(s, &(&re_w * &q.levi_poly()), &signs)
        );
        let p = vec![HoloPoly::z(s, 0), HoloPoly::zero(s)];
        let l3 = cm_operator(s, &signs, &p, &HoloPoly::zero(s)).unwrap();
        assert_eq!(l3.to_string(), "2*z1*conj(z1)");
    }

    #[test]
    fn abs_z1_fourth_is_rank_one() {
        let s = sp(3);
        let a = HermPoly::abs_sq(&HoloPoly::z(s, 0)).pow(2);
        let r = stilde_membership(&a, 1).unwrap();
        assert!(r.member);
        assert_eq!(r.reconstruct(s), *a.poly());
    }

    #[test]
    fn squared_levi_form_needs_many_terms() {
        let s = sp(5);
        let levi = crate::quadric::Hyperquadric::standard(5, 2)
            .unwrap()
            .levi_poly();
        let a = HermPoly::new(s, &levi * &levi).unwrap();
        let r = stilde_membership(&a, 2).unwrap();
        assert!(!r.member);
        assert_eq!(r.max_rank, 10);
        assert_eq!(r.reconstruct(s), *a.poly());
    }

    #[test]
    fn random_stilde_is_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = sp(4);
        for deg in [5, 6] {
            let a = random_stilde(s, deg, 2, 2, &mut rng);
            let r = stilde_membership(&a, 2).unwrap();
            assert!(r.member, "rank {}", r.max_rank);
            assert_eq!(r.reconstruct(s), *a.poly());
        }
    }

    #[test]
    fn weight_one_factor_is_in_the_image() {
        let s = sp(3);
        let h = HoloPoly::z(s, 1).pow(4);
        let z1 = HoloPoly::z(s, 0);
        let anti = crate::exactalg::herm::lift_anti;
        let a = HermPoly::new(
            s,
            &(&lift_holo(&z1) * &anti(&h)) + &(&lift_holo(&h) * &anti(&z1)),
        )
        .unwrap();
        assert!(stilde_membership(&a, 1).unwrap().member);
        let sol = cm_kernel_solve(3, 1, 5, Some(&a)).unwrap();
        assert!(sol.solvable);
        assert_eq!(sol.consistency, CmConsistency::Inconsistent);
    }

    #[test]
    fn low_weight_solution_contains_w() {
        let s = sp(3);
        let levi = crate::quadric::Hyperquadric::standard(3, 1)
            .unwrap()
            .levi_poly();
        let a = HermPoly::new(s, levi).unwrap();
        let sol = cm_kernel_solve(3, 1, 2, Some(&a)).unwrap();
        assert!(sol.solvable);
        let (p, q) = sol.particular.unwrap();
        let img = cm_operator(s, &[-1, 1], &p, &q).unwrap();
        assert_eq!(img, ChartPoly::from_herm(&a, &[-1, 1]));
    }

    #[test]
    fn weight_five_kernel_is_trivial() {
        let sol = cm_kernel_solve(3, 1, 5, None).unwrap();
        assert_eq!(sol.kernel_dim, 0);
        assert_eq!(sol.consistency, CmConsistency::Consistent);
    }
}
