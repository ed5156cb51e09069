//! Sparse multivariate polynomials with Gaussian-rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::monomial::Monomial;
use super::rational::Rational;
use crate::error::{Error, Result};

type Gq = GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Gq>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Gq::one())
    }

    pub fn constant(nvars: usize, c: Gq) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i, 1), Gq::one())
    }

    pub fn monomial(m: Monomial, c: Gq) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Gq)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Gq)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Gq)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Gq {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: &Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::SpaceMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    fn mul_filtered<F: Fn(&Monomial) -> bool>(&self, other: &Poly, keep: F) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, Gq> = HashMap::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if !keep(&m) {
                    continue;
                }
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Product with every term of weighted degree above `max` dropped.
    pub fn mul_truncated(&self, other: &Poly, weights: &[u32], max: u32) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable space mismatch");
        self.mul_filtered(other, |m| m.weighted_degree(weights) <= max)
    }

    pub fn scale(&self, c: &Gq) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Poly {
        self.scale(&Gq::from(r.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&Gq) -> Gq>(&self, f: F) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn conj_coeffs(&self) -> Poly {
        self.map_coeffs(|c| c.conj())
    }

    pub fn eval(&self, point: &[Gq]) -> Result<Gq> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut cache: Vec<Vec<Gq>> = point.iter().map(|x| vec![Gq::one(), x.clone()]).collect();
        let mut total = Gq::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &point[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            total += &t;
        }
        Ok(total)
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable space.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        self.substitute_impl(images, None)
    }

    /// As [`Poly::substitute`], discarding weight above `max` in the image space.
    pub fn substitute_truncated(&self, images: &[Poly], weights: &[u32], max: u32) -> Result<Poly> {
        self.substitute_impl(images, Some((weights, max)))
    }

    fn substitute_impl(&self, images: &[Poly], trunc: Option<(&[u32], u32)>) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        for p in images {
            if p.nvars != target {
                return Err(Error::SpaceMismatch(target, p.nvars));
            }
        }
        let mul = |a: &Poly, b: &Poly| match trunc {
            Some((w, max)) => a.mul_truncated(b, w, max),
            None => a * b,
        };
        let mut cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target), p.clone()])
            .collect();
        let mut acc: HashMap<Monomial, Gq> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = mul(cache[i].last().unwrap(), &images[i]);
                    cache[i].push(next);
                }
                t = mul(&t, &cache[i][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(v) => *v += &tc,
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Poly {
            nvars: target,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Moves variable `i` to position `map[i]` of a space with `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars, "remap arity");
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(nvars);
            for (i, &e) in m.exps().iter().enumerate() {
                nm.exps_mut()[map[i]] += e;
            }
            out.add_term(nm, c);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.get(i)).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .max()
            .unwrap_or(0)
    }

    /// Lowest weighted degree present (`None` for the zero polynomial).
    pub fn weighted_order(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).min()
    }

    pub fn truncate(&self, weights: &[u32], max: u32) -> Poly {
        self.filter_terms(|m| m.weighted_degree(weights) <= max)
    }

    pub fn homogeneous_part(&self, weights: &[u32], k: u32) -> Poly {
        self.filter_terms(|m| m.weighted_degree(weights) == k)
    }

    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Weighted-homogeneous components keyed by weight; absent weights are omitted.
    pub fn graded_parts(&self, weights: &[u32]) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_insert_with(|| Poly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// `self = Σ_k c_k · x_i^k`; returns `[c_0, c_1, …]` with `x_i` removed from each `c_k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let k = m.get(i) as usize;
            let mut nm = m.clone();
            nm.exps_mut()[i] = 0;
            out[k].terms.insert(nm, c.clone());
        }
        out
    }

    /// Renders with the given variable names, in canonical term order.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = monomial_string(m, names);
            let (neg, body) = coefficient_term(c, &mono);
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

fn monomial_string(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Returns (is_negative, text) for a term, with the sign pulled out where possible.
fn coefficient_term(c: &Gq, mono: &str) -> (bool, String) {
    let join = |coef: String| -> String {
        if mono.is_empty() {
            coef
        } else if coef.is_empty() {
            mono.to_string()
        } else {
            format!("{coef}*{mono}")
        }
    };
    if c.im.is_zero() {
        let a = c.re.abs();
        let coef = if a.is_one() && !mono.is_empty() {
            String::new()
        } else {
            a.to_string()
        };
        return (c.re.is_negative(), join(coef));
    }
    if c.re.is_zero() {
        let a = c.im.abs();
        let coef = if a.is_one() {
            "i".to_string()
        } else {
            format!("{a}*i")
        };
        return (c.im.is_negative(), join(coef));
    }
    let mut coef = String::new();
    let _ = write!(coef, "({c})");
    (false, join(coef))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("variable space mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("variable space mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("variable space mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_display() {
        let x = Poly::var(2, 0);
        let i = Poly::constant(2, Gq::i());
        let p = &(&x + &i) * &(&x - &i);
        assert_eq!(p.fmt_with(&names()), "1 + x^2");
        assert!((&x + &(-&x)).is_zero());
        let q = Poly::constant(2, Gq::from_fracs(1, 2, -3, 4)).mul(&x);
        assert_eq!(q.fmt_with(&names()), "(1/2-3/4*i)*x");
    }

    #[test]
    fn mismatch_is_error() {
        assert!(Poly::var(2, 0).try_add(&Poly::var(3, 0)).is_err());
    }

    #[test]
    fn substitute_and_coefficients() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &x * &x;
        let q = p.substitute(&[&x + &y, y.clone()]).unwrap();
        assert_eq!(
            q,
            &(&(&x * &x) + &(&x * &y).scale(&Gq::from(2))) + &(&y * &y)
        );
        let cs = q.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], Poly::one(2));
    }

    #[test]
    fn truncated_product() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let t = s.mul_truncated(&s, &[1, 2], 3);
        assert_eq!(t, &(&x * &x) + &(&x * &y).scale(&Gq::from(2)));
    }
}
