use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial.
///
/// Ordered by total degree first, then so that `x1 < x2 < … < xn` within a
/// degree (reverse lexicographic on the exponent tuple).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn exps_mut(&mut self) -> &mut [u16] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| b - a)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_graded() {
        let z1 = Monomial::var(3, 0, 1);
        let z2 = Monomial::var(3, 1, 1);
        let w = Monomial::var(3, 2, 1);
        let z1sq = Monomial::var(3, 0, 2);
        assert!(Monomial::one(3) < z1);
        assert!(z1 < z2 && z2 < w && w < z1sq);
        assert_eq!(z1.mul(&w).exps(), &[1, 0, 1]);
        assert!(z1.divides(&z1.mul(&w)));
    }
}
