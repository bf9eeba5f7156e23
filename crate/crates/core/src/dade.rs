//! The Dade group of `C_{p^n}`.
//!
//! It is elementary abelian, generated by the relative syzygies
//! `Ω_{D/D_i}(k)` for `0 <= i < n`, so an element is a bit vector
//! `(a_0, ..., a_{n-1})` and the group law is XOR. When `p = 2` the last
//! generator is trivial and `a_{n-1}` is always stored as 0.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cyclic::CyclicGroupParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DadeError {
    #[error("expected {expected} bits, got {found}")]
    BitLength { expected: usize, found: usize },
    #[error("Dade elements over C_{}^{} and C_{}^{} cannot be combined", .0.0, .0.1, .1.0, .1.1)]
    ParamMismatch((u64, u32), (u64, u32)),
    #[error("restriction index {i} is outside 1..={n}")]
    IndexOutOfRange { i: u32, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DadeElement {
    params: CyclicGroupParams,
    bits: Vec<bool>,
}

impl DadeElement {
    /// Builds `W_D(a_0, ..., a_{n-1})`, silently clearing `a_{n-1}` when `p = 2`.
    pub fn new(params: CyclicGroupParams, bits: &[bool]) -> Result<Self, DadeError> {
        Self::canonicalize(params, bits).map(|(x, _)| x)
    }

    /// Like [`DadeElement::new`], also reporting whether a bit was cleared.
    pub fn canonicalize(params: CyclicGroupParams, bits: &[bool]) -> Result<(Self, bool), DadeError> {
        let n = params.n() as usize;
        if bits.len() != n {
            return Err(DadeError::BitLength { expected: n, found: bits.len() });
        }
        let mut bits = bits.to_vec();
        let cleared = params.p() == 2 && bits[n - 1];
        if cleared {
            bits[n - 1] = false;
        }
        Ok((Self { params, bits }, cleared))
    }

    /// Builds a block source from `(a_1, ..., a_{n-1})`, with `a_0 = 0`.
    pub fn source(params: CyclicGroupParams, tail: &[bool]) -> Result<Self, DadeError> {
        let n = params.n() as usize;
        if tail.len() + 1 != n {
            return Err(DadeError::BitLength { expected: n - 1, found: tail.len() });
        }
        let mut bits = Vec::with_capacity(n);
        bits.push(false);
        bits.extend_from_slice(tail);
        Self::new(params, &bits)
    }

    pub fn zero(params: CyclicGroupParams) -> Self {
        Self { params, bits: alloc::vec![false; params.n() as usize] }
    }

    pub fn params(&self) -> CyclicGroupParams {
        self.params
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, i: u32) -> bool {
        self.bits[i as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// `D_1` acts trivially, i.e. `a_0 = 0`.
    pub fn is_source(&self) -> bool {
        !self.bits[0]
    }

    pub fn add(&self, other: &Self) -> Result<Self, DadeError> {
        if self.params != other.params {
            return Err(DadeError::ParamMismatch(
                (self.params.p(), self.params.n()),
                (other.params.p(), other.params.n()),
            ));
        }
        let bits: Vec<bool> = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        Ok(Self { params: self.params, bits })
    }

    /// `Cap(Res^D_{D_i})`: keeps `(a_0, ..., a_{i-1})`.
    pub fn restrict_to(&self, i: u32) -> Result<Self, DadeError> {
        let n = self.params.n();
        if i == 0 || i > n {
            return Err(DadeError::IndexOutOfRange { i, n });
        }
        let sub = CyclicGroupParams::new(self.params.p(), i).expect("subgroup of a valid group");
        Self::new(sub, &self.bits[..i as usize])
    }

    /// Positions `i_0 < ... < i_s` of the set bits.
    pub fn set_indices(&self) -> Vec<u32> {
        (0..self.params.n()).filter(|&i| self.bits[i as usize]).collect()
    }

    /// `Σ_j (-1)^j p^{n - i_j} + (-1)^{s+1}`.
    pub fn dimension(&self) -> u64 {
        alternating(self.params.p(), self.params.n(), &self.set_indices())
    }

    /// `ℓ_i = Σ_{i_j < i} (-1)^j p^{i - i_j} + (-1)^{#{j : i_j < i}}`.
    pub fn ell(&self, i: u32) -> u64 {
        assert!(i >= 1 && i <= self.params.n(), "ℓ_i needs 1 <= i <= n");
        let below: Vec<u32> = self.set_indices().into_iter().filter(|&j| j < i).collect();
        alternating(self.params.p(), i, &below)
    }
}

fn alternating(p: u64, top: u32, indices: &[u32]) -> u64 {
    // the partial sums alternate in sign but stay positive
    let mut acc: i128 = 0;
    let mut sign: i128 = 1;
    for &j in indices {
        acc += sign * i128::from(p).pow(top - j);
        sign = -sign;
    }
    acc += sign;
    debug_assert!(acc > 0);
    acc as u64
}

/// All `W` with `a_0 = 0` (and `a_{n-1} = 0` when `p = 2`), in lexicographic
/// order of their bit vectors.
pub fn enumerate_sources(params: CyclicGroupParams) -> Vec<DadeElement> {
    let n = params.n() as usize;
    let free = if params.p() == 2 { n.saturating_sub(2) } else { n - 1 };
    (0..1u64 << free)
        .map(|mask| {
            let mut bits = alloc::vec![false; n];
            for k in 0..free {
                bits[1 + k] = mask >> (free - 1 - k) & 1 == 1;
            }
            DadeElement { params, bits }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cp(p: u64, n: u32) -> CyclicGroupParams {
        CyclicGroupParams::new(p, n).unwrap()
    }

    fn el(p: u64, bits: &[u8]) -> DadeElement {
        let b: Vec<bool> = bits.iter().map(|&x| x == 1).collect();
        DadeElement::new(cp(p, bits.len() as u32), &b).unwrap()
    }

    #[test]
    fn add_examples() {
        let x = el(5, &[0, 1, 0]);
        let zero = DadeElement::zero(cp(5, 3));
        assert_eq!(x.add(&zero).unwrap(), x);
        assert!(x.add(&x).unwrap().is_zero());
        assert_eq!(el(3, &[0, 1, 0]).add(&el(3, &[0, 1, 1])).unwrap(), el(3, &[0, 0, 1]));
        assert!(matches!(x.add(&el(3, &[0, 1, 0])), Err(DadeError::ParamMismatch(..))));
    }

    #[test]
    fn restrict_examples() {
        let x = el(5, &[0, 1, 1]);
        assert_eq!(x.restrict_to(3).unwrap(), x);
        assert!(DadeElement::zero(cp(5, 3)).restrict_to(2).unwrap().is_zero());
        assert_eq!(x.restrict_to(2).unwrap(), el(5, &[0, 1]));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(DadeElement::zero(cp(7, 2)).dimension(), 1);
        assert_eq!(el(3, &[0, 1]).dimension(), 2);
        assert_eq!(el(3, &[0, 1, 1]).dimension(), 7);
    }

    #[test]
    fn ell_examples() {
        let zero = DadeElement::zero(cp(3, 4));
        assert!((1..=4).all(|i| zero.ell(i) == 1));
        let x = el(5, &[0, 1]);
        assert_eq!((x.ell(1), x.ell(2)), (1, 4));
        let y = el(3, &[0, 1, 1]);
        assert_eq!((y.ell(1), y.ell(2), y.ell(3)), (1, 2, 7));
    }

    #[test]
    fn sources() {
        assert_eq!(enumerate_sources(cp(3, 1)), vec![DadeElement::zero(cp(3, 1))]);
        assert_eq!(enumerate_sources(cp(5, 2)), vec![el(5, &[0, 0]), el(5, &[0, 1])]);
        assert_eq!(enumerate_sources(cp(2, 3)), vec![el(2, &[0, 0, 0]), el(2, &[0, 1, 0])]);
        assert_eq!(enumerate_sources(cp(2, 1)).len(), 1);
        assert_eq!(enumerate_sources(cp(2, 2)).len(), 1);
        assert_eq!(enumerate_sources(cp(3, 4)).len(), 8);
    }

    #[test]
    fn p2_top_bit_is_cleared() {
        let (x, cleared) = DadeElement::canonicalize(cp(2, 2), &[false, true]).unwrap();
        assert!(cleared);
        assert!(x.is_zero());
        assert_eq!(el(2, &[0, 1, 1]).restrict_to(2).unwrap(), el(2, &[0, 0]));
    }
}
