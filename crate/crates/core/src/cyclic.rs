//! Modules over the cyclic group `D = C_{p^n}`.
//!
//! Over a field of characteristic `p` the indecomposable `kD`-modules are the
//! uniserial modules `M_b` with `1 <= b <= p^n`, so every closed form below
//! works on dimensions. The [`oracle`] submodule recomputes the same answers
//! from explicit generator matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dade::DadeElement;
use crate::field::{is_prime, JordanProfile, LinalgError};

/// Largest admissible group order.
pub const MAX_ORDER: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("defect exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{n} exceeds the supported group order")]
    OrderTooLarge { p: u64, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("dimension {b} is outside 1..={max}")]
    DimensionOutOfRange { b: u64, max: u64 },
    #[error("subgroup index {i} is outside {min}..={max}")]
    IndexOutOfRange { i: u32, min: u32, max: u32 },
    #[error("M_{c} cannot be inflated from a quotient of order {order}")]
    DimensionTooLarge { c: u64, order: u64 },
    #[error("M_{0} is projective and has no Heller translate")]
    ProjectiveInput(u64),
    #[error("M_{b} is not inflated from D/D_{i}")]
    NotInflatable { b: u64, i: u32 },
    #[error("no summand of the restriction of M_{b} to D_{i} has full vertex")]
    NotCapped { b: u64, i: u32 },
    #[error("Dade element over C_{}^{} used with group C_{}^{}", .found.0, .found.1, .expected.0, .expected.1)]
    ParamMismatch { expected: (u64, u32), found: (u64, u32) },
    #[error("Dade element has a_0 = 1, so D_1 does not act trivially")]
    NotSource,
    #[error("closed form gives {closed}, the module chain gives {computed}")]
    Inconsistent { closed: u64, computed: u64 },
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The group `C_{p^n}` with its chain of subgroups `D_0 < D_1 < ... < D_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicGroupParams {
    p: u64,
    n: u32,
}

impl CyclicGroupParams {
    pub fn new(p: u64, n: u32) -> Result<Self, ParamError> {
        if p > u64::from(u32::MAX) {
            return Err(ParamError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ParamError::NotPrime(p));
        }
        if n == 0 {
            return Err(ParamError::ZeroExponent);
        }
        match p.checked_pow(n) {
            Some(order) if order <= MAX_ORDER => Ok(Self { p, n }),
            _ => Err(ParamError::OrderTooLarge { p, n }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `p^k` for `k <= n`.
    pub fn pow(&self, k: u32) -> u64 {
        debug_assert!(k <= self.n);
        self.p.pow(k)
    }

    /// `v_p(x)` for `x > 0`.
    pub fn valuation(&self, mut x: u64) -> u32 {
        debug_assert!(x > 0);
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub(crate) fn check_dim(&self, b: u64, max: u64) -> Result<(), ModuleError> {
        if b == 0 || b > max {
            return Err(ModuleError::DimensionOutOfRange { b, max });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, i: u32, min: u32) -> Result<(), ModuleError> {
        if i < min || i > self.n {
            return Err(ModuleError::IndexOutOfRange { i, min, max: self.n });
        }
        Ok(())
    }
}

/// A direct sum of indecomposables, stored as `dimension -> multiplicity`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModuleDecomp {
    parts: BTreeMap<u64, u64>,
}

impl ModuleDecomp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(b: u64) -> Self {
        let mut d = Self::new();
        d.add(b, 1);
        d
    }

    /// Adds `count` copies of `M_b`; copies of `M_0` are dropped.
    pub fn add(&mut self, b: u64, count: u64) {
        if b > 0 && count > 0 {
            *self.parts.entry(b).or_insert(0) += count;
        }
    }

    /// `(dimension, multiplicity)` pairs in increasing dimension.
    pub fn parts(&self) -> Vec<(u64, u64)> {
        self.parts.iter().map(|(&b, &c)| (b, c)).collect()
    }

    pub fn multiplicity(&self, b: u64) -> u64 {
        self.parts.get(&b).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.parts.iter().map(|(b, c)| b * c).sum()
    }

    pub fn summand_count(&self) -> u64 {
        self.parts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.parts.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.parts.iter().map(|(&b, &c)| (b, c))
    }
}

impl From<&JordanProfile> for ModuleDecomp {
    fn from(profile: &JordanProfile) -> Self {
        let mut d = Self::new();
        for (size, count) in profile.blocks() {
            d.add(size as u64, count as u64);
        }
        d
    }
}

/// `Res^D_{D_i}(M_b)`: with `b = q p^{n-i} + r`, this is `r` copies of
/// `M_{q+1}` and `p^{n-i} - r` copies of `M_q`.
pub fn restrict(params: &CyclicGroupParams, b: u64, i: u32) -> Result<ModuleDecomp, ModuleError> {
    params.check_dim(b, params.order())?;
    params.check_index(i, 0)?;
    let t = params.pow(params.n - i);
    let (q, r) = (b / t, b % t);
    let mut d = ModuleDecomp::new();
    d.add(q + 1, r);
    d.add(q, t - r);
    Ok(d)
}

/// `Ind_{D_i}^D(M_c) = M_{c p^{n-i}}`.
pub fn induce(params: &CyclicGroupParams, c: u64, i: u32) -> Result<u64, ModuleError> {
    params.check_index(i, 0)?;
    params.check_dim(c, params.pow(i))?;
    Ok(c * params.pow(params.n - i))
}

/// Inflation of `M_c` from `D/D_i`; the dimension is unchanged.
pub fn inflate(params: &CyclicGroupParams, c: u64, i: u32) -> Result<u64, ModuleError> {
    params.check_index(i, 0)?;
    let order = params.pow(params.n - i);
    if c == 0 {
        return Err(ModuleError::DimensionOutOfRange { b: c, max: order });
    }
    if c > order {
        return Err(ModuleError::DimensionTooLarge { c, order });
    }
    Ok(c)
}

/// `Ω(M_b) = M_{p^n - b}`.
pub fn heller(params: &CyclicGroupParams, b: u64) -> Result<u64, ModuleError> {
    params.check_dim(b, params.order())?;
    if b == params.order() {
        return Err(ModuleError::ProjectiveInput(b));
    }
    Ok(params.order() - b)
}

/// `Ω_{D/D_i}(M_b) = M_{p^{n-i} - b}` for `M_b` inflated from `D/D_i`.
///
/// `b = p^{n-i}` is the regular `k[D/D_i]`-module, whose relative Heller
/// translate is zero; that case is reported as [`ModuleError::ProjectiveInput`].
pub fn relative_heller(params: &CyclicGroupParams, i: u32, b: u64) -> Result<u64, ModuleError> {
    params.check_index(i, 0)?;
    params.check_dim(b, params.order())?;
    let t = params.pow(params.n - i);
    if b > t {
        return Err(ModuleError::NotInflatable { b, i });
    }
    if b == t {
        return Err(ModuleError::ProjectiveInput(b));
    }
    Ok(t - b)
}

/// Vertex of `M_b` as a subgroup index: `n - min(v_p(b), n)`.
pub fn vertex(params: &CyclicGroupParams, b: u64) -> Result<u32, ModuleError> {
    params.check_dim(b, params.order())?;
    Ok(params.n - params.valuation(b).min(params.n))
}

/// The summand of a decomposition over `C_{p^i}` with full vertex, i.e. the
/// largest dimension prime to `p`.
pub fn cap_of(params: &CyclicGroupParams, decomp: &ModuleDecomp) -> Option<u64> {
    decomp.iter().map(|(b, _)| b).filter(|b| b % params.p != 0).max()
}

/// `Cap(Res^D_{D_i}(M_b))`.
pub fn cap_of_restriction(params: &CyclicGroupParams, b: u64, i: u32) -> Result<u64, ModuleError> {
    let res = restrict(params, b, i)?;
    if i == 0 {
        // over the trivial group every module is M_1, which is its own cap
        return Ok(1);
    }
    cap_of(params, &res).ok_or(ModuleError::NotCapped { b, i })
}

pub(crate) fn check_dade_params(params: &CyclicGroupParams, dade: &DadeElement) -> Result<(), ModuleError> {
    if dade.params() != *params {
        return Err(ModuleError::ParamMismatch {
            expected: (params.p, params.n),
            found: (dade.params().p, dade.params().n),
        });
    }
    Ok(())
}

/// `W_D(a_0, ..., a_{n-1})`, built by relative Heller operators applied to
/// `k` from the largest index down.
pub fn build_wd(params: &CyclicGroupParams, dade: &DadeElement) -> Result<u64, ModuleError> {
    check_dade_params(params, dade)?;
    let mut b = 1u64;
    for j in (0..params.n).rev() {
        if dade.bit(j) {
            b = relative_heller(params, j, b)?;
        }
    }
    if b != dade.dimension() {
        return Err(ModuleError::Inconsistent { closed: dade.dimension(), computed: b });
    }
    Ok(b)
}

/// `U_{D_i}(W) = Ind_{D_i}^D(Cap(Res^D_{D_i}(W)))`, checked against `ℓ_i p^{n-i}`.
pub fn u_q(params: &CyclicGroupParams, dade: &DadeElement, i: u32) -> Result<u64, ModuleError> {
    check_dade_params(params, dade)?;
    params.check_index(i, 1)?;
    if !dade.is_source() {
        return Err(ModuleError::NotSource);
    }
    let w = build_wd(params, dade)?;
    let cap = cap_of_restriction(params, w, i)?;
    let u = induce(params, cap, i)?;
    let closed = dade.ell(i) * params.pow(params.n - i);
    if u != closed {
        return Err(ModuleError::Inconsistent { closed, computed: u });
    }
    Ok(u)
}

/// Explicit generator matrices over `F_p` for the module operations above.
pub mod oracle {
    use super::*;
    use crate::field::{decompose_unipotent, kronecker, PrimeFieldMatrix};

    /// Action of a generator of `D` on `M_b`: `I + J_b`.
    pub fn generator_action(params: &CyclicGroupParams, b: u64) -> Result<PrimeFieldMatrix, ModuleError> {
        params.check_dim(b, params.order())?;
        Ok(PrimeFieldMatrix::nilpotent_jordan_block(params.p, b as usize)?.plus_identity()?)
    }

    /// Action of a generator of `D_i`, which is `g^{p^{n-i}}`.
    pub fn restrict_action(
        params: &CyclicGroupParams,
        g: &PrimeFieldMatrix,
        i: u32,
    ) -> Result<PrimeFieldMatrix, ModuleError> {
        params.check_index(i, 0)?;
        Ok(g.pow(params.pow(params.n - i))?)
    }

    /// Induced action from `D_i` to `D`: `t = p^{n-i}` copies of the module,
    /// the generator shifts copy `k` to copy `k + 1` and acts by `h` on the
    /// way back from the last copy to the first.
    pub fn induce_action(
        params: &CyclicGroupParams,
        h: &PrimeFieldMatrix,
        i: u32,
    ) -> Result<PrimeFieldMatrix, ModuleError> {
        params.check_index(i, 0)?;
        if !h.is_square() {
            return Err(LinalgError::NotSquare { rows: h.rows(), cols: h.cols() }.into());
        }
        let t = params.pow(params.n - i) as usize;
        let c = h.rows();
        let mut g = PrimeFieldMatrix::zeros(params.p, c * t, c * t)?;
        for k in 0..t - 1 {
            for x in 0..c {
                g.set((k + 1) * c + x, k * c + x, 1);
            }
        }
        for r in 0..c {
            for s in 0..c {
                g.set(r, (t - 1) * c + s, h.get(r, s));
            }
        }
        Ok(g)
    }

    pub fn is_inflated_from(
        params: &CyclicGroupParams,
        g: &PrimeFieldMatrix,
        i: u32,
    ) -> Result<bool, ModuleError> {
        let h = restrict_action(params, g, i)?;
        Ok(h == PrimeFieldMatrix::identity(params.p, g.rows())?)
    }

    /// Kernel of the relative projective cover `k[D/D_j] -> M`, for an
    /// indecomposable `M` inflated from `D/D_j`.
    pub fn relative_heller_action(
        params: &CyclicGroupParams,
        j: u32,
        g: &PrimeFieldMatrix,
    ) -> Result<PrimeFieldMatrix, ModuleError> {
        params.check_index(j, 0)?;
        let b = g.rows();
        if !is_inflated_from(params, g, j)? {
            return Err(ModuleError::NotInflatable { b: b as u64, i: j });
        }
        let n = g.minus_identity()?;
        let top = n.pow(b as u64 - 1)?;
        // a basis vector outside the radical generates M when M is uniserial
        let col = (0..b).find(|&c| top.column(c).iter().any(|&x| x != 0)).ok_or(ModuleError::NotIndecomposable)?;
        let t = params.pow(params.n - j) as usize;
        let p = params.p;
        // columns g^k v for k = 0..t
        let mut pi = PrimeFieldMatrix::zeros(p, b, t)?;
        let mut v: Vec<u64> = (0..b).map(|r| u64::from(r == col)).collect();
        for k in 0..t {
            for (r, &x) in v.iter().enumerate() {
                pi.set(r, k, x);
            }
            v = (0..b).map(|r| (0..b).map(|s| g.get(r, s) * v[s] % p).sum::<u64>() % p).collect();
        }
        if pi.rank() != b {
            return Err(ModuleError::NotIndecomposable);
        }
        let kernel = pi.nullspace();
        let perm = PrimeFieldMatrix::from_fn(p, t, t, |r, c| u64::from(r == (c + 1) % t))?;
        let image = perm.mul(&kernel)?;
        let x = kernel.solve(&image)?.ok_or(ModuleError::NotInflatable { b: b as u64, i: j })?;
        Ok(x)
    }

    /// Generator action of `W_D(a)` built from explicit kernels.
    pub fn build_wd_action(
        params: &CyclicGroupParams,
        dade: &DadeElement,
    ) -> Result<PrimeFieldMatrix, ModuleError> {
        check_dade_params(params, dade)?;
        let mut g = PrimeFieldMatrix::identity(params.p, 1)?;
        for j in (0..params.n).rev() {
            if dade.bit(j) {
                g = relative_heller_action(params, j, &g)?;
            }
        }
        Ok(g)
    }

    /// Dimension of the full-vertex summand of the restriction to `D_i`.
    pub fn cap_of_restriction(
        params: &CyclicGroupParams,
        g: &PrimeFieldMatrix,
        i: u32,
    ) -> Result<u64, ModuleError> {
        let h = restrict_action(params, g, i)?;
        let decomp = decompose_unipotent(&h)?;
        if i == 0 {
            return Ok(1);
        }
        cap_of(params, &decomp).ok_or(ModuleError::NotCapped { b: g.rows() as u64, i })
    }

    /// `Ind(Cap(Res(W)))` on explicit matrices; returns the dimension of the
    /// single indecomposable summand.
    pub fn u_q(params: &CyclicGroupParams, dade: &DadeElement, i: u32) -> Result<u64, ModuleError> {
        params.check_index(i, 1)?;
        let w = build_wd_action(params, dade)?;
        let cap = cap_of_restriction(params, &w, i)?;
        let sub = CyclicGroupParams::new(params.p, i)?;
        let h = generator_action(&sub, cap)?;
        let induced = induce_action(params, &h, i)?;
        let decomp = decompose_unipotent(&induced)?;
        if decomp.summand_count() != 1 {
            return Err(ModuleError::NotIndecomposable);
        }
        Ok(decomp.dim())
    }

    /// Summands of `X ⊗ Y` with full vertex `D`.
    pub fn tensor_full_vertex_summands(
        params: &CyclicGroupParams,
        g: &PrimeFieldMatrix,
        h: &PrimeFieldMatrix,
    ) -> Result<ModuleDecomp, ModuleError> {
        let decomp = decompose_unipotent(&kronecker(g, h)?)?;
        let mut out = ModuleDecomp::new();
        for (b, c) in decomp.iter().filter(|(b, _)| b % params.p != 0) {
            out.add(b, c);
        }
        Ok(out)
    }
}
