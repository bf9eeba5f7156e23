//! Dense matrices over a prime field `F_p`.
//!
//! Everything here is exact: entries are residues in `[0, p)` and row
//! reduction uses modular inverses. The module exists as an oracle for the
//! closed forms in [`crate::cyclic`]: a module over a cyclic `p`-group is
//! determined by the action of a generator, and its decomposition into
//! indecomposables is the Jordan profile of `g - I`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cyclic::ModuleDecomp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large for 64-bit accumulation")]
    ModulusTooLarge(u64),
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("cannot combine a {0}x{1} matrix with a {2}x{3} matrix")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrices over F_{0} and F_{1} cannot be combined")]
    ModulusMismatch(u64, u64),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("g - I is not nilpotent")]
    NotUnipotent,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on signed values; a is non-zero mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// Row-major matrix with entries in `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F_{} {}x{} [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl PrimeFieldMatrix {
    /// Builds a matrix from row-major entries, reducing them mod `p`.
    pub fn new(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self, LinalgError> {
        Self::check_modulus(p)?;
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { rows, cols, len: entries.len() });
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(Self { p, rows, cols, entries })
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self, LinalgError> {
        Self::check_modulus(p)?;
        Ok(Self { p, rows, cols, entries: vec![0; rows * cols] })
    }

    pub fn identity(p: u64, dim: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(p, dim, dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        Ok(m)
    }

    pub fn from_fn(
        p: u64,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(p, rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                m.entries[r * cols + c] = f(r, c) % p;
            }
        }
        Ok(m)
    }

    /// Nilpotent Jordan block of size `dim`: ones on the subdiagonal.
    pub fn nilpotent_jordan_block(p: u64, dim: usize) -> Result<Self, LinalgError> {
        Self::from_fn(p, dim, dim, |r, c| u64::from(r == c + 1))
    }

    fn check_modulus(p: u64) -> Result<(), LinalgError> {
        if p > u64::from(u32::MAX) {
            return Err(LinalgError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.entries[r * self.cols + c] = value % self.p;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    fn same_field(&self, other: &Self) -> Result<(), LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let p = self.p;
        // products are < (p-1)^2, so this many can be summed before reducing
        let sq = (p - 1).saturating_mul(p - 1).max(1);
        let batch = ((u64::MAX - p) / sq).max(1);
        let n = other.cols;
        let mut out = vec![0u64; self.rows * n];
        let mut acc = vec![0u64; n];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b;
                }
                pending += 1;
                if pending == batch {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out[r * n..(r + 1) * n].iter_mut().zip(&acc) {
                *o = x % p;
            }
        }
        Ok(Self { p, rows: self.rows, cols: n, entries: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let p = self.p;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + b) % p).collect();
        Ok(Self { p, rows: self.rows, cols: self.cols, entries })
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let x = &mut m.entries[i * self.cols + i];
            *x = (*x + self.p - 1) % self.p;
        }
        Ok(m)
    }

    /// `self + I`.
    pub fn plus_identity(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let x = &mut m.entries[i * self.cols + i];
            *x = (*x + 1) % self.p;
        }
        Ok(m)
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = inv_mod(m.get(row, col), p);
            for c in col..m.cols {
                let i = row * m.cols + c;
                m.entries[i] = m.entries[i] * inv % p;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                let nf = p - f;
                for c in col..m.cols {
                    let src = m.entries[row * m.cols + c];
                    if src != 0 {
                        let i = r * m.cols + c;
                        m.entries[i] = (m.entries[i] + nf * src) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, returned as the columns of a `cols x k` matrix.
    pub fn nullspace(&self) -> Self {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self { p, rows: self.cols, cols: free.len(), entries: vec![0; self.cols * free.len()] };
        for (k, &fc) in free.iter().enumerate() {
            basis.entries[fc * free.len() + k] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                let v = r.get(pr, fc);
                basis.entries[pc * free.len() + k] = (p - v) % p;
            }
        }
        basis
    }

    /// Solves `self * X = rhs` for a matrix `self` of full column rank.
    /// Returns `None` when some column of `rhs` is outside the column space.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>, LinalgError> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let width = self.cols + rhs.cols;
        let aug = Self::from_fn(self.p, self.rows, width, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                rhs.get(r, c - self.cols)
            }
        })?;
        let (red, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            // either rank deficient or a pivot landed in the right-hand side
            return Ok(None);
        }
        Ok(Some(Self::from_fn(self.p, self.cols, rhs.cols, |r, c| red.get(r, self.cols + c))?))
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kronecker(a: &PrimeFieldMatrix, b: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix, LinalgError> {
    a.same_field(b)?;
    a.require_square()?;
    b.require_square()?;
    let p = a.p;
    PrimeFieldMatrix::from_fn(p, a.rows * b.rows, a.cols * b.cols, |r, c| {
        a.get(r / b.rows, c / b.cols) * b.get(r % b.rows, c % b.cols) % p
    })
}

pub fn rank(m: &PrimeFieldMatrix) -> usize {
    m.rank()
}

/// Multiset of Jordan block sizes of a nilpotent operator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JordanProfile {
    blocks: BTreeMap<usize, usize>,
}

impl JordanProfile {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut blocks = BTreeMap::new();
        for s in sizes.into_iter().filter(|&s| s > 0) {
            *blocks.entry(s).or_insert(0) += 1;
        }
        Self { blocks }
    }

    /// `(size, count)` pairs in increasing size.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().map(|(&s, &c)| (s, c))
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(s, c)| s * c).sum()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.values().sum()
    }

    pub fn largest(&self) -> Option<usize> {
        self.blocks.keys().next_back().copied()
    }

    /// Block sizes in decreasing order, with repetition.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().rev().flat_map(|(&s, &c)| core::iter::repeat_n(s, c)).collect()
    }

    fn add(&mut self, size: usize, count: usize) {
        if count > 0 {
            *self.blocks.entry(size).or_insert(0) += count;
        }
    }
}

/// Verifies `N^(2^t) = 0` for the first `2^t >= dim`.
fn check_nilpotent(n: &PrimeFieldMatrix) -> Result<(), LinalgError> {
    let mut power = n.clone();
    let mut reach = 1usize;
    while reach < n.rows {
        power = power.mul(&power)?;
        reach *= 2;
    }
    if power.is_zero() {
        Ok(())
    } else {
        Err(LinalgError::NotNilpotent)
    }
}

/// Jordan block multiset of a nilpotent square matrix.
///
/// The number of blocks of size at least `k` is `rank(N^(k-1)) - rank(N^k)`.
/// Once exactly one such block remains its size is `k + rank(N^k)`, and the
/// remaining powers are not formed.
pub fn jordan_profile(n: &PrimeFieldMatrix) -> Result<JordanProfile, LinalgError> {
    n.require_square()?;
    check_nilpotent(n)?;
    let mut profile = JordanProfile::default();
    let mut prev = n.rows;
    let mut power = n.clone();
    let mut cur = power.rank();
    let mut k = 1usize;
    loop {
        let at_least_k = prev - cur;
        if at_least_k == 0 {
            break;
        }
        if at_least_k == 1 {
            profile.add(k + cur, 1);
            break;
        }
        let next = if cur == 0 {
            0
        } else {
            power = power.mul(n)?;
            power.rank()
        };
        profile.add(k, at_least_k - (cur - next));
        prev = cur;
        cur = next;
        k += 1;
    }
    debug_assert_eq!(profile.dim(), n.rows);
    Ok(profile)
}

/// Decomposes the module given by a unipotent generator action `g`.
pub fn decompose_unipotent(g: &PrimeFieldMatrix) -> Result<ModuleDecomp, LinalgError> {
    let n = g.minus_identity()?;
    match jordan_profile(&n) {
        Ok(profile) => Ok(ModuleDecomp::from(&profile)),
        Err(LinalgError::NotNilpotent) => Err(LinalgError::NotUnipotent),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: usize, cols: usize, e: &[u64]) -> PrimeFieldMatrix {
        PrimeFieldMatrix::new(p, rows, cols, e.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(PrimeFieldMatrix::identity(5, 3).unwrap().rank(), 3);
        assert_eq!(PrimeFieldMatrix::zeros(3, 4, 4).unwrap().rank(), 0);
        assert_eq!(m(5, 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeFieldMatrix::zeros(9, 1, 1).unwrap_err(), LinalgError::NotPrime(9));
        assert!(matches!(PrimeFieldMatrix::new(3, 2, 2, vec![1]), Err(LinalgError::ShapeMismatch { .. })));
    }

    #[test]
    fn jordan_profile_examples() {
        let zero = PrimeFieldMatrix::zeros(3, 3, 3).unwrap();
        assert_eq!(jordan_profile(&zero).unwrap().sizes(), vec![1, 1, 1]);
        let j4 = PrimeFieldMatrix::nilpotent_jordan_block(3, 4).unwrap();
        assert_eq!(jordan_profile(&j4).unwrap().sizes(), vec![4]);
        let j4_cubed = j4.pow(3).unwrap();
        assert_eq!(jordan_profile(&j4_cubed).unwrap().sizes(), vec![2, 1, 1]);
    }

    #[test]
    fn jordan_profile_mixed_blocks() {
        // J_3 ⊕ J_3 ⊕ J_1 ⊕ J_2 placed block-diagonally
        let sizes = [3usize, 3, 1, 2];
        let dim: usize = sizes.iter().sum();
        let mut n = PrimeFieldMatrix::zeros(7, dim, dim).unwrap();
        let mut off = 0;
        for s in sizes {
            for i in 1..s {
                n.set(off + i, off + i - 1, 1);
            }
            off += s;
        }
        assert_eq!(jordan_profile(&n).unwrap().sizes(), vec![3, 3, 2, 1]);
    }

    #[test]
    fn not_nilpotent_is_reported() {
        let id = PrimeFieldMatrix::identity(5, 2).unwrap();
        assert_eq!(jordan_profile(&id).unwrap_err(), LinalgError::NotNilpotent);
        let twice = id.add(&id).unwrap();
        assert_eq!(decompose_unipotent(&twice).unwrap_err(), LinalgError::NotUnipotent);
    }

    #[test]
    fn decompose_examples() {
        let id = PrimeFieldMatrix::identity(3, 5).unwrap();
        assert_eq!(decompose_unipotent(&id).unwrap().parts(), vec![(1, 5)]);
        let g = PrimeFieldMatrix::nilpotent_jordan_block(5, 5).unwrap().plus_identity().unwrap();
        assert_eq!(decompose_unipotent(&g).unwrap().parts(), vec![(5, 1)]);
        // C_9 acting on M_4 over F_3, restricted to the subgroup of order 3
        let g = PrimeFieldMatrix::nilpotent_jordan_block(3, 4).unwrap().plus_identity().unwrap();
        let cubed = g.pow(3).unwrap();
        assert_eq!(decompose_unipotent(&cubed).unwrap().parts(), vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn kronecker_examples() {
        let i6 = kronecker(&PrimeFieldMatrix::identity(7, 2).unwrap(), &PrimeFieldMatrix::identity(7, 3).unwrap());
        assert_eq!(i6.unwrap(), PrimeFieldMatrix::identity(7, 6).unwrap());
        let k = kronecker(&m(5, 1, 1, &[3]), &m(5, 1, 1, &[4])).unwrap();
        assert_eq!(k.get(0, 0), 2);
        let g = PrimeFieldMatrix::nilpotent_jordan_block(3, 2).unwrap().plus_identity().unwrap();
        let gg = kronecker(&g, &g).unwrap();
        assert_eq!(decompose_unipotent(&gg).unwrap().parts(), vec![(1, 1), (3, 1)]);
        assert_eq!(
            kronecker(&g, &PrimeFieldMatrix::identity(5, 1).unwrap()).unwrap_err(),
            LinalgError::ModulusMismatch(3, 5)
        );
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(7, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = a.nullspace();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        let x = k.solve(&k).unwrap().unwrap();
        assert_eq!(x, PrimeFieldMatrix::identity(7, 2).unwrap());
        let outside = m(7, 3, 1, &[1, 0, 0]);
        assert_eq!(k.solve(&outside).unwrap(), None);
    }

    #[test]
    fn inverse_mod_p() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }
}
