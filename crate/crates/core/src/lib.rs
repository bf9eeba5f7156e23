//! Modules over cyclic p-groups, Brauer trees and the trivial source
//! modules of blocks with cyclic defect group.
//!
//! - [`field`]: dense matrices over `F_p` and Jordan types of unipotent actions.
//! - [`cyclic`]: closed forms for restriction, induction, inflation and Heller
//!   translates of `k C_{p^n}`-modules, with matrix oracles in [`cyclic::oracle`].
//! - [`dade`]: the Dade group of `C_{p^n}`.
//! - [`tree`]: validated planar embedded Brauer trees, hooks and Green's walk.
//! - [`corpus`]: exhaustive small trees for sweeps.
//! - [`classify`]: positions of trivial source and liftable modules in the tube.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classify;
pub mod corpus;
pub mod cyclic;
pub mod dade;
pub mod field;
pub mod tree;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] field::LinalgError),
    #[error(transparent)]
    Params(#[from] cyclic::ParamError),
    #[error(transparent)]
    Module(#[from] cyclic::ModuleError),
    #[error(transparent)]
    Dade(#[from] dade::DadeError),
    #[error(transparent)]
    Tree(#[from] tree::TreeError),
    #[error(transparent)]
    Classify(#[from] classify::ClassifyError),
}

impl Error {
    /// True when two independent computations disagreed.
    pub fn is_consistency_failure(&self) -> bool {
        match self {
            Error::Module(e) => matches!(e, cyclic::ModuleError::Inconsistent { .. }),
            Error::Classify(e) => e.is_consistency_failure(),
            _ => false,
        }
    }
}
