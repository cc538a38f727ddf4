//! Holomorphic inducibility of highest-weight representations of hermitian Lie groups.
//!
//! The classifier decides inducibility by exact combinatorics on highest weights and
//! central charges. The remaining modules verify those verdicts at finite rank: triple
//! system axioms, Kantor-Koecher-Tits brackets, Fock-space operators and positive
//! definiteness of scalar reproducing kernels.

pub mod classifier;
pub mod fockspace;
pub mod jhtriple;
pub mod kernelver;
pub mod liealg;
pub mod lp;
pub mod rational;
pub mod rootdata;
pub mod sampling;
pub mod scalar;
pub mod weights;

pub use rational::Rational;
pub use scalar::{GaussRat, C64};
pub use weights::{ExtendedNat, IndexSet, Weight, WeylElement, WeylType};
