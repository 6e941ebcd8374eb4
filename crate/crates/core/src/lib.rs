//! Exact and numerical correlation functions of the periodic XX0 spin chain
//! together with their combinatorial interpretation.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: partitions, strict partitions, the `lambda <-> mu` dictionary.
//! - [`qpoly`]: exact polynomials in `q`, q-integers and Gaussian binomials.
//! - [`symmetric`]: Schur functions (alternant ratio and tableau sums),
//!   MacMahon box counts, boxed Cauchy-Binet sums and their q-specialisations.
//! - [`nests`]: nests of self-avoiding lattice paths encoding tableaux, and
//!   an exact random-turns vicious-walker counter.
//! - [`chain`]: the XX Hamiltonian in a fixed magnetisation sector, the
//!   hopping matrix, Bethe momenta and Bethe state vectors.
//! - [`correlators`]: one- and many-particle generating functions, path
//!   counts as trigonometric sums, transition amplitudes and the persistence
//!   of a ferromagnetic string, each computed along two independent routes.
//! - [`verify`]: identity checks that produce pass/fail reports.

pub mod chain;
pub mod correlators;
pub mod error;
pub mod json;
pub mod linalg;
pub mod nests;
pub mod partition;
pub mod qpoly;
pub mod symmetric;
pub mod verify;

pub use chain::{BetheMomenta, ChainGeometry, HoppingMatrix, SectorBasis, SectorState};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, IntMatrix, RealMatrix, C64};
pub use nests::{NestKind, PathNest, WalkerConfiguration};
pub use partition::{Partition, StrictPartition};
pub use qpoly::QPolynomial;

/// Resource caps shared by every enumeration and dense construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of tableaux, nests, partitions or walker
    /// configurations a single enumeration may visit.
    pub enumeration: u128,
    /// Maximum dimension of a dense sector matrix.
    pub sector_dimension: usize,
}

impl Limits {
    pub const DEFAULT_ENUMERATION: u128 = 10_000_000;
    pub const DEFAULT_SECTOR_DIMENSION: usize = 5_000;

    pub(crate) fn check_enumeration(&self, what: &'static str, size: u128) -> Result<()> {
        if size > self.enumeration {
            return Err(Error::CapExceeded {
                what,
                size,
                cap: self.enumeration,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: Self::DEFAULT_ENUMERATION,
            sector_dimension: Self::DEFAULT_SECTOR_DIMENSION,
        }
    }
}
