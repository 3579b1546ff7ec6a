//! Exact computations with integral representations of finite groups:
//! Brauer relations, equivariant maps between permutation lattices,
//! regulator constants and the indices of sums of fixed sublattices that
//! they control.
//!
//! All arithmetic is exact. Groups are small (Cayley tables), lattices are
//! free `Z`-modules with a precomputed action of every group element, and
//! every map is an explicit integer matrix.

pub mod catalog;
pub mod error;
pub mod groups;
pub mod input;
pub mod lattice;
pub mod linalg;
pub mod regulator;
pub mod relations;

pub use error::{Error, Result};
pub use groups::{Group, Permutation, Preset, Subgroup, SubgroupClass};
pub use lattice::{GLattice, HomBasis, PermLattice};
pub use linalg::{CokernelOrder, IntMatrix, SnfResult};
pub use regulator::{AlphaValue, FactoredRational, RankFunctional};
pub use relations::{BrauerRelation, EquivariantMap, PhiSolution, Slot};

/// Size caps shared by the enumeration and search routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order accepted by any constructor.
    pub max_order: usize,
    /// Largest number of subgroups `all_subgroups` will produce.
    pub max_subgroups: usize,
    /// Number of candidate subgroup sets `search_phi` may try.
    pub search_budget: usize,
    /// Groups up to this order get a full associativity scan on construction.
    pub associativity_check_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 512, max_subgroups: 10_000, search_budget: 10_000, associativity_check_order: 512 }
    }
}
