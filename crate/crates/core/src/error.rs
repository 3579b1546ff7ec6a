use thiserror::Error;

/// Every failure the engine can report.
///
/// Input-shaped problems (bad parameters, malformed matrices, parse errors)
/// and mathematical outcomes (no injective map found, identity mismatch) are
/// kept apart so that frontends can map them onto distinct exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order cap exceeded: closure reached more than {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup count cap exceeded: more than {cap} subgroups")]
    SubgroupCapExceeded { cap: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("lattices or maps live over different groups")]
    GroupMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("generator matrices violate the group relations at element {element}")]
    RelationsViolated { element: usize },
    #[error("sublattice is not stable under the group action")]
    NotStable,
    #[error("quotient lattice would have torsion")]
    TorsionQuotient,
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("coordinate solve failed: {0}")]
    CoordinateSolve(String),
    #[error("degenerate subgroup set: {0}")]
    DegenerateSubgroupSet(String),
    #[error("not a Brauer relation")]
    NotABrauerRelation,
    #[error("no injective map found after {tried} combinations{}", if *.exhausted { " (budget exhausted)" } else { "" })]
    NoInjectiveMap { tried: usize, exhausted: bool },
    #[error("infinite cokernel: {0}")]
    InfiniteCokernel(String),
    #[error("vanishing determinant in the pairing on a fixed sublattice")]
    VanishingDeterminant,
    #[error("cannot factor {0} by trial division up to the configured bound")]
    Factorization(String),
    #[error("singular rank matrix on cyclic subgroups")]
    SingularRankMatrix,
    #[error("index identity fails: left {lhs}, right {rhs}")]
    IdentityMismatch { lhs: String, rhs: String },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True when the failure is caused by malformed or invalid input rather
    /// than by a mathematical outcome.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NotABrauerRelation
                | Error::NoInjectiveMap { .. }
                | Error::IdentityMismatch { .. }
                | Error::InfiniteCokernel(_)
                | Error::SingularRankMatrix
                | Error::VanishingDeterminant
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
