//! Standard groups, `U` selectors and lattices used throughout the tests,
//! the data files and the command-line examples.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::groups::{Group, Preset, Subgroup};
use crate::input::{parse_u_selector, resolve_u_selector};
use crate::lattice::{GLattice, PermLattice};
use crate::linalg::IntMatrix;
use crate::relations::Slot;
use crate::Limits;

/// A group together with the selector for its family of `Θ_U` relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub descriptor: &'static str,
    pub u_selector: &'static str,
}

pub const FAMILIES: [Family; 6] = [
    Family { name: "V4", descriptor: "elab:2,2", u_selector: "all-index:2" },
    Family { name: "C3^3", descriptor: "elab:3,3", u_selector: "all-index:3" },
    Family { name: "S3", descriptor: "frobenius:3,2,2", u_selector: "normal:3 + 2*order:2" },
    Family { name: "F20", descriptor: "frobenius:5,4,2", u_selector: "normal:5 + 4*order:4" },
    Family { name: "F21", descriptor: "frobenius:7,3,2", u_selector: "normal:7 + 3*order:3" },
    Family { name: "Heis27", descriptor: "heisenberg:3", u_selector: "normal:9 + 3*order:3" },
];

impl Family {
    pub fn group(&self, limits: &Limits) -> Result<Arc<Group>> {
        Ok(Arc::new(crate::input::parse_group_spec(self.descriptor)?.build(limits)?))
    }

    pub fn slots(&self, group: &Group, limits: &Limits) -> Result<Vec<Slot>> {
        resolve_u_selector(&parse_u_selector(self.u_selector)?, group, limits)
    }
}

pub fn f20(limits: &Limits) -> Result<Arc<Group>> {
    Ok(Arc::new(Preset::Frobenius { p: 5, n: 4, k: 2 }.build(limits)?))
}

/// A rank-1 lattice on which `g` acts by `sign(g)`.
pub fn character_lattice(group: Arc<Group>, sign: impl Fn(usize) -> bool) -> Result<GLattice> {
    let action = group
        .elements()
        .map(|g| IntMatrix::diagonal(&[if sign(g) { -BigInt::one() } else { BigInt::one() }]))
        .collect();
    GLattice::from_action_table(group, 1, action)
}

fn first_of_order(group: &Group, order: usize, normal: bool, limits: &Limits) -> Result<Subgroup> {
    group
        .subgroup_classes(limits)?
        .into_iter()
        .flat_map(|c| c.members)
        .find(|h| h.order() == order && (!normal || h.is_normal(group)))
        .ok_or_else(|| crate::Error::InvalidParameters(format!("no subgroup of order {order}")))
}

/// Sign character of `G/N` for a normal subgroup `N` of index 2, inflated.
pub fn index_two_sign(group: &Arc<Group>, order: usize, limits: &Limits) -> Result<GLattice> {
    let n = first_of_order(group, order, true, limits)?;
    let q = group.quotient(&n, limits)?;
    let qgroup = Arc::new(q.group.clone());
    let sign = character_lattice(qgroup, |x| x != 0)?;
    GLattice::inflate(group.clone(), &q, &sign)
}

/// The four lattices `M_1, M_2, M_ρ, M_τ` of the Frobenius group of order 20,
/// one for each irreducible rational representation (`M_τ` realising it
/// four times).
pub struct F20Lattices {
    pub m1: GLattice,
    pub m2: GLattice,
    pub m_rho: GLattice,
    pub m_tau: GLattice,
}

pub fn f20_lattices(group: &Arc<Group>, limits: &Limits) -> Result<F20Lattices> {
    let m1 = GLattice::trivial(group.clone(), 1);
    let m2 = index_two_sign(group, 10, limits)?;

    // inflate Ind_{C2}^{C4}(sign) along G -> G/C5 ≅ C4
    let c5 = first_of_order(group, 5, true, limits)?;
    let q = group.quotient(&c5, limits)?;
    let c4 = Arc::new(q.group.clone());
    let c2 = first_of_order(&c4, 2, false, limits)?;
    let c2_group = Arc::new(c4.subgroup_as_group(&c2, limits)?);
    let sign = character_lattice(c2_group, |x| x != 0)?;
    let induced = GLattice::induce(c4.clone(), &c2, &sign, limits)?;
    let m_rho = GLattice::inflate(group.clone(), &q, &induced)?;

    // Ind_{C5}^G of Z[C5] / <norm>
    let c5_group = Arc::new(group.subgroup_as_group(&c5, limits)?);
    let regular = PermLattice::new(c5_group, &[Subgroup::trivial()])?;
    let gamma = regular.lattice().quotient(&IntMatrix::from_i64(1, 5, &[1; 5])?)?;
    let m_tau = GLattice::induce(group.clone(), &c5, &gamma, limits)?;
    Ok(F20Lattices { m1, m2, m_rho, m_tau })
}

/// `S_3` realised as `frobenius:3,2,2`, generators `(r, s)` with `r` of
/// order 3.
pub fn s3(limits: &Limits) -> Result<Arc<Group>> {
    Ok(Arc::new(Preset::Frobenius { p: 3, n: 2, k: 2 }.build(limits)?))
}

/// The root lattice `A_2` in the basis where `r ↦ [[0,-1],[1,-1]]` and
/// `s ↦ [[0,1],[1,0]]`.
pub fn hexagonal(group: &Arc<Group>) -> Result<GLattice> {
    GLattice::from_generator_matrices(
        group.clone(),
        2,
        &[IntMatrix::from_i64(2, 2, &[0, -1, 1, -1])?, IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])?],
    )
}

/// The hexagonal lattice tensored with the sign character.
pub fn hexagonal_sign_twist(group: &Arc<Group>, limits: &Limits) -> Result<GLattice> {
    hexagonal(group)?.tensor(&index_two_sign(group, 3, limits)?)
}
