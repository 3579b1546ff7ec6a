//! Integral representations (G-lattices) and their homomorphism spaces.
//!
//! Group elements act on column vectors: `action(g) * action(h) = action(gh)`.
//! Sublattice bases, on the other hand, are stored as rows in lattice
//! coordinates, matching the row-vector convention of [`crate::linalg`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{CosetTable, Group, Quotient, Subgroup};
use crate::linalg::{self, IntMatrix, RowSolver};
use crate::relations::EquivariantMap;
use crate::Limits;

/// Beyond this value of `rank * order` the homomorphism check is sampled.
const FULL_CHECK_LIMIT: usize = 10_000;
const SAMPLED_PAIRS: usize = 100;

pub(crate) fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A free `Z`-module of finite rank with a unimodular action of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLattice {
    group: Arc<Group>,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GLattice {
    /// Wraps a full per-element action table after checking the
    /// representation axioms.
    pub fn from_action_table(group: Arc<Group>, rank: usize, action: Vec<IntMatrix>) -> Result<GLattice> {
        if action.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if let Some(bad) = action.iter().position(|a| a.rows() != rank || a.cols() != rank) {
            return Err(Error::DimensionMismatch(format!("action of element {bad} is not {rank}x{rank}")));
        }
        if !action[0].is_identity() {
            return Err(Error::RelationsViolated { element: 0 });
        }
        for (g, a) in action.iter().enumerate() {
            if !linalg::is_unimodular(a) {
                return Err(Error::NotUnimodular(format!("action of element {g}")));
            }
        }
        let lattice = GLattice { group, rank, action };
        lattice.check_homomorphism()?;
        Ok(lattice)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        let check = |a: usize, b: usize| -> Result<()> {
            if &self.action[a] * &self.action[b] != self.action[g.mul(a, b)] {
                return Err(Error::RelationsViolated { element: g.mul(a, b) });
            }
            Ok(())
        };
        if self.rank * g.order() <= FULL_CHECK_LIMIT {
            for a in g.elements() {
                for b in g.elements() {
                    check(a, b)?;
                }
            }
            return Ok(());
        }
        for &s in g.generators() {
            for &t in g.generators() {
                check(s, t)?;
            }
        }
        // xorshift, fixed seed: reproducible spot checks
        let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % g.order() as u64) as usize
        };
        for _ in 0..SAMPLED_PAIRS {
            let (a, b) = (next(), next());
            check(a, b)?;
        }
        Ok(())
    }

    pub fn trivial(group: Arc<Group>, rank: usize) -> GLattice {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GLattice { group, rank, action }
    }

    /// Extends an assignment generator -> matrix to the whole group.
    ///
    /// The table is built along the Cayley graph; an element reached along
    /// two paths with different matrices means the assignment does not
    /// respect the group relations.
    pub fn from_generator_matrices(group: Arc<Group>, rank: usize, matrices: &[IntMatrix]) -> Result<GLattice> {
        if matrices.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                matrices.len(),
                group.generators().len()
            )));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(format!("generator matrix {i} is not {rank}x{rank}")));
            }
            if !linalg::is_unimodular(m) {
                return Err(Error::NotUnimodular(format!("generator matrix {i}")));
            }
        }
        let mut table: Vec<Option<IntMatrix>> = vec![None; group.order()];
        table[0] = Some(IntMatrix::identity(rank));
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (&s, m) in group.generators().iter().zip(matrices) {
                let y = group.mul(s, x);
                let candidate = m * table[x].as_ref().expect("visited");
                match &table[y] {
                    Some(existing) if *existing != candidate => {
                        return Err(Error::RelationsViolated { element: y });
                    }
                    Some(_) => {}
                    None => {
                        table[y] = Some(candidate);
                        queue.push(y);
                    }
                }
            }
        }
        let action = table.into_iter().map(|m| m.expect("generators generate")).collect();
        GLattice::from_action_table(group, rank, action)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.group.generators().iter().map(|&g| self.action[g].clone()).collect()
    }

    pub fn direct_sum(&self, other: &GLattice) -> Result<GLattice> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| IntMatrix::block_diag(&[a, b])).collect();
        Ok(GLattice { group: self.group.clone(), rank: self.rank + other.rank, action })
    }

    pub fn tensor(&self, other: &GLattice) -> Result<GLattice> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.kronecker(b)).collect();
        Ok(GLattice { group: self.group.clone(), rank: self.rank * other.rank, action })
    }

    /// The contragredient lattice `Hom(M, Z)` in the dual basis.
    pub fn dual(&self) -> GLattice {
        let action = self.group.elements().map(|g| self.action[self.group.inv(g)].transpose()).collect();
        GLattice { group: self.group.clone(), rank: self.rank, action }
    }

    /// Induction from a subgroup. `m_h` must be a lattice over
    /// `group.subgroup_as_group(h)`; the basis is ordered coset-major using
    /// the minimal coset representatives.
    pub fn induce(group: Arc<Group>, h: &Subgroup, m_h: &GLattice, limits: &Limits) -> Result<GLattice> {
        let table = group.cosets(h)?;
        let expected = group.subgroup_as_group(h, limits)?;
        if *m_h.group != expected {
            return Err(Error::GroupMismatch);
        }
        let (n, r) = (table.len(), m_h.rank);
        let reps = table.representatives();
        let action = group
            .elements()
            .map(|g| {
                let mut a = IntMatrix::zeros(n * r, n * r);
                for i in 0..n {
                    let j = table.act(g, i);
                    let inner = group.mul(group.mul(group.inv(reps[j]), g), reps[i]);
                    let pos = h.position(inner).expect("t_j^-1 g t_i lies in H");
                    let block = &m_h.action[pos];
                    for x in 0..r {
                        for y in 0..r {
                            a[(j * r + x, i * r + y)] = block[(x, y)].clone();
                        }
                    }
                }
                a
            })
            .collect();
        GLattice::from_action_table(group, n * r, action)
    }

    /// Inflation along a quotient map `G -> G/N`.
    pub fn inflate(group: Arc<Group>, quotient: &Quotient, m_q: &GLattice) -> Result<GLattice> {
        if *m_q.group != quotient.group || quotient.projection.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        let action = quotient.projection.iter().map(|&q| m_q.action[q].clone()).collect();
        Ok(GLattice { group, rank: m_q.rank, action })
    }

    /// `M / S` for a G-stable pure sublattice `S` given by basis rows.
    pub fn quotient(&self, sub_basis: &IntMatrix) -> Result<GLattice> {
        if sub_basis.cols() != self.rank {
            return Err(Error::DimensionMismatch("sublattice basis has the wrong width".into()));
        }
        let k = sub_basis.rows();
        if k == 0 {
            return Ok(self.clone());
        }
        let solver = RowSolver::new(sub_basis);
        if solver.rank() < k {
            return Err(Error::DimensionMismatch("sublattice basis rows are dependent".into()));
        }
        if !solver.is_saturated() {
            return Err(Error::TorsionQuotient);
        }
        self.check_stable(&solver, sub_basis)?;
        // left * S * right = [I 0]: the rows of right^-1 are a basis of M whose
        // first k rows span S; coordinates of m in it are m * right.
        let s = linalg::snf(sub_basis);
        let completion = linalg::unimodular_inverse(&s.right).expect("SNF transforms are unimodular");
        let n = self.rank - k;
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut out = IntMatrix::zeros(n, n);
                for j in 0..n {
                    let image = a.mul_vec(completion.row(k + j));
                    let coords = s.right.vec_mul(&image);
                    for i in 0..n {
                        out[(i, j)] = coords[k + i].clone();
                    }
                }
                out
            })
            .collect();
        GLattice::from_action_table(self.group.clone(), n, action)
    }

    /// The lattice structure on a G-stable full-rank sublattice, in the
    /// coordinates of the given basis rows.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<GLattice> {
        if basis.rows() != self.rank || basis.cols() != self.rank {
            return Err(Error::DimensionMismatch("sublattice basis must be square of full rank".into()));
        }
        let solver = RowSolver::new(basis);
        if solver.rank() < self.rank {
            return Err(Error::DimensionMismatch("sublattice basis is singular".into()));
        }
        let mut action = Vec::with_capacity(self.group.order());
        for a in &self.action {
            let mut out = IntMatrix::zeros(self.rank, self.rank);
            for (i, b) in basis.row_iter().enumerate() {
                let coords = solver.solve(&a.mul_vec(b)).ok_or(Error::NotStable)?;
                for (j, c) in coords.into_iter().enumerate() {
                    out[(j, i)] = c;
                }
            }
            action.push(out);
        }
        GLattice::from_action_table(self.group.clone(), self.rank, action)
    }

    fn check_stable(&self, solver: &RowSolver, basis: &IntMatrix) -> Result<()> {
        for &g in self.group.generators() {
            for b in basis.row_iter() {
                if solver.solve(&self.action[g].mul_vec(b)).is_none() {
                    return Err(Error::NotStable);
                }
            }
        }
        Ok(())
    }

    /// Hermite basis (rows) of the G-submodule generated by the given rows.
    pub fn generated_submodule(&self, vectors: &IntMatrix) -> Result<IntMatrix> {
        if vectors.cols() != self.rank {
            return Err(Error::DimensionMismatch("vectors have the wrong width".into()));
        }
        let mut images = Vec::new();
        for a in &self.action {
            for v in vectors.row_iter() {
                images.push(a.mul_vec(v));
            }
        }
        let stacked = IntMatrix::from_rows(&images)?;
        let stacked = if images.is_empty() { IntMatrix::zeros(0, self.rank) } else { stacked };
        let (h, _) = linalg::hnf(&stacked);
        let r = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|e| !e.is_zero())).count();
        Ok(h.select_rows(0..r))
    }

    /// Saturated basis rows of `M^H = {m : h m = m for all h in H}`.
    pub fn fixed_sublattice(&self, h: &Subgroup) -> IntMatrix {
        let gens = self.group.generating_set(h);
        let id = IntMatrix::identity(self.rank);
        let blocks: Vec<IntMatrix> = gens
            .iter()
            .map(|&g| self.action[g].checked_sub(&id).expect("square").transpose())
            .collect();
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let stacked = IntMatrix::hstack(self.rank, &refs).expect("same row count");
        linalg::kernel_basis(&stacked)
    }

    /// Gram matrix of `<x, y> = sum_g (g x) . (g y)`.
    pub fn invariant_gram(&self) -> IntMatrix {
        self.averaged_gram(&IntMatrix::identity(self.rank))
    }

    /// Gram matrix of `sum_g (g x)^T S (g y)` for a seed form `S`.
    pub fn averaged_gram(&self, seed: &IntMatrix) -> IntMatrix {
        let mut gram = IntMatrix::zeros(self.rank, self.rank);
        for a in &self.action {
            let term = &(&a.transpose() * seed) * a;
            gram = gram.checked_add(&term).expect("same shape");
        }
        gram
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermSummand {
    pub subgroup: Subgroup,
    pub cosets: CosetTable,
    pub offset: usize,
}

/// `⊕_i Z[G/H_i]` with basis indexed by (summand, coset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermLattice {
    lattice: GLattice,
    summands: Vec<PermSummand>,
}

impl PermLattice {
    pub fn new(group: Arc<Group>, subgroups: &[Subgroup]) -> Result<PermLattice> {
        let mut summands = Vec::with_capacity(subgroups.len());
        let mut offset = 0;
        for h in subgroups {
            let cosets = group.cosets(h)?;
            let len = cosets.len();
            summands.push(PermSummand { subgroup: cosets.subgroup().clone(), cosets, offset });
            offset += len;
        }
        let rank = offset;
        let action = group
            .elements()
            .map(|g| {
                let mut a = IntMatrix::zeros(rank, rank);
                for s in &summands {
                    for (c, &img) in s.cosets.action_of(g).iter().enumerate() {
                        a[(s.offset + img, s.offset + c)] = BigInt::one();
                    }
                }
                a
            })
            .collect();
        Ok(PermLattice { lattice: GLattice { group, rank, action }, summands })
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.lattice.group
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank
    }

    pub fn summands(&self) -> &[PermSummand] {
        &self.summands
    }

    pub fn subgroups(&self) -> Vec<Subgroup> {
        self.summands.iter().map(|s| s.subgroup.clone()).collect()
    }

    /// Image of basis vector `b` under `g`.
    pub fn basis_image(&self, g: usize, b: usize) -> usize {
        let (s, c) = self.locate(b);
        let s = &self.summands[s];
        s.offset + s.cosets.act(g, c)
    }

    /// (summand, coset) of a basis index.
    pub fn locate(&self, b: usize) -> (usize, usize) {
        let s = self.summands.partition_point(|s| s.offset <= b) - 1;
        (s, b - self.summands[s].offset)
    }
}

#[derive(Clone, Debug)]
pub struct HomBlock {
    pub subgroup: Subgroup,
    /// Saturated basis rows of `M^H`.
    pub basis: IntMatrix,
    pub offset: usize,
    solver: RowSolver,
}

impl HomBlock {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of a vector of `M^H` in the block basis.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver.solve(v)
    }
}

/// `Hom_G(P, M)` for a permutation lattice `P`, identified with
/// `⊕_i M^{H_i}` by evaluating at the identity coset of each summand.
#[derive(Clone, Debug)]
pub struct HomBasis {
    blocks: Vec<HomBlock>,
    rank: usize,
}

impl HomBasis {
    pub fn blocks(&self) -> &[HomBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn block_ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(HomBlock::rank).collect()
    }
}

pub fn hom_space(p: &PermLattice, m: &GLattice) -> Result<HomBasis> {
    if !same_group(p.group(), m.group()) {
        return Err(Error::GroupMismatch);
    }
    let mut blocks = Vec::with_capacity(p.summands.len());
    let mut offset = 0;
    for s in &p.summands {
        let basis = m.fixed_sublattice(&s.subgroup);
        let solver = RowSolver::new(&basis);
        let rank = basis.rows();
        blocks.push(HomBlock { subgroup: s.subgroup.clone(), basis, offset, solver });
        offset += rank;
    }
    Ok(HomBasis { blocks, rank: offset })
}

/// Matrix of `(φ, M): Hom_G(P_2, M) -> Hom_G(P_1, M)`, `f -> f ∘ φ`, for
/// `φ: P_1 -> P_2`. Rows are the basis of `Hom_G(P_2, M)`, columns the
/// coordinates in `Hom_G(P_1, M)`.
pub fn induced_map_matrix(phi: &EquivariantMap, m: &GLattice) -> Result<IntMatrix> {
    let (source, target) = (phi.source(), phi.target());
    let source_hom = hom_space(source, m)?;
    let target_hom = hom_space(target, m)?;
    let x = phi.matrix();
    let mut out = IntMatrix::zeros(target_hom.rank, source_hom.rank);
    for (j, tblock) in target_hom.blocks.iter().enumerate() {
        let tsummand = &target.summands[j];
        let reps = tsummand.cosets.representatives();
        for (v_idx, v) in tblock.basis.row_iter().enumerate() {
            // f sends the identity coset of target summand j to v and the
            // coset rep_t H to rep_t v
            let translates: Vec<Vec<BigInt>> = reps.iter().map(|&t| m.action(t).mul_vec(v)).collect();
            let row = tblock.offset + v_idx;
            for (i, sblock) in source_hom.blocks.iter().enumerate() {
                let b = source.summands[i].offset;
                let mut w = vec![BigInt::zero(); m.rank()];
                for (t, translate) in translates.iter().enumerate() {
                    let coeff = &x[(b, tsummand.offset + t)];
                    if coeff.is_zero() {
                        continue;
                    }
                    for (acc, e) in w.iter_mut().zip(translate) {
                        *acc += coeff * e;
                    }
                }
                let coords = sblock.coordinates(&w).ok_or_else(|| {
                    Error::CoordinateSolve(format!("image is not fixed by {:?}", sblock.subgroup.elements()))
                })?;
                for (c, val) in coords.into_iter().enumerate() {
                    out[(row, sblock.offset + c)] = val;
                }
            }
        }
    }
    Ok(out)
}
