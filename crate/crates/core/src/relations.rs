//! Brauer relations, the relation `Θ_U`, the map `φ` realising it, and the
//! search for representative choices that make `φ` injective.

use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{Group, Subgroup, SubgroupClass};
use crate::lattice::{same_group, PermLattice};
use crate::linalg::{self, IntMatrix};

/// A formal combination `Σ n_H H` of pairwise distinct subgroups.
///
/// Degree balance is not required here, so that failing candidates can be
/// represented and reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerRelation {
    terms: Vec<(Subgroup, i64)>,
}

impl BrauerRelation {
    pub fn new(terms: Vec<(Subgroup, i64)>) -> Result<BrauerRelation> {
        for (i, (h, n)) in terms.iter().enumerate() {
            if *n == 0 {
                return Err(Error::DegenerateSubgroupSet("zero coefficient".into()));
            }
            if terms[..i].iter().any(|(k, _)| k == h) {
                return Err(Error::DegenerateSubgroupSet(format!("subgroup {:?} listed twice", h.elements())));
            }
        }
        Ok(BrauerRelation { terms })
    }

    /// Sums the coefficients of equal subgroups and drops zero terms.
    pub fn collect(terms: Vec<(Subgroup, i64)>) -> BrauerRelation {
        let mut out: Vec<(Subgroup, i64)> = Vec::new();
        for (h, n) in terms {
            match out.iter_mut().find(|(k, _)| *k == h) {
                Some((_, m)) => *m += n,
                None => out.push((h, n)),
            }
        }
        out.retain(|(_, n)| *n != 0);
        BrauerRelation { terms: out }
    }

    pub fn empty() -> BrauerRelation {
        BrauerRelation { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(Subgroup, i64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ n_H [G:H]`, which vanishes for every Brauer relation.
    pub fn degree(&self, group: &Group) -> i64 {
        self.terms.iter().map(|(h, n)| n * h.index_in(group) as i64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFixedPoints {
    pub representative: usize,
    pub class_size: usize,
    pub sum: i64,
}

/// `Σ_H n_H · #(G/H)^g` for one `g` per conjugacy class.
pub fn fixed_point_sums(group: &Group, rel: &BrauerRelation) -> Result<Vec<ClassFixedPoints>> {
    let tables = rel.terms.iter().map(|(h, _)| group.cosets(h)).collect::<Result<Vec<_>>>()?;
    Ok(group
        .conjugacy_classes()
        .into_iter()
        .map(|class| {
            let g = class[0];
            let sum = rel.terms.iter().zip(&tables).map(|((_, n), t)| n * t.fixed_points(g) as i64).sum();
            ClassFixedPoints { representative: g, class_size: class.len(), sum }
        })
        .collect())
}

pub fn is_brauer_relation(group: &Group, rel: &BrauerRelation) -> bool {
    fixed_point_sums(group, rel).is_ok_and(|sums| sums.iter().all(|c| c.sum == 0))
}

fn validate_u(group: &Group, u: &[Subgroup]) -> Result<()> {
    if u.is_empty() {
        return Err(Error::DegenerateSubgroupSet("U is empty".into()));
    }
    for (i, h) in u.iter().enumerate() {
        if h.order() == 1 || h.order() == group.order() {
            return Err(Error::DegenerateSubgroupSet("U may not contain the trivial subgroup or G".into()));
        }
        if u[..i].contains(h) {
            return Err(Error::DegenerateSubgroupSet(format!("subgroup {:?} listed twice", h.elements())));
        }
    }
    Ok(())
}

/// `Θ_U = 1 + (|U|-1)·G - Σ_{H∈U} H`. Whether it is a Brauer relation is a
/// separate question answered by [`is_brauer_relation`].
pub fn theta_u(group: &Group, u: &[Subgroup]) -> Result<BrauerRelation> {
    validate_u(group, u)?;
    let mut terms = vec![(Subgroup::trivial(), 1)];
    if u.len() > 1 {
        terms.push((Subgroup::whole(group), u.len() as i64 - 1));
    }
    terms.extend(u.iter().map(|h| (h.clone(), -1)));
    BrauerRelation::new(terms)
}

/// A `G`-map between permutation lattices. Row `b` of the matrix is the
/// image of source basis vector `b` in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    source: PermLattice,
    target: PermLattice,
    matrix: IntMatrix,
}

impl EquivariantMap {
    pub fn new(source: PermLattice, target: PermLattice, matrix: IntMatrix) -> Result<EquivariantMap> {
        if !same_group(source.group(), target.group()) {
            return Err(Error::GroupMismatch);
        }
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, lattices have ranks {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let phi = EquivariantMap { source, target, matrix };
        phi.check_equivariance()?;
        Ok(phi)
    }

    fn check_equivariance(&self) -> Result<()> {
        for &s in self.source.group().generators() {
            for b in 0..self.source.rank() {
                let sb = self.source.basis_image(s, b);
                for c in 0..self.target.rank() {
                    let sc = self.target.basis_image(s, c);
                    if self.matrix[(sb, sc)] != self.matrix[(b, c)] {
                        return Err(Error::NotEquivariant(format!("generator {s}, entry ({b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &PermLattice {
        &self.source
    }

    pub fn target(&self) -> &PermLattice {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn group(&self) -> &Arc<Group> {
        self.source.group()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.rank()
    }

    pub fn identity(p: PermLattice) -> EquivariantMap {
        let n = p.rank();
        EquivariantMap { source: p.clone(), target: p, matrix: IntMatrix::identity(n) }
    }
}

/// Dual map with respect to the coset bases.
pub fn transpose_map(phi: &EquivariantMap) -> Result<EquivariantMap> {
    EquivariantMap::new(phi.target.clone(), phi.source.clone(), phi.matrix.transpose())
}

/// The map on coinvariants: entry `(i, j)` is the augmentation of the image
/// of a basis vector of source summand `i`, restricted to target summand `j`.
pub fn coinvariant_map(phi: &EquivariantMap) -> IntMatrix {
    let (src, tgt) = (phi.source.summands(), phi.target.summands());
    let mut out = IntMatrix::zeros(src.len(), tgt.len());
    for (i, s) in src.iter().enumerate() {
        for (j, t) in tgt.iter().enumerate() {
            let mut acc = BigInt::zero();
            for c in 0..t.cosets.len() {
                acc += &phi.matrix[(s.offset, t.offset + c)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// [`coinvariant_map`] as a map between sums of copies of `Z[G/G]`.
pub fn coinvariant_equivariant(phi: &EquivariantMap) -> Result<EquivariantMap> {
    let group = phi.group().clone();
    let whole = Subgroup::whole(&group);
    let source = PermLattice::new(group.clone(), &vec![whole.clone(); phi.source.summands().len()])?;
    let target = PermLattice::new(group, &vec![whole; phi.target.summands().len()])?;
    EquivariantMap::new(source, target, coinvariant_map(phi))
}

/// `φ: Z[G/1] ⊕ Z^{|U|} -> Z ⊕ ⊕_{H∈U} Z[G/H]` with
/// `σ ↦ (1, (σH)_H)` and the `H`-th copy of `Z` sent to the norm `N_H`.
pub fn build_phi_u(group: &Arc<Group>, u: &[Subgroup]) -> Result<EquivariantMap> {
    let rel = theta_u(group, u)?;
    if !is_brauer_relation(group, &rel) {
        return Err(Error::NotABrauerRelation);
    }
    let whole = Subgroup::whole(group);
    let mut src_groups = vec![Subgroup::trivial()];
    src_groups.extend(std::iter::repeat_n(whole.clone(), u.len()));
    let mut tgt_groups = vec![whole];
    tgt_groups.extend(u.iter().cloned());
    let source = PermLattice::new(group.clone(), &src_groups)?;
    let target = PermLattice::new(group.clone(), &tgt_groups)?;
    let mut x = IntMatrix::zeros(source.rank(), target.rank());
    let regular = &source.summands()[0];
    for (b, &sigma) in regular.cosets.representatives().iter().enumerate() {
        x[(regular.offset + b, 0)] = BigInt::one();
        for t in &target.summands()[1..] {
            x[(regular.offset + b, t.offset + t.cosets.coset_of(sigma))] = BigInt::one();
        }
    }
    for (s, t) in source.summands()[1..].iter().zip(&target.summands()[1..]) {
        for c in 0..t.cosets.len() {
            x[(s.offset, t.offset + c)] = BigInt::one();
        }
    }
    EquivariantMap::new(source, target, x)
}

/// Choose `count` distinct subgroups out of `candidates`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub candidates: Vec<Subgroup>,
    pub count: usize,
}

impl Slot {
    pub fn from_class(class: &SubgroupClass, count: usize) -> Slot {
        Slot { candidates: class.members.clone(), count }
    }
}

#[derive(Clone, Debug)]
pub struct PhiSolution {
    pub u: Vec<Subgroup>,
    pub relation: BrauerRelation,
    pub phi: EquivariantMap,
    /// Combinations examined up to and including this one.
    pub tried: usize,
}

fn candidate_sets(slots: &[Slot]) -> Result<impl Iterator<Item = Vec<Subgroup>> + '_> {
    for slot in slots {
        if slot.count > slot.candidates.len() {
            return Err(Error::InvalidParameters(format!(
                "asked for {} subgroups out of {} candidates",
                slot.count,
                slot.candidates.len()
            )));
        }
    }
    let per_slot: Vec<Vec<Vec<Subgroup>>> = slots
        .iter()
        .map(|s| s.candidates.iter().cloned().combinations(s.count).collect())
        .collect();
    Ok(per_slot
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .filter(|u| u.iter().enumerate().all(|(i, h)| !u[..i].contains(h))))
}

fn try_candidate(group: &Arc<Group>, u: &[Subgroup]) -> Option<(BrauerRelation, EquivariantMap)> {
    let rel = theta_u(group, u).ok()?;
    if !is_brauer_relation(group, &rel) {
        return None;
    }
    let phi = build_phi_u(group, u).ok()?;
    phi.is_injective().then_some((rel, phi))
}

/// The lexicographically first candidate `U` for which `Θ_U` is a Brauer
/// relation and `φ` is injective.
pub fn search_phi(group: &Arc<Group>, slots: &[Slot], budget: usize) -> Result<PhiSolution> {
    let mut tried = 0;
    for u in candidate_sets(slots)? {
        if tried == budget {
            return Err(Error::NoInjectiveMap { tried, exhausted: true });
        }
        tried += 1;
        if let Some((relation, phi)) = try_candidate(group, &u) {
            return Ok(PhiSolution { u, relation, phi, tried });
        }
    }
    Err(Error::NoInjectiveMap { tried, exhausted: false })
}

/// Every successful candidate, in search order; an error if there is none.
pub fn search_phi_all(group: &Arc<Group>, slots: &[Slot], budget: usize) -> Result<Vec<PhiSolution>> {
    let mut tried = 0;
    let mut found = Vec::new();
    for u in candidate_sets(slots)? {
        if tried == budget {
            return Err(Error::NoInjectiveMap { tried, exhausted: true });
        }
        tried += 1;
        if let Some((relation, phi)) = try_candidate(group, &u) {
            found.push(PhiSolution { u, relation, phi, tried });
        }
    }
    if found.is_empty() {
        return Err(Error::NoInjectiveMap { tried, exhausted: false });
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Preset;
    use crate::Limits;
    use num_traits::Signed;

    fn build(p: Preset) -> Arc<Group> {
        Arc::new(p.build(&Limits::default()).unwrap())
    }

    fn f20() -> Arc<Group> {
        build(Preset::Frobenius { p: 5, n: 4, k: 2 })
    }

    fn classes_of_order(g: &Group, order: usize) -> Vec<SubgroupClass> {
        g.subgroup_classes(&Limits::default()).unwrap().into_iter().filter(|c| c.order() == order).collect()
    }

    #[test]
    fn empty_relation_is_valid() {
        assert!(is_brauer_relation(&f20(), &BrauerRelation::empty()));
    }

    #[test]
    fn f20_relation() {
        let g = f20();
        let c5 = classes_of_order(&g, 5)[0].representative.clone();
        let c4 = classes_of_order(&g, 4).remove(0);
        let rel = BrauerRelation::new(vec![
            (Subgroup::trivial(), 1),
            (c4.representative.clone(), -4),
            (c5, -1),
            (Subgroup::whole(&g), 4),
        ])
        .unwrap();
        assert!(is_brauer_relation(&g, &rel));
        assert_eq!(rel.degree(&g), 0);
        let bad = BrauerRelation::new(vec![(Subgroup::trivial(), 1), (Subgroup::whole(&g), -19)]).unwrap();
        assert_eq!(bad.degree(&g), 1);
        assert!(!is_brauer_relation(&g, &bad));
    }

    /// Brute force over every combination of at most three distinct subgroups
    /// with coefficients in -2..=2.
    #[test]
    fn cyclic_groups_have_no_relations() {
        let g = build(Preset::Cyclic(6));
        let subs = g.all_subgroups(&Limits::default()).unwrap();
        let coeffs = [-2i64, -1, 1, 2];
        for k in 1..=3 {
            for hs in subs.iter().combinations(k) {
                for ns in std::iter::repeat_n(coeffs.iter(), k).multi_cartesian_product() {
                    let terms = hs.iter().zip(&ns).map(|(h, n)| ((*h).clone(), **n)).collect();
                    let rel = BrauerRelation::new(terms).unwrap();
                    assert!(!is_brauer_relation(&g, &rel));
                }
            }
        }
    }

    #[test]
    fn relation_construction_errors() {
        let g = f20();
        assert!(BrauerRelation::new(vec![(Subgroup::trivial(), 1), (Subgroup::trivial(), 1)]).is_err());
        assert!(BrauerRelation::new(vec![(Subgroup::trivial(), 0)]).is_err());
        assert!(theta_u(&g, &[]).is_err());
        assert!(theta_u(&g, &[Subgroup::whole(&g)]).is_err());
        assert!(theta_u(&g, &[Subgroup::trivial()]).is_err());
        let c5 = classes_of_order(&g, 5)[0].representative.clone();
        assert!(theta_u(&g, &[c5.clone(), c5]).is_err());
    }

    #[test]
    fn klein_four_phi() {
        let g = build(Preset::ElementaryAbelian { p: 2, r: 2 });
        let u: Vec<Subgroup> = classes_of_order(&g, 2).into_iter().map(|c| c.representative).collect();
        assert!(is_brauer_relation(&g, &theta_u(&g, &u).unwrap()));
        let phi = build_phi_u(&g, &u).unwrap();
        assert_eq!((phi.matrix().rows(), phi.matrix().cols()), (7, 7));
        assert_eq!(phi.rank(), 7);
        let a = coinvariant_map(&phi);
        assert_eq!(linalg::det(&a).abs(), BigInt::from(8));
    }

    #[test]
    fn s3_phi() {
        let g = build(Preset::Frobenius { p: 3, n: 2, k: 2 });
        let c3 = classes_of_order(&g, 3)[0].representative.clone();
        let c2 = classes_of_order(&g, 2).remove(0);
        let u = vec![c3, c2.members[0].clone(), c2.members[1].clone()];
        let phi = build_phi_u(&g, &u).unwrap();
        assert_eq!(phi.matrix().rows(), 9);
        assert_eq!(phi.rank(), 9);
    }

    #[test]
    fn f20_phi_and_search() {
        let g = f20();
        let slots = vec![
            Slot::from_class(&classes_of_order(&g, 5)[0], 1),
            Slot::from_class(&classes_of_order(&g, 4)[0], 4),
        ];
        let sol = search_phi(&g, &slots, 10_000).unwrap();
        assert_eq!(sol.tried, 1);
        assert_eq!(sol.phi.matrix().rows(), 25);
        assert_eq!(sol.phi.rank(), 25);
        let tr = transpose_map(&sol.phi).unwrap();
        assert_eq!(tr.rank(), 25);
        assert_eq!(transpose_map(&tr).unwrap(), sol.phi);
        let a = coinvariant_map(&sol.phi);
        assert_eq!((a.rows(), a.cols()), (6, 6));
        assert!(a.row(0).iter().all(One::is_one));
        for i in 1..6 {
            let idx = sol.u[i - 1].index_in(&g) as i64;
            assert_eq!(a.row(i)[i], BigInt::from(idx));
        }
        assert_eq!(linalg::det(&a).abs(), BigInt::from(2500));
        assert_eq!(search_phi_all(&g, &slots, 10_000).unwrap().len(), 5);
    }

    #[test]
    fn cyclic_search_fails() {
        let g = build(Preset::Cyclic(4));
        let subs = g.subgroup_classes(&Limits::default()).unwrap();
        let c2 = subs.iter().find(|c| c.order() == 2).unwrap();
        let err = search_phi(&g, &[Slot::from_class(c2, 1)], 100).unwrap_err();
        assert_eq!(err, Error::NoInjectiveMap { tried: 1, exhausted: false });
        let err = search_phi(&g, &[Slot::from_class(c2, 1)], 0).unwrap_err();
        assert_eq!(err, Error::NoInjectiveMap { tried: 0, exhausted: true });
    }

    #[test]
    fn identity_and_transpose() {
        let g = f20();
        let p = PermLattice::new(g.clone(), &[classes_of_order(&g, 4)[0].representative.clone()]).unwrap();
        let id = EquivariantMap::identity(p);
        assert_eq!(transpose_map(&id).unwrap(), id);
        assert_eq!(coinvariant_map(&id), IntMatrix::identity(1));
    }

    #[test]
    fn norm_map_coinvariants() {
        let g = f20();
        let source = PermLattice::new(g.clone(), &[Subgroup::whole(&g)]).unwrap();
        let target = PermLattice::new(g.clone(), &[Subgroup::trivial()]).unwrap();
        let norm = EquivariantMap::new(source, target, IntMatrix::from_i64(1, 20, &[1; 20]).unwrap()).unwrap();
        assert_eq!(coinvariant_map(&norm), IntMatrix::from_i64(1, 1, &[20]).unwrap());
    }

    #[test]
    fn rejects_non_equivariant() {
        let g = f20();
        let p = PermLattice::new(g.clone(), &[Subgroup::trivial()]).unwrap();
        let mut x = IntMatrix::zeros(20, 20);
        x[(0, 0)] = BigInt::one();
        assert!(matches!(EquivariantMap::new(p.clone(), p, x), Err(Error::NotEquivariant(_))));
    }
}
