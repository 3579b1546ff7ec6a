use std::collections::{BTreeSet, HashSet};

use super::Group;
use crate::error::{Error, Result};
use crate::Limits;

/// A subgroup stored as its strictly increasing list of element indices.
///
/// Ordering is lexicographic on that list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure, the identity, and Lagrange's theorem.
    pub fn new(group: &Group, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("does not contain the identity".into()));
        }
        if elements.iter().any(|&x| x >= group.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        let h = Subgroup { elements };
        for &a in &h.elements {
            if !h.contains(group.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inversion at {a}")));
            }
            for &b in &h.elements {
                if !h.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed under multiplication at ({a},{b})")));
                }
            }
        }
        if !group.order().is_multiple_of(h.order()) {
            return Err(Error::NotASubgroup("order does not divide the group order".into()));
        }
        Ok(h)
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Subgroup {
        Subgroup { elements }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(group: &Group) -> Subgroup {
        Subgroup { elements: group.elements().collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `g^-1 H g`
    pub fn conjugate(&self, group: &Group, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&h| group.conjugate(h, g)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal(&self, group: &Group) -> bool {
        group.generators().iter().all(|&g| self.conjugate(group, g) == *self)
    }

    pub fn is_cyclic(&self, group: &Group) -> bool {
        self.elements.iter().any(|&x| group.element_order(x) == self.order())
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    pub fn index_in(&self, group: &Group) -> usize {
        group.order() / self.order()
    }
}

/// A conjugacy class of subgroups; `representative` is the lexicographically
/// smallest member and `members` are sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

impl SubgroupClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

impl Group {
    /// Every subgroup, in sorted order. Built by extending cyclic subgroups
    /// one element at a time until nothing new appears.
    pub fn all_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        if self.order() > limits.max_order {
            return Err(Error::OrderCapExceeded { cap: limits.max_order });
        }
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut frontier: Vec<Subgroup> = Vec::new();
        for x in self.elements() {
            let c = self.closure(&[x]);
            if found.insert(c.clone()) {
                frontier.push(c);
            }
        }
        while let Some(h) = frontier.pop() {
            let base = self.generating_set(&h);
            for x in self.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(x);
                let k = self.closure(&gens);
                if !found.contains(&k) {
                    if found.len() >= limits.max_subgroups {
                        return Err(Error::SubgroupCapExceeded { cap: limits.max_subgroups });
                    }
                    found.insert(k.clone());
                    frontier.push(k);
                }
            }
        }
        if found.len() > limits.max_subgroups {
            return Err(Error::SubgroupCapExceeded { cap: limits.max_subgroups });
        }
        Ok(found.into_iter().collect())
    }

    /// Conjugacy classes of subgroups ordered by (order, representative).
    pub fn subgroup_classes(&self, limits: &Limits) -> Result<Vec<SubgroupClass>> {
        let all = self.all_subgroups(limits)?;
        let mut assigned: HashSet<Subgroup> = HashSet::new();
        let mut classes = Vec::new();
        for h in &all {
            if assigned.contains(h) {
                continue;
            }
            let mut members: Vec<Subgroup> = self.elements().map(|g| h.conjugate(self, g)).collect();
            members.sort();
            members.dedup();
            assigned.extend(members.iter().cloned());
            classes.push(SubgroupClass { representative: members[0].clone(), members });
        }
        classes.sort_by(|a, b| (a.order(), &a.representative).cmp(&(b.order(), &b.representative)));
        Ok(classes)
    }

    /// Left cosets `gH` with minimal representatives.
    pub fn cosets(&self, h: &Subgroup) -> Result<CosetTable> {
        let h = Subgroup::new(self, h.elements().to_vec())?;
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::with_capacity(self.order() / h.order());
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &x in h.elements() {
                coset_of[self.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
        let action = self
            .elements()
            .map(|g| reps.iter().map(|&r| coset_of[self.mul(g, r)]).collect())
            .collect();
        Ok(CosetTable { subgroup: h, reps, coset_of, action })
    }

    /// Representatives of `A \ G / B`, each with `|g^-1 A g ∩ B|`.
    pub fn double_cosets(&self, a: &Subgroup, b: &Subgroup) -> Vec<DoubleCoset> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            for &x in a.elements() {
                let xg = self.mul(x, g);
                for &y in b.elements() {
                    seen[self.mul(xg, y)] = true;
                }
            }
            let intersection_order = a.elements().iter().filter(|&&x| b.contains(self.conjugate(x, g))).count();
            out.push(DoubleCoset { representative: g, intersection_order });
        }
        out
    }

    /// The quotient by a normal subgroup, with element `0` the identity coset.
    pub fn quotient(&self, n: &Subgroup, limits: &Limits) -> Result<Quotient> {
        let table = self.cosets(n)?;
        if !n.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let k = table.len();
        let reps = table.representatives().to_vec();
        let mul = |a: usize, b: usize| table.coset_of(self.mul(reps[a], reps[b]));
        let mut gens: Vec<usize> = Vec::new();
        for &g in self.generators() {
            let c = table.coset_of(g);
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let group = Group::from_multiplication(k, mul, gens, labels, limits)?;
        let projection = self.elements().map(|g| table.coset_of(g)).collect();
        Ok(Quotient { group, projection })
    }

    /// A subgroup as an abstract group on positions `0..|H|`, together with
    /// the embedding back into `self` (which is just `h.elements()`).
    pub fn subgroup_as_group(&self, h: &Subgroup, limits: &Limits) -> Result<Group> {
        let h = Subgroup::new(self, h.elements().to_vec())?;
        let el = h.elements();
        let mul = |a: usize, b: usize| h.position(self.mul(el[a], el[b])).expect("subgroup is closed");
        let gens = self.generating_set(&h).iter().map(|&g| h.position(g).expect("generator lies in subgroup")).collect();
        let labels = el.iter().map(|&x| self.label(x).to_string()).collect();
        Group::from_multiplication(h.order(), mul, gens, labels, limits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// Index of the coset `g * rep_i H`.
    pub fn act(&self, g: usize, coset: usize) -> usize {
        self.action[g][coset]
    }

    pub fn action_of(&self, g: usize) -> &[usize] {
        &self.action[g]
    }

    /// Number of cosets fixed by `g`.
    pub fn fixed_points(&self, g: usize) -> usize {
        self.action[g].iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    /// Action of each group generator, in generator order.
    pub fn generator_action(&self, group: &Group) -> Vec<Vec<usize>> {
        group.generators().iter().map(|&g| self.action[g].clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    /// `|g^-1 A g ∩ B|`
    pub intersection_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: Group,
    /// element of the parent group -> element of the quotient
    pub projection: Vec<usize>,
}
