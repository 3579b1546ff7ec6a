//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`, with `0` the identity. Every constructor
//! funnels through [`Group::from_table`], which checks the table axioms.

mod presets;
mod subgroups;

use std::collections::HashMap;
use std::fmt;

pub use presets::Preset;
pub use subgroups::{CosetTable, DoubleCoset, Quotient, Subgroup, SubgroupClass};

use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Group {
    order: usize,
    cayley: Vec<usize>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    labels: Vec<String>,
}

impl Group {
    /// Validates a flat row-major Cayley table and wraps it.
    pub fn from_table(cayley: Vec<usize>, generators: Vec<usize>, labels: Vec<String>, limits: &Limits) -> Result<Group> {
        let order = labels.len();
        if order == 0 {
            return Err(Error::InvalidCayleyTable("empty group".into()));
        }
        if order > limits.max_order {
            return Err(Error::OrderCapExceeded { cap: limits.max_order });
        }
        if cayley.len() != order * order {
            return Err(Error::InvalidCayleyTable(format!("table has {} entries for order {order}", cayley.len())));
        }
        if cayley.iter().any(|&x| x >= order) {
            return Err(Error::InvalidCayleyTable("entry out of range".into()));
        }
        for x in 0..order {
            if cayley[x] != x || cayley[x * order] != x {
                return Err(Error::InvalidCayleyTable(format!("element 0 is not an identity at {x}")));
            }
        }
        let mut seen = vec![false; order];
        for r in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..order {
                let v = cayley[r * order + c];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidCayleyTable(format!("row {r} is not a permutation")));
                }
            }
        }
        for c in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..order {
                let v = cayley[r * order + c];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidCayleyTable(format!("column {c} is not a permutation")));
                }
            }
        }
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order).find(|&y| cayley[x * order + y] == 0).expect("rows are permutations");
        }
        if order <= limits.associativity_check_order {
            for a in 0..order {
                for b in 0..order {
                    let ab = cayley[a * order + b];
                    for c in 0..order {
                        if cayley[ab * order + c] != cayley[a * order + cayley[b * order + c]] {
                            return Err(Error::InvalidCayleyTable(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(Error::InvalidCayleyTable("generator out of range".into()));
        }
        let group = Group { order, cayley, inverse, generators, labels };
        if group.closure(&group.generators).order() != order {
            return Err(Error::InvalidCayleyTable("generators do not generate the group".into()));
        }
        Ok(group)
    }

    /// Builds a group from a multiplication rule on `0..order`.
    pub fn from_multiplication(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<usize>,
        labels: Vec<String>,
        limits: &Limits,
    ) -> Result<Group> {
        if order > limits.max_order {
            return Err(Error::OrderCapExceeded { cap: limits.max_order });
        }
        let mut cayley = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                cayley.push(mul(a, b));
            }
        }
        Group::from_table(cayley, generators, labels, limits)
    }

    pub fn trivial() -> Group {
        Group { order: 1, cayley: vec![0], inverse: vec![0], generators: vec![], labels: vec!["e".into()] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cayley_row(&self, a: usize) -> &[usize] {
        &self.cayley[a * self.order..(a + 1) * self.order]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes of elements, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|g| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// The subgroup generated by a set of elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup::from_sorted_unchecked(elements)
    }

    /// A small generating set of a subgroup, chosen greedily in index order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        for &x in h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
                if span.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {} on generators [", self.order)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.labels[*g])?;
        }
        write!(f, "]")
    }
}

/// A permutation of `{0, ..., degree - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotABijection(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from 0-based cycles on at least `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0).max(degree);
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::NotABijection(format!("point {} repeated in cycles", p + 1)));
                }
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images.get(i).copied().unwrap_or(i)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    fn extended(&self, degree: usize) -> Permutation {
        Permutation { images: (0..degree).map(|i| self.image(i)).collect() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let degree = self.degree().max(other.degree());
        Permutation { images: (0..degree).map(|i| self.image(other.image(i))).collect() }
    }

    /// 1-based cycle notation, fixed points omitted, `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push('(');
            out.push_str(&cycle.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// The abstract group generated by a list of permutations. The identity
/// permutation becomes element 0 and the generators keep their order.
pub fn group_from_permutations(gens: &[Permutation], limits: &Limits) -> Result<Group> {
    let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = gens.iter().map(|g| g.extended(degree)).collect();
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(elements[0].images.clone(), 0);
    let mut gen_indices = Vec::with_capacity(gens.len());
    for g in &gens {
        let next = elements.len();
        let idx = *index.entry(g.images.clone()).or_insert(next);
        if idx == next {
            elements.push(g.clone());
        }
        gen_indices.push(idx);
    }
    let mut i = 0;
    while i < elements.len() {
        for g in &gens {
            let y = g.compose(&elements[i]);
            if !index.contains_key(&y.images) {
                if elements.len() == limits.max_order {
                    return Err(Error::OrderCapExceeded { cap: limits.max_order });
                }
                index.insert(y.images.clone(), elements.len());
                elements.push(y);
            }
        }
        i += 1;
    }
    let order = elements.len();
    let mut cayley = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            cayley.push(index[&a.compose(b).images]);
        }
    }
    let mut generators = Vec::new();
    for g in gen_indices {
        if g != 0 && !generators.contains(&g) {
            generators.push(g);
        }
    }
    let labels = elements.iter().map(Permutation::cycle_notation).collect();
    Group::from_table(cayley, generators, labels, limits)
}
