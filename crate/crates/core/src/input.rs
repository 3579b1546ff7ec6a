//! Text formats: group descriptors, permutations, relation expressions,
//! subgroup and `U` selectors, and lattice files.
//!
//! Every parser is total on arbitrary input: malformed text yields
//! [`Error::Parse`], never a panic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{group_from_permutations, Group, Permutation, Preset, Subgroup};
use crate::lattice::GLattice;
use crate::linalg::IntMatrix;
use crate::relations::{BrauerRelation, Slot};
use crate::Limits;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_usize(s: &str) -> Result<usize> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(perr(format!("expected a nonnegative integer, found {s:?}")));
    }
    s.parse().map_err(|_| perr(format!("integer {s:?} is too large")))
}

fn parse_params<const N: usize>(s: &str, family: &str) -> Result<[usize; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(perr(format!("{family} takes {N} parameter(s), found {}", parts.len())));
    }
    let mut out = [0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_usize(p)?;
    }
    Ok(out)
}

/// A group as written on the command line or in a lattice file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Preset(Preset),
    Permutations(Vec<Permutation>),
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<Group> {
        match self {
            GroupSpec::Preset(p) => p.build(limits),
            GroupSpec::Permutations(gens) => group_from_permutations(gens, limits),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Preset(p) => write!(f, "{p}"),
            GroupSpec::Permutations(gens) => {
                let parts: Vec<String> = gens.iter().map(Permutation::cycle_notation).collect();
                write!(f, "perms:{}", parts.join(";"))
            }
        }
    }
}

fn parse_preset(s: &str) -> Result<Preset> {
    let s = s.trim();
    let (family, rest) = s.split_once(':').ok_or_else(|| perr(format!("missing ':' in group descriptor {s:?}")))?;
    match family.trim() {
        "cyclic" => Ok(Preset::Cyclic(parse_params::<1>(rest, "cyclic")?[0])),
        "elab" => {
            let [p, r] = parse_params(rest, "elab")?;
            Ok(Preset::ElementaryAbelian { p, r })
        }
        "frobenius" => {
            let [p, n, k] = parse_params(rest, "frobenius")?;
            Ok(Preset::Frobenius { p, n, k })
        }
        "heisenberg" => Ok(Preset::Heisenberg(parse_params::<1>(rest, "heisenberg")?[0])),
        "dihedral" => Ok(Preset::Dihedral(parse_params::<1>(rest, "dihedral")?[0])),
        "product" => {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| perr("product takes the form product:(A|B)"))?;
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(|| perr("unbalanced parentheses"))?,
                    '|' if depth == 0
                        && split.replace(i).is_some() => {
                            return Err(perr("product takes exactly two factors"));
                        }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| perr("product takes the form product:(A|B)"))?;
            let a = parse_preset(&inner[..i])?;
            let b = parse_preset(&inner[i + 1..])?;
            Ok(Preset::DirectProduct(Box::new(a), Box::new(b)))
        }
        other => Err(perr(format!("unknown group family {other:?}"))),
    }
}

/// `cyclic:n`, `elab:p,r`, `frobenius:p,n,k`, `heisenberg:p`,
/// `dihedral:n`, `product:(A|B)` or `perms:(1,2);(1,2,3)`.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("perms:") {
        let cycles: Vec<&str> = rest.split(';').collect();
        return Ok(GroupSpec::Permutations(parse_permutations(&cycles)?));
    }
    parse_preset(s).map(GroupSpec::Preset)
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| perr(format!("expected '(' in permutation {s:?}")))?;
        let end = body.find(')').ok_or_else(|| perr(format!("unclosed cycle in {s:?}")))?;
        let inner = body[..end].trim();
        if !inner.is_empty() {
            let mut cycle = Vec::new();
            for x in inner.split(',') {
                let point = parse_usize(x)?;
                if point == 0 {
                    return Err(perr("permutation points are numbered from 1"));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(cycles)
}

/// Cycle notation with 1-based points; all permutations share the largest
/// degree mentioned.
pub fn parse_permutations(texts: &[&str]) -> Result<Vec<Permutation>> {
    let parsed = texts.iter().map(|t| parse_cycles(t)).collect::<Result<Vec<_>>>()?;
    let degree = parsed.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(0);
    if degree > MAX_DEGREE {
        return Err(perr(format!("permutation degree {degree} exceeds {MAX_DEGREE}")));
    }
    parsed.iter().map(|c| Permutation::from_cycles(degree, c).map_err(|e| perr(e.to_string()))).collect()
}

const MAX_DEGREE: usize = 4096;

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    Ok(parse_permutations(&[text])?.remove(0))
}

/// One condition of a subgroup selector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectorKey {
    Order(usize),
    Normal,
    Cyclic,
    /// Position among the subgroups matching the other keys.
    Index(usize),
    Elements(Vec<usize>),
}

/// Comma-separated keys: `order=9,normal`, `order=3,index=0`, `[0 1 2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSelector {
    pub keys: Vec<SelectorKey>,
}

fn parse_element_list(s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(format!("expected an element list [..], found {s:?}")))?;
    inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(parse_usize).collect()
}

pub fn parse_subgroup_selector(s: &str) -> Result<SubgroupSelector> {
    let s = s.trim();
    if s.starts_with('[') {
        return Ok(SubgroupSelector { keys: vec![SelectorKey::Elements(parse_element_list(s)?)] });
    }
    let mut keys = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let key = match part.split_once('=') {
            Some(("order", v)) => SelectorKey::Order(parse_usize(v)?),
            Some(("index", v)) => SelectorKey::Index(parse_usize(v)?),
            None if part == "normal" => SelectorKey::Normal,
            None if part == "cyclic" => SelectorKey::Cyclic,
            _ => return Err(perr(format!("unknown selector key {part:?}"))),
        };
        keys.push(key);
    }
    Ok(SubgroupSelector { keys })
}

/// Subgroups in class order, members of each class in sorted order.
fn ordered_subgroups(group: &Group, limits: &Limits) -> Result<Vec<Subgroup>> {
    Ok(group.subgroup_classes(limits)?.into_iter().flat_map(|c| c.members).collect())
}

impl SubgroupSelector {
    pub fn resolve(&self, group: &Group, limits: &Limits) -> Result<Subgroup> {
        let mut index = None;
        let mut filters = Vec::new();
        for key in &self.keys {
            match key {
                SelectorKey::Elements(e) => {
                    if e.iter().any(|&x| x >= group.order()) {
                        return Err(perr("element index out of range"));
                    }
                    return Subgroup::new(group, e.clone());
                }
                SelectorKey::Index(i) => index = Some(*i),
                k => filters.push(k),
            }
        }
        let matching: Vec<Subgroup> = ordered_subgroups(group, limits)?
            .into_iter()
            .filter(|h| {
                filters.iter().all(|k| match k {
                    SelectorKey::Order(n) => h.order() == *n,
                    SelectorKey::Normal => h.is_normal(group),
                    SelectorKey::Cyclic => h.is_cyclic(group),
                    _ => true,
                })
            })
            .collect();
        let i = index.unwrap_or(0);
        matching.into_iter().nth(i).ok_or_else(|| perr(format!("no subgroup matches selector (index {i})")))
    }
}

/// `(coefficient, name)` pairs of a relation such as `1 + 3*G - N - C1`.
pub fn parse_relation(s: &str) -> Result<Vec<(i64, String)>> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i64;
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return Err(perr(format!("expected '+' or '-' before {rest:?}")));
        }
        first = false;
        let skip = rest.chars().next().map_or(0, char::len_utf8);
        let end = rest[skip..].find(['+', '-']).map_or(rest.len(), |i| i + skip);
        let term = rest[..end].trim();
        if term.is_empty() {
            return Err(perr(format!("missing term in {s:?}")));
        }
        rest = &rest[end..];
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => {
                let c: i64 = c.trim().parse().map_err(|_| perr(format!("bad coefficient in {term:?}")))?;
                (c, n.trim())
            }
            None => (1, term),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            return Err(perr(format!("bad subgroup name {name:?}")));
        }
        let coef = coef.checked_mul(sign).ok_or_else(|| perr("coefficient overflow"))?;
        terms.push((coef, name.to_string()));
    }
    Ok(terms)
}

/// Resolves subgroup names: `1` is the trivial subgroup, `G` the whole
/// group, `C<n>` the first subgroup of order `n`; explicit bindings win.
pub fn resolve_relation(
    terms: &[(i64, String)],
    bindings: &BTreeMap<String, SubgroupSelector>,
    group: &Group,
    limits: &Limits,
) -> Result<BrauerRelation> {
    let mut out = Vec::with_capacity(terms.len());
    for (n, name) in terms {
        let h = if let Some(sel) = bindings.get(name) {
            sel.resolve(group, limits)?
        } else if name == "1" {
            Subgroup::trivial()
        } else if name == "G" {
            Subgroup::whole(group)
        } else if let Some(order) = name.strip_prefix('C').and_then(|o| parse_usize(o).ok()) {
            SubgroupSelector { keys: vec![SelectorKey::Order(order)] }.resolve(group, limits)?
        } else {
            return Err(perr(format!("unbound subgroup name {name:?}")));
        };
        out.push((h, *n));
    }
    Ok(BrauerRelation::collect(out))
}

/// `NAME=selector`, where the selector uses `;` instead of `,` or is written
/// with commas after the first `=`.
pub fn parse_binding(s: &str) -> Result<(String, SubgroupSelector)> {
    let (name, sel) = s.split_once('=').ok_or_else(|| perr(format!("binding {s:?} lacks '='")))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(perr("empty binding name"));
    }
    Ok((name.to_string(), parse_subgroup_selector(sel)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UTermKind {
    /// Any `count` subgroups of this order.
    Order(usize),
    /// Any `count` normal subgroups of this order.
    Normal(usize),
    /// Every subgroup of this index, all at once.
    AllIndex(usize),
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UTerm {
    pub count: usize,
    pub kind: UTermKind,
}

/// `+`-separated terms such as `normal:5 + 4*order:4` or `all-index:2`.
pub fn parse_u_selector(s: &str) -> Result<Vec<UTerm>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(perr("empty U selector"));
    }
    s.split('+')
        .map(|t| {
            let t = t.trim();
            let (count, body) = match t.split_once('*') {
                Some((c, b)) => (parse_usize(c)?, b.trim()),
                None => (1, t),
            };
            if count == 0 {
                return Err(perr("term count must be positive"));
            }
            let kind = if body.starts_with('[') {
                UTermKind::Explicit(parse_element_list(body)?)
            } else {
                match body.split_once(':') {
                    Some(("order", n)) => UTermKind::Order(parse_usize(n)?),
                    Some(("normal", n)) => UTermKind::Normal(parse_usize(n)?),
                    Some(("all-index", n)) => UTermKind::AllIndex(parse_usize(n)?),
                    _ => return Err(perr(format!("unknown U term {body:?}"))),
                }
            };
            if count != 1 && matches!(kind, UTermKind::AllIndex(_) | UTermKind::Explicit(_)) {
                return Err(perr(format!("{body:?} does not take a count")));
            }
            Ok(UTerm { count, kind })
        })
        .collect()
}

/// Search slots for a parsed `U` selector.
pub fn resolve_u_selector(terms: &[UTerm], group: &Group, limits: &Limits) -> Result<Vec<Slot>> {
    let all = ordered_subgroups(group, limits)?;
    let mut slots = Vec::new();
    for term in terms {
        match &term.kind {
            UTermKind::Order(n) => slots.push(Slot {
                candidates: all.iter().filter(|h| h.order() == *n).cloned().collect(),
                count: term.count,
            }),
            UTermKind::Normal(n) => slots.push(Slot {
                candidates: all.iter().filter(|h| h.order() == *n && h.is_normal(group)).cloned().collect(),
                count: term.count,
            }),
            UTermKind::AllIndex(i) => {
                for h in all.iter().filter(|h| h.index_in(group) == *i) {
                    slots.push(Slot { candidates: vec![h.clone()], count: 1 });
                }
            }
            UTermKind::Explicit(e) => {
                if e.iter().any(|&x| x >= group.order()) {
                    return Err(perr("element index out of range"));
                }
                slots.push(Slot { candidates: vec![Subgroup::new(group, e.clone())?], count: 1 });
            }
        }
    }
    for slot in &slots {
        if slot.count > slot.candidates.len() {
            return Err(Error::InvalidParameters(format!(
                "selector asks for {} subgroups, only {} exist",
                slot.count,
                slot.candidates.len()
            )));
        }
    }
    Ok(slots)
}

/// An integer written either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FileInt {
    Number(i64),
    Text(String),
}

impl FileInt {
    fn value(&self) -> Result<BigInt> {
        match self {
            FileInt::Number(n) => Ok(BigInt::from(*n)),
            FileInt::Text(s) => {
                let t = s.trim();
                let digits = t.strip_prefix('-').unwrap_or(t);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(perr(format!("bad integer {s:?}")));
                }
                t.parse().map_err(|_| perr(format!("bad integer {s:?}")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FileGroup {
    Descriptor(String),
    Generators(Vec<String>),
}

impl FileGroup {
    pub fn spec(&self) -> Result<GroupSpec> {
        match self {
            FileGroup::Descriptor(s) => parse_group_spec(s),
            FileGroup::Generators(gens) => {
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                Ok(GroupSpec::Permutations(parse_permutations(&refs)?))
            }
        }
    }
}

/// `{"group": ..., "rank": r, "action": [matrix per generator]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<FileGroup>,
    pub rank: usize,
    pub action: Vec<Vec<Vec<FileInt>>>,
}

const MAX_FILE_RANK: usize = 4096;

impl LatticeFile {
    pub fn parse(text: &str) -> Result<LatticeFile> {
        let file: LatticeFile = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
        if file.rank > MAX_FILE_RANK {
            return Err(perr(format!("rank {} exceeds {MAX_FILE_RANK}", file.rank)));
        }
        file.matrices()?;
        Ok(file)
    }

    pub fn matrices(&self) -> Result<Vec<IntMatrix>> {
        let r = self.rank;
        self.action
            .iter()
            .enumerate()
            .map(|(i, m)| {
                if m.len() != r || m.iter().any(|row| row.len() != r) {
                    return Err(perr(format!("action matrix {i} is not {r}x{r}")));
                }
                let data = m.iter().flatten().map(FileInt::value).collect::<Result<Vec<_>>>()?;
                IntMatrix::new(r, r, data)
            })
            .collect()
    }

    pub fn from_lattice(group: Option<&GroupSpec>, m: &GLattice) -> LatticeFile {
        let action = m
            .generator_matrices()
            .iter()
            .map(|a| a.to_rows().into_iter().map(|row| row.iter().map(|e| FileInt::Text(e.to_string())).collect()).collect())
            .collect();
        LatticeFile { group: group.map(|g| FileGroup::Descriptor(g.to_string())), rank: m.rank(), action }
    }

    /// Builds the lattice over `group`; a group named in the file must
    /// produce the same Cayley table.
    pub fn to_lattice(&self, group: &Arc<Group>, limits: &Limits) -> Result<GLattice> {
        if let Some(g) = &self.group {
            if g.spec()?.build(limits)? != **group {
                return Err(Error::GroupMismatch);
            }
        }
        GLattice::from_generator_matrices(group.clone(), self.rank, &self.matrices()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice files serialize")
    }
}
