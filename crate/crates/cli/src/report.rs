use std::collections::BTreeMap;
use std::fmt::Write as _;

use regconst::regulator::MasterIdentityReport;
use regconst::{AlphaValue, FactoredRational, Group, Subgroup};
use serde::{Deserialize, Serialize};

fn fr(x: &FactoredRational) -> String {
    let (factored, value) = (x.to_string(), x.value_string());
    if factored == value {
        value
    } else {
        format!("{factored} = {value}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupInfo {
    pub order: usize,
    pub normal: bool,
    pub cyclic: bool,
    pub elements: Vec<usize>,
}

impl SubgroupInfo {
    pub fn new(group: &Group, h: &Subgroup) -> SubgroupInfo {
        SubgroupInfo {
            order: h.order(),
            normal: h.is_normal(group),
            cyclic: h.is_cyclic(group),
            elements: h.elements().to_vec(),
        }
    }

    fn text(&self) -> String {
        let mut tags = Vec::new();
        if self.normal {
            tags.push("normal");
        }
        if self.cyclic {
            tags.push("cyclic");
        }
        let list: Vec<String> = self.elements.iter().map(usize::to_string).collect();
        let tags = if tags.is_empty() { String::new() } else { format!(" ({})", tags.join(", ")) };
        format!("order {}{tags} [{}]", self.order, list.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermInfo {
    pub coefficient: i64,
    pub subgroup: SubgroupInfo,
}

fn terms_text(terms: &[TermInfo]) -> String {
    let mut out = String::new();
    for t in terms {
        let _ = writeln!(out, "  {:+} * {}", t.coefficient, t.subgroup.text());
    }
    if terms.is_empty() {
        out.push_str("  (empty)\n");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClassInfo {
    pub representative: usize,
    pub label: String,
    pub size: usize,
    pub element_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupClassInfo {
    pub size: usize,
    pub representative: SubgroupInfo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfoReport {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub generators: Vec<usize>,
    pub conjugacy_classes: Vec<ElementClassInfo>,
    pub subgroup_classes: Vec<SubgroupClassInfo>,
}

impl GroupInfoReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group {}: order {}{}", self.group, self.order, if self.abelian { ", abelian" } else { "" });
        let gens: Vec<String> = self.generators.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "generators: {}", gens.join(" "));
        let _ = writeln!(out, "conjugacy classes of elements: {}", self.conjugacy_classes.len());
        for c in &self.conjugacy_classes {
            let _ =
                writeln!(out, "  {} {} (size {}, element order {})", c.representative, c.label, c.size, c.element_order);
        }
        let _ = writeln!(out, "conjugacy classes of subgroups: {}", self.subgroup_classes.len());
        for c in &self.subgroup_classes {
            let _ = writeln!(out, "  {} x {}", c.size, c.representative.text());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSum {
    pub representative: usize,
    pub label: String,
    pub size: usize,
    pub sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheckReport {
    pub group: String,
    pub terms: Vec<TermInfo>,
    pub degree: i64,
    pub fixed_point_sums: Vec<ClassSum>,
    pub valid: bool,
}

impl RelationCheckReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nrelation:\n{}", self.group, terms_text(&self.terms));
        let _ = writeln!(out, "degree: {}", self.degree);
        let _ = writeln!(out, "fixed-point sums per conjugacy class:");
        for c in &self.fixed_point_sums {
            let _ = writeln!(out, "  {} {} (size {}): {}", c.representative, c.label, c.size, c.sum);
        }
        let _ = writeln!(out, "{}", if self.valid { "valid Brauer relation" } else { "not a Brauer relation" });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionInfo {
    pub u: Vec<SubgroupInfo>,
    pub tried: usize,
    pub phi_rows: usize,
    pub phi_rank: usize,
    pub coker_phi: String,
    pub coinvariant_det: String,
}

impl SolutionInfo {
    fn text(&self) -> String {
        let mut out = format!("U found after {} combination(s):\n", self.tried);
        for h in &self.u {
            let _ = writeln!(out, "  {}", h.text());
        }
        let _ = writeln!(
            out,
            "phi: {}x{} of rank {}, cokernel order {}, coinvariant determinant {}",
            self.phi_rows, self.phi_rows, self.phi_rank, self.coker_phi, self.coinvariant_det
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSearchReport {
    pub group: String,
    pub selector: String,
    pub solutions: Vec<SolutionInfo>,
}

impl PhiSearchReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nselector {}\n", self.group, self.selector);
        let _ = writeln!(out, "{} solution(s)", self.solutions.len());
        for s in &self.solutions {
            out.push_str(&s.text());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRegconst {
    pub lattice: String,
    pub rank: usize,
    pub pairing: FactoredRational,
    pub via_phi: Option<FactoredRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegconstReport {
    pub group: String,
    pub terms: Vec<TermInfo>,
    pub lattices: Vec<LatticeRegconst>,
}

impl RegconstReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nrelation:\n{}", self.group, terms_text(&self.terms));
        for l in &self.lattices {
            let _ = writeln!(out, "{} (rank {}):", l.lattice, l.rank);
            let _ = writeln!(out, "  C (pairing) = {}", fr(&l.pairing));
            if let Some(v) = &l.via_phi {
                let _ = writeln!(out, "  C (cokernels) = {}", fr(v));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicAlpha {
    pub subgroup: SubgroupInfo,
    pub alpha: FactoredRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeAlpha {
    pub lattice: String,
    pub rank: usize,
    pub rank_vector: Vec<usize>,
    pub alpha: FactoredRational,
    pub from_functional: AlphaValue,
    pub multiplicity: u32,
    pub per_copy: AlphaValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub group: String,
    pub u: Vec<SubgroupInfo>,
    pub cyclic: Vec<CyclicAlpha>,
    /// prime -> one coefficient per cyclic class, as reduced fractions
    pub functional: BTreeMap<String, Vec<String>>,
    pub lattices: Vec<LatticeAlpha>,
}

impl AlphaReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nU:\n", self.group);
        for h in &self.u {
            let _ = writeln!(out, "  {}", h.text());
        }
        let _ = writeln!(out, "alpha on Z[G/C], C cyclic up to conjugacy:");
        for (i, c) in self.cyclic.iter().enumerate() {
            let _ = writeln!(out, "  C{i}: {}: {}", c.subgroup.text(), fr(&c.alpha));
        }
        let _ = writeln!(out, "rank functional, alpha(V) = prod_p p^(sum_i lambda_i rk V^Ci):");
        for (p, lambda) in &self.functional {
            let _ = writeln!(out, "  p = {p}: lambda = ({})", lambda.join(", "));
        }
        for l in &self.lattices {
            let ranks: Vec<String> = l.rank_vector.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{} (rank {}, rk V^Ci = ({})):", l.lattice, l.rank, ranks.join(", "));
            let _ = writeln!(out, "  alpha = {}", fr(&l.alpha));
            let _ = writeln!(out, "  from functional = {}", l.from_functional);
            if l.multiplicity != 1 {
                let _ = writeln!(out, "  per copy (multiplicity {}) = {}", l.multiplicity, l.per_copy);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub subgroup: SubgroupInfo,
    pub beta: FactoredRational,
    /// `C_Θ(Z[G/H])` from double cosets
    pub marks: FactoredRational,
    pub marks_agree: bool,
    /// the closed form as printed in the literature, for `Θ_U` only
    pub printed: Option<FactoredRational>,
    pub printed_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub group: String,
    pub terms: Vec<TermInfo>,
    pub entries: Vec<BetaEntry>,
}

impl BetaReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nrelation:\n{}", self.group, terms_text(&self.terms));
        for e in &self.entries {
            let _ = writeln!(out, "{}:", e.subgroup.text());
            let _ = writeln!(out, "  beta = {}", fr(&e.beta));
            let _ = writeln!(
                out,
                "  C(Z[G/H]) from double cosets = {}{}",
                fr(&e.marks),
                if e.marks_agree { "" } else { "  MISMATCH" }
            );
            if let (Some(p), Some(ok)) = (&e.printed, e.printed_agrees) {
                let _ = writeln!(
                    out,
                    "  printed closed form = {}{}",
                    fr(p),
                    if ok { "" } else { "  (differs from the pairing value)" }
                );
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub lattice: String,
    pub rank: usize,
    pub coker_phi: String,
    pub coker_phi_tr: String,
    pub identity: MasterIdentityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group: String,
    pub u: Vec<SubgroupInfo>,
    pub lattices: Vec<VerifyEntry>,
    pub holds: bool,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut out = format!("group {}\nU:\n", self.group);
        for h in &self.u {
            let _ = writeln!(out, "  {}", h.text());
        }
        for e in &self.lattices {
            let r = &e.identity;
            let _ = writeln!(out, "{} (rank {}):", e.lattice, e.rank);
            let _ = writeln!(out, "  [M : sum M^H] = {}", fr(&r.index));
            let _ = writeln!(out, "  |ker f| = {}", fr(&r.ker_f));
            let _ = writeln!(out, "  #coker(phi, M) = {}, #coker(phi^tr, M) = {}", e.coker_phi, e.coker_phi_tr);
            let _ = writeln!(out, "  c_phi = {}", fr(&r.c_phi));
            let _ = writeln!(out, "  c_phi_G = {}", fr(&r.c_phi_coinvariant));
            let _ = writeln!(out, "  C = {}", fr(&r.regconst));
            let _ = writeln!(out, "  left  = [M : sum M^H]^2 / |ker f|^2 = {}", fr(&r.lhs));
            let _ = writeln!(out, "  right = c_phi / (c_phi_G * C) = {}", fr(&r.rhs));
            let _ = writeln!(out, "  {}", if r.holds { "identity holds" } else { "IDENTITY FAILS" });
        }
        out
    }
}
