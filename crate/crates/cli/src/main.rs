//! `regconst`: Brauer relations, regulator constants and fixed-submodule
//! indices of integral representations of small finite groups.

mod report;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use regconst::input::{
    parse_binding, parse_group_spec, parse_relation, parse_u_selector, resolve_relation, resolve_u_selector,
    LatticeFile, SubgroupSelector,
};
use regconst::regulator::{
    alpha_lattice, alpha_rank_functional, alpha_with_multiplicity, beta, perm_regconst_marks, phi_cokernels,
    printed_closed_form, regconst_pairing, regconst_via_phi, verify_master_identity,
};
use regconst::relations::{
    coinvariant_map, fixed_point_sums, is_brauer_relation, search_phi, search_phi_all, theta_u, BrauerRelation,
    PhiSolution,
};
use regconst::{linalg, Error, GLattice, Group, Limits, Subgroup};
use serde::Serialize;

use report::*;

#[derive(Parser)]
#[command(name = "regconst", version, about = "Exact regulator constants for integral representations of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// cyclic:n, elab:p,r, frobenius:p,n,k, heisenberg:p, dihedral:n,
    /// product:(A|B) or perms:(1,2);(1,2,3)
    #[arg(long)]
    group: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 512)]
    max_order: usize,
}

#[derive(Args, Clone)]
struct RelationArgs {
    /// e.g. "1 - 4*C4 - C5 + 4*G"
    #[arg(long)]
    relation: Option<String>,
    /// NAME=selector, e.g. N=order=9,normal
    #[arg(long = "bind")]
    bindings: Vec<String>,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// e.g. "normal:5 + 4*order:4" or "all-index:2"
    #[arg(long = "U")]
    u: String,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Order, conjugacy classes and subgroup classes.
    GroupInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Fixed-point sums of a formal combination of subgroups.
    RelationCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        relation: RelationArgs,
    },
    /// Search representative choices for U until the map φ is injective.
    PhiSearch {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: SearchArgs,
        /// Report every successful choice instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Regulator constants of lattices, for a relation or for Θ_U.
    Regconst {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long = "U")]
        u: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, required = true)]
        lattice: Vec<String>,
    },
    /// α on permutation lattices of cyclic subgroups, its rank functional,
    /// and α of given lattices.
    Alpha {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        lattice: Vec<String>,
        /// Multiplicity of the irreducible constituent in each lattice.
        #[arg(long, default_value_t = 1)]
        multiplicity: u32,
    },
    /// β(H) = C(Z[G/H])^-1 for each class of subgroups.
    Beta {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long = "U")]
        u: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Restrict to one subgroup, e.g. order=10
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Both sides of the index identity for Θ_U.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, required = true)]
        lattice: Vec<String>,
    },
}

/// Outcome of a command: a rendered report and whether it succeeded.
struct Outcome {
    text: String,
    json: String,
    ok: bool,
}

impl Outcome {
    fn new<T: Serialize>(report: &T, text: String, ok: bool) -> Outcome {
        Outcome { text, json: serde_json::to_string_pretty(report).expect("reports serialize"), ok }
    }
}

struct Context {
    limits: Limits,
    descriptor: String,
    group: Arc<Group>,
}

impl Context {
    fn new(common: &Common) -> Result<Context, Error> {
        let limits = Limits { max_order: common.max_order, ..Limits::default() };
        let spec = parse_group_spec(&common.group)?;
        let group = Arc::new(spec.build(&limits)?);
        Ok(Context { limits, descriptor: spec.to_string(), group })
    }

    fn info(&self, h: &Subgroup) -> SubgroupInfo {
        SubgroupInfo::new(&self.group, h)
    }

    fn terms(&self, rel: &BrauerRelation) -> Vec<TermInfo> {
        rel.terms().iter().map(|(h, n)| TermInfo { coefficient: *n, subgroup: self.info(h) }).collect()
    }

    fn relation(&self, args: &RelationArgs) -> Result<BrauerRelation, Error> {
        let text = args.relation.as_deref().unwrap_or("");
        let mut bindings: BTreeMap<String, SubgroupSelector> = BTreeMap::new();
        for b in &args.bindings {
            let (name, sel) = parse_binding(b)?;
            bindings.insert(name, sel);
        }
        resolve_relation(&parse_relation(text)?, &bindings, &self.group, &self.limits)
    }

    fn search(&self, selector: &str, budget: usize) -> Result<PhiSolution, Error> {
        let slots = resolve_u_selector(&parse_u_selector(selector)?, &self.group, &self.limits)?;
        search_phi(&self.group, &slots, budget)
    }

    fn lattice(&self, path: &str) -> Result<GLattice, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        LatticeFile::parse(&text)?.to_lattice(&self.group, &self.limits)
    }

    fn lattices(&self, paths: &[String]) -> Result<Vec<(String, GLattice)>, Error> {
        paths.iter().map(|p| Ok((p.clone(), self.lattice(p)?))).collect()
    }

    /// The relation given by `--U` if present, otherwise by `--relation`.
    fn relation_or_theta(
        &self,
        relation: &RelationArgs,
        u: Option<&str>,
        budget: usize,
    ) -> Result<(BrauerRelation, Option<PhiSolution>), Error> {
        match u {
            Some(sel) => {
                let sol = self.search(sel, budget)?;
                Ok((sol.relation.clone(), Some(sol)))
            }
            None => {
                let rel = self.relation(relation)?;
                if !is_brauer_relation(&self.group, &rel) {
                    return Err(Error::NotABrauerRelation);
                }
                Ok((rel, None))
            }
        }
    }
}

fn solution_info(ctx: &Context, sol: &PhiSolution) -> SolutionInfo {
    let m = sol.phi.matrix();
    SolutionInfo {
        u: sol.u.iter().map(|h| ctx.info(h)).collect(),
        tried: sol.tried,
        phi_rows: m.rows(),
        phi_rank: sol.phi.rank(),
        coker_phi: linalg::cokernel_order(m).to_string(),
        coinvariant_det: linalg::det(&coinvariant_map(&sol.phi)).to_string(),
    }
}

fn group_info(common: &Common) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let g = &ctx.group;
    let report = GroupInfoReport {
        group: ctx.descriptor.clone(),
        order: g.order(),
        abelian: g.is_abelian(),
        generators: g.generators().to_vec(),
        conjugacy_classes: g
            .conjugacy_classes()
            .into_iter()
            .map(|c| ElementClassInfo {
                representative: c[0],
                label: g.label(c[0]).to_string(),
                size: c.len(),
                element_order: g.element_order(c[0]),
            })
            .collect(),
        subgroup_classes: g
            .subgroup_classes(&ctx.limits)?
            .iter()
            .map(|c| SubgroupClassInfo { size: c.size(), representative: ctx.info(&c.representative) })
            .collect(),
    };
    Ok(Outcome::new(&report, report.text(), true))
}

fn relation_check(common: &Common, args: &RelationArgs) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let rel = ctx.relation(args)?;
    let sums = fixed_point_sums(&ctx.group, &rel)?;
    let report = RelationCheckReport {
        group: ctx.descriptor.clone(),
        terms: ctx.terms(&rel),
        degree: rel.degree(&ctx.group),
        fixed_point_sums: sums
            .iter()
            .map(|c| ClassSum {
                representative: c.representative,
                label: ctx.group.label(c.representative).to_string(),
                size: c.class_size,
                sum: c.sum,
            })
            .collect(),
        valid: sums.iter().all(|c| c.sum == 0),
    };
    Ok(Outcome::new(&report, report.text(), report.valid))
}

fn phi_search_cmd(common: &Common, args: &SearchArgs, all: bool) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let solutions = if all {
        let slots = resolve_u_selector(&parse_u_selector(&args.u)?, &ctx.group, &ctx.limits)?;
        search_phi_all(&ctx.group, &slots, args.budget)?
    } else {
        vec![ctx.search(&args.u, args.budget)?]
    };
    let report = PhiSearchReport {
        group: ctx.descriptor.clone(),
        selector: args.u.clone(),
        solutions: solutions.iter().map(|s| solution_info(&ctx, s)).collect(),
    };
    Ok(Outcome::new(&report, report.text(), true))
}

fn regconst_cmd(
    common: &Common,
    relation: &RelationArgs,
    u: Option<&str>,
    budget: usize,
    lattices: &[String],
) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let lattices = ctx.lattices(lattices)?;
    let (rel, sol) = ctx.relation_or_theta(relation, u, budget)?;
    let mut entries = Vec::new();
    for (path, m) in &lattices {
        let via_phi = sol.as_ref().map(|s| regconst_via_phi(&s.phi, m)).transpose()?;
        entries.push(LatticeRegconst { lattice: path.clone(), rank: m.rank(), pairing: regconst_pairing(&rel, m)?, via_phi });
    }
    let ok = entries.iter().all(|e| e.via_phi.as_ref().is_none_or(|v| *v == e.pairing));
    let report = RegconstReport { group: ctx.descriptor.clone(), terms: ctx.terms(&rel), lattices: entries };
    Ok(Outcome::new(&report, report.text(), ok))
}

fn alpha_cmd(common: &Common, args: &SearchArgs, lattices: &[String], multiplicity: u32) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let lattices = ctx.lattices(lattices)?;
    let sol = ctx.search(&args.u, args.budget)?;
    let functional = alpha_rank_functional(&sol.phi, &ctx.limits)?;
    let cyclic = functional
        .cyclic_classes
        .iter()
        .zip(&functional.values)
        .map(|(c, v)| CyclicAlpha { subgroup: ctx.info(c), alpha: v.clone() })
        .collect();
    let mut entries = Vec::new();
    for (path, m) in &lattices {
        let alpha = alpha_lattice(&sol.phi, m)?;
        let rank_vector = functional.rank_vector(m);
        entries.push(LatticeAlpha {
            lattice: path.clone(),
            rank: m.rank(),
            from_functional: functional.evaluate(&rank_vector)?,
            per_copy: alpha_with_multiplicity(&alpha, multiplicity)?,
            rank_vector,
            alpha,
            multiplicity,
        });
    }
    let ok = entries.iter().all(|e| regconst::AlphaValue::from(&e.alpha) == e.from_functional);
    let report = AlphaReport {
        group: ctx.descriptor.clone(),
        u: sol.u.iter().map(|h| ctx.info(h)).collect(),
        cyclic,
        functional: functional
            .coefficients
            .iter()
            .map(|(p, l)| (p.to_string(), l.iter().map(ToString::to_string).collect()))
            .collect(),
        lattices: entries,
    };
    Ok(Outcome::new(&report, report.text(), ok))
}

fn beta_cmd(
    common: &Common,
    relation: &RelationArgs,
    u: Option<&str>,
    budget: usize,
    subgroup: Option<&str>,
) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let (rel, sol) = ctx.relation_or_theta(relation, u, budget)?;
    let subgroups: Vec<Subgroup> = match subgroup {
        Some(s) => vec![regconst::input::parse_subgroup_selector(s)?.resolve(&ctx.group, &ctx.limits)?],
        None => ctx.group.subgroup_classes(&ctx.limits)?.into_iter().map(|c| c.representative).collect(),
    };
    let mut entries = Vec::new();
    for h in &subgroups {
        let b = beta(&ctx.group, &rel, h)?;
        let marks = perm_regconst_marks(&ctx.group, &rel, h)?;
        let printed = sol.as_ref().map(|s| printed_closed_form(&ctx.group, &s.u, h)).transpose()?;
        let pairing = b.inv();
        entries.push(BetaEntry {
            subgroup: ctx.info(h),
            marks_agree: marks == pairing,
            printed_agrees: printed.as_ref().map(|p| *p == pairing),
            beta: b,
            marks,
            printed,
        });
    }
    let ok = entries.iter().all(|e| e.marks_agree);
    let report = BetaReport { group: ctx.descriptor.clone(), terms: ctx.terms(&rel), entries };
    Ok(Outcome::new(&report, report.text(), ok))
}

fn verify_cmd(common: &Common, args: &SearchArgs, lattices: &[String]) -> Result<Outcome, Error> {
    let ctx = Context::new(common)?;
    let lattices = ctx.lattices(lattices)?;
    let sol = ctx.search(&args.u, args.budget)?;
    debug_assert_eq!(theta_u(&ctx.group, &sol.u).as_ref(), Ok(&sol.relation));
    let mut entries = Vec::new();
    for (path, m) in &lattices {
        let c = phi_cokernels(&sol.phi, m)?;
        entries.push(VerifyEntry {
            lattice: path.clone(),
            rank: m.rank(),
            coker_phi: c.phi.to_string(),
            coker_phi_tr: c.phi_tr.to_string(),
            identity: verify_master_identity(&sol.u, &sol.phi, m)?,
        });
    }
    let holds = entries.iter().all(|e| e.identity.holds);
    let report =
        VerifyReport { group: ctx.descriptor.clone(), u: sol.u.iter().map(|h| ctx.info(h)).collect(), lattices: entries, holds };
    Ok(Outcome::new(&report, report.text(), holds))
}

fn run(cli: &Cli) -> (Result<Outcome, Error>, bool) {
    match &cli.command {
        Command::GroupInfo { common } => (group_info(common), common.json),
        Command::RelationCheck { common, relation } => (relation_check(common, relation), common.json),
        Command::PhiSearch { common, search, all } => (phi_search_cmd(common, search, *all), common.json),
        Command::Regconst { common, relation, u, budget, lattice } => {
            (regconst_cmd(common, relation, u.as_deref(), *budget, lattice), common.json)
        }
        Command::Alpha { common, search, lattice, multiplicity } => {
            (alpha_cmd(common, search, lattice, *multiplicity), common.json)
        }
        Command::Beta { common, relation, u, budget, subgroup } => {
            (beta_cmd(common, relation, u.as_deref(), *budget, subgroup.as_deref()), common.json)
        }
        Command::Verify { common, search, lattice } => (verify_cmd(common, search, lattice), common.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, json) = run(&cli);
    match outcome {
        Ok(out) => {
            // a closed pipe is not worth a panic
            let _ = writeln!(std::io::stdout(), "{}", if json { &out.json } else { out.text.trim_end() });
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if json {
                let _ = writeln!(std::io::stdout(), "{}", serde_json::json!({ "error": e.to_string() }));
            }
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    fn common(group: &str) -> Common {
        Common { group: group.into(), json: true, max_order: 512 }
    }

    fn data(name: &str) -> String {
        format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn round_trip<T: serde::de::DeserializeOwned + Serialize>(out: &Outcome) {
        let parsed: T = serde_json::from_str(&out.json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), out.json);
    }

    fn f20_search() -> SearchArgs {
        SearchArgs { u: "normal:5 + 4*order:4".into(), budget: 100 }
    }

    #[test]
    fn reports_round_trip() {
        round_trip::<GroupInfoReport>(&group_info(&common("frobenius:5,4,2")).unwrap());
        let rel = RelationArgs { relation: Some("1 - 4*C4 - C5 + 4*G".into()), bindings: vec![] };
        round_trip::<RelationCheckReport>(&relation_check(&common("frobenius:5,4,2"), &rel).unwrap());
        round_trip::<PhiSearchReport>(&phi_search_cmd(&common("frobenius:5,4,2"), &f20_search(), true).unwrap());
        let lattices = vec![data("f20/m1.json"), data("f20/m_rho.json")];
        let out = regconst_cmd(&common("frobenius:5,4,2"), &rel, Some("normal:5 + 4*order:4"), 100, &lattices).unwrap();
        assert!(out.ok);
        round_trip::<RegconstReport>(&out);
        round_trip::<AlphaReport>(&alpha_cmd(&common("frobenius:5,4,2"), &f20_search(), &lattices, 1).unwrap());
        round_trip::<BetaReport>(&beta_cmd(&common("frobenius:5,4,2"), &rel, None, 100, None).unwrap());
        round_trip::<VerifyReport>(&verify_cmd(&common("frobenius:5,4,2"), &f20_search(), &lattices).unwrap());
    }

    #[test]
    fn f20_alpha_report() {
        let lattices: Vec<String> =
            ["m1", "m2", "m_rho", "m_tau"].iter().map(|n| data(&format!("f20/{n}.json"))).collect();
        let out = alpha_cmd(&common("frobenius:5,4,2"), &f20_search(), &lattices, 1).unwrap();
        let report: AlphaReport = serde_json::from_str(&out.json).unwrap();
        let values: Vec<String> = report.lattices.iter().map(|l| l.alpha.value_string()).collect();
        assert_eq!(values, ["125", "1/5", "1/25", "1/244140625"]);
        assert!(out.ok);
    }

    #[test]
    fn relation_or_theta_needs_valid_relation() {
        let common = Common { group: "cyclic:6".into(), json: false, max_order: 512 };
        let ctx = Context::new(&common).unwrap();
        let args = RelationArgs { relation: Some("1 - C2 - C3 + G".into()), bindings: vec![] };
        assert!(matches!(ctx.relation_or_theta(&args, None, 10), Err(Error::NotABrauerRelation)));
    }
}
