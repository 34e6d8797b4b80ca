//! One function per subcommand. Each returns a [`RunReport`] or fails with
//! an input or guard error before any check runs.

use std::path::{Path, PathBuf};

use odakit_core::completion::{
    check_completion_axioms, partial_star_explore, CompletionTable, OdaClosure, REPORTED_COMPLETION_LAWS,
    REQUIRED_COMPLETION_LAWS,
};
use odakit_core::examples::{reproduce_example, Example};
use odakit_core::representation::{build_representation, verify_representation};
use odakit_core::{check_axioms, AbstractOda, FullProperOda, OdaOps, PosetExpansion, UpSet};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::formats::{self, labelled_antichain, relation_antichain, AlgebraFile, GeneratorsFile};
use crate::limits::Limits;
use crate::random::rng;
use crate::report::{RunReport, Status};
use crate::suites::{correspondence_trial, lift_trial, preserve_trial, topcomp_trial, PreserveStats, Tally};

fn load_algebra(path: &Path) -> Result<AbstractOda> {
    formats::read::<AlgebraFile>(path)?.to_algebra()
}

fn labels(a: &AbstractOda, idx: &[usize]) -> Value {
    Value::from(idx.iter().map(|&i| a.label(i).to_string()).collect::<Vec<_>>())
}

pub fn check_axioms_cmd(input: &Path) -> Result<RunReport> {
    let a = load_algebra(input)?;
    let mut r = RunReport::new(format!("check-axioms --input {}", input.display()));
    let report = check_axioms(&a);
    for v in &report.verdicts {
        r.assert(v.law, v.holds(), v.witness.as_ref().map(|w| labels(&a, w)));
    }
    r.data = json!({ "elements": a.len() });
    Ok(r)
}

/// Where the up-set to close comes from.
pub enum CompleteSource {
    Relations { base: usize, generators: PathBuf },
    Algebra { input: PathBuf, upset: String },
}

fn parse_upset(a: &AbstractOda, list: &str) -> Result<UpSet<usize>> {
    let items = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(i) if i < a.len() => Ok(i),
            _ => a.poset().index_of(s).ok_or_else(|| CliError::input(format!("unknown element `{s}`"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(a.poset().up_closure(&items)?)
}

pub fn complete_cmd(source: &CompleteSource, limits: &Limits) -> Result<RunReport> {
    match source {
        CompleteSource::Relations { base, generators } => {
            let mut r = RunReport::new(format!("complete --base {base} --generators {}", generators.display()));
            let gens = formats::generators(&formats::read::<GeneratorsFile>(generators)?, *base)?;
            let full = FullProperOda::new(*base)?;
            let g = OdaClosure::new(full).with_antichain_limit(limits.antichain);
            let x = UpSet::generated_by(&full, gens);
            let trace = g.close_traced(&x)?;
            let result = trace.result().clone();
            r.inform("input already closed", Status::from_bool(trace.steps.len() == 1), None);
            r.assert("result is closed", g.is_closed(&result), None);
            r.assert("result contains the input", x.is_subset_of(&full, &result), None);
            r.inform("result is 0↑", Status::from_bool(result == UpSet::principal(full.zero())), None);
            r.note(format!("iterations: {}", trace.iterations()));
            for (i, s) in trace.steps.iter().enumerate() {
                r.note(format!("X{i} = {}", fmt_rel_upset(s)));
            }
            r.data = json!({
                "base": base,
                "input": relation_antichain(&x),
                "trace": trace.steps.iter().map(relation_antichain).collect::<Vec<_>>(),
                "iterations": trace.iterations(),
                "result": relation_antichain(&result),
            });
            Ok(r)
        }
        CompleteSource::Algebra { input, upset } => {
            let mut r = RunReport::new(format!("complete --input {} --upset {upset}", input.display()));
            let a = load_algebra(input)?;
            let x = parse_upset(&a, upset)?;
            let g = OdaClosure::new(&a).with_antichain_limit(limits.antichain);
            let trace = g.close_traced(&x)?;
            let result = trace.result().clone();
            r.inform("input already closed", Status::from_bool(trace.steps.len() == 1), None);
            r.assert("result is closed", g.is_closed(&result), None);
            r.assert("result contains the input", x.is_subset_of(&a, &result), None);
            r.note(format!("iterations: {}", trace.iterations()));
            for (i, s) in trace.steps.iter().enumerate() {
                r.note(format!("X{i} = {}", a.poset().format_upset(s)));
            }
            r.data = json!({
                "input": labelled_antichain(&a, &x),
                "trace": trace.steps.iter().map(|s| labelled_antichain(&a, s)).collect::<Vec<_>>(),
                "iterations": trace.iterations(),
                "result": labelled_antichain(&a, &result),
            });
            Ok(r)
        }
    }
}

fn fmt_rel_upset(u: &UpSet<odakit_core::BinRel>) -> String {
    let inner: Vec<String> = u.minimals().iter().map(|m| m.to_string()).collect();
    format!("{{{}}}↑", inner.join(", "))
}

pub fn examples_cmd(which: &str) -> Result<RunReport> {
    let list: Vec<Example> = if which == "all" { Example::ALL.to_vec() } else { vec![which.parse::<Example>()?] };
    let mut r = RunReport::new(format!("examples --which {which}"));
    let mut data = serde_json::Map::new();
    for ex in list {
        let w = reproduce_example(ex)?;
        for c in &w.checks {
            r.assert(format!("{ex}: {}", c.claim), c.holds, None);
        }
        for s in &w.sets {
            r.note(format!("{ex}: {} = {}", s.name, s.elements.join(", ")));
        }
        let sets: Vec<Value> = w.sets.iter().map(|s| json!({ "name": s.name, "elements": s.elements })).collect();
        data.insert(ex.name().into(), json!({ "sets": sets, "reproduced": w.reproduced() }));
    }
    r.data = Value::Object(data);
    Ok(r)
}

pub struct PreserveArgs {
    pub seed: u64,
    pub trials: usize,
    pub max_poset: usize,
    pub max_depth: usize,
}

pub fn preserve_cmd(args: &PreserveArgs, limits: &Limits) -> Result<RunReport> {
    let mut r = RunReport::new(format!(
        "preserve --seed {} --trials {} --max-poset {} --max-depth {}",
        args.seed, args.trials, args.max_poset, args.max_depth
    ));
    if args.max_poset == 0 {
        return Err(CliError::input("--max-poset must be positive"));
    }
    let mut g = rng(args.seed);
    let mut tally = Tally::default();
    let mut lifts = Tally::default();
    let mut stats = PreserveStats::default();
    for t in 0..args.trials {
        tally.add(t, preserve_trial(&mut g, args.max_poset, args.max_depth, limits, &mut stats)?);
        lifts.add(t, lift_trial(&mut g, args.max_poset.min(3), limits)?);
    }
    for (name, s) in tally.checks.iter().chain(lifts.checks.iter()) {
        r.assert(*name, s.failed == 0, s.first_failure.clone().map(Value::from));
    }
    let rejected = odakit_core::FinitePoset::from_fn(vec!["0".into(), "1".into()], |i, j| i <= j)
        .map(|p| PosetExpansion::new(p, vec![("neg".into(), 1, vec![1, 0])]).is_err())?;
    r.assert("non-isotone operation rejected", rejected, None);
    r.inform(
        "repeated-variable asymmetries (P ⊨ φ≤ψ, P• ⊭ φ≤ψ)",
        if stats.nonlinear_asymmetries == 0 { Status::Pass } else { Status::Fail },
        Some(Value::from(stats.nonlinear_asymmetries)),
    );
    r.inform(
        "missing-variable asymmetries (P ⊨ φ≤ψ, P• ⊭ φ≤ψ, vars φ ⊄ vars ψ)",
        if stats.missing_var_asymmetries == 0 { Status::Pass } else { Status::Fail },
        Some(Value::from(stats.missing_var_asymmetries)),
    );
    r.note(format!(
        "{} trials: φ≤ψ valid in P {} times, in P• {} times; asymmetries: {} with repeated variables in ψ, {} with a variable of φ missing from ψ",
        args.trials,
        stats.valid_in_p,
        stats.valid_in_bullet,
        stats.nonlinear_asymmetries,
        stats.missing_var_asymmetries
    ));
    r.data = json!({ "seed": args.seed, "trials": args.trials, "stats": stats, "checks": tally, "lifting": lifts });
    Ok(r)
}

pub struct SweepArgs {
    pub seed: u64,
    pub trials: usize,
    pub max_poset: usize,
}

pub fn correspondence_cmd(args: &SweepArgs, limits: &Limits) -> Result<RunReport> {
    let mut r = RunReport::new(format!(
        "correspondence-check --seed {} --trials {} --max-poset {}",
        args.seed, args.trials, args.max_poset
    ));
    let mut g = rng(args.seed);
    let mut tally = Tally::default();
    let mut products = Tally::default();
    let mut preserving = 0;
    for t in 0..args.trials {
        tally.add(t, correspondence_trial(&mut g, args.max_poset, limits)?);
        let (checks, top) = topcomp_trial(&mut g, args.max_poset.min(4), limits)?;
        products.add(t, checks);
        preserving += usize::from(top);
    }
    for (name, s) in tally.checks.iter().chain(products.checks.iter()) {
        r.assert(*name, s.failed == 0, s.first_failure.clone().map(Value::from));
    }
    r.note(format!("{preserving} of {} product trials had a top mapped to the top", args.trials));
    r.data = json!({ "seed": args.seed, "trials": args.trials, "checks": tally, "products": products, "top_preserving": preserving });
    Ok(r)
}

pub fn represent_cmd(input: &Path, verify: bool, limits: &Limits) -> Result<RunReport> {
    let a = load_algebra(input)?;
    let mut r = RunReport::new(format!("represent --input {}{}", input.display(), if verify { " --verify" } else { "" }));
    let rep = build_representation(&a, limits.upsets)?;
    let points: Vec<Vec<String>> = rep.base.iter().map(|c| labelled_antichain(&a, c.as_upset())).collect();
    let images: Vec<Value> = (0..a.len()).map(|e| json!({ "element": a.label(e), "pairs": rep.pairs(e) })).collect();
    let mut data = json!({ "elements": a.len(), "points": points, "images": images });
    if verify {
        let report = verify_representation(&rep);
        for c in &report.clauses {
            r.assert(c.clause, c.holds(), c.witness.as_ref().map(|w| labels(&a, w)));
        }
        data["verified"] = Value::from(report.all_hold());
    }
    r.note(format!("|A| = {}, |base| = {}", a.len(), rep.base_size()));
    r.data = data;
    Ok(r)
}

/// An explicit algebra file or the full relation algebra on `base` points.
pub enum AlgebraSource {
    File(PathBuf),
    Full(usize),
}

impl AlgebraSource {
    fn load(&self, limits: &Limits) -> Result<AbstractOda> {
        match self {
            AlgebraSource::File(p) => load_algebra(p),
            AlgebraSource::Full(k) => Ok(FullProperOda::new(*k)?.materialize(limits.algebra)?.algebra),
        }
    }

    fn echo(&self) -> String {
        match self {
            AlgebraSource::File(p) => format!("--input {}", p.display()),
            AlgebraSource::Full(k) => format!("--base {k}"),
        }
    }
}

pub fn star_explore_cmd(source: &AlgebraSource, budget: usize, limits: &Limits) -> Result<RunReport> {
    let a = source.load(limits)?;
    let mut r = RunReport::new(format!("star-explore {} --budget {budget}", source.echo()));
    let table = CompletionTable::build(&a, limits.upsets)?;
    let s = partial_star_explore(&table, budget);
    let status = if s.violations() > 0 {
        Status::Fail
    } else if s.inconclusive {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    let name = |i: usize| table.algebra.label(i).to_string();
    let show = |v: &[[usize; 3]]| v.iter().take(10).map(|t| t.map(name).to_vec()).collect::<Vec<_>>();
    r.inform("partial product associative on searched triples", status, Some(Value::from(s.violations())));
    r.note(format!(
        "{} closed sets, {} triples searched{}, {} violations",
        s.closed_sets,
        s.triples_checked,
        if s.inconclusive { " (budget exhausted)" } else { "" },
        s.violations()
    ));
    r.data = json!({
        "closed_sets": s.closed_sets,
        "triples_checked": s.triples_checked,
        "inconclusive": s.inconclusive,
        "unequal": show(&s.unequal),
        "one_sided": show(&s.one_sided),
        "unequal_count": s.unequal.len(),
        "one_sided_count": s.one_sided.len(),
    });
    Ok(r)
}

pub fn completion_axioms_cmd(source: &AlgebraSource, limits: &Limits) -> Result<RunReport> {
    let a = source.load(limits)?;
    let mut r = RunReport::new(format!("completion-axioms {}", source.echo()));
    let c = check_completion_axioms(&a, limits.upsets)?;
    let t = &c.table;
    let names = |w: &[usize]| Value::from(w.iter().map(|&i| t.algebra.label(i).to_string()).collect::<Vec<_>>());
    for law in REQUIRED_COMPLETION_LAWS {
        let v = c.nonempty_axioms.get(law).expect("law is checked");
        r.assert(format!("{law} (non-empty closed sets)"), v.holds(), v.witness.as_deref().map(names));
    }
    r.assert("Γ(S)˘ = Γ(S˘)", c.converse_commutes.is_none(), c.converse_commutes.as_ref().map(|s| Value::from(a.poset().format_upset(s))));
    r.assert("union of closed sets with equal domC and ranC is closed", c.union_closed.is_none(), c.union_closed.map(|(i, j)| names(&[i, j])));
    r.assert("domC, ranC, convC images are closed", c.images_closed.is_none(), c.images_closed.map(|i| names(&[i])));
    for law in REPORTED_COMPLETION_LAWS {
        let v = c.axioms.get(law).expect("law is checked");
        r.inform(*law, Status::from_bool(v.holds()), v.witness.as_deref().map(names));
    }
    for law in c.failures_at_empty() {
        let v = c.axioms.get(law).expect("law is checked");
        r.inform(format!("{law} (including ∅)"), Status::Fail, v.witness.as_deref().map(names));
    }
    let closed: Vec<String> = t.closed.iter().map(|x| a.poset().format_upset(x.as_upset())).collect();
    r.note(format!("{} closed up-sets out of {} up-sets", closed.len(), a.poset().all_up_sets(limits.upsets)?.len()));
    r.data = json!({ "closed_sets": closed, "failures_at_empty": c.failures_at_empty() });
    Ok(r)
}
