//! Randomized and exhaustive check suites shared by the CLI and the
//! acceptance tests. Each trial returns named checks; a [`Tally`] groups
//! them by name.

use std::collections::BTreeMap;

use odakit_core::closure::{
    closure_violation, commuting_isomorphisms, completion_from_gamma, gamma_from_completion, h_iso, Coverage,
};
use odakit_core::expansion::{lift_op, pointwise_image};
use odakit_core::oda::generate_subalgebra;
use odakit_core::poset::decode_tuple;
use odakit_core::representation::{build_representation, verify_representation};
use odakit_core::term::Term;
use odakit_core::{AbstractOda, BinRel, CompletionMap, Expansion, FinitePoset, Order, UpSet};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::limits::Limits;
use crate::random::{random_expansion, random_poset, random_standard_closure, random_term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check { name, ok, detail: if ok { String::new() } else { detail() } }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

/// Per-name pass and failure counts, in name order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checks: BTreeMap<&'static str, CheckStats>,
}

impl Tally {
    pub fn add(&mut self, trial: usize, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            let s = self.checks.entry(c.name).or_default();
            if c.ok {
                s.passed += 1;
            } else {
                s.failed += 1;
                s.first_failure.get_or_insert_with(|| format!("trial {trial}: {}", c.detail));
            }
        }
    }

    pub fn failures(&self) -> usize {
        self.checks.values().map(|s| s.failed).sum()
    }

    pub fn get(&self, name: &str) -> Option<&CheckStats> {
        self.checks.get(name)
    }
}

fn same_on_all(p: &FinitePoset, limit: usize, f: impl Fn(&UpSet<usize>) -> UpSet<usize>, g: impl Fn(&UpSet<usize>) -> UpSet<usize>) -> Result<Option<UpSet<usize>>> {
    Ok(p.all_up_sets(limit)?.into_iter().find(|s| f(s) != g(s)))
}

/// A random poset with at most `max_poset` points and a random standard
/// closure on it; checks the closure/completion correspondence.
pub fn correspondence_trial(rng: &mut impl Rng, max_poset: usize, limits: &Limits) -> Result<Vec<Check>> {
    let n = rng.gen_range(1..=max_poset.max(1));
    let density = rng.gen_range(0.1..0.8);
    let p = random_poset(rng, n, density);
    let k = rng.gen_range(0..=4);
    let gamma = random_standard_closure(rng, &p, k);
    let mut out = Vec::new();

    let violation = closure_violation(&gamma, Coverage::Exhaustive(limits.upsets))?;
    out.push(check("standard closure", violation.is_none(), || format!("{violation:?}")));
    let comp = completion_from_gamma(&gamma, limits.upsets)?;
    let e = &comp.map;
    out.push(check("e_Γ is a meet-completion", e.is_meet_completion()?, || p.labels().join(",")));

    let round = gamma_from_completion(e)?;
    let bad = same_on_all(&p, limits.upsets, |s| round.apply(s), |s| gamma.apply(s))?;
    out.push(check("Γ_{e_Γ} = Γ", bad.is_none(), || format!("differs at {}", p.format_upset(bad.as_ref().unwrap()))));

    let h = h_iso(e)?;
    let onto = {
        let mut imgs = h.images().to_vec();
        let mut closed = comp.closed.clone();
        imgs.sort();
        closed.sort();
        imgs == closed
    };
    out.push(check("h_e is an order isomorphism", h.is_order_embedding() && onto && h.inverts_on(&comp.closed), || {
        format!("|Q| = {}", e.target().len())
    }));
    out.push(check("h_e ∘ e = e_{Γ_e}", h.triangle_commutes(), String::new));

    // e_{Γ_e} lists the same closed sets; h_e is the only commuting isomorphism onto it.
    let gamma_e = gamma_from_completion(e)?;
    let e2 = completion_from_gamma(&gamma_e, limits.upsets)?;
    let expected: Vec<usize> =
        (0..e.target().len()).map(|q| e2.index_of(h.apply(q)).expect("h_e lands in closed sets")).collect();
    let isos = commuting_isomorphisms(e, &e2.map, limits.search)?;
    out.push(check("unique commuting isomorphism", isos == [expected.clone()], || format!("{} found", isos.len())));

    // A relabelled copy of Q: exactly the relabelling commutes, and both
    // maps induce the same closure.
    let q = e.target();
    let mut perm: Vec<usize> = (0..q.len()).collect();
    perm.shuffle(rng);
    let mut inv = vec![0; perm.len()];
    for (i, &pi) in perm.iter().enumerate() {
        inv[pi] = i;
    }
    let labels = (0..q.len()).map(|j| q.label(inv[j]).to_string()).collect();
    let q2 = FinitePoset::from_fn(labels, |a, b| q.leq(&inv[a], &inv[b]))?;
    let e_perm = CompletionMap::new(p.clone(), q2, e.images().iter().map(|&x| perm[x]).collect())?;
    let isos = commuting_isomorphisms(e, &e_perm, limits.search)?;
    out.push(check("relabelling is the unique commuting isomorphism", isos == [perm.clone()], || {
        format!("{} found", isos.len())
    }));
    let g1 = gamma_from_completion(e)?;
    let g2 = gamma_from_completion(&e_perm)?;
    let bad = same_on_all(&p, limits.upsets, |s| g1.apply(s), |s| g2.apply(s))?;
    out.push(check("isomorphic completions induce the same closure", bad.is_none(), String::new));
    Ok(out)
}

/// Tallies from a [`preserve_trial`] that are diagnostics rather than checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreserveStats {
    pub valid_in_p: usize,
    pub valid_in_bullet: usize,
    /// `P ⊨ φ ≤ ψ` but not `P• ⊨ φ ≤ ψ`, with `ψ` repeating a variable.
    pub nonlinear_asymmetries: usize,
    /// The same asymmetry with `ψ` linear but missing a variable of `φ`
    /// (an empty argument makes `φ` the top while `ψ` ignores it).
    pub missing_var_asymmetries: usize,
}

/// A random expansion with one unary and one binary operation and a random
/// pair of terms, compared in `P` and in `P•`.
pub fn preserve_trial(
    rng: &mut impl Rng,
    max_poset: usize,
    max_depth: usize,
    limits: &Limits,
    stats: &mut PreserveStats,
) -> Result<Vec<Check>> {
    let x = random_expansion(rng, max_poset);
    let vars = rng.gen_range(1..=2);
    let phi = random_term(rng, x.signature(), vars, max_depth);
    let psi = random_term(rng, x.signature(), vars, max_depth);
    let bullet = x.bullet(limits.upsets)?;
    let names = ["x", "y"];
    let show = |t: &Term| t.display(x.signature(), &names[..vars]);
    let pair = || format!("{} ≤ {} on {} points", show(&phi), show(&psi), x.poset().len());
    let mut out = Vec::new();

    let in_p = x.holds_inequality(&phi, &psi, vars)?;
    let in_bullet = bullet.holds_inequality(&phi, &psi, vars)?;
    stats.valid_in_p += usize::from(in_p);
    stats.valid_in_bullet += usize::from(in_bullet);
    out.push(check("P• ⊨ φ≤ψ implies P ⊨ φ≤ψ", !in_bullet || in_p, pair));
    let psi_vars = psi.variables();
    let covered = phi.variables().iter().all(|v| psi_vars.contains(v));
    if psi.is_linear() && covered {
        out.push(check("P ⊨ φ≤ψ iff P• ⊨ φ≤ψ (linear ψ, vars φ ⊆ vars ψ)", in_p == in_bullet, pair));
    } else if in_p && !in_bullet {
        if psi.is_linear() {
            stats.missing_var_asymmetries += 1;
        } else {
            stats.nonlinear_asymmetries += 1;
        }
    }

    // Term semantics in P•: equal to the pointwise image for linear terms,
    // and containing it in general.
    let ups = bullet.closed_sets().expect("P• lists its up-sets");
    let total = ups.len().pow(vars as u32);
    for t in [&phi, &psi] {
        let mut bad = None;
        for i in 0..total {
            let env: Vec<UpSet<usize>> = decode_tuple(i, ups.len(), vars).into_iter().map(|k| ups[k].clone()).collect();
            let lifted = bullet.eval(t, &env)?;
            let pointwise = pointwise_image(&x, t, &env)?;
            let ok = if t.is_linear() { lifted == pointwise } else { pointwise.is_subset_of(x.poset(), &lifted) };
            if !ok {
                bad = Some(env);
                break;
            }
        }
        let name = if t.is_linear() { "lifted term = pointwise image (linear)" } else { "lifted term ⊇ pointwise image" };
        out.push(check(name, bad.is_none(), || {
            let env = bad.as_ref().unwrap();
            format!("{} at [{}]", show(t), env.iter().map(|s| x.poset().format_upset(s)).collect::<Vec<_>>().join(", "))
        }));
    }
    Ok(out)
}

/// The two-case lifting through `Q` (`h_e ∘ f̂ ∘ (h_e^n)⁻¹`) against the
/// single formula `Γ(f[C̄]↑)`, plus commutation on principal tuples and
/// isotonicity, over every tuple of closed sets.
pub fn lift_trial(rng: &mut impl Rng, max_poset: usize, limits: &Limits) -> Result<Vec<Check>> {
    let x = random_expansion(rng, max_poset);
    let p = x.poset().clone();
    let k = rng.gen_range(0..=3);
    let gamma = random_standard_closure(rng, &p, k);
    let comp = completion_from_gamma(&gamma, limits.upsets)?;
    let e = &comp.map;
    let q = e.target();
    let h = h_iso(e)?;
    let top = q.top().expect("complete lattice");
    let closed = &comp.closed;
    let mut out = Vec::new();
    for op in 0..x.signature().len() {
        let arity = x.signature().arity(op);
        let tuples = closed.len().pow(arity as u32);
        let mut two_case = None;
        let args_of = |i: usize| -> Vec<UpSet<usize>> {
            decode_tuple(i, closed.len(), arity).into_iter().map(|c| closed[c].clone()).collect()
        };
        let lifted: Vec<UpSet<usize>> = (0..tuples).map(|i| lift_op(&x, &gamma, op, &args_of(i))).collect::<Result<_, _>>()?;
        for (i, single) in lifted.iter().enumerate() {
            let args = args_of(i);
            let qs: Vec<usize> = args.iter().map(|c| h.inverse(c).expect("complete lattice")).collect();
            let above: Vec<usize> = (0..p.len().pow(arity as u32))
                .map(|j| decode_tuple(j, p.len(), arity))
                .filter(|pt| pt.iter().zip(&qs).all(|(&pi, qi)| q.leq(qi, &e.apply(pi))))
                .map(|pt| e.apply(x.apply_op(op, &pt)))
                .collect();
            let fhat = if above.is_empty() { top } else { q.meet(&above).expect("complete lattice") };
            if h.apply(fhat) != single {
                two_case = Some(decode_tuple(i, closed.len(), arity));
                break;
            }
        }
        // C̄ ≤ D̄ componentwise (C ⊇ D) must give γ⁺(C̄) ⊇ γ⁺(D̄).
        let mut iso = None;
        'pairs: for i in 0..tuples {
            let a = decode_tuple(i, closed.len(), arity);
            for j in 0..tuples {
                let b = decode_tuple(j, closed.len(), arity);
                let ge = a.iter().zip(&b).all(|(&ca, &cb)| closed[cb].is_subset_of(&p, &closed[ca]));
                if ge && !lifted[j].is_subset_of(&p, &lifted[i]) {
                    iso = Some((a, b));
                    break 'pairs;
                }
            }
        }
        out.push(check("two-case lifting = single formula", two_case.is_none(), || format!("{:?}", two_case)));
        out.push(check("lifted operations are isotone", iso.is_none(), || format!("{:?}", iso)));
        let principal = (0..p.len().pow(arity as u32)).map(|j| decode_tuple(j, p.len(), arity)).find(|pt| {
            let args: Vec<UpSet<usize>> = pt.iter().map(|&pi| UpSet::principal(pi)).collect();
            lift_op(&x, &gamma, op, &args).ok() != Some(UpSet::principal(x.apply_op(op, pt)))
        });
        out.push(check("γ⁺(p̄↑) = f(p̄)↑", principal.is_none(), || format!("{principal:?}")));
    }
    Ok(out)
}

/// `e^n` is a meet-completion iff `e` preserves the top; the restriction to
/// `(Q^n)°` always is. Checked on a random completion `e_Γ`.
pub fn topcomp_trial(rng: &mut impl Rng, max_poset: usize, limits: &Limits) -> Result<(Vec<Check>, bool)> {
    let n = rng.gen_range(1..=max_poset.max(1));
    let density = rng.gen_range(0.2..0.9);
    let p = random_poset(rng, n, density);
    let k = rng.gen_range(0..=2);
    let gamma = random_standard_closure(rng, &p, k);
    let e = completion_from_gamma(&gamma, limits.upsets)?.map;
    let qn = e.target().len();
    let exp = if qn.pow(3) <= limits.product && rng.gen_bool(0.3) { 3 } else { 2 };
    let split = e.restrict_product(exp, limits.product)?;
    let top = e.preserves_top();
    let full_ok = split.full.is_meet_completion()?;
    let shape = || format!("|P| = {n}, |Q| = {qn}, n = {exp}, top preserved: {top}");
    Ok((
        vec![
            check("e^n meet-completion iff top preserved", full_ok == top, shape),
            check("e^n into (Q^n)° is a meet-completion", split.restricted.is_meet_completion()?, shape),
            check("(Q^n)° = Q^n iff top preserved", split.is_unrestricted() == top, shape),
        ],
        top,
    ))
}

/// Every subalgebra of the full relation algebra on `base` points, found
/// by adding one relation at a time to already generated subalgebras.
pub fn all_subalgebras(base: usize, limits: &Limits) -> Result<Vec<Vec<BinRel>>> {
    let all: Vec<BinRel> = (0..1u64 << (base * base)).map(|b| BinRel::from_bits(base, b)).collect::<Result<_, _>>()?;
    let start = generate_subalgebra(base, &[], limits.algebra)?.relations;
    let mut seen = std::collections::BTreeSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(rels) = queue.pop() {
        for r in &all {
            if rels.binary_search(r).is_ok() {
                continue;
            }
            let mut gens = rels.clone();
            gens.push(*r);
            let next = generate_subalgebra(base, &gens, limits.algebra)?.relations;
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The algebra with a single element that is both `0` and `id`.
pub fn one_element_algebra() -> AbstractOda {
    let p = FinitePoset::from_fn(vec!["0".into()], |_, _| true).expect("one point");
    AbstractOda::new(p, vec![vec![0]], vec![0], vec![0], vec![0], 0, 0).expect("valid tables")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationRow {
    pub base: usize,
    pub generators: Vec<String>,
    pub elements: usize,
    pub closed_sets: usize,
    pub points: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed_clauses: Vec<&'static str>,
}

/// Builds and verifies the representation of `a`.
pub fn representation_row(a: &AbstractOda, base: usize, label: Vec<String>, limits: &Limits) -> Result<RepresentationRow> {
    let r = build_representation(a, limits.upsets)?;
    let report = verify_representation(&r);
    let closed = odakit_core::enumerate_closed_sets(a, limits.upsets)?.len();
    Ok(RepresentationRow {
        base,
        generators: label,
        elements: a.len(),
        closed_sets: closed,
        points: r.base_size(),
        verified: report.all_hold(),
        failed_clauses: report.clauses.iter().filter(|c| !c.holds()).map(|c| c.clause).collect(),
    })
}

/// The one-element algebra and every subalgebra of the full relation
/// algebras on one and two points.
pub fn representation_sweep(limits: &Limits) -> Result<Vec<RepresentationRow>> {
    let mut rows = vec![representation_row(&one_element_algebra(), 0, vec!["0 = id".into()], limits)?];
    for base in 1..=2 {
        for rels in all_subalgebras(base, limits)? {
            let p = generate_subalgebra(base, &rels, limits.algebra)?;
            let names = rels.iter().map(|r| r.to_string()).collect();
            rows.push(representation_row(&p.algebra, base, names, limits)?);
        }
    }
    Ok(rows)
}
