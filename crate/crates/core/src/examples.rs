//! The four worked counterexamples, recomputed from scratch.
//!
//! The relation examples run on generator antichains over the virtual full
//! algebra of relations, so the five-point base is never listed.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::completion::{ClosedUpSet, OdaClosure};
use crate::error::{Error, Result};
use crate::oda::{FullProperOda, OdaOps};
use crate::order::UpSet;
use crate::poset::{CompletionMap, FinitePoset, DEFAULT_PRODUCT_LIMIT};
use crate::relation::BinRel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Example {
    /// `dom(a) ≤ a;a˘` fails in the completion (base 4).
    D2,
    /// `dom(a;b) = dom(a;dom(b))` fails in the completion (base 2).
    D6,
    /// Composition in the completion is not associative (base 5).
    Assoc,
    /// Squaring a meet-completion of a poset without top images.
    Product,
}

impl Example {
    pub const ALL: [Example; 4] = [Example::D2, Example::D6, Example::Assoc, Example::Product];

    pub fn name(self) -> &'static str {
        match self {
            Example::D2 => "d2",
            Example::D6 => "d6",
            Example::Assoc => "assoc",
            Example::Product => "product",
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::input(alloc::format!("unknown example `{s}`")))
    }
}

/// A named intermediate value, as a list of rendered elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    pub name: &'static str,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub claim: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleWitness {
    pub example: Example,
    pub sets: Vec<WitnessSet>,
    pub checks: Vec<WitnessCheck>,
}

impl ExampleWitness {
    pub fn reproduced(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn set(&self, name: &str) -> Option<&[String]> {
        self.sets.iter().find(|s| s.name == name).map(|s| s.elements.as_slice())
    }

    pub fn check(&self, claim: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.claim == claim).map(|c| c.holds)
    }
}

struct Recorder {
    sets: Vec<WitnessSet>,
    checks: Vec<WitnessCheck>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { sets: Vec::new(), checks: Vec::new() }
    }

    fn rel(&mut self, name: &'static str, r: &BinRel) {
        self.sets.push(WitnessSet { name, elements: vec![r.to_string()] });
    }

    fn up(&mut self, name: &'static str, x: &ClosedUpSet<BinRel>) {
        self.sets.push(WitnessSet { name, elements: x.minimals().iter().map(|r| r.to_string()).collect() });
    }

    fn check(&mut self, claim: &'static str, holds: bool) {
        self.checks.push(WitnessCheck { claim, holds });
    }

    fn finish(self, example: Example) -> ExampleWitness {
        ExampleWitness { example, sets: self.sets, checks: self.checks }
    }
}

fn generated(g: &OdaClosure<FullProperOda>, gens: Vec<BinRel>) -> UpSet<BinRel> {
    UpSet::generated_by(g.oda(), gens)
}

pub fn reproduce_example(which: Example) -> Result<ExampleWitness> {
    match which {
        Example::D2 => d2(),
        Example::D6 => d6(),
        Example::Assoc => assoc(),
        Example::Product => product(),
    }
}

fn d2() -> Result<ExampleWitness> {
    let (a, b, c, d) = (0, 1, 2, 3);
    let full = FullProperOda::new(4)?;
    let g = OdaClosure::new(full);
    let x = full.relation(&[(a, b), (c, d)])?;
    let y = full.relation(&[(a, d), (c, b)])?;
    let mut rec = Recorder::new();
    rec.rel("x", &x);
    rec.rel("y", &y);

    let a_set = generated(&g, vec![x, y]);
    rec.check("dom(x) = dom(y) and ran(x) = ran(y)", x.domain() == y.domain() && x.range() == y.range());
    rec.check("A is closed", g.is_closed(&a_set));
    let a_set = g.closed(a_set)?;
    rec.up("A", &a_set);

    let dom_a = g.dom_c(&a_set);
    rec.up("domC(A)", &dom_a);
    let expected_dom = full.relation(&[(a, a), (c, c)])?;
    rec.check("domC(A) = {(a,a),(c,c)}↑", dom_a.minimals() == [expected_dom]);

    let xy = x.compose(&y.converse())?;
    rec.rel("x;y˘", &xy);
    rec.check("x;y˘ = {(a,c),(c,a)}", xy == full.relation(&[(a, c), (c, a)])?);

    let prod = g.comp_c(&a_set, &g.conv_c(&a_set))?;
    rec.up("A compC convC(A)", &prod);
    rec.check("x;y˘ ∈ A compC convC(A)", prod.as_upset().contains(&full, &xy));
    rec.check("x;y˘ ∉ domC(A)", !dom_a.as_upset().contains(&full, &xy));
    rec.check("A compC convC(A) ⊄ domC(A)", !prod.as_upset().is_subset_of(&full, dom_a.as_upset()));
    Ok(rec.finish(Example::D2))
}

fn d6() -> Result<ExampleWitness> {
    let (a, b) = (0, 1);
    let full = FullProperOda::new(2)?;
    let g = OdaClosure::new(full);
    let x = full.relation(&[(a, b), (b, a)])?;
    let id = full.one();
    let mut rec = Recorder::new();
    rec.rel("x", &x);

    let b_set = generated(&g, vec![x, id]);
    rec.check("B is closed", g.is_closed(&b_set));
    let b_set = g.closed(b_set)?;
    rec.up("B", &b_set);
    let a_set = g.principal(full.relation(&[(a, a)])?);
    rec.up("A", &a_set);

    let raw = generated(&g, vec![full.relation(&[(a, a)])?, full.relation(&[(a, b)])?]);
    let trace = g.close_traced(&raw)?;
    rec.sets.push(WitnessSet {
        name: "{(a,a)}↑ ∪ {(a,b)}↑",
        elements: raw.minimals().iter().map(|r| r.to_string()).collect(),
    });
    rec.check("Γ({(a,a)}↑ ∪ {(a,b)}↑) = 0↑", *trace.result() == *g.zero_up().as_upset());

    let ab = g.comp_c(&a_set, &b_set)?;
    rec.up("A compC B", &ab);
    rec.check("A compC B = 0↑", ab == g.zero_up());
    let lhs = g.dom_c(&ab);
    rec.up("domC(A compC B)", &lhs);
    rec.check("domC(A compC B) = 0↑", lhs == g.zero_up());

    let dom_b = g.dom_c(&b_set);
    rec.up("domC(B)", &dom_b);
    rec.check("domC(B) = idC", dom_b == g.id_c());
    let rhs = g.dom_c(&g.comp_c(&a_set, &dom_b)?);
    rec.up("domC(A compC domC(B))", &rhs);
    rec.check("domC(A compC domC(B)) = {(a,a)}↑", rhs.minimals() == [full.relation(&[(a, a)])?]);
    rec.check("domC(A compC B) ≠ domC(A compC domC(B))", lhs != rhs);
    Ok(rec.finish(Example::D6))
}

fn assoc() -> Result<ExampleWitness> {
    let (a, b, c, d, e) = (0, 1, 2, 3, 4);
    let full = FullProperOda::new(5)?;
    let g = OdaClosure::new(full);
    let x = full.relation(&[(a, a)])?;
    let y = full.relation(&[(a, b), (c, d)])?;
    let z = full.relation(&[(a, d), (c, b)])?;
    let u = full.relation(&[(b, e), (d, e)])?;
    let mut rec = Recorder::new();
    for (n, r) in [("x", &x), ("y", &y), ("z", &z), ("u", &u)] {
        rec.rel(n, r);
    }

    let a_set = g.principal(x);
    let c_set = g.principal(u);
    let b_raw = generated(&g, vec![y, z]);
    rec.check("B is closed", g.is_closed(&b_raw));
    let b_set = g.closed(b_raw)?;
    rec.up("A", &a_set);
    rec.up("B", &b_set);
    rec.up("C", &c_set);

    let ab = g.comp_c(&a_set, &b_set)?;
    rec.up("A compC B", &ab);
    rec.check("A compC B = 0↑", ab == g.zero_up());
    let left = g.comp_c(&ab, &c_set)?;
    rec.up("(A compC B) compC C", &left);
    rec.check("(A compC B) compC C = 0↑", left == g.zero_up());

    let bc = g.comp_c(&b_set, &c_set)?;
    rec.up("B compC C", &bc);
    rec.check("B compC C = {(a,e),(c,e)}↑", bc.minimals() == [full.relation(&[(a, e), (c, e)])?]);
    let right = g.comp_c(&a_set, &bc)?;
    rec.up("A compC (B compC C)", &right);
    rec.check("A compC (B compC C) = {(a,e)}↑", right.minimals() == [full.relation(&[(a, e)])?]);
    rec.check("(A compC B) compC C ≠ A compC (B compC C)", left != right);
    rec.check("A ≤ idC", g.leq_c(&a_set, &g.id_c()));
    Ok(rec.finish(Example::Assoc))
}

fn product() -> Result<ExampleWitness> {
    let p = FinitePoset::from_fn(vec!["p".into()], |_, _| true)?;
    let q = FinitePoset::from_fn(vec!["q".into(), "T".into()], |i, j| i <= j)?;
    let e = CompletionMap::new(p, q, vec![0])?;
    let mut rec = Recorder::new();
    rec.check("e is a meet-completion", e.is_meet_completion()?);
    rec.check("e(P) misses the top", !e.preserves_top());

    let split = e.restrict_product(2, DEFAULT_PRODUCT_LIMIT)?;
    let labels = |m: &CompletionMap| m.target().labels().to_vec();
    rec.sets.push(WitnessSet { name: "Q^2", elements: labels(&split.full) });
    rec.sets.push(WitnessSet {
        name: "removed",
        elements: split.removed_labels().into_iter().map(String::from).collect(),
    });
    rec.sets.push(WitnessSet { name: "(Q^2)°", elements: labels(&split.restricted) });
    let non_dense = split.full.first_non_dense_point().map(|i| split.full.target().label(i).to_string());
    rec.sets.push(WitnessSet { name: "first non-meet point", elements: non_dense.clone().into_iter().collect() });
    rec.check("e^2 is not a meet-completion", !split.full.is_meet_completion()?);
    rec.check("(T,q) and (q,T) are removed", split.removed_labels() == ["(q,T)", "(T,q)"]);
    rec.check("the restriction e^2 : P^2 → (Q^2)° is a meet-completion", split.restricted.is_meet_completion()?);
    Ok(rec.finish(Example::Product))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_reproduces() {
        for which in Example::ALL {
            let w = reproduce_example(which).unwrap();
            for c in &w.checks {
                assert!(c.holds, "{which}: {}", c.claim);
            }
        }
    }

    #[test]
    fn example_names_round_trip() {
        for which in Example::ALL {
            assert_eq!(which.name().parse::<Example>().unwrap(), which);
        }
        assert!("d3".parse::<Example>().is_err());
    }
}
