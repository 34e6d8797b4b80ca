//! The closure `Γ` on up-sets of an ordered domain algebra, whose closed
//! sets `X` satisfy `{dom(x);y;ran(z) : x,y,z ∈ X}↑ = X`, and the completed
//! structure `Γ[𝒜]` with lifted operations.
//!
//! Everything runs on generating antichains, so the algebra can be virtual
//! (for instance all relations over a five-point base).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::axioms::{check_axioms, AxiomReport};
use crate::closure::{Closure, ClosureOperator};
use crate::error::{Error, Result};
use crate::oda::{AbstractOda, OdaOps};
use crate::order::UpSet;
use crate::poset::FinitePoset;

/// Default ceiling on the antichain size during closure iteration.
pub const DEFAULT_ANTICHAIN_LIMIT: usize = 1 << 16;

/// Iterates `X ↦ {dom(x);y;ran(z) : x,y,z ∈ X}↑` to its fixpoint.
#[derive(Clone, Copy, Debug)]
pub struct OdaClosure<O> {
    oda: O,
    antichain_limit: usize,
}

/// The sequence `X₀, X₁, …` up to the first repeated antichain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTrace<E> {
    pub steps: Vec<UpSet<E>>,
}

impl<E: Clone> ClosureTrace<E> {
    pub fn result(&self) -> &UpSet<E> {
        self.steps.last().expect("a trace has at least its input")
    }

    /// Number of iterations performed (the last one changes nothing).
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

impl<O: OdaOps> OdaClosure<O> {
    pub fn new(oda: O) -> Self {
        OdaClosure { oda, antichain_limit: DEFAULT_ANTICHAIN_LIMIT }
    }

    pub fn with_antichain_limit(mut self, limit: usize) -> Self {
        self.antichain_limit = limit;
        self
    }

    pub fn oda(&self) -> &O {
        &self.oda
    }

    /// One application of `X ↦ {dom(x);y;ran(z)}↑`, from generators.
    ///
    /// The old generators are kept; each is `dom(x);x;ran(x)` anyway.
    pub fn step(&self, x: &UpSet<O::Elem>) -> UpSet<O::Elem> {
        let mins = x.minimals();
        let doms: Vec<O::Elem> = mins.iter().map(|m| self.oda.dom(m)).collect();
        let rans: Vec<O::Elem> = mins.iter().map(|m| self.oda.ran(m)).collect();
        let mut gens: Vec<O::Elem> = mins.to_vec();
        for d in &doms {
            for y in mins {
                let dy = self.oda.comp(d, y);
                for r in &rans {
                    gens.push(self.oda.comp(&dy, r));
                }
            }
        }
        UpSet::generated_by(&self.oda, gens)
    }

    pub fn close_traced(&self, x: &UpSet<O::Elem>) -> Result<ClosureTrace<O::Elem>> {
        let mut steps = vec![x.clone()];
        loop {
            let cur = steps.last().unwrap();
            let next = self.step(cur);
            if next.minimals().len() > self.antichain_limit {
                return Err(Error::Guard { what: "closure antichain", limit: self.antichain_limit });
            }
            if &next == cur {
                return Ok(ClosureTrace { steps });
            }
            steps.push(next);
        }
    }

    pub fn try_close(&self, x: &UpSet<O::Elem>) -> Result<UpSet<O::Elem>> {
        let mut cur = x.clone();
        loop {
            let next = self.step(&cur);
            if next.minimals().len() > self.antichain_limit {
                return Err(Error::Guard { what: "closure antichain", limit: self.antichain_limit });
            }
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn is_closed(&self, x: &UpSet<O::Elem>) -> bool {
        self.step(x) == *x
    }

    pub fn closed(&self, x: UpSet<O::Elem>) -> Result<ClosedUpSet<O::Elem>> {
        if self.is_closed(&x) {
            Ok(ClosedUpSet(x))
        } else {
            Err(Error::input("up-set is not closed"))
        }
    }

    /// `0↑`: the up-closure of the bottom element, i.e. the whole carrier.
    pub fn zero_up(&self) -> ClosedUpSet<O::Elem> {
        ClosedUpSet(UpSet::principal(self.oda.zero()))
    }

    /// The empty up-set, the top of the completion.
    pub fn empty_upset(&self) -> ClosedUpSet<O::Elem> {
        ClosedUpSet(UpSet::empty())
    }

    pub fn id_c(&self) -> ClosedUpSet<O::Elem> {
        ClosedUpSet(UpSet::principal(self.oda.one()))
    }

    pub fn principal(&self, e: O::Elem) -> ClosedUpSet<O::Elem> {
        ClosedUpSet(UpSet::principal(e))
    }

    /// `X ∘C Y = Γ((X;Y)↑)`.
    pub fn comp_c(&self, x: &ClosedUpSet<O::Elem>, y: &ClosedUpSet<O::Elem>) -> Result<ClosedUpSet<O::Elem>> {
        let mut gens = Vec::new();
        for a in x.0.minimals() {
            for b in y.0.minimals() {
                gens.push(self.oda.comp(a, b));
            }
        }
        let s = UpSet::generated_by(&self.oda, gens);
        Ok(ClosedUpSet(self.try_close(&s)?))
    }

    fn unary_image(&self, x: &ClosedUpSet<O::Elem>, f: impl Fn(&O::Elem) -> O::Elem) -> ClosedUpSet<O::Elem> {
        let img = x.0.image(&self.oda, f);
        debug_assert!(self.is_closed(&img), "images of closed sets under dom, ran and converse are closed");
        ClosedUpSet(img)
    }

    /// `domC(X) = dom[X]↑`, already closed.
    pub fn dom_c(&self, x: &ClosedUpSet<O::Elem>) -> ClosedUpSet<O::Elem> {
        self.unary_image(x, |a| self.oda.dom(a))
    }

    pub fn ran_c(&self, x: &ClosedUpSet<O::Elem>) -> ClosedUpSet<O::Elem> {
        self.unary_image(x, |a| self.oda.ran(a))
    }

    pub fn conv_c(&self, x: &ClosedUpSet<O::Elem>) -> ClosedUpSet<O::Elem> {
        self.unary_image(x, |a| self.oda.conv(a))
    }

    /// `X ≤ Y` in the completion, i.e. `X ⊇ Y`.
    pub fn leq_c(&self, x: &ClosedUpSet<O::Elem>, y: &ClosedUpSet<O::Elem>) -> bool {
        y.0.is_subset_of(&self.oda, &x.0)
    }
}

impl<O: OdaOps> Closure<O::Elem> for OdaClosure<O> {
    /// Unguarded; the iteration always terminates on a finite carrier.
    fn close(&self, s: &UpSet<O::Elem>) -> UpSet<O::Elem> {
        OdaClosure { oda: &self.oda, antichain_limit: usize::MAX }.try_close(s).expect("no guard")
    }
}

impl<'a> OdaClosure<&'a AbstractOda> {
    /// The same closure as a [`ClosureOperator`] on the algebra's poset.
    pub fn as_operator(&self) -> ClosureOperator<'a> {
        let me = OdaClosure { oda: self.oda, antichain_limit: usize::MAX };
        ClosureOperator::from_fn(self.oda.poset().clone(), move |s| me.close(s))
    }
}

/// An up-set known to be closed: a point of `Γ[𝒜]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedUpSet<E>(UpSet<E>);

impl<E> ClosedUpSet<E> {
    pub fn as_upset(&self) -> &UpSet<E> {
        &self.0
    }

    pub fn into_upset(self) -> UpSet<E> {
        self.0
    }
}

impl<E: Clone + Ord + core::fmt::Debug> ClosedUpSet<E> {
    pub fn minimals(&self) -> &[E] {
        self.0.minimals()
    }
}

/// All closed up-sets of a finite algebra, in up-set enumeration order
/// (`∅` first).
pub fn enumerate_closed_sets(a: &AbstractOda, limit: usize) -> Result<Vec<ClosedUpSet<usize>>> {
    let g = OdaClosure::new(a);
    Ok(a.poset().all_up_sets(limit)?.into_iter().filter(|s| g.is_closed(s)).map(ClosedUpSet).collect())
}

pub fn format_upset(a: &AbstractOda, u: &UpSet<usize>) -> String {
    a.poset().format_upset(u)
}

/// `Γ[𝒜]` of a finite algebra laid out as operation tables over its closed sets.
#[derive(Clone, Debug)]
pub struct CompletionTable {
    pub closed: Vec<ClosedUpSet<usize>>,
    /// Ordered by `⊇`; element `i` stands for `closed[i]`.
    pub algebra: AbstractOda,
}

impl CompletionTable {
    pub fn build(a: &AbstractOda, limit: usize) -> Result<Self> {
        let g = OdaClosure::new(a);
        let closed = enumerate_closed_sets(a, limit)?;
        let index: BTreeMap<&ClosedUpSet<usize>, usize> = closed.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let pos = |c: &ClosedUpSet<usize>| -> Result<usize> {
            index.get(c).copied().ok_or_else(|| Error::input("lifted operation left the closed sets"))
        };
        let members: Vec<_> = closed.iter().map(|c| a.poset().members(c.as_upset())).collect();
        let labels = closed.iter().map(|c| format_upset(a, c.as_upset())).collect();
        let poset = FinitePoset::from_fn(labels, |i, j| members[j].is_subset(&members[i]))?;
        let comp = closed
            .iter()
            .map(|x| closed.iter().map(|y| pos(&g.comp_c(x, y)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unary = |f: &dyn Fn(&ClosedUpSet<usize>) -> ClosedUpSet<usize>| {
            closed.iter().map(|x| pos(&f(x))).collect::<Result<Vec<_>>>()
        };
        let conv = unary(&|x| g.conv_c(x))?;
        let dom = unary(&|x| g.dom_c(x))?;
        let ran = unary(&|x| g.ran_c(x))?;
        let zero = pos(&g.zero_up())?;
        let id = pos(&g.id_c())?;
        let algebra = AbstractOda::new(poset, comp, conv, dom, ran, zero, id)?;
        Ok(CompletionTable { closed, algebra })
    }

    pub fn index_of(&self, c: &UpSet<usize>) -> Option<usize> {
        self.closed.iter().position(|x| x.as_upset() == c)
    }
}

/// Laws that must hold in every `Γ[𝒜]`.
pub const REQUIRED_COMPLETION_LAWS: &[&str] = &[
    "partial-order",
    "bottom",
    "isotone-conv",
    "isotone-comp",
    "isotone-dom",
    "isotone-ran",
    "normality",
    "identity",
    "id-self-converse",
    "involution",
    "conv-antidistributes",
    "D1",
    "D3",
    "D4",
    "D5",
    "D7",
];

/// Laws that may fail in `Γ[𝒜]` and are only reported.
pub const REPORTED_COMPLETION_LAWS: &[&str] = &["D2", "D6", "associativity"];

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub table: CompletionTable,
    /// Laws over every closed set.
    pub axioms: AxiomReport,
    /// Laws over the non-empty closed sets, which form a subalgebra.
    pub nonempty_axioms: AxiomReport,
    /// First up-set `S` with `Γ(S)˘ ≠ Γ(S˘)`.
    pub converse_commutes: Option<UpSet<usize>>,
    /// First pair of closed sets with equal domains and ranges whose union is not closed.
    pub union_closed: Option<(usize, usize)>,
    /// First closed set whose `dom`, `ran` or converse image is not closed.
    pub images_closed: Option<usize>,
}

impl CompletionReport {
    /// Required laws hold on the non-empty closed sets and the three lemmas hold.
    pub fn required_hold(&self) -> bool {
        REQUIRED_COMPLETION_LAWS.iter().all(|l| self.nonempty_axioms.holds(l))
            && self.converse_commutes.is_none()
            && self.union_closed.is_none()
            && self.images_closed.is_none()
    }

    /// Required laws that fail once the empty up-set (the top) is included.
    /// Every such failure involves the empty up-set, since the laws hold on
    /// the rest.
    pub fn failures_at_empty(&self) -> Vec<&'static str> {
        REQUIRED_COMPLETION_LAWS.iter().copied().filter(|l| !self.axioms.holds(l)).collect()
    }
}

pub fn check_completion_axioms(a: &AbstractOda, limit: usize) -> Result<CompletionReport> {
    let g = OdaClosure::new(a);
    let table = CompletionTable::build(a, limit)?;
    let axioms = check_axioms(&table.algebra);
    let nonempty: Vec<usize> = (0..table.closed.len()).filter(|&i| !table.closed[i].as_upset().is_empty()).collect();
    let nonempty_axioms = check_axioms(&table.algebra.subalgebra(&nonempty)?);
    let ups = a.poset().all_up_sets(limit)?;
    let converse_commutes = ups
        .iter()
        .find(|s| {
            let lhs = g.close(s).image(a, |x| a.conv(x));
            let rhs = g.close(&s.image(a, |x| a.conv(x)));
            lhs != rhs
        })
        .cloned();
    let n = table.closed.len();
    let mut union_closed = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let (x, y) = (&table.closed[i], &table.closed[j]);
            if g.dom_c(x) == g.dom_c(y) && g.ran_c(x) == g.ran_c(y) && !g.is_closed(&x.as_upset().union(a, y.as_upset())) {
                union_closed = Some((i, j));
                break 'outer;
            }
        }
    }
    let images_closed = (0..n).find(|&i| {
        let c = table.closed[i].as_upset();
        [c.image(a, |x| a.dom(x)), c.image(a, |x| a.ran(x)), c.image(a, |x| a.conv(x))]
            .iter()
            .any(|img| !g.is_closed(img))
    });
    Ok(CompletionReport { table, axioms, nonempty_axioms, converse_commutes, union_closed, images_closed })
}

/// Outcome of searching for failures of associativity of the partial
/// product `B * C = B ∘C C`, defined only when `ranC(B) = domC(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub closed_sets: usize,
    pub triples_checked: usize,
    /// Whether the budget ran out before all triples were examined.
    pub inconclusive: bool,
    /// Both sides defined but different.
    pub unequal: Vec<[usize; 3]>,
    /// Exactly one side defined.
    pub one_sided: Vec<[usize; 3]>,
}

impl StarReport {
    pub fn violations(&self) -> usize {
        self.unequal.len() + self.one_sided.len()
    }
}

/// Exhaustive search over triples of `Γ[𝒜]`, up to `budget` triples.
pub fn partial_star_explore(table: &CompletionTable, budget: usize) -> StarReport {
    let a = &table.algebra;
    let n = a.len();
    let star = |b: usize, c: usize| (a.ran(&b) == a.dom(&c)).then(|| a.comp(&b, &c));
    let mut report = StarReport {
        closed_sets: n,
        triples_checked: 0,
        inconclusive: false,
        unequal: Vec::new(),
        one_sided: Vec::new(),
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if report.triples_checked >= budget {
                    report.inconclusive = true;
                    return report;
                }
                report.triples_checked += 1;
                let left = star(y, z).and_then(|yz| star(x, yz));
                let right = star(x, y).and_then(|xy| star(xy, z));
                match (left, right) {
                    (Some(l), Some(r)) if l != r => report.unequal.push([x, y, z]),
                    (Some(_), None) | (None, Some(_)) => report.one_sided.push([x, y, z]),
                    _ => {}
                }
            }
        }
    }
    report
}
