//! Standard closure operators on the up-sets of a finite poset and their
//! correspondence with meet-completions.
//!
//! Closure laws are stated for inclusion (`⊆`), while the completions built
//! from closed sets are ordered by reverse inclusion (`⊇`).

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{Order, UpSet};
use crate::poset::{CompletionMap, FinitePoset};

/// Anything that closes up-sets over elements of type `E`.
pub trait Closure<E> {
    fn close(&self, s: &UpSet<E>) -> UpSet<E>;
}

impl<E, C: Closure<E> + ?Sized> Closure<E> for &C {
    fn close(&self, s: &UpSet<E>) -> UpSet<E> {
        (**self).close(s)
    }
}

/// The identity closure `Γ_ι`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<E: Clone> Closure<E> for Identity {
    fn close(&self, s: &UpSet<E>) -> UpSet<E> {
        s.clone()
    }
}

type ApplyFn<'a> = dyn Fn(&UpSet<usize>) -> UpSet<usize> + Send + Sync + 'a;

/// A map on the up-sets of `parent`, intended to be a standard closure.
///
/// Construction does not check the closure laws; use
/// [`is_standard_closure`] for that.
pub struct ClosureOperator<'a> {
    parent: FinitePoset,
    apply: Box<ApplyFn<'a>>,
}

impl<'a> ClosureOperator<'a> {
    pub fn from_fn<F>(parent: FinitePoset, f: F) -> Self
    where
        F: Fn(&UpSet<usize>) -> UpSet<usize> + Send + Sync + 'a,
    {
        ClosureOperator { parent, apply: Box::new(f) }
    }

    pub fn identity(parent: FinitePoset) -> ClosureOperator<'static> {
        ClosureOperator { parent, apply: Box::new(|s| s.clone()) }
    }

    /// The closure whose closed sets are the intersections of members of
    /// `family` (the whole carrier is always closed).
    ///
    /// Adding every principal up-set to `family` makes the result standard.
    pub fn from_closed_sets(parent: FinitePoset, family: &[UpSet<usize>]) -> ClosureOperator<'static> {
        let members: Vec<BitSet> = family.iter().map(|f| parent.members(f)).collect();
        let poset = parent.clone();
        ClosureOperator::from_fn(parent, move |s| {
            let sm = poset.members(s);
            let mut acc = BitSet::full(poset.len());
            for f in members.iter().filter(|f| sm.is_subset(f)) {
                acc.intersect_with(f);
            }
            poset.upset_from_members(&acc)
        })
    }

    pub fn parent(&self) -> &FinitePoset {
        &self.parent
    }

    pub fn apply(&self, s: &UpSet<usize>) -> UpSet<usize> {
        (self.apply)(s)
    }

    pub fn is_closed(&self, s: &UpSet<usize>) -> bool {
        self.apply(s) == *s
    }

    /// The fixed points among all up-sets, in enumeration order.
    pub fn closed_sets(&self, limit: usize) -> Result<Vec<UpSet<usize>>> {
        let all = self.parent.all_up_sets(limit)?;
        Ok(all.into_iter().filter(|s| self.is_closed(s)).collect())
    }
}

impl Closure<usize> for ClosureOperator<'_> {
    fn close(&self, s: &UpSet<usize>) -> UpSet<usize> {
        self.apply(s)
    }
}

impl core::fmt::Debug for ClosureOperator<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ClosureOperator").field("parent", &self.parent).finish_non_exhaustive()
    }
}

/// Which up-sets a law check ranges over.
#[derive(Clone, Copy, Debug)]
pub enum Coverage<'s> {
    Sample(&'s [UpSet<usize>]),
    /// All up-sets of the parent, refusing beyond the given count.
    Exhaustive(usize),
}

/// The first closure law found broken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureViolation {
    NotExtensive(UpSet<usize>),
    NotIsotone(UpSet<usize>, UpSet<usize>),
    NotIdempotent(UpSet<usize>),
    /// `Γ(p↑) ≠ p↑`.
    NotStandard(usize),
}

pub fn closure_violation(op: &ClosureOperator<'_>, coverage: Coverage<'_>) -> Result<Option<ClosureViolation>> {
    let owned;
    let sets: &[UpSet<usize>] = match coverage {
        Coverage::Sample(s) => s,
        Coverage::Exhaustive(limit) => {
            owned = op.parent.all_up_sets(limit)?;
            &owned
        }
    };
    let p = &op.parent;
    for x in 0..p.len() {
        let px = UpSet::principal(x);
        if op.apply(&px) != px {
            return Ok(Some(ClosureViolation::NotStandard(x)));
        }
    }
    let images: Vec<UpSet<usize>> = sets.iter().map(|s| op.apply(s)).collect();
    let members: Vec<BitSet> = sets.iter().map(|s| p.members(s)).collect();
    let image_members: Vec<BitSet> = images.iter().map(|s| p.members(s)).collect();
    for (i, s) in sets.iter().enumerate() {
        if !members[i].is_subset(&image_members[i]) {
            return Ok(Some(ClosureViolation::NotExtensive(s.clone())));
        }
        if op.apply(&images[i]) != images[i] {
            return Ok(Some(ClosureViolation::NotIdempotent(s.clone())));
        }
    }
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if members[i].is_subset(&members[j]) && !image_members[i].is_subset(&image_members[j]) {
                return Ok(Some(ClosureViolation::NotIsotone(sets[i].clone(), sets[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Extensive, isotone and idempotent with respect to `⊆`, and fixing every
/// principal up-set, on the covered sets.
pub fn is_standard_closure(op: &ClosureOperator<'_>, coverage: Coverage<'_>) -> Result<bool> {
    Ok(closure_violation(op, coverage)?.is_none())
}

/// `Γ_e(S) = {p : e(p) ≥ ⋀ e[S]}` for a meet-completion `e`.
pub fn gamma_from_completion(e: &CompletionMap) -> Result<ClosureOperator<'static>> {
    if !e.is_meet_completion()? {
        return Err(Error::input("map is not a meet-completion"));
    }
    let e = e.clone();
    let parent = e.source().clone();
    Ok(ClosureOperator::from_fn(parent, move |s| {
        let src = e.source();
        let imgs: Vec<usize> = src.members(s).iter().map(|p| e.apply(p)).collect();
        let m = e.target().meet(&imgs).expect("target is a complete lattice");
        let closed = (0..src.len()).filter(|&p| e.target().leq(&m, &e.apply(p)));
        UpSet::generated_by(src, closed)
    }))
}

/// The meet-completion `e_Γ : p ↦ p↑` into the closed sets ordered by `⊇`.
#[derive(Clone, Debug)]
pub struct ClosedSetCompletion {
    pub map: CompletionMap,
    /// The closed up-set each target element stands for.
    pub closed: Vec<UpSet<usize>>,
}

impl ClosedSetCompletion {
    pub fn index_of(&self, s: &UpSet<usize>) -> Option<usize> {
        self.closed.iter().position(|c| c == s)
    }
}

pub fn completion_from_gamma(op: &ClosureOperator<'_>, limit: usize) -> Result<ClosedSetCompletion> {
    if let Some(v) = closure_violation(op, Coverage::Exhaustive(limit))? {
        return Err(Error::input(alloc::format!("not a standard closure operator: {v:?}")));
    }
    let parent = op.parent();
    let closed = op.closed_sets(limit)?;
    let target = parent.reverse_inclusion_poset(&closed)?;
    let map = (0..parent.len())
        .map(|p| closed.iter().position(|c| c.minimals() == [p]).expect("standard closures fix principals"))
        .collect();
    Ok(ClosedSetCompletion { map: CompletionMap::new(parent.clone(), target, map)?, closed })
}

/// `h_e : Q → Γ_e[P*]`, `q ↦ {p : e(p) ≥ q}`, with its inverse `S ↦ ⋀ e[S]`.
#[derive(Clone, Debug)]
pub struct ClosureIso {
    e: CompletionMap,
    images: Vec<UpSet<usize>>,
}

pub fn h_iso(e: &CompletionMap) -> Result<ClosureIso> {
    if !e.is_meet_completion()? {
        return Err(Error::input("map is not a meet-completion"));
    }
    let src = e.source();
    let images = (0..e.target().len())
        .map(|q| UpSet::generated_by(src, (0..src.len()).filter(|&p| e.target().leq(&q, &e.apply(p)))))
        .collect();
    Ok(ClosureIso { e: e.clone(), images })
}

impl ClosureIso {
    pub fn apply(&self, q: usize) -> &UpSet<usize> {
        &self.images[q]
    }

    pub fn images(&self) -> &[UpSet<usize>] {
        &self.images
    }

    pub fn inverse(&self, s: &UpSet<usize>) -> Option<usize> {
        let src = self.e.source();
        let imgs: Vec<usize> = src.members(s).iter().map(|p| self.e.apply(p)).collect();
        self.e.target().meet(&imgs)
    }

    /// `q ≤ q' ⟺ h(q) ⊇ h(q')`, and `h` is injective.
    pub fn is_order_embedding(&self) -> bool {
        let src = self.e.source();
        let t = self.e.target();
        let members: Vec<BitSet> = self.images.iter().map(|s| src.members(s)).collect();
        (0..t.len()).all(|a| {
            (0..t.len()).all(|b| t.leq(&a, &b) == members[b].is_subset(&members[a]))
        })
    }

    /// `h_e ∘ e = e_{Γ_e}`, i.e. `h(e(p)) = p↑` for all `p`.
    pub fn triangle_commutes(&self) -> bool {
        (0..self.e.source().len()).all(|p| self.images[self.e.apply(p)] == UpSet::principal(p))
    }

    /// Both compositions with the inverse are identities on the given closed sets.
    pub fn inverts_on(&self, closed: &[UpSet<usize>]) -> bool {
        let forward = (0..self.images.len()).all(|q| self.inverse(&self.images[q]) == Some(q));
        let backward = closed.iter().all(|s| self.inverse(s).map(|q| &self.images[q]) == Some(s));
        forward && backward
    }
}

/// Every order isomorphism `g : Q₁ → Q₂` with `g ∘ e₁ = e₂`, by backtracking
/// over bijections.
pub fn commuting_isomorphisms(e1: &CompletionMap, e2: &CompletionMap, limit: usize) -> Result<Vec<Vec<usize>>> {
    let (q1, q2) = (e1.target(), e2.target());
    if e1.source() != e2.source() || q1.len() != q2.len() {
        return Ok(Vec::new());
    }
    let n = q1.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for p in 0..e1.source().len() {
        let (a, b) = (e1.apply(p), e2.apply(p));
        match assign[a] {
            Some(prev) if prev != b => return Ok(Vec::new()),
            Some(_) => {}
            None => {
                if used[b] {
                    return Ok(Vec::new());
                }
                assign[a] = Some(b);
                used[b] = true;
            }
        }
    }
    let mut out = Vec::new();
    let mut steps = 0usize;
    search_iso(q1, q2, 0, &mut assign, &mut used, &mut out, &mut steps, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_iso(
    q1: &FinitePoset,
    q2: &FinitePoset,
    i: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    steps: &mut usize,
    limit: usize,
) -> Result<()> {
    *steps += 1;
    if *steps > limit {
        return Err(Error::Guard { what: "isomorphism search", limit });
    }
    if i == q1.len() {
        let g: Vec<usize> = assign.iter().map(|x| x.unwrap()).collect();
        if (0..g.len()).all(|a| (0..g.len()).all(|b| q1.leq(&a, &b) == q2.leq(&g[a], &g[b]))) {
            out.push(g);
        }
        return Ok(());
    }
    if assign[i].is_some() {
        return search_iso(q1, q2, i + 1, assign, used, out, steps, limit);
    }
    for c in 0..q2.len() {
        if used[c] {
            continue;
        }
        let consistent = (0..q1.len()).all(|a| match assign[a] {
            Some(b) => q1.leq(&a, &i) == q2.leq(&b, &c) && q1.leq(&i, &a) == q2.leq(&c, &b),
            None => true,
        });
        if !consistent {
            continue;
        }
        assign[i] = Some(c);
        used[c] = true;
        let r = search_iso(q1, q2, i + 1, assign, used, out, steps, limit);
        assign[i] = None;
        used[c] = false;
        r?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{DEFAULT_UPSET_LIMIT as LIMIT, FinitePoset};
    use alloc::string::ToString;

    fn lonely_point() -> CompletionMap {
        let p = FinitePoset::from_pairs(vec!["p".to_string()], &[(0, 0)]).unwrap();
        let q = FinitePoset::from_pairs(vec!["q".into(), "T".into()], &[(0, 0), (1, 1), (0, 1)]).unwrap();
        CompletionMap::new(p, q, vec![0]).unwrap()
    }

    #[test]
    fn identity_is_standard() {
        let op = ClosureOperator::identity(FinitePoset::boolean_lattice(2));
        assert!(is_standard_closure(&op, Coverage::Exhaustive(LIMIT)).unwrap());
    }

    #[test]
    fn constant_carrier_is_not_standard() {
        let p = FinitePoset::chain(3);
        let q = p.clone();
        let op = ClosureOperator::from_fn(p, move |_| q.carrier_upset());
        assert_eq!(
            closure_violation(&op, Coverage::Exhaustive(LIMIT)).unwrap(),
            Some(ClosureViolation::NotStandard(1))
        );
    }

    #[test]
    fn non_extensive_map_is_caught() {
        let p = FinitePoset::antichain(2);
        // Fixes principals but sends the carrier to one point.
        let op = ClosureOperator::from_fn(p, |s| {
            if s.minimals().len() == 2 { UpSet::principal(0) } else { s.clone() }
        });
        assert!(matches!(
            closure_violation(&op, Coverage::Exhaustive(LIMIT)).unwrap(),
            Some(ClosureViolation::NotExtensive(_))
        ));
    }

    #[test]
    fn gamma_of_iota_is_identity() {
        let p = FinitePoset::boolean_lattice(2);
        let iota = CompletionMap::up_set_embedding(&p, LIMIT).unwrap();
        let g = gamma_from_completion(&iota).unwrap();
        for s in p.all_up_sets(LIMIT).unwrap() {
            assert_eq!(g.apply(&s), s);
        }
    }

    #[test]
    fn gamma_of_lonely_point() {
        let e = lonely_point();
        let g = gamma_from_completion(&e).unwrap();
        // ⋀ e[∅] = ⊤ and e(p) = q < ⊤.
        assert!(g.apply(&UpSet::empty()).is_empty());
        assert_eq!(g.apply(&UpSet::principal(0)), UpSet::principal(0));
        assert!(is_standard_closure(&g, Coverage::Exhaustive(LIMIT)).unwrap());
    }

    #[test]
    fn gamma_requires_meet_completion() {
        let e = lonely_point().power(2, 64).unwrap();
        assert!(gamma_from_completion(&e).is_err());
        assert!(h_iso(&e).is_err());
    }

    #[test]
    fn singleton_iota_round_trip() {
        let p = FinitePoset::chain(1);
        let iota = CompletionMap::up_set_embedding(&p, LIMIT).unwrap();
        let h = h_iso(&iota).unwrap();
        assert_eq!(h.images().len(), 2);
        assert!(h.is_order_embedding() && h.triangle_commutes());
        let g = gamma_from_completion(&iota).unwrap();
        let back = completion_from_gamma(&g, LIMIT).unwrap();
        assert_eq!(back.closed.len(), 2);
        assert!(h.inverts_on(&back.closed));
        let isos = commuting_isomorphisms(&iota, &back.map, 1 << 16).unwrap();
        assert_eq!(isos.len(), 1);
    }

    #[test]
    fn completion_from_non_standard_is_rejected() {
        let p = FinitePoset::chain(2);
        let q = p.clone();
        let op = ClosureOperator::from_fn(p, move |_| q.carrier_upset());
        assert!(completion_from_gamma(&op, LIMIT).is_err());
    }

    #[test]
    fn family_closure_is_smallest_containing_member() {
        let p = FinitePoset::antichain(3);
        let mut fam: Vec<UpSet<usize>> = (0..3).map(UpSet::principal).collect();
        fam.push(p.up_closure(&[0, 1]).unwrap());
        let op = ClosureOperator::from_closed_sets(p.clone(), &fam);
        assert!(is_standard_closure(&op, Coverage::Exhaustive(LIMIT)).unwrap());
        assert_eq!(op.apply(&p.up_closure(&[1, 0]).unwrap()), p.up_closure(&[0, 1]).unwrap());
        assert_eq!(op.apply(&p.up_closure(&[0, 2]).unwrap()), p.carrier_upset());
        // No member is empty, so ∅ closes to the intersection of all members.
        assert!(op.apply(&UpSet::empty()).is_empty());
    }
}
