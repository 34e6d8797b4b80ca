//! Isotone poset expansions, lifting their operations to closed up-sets,
//! and checking inequalities between terms before and after completion.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::closure::{Closure, ClosureOperator, Identity};
use crate::error::{Error, Result};
use crate::order::{Order, UpSet};
use crate::poset::{decode_tuple, encode_tuple, FinitePoset};
use crate::term::{Signature, Term};

/// An order together with finitary operations on its elements.
pub trait Expansion: Order {
    fn signature(&self) -> &Signature;

    fn apply_op(&self, op: usize, args: &[Self::Elem]) -> Self::Elem;
}

impl<X: Expansion + ?Sized> Expansion for &X {
    fn signature(&self) -> &Signature {
        (**self).signature()
    }

    fn apply_op(&self, op: usize, args: &[Self::Elem]) -> Self::Elem {
        (**self).apply_op(op, args)
    }
}

/// A finite poset with isotone operations given by full tables.
///
/// Table entry for `(a₁, …, aₙ)` sits at the lexicographic index of the
/// tuple, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetExpansion {
    poset: FinitePoset,
    signature: Signature,
    tables: Vec<Vec<usize>>,
}

impl PosetExpansion {
    pub fn new(poset: FinitePoset, ops: Vec<(String, usize, Vec<usize>)>) -> Result<Self> {
        let n = poset.len();
        let mut names = Vec::new();
        let mut tables = Vec::new();
        for (name, arity, table) in ops {
            let size = n.checked_pow(arity as u32).ok_or_else(|| Error::input("operation table too large"))?;
            if table.len() != size {
                return Err(Error::input(format!("`{name}` table has {} entries, expected {size}", table.len())));
            }
            if table.iter().any(|&v| v >= n) {
                return Err(Error::input(format!("`{name}` table leaves the carrier")));
            }
            if let Some((a, b)) = isotonicity_violation(&poset, arity, &table) {
                return Err(Error::input(format!(
                    "`{name}` is not isotone: {:?} ≤ {:?} but the images are not ordered",
                    a, b
                )));
            }
            names.push((name, arity));
            tables.push(table);
        }
        Ok(PosetExpansion { poset, signature: Signature::new(names), tables })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    /// First failing assignment of `φ ≤ ψ` over all element tuples,
    /// lexicographic in element order.
    pub fn inequality_counterexample(&self, phi: &Term, psi: &Term, var_count: usize) -> Result<Option<Vec<usize>>> {
        phi.validate(&self.signature, var_count)?;
        psi.validate(&self.signature, var_count)?;
        let n = self.poset.len();
        let total = n.checked_pow(var_count as u32).ok_or_else(|| Error::input("too many assignments"))?;
        for i in 0..total {
            let env = decode_tuple(i, n, var_count);
            let l = eval_point(self, phi, &env)?;
            let r = eval_point(self, psi, &env)?;
            if !self.poset.leq(&l, &r) {
                return Ok(Some(env));
            }
        }
        Ok(None)
    }

    pub fn holds_inequality(&self, phi: &Term, psi: &Term, var_count: usize) -> Result<bool> {
        Ok(self.inequality_counterexample(phi, psi, var_count)?.is_none())
    }

    /// `P• = (P*, ⊇, γ⁺ᵢ)`, the completion under the identity closure.
    pub fn bullet(&self, limit: usize) -> Result<CompletedExpansion<'_, Self, Identity>> {
        let closed = self.poset.all_up_sets(limit)?;
        Ok(CompletedExpansion::with_closed_sets(self, Identity, closed))
    }

    /// `Γ[P]` for a standard closure on the underlying poset.
    pub fn complete_with<'c>(
        &self,
        closure: &'c ClosureOperator<'c>,
        limit: usize,
    ) -> Result<CompletedExpansion<'_, Self, &'c ClosureOperator<'c>>> {
        if closure.parent() != &self.poset {
            return Err(Error::input("closure operator acts on a different poset"));
        }
        let closed = closure.closed_sets(limit)?;
        Ok(CompletedExpansion::with_closed_sets(self, closure, closed))
    }
}

impl Order for PosetExpansion {
    type Elem = usize;

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.poset.leq(a, b)
    }
}

impl Expansion for PosetExpansion {
    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn apply_op(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][encode_tuple(args, self.poset.len())]
    }
}

/// A pair of argument tuples `a ≤ b` (differing in one place) whose images are not ordered.
fn isotonicity_violation(p: &FinitePoset, arity: usize, table: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = p.len();
    for i in 0..table.len() {
        let a = decode_tuple(i, n, arity);
        for k in 0..arity {
            for up in p.above(a[k]).iter() {
                let mut b = a.clone();
                b[k] = up;
                if !p.leq(&table[i], &table[encode_tuple(&b, n)]) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Evaluates a term at concrete elements.
pub fn eval_point<X: Expansion + ?Sized>(x: &X, t: &Term, env: &[X::Elem]) -> Result<X::Elem> {
    t.validate(x.signature(), env.len())?;
    t.eval(env, &mut |op, args| x.apply_op(op, args))
}

/// Calls `f` on every tuple of the cartesian product of `lists`.
fn for_each_tuple<E: Clone>(lists: &[&[E]], f: &mut impl FnMut(&[E])) {
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut idx = alloc::vec![0usize; lists.len()];
    let mut buf: Vec<E> = lists.iter().map(|l| l[0].clone()).collect();
    loop {
        f(&buf);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                buf[k] = lists[k][idx[k]].clone();
                break;
            }
            idx[k] = 0;
            buf[k] = lists[k][0].clone();
        }
    }
}

/// `f[C₁ × … × Cₙ]↑`, computed from the generating antichains.
///
/// Sound because `f` is isotone: every image of a member lies above the
/// image of some tuple of minimal elements. `f[∅] = ∅`.
pub fn image_upset<X: Expansion + ?Sized>(x: &X, op: usize, args: &[UpSet<X::Elem>]) -> Result<UpSet<X::Elem>> {
    let arity = x.signature().arity(op);
    if args.len() != arity {
        return Err(Error::input(format!(
            "`{}` expects {} argument(s), got {}",
            x.signature().name(op),
            arity,
            args.len()
        )));
    }
    let lists: Vec<&[X::Elem]> = args.iter().map(|a| a.minimals()).collect();
    let mut gens = Vec::new();
    for_each_tuple(&lists, &mut |t| gens.push(x.apply_op(op, t)));
    Ok(UpSet::generated_by(x, gens))
}

/// `γ⁺(C₁, …, Cₙ) = Γ(f[C₁ × … × Cₙ]↑)`.
pub fn lift_op<X, C>(x: &X, closure: &C, op: usize, args: &[UpSet<X::Elem>]) -> Result<UpSet<X::Elem>>
where
    X: Expansion + ?Sized,
    C: Closure<X::Elem> + ?Sized,
{
    Ok(closure.close(&image_upset(x, op, args)?))
}

/// `φ[C₁ × … × Cₙ]↑`: the term evaluated pointwise, then up-closed.
pub fn pointwise_image<X: Expansion + ?Sized>(x: &X, t: &Term, env: &[UpSet<X::Elem>]) -> Result<UpSet<X::Elem>> {
    t.validate(x.signature(), env.len())?;
    // Only the variables of `t` range over the product; an unused empty
    // argument would otherwise empty the whole image.
    let vars = t.variables();
    let mut map = alloc::vec![0; env.len()];
    for (k, &v) in vars.iter().enumerate() {
        map[v] = k;
    }
    let t = &t.rename(&map);
    let lists: Vec<&[X::Elem]> = vars.iter().map(|&v| env[v].minimals()).collect();
    let mut gens = Vec::new();
    let mut err = None;
    for_each_tuple(&lists, &mut |tuple| match eval_point(x, t, tuple) {
        Ok(v) => gens.push(v),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(UpSet::generated_by(x, gens)),
    }
}

/// A completion `Γ(P*) = (Γ[P*], ⊇, γ⁺ᵢ)` of an expansion.
///
/// The closed sets are listed when the carrier is small enough; large
/// (virtual) carriers are handled intensionally and only support
/// evaluation at given arguments.
pub struct CompletedExpansion<'a, X: Expansion + ?Sized, C> {
    base: &'a X,
    closure: C,
    closed: Option<Vec<UpSet<X::Elem>>>,
}

impl<'a, X, C> CompletedExpansion<'a, X, C>
where
    X: Expansion + ?Sized,
    C: Closure<X::Elem>,
{
    pub fn intensional(base: &'a X, closure: C) -> Self {
        CompletedExpansion { base, closure, closed: None }
    }

    pub fn with_closed_sets(base: &'a X, closure: C, closed: Vec<UpSet<X::Elem>>) -> Self {
        CompletedExpansion { base, closure, closed: Some(closed) }
    }

    pub fn base(&self) -> &X {
        self.base
    }

    pub fn closure(&self) -> &C {
        &self.closure
    }

    pub fn closed_sets(&self) -> Option<&[UpSet<X::Elem>]> {
        self.closed.as_deref()
    }

    pub fn close(&self, s: &UpSet<X::Elem>) -> UpSet<X::Elem> {
        self.closure.close(s)
    }

    /// `a ≤ b` in the completion, i.e. `a ⊇ b`.
    pub fn leq(&self, a: &UpSet<X::Elem>, b: &UpSet<X::Elem>) -> bool {
        b.is_subset_of(self.base, a)
    }

    pub fn lifted(&self, op: usize, args: &[UpSet<X::Elem>]) -> Result<UpSet<X::Elem>> {
        lift_op(self.base, &self.closure, op, args)
    }

    /// Interprets `t` with every operation read as its lift.
    pub fn eval(&self, t: &Term, env: &[UpSet<X::Elem>]) -> Result<UpSet<X::Elem>> {
        t.validate(self.base.signature(), env.len())?;
        match t {
            Term::Var(i) => Ok(env[*i].clone()),
            Term::App(op, args) => {
                let vals = args.iter().map(|a| self.eval(a, env)).collect::<Result<Vec<_>>>()?;
                self.lifted(*op, &vals)
            }
        }
    }

    /// Whether `φ ≤ ψ` (that is `φ ⊇ ψ`) at one assignment.
    pub fn check_at(&self, phi: &Term, psi: &Term, env: &[UpSet<X::Elem>]) -> Result<bool> {
        Ok(self.leq(&self.eval(phi, env)?, &self.eval(psi, env)?))
    }

    fn listed(&self) -> Result<&[UpSet<X::Elem>]> {
        self.closed
            .as_deref()
            .ok_or_else(|| Error::input("closed sets of an intensional completion cannot be enumerated"))
    }

    /// Calls `f` on each assignment of closed sets to `var_count` variables,
    /// in lexicographic order, stopping at the first `Some`.
    fn find_assignment<T>(
        &self,
        var_count: usize,
        mut f: impl FnMut(&[UpSet<X::Elem>]) -> Result<Option<T>>,
    ) -> Result<Option<T>> {
        let closed = self.listed()?;
        let n = closed.len();
        let total = n.checked_pow(var_count as u32).ok_or_else(|| Error::input("too many assignments"))?;
        for i in 0..total {
            let env: Vec<UpSet<X::Elem>> =
                decode_tuple(i, n, var_count).into_iter().map(|k| closed[k].clone()).collect();
            if let Some(t) = f(&env)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// First assignment of closed sets falsifying `φ ≤ ψ`.
    pub fn inequality_counterexample(
        &self,
        phi: &Term,
        psi: &Term,
        var_count: usize,
    ) -> Result<Option<Vec<UpSet<X::Elem>>>> {
        self.find_assignment(var_count, |env| {
            Ok(if self.check_at(phi, psi, env)? { None } else { Some(env.to_vec()) })
        })
    }

    pub fn holds_inequality(&self, phi: &Term, psi: &Term, var_count: usize) -> Result<bool> {
        Ok(self.inequality_counterexample(phi, psi, var_count)?.is_none())
    }

    /// Whether `ψ(C̄) = Γ(ψ[C̄]↑)` at one assignment.
    pub fn sahl_condition_at(&self, psi: &Term, env: &[UpSet<X::Elem>]) -> Result<bool> {
        let lifted = self.eval(psi, env)?;
        let pointwise = self.close(&pointwise_image(self.base, psi, env)?);
        Ok(lifted == pointwise)
    }

    /// Checks `ψ(C̄) = Γ(ψ[C̄]↑)` on every assignment of closed sets.
    pub fn sahl_condition(&self, psi: &Term, var_count: usize) -> Result<SahlReport<X::Elem>> {
        let mut report = SahlReport { tested: 0, failures: Vec::new() };
        self.find_assignment(var_count, |env| {
            report.tested += 1;
            if !self.sahl_condition_at(psi, env)? {
                report.failures.push(env.to_vec());
            }
            Ok(None::<()>)
        })?;
        Ok(report)
    }
}

/// Per-assignment outcome of [`CompletedExpansion::sahl_condition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SahlReport<E> {
    pub tested: usize,
    /// Assignments where the lifted term differs from the closure of its pointwise image.
    pub failures: Vec<Vec<UpSet<E>>>,
}

impl<E> SahlReport<E> {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_UPSET_LIMIT as LIMIT;
    use alloc::string::ToString;
    use alloc::vec;

    /// `⊥ < a, b` with binary meet and a constant `a`.
    fn vee() -> PosetExpansion {
        let p = FinitePoset::from_pairs(
            vec!["bot".into(), "a".into(), "b".into()],
            &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)],
        )
        .unwrap();
        let meet: Vec<usize> = (0..9).map(|i| if i / 3 == i % 3 { i / 3 } else { 0 }).collect();
        PosetExpansion::new(p, vec![("meet".to_string(), 2, meet), ("a".to_string(), 0, vec![1])]).unwrap()
    }

    #[test]
    fn rejects_non_isotone_tables() {
        let p = FinitePoset::chain(2);
        let err = PosetExpansion::new(p.clone(), vec![("neg".into(), 1, vec![1, 0])]).unwrap_err();
        assert!(matches!(err, Error::Input(ref m) if m.contains("isotone")));
        assert!(PosetExpansion::new(p.clone(), vec![("f".into(), 1, vec![0])]).is_err());
        assert!(PosetExpansion::new(p, vec![("f".into(), 1, vec![0, 2])]).is_err());
    }

    #[test]
    fn constants_lift_to_principal_up_sets() {
        let x = vee();
        assert_eq!(lift_op(&x, &Identity, 1, &[]).unwrap(), UpSet::principal(1));
    }

    #[test]
    fn principal_arguments_lift_to_principal_images() {
        let x = vee();
        for a in 0..3 {
            for b in 0..3 {
                let got = lift_op(&x, &Identity, 0, &[UpSet::principal(a), UpSet::principal(b)]).unwrap();
                assert_eq!(got, UpSet::principal(x.apply_op(0, &[a, b])));
            }
        }
    }

    #[test]
    fn empty_argument_gives_closure_of_empty() {
        let x = vee();
        let got = lift_op(&x, &Identity, 0, &[UpSet::empty(), UpSet::principal(1)]).unwrap();
        assert!(got.is_empty());
        assert!(lift_op(&x, &Identity, 0, &[UpSet::empty()]).is_err());
    }

    #[test]
    fn term_evaluation_basics() {
        let x = vee();
        let vars = ["x", "y"];
        let b = x.bullet(LIMIT).unwrap();
        let t = Term::parse("x", x.signature(), &vars).unwrap();
        let c = x.poset().up_closure(&[1, 2]).unwrap();
        assert_eq!(b.eval(&t, &[c.clone(), UpSet::empty()]).unwrap(), c);
        let m = Term::parse("(meet x y)", x.signature(), &vars).unwrap();
        assert!(b.eval(&m, &[UpSet::empty(), UpSet::empty()]).unwrap().is_empty());
        assert!(b.eval(&m, core::slice::from_ref(&c)).is_err());
    }

    #[test]
    fn repeated_variables_break_pointwise_semantics() {
        // meet(x, x) = x in P, but at C = {a, b}↑ the lift pairs a with b.
        let x = vee();
        let b = x.bullet(LIMIT).unwrap();
        let vars = ["x"];
        let phi = Term::parse("x", x.signature(), &vars).unwrap();
        let psi = Term::parse("(meet x x)", x.signature(), &vars).unwrap();
        assert!(x.holds_inequality(&phi, &psi, 1).unwrap());
        let c = x.poset().up_closure(&[1, 2]).unwrap();
        assert_eq!(pointwise_image(&x, &psi, core::slice::from_ref(&c)).unwrap(), c);
        assert_eq!(b.eval(&psi, core::slice::from_ref(&c)).unwrap(), x.poset().carrier_upset());
        assert_eq!(b.inequality_counterexample(&phi, &psi, 1).unwrap(), Some(vec![c]));
        // The reverse inequality involves only a linear larger term and survives.
        assert!(b.holds_inequality(&psi, &phi, 1).unwrap());
    }

    #[test]
    fn variable_missing_from_the_larger_side() {
        // One point: y ≤ x holds in P, but P* has ∅ above the point.
        let x = PosetExpansion::new(FinitePoset::chain(1), vec![("f".to_string(), 1, vec![0])]).unwrap();
        let b = x.bullet(LIMIT).unwrap();
        let vars = ["x", "y"];
        let phi = Term::parse("y", x.signature(), &vars).unwrap();
        let psi = Term::parse("x", x.signature(), &vars).unwrap();
        assert!(x.holds_inequality(&phi, &psi, 2).unwrap());
        assert!(!b.holds_inequality(&phi, &psi, 2).unwrap());
        assert!(b.holds_inequality(&psi, &psi, 2).unwrap());
        // An unused empty argument does not empty the pointwise image.
        let full = x.poset().carrier_upset();
        assert_eq!(pointwise_image(&x, &psi, &[full.clone(), UpSet::empty()]).unwrap(), full);
    }

    #[test]
    fn identity_inequality_always_holds() {
        let x = vee();
        let t = Term::parse("(meet x a)", x.signature(), &["x"]).unwrap();
        assert!(x.holds_inequality(&t, &t, 1).unwrap());
        assert!(x.bullet(LIMIT).unwrap().holds_inequality(&t, &t, 1).unwrap());
    }

    #[test]
    fn variable_is_trivially_sahl() {
        let x = vee();
        let mut fam: Vec<UpSet<usize>> = (0..3).map(UpSet::principal).collect();
        fam.push(UpSet::empty());
        let op = ClosureOperator::from_closed_sets(x.poset().clone(), &fam);
        let g = x.complete_with(&op, LIMIT).unwrap();
        let t = Term::parse("x", x.signature(), &["x"]).unwrap();
        let r = g.sahl_condition(&t, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.tested, g.closed_sets().unwrap().len());
    }
}
