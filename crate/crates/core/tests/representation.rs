use odakit_core::completion::check_completion_axioms;
use odakit_core::oda::{generate_subalgebra, FullProperOda, DEFAULT_ALGEBRA_LIMIT};
use odakit_core::poset::DEFAULT_UPSET_LIMIT;
use odakit_core::{build_representation, frp_report, verify_representation, AbstractOda, BinRel, FinitePoset};

fn one_element() -> AbstractOda {
    let p = FinitePoset::from_fn(vec!["0".into()], |_, _| true).unwrap();
    AbstractOda::new(p, vec![vec![0]], vec![0], vec![0], vec![0], 0, 0).unwrap()
}

#[test]
fn one_element_algebra_has_empty_base() {
    let a = one_element();
    let r = build_representation(&a, DEFAULT_UPSET_LIMIT).unwrap();
    assert_eq!(r.base_size(), 0);
    assert!(r.pairs(0).is_empty());
    assert!(verify_representation(&r).all_hold());
    let s = frp_report(&a, DEFAULT_UPSET_LIMIT).unwrap();
    assert_eq!((s.algebra_size, s.base_size, s.verified), (1, 0, true));
}

#[test]
fn base_one_frp_summary() {
    let p = FullProperOda::new(1).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let s = frp_report(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    assert_eq!((s.algebra_size, s.base_size, s.verified), (2, 1, true));
    // ∅, {id}↑ and 0↑; the empty up-set is the only place D1 breaks.
    let c = check_completion_axioms(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    assert_eq!(s.closed_sets, 3);
    assert!(c.required_hold());
    assert_eq!(c.failures_at_empty(), ["normality", "D1"]);
}

#[test]
fn full_base_two_is_represented() {
    let p = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let r = build_representation(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    let report = verify_representation(&r);
    assert!(report.all_hold(), "{report:?}");
    assert_eq!(r.base_size(), 33);
}

#[test]
fn rejects_non_algebras() {
    let x = BinRel::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
    let p = generate_subalgebra(2, &[x], DEFAULT_ALGEBRA_LIMIT).unwrap();
    let broken = p.algebra.with_comp_entry(p.index_of(&x).unwrap(), p.index_of(&x).unwrap(), 0).unwrap();
    assert!(build_representation(&broken, DEFAULT_UPSET_LIMIT).is_err());
}
