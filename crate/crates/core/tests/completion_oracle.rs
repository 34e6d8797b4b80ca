//! The closure completion on the full relation algebra over two points,
//! cross-checked against a brute-force model that works on raw bit masks.

use odakit_core::completion::{check_completion_axioms, enumerate_closed_sets, partial_star_explore, OdaClosure};
use odakit_core::closure::{is_standard_closure, Coverage};
use odakit_core::oda::{FullProperOda, DEFAULT_ALGEBRA_LIMIT};
use odakit_core::poset::DEFAULT_UPSET_LIMIT;
use odakit_core::{BinRel, Closure, OdaOps, UpSet};

/// Relations on {0,1} as 4-bit masks, bit `2u+v` for the pair (u,v).
mod model {
    pub fn has(r: u8, u: usize, v: usize) -> bool {
        r >> (2 * u + v) & 1 == 1
    }
    fn build(f: impl Fn(usize, usize) -> bool) -> u8 {
        let mut r = 0;
        for u in 0..2 {
            for v in 0..2 {
                if f(u, v) {
                    r |= 1 << (2 * u + v);
                }
            }
        }
        r
    }
    pub fn comp(a: u8, b: u8) -> u8 {
        build(|u, w| (0..2).any(|v| has(a, u, v) && has(b, v, w)))
    }
    pub fn dom(a: u8) -> u8 {
        build(|u, v| u == v && (0..2).any(|w| has(a, u, w)))
    }
    pub fn ran(a: u8) -> u8 {
        build(|u, v| u == v && (0..2).any(|w| has(a, w, u)))
    }
    pub fn subset(a: u8, b: u8) -> bool {
        a & !b == 0
    }
    /// Membership masks over the 16 relations, indexed by their 4-bit value.
    pub fn up_sets() -> Vec<u32> {
        (0u32..1 << 16)
            .filter(|&s| {
                (0..16u8).all(|a| s >> a & 1 == 0 || (0..16u8).all(|b| !subset(a, b) || s >> b & 1 == 1))
            })
            .collect()
    }
    pub fn is_closed(s: u32) -> bool {
        let m: Vec<u8> = (0..16u8).filter(|&a| s >> a & 1 == 1).collect();
        m.iter().all(|&x| {
            m.iter().all(|&y| m.iter().all(|&z| s >> comp(comp(dom(x), y), ran(z)) & 1 == 1))
        })
    }
}

fn mask(r: &BinRel) -> u8 {
    r.pairs().iter().fold(0, |m, &(u, v)| m | 1 << (2 * u + v))
}

fn members_mask(u: &UpSet<BinRel>) -> u32 {
    (0..16u8)
        .filter(|&b| u.minimals().iter().any(|m| model::subset(mask(m), b)))
        .fold(0, |s, b| s | 1 << b)
}

fn closed_oracle() -> (Vec<u32>, Vec<u32>) {
    let ups = model::up_sets();
    let closed = ups.iter().copied().filter(|&s| model::is_closed(s)).collect();
    (ups, closed)
}

#[test]
fn upset_and_closed_counts_match_brute_force() {
    let (ups, closed) = closed_oracle();
    assert_eq!(ups.len(), 168);
    let p = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    assert_eq!(p.algebra.poset().all_up_sets(DEFAULT_UPSET_LIMIT).unwrap().len(), 168);

    let found = enumerate_closed_sets(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    let mut got: Vec<u32> = found
        .iter()
        .map(|c| c.as_upset().minimals().iter().map(|&i| p.relations[i]).collect::<Vec<_>>())
        .map(|gens| members_mask(&UpSet::generated_by(&FullProperOda::new(2).unwrap(), gens)))
        .collect();
    got.sort();
    let mut want = closed.clone();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(found.len(), 35, "closed-set count over base 2");
}

#[test]
fn generator_closure_is_the_least_closed_superset() {
    let (ups, closed) = closed_oracle();
    let full = FullProperOda::new(2).unwrap();
    let g = OdaClosure::new(full);
    let all: Vec<BinRel> = (0..16u64).map(|b| BinRel::from_bits(2, b).unwrap()).collect();
    for &s in &ups {
        let least = closed.iter().copied().filter(|&c| c & s == s).fold(u32::MAX >> 16, |a, c| a & c);
        let gens = all.iter().copied().filter(|r| s >> mask(r) & 1 == 1);
        let x = UpSet::generated_by(&full, gens);
        assert_eq!(members_mask(&g.close(&x)), least, "up-set {s:#06x}");
        assert_eq!(g.is_closed(&x), model::is_closed(s));
    }
}

#[test]
fn oda_closure_is_a_standard_closure_on_base_two() {
    let p = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let op = OdaClosure::new(&p.algebra).as_operator();
    assert!(is_standard_closure(&op, Coverage::Exhaustive(DEFAULT_UPSET_LIMIT)).unwrap());
}

#[test]
fn completion_laws_on_base_two() {
    let p = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let report = check_completion_axioms(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    assert!(report.required_hold(), "{:?}", report.axioms.failures().collect::<Vec<_>>());
    assert!(!report.axioms.holds("D6"));
    assert!(!report.nonempty_axioms.holds("D6"));
    // The empty up-set is closed and is the top; D1 and normality break there.
    assert_eq!(report.failures_at_empty(), ["normality", "D1"]);
    for law in report.failures_at_empty() {
        let w = report.axioms.get(law).unwrap().witness.clone().unwrap();
        assert!(w.iter().any(|&i| report.table.closed[i].as_upset().is_empty()), "{law}: {w:?}");
    }

    // The specific pair from the D6 counterexample.
    let t = &report.table;
    let full = FullProperOda::new(2).unwrap();
    let idx = |gens: Vec<BinRel>| {
        let u = UpSet::generated_by(&full, gens);
        let local = UpSet::generated_by(&p.algebra, u.minimals().iter().map(|r| p.index_of(r).unwrap()));
        t.index_of(&local).unwrap()
    };
    let aa = full.relation(&[(0, 0)]).unwrap();
    let x = full.relation(&[(0, 1), (1, 0)]).unwrap();
    let a = idx(vec![aa]);
    let b = idx(vec![x, full.one()]);
    let alg = &t.algebra;
    assert_ne!(alg.dom(&alg.comp(&a, &b)), alg.dom(&alg.comp(&a, &alg.dom(&b))));
}

#[test]
fn partial_star_on_small_algebras() {
    let one = FullProperOda::new(1).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let report = check_completion_axioms(&one.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    assert!(report.required_hold());
    assert!(report.nonempty_axioms.all_hold());
    assert_eq!(report.table.closed.len(), 3);
    let star = partial_star_explore(&report.table, usize::MAX);
    assert_eq!(star.violations(), 0);
    assert!(!star.inconclusive);

    let two = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
    let report = check_completion_axioms(&two.algebra, DEFAULT_UPSET_LIMIT).unwrap();
    let capped = partial_star_explore(&report.table, 10);
    assert!(capped.inconclusive);
    assert_eq!(capped.triples_checked, 10);
    let star = partial_star_explore(&report.table, usize::MAX);
    println!("base-2 partial-star violations: {} unequal, {} one-sided", star.unequal.len(), star.one_sided.len());
}
