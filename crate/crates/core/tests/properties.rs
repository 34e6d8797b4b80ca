use std::collections::BTreeSet;

use odakit_core::oda::{generate_subalgebra, FullProperOda};
use odakit_core::poset::DEFAULT_UPSET_LIMIT;
use odakit_core::{check_axioms, BinRel, Closure, FinitePoset, OdaClosure, OdaOps, Order, UpSet};
use proptest::prelude::*;

type Pairs = BTreeSet<(usize, usize)>;

fn naive_comp(a: &Pairs, b: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(u, v) in a {
        for &(w, x) in b {
            if v == w {
                out.insert((u, x));
            }
        }
    }
    out
}

fn pairs_of(r: &BinRel) -> Pairs {
    r.pairs().into_iter().collect()
}

fn relation(base: usize) -> impl Strategy<Value = BinRel> {
    prop::collection::vec((0..base, 0..base), 0..=base * base)
        .prop_map(move |ps| BinRel::from_pairs(base, &ps).unwrap())
}

/// A random partial order on `n` points: a random DAG on increasing
/// indices, transitively closed.
fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut le = vec![vec![false; n]; n];
            for i in 0..n {
                le[i][i] = true;
                for j in i + 1..n {
                    le[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            FinitePoset::from_fn(labels, |i, j| le[i][j]).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn relation_operations_match_pair_sets((a, b) in (1usize..=5).prop_flat_map(|k| (relation(k), relation(k)))) {
        let (pa, pb) = (pairs_of(&a), pairs_of(&b));
        prop_assert_eq!(pairs_of(&a.compose(&b).unwrap()), naive_comp(&pa, &pb));
        prop_assert_eq!(pairs_of(&a.converse()), pa.iter().map(|&(u, v)| (v, u)).collect::<Pairs>());
        prop_assert_eq!(pairs_of(&a.domain()), pa.iter().map(|&(u, _)| (u, u)).collect::<Pairs>());
        prop_assert_eq!(pairs_of(&a.range()), pa.iter().map(|&(_, v)| (v, v)).collect::<Pairs>());
        prop_assert_eq!(a.is_subset(&b), pa.is_subset(&pb));
    }

    #[test]
    fn up_set_enumeration_matches_subset_scan(p in poset()) {
        let n = p.len();
        let brute: Vec<u32> = (0u32..1 << n)
            .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !p.leq(&i, &j) || s >> j & 1 == 1)))
            .collect();
        let ups = p.all_up_sets(DEFAULT_UPSET_LIMIT).unwrap();
        prop_assert_eq!(ups.len(), brute.len());
        let mut masks: Vec<u32> = ups
            .iter()
            .map(|u| p.members(u).iter().fold(0, |m, i| m | 1 << i))
            .collect();
        masks.sort();
        prop_assert_eq!(masks, brute);
        prop_assert!(ups[0].is_empty());
    }

    #[test]
    fn closure_commutes_with_converse_on_base_three(gens in prop::collection::vec(relation(3), 0..4)) {
        let full = FullProperOda::new(3).unwrap();
        let g = OdaClosure::new(full);
        let s = UpSet::generated_by(&full, gens);
        let conv = |u: &UpSet<BinRel>| u.image(&full, |r| full.conv(r));
        prop_assert_eq!(conv(&g.close(&s)), g.close(&conv(&s)));
    }

    #[test]
    fn oda_closure_is_extensive_and_idempotent(gens in prop::collection::vec(relation(3), 0..4)) {
        let full = FullProperOda::new(3).unwrap();
        let g = OdaClosure::new(full);
        let s = UpSet::generated_by(&full, gens);
        let c = g.close(&s);
        prop_assert!(s.is_subset_of(&full, &c));
        prop_assert!(g.is_closed(&c));
        prop_assert_eq!(g.close(&c), c.clone());
        // Lifted unary operations land in closed sets without another pass.
        for img in [c.image(&full, |r| full.dom(r)), c.image(&full, |r| full.ran(r)), c.image(&full, |r| full.conv(r))] {
            prop_assert!(g.is_closed(&img));
        }
    }

    #[test]
    fn generated_subalgebras_satisfy_the_axioms(base in 1usize..=3, gens in prop::collection::vec(any::<u16>(), 0..3)) {
        let gens: Vec<BinRel> = gens
            .into_iter()
            .map(|bits| BinRel::from_bits(base, u64::from(bits) & ((1u64 << (base * base)) - 1)).unwrap())
            .collect();
        match generate_subalgebra(base, &gens, 64) {
            Ok(p) => {
                let report = check_axioms(&p.algebra);
                prop_assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
            }
            Err(e) => prop_assert!(e.is_guard()),
        }
    }
}
