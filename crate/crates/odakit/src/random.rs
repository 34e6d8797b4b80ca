//! Seeded instance generators. All randomness comes from `ChaCha8Rng`
//! seeded with `seed_from_u64`, so a seed replays a run exactly.

use odakit_core::poset::decode_tuple;
use odakit_core::term::Term;
use odakit_core::{ClosureOperator, FinitePoset, Order, PosetExpansion, Signature, UpSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random partial order on `n` points: each pair `i < j` of a random
/// linear arrangement is related with probability `density`, then closed
/// transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[perm[i]][perm[i]] = true;
        for j in i + 1..n {
            if rng.gen_bool(density) {
                le[perm[i]][perm[j]] = true;
            }
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
    FinitePoset::from_fn(labels, |i, j| le[i][j]).expect("transitively closed DAG")
}

pub fn random_upset(rng: &mut impl Rng, p: &FinitePoset) -> UpSet<usize> {
    let gens: Vec<usize> = (0..p.len()).filter(|_| rng.gen_bool(0.3)).collect();
    p.up_closure(&gens).expect("generators are in the carrier")
}

/// A random standard closure: the closed sets are all intersections of a
/// family made of `k` random up-sets, every principal up-set and the
/// carrier, plus `∅` half of the time.
pub fn random_standard_closure(rng: &mut impl Rng, p: &FinitePoset, k: usize) -> ClosureOperator<'static> {
    let mut family: Vec<UpSet<usize>> = (0..k).map(|_| random_upset(rng, p)).collect();
    family.extend((0..p.len()).map(UpSet::principal));
    family.push(p.carrier_upset());
    if rng.gen_bool(0.5) {
        family.push(UpSet::empty());
    }
    ClosureOperator::from_closed_sets(p.clone(), &family)
}

/// A random isotone operation of the given arity. Tuples are visited in a
/// linear extension of the product order and each picks a value above the
/// values already chosen below it; when no such value exists the attempt
/// restarts, falling back to a constant after a few tries.
pub fn random_isotone_table(rng: &mut impl Rng, p: &FinitePoset, arity: usize) -> Vec<usize> {
    let n = p.len();
    let size = n.pow(arity as u32);
    let tuples: Vec<Vec<usize>> = (0..size).map(|i| decode_tuple(i, n, arity)).collect();
    let below = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| p.leq(x, y));
    // Number of elements strictly below in the product order; sorting by it
    // gives a linear extension.
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&i| (0..size).filter(|&j| j != i && below(&tuples[j], &tuples[i])).count());
    'attempt: for _ in 0..8 {
        let mut table = vec![usize::MAX; size];
        for &i in &order {
            let lower: Vec<usize> =
                (0..size).filter(|&j| table[j] != usize::MAX && below(&tuples[j], &tuples[i])).map(|j| table[j]).collect();
            let candidates: Vec<usize> = (0..n).filter(|c| lower.iter().all(|l| p.leq(l, c))).collect();
            match candidates.choose(rng) {
                Some(&c) => table[i] = c,
                None => continue 'attempt,
            }
        }
        return table;
    }
    vec![rng.gen_range(0..n); size]
}

/// An expansion with one unary operation `f` and one binary operation `g`.
pub fn random_expansion(rng: &mut impl Rng, max_poset: usize) -> PosetExpansion {
    let n = rng.gen_range(1..=max_poset.max(1));
    let p = random_poset(rng, n, 0.5);
    let f = random_isotone_table(rng, &p, 1);
    let g = random_isotone_table(rng, &p, 2);
    PosetExpansion::new(p, vec![("f".into(), 1, f), ("g".into(), 2, g)]).expect("tables are isotone")
}

/// A random term of depth at most `max_depth` over `vars` variables.
pub fn random_term(rng: &mut impl Rng, sig: &Signature, vars: usize, max_depth: usize) -> Term {
    if max_depth == 0 || rng.gen_bool(0.3) {
        return Term::Var(rng.gen_range(0..vars));
    }
    let op = rng.gen_range(0..sig.len());
    let args = (0..sig.arity(op)).map(|_| random_term(rng, sig, vars, max_depth - 1)).collect();
    Term::App(op, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use odakit_core::closure::{is_standard_closure, Coverage};
    use odakit_core::poset::DEFAULT_UPSET_LIMIT;

    #[test]
    fn generators_are_deterministic_and_valid() {
        for seed in 0..30 {
            let a = random_expansion(&mut rng(seed), 4);
            let b = random_expansion(&mut rng(seed), 4);
            assert_eq!(a.poset(), b.poset());
            assert_eq!(a.table(1), b.table(1));
            let mut r = rng(seed);
            let p = random_poset(&mut r, 5, 0.4);
            let g = random_standard_closure(&mut r, &p, 3);
            assert!(is_standard_closure(&g, Coverage::Exhaustive(DEFAULT_UPSET_LIMIT)).unwrap());
        }
    }

    #[test]
    fn terms_respect_depth_and_arity() {
        let sig = Signature::new([("f", 1), ("g", 2)]);
        let mut r = rng(7);
        for _ in 0..200 {
            let t = random_term(&mut r, &sig, 2, 3);
            assert!(t.depth() <= 3);
            t.validate(&sig, 2).unwrap();
        }
    }
}
