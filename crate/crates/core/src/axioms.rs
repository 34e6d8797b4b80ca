//! Exhaustive model checking of the ordered-domain-algebra axioms on a
//! finite table algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::oda::{AbstractOda, OdaOps};
use crate::order::Order;

/// Outcome of one law, with the first failing tuple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawVerdict {
    pub law: &'static str,
    pub witness: Option<Vec<usize>>,
}

impl LawVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub verdicts: Vec<LawVerdict>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(LawVerdict::holds)
    }

    pub fn get(&self, law: &str) -> Option<&LawVerdict> {
        self.verdicts.iter().find(|v| v.law == law)
    }

    pub fn holds(&self, law: &str) -> bool {
        self.get(law).is_some_and(LawVerdict::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawVerdict> {
        self.verdicts.iter().filter(|v| !v.holds())
    }
}

/// Every law name checked by [`check_axioms`], in report order.
pub const LAWS: &[&str] = &[
    "partial-order",
    "bottom",
    "isotone-conv",
    "isotone-comp",
    "isotone-dom",
    "isotone-ran",
    "normality",
    "associativity",
    "identity",
    "id-self-converse",
    "involution",
    "conv-antidistributes",
    "D1",
    "D2",
    "D3",
    "D4",
    "D5",
    "D6",
    "D7",
    "D8",
    "D9",
    "D1-dual",
    "D2-dual",
    "D3-dual",
    "D4-dual",
    "D5-dual",
    "D6-dual",
    "D7-dual",
    "D8-dual",
    "dab-dom",
    "dab-ran",
];

struct Checker<'a> {
    a: &'a AbstractOda,
    n: usize,
}

impl Checker<'_> {
    fn all1(&self, f: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        (0..self.n).find(|&x| !f(x)).map(|x| vec![x])
    }

    fn all2(&self, f: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
        for x in 0..self.n {
            for y in 0..self.n {
                if !f(x, y) {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    }

    fn all3(&self, f: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if !f(x, y, z) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    }

    fn le(&self, x: usize, y: usize) -> bool {
        self.a.leq(&x, &y)
    }
    fn c(&self, x: usize, y: usize) -> usize {
        self.a.comp(&x, &y)
    }
    fn d(&self, x: usize) -> usize {
        self.a.dom(&x)
    }
    fn r(&self, x: usize) -> usize {
        self.a.ran(&x)
    }
    fn v(&self, x: usize) -> usize {
        self.a.conv(&x)
    }
}

/// Checks partial order with bottom, isotonicity, normality, the involuted
/// monoid laws, (D1)–(D9), the duals of (D1)–(D8), and the two derived
/// inequalities `dom(b;c);b ≥ b;dom(c)` and `b;ran(c;b) ≥ ran(c);b`.
pub fn check_axioms(a: &AbstractOda) -> AxiomReport {
    let k = Checker { a, n: a.len() };
    let (zero, id) = (a.zero(), a.one());
    let mut verdicts = Vec::with_capacity(LAWS.len());
    let mut push = |law: &'static str, witness: Option<Vec<usize>>| verdicts.push(LawVerdict { law, witness });

    push(
        "partial-order",
        k.all1(|x| k.le(x, x))
            .or_else(|| k.all2(|x, y| !(k.le(x, y) && k.le(y, x)) || x == y))
            .or_else(|| k.all3(|x, y, z| !(k.le(x, y) && k.le(y, z)) || k.le(x, z))),
    );
    push("bottom", k.all1(|x| k.le(zero, x)));
    push("isotone-conv", k.all2(|x, y| !k.le(x, y) || k.le(k.v(x), k.v(y))));
    push(
        "isotone-comp",
        k.all3(|x, y, z| !k.le(x, y) || (k.le(k.c(x, z), k.c(y, z)) && k.le(k.c(z, x), k.c(z, y)))),
    );
    push("isotone-dom", k.all2(|x, y| !k.le(x, y) || k.le(k.d(x), k.d(y))));
    push("isotone-ran", k.all2(|x, y| !k.le(x, y) || k.le(k.r(x), k.r(y))));
    push(
        "normality",
        (!(k.v(zero) == zero && k.d(zero) == zero && k.r(zero) == zero))
            .then(|| vec![zero])
            .or_else(|| k.all1(|x| k.c(zero, x) == zero && k.c(x, zero) == zero)),
    );
    push("associativity", k.all3(|x, y, z| k.c(k.c(x, y), z) == k.c(x, k.c(y, z))));
    push("identity", k.all1(|x| k.c(id, x) == x && k.c(x, id) == x));
    push("id-self-converse", (k.v(id) != id).then(|| vec![id]));
    push("involution", k.all1(|x| k.v(k.v(x)) == x));
    push("conv-antidistributes", k.all2(|x, y| k.v(k.c(x, y)) == k.c(k.v(y), k.v(x))));

    // dom(a) = dom(a)˘ ≤ id = dom(id)
    push(
        "D1",
        (k.d(id) != id).then(|| vec![id]).or_else(|| k.all1(|x| k.d(x) == k.v(k.d(x)) && k.le(k.d(x), id))),
    );
    push("D2", k.all1(|x| k.le(k.d(x), k.c(x, k.v(x)))));
    push("D3", k.all1(|x| k.d(k.v(x)) == k.r(x)));
    push("D4", k.all1(|x| k.d(k.d(x)) == k.d(x) && k.r(k.d(x)) == k.d(x)));
    push("D5", k.all1(|x| k.c(k.d(x), x) == x));
    push("D6", k.all2(|x, y| k.d(k.c(x, y)) == k.d(k.c(x, k.d(y)))));
    push(
        "D7",
        k.all2(|x, y| {
            let dd = k.c(k.d(x), k.d(y));
            k.d(dd) == dd && dd == k.c(k.d(y), k.d(x))
        }),
    );
    push("D8", k.all2(|x, y| k.d(k.c(k.d(x), y)) == k.c(k.d(x), k.d(y))));
    push("D9", k.all1(|x| k.c(k.d(x), k.d(x)) == k.d(x)));

    push(
        "D1-dual",
        (k.r(id) != id).then(|| vec![id]).or_else(|| k.all1(|x| k.r(x) == k.v(k.r(x)) && k.le(k.r(x), id))),
    );
    push("D2-dual", k.all1(|x| k.le(k.r(x), k.c(k.v(x), x))));
    push("D3-dual", k.all1(|x| k.r(k.v(x)) == k.d(x)));
    push("D4-dual", k.all1(|x| k.r(k.r(x)) == k.r(x) && k.d(k.r(x)) == k.r(x)));
    push("D5-dual", k.all1(|x| k.c(x, k.r(x)) == x));
    // ran(b;a) = ran(ran(b);a), checked with (a, b) = (x, y)
    push("D6-dual", k.all2(|x, y| k.r(k.c(y, x)) == k.r(k.c(k.r(y), x))));
    push(
        "D7-dual",
        k.all2(|x, y| {
            let rr = k.c(k.r(x), k.r(y));
            k.r(rr) == rr && rr == k.c(k.r(y), k.r(x))
        }),
    );
    push("D8-dual", k.all2(|x, y| k.r(k.c(y, k.r(x))) == k.c(k.r(y), k.r(x))));

    push("dab-dom", k.all2(|b, c| k.le(k.c(b, k.d(c)), k.c(k.d(k.c(b, c)), b))));
    push("dab-ran", k.all2(|b, c| k.le(k.c(k.r(c), b), k.c(b, k.r(k.c(c, b))))));

    debug_assert_eq!(verdicts.iter().map(|v| v.law).collect::<Vec<_>>(), LAWS);
    AxiomReport { verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oda::{generate_subalgebra, FullProperOda, DEFAULT_ALGEBRA_LIMIT};
    use crate::poset::FinitePoset;
    use crate::relation::BinRel;

    fn trivial() -> AbstractOda {
        AbstractOda::new(FinitePoset::chain(1), vec![vec![0]], vec![0], vec![0], vec![0], 0, 0).unwrap()
    }

    #[test]
    fn degenerate_algebra_passes() {
        assert!(check_axioms(&trivial()).all_hold());
    }

    #[test]
    fn full_base_two_passes_everything() {
        let f = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
        let r = check_axioms(&f.algebra);
        assert!(r.all_hold(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.verdicts.len(), LAWS.len());
    }

    #[test]
    fn single_cell_mutation_is_detected() {
        let x = BinRel::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let a = generate_subalgebra(2, &[x], DEFAULT_ALGEBRA_LIMIT).unwrap().algebra;
        let xi = 2.min(a.len() - 1);
        let id = a.id_index();
        let mutated = a.with_comp_entry(id, xi, a.zero_index()).unwrap();
        let r = check_axioms(&mutated);
        assert!(!r.all_hold());
        let f = r.failures().next().unwrap();
        assert!(f.witness.is_some());
        assert!(!r.holds("identity"));
    }
}
