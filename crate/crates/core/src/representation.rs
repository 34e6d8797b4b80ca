//! The representation of a finite ordered domain algebra over its closed
//! up-sets: `(X,Y) ∈ h(a)` iff `X ∘C a↑ ⊆ Y` and `Y ∘C (a˘)↑ ⊆ X`.

use alloc::vec::Vec;

use crate::axioms::check_axioms;
use crate::bits::{BitMatrix, BitSet};
use crate::completion::{enumerate_closed_sets, ClosedUpSet, OdaClosure};
use crate::error::{Error, Result};
use crate::oda::{AbstractOda, OdaOps};
use crate::order::{Order, UpSet};

#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: AbstractOda,
    /// Closed up-sets other than `∅` and `0↑`.
    pub base: Vec<ClosedUpSet<usize>>,
    /// `image[a]` is `h(a)` as a relation on indices into `base`.
    pub image: Vec<BitMatrix>,
}

impl Representation {
    pub fn base_size(&self) -> usize {
        self.base.len()
    }

    pub fn pairs(&self, a: usize) -> Vec<(usize, usize)> {
        self.image[a].pairs().collect()
    }
}

/// Builds `h` by evaluating the defining biconditional on every pair of
/// base points.
pub fn build_representation(a: &AbstractOda, limit: usize) -> Result<Representation> {
    if let Some(bad) = check_axioms(a).failures().next() {
        return Err(Error::input(alloc::format!("algebra violates {}", bad.law)));
    }
    let g = OdaClosure::new(a);
    let zero = a.zero();
    let base: Vec<_> = enumerate_closed_sets(a, limit)?
        .into_iter()
        .filter(|c| !c.as_upset().is_empty() && !c.as_upset().contains(a, &zero))
        .collect();
    let members: Vec<BitSet> = base.iter().map(|c| a.poset().members(c.as_upset())).collect();
    // times[x][e] = members of X ∘C e↑
    let times: Vec<Vec<BitSet>> = base
        .iter()
        .map(|x| {
            (0..a.len())
                .map(|e| g.comp_c(x, &g.principal(e)).map(|c| a.poset().members(c.as_upset())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let n = base.len();
    let image = (0..a.len())
        .map(|e| {
            let ev = a.conv(&e);
            let mut m = BitMatrix::new(n);
            for x in 0..n {
                for y in 0..n {
                    if times[x][e].is_subset(&members[y]) && times[y][ev].is_subset(&members[x]) {
                        m.set(x, y);
                    }
                }
            }
            m
        })
        .collect();
    Ok(Representation { algebra: a.clone(), base, image })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseVerdict {
    pub clause: &'static str,
    /// First failing element tuple.
    pub witness: Option<Vec<usize>>,
}

impl ClauseVerdict {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub clauses: Vec<ClauseVerdict>,
}

impl RepresentationReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(ClauseVerdict::holds)
    }

    pub fn get(&self, clause: &str) -> Option<&ClauseVerdict> {
        self.clauses.iter().find(|c| c.clause == clause)
    }
}

pub const REPRESENTATION_CLAUSES: &[&str] = &["well-formed", "order", "comp", "dom", "ran", "conv", "zero", "identity"];

pub fn verify_representation(r: &Representation) -> RepresentationReport {
    let a = &r.algebra;
    let n = a.len();
    let size = r.base.len();
    let h = &r.image;
    let mut clauses = Vec::new();
    let mut push = |clause, witness| clauses.push(ClauseVerdict { clause, witness });

    let bad_shape = (0..n).find(|&x| h.get(x).is_none_or(|m| m.size() != size));
    push("well-formed", (h.len() != n).then(|| alloc::vec![h.len()]).or(bad_shape.map(|x| alloc::vec![x])));
    if bad_shape.is_some() || h.len() != n {
        return RepresentationReport { clauses };
    }

    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    push(
        "order",
        pairs().find(|&(x, y)| a.leq(&x, &y) != h[x].is_subset(&h[y])).map(|(x, y)| alloc::vec![x, y]),
    );
    push(
        "comp",
        pairs().find(|&(x, y)| h[a.comp(&x, &y)] != h[x].compose(&h[y])).map(|(x, y)| alloc::vec![x, y]),
    );
    let unary = |op: &dyn Fn(usize) -> usize, lift: &dyn Fn(&BitMatrix) -> BitMatrix| {
        (0..n).find(|&x| h[op(x)] != lift(&h[x])).map(|x| alloc::vec![x])
    };
    push("dom", unary(&|x| a.dom(&x), &|m| m.domain_diagonal()));
    push("ran", unary(&|x| a.ran(&x), &|m| m.transpose().domain_diagonal()));
    push("conv", unary(&|x| a.conv(&x), &|m| m.transpose()));
    push("zero", (!h[a.zero()].is_empty()).then(|| alloc::vec![a.zero()]));
    push("identity", (h[a.one()] != BitMatrix::identity(size)).then(|| alloc::vec![a.one()]));
    RepresentationReport { clauses }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrpSummary {
    pub algebra_size: usize,
    pub closed_sets: usize,
    pub base_size: usize,
    pub verified: bool,
}

pub fn frp_report(a: &AbstractOda, limit: usize) -> Result<FrpSummary> {
    let r = build_representation(a, limit)?;
    let closed_sets = enumerate_closed_sets(a, limit)?.len();
    Ok(FrpSummary {
        algebra_size: a.len(),
        closed_sets,
        base_size: r.base.len(),
        verified: verify_representation(&r).all_hold(),
    })
}

/// Renders a base point through its minimal elements.
pub fn base_point_minimals(r: &Representation, i: usize) -> &[usize] {
    let u: &UpSet<usize> = r.base[i].as_upset();
    u.minimals()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oda::{generate_subalgebra, FullProperOda, DEFAULT_ALGEBRA_LIMIT};
    use crate::poset::DEFAULT_UPSET_LIMIT;
    use crate::relation::BinRel;

    #[test]
    fn base_one_full_algebra() {
        let p = FullProperOda::new(1).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
        let r = build_representation(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
        assert_eq!(r.base.len(), 1);
        let id = p.algebra.one();
        assert_eq!(base_point_minimals(&r, 0), &[id]);
        assert_eq!(r.pairs(id), [(0, 0)]);
        assert!(r.pairs(p.algebra.zero()).is_empty());
        assert!(verify_representation(&r).all_hold());
    }

    #[test]
    fn swap_subalgebra_is_represented() {
        let x = BinRel::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let p = generate_subalgebra(2, &[x], DEFAULT_ALGEBRA_LIMIT).unwrap();
        let r = build_representation(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
        let report = verify_representation(&r);
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn mutated_image_is_caught() {
        let p = FullProperOda::new(2).unwrap().materialize(DEFAULT_ALGEBRA_LIMIT).unwrap();
        let mut r = build_representation(&p.algebra, DEFAULT_UPSET_LIMIT).unwrap();
        assert!(verify_representation(&r).all_hold());
        let id = p.algebra.one();
        let n = r.base.len();
        r.image[id] = BitMatrix::new(n);
        let report = verify_representation(&r);
        assert!(!report.all_hold());
        assert!(!report.get("identity").unwrap().holds());
    }
}
