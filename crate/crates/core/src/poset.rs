//! Finite posets, their up-set lattices, completion maps and finite powers of
//! completions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::order::{Order, UpSet};

/// Default ceiling on the number of up-sets any enumeration may produce.
pub const DEFAULT_UPSET_LIMIT: usize = 1 << 20;

/// Default ceiling on the carrier size of product posets.
pub const DEFAULT_PRODUCT_LIMIT: usize = 4096;

/// A finite poset over the indices `0..len`, each carrying a distinct label.
///
/// The order is validated at construction. Index order is the canonical
/// element order used by every enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: BitMatrix,
    down: BitMatrix,
}

impl FinitePoset {
    /// Builds a poset from an explicit list of `(i, j)` pairs meaning `i ≤ j`.
    ///
    /// No reflexive or transitive closure is applied: the pairs must already
    /// describe a partial order.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut m = BitMatrix::new(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::input(format!("order pair ({i}, {j}) out of range for {n} elements")));
            }
            m.set(i, j);
        }
        Self::from_matrix(labels, m)
    }

    pub fn from_fn(labels: Vec<String>, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    m.set(i, j);
                }
            }
        }
        Self::from_matrix(labels, m)
    }

    pub fn from_matrix(labels: Vec<String>, up: BitMatrix) -> Result<Self> {
        let n = labels.len();
        if up.size() != n {
            return Err(Error::input("order matrix size does not match the element count"));
        }
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate element `{}`", w[0])));
        }
        for i in 0..n {
            if !up.get(i, i) {
                return Err(Error::input(format!("order is not reflexive at `{}`", labels[i])));
            }
            for j in up.row(i).iter() {
                if j != i && up.get(j, i) {
                    return Err(Error::input(format!(
                        "order is not antisymmetric: `{}` and `{}`",
                        labels[i], labels[j]
                    )));
                }
                if !up.row(j).is_subset(up.row(i)) {
                    let k = up.row(j).iter().find(|&k| !up.get(i, k)).unwrap();
                    return Err(Error::input(format!(
                        "order is not transitive: `{}` ≤ `{}` ≤ `{}`",
                        labels[i], labels[j], labels[k]
                    )));
                }
            }
        }
        let down = up.transpose();
        Ok(FinitePoset { labels, up, down })
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(default_labels(n), |i, j| i <= j).expect("chain is a partial order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(default_labels(n), |i, j| i == j).expect("antichain is a partial order")
    }

    /// The Boolean lattice of subsets of an `k`-element set, ordered by inclusion.
    pub fn boolean_lattice(k: u32) -> Self {
        let n = 1usize << k;
        let labels = (0..n).map(|i| format!("{i:0w$b}", w = k as usize)).collect();
        Self::from_fn(labels, |i, j| i & !j == 0).expect("boolean lattice is a partial order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Elements above `i` (inclusive).
    pub fn above(&self, i: usize) -> &BitSet {
        self.up.row(i)
    }

    /// Elements below `i` (inclusive).
    pub fn below(&self, i: usize) -> &BitSet {
        self.down.row(i)
    }

    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        self.up.pairs().collect()
    }

    pub fn up_closure(&self, s: &[usize]) -> Result<UpSet<usize>> {
        if let Some(&bad) = s.iter().find(|&&x| x >= self.len()) {
            return Err(Error::input(format!("element {bad} is not in the carrier")));
        }
        Ok(UpSet::generated_by(self, s.iter().copied()))
    }

    pub fn principal(&self, p: usize) -> UpSet<usize> {
        UpSet::principal(p)
    }

    /// The whole carrier as an up-set.
    pub fn carrier_upset(&self) -> UpSet<usize> {
        UpSet::generated_by(self, 0..self.len())
    }

    pub fn members(&self, u: &UpSet<usize>) -> BitSet {
        let mut out = BitSet::new(self.len());
        for &m in u.minimals() {
            out.union_with(self.above(m));
        }
        out
    }

    /// The up-set whose members are exactly `members`, which must be up-closed.
    pub fn upset_from_members(&self, members: &BitSet) -> UpSet<usize> {
        let mins = members
            .iter()
            .filter(|&x| self.below(x).iter().all(|y| y == x || !members.contains(y)))
            .collect();
        UpSet::from_antichain_unchecked(mins)
    }

    pub fn is_up_closed(&self, members: &BitSet) -> bool {
        members.iter().all(|x| self.above(x).is_subset(members))
    }

    pub fn intersection(&self, a: &UpSet<usize>, b: &UpSet<usize>) -> UpSet<usize> {
        let mut m = self.members(a);
        m.intersect_with(&self.members(b));
        self.upset_from_members(&m)
    }

    /// Every up-set of the poset, `∅` first, in a fixed depth-first order.
    ///
    /// Fails once more than `limit` up-sets have been produced.
    pub fn all_up_sets(&self, limit: usize) -> Result<Vec<UpSet<usize>>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        // Elements comparable to something already chosen are blocked.
        let mut blocked = vec![0u32; n];
        self.antichains_from(0, &mut chosen, &mut blocked, &mut out, limit)?;
        Ok(out)
    }

    fn antichains_from(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        blocked: &mut [u32],
        out: &mut Vec<UpSet<usize>>,
        limit: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Err(Error::Guard { what: "up-set enumeration", limit });
        }
        out.push(UpSet::from_antichain_unchecked(chosen.clone()));
        for i in start..self.len() {
            if blocked[i] > 0 {
                continue;
            }
            let comparable: Vec<usize> = self.above(i).iter().chain(self.below(i).iter()).collect();
            for &c in &comparable {
                blocked[c] += 1;
            }
            chosen.push(i);
            let r = self.antichains_from(i + 1, chosen, blocked, out, limit);
            chosen.pop();
            for &c in &comparable {
                blocked[c] -= 1;
            }
            r?;
        }
        Ok(())
    }

    /// Greatest lower bound of `items`; the meet of no elements is the top.
    pub fn meet(&self, items: &[usize]) -> Option<usize> {
        let mut lower = BitSet::full(self.len());
        for &i in items {
            lower.intersect_with(self.below(i));
        }
        let glb = lower.iter().find(|&g| lower.is_subset(self.below(g)));
        glb
    }

    /// Least upper bound of `items`; the join of no elements is the bottom.
    pub fn join(&self, items: &[usize]) -> Option<usize> {
        let mut upper = BitSet::full(self.len());
        for &i in items {
            upper.intersect_with(self.above(i));
        }
        let lub = upper.iter().find(|&l| upper.is_subset(self.above(l)));
        lub
    }

    pub fn top(&self) -> Option<usize> {
        self.meet(&[])
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join(&[])
    }

    /// For finite posets: non-empty, bounded, and every pair has a meet and a join.
    pub fn is_complete_lattice(&self) -> bool {
        if self.is_empty() || self.top().is_none() || self.bottom().is_none() {
            return false;
        }
        (0..self.len()).all(|i| {
            (i + 1..self.len()).all(|j| self.meet(&[i, j]).is_some() && self.join(&[i, j]).is_some())
        })
    }

    /// The lattice `P*` of all up-sets ordered by reverse inclusion, together
    /// with the up-set each element stands for.
    pub fn up_set_lattice(&self, limit: usize) -> Result<(FinitePoset, Vec<UpSet<usize>>)> {
        let sets = self.all_up_sets(limit)?;
        let lattice = self.reverse_inclusion_poset(&sets)?;
        Ok((lattice, sets))
    }

    /// Orders a family of distinct up-sets by `⊇`.
    pub fn reverse_inclusion_poset(&self, sets: &[UpSet<usize>]) -> Result<FinitePoset> {
        let members: Vec<BitSet> = sets.iter().map(|s| self.members(s)).collect();
        let labels = sets.iter().map(|s| self.format_upset(s)).collect();
        FinitePoset::from_fn(labels, |i, j| members[j].is_subset(&members[i]))
    }

    pub fn format_upset(&self, u: &UpSet<usize>) -> String {
        let inner: Vec<&str> = u.minimals().iter().map(|&m| self.label(m)).collect();
        format!("{{{}}}↑", inner.join(","))
    }

    /// `P^n` with the componentwise order; tuples are indexed lexicographically.
    pub fn power(&self, n: usize, limit: usize) -> Result<FinitePoset> {
        let size = checked_pow(self.len(), n).filter(|&s| s <= limit);
        let size = size.ok_or(Error::Guard { what: "product carrier", limit })?;
        let tuples: Vec<Vec<usize>> = (0..size).map(|i| decode_tuple(i, self.len(), n)).collect();
        let labels = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().map(|&c| self.label(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        FinitePoset::from_fn(labels, |i, j| {
            tuples[i].iter().zip(&tuples[j]).all(|(&a, &b)| self.leq(&a, &b))
        })
    }

    /// The sub-poset on `keep` (in the given order) with the inherited order.
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        FinitePoset::from_fn(labels, |i, j| self.leq(&keep[i], &keep[j]))
            .expect("restriction of a partial order is a partial order")
    }
}

impl Order for FinitePoset {
    type Elem = usize;

    #[inline]
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.up.get(*a, *b)
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn checked_pow(base: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Components of the `index`-th tuple of `{0..radix}^n`, most significant first.
pub fn decode_tuple(mut index: usize, radix: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    t
}

pub fn encode_tuple(t: &[usize], radix: usize) -> usize {
    t.iter().fold(0, |acc, &c| acc * radix + c)
}

/// An order-preserving map from a finite poset into a finite poset that is
/// meant to be a complete lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionMap {
    source: FinitePoset,
    target: FinitePoset,
    map: Vec<usize>,
}

impl CompletionMap {
    pub fn new(source: FinitePoset, target: FinitePoset, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::input("completion map is not total on the source"));
        }
        if let Some(&bad) = map.iter().find(|&&q| q >= target.len()) {
            return Err(Error::input(format!("completion map sends an element to {bad}, outside the target")));
        }
        Ok(CompletionMap { source, target, map })
    }

    /// `ι : P → P*`, `p ↦ p↑`.
    pub fn up_set_embedding(poset: &FinitePoset, limit: usize) -> Result<Self> {
        let (lattice, sets) = poset.up_set_lattice(limit)?;
        let map = (0..poset.len())
            .map(|p| sets.iter().position(|s| s.minimals() == [p]).expect("principal up-sets are enumerated"))
            .collect();
        CompletionMap::new(poset.clone(), lattice, map)
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_order_embedding(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|p| {
            (0..n).all(|q| self.source.leq(&p, &q) == self.target.leq(&self.map[p], &self.map[q]))
        })
    }

    /// Images lying above `q`, in source order.
    pub fn images_above(&self, q: usize) -> Vec<usize> {
        self.map.iter().copied().filter(|&img| self.target.leq(&q, &img)).collect()
    }

    /// Whether the map is an order embedding with a meet-dense image.
    ///
    /// Errors when the target is not a complete lattice.
    pub fn is_meet_completion(&self) -> Result<bool> {
        if !self.target.is_complete_lattice() {
            return Err(Error::input("completion target is not a complete lattice"));
        }
        Ok(self.is_order_embedding() && self.first_non_dense_point().is_none())
    }

    /// The first target element that is not the meet of the images above it.
    pub fn first_non_dense_point(&self) -> Option<usize> {
        (0..self.target.len()).find(|&q| self.target.meet(&self.images_above(q)) != Some(q))
    }

    /// Whether the source has a top element sent to the top of the target.
    pub fn preserves_top(&self) -> bool {
        match (self.source.top(), self.target.top()) {
            (Some(t), Some(tq)) => self.map[t] == tq,
            _ => false,
        }
    }

    /// `e^n : P^n → Q^n`, applied componentwise.
    pub fn power(&self, n: usize, limit: usize) -> Result<CompletionMap> {
        if n == 0 {
            return Err(Error::input("product exponent must be positive"));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let source = self.source.power(n, limit)?;
        let target = self.target.power(n, limit)?;
        let (sn, tn) = (self.source.len(), self.target.len());
        let map = (0..source.len())
            .map(|i| {
                let t: Vec<usize> = decode_tuple(i, sn, n).into_iter().map(|p| self.map[p]).collect();
                encode_tuple(&t, tn)
            })
            .collect();
        CompletionMap::new(source, target, map)
    }

    /// `e^n` into the sub-lattice of `Q^n` left after removing every tuple
    /// that lies below no image tuple, other than the top.
    pub fn restrict_product(&self, n: usize, limit: usize) -> Result<ProductRestriction> {
        let full = self.power(n, limit)?;
        let top = full.target.top();
        let (kept, removed): (Vec<usize>, Vec<usize>) = (0..full.target.len())
            .partition(|&q| Some(q) == top || !full.images_above(q).is_empty());
        let target = full.target.restrict(&kept);
        let map = full
            .map
            .iter()
            .map(|img| kept.iter().position(|k| k == img).expect("images are never removed"))
            .collect();
        let restricted = CompletionMap::new(full.source.clone(), target, map)?;
        Ok(ProductRestriction { full, restricted, kept, removed })
    }
}

/// Result of [`CompletionMap::restrict_product`].
#[derive(Clone, Debug)]
pub struct ProductRestriction {
    /// The unrestricted `e^n : P^n → Q^n`.
    pub full: CompletionMap,
    pub restricted: CompletionMap,
    /// Indices into `full.target()` that survive.
    pub kept: Vec<usize>,
    /// Indices into `full.target()` that were dropped.
    pub removed: Vec<usize>,
}

impl ProductRestriction {
    pub fn removed_labels(&self) -> Vec<&str> {
        self.removed.iter().map(|&q| self.full.target().label(q)).collect()
    }

    pub fn is_unrestricted(&self) -> bool {
        self.removed.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn square() -> FinitePoset {
        // ⊥ < l, r < ⊤
        FinitePoset::from_pairs(
            labels(&["bot", "l", "r", "top"]),
            &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    /// `P = {p}`, `Q = {q < ⊤}`, `e(p) = q`.
    fn lonely_point() -> CompletionMap {
        let p = FinitePoset::from_pairs(labels(&["p"]), &[(0, 0)]).unwrap();
        let q = FinitePoset::from_pairs(labels(&["q", "T"]), &[(0, 0), (1, 1), (0, 1)]).unwrap();
        CompletionMap::new(p, q, vec![0]).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        let l = labels(&["a", "b"]);
        assert!(FinitePoset::from_pairs(l.clone(), &[(0, 0)]).is_err());
        assert!(FinitePoset::from_pairs(l.clone(), &[(0, 0), (1, 1), (0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::from_pairs(labels(&["a", "a"]), &[(0, 0), (1, 1)]).is_err());
        assert!(FinitePoset::from_pairs(l.clone(), &[(0, 0), (1, 1), (0, 7)]).is_err());
        let l3 = labels(&["a", "b", "c"]);
        let err = FinitePoset::from_pairs(l3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap_err();
        assert!(matches!(err, Error::Input(ref m) if m.contains("transitive")));
    }

    #[test]
    fn up_closure_examples() {
        let p = FinitePoset::chain(2);
        assert!(p.up_closure(&[]).unwrap().is_empty());
        let a = p.up_closure(&[0]).unwrap();
        assert_eq!(a.minimals(), &[0]);
        assert_eq!(p.members(&a).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(p.up_closure(&[5]).is_err());

        let sq = square();
        let u = sq.up_closure(&[1, 2]).unwrap();
        assert_eq!(u.minimals(), &[1, 2]);
        assert_eq!(sq.members(&u).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(sq.up_closure(&[1, 2, 3]).unwrap(), u);
    }

    #[test]
    fn up_set_counts() {
        assert_eq!(FinitePoset::chain(1).all_up_sets(DEFAULT_UPSET_LIMIT).unwrap().len(), 2);
        assert_eq!(FinitePoset::antichain(2).all_up_sets(DEFAULT_UPSET_LIMIT).unwrap().len(), 4);
        assert_eq!(FinitePoset::chain(5).all_up_sets(DEFAULT_UPSET_LIMIT).unwrap().len(), 6);
        let err = FinitePoset::antichain(12).all_up_sets(1000).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn lattice_recognition() {
        assert!(!FinitePoset::antichain(2).is_complete_lattice());
        assert!(FinitePoset::chain(4).is_complete_lattice());
        assert!(square().is_complete_lattice());
        assert!(!FinitePoset::antichain(0).is_complete_lattice());
        assert_eq!(square().meet(&[1, 2]), Some(0));
        assert_eq!(square().join(&[1, 2]), Some(3));
        assert_eq!(square().meet(&[]), Some(3));
    }

    #[test]
    fn iota_is_a_meet_completion_but_misses_the_top() {
        let c = FinitePoset::chain(3);
        let iota = CompletionMap::up_set_embedding(&c, DEFAULT_UPSET_LIMIT).unwrap();
        assert!(iota.is_meet_completion().unwrap());
        // The top of P* is ∅, which is not the image of the top of P.
        assert!(!iota.preserves_top());
    }

    #[test]
    fn square_of_lonely_point_is_not_dense() {
        let e = lonely_point();
        assert!(e.is_meet_completion().unwrap());
        let e1 = e.power(1, DEFAULT_PRODUCT_LIMIT).unwrap();
        assert_eq!(e1, e);
        let e2 = e.power(2, DEFAULT_PRODUCT_LIMIT).unwrap();
        assert_eq!(e2.target().len(), 4);
        assert!(!e2.is_meet_completion().unwrap());

        let r = e.restrict_product(2, DEFAULT_PRODUCT_LIMIT).unwrap();
        assert_eq!(r.removed_labels(), vec!["(q,T)", "(T,q)"]);
        assert_eq!(r.restricted.target().labels(), &["(q,q)".to_string(), "(T,T)".to_string()]);
        assert!(r.restricted.is_meet_completion().unwrap());
    }

    #[test]
    fn top_preserving_completion_needs_no_restriction() {
        let c = FinitePoset::chain(2);
        let e = CompletionMap::new(c.clone(), c, vec![0, 1]).unwrap();
        assert!(e.preserves_top());
        let r = e.restrict_product(3, DEFAULT_PRODUCT_LIMIT).unwrap();
        assert!(r.is_unrestricted());
        assert!(r.full.is_meet_completion().unwrap());
        assert!(e.restrict_product(1, DEFAULT_PRODUCT_LIMIT).unwrap().is_unrestricted());
    }

    #[test]
    fn non_lattice_target_is_an_input_error() {
        let a = FinitePoset::antichain(2);
        let e = CompletionMap::new(a.clone(), a, vec![0, 1]).unwrap();
        assert!(e.is_meet_completion().is_err());
    }

    #[test]
    fn power_guard() {
        let e = lonely_point();
        assert!(e.power(13, 4096).unwrap_err().is_guard());
        assert!(e.power(0, 4096).is_err());
    }
}
