//! Orders and up-sets kept as antichains of their minimal elements.

use alloc::vec::Vec;
use core::fmt;

/// A partial order over some element type.
///
/// Implemented by explicit finite posets (elements are indices) and by
/// virtual carriers such as the full algebra of relations over a base,
/// whose elements are never listed.
pub trait Order {
    type Elem: Clone + Ord + fmt::Debug;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }
}

impl<O: Order + ?Sized> Order for &O {
    type Elem = O::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).leq(a, b)
    }
}

/// An up-closed set, stored as the sorted antichain of its minimal elements.
///
/// Two up-sets over the same order are equal iff their antichains are
/// equal. The empty antichain is the empty up-set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpSet<E> {
    minimals: Vec<E>,
}

impl<E: Clone + Ord + fmt::Debug> UpSet<E> {
    pub fn empty() -> Self {
        UpSet { minimals: Vec::new() }
    }

    pub fn principal(e: E) -> Self {
        UpSet { minimals: alloc::vec![e] }
    }

    /// `S↑` for an arbitrary generating set `S`.
    pub fn generated_by<O, I>(order: &O, gens: I) -> Self
    where
        O: Order<Elem = E> + ?Sized,
        I: IntoIterator<Item = E>,
    {
        let mut cands: Vec<E> = gens.into_iter().collect();
        cands.sort();
        cands.dedup();
        let minimals = cands
            .iter()
            .filter(|x| !cands.iter().any(|y| y != *x && order.leq(y, x)))
            .cloned()
            .collect();
        UpSet { minimals }
    }

    /// Wraps an antichain that is already sorted and minimal.
    pub(crate) fn from_antichain_unchecked(minimals: Vec<E>) -> Self {
        UpSet { minimals }
    }

    pub fn minimals(&self) -> &[E] {
        &self.minimals
    }

    pub fn into_minimals(self) -> Vec<E> {
        self.minimals
    }

    pub fn is_empty(&self) -> bool {
        self.minimals.is_empty()
    }

    pub fn contains<O: Order<Elem = E> + ?Sized>(&self, order: &O, x: &E) -> bool {
        self.minimals.iter().any(|m| order.leq(m, x))
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of<O: Order<Elem = E> + ?Sized>(&self, order: &O, other: &Self) -> bool {
        self.minimals.iter().all(|m| other.contains(order, m))
    }

    pub fn union<O: Order<Elem = E> + ?Sized>(&self, order: &O, other: &Self) -> Self {
        UpSet::generated_by(order, self.minimals.iter().chain(&other.minimals).cloned())
    }

    /// `f[S]↑`. Equals the image of the whole set whenever `f` is isotone.
    pub fn image<O, F>(&self, order: &O, f: F) -> Self
    where
        O: Order<Elem = E> + ?Sized,
        F: FnMut(&E) -> E,
    {
        UpSet::generated_by(order, self.minimals.iter().map(f))
    }
}
