//! Ordered domain algebras: the operation signature, finite algebras given
//! by tables, and concrete algebras of binary relations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::order::Order;
use crate::poset::FinitePoset;
use crate::relation::BinRel;
use crate::term::Signature;

/// Default ceiling on the size of generated algebras.
pub const DEFAULT_ALGEBRA_LIMIT: usize = 4096;

/// Operation indices in [`oda_signature`].
pub mod op {
    pub const COMP: usize = 0;
    pub const DOM: usize = 1;
    pub const RAN: usize = 2;
    pub const CONV: usize = 3;
    pub const ZERO: usize = 4;
    pub const ID: usize = 5;
}

/// `comp/2, dom/1, ran/1, conv/1, zero/0, id/0`.
pub fn oda_signature() -> Signature {
    Signature::new([("comp", 2), ("dom", 1), ("ran", 1), ("conv", 1), ("zero", 0), ("id", 0)])
}

/// The ordered-domain-algebra signature over an ordered carrier.
pub trait OdaOps: Order {
    fn comp(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn dom(&self, a: &Self::Elem) -> Self::Elem;
    fn ran(&self, a: &Self::Elem) -> Self::Elem;
    fn conv(&self, a: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
}

impl<O: OdaOps + ?Sized> OdaOps for &O {
    fn comp(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).comp(a, b)
    }
    fn dom(&self, a: &Self::Elem) -> Self::Elem {
        (**self).dom(a)
    }
    fn ran(&self, a: &Self::Elem) -> Self::Elem {
        (**self).ran(a)
    }
    fn conv(&self, a: &Self::Elem) -> Self::Elem {
        (**self).conv(a)
    }
    fn zero(&self) -> Self::Elem {
        (**self).zero()
    }
    fn one(&self) -> Self::Elem {
        (**self).one()
    }
}

/// Views an ODA as a poset expansion over [`oda_signature`].
pub struct OdaExpansion<O> {
    oda: O,
    signature: Signature,
}

impl<O: OdaOps> OdaExpansion<O> {
    pub fn new(oda: O) -> Self {
        OdaExpansion { oda, signature: oda_signature() }
    }

    pub fn oda(&self) -> &O {
        &self.oda
    }
}

impl<O: OdaOps> Order for OdaExpansion<O> {
    type Elem = O::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.oda.leq(a, b)
    }
}

impl<O: OdaOps> Expansion for OdaExpansion<O> {
    fn signature(&self) -> &Signature {
        &self.signature
    }

    fn apply_op(&self, o: usize, args: &[Self::Elem]) -> Self::Elem {
        match o {
            op::COMP => self.oda.comp(&args[0], &args[1]),
            op::DOM => self.oda.dom(&args[0]),
            op::RAN => self.oda.ran(&args[0]),
            op::CONV => self.oda.conv(&args[0]),
            op::ZERO => self.oda.zero(),
            op::ID => self.oda.one(),
            _ => panic!("operation index {o} is outside the ODA signature"),
        }
    }
}

/// A finite algebra in the ODA signature, given by operation tables.
///
/// Construction checks that the tables are total and the order is a
/// partial order; the algebraic laws are checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractOda {
    poset: FinitePoset,
    comp: Vec<usize>,
    conv: Vec<usize>,
    dom: Vec<usize>,
    ran: Vec<usize>,
    zero: usize,
    id: usize,
}

impl AbstractOda {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        poset: FinitePoset,
        comp: Vec<Vec<usize>>,
        conv: Vec<usize>,
        dom: Vec<usize>,
        ran: Vec<usize>,
        zero: usize,
        id: usize,
    ) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::input("an algebra needs at least one element"));
        }
        if comp.len() != n || comp.iter().any(|row| row.len() != n) {
            return Err(Error::input(format!("composition table must be {n}×{n}")));
        }
        for (name, t) in [("conv", &conv), ("dom", &dom), ("ran", &ran)] {
            if t.len() != n {
                return Err(Error::input(format!("`{name}` table must have {n} entries")));
            }
        }
        let comp: Vec<usize> = comp.into_iter().flatten().collect();
        let in_range = |t: &[usize]| t.iter().all(|&v| v < n);
        if !in_range(&comp) || !in_range(&conv) || !in_range(&dom) || !in_range(&ran) || zero >= n || id >= n {
            return Err(Error::input("operation table entry outside the carrier"));
        }
        Ok(AbstractOda { poset, comp, conv, dom, ran, zero, id })
    }

    /// Tables read off a list of distinct relations closed under the operations.
    pub fn from_relations(rels: &[BinRel]) -> Result<Self> {
        let index = |r: &BinRel| {
            rels.binary_search(r).map_err(|_| Error::input(format!("relation {r} missing from a non-closed family")))
        };
        if rels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("relations must be sorted and distinct"));
        }
        let base = rels.first().map(BinRel::base).ok_or_else(|| Error::input("empty relation family"))?;
        let labels = rels.iter().map(ToString::to_string).collect();
        let poset = FinitePoset::from_fn(labels, |i, j| rels[i].is_subset(&rels[j]))?;
        let comp = rels
            .iter()
            .map(|a| rels.iter().map(|b| index(&a.compose_same_base(b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unary = |f: fn(&BinRel) -> BinRel| rels.iter().map(|a| index(&f(a))).collect::<Result<Vec<_>>>();
        AbstractOda::new(
            poset,
            comp,
            unary(BinRel::converse)?,
            unary(BinRel::domain)?,
            unary(BinRel::range)?,
            index(&BinRel::empty(base)?)?,
            index(&BinRel::identity(base)?)?,
        )
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn comp_table(&self) -> Vec<Vec<usize>> {
        self.comp.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    pub fn conv_table(&self) -> &[usize] {
        &self.conv
    }

    pub fn dom_table(&self) -> &[usize] {
        &self.dom
    }

    pub fn ran_table(&self) -> &[usize] {
        &self.ran
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn id_index(&self) -> usize {
        self.id
    }

    /// The subalgebra on `keep` (sorted, distinct), which must be closed
    /// under every operation.
    pub fn subalgebra(&self, keep: &[usize]) -> Result<Self> {
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.last().is_some_and(|&k| k >= self.len()) {
            return Err(Error::input("subalgebra carrier must be sorted, distinct and in range"));
        }
        let pos = |x: usize| keep.binary_search(&x).map_err(|_| Error::input("subset is not closed under the operations"));
        let comp = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| pos(self.comp(&a, &b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unary = |t: &[usize]| keep.iter().map(|&a| pos(t[a])).collect::<Result<Vec<_>>>();
        AbstractOda::new(
            self.poset.restrict(keep),
            comp,
            unary(&self.conv)?,
            unary(&self.dom)?,
            unary(&self.ran)?,
            pos(self.zero)?,
            pos(self.id)?,
        )
    }

    /// A copy with one composition entry overwritten.
    pub fn with_comp_entry(&self, a: usize, b: usize, value: usize) -> Result<Self> {
        let n = self.len();
        if a >= n || b >= n || value >= n {
            return Err(Error::input("composition entry outside the carrier"));
        }
        let mut out = self.clone();
        out.comp[a * n + b] = value;
        Ok(out)
    }
}

impl Order for AbstractOda {
    type Elem = usize;

    #[inline]
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.poset.leq(a, b)
    }
}

impl OdaOps for AbstractOda {
    #[inline]
    fn comp(&self, a: &usize, b: &usize) -> usize {
        self.comp[a * self.len() + b]
    }
    fn dom(&self, a: &usize) -> usize {
        self.dom[*a]
    }
    fn ran(&self, a: &usize) -> usize {
        self.ran[*a]
    }
    fn conv(&self, a: &usize) -> usize {
        self.conv[*a]
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.id
    }
}

/// The algebra of all relations over a base, never listed in full.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullProperOda {
    base: usize,
}

impl FullProperOda {
    pub fn new(base: usize) -> Result<Self> {
        BinRel::empty(base)?;
        Ok(FullProperOda { base })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn relation(&self, pairs: &[(usize, usize)]) -> Result<BinRel> {
        BinRel::from_pairs(self.base, pairs)
    }

    /// All `2^(k²)` relations as a table algebra.
    pub fn materialize(&self, limit: usize) -> Result<ProperAlgebra> {
        let k2 = self.base * self.base;
        if k2 >= usize::BITS as usize || (1usize << k2) > limit {
            return Err(Error::Guard { what: "full relation algebra", limit });
        }
        let mut rels = (0..1u64 << k2).map(|bits| BinRel::from_bits(self.base, bits)).collect::<Result<Vec<_>>>()?;
        rels.sort();
        let algebra = AbstractOda::from_relations(&rels)?;
        Ok(ProperAlgebra { base: self.base, relations: rels, algebra })
    }
}

impl Order for FullProperOda {
    type Elem = BinRel;

    #[inline]
    fn leq(&self, a: &BinRel, b: &BinRel) -> bool {
        a.is_subset(b)
    }
}

impl OdaOps for FullProperOda {
    fn comp(&self, a: &BinRel, b: &BinRel) -> BinRel {
        a.compose_same_base(b)
    }
    fn dom(&self, a: &BinRel) -> BinRel {
        a.domain()
    }
    fn ran(&self, a: &BinRel) -> BinRel {
        a.range()
    }
    fn conv(&self, a: &BinRel) -> BinRel {
        a.converse()
    }
    fn zero(&self) -> BinRel {
        BinRel::empty(self.base).expect("base validated at construction")
    }
    fn one(&self) -> BinRel {
        BinRel::identity(self.base).expect("base validated at construction")
    }
}

/// A finite algebra of relations: the relations in canonical order and the
/// matching table algebra (element `i` is `relations[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperAlgebra {
    pub base: usize,
    pub relations: Vec<BinRel>,
    pub algebra: AbstractOda,
}

impl ProperAlgebra {
    pub fn index_of(&self, r: &BinRel) -> Option<usize> {
        self.relations.binary_search(r).ok()
    }
}

/// The smallest set of relations containing `generators`, `∅` and the
/// identity, closed under composition, domain, range and converse.
pub fn generate_subalgebra(base: usize, generators: &[BinRel], limit: usize) -> Result<ProperAlgebra> {
    let full = FullProperOda::new(base)?;
    if let Some(g) = generators.iter().find(|g| g.base() != base) {
        return Err(Error::input(format!("generator {g} is over base {}, expected {base}", g.base())));
    }
    let mut seen: BTreeSet<BinRel> = BTreeSet::new();
    let mut order: Vec<BinRel> = Vec::new();
    let mut queue: Vec<BinRel> = Vec::new();
    let push = |r: BinRel, seen: &mut BTreeSet<BinRel>, order: &mut Vec<BinRel>, queue: &mut Vec<BinRel>| {
        if seen.insert(r) {
            order.push(r);
            queue.push(r);
        }
    };
    for r in [full.zero(), full.one()].into_iter().chain(generators.iter().copied()) {
        push(r, &mut seen, &mut order, &mut queue);
    }
    let mut head = 0;
    while head < queue.len() {
        if seen.len() > limit {
            return Err(Error::Guard { what: "generated subalgebra", limit });
        }
        let a = queue[head];
        head += 1;
        let mut fresh = alloc::vec![full.dom(&a), full.ran(&a), full.conv(&a)];
        for b in order.iter() {
            fresh.push(full.comp(&a, b));
            fresh.push(full.comp(b, &a));
        }
        for r in fresh {
            push(r, &mut seen, &mut order, &mut queue);
        }
    }
    if seen.len() > limit {
        return Err(Error::Guard { what: "generated subalgebra", limit });
    }
    let relations: Vec<BinRel> = seen.into_iter().collect();
    let algebra = AbstractOda::from_relations(&relations)?;
    Ok(ProperAlgebra { base, relations, algebra })
}
