//! Binary relations over a finite base `{0, …, k-1}` with `k ≤ 32`, one
//! machine word per row.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub const MAX_BASE: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinRel {
    base: u8,
    rows: [u32; MAX_BASE],
}

impl BinRel {
    /// The empty relation on a base of `base` points.
    pub fn empty(base: usize) -> Result<BinRel> {
        if base == 0 || base > MAX_BASE {
            return Err(Error::input(format!("relation base must be between 1 and {MAX_BASE}, got {base}")));
        }
        Ok(BinRel { base: base as u8, rows: [0; MAX_BASE] })
    }

    pub fn from_pairs(base: usize, pairs: &[(usize, usize)]) -> Result<BinRel> {
        let mut r = BinRel::empty(base)?;
        for &(u, v) in pairs {
            if u >= base || v >= base {
                return Err(Error::input(format!("pair ({u}, {v}) lies outside a base of {base}")));
            }
            r.insert(u, v);
        }
        Ok(r)
    }

    /// Pair `(u, v)` is bit `u·k + v` of `bits`; needs `k² ≤ 64`.
    pub fn from_bits(base: usize, bits: u64) -> Result<BinRel> {
        if base * base > 64 {
            return Err(Error::input("bit encoding needs base * base <= 64"));
        }
        let mut r = BinRel::empty(base)?;
        for u in 0..base {
            r.rows[u] = ((bits >> (u * base)) & ((1u64 << base) - 1)) as u32;
        }
        Ok(r)
    }

    pub fn to_bits(&self) -> u64 {
        let k = self.base();
        assert!(k * k <= 64, "bit encoding needs base * base <= 64");
        (0..k).fold(0u64, |acc, u| acc | (u64::from(self.rows[u]) << (u * k)))
    }

    pub fn identity(base: usize) -> Result<BinRel> {
        let mut r = BinRel::empty(base)?;
        for u in 0..base {
            r.insert(u, u);
        }
        Ok(r)
    }

    pub fn base(&self) -> usize {
        usize::from(self.base)
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| *r == 0)
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let k = self.base();
        (0..k).flat_map(|u| (0..k).filter(move |&v| self.contains(u, v)).map(move |v| (u, v))).collect()
    }

    pub fn is_subset(&self, other: &BinRel) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel> {
        self.same_base(other)?;
        let mut r = *self;
        for (a, b) in r.rows.iter_mut().zip(&other.rows) {
            *a |= *b;
        }
        Ok(r)
    }

    fn same_base(&self, other: &BinRel) -> Result<()> {
        if self.base != other.base {
            return Err(Error::input(format!("relations over bases {} and {} cannot be combined", self.base, other.base)));
        }
        Ok(())
    }

    /// `x ; y = {(u, v) : ∃w. (u, w) ∈ x ∧ (w, v) ∈ y}`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel> {
        self.same_base(other)?;
        Ok(self.compose_same_base(other))
    }

    pub(crate) fn compose_same_base(&self, other: &BinRel) -> BinRel {
        debug_assert_eq!(self.base, other.base);
        let mut out = BinRel { base: self.base, rows: [0; MAX_BASE] };
        for u in 0..self.base() {
            let mut row = self.rows[u];
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                out.rows[u] |= other.rows[w];
            }
        }
        out
    }

    /// `{(u, u) : ∃v. (u, v) ∈ x}`.
    pub fn domain(&self) -> BinRel {
        let mut out = BinRel { base: self.base, rows: [0; MAX_BASE] };
        for u in 0..self.base() {
            if self.rows[u] != 0 {
                out.insert(u, u);
            }
        }
        out
    }

    /// `{(v, v) : ∃u. (u, v) ∈ x}`.
    pub fn range(&self) -> BinRel {
        let all = self.rows.iter().fold(0, |acc, r| acc | r);
        let mut out = BinRel { base: self.base, rows: [0; MAX_BASE] };
        for v in 0..self.base() {
            if all >> v & 1 == 1 {
                out.insert(v, v);
            }
        }
        out
    }

    pub fn converse(&self) -> BinRel {
        let mut out = BinRel { base: self.base, rows: [0; MAX_BASE] };
        for (u, v) in self.pairs() {
            out.insert(v, u);
        }
        out
    }
}

/// Name of base point `u`: letters for bases up to 26, numbers beyond.
pub fn point_name(base: usize, u: usize) -> String {
    if base <= 26 {
        String::from(char::from(b'a' + u as u8))
    } else {
        format!("{u}")
    }
}

impl fmt::Display for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs = self.pairs();
        if pairs.is_empty() {
            return f.write_str("∅");
        }
        let k = self.base();
        f.write_str("{")?;
        for (i, (u, v)) in pairs.into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", point_name(k, u), point_name(k, v))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
