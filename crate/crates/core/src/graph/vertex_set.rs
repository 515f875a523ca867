use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Serialize, Serializer};

use super::full_mask;
use crate::error::{Error, Result, MAX_ORDER};

/// A subset of `{0, .., universe-1}` packed in one word.
///
/// Ordering compares mask values, which is the lexicographic order used for
/// every tie-break in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    mask: u64,
    universe: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        debug_assert!(universe <= MAX_ORDER);
        Self { mask: 0, universe }
    }

    pub fn full(universe: usize) -> Self {
        debug_assert!(universe <= MAX_ORDER);
        Self {
            mask: full_mask(universe),
            universe,
        }
    }

    pub fn from_mask(mask: u64, universe: usize) -> Result<Self> {
        if universe > MAX_ORDER {
            return Err(Error::OrderTooLarge(universe));
        }
        if mask & !full_mask(universe) != 0 {
            let vertex = (mask & !full_mask(universe)).trailing_zeros() as usize;
            return Err(Error::VertexOutOfRange {
                vertex,
                order: universe,
            });
        }
        Ok(Self { mask, universe })
    }

    pub(crate) fn from_mask_unchecked(mask: u64, universe: usize) -> Self {
        debug_assert_eq!(mask & !full_mask(universe), 0);
        Self { mask, universe }
    }

    pub fn from_vertices(universe: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: universe,
                });
            }
            s.mask |= 1 << v;
        }
        Ok(s)
    }

    pub fn singleton(universe: usize, v: usize) -> Result<Self> {
        Self::from_vertices(universe, [v])
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn universe(self) -> usize {
        self.universe
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < self.universe && self.mask >> v & 1 == 1
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.mask & other.mask == 0
    }

    /// Complement within the universe.
    pub fn complement(self) -> Self {
        Self {
            mask: !self.mask & full_mask(self.universe),
            universe: self.universe,
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

macro_rules! set_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for VertexSet {
            type Output = VertexSet;
            fn $method(self, rhs: VertexSet) -> VertexSet {
                debug_assert_eq!(self.universe, rhs.universe, "universe mismatch");
                VertexSet {
                    mask: $op(self.mask, rhs.mask),
                    universe: self.universe,
                }
            }
        }
    };
}

set_op!(BitOr, bitor, |a: u64, b: u64| a | b);
set_op!(BitAnd, bitand, |a: u64, b: u64| a & b);
set_op!(BitXor, bitxor, |a: u64, b: u64| a ^ b);
set_op!(Sub, sub, |a: u64, b: u64| a & !b);

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialises as the ascending array of member indices.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
