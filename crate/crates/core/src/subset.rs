use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Largest ambient order a subset can address.
pub const MAX_AMBIENT: usize = 64;

/// A non-empty subset of a semigroup's elements, packed into a bit word.
///
/// Subsets are ordered by cardinality first and bit pattern second, which is
/// the canonical order of every complex and every report.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subset(u64);

impl Subset {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            Err(Error::Malformed("subsets must be non-empty".into()))
        } else {
            Ok(Subset(bits))
        }
    }

    pub fn singleton(x: usize) -> Self {
        assert!(x < MAX_AMBIENT);
        Subset(1 << x)
    }

    pub fn from_elements(elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u64;
        for x in elems {
            if x >= MAX_AMBIENT {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    order: MAX_AMBIENT,
                });
            }
            bits |= 1 << x;
        }
        Self::from_bits(bits)
    }

    /// All elements of `S` as one subset.
    pub fn full(order: usize) -> Self {
        assert!((1..=MAX_AMBIENT).contains(&order));
        Subset(if order == 64 { u64::MAX } else { (1 << order) - 1 })
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    // never empty, so no `is_empty`
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_singleton(self) -> bool {
        self.0.is_power_of_two()
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_AMBIENT && self.0 & (1 << x) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        })
    }

    /// Every non-empty subset of `self`, including `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done || sub == 0 {
                return None;
            }
            let out = Subset(sub);
            sub = (sub - 1) & full;
            if sub == 0 {
                done = true;
            }
            Some(out)
        })
    }

    pub fn display<'a>(self, s: &'a Semigroup) -> SubsetDisplay<'a> {
        SubsetDisplay { subset: self, ambient: s }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as the ascending list of member indices.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

pub struct SubsetDisplay<'a> {
    subset: Subset,
    ambient: &'a Semigroup,
}

impl fmt::Display for SubsetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.subset.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.ambient.label(x))?;
        }
        write!(f, "}}")
    }
}

/// `X · Y = {xy : x ∈ X, y ∈ Y}`.
pub fn setwise_product(s: &Semigroup, x: Subset, y: Subset) -> Subset {
    let mut bits = 0u64;
    for a in x.elements() {
        for b in y.elements() {
            bits |= 1 << s.mul(a, b);
        }
    }
    Subset(bits)
}

/// Checked variant that rejects subsets reaching outside `S`.
pub fn try_setwise_product(s: &Semigroup, x: Subset, y: Subset) -> Result<Subset> {
    let full = Subset::full(s.order().min(MAX_AMBIENT));
    if s.order() > MAX_AMBIENT || !x.is_subset_of(full) || !y.is_subset_of(full) {
        return Err(Error::AmbientMismatch);
    }
    Ok(setwise_product(s, x, y))
}
