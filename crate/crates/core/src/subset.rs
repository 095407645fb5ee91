//! Subsets of the ground set as bitmasks.
//!
//! Element `i` (labelled `1..=n`) lives in bit `i - 1`.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        Subset(if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        Subset(
            elements
                .into_iter()
                .fold(0u32, |acc, e| acc | (1 << (e - 1))),
        )
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        self.0 & (1 << (element - 1)) != 0
    }

    #[inline]
    pub fn with(self, element: usize) -> Subset {
        Subset(self.0 | (1 << (element - 1)))
    }

    #[inline]
    pub fn without(self, element: usize) -> Subset {
        Subset(self.0 & !(1 << (element - 1)))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Element labels in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(bit + 1)
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == mask {
                None
            } else {
                Some(current.wrapping_sub(mask) & mask)
            };
            Some(Subset(current))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, e) in self.elements().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// JSON form: `{"mask": 6, "set": "{2,3}"}`.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Subset", 2)?;
        st.serialize_field("mask", &self.0)?;
        st.serialize_field("set", &self.to_string())?;
        st.end()
    }
}
