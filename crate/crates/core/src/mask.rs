//! Subsets of a ground set packed into a single machine word.
//!
//! Bit `i` stands for the element with external label `i + 1`.

use core::fmt;

/// Largest ground set supported by the bitmask representation.
pub const MAX_ELEMENTS: usize = 24;

/// A subset of the ground set as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask(pub u32);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// The full set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Mask {
        if n >= 32 {
            Mask(u32::MAX)
        } else {
            Mask((1u32 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(elem: usize) -> Mask {
        Mask(1 << elem)
    }

    /// Builds a mask from 1-based element labels.
    ///
    /// # Panics
    ///
    /// Panics if a label is zero or exceeds [`MAX_ELEMENTS`].
    pub fn from_labels(labels: &[usize]) -> Mask {
        let mut bits = 0u32;
        for &l in labels {
            assert!((1..=MAX_ELEMENTS).contains(&l), "element label {l} out of range");
            bits |= 1 << (l - 1);
        }
        Mask(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, elem: usize) -> bool {
        self.0 >> elem & 1 == 1
    }

    #[inline]
    pub const fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    #[inline]
    pub const fn with(self, elem: usize) -> Mask {
        Mask(self.0 | 1 << elem)
    }

    #[inline]
    pub const fn without(self, elem: usize) -> Mask {
        Mask(self.0 & !(1 << elem))
    }

    /// Elements in ascending order (0-based bit positions).
    #[inline]
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, starting with `self` and ending with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(self.0),
        }
    }

    /// Packs the bits of `self` selected by `keep` into the low positions,
    /// preserving their relative order.
    pub fn compress(self, keep: Mask) -> Mask {
        let mut out = 0u32;
        for (dst, src) in keep.iter().enumerate() {
            if self.contains(src) {
                out |= 1 << dst;
            }
        }
        Mask(out)
    }

    /// Inverse of [`Mask::compress`]: spreads low bits onto the positions of `keep`.
    pub fn expand(self, keep: Mask) -> Mask {
        let mut out = 0u32;
        for (src, dst) in keep.iter().enumerate() {
            if self.contains(src) {
                out |= 1 << dst;
            }
        }
        Mask(out)
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

/// Lowercase hex with a `0x` prefix, e.g. `0x1d`.
impl fmt::LowerHex for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Descending walk over the subsets of a mask (`s = (s - 1) & of`).
pub struct Subsets {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.of)
        };
        Some(Mask(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec::Vec;

    #[test]
    fn labels_and_hex() {
        let m = Mask::from_labels(&[1, 3, 4, 5]);
        assert_eq!(m.0, 0x1d);
        assert_eq!(format!("{m}"), "0x1d");
        assert_eq!(format!("{m:?}"), "{1,3,4,5}");
        assert_eq!(format!("{}", Mask::EMPTY), "0x0");
    }

    #[test]
    fn subsets_enumerates_everything_once() {
        let m = Mask::from_labels(&[2, 4, 5]);
        let subs: Vec<Mask> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset_of(m)));
        assert_eq!(*subs.last().unwrap(), Mask::EMPTY);
        assert_eq!(Mask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_roundtrip() {
        let keep = Mask::from_labels(&[2, 3, 6]);
        let s = Mask::from_labels(&[3, 6]);
        let c = s.compress(keep);
        assert_eq!(c, Mask::from_labels(&[2, 3]));
        assert_eq!(c.expand(keep), s);
    }
}
