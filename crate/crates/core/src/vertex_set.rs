use std::fmt;

/// Hard ceiling on the number of vertices (and ground-set elements) a
/// [`VertexSet`] can address.
pub const MAX_WIDTH: usize = 64;

/// A subset of a finite ground set, stored as a bit mask. Bit `i` is ground
/// element `i`; for graph vertex sets that is the canonical S-first layout.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., width - 1}`.
    #[inline]
    pub fn full(width: usize) -> Self {
        debug_assert!(width <= MAX_WIDTH);
        if width >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << width) - 1)
        }
    }

    #[inline]
    pub fn range(start: usize, end: usize) -> Self {
        VertexSet(Self::full(end).0 & !Self::full(start).0)
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        VertexSet(1u64 << i)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: Self) -> Self {
        VertexSet(self.0 ^ other.0)
    }

    /// Complement relative to `{0, .., width - 1}`.
    #[inline]
    pub fn complement(self, width: usize) -> Self {
        VertexSet(!self.0 & Self::full(width).0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Re-indexes the members lying in `keep` onto `0..keep.len()`,
    /// preserving order. Members outside `keep` are dropped.
    pub fn compress(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (pos, i) in keep.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << pos;
            }
        }
        VertexSet(out)
    }

    /// Inverse of [`compress`](Self::compress) for sets inside `0..keep.len()`.
    pub fn expand(self, keep: VertexSet) -> VertexSet {
        let mut out = 0u64;
        for (pos, i) in keep.iter().enumerate() {
            if self.contains(pos) {
                out |= 1 << i;
            }
        }
        VertexSet(out)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
