//! Subsets of a small ground set `{0, …, k-1}` as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest ground set representable by [`Subset`].
pub const MAX_GROUND: usize = 32;

/// A subset of `{0, …, 31}`.
///
/// Ordered by size first, then lexicographically on the sorted element
/// lists, so iterating a `BTreeMap<Subset, _>` visits `∅, {0}, {1}, …,
/// {0,1}, {0,2}, …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_GROUND);
        if k == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << k) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GROUND);
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Subset(0), |s, i| s.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        assert!(i < MAX_GROUND);
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u32 << i))
    }

    pub fn toggle(self, i: usize) -> Self {
        Subset(self.0 ^ 1 << i)
    }

    pub fn union(self, o: Self) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        Subset(self.0 ^ o.0)
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0, …, k-1}` in canonical order.
    pub fn all(k: usize) -> Vec<Subset> {
        assert!(k < MAX_GROUND);
        let mut v: Vec<Subset> = (0..1u32 << k).map(Subset).collect();
        v.sort();
        v
    }

    /// All submasks of `self`, including `∅` and `self`, in no particular order.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(full);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == 0 { None } else { Some((c - 1) & full) };
            Some(Subset(c))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let d = self.0 ^ other.0;
            if d == 0 {
                Ordering::Equal
            } else if self.0 & (d & d.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = String;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        let mut s = Subset(0);
        for i in v {
            if i >= MAX_GROUND {
                return Err(format!("element {i} exceeds the ground-set cap"));
            }
            if s.contains(i) {
                return Err(format!("duplicate element {i}"));
            }
            s = s.with(i);
        }
        Ok(s)
    }
}
