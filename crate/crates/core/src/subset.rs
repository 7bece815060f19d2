//! Finite index sets stored as bitmasks.
//!
//! The same type indexes wedge monomials `dx_I`, Koszul basis elements
//! `γf_α` and Cousin symbols `δf_α`. Indices are zero-based internally and
//! printed one-based where the surrounding text format asks for it.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of indices a [`Subset`] can hold.
pub const MAX_INDEX: usize = 32;

/// A subset of `{0, .., 31}` ordered first by size, then lexicographically
/// on its increasing element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_INDEX, "index {i} out of range");
        Subset(1 << i)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_INDEX);
        if n == MAX_INDEX {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in it {
            s = s.insert(i);
        }
        s
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_INDEX && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        assert!(i < MAX_INDEX, "index {i} out of range");
        Subset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn minus(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
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

    /// Zero-based position of `i` inside the increasing element list.
    pub fn position(self, i: usize) -> Option<usize> {
        if !self.contains(i) {
            return None;
        }
        Some((self.0 & ((1u32 << i) - 1)).count_ones() as usize)
    }

    /// Sign of the shuffle `e_self ∧ e_other = ± e_{self ∪ other}`, or `None`
    /// when the sets overlap (the wedge vanishes).
    pub fn wedge_sign(self, other: Subset) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        // Count pairs (i in self, j in other) with i > j.
        let mut inversions = 0u32;
        for j in other.iter() {
            let above = if j + 1 >= MAX_INDEX {
                0
            } else {
                self.0 >> (j + 1)
            };
            inversions += above.count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    /// All subsets of `{0, .., n-1}` of size `p`, in lexicographic order.
    pub fn of_size(n: usize, p: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        if p > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..p).collect();
        loop {
            out.push(Subset::from_indices(idx.iter().copied()));
            // advance to the next combination
            let mut k = p;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < n - p + k {
                    idx[k] += 1;
                    for l in k + 1..p {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All subsets of `{0, .., n-1}`, by size and then lexicographically.
    pub fn all(n: usize) -> Vec<Subset> {
        (0..=n).flat_map(|p| Subset::of_size(n, p)).collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
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

/// `(-1)^k` as an `i32`.
pub fn sign_pow(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Binomial coefficient for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
