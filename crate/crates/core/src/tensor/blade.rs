use std::cmp::Ordering;
use std::fmt;

/// Strictly increasing index tuple stored as a bitmask. Ordered
/// lexicographically as a tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_mask(m: u64) -> Blade {
        Blade(m)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Sorts `indices` and returns the blade with the permutation sign, or
    /// `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, i32)> {
        let mut m = 0u64;
        let mut sign = 1;
        for &i in indices {
            debug_assert!(i < 64);
            let bit = 1u64 << i;
            if m & bit != 0 {
                return None;
            }
            // parity of indices already placed above i
            if (m >> i).count_ones() % 2 == 1 {
                sign = -sign;
            }
            m |= bit;
        }
        Some((Blade(m), sign))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Number of indices strictly below `i`.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    /// `e_self ∧ e_other` as a signed blade, `None` if they overlap.
    pub fn wedge(self, other: Blade) -> Option<(Blade, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for b in other.indices() {
            swaps += (self.0 >> b).count_ones();
        }
        Some((Blade(self.0 | other.0), if swaps % 2 == 0 { 1 } else { -1 }))
    }

    /// Contraction of the first slot with index `i`: the remaining blade and
    /// the sign `(-1)^position`.
    pub fn remove(self, i: usize) -> Option<(Blade, i32)> {
        if !self.contains(i) {
            return None;
        }
        let sign = if self.position(i) % 2 == 0 { 1 } else { -1 };
        Some((Blade(self.0 & !(1 << i)), sign))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Blade{:?}", self.to_vec())
    }
}

/// All blades of grade `k` in dimension `n`, in lexicographic order.
pub fn blades(n: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(Blade::from_indices(&idx).unwrap().0);
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(Blade::from_indices(&[1, 0]), Some((Blade(3), -1)));
        assert_eq!(Blade::from_indices(&[2, 0, 1]), Some((Blade(7), 1)));
        assert_eq!(Blade::from_indices(&[1, 1]), None);
        let (a, b) = (Blade::single(1), Blade::single(0));
        assert_eq!(a.wedge(b), Some((Blade(3), -1)));
        assert_eq!(Blade(7).remove(1), Some((Blade(5), -1)));
    }

    #[test]
    fn order_and_enumeration() {
        let bs = blades(4, 2);
        assert_eq!(bs.len(), 6);
        assert_eq!(bs[0].to_vec(), vec![0, 1]);
        assert_eq!(bs[5].to_vec(), vec![2, 3]);
        assert!(bs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(blades(3, 0), vec![Blade::EMPTY]);
        assert!(blades(2, 3).is_empty());
    }
}
