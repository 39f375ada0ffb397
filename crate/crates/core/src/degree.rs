//! Multi-degrees in N^k with the componentwise order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An element of N^k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiDegree(entries)
    }

    pub fn zero(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    /// The generator e_i (0-based color `i`).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        MultiDegree(v)
    }

    pub fn splat(k: usize, value: u32) -> Self {
        MultiDegree(vec![value; k])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// |m| = sum of entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise m <= n.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other <= self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.le(self) {
            return None;
        }
        Some(MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Scales every entry by `factor`.
    pub fn scale(&self, factor: u32) -> Self {
        MultiDegree(self.0.iter().map(|a| a * factor).collect())
    }

    /// Concatenation (degree in N^{k+l}).
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MultiDegree(v)
    }

    /// Entries in `range` as a new degree.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        MultiDegree(self.0[start..end].to_vec())
    }

    /// Every degree n with n <= self, in lexicographic order.
    pub fn below(&self) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.0.len()];
        loop {
            out.push(MultiDegree(cur.clone()));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.0[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Color sequence of the normal form: `m_1` copies of color 0, then `m_2` of color 1, ...
    pub fn color_sequence(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for (c, &m) in self.0.iter().enumerate() {
            for _ in 0..m {
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiDegree {
    fn from(v: Vec<u32>) -> Self {
        MultiDegree(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiDegree {
    fn from(v: [u32; N]) -> Self {
        MultiDegree(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_and_order() {
        let m = MultiDegree::from([1, 0]);
        let n = MultiDegree::from([0, 2]);
        assert_eq!(m.join(&n), MultiDegree::from([1, 2]));
        assert!(m.le(&m.join(&n)));
        assert!(!m.le(&n));
        assert_eq!(m.add(&n).total(), 3);
    }

    #[test]
    fn below_enumerates_box() {
        let b = MultiDegree::from([1, 2]).below();
        assert_eq!(b.len(), 6);
        assert_eq!(b[0], MultiDegree::zero(2));
        assert_eq!(b[5], MultiDegree::from([1, 2]));
    }

    #[test]
    fn checked_sub_respects_order() {
        let m = MultiDegree::from([2, 1]);
        assert_eq!(m.checked_sub(&MultiDegree::from([1, 1])), Some(MultiDegree::from([1, 0])));
        assert_eq!(m.checked_sub(&MultiDegree::from([0, 2])), None);
    }
}
