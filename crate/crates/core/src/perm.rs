//! Permutations of small label sets `{0, ..., n-1}`.

use std::fmt;

/// A permutation of `{0, ..., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from its image list, returning `None` unless
    /// `images` is a bijection on `{0, ..., images.len()-1}`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return None;
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    /// The transposition swapping `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(a, b);
        Perm(images.into_boxed_slice())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// All permutations of `{0, ..., n-1}` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(current.iter().map(|&x| x as u8).collect()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All sequences of `len` distinct integers drawn from `{0, ..., max}`, in
/// lexicographic order.
pub fn distinct_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, max: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=max {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(len, max, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    if len > max + 1 {
        return out;
    }
    rec(len, max, &mut vec![false; max + 1], &mut Vec::new(), &mut out);
    out
}
