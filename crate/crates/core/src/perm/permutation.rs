use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `[0, n)`, stored as its image list.
///
/// Composition follows function notation: `p.compose(&q)` is `p ∘ q`, so `q`
/// acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// On-disk form: `{"n": N, "images": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermFile {
    pub n: usize,
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated or out of range")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// The cycle `points[0] -> points[1] -> … -> points[0]`.
    pub fn cycle(n: usize, points: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (k, &x) in points.iter().enumerate() {
            p.images[x] = points[(k + 1) % points.len()] as u32;
        }
        p
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut used = vec![false; n];
        for c in cycles {
            for &x in c {
                if x >= n || std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} in two cycles or out of range")));
                }
            }
            p = Self::cycle(n, c).compose(&p);
        }
        Ok(p)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Self::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }

    /// Order as a group element (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut l = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }

    /// Extends to `[0, n)` by fixing the new points.
    pub fn extend(&self, n: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Permutation { images }
    }

    pub fn to_file(&self) -> PermFile {
        PermFile { n: self.degree(), images: self.images() }
    }

    pub fn from_file(f: &PermFile) -> Result<Self> {
        if f.images.len() != f.n {
            return Err(Error::DomainMismatch { expected: f.n, found: f.images.len() });
        }
        Self::from_images(f.images.clone())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order() {
        let p = Permutation::transposition(3, 0, 1);
        let q = Permutation::cycle(3, &[0, 1, 2]);
        // q first: 0 -> 1 -> 0
        assert_eq!(p.compose(&q).apply(0), 0);
        assert_eq!(q.compose(&p).apply(0), 2);
        assert!(q.compose(&q.inverse()).is_identity());
        assert_eq!(q.order(), 3);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn debug_cycles() {
        let p = Permutation::from_cycles(5, &[vec![0, 2], vec![1, 3, 4]]).unwrap();
        assert_eq!(format!("{p:?}"), "(0 2)(1 3 4)");
        assert_eq!(p.order(), 6);
    }
}
