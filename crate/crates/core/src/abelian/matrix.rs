use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{is_prime, mod_pow};

/// An integer matrix describing an endomorphism of `⨉ Z_{p^{e_i}}`
/// (`e_1 <= … <= e_d`): entry `(i, j)` is divisible by
/// `p^{max(e_i - e_j, 0)}` and stored reduced mod `p^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HRMatrix {
    pub p: u64,
    pub exponents: Vec<u32>,
    pub entries: Vec<Vec<u64>>,
}

impl HRMatrix {
    pub fn new(p: u64, exponents: Vec<u32>, entries: Vec<Vec<i64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidMatrix(format!("{p} is not prime")));
        }
        if exponents.windows(2).any(|w| w[0] > w[1]) || exponents.contains(&0) {
            return Err(Error::InvalidMatrix("exponents must be positive and non-decreasing".into()));
        }
        let d = exponents.len();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidMatrix(format!("expected a {d}×{d} matrix")));
        }
        let mut reduced = vec![vec![0u64; d]; d];
        for i in 0..d {
            let m = p.pow(exponents[i]) as i64;
            for j in 0..d {
                let v = entries[i][j].rem_euclid(m) as u64;
                let need = p.pow(exponents[i].saturating_sub(exponents[j]));
                if v % need != 0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} is not divisible by {need}"
                    )));
                }
                reduced[i][j] = v;
            }
        }
        Ok(HRMatrix { p, exponents, entries: reduced })
    }

    pub fn identity(p: u64, exponents: Vec<u32>) -> Self {
        let d = exponents.len();
        let entries = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(p, exponents, entries).expect("identity satisfies the divisibility condition")
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn modulus(&self, i: usize) -> u64 {
        self.p.pow(self.exponents[i])
    }

    /// `out_i = Σ_j M_ij a_j mod p^{e_i}`
    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        (0..self.dim())
            .map(|i| {
                let m = self.modulus(i) as u128;
                let s: u128 = (0..self.dim()).map(|j| self.entries[i][j] as u128 * a[j] as u128).sum();
                (s % m) as u64
            })
            .collect()
    }

    /// Matrix product, each row reduced by its modulus.
    pub fn mul(&self, other: &HRMatrix) -> Result<HRMatrix> {
        if self.p != other.p || self.exponents != other.exponents {
            return Err(Error::InvalidMatrix("matrices act on different groups".into()));
        }
        let d = self.dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let s: u128 = (0..d).map(|k| self.entries[i][k] as u128 * other.entries[k][j] as u128).sum();
                        (s % self.modulus(i) as u128) as i64
                    })
                    .collect()
            })
            .collect();
        HRMatrix::new(self.p, self.exponents.clone(), entries)
    }

    /// `det(M mod p) != 0`
    pub fn is_automorphism(&self) -> bool {
        let p = self.p;
        let d = self.dim();
        let mut m: Vec<Vec<u64>> = self.entries.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| m[r][col] != 0) else {
                return false;
            };
            m.swap(col, pivot);
            let inv = mod_pow(m[col][col], p - 2, p);
            for r in col + 1..d {
                let factor = m[r][col] * inv % p;
                for c in col..d {
                    m[r][c] = (m[r][c] + p * p - factor * m[col][c] % p) % p;
                }
            }
        }
        true
    }
}

/// Dimensions of the maximal runs of equal exponents.
pub fn block_structure(exponents: &[u32]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (k, e) in exponents.iter().enumerate() {
        if k > 0 && exponents[k - 1] == *e {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        let m = HRMatrix::new(2, vec![1, 2], vec![vec![1, 1], vec![2, 1]]).unwrap();
        assert_eq!(m.apply(&[1, 0]), vec![1, 2]);
        // two lifts of the same element agree
        assert_eq!(m.apply(&[3, 4]), m.apply(&[1, 0]));
        let id = HRMatrix::identity(3, vec![1, 2]);
        assert_eq!(id.apply(&[2, 7]), vec![2, 7]);
        let zero = HRMatrix::new(3, vec![1, 2], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(zero.apply(&[2, 7]), vec![0, 0]);
    }

    #[test]
    fn divisibility_enforced() {
        assert!(HRMatrix::new(2, vec![1, 2], vec![vec![1, 0], vec![1, 1]]).is_err());
        assert!(HRMatrix::new(2, vec![2, 1], vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn automorphism_test() {
        assert!(HRMatrix::identity(5, vec![1, 1, 3]).is_automorphism());
        assert!(HRMatrix::new(2, vec![1, 2], vec![vec![1, 0], vec![2, 1]]).unwrap().is_automorphism());
        assert!(!HRMatrix::new(2, vec![1, 1], vec![vec![1, 1], vec![1, 1]]).unwrap().is_automorphism());
    }

    #[test]
    fn blocks() {
        assert_eq!(block_structure(&[1, 1, 1]), vec![3]);
        assert_eq!(block_structure(&[1, 2]), vec![1, 1]);
        assert_eq!(block_structure(&[1, 1, 2, 2, 2]), vec![2, 3]);
        assert!(block_structure(&[]).is_empty());
    }
}
