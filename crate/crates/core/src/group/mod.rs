//! Finite groups given by dense Cayley tables.
//!
//! Element `0` is always the identity. All higher-level constructions
//! (subgroups, quotients, series) produce fresh [`FiniteGroup`] values that
//! keep this convention, with coset representatives chosen as minimal
//! element indices.

mod build;
mod iso;
mod series;
mod simple;
mod subgroup;

pub use build::*;
pub use iso::{
    brute_force_isomorphisms, count_isomorphisms, find_isomorphism, for_each_isomorphism,
    generating_sequence, is_homomorphism,
};
pub use series::{
    composition_factors, composition_factors_shuffled, derived_series, derived_series_of,
    is_solvable, normal_subgroups, solvable_radical, DerivedSeries, SubnormalSeries,
};
pub(crate) use simple::classify_simple_unchecked;
pub use simple::{
    classify_simple, conjugacy_class_reps, is_simple, psl_order, FactorName, SimpleFactorLabel,
    CLASSIFICATION_BOUND,
};
pub use subgroup::{Quotient, Subgroup};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which associativity is verified on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_BOUND: usize = 256;
const SAMPLED_TRIPLES: usize = 1_000_000;
const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550c;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

/// On-disk form: `{"name": ..., "order": n, "table": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry {x} out of range in row {i}")));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    pub fn from_flat(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NotAGroup("table is not square".into()));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        let g = Self::from_trusted(order, table)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Builds a group whose table is correct by construction (subgroups,
    /// quotients, products). Only the Latin-square property is checked,
    /// since it is needed to compute inverses.
    pub(crate) fn from_trusted(order: usize, table: Vec<u32>) -> Result<Self> {
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    if inverse[a] != u32::MAX {
                        return Err(Error::NotAGroup(format!("row {a} is not a permutation")));
                    }
                    inverse[a] = b as u32;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup { order, table, inverse })
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::NotAGroup(format!("0 is not an identity for {x}")));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.mul(i, j);
                if seen[v] == i {
                    return Err(Error::NotAGroup(format!("row {i} repeats {v}")));
                }
                seen[v] = i;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let v = self.mul(i, j);
                if seen[v] == j {
                    return Err(Error::NotAGroup(format!("column {j} repeats {v}")));
                }
                seen[v] = j;
            }
        }
        let fail = |a: usize, b: usize, c: usize| {
            Error::NotAGroup(format!("associativity fails for ({a}, {b}, {c})"))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a b a^-1 b^-1`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn flat_table(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Relabels elements: old element `i` becomes `labels[i]`.
    /// `labels` must be a permutation fixing 0.
    pub fn relabel(&self, labels: &[usize]) -> Result<Self> {
        let n = self.order;
        if labels.len() != n || labels[0] != 0 {
            return Err(Error::InvalidInput("relabelling must fix the identity".into()));
        }
        let mut seen = vec![false; n];
        for &l in labels {
            if l >= n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::InvalidInput("relabelling is not a bijection".into()));
            }
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[labels[a] * n + labels[b]] = labels[self.mul(a, b)] as u32;
            }
        }
        Self::from_trusted(n, table)
    }

    /// Relabels by a seeded random permutation fixing 0; returns the group and
    /// the relabelling (old index -> new index).
    pub fn scrambled(&self, seed: u64) -> (Self, Vec<usize>) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rest: Vec<usize> = (1..self.order).collect();
        rest.shuffle(&mut rng);
        let mut labels = vec![0];
        labels.extend(rest);
        let g = self.relabel(&labels).expect("valid relabelling");
        (g, labels)
    }

    pub fn to_file(&self, name: &str) -> GroupFile {
        GroupFile { name: name.to_string(), order: self.order, table: self.rows() }
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        if file.order != file.table.len() {
            return Err(Error::NotAGroup(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::from_table(&file.table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn z4_has_self_inverse_two() {
        let g = cyclic(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.inv(2), 2);
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn rejects_broken_tables() {
        // Z4 with entry [1][2] altered: breaks the Latin square.
        let mut rows = cyclic(4).rows();
        rows[1][2] = 0;
        assert!(matches!(FiniteGroup::from_table(&rows), Err(Error::NotAGroup(_))));

        // identity violation
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(FiniteGroup::from_table(&rows), Err(Error::NotAGroup(_))));

        // a Latin square with identity that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&rows), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = symmetric(3);
        let (h, labels) = g.scrambled(3);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(labels[g.mul(a, b)], h.mul(labels[a], labels[b]));
            }
        }
    }
}
