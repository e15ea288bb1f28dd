//! Finite abelian groups: canonical decomposition and automorphisms.
//!
//! Elements of `C(A) = Z_{p1^e1} × … × Z_{pk^ek}` are indexed in mixed radix
//! with the first factor least significant.

mod aut;
mod matrix;

pub use aut::{
    abelian_groups_up_to, aut_group, aut_group_of, aut_order_formula, check_aut_factors, structural_aut_factors,
    unit_generators,
};
pub use matrix::{block_structure, HRMatrix};
pub(crate) use aut::aut_factors_of;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::util::{factorize, pow};

/// `⨉ Z_{p^e}` with factors sorted by `p`, then `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianDecomposition {
    pub factors: Vec<(u64, u32)>,
}

impl AbelianDecomposition {
    pub fn new(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        for &(p, e) in &factors {
            if !crate::util::is_prime(p) || e == 0 {
                return Err(Error::InvalidInput(format!("bad cyclic factor ({p}, {e})")));
            }
        }
        factors.sort_unstable();
        Ok(AbelianDecomposition { factors })
    }

    pub fn trivial() -> Self {
        AbelianDecomposition { factors: Vec::new() }
    }

    /// Decomposition of `Z_n`.
    pub fn cyclic(n: u64) -> Self {
        AbelianDecomposition { factors: factorize(n) }
    }

    pub fn moduli(&self) -> Vec<usize> {
        self.factors.iter().map(|&(p, e)| pow(p, e) as usize).collect()
    }

    pub fn order(&self) -> usize {
        self.moduli().iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        self.moduli()
            .into_iter()
            .map(|m| {
                let c = index % m;
                index /= m;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for (c, m) in coords.iter().zip(self.moduli()).rev() {
            idx = idx * m + c % m;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
        self.index(&s)
    }

    /// Cayley table of `C(A)`.
    pub fn to_group(&self) -> FiniteGroup {
        let n = self.order();
        let moduli = self.moduli();
        let coords: Vec<Vec<usize>> = (0..n).map(|i| self.coords(i)).collect();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut idx = 0;
                for k in (0..moduli.len()).rev() {
                    idx = idx * moduli[k] + (coords[a][k] + coords[b][k]) % moduli[k];
                }
                table[a * n + b] = idx as u32;
            }
        }
        FiniteGroup::from_trusted(n, table).expect("direct product of cyclic groups")
    }

    /// The distinct primes, ascending, with the range of factor positions
    /// belonging to each.
    pub fn prime_blocks(&self) -> Vec<(u64, std::ops::Range<usize>)> {
        let mut out: Vec<(u64, std::ops::Range<usize>)> = Vec::new();
        for (k, &(p, _)) in self.factors.iter().enumerate() {
            match out.last_mut() {
                Some((q, r)) if *q == p => r.end = k + 1,
                _ => out.push((p, k..k + 1)),
            }
        }
        out
    }
}

impl std::fmt::Display for AbelianDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli().iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

/// Decomposition of `A` and an isomorphism `A -> C(A)` (image list).
pub fn canonical_decomposition(a: &FiniteGroup) -> Result<(AbelianDecomposition, Vec<usize>)> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders = a.element_orders();
    let mut basis: Vec<(u64, u32, usize)> = Vec::new();
    for (p, _) in factorize(a.order() as u64) {
        let sylow: Vec<usize> = a.elements().filter(|&x| is_power_of(orders[x] as u64, p)).collect();
        let sub = Subgroup::from_elements(a, &sylow)?;
        let pg = sub.as_group(a);
        for y in p_group_basis(&pg) {
            let e = crate::util::log_exact(pg.element_order(y) as u128, p as u128).unwrap();
            basis.push((p, e, sub.elements()[y]));
        }
    }
    basis.sort_by_key(|&(p, e, x)| (p, e, x));
    let decomposition = AbelianDecomposition { factors: basis.iter().map(|&(p, e, _)| (p, e)).collect() };
    let n = a.order();
    let mut iso = vec![usize::MAX; n];
    for t in 0..n {
        let c = decomposition.coords(t);
        let mut x = 0;
        for (&(_, _, b), &k) in basis.iter().zip(&c) {
            x = a.mul(x, a.pow(b, k));
        }
        if iso[x] != usize::MAX {
            return Err(Error::Invariant("basis does not give a bijection".into()));
        }
        iso[x] = t;
    }
    Ok((decomposition, iso))
}

fn is_power_of(n: u64, p: u64) -> bool {
    crate::util::log_exact(n as u128, p as u128).is_some()
}

/// A basis of an abelian `p`-group: split off an element of maximal order,
/// decompose the quotient, and lift each quotient generator to an element
/// of the same order.
fn p_group_basis(g: &FiniteGroup) -> Vec<usize> {
    if g.order() == 1 {
        return Vec::new();
    }
    let orders = g.element_orders();
    let x = (0..g.order()).max_by_key(|&y| (orders[y], std::cmp::Reverse(y))).unwrap();
    let n = Subgroup::generated(g, &[x]);
    let q = n.quotient(g).expect("abelian");
    let mut basis = vec![x];
    // position of each element of <x> as a power of x
    let mut log = vec![usize::MAX; g.order()];
    let mut acc = 0;
    for k in 0..orders[x] {
        log[acc] = k;
        acc = g.mul(acc, x);
    }
    for b in p_group_basis(&q.group) {
        let y = q.representatives[b];
        let f = q.group.element_order(b);
        let k = log[g.pow(y, f)];
        debug_assert_eq!(k % f, 0);
        let correction = g.inv(g.pow(x, k / f));
        basis.push(g.mul(y, correction));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, is_homomorphism};

    #[test]
    fn decompositions() {
        let (d, _) = canonical_decomposition(&cyclic(1)).unwrap();
        assert!(d.factors.is_empty());
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(canonical_decomposition(&v4).unwrap().0.factors, vec![(2, 1), (2, 1)]);
        assert_eq!(canonical_decomposition(&cyclic(12)).unwrap().0.factors, vec![(2, 2), (3, 1)]);
        let g = direct_product(&cyclic(6), &cyclic(4));
        let (d, iso) = canonical_decomposition(&g).unwrap();
        assert_eq!(d.factors, vec![(2, 1), (2, 2), (3, 1)]);
        assert!(is_homomorphism(&g, &d.to_group(), &iso));
    }

    #[test]
    fn non_abelian_rejected() {
        assert_eq!(canonical_decomposition(&crate::group::symmetric(3)).unwrap_err(), Error::NotAbelian);
    }

    #[test]
    fn all_small_abelian_groups_round_trip() {
        for d in abelian_groups_up_to(64) {
            let g = d.to_group();
            let (d2, iso) = canonical_decomposition(&g).unwrap();
            assert_eq!(d, d2);
            assert!(is_homomorphism(&g, &d2.to_group(), &iso));
        }
    }

    #[test]
    fn scrambled_input() {
        let d = AbelianDecomposition::new(vec![(2, 1), (2, 3), (3, 1)]).unwrap();
        let (g, _) = d.to_group().scrambled(9);
        let (d2, iso) = canonical_decomposition(&g).unwrap();
        assert_eq!(d, d2);
        assert!(is_homomorphism(&g, &d2.to_group(), &iso));
    }
}
