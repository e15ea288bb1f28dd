//! `Aut(A)` for finite abelian `A`, from unit-modification matrices.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{block_structure, canonical_decomposition, AbelianDecomposition, HRMatrix};
use crate::error::{Error, Result};
use crate::group::{composition_factors, from_permutations, FiniteGroup, SimpleFactorLabel};
use crate::perm::{PermGroup, Permutation};
use crate::util::{factorize, mod_pow, pow, primitive_root};

/// Largest `|Aut(A)|` rebuilt as a Cayley table in [`check_aut_factors`].
pub const CAYLEY_BOUND: usize = 2000;

/// Generators of the unit group of `Z_{p^e}`.
pub fn unit_generators(p: u64, e: u32) -> Vec<u64> {
    let m = pow(p, e);
    match (p, e) {
        (2, 1) => vec![],
        (2, 2) => vec![3],
        (2, _) => vec![m - 1, 5],
        _ => {
            let g = primitive_root(p);
            // g or g + p generates mod p^e
            let phi = m / p * (p - 1);
            let candidate = if e == 1 || mod_pow(g, phi / p, m) != 1 { g } else { g + p };
            vec![candidate]
        }
    }
}

/// Standard generators of `Aut` of one `p`-component: diagonal unit
/// multipliers and `I + c E_ij` with the least admissible `c`.
pub fn component_generators(p: u64, exponents: &[u32]) -> Vec<HRMatrix> {
    let d = exponents.len();
    let mut out = Vec::new();
    let base = |entries: Vec<Vec<i64>>| HRMatrix::new(p, exponents.to_vec(), entries).expect("admissible matrix");
    let identity: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for i in 0..d {
        for u in unit_generators(p, exponents[i]) {
            let mut m = identity.clone();
            m[i][i] = u as i64;
            out.push(base(m));
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut m = identity.clone();
                m[i][j] = pow(p, exponents[i].saturating_sub(exponents[j])) as i64;
                out.push(base(m));
            }
        }
    }
    out
}

/// Permutation of `C(A)` induced by a matrix acting on the factor
/// positions `range` (one prime component).
pub fn matrix_permutation(d: &AbelianDecomposition, range: std::ops::Range<usize>, m: &HRMatrix) -> Permutation {
    let images = (0..d.order())
        .map(|t| {
            let mut c = d.coords(t);
            let part: Vec<u64> = c[range.clone()].iter().map(|&x| x as u64).collect();
            for (k, v) in m.apply(&part).into_iter().enumerate() {
                c[range.start + k] = v as usize;
            }
            d.index(&c)
        })
        .collect();
    Permutation::from_images(images).expect("automorphisms are bijective")
}

/// `Aut(A)` acting on the elements of `C(A)`.
pub fn aut_group(a: &FiniteGroup) -> Result<(AbelianDecomposition, PermGroup)> {
    let (d, _) = canonical_decomposition(a)?;
    let g = aut_group_of(&d)?;
    Ok((d, g))
}

pub fn aut_group_of(d: &AbelianDecomposition) -> Result<PermGroup> {
    let mut gens = Vec::new();
    for (p, range) in d.prime_blocks() {
        let exps: Vec<u32> = d.factors[range.clone()].iter().map(|&(_, e)| e).collect();
        for m in component_generators(p, &exps) {
            gens.push(matrix_permutation(d, range.clone(), &m));
        }
    }
    PermGroup::new(d.order(), &gens)
}

/// `|Aut(A)|` by the closed form for abelian `p`-groups, multiplied over
/// the primes.
pub fn aut_order_formula(d: &AbelianDecomposition) -> BigUint {
    let mut total = BigUint::one();
    for (p, range) in d.prime_blocks() {
        let e: Vec<u32> = d.factors[range].iter().map(|&(_, e)| e).collect();
        let n = e.len();
        let p = BigUint::from(p);
        for k in 0..n {
            // 1-based: d_k = max{l : e_l = e_k}, c_k = min{l : e_l = e_k}
            let dk = (0..n).filter(|&l| e[l] == e[k]).max().unwrap() + 1;
            let ck = (0..n).filter(|&l| e[l] == e[k]).min().unwrap() + 1;
            total *= p.pow(dk as u32) - p.pow(k as u32);
            total *= p.pow(e[k] * (n - dk) as u32);
            total *= p.pow((e[k] - 1) * (n - ck + 1) as u32);
        }
    }
    total
}

fn cyclic_factors(n: u64) -> Vec<SimpleFactorLabel> {
    factorize(n)
        .into_iter()
        .flat_map(|(p, e)| (0..e).map(move |_| SimpleFactorLabel::cyclic(p)))
        .collect()
}

/// Composition factors of `GL(d, p)`: the determinant quotient, the centre
/// of `SL(d, p)` and `PSL(d, p)` (itself solvable for `(2, 2)`, `(2, 3)`).
pub fn gl_factors(d: usize, p: u64) -> Vec<SimpleFactorLabel> {
    let mut out = cyclic_factors(p - 1);
    if d >= 2 {
        out.extend(cyclic_factors(num_integer::gcd(d as u64, p - 1)));
        match (d, p) {
            (2, 2) => out.extend(cyclic_factors(6)),
            (2, 3) => out.extend(cyclic_factors(12)),
            _ => out.push(SimpleFactorLabel::psl(d, p)),
        }
    }
    out.sort();
    out
}

/// Composition factors of `Aut(A)` from its block structure: a `p`-group
/// kernel and one `GL(d_k, p)` per block.
pub fn structural_aut_factors(d: &AbelianDecomposition) -> Vec<SimpleFactorLabel> {
    let mut out = Vec::new();
    for (p, range) in d.prime_blocks() {
        let exps: Vec<u32> = d.factors[range.clone()].iter().map(|&(_, e)| e).collect();
        let component = AbelianDecomposition { factors: d.factors[range].to_vec() };
        let total = aut_order_formula(&component);
        let mut gl = BigUint::one();
        for dk in block_structure(&exps) {
            let pb = BigUint::from(p);
            for i in 0..dk {
                gl *= pb.pow(dk as u32) - pb.pow(i as u32);
            }
            out.extend(gl_factors(dk, p));
        }
        let rest = (total / gl).to_u128().expect("p-part fits");
        let k = crate::util::log_exact(rest, p as u128).expect("kernel is a p-group");
        out.extend((0..k).map(|_| SimpleFactorLabel::cyclic(p)));
    }
    out.sort();
    out
}

/// Composition factors of `Aut(A)`, each required to be cyclic or PSL.
/// Small automorphism groups are rebuilt as Cayley tables; larger ones use
/// [`structural_aut_factors`].
pub fn check_aut_factors(a: &FiniteGroup) -> Result<Vec<SimpleFactorLabel>> {
    let (d, _) = canonical_decomposition(a)?;
    let factors = aut_factors_of(&d)?;
    if let Some(bad) = factors.iter().find(|f| !f.in_cis_class()) {
        return Err(Error::FactorClassViolation(bad.clone()));
    }
    Ok(factors)
}

pub(crate) fn aut_factors_of(d: &AbelianDecomposition) -> Result<Vec<SimpleFactorLabel>> {
    let order = aut_order_formula(d);
    if order.to_usize().is_some_and(|o| o <= CAYLEY_BOUND) {
        let g = aut_group_of(d)?;
        let table = from_permutations(g.degree(), g.generators());
        Ok(composition_factors(&table))
    } else {
        Ok(structural_aut_factors(d))
    }
}

/// Every abelian group of order at most `n`, as decompositions sorted by
/// order.
pub fn abelian_groups_up_to(n: usize) -> Vec<AbelianDecomposition> {
    let mut out = Vec::new();
    for order in 1..=n as u64 {
        let mut acc: Vec<Vec<(u64, u32)>> = vec![vec![]];
        for (p, e) in factorize(order) {
            let mut next = Vec::new();
            for part in partitions(e, e) {
                for prefix in &acc {
                    let mut f = prefix.clone();
                    f.extend(part.iter().map(|&k| (p, k)));
                    next.push(f);
                }
            }
            acc = next;
        }
        let mut group: Vec<AbelianDecomposition> =
            acc.into_iter().map(|f| AbelianDecomposition::new(f).unwrap()).collect();
        group.sort();
        out.extend(group);
    }
    out
}

/// Partitions of `n` into parts at most `max`, parts ascending.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.push(first);
            out.push(rest);
        }
    }
    for p in &mut out {
        p.sort_unstable();
    }
    out
}
