use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::abelian::{aut_order_formula, canonical_decomposition};
use crate::error::{Error, Result};
use crate::group::{composition_factors, from_permutations, symmetric, FiniteGroup, SimpleFactorLabel};
use crate::util::factorize;
use crate::wreath::{automorphism_group, Holomorph};

/// Largest holomorph rebuilt as a Cayley table.
pub const HOLOMORPH_BOUND: usize = 2000;

/// A permutation group described by how it was built.
#[derive(Clone, Debug)]
pub enum GroupStructure {
    Trivial,
    /// `Hol(F)` acting on `F`.
    Holomorph(FiniteGroup),
    Symmetric(usize),
    /// A group given by its Cayley table, acting regularly.
    Abstract(FiniteGroup),
    /// Levels bottom first.
    Wreath(Vec<GroupStructure>),
    /// `k` copies acting on disjoint domains.
    DirectPower(Box<GroupStructure>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CisCertificate {
    pub factors: Vec<SimpleFactorLabel>,
    pub in_cis: bool,
}

impl GroupStructure {
    pub fn degree(&self) -> usize {
        match self {
            GroupStructure::Trivial => 1,
            GroupStructure::Holomorph(f) | GroupStructure::Abstract(f) => f.order(),
            GroupStructure::Symmetric(n) => *n,
            GroupStructure::Wreath(levels) => levels.iter().map(GroupStructure::degree).product(),
            GroupStructure::DirectPower(inner, k) => inner.degree() * k,
        }
    }

    /// Composition factors with multiplicity, sorted.
    pub fn factors(&self) -> Result<Vec<SimpleFactorLabel>> {
        let mut out = match self {
            GroupStructure::Trivial => Vec::new(),
            GroupStructure::Holomorph(f) => holomorph_factors(f)?,
            GroupStructure::Symmetric(n) if *n <= 4 => composition_factors(&symmetric(*n)),
            GroupStructure::Symmetric(n) => vec![SimpleFactorLabel::cyclic(2), SimpleFactorLabel::alternating(*n)],
            GroupStructure::Abstract(g) => composition_factors(g),
            GroupStructure::Wreath(levels) => {
                let mut out = Vec::new();
                let mut copies = 1;
                for level in levels.iter().rev() {
                    out.extend(repeat(level.factors()?, copies));
                    copies *= level.degree();
                }
                out
            }
            GroupStructure::DirectPower(inner, k) => repeat(inner.factors()?, *k),
        };
        out.sort();
        Ok(out)
    }
}

fn repeat(factors: Vec<SimpleFactorLabel>, k: usize) -> Vec<SimpleFactorLabel> {
    let mut out = Vec::with_capacity(factors.len() * k);
    for _ in 0..k {
        out.extend(factors.iter().cloned());
    }
    out
}

fn holomorph_factors(f: &FiniteGroup) -> Result<Vec<SimpleFactorLabel>> {
    if f.is_abelian() {
        let (d, _) = canonical_decomposition(f)?;
        let order = aut_order_formula(&d) * f.order();
        if order.to_usize().map_or(true, |o| o > HOLOMORPH_BOUND) {
            let mut out: Vec<SimpleFactorLabel> = factorize(f.order() as u64)
                .into_iter()
                .flat_map(|(p, e)| (0..e).map(move |_| SimpleFactorLabel::cyclic(p)))
                .collect();
            out.extend(crate::abelian::aut_factors_of(&d)?);
            return Ok(out);
        }
    } else {
        let order = automorphism_group(f)?.order() * f.order();
        if order.to_usize().map_or(true, |o| o > HOLOMORPH_BOUND) {
            return Err(Error::ComponentTooLarge {
                order: order.to_u128().unwrap_or(u128::MAX),
                bound: HOLOMORPH_BOUND,
            });
        }
    }
    let hol = Holomorph::new(f)?;
    let table = from_permutations(hol.group.degree(), hol.group.generators());
    Ok(composition_factors(&table))
}

/// Composition factors of the described group and whether all are cyclic
/// or PSL.
pub fn certify_cis(structure: &GroupStructure) -> Result<CisCertificate> {
    let factors = structure.factors()?;
    let in_cis = factors.iter().all(SimpleFactorLabel::in_cis_class);
    Ok(CisCertificate { factors, in_cis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};

    fn c(p: u64) -> SimpleFactorLabel {
        SimpleFactorLabel::cyclic(p)
    }

    #[test]
    fn examples() {
        let w = GroupStructure::Wreath(vec![GroupStructure::Holomorph(cyclic(3)), GroupStructure::Holomorph(cyclic(2))]);
        let cert = certify_cis(&w).unwrap();
        assert_eq!(cert.factors, vec![c(2), c(2), c(2), c(3), c(3)]);
        assert!(cert.in_cis);

        let z2 = cyclic(2);
        let e8 = direct_product(&direct_product(&z2, &z2), &z2);
        let p = GroupStructure::DirectPower(Box::new(GroupStructure::Holomorph(e8)), 2);
        let cert = certify_cis(&p).unwrap();
        assert_eq!(cert.factors.iter().filter(|f| **f == SimpleFactorLabel::psl(3, 2)).count(), 2);
        assert!(cert.in_cis);

        assert!(certify_cis(&GroupStructure::Symmetric(5)).unwrap().in_cis);
        let s7 = certify_cis(&GroupStructure::Symmetric(7)).unwrap();
        assert!(!s7.in_cis);
        assert!(s7.factors.contains(&SimpleFactorLabel::alternating(7)));
    }

    #[test]
    fn wreath_is_union_of_components() {
        let a = GroupStructure::Holomorph(cyclic(4));
        let b = GroupStructure::Symmetric(3);
        let w = GroupStructure::Wreath(vec![a.clone(), b.clone()]);
        let mut expected = repeat(a.factors().unwrap(), 3);
        expected.extend(b.factors().unwrap());
        expected.sort();
        assert_eq!(w.factors().unwrap(), expected);
    }

    #[test]
    fn structural_route_for_large_abelian() {
        let z2 = cyclic(2);
        let e16 = direct_product(&direct_product(&z2, &z2), &direct_product(&z2, &z2));
        let cert = certify_cis(&GroupStructure::Holomorph(e16)).unwrap();
        assert!(cert.factors.contains(&SimpleFactorLabel::psl(4, 2)));
        assert!(cert.in_cis);
    }

    #[test]
    fn large_nonabelian_rejected() {
        let a5 = crate::group::alternating(5);
        assert!(matches!(certify_cis(&GroupStructure::Holomorph(a5)), Err(Error::ComponentTooLarge { .. })));
    }
}
