use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{radical_derived_series, tilde_group, TildeGroup};
use crate::coloriso::{certify_cis, CisCertificate, ColorIsoInstance, ColorIsoSolver, Coloring, GroupStructure};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{PermGroup, Permutation, Subcoset};
use crate::wreath::WreathTower;

/// Why the pipeline concluded there is no isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptyReason {
    Order,
    SeriesShape,
    TopFactor,
    SearchExhausted,
}

/// `G̃`, `H̃` and the color isomorphism instances covering
/// `Hol(F̃_1) ≀ ⋯ ≀ Hol(F̃_m)`: one per element of `Hol(F̃_m)` when the
/// top factor is semisimple, otherwise a single one over the whole tower.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub g: TildeGroup,
    pub h: TildeGroup,
    pub tower: Option<WreathTower>,
    pub structure: GroupStructure,
    pub solver: ColorIsoSolver,
    pub reps: Vec<Permutation>,
}

impl Reduction {
    pub fn build(g: &FiniteGroup, h: &FiniteGroup) -> Result<std::result::Result<Reduction, EmptyReason>> {
        if g.order() != h.order() {
            return Ok(Err(EmptyReason::Order));
        }
        let sg = radical_derived_series(g);
        let sh = radical_derived_series(h);
        if sg.solvable != sh.solvable || sg.factor_orders() != sh.factor_orders() {
            return Ok(Err(EmptyReason::SeriesShape));
        }
        let tg = tilde_group(&sg, None)?;
        let th = match tilde_group(&sh, tg.top()) {
            Ok(t) => t,
            Err(Error::TopFactorNotIsomorphic) => return Ok(Err(EmptyReason::TopFactor)),
            Err(e) => return Err(e),
        };
        if !tg.same_shape(&th) {
            return Ok(Err(EmptyReason::SeriesShape));
        }
        let n = g.order();
        let m = tg.factor_shapes.len();
        let (tower, group, reps, structure) = if m == 0 {
            (None, PermGroup::trivial(n), vec![Permutation::identity(n)], GroupStructure::Trivial)
        } else {
            let tower = tg.holomorph_tower()?;
            let hols: Vec<GroupStructure> =
                tg.factor_shapes.iter().map(|s| GroupStructure::Holomorph(s.group())).collect();
            if tg.series.solvable {
                let group = tower.tower_group()?;
                (Some(tower), group, vec![Permutation::identity(n)], GroupStructure::Wreath(hols))
            } else {
                let group = tower.base_group()?;
                let top = tower.level(m - 1);
                let reps = top
                    .elements(usize::MAX)?
                    .iter()
                    .map(|p| tower.to_permutation(&tower.single(m - 1, 0, p)))
                    .collect::<Result<Vec<_>>>()?;
                let lower = if m == 1 {
                    GroupStructure::Trivial
                } else {
                    GroupStructure::Wreath(hols[..m - 1].to_vec())
                };
                let structure = GroupStructure::DirectPower(Box::new(lower), top.degree());
                (Some(tower), group, reps, structure)
            }
        };
        let solver = ColorIsoSolver::new(&group, Coloring::multiplication(&tg.table))?;
        Ok(Ok(Reduction { g: tg, h: th, tower, structure, solver, reps }))
    }

    pub fn f2(&self) -> Coloring {
        Coloring::multiplication(&self.h.table)
    }

    pub fn instance(&self, i: usize) -> Result<ColorIsoInstance> {
        let coset = Subcoset::new(self.reps[i].clone(), self.solver.group().clone())?;
        ColorIsoInstance::new(coset, Coloring::multiplication(&self.g.table), self.f2())
    }

    /// `α : G → G̃` and `β : H → H̃` as permutations of the index set.
    pub fn alpha_beta(&self) -> Result<(Permutation, Permutation)> {
        Ok((
            Permutation::from_images(self.g.iso_from_source.clone())?,
            Permutation::from_images(self.h.iso_from_source.clone())?,
        ))
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    /// `Iso(G, H)` as permutations of the common index set.
    pub iso: Subcoset,
    pub instances: usize,
    pub certificate: Option<CisCertificate>,
    pub reason: Option<EmptyReason>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineReport {
    pub iso_order: u128,
    pub instances: usize,
    pub certified_factors: Vec<String>,
    pub generators: Vec<Vec<usize>>,
    pub representative: Option<Vec<usize>>,
    pub reason: Option<EmptyReason>,
}

impl PipelineOutput {
    pub fn report(&self) -> PipelineReport {
        let (generators, representative) = match &self.iso {
            Subcoset::Empty { .. } => (Vec::new(), None),
            Subcoset::Coset { rep, group } => {
                (group.generators().iter().map(Permutation::images).collect(), Some(rep.images()))
            }
        };
        PipelineReport {
            iso_order: self.iso.order().to_u128().unwrap_or(u128::MAX),
            instances: self.instances,
            certified_factors: self
                .certificate
                .iter()
                .flat_map(|c| c.factors.iter().map(ToString::to_string))
                .collect(),
            generators,
            representative,
            reason: self.reason,
        }
    }
}

fn empty(n: usize, instances: usize, certificate: Option<CisCertificate>, reason: EmptyReason) -> PipelineOutput {
    PipelineOutput { iso: Subcoset::Empty { degree: n }, instances, certificate, reason: Some(reason) }
}

/// `Iso(G, H)` through color isomorphism over holomorph towers.
pub fn theorem1_pipeline(g: &FiniteGroup, h: &FiniteGroup) -> Result<PipelineOutput> {
    let n = g.order();
    let red = match Reduction::build(g, h)? {
        Ok(r) => r,
        Err(reason) => return Ok(empty(n, 0, None, reason)),
    };
    // every instance shares the coset group, so one certificate covers all
    let certificate = certify_cis(&red.structure)?;
    if let Some(bad) = certificate.factors.iter().find(|f| !f.in_cis_class()) {
        return Err(Error::FactorClassViolation(bad.clone()));
    }
    let f2 = red.f2();
    let found: Vec<Permutation> = red.reps.par_iter().filter_map(|r| red.solver.find(r, &f2)).collect();
    let Some(first) = found.first() else {
        return Ok(empty(n, red.reps.len(), Some(certificate), EmptyReason::SearchExhausted));
    };
    // each instance's solutions are π_h · K for the same K
    let inv = first.inverse();
    let shifts: Vec<Permutation> = found[1..].iter().map(|p| inv.compose(p)).collect();
    let group = red.solver.automorphism_group()?.extended(&shifts)?.reduce_generators();
    let tilde = Subcoset::new(first.clone(), group)?;
    let (alpha, beta) = red.alpha_beta()?;
    let iso = tilde.transform(&beta.inverse(), &alpha)?;
    Ok(PipelineOutput { iso, instances: red.reps.len(), certificate: Some(certificate), reason: None })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::group::{alternating, cyclic, direct_product, is_homomorphism, symmetric};

    #[test]
    fn examples() {
        let z4 = cyclic(4);
        let out = theorem1_pipeline(&z4, &z4).unwrap();
        assert_eq!(out.iso.order(), BigUint::from(2u32));
        assert_eq!(out.instances, 1);
        let out = theorem1_pipeline(&symmetric(3), &cyclic(6)).unwrap();
        assert!(out.iso.is_empty());
        let s4 = symmetric(4);
        let (h, _) = s4.scrambled(2);
        let out = theorem1_pipeline(&s4, &h).unwrap();
        assert_eq!(out.iso.order(), BigUint::from(24u32));
        for p in out.iso.elements(100).unwrap() {
            assert!(is_homomorphism(&s4, &h, &p.images()));
        }
        let out = theorem1_pipeline(&cyclic(1), &cyclic(1)).unwrap();
        assert_eq!(out.iso.order(), BigUint::from(1u32));
    }

    #[test]
    fn semisimple_top() {
        let g = direct_product(&cyclic(2), &alternating(5));
        let (h, _) = g.scrambled(7);
        let out = theorem1_pipeline(&g, &h).unwrap();
        assert_eq!(out.instances, 60 * 120);
        assert_eq!(out.iso.order(), BigUint::from(120u32));
        assert!(out.certificate.unwrap().in_cis);
        for p in out.iso.elements(200).unwrap() {
            assert!(is_homomorphism(&g, &h, &p.images()));
        }
    }
}
