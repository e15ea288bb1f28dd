use std::ops::ControlFlow;

use crate::abelian::{aut_group_of, canonical_decomposition};
use crate::error::Result;
use crate::group::{for_each_isomorphism, FiniteGroup};
use crate::perm::{PermGroup, Permutation};

/// `Hol(G) = G ⋊ Aut(G)` acting on the elements of `G` by
/// `(g, φ)(x) = g · φ(x)`.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub base: FiniteGroup,
    pub aut: PermGroup,
    pub group: PermGroup,
}

impl Holomorph {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let aut = automorphism_group(g)?;
        let mut gens: Vec<Permutation> = crate::group::generating_sequence(g)
            .into_iter()
            .map(|x| left_translation(g, x))
            .collect();
        gens.extend(aut.generators().iter().cloned());
        let group = PermGroup::new(g.order(), &gens)?;
        Ok(Holomorph { base: g.clone(), aut, group })
    }

    /// The permutation `x ↦ g · φ(x)`.
    pub fn element(&self, g: usize, phi: &Permutation) -> Permutation {
        left_translation(&self.base, g).compose(phi)
    }
}

pub fn left_translation(g: &FiniteGroup, a: usize) -> Permutation {
    Permutation::from_images(g.elements().map(|x| g.mul(a, x)).collect()).expect("rows are bijections")
}

/// `Aut(G)` on the elements of `G`: from the abelian machinery when `G`
/// is abelian, otherwise by brute-force enumeration.
pub fn automorphism_group(g: &FiniteGroup) -> Result<PermGroup> {
    if g.is_abelian() {
        let (d, iso) = canonical_decomposition(g)?;
        let iso = Permutation::from_images(iso)?;
        let inv = iso.inverse();
        let c = aut_group_of(&d)?;
        let gens: Vec<Permutation> = c.generators().iter().map(|p| inv.compose(&p.compose(&iso))).collect();
        return PermGroup::new(g.order(), &gens);
    }
    let mut group = PermGroup::trivial(g.order());
    for_each_isomorphism(g, g, |_, _| true, |m| {
        let p = Permutation::from_images(m.iter().map(|&x| x as usize).collect()).expect("bijection");
        if !group.contains(&p) {
            group = group.extended(&[p]).expect("same degree");
        }
        ControlFlow::Continue(())
    });
    Ok(group)
}
