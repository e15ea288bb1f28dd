use num_bigint::BigUint;
use num_traits::Zero;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Largest coset [`subcoset_intersect_filter`] will enumerate.
pub const FILTER_LIMIT: usize = 2_000_000;

/// A left coset `rep · group`, or the empty set.
#[derive(Clone, Debug)]
pub enum Subcoset {
    Empty { degree: usize },
    Coset { rep: Permutation, group: PermGroup },
}

impl Subcoset {
    pub fn new(rep: Permutation, group: PermGroup) -> Result<Self> {
        if rep.degree() != group.degree() {
            return Err(Error::DomainMismatch { expected: group.degree(), found: rep.degree() });
        }
        Ok(Subcoset::Coset { rep, group })
    }

    /// The group itself as a coset with identity representative.
    pub fn from_group(group: PermGroup) -> Self {
        Subcoset::Coset { rep: Permutation::identity(group.degree()), group }
    }

    pub fn degree(&self) -> usize {
        match self {
            Subcoset::Empty { degree } => *degree,
            Subcoset::Coset { group, .. } => group.degree(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Subcoset::Empty { .. })
    }

    pub fn rep(&self) -> Option<&Permutation> {
        match self {
            Subcoset::Empty { .. } => None,
            Subcoset::Coset { rep, .. } => Some(rep),
        }
    }

    pub fn group(&self) -> Option<&PermGroup> {
        match self {
            Subcoset::Empty { .. } => None,
            Subcoset::Coset { group, .. } => Some(group),
        }
    }

    /// Number of elements (0 when empty).
    pub fn order(&self) -> BigUint {
        match self {
            Subcoset::Empty { .. } => BigUint::zero(),
            Subcoset::Coset { group, .. } => group.order(),
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        match self {
            Subcoset::Empty { .. } => false,
            Subcoset::Coset { rep, group } => {
                p.degree() == rep.degree() && group.contains(&rep.inverse().compose(p))
            }
        }
    }

    /// Set equality: equal order, and each side's representative and
    /// representative-times-generators lie in the other.
    pub fn same_set(&self, other: &Subcoset) -> bool {
        match (self, other) {
            (Subcoset::Empty { .. }, Subcoset::Empty { .. }) => true,
            (Subcoset::Coset { rep: r1, group: g1 }, Subcoset::Coset { rep: r2, group: g2 }) => {
                g1.order() == g2.order()
                    && other.contains(r1)
                    && self.contains(r2)
                    && g1.generators().iter().all(|g| g2.contains(g))
                    && g2.generators().iter().all(|g| g1.contains(g))
            }
            _ => false,
        }
    }

    /// Every element, refusing cosets larger than `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        match self {
            Subcoset::Empty { .. } => Ok(Vec::new()),
            Subcoset::Coset { rep, group } => {
                Ok(group.elements(limit)?.into_iter().map(|g| rep.compose(&g)).collect())
            }
        }
    }

    /// A uniformly random element, `None` when empty.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Option<Permutation> {
        match self {
            Subcoset::Empty { .. } => None,
            Subcoset::Coset { rep, group } => Some(rep.compose(&group.random_element(rng))),
        }
    }

    /// `{ a ∘ c ∘ b : c ∈ self }`; `b` must be bijective on the domain, so
    /// the result is the coset `(a rep b) · (b^-1 group b)`.
    pub fn transform(&self, a: &Permutation, b: &Permutation) -> Result<Subcoset> {
        match self {
            Subcoset::Empty { degree } => Ok(Subcoset::Empty { degree: *degree }),
            Subcoset::Coset { rep, group } => {
                let rep = a.compose(&rep.compose(b));
                Subcoset::new(rep, group.conjugate(b)?)
            }
        }
    }

    /// Same set with a reduced generating set.
    pub fn reduced(&self) -> Subcoset {
        match self {
            Subcoset::Empty { .. } => self.clone(),
            Subcoset::Coset { rep, group } => {
                Subcoset::Coset { rep: rep.clone(), group: group.reduce_generators() }
            }
        }
    }
}

/// Elements of `coset` passing `test`, as a subcoset. The result is
/// verified: the passing elements must be exactly `τ · H` for the group
/// `H` they generate, else [`Error::NotASubcoset`].
pub fn subcoset_intersect_filter<F>(coset: &Subcoset, test: F) -> Result<Subcoset>
where
    F: Fn(&Permutation) -> bool,
{
    let degree = coset.degree();
    let passing: Vec<Permutation> = coset.elements(FILTER_LIMIT)?.into_iter().filter(|p| test(p)).collect();
    let Some(first) = passing.first() else {
        return Ok(Subcoset::Empty { degree });
    };
    let inv = first.inverse();
    let mut group = PermGroup::trivial(degree);
    for p in &passing {
        let q = inv.compose(p);
        if !group.contains(&q) {
            group = group.extended(&[q])?;
        }
    }
    if group.order() != BigUint::from(passing.len()) {
        return Err(Error::NotASubcoset(format!(
            "{} passing elements generate a group of order {}",
            passing.len(),
            group.order()
        )));
    }
    Subcoset::new(first.clone(), group)
}
