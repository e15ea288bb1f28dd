//! Holomorphs and iterated wreath products.
//!
//! A tower `G_1 ≀ ⋯ ≀ G_k` acts on `X_1 × ⋯ × X_k`; tuples are indexed in
//! mixed radix with `x_1` least significant. An element is a family of
//! components `π_s ∈ G_i`, one for each level `i` and each suffix
//! `s = (x_{i+1}, …, x_k)`, acting by
//! `x ↦ (π_{x_2…x_k}(x_1), …, π_{x_k}(x_{k-1}), π_()(x_k))`.
//! Suffixes are read from the input tuple.

mod holomorph;

pub use holomorph::{automorphism_group, left_translation, Holomorph};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, PermGroupFile, Permutation};

/// Default bound on the product domain for [`WreathTower::tower_group`].
pub const DOMAIN_BOUND: usize = 100_000;

#[derive(Clone, Debug)]
pub struct WreathTower {
    levels: Vec<PermGroup>,
}

/// Components indexed as `components[level][suffix index]`, levels
/// 0-based from the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub components: Vec<Vec<Permutation>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerLevelFile {
    pub group: PermGroupFile,
    pub domain: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerFile {
    pub levels: Vec<TowerLevelFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentFile {
    /// 1-based level.
    pub level: usize,
    pub suffix: Vec<usize>,
    pub elem: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WreathElementFile {
    pub components: Vec<ComponentFile>,
}

impl WreathTower {
    pub fn new(levels: Vec<PermGroup>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("a tower needs at least one level".into()));
        }
        Ok(WreathTower { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &PermGroup {
        &self.levels[i]
    }

    pub fn domains(&self) -> Vec<usize> {
        self.levels.iter().map(PermGroup::degree).collect()
    }

    /// `|X_1 × ⋯ × X_k|`, or `None` on overflow.
    pub fn domain_size(&self) -> Option<usize> {
        self.levels.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.degree()))
    }

    /// Number of suffixes at level `i`: `∏_{j>i} |X_j|`.
    pub fn suffix_count(&self, i: usize) -> usize {
        self.levels[i + 1..].iter().map(PermGroup::degree).product()
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        self.levels
            .iter()
            .map(|g| {
                let x = index % g.degree();
                index /= g.degree();
                x
            })
            .collect()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (x, g) in tuple.iter().zip(&self.levels).rev() {
            idx = idx * g.degree() + x;
        }
        idx
    }

    /// Index of the suffix `(x_{i+1}, …, x_k)` of `tuple`.
    pub fn suffix_index(&self, tuple: &[usize], i: usize) -> usize {
        let mut idx = 0;
        for j in (i + 1..self.levels.len()).rev() {
            idx = idx * self.levels[j].degree() + tuple[j];
        }
        idx
    }

    /// The suffix tuple with the given index at level `i`.
    pub fn suffix(&self, i: usize, mut index: usize) -> Vec<usize> {
        self.levels[i + 1..]
            .iter()
            .map(|g| {
                let x = index % g.degree();
                index /= g.degree();
                x
            })
            .collect()
    }

    /// `∏ |G_i|^(∏_{j>i} |X_j|)`
    pub fn order_formula(&self) -> BigUint {
        (0..self.depth()).fold(BigUint::one(), |acc, i| acc * self.levels[i].order().pow(self.suffix_count(i) as u32))
    }

    pub fn identity_element(&self) -> WreathElement {
        WreathElement {
            components: (0..self.depth())
                .map(|i| vec![Permutation::identity(self.levels[i].degree()); self.suffix_count(i)])
                .collect(),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> WreathElement {
        WreathElement {
            components: (0..self.depth())
                .map(|i| (0..self.suffix_count(i)).map(|_| self.levels[i].random_element(rng)).collect())
                .collect(),
        }
    }

    pub fn evaluate(&self, w: &WreathElement, x: &[usize]) -> Vec<usize> {
        (0..self.depth()).map(|i| w.components[i][self.suffix_index(x, i)].apply(x[i])).collect()
    }

    /// The permutation of the product domain defined by `w`.
    pub fn to_permutation(&self, w: &WreathElement) -> Result<Permutation> {
        let n = self.checked_domain(DOMAIN_BOUND)?;
        let images = (0..n).map(|t| self.index(&self.evaluate(w, &self.tuple(t)))).collect();
        Permutation::from_images(images)
    }

    fn checked_domain(&self, bound: usize) -> Result<usize> {
        match self.domain_size() {
            Some(n) if n <= bound => Ok(n),
            n => Err(Error::DomainTooLarge { size: n.unwrap_or(usize::MAX), bound }),
        }
    }

    /// Recovers the components of `p`, level by level from the top; each
    /// output coordinate must depend only on its input coordinate and the
    /// input suffix, and each component must lie in its level group.
    pub fn decompose(&self, p: &Permutation) -> Result<WreathElement> {
        let n = self.checked_domain(DOMAIN_BOUND)?;
        if p.degree() != n {
            return Err(Error::DomainMismatch { expected: n, found: p.degree() });
        }
        let mut images: Vec<Vec<Vec<usize>>> = (0..self.depth())
            .map(|i| vec![vec![usize::MAX; self.levels[i].degree()]; self.suffix_count(i)])
            .collect();
        for t in 0..n {
            let x = self.tuple(t);
            let y = self.tuple(p.apply(t));
            for i in (0..self.depth()).rev() {
                let slot = &mut images[i][self.suffix_index(&x, i)][x[i]];
                if *slot == usize::MAX {
                    *slot = y[i];
                } else if *slot != y[i] {
                    return Err(Error::NotMember(format!(
                        "coordinate {} is not determined by the input suffix",
                        i + 1
                    )));
                }
            }
        }
        let mut components = Vec::with_capacity(self.depth());
        for (i, level) in images.into_iter().enumerate() {
            let mut comps = Vec::with_capacity(level.len());
            for (s, imgs) in level.into_iter().enumerate() {
                let perm = Permutation::from_images(imgs).map_err(|_| {
                    Error::NotMember(format!("component at level {} suffix {s} is not a bijection", i + 1))
                })?;
                if !self.levels[i].contains(&perm) {
                    return Err(Error::NotMember(format!(
                        "component at level {} suffix {:?} is outside the level group",
                        i + 1,
                        self.suffix(i, s)
                    )));
                }
                comps.push(perm);
            }
            components.push(comps);
        }
        Ok(WreathElement { components })
    }

    /// A single-component element: `g` at `(level, suffix)`, identity
    /// elsewhere.
    pub fn single(&self, level: usize, suffix: usize, g: &Permutation) -> WreathElement {
        let mut w = self.identity_element();
        w.components[level][suffix] = g.clone();
        w
    }

    /// The whole tower as a permutation group on the product domain.
    pub fn tower_group(&self) -> Result<PermGroup> {
        self.tower_group_bounded(DOMAIN_BOUND)
    }

    pub fn tower_group_bounded(&self, bound: usize) -> Result<PermGroup> {
        let n = self.checked_domain(bound)?;
        let top = self.depth() - 1;
        let mut gens = Vec::new();
        for i in 0..top {
            for g in self.levels[i].generators() {
                gens.push(self.to_permutation(&self.single(i, 0, g))?);
            }
        }
        for g in self.levels[top].generators() {
            gens.push(self.to_permutation(&self.single(top, 0, g))?);
        }
        let group = PermGroup::new(n, &gens)?;
        if group.order() == self.order_formula() {
            return Ok(group);
        }
        // an intransitive upper level does not carry the first suffix
        // everywhere; add every suffix explicitly
        let extra = self.base_generators()?;
        group.extended(&extra)
    }

    /// Generators of the kernel of the projection onto the top level:
    /// `(G_1 ≀ ⋯ ≀ G_{k-1})^{X_k}`, one generator per level generator and
    /// suffix.
    pub fn base_generators(&self) -> Result<Vec<Permutation>> {
        let mut gens = Vec::new();
        for i in 0..self.depth() - 1 {
            for s in 0..self.suffix_count(i) {
                for g in self.levels[i].generators() {
                    gens.push(self.to_permutation(&self.single(i, s, g))?);
                }
            }
        }
        Ok(gens)
    }

    pub fn base_group(&self) -> Result<PermGroup> {
        let n = self.checked_domain(DOMAIN_BOUND)?;
        PermGroup::new(n, &self.base_generators()?)
    }

    pub fn to_file(&self) -> TowerFile {
        TowerFile {
            levels: self.levels.iter().map(|g| TowerLevelFile { group: g.to_file(), domain: g.degree() }).collect(),
        }
    }

    pub fn from_file(f: &TowerFile) -> Result<Self> {
        let levels = f
            .levels
            .iter()
            .map(|l| {
                if l.domain != l.group.n {
                    return Err(Error::DomainMismatch { expected: l.domain, found: l.group.n });
                }
                PermGroup::from_file(&l.group)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels)
    }

    pub fn element_to_file(&self, w: &WreathElement) -> WreathElementFile {
        let mut components = Vec::new();
        for (i, comps) in w.components.iter().enumerate() {
            for (s, g) in comps.iter().enumerate() {
                components.push(ComponentFile { level: i + 1, suffix: self.suffix(i, s), elem: g.images() });
            }
        }
        WreathElementFile { components }
    }

    pub fn element_from_file(&self, f: &WreathElementFile) -> Result<WreathElement> {
        let mut w = self.identity_element();
        let mut seen: Vec<Vec<bool>> = w.components.iter().map(|c| vec![false; c.len()]).collect();
        for c in &f.components {
            if c.level == 0 || c.level > self.depth() || c.suffix.len() != self.depth() - c.level {
                return Err(Error::InvalidInput(format!("bad component key at level {}", c.level)));
            }
            let i = c.level - 1;
            let mut s = 0;
            for (j, &x) in c.suffix.iter().enumerate().rev() {
                if x >= self.levels[i + 1 + j].degree() {
                    return Err(Error::InvalidInput(format!("suffix entry {x} out of range")));
                }
                s = s * self.levels[i + 1 + j].degree() + x;
            }
            if std::mem::replace(&mut seen[i][s], true) {
                return Err(Error::InvalidInput(format!("duplicate component at level {}", c.level)));
            }
            let g = Permutation::from_images(c.elem.clone())?;
            if !self.levels[i].contains(&g) {
                return Err(Error::NotMember(format!("component at level {} outside its group", c.level)));
            }
            w.components[i][s] = g;
        }
        if seen.iter().flatten().any(|&b| !b) {
            return Err(Error::InvalidInput("missing components".into()));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::cyclic;

    fn s2() -> PermGroup {
        PermGroup::symmetric(2)
    }

    #[test]
    fn worked_evaluation() {
        let t = WreathTower::new(vec![s2(), s2()]).unwrap();
        let swap = Permutation::transposition(2, 0, 1);
        let id = Permutation::identity(2);
        let w = WreathElement { components: vec![vec![id.clone(), swap.clone()], vec![swap]] };
        assert_eq!(t.evaluate(&w, &[0, 0]), vec![0, 1]);
        assert_eq!(t.evaluate(&w, &[1, 1]), vec![0, 0]);
        let e = t.identity_element();
        assert_eq!(t.evaluate(&e, &[1, 0]), vec![1, 0]);
    }

    #[test]
    fn tower_orders() {
        let t = WreathTower::new(vec![s2(), s2()]).unwrap();
        assert_eq!(t.tower_group().unwrap().order(), BigUint::from(8u32));
        let z3 = PermGroup::new(3, &[Permutation::cycle(3, &[0, 1, 2])]).unwrap();
        let t = WreathTower::new(vec![z3, s2()]).unwrap();
        assert_eq!(t.tower_group().unwrap().order(), BigUint::from(18u32));
        let t = WreathTower::new(vec![PermGroup::trivial(3), PermGroup::trivial(2)]).unwrap();
        assert!(t.tower_group().unwrap().is_trivial());
        // intransitive top level
        let top = PermGroup::new(3, &[Permutation::transposition(3, 0, 1)]).unwrap();
        let t = WreathTower::new(vec![s2(), top]).unwrap();
        assert_eq!(t.tower_group().unwrap().order(), t.order_formula());
    }

    #[test]
    fn round_trip() {
        let hol = Holomorph::new(&cyclic(3)).unwrap().group;
        let t = WreathTower::new(vec![s2(), hol, s2()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = t.tower_group().unwrap();
        assert_eq!(g.order(), t.order_formula());
        for _ in 0..200 {
            let w = t.random_element(&mut rng);
            let p = t.to_permutation(&w).unwrap();
            assert!(g.contains(&p));
            assert_eq!(t.decompose(&p).unwrap(), w);
        }
    }

    #[test]
    fn non_member() {
        let t = WreathTower::new(vec![s2(), s2()]).unwrap();
        // swap (0,0) <-> (1,1) only: indices 0 and 3
        let p = Permutation::transposition(4, 0, 3);
        assert!(matches!(t.decompose(&p), Err(Error::NotMember(_))));
        let w = t.decompose(&Permutation::identity(4)).unwrap();
        assert_eq!(w, t.identity_element());
    }

    #[test]
    fn file_round_trip() {
        let t = WreathTower::new(vec![s2(), PermGroup::symmetric(3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = t.random_element(&mut rng);
        let f = t.element_to_file(&w);
        assert_eq!(t.element_from_file(&f).unwrap(), w);
        let t2 = WreathTower::from_file(&t.to_file()).unwrap();
        assert_eq!(t2.order_formula(), t.order_formula());
    }
}
