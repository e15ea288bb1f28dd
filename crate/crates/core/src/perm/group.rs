//! Permutation groups via a deterministic Schreier–Sims stabilizer chain.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::error::{Error, Result};

/// One level of a stabilizer chain: `G^(i)`, the pointwise stabilizer of
/// the earlier base points, with its orbit of `base` and a transversal.
#[derive(Clone, Debug)]
pub struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
    /// `tested[k]`: number of generators whose Schreier generator with
    /// `orbit[k]` has been sifted.
    tested: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        let inverse_transversal = transversal.clone();
        Level { base, gens: Vec::new(), orbit: vec![base], transversal, inverse_transversal, tested: vec![0] }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn in_orbit(&self, x: usize) -> bool {
        self.transversal[x].is_some()
    }

    /// `u_x` with `u_x(base) = x`.
    pub fn transversal(&self, x: usize) -> Option<&Permutation> {
        self.transversal[x].as_ref()
    }

    pub fn inverse_transversal(&self, x: usize) -> Option<&Permutation> {
        self.inverse_transversal[x].as_ref()
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.apply(x);
                if self.transversal[y].is_none() {
                    let u = s.compose(self.transversal[x].as_ref().unwrap());
                    self.inverse_transversal[y] = Some(u.inverse());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                    self.tested.push(0);
                }
            }
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
struct Chain {
    degree: usize,
    levels: Vec<Level>,
    /// `rank[x]`: position of `x` in the base-choice priority order.
    rank: Vec<usize>,
}

enum Sift {
    Member,
    /// Residue and the index of the level where sifting stopped.
    Residue(Permutation, usize),
}

impl Chain {
    fn new(degree: usize, prefix: &[usize], priority: Option<&[usize]>) -> Self {
        let mut rank = vec![usize::MAX; degree];
        let mut next = 0;
        for &x in prefix.iter().chain(priority.unwrap_or(&[])).chain(&(0..degree).collect::<Vec<_>>()) {
            if rank[x] == usize::MAX {
                rank[x] = next;
                next += 1;
            }
        }
        let levels = prefix.iter().map(|&b| Level::new(degree, b)).collect();
        Chain { degree, levels, rank }
    }

    fn sift(&self, g: &Permutation, from: usize) -> Sift {
        let mut g = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let y = g.apply(level.base);
            match &level.inverse_transversal[y] {
                Some(inv) => g = inv.compose(&g),
                None => return Sift::Residue(g, i),
            }
        }
        if g.is_identity() {
            Sift::Member
        } else {
            Sift::Residue(g, self.levels.len())
        }
    }

    /// Adds `g` as a strong generator to levels `0..=to`, creating level
    /// `to` if needed.
    fn add_strong_gen(&mut self, g: Permutation, to: usize) {
        if to == self.levels.len() {
            let base = (0..self.degree)
                .filter(|&x| !g.fixes(x))
                .min_by_key(|&x| self.rank[x])
                .expect("residue is not the identity");
            self.levels.push(Level::new(self.degree, base));
        }
        for level in self.levels[..=to].iter_mut().rev() {
            level.gens.push(g.clone());
        }
    }

    /// Tests untested Schreier generators at level `i`. Returns the level a
    /// new strong generator was added to, if any.
    fn close_step(&mut self, i: usize) -> Option<usize> {
        self.levels[i].extend_orbit();
        for k in 0..self.levels[i].orbit.len() {
            let x = self.levels[i].orbit[k];
            while self.levels[i].tested[k] < self.levels[i].gens.len() {
                let level = &self.levels[i];
                let s = &level.gens[level.tested[k]];
                let y = s.apply(x);
                let h = level.inverse_transversal[y]
                    .as_ref()
                    .unwrap()
                    .compose(&s.compose(level.transversal[x].as_ref().unwrap()));
                let outcome = self.sift(&h, i + 1);
                self.levels[i].tested[k] += 1;
                if let Sift::Residue(r, j) = outcome {
                    self.add_strong_gen(r, j);
                    return Some(j);
                }
            }
        }
        None
    }

    /// Closes levels from `start` up to 0.
    fn close_from(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.close_step(i as usize) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn add_generator(&mut self, g: &Permutation) -> bool {
        match self.sift(g, 0) {
            Sift::Member => false,
            Sift::Residue(r, j) => {
                self.add_strong_gen(r, j);
                self.close_from(j);
                true
            }
        }
    }
}

/// A permutation group with its stabilizer chain. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<Chain>,
}

/// On-disk form: `{"n": N, "generators": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermGroupFile {
    pub n: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Chain with base points chosen as the smallest moved point.
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::with_base(degree, generators, &[], None)
    }

    /// Chain whose base begins with `prefix` (kept even where the orbit is
    /// trivial); further base points are the first moved point in
    /// `priority` order, then in natural order.
    pub fn with_base(
        degree: usize,
        generators: &[Permutation],
        prefix: &[usize],
        priority: Option<&[usize]>,
    ) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DomainMismatch { expected: degree, found: g.degree() });
            }
        }
        if let Some(&x) = prefix.iter().chain(priority.unwrap_or(&[])).find(|&&x| x >= degree) {
            return Err(Error::InvalidInput(format!("base point {x} outside the domain")));
        }
        let mut chain = Chain::new(degree, prefix, priority);
        let kept: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &kept {
            chain.add_generator(g);
        }
        Ok(PermGroup { degree, generators: kept, chain: Arc::new(chain) })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, &[]).expect("no generators")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::transposition(degree, 0, 1));
            gens.push(Permutation::cycle(degree, &(0..degree).collect::<Vec<_>>()));
        }
        Self::new(degree, &gens).expect("valid generators")
    }

    /// The group generated by `self` and `extra`.
    pub fn extended(&self, extra: &[Permutation]) -> Result<Self> {
        let mut chain = (*self.chain).clone();
        let mut generators = self.generators.clone();
        for g in extra {
            if g.degree() != self.degree {
                return Err(Error::DomainMismatch { expected: self.degree, found: g.degree() });
            }
            if chain.add_generator(g) {
                generators.push(g.clone());
            }
        }
        Ok(PermGroup { degree: self.degree, generators, chain: Arc::new(chain) })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn levels(&self) -> &[Level] {
        &self.chain.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels().iter().map(|l| l.base).collect()
    }

    /// Every strong generator, each listed once.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in self.levels().iter().rev() {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn order(&self) -> BigUint {
        self.levels().iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order if it fits in a `u128`.
    pub fn order_u128(&self) -> Option<u128> {
        self.order().to_u128()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels().iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && matches!(self.chain.sift(p, 0), Sift::Member)
    }

    /// On success, the orbit points `y_0, y_1, …` with
    /// `p = u_{y_0} ∘ u_{y_1} ∘ …` (one per level).
    pub fn factorize(&self, p: &Permutation) -> Option<Vec<usize>> {
        if p.degree() != self.degree {
            return None;
        }
        let mut g = p.clone();
        let mut word = Vec::with_capacity(self.levels().len());
        for level in self.levels() {
            let y = g.apply(level.base);
            g = level.inverse_transversal[y].as_ref()?.compose(&g);
            word.push(y);
        }
        g.is_identity().then_some(word)
    }

    /// The element with factorization `word`.
    pub fn element_from_word(&self, word: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (level, &y) in self.levels().iter().zip(word) {
            acc = acc.compose(level.transversal[y].as_ref().expect("orbit point"));
        }
        acc
    }

    /// Every element, in mixed-radix order over the levels. Refuses groups
    /// larger than `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        let size = order.to_usize().filter(|&s| s <= limit).ok_or(Error::DomainTooLarge {
            size: order.to_usize().unwrap_or(usize::MAX),
            bound: limit,
        })?;
        let mut out = Vec::with_capacity(size);
        self.collect_elements(0, Permutation::identity(self.degree), &mut out);
        Ok(out)
    }

    fn collect_elements(&self, i: usize, prefix: Permutation, out: &mut Vec<Permutation>) {
        let Some(level) = self.levels().get(i) else {
            out.push(prefix);
            return;
        };
        for &y in &level.orbit {
            self.collect_elements(i + 1, prefix.compose(level.transversal[y].as_ref().unwrap()), out);
        }
    }

    /// A uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let word: Vec<usize> =
            self.levels().iter().map(|l| l.orbit[rng.gen_range(0..l.orbit.len())]).collect();
        self.element_from_word(&word)
    }

    /// The orbit of `x` under the whole group, sorted.
    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            let y = orbit[k];
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbit partition: `orbit_id[x]` indexes the orbit of `x`.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.degree];
        let mut next = 0;
        for x in 0..self.degree {
            if id[x] == usize::MAX {
                for y in self.orbit_of(x) {
                    id[y] = next;
                }
                next += 1;
            }
        }
        id
    }

    /// Same group, at most `log2 |G|` generators: strong generators are
    /// kept greedily when they enlarge the group generated so far.
    pub fn reduce_generators(&self) -> PermGroup {
        let mut chain = Chain::new(self.degree, &[], None);
        let mut kept = Vec::new();
        let target = self.order();
        let mut candidates = self.generators.clone();
        candidates.extend(self.strong_generators());
        for g in candidates {
            if chain.add_generator(&g) {
                kept.push(g);
                let order = chain.levels.iter().fold(BigUint::one(), |a, l| a * BigUint::from(l.orbit.len()));
                if order == target {
                    break;
                }
            }
        }
        PermGroup { degree: self.degree, generators: kept, chain: Arc::new(chain) }
    }

    /// Rebuilds the chain with a new base prefix and priority.
    pub fn rebase(&self, prefix: &[usize], priority: Option<&[usize]>) -> Result<PermGroup> {
        let gens = if self.generators.len() > 2 * self.levels().len() + 4 {
            self.reduce_generators().generators
        } else {
            self.generators.clone()
        };
        Self::with_base(self.degree, &gens, prefix, priority)
    }

    /// The pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let mut points = points.to_vec();
        points.dedup();
        let points: Vec<usize> = points.iter().enumerate().filter(|(k, x)| !points[..*k].contains(x)).map(|(_, &x)| x).collect();
        let g = self.rebase(&points, None)?;
        let gens: Vec<Permutation> = g.levels().get(points.len()).map(|l| l.gens.clone()).unwrap_or_default();
        Self::new(self.degree, &gens)
    }

    /// `{ a^-1 g a }`
    pub fn conjugate(&self, a: &Permutation) -> Result<PermGroup> {
        let inv = a.inverse();
        let gens: Vec<Permutation> = self.generators.iter().map(|g| inv.compose(&g.compose(a))).collect();
        Self::new(self.degree, &gens)
    }

    /// Same order and mutual containment of generators.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn to_file(&self) -> PermGroupFile {
        PermGroupFile { n: self.degree, generators: self.generators.iter().map(Permutation::images).collect() }
    }

    pub fn from_file(f: &PermGroupFile) -> Result<Self> {
        let gens = f
            .generators
            .iter()
            .map(|g| {
                if g.len() != f.n {
                    return Err(Error::DomainMismatch { expected: f.n, found: g.len() });
                }
                Permutation::from_images(g.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.n, &gens)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn basic_orders() {
        assert_eq!(PermGroup::new(3, &[]).unwrap().order(), BigUint::one());
        let s3 = PermGroup::new(3, &[Permutation::transposition(3, 0, 1), Permutation::cycle(3, &[0, 1, 2])]).unwrap();
        assert_eq!(s3.order(), BigUint::from(6u32));
        // Z2 wr Z2 on 4 points
        let w = PermGroup::new(
            4,
            &[Permutation::transposition(4, 0, 1), Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap()],
        )
        .unwrap();
        assert_eq!(w.order(), BigUint::from(8u32));
        assert_eq!(PermGroup::symmetric(8).order(), BigUint::from(40320u32));
    }

    #[test]
    fn membership() {
        let c3 = PermGroup::new(3, &[Permutation::cycle(3, &[0, 1, 2])]).unwrap();
        assert!(c3.contains(&Permutation::identity(3)));
        assert!(!c3.contains(&Permutation::transposition(3, 0, 1)));
        let g = PermGroup::new(
            7,
            &[Permutation::cycle(7, &[0, 1, 2, 3, 4, 5, 6]), Permutation::from_cycles(7, &[vec![1, 2, 4], vec![3, 6, 5]]).unwrap()],
        )
        .unwrap();
        assert_eq!(g.order(), BigUint::from(21u32));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut p = Permutation::identity(7);
        for _ in 0..20 {
            p = g.generators()[rng.gen_range(0..2)].compose(&p);
        }
        let word = g.factorize(&p).unwrap();
        assert_eq!(g.element_from_word(&word), p);
    }

    #[test]
    fn matches_exhaustive_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let degree = rng.gen_range(2..8);
            let k = rng.gen_range(1..4);
            let gens: Vec<Permutation> = (0..k)
                .map(|_| {
                    let mut v: Vec<usize> = (0..degree).collect();
                    // random involution-ish or cycle on a subset
                    let a = rng.gen_range(0..degree);
                    let b = rng.gen_range(0..degree);
                    v.swap(a, b);
                    if rng.gen_bool(0.5) {
                        v.rotate_left(1);
                    }
                    Permutation::from_images(v).unwrap()
                })
                .collect();
            let g = PermGroup::new(degree, &gens).unwrap();
            let all = closure(degree, &gens);
            assert_eq!(g.order(), BigUint::from(all.len()));
            let listed: HashSet<Permutation> = g.elements(10_000).unwrap().into_iter().collect();
            assert_eq!(listed, all);
            let sym = PermGroup::symmetric(degree).elements(10_000).unwrap();
            for p in sym {
                assert_eq!(g.contains(&p), all.contains(&p));
            }
        }
    }

    #[test]
    fn reduce_many_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(5000);
        let s8 = PermGroup::symmetric(8);
        let gens: Vec<Permutation> = (0..5000).map(|_| s8.random_element(&mut rng)).collect();
        let big = PermGroup::new(8, &gens).unwrap();
        assert_eq!(big.order(), s8.order());
        let small = big.reduce_generators();
        assert!(small.generators().len() <= 16);
        assert!(small.same_group(&big));
    }

    #[test]
    fn stabilizers() {
        let s5 = PermGroup::symmetric(5);
        let st = s5.pointwise_stabilizer(&[4, 2]).unwrap();
        assert_eq!(st.order(), BigUint::from(6u32));
        for g in st.generators() {
            assert!(g.fixes(4) && g.fixes(2));
        }
        let g = s5.rebase(&[3], Some(&[1, 0])).unwrap();
        assert_eq!(g.base()[0], 3);
        assert!(g.same_group(&s5));
    }
}
