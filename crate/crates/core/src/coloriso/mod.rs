//! Color isomorphism over subcosets of permutation groups.
//!
//! Given colorings `f1`, `f2` and a coset `σΓ`, the solutions
//! `{ π ∈ σΓ : f2(πx) = f1(x) }` are empty or `π0 · K` where `K` is the
//! color automorphism group of `f1` inside `Γ`. The solver finds `π0` by
//! backtracking down the stabilizer chain of `Γ` and builds `K` level by
//! level, searching only for orbit points not yet reached.

mod cis;

pub use cis::{certify_cis, CisCertificate, GroupStructure, HOLOMORPH_BOUND};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{generating_sequence, FiniteGroup};
use crate::perm::{
    subcoset_intersect_filter, Level, PermGroup, PermGroupFile, Permutation, Subcoset,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// A color per point.
    Points(Vec<u32>),
    /// The indicator of `{(x, y, table[x][y])}` on `X³`.
    Triples { n: usize, table: Vec<u32> },
}

impl Coloring {
    pub fn multiplication(g: &FiniteGroup) -> Self {
        Coloring::Triples { n: g.order(), table: g.flat_table().to_vec() }
    }

    /// Size of `X` (not `X³`).
    pub fn points(&self) -> usize {
        match self {
            Coloring::Points(v) => v.len(),
            Coloring::Triples { n, .. } => *n,
        }
    }

    pub fn is_triples(&self) -> bool {
        matches!(self, Coloring::Triples { .. })
    }

    pub fn triple(&self, x: usize, y: usize, z: usize) -> u32 {
        match self {
            Coloring::Triples { n, table } => u32::from(table[x * n + y] as usize == z),
            Coloring::Points(_) => panic!("not a triples coloring"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ColorIsoInstance {
    pub coset: Subcoset,
    pub f1: Coloring,
    pub f2: Coloring,
}

impl ColorIsoInstance {
    pub fn new(coset: Subcoset, f1: Coloring, f2: Coloring) -> Result<Self> {
        if f1.is_triples() != f2.is_triples() {
            return Err(Error::InvalidInput("colorings of different kinds".into()));
        }
        for f in [&f1, &f2] {
            if f.points() != coset.degree() {
                return Err(Error::DomainMismatch { expected: coset.degree(), found: f.points() });
            }
            if let Coloring::Triples { n, table } = f {
                if table.len() != n * n || table.iter().any(|&z| z as usize >= *n) {
                    return Err(Error::InvalidInput("triples table must be n×n with entries below n".into()));
                }
            }
        }
        Ok(ColorIsoInstance { coset, f1, f2 })
    }

    pub fn mode(&self) -> &'static str {
        if self.f1.is_triples() {
            "triples"
        } else {
            "points"
        }
    }

    /// Whether `π` satisfies `f2(πx) = f1(x)` on the whole domain.
    pub fn accepts(&self, p: &Permutation) -> bool {
        match (&self.f1, &self.f2) {
            (Coloring::Points(a), Coloring::Points(b)) => (0..a.len()).all(|x| b[p.apply(x)] == a[x]),
            _ => {
                let n = self.f1.points();
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        (0..n).all(|z| self.f2.triple(p.apply(x), p.apply(y), p.apply(z)) == self.f1.triple(x, y, z))
                    })
                })
            }
        }
    }

    pub fn to_file(&self) -> Option<InstanceFile> {
        let (rep, group) = match &self.coset {
            Subcoset::Empty { .. } => return None,
            Subcoset::Coset { rep, group } => (rep, group),
        };
        let flat = |f: &Coloring| match f {
            Coloring::Points(v) => v.clone(),
            Coloring::Triples { table, .. } => table.clone(),
        };
        Some(InstanceFile {
            mode: self.mode().to_string(),
            coset: CosetFile { rep: Some(rep.images()), group: group.to_file() },
            f1: flat(&self.f1),
            f2: flat(&self.f2),
        })
    }

    pub fn from_file(f: &InstanceFile) -> Result<Self> {
        let coset = f.coset.to_subcoset()?;
        let n = coset.degree();
        let (f1, f2) = match f.mode.as_str() {
            "points" => (Coloring::Points(f.f1.clone()), Coloring::Points(f.f2.clone())),
            "triples" => (
                Coloring::Triples { n, table: f.f1.clone() },
                Coloring::Triples { n, table: f.f2.clone() },
            ),
            other => return Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        };
        Self::new(coset, f1, f2)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetFile {
    pub rep: Option<Vec<usize>>,
    pub group: PermGroupFile,
}

impl CosetFile {
    /// `None` for the empty coset.
    pub fn from_subcoset(c: &Subcoset) -> Option<Self> {
        match c {
            Subcoset::Empty { .. } => None,
            Subcoset::Coset { rep, group } => Some(CosetFile { rep: Some(rep.images()), group: group.to_file() }),
        }
    }

    /// A missing representative means the identity.
    pub fn to_subcoset(&self) -> Result<Subcoset> {
        let group = PermGroup::from_file(&self.group)?;
        let rep = match &self.rep {
            Some(r) => Permutation::from_images(r.clone())?,
            None => Permutation::identity(group.degree()),
        };
        Subcoset::new(rep, group)
    }
}

/// On-disk instance; in triples mode `f1`, `f2` are row-major Cayley
/// tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub mode: String,
    pub coset: CosetFile,
    pub f1: Vec<u32>,
    pub f2: Vec<u32>,
}

/// A base prefix that lets triple constraints force most images: the
/// generators of the group presented by `table`, then every point in the
/// order it first appears as a product of earlier ones.
pub fn triples_base(n: usize, table: &[u32]) -> Vec<usize> {
    let mut order = match FiniteGroup::from_flat(n, table.to_vec()) {
        Ok(g) => generating_sequence(&g),
        Err(_) => Vec::new(),
    };
    let mut seen = vec![false; n];
    for &x in &order {
        seen[x] = true;
    }
    let mut i = 0;
    loop {
        while i < order.len() {
            for j in 0..=i {
                for (a, b) in [(order[i], order[j]), (order[j], order[i])] {
                    let z = table[a * n + b] as usize;
                    if !seen[z] {
                        seen[z] = true;
                        order.push(z);
                    }
                }
            }
            i += 1;
        }
        match (0..n).find(|&x| !seen[x]) {
            Some(x) => {
                seen[x] = true;
                order.push(x);
            }
            None => break,
        }
    }
    order
}

/// Points ordered by the size of their `f1` color class, rarest first.
fn rarity_order(colors: &[u32]) -> Vec<usize> {
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &c in colors {
        *counts.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..colors.len()).collect();
    order.sort_by_key(|&x| (counts[&colors[x]], x));
    order
}

/// The chain of `group` rebuilt with the base the solver wants for `f1`,
/// unless it already has it.
pub fn prepare_group(group: &PermGroup, f1: &Coloring) -> Result<PermGroup> {
    match f1 {
        Coloring::Triples { n, table } => {
            let prefix = triples_base(*n, table);
            if group.base().starts_with(&prefix) {
                Ok(group.clone())
            } else {
                group.rebase(&prefix, None)
            }
        }
        Coloring::Points(colors) => group.rebase(&[], Some(&rarity_order(colors))),
    }
}

/// A color isomorphism search over a fixed group `Γ` and source coloring
/// `f1`; reusable across representatives and target colorings.
///
/// Stage `j` of a search knows the images of `Fix(Γ^(j))`; each check is
/// attached to the first stage at which all its points are known.
#[derive(Clone, Debug)]
pub struct ColorIsoSolver {
    group: PermGroup,
    f1: Coloring,
    /// Points first known at each stage (points mode).
    point_checks: Vec<Vec<usize>>,
    /// Pairs `(x, y)` first checkable at each stage (triples mode).
    pair_checks: Vec<Vec<(usize, usize)>>,
    /// A pair `(x, y)` of known points with `x y = base` (triples mode).
    forced: Vec<Option<(usize, usize)>>,
}

impl ColorIsoSolver {
    pub fn new(group: &PermGroup, f1: Coloring) -> Result<Self> {
        if f1.points() != group.degree() {
            return Err(Error::DomainMismatch { expected: group.degree(), found: f1.points() });
        }
        let group = prepare_group(group, &f1)?;
        let levels = group.levels();
        let n = group.degree();
        let depth = levels.len();
        let mut stage = vec![depth; n];
        for j in (0..depth).rev() {
            let mut moved = vec![false; n];
            for g in levels[j].gens() {
                for (x, m) in moved.iter_mut().enumerate() {
                    *m |= !g.fixes(x);
                }
            }
            for x in 0..n {
                if !moved[x] {
                    stage[x] = j;
                }
            }
        }
        let mut point_checks = vec![Vec::new(); depth + 1];
        let mut pair_checks = vec![Vec::new(); depth + 1];
        let mut forced = vec![None; depth];
        match &f1 {
            Coloring::Points(_) => {
                for x in 0..n {
                    point_checks[stage[x]].push(x);
                }
            }
            Coloring::Triples { table, .. } => {
                let mut level_of = vec![None; n];
                for (k, l) in levels.iter().enumerate() {
                    level_of[l.base()] = Some(k);
                }
                for x in 0..n {
                    for y in 0..n {
                        let z = table[x * n + y] as usize;
                        pair_checks[stage[x].max(stage[y]).max(stage[z])].push((x, y));
                        if let Some(k) = level_of[z] {
                            if stage[x].max(stage[y]) <= k {
                                forced[k].get_or_insert((x, y));
                            }
                        }
                    }
                }
            }
        }
        Ok(ColorIsoSolver { group, f1, point_checks, pair_checks, forced })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    fn levels(&self) -> &[Level] {
        self.group.levels()
    }

    fn check(&self, p: &Permutation, f2: &Coloring, stage: usize) -> bool {
        match (&self.f1, f2) {
            (Coloring::Points(a), Coloring::Points(b)) => self.point_checks[stage].iter().all(|&x| b[p.apply(x)] == a[x]),
            (Coloring::Triples { n, table: t1 }, Coloring::Triples { table: t2, .. }) => {
                self.pair_checks[stage].iter().all(|&(x, y)| {
                    let z = t1[x * n + y] as usize;
                    t2[p.apply(x) * n + p.apply(y)] as usize == p.apply(z)
                })
            }
            _ => false,
        }
    }

    /// One element of `rho · Γ^(k)` accepted by the colorings; `rho` has
    /// passed every stage up to `k`.
    fn find_from(&self, rho: &Permutation, f2: &Coloring, k: usize) -> Option<Permutation> {
        let levels = self.levels();
        if k == levels.len() {
            return Some(rho.clone());
        }
        let level = &levels[k];
        let b = level.base();
        let forced_point = match (self.forced[k], f2) {
            (Some((x, y)), Coloring::Triples { n, table }) => {
                let target = table[rho.apply(x) * n + rho.apply(y)] as usize;
                Some(rho.inverse().apply(target))
            }
            _ => None,
        };
        let candidates: Vec<usize> = match forced_point {
            Some(x) if level.in_orbit(x) => vec![x],
            Some(_) => return None,
            None => level.orbit().to_vec(),
        };
        for x in candidates {
            if let (Coloring::Points(a), Coloring::Points(c)) = (&self.f1, f2) {
                if c[rho.apply(x)] != a[b] {
                    continue;
                }
            }
            let next = rho.compose(level.transversal(x).expect("orbit point"));
            if self.check(&next, f2, k + 1) {
                if let Some(found) = self.find_from(&next, f2, k + 1) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// One `π ∈ rep · Γ` with `f2(πx) = f1(x)`.
    pub fn find(&self, rep: &Permutation, f2: &Coloring) -> Option<Permutation> {
        if f2.is_triples() != self.f1.is_triples() || f2.points() != self.f1.points() {
            return None;
        }
        if let (Coloring::Points(a), Coloring::Points(b)) = (&self.f1, f2) {
            if histogram(a) != histogram(b) {
                return None;
            }
        }
        if !self.check(rep, f2, 0) {
            return None;
        }
        self.find_from(rep, f2, 0)
    }

    /// `{ γ ∈ Γ : f1 ∘ γ = f1 }`, built from the bottom of the chain up;
    /// at each level only orbit points not yet reached are searched.
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        let degree = self.group.degree();
        let levels = self.levels();
        let mut gens: Vec<Permutation> = Vec::new();
        for k in (0..levels.len()).rev() {
            let level = &levels[k];
            let mut reached = orbit(degree, level.base(), &gens);
            for &x in level.orbit() {
                if reached[x] {
                    continue;
                }
                let u = level.transversal(x).expect("orbit point");
                if !self.check(u, &self.f1, k + 1) {
                    continue;
                }
                if let Some(p) = self.find_from(u, &self.f1, k + 1) {
                    gens.push(p);
                    reached = orbit(degree, level.base(), &gens);
                }
            }
        }
        PermGroup::new(degree, &gens)
    }

    /// All of `rep · Γ` respecting the colorings.
    pub fn solve(&self, rep: &Permutation, f2: &Coloring) -> Result<Subcoset> {
        match self.find(rep, f2) {
            None => Ok(Subcoset::Empty { degree: self.group.degree() }),
            Some(first) => Subcoset::new(first, self.automorphism_group()?),
        }
    }
}

fn orbit(degree: usize, x: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

fn histogram(colors: &[u32]) -> Vec<u32> {
    let mut h = colors.to_vec();
    h.sort_unstable();
    h
}

/// All elements of the instance coset respecting the colorings.
pub fn solve_color_iso(inst: &ColorIsoInstance) -> Result<Subcoset> {
    match &inst.coset {
        Subcoset::Empty { degree } => Ok(Subcoset::Empty { degree: *degree }),
        Subcoset::Coset { rep, group } => ColorIsoSolver::new(group, inst.f1.clone())?.solve(rep, &inst.f2),
    }
}

/// Enumerates the coset and keeps accepted elements.
pub fn solve_by_filter(inst: &ColorIsoInstance) -> Result<Subcoset> {
    subcoset_intersect_filter(&inst.coset, |p| inst.accepts(p))
}

/// Isomorphisms `G → H` inside `coset`, as permutations of the common
/// index set.
pub fn gris_solve(g: &FiniteGroup, h: &FiniteGroup, coset: &Subcoset) -> Result<Subcoset> {
    if g.order() != h.order() {
        return Ok(Subcoset::Empty { degree: coset.degree() });
    }
    let inst = ColorIsoInstance::new(coset.clone(), Coloring::multiplication(g), Coloring::multiplication(h))?;
    solve_color_iso(&inst)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{count_isomorphisms, cyclic, direct_product, symmetric};

    fn points(group: PermGroup, f1: Vec<u32>, f2: Vec<u32>) -> ColorIsoInstance {
        ColorIsoInstance::new(Subcoset::from_group(group), Coloring::Points(f1), Coloring::Points(f2)).unwrap()
    }

    #[test]
    fn examples() {
        let s3 = PermGroup::symmetric(3);
        let r = solve_color_iso(&points(s3.clone(), vec![0, 0, 0], vec![0, 0, 0])).unwrap();
        assert_eq!(r.order(), BigUint::from(6u32));
        let r = solve_color_iso(&points(s3.clone(), vec![0, 1, 2], vec![1, 0, 2])).unwrap();
        assert_eq!(r.order(), BigUint::from(1u32));
        assert_eq!(r.rep().unwrap(), &Permutation::transposition(3, 0, 1));
        assert!(solve_color_iso(&points(s3, vec![0, 0, 1], vec![0, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn gris_examples() {
        let z4 = cyclic(4);
        let id = Subcoset::from_group(PermGroup::trivial(4));
        assert_eq!(gris_solve(&z4, &z4, &id).unwrap().order(), BigUint::from(1u32));
        let sym = Subcoset::from_group(PermGroup::symmetric(4));
        assert_eq!(gris_solve(&z4, &z4, &sym).unwrap().order(), BigUint::from(2u32));
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(gris_solve(&z4, &v4, &sym).unwrap().is_empty());
        let s4 = symmetric(4);
        let (h, _) = s4.scrambled(5);
        let all = Subcoset::from_group(PermGroup::symmetric(24));
        let r = gris_solve(&s4, &h, &all).unwrap();
        assert_eq!(r.order(), BigUint::from(count_isomorphisms(&s4, &h)));
        for p in r.elements(100).unwrap() {
            assert!(crate::group::is_homomorphism(&s4, &h, &p.images()));
        }
    }

    #[test]
    fn matches_filter_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(2..8);
            let gens: Vec<Permutation> = (0..rng.gen_range(1..3))
                .map(|_| {
                    let mut v: Vec<usize> = (0..n).collect();
                    rand::seq::SliceRandom::shuffle(&mut v[..], &mut rng);
                    Permutation::from_images(v).unwrap()
                })
                .collect();
            let group = PermGroup::new(n, &gens).unwrap();
            let colors = rng.gen_range(1..4);
            let f1: Vec<u32> = (0..n).map(|_| rng.gen_range(0..colors)).collect();
            let sigma = group.random_element(&mut rng);
            let f2: Vec<u32> = if rng.gen_bool(0.5) {
                // solvable: f2 = f1 ∘ π^-1 for a coset element
                let inv = sigma.inverse();
                (0..n).map(|y| f1[inv.apply(y)]).collect()
            } else {
                (0..n).map(|_| rng.gen_range(0..colors)).collect()
            };
            let rep = Permutation::from_images({
                let mut v: Vec<usize> = (0..n).collect();
                if rng.gen_bool(0.3) {
                    v.swap(0, 1);
                }
                v
            })
            .unwrap();
            let inst = ColorIsoInstance::new(Subcoset::new(rep, group).unwrap(), Coloring::Points(f1), Coloring::Points(f2))
                .unwrap();
            let a = solve_color_iso(&inst).unwrap();
            let b = solve_by_filter(&inst).unwrap();
            assert!(a.same_set(&b));
        }
    }

    #[test]
    fn file_round_trip() {
        let inst = points(PermGroup::symmetric(3), vec![0, 1, 2], vec![1, 0, 2]);
        let f = inst.to_file().unwrap();
        let back = ColorIsoInstance::from_file(&serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap()).unwrap();
        assert_eq!(back.f1, inst.f1);
        assert!(solve_color_iso(&back).unwrap().same_set(&solve_color_iso(&inst).unwrap()));
    }
}
