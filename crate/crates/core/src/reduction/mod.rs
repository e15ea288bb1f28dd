//! Group isomorphism through the radical derived series.
//!
//! `1 = N_0 ◁ N_1 ◁ ⋯ ◁ N_m = G` is the derived series of `Rad(G)` with
//! `G` on top; `F_i = N_i / N_{i-1}`. Every `g` factors uniquely as
//! `ℓ_m(x_m) ⋯ ℓ_1(x_1)` with `ℓ_i` the minimal-index lift of `F_i`, and
//! the tuple `(x_1, …, x_m)` is indexed in mixed radix with `x_1` least
//! significant. Replacing each `F_i` by its canonical form gives `G̃`.

mod pipeline;

pub use pipeline::{theorem1_pipeline, EmptyReason, PipelineOutput, PipelineReport, Reduction};

use crate::abelian::{canonical_decomposition, AbelianDecomposition};
use crate::error::{Error, Result};
use crate::group::{derived_series_of, find_isomorphism, solvable_radical, FiniteGroup, Quotient, Subgroup, SubnormalSeries};
use crate::perm::{PermGroup, Permutation};
use crate::wreath::{Holomorph, WreathTower};

#[derive(Clone, Debug)]
pub struct RadicalDerivedSeries {
    pub parent: FiniteGroup,
    pub chain: SubnormalSeries,
    /// `F_1, …, F_m`.
    pub factors: Vec<FiniteGroup>,
    /// Whether `Rad(G) = G`; otherwise `F_m = G / Rad(G)` is semisimple.
    pub solvable: bool,
    /// `N_i` as a standalone group and `N_i / N_{i-1}` inside it.
    steps: Vec<(FiniteGroup, Quotient)>,
}

impl RadicalDerivedSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(x_1, …, x_m)` with `g = ℓ_m(x_m) ⋯ ℓ_1(x_1)`.
    pub fn factorize(&self, g: usize) -> Vec<usize> {
        let m = self.len();
        let mut x = vec![0; m];
        let mut h = g;
        for i in (0..m).rev() {
            let sub = &self.chain.chain[i + 1];
            let pos = sub.elements().binary_search(&h).expect("h lies in N_i");
            let (_, q) = &self.steps[i];
            x[i] = q.projection[pos];
            let lift = self.lift(i, x[i]);
            h = self.parent.mul(self.parent.inv(lift), h);
        }
        debug_assert_eq!(h, 0);
        x
    }

    /// `ℓ_i(x)` as an element of `G` (`i` 0-based).
    pub fn lift(&self, i: usize, x: usize) -> usize {
        self.chain.chain[i + 1].elements()[self.steps[i].1.representatives[x]]
    }

    pub fn compose(&self, x: &[usize]) -> usize {
        (0..self.len()).rev().fold(0, |acc, i| self.parent.mul(acc, self.lift(i, x[i])))
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(FiniteGroup::order).collect()
    }
}

pub fn radical_derived_series(g: &FiniteGroup) -> RadicalDerivedSeries {
    let radical = solvable_radical(g);
    let mut chain: Vec<Subgroup> = derived_series_of(g, &radical).chain;
    chain.reverse();
    let solvable = radical.order() == g.order();
    if !solvable {
        chain.push(Subgroup::whole(g));
    }
    // the derived series of a trivial radical is just [1]
    chain.dedup_by(|a, b| a.order() == b.order());
    let mut factors = Vec::new();
    let mut steps = Vec::new();
    for w in chain.windows(2) {
        let big = w[1].as_group(g);
        let small: Vec<usize> =
            w[0].elements().iter().map(|x| w[1].elements().binary_search(x).expect("nested")).collect();
        let small = Subgroup::from_elements(&big, &small).expect("subgroup");
        let q = small.quotient(&big).expect("normal link");
        factors.push(q.group.clone());
        steps.push((big, q));
    }
    RadicalDerivedSeries { parent: g.clone(), chain: SubnormalSeries { chain }, factors, solvable, steps }
}

/// `Ĝ` on the tuple index set, with `ℓ` as the list of `G` elements.
pub fn hat_group(s: &RadicalDerivedSeries) -> (FiniteGroup, Vec<usize>) {
    let radix = s.factor_orders();
    let n = s.parent.order();
    let ell: Vec<usize> = (0..n).map(|t| s.compose(&digits(t, &radix))).collect();
    let mut inv = vec![0; n];
    for (t, &g) in ell.iter().enumerate() {
        inv[g] = t;
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = inv[s.parent.mul(ell[a], ell[b])] as u32;
        }
    }
    (FiniteGroup::from_trusted(n, table).expect("transported group"), ell)
}

fn digits(mut t: usize, radix: &[usize]) -> Vec<usize> {
    radix
        .iter()
        .map(|&r| {
            let d = t % r;
            t /= r;
            d
        })
        .collect()
}

fn undigits(d: &[usize], radix: &[usize]) -> usize {
    d.iter().zip(radix).rev().fold(0, |acc, (&x, &r)| acc * r + x)
}

/// Canonical form of one factor.
#[derive(Clone, Debug)]
pub enum FactorShape {
    Abelian(AbelianDecomposition),
    /// A fixed copy of the semisimple top factor.
    Semisimple(FiniteGroup),
}

impl FactorShape {
    pub fn group(&self) -> FiniteGroup {
        match self {
            FactorShape::Abelian(d) => d.to_group(),
            FactorShape::Semisimple(g) => g.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FactorShape::Abelian(d) => d.order(),
            FactorShape::Semisimple(g) => g.order(),
        }
    }

    pub fn matches(&self, other: &FactorShape) -> bool {
        match (self, other) {
            (FactorShape::Abelian(a), FactorShape::Abelian(b)) => a == b,
            (FactorShape::Semisimple(a), FactorShape::Semisimple(b)) => a.flat_table() == b.flat_table(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TildeGroup {
    pub source: FiniteGroup,
    pub series: RadicalDerivedSeries,
    pub factor_shapes: Vec<FactorShape>,
    pub table: FiniteGroup,
    /// `G → G̃`.
    pub iso_from_source: Vec<usize>,
}

impl TildeGroup {
    pub fn radix(&self) -> Vec<usize> {
        self.factor_shapes.iter().map(FactorShape::order).collect()
    }

    pub fn top(&self) -> Option<&FiniteGroup> {
        match self.factor_shapes.last() {
            Some(FactorShape::Semisimple(g)) if !self.series.solvable => Some(g),
            _ => None,
        }
    }

    pub fn same_shape(&self, other: &TildeGroup) -> bool {
        self.series.solvable == other.series.solvable
            && self.factor_shapes.len() == other.factor_shapes.len()
            && self.factor_shapes.iter().zip(&other.factor_shapes).all(|(a, b)| a.matches(b))
    }

    /// `Hol(F̃_1) ≀ ⋯ ≀ Hol(F̃_m)` on the index set of `G̃`.
    pub fn holomorph_tower(&self) -> Result<WreathTower> {
        let levels = self
            .factor_shapes
            .iter()
            .map(|s| Holomorph::new(&s.group()).map(|h| h.group))
            .collect::<Result<Vec<PermGroup>>>()?;
        WreathTower::new(levels)
    }

    /// Tuples whose coordinates above `j` are the identity (`j` 0-based
    /// count of free coordinates).
    pub fn prefix_set(&self, j: usize) -> Vec<usize> {
        let radix = self.radix();
        let size: usize = radix[..j].iter().product();
        (0..size).collect()
    }
}

/// `G̃`. The H-side call passes the G-side semisimple top as `anchor`.
pub fn tilde_group(s: &RadicalDerivedSeries, anchor: Option<&FiniteGroup>) -> Result<TildeGroup> {
    let m = s.len();
    let mut shapes = Vec::with_capacity(m);
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (i, f) in s.factors.iter().enumerate() {
        if i + 1 == m && !s.solvable {
            let (shape, map) = match anchor {
                None => (f.clone(), (0..f.order()).collect()),
                Some(a) => {
                    let map = find_isomorphism(f, a).ok_or(Error::TopFactorNotIsomorphic)?;
                    (a.clone(), map)
                }
            };
            shapes.push(FactorShape::Semisimple(shape));
            maps.push(map);
        } else {
            let (d, iso) = canonical_decomposition(f)?;
            shapes.push(FactorShape::Abelian(d));
            maps.push(iso);
        }
    }
    let radix: Vec<usize> = shapes.iter().map(FactorShape::order).collect();
    let n = s.parent.order();
    let iso: Vec<usize> = (0..n)
        .map(|g| {
            let x = s.factorize(g);
            let y: Vec<usize> = x.iter().zip(&maps).map(|(&xi, map)| map[xi]).collect();
            undigits(&y, &radix)
        })
        .collect();
    let mut inv = vec![0; n];
    for (g, &t) in iso.iter().enumerate() {
        inv[t] = g;
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = iso[s.parent.mul(inv[a], inv[b])] as u32;
        }
    }
    let table = FiniteGroup::from_trusted(n, table)?;
    Ok(TildeGroup { source: s.parent.clone(), series: s.clone(), factor_shapes: shapes, table, iso_from_source: iso })
}

/// The derived series of `G̃` (of the radical image when `G` is not
/// solvable), as index sets, equals the cartesian prefixes
/// `C(F_1) × ⋯ × C(F_j)` with identity above; and the radical derived
/// chain of `G` maps onto the same prefixes.
pub fn check_prefix_derived(t: &TildeGroup) -> bool {
    let m = t.factor_shapes.len();
    let g = &t.table;
    let top = if t.series.solvable { m } else { m.saturating_sub(1) };
    let start = match Subgroup::from_elements(g, &t.prefix_set(top)) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let derived = derived_series_of(g, &start);
    if !derived.solvable || derived.chain.len() != top + 1 {
        return false;
    }
    let derived_ok = derived.chain.iter().enumerate().all(|(i, sub)| sub.elements() == t.prefix_set(top - i).as_slice());
    let chain_ok = t.series.chain.chain.iter().enumerate().all(|(j, n)| {
        let mut image: Vec<usize> = n.elements().iter().map(|&x| t.iso_from_source[x]).collect();
        image.sort_unstable();
        image == t.prefix_set(j)
    });
    derived_ok && chain_ok
}

/// Every isomorphism `G̃ → H̃` lies in `Hol(F̃_1) ≀ ⋯ ≀ Hol(F̃_m)`.
pub fn iso_wr_membership_check(g: &TildeGroup, h: &TildeGroup) -> Result<bool> {
    if !g.same_shape(h) {
        return Ok(false);
    }
    if g.factor_shapes.is_empty() {
        return Ok(true);
    }
    let tower = g.holomorph_tower()?;
    let mut ok = true;
    crate::group::for_each_isomorphism(&g.table, &h.table, |_, _| true, |m| {
        let p = Permutation::from_images(m.iter().map(|&x| x as usize).collect()).expect("bijection");
        if tower.decompose(&p).is_err() {
            ok = false;
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    });
    Ok(ok)
}
