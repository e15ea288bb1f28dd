//! Derived series, solvable radical, normal subgroups and composition factors.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::simple::conjugacy_class_reps;
use super::{generating_sequence, FiniteGroup, SimpleFactorLabel, Subgroup};
use crate::util::factorize;

/// `G = G^(0) ⊇ G^(1) ⊇ …`, stopping at the first repeat.
#[derive(Clone, Debug)]
pub struct DerivedSeries {
    pub chain: Vec<Subgroup>,
    pub solvable: bool,
}

/// An ascending chain `1 = chain[0] ◁ … ◁ chain[last] = G`.
#[derive(Clone, Debug)]
pub struct SubnormalSeries {
    pub chain: Vec<Subgroup>,
}

impl SubnormalSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.chain.iter().map(Subgroup::order).collect()
    }

    /// Each entry normal in its successor, trivial bottom, full top.
    pub fn is_valid(&self, g: &FiniteGroup) -> bool {
        let (Some(first), Some(last)) = (self.chain.first(), self.chain.last()) else {
            return false;
        };
        first.is_trivial()
            && last.order() == g.order()
            && self.chain.windows(2).all(|w| {
                let big = w[1].as_group(g);
                let pos = position_map(&w[1], g);
                let small: Vec<usize> = w[0].elements().iter().map(|&x| pos[x]).collect();
                w[0].is_subset_of(&w[1])
                    && Subgroup::from_elements(&big, &small).map(|s| s.is_normal_in(&big)).unwrap_or(false)
            })
    }
}

fn position_map(s: &Subgroup, g: &FiniteGroup) -> Vec<usize> {
    let mut pos = vec![usize::MAX; g.order()];
    for (k, &x) in s.elements().iter().enumerate() {
        pos[x] = k;
    }
    pos
}

pub fn derived_series(g: &FiniteGroup) -> DerivedSeries {
    derived_series_of(g, &Subgroup::whole(g))
}

/// Derived series of a subgroup `s` of `g`.
pub fn derived_series_of(g: &FiniteGroup, s: &Subgroup) -> DerivedSeries {
    let mut chain = vec![s.clone()];
    loop {
        let last = chain.last().unwrap();
        if last.is_trivial() {
            return DerivedSeries { chain, solvable: true };
        }
        let next = last.commutator_subgroup(g);
        if next.order() == last.order() {
            return DerivedSeries { chain, solvable: false };
        }
        chain.push(next);
    }
}

pub fn is_solvable(g: &FiniteGroup) -> bool {
    derived_series(g).solvable
}

/// The largest solvable normal subgroup. Built by repeatedly lifting a
/// solvable minimal-ish normal subgroup of `G / R` back to `G`.
pub fn solvable_radical(g: &FiniteGroup) -> Subgroup {
    let mut radical = Subgroup::trivial(g);
    loop {
        let q = radical.quotient(g).expect("radical is normal");
        let qg = &q.group;
        let gens = generating_sequence(qg);
        let found = conjugacy_class_reps(qg).into_iter().skip(1).find_map(|x| {
            let n = Subgroup::normal_closure_with(qg, &gens, &[x]);
            derived_series_of(qg, &n).solvable.then_some(n)
        });
        let Some(n) = found else {
            return radical;
        };
        let lifted: Vec<usize> = g.elements().filter(|&x| n.contains(q.projection[x])).collect();
        radical = Subgroup::from_elements(g, &lifted).expect("preimage of a subgroup");
    }
}

/// Every normal subgroup: normal closures of conjugacy classes, closed
/// under joins.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let gens = generating_sequence(g);
    let mut all: Vec<Subgroup> = Vec::new();
    for x in conjugacy_class_reps(g) {
        let n = Subgroup::normal_closure_with(g, &gens, &[x]);
        if !all.contains(&n) {
            all.push(n);
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let joined = all[i].join(&all[j], g);
            if !all.contains(&joined) {
                all.push(joined);
            }
        }
        i += 1;
    }
    all.sort_by_key(|s| (s.order(), s.elements().to_vec()));
    all
}

/// Composition factors as a sorted multiset.
pub fn composition_factors(g: &FiniteGroup) -> Vec<SimpleFactorLabel> {
    let mut out = Vec::new();
    factors_into(g, None, &mut out);
    out.sort();
    out
}

/// As [`composition_factors`] but splitting along normal subgroups chosen
/// in a seeded random order, for Jordan–Hölder checks.
pub fn composition_factors_shuffled(g: &FiniteGroup, seed: u64) -> Vec<SimpleFactorLabel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    factors_into(g, Some(&mut rng), &mut out);
    out.sort();
    out
}

fn factors_into(g: &FiniteGroup, mut rng: Option<&mut ChaCha8Rng>, out: &mut Vec<SimpleFactorLabel>) {
    let n = g.order() as u64;
    if n == 1 {
        return;
    }
    let primes = factorize(n);
    if g.is_abelian() || primes.len() == 1 {
        for (p, e) in primes {
            out.extend((0..e).map(|_| SimpleFactorLabel::cyclic(p)));
        }
        return;
    }
    let gens = generating_sequence(g);
    let mut reps: Vec<usize> = conjugacy_class_reps(g).into_iter().skip(1).collect();
    if let Some(r) = rng.as_deref_mut() {
        reps.shuffle(r);
    }
    let proper = reps.into_iter().find_map(|x| {
        let c = Subgroup::normal_closure_with(g, &gens, &[x]);
        (c.order() < g.order()).then_some(c)
    });
    match proper {
        None => out.push(super::classify_simple_unchecked(g)),
        Some(normal) => {
            let q = normal.quotient(g).expect("normal closure is normal");
            factors_into(&normal.as_group(g), rng.as_deref_mut(), out);
            factors_into(&q.group, rng, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dicyclic, direct_product, symmetric, FactorName};

    fn orders(s: &DerivedSeries) -> Vec<usize> {
        s.chain.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn derived_series_examples() {
        let s = derived_series(&cyclic(6));
        assert_eq!(orders(&s), vec![6, 1]);
        assert!(s.solvable);
        let s = derived_series(&symmetric(4));
        assert_eq!(orders(&s), vec![24, 12, 4, 1]);
        let s = derived_series(&alternating(5));
        assert_eq!(orders(&s), vec![60]);
        assert!(!s.solvable);
    }

    #[test]
    fn radicals() {
        let s4 = symmetric(4);
        assert_eq!(solvable_radical(&s4).order(), 24);
        assert!(solvable_radical(&alternating(5)).is_trivial());
        let g = direct_product(&cyclic(6), &alternating(5));
        let r = solvable_radical(&g);
        assert_eq!(r.order(), 6);
        // the Z6 factor sits at indices a + 6·0
        assert_eq!(r.elements(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn radical_contains_every_solvable_normal_subgroup() {
        for g in [symmetric(4), direct_product(&cyclic(2), &alternating(5)), dicyclic(3)] {
            let r = solvable_radical(&g);
            for n in normal_subgroups(&g) {
                if derived_series_of(&g, &n).solvable {
                    assert!(n.is_subset_of(&r));
                }
            }
        }
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&symmetric(4)).len(), 4);
        assert_eq!(normal_subgroups(&alternating(5)).len(), 2);
        assert_eq!(normal_subgroups(&dicyclic(2)).len(), 6);
    }

    #[test]
    fn composition_factor_examples() {
        let c = |p| SimpleFactorLabel::cyclic(p);
        assert_eq!(composition_factors(&cyclic(6)), vec![c(2), c(3)]);
        assert_eq!(composition_factors(&symmetric(4)), vec![c(2), c(2), c(2), c(3)]);
        let f = composition_factors(&direct_product(&cyclic(2), &alternating(5)));
        assert_eq!(f.len(), 2);
        assert!(f[1].names.contains(&FactorName::Alt(5)));
    }

    #[test]
    fn jordan_holder_small() {
        for g in [symmetric(4), direct_product(&cyclic(2), &alternating(5)), dicyclic(3)] {
            let base = composition_factors(&g);
            for seed in 0..5 {
                assert_eq!(composition_factors_shuffled(&g, seed), base);
            }
        }
    }

    #[test]
    fn derived_entries_normal_in_whole_group() {
        let g = symmetric(4);
        for s in derived_series(&g).chain {
            assert!(s.is_normal_in(&g));
        }
    }
}
