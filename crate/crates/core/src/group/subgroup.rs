use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup of some parent [`FiniteGroup`], as a sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted(g.order(), vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_sorted(g.order(), g.elements().collect())
    }

    fn from_sorted(parent_order: usize, elements: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &x in &elements {
            mask[x] = true;
        }
        Subgroup { elements, mask }
    }

    /// Builds a subgroup from an element set, verifying closure.
    pub fn from_elements(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        let s = Self::from_sorted(g.order(), els);
        if !s.contains(0) {
            return Err(Error::InvalidInput("subgroup must contain the identity".into()));
        }
        for &a in &s.elements {
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::InvalidInput("element set is not closed".into()));
                }
            }
        }
        Ok(s)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Subgroup { elements: queue, mask }
    }

    /// The smallest normal subgroup of `g` containing `gens`.
    pub fn normal_closure(g: &FiniteGroup, gens: &[usize]) -> Self {
        Self::normal_closure_with(g, &super::generating_sequence(g), gens)
    }

    /// As [`Subgroup::normal_closure`], with a generating set of `g` supplied.
    pub fn normal_closure_with(g: &FiniteGroup, group_gens: &[usize], gens: &[usize]) -> Self {
        let mut current = Self::generated(g, gens);
        loop {
            let mut extra = Vec::new();
            for &x in current.generators_hint(g).iter() {
                for &t in group_gens {
                    let c = g.conjugate(t, x);
                    if !current.contains(c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut all = current.generators_hint(g);
            all.extend(extra);
            current = Self::generated(g, &all);
        }
    }

    /// A small generating set (greedy).
    pub fn generators_hint(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Self::trivial(g);
        for &x in &self.elements {
            if !span.contains(x) {
                gens.push(x);
                span = Self::generated(g, &gens);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Join of two subgroups (the subgroup they generate).
    pub fn join(&self, other: &Subgroup, g: &FiniteGroup) -> Self {
        let mut gens = self.generators_hint(g);
        gens.extend(other.generators_hint(g));
        Self::generated(g, &gens)
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let gens = super::generating_sequence(g);
        let hint = self.generators_hint(g);
        hint.iter().all(|&x| gens.iter().all(|&t| self.contains(g.conjugate(t, x))))
    }

    /// `[S, S]`, generated by all commutators of elements of `S`.
    pub fn commutator_subgroup(&self, g: &FiniteGroup) -> Self {
        let mut seen = vec![false; g.order()];
        let mut comms = Vec::new();
        for &a in &self.elements {
            for &b in &self.elements {
                let c = g.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        Self::generated(g, &comms)
    }

    /// The subgroup as a standalone group; element `k` of the result is
    /// `self.elements()[k]` of the parent (so the identity stays at 0).
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut pos = vec![u32::MAX; g.order()];
        for (k, &x) in self.elements.iter().enumerate() {
            pos[x] = k as u32;
        }
        let mut table = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * n + j] = pos[g.mul(a, b)];
            }
        }
        FiniteGroup::from_trusted(n, table).expect("subgroup table")
    }

    /// Quotient `G / N` with coset representatives the minimal element of
    /// each coset; cosets are numbered in increasing order of representative.
    /// Returns the quotient group, the projection and the representatives.
    pub fn quotient(&self, g: &FiniteGroup) -> Result<Quotient> {
        if !self.is_normal_in(g) {
            return Err(Error::NotNormal);
        }
        let n = g.order();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] == usize::MAX {
                let c = reps.len();
                reps.push(x);
                for &m in &self.elements {
                    projection[g.mul(x, m)] = c;
                }
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * k + j] = projection[g.mul(a, b)] as u32;
            }
        }
        let group = FiniteGroup::from_trusted(k, table)?;
        Ok(Quotient { group, projection, representatives: reps })
    }
}

/// Result of [`Subgroup::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{brute_force_isomorphisms, cyclic, dicyclic, symmetric};

    #[test]
    fn commutators() {
        let z = cyclic(6);
        assert!(Subgroup::whole(&z).commutator_subgroup(&z).is_trivial());
        let s3 = symmetric(3);
        assert_eq!(Subgroup::whole(&s3).commutator_subgroup(&s3).order(), 3);
        let q8 = dicyclic(2);
        let d = Subgroup::whole(&q8).commutator_subgroup(&q8);
        assert_eq!(d.order(), 2);
        // it is the center
        for &x in d.elements() {
            assert!(q8.elements().all(|y| q8.mul(x, y) == q8.mul(y, x)));
        }
    }

    #[test]
    fn commutator_oracle_exhaustive() {
        // all 36 pairs in S3
        let s3 = symmetric(3);
        let mut comms: Vec<usize> = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).map(|(a, b)| s3.commutator(a, b)).collect();
        comms.sort_unstable();
        comms.dedup();
        // commutators of S3 already form A3
        assert_eq!(comms.len(), 3);
        let d = Subgroup::whole(&s3).commutator_subgroup(&s3);
        assert_eq!(d.elements(), comms.as_slice());
    }

    #[test]
    fn quotients() {
        let z4 = cyclic(4);
        let whole = Subgroup::whole(&z4).quotient(&z4).unwrap();
        assert_eq!(whole.group.order(), 1);
        let n = Subgroup::from_elements(&z4, &[0, 2]).unwrap();
        let q = n.quotient(&z4).unwrap();
        assert_eq!(q.group.order(), 2);

        let s4 = symmetric(4);
        let v4 = Subgroup::whole(&s4).commutator_subgroup(&s4).commutator_subgroup(&s4);
        assert_eq!(v4.order(), 4);
        let q = v4.quotient(&s4).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.is_abelian());
        assert_eq!(brute_force_isomorphisms(&q.group, &symmetric(3)).len(), 6);
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(q.projection[s4.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
            }
        }
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let s3 = symmetric(3);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::generated(&s3, &[t]);
        assert_eq!(h.quotient(&s3).unwrap_err(), Error::NotNormal);
    }
}
