//! Brute-force isomorphism enumeration between Cayley-table groups.
//!
//! This is the ground-truth oracle for every reduction in the crate. It
//! backtracks on the images of a generating sequence, extending each partial
//! assignment to the generated subgroup and rejecting it as soon as the
//! extension is inconsistent or non-injective.

use std::ops::ControlFlow;

use super::{FiniteGroup, Subgroup};

const NONE: u32 = u32::MAX;

/// A greedy generating sequence: elements of larger order first, each one
/// outside the span of its predecessors.
pub fn generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    let mut candidates: Vec<usize> = (1..g.order()).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for x in candidates {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(g, &gens);
        }
    }
    gens
}

struct Search<'a, A, V> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<usize>,
    images: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<u32>,
    pre: Vec<u32>,
    allowed: A,
    visit: V,
}

impl<A, V> Search<'_, A, V>
where
    A: Fn(usize, usize) -> bool,
    V: FnMut(&[u32]) -> ControlFlow<()>,
{
    /// Extends the partial map after fixing the image of generator `k`.
    /// Returns the newly mapped elements (for undo) or `None` on conflict.
    fn extend(&mut self, k: usize, trail: &mut Vec<usize>) -> bool {
        let mut queue: Vec<usize> = (0..self.g.order()).filter(|&x| self.map[x] != NONE).collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let mx = self.map[x] as usize;
            for j in 0..=k {
                let y = self.g.mul(x, self.gens[j]);
                let w = self.h.mul(mx, self.images[j]);
                let my = self.map[y];
                if my == NONE {
                    if self.pre[w] != NONE || !(self.allowed)(y, w) {
                        return false;
                    }
                    self.map[y] = w as u32;
                    self.pre[w] = y as u32;
                    trail.push(y);
                    queue.push(y);
                } else if my as usize != w {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> ControlFlow<()> {
        if k == self.gens.len() {
            return (self.visit)(&self.map);
        }
        for ci in 0..self.candidates[k].len() {
            let c = self.candidates[k][ci];
            self.images[k] = c;
            let mut trail = Vec::new();
            let ok = self.extend(k, &mut trail);
            let flow = if ok { self.run(k + 1) } else { ControlFlow::Continue(()) };
            for y in trail {
                self.pre[self.map[y] as usize] = NONE;
                self.map[y] = NONE;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every isomorphism `g -> h` whose element map satisfies
/// `allowed(x, image)` for every `x`. The visitor receives the image array.
pub fn for_each_isomorphism<A, V>(g: &FiniteGroup, h: &FiniteGroup, allowed: A, visit: V)
where
    A: Fn(usize, usize) -> bool,
    V: FnMut(&[u32]) -> ControlFlow<()>,
{
    if g.order() != h.order() || !allowed(0, 0) {
        return;
    }
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let mut profile_g = g_orders.clone();
    let mut profile_h = h_orders.clone();
    profile_g.sort_unstable();
    profile_h.sort_unstable();
    if profile_g != profile_h {
        return;
    }
    let gens = generating_sequence(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| h.elements().filter(|&y| h_orders[y] == g_orders[x] && allowed(x, y)).collect())
        .collect();
    let n = g.order();
    let mut map = vec![NONE; n];
    let mut pre = vec![NONE; n];
    map[0] = 0;
    pre[0] = 0;
    let k = gens.len();
    let mut search = Search { g, h, gens, images: vec![0; k], candidates, map, pre, allowed, visit };
    let _ = search.run(0);
}

/// All isomorphisms `g -> h`, each as an image list.
pub fn brute_force_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, h, |_, _| true, |m| {
        out.push(m.iter().map(|&x| x as usize).collect());
        ControlFlow::Continue(())
    });
    out
}

pub fn count_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> u64 {
    let mut count = 0;
    for_each_isomorphism(g, h, |_, _| true, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(g, h, |_, _| true, |m| {
        found = Some(m.iter().map(|&x| x as usize).collect());
        ControlFlow::Break(())
    });
    found
}

/// Exhaustive check that `map` is a homomorphism `g -> h`.
pub fn is_homomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == g.order()
        && g.elements().all(|x| g.elements().all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, symmetric};

    #[test]
    fn z4_vs_klein() {
        let z4 = cyclic(4);
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(brute_force_isomorphisms(&z4, &v4).is_empty());
    }

    #[test]
    fn s3_automorphisms() {
        let s3 = symmetric(3);
        let isos = brute_force_isomorphisms(&s3, &s3);
        assert_eq!(isos.len(), 6);
        for m in &isos {
            assert!(is_homomorphism(&s3, &s3, m));
        }
    }

    #[test]
    fn gl32_count() {
        let z2 = cyclic(2);
        let e8 = direct_product(&direct_product(&z2, &z2), &z2);
        assert_eq!(count_isomorphisms(&e8, &e8), 168);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = crate::group::dihedral(4);
        let auts = brute_force_isomorphisms(&g, &g);
        let set: std::collections::HashSet<Vec<usize>> = auts.iter().cloned().collect();
        assert!(set.contains(&(0..8).collect::<Vec<_>>()));
        for a in &auts {
            for b in &auts {
                let c: Vec<usize> = (0..8).map(|x| a[b[x]]).collect();
                assert!(set.contains(&c));
            }
        }
    }
}
