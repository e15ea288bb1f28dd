//! Graphs with a prescribed coset of vertex maps, and the two reductions
//! between that problem and color isomorphism.

use serde::{Deserialize, Serialize};

use crate::coloriso::{ColorIsoInstance, Coloring, CosetFile};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, Subcoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[[usize; 2]]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &[u, v] in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.adjacent(u, v)).count()
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push([u, v]);
                }
            }
        }
        out
    }

    /// The image under a vertex bijection.
    pub fn relabel(&self, p: &Permutation) -> Graph {
        let mut g = Graph::empty(self.n);
        for [u, v] in self.edges() {
            g.add_edge(p.apply(u), p.apply(v));
        }
        g
    }

    pub fn is_isomorphism(&self, other: &Graph, p: &Permutation) -> bool {
        self.n == other.n
            && p.degree() == self.n
            && (0..self.n).all(|u| (0..self.n).all(|v| self.adjacent(u, v) == other.adjacent(p.apply(u), p.apply(v))))
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), each sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.bron_kerbosch(&mut Vec::new(), (0..self.n).collect(), Vec::new(), &mut out);
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| self.adjacent(u, v)).count());
        let pivot = pivot.expect("p or x nonempty");
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.adjacent(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile { n: self.n, edges: self.edges() }
    }

    pub fn from_file(f: &GraphFile) -> Result<Self> {
        Self::from_edges(f.n, &f.edges)
    }
}

/// Adjacency-preserving bijections `X → Y`, optionally restricted to a
/// coset. With a coset, a vertex may only go to `rep` applied to its
/// orbit, so vertices the group fixes are never branched on.
pub fn brute_force_graph_isos(x: &Graph, y: &Graph, coset: Option<&Subcoset>) -> Vec<Permutation> {
    let n = x.order();
    if n != y.order() || coset.is_some_and(|c| c.is_empty() || c.degree() != n) {
        return Vec::new();
    }
    let candidates: Vec<Vec<usize>> = match coset {
        Some(Subcoset::Coset { rep, group }) => {
            let ids = group.orbit_ids();
            (0..n).map(|v| (0..n).filter(|&u| ids[u] == ids[v]).map(|u| rep.apply(u)).collect()).collect()
        }
        _ => (0..n).map(|_| (0..n).collect()).collect(),
    };
    let degx: Vec<usize> = (0..n).map(|v| x.degree(v)).collect();
    let degy: Vec<usize> = (0..n).map(|v| y.degree(v)).collect();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(x, y, &candidates, &degx, &degy, 0, &mut map, &mut used, &mut out);
    match coset {
        Some(c) => out.into_iter().filter(|p| c.contains(p)).collect(),
        None => out,
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    x: &Graph,
    y: &Graph,
    candidates: &[Vec<usize>],
    degx: &[usize],
    degy: &[usize],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    if v == x.order() {
        out.push(Permutation::from_images(map.clone()).expect("bijection"));
        return;
    }
    for &w in &candidates[v] {
        if used[w] || degx[v] != degy[w] {
            continue;
        }
        if (0..v).any(|u| x.adjacent(u, v) != y.adjacent(map[u], w)) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        extend_iso(x, y, candidates, degx, degy, v + 1, map, used, out);
        used[w] = false;
    }
    map[v] = usize::MAX;
}

/// Color of the ordered pair `(u, v)`: diagonal, edge or non-edge.
fn pair_color(g: &Graph, u: usize, v: usize) -> u32 {
    if u == v {
        0
    } else if g.adjacent(u, v) {
        1
    } else {
        2
    }
}

/// `(u, v) ↦ (p u, p v)` on pair indices `u n + v`.
pub fn pair_action(p: &Permutation) -> Permutation {
    let n = p.degree();
    Permutation::from_images((0..n * n).map(|t| p.apply(t / n) * n + p.apply(t % n)).collect()).expect("bijection")
}

/// The vertex map a pair permutation induces on the diagonal.
pub fn vertex_map(pairs: &Permutation, n: usize) -> Result<Permutation> {
    Permutation::from_images((0..n).map(|v| pairs.apply(v * n + v) / n).collect())
}

/// Points-mode instance on ordered vertex pairs; its solutions are the
/// pair actions of the isomorphisms `X → Y` in `coset`.
pub fn gis_to_ci(x: &Graph, y: &Graph, coset: &Subcoset) -> Result<ColorIsoInstance> {
    let n = x.order();
    if y.order() != n || coset.degree() != n {
        return Err(Error::DomainMismatch { expected: n, found: y.order().max(coset.degree()) });
    }
    let pair_coset = match coset {
        Subcoset::Empty { .. } => Subcoset::Empty { degree: n * n },
        Subcoset::Coset { rep, group } => {
            let gens: Vec<Permutation> = group.generators().iter().map(pair_action).collect();
            Subcoset::new(pair_action(rep), PermGroup::new(n * n, &gens)?)?
        }
    };
    let f = |g: &Graph| Coloring::Points((0..n * n).map(|t| pair_color(g, t / n, t % n)).collect());
    ColorIsoInstance::new(pair_coset, f(x), f(y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetVertex {
    Point(usize),
    /// Hub of an original color.
    Hub(u32),
    /// Clique vertex `k` of a color's gadget.
    Clique(u32, usize),
}

#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub provenance: Vec<GadgetVertex>,
}

impl GadgetGraph {
    /// The vertex sets `K_c ∪ {hub c}`.
    pub fn gadget_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<(u32, Vec<usize>)> = Vec::new();
        for (v, p) in self.provenance.iter().enumerate() {
            let c = match p {
                GadgetVertex::Hub(c) | GadgetVertex::Clique(c, _) => *c,
                GadgetVertex::Point(_) => continue,
            };
            match sets.iter_mut().find(|(d, _)| *d == c) {
                Some((_, s)) => s.push(v),
                None => sets.push((c, vec![v])),
            }
        }
        sets.into_iter().map(|(_, s)| s).collect()
    }

    /// Every maximal clique of size at least 3 is a gadget set and vice
    /// versa.
    pub fn clique_signature_holds(&self) -> bool {
        let mut big: Vec<Vec<usize>> = self.graph.maximal_cliques().into_iter().filter(|c| c.len() >= 3).collect();
        let mut gadgets = self.gadget_sets();
        big.sort();
        gadgets.sort();
        big == gadgets
    }
}

#[derive(Clone, Debug)]
pub struct GadgetPair {
    pub x1: GadgetGraph,
    pub x2: GadgetGraph,
    /// The instance coset, acting as the identity on gadget vertices.
    pub coset: Subcoset,
}

/// On-disk form of a [`GadgetPair`]; `coset` is absent when empty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetPairFile {
    pub x1: GraphFile,
    pub x2: GraphFile,
    pub provenance: Vec<GadgetVertex>,
    pub coset: Option<CosetFile>,
}

impl GadgetPair {
    pub fn to_file(&self) -> GadgetPairFile {
        GadgetPairFile {
            x1: self.x1.graph.to_file(),
            x2: self.x2.graph.to_file(),
            provenance: self.x1.provenance.clone(),
            coset: CosetFile::from_subcoset(&self.coset),
        }
    }
}

/// Color gadgets for a points-mode instance. Both graphs carry one gadget
/// per color used by either coloring: a hub joined to every point of that
/// color and to a clique on `c + 3` vertices (colors shifted to start at
/// 1, so every clique has at least 3 vertices).
pub fn ci_to_gis(inst: &ColorIsoInstance) -> Result<GadgetPair> {
    let (Coloring::Points(f1), Coloring::Points(f2)) = (&inst.f1, &inst.f2) else {
        return Err(Error::InvalidInput("gadgets need a points-mode instance".into()));
    };
    let n = f1.len();
    let mut colors: Vec<u32> = f1.iter().chain(f2).copied().collect();
    colors.sort_unstable();
    colors.dedup();
    let mut provenance: Vec<GadgetVertex> = (0..n).map(GadgetVertex::Point).collect();
    let mut hubs = Vec::new();
    for &c in &colors {
        hubs.push(provenance.len());
        provenance.push(GadgetVertex::Hub(c));
        for k in 0..c as usize + 3 {
            provenance.push(GadgetVertex::Clique(c, k));
        }
    }
    let total = provenance.len();
    let build = |f: &[u32]| {
        let mut g = Graph::empty(total);
        for (i, &c) in colors.iter().enumerate() {
            let hub = hubs[i];
            let clique: Vec<usize> = (hub + 1..hub + 1 + c as usize + 3).collect();
            for (a, &u) in clique.iter().enumerate() {
                g.add_edge(hub, u);
                for &v in &clique[a + 1..] {
                    g.add_edge(u, v);
                }
            }
            for (x, &fx) in f.iter().enumerate() {
                if fx == c {
                    g.add_edge(hub, x);
                }
            }
        }
        GadgetGraph { graph: g, provenance: provenance.clone() }
    };
    let coset = match &inst.coset {
        Subcoset::Empty { .. } => Subcoset::Empty { degree: total },
        Subcoset::Coset { rep, group } => {
            let gens: Vec<Permutation> = group.generators().iter().map(|g| g.extend(total)).collect();
            Subcoset::new(rep.extend(total), PermGroup::new(total, &gens)?)?
        }
    };
    Ok(GadgetPair { x1: build(f1), x2: build(f2), coset })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::coloriso::solve_color_iso;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| [i, (i + 1) % n]).collect::<Vec<_>>()).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| [i, i + 1]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let k3 = Graph::from_edges(3, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(brute_force_graph_isos(&k3, &k3, None).len(), 6);
        assert_eq!(brute_force_graph_isos(&cycle(4), &cycle(4), None).len(), 8);
        assert!(brute_force_graph_isos(&cycle(4), &path(4), None).is_empty());
    }

    #[test]
    fn gis_to_ci_examples() {
        let sym = |n| Subcoset::from_group(PermGroup::symmetric(n));
        let e = Graph::empty(3);
        assert_eq!(solve_color_iso(&gis_to_ci(&e, &e, &sym(3)).unwrap()).unwrap().order(), BigUint::from(6u32));
        let p = path(3);
        let q = p.relabel(&Permutation::cycle(3, &[0, 1, 2]));
        let sol = solve_color_iso(&gis_to_ci(&p, &q, &sym(3)).unwrap()).unwrap();
        assert_eq!(sol.order(), BigUint::from(2u32));
        assert!(p.is_isomorphism(&q, &vertex_map(sol.rep().unwrap(), 3).unwrap()));
        let k3 = Graph::from_edges(3, &[[0, 1], [1, 2], [0, 2]]).unwrap();
        assert!(solve_color_iso(&gis_to_ci(&k3, &p, &sym(3)).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn ci_to_gis_examples() {
        let coset = Subcoset::from_group(PermGroup::symmetric(3));
        let inst = ColorIsoInstance::new(coset.clone(), Coloring::Points(vec![0, 1, 2]), Coloring::Points(vec![1, 0, 2]))
            .unwrap();
        let pair = ci_to_gis(&inst).unwrap();
        assert!(pair.x1.clique_signature_holds() && pair.x2.clique_signature_holds());
        assert_eq!(brute_force_graph_isos(&pair.x1.graph, &pair.x2.graph, Some(&pair.coset)).len(), 1);
        let bad = ColorIsoInstance::new(coset, Coloring::Points(vec![0, 0, 1]), Coloring::Points(vec![0, 1, 1])).unwrap();
        let pair = ci_to_gis(&bad).unwrap();
        assert!(brute_force_graph_isos(&pair.x1.graph, &pair.x2.graph, Some(&pair.coset)).is_empty());
        let one = ColorIsoInstance::new(
            Subcoset::from_group(PermGroup::trivial(1)),
            Coloring::Points(vec![0]),
            Coloring::Points(vec![0]),
        )
        .unwrap();
        let pair = ci_to_gis(&one).unwrap();
        assert_eq!(brute_force_graph_isos(&pair.x1.graph, &pair.x2.graph, Some(&pair.coset)).len(), 1);
    }

    #[test]
    fn file_round_trip() {
        let g = cycle(5);
        let s = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(Graph::from_file(&serde_json::from_str(&s).unwrap()).unwrap(), g);
        assert!(Graph::from_edges(2, &[[0, 0]]).is_err());
    }
}
