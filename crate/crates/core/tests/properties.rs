use std::collections::HashSet;

use groupiso::coloriso::{solve_by_filter, solve_color_iso, ColorIsoInstance, Coloring};
use groupiso::gadget::{brute_force_graph_isos, ci_to_gis, gis_to_ci, Graph};
use groupiso::group::{count_isomorphisms, cyclic, dihedral, direct_product, FiniteGroup};
use groupiso::perm::{PermGroup, Permutation, Subcoset};
use groupiso::reduction::theorem1_pipeline;
use groupiso::wreath::WreathTower;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn closure(n: usize, gens: &[Permutation]) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    let mut stack = vec![Permutation::identity(n)];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen.len()
}

fn points_instance() -> impl Strategy<Value = ColorIsoInstance> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(perm(n), 0..3),
            perm(n),
            prop::collection::vec(0u32..3, n),
            prop::collection::vec(0u32..3, n),
        )
            .prop_map(move |(gens, rep, f1, f2)| {
                let coset = Subcoset::new(rep, PermGroup::new(n, &gens).unwrap()).unwrap();
                ColorIsoInstance::new(coset, Coloring::Points(f1), Coloring::Points(f2)).unwrap()
            })
    })
}

fn graph(n: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if bits[u * n + v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_order_is_closure_size(gens in (1usize..=6).prop_flat_map(|n| prop::collection::vec(perm(n), 0..3))) {
        let n = gens.first().map_or(1, Permutation::degree);
        let g = PermGroup::new(n, &gens).unwrap();
        prop_assert_eq!(g.order(), BigUint::from(closure(n, &gens)));
        for p in &gens {
            prop_assert!(g.contains(p));
        }
        prop_assert!(g.reduce_generators().same_group(&g));
    }

    #[test]
    fn solver_matches_filter(inst in points_instance()) {
        let a = solve_color_iso(&inst).unwrap();
        let b = solve_by_filter(&inst).unwrap();
        prop_assert!(a.same_set(&b));
    }

    #[test]
    fn gadget_graphs_count_solutions(inst in points_instance()) {
        let sol = solve_color_iso(&inst).unwrap();
        let pair = ci_to_gis(&inst).unwrap();
        prop_assert!(pair.x1.clique_signature_holds());
        let isos = brute_force_graph_isos(&pair.x1.graph, &pair.x2.graph, Some(&pair.coset));
        prop_assert_eq!(sol.order(), BigUint::from(isos.len()));
    }

    #[test]
    fn graph_pairs_reduce_to_color(x in graph(5), p in perm(5)) {
        let y = x.relabel(&p);
        let coset = Subcoset::from_group(PermGroup::symmetric(5));
        let sol = solve_color_iso(&gis_to_ci(&x, &y, &coset).unwrap()).unwrap();
        let isos = brute_force_graph_isos(&x, &y, None);
        prop_assert!(!isos.is_empty());
        prop_assert_eq!(sol.order(), BigUint::from(isos.len()));
    }

    #[test]
    fn wreath_round_trip(seed in any::<u64>()) {
        let t = WreathTower::new(vec![PermGroup::symmetric(2), PermGroup::symmetric(3), PermGroup::symmetric(2)]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let w = t.random_element(&mut rng);
        let p = t.to_permutation(&w).unwrap();
        prop_assert_eq!(t.decompose(&p).unwrap(), w);
    }
}

fn small_groups() -> Vec<FiniteGroup> {
    vec![cyclic(8), direct_product(&cyclic(2), &cyclic(4)), dihedral(4), dihedral(6), cyclic(12)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pipeline_invariant_under_relabelling(i in 0usize..5, j in 0usize..5, seed in any::<u64>()) {
        let gs = small_groups();
        let (h, _) = gs[j].scrambled(seed);
        let out = theorem1_pipeline(&gs[i], &h).unwrap();
        prop_assert_eq!(out.iso.order(), BigUint::from(count_isomorphisms(&gs[i], &h)));
    }
}
