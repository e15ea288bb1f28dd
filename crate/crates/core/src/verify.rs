//! Verification suites: each compares one construction against an
//! independent brute-force oracle over a fixed or seeded corpus.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_groups_up_to, aut_group_of, check_aut_factors, AbelianDecomposition, HRMatrix};
use crate::bilinear::{
    brute_force_isometries, build_gf, isometries_via_gris, product_coset, pseudo_isometries_via_gris,
    varphi_hom_check, BilinearMap,
};
use crate::coloriso::{certify_cis, solve_by_filter, solve_color_iso, ColorIsoInstance, Coloring};
use crate::corpus::{corpus, CorpusEntry};
use crate::error::Result;
use crate::gadget::{brute_force_graph_isos, ci_to_gis, gis_to_ci, vertex_map, Graph};
use crate::group::{count_isomorphisms, for_each_isomorphism, is_homomorphism, FiniteGroup};
use crate::perm::{PermGroup, Permutation, Subcoset};
use crate::reduction::{
    check_prefix_derived, iso_wr_membership_check, radical_derived_series, theorem1_pipeline, tilde_group,
    Reduction, TildeGroup,
};

/// Witnesses kept per report; failures beyond this are only counted.
const MAX_WITNESSES: usize = 20;
/// Largest coset the solver-oracle suite enumerates.
pub const ORACLE_COSET_BOUND: u64 = 10_000;
const MEMBERS_PER_PAIR: usize = 50;
const TOWER_SAMPLES: usize = 200;
const RANDOM_BILINEAR_MAPS: usize = 200;
const GADGET_INSTANCES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Theorem1,
    Cis,
    AbelAut,
    HillarRhea,
    IsoWr,
    TgDer,
    Isometry,
    AutHom,
    Gadget,
    SolverOracle,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Theorem1,
        Suite::Cis,
        Suite::AbelAut,
        Suite::HillarRhea,
        Suite::IsoWr,
        Suite::TgDer,
        Suite::Isometry,
        Suite::AutHom,
        Suite::Gadget,
        Suite::SolverOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Cis => "cis",
            Suite::AbelAut => "abel-aut",
            Suite::HillarRhea => "hillar-rhea",
            Suite::IsoWr => "iso-wr",
            Suite::TgDer => "tg-der",
            Suite::Isometry => "isometry",
            Suite::AutHom => "aut-hom",
            Suite::Gadget => "gadget",
            Suite::SolverOracle => "solver-oracle",
        }
    }

    pub fn criterion(self) -> u8 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u8 + 1
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Theorem1 => "pipeline |Iso(G, H)| equals brute force over all corpus pairs",
            Suite::Cis => "every emitted instance certifies in the cyclic/PSL class",
            Suite::AbelAut => "Aut(A) for |A| <= 128: factor class and order",
            Suite::HillarRhea => "matrix endomorphisms of small abelian p-groups",
            Suite::IsoWr => "isomorphisms of canonical forms lie in the holomorph tower",
            Suite::TgDer => "derived series of the canonical form is the prefix chain",
            Suite::Isometry => "isometries through G_f equal brute force",
            Suite::AutHom => "additivity of varphi agrees with isometry of beta^-1",
            Suite::Gadget => "graph gadget round trips and clique signature",
            Suite::SolverOracle => "color isomorphism solver equals coset filtering",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub seed: u64,
    pub checks: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64) -> Self {
        SuiteReport { suite: suite.name().to_string(), criterion: suite.criterion(), seed, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(witness());
        }
    }

    fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Unwraps `r`, recording an error as a failed check.
    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.failures += other.failures;
        self.notes.extend(other.notes);
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(suite, seed);
    match suite {
        Suite::Theorem1 => theorem1(&mut r, seed),
        Suite::Cis => cis(&mut r, seed),
        Suite::AbelAut => abel_aut(&mut r),
        Suite::HillarRhea => hillar_rhea(&mut r, seed),
        Suite::IsoWr => iso_wr(&mut r, seed),
        Suite::TgDer => tg_der(&mut r, seed),
        Suite::Isometry => isometry(&mut r, seed),
        Suite::AutHom => aut_hom(&mut r, seed),
        Suite::Gadget => gadget(&mut r, seed),
        Suite::SolverOracle => solver_oracle(&mut r, seed),
    }
    r
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Each corpus group next to a seeded relabelled copy, so no pair is
/// compared table-to-identical-table.
fn corpus_with_copies(seed: u64) -> Vec<(CorpusEntry, FiniteGroup)> {
    corpus()
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let (h, _) = e.group.scrambled(seed ^ (i as u64 + 1));
            (e, h)
        })
        .collect()
}

fn theorem1(r: &mut SuiteReport, seed: u64) {
    let entries = corpus_with_copies(seed);
    let pairs: Vec<(usize, usize)> =
        (0..entries.len()).flat_map(|i| (0..entries.len()).map(move |j| (i, j))).collect();
    let parts: Vec<SuiteReport> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut part = SuiteReport::default();
            let (g, name_g) = (&entries[i].0.group, &entries[i].0.name);
            let (h, name_h) = (&entries[j].1, &entries[j].0.name);
            let Some(out) = part.ok(theorem1_pipeline(g, h), || format!("{name_g} -> {name_h}")) else {
                return part;
            };
            let expected = count_isomorphisms(g, h);
            let got = out.iso.order();
            part.check(got == BigUint::from(expected), || format!("{name_g} -> {name_h}: pipeline {got}, brute force {expected}"));
            if expected > 0 {
                let mut rng = rng_for(seed, (i * 1000 + j) as u64);
                for _ in 0..MEMBERS_PER_PAIR {
                    let Some(p) = out.iso.random_element(&mut rng) else { break };
                    part.check(is_homomorphism(g, h, &p.images()), || {
                        format!("{name_g} -> {name_h}: member {:?} is not an isomorphism", p.images())
                    });
                }
            }
            part
        })
        .collect();
    for p in parts {
        r.absorb(p);
    }
    r.notes.push(format!("{} ordered pairs", pairs.len()));
}

/// `(name_g, name_h, reduction)` for every equal-order pair whose series
/// shapes agree, the pairs for which the pipeline emits instances.
fn reductions(seed: u64) -> Vec<(String, String, Result<Reduction>)> {
    let entries = corpus_with_copies(seed);
    let pairs: Vec<(usize, usize)> = (0..entries.len())
        .flat_map(|i| (0..entries.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| entries[i].0.group.order() == entries[j].1.order())
        .collect();
    pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let built = match Reduction::build(&entries[i].0.group, &entries[j].1) {
                Ok(Ok(red)) => Ok(red),
                Ok(Err(_)) => return None,
                Err(e) => Err(e),
            };
            Some((entries[i].0.name.clone(), entries[j].0.name.clone(), built))
        })
        .collect()
}

fn cis(r: &mut SuiteReport, seed: u64) {
    let mut instances = 0usize;
    let mut split_seen = false;
    for (ng, nh, red) in reductions(seed) {
        let Some(red) = r.ok(red, || format!("{ng} -> {nh}")) else { continue };
        let n = red.g.table.order();
        r.check(red.structure.degree() == n && red.solver.group().degree() == n, || {
            format!("{ng} -> {nh}: structure acts on {} points, group on {n}", red.structure.degree())
        });
        let Some(cert) = r.ok(certify_cis(&red.structure), || format!("{ng} -> {nh}: certify")) else { continue };
        // one check per emitted instance: they share the certified group
        for _ in 0..red.reps.len() {
            r.check(cert.in_cis, || format!("{ng} -> {nh}: factors {:?}", cert.factors));
        }
        instances += red.reps.len();
        if !red.g.series.solvable {
            let top = red.g.series.factors.last().map_or(0, FiniteGroup::order);
            let lower = red.g.series.factors.len() > 1;
            r.check(top == 60 && lower && red.reps.len() > 1, || {
                format!("{ng} -> {nh}: semisimple top of order {top}, {} instances", red.reps.len())
            });
            split_seen = true;
        }
    }
    r.check(split_seen, || "no pair exercised a semisimple top factor".into());
    r.notes.push(format!("{instances} instances certified"));
}

/// `|Aut(A)|` by counting tuples `(x_1, …, x_k)` with `m_i x_i = 0` that
/// generate `A`, memoized on the subgroup generated so far.
pub fn count_abelian_automorphisms(d: &AbelianDecomposition) -> u128 {
    let g = d.to_group();
    let n = g.order();
    assert!(n <= 128, "subgroups are stored as 128-bit masks");
    let moduli = d.moduli();
    let candidates: Vec<Vec<usize>> =
        moduli.iter().map(|&m| g.elements().filter(|&x| g.pow(x, m) == 0).collect()).collect();
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let join = |s: u128, x: usize| -> u128 {
        let members: Vec<usize> = (0..n).filter(|&e| s >> e & 1 == 1).collect();
        let mut out = s;
        let mut c = x;
        while out >> c & 1 == 0 {
            for &e in &members {
                out |= 1 << g.mul(e, c);
            }
            c = g.mul(c, x);
        }
        out
    };
    fn count(
        i: usize,
        s: u128,
        full: u128,
        candidates: &[Vec<usize>],
        join: &dyn Fn(u128, usize) -> u128,
        memo: &mut HashMap<(usize, u128), u128>,
    ) -> u128 {
        if i == candidates.len() {
            return u128::from(s == full);
        }
        if let Some(&v) = memo.get(&(i, s)) {
            return v;
        }
        let v = candidates[i].iter().map(|&x| count(i + 1, join(s, x), full, candidates, join, memo)).sum();
        memo.insert((i, s), v);
        v
    }
    count(0, 1, full, &candidates, &join, &mut HashMap::new())
}

fn abel_aut(r: &mut SuiteReport) {
    let groups = abelian_groups_up_to(128);
    let parts: Vec<SuiteReport> = groups
        .par_iter()
        .map(|d| {
            let mut part = SuiteReport::default();
            let g = d.to_group();
            if let Some(labels) = part.ok(check_aut_factors(&g), || format!("{d}: factors")) {
                part.check(labels.iter().all(|l| l.in_cis_class()), || format!("{d}: {labels:?}"));
            }
            if let Some(aut) = part.ok(aut_group_of(d), || format!("{d}: aut_group")) {
                let oracle = count_abelian_automorphisms(d);
                let got = aut.order();
                part.check(got == BigUint::from(oracle), || format!("{d}: aut_group order {got}, oracle {oracle}"));
            }
            part
        })
        .collect();
    for p in parts {
        r.absorb(p);
    }
    r.notes.push(format!("{} abelian groups", groups.len()));
}

/// Every `HRMatrix` for the given exponents, row-major mixed radix.
fn all_matrices(p: u64, e: &[u32]) -> Vec<HRMatrix> {
    let d = e.len();
    let steps: Vec<(i64, u64)> = (0..d * d)
        .map(|k| {
            let (i, j) = (k / d, k % d);
            let step = p.pow(e[i].saturating_sub(e[j]));
            (step as i64, p.pow(e[i]) / step)
        })
        .collect();
    let total: u64 = steps.iter().map(|s| s.1).product();
    (0..total)
        .map(|mut idx| {
            let mut entries = vec![vec![0i64; d]; d];
            for (k, &(step, count)) in steps.iter().enumerate() {
                entries[k / d][k % d] = (idx % count) as i64 * step;
                idx /= count;
            }
            HRMatrix::new(p, e.to_vec(), entries).expect("multiples of the required power")
        })
        .collect()
}

fn hr_groups() -> Vec<(u64, Vec<u32>)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for d in 1..=3usize {
            let mut e = vec![1u32; d];
            loop {
                if p.pow(e.iter().sum()) <= 64 {
                    out.push((p, e.clone()));
                }
                // next non-decreasing vector with entries at most 3
                let Some(k) = (0..d).rev().find(|&k| e[k] < 3) else { break };
                let v = e[k] + 1;
                for x in &mut e[k..] {
                    *x = v;
                }
            }
        }
    }
    out
}

fn hillar_rhea(r: &mut SuiteReport, seed: u64) {
    const PAIR_EXHAUSTIVE: usize = 1024;
    const SAMPLED_PAIRS: usize = 10_000;
    const HOM_TRIPLES: usize = 100;
    for (gi, (p, e)) in hr_groups().into_iter().enumerate() {
        let moduli: Vec<u64> = e.iter().map(|&k| p.pow(k)).collect();
        let order: u64 = moduli.iter().product();
        let coords = |mut x: u64| -> Vec<u64> {
            moduli
                .iter()
                .map(|&m| {
                    let c = x % m;
                    x /= m;
                    c
                })
                .collect()
        };
        let index = |c: &[u64]| c.iter().zip(&moduli).rev().fold(0, |acc, (&ci, &m)| acc * m + ci);
        let elements: Vec<Vec<u64>> = (0..order).map(coords).collect();
        let ms = all_matrices(p, &e);
        let name = format!("p={p} e={e:?}");
        for m in &ms {
            let mut seen = vec![false; order as usize];
            let bijective = elements.iter().all(|a| !std::mem::replace(&mut seen[index(&m.apply(a)) as usize], true));
            r.check(bijective == m.is_automorphism(), || format!("{name}: {:?} bijective={bijective}", m.entries));
        }
        let mut rng = rng_for(seed, gi as u64);
        let pairs: Vec<(usize, usize)> = if ms.len() <= PAIR_EXHAUSTIVE {
            (0..ms.len()).flat_map(|i| (0..ms.len()).map(move |j| (i, j))).collect()
        } else {
            (0..SAMPLED_PAIRS).map(|_| (rng.gen_range(0..ms.len()), rng.gen_range(0..ms.len()))).collect()
        };
        for (i, j) in pairs {
            let closed = ms[i].mul(&ms[j]).is_ok();
            r.check(closed, || format!("{name}: product of {:?} and {:?} leaves R(A)", ms[i].entries, ms[j].entries));
        }
        for _ in 0..HOM_TRIPLES {
            let (m, n) = (ms.choose(&mut rng).unwrap(), ms.choose(&mut rng).unwrap());
            let a = &elements[rng.gen_range(0..elements.len())];
            let mn = m.mul(n);
            r.check(mn.as_ref().is_ok_and(|mn| mn.apply(a) == m.apply(&n.apply(a))), || {
                format!("{name}: psi(MN)({a:?}) != psi(M)(psi(N)({a:?})) for {:?}, {:?}", m.entries, n.entries)
            });
            // a second lift of the same coset
            let k = rng.gen_range(0..a.len());
            let mut lift = a.clone();
            lift[k] += moduli[k];
            r.check(m.apply(&lift) == m.apply(a), || format!("{name}: {:?} not well defined at {a:?}", m.entries));
        }
    }
}

fn tilde_pair(g: &FiniteGroup, h: &FiniteGroup) -> Result<(TildeGroup, TildeGroup)> {
    let tg = tilde_group(&radical_derived_series(g), None)?;
    let th = tilde_group(&radical_derived_series(h), tg.top())?;
    Ok((tg, th))
}

fn iso_wr(r: &mut SuiteReport, seed: u64) {
    for (i, (e, h)) in corpus_with_copies(seed).into_iter().enumerate() {
        let name = &e.name;
        let Some((tg, th)) = r.ok(tilde_pair(&e.group, &h), || name.clone()) else { continue };
        if let Some(ok) = r.ok(iso_wr_membership_check(&tg, &th), || format!("{name}: membership")) {
            r.check(ok, || format!("{name}: an isomorphism left the holomorph tower"));
        }
        if tg.factor_shapes.is_empty() {
            continue;
        }
        let Some(tower) = r.ok(tg.holomorph_tower(), || format!("{name}: tower")) else { continue };
        let mut rng = rng_for(seed, i as u64);
        for _ in 0..TOWER_SAMPLES {
            let w = tower.random_element(&mut rng);
            let Some(p) = r.ok(tower.to_permutation(&w), || format!("{name}: to_permutation")) else { break };
            let back = tower.decompose(&p);
            r.check(back.as_ref() == Ok(&w), || format!("{name}: decompose did not invert evaluate"));
            let x = tower.tuple(rng.gen_range(0..p.degree()));
            r.check(tower.evaluate(&w, &x) == tower.tuple(p.apply(tower.index(&x))), || {
                format!("{name}: evaluate disagrees with the permutation at {x:?}")
            });
        }
        if let Some(group) = r.ok(tower.tower_group(), || format!("{name}: tower group")) {
            let (got, want) = (group.order(), tower.order_formula());
            r.check(got == want, || format!("{name}: tower order {got}, formula {want}"));
        }
    }
}

fn tg_der(r: &mut SuiteReport, seed: u64) {
    for (e, h) in corpus_with_copies(seed) {
        let name = &e.name;
        if let Some((tg, th)) = r.ok(tilde_pair(&e.group, &h), || name.clone()) {
            r.check(check_prefix_derived(&tg), || format!("{name}: prefix chain"));
            r.check(check_prefix_derived(&th), || format!("{name} (relabelled): prefix chain"));
        }
    }
}

fn z(n: u64) -> AbelianDecomposition {
    AbelianDecomposition::cyclic(n)
}

/// The zero map on `Z2²`, multiplication on `Z5` and the dot product on
/// `Z2²`, then seeded maps with `|B| <= 9`, `|A| <= 4`.
pub fn bilinear_corpus(seed: u64) -> Vec<(String, BilinearMap)> {
    let v4 = AbelianDecomposition::new(vec![(2, 1), (2, 1)]).expect("valid");
    let mut out = vec![
        ("zero".to_string(), BilinearMap::zero(z(2), v4.clone())),
        ("z5-mult".to_string(), BilinearMap::from_fn(z(5), z(5), |x, y| x * y % 5).expect("bilinear")),
        (
            "z2^2-dot".to_string(),
            BilinearMap::from_fn(z(2), v4.clone(), |x, y| {
                let (cx, cy) = (v4.coords(x), v4.coords(y));
                (cx[0] * cy[0] + cx[1] * cy[1]) % 2
            })
            .expect("bilinear"),
        ),
    ];
    let a_choices = abelian_groups_up_to(4);
    let b_choices: Vec<AbelianDecomposition> = abelian_groups_up_to(9).into_iter().filter(|d| d.order() > 1).collect();
    let mut rng = rng_for(seed, 7);
    for k in 0..RANDOM_BILINEAR_MAPS {
        let a = a_choices.choose(&mut rng).expect("nonempty").clone();
        let b = b_choices.choose(&mut rng).expect("nonempty").clone();
        let name = format!("random-{k} A={a} B={b}");
        out.push((name, BilinearMap::random(a, b, &mut rng)));
    }
    out
}

fn isometry(r: &mut SuiteReport, seed: u64) {
    let maps = bilinear_corpus(seed);
    let parts: Vec<(SuiteReport, bool)> = maps
        .par_iter()
        .map(|(name, f)| {
            let mut part = SuiteReport::default();
            let mut literal_differs = false;
            let brute = part.ok(brute_force_isometries(f), || format!("{name}: brute force"));
            let gris = part.ok(isometries_via_gris(f), || format!("{name}: via G_f"));
            if let (Some(brute), Some(gris)) = (brute, gris) {
                part.check(gris.same_group(&brute), || {
                    format!("{name}: via G_f order {}, brute force {}", gris.order(), brute.order())
                });
                let expected: Option<BigUint> = match name.as_str() {
                    "zero" => aut_group_of(&f.b).ok().map(|g| g.order()),
                    "z5-mult" | "z2^2-dot" => Some(2u32.into()),
                    _ => None,
                };
                if let Some(want) = expected {
                    part.check(brute.order() == want, || format!("{name}: order {} expected {want}", brute.order()));
                }
                if let Ok(pseudo) = pseudo_isometries_via_gris(f) {
                    literal_differs = !pseudo.same_group(&brute);
                }
            }
            (part, literal_differs)
        })
        .collect();
    let mut differs = 0;
    for (p, d) in parts {
        r.absorb(p);
        differs += usize::from(d);
    }
    r.notes.push(format!("{} maps", maps.len()));
    r.notes.push(format!(
        "restricting Aut(G_f) preserving A and l[B] without fixing A pointwise differs from the isometry group on {differs} maps"
    ));
}

fn aut_hom(r: &mut SuiteReport, seed: u64) {
    const GF_BOUND: usize = 64;
    let maps = bilinear_corpus(seed);
    let parts: Vec<(SuiteReport, [u64; 3])> = maps
        .par_iter()
        .map(|(name, f)| {
            let mut part = SuiteReport::default();
            // automorphisms visited, twisted-form mismatches, pointwise-form mismatches
            let mut tally = [0u64; 3];
            let Some(gf) = part.ok(build_gf(f), || format!("{name}: G_f")) else { return (part, tally) };
            if gf.group.order() > GF_BOUND {
                return (part, tally);
            }
            let nb = f.b.order();
            let in_a = |x: usize| x % nb == 0;
            for_each_isomorphism(&gf.group, &gf.group, |x, y| in_a(x) == in_a(y), |m| {
                let phi: Vec<usize> = m.iter().map(|&x| x as usize).collect();
                tally[0] += 1;
                match varphi_hom_check(&gf, &phi) {
                    Ok(c) => {
                        part.check(c.phi_hom == c.inverse_isometry, || {
                            format!(
                                "{name}: automorphism {phi:?} has varphi additive = {}, beta^-1 isometry = {}",
                                c.phi_hom, c.inverse_isometry
                            )
                        });
                        tally[1] += u64::from(c.phi_hom != c.twisted_isometry);
                        tally[2] += u64::from(c.fixes_a_pointwise && c.phi_hom != c.inverse_isometry);
                    }
                    Err(e) => part.fail(format!("{name}: {e}")),
                }
                ControlFlow::Continue(())
            });
            (part, tally)
        })
        .collect();
    let mut tally = [0u64; 3];
    for (p, t) in parts {
        r.absorb(p);
        for k in 0..3 {
            tally[k] += t[k];
        }
    }
    r.notes.push(format!("{} automorphisms fixing A setwise", tally[0]));
    r.notes.push(format!(
        "with the action on A applied, f(b1, b2) = sigma f(beta^-1 b1, beta^-1 b2): {} mismatches",
        tally[1]
    ));
    r.notes.push(format!("restricted to automorphisms fixing A pointwise: {} mismatches", tally[2]));
}

fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).expect("shuffled identity")
}

/// The full symmetric group, a point stabilizer, or the group generated
/// by one or two random permutations.
fn random_subgroup<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PermGroup {
    let gens: Vec<Permutation> = match rng.gen_range(0..4) {
        0 => return PermGroup::symmetric(n),
        1 if n > 1 => {
            let mut g: Vec<Permutation> = PermGroup::symmetric(n - 1).generators().iter().map(|p| p.extend(n)).collect();
            let c = random_perm(n, rng);
            g = g.iter().map(|p| c.compose(p).compose(&c.inverse())).collect();
            g
        }
        k => (0..k.min(2)).map(|_| random_perm(n, rng)).collect(),
    };
    PermGroup::new(n, &gens).expect("same degree")
}

/// Points-mode instances with at most 8 points and 4 colors; half have
/// `f2` moved by a coset element so that solutions exist.
pub fn points_instances(seed: u64) -> Vec<ColorIsoInstance> {
    let mut rng = rng_for(seed, 11);
    (0..GADGET_INSTANCES)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            let k = rng.gen_range(1..=4u32);
            let group = random_subgroup(n, &mut rng);
            let coset = Subcoset::new(random_perm(n, &mut rng), group).expect("same degree");
            let f1: Vec<u32> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let f2 = if rng.gen_bool(0.5) {
                let pi = coset.random_element(&mut rng).expect("nonempty");
                let mut f2 = vec![0; n];
                for x in 0..n {
                    f2[pi.apply(x)] = f1[x];
                }
                f2
            } else {
                (0..n).map(|_| rng.gen_range(0..k)).collect()
            };
            ColorIsoInstance::new(coset, Coloring::Points(f1), Coloring::Points(f2)).expect("valid")
        })
        .collect()
}

/// Graph pairs on at most 6 vertices with a coset of vertex maps; half are
/// relabelled copies.
pub fn graph_pairs(seed: u64) -> Vec<(Graph, Graph, Subcoset)> {
    let mut rng = rng_for(seed, 13);
    let random_graph = |n: usize, rng: &mut ChaCha8Rng| {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    };
    (0..GADGET_INSTANCES)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let x = random_graph(n, &mut rng);
            let coset = Subcoset::new(random_perm(n, &mut rng), random_subgroup(n, &mut rng)).expect("same degree");
            let y = match rng.gen_range(0..3) {
                0 => x.relabel(&coset.random_element(&mut rng).expect("nonempty")),
                1 => x.relabel(&random_perm(n, &mut rng)),
                _ => random_graph(n, &mut rng),
            };
            (x, y, coset)
        })
        .collect()
}

fn gadget(r: &mut SuiteReport, seed: u64) {
    for (k, inst) in points_instances(seed).iter().enumerate() {
        let Some(sol) = r.ok(solve_color_iso(inst), || format!("instance {k}: solver")) else { continue };
        let Some(pair) = r.ok(ci_to_gis(inst), || format!("instance {k}: gadgets")) else { continue };
        r.check(pair.x1.clique_signature_holds() && pair.x2.clique_signature_holds(), || {
            format!("instance {k}: clique signature")
        });
        let isos = brute_force_graph_isos(&pair.x1.graph, &pair.x2.graph, Some(&pair.coset));
        r.check(sol.order() == BigUint::from(isos.len()), || {
            format!("instance {k}: solver {} graph isomorphisms {}", sol.order(), isos.len())
        });
        let n = inst.f1.points();
        for p in &isos {
            let restricted = Permutation::from_images((0..n).map(|x| p.apply(x)).collect());
            r.check(restricted.is_ok_and(|q| sol.contains(&q)), || format!("instance {k}: isomorphism outside solutions"));
        }
    }
    for (k, (x, y, coset)) in graph_pairs(seed).iter().enumerate() {
        let Some(inst) = r.ok(gis_to_ci(x, y, coset), || format!("graph pair {k}: instance")) else { continue };
        let Some(sol) = r.ok(solve_color_iso(&inst), || format!("graph pair {k}: solver")) else { continue };
        let isos = brute_force_graph_isos(x, y, Some(coset));
        r.check(sol.order() == BigUint::from(isos.len()), || {
            format!("graph pair {k}: solver {} brute force {}", sol.order(), isos.len())
        });
        if let Some(rep) = sol.rep() {
            let ok = vertex_map(rep, x.order()).is_ok_and(|p| x.is_isomorphism(y, &p) && coset.contains(&p));
            r.check(ok, || format!("graph pair {k}: solution is not a coset isomorphism"));
        }
    }
}

fn small_enough(c: &Subcoset) -> bool {
    c.order().to_u64().is_some_and(|o| o <= ORACLE_COSET_BOUND)
}

/// Every instance with coset order at most [`ORACLE_COSET_BOUND`] that the
/// other suites build, labelled by origin.
pub fn oracle_instances(seed: u64) -> Vec<(String, ColorIsoInstance)> {
    let mut out = Vec::new();
    for (k, inst) in points_instances(seed).into_iter().enumerate() {
        out.push((format!("points {k}"), inst));
    }
    for (k, (x, y, coset)) in graph_pairs(seed).into_iter().enumerate() {
        if let Ok(inst) = gis_to_ci(&x, &y, &coset) {
            out.push((format!("graph pair {k}"), inst));
        }
    }
    for (ng, nh, red) in reductions(seed) {
        let Ok(red) = red else { continue };
        let order = red.solver.group().order().to_u64();
        if order.is_none_or(|o| o > ORACLE_COSET_BOUND) {
            continue;
        }
        for i in 0..red.reps.len() {
            if let Ok(inst) = red.instance(i) {
                out.push((format!("{ng} -> {nh} #{i}"), inst));
            }
        }
    }
    for (name, f) in bilinear_corpus(seed) {
        let Ok(gf) = build_gf(&f) else { continue };
        let Ok(coset) = product_coset(&gf) else { continue };
        let m = Coloring::multiplication(&gf.group);
        if let Ok(inst) = ColorIsoInstance::new(coset, m.clone(), m) {
            out.push((format!("G_f of {name}"), inst));
        }
    }
    out.retain(|(_, inst)| small_enough(&inst.coset));
    out
}

fn solver_oracle(r: &mut SuiteReport, seed: u64) {
    let instances = oracle_instances(seed);
    let parts: Vec<SuiteReport> = instances
        .par_iter()
        .map(|(name, inst)| {
            let mut part = SuiteReport::default();
            let solved = part.ok(solve_color_iso(inst), || format!("{name}: solver"));
            let filtered = part.ok(solve_by_filter(inst), || format!("{name}: filter"));
            if let (Some(a), Some(b)) = (solved, filtered) {
                part.check(a.same_set(&b), || format!("{name}: solver order {}, filter order {}", a.order(), b.order()));
            }
            part
        })
        .collect();
    for p in parts {
        r.absorb(p);
    }
    r.notes.push(format!("{} instances with coset order <= {ORACLE_COSET_BOUND}", instances.len()));
}

/// Runs every suite in criterion order.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|&s| run_suite(s, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::AbelAut.criterion(), 3);
    }

    #[test]
    fn automorphism_oracle() {
        assert_eq!(count_abelian_automorphisms(&z(2)), 1);
        assert_eq!(count_abelian_automorphisms(&AbelianDecomposition::new(vec![(2, 1), (2, 2)]).unwrap()), 8);
        let e8 = AbelianDecomposition::new(vec![(2, 1); 3]).unwrap();
        assert_eq!(count_abelian_automorphisms(&e8), 168);
        assert_eq!(count_abelian_automorphisms(&z(12)), 4);
        assert_eq!(count_abelian_automorphisms(&AbelianDecomposition::trivial()), 1);
    }

    #[test]
    fn matrix_enumeration() {
        // |End(Z2 × Z4)| = 2 · 2 · 2 · 4
        assert_eq!(all_matrices(2, &[1, 2]).len(), 32);
        assert!(hr_groups().contains(&(3, vec![1, 1, 1])));
        assert!(!hr_groups().contains(&(3, vec![1, 1, 2])));
    }

    #[test]
    fn instance_generators_are_seeded() {
        let a: Vec<_> = points_instances(3).iter().map(|i| i.to_file().map(|f| serde_json::to_string(&f).unwrap())).collect();
        let b: Vec<_> = points_instances(3).iter().map(|i| i.to_file().map(|f| serde_json::to_string(&f).unwrap())).collect();
        assert_eq!(a, b);
    }
}
