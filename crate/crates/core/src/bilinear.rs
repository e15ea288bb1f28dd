//! Bilinear maps `f : B × B → A` of finite abelian groups, their isometry
//! groups, and the class-2 group `G_f` on `B × A`.
//!
//! `A` and `B` are written additively and indexed through their
//! decompositions. `G_f` element `(b, a)` has index `b + |B| a`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{aut_group_of, AbelianDecomposition};
use crate::coloriso::gris_solve;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{PermGroup, Permutation, Subcoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub a: AbelianDecomposition,
    pub b: AbelianDecomposition,
    /// `table[x * |B| + y] = f(x, y)` as an index of `A`.
    pub table: Vec<usize>,
}

/// `{"A": …, "B": …, "table": [[[coords of f(x, y)] for y] for x]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BilinearFile {
    #[serde(rename = "A")]
    pub a: AbelianDecomposition,
    #[serde(rename = "B")]
    pub b: AbelianDecomposition,
    pub table: Vec<Vec<Vec<usize>>>,
}

impl BilinearMap {
    pub fn new(a: AbelianDecomposition, b: AbelianDecomposition, table: Vec<usize>) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        if table.len() != nb * nb {
            return Err(Error::InvalidInput(format!("expected {} table entries, found {}", nb * nb, table.len())));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= na) {
            return Err(Error::InvalidInput(format!("table entry {v} is not an element of A")));
        }
        let f = BilinearMap { a, b, table };
        for x in 0..nb {
            if f.apply(0, x) != 0 {
                return Err(Error::NotBilinear(0, x));
            }
            if f.apply(x, 0) != 0 {
                return Err(Error::NotBilinear(x, 0));
            }
        }
        for x1 in 0..nb {
            for x2 in 0..nb {
                let s = f.b.add(x1, x2);
                for y in 0..nb {
                    if f.apply(s, y) != f.a.add(f.apply(x1, y), f.apply(x2, y)) {
                        return Err(Error::NotBilinear(x1, x2));
                    }
                    if f.apply(y, s) != f.a.add(f.apply(y, x1), f.apply(y, x2)) {
                        return Err(Error::NotBilinear(x1, x2));
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn from_fn(a: AbelianDecomposition, b: AbelianDecomposition, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let nb = b.order();
        let table = (0..nb * nb).map(|t| f(t / nb, t % nb)).collect();
        Self::new(a, b, table)
    }

    pub fn zero(a: AbelianDecomposition, b: AbelianDecomposition) -> Self {
        let nb = b.order();
        BilinearMap { a, b, table: vec![0; nb * nb] }
    }

    /// A random map from structure constants `f(e_i, e_j)` on the standard
    /// generators of `B`, each of order dividing `gcd(|e_i|, |e_j|)`.
    pub fn random<R: Rng + ?Sized>(a: AbelianDecomposition, b: AbelianDecomposition, rng: &mut R) -> Self {
        let ma = a.moduli();
        let mb = b.moduli();
        let na = a.order();
        let order_in_a = |x: usize| {
            let c = a.coords(x);
            c.iter().zip(&ma).fold(1, |acc, (&ci, &m)| num_integer::lcm(acc, m / num_integer::gcd(ci, m)))
        };
        let orders: Vec<usize> = (0..na).map(order_in_a).collect();
        let k = mb.len();
        let mut consts = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let g = num_integer::gcd(mb[i], mb[j]);
                let allowed: Vec<usize> = (0..na).filter(|&x| g % orders[x] == 0).collect();
                consts[i * k + j] = *allowed.choose(rng).expect("zero is allowed");
            }
        }
        let nb = b.order();
        let mut table = vec![0; nb * nb];
        for x in 0..nb {
            let cx = b.coords(x);
            for y in 0..nb {
                let cy = b.coords(y);
                let mut acc = vec![0usize; ma.len()];
                for i in 0..k {
                    for j in 0..k {
                        let coeff = cx[i] * cy[j];
                        if coeff == 0 {
                            continue;
                        }
                        for (slot, (&c, &m)) in acc.iter_mut().zip(a.coords(consts[i * k + j]).iter().zip(&ma)) {
                            *slot = (*slot + coeff % m * c) % m;
                        }
                    }
                }
                table[x * nb + y] = a.index(&acc);
            }
        }
        BilinearMap::new(a, b, table).expect("structure constants give a bilinear map")
    }

    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.table[x * self.b.order() + y]
    }

    /// `f(βx, βy) = f(x, y)` for all pairs.
    pub fn is_isometry(&self, beta: &Permutation) -> bool {
        let nb = self.b.order();
        (0..nb).all(|x| (0..nb).all(|y| self.apply(beta.apply(x), beta.apply(y)) == self.apply(x, y)))
    }

    pub fn to_file(&self) -> BilinearFile {
        let nb = self.b.order();
        BilinearFile {
            a: self.a.clone(),
            b: self.b.clone(),
            table: (0..nb).map(|x| (0..nb).map(|y| self.a.coords(self.apply(x, y))).collect()).collect(),
        }
    }

    pub fn from_file(f: &BilinearFile) -> Result<Self> {
        let nb = f.b.order();
        if f.table.len() != nb || f.table.iter().any(|r| r.len() != nb) {
            return Err(Error::InvalidInput(format!("table must be {nb}×{nb}")));
        }
        let mut table = Vec::with_capacity(nb * nb);
        for row in &f.table {
            for c in row {
                if c.len() != f.a.rank() || c.iter().zip(f.a.moduli()).any(|(&x, m)| x >= m) {
                    return Err(Error::InvalidInput(format!("{c:?} is not an element of A")));
                }
                table.push(f.a.index(c));
            }
        }
        Self::new(f.a.clone(), f.b.clone(), table)
    }
}

/// All isometries, by filtering `Aut(B)`.
pub fn brute_force_isometries(f: &BilinearMap) -> Result<PermGroup> {
    let aut = aut_group_of(&f.b)?;
    let passing: Vec<Permutation> = aut.elements(usize::MAX)?.into_iter().filter(|p| f.is_isometry(p)).collect();
    let group = PermGroup::new(f.b.order(), &passing)?;
    if group.order() != passing.len().into() {
        return Err(Error::Invariant("isometries are not closed under composition".into()));
    }
    Ok(group)
}

#[derive(Clone, Debug)]
pub struct GfGroup {
    pub f: BilinearMap,
    pub group: FiniteGroup,
}

impl GfGroup {
    pub fn index(&self, b: usize, a: usize) -> usize {
        b + self.f.b.order() * a
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        let nb = self.f.b.order();
        (g % nb, g / nb)
    }

    /// `ℓ(b) = (b, 0)`
    pub fn ell(&self, b: usize) -> usize {
        b
    }

    /// Indices of the central copy of `A`.
    pub fn a_points(&self) -> Vec<usize> {
        (0..self.f.a.order()).map(|a| self.index(0, a)).collect()
    }

    /// `[G_f, G_f] ⊆ A ⊆ Z(G_f)`.
    pub fn is_class_two(&self) -> bool {
        let g = &self.group;
        let central = self.a_points().into_iter().all(|a| g.elements().all(|x| g.mul(a, x) == g.mul(x, a)));
        let commutators = g.elements().all(|x| g.elements().all(|y| self.split(g.commutator(x, y)).0 == 0));
        central && commutators
    }
}

/// `(b1, a1)(b2, a2) = (b1 + b2, a1 + a2 + f(b1, b2))`
pub fn build_gf(f: &BilinearMap) -> Result<GfGroup> {
    let (na, nb) = (f.a.order(), f.b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for g in 0..n {
        let (b1, a1) = (g % nb, g / nb);
        for h in 0..n {
            let (b2, a2) = (h % nb, h / nb);
            let b = f.b.add(b1, b2);
            let a = f.a.add(f.a.add(a1, a2), f.apply(b1, b2));
            table[g * n + h] = (b + nb * a) as u32;
        }
    }
    let group = FiniteGroup::from_flat(n, table).map_err(|e| Error::Invariant(format!("G_f is not a group: {e}")))?;
    let gf = GfGroup { f: f.clone(), group };
    if !gf.is_class_two() {
        return Err(Error::Invariant("G_f is not of class at most 2".into()));
    }
    Ok(gf)
}

/// `(b, a) ↦ (βb, a)` for an isometry `β`.
pub fn isometry_to_aut(gf: &GfGroup, beta: &Permutation) -> Result<Vec<usize>> {
    if !gf.f.is_isometry(beta) {
        return Err(Error::NotIsometry);
    }
    let map: Vec<usize> = gf
        .group
        .elements()
        .map(|g| {
            let (b, a) = gf.split(g);
            gf.index(beta.apply(b), a)
        })
        .collect();
    if !crate::group::is_homomorphism(&gf.group, &gf.group, &map) {
        return Err(Error::Invariant("isometry did not give an automorphism".into()));
    }
    Ok(map)
}

/// Both sides of the homomorphism criterion for an automorphism `φ` of
/// `G_f` with `φ[A] = A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutHomCheck {
    /// `φ_φ(b) = ℓ(b) ℓ_φ(b)^-1` is additive.
    pub phi_hom: bool,
    /// `f(b1, b2) = f(β^-1 b1, β^-1 b2)`.
    pub inverse_isometry: bool,
    /// `f(b1, b2) = φ_A(f(β^-1 b1, β^-1 b2))`.
    pub twisted_isometry: bool,
    pub fixes_a_pointwise: bool,
}

pub fn varphi_hom_check(gf: &GfGroup, phi: &[usize]) -> Result<AutHomCheck> {
    let g = &gf.group;
    let (na, nb) = (gf.f.a.order(), gf.f.b.order());
    let a_pts = gf.a_points();
    if a_pts.iter().any(|&x| gf.split(phi[x]).0 != 0) {
        return Err(Error::DoesNotFixA);
    }
    let sigma: Vec<usize> = (0..na).map(|a| gf.split(phi[gf.index(0, a)]).1).collect();
    let beta = Permutation::from_images((0..nb).map(|b| gf.split(phi[gf.ell(b)]).0).collect())?;
    let beta_inv = beta.inverse();
    let varphi: Vec<usize> = (0..nb)
        .map(|b| {
            let ell_phi = phi[gf.ell(beta_inv.apply(b))];
            let x = g.mul(gf.ell(b), g.inv(ell_phi));
            let (b0, a) = gf.split(x);
            debug_assert_eq!(b0, 0);
            a
        })
        .collect();
    let f = &gf.f;
    let phi_hom = (0..nb).all(|x| (0..nb).all(|y| varphi[f.b.add(x, y)] == f.a.add(varphi[x], varphi[y])));
    let inverse_isometry = f.is_isometry(&beta_inv);
    let twisted_isometry = (0..nb).all(|x| {
        (0..nb).all(|y| f.apply(x, y) == sigma[f.apply(beta_inv.apply(x), beta_inv.apply(y))])
    });
    let fixes_a_pointwise = sigma.iter().enumerate().all(|(a, &s)| a == s);
    Ok(AutHomCheck { phi_hom, inverse_isometry, twisted_isometry, fixes_a_pointwise })
}

/// `Sym(B) × Sym(A)` acting on `G_f` by `(π, σ)(ℓ(b) a) = ℓ(πb) σa`.
pub fn product_coset(gf: &GfGroup) -> Result<Subcoset> {
    let (na, nb) = (gf.f.a.order(), gf.f.b.order());
    let n = na * nb;
    let mut gens = Vec::new();
    for p in PermGroup::symmetric(nb).generators() {
        gens.push(Permutation::from_images((0..n).map(|g| gf.index(p.apply(g % nb), g / nb)).collect())?);
    }
    for s in PermGroup::symmetric(na).generators() {
        gens.push(Permutation::from_images((0..n).map(|g| gf.index(g % nb, s.apply(g / nb))).collect())?);
    }
    Ok(Subcoset::from_group(PermGroup::new(n, &gens)?))
}

/// `Aut(G_f)_{A, ℓ[B]}` from GRIS over [`product_coset`].
pub fn aut_gf_preserving(gf: &GfGroup) -> Result<PermGroup> {
    let sol = gris_solve(&gf.group, &gf.group, &product_coset(gf)?)?;
    sol.group().cloned().ok_or_else(|| Error::Invariant("the identity is always a solution".into()))
}

fn restrict_to_b(gf: &GfGroup, group: &PermGroup) -> Result<PermGroup> {
    let nb = gf.f.b.order();
    let gens = group
        .generators()
        .iter()
        .map(|p| Permutation::from_images((0..nb).map(|b| gf.split(p.apply(gf.ell(b))).0).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(nb, &gens)
}

/// The restriction of `Aut(G_f)_{A, ℓ[B]}` to `B`. Elements acting on `A`
/// by a nontrivial `σ` restrict to maps with `f(βx, βy) = σ f(x, y)`, so
/// this is in general larger than the isometry group.
pub fn pseudo_isometries_via_gris(f: &BilinearMap) -> Result<PermGroup> {
    let gf = build_gf(f)?;
    restrict_to_b(&gf, &aut_gf_preserving(&gf)?)
}

/// Isometries through GRIS: `Aut(G_f)_{A, ℓ[B]}`, then the pointwise
/// stabilizer of `A`, restricted to `B`.
pub fn isometries_via_gris(f: &BilinearMap) -> Result<PermGroup> {
    let gf = build_gf(f)?;
    let aut = aut_gf_preserving(&gf)?;
    let fixing = aut.pointwise_stabilizer(&gf.a_points())?;
    restrict_to_b(&gf, &fixing)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::group::{count_isomorphisms, cyclic, direct_product, for_each_isomorphism};

    fn z(n: u64) -> AbelianDecomposition {
        AbelianDecomposition::cyclic(n)
    }

    fn mult(p: u64) -> BilinearMap {
        let p = p as usize;
        BilinearMap::from_fn(z(p as u64), z(p as u64), |x, y| x * y % p).unwrap()
    }

    fn dot() -> BilinearMap {
        let v4 = AbelianDecomposition::new(vec![(2, 1), (2, 1)]).unwrap();
        BilinearMap::from_fn(z(2), v4.clone(), |x, y| {
            let (cx, cy) = (v4.coords(x), v4.coords(y));
            (cx[0] * cy[0] + cx[1] * cy[1]) % 2
        })
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(BilinearMap::new(z(2), z(2), vec![1, 0, 0, 0]).is_err());
        assert!(BilinearMap::new(z(2), z(2), vec![0, 0, 0, 1]).is_ok());
        assert!(BilinearMap::new(z(3), z(3), vec![0, 0, 0, 0, 1, 1, 0, 1, 1]).is_err());
    }

    #[test]
    fn named_isometry_groups() {
        let zero = BilinearMap::zero(z(2), AbelianDecomposition::new(vec![(2, 1), (2, 1)]).unwrap());
        assert_eq!(brute_force_isometries(&zero).unwrap().order(), BigUint::from(6u32));
        assert_eq!(isometries_via_gris(&zero).unwrap().order(), BigUint::from(6u32));
        assert_eq!(brute_force_isometries(&mult(5)).unwrap().order(), BigUint::from(2u32));
        assert!(isometries_via_gris(&mult(5)).unwrap().same_group(&brute_force_isometries(&mult(5)).unwrap()));
        assert_eq!(brute_force_isometries(&dot()).unwrap().order(), BigUint::from(2u32));
        assert!(isometries_via_gris(&dot()).unwrap().same_group(&brute_force_isometries(&dot()).unwrap()));
        // every unit c gives (b, a) ↦ (cb, c²a)
        assert_eq!(pseudo_isometries_via_gris(&mult(5)).unwrap().order(), BigUint::from(4u32));
    }

    #[test]
    fn gf_examples() {
        let zero = build_gf(&BilinearMap::zero(z(3), z(2))).unwrap();
        assert_eq!(count_isomorphisms(&zero.group, &cyclic(6)), 2);
        assert!(count_isomorphisms(&build_gf(&mult(2)).unwrap().group, &cyclic(4)) > 0);
        let g = build_gf(&mult(3)).unwrap().group;
        assert!(count_isomorphisms(&g, &direct_product(&cyclic(3), &cyclic(3))) > 0);
    }

    #[test]
    fn isometry_automorphisms() {
        let gf = build_gf(&mult(5)).unwrap();
        assert!(isometry_to_aut(&gf, &Permutation::from_images(vec![0, 4, 3, 2, 1]).unwrap()).is_ok());
        let two = Permutation::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        assert_eq!(isometry_to_aut(&gf, &two).unwrap_err(), Error::NotIsometry);
    }

    #[test]
    fn setwise_counterexample() {
        // φ(b, a) = (b, 2a + b²) on G_f for f(x, y) = xy over Z3
        let gf = build_gf(&mult(3)).unwrap();
        let phi: Vec<usize> = gf
            .group
            .elements()
            .map(|g| {
                let (b, a) = gf.split(g);
                gf.index(b, (2 * a + b * b) % 3)
            })
            .collect();
        assert!(crate::group::is_homomorphism(&gf.group, &gf.group, &phi));
        let c = varphi_hom_check(&gf, &phi).unwrap();
        assert!(!c.phi_hom && c.inverse_isometry && !c.fixes_a_pointwise);
        assert!(!c.twisted_isometry);
    }

    #[test]
    fn pointwise_and_twisted_forms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (a, b) in [(z(2), z(4)), (z(3), z(3)), (z(2), AbelianDecomposition::new(vec![(2, 1), (2, 1)]).unwrap())] {
            for _ in 0..3 {
                let f = BilinearMap::random(a.clone(), b.clone(), &mut rng);
                let gf = build_gf(&f).unwrap();
                let a_pts = gf.a_points();
                for_each_isomorphism(&gf.group, &gf.group, |_, _| true, |m| {
                    let phi: Vec<usize> = m.iter().map(|&x| x as usize).collect();
                    if let Ok(c) = varphi_hom_check(&gf, &phi) {
                        assert_eq!(c.phi_hom, c.twisted_isometry);
                        if c.fixes_a_pointwise {
                            assert_eq!(c.phi_hom, c.inverse_isometry);
                        }
                    } else {
                        assert!(a_pts.iter().any(|&x| gf.split(phi[x]).0 != 0));
                    }
                    std::ops::ControlFlow::Continue(())
                });
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let f = dot();
        let s = serde_json::to_string(&f.to_file()).unwrap();
        assert_eq!(BilinearMap::from_file(&serde_json::from_str(&s).unwrap()).unwrap(), f);
    }
}
