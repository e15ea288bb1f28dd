//! Standard constructions of small groups as Cayley tables.

use std::collections::HashMap;
use std::hash::Hash;

use super::FiniteGroup;
use crate::perm::Permutation;

/// Closes `generators` under `mul` and returns the Cayley table, with elements
/// numbered in breadth-first order from the identity. Also returns the
/// element list in that order.
pub fn close_generators<T, F>(identity: T, generators: &[T], mul: F) -> (FiniteGroup, Vec<T>)
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            table[i * n + j] = index[&mul(a, b)] as u32;
        }
    }
    let g = FiniteGroup::from_trusted(n, table).expect("closure of a generating set is a group");
    (g, elements)
}

/// The group generated by permutations, composing as functions
/// (`(p * q)(x) = p(q(x))`).
pub fn from_permutations(degree: usize, generators: &[Permutation]) -> FiniteGroup {
    close_generators(Permutation::identity(degree), generators, |a, b| a.compose(b)).0
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    FiniteGroup::from_trusted(n, table).unwrap()
}

/// Direct product with element `(a, b)` stored at index `a + |G| * b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let size = n * m;
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        let (a1, b1) = (x % n, x / n);
        for y in 0..size {
            let (a2, b2) = (y % n, y / n);
            table[x * size + y] = (g.mul(a1, a2) + n * h.mul(b1, b2)) as u32;
        }
    }
    FiniteGroup::from_trusted(size, table).unwrap()
}

/// `N ⋊ K` where `action[k]` is the automorphism of `N` (as an image list)
/// by which `k` acts; `action` must be a homomorphism `K -> Aut(N)`.
/// Element `(n, k)` is stored at index `n + |N| * k`, product
/// `(n1, k1)(n2, k2) = (n1 · k1(n2), k1 k2)`.
pub fn semidirect_product(n: &FiniteGroup, k: &FiniteGroup, action: &[Vec<usize>]) -> FiniteGroup {
    let (a, b) = (n.order(), k.order());
    assert_eq!(action.len(), b);
    let size = a * b;
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        let (n1, k1) = (x % a, x / a);
        for y in 0..size {
            let (n2, k2) = (y % a, y / a);
            table[x * size + y] = (n.mul(n1, action[k1][n2]) + a * k.mul(k1, k2)) as u32;
        }
    }
    FiniteGroup::from_trusted(size, table).unwrap()
}

/// `Z_m ⋊ Z_n` with the generator of `Z_n` acting as multiplication by `r`;
/// requires `r^n = 1 (mod m)`.
pub fn metacyclic(m: usize, n: usize, r: usize) -> FiniteGroup {
    let mut powers = vec![1 % m.max(1)];
    for _ in 1..n {
        let last = *powers.last().unwrap();
        powers.push(last * r % m);
    }
    assert_eq!(powers[n - 1] * r % m, 1 % m, "r^n must be 1 mod m");
    let action: Vec<Vec<usize>> = powers.iter().map(|&p| (0..m).map(|x| x * p % m).collect()).collect();
    semidirect_product(&cyclic(m), &cyclic(n), &action)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1)
}

/// Dicyclic group of order `4n`: `<a, b | a^{2n}, b^2 = a^n, b a b^-1 = a^-1>`.
/// `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let size = 2 * m;
    let idx = |i: usize, j: usize| i % m + m * j;
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            let twisted = if j == 0 { k } else { (m - k) % m };
            let v = match (j, l) {
                (1, 1) => idx(i + twisted + n, 0),
                _ => idx(i + twisted, j + l),
            };
            table[x * size + y] = v as u32;
        }
    }
    FiniteGroup::from_trusted(size, table).unwrap()
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return cyclic(1);
    }
    let gens = vec![Permutation::transposition(n, 0, 1), Permutation::cycle(n, &(0..n).collect::<Vec<_>>())];
    from_permutations(n, &gens)
}

pub fn alternating(n: usize) -> FiniteGroup {
    if n <= 2 {
        return cyclic(1);
    }
    let gens: Vec<Permutation> = (2..n).map(|k| Permutation::cycle(n, &[0, 1, k])).collect();
    from_permutations(n, &gens)
}

/// `SL(2, p)` for a prime `p`.
pub fn special_linear_2(p: usize) -> FiniteGroup {
    type M = [usize; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ]
    };
    let gens = [[1, 1, 0, 1], [1, 0, 1, 1]];
    close_generators([1, 0, 0, 1], &gens, mul).0
}

/// `GL(d, p)` as a Cayley table. Only sensible for small `p^(d^2)`.
pub fn general_linear(d: usize, p: usize) -> FiniteGroup {
    let mul = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        let mut c = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                c[i * d + j] = (0..d).map(|k| a[i * d + k] * b[k * d + j]).sum::<usize>() % p;
            }
        }
        c
    };
    let identity: Vec<usize> = (0..d * d).map(|x| usize::from(x / d == x % d)).collect();
    let mut gens = Vec::new();
    if d == 0 {
        return cyclic(1);
    }
    // diagonal primitive-root scaling and elementary transvections
    let root = crate::util::primitive_root(p as u64) as usize;
    let mut diag = identity.clone();
    diag[0] = root % p;
    gens.push(diag);
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut t = identity.clone();
                t[i * d + j] = 1;
                gens.push(t);
            }
        }
    }
    close_generators(identity, &gens, mul).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dicyclic(2).order(), 8);
        assert_eq!(dicyclic(4).order(), 16);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(special_linear_2(3).order(), 24);
        assert_eq!(general_linear(3, 2).order(), 168);
        assert_eq!(general_linear(2, 3).order(), 48);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = dicyclic(2);
        let involutions = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn metacyclic_relation() {
        // Z3 ⋊ Z4, the dicyclic group of order 12
        let g = metacyclic(3, 4, 2);
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
        assert_eq!(g.elements().filter(|&x| g.element_order(x) == 2).count(), 1);
    }
}
