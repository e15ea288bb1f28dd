//! Names of simple groups.
//!
//! Nonabelian simple groups of order below 20160 are determined by their
//! order, so classification is a table lookup. Larger factors arise only
//! structurally (as `Alt(n)` or `PSL(d, q)` components) and get their
//! labels from the constructors on [`SimpleFactorLabel`].

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::util::{factorize, is_prime, prime_power};

/// Orders from here on are not classified by lookup (Alt(8) and PSL(3,4)
/// share order 20160).
pub const CLASSIFICATION_BOUND: u128 = 20160;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorName {
    Cyclic(u64),
    Alt(usize),
    #[serde(rename = "PSL")]
    Psl(usize, u64),
    Other(String),
}

impl fmt::Display for FactorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorName::Cyclic(p) => write!(f, "Cyclic({p})"),
            FactorName::Alt(n) => write!(f, "Alt({n})"),
            FactorName::Psl(d, q) => write!(f, "PSL({d},{q})"),
            FactorName::Other(s) => write!(f, "{s}"),
        }
    }
}

/// A simple group up to isomorphism, with every standard name it goes by.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleFactorLabel {
    pub order: u128,
    pub names: Vec<FactorName>,
}

impl fmt::Display for SimpleFactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.names.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", names.join("="))
    }
}

/// Nonabelian simple groups of order < 20160.
const TABLE: &[(u128, &[FactorName])] = {
    use FactorName::*;
    &[
        (60, &[Alt(5), Psl(2, 4), Psl(2, 5)]),
        (168, &[Psl(2, 7), Psl(3, 2)]),
        (360, &[Alt(6), Psl(2, 9)]),
        (504, &[Psl(2, 8)]),
        (660, &[Psl(2, 11)]),
        (1092, &[Psl(2, 13)]),
        (2448, &[Psl(2, 17)]),
        (2520, &[Alt(7)]),
        (3420, &[Psl(2, 19)]),
        (4080, &[Psl(2, 16)]),
        (5616, &[Psl(3, 3)]),
        (6048, &[]),
        (6072, &[Psl(2, 23)]),
        (7800, &[Psl(2, 25)]),
        (7920, &[]),
        (9828, &[Psl(2, 27)]),
        (12180, &[Psl(2, 29)]),
        (14880, &[Psl(2, 31)]),
    ]
};

impl SimpleFactorLabel {
    pub fn cyclic(p: u64) -> Self {
        debug_assert!(is_prime(p));
        SimpleFactorLabel { order: p as u128, names: vec![FactorName::Cyclic(p)] }
    }

    /// Label for a nonabelian simple group of the given order, or for
    /// `Cyclic(p)` when the order is prime.
    pub fn from_order(order: u128) -> Result<Self> {
        if order <= u64::MAX as u128 && is_prime(order as u64) {
            return Ok(Self::cyclic(order as u64));
        }
        if order >= CLASSIFICATION_BOUND {
            return Err(Error::OrderOutOfRange(order.min(usize::MAX as u128) as usize));
        }
        let (_, names) = TABLE
            .iter()
            .find(|(o, _)| *o == order)
            .ok_or(Error::NotSimple(order as usize))?;
        let names = match order {
            6048 => vec![FactorName::Other("PSU(3,3)".into())],
            7920 => vec![FactorName::Other("M11".into())],
            _ => names.to_vec(),
        };
        Ok(SimpleFactorLabel { order, names })
    }

    /// `Alt(n)` for `n >= 5`.
    pub fn alternating(n: usize) -> Self {
        assert!(n >= 5, "Alt(n) is simple nonabelian only for n >= 5");
        let order: u128 = (3..=n as u128).product();
        if order < CLASSIFICATION_BOUND {
            return Self::from_order(order).expect("table covers small alternating groups");
        }
        let mut names = vec![FactorName::Alt(n)];
        if n == 8 {
            names.push(FactorName::Psl(4, 2));
        }
        SimpleFactorLabel { order, names }
    }

    /// `PSL(d, q)` for the simple cases (excludes PSL(2,2) and PSL(2,3)).
    pub fn psl(d: usize, q: u64) -> Self {
        assert!(prime_power(q).is_some(), "q must be a prime power");
        assert!(d >= 2 && !(d == 2 && q <= 3), "PSL({d},{q}) is not simple");
        let order = psl_order(d, q);
        if order < CLASSIFICATION_BOUND {
            return Self::from_order(order).expect("table covers small PSL groups");
        }
        let mut names = vec![FactorName::Psl(d, q)];
        if (d, q) == (4, 2) {
            names.insert(0, FactorName::Alt(8));
        }
        SimpleFactorLabel { order, names }
    }

    pub fn is_cyclic(&self) -> bool {
        self.names.iter().any(|n| matches!(n, FactorName::Cyclic(_)))
    }

    /// Whether the factor is cyclic or has a PSL name.
    pub fn in_cis_class(&self) -> bool {
        self.names.iter().any(|n| matches!(n, FactorName::Cyclic(_) | FactorName::Psl(..)))
    }
}

/// `|PSL(d, q)|`
pub fn psl_order(d: usize, q: u64) -> u128 {
    let q = q as u128;
    let mut order = q.pow((d * (d - 1) / 2) as u32);
    for i in 2..=d as u32 {
        order *= q.pow(i) - 1;
    }
    let g = num_integer::gcd(d as u128, q - 1);
    order / g
}

/// Conjugacy class representatives (minimal index per class).
pub fn conjugacy_class_reps(g: &FiniteGroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for t in g.elements() {
            seen[g.conjugate(t, x)] = true;
        }
    }
    reps
}

/// Nontrivial and without proper nontrivial normal subgroups.
pub fn is_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    if g.is_abelian() {
        return is_prime(g.order() as u64);
    }
    if factorize(g.order() as u64).len() == 1 {
        return false;
    }
    let gens = super::generating_sequence(g);
    conjugacy_class_reps(g)
        .into_iter()
        .skip(1)
        .all(|x| Subgroup::normal_closure_with(g, &gens, &[x]).order() == g.order())
}

/// Classifies a simple group by its order.
pub fn classify_simple(g: &FiniteGroup) -> Result<SimpleFactorLabel> {
    let order = g.order() as u128;
    if order >= CLASSIFICATION_BOUND {
        return Err(Error::OrderOutOfRange(g.order()));
    }
    if !is_simple(g) {
        return Err(Error::NotSimple(g.order()));
    }
    SimpleFactorLabel::from_order(order)
}

/// Label for a group already known to be simple.
pub(crate) fn classify_simple_unchecked(g: &FiniteGroup) -> SimpleFactorLabel {
    SimpleFactorLabel::from_order(g.order() as u128).unwrap_or_else(|_| SimpleFactorLabel {
        order: g.order() as u128,
        names: vec![FactorName::Other(format!("simple group of order {}", g.order()))],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, general_linear, symmetric};

    #[test]
    fn small_simple_groups() {
        assert_eq!(classify_simple(&cyclic(7)).unwrap(), SimpleFactorLabel::cyclic(7));
        let a5 = classify_simple(&alternating(5)).unwrap();
        assert_eq!(a5.names.len(), 3);
        assert!(a5.in_cis_class());
        let gl32 = classify_simple(&general_linear(3, 2)).unwrap();
        assert_eq!(gl32.names, vec![FactorName::Psl(2, 7), FactorName::Psl(3, 2)]);
    }

    #[test]
    fn non_simple_rejected() {
        assert_eq!(classify_simple(&symmetric(4)), Err(Error::NotSimple(24)));
        assert_eq!(classify_simple(&cyclic(4)), Err(Error::NotSimple(4)));
        assert!(!is_simple(&cyclic(1)));
    }

    #[test]
    fn structural_labels() {
        assert_eq!(SimpleFactorLabel::alternating(5), SimpleFactorLabel::psl(2, 4));
        assert_eq!(SimpleFactorLabel::alternating(6), SimpleFactorLabel::psl(2, 9));
        assert!(!SimpleFactorLabel::alternating(7).in_cis_class());
        assert_eq!(SimpleFactorLabel::alternating(8), SimpleFactorLabel::psl(4, 2));
        assert_eq!(psl_order(3, 4), 20160);
        assert_eq!(psl_order(2, 7), 168);
        assert_eq!(SimpleFactorLabel::from_order(20160), Err(Error::OrderOutOfRange(20160)));
    }

    #[test]
    fn table_orders_match_formula() {
        for (order, names) in TABLE {
            for n in names.iter() {
                let o = match n {
                    FactorName::Alt(k) => (3..=*k as u128).product(),
                    FactorName::Psl(d, q) => psl_order(*d, *q),
                    _ => unreachable!(),
                };
                assert_eq!(o, *order, "{n}");
            }
        }
    }
}
