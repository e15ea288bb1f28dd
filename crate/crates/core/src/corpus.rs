//! The test corpus: one Cayley table per isomorphism class of order at most
//! 16, plus a few larger groups.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::group::{
    alternating, cyclic, dicyclic, dihedral, direct_product, is_solvable, metacyclic, semidirect_product,
    special_linear_2, symmetric, FiniteGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Abelian,
    Solvable,
    SemisimpleTop,
    /// Not of order at most 16.
    Extra,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub tags: BTreeSet<Tag>,
}

impl CorpusEntry {
    fn new(name: &str, group: FiniteGroup) -> Self {
        let mut tags = BTreeSet::new();
        if group.is_abelian() {
            tags.insert(Tag::Abelian);
        }
        if is_solvable(&group) {
            tags.insert(Tag::Solvable);
        } else {
            tags.insert(Tag::SemisimpleTop);
        }
        if group.order() > 16 {
            tags.insert(Tag::Extra);
        }
        CorpusEntry { name: name.to_string(), group, tags }
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

fn prod(groups: &[FiniteGroup]) -> FiniteGroup {
    groups.iter().skip(1).fold(groups[0].clone(), |acc, g| direct_product(&acc, g))
}

/// `(Z4 × Z2) ⋊ Z2` with the involution given on `(x, y)` (index `x + 4y`).
fn z4z2_by_z2(t: impl Fn(usize, usize) -> (usize, usize)) -> FiniteGroup {
    let n = prod(&[cyclic(4), cyclic(2)]);
    let flip: Vec<usize> = (0..8).map(|i| {
        let (x, y) = t(i % 4, i / 4);
        x + 4 * y
    }).collect();
    semidirect_product(&n, &cyclic(2), &[(0..8).collect(), flip])
}

/// The 42 classes of order at most 16, in order, each exactly once.
pub fn small_groups() -> Vec<CorpusEntry> {
    let z = cyclic;
    let e = |name: &str, g: FiniteGroup| CorpusEntry::new(name, g);
    vec![
        e("Z1", z(1)),
        e("Z2", z(2)),
        e("Z3", z(3)),
        e("Z4", z(4)),
        e("Z2xZ2", prod(&[z(2), z(2)])),
        e("Z5", z(5)),
        e("Z6", z(6)),
        e("S3", symmetric(3)),
        e("Z7", z(7)),
        e("Z8", z(8)),
        e("Z4xZ2", prod(&[z(4), z(2)])),
        e("Z2^3", prod(&[z(2), z(2), z(2)])),
        e("D8", dihedral(4)),
        e("Q8", dicyclic(2)),
        e("Z9", z(9)),
        e("Z3xZ3", prod(&[z(3), z(3)])),
        e("Z10", z(10)),
        e("D10", dihedral(5)),
        e("Z11", z(11)),
        e("Z12", z(12)),
        e("Z6xZ2", prod(&[z(6), z(2)])),
        e("D12", dihedral(6)),
        e("A4", alternating(4)),
        e("Z3:Z4", dicyclic(3)),
        e("Z13", z(13)),
        e("Z14", z(14)),
        e("D14", dihedral(7)),
        e("Z15", z(15)),
        e("Z16", z(16)),
        e("Z4xZ4", prod(&[z(4), z(4)])),
        e("Z8xZ2", prod(&[z(8), z(2)])),
        e("Z4xZ2^2", prod(&[z(4), z(2), z(2)])),
        e("Z2^4", prod(&[z(2), z(2), z(2), z(2)])),
        e("(Z4xZ2):Z2", z4z2_by_z2(|x, y| (x, (y + x) % 2))),
        e("Z4:Z4", metacyclic(4, 4, 3)),
        e("M16", metacyclic(8, 2, 5)),
        e("D16", dihedral(8)),
        e("SD16", metacyclic(8, 2, 3)),
        e("Q16", dicyclic(4)),
        e("Z2xD8", prod(&[z(2), dihedral(4)])),
        e("Z2xQ8", prod(&[z(2), dicyclic(2)])),
        e("Z4oD8", z4z2_by_z2(|x, y| ((x + 2 * y) % 4, y))),
    ]
}

/// Groups beyond order 16.
pub fn extra_groups() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry::new("S4", symmetric(4)),
        CorpusEntry::new("SL(2,3)", special_linear_2(3)),
        CorpusEntry::new("Z2xA5", direct_product(&cyclic(2), &alternating(5))),
    ]
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = small_groups();
    out.extend(extra_groups());
    out
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{count_isomorphisms, find_isomorphism};

    #[test]
    fn classes_are_distinct_and_complete() {
        let c = corpus();
        assert_eq!(c.len(), 45);
        let counts: Vec<usize> = (1..=16).map(|n| c.iter().filter(|e| e.group.order() == n).count()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                if a.group.order() == b.group.order() {
                    assert!(find_isomorphism(&a.group, &b.group).is_none(), "{} ~ {}", a.name, b.name);
                }
            }
        }
        let names: BTreeSet<&str> = c.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn tags_and_automorphism_counts() {
        let e = by_name("Z2xA5").unwrap();
        assert!(e.has(Tag::SemisimpleTop) && e.has(Tag::Extra));
        assert!(by_name("Z2^4").unwrap().has(Tag::Abelian));
        let aut = |n: &str| {
            let g = by_name(n).unwrap().group;
            count_isomorphisms(&g, &g)
        };
        assert_eq!(aut("Q8"), 24);
        assert_eq!(aut("Z4oD8"), 48);
        assert_eq!(aut("(Z4xZ2):Z2"), 32);
        assert_eq!(aut("SL(2,3)"), 24);
    }
}
