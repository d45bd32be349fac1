//! Green's relations of a Cayley-table semigroup, by comparing principal ideals.

use std::collections::HashMap;
use std::hash::Hash;

use crate::bitset::BitSet;
use crate::semigroup::Semigroup;

#[derive(Clone, Debug)]
pub struct GreenData {
    r_ideal: Vec<BitSet>,
    l_ideal: Vec<BitSet>,
    j_ideal: Vec<BitSet>,
    r_class_of: Vec<usize>,
    l_class_of: Vec<usize>,
    h_class_of: Vec<usize>,
    j_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub regular_j: Vec<bool>,
}

/// Groups elements with equal keys; class ids follow the smallest member.
fn classes_by<K: Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(n);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let next = classes.len();
        let id = *ids.entry(key(x)).or_insert(next);
        if id == next {
            classes.push(Vec::new());
        }
        classes[id].push(x);
        class_of.push(id);
    }
    (class_of, classes)
}

impl GreenData {
    pub fn new(s: &Semigroup) -> Self {
        let n = s.order();
        let r_ideal: Vec<BitSet> = s
            .elements()
            .map(|x| BitSet::from_iter_with_len(n, std::iter::once(x).chain(s.elements().map(|y| s.mul(x, y)))))
            .collect();
        let l_ideal: Vec<BitSet> = s
            .elements()
            .map(|x| BitSet::from_iter_with_len(n, std::iter::once(x).chain(s.elements().map(|y| s.mul(y, x)))))
            .collect();
        let j_ideal: Vec<BitSet> = s
            .elements()
            .map(|x| {
                let mut acc = BitSet::new(n);
                for y in r_ideal[x].iter() {
                    acc.union_with(&l_ideal[y]);
                }
                acc
            })
            .collect();

        let (r_class_of, r_classes) = classes_by(n, |x| &r_ideal[x]);
        let (l_class_of, l_classes) = classes_by(n, |x| &l_ideal[x]);
        let (j_class_of, j_classes) = classes_by(n, |x| &j_ideal[x]);
        let (h_class_of, h_classes) = classes_by(n, |x| (r_class_of[x], l_class_of[x]));
        let regular_j = j_classes
            .iter()
            .map(|c| c.iter().any(|&x| s.is_idempotent(x)))
            .collect();

        GreenData {
            r_ideal,
            l_ideal,
            j_ideal,
            r_class_of,
            l_class_of,
            h_class_of,
            j_class_of,
            r_classes,
            l_classes,
            h_classes,
            j_classes,
            regular_j,
        }
    }

    pub fn r_class_of(&self, x: usize) -> usize {
        self.r_class_of[x]
    }

    pub fn l_class_of(&self, x: usize) -> usize {
        self.l_class_of[x]
    }

    pub fn h_class_of(&self, x: usize) -> usize {
        self.h_class_of[x]
    }

    pub fn j_class_of(&self, x: usize) -> usize {
        self.j_class_of[x]
    }

    pub fn r_class(&self, x: usize) -> &[usize] {
        &self.r_classes[self.r_class_of[x]]
    }

    /// `x ≤_R y`, i.e. `x ∈ yS¹`.
    pub fn r_leq(&self, x: usize, y: usize) -> bool {
        self.r_ideal[y].contains(x)
    }

    pub fn r_lt(&self, x: usize, y: usize) -> bool {
        self.r_leq(x, y) && !self.r_leq(y, x)
    }

    pub fn l_leq(&self, x: usize, y: usize) -> bool {
        self.l_ideal[y].contains(x)
    }

    pub fn j_leq(&self, x: usize, y: usize) -> bool {
        self.j_ideal[y].contains(x)
    }

    pub fn r_related(&self, x: usize, y: usize) -> bool {
        self.r_class_of[x] == self.r_class_of[y]
    }

    pub fn h_related(&self, x: usize, y: usize) -> bool {
        self.h_class_of[x] == self.h_class_of[y]
    }

    /// Order on R-class indices.
    pub fn r_order_leq(&self, a: usize, b: usize) -> bool {
        self.r_leq(self.r_classes[a][0], self.r_classes[b][0])
    }

    /// Order on J-class indices.
    pub fn j_order_leq(&self, a: usize, b: usize) -> bool {
        self.j_leq(self.j_classes[a][0], self.j_classes[b][0])
    }

    pub fn is_regular(&self, x: usize) -> bool {
        self.regular_j[self.j_class_of[x]]
    }

    pub fn is_r_trivial(&self) -> bool {
        self.r_classes.iter().all(|c| c.len() == 1)
    }
}

pub fn is_r_trivial(s: &Semigroup) -> bool {
    GreenData::new(s).is_r_trivial()
}

/// `⟨E(S)⟩` is R-trivial, with Green's relations taken inside `⟨E(S)⟩`.
pub fn is_in_er(s: &Semigroup) -> bool {
    let generated = s.subsemigroup_generated(&s.idempotents());
    let (sub, _) = s
        .restrict(&generated)
        .expect("a generated subsemigroup is product-closed");
    is_r_trivial(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{self, *};

    #[test]
    fn group_is_one_class() {
        let g = GreenData::new(&named::cyclic_group(3));
        assert_eq!(g.r_classes.len(), 1);
        assert_eq!(g.l_classes.len(), 1);
        assert_eq!(g.h_classes.len(), 1);
        assert_eq!(g.j_classes.len(), 1);
        assert_eq!(g.regular_j, vec![true]);
    }

    #[test]
    fn t2_r_classes() {
        let g = GreenData::new(&named::t2());
        assert_eq!(g.r_classes, vec![vec![T2_ID, T2_SIGMA], vec![T2_C1, T2_C2]]);
        // constants are L-separated
        assert_eq!(g.l_classes.len(), 3);
        assert!(g.r_lt(T2_C1, T2_ID));
        assert!(g.j_leq(T2_C2, T2_SIGMA));
    }

    #[test]
    fn null_semigroup_trivial_relations() {
        let g = GreenData::new(&named::null(2));
        assert_eq!(g.r_classes.len(), 2);
        assert_eq!(g.l_classes.len(), 2);
        assert_eq!(g.j_classes.len(), 2);
        assert_eq!(g.regular_j, vec![false, true]);
    }

    #[test]
    fn h_is_r_meet_l() {
        let s = named::b2();
        let g = GreenData::new(&s);
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(
                    g.h_related(x, y),
                    g.r_related(x, y) && g.l_class_of(x) == g.l_class_of(y)
                );
                assert_eq!(g.r_leq(x, y) && g.r_leq(y, x), g.r_related(x, y));
                assert_eq!(
                    g.j_leq(x, y) && g.j_leq(y, x),
                    g.j_class_of(x) == g.j_class_of(y)
                );
            }
        }
    }

    #[test]
    fn r_triviality() {
        assert!(is_r_trivial(&named::null(2)));
        assert!(!is_r_trivial(&named::cyclic_group(3)));
        assert!(!is_r_trivial(&named::t2()));
    }

    #[test]
    fn er_membership() {
        assert!(is_in_er(&named::b2()));
        assert!(!is_in_er(&named::t2()));
        for g in [named::cyclic_group(2), named::cyclic_group(5), named::klein_four()] {
            assert!(is_in_er(&g));
        }
    }
}
