//! Transformation semigroups given by generators, kept as explicit maps.
//!
//! Used for semigroups too large for a Cayley table: the transition semigroup
//! of the automaton and the semigroups of decreasing maps. Maps act on the
//! right and compose left to right: `x·y` applies `x` first.

use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::semigroup::Semigroup;

pub type Map = Box<[u32]>;

#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    degree: usize,
    elements: Vec<Map>,
    index: HashMap<Map, usize>,
    /// Element index of each generator; generators may coincide.
    generators: Vec<usize>,
    /// `right[x][g]` is the index of `x · generator g`.
    right: Vec<Vec<usize>>,
}

fn compose_maps(f: &[u32], g: &[u32]) -> Map {
    f.iter().map(|&p| g[p as usize]).collect()
}

impl TransformationSemigroup {
    pub fn generate(degree: usize, gens: &[Map], limits: &Limits) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Malformed("at least one generator is required".into()));
        }
        if gens
            .iter()
            .any(|g| g.len() != degree || g.iter().any(|&p| p as usize >= degree))
        {
            return Err(Error::Malformed("generator is not a map on the state set".into()));
        }
        let mut elements: Vec<Map> = Vec::new();
        let mut index: HashMap<Map, usize> = HashMap::new();
        let mut generators = Vec::with_capacity(gens.len());
        for g in gens {
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elements.push(g.clone());
                elements.len() - 1
            });
            generators.push(i);
        }
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for &g in &generators {
                let c = compose_maps(&elements[i], &elements[g]);
                let next = elements.len();
                let j = *index.entry(c).or_insert(next);
                if j == next {
                    let c = compose_maps(&elements[i], &elements[g]);
                    elements.push(c);
                    guard("transformation semigroup size", elements.len(), limits.max_transformations)?;
                    guard(
                        "transformation semigroup cells",
                        elements.len() * degree,
                        limits.max_transformation_cells,
                    )?;
                }
                row.push(j);
            }
            right.push(row);
            i += 1;
        }
        Ok(TransformationSemigroup {
            degree,
            elements,
            index,
            generators,
            right,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn index_of(&self, map: &[u32]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn generator(&self, g: usize) -> usize {
        self.generators[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of `x · generator g`.
    pub fn right_mul_generator(&self, x: usize, g: usize) -> usize {
        self.right[x][g]
    }

    pub fn apply(&self, x: usize, point: usize) -> usize {
        self.elements[x][point] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&compose_maps(&self.elements[x], &self.elements[y])]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        let f = &self.elements[x];
        f.iter().all(|&p| f[p as usize] == p)
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// R-classes as strongly connected components of the right Cayley graph.
    pub fn r_classes(&self) -> Vec<Vec<usize>> {
        let edges = self
            .right
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&y| (x as u32, y as u32)));
        let mut graph: DiGraph<(), ()> = DiGraph::from_edges(edges);
        // isolated trailing nodes cannot occur: every element has out-edges
        while graph.node_count() < self.len() {
            graph.add_node(());
        }
        let mut classes: Vec<Vec<usize>> = tarjan_scc(&graph)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        classes.sort();
        classes
    }

    pub fn is_r_trivial(&self) -> bool {
        self.r_classes().iter().all(|c| c.len() == 1)
    }

    /// `⟨E(T)⟩` is R-trivial, computed inside `⟨E(T)⟩`.
    pub fn is_in_er(&self, limits: &Limits) -> Result<bool> {
        let idempotents: Vec<Map> = self
            .idempotents()
            .into_iter()
            .map(|e| self.elements[e].clone())
            .collect();
        let generated = TransformationSemigroup::generate(self.degree, &idempotents, limits)?;
        Ok(generated.is_r_trivial())
    }

    /// Cayley table in this semigroup's element order.
    pub fn to_semigroup(&self, max_order: usize) -> Result<Semigroup> {
        guard("Cayley table order", self.len(), max_order)?;
        let n = self.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(self.mul(x, y));
            }
        }
        Ok(Semigroup::from_table_unchecked(n, table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{is_in_er, is_r_trivial};

    fn maps(v: &[&[u32]]) -> Vec<Map> {
        v.iter().map(|m| m.to_vec().into_boxed_slice()).collect()
    }

    #[test]
    fn full_transformation_monoid_on_two_points() {
        let l = Limits::default();
        let t = TransformationSemigroup::generate(2, &maps(&[&[1, 0], &[0, 0]]), &l).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.r_classes().len(), 2);
        assert!(!t.is_in_er(&l).unwrap());
        let cayley = t.to_semigroup(16).unwrap();
        cayley.check_associative().unwrap();
        assert!(!is_in_er(&cayley));
    }

    #[test]
    fn decreasing_chain_maps_are_r_trivial() {
        let l = Limits::default();
        // on the chain 0 < 1 < 2: collapse 2 to 1, and collapse 1 to 0
        let t = TransformationSemigroup::generate(3, &maps(&[&[0, 1, 1], &[0, 0, 2]]), &l).unwrap();
        assert!(t.is_r_trivial());
        assert!(is_r_trivial(&t.to_semigroup(64).unwrap()));
    }

    #[test]
    fn cyclic_permutation_group() {
        let l = Limits::default();
        let t = TransformationSemigroup::generate(3, &maps(&[&[1, 2, 0]]), &l).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.idempotents().len(), 1);
        assert!(t.is_in_er(&l).unwrap());
        assert!(!t.is_r_trivial());
    }

    #[test]
    fn guard_on_size() {
        let l = Limits {
            max_transformations: 5,
            ..Limits::default()
        };
        // S3 has six elements
        let err = TransformationSemigroup::generate(3, &maps(&[&[1, 2, 0], &[1, 0, 2]]), &l).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn rejects_bad_generators() {
        let l = Limits::default();
        assert!(TransformationSemigroup::generate(2, &maps(&[&[0, 2]]), &l).is_err());
        assert!(TransformationSemigroup::generate(2, &[], &l).is_err());
    }
}
