//! Finite semigroups given by Cayley tables.
//!
//! Elements are dense indices `0..order`. The table is stored row-major with
//! the left factor selecting the row, so `mul(x, y) = table[x * order + y]`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Semigroup {
    order: usize,
    table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Semigroup {
    /// Builds a semigroup from a row-major table, checking range and associativity.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("a semigroup must be non-empty".into()));
        }
        if table.len() != order * order {
            return Err(Error::Malformed(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        let s = Semigroup {
            order,
            table,
            labels: None,
        };
        s.check_associative()?;
        Ok(s)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::Malformed(format!(
                "row of length {} in a table of order {order}",
                row.len()
            )));
        }
        Self::from_table(order, rows.concat())
    }

    /// Table whose associativity is guaranteed by how it was produced
    /// (setwise products, composition of maps, restriction).
    pub(crate) fn from_table_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        Semigroup {
            order,
            table,
            labels: None,
        }
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.order {
            return Err(Error::Malformed(format!(
                "{} labels for {} elements",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize> {
        for i in [x, y] {
            if i >= self.order {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    order: self.order,
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Reports the first failing triple in lexicographic order.
    pub fn check_associative(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.mul(x, y);
                for z in self.elements() {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The unique idempotent in `{x, x², x³, …}`.
    pub fn omega_power(&self, x: usize) -> usize {
        let mut p = x;
        // the powers of x eventually cycle, and the cycle holds exactly one idempotent
        for _ in 0..=self.order {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
        unreachable!("no idempotent power found in a finite semigroup")
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1);
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    /// `S^I`: a fresh element with index `order` acting as a two-sided identity.
    pub fn adjoin_identity(&self) -> Semigroup {
        let n = self.order;
        let m = n + 1;
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                table.push(if x == n {
                    y
                } else if y == n {
                    x
                } else {
                    self.mul(x, y)
                });
            }
        }
        let mut out = Semigroup::from_table_unchecked(m, table);
        if let Some(l) = &self.labels {
            let mut l = l.clone();
            l.push("I".into());
            out.labels = Some(l);
        }
        out
    }

    /// Smallest product-closed set containing `gens`, sorted ascending.
    pub fn subsemigroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            let mut fresh = Vec::new();
            for &y in &members {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        fresh.push(p);
                    }
                }
            }
            for p in fresh {
                members.push(p);
                queue.push_back(p);
            }
        }
        members.sort_unstable();
        members
    }

    /// Restricts the table to a product-closed subset. Returns the subsemigroup
    /// and the embedding `new index -> old index`.
    pub fn restrict(&self, subset: &[usize]) -> Result<(Semigroup, Vec<usize>)> {
        let mut elems: Vec<usize> = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::Malformed("cannot restrict to the empty set".into()));
        }
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let m = elems.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &elems {
            for &y in &elems {
                let p = pos[self.mul(x, y)];
                if p == usize::MAX {
                    return Err(Error::Malformed(format!(
                        "subset is not closed: {x}*{y} leaves it"
                    )));
                }
                table.push(p);
            }
        }
        let mut sub = Semigroup::from_table_unchecked(m, table);
        if let Some(l) = &self.labels {
            sub.labels = Some(elems.iter().map(|&x| l[x].clone()).collect());
        }
        Ok((sub, elems))
    }

    /// Semigroup of total maps on `0..degree` closed under composition, with
    /// `x·y` meaning "apply x, then y". Elements are indexed in the order the
    /// closure discovers them, generators first.
    pub fn from_transformations(gens: &[Vec<usize>]) -> Result<(Semigroup, Vec<Vec<usize>>)> {
        let degree = gens.first().map(Vec::len).unwrap_or(0);
        if gens.is_empty() || gens.iter().any(|g| g.len() != degree || g.iter().any(|&p| p >= degree)) {
            return Err(Error::Malformed("generators must be maps on a common finite set".into()));
        }
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elems: Vec<Vec<usize>> = Vec::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let c = compose(&elems[i], g);
                if !index.contains_key(&c) {
                    index.insert(c.clone(), elems.len());
                    elems.push(c);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                table.push(index[&compose(x, y)]);
            }
        }
        Ok((Semigroup::from_table_unchecked(n, table), elems))
    }

    pub fn direct_product(&self, other: &Semigroup) -> Semigroup {
        let (n, m) = (self.order, other.order);
        let size = n * m;
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let (a1, a2) = (a / m, a % m);
                let (b1, b2) = (b / m, b % m);
                table.push(self.mul(a1, b1) * m + other.mul(a2, b2));
            }
        }
        Semigroup::from_table_unchecked(size, table)
    }

    /// Relabels elements: `perm[x]` is the new index of `x`.
    pub fn permuted(&self, perm: &[usize]) -> Semigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        Semigroup::from_table_unchecked(n, table)
    }

    /// The opposite semigroup, `x ∘ y = yx`.
    pub fn opposite(&self) -> Semigroup {
        let n = self.order;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Semigroup::from_table_unchecked(n, table)
    }

    /// Two-sided ideal `S¹ x S¹`, sorted.
    pub fn principal_ideal(&self, x: usize) -> Vec<usize> {
        let mut set = BTreeSet::new();
        set.insert(x);
        for a in self.elements() {
            set.insert(self.mul(a, x));
            set.insert(self.mul(x, a));
            for b in self.elements() {
                set.insert(self.mul(self.mul(a, x), b));
            }
        }
        set.into_iter().collect()
    }

    /// Class map of the least congruence containing `pairs`. Class ids are
    /// assigned in order of smallest member.
    pub fn congruence_closure(&self, pairs: &[(usize, usize)]) -> Vec<usize> {
        let n = self.order;
        let mut uf = UnionFind::new(n);
        let mut pending: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((a, b)) = pending.pop() {
            if uf.union(a, b) {
                for s in self.elements() {
                    pending.push((self.mul(a, s), self.mul(b, s)));
                    pending.push((self.mul(s, a), self.mul(s, b)));
                }
            }
        }
        uf.canonical_classes()
    }

    /// Quotient by a congruence given as a class map with dense ids.
    pub fn quotient(&self, class_of: &[usize]) -> Result<Semigroup> {
        let k = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut table = vec![usize::MAX; k * k];
        for x in self.elements() {
            for y in self.elements() {
                let cell = &mut table[class_of[x] * k + class_of[y]];
                let v = class_of[self.mul(x, y)];
                if *cell != usize::MAX && *cell != v {
                    return Err(Error::Malformed("class map is not a congruence".into()));
                }
                *cell = v;
            }
        }
        Ok(Semigroup::from_table_unchecked(k, table))
    }

    /// Rees quotient `S/I` with `I` an ideal; class map collapses `I` to one point.
    pub fn rees_quotient(&self, ideal: &[usize]) -> Result<(Semigroup, Vec<usize>)> {
        let Some(&first) = ideal.first() else {
            return Err(Error::Malformed("empty ideal".into()));
        };
        let pairs: Vec<(usize, usize)> = ideal.iter().map(|&x| (first, x)).collect();
        let class_of = self.congruence_closure(&pairs);
        let q = self.quotient(&class_of)?;
        Ok((q, class_of))
    }
}

pub(crate) fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&p| g[p]).collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn canonical_classes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|x| {
                let r = self.find(x);
                if id[r] == usize::MAX {
                    id[r] = next;
                    next += 1;
                }
                id[r]
            })
            .collect()
    }
}
