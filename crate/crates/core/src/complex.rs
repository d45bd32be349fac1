//! S-complexes: subsemigroups of the power semigroup that contain every
//! singleton and are closed under non-empty subsets.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{guard, Error, Result};
use crate::limits::Limits;
use crate::semigroup::Semigroup;
use crate::subset::{setwise_product, Subset, MAX_AMBIENT};

#[derive(Clone, Debug)]
pub struct Complex {
    ambient: Arc<Semigroup>,
    members: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.members == other.members
    }
}

impl Eq for Complex {}

fn check_ambient(s: &Semigroup, limits: &Limits) -> Result<()> {
    guard("semigroup order", s.order(), limits.max_order.min(MAX_AMBIENT))
}

/// Smallest complex containing `gens`: the downward closure of the subsemigroup
/// they generate together with the singletons, saturated until stable.
pub fn complex_closure(
    s: &Arc<Semigroup>,
    gens: impl IntoIterator<Item = Subset>,
    limits: &Limits,
) -> Result<Complex> {
    check_ambient(s, limits)?;
    let full = Subset::full(s.order());
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut list: Vec<Subset> = Vec::new();
    let mut queue: VecDeque<Subset> = VecDeque::new();

    let add = |x: Subset, seen: &mut HashSet<Subset>, list: &mut Vec<Subset>, queue: &mut VecDeque<Subset>| -> Result<()> {
        if seen.insert(x) {
            list.push(x);
            queue.push_back(x);
            guard("complex size", list.len(), limits.max_complex_size)?;
        }
        Ok(())
    };

    for x in s.elements() {
        add(Subset::singleton(x), &mut seen, &mut list, &mut queue)?;
    }
    for g in gens {
        if !g.is_subset_of(full) {
            return Err(Error::AmbientMismatch);
        }
        add(g, &mut seen, &mut list, &mut queue)?;
    }

    while let Some(x) = queue.pop_front() {
        for sub in x.nonempty_subsets() {
            add(sub, &mut seen, &mut list, &mut queue)?;
        }
        let present = list.len();
        for i in 0..present {
            let y = list[i];
            add(setwise_product(s, x, y), &mut seen, &mut list, &mut queue)?;
            add(setwise_product(s, y, x), &mut seen, &mut list, &mut queue)?;
        }
    }
    Ok(Complex::from_sorted(Arc::clone(s), list))
}

impl Complex {
    fn from_sorted(ambient: Arc<Semigroup>, mut members: Vec<Subset>) -> Self {
        members.sort_unstable();
        members.dedup();
        let index = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Complex {
            ambient,
            members,
            index,
        }
    }

    /// `sing(S)`, the bottom of the lattice.
    pub fn singletons(s: &Arc<Semigroup>, limits: &Limits) -> Result<Complex> {
        complex_closure(s, std::iter::empty(), limits)
    }

    /// `P(S)`, the top of the lattice.
    pub fn full(s: &Arc<Semigroup>, limits: &Limits) -> Result<Complex> {
        check_ambient(s, limits)?;
        complex_closure(s, [Subset::full(s.order())], limits)
    }

    /// Downward closure of `tops` plus singletons, certified product-closed.
    pub fn from_downward_closure(
        s: &Arc<Semigroup>,
        tops: impl IntoIterator<Item = Subset>,
        limits: &Limits,
    ) -> Result<Complex> {
        check_ambient(s, limits)?;
        let full = Subset::full(s.order());
        let mut set: HashSet<Subset> = s.elements().map(Subset::singleton).collect();
        for t in tops {
            if !t.is_subset_of(full) {
                return Err(Error::AmbientMismatch);
            }
            set.extend(t.nonempty_subsets());
            guard("complex size", set.len(), limits.max_complex_size)?;
        }
        let k = Complex::from_sorted(Arc::clone(s), set.into_iter().collect());
        if !k.is_product_closed() {
            return Err(Error::internal("downward closure is not product-closed"));
        }
        Ok(k)
    }

    pub fn ambient(&self) -> &Arc<Semigroup> {
        &self.ambient
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.index.contains_key(&x)
    }

    pub fn index_of(&self, x: Subset) -> Option<usize> {
        self.index.get(&x).copied()
    }

    pub fn is_singletons(&self) -> bool {
        self.members.iter().all(|x| x.is_singleton())
    }

    fn same_ambient(&self, other: &Complex) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) || *self.ambient == *other.ambient
    }

    pub fn join(&self, other: &Complex, limits: &Limits) -> Result<Complex> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        complex_closure(
            &self.ambient,
            self.members.iter().chain(&other.members).copied(),
            limits,
        )
    }

    /// Meet is plain intersection.
    pub fn meet(&self, other: &Complex) -> Result<Complex> {
        if !self.same_ambient(other) {
            return Err(Error::AmbientMismatch);
        }
        let members = self
            .members
            .iter()
            .copied()
            .filter(|x| other.contains(*x))
            .collect();
        Ok(Complex::from_sorted(Arc::clone(&self.ambient), members))
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.members.iter().all(|x| other.contains(*x))
    }

    pub fn contains_singletons(&self) -> bool {
        self.ambient
            .elements()
            .all(|x| self.contains(Subset::singleton(x)))
    }

    pub fn is_downward_closed(&self) -> bool {
        self.members
            .iter()
            .all(|x| x.nonempty_subsets().all(|y| self.contains(y)))
    }

    pub fn is_product_closed(&self) -> bool {
        self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| self.contains(setwise_product(&self.ambient, x, y)))
        })
    }

    /// All three complex invariants.
    pub fn is_valid(&self) -> bool {
        self.contains_singletons() && self.is_downward_closed() && self.is_product_closed()
    }

    /// ⊆-maximal members, in canonical order.
    pub fn maximal_members(&self) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&x| {
                !self
                    .members
                    .iter()
                    .any(|&y| y != x && x.is_subset_of(y))
            })
            .collect()
    }

    /// The complex as a Cayley-table semigroup; element `i` is `members()[i]`.
    pub fn as_abstract_semigroup(&self) -> Result<AbstractComplex> {
        let m = self.members.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &self.members {
            for &y in &self.members {
                let p = setwise_product(&self.ambient, x, y);
                let i = self
                    .index_of(p)
                    .ok_or_else(|| Error::internal("complex is not product-closed"))?;
                table.push(i);
            }
        }
        Ok(AbstractComplex {
            semigroup: Semigroup::from_table_unchecked(m, table),
            members: self.members.clone(),
            index: self.index.clone(),
        })
    }
}

/// A complex realized as an abstract semigroup with index maps both ways.
#[derive(Clone, Debug)]
pub struct AbstractComplex {
    pub semigroup: Semigroup,
    pub members: Vec<Subset>,
    pub index: HashMap<Subset, usize>,
}

impl AbstractComplex {
    pub fn subset(&self, i: usize) -> Subset {
        self.members[i]
    }

    pub fn element(&self, x: Subset) -> Option<usize> {
        self.index.get(&x).copied()
    }

    /// Union of the subsets named by `elems`.
    pub fn union_of(&self, elems: &[usize]) -> Subset {
        elems
            .iter()
            .map(|&i| self.members[i])
            .reduce(Subset::union)
            .expect("union of a non-empty family")
    }
}
