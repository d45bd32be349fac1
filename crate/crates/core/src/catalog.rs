//! Exhaustive catalog of small semigroups up to isomorphism.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{guard, Result};
use crate::semigroup::Semigroup;

/// Largest order enumerated without an explicit override.
pub const MAX_CATALOG_ORDER: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    /// Isomorphism class id: position in the catalog.
    pub id: usize,
    pub order: usize,
    /// Lexicographically least table over all relabelings.
    pub table: Vec<usize>,
    /// Id of the class of the opposite semigroup, when it differs.
    pub anti_partner: Option<usize>,
}

impl CatalogEntry {
    pub fn semigroup(&self) -> Semigroup {
        Semigroup::from_table_unchecked(self.order, self.table.clone())
    }
}

pub fn canonical_table(s: &Semigroup) -> Vec<usize> {
    let n = s.order();
    (0..n)
        .permutations(n)
        .map(|p| s.permuted(&p).table().to_vec())
        .min()
        .expect("at least one permutation")
}

/// Every associative table of order `n`, by backtracking over cells in
/// row-major order and pruning on any fully determined triple.
pub fn associative_tables(n: usize) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut table = vec![UNSET; n * n];
    let mut out = Vec::new();

    fn consistent(table: &[usize], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 0..n {
                    let bc = table[b * n + c];
                    if bc == UNSET {
                        continue;
                    }
                    let left = table[ab * n + c];
                    let right = table[a * n + bc];
                    if left != UNSET && right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(cell: usize, table: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cell == n * n {
            out.push(table.clone());
            return;
        }
        for v in 0..n {
            table[cell] = v;
            if consistent(table, n) {
                fill(cell + 1, table, n, out);
            }
        }
        table[cell] = UNSET;
    }

    if n > 0 {
        fill(0, &mut table, n, &mut out);
    }
    out
}

/// Catalog entries of exactly order `n`, with ids starting at `first_id`.
fn entries_of_order(n: usize, first_id: usize) -> Vec<CatalogEntry> {
    let mut canon: Vec<Vec<usize>> = associative_tables(n)
        .into_iter()
        .map(|t| canonical_table(&Semigroup::from_table_unchecked(n, t)))
        .collect();
    canon.sort();
    canon.dedup();
    let ids: HashMap<Vec<usize>, usize> = canon
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), first_id + i))
        .collect();
    canon
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let id = first_id + i;
            let s = Semigroup::from_table_unchecked(n, t.clone());
            let partner = ids[&canonical_table(&s.opposite())];
            CatalogEntry {
                id,
                order: n,
                table: t.clone(),
                anti_partner: (partner != id).then_some(partner),
            }
        })
        .collect()
}

/// All semigroups of order `1..=max_order` up to isomorphism.
pub fn enumerate_catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    guard("catalog order", max_order, MAX_CATALOG_ORDER)?;
    let mut all = Vec::new();
    for n in 1..=max_order {
        let next = entries_of_order(n, all.len());
        all.extend(next);
    }
    Ok(all)
}
