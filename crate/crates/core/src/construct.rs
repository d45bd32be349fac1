//! The ER construct: the least S-complex that contains the union of the
//! type-II class of each of its own idempotents.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{complex_closure, Complex};
use crate::error::Result;
use crate::kernel::type2_partition;
use crate::limits::Limits;
use crate::semigroup::Semigroup;
use crate::subset::Subset;

#[derive(Clone, Debug)]
pub struct ConstructResult {
    pub complex: Complex,
    /// Rounds that added at least one union; equals `trace.len()`.
    pub iterations: usize,
    /// Unions added in each round, in canonical order.
    pub trace: Vec<Vec<Subset>>,
}

#[derive(Serialize)]
struct TraceRound<'a> {
    round: usize,
    added: &'a [Subset],
}

impl ConstructResult {
    pub fn trace_json(&self) -> serde_json::Value {
        let rounds: Vec<TraceRound> = self
            .trace
            .iter()
            .enumerate()
            .map(|(i, added)| TraceRound { round: i + 1, added })
            .collect();
        serde_json::to_value(rounds).expect("trace serializes")
    }
}

/// Unions of the type-II classes of the idempotents of `k` that `k` lacks.
pub fn missing_unions(k: &Complex) -> Result<Vec<Subset>> {
    let a = k.as_abstract_semigroup()?;
    let t2 = type2_partition(&a.semigroup);
    let mut missing: Vec<Subset> = a
        .semigroup
        .idempotents()
        .into_iter()
        .map(|e| a.union_of(t2.block(e)))
        .filter(|u| !k.contains(*u))
        .collect();
    missing.sort_unstable();
    missing.dedup();
    Ok(missing)
}

pub fn construct_er(s: &Arc<Semigroup>, limits: &Limits) -> Result<ConstructResult> {
    let start = Complex::singletons(s, limits)?;
    construct_er_from(start, limits)
}

/// Runs the fixpoint from an arbitrary starting complex. Starting anywhere
/// below the construct yields the construct.
pub fn construct_er_from(start: Complex, limits: &Limits) -> Result<ConstructResult> {
    let mut k = start;
    let mut trace = Vec::new();
    loop {
        let missing = missing_unions(&k)?;
        if missing.is_empty() {
            break;
        }
        let next = complex_closure(
            k.ambient(),
            k.members().iter().chain(&missing).copied(),
            limits,
        )?;
        trace.push(missing);
        k = next;
    }
    Ok(ConstructResult {
        complex: k,
        iterations: trace.len(),
        trace,
    })
}

/// `S ∈ ER` exactly when its construct is `sing(S)`.
pub fn er_membership_via_points(s: &Arc<Semigroup>, limits: &Limits) -> Result<bool> {
    Ok(construct_er(s, limits)?.complex.is_singletons())
}

/// ⊆-maximal pointlike sets; their downward closure is the whole complex.
pub fn max_pointlikes(result: &ConstructResult) -> Vec<Subset> {
    result.complex.maximal_members()
}

/// Removing any non-singleton member (with everything above it) and rerunning
/// the fixpoint restores the same complex.
pub fn check_minimality(result: &ConstructResult, limits: &Limits) -> Result<bool> {
    let k = &result.complex;
    for &x in k.members() {
        if x.is_singleton() {
            continue;
        }
        let kept: Vec<Subset> = k
            .members()
            .iter()
            .copied()
            .filter(|y| !x.is_subset_of(*y))
            .collect();
        let start = complex_closure(k.ambient(), kept, limits)?;
        if !start.is_subcomplex_of(k) {
            return Ok(false);
        }
        let rerun = construct_er_from(start, limits)?;
        if rerun.complex != *k {
            return Ok(false);
        }
    }
    Ok(true)
}
