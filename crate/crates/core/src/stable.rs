//! Stabilization over the construct `C`: the blow-up map β, the map ψ, the
//! closure `ψ^ω`, the fixed points 𝔽 and the stable blocks 𝔹.
//!
//! All maps are tables over the element indices of the abstract semigroup of
//! `C`. Activator witnesses live in `C^I`; when the only witness of `X` is the
//! adjoined identity, `E_X` is that identity and ψ fixes `X`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::activator::{activators, ActivatorData};
use crate::complex::AbstractComplex;
use crate::construct::ConstructResult;
use crate::error::{guard, Error, Result};
use crate::kernel::{quotient_pts, type2_partition, QuotientPts, TypeIIData};
use crate::limits::Limits;
use crate::semigroup::{compose, Semigroup};
use crate::subset::Subset;

/// Rule for picking the idempotent `E_X` among the witnesses of `X`.
/// Idempotent `X` always picks itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessChoice {
    /// Canonically smallest idempotent witness.
    #[default]
    Smallest,
    /// Canonically largest idempotent witness.
    Largest,
}

#[derive(Clone, Debug)]
pub struct StableData {
    pub ambient: Arc<Semigroup>,
    pub complex: AbstractComplex,
    pub t2: TypeIIData,
    pub activators: ActivatorData,
    /// `E_X` for each element, as an index of `C^I`.
    pub e_choice: Vec<usize>,
    pub beta: Vec<usize>,
    pub psi: Vec<usize>,
    /// `ψ^ω`, the closure map `X ↦ X̄`.
    pub closure: Vec<usize>,
    /// 𝔽, ascending.
    pub fixed: Vec<usize>,
    /// 𝔹 as block ids of `C`, ascending.
    pub blocks: Vec<usize>,
    /// R-classes of `C` meeting 𝔽, ascending.
    pub scr_r: Vec<usize>,
    is_fixed: Vec<bool>,
    in_blocks: Vec<bool>,
}

/// Idempotent power of a self-map, found by iterating until the sequence of
/// powers repeats.
pub fn map_omega(f: &[usize], limits: &Limits) -> Result<Vec<usize>> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut powers: Vec<Vec<usize>> = Vec::new();
    let mut current = f.to_vec();
    loop {
        if let Some(&first) = seen.get(&current) {
            let period = powers.len() - first;
            // smallest exponent ≥ index that is a multiple of the period
            let index = first + 1;
            let k = index.div_ceil(period) * period;
            return Ok(powers[k - 1].clone());
        }
        seen.insert(current.clone(), powers.len());
        powers.push(current.clone());
        guard("powers of a self-map", powers.len(), limits.max_transformations)?;
        current = compose(&current, f);
    }
}

impl StableData {
    pub fn order(&self) -> usize {
        self.complex.semigroup.order()
    }

    fn c(&self) -> &Semigroup {
        &self.complex.semigroup
    }

    pub fn identity(&self) -> usize {
        self.activators.identity
    }

    pub fn subset(&self, x: usize) -> Subset {
        self.complex.subset(x)
    }

    pub fn is_fixed(&self, x: usize) -> bool {
        self.is_fixed[x]
    }

    pub fn is_stable_block(&self, b: usize) -> bool {
        self.in_blocks[b]
    }

    /// `X · Y` in `C`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.c().mul(x, y)
    }

    /// `X · {s}` for an ambient element `s`.
    pub fn mul_letter(&self, x: usize, s: usize) -> usize {
        self.mul(x, self.letter(s))
    }

    /// `{s}` as an element of `C`.
    pub fn letter(&self, s: usize) -> usize {
        self.complex
            .element(Subset::singleton(s))
            .expect("complexes contain all singletons")
    }

    pub fn closure_of(&self, x: usize) -> usize {
        self.closure[x]
    }

    pub fn r_class_of(&self, x: usize) -> usize {
        self.t2.green.r_class_of(x)
    }

    pub fn r_related(&self, x: usize, y: usize) -> bool {
        self.t2.green.r_related(x, y)
    }

    pub fn r_lt(&self, x: usize, y: usize) -> bool {
        self.t2.green.r_lt(x, y)
    }

    pub fn r_leq(&self, x: usize, y: usize) -> bool {
        self.t2.green.r_leq(x, y)
    }

    /// `(E_X β)^ω`, with the adjoined identity mapping to itself.
    fn psi_of_witness(&self, e: usize) -> usize {
        if e == self.identity() {
            e
        } else {
            self.c().omega_power(self.beta[e])
        }
    }
}

pub fn build_stable(
    s: &Arc<Semigroup>,
    cr: &ConstructResult,
    choice: WitnessChoice,
    limits: &Limits,
) -> Result<StableData> {
    let complex = cr.complex.as_abstract_semigroup()?;
    let c = &complex.semigroup;
    let n = c.order();
    let t2 = type2_partition(c);
    let act = activators(c, &t2.green)?;
    let identity = act.identity;

    let mut beta = Vec::with_capacity(n);
    for x in c.elements() {
        let u = complex.union_of(t2.block(x));
        let bx = complex
            .element(u)
            .ok_or_else(|| Error::internal("construct is not closed under blowing up type-II classes"))?;
        beta.push(bx);
    }

    let mut e_choice = Vec::with_capacity(n);
    for x in c.elements() {
        let candidates: Vec<usize> = act.idempotent_witnesses(x).collect();
        let e = if c.is_idempotent(x) {
            if !candidates.contains(&x) {
                return Err(Error::internal("idempotent is not its own activator witness"));
            }
            x
        } else {
            // the identity of C^I is the largest index, so both rules only
            // reach it when it is the sole candidate
            let pick = match choice {
                WitnessChoice::Smallest => candidates.iter().min(),
                WitnessChoice::Largest => candidates
                    .iter()
                    .filter(|&&e| e != identity)
                    .max()
                    .or(candidates.first()),
            };
            *pick.ok_or_else(|| Error::internal("no idempotent witness"))?
        };
        e_choice.push(e);
    }

    let mut sd = StableData {
        ambient: Arc::clone(s),
        complex: complex.clone(),
        t2,
        activators: act,
        e_choice,
        beta,
        psi: Vec::new(),
        closure: Vec::new(),
        fixed: Vec::new(),
        blocks: Vec::new(),
        scr_r: Vec::new(),
        is_fixed: Vec::new(),
        in_blocks: Vec::new(),
    };

    sd.psi = (0..n)
        .map(|x| {
            let e = sd.e_choice[x];
            if e == identity {
                x
            } else {
                sd.mul(x, sd.psi_of_witness(e))
            }
        })
        .collect();
    sd.closure = map_omega(&sd.psi, limits)?;
    sd.is_fixed = (0..n).map(|x| sd.psi[x] == x).collect();
    sd.fixed = (0..n).filter(|&x| sd.is_fixed[x]).collect();

    sd.in_blocks = vec![false; sd.t2.blocks.len()];
    for &x in &sd.fixed {
        sd.in_blocks[sd.t2.block_of(x)] = true;
    }
    sd.blocks = (0..sd.t2.blocks.len()).filter(|&b| sd.in_blocks[b]).collect();
    let mut scr_r: Vec<usize> = sd.fixed.iter().map(|&x| sd.r_class_of(x)).collect();
    scr_r.sort_unstable();
    scr_r.dedup();
    sd.scr_r = scr_r;
    Ok(sd)
}

/// `X ⊆ Xβ`, `Xβ ≤_R X`, and `Xβ = X · Aβ` for every witness `A` of `X`.
pub fn check_blowup(sd: &StableData) -> bool {
    (0..sd.order()).all(|x| {
        let bx = sd.beta[x];
        sd.subset(x).is_subset_of(sd.subset(bx))
            && sd.r_leq(bx, x)
            && sd.activators.witnesses(x).iter().all(|&a| {
                if a == sd.identity() {
                    bx == x
                } else {
                    sd.mul(x, sd.beta[a]) == bx
                }
            })
    })
}

/// For each idempotent `E`: `Eβ` is aperiodic, and `(Eβ)² H Eβ` forces
/// `(Eβ)² = Eβ`.
pub fn check_idpt_blowup(sd: &StableData) -> bool {
    let c = sd.c();
    c.idempotents().into_iter().all(|e| {
        let b = sd.beta[e];
        let w = c.omega_power(b);
        let b2 = c.mul(b, b);
        c.mul(w, b) == w && (!sd.t2.green.h_related(b2, b) || b2 == b)
    })
}

/// Outcome of each clause of the ψ lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PsiFacts {
    pub falls_in_r_order: bool,
    pub factors_through_beta: bool,
    pub aperiodic: bool,
    pub r_related_means_type2: bool,
    pub same_fixed_points_as_beta: bool,
}

impl PsiFacts {
    pub fn all(&self) -> bool {
        self.falls_in_r_order
            && self.factors_through_beta
            && self.aperiodic
            && self.r_related_means_type2
            && self.same_fixed_points_as_beta
    }
}

pub fn psi_facts(sd: &StableData) -> PsiFacts {
    let n = sd.order();
    let psi = &sd.psi;
    PsiFacts {
        falls_in_r_order: (0..n).all(|x| sd.r_leq(psi[x], x)),
        factors_through_beta: (0..n).all(|x| {
            let e = sd.e_choice[x];
            let via_beta = if e == sd.identity() {
                sd.beta[x]
            } else {
                sd.mul(sd.beta[x], sd.psi_of_witness(e))
            };
            psi[x] == via_beta && sd.subset(x).is_subset_of(sd.subset(psi[x]))
        }),
        aperiodic: compose(&sd.closure, psi) == sd.closure,
        r_related_means_type2: (0..n)
            .all(|x| !sd.r_related(x, psi[x]) || sd.t2.equivalent(x, psi[x])),
        same_fixed_points_as_beta: (0..n).all(|x| (sd.beta[x] == x) == (psi[x] == x)),
    }
}

pub fn check_psifacts(sd: &StableData) -> bool {
    psi_facts(sd).all()
}

/// For `X ∈ 𝔽` and `Y` with `(XY)ψ R XY R X`: `⟦XY⟧ = ⟦X⟧ ∗ Y ∈ 𝔹`.
pub fn check_stability(sd: &StableData) -> Result<bool> {
    let mut pts_cache: HashMap<usize, QuotientPts> = HashMap::new();
    for &x in &sd.fixed {
        let r = sd.r_class_of(x);
        if let std::collections::hash_map::Entry::Vacant(e) = pts_cache.entry(r) {
            e.insert(quotient_pts(sd.c(), r, &sd.t2)?);
        }
        let pts = &pts_cache[&r];
        for y in 0..sd.order() {
            let xy = sd.mul(x, y);
            if !(sd.r_related(sd.psi[xy], xy) && sd.r_related(xy, x)) {
                continue;
            }
            let b = sd.t2.block_of(xy);
            if pts.act(sd.t2.block_of(x), y) != Some(b) || !sd.in_blocks[b] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// 𝔽 is the image of the closure, the closure is idempotent, and the two
/// descriptions of 𝔹 agree.
pub fn check_fixed_and_blocks(sd: &StableData) -> bool {
    let n = sd.order();
    let mut image: Vec<usize> = sd.closure.clone();
    image.sort_unstable();
    image.dedup();
    let closure_ok = image == sd.fixed && (0..n).all(|x| sd.closure[sd.closure[x]] == sd.closure[x]);
    let blocks_by_union: Vec<usize> = (0..sd.t2.blocks.len())
        .filter(|&b| {
            let members = &sd.t2.blocks[b];
            sd.complex
                .element(sd.complex.union_of(members))
                .is_some_and(|u| members.contains(&u))
        })
        .collect();
    closure_ok && blocks_by_union == sd.blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_er;
    use crate::named::{self, *};

    fn stable(s: Semigroup) -> StableData {
        let l = Limits::default();
        let s = Arc::new(s);
        let cr = construct_er(&s, &l).unwrap();
        build_stable(&s, &cr, WitnessChoice::Smallest, &l).unwrap()
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn all_checks(sd: &StableData) {
        assert!(check_blowup(sd));
        assert!(check_idpt_blowup(sd));
        assert_eq!(
            psi_facts(sd),
            PsiFacts {
                falls_in_r_order: true,
                factors_through_beta: true,
                aperiodic: true,
                r_related_means_type2: true,
                same_fixed_points_as_beta: true,
            }
        );
        assert!(check_stability(sd).unwrap());
        assert!(check_fixed_and_blocks(sd));
    }

    #[test]
    fn group_is_all_fixed() {
        let sd = stable(named::cyclic_group(3));
        assert_eq!(sd.beta, vec![0, 1, 2]);
        assert_eq!(sd.psi, vec![0, 1, 2]);
        assert_eq!(sd.fixed, vec![0, 1, 2]);
        assert_eq!(sd.blocks.len(), 3);
        all_checks(&sd);
    }

    #[test]
    fn t2_constants_blow_up() {
        let sd = stable(named::t2());
        let c1 = sd.complex.element(set(&[T2_C1])).unwrap();
        let c12 = sd.complex.element(set(&[T2_C1, T2_C2])).unwrap();
        let sigma = sd.complex.element(set(&[T2_SIGMA])).unwrap();
        assert_eq!(sd.beta[c1], c12);
        assert_eq!(sd.e_choice[c1], c1);
        assert_eq!(sd.psi[c1], c12);
        assert_eq!(sd.closure_of(c1), c12);
        assert!(sd.is_fixed(c12));
        assert!(!sd.is_fixed(c1));
        assert_eq!(sd.beta[sigma], sigma);
        assert!(sd.is_fixed(sigma));
        all_checks(&sd);
    }

    #[test]
    fn brandt_checks() {
        let sd = stable(named::b2());
        assert_eq!(sd.fixed.len(), 5);
        all_checks(&sd);
    }

    #[test]
    fn null_semigroup_uses_identity_witness() {
        let sd = stable(named::null(3));
        assert_eq!(sd.e_choice[0], sd.identity());
        assert!(sd.is_fixed(0));
        all_checks(&sd);
    }

    #[test]
    fn omega_of_maps() {
        let l = Limits::default();
        // 0 -> 1 -> 2 -> 0 cycle plus tail 3 -> 0
        let f = vec![1, 2, 0, 0];
        let w = map_omega(&f, &l).unwrap();
        assert_eq!(compose(&w, &w), w);
        assert_eq!(w, vec![0, 1, 2, 2]);
        let g = vec![1, 1, 0];
        let w = map_omega(&g, &l).unwrap();
        assert_eq!(compose(&w, &w), w);
    }
}
