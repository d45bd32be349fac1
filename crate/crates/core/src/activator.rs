//! Right activators of J-classes and the per-element witness sets `F_x`.
//!
//! Everything here lives in `S^I`: the adjoined identity has index
//! `S.order()` and may itself be the activator of a null J-class.

use crate::error::{Error, Result};
use crate::green::GreenData;
use crate::semigroup::Semigroup;

#[derive(Clone, Debug)]
pub struct ActivatorData {
    /// `S^I`, with the identity at index `identity`.
    pub monoid: Semigroup,
    pub monoid_green: GreenData,
    pub identity: usize,
    /// `RACT(J)` for each J-class of `S`, indexed like `GreenData::j_classes`.
    pub per_j_class: Vec<Vec<usize>>,
    /// `F_x` for each element of `S`, as indices of `S^I`.
    pub per_element: Vec<Vec<usize>>,
}

impl ActivatorData {
    pub fn witnesses(&self, x: usize) -> &[usize] {
        &self.per_element[x]
    }

    /// Idempotent witnesses of `x` (never empty).
    pub fn idempotent_witnesses(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.per_element[x]
            .iter()
            .copied()
            .filter(|&t| self.monoid.is_idempotent(t))
    }
}

pub fn activators(s: &Semigroup, green: &GreenData) -> Result<ActivatorData> {
    let n = s.order();
    let monoid = s.adjoin_identity();
    let mg = GreenData::new(&monoid);
    let identity = n;

    let mut per_j_class = Vec::with_capacity(green.j_classes.len());
    for j in &green.j_classes {
        let jid = green.j_class_of(j[0]);
        let activating: Vec<usize> = monoid
            .elements()
            .filter(|&a| j.iter().any(|&x| green.j_class_of(monoid.mul(x, a)) == jid))
            .collect();
        // ≤_J-minimal classes among those meeting the activating set
        let minimal: Vec<usize> = activating
            .iter()
            .copied()
            .filter(|&a| {
                activating
                    .iter()
                    .all(|&b| !mg.j_leq(b, a) || mg.j_leq(a, b))
            })
            .collect();
        let class = mg.j_class_of(minimal[0]);
        if minimal.iter().any(|&a| mg.j_class_of(a) != class) {
            return Err(Error::internal("activating set has several minimal J-classes"));
        }
        let ract = mg.j_classes[class].clone();
        if !ract.iter().any(|&a| monoid.is_idempotent(a)) {
            return Err(Error::internal("right activator is not a regular J-class"));
        }
        per_j_class.push(ract);
    }

    let mut per_element = Vec::with_capacity(n);
    for x in s.elements() {
        let ract = &per_j_class[green.j_class_of(x)];
        let r_x: Vec<usize> = mg.r_class(x).to_vec();
        let witnesses: Vec<usize> = ract
            .iter()
            .copied()
            .filter(|&t| {
                if monoid.mul(x, t) != x {
                    return false;
                }
                let falls_alike = s.elements().all(|u| {
                    mg.r_lt(monoid.mul(x, u), x) == mg.r_lt(monoid.mul(t, u), t)
                });
                if !falls_alike {
                    return false;
                }
                let mut image: Vec<usize> = mg.r_class(t).iter().map(|&y| monoid.mul(x, y)).collect();
                image.sort_unstable();
                image.dedup();
                image == r_x
            })
            .collect();
        if !witnesses.iter().any(|&t| monoid.is_idempotent(t)) {
            return Err(Error::internal(format!(
                "element {x} has no idempotent activator witness"
            )));
        }
        per_element.push(witnesses);
    }

    Ok(ActivatorData {
        monoid,
        monoid_green: mg,
        identity,
        per_j_class,
        per_element,
    })
}
