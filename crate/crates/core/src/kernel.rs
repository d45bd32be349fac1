//! Group kernel, the right-sided type-II partition and the quotient PTS on
//! each R-class.
//!
//! `K_G(S)` is computed as the least subsemigroup containing the idempotents
//! and closed under weak conjugation: whenever `s ∈ K_G(S)` and `xyx = x`,
//! both `xsy` and `ysx` belong to it. Two elements are type-II equivalent
//! when each is a right translate of the other by `K_G(S)^I`.

use std::collections::VecDeque;

use crate::activator::ActivatorData;
use crate::error::{Error, Result};
use crate::green::GreenData;
use crate::semigroup::Semigroup;

/// Sorted list of the elements of `K_G(S)`.
pub fn group_kernel(s: &Semigroup) -> Vec<usize> {
    let n = s.order();
    let weak_inverse_pairs: Vec<(usize, usize)> = s
        .elements()
        .flat_map(|x| s.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| s.mul(s.mul(x, y), x) == x)
        .collect();

    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    let push = |v: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if !inside[v] {
            inside[v] = true;
            members.push(v);
            queue.push_back(v);
        }
    };
    for e in s.idempotents() {
        push(e, &mut inside, &mut members, &mut queue);
    }
    while let Some(k) = queue.pop_front() {
        let present = members.len();
        for i in 0..present {
            let m = members[i];
            push(s.mul(k, m), &mut inside, &mut members, &mut queue);
            push(s.mul(m, k), &mut inside, &mut members, &mut queue);
        }
        for &(x, y) in &weak_inverse_pairs {
            push(s.mul(s.mul(x, k), y), &mut inside, &mut members, &mut queue);
            push(s.mul(s.mul(y, k), x), &mut inside, &mut members, &mut queue);
        }
    }
    members.sort_unstable();
    members
}

#[derive(Clone, Debug)]
pub struct TypeIIData {
    pub green: GreenData,
    pub kernel: Vec<usize>,
    in_kernel: Vec<bool>,
    block_of: Vec<usize>,
    /// Block ids follow the smallest member; members ascend.
    pub blocks: Vec<Vec<usize>>,
    /// Block ids lying in each R-class, indexed like `green.r_classes`.
    pub per_r_class: Vec<Vec<usize>>,
}

impl TypeIIData {
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_of[x]]
    }

    pub fn in_kernel(&self, x: usize) -> bool {
        self.in_kernel[x]
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn r_class_of_block(&self, b: usize) -> usize {
        self.green.r_class_of(self.blocks[b][0])
    }
}

pub fn type2_partition(s: &Semigroup) -> TypeIIData {
    let n = s.order();
    let green = GreenData::new(s);
    let kernel = group_kernel(s);
    let mut in_kernel = vec![false; n];
    for &k in &kernel {
        in_kernel[k] = true;
    }
    // x·K^I for every x
    let translates: Vec<Vec<bool>> = s
        .elements()
        .map(|x| {
            let mut row = vec![false; n];
            row[x] = true;
            for &a in &kernel {
                row[s.mul(x, a)] = true;
            }
            row
        })
        .collect();

    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in s.elements() {
        if block_of[x] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let members: Vec<usize> = (x..n)
            .filter(|&y| block_of[y] == usize::MAX && translates[x][y] && translates[y][x])
            .collect();
        for &y in &members {
            block_of[y] = id;
        }
        blocks.push(members);
    }
    let mut per_r_class = vec![Vec::new(); green.r_classes.len()];
    for (b, members) in blocks.iter().enumerate() {
        per_r_class[green.r_class_of(members[0])].push(b);
    }
    TypeIIData {
        green,
        kernel,
        in_kernel,
        block_of,
        blocks,
        per_r_class,
    }
}

/// `(R/II, A)` for a chosen list of acting elements `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPts {
    pub r_class: usize,
    /// Block ids, ascending.
    pub states: Vec<usize>,
    /// Acting elements; `action[state position][actor position]`.
    pub actors: Vec<usize>,
    pub action: Vec<Vec<Option<usize>>>,
}

impl QuotientPts {
    pub fn position(&self, block: usize) -> Option<usize> {
        self.states.iter().position(|&b| b == block)
    }

    /// Image block of `block` under the actor at `actor_pos`.
    pub fn act(&self, block: usize, actor_pos: usize) -> Option<usize> {
        self.position(block).and_then(|p| self.action[p][actor_pos])
    }

    pub fn is_injective(&self) -> bool {
        (0..self.actors.len()).all(|a| {
            let mut images: Vec<usize> = self.action.iter().filter_map(|row| row[a]).collect();
            let before = images.len();
            images.sort_unstable();
            images.dedup();
            images.len() == before
        })
    }
}

/// Quotient PTS of an R-class under the full right action of `S`.
pub fn quotient_pts(s: &Semigroup, r_class: usize, t2: &TypeIIData) -> Result<QuotientPts> {
    let actors: Vec<usize> = s.elements().collect();
    quotient_pts_with(s, r_class, t2, &actors)
}

/// Quotient PTS of an R-class with only `actors` acting. Fails if the
/// type-II partition is not a congruence or the quotient is not injective;
/// both hold for every finite semigroup.
pub fn quotient_pts_with(
    s: &Semigroup,
    r_class: usize,
    t2: &TypeIIData,
    actors: &[usize],
) -> Result<QuotientPts> {
    let states = t2.per_r_class[r_class].clone();
    let mut action = Vec::with_capacity(states.len());
    for &b in &states {
        let mut row = Vec::with_capacity(actors.len());
        for &u in actors {
            let mut image = None;
            for &x in &t2.blocks[b] {
                let xu = s.mul(x, u);
                if t2.green.r_class_of(xu) != r_class {
                    continue;
                }
                let target = t2.block_of(xu);
                match image {
                    None => image = Some(target),
                    Some(prev) if prev != target => {
                        return Err(Error::internal(format!(
                            "type-II partition is not a congruence on R-class {r_class}"
                        )))
                    }
                    _ => {}
                }
            }
            row.push(image);
        }
        action.push(row);
    }
    let pts = QuotientPts {
        r_class,
        states,
        actors: actors.to_vec(),
        action,
    };
    if !pts.is_injective() {
        return Err(Error::internal(format!(
            "quotient PTS of R-class {r_class} is not injective"
        )));
    }
    Ok(pts)
}

/// Every kernel element fixes each block it acts on, and the kernel meets
/// each R-class in nothing or in exactly one block.
pub fn check_kernel_partial_identity(s: &Semigroup, t2: &TypeIIData) -> Result<bool> {
    for (r, blocks) in t2.per_r_class.iter().enumerate() {
        let in_r: Vec<usize> = t2.green.r_classes[r]
            .iter()
            .copied()
            .filter(|&x| t2.in_kernel(x))
            .collect();
        if let Some(&first) = in_r.first() {
            if in_r.as_slice() != t2.block(first) {
                return Ok(false);
            }
        }
        let pts = quotient_pts_with(s, r, t2, &t2.kernel)?;
        for (pos, &b) in blocks.iter().enumerate() {
            if pts.action[pos].iter().any(|img| img.is_some_and(|i| i != b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three clauses relating activator witnesses to type-II blocks:
/// `x·⟦t⟧ = ⟦x⟧`, `x·⟦s⟧ = ⟦xs⟧` for `s R t`, and left multiplication by
/// `x` being a surjective PTS morphism `R_t/II → R_x/II`.
pub fn check_act_ii(s: &Semigroup, t2: &TypeIIData, act: &ActivatorData) -> Result<bool> {
    let identity = act.identity;
    let mg = &act.monoid_green;
    let block_in_monoid = |u: usize| -> Vec<usize> {
        if u == identity {
            vec![identity]
        } else {
            t2.block(u).to_vec()
        }
    };
    let left_translate = |x: usize, set: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&u| act.monoid.mul(x, u)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };

    for x in s.elements() {
        for &t in act.witnesses(x) {
            if left_translate(x, &block_in_monoid(t)) != t2.block(x) {
                return Ok(false);
            }
            let r_t: Vec<usize> = mg.r_class(t).to_vec();
            for &u in &r_t {
                let xu = act.monoid.mul(x, u);
                if left_translate(x, &block_in_monoid(u)) != t2.block(xu) {
                    return Ok(false);
                }
            }
            if t == identity {
                continue;
            }
            // surjective onto R_x/II
            let mut hit: Vec<usize> = r_t.iter().map(|&u| t2.block_of(s.mul(x, u))).collect();
            hit.sort_unstable();
            hit.dedup();
            if hit != t2.per_r_class[t2.green.r_class_of(x)] {
                return Ok(false);
            }
            // commutes with the action wherever the source side is defined
            let rt = t2.green.r_class_of(t);
            let rx = t2.green.r_class_of(x);
            let source = quotient_pts(s, rt, t2)?;
            let target = quotient_pts(s, rx, t2)?;
            let zeta = |b: usize| t2.block_of(s.mul(x, t2.blocks[b][0]));
            for &b in &source.states {
                for a in s.elements() {
                    if let Some(b2) = source.act(b, a) {
                        if target.act(zeta(b), a) != Some(zeta(b2)) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Every `(R, S)` is an injective PTS.
pub fn is_in_er_via_injectivity(s: &Semigroup) -> bool {
    let green = GreenData::new(s);
    green.r_classes.iter().enumerate().all(|(r, members)| {
        s.elements().all(|u| {
            let mut images: Vec<usize> = members
                .iter()
                .map(|&x| s.mul(x, u))
                .filter(|&y| green.r_class_of(y) == r)
                .collect();
            let before = images.len();
            images.sort_unstable();
            images.dedup();
            images.len() == before
        })
    })
}

/// For each R-class of at most `max_class` elements, enumerates every
/// partition, and checks that the type-II partition is an injective
/// congruence contained in every injective congruence.
pub fn check_type2_minimal(s: &Semigroup, t2: &TypeIIData, max_class: usize) -> bool {
    for (r, members) in t2.green.r_classes.iter().enumerate() {
        if members.len() > max_class {
            continue;
        }
        let type2: Vec<usize> = members.iter().map(|&x| t2.block_of(x)).collect();
        if !is_injective_congruence(s, &t2.green, r, members, &type2) {
            return false;
        }
        let mut labels = vec![0usize; members.len()];
        loop {
            if is_injective_congruence(s, &t2.green, r, members, &labels) {
                let refines = (0..members.len()).all(|i| {
                    (0..members.len()).all(|j| type2[i] != type2[j] || labels[i] == labels[j])
                });
                if !refines {
                    return false;
                }
            }
            if !next_restricted_growth(&mut labels) {
                break;
            }
        }
    }
    true
}

/// Next restricted growth string, i.e. the next set partition.
fn next_restricted_growth(labels: &mut [usize]) -> bool {
    for i in (1..labels.len()).rev() {
        let max_prefix = labels[..i].iter().copied().max().unwrap_or(0);
        if labels[i] <= max_prefix {
            labels[i] += 1;
            for l in &mut labels[i + 1..] {
                *l = 0;
            }
            return true;
        }
    }
    false
}

fn is_injective_congruence(
    s: &Semigroup,
    green: &GreenData,
    r: usize,
    members: &[usize],
    labels: &[usize],
) -> bool {
    let pos = |y: usize| members.iter().position(|&m| m == y);
    let classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    for u in s.elements() {
        // class -> image class under u, if defined
        let mut image: Vec<Option<usize>> = vec![None; classes];
        for (i, &x) in members.iter().enumerate() {
            let xu = s.mul(x, u);
            if green.r_class_of(xu) != r {
                continue;
            }
            let target = labels[pos(xu).expect("same R-class")];
            match image[labels[i]] {
                None => image[labels[i]] = Some(target),
                Some(t) if t != target => return false,
                _ => {}
            }
        }
        let mut defined: Vec<usize> = image.into_iter().flatten().collect();
        let before = defined.len();
        defined.sort_unstable();
        defined.dedup();
        if defined.len() != before {
            return false;
        }
    }
    true
}

/// The image of `K_G(S)` under a surjective morphism `map` onto `t` is `K_G(t)`.
pub fn check_kernel_image(s: &Semigroup, t: &Semigroup, map: &[usize]) -> bool {
    let mut image: Vec<usize> = group_kernel(s).into_iter().map(|x| map[x]).collect();
    image.sort_unstable();
    image.dedup();
    let onto = {
        let mut all: Vec<usize> = map.to_vec();
        all.sort_unstable();
        all.dedup();
        all.len() == t.order()
    };
    onto && image == group_kernel(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activator::activators;
    use crate::named::{self, *};

    #[test]
    fn kernels() {
        let band = named::left_zero(3);
        assert_eq!(group_kernel(&band), vec![0, 1, 2]);
        assert_eq!(group_kernel(&named::cyclic_group(2)), vec![0]);
        assert_eq!(group_kernel(&named::t2()), vec![T2_ID, T2_C1, T2_C2]);
    }

    #[test]
    fn type2_blocks() {
        let c3 = type2_partition(&named::cyclic_group(3));
        assert_eq!(c3.blocks, vec![vec![0], vec![1], vec![2]]);
        let t2 = type2_partition(&named::t2());
        assert_eq!(t2.blocks, vec![vec![T2_ID], vec![T2_SIGMA], vec![T2_C1, T2_C2]]);
        let rz = named::right_zero(3);
        let d = type2_partition(&rz);
        assert_eq!(d.blocks, d.green.r_classes);
    }

    #[test]
    fn quotient_of_group_is_regular_action() {
        let c3 = named::cyclic_group(3);
        let t = type2_partition(&c3);
        let pts = quotient_pts(&c3, 0, &t).unwrap();
        assert_eq!(pts.states, vec![0, 1, 2]);
        for b in 0..3 {
            for g in 0..3 {
                assert_eq!(pts.act(b, g), Some((b + g) % 3));
            }
        }
    }

    #[test]
    fn quotient_of_t2_constants() {
        let s = named::t2();
        let t = type2_partition(&s);
        let r = t.green.r_class_of(T2_C1);
        let pts = quotient_pts(&s, r, &t).unwrap();
        let b = t.block_of(T2_C1);
        assert_eq!(pts.states, vec![b]);
        for u in s.elements() {
            assert_eq!(pts.act(b, u), Some(b));
        }
    }

    #[test]
    fn quotient_of_null_class_is_undefined() {
        let s = named::null(2);
        let t = type2_partition(&s);
        let r = t.green.r_class_of(0);
        let pts = quotient_pts(&s, r, &t).unwrap();
        assert_eq!(pts.states.len(), 1);
        assert!(pts.action[0].iter().all(Option::is_none));
    }

    #[test]
    fn kernel_lemmas_on_named() {
        for s in [named::t2(), named::cyclic_group(3), named::b2(), named::null(3), named::klein_four()] {
            let t = type2_partition(&s);
            assert!(check_kernel_partial_identity(&s, &t).unwrap());
            let a = activators(&s, &t.green).unwrap();
            assert!(check_act_ii(&s, &t, &a).unwrap());
            assert!(check_type2_minimal(&s, &t, 6));
        }
    }

    #[test]
    fn injectivity_characterization() {
        assert!(is_in_er_via_injectivity(&named::b2()));
        assert!(!is_in_er_via_injectivity(&named::t2()));
        assert!(is_in_er_via_injectivity(&named::cyclic_group(4)));
        assert!(is_in_er_via_injectivity(&named::klein_four()));
    }

    #[test]
    fn set_partitions_of_four() {
        let mut labels = vec![0; 4];
        let mut count = 1;
        while next_restricted_growth(&mut labels) {
            count += 1;
        }
        // Bell(4)
        assert_eq!(count, 15);
    }

    #[test]
    fn kernel_survives_rees_quotient() {
        let s = named::t2();
        let (q, map) = s.rees_quotient(&s.principal_ideal(T2_C1)).unwrap();
        assert!(check_kernel_image(&s, &q, &map));
    }
}
