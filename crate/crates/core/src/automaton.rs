//! The flow automaton over `C = C_ER(S)`: local permutation groups on the
//! type-II quotients of the R-classes in scrR, the global group 𝔾, states
//! `(X, d, g)`, the flow, the cover complex, and the witness relational
//! morphism into the transition semigroup.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{guard, Error, Result};
use crate::kernel::{quotient_pts_with, QuotientPts};
use crate::limits::Limits;
use crate::semigroup::Semigroup;
use crate::stable::StableData;
use crate::subset::{setwise_product, Subset};
use crate::transform::{Map, TransformationSemigroup};

pub const INIT: usize = 0;

/// Permutation group on the blocks of one R-class of `C` in scrR.
#[derive(Clone, Debug)]
pub struct LocalGroup {
    pub r_class: usize,
    /// Block ids of `C`, ascending; permutations act on positions.
    pub states: Vec<usize>,
    /// Partial action of the letters `{s}`.
    pub pts: QuotientPts,
    /// `g_{(s,R)}` for each letter `s`, as a map on positions.
    pub gens: Vec<Map>,
    /// All permutations generated by `gens`.
    pub group: TransformationSemigroup,
}

impl LocalGroup {
    pub fn position(&self, block: usize) -> Option<usize> {
        self.states.binary_search(&block).ok()
    }
}

/// Extends a partial injection on `0..n` to a permutation: undefined points
/// and unhit points, each ascending, are matched in order.
pub fn complete_partial_injection(partial: &[Option<usize>]) -> Result<Map> {
    let n = partial.len();
    let mut hit = vec![false; n];
    for &image in partial.iter().flatten() {
        if image >= n || hit[image] {
            return Err(Error::internal("partial action is not injective"));
        }
        hit[image] = true;
    }
    let mut unhit = (0..n).filter(|&p| !hit[p]);
    let perm: Map = partial
        .iter()
        .map(|image| match image {
            Some(i) => *i as u32,
            None => unhit.next().expect("as many unhit as undefined points") as u32,
        })
        .collect();
    Ok(perm)
}

pub fn build_local_groups(sd: &StableData, limits: &Limits) -> Result<Vec<LocalGroup>> {
    let c = &sd.complex.semigroup;
    let letters: Vec<usize> = sd.ambient.elements().map(|s| sd.letter(s)).collect();
    let group_limits = Limits {
        max_transformations: limits.max_group_size,
        ..*limits
    };
    let mut locals = Vec::with_capacity(sd.scr_r.len());
    for &r in &sd.scr_r {
        let pts = quotient_pts_with(c, r, &sd.t2, &letters)?;
        let n = pts.states.len();
        let mut gens = Vec::with_capacity(letters.len());
        for a in 0..letters.len() {
            let partial: Vec<Option<usize>> = (0..n)
                .map(|p| pts.action[p][a].map(|b| pts.position(b).expect("image block lies in R")))
                .collect();
            gens.push(complete_partial_injection(&partial)?);
        }
        let group = TransformationSemigroup::generate(n, &gens, &group_limits)?;
        locals.push(LocalGroup {
            r_class: r,
            states: pts.states.clone(),
            pts,
            gens,
            group,
        });
    }
    Ok(locals)
}

/// 𝔾: tuples of local permutations generated by the letter tuples `g_s`.
/// Elements are indexed in generation order.
#[derive(Clone, Debug)]
pub struct GlobalGroup {
    pub locals: Vec<LocalGroup>,
    /// Coordinate of each R-class of `C` in scrR.
    coordinate: HashMap<usize, usize>,
    /// Each element as local element indices, one per coordinate.
    elements: Vec<Box<[usize]>>,
    index: HashMap<Box<[usize]>, usize>,
    /// `g_s` for each letter.
    pub gens: Vec<usize>,
    right_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    pub identity: usize,
}

impl GlobalGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, g: usize) -> &[usize] {
        &self.elements[g]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g · g_s`.
    pub fn mul_gen(&self, g: usize, s: usize) -> usize {
        self.right_gen[g][s]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let tuple: Box<[usize]> = self
            .locals
            .iter()
            .zip(self.elements[a].iter().zip(self.elements[b].iter()))
            .map(|(l, (&x, &y))| l.group.mul(x, y))
            .collect();
        self.index[&tuple]
    }

    /// Permutation of block positions that `g` induces on the R-class at
    /// `coordinate`.
    pub fn local_perm(&self, g: usize, coordinate: usize) -> &[u32] {
        self.locals[coordinate]
            .group
            .element(self.elements[g][coordinate])
    }

    /// `⟦X⟧ ⊳ g` for a block of an R-class in scrR.
    pub fn act(&self, block: usize, r_class: usize, g: usize) -> usize {
        let k = self.coordinate[&r_class];
        let local = &self.locals[k];
        let p = local.position(block).expect("block lies in its R-class");
        local.states[self.local_perm(g, k)[p] as usize]
    }
}

fn invert(perm: &[u32]) -> Map {
    let mut inv = vec![0u32; perm.len()];
    for (p, &q) in perm.iter().enumerate() {
        inv[q as usize] = p as u32;
    }
    inv.into_boxed_slice()
}

/// Closes the letter tuples under multiplication and certifies the result
/// is a group: it contains the identity tuple and every inverse.
pub fn build_global_group(
    locals: Vec<LocalGroup>,
    letters: usize,
    limits: &Limits,
) -> Result<GlobalGroup> {
    if letters == 0 {
        return Err(Error::Malformed("empty alphabet".into()));
    }
    let coordinate: HashMap<usize, usize> =
        locals.iter().enumerate().map(|(k, l)| (l.r_class, k)).collect();
    let mut elements: Vec<Box<[usize]>> = Vec::new();
    let mut index: HashMap<Box<[usize]>, usize> = HashMap::new();
    let mut gens = Vec::with_capacity(letters);
    for s in 0..letters {
        let tuple: Box<[usize]> = locals.iter().map(|l| l.group.generator(s)).collect();
        let i = *index.entry(tuple.clone()).or_insert_with(|| {
            elements.push(tuple);
            elements.len() - 1
        });
        gens.push(i);
    }
    let mut right_gen: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(letters);
        for s in 0..letters {
            let tuple: Box<[usize]> = locals
                .iter()
                .zip(elements[i].iter())
                .map(|(l, &x)| l.group.right_mul_generator(x, s))
                .collect();
            let next = elements.len();
            let j = *index.entry(tuple.clone()).or_insert(next);
            if j == next {
                elements.push(tuple);
                guard("global group size", elements.len(), limits.max_group_size)?;
            }
            row.push(j);
        }
        right_gen.push(row);
        i += 1;
    }

    let identity_tuple: Box<[usize]> = locals
        .iter()
        .map(|l| {
            let id: Map = (0..l.states.len() as u32).collect();
            l.group
                .index_of(&id)
                .ok_or_else(|| Error::internal("local group lacks the identity"))
        })
        .collect::<Result<_>>()?;
    let identity = *index
        .get(&identity_tuple)
        .ok_or_else(|| Error::internal("global group lacks the identity"))?;
    let mut inverse = Vec::with_capacity(elements.len());
    for e in &elements {
        let tuple: Box<[usize]> = locals
            .iter()
            .zip(e.iter())
            .map(|(l, &x)| l.group.index_of(&invert(l.group.element(x))))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::internal("local group lacks an inverse"))?;
        inverse.push(
            *index
                .get(&tuple)
                .ok_or_else(|| Error::internal("global group lacks an inverse"))?,
        );
    }
    Ok(GlobalGroup {
        locals,
        coordinate,
        elements,
        index,
        gens,
        right_gen,
        inverse,
        identity,
    })
}

/// Each `g_{(s,R)}` is a permutation agreeing with `∗ s` wherever defined.
pub fn check_local_groups(locals: &[LocalGroup]) -> bool {
    locals.iter().all(|l| {
        l.gens.iter().enumerate().all(|(a, g)| {
            let bijective = {
                let mut seen = vec![false; g.len()];
                g.iter().all(|&q| !std::mem::replace(&mut seen[q as usize], true))
            };
            bijective
                && (0..l.states.len()).all(|p| match l.pts.action[p][a] {
                    Some(b) => l.states[g[p] as usize] == b,
                    None => true,
                })
        })
    })
}

/// A non-initial state `(X, d, g)`, with `X` an element index of `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub x: usize,
    pub d: usize,
    pub g: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AutomatonOptions {
    /// Keep only states reachable from `init`.
    pub reachable_only: bool,
}

#[derive(Clone, Debug)]
pub struct FlowAutomaton {
    pub options: AutomatonOptions,
    /// State `q ≥ 1` is `triples[q - 1]`; state 0 is `init`.
    pub triples: Vec<Triple>,
    /// `delta[q][s]`; never `INIT`.
    pub delta: Vec<Vec<usize>>,
    /// `val(q)` as an element of `C`, for `q ≥ 1`; `flow[0]` is unused.
    pub val: Vec<usize>,
    flow: Vec<Subset>,
    letters: usize,
}

impl FlowAutomaton {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn triple(&self, q: usize) -> Option<Triple> {
        if q == INIT {
            None
        } else {
            Some(self.triples[q - 1])
        }
    }

    pub fn state_of(&self, t: Triple) -> Option<usize> {
        self.triples.binary_search(&t).ok().map(|i| i + 1)
    }

    pub fn step(&self, q: usize, s: usize) -> usize {
        self.delta[q][s]
    }

    /// Flow value of a non-initial state.
    pub fn flow(&self, q: usize) -> Subset {
        assert_ne!(q, INIT, "init carries no flow");
        self.flow[q]
    }

    /// `(X, d, g)λ_s`: the first two components of `(X, d, g) ⊳ s`.
    pub fn lambda(&self, q: usize, s: usize) -> (usize, usize) {
        let t = self.triples[self.delta[q][s] - 1];
        (t.x, t.d)
    }

    /// Generators `q ↦ q ⊳ s` of the transition semigroup.
    pub fn letter_maps(&self) -> Vec<Map> {
        (0..self.letters)
            .map(|s| self.delta.iter().map(|row| row[s] as u32).collect())
            .collect()
    }
}

struct Membership<'a> {
    sd: &'a StableData,
    gg: &'a GlobalGroup,
}

impl Membership<'_> {
    /// `⟦X⟧ ⊳ d⁻¹g` as a block id.
    fn moved_block(&self, t: Triple) -> usize {
        let h = self.gg.mul(self.gg.inverse(t.d), t.g);
        self.gg
            .act(self.sd.t2.block_of(t.x), self.sd.r_class_of(t.x), h)
    }

    fn contains(&self, t: Triple) -> bool {
        self.sd.is_fixed(t.x) && self.sd.is_stable_block(self.moved_block(t))
    }

    fn val(&self, t: Triple) -> Result<usize> {
        let u = self.sd.complex.union_of(&self.sd.t2.blocks[self.moved_block(t)]);
        let v = self
            .sd
            .complex
            .element(u)
            .ok_or_else(|| Error::internal("value of a state is not in the construct"))?;
        if !self.sd.is_fixed(v) {
            return Err(Error::internal("value of a state is not a fixed point"));
        }
        Ok(v)
    }

    fn init_step(&self, s: usize) -> Triple {
        let g = self.gg.gens[s];
        Triple {
            x: self.sd.closure_of(self.sd.letter(s)),
            d: g,
            g,
        }
    }

    fn step(&self, t: Triple, s: usize) -> Result<Triple> {
        let v = self.val(t)?;
        let vs = self.sd.mul_letter(v, s);
        let g = self.gg.mul_gen(t.g, s);
        let kept = Triple { x: t.x, d: t.d, g };
        Ok(if self.sd.r_related(vs, v) && self.contains(kept) {
            kept
        } else {
            Triple {
                x: self.sd.closure_of(vs),
                d: g,
                g,
            }
        })
    }
}

/// `(X, d, g) ∈ Q(S)`.
pub fn is_state(sd: &StableData, gg: &GlobalGroup, t: Triple) -> bool {
    Membership { sd, gg }.contains(t)
}

/// `(X, d, g) ⊳ s` for a state `(X, d, g)`, computed from the definition.
pub fn step_triple(sd: &StableData, gg: &GlobalGroup, t: Triple, s: usize) -> Result<Triple> {
    Membership { sd, gg }.step(t, s)
}

/// `init ⊳ s`.
pub fn init_triple(sd: &StableData, gg: &GlobalGroup, s: usize) -> Triple {
    Membership { sd, gg }.init_step(s)
}

pub fn build_automaton(
    sd: &StableData,
    gg: &GlobalGroup,
    options: AutomatonOptions,
    limits: &Limits,
) -> Result<FlowAutomaton> {
    let m = Membership { sd, gg };
    let letters = sd.ambient.order();
    let mut found: BTreeSet<Triple> = BTreeSet::new();
    if options.reachable_only {
        let mut queue: VecDeque<Triple> = VecDeque::new();
        for s in 0..letters {
            let t = m.init_step(s);
            if found.insert(t) {
                queue.push_back(t);
            }
        }
        while let Some(t) = queue.pop_front() {
            guard("automaton states", found.len() + 1, limits.max_states)?;
            for s in 0..letters {
                let next = m.step(t, s)?;
                if found.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    } else {
        for &x in &sd.fixed {
            let b = sd.t2.block_of(x);
            let r = sd.r_class_of(x);
            let valid: Vec<usize> = (0..gg.len())
                .filter(|&h| sd.is_stable_block(gg.act(b, r, h)))
                .collect();
            guard(
                "automaton states",
                found.len() + 1 + valid.len() * gg.len(),
                limits.max_states,
            )?;
            for d in 0..gg.len() {
                for &h in &valid {
                    found.insert(Triple {
                        x,
                        d,
                        g: gg.mul(d, h),
                    });
                }
            }
        }
    }

    let triples: Vec<Triple> = found.into_iter().collect();
    let state_of = |t: Triple| -> Result<usize> {
        triples
            .binary_search(&t)
            .map(|i| i + 1)
            .map_err(|_| Error::internal("transition leaves the state set"))
    };
    let mut delta = Vec::with_capacity(triples.len() + 1);
    delta.push(
        (0..letters)
            .map(|s| state_of(m.init_step(s)))
            .collect::<Result<Vec<_>>>()?,
    );
    let mut val = vec![usize::MAX];
    let mut flow = vec![Subset::singleton(0)];
    for &t in &triples {
        if !m.contains(t) {
            return Err(Error::internal("enumerated triple is not a state"));
        }
        let v = m.val(t)?;
        val.push(v);
        flow.push(sd.subset(v));
        delta.push(
            (0..letters)
                .map(|s| state_of(m.step(t, s)?))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(FlowAutomaton {
        options,
        triples,
        delta,
        val,
        flow,
        letters,
    })
}

/// `s ∈ flow(init ⊳ s)` and `flow(q)·{s} ⊆ flow(q ⊳ s)` everywhere.
pub fn check_flow_axioms(s: &Semigroup, fa: &FlowAutomaton) -> bool {
    (0..fa.letters).all(|a| {
        fa.flow(fa.step(INIT, a)).contains(a)
            && (1..fa.len()).all(|q| {
                let image = setwise_product(s, fa.flow(q), Subset::singleton(a));
                image.is_subset_of(fa.flow(fa.step(q, a)))
            })
    })
}

/// Every transition lands on a non-initial state whose value is a fixed
/// point of ψ and whose moved block is stable.
pub fn check_delta_well_defined(sd: &StableData, gg: &GlobalGroup, fa: &FlowAutomaton) -> bool {
    let m = Membership { sd, gg };
    fa.delta.iter().all(|row| {
        row.iter().all(|&q| {
            q != INIT
                && q < fa.len()
                && m.contains(fa.triples[q - 1])
                && sd.is_fixed(fa.val[q])
        })
    })
}

/// Downward closure of the flow values, certified to be a complex.
pub fn cover_complex(s: &Arc<Semigroup>, fa: &FlowAutomaton, limits: &Limits) -> Result<Complex> {
    let mut tops: Vec<Subset> = (1..fa.len()).map(|q| fa.flow(q)).collect();
    tops.sort_unstable();
    tops.dedup();
    Complex::from_downward_closure(s, tops, limits)
}

pub fn transition_semigroup(fa: &FlowAutomaton, limits: &Limits) -> Result<TransformationSemigroup> {
    TransformationSemigroup::generate(fa.len(), &fa.letter_maps(), limits)
}

/// The subsemigroup of `S × T` generated by the pairs `(s, s̃)`.
#[derive(Clone, Debug)]
pub struct WitnessMorphism {
    /// Pairs `(s, t)`, ascending; `t` indexes the transition semigroup.
    pub pairs: Vec<(usize, usize)>,
    /// `(t, fiber)` for each `t` in the image, ascending by `t`.
    pub fibers: Vec<(usize, Subset)>,
}

pub fn witness_relational_morphism(
    s: &Semigroup,
    t: &TransformationSemigroup,
    limits: &Limits,
) -> Result<WitnessMorphism> {
    let letters = s.order();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for a in 0..letters {
        let p = (a, t.generator(a));
        if seen.insert(p) {
            queue.push_back(p);
        }
    }
    while let Some((x, u)) = queue.pop_front() {
        for a in 0..letters {
            let p = (s.mul(x, a), t.right_mul_generator(u, a));
            if seen.insert(p) {
                guard("witness morphism pairs", seen.len(), limits.max_transformations)?;
                queue.push_back(p);
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = seen.into_iter().collect();
    pairs.sort_unstable();
    let mut by_t: HashMap<usize, u64> = HashMap::new();
    for &(x, u) in &pairs {
        *by_t.entry(u).or_insert(0) |= 1 << x;
    }
    let mut fibers: Vec<(usize, Subset)> = by_t
        .into_iter()
        .map(|(u, bits)| (u, Subset::from_bits(bits).expect("fibers are nonempty")))
        .collect();
    fibers.sort_unstable();
    Ok(WitnessMorphism { pairs, fibers })
}

impl WitnessMorphism {
    /// Every element of `S` is related to something.
    pub fn is_total(&self, order: usize) -> bool {
        let mut hit = vec![false; order];
        for &(x, _) in &self.pairs {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// `fiber(t) ⊆ flow(init ⊳ t)` for every `t` in the image.
    pub fn fibers_within_flow(&self, t: &TransformationSemigroup, fa: &FlowAutomaton) -> bool {
        self.fibers.iter().all(|&(u, fiber)| {
            let q = t.apply(u, INIT);
            q != INIT && fiber.is_subset_of(fa.flow(q))
        })
    }

    /// Every member of `k` lies inside a single fiber.
    pub fn covers(&self, k: &Complex) -> bool {
        k.members()
            .iter()
            .all(|&x| self.fibers.iter().any(|&(_, f)| x.is_subset_of(f)))
    }
}

#[derive(Serialize)]
struct StateJson {
    id: usize,
    init: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Subset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flow: Option<Subset>,
}

#[derive(Serialize)]
struct LocalGroupJson {
    /// Each block rendered as the union of its members.
    blocks: Vec<Subset>,
    generators: Vec<Vec<u32>>,
    order: usize,
}

#[derive(Serialize)]
struct GroupJson {
    order: usize,
    identity: usize,
    generators: Vec<usize>,
    /// Per element, one position permutation per local group.
    elements: Vec<Vec<Vec<u32>>>,
    local_groups: Vec<LocalGroupJson>,
}

#[derive(Serialize)]
struct FiberJson {
    t: usize,
    fiber: Subset,
}

#[derive(Serialize)]
struct AutomatonJson {
    options: AutomatonOptions,
    fixed_points: Vec<Subset>,
    group: GroupJson,
    states: Vec<StateJson>,
    transitions: Vec<Vec<usize>>,
    transition_semigroup_order: usize,
    witness_pairs: usize,
    witness_fibers: Vec<FiberJson>,
}

pub fn automaton_json(
    sd: &StableData,
    gg: &GlobalGroup,
    fa: &FlowAutomaton,
    t: &TransformationSemigroup,
    w: &WitnessMorphism,
) -> serde_json::Value {
    let local_groups = gg
        .locals
        .iter()
        .map(|l| LocalGroupJson {
            blocks: l
                .states
                .iter()
                .map(|&b| sd.complex.union_of(&sd.t2.blocks[b]))
                .collect(),
            generators: l.gens.iter().map(|g| g.to_vec()).collect(),
            order: l.group.len(),
        })
        .collect();
    let group = GroupJson {
        order: gg.len(),
        identity: gg.identity,
        generators: gg.gens.clone(),
        elements: (0..gg.len())
            .map(|g| (0..gg.locals.len()).map(|k| gg.local_perm(g, k).to_vec()).collect())
            .collect(),
        local_groups,
    };
    let states = (0..fa.len())
        .map(|q| match fa.triple(q) {
            None => StateJson {
                id: q,
                init: true,
                x: None,
                d: None,
                g: None,
                flow: None,
            },
            Some(tr) => StateJson {
                id: q,
                init: false,
                x: Some(sd.subset(tr.x)),
                d: Some(tr.d),
                g: Some(tr.g),
                flow: Some(fa.flow(q)),
            },
        })
        .collect();
    let json = AutomatonJson {
        options: fa.options,
        fixed_points: sd.fixed.iter().map(|&x| sd.subset(x)).collect(),
        group,
        states,
        transitions: fa.delta.clone(),
        transition_semigroup_order: t.len(),
        witness_pairs: w.pairs.len(),
        witness_fibers: w
            .fibers
            .iter()
            .map(|&(t, fiber)| FiberJson { t, fiber })
            .collect(),
    };
    serde_json::to_value(json).expect("automaton serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_er;
    use crate::green::is_in_er;
    use crate::named::{self, *};
    use crate::stable::{build_stable, WitnessChoice};

    struct Built {
        s: Arc<Semigroup>,
        sd: StableData,
        gg: GlobalGroup,
        fa: FlowAutomaton,
    }

    fn build(s: Semigroup, options: AutomatonOptions) -> Built {
        let l = Limits::default();
        let s = Arc::new(s);
        let cr = construct_er(&s, &l).unwrap();
        let sd = build_stable(&s, &cr, WitnessChoice::Smallest, &l).unwrap();
        let locals = build_local_groups(&sd, &l).unwrap();
        let gg = build_global_group(locals, s.order(), &l).unwrap();
        let fa = build_automaton(&sd, &gg, options, &l).unwrap();
        Built { s, sd, gg, fa }
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn completion_pairs_in_order() {
        let p = complete_partial_injection(&[None, Some(0), None, Some(3)]).unwrap();
        assert_eq!(&*p, &[1, 0, 2, 3]);
        assert!(complete_partial_injection(&[Some(1), Some(1)]).is_err());
    }

    #[test]
    fn trivial_semigroup() {
        let b = build(named::trivial(), AutomatonOptions::default());
        assert_eq!(b.gg.len(), 1);
        assert_eq!(b.fa.len(), 2);
        assert_eq!(b.fa.delta, vec![vec![1], vec![1]]);
        assert!(check_flow_axioms(&b.s, &b.fa));
    }

    #[test]
    fn group_is_its_own_global_group() {
        let l = Limits::default();
        for (g, order) in [(named::cyclic_group(3), 3), (named::klein_four(), 4)] {
            let b = build(g, AutomatonOptions::default());
            assert_eq!(b.gg.len(), order);
            assert_eq!(b.gg.locals.len(), 1);
            assert!(check_local_groups(&b.gg.locals));
            // init ⊳ s = ({s}, g_s, g_s)
            for s in 0..order {
                let t = b.fa.triple(b.fa.step(INIT, s)).unwrap();
                assert_eq!(b.sd.subset(t.x), Subset::singleton(s));
                assert_eq!((t.d, t.g), (b.gg.gens[s], b.gg.gens[s]));
            }
            // after init the first component never changes
            for q in 1..b.fa.len() {
                for s in 0..order {
                    assert_eq!(b.fa.lambda(q, s).0, b.fa.triple(q).unwrap().x);
                }
            }
            let cover = cover_complex(&b.s, &b.fa, &l).unwrap();
            assert!(cover.is_singletons());
            let t = transition_semigroup(&b.fa, &l).unwrap();
            assert!(t.is_in_er(&l).unwrap());
        }
    }

    #[test]
    fn t2_local_groups() {
        let b = build(named::t2(), AutomatonOptions::default());
        // global group is C2, swapped by σ
        assert_eq!(b.gg.len(), 2);
        assert_ne!(b.gg.gens[T2_SIGMA], b.gg.identity);
        assert_eq!(b.gg.gens[T2_ID], b.gg.identity);
        let sizes: Vec<(usize, usize)> = b
            .gg
            .locals
            .iter()
            .map(|l| (l.states.len(), l.group.len()))
            .collect();
        assert!(sizes.contains(&(2, 2)));
        assert!(sizes.contains(&(1, 1)));
        assert!(check_local_groups(&b.gg.locals));
    }

    #[test]
    fn t2_cover_equals_construct() {
        let l = Limits::default();
        let b = build(named::t2(), AutomatonOptions::default());
        assert!(check_flow_axioms(&b.s, &b.fa));
        assert!(check_delta_well_defined(&b.sd, &b.gg, &b.fa));
        let cover = cover_complex(&b.s, &b.fa, &l).unwrap();
        let cr = construct_er(&b.s, &l).unwrap();
        assert_eq!(cover, cr.complex);
        assert!(cover.contains(set(&[T2_C1, T2_C2])));

        let t = transition_semigroup(&b.fa, &l).unwrap();
        assert!(t.is_in_er(&l).unwrap());
        let w = witness_relational_morphism(&b.s, &t, &l).unwrap();
        assert!(w.is_total(b.s.order()));
        assert!(w.fibers_within_flow(&t, &b.fa));
        assert!(w.covers(&cr.complex));
        assert!(w.fibers.iter().any(|&(_, f)| set(&[T2_C1, T2_C2]).is_subset_of(f)));
    }

    #[test]
    fn b2_fibers_are_singletons() {
        let l = Limits::default();
        let b = build(named::b2(), AutomatonOptions::default());
        let t = transition_semigroup(&b.fa, &l).unwrap();
        assert!(is_in_er(&t.to_semigroup(usize::MAX).unwrap()) == t.is_in_er(&l).unwrap());
        let w = witness_relational_morphism(&b.s, &t, &l).unwrap();
        assert!(w.fibers.iter().all(|&(_, f)| f.is_singleton()));
        assert!(cover_complex(&b.s, &b.fa, &l).unwrap().is_singletons());
    }

    #[test]
    fn reachable_states_are_a_subautomaton() {
        let full = build(named::t2(), AutomatonOptions::default());
        let reach = build(named::t2(), AutomatonOptions { reachable_only: true });
        assert!(reach.fa.len() <= full.fa.len());
        for q in 1..reach.fa.len() {
            let t = reach.fa.triple(q).unwrap();
            let p = full.fa.state_of(t).unwrap();
            for s in 0..reach.fa.letters() {
                let next = reach.fa.triple(reach.fa.step(q, s)).unwrap();
                assert_eq!(full.fa.triple(full.fa.step(p, s)), Some(next));
            }
        }
    }
}
