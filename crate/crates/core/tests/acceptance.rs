//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs the full catalog through order 4; the whole run takes well under a
//! second in the test profile.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pointlike::automaton::{
    build_automaton, build_global_group, build_local_groups, cover_complex, AutomatonOptions,
};
use pointlike::catalog::{enumerate_catalog, CatalogEntry};
use pointlike::construct::construct_er;
use pointlike::kernel::check_kernel_image;
use pointlike::named;
use pointlike::stable::{build_stable, WitnessChoice};
use pointlike::verify::{certify, stable_lemmas, type2_lemmas, VerificationReport, VerifyOptions};
use pointlike::{Complex, Limits, Semigroup, Subset};

const SEED: u64 = 0x5eed_0fe5;
const RANDOM_SURJECTIONS: usize = 100;
const MINIMALITY_CLASS_BOUND: usize = 7;

struct Line {
    criterion: usize,
    name: &'static str,
    failures: Vec<String>,
    checked: usize,
}

impl Line {
    fn new(criterion: usize, name: &'static str) -> Self {
        Line {
            criterion,
            name,
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn print(&self) -> bool {
        let pass = self.failures.is_empty() && self.checked > 0;
        println!(
            "criterion {}: {} [{} checks] {}",
            self.criterion,
            if pass { "PASS" } else { "FAIL" },
            self.checked,
            self.name
        );
        for f in self.failures.iter().take(10) {
            println!("    failure: {f}");
        }
        pass
    }
}

fn describe(e: &CatalogEntry) -> String {
    format!("catalog entry {} (order {}) {:?}", e.id, e.order, e.table)
}

fn lemma_suite(s: &Semigroup, limits: &Limits) -> Result<bool, String> {
    let s = Arc::new(s.clone());
    let on_s = type2_lemmas(&s, MINIMALITY_CLASS_BOUND).map_err(|e| e.to_string())?;
    let cr = construct_er(&s, limits).map_err(|e| e.to_string())?;
    let sd = build_stable(&s, &cr, WitnessChoice::Smallest, limits).map_err(|e| e.to_string())?;
    let on_c = type2_lemmas(&sd.complex.semigroup, MINIMALITY_CLASS_BOUND).map_err(|e| e.to_string())?;
    let (blowup, idpt, psi, stability, fixed) = stable_lemmas(&sd).map_err(|e| e.to_string())?;
    Ok(on_s.all() && on_c.all() && blowup && idpt && psi.all() && stability && fixed)
}

/// A random source semigroup: a catalog entry, a named instance, or a
/// product of two catalog entries of order at most 3.
fn random_source(rng: &mut ChaCha8Rng, small: &[CatalogEntry]) -> Semigroup {
    match rng.random_range(0..3) {
        0 => small.choose(rng).unwrap().semigroup(),
        1 => [named::t2(), named::b2(), named::null(3), named::cyclic_group(4)]
            .choose(rng)
            .unwrap()
            .clone()
            .without_labels(),
        _ => {
            let a = small.choose(rng).unwrap().semigroup();
            let pool: Vec<&CatalogEntry> = small.iter().filter(|e| e.order * a.order() <= 6).collect();
            let b = pool.choose(rng).unwrap().semigroup();
            a.direct_product(&b)
        }
    }
}

/// Union of one or two random principal ideals.
fn random_ideal(rng: &mut ChaCha8Rng, s: &Semigroup) -> Vec<usize> {
    let mut ideal = s.principal_ideal(rng.random_range(0..s.order()));
    if rng.random_bool(0.5) {
        ideal.extend(s.principal_ideal(rng.random_range(0..s.order())));
        ideal.sort_unstable();
        ideal.dedup();
    }
    ideal
}

fn main() -> ExitCode {
    let max_order = 4;
    let limits = Limits::default();
    let started = Instant::now();

    let catalog = enumerate_catalog(max_order).expect("catalog");
    let reports: Vec<(&CatalogEntry, Result<VerificationReport, String>)> = catalog
        .iter()
        .map(|e| {
            let r = certify(&e.semigroup(), VerifyOptions::full(), &limits).map_err(|x| x.to_string());
            (e, r)
        })
        .collect();
    println!(
        "catalog through order {max_order}: {} entries certified in {:.1?}",
        catalog.len(),
        started.elapsed()
    );

    let mut c1 = Line::new(1, "cover complex equals construct on the catalog");
    let mut c2 = Line::new(2, "points, direct and injectivity ER tests agree on the catalog");
    let mut c3 = Line::new(3, "transition semigroup in ER, λ-maps decreasing, flow axioms");
    let mut c4 = Line::new(4, "fibers inside flow values, construct members inside fibers");
    let mut c5 = Line::new(5, "lemma suite on the catalog and on random surjections");
    let mut c6 = Line::new(6, "named instances by fixpoint and by cover complex");
    let mut c7 = Line::new(7, "verify JSON is byte-identical across runs");

    for (e, r) in &reports {
        match r {
            Err(err) => {
                for line in [&mut c1, &mut c2, &mut c3, &mut c4, &mut c5] {
                    line.check(false, || format!("{}: {err}", describe(e)));
                }
            }
            Ok(r) => {
                let f = &r.flags;
                c1.check(f.cover_equals_construct, || describe(e));
                c2.check(f.points_agrees_direct, || describe(e));
                c3.check(
                    f.transition_in_er && f.lambda_decreasing_ok && f.flow_ok && f.delta_ok,
                    || format!("{}: {:?}", describe(e), f),
                );
                c4.check(f.fibers_ok && f.pointlikes_in_fibers, || describe(e));
                c5.check(r.lemmas.all(), || format!("{}: {:?}", describe(e), r.lemmas));
            }
        }
    }

    // random Rees-quotient surjections and congruence quotients
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let small: Vec<CatalogEntry> = catalog.iter().filter(|e| e.order <= 3).cloned().collect();
    for trial in 0..RANDOM_SURJECTIONS {
        let s = random_source(&mut rng, &small);
        let ideal = random_ideal(&mut rng, &s);
        let (q, map) = s.rees_quotient(&ideal).expect("ideal quotient");
        c5.check(check_kernel_image(&s, &q, &map), || {
            format!("Rees trial {trial}: kernel image, ideal {ideal:?} of {:?}", s.table())
        });
        match lemma_suite(&q, &limits) {
            Ok(ok) => c5.check(ok, || format!("Rees trial {trial}: lemmas on quotient")),
            Err(err) => c5.check(false, || format!("Rees trial {trial}: {err}")),
        }

        let pairs: Vec<(usize, usize)> = (0..rng.random_range(1..=2))
            .map(|_| (rng.random_range(0..s.order()), rng.random_range(0..s.order())))
            .collect();
        let class_of = s.congruence_closure(&pairs);
        let q = s.quotient(&class_of).expect("congruence quotient");
        c5.check(check_kernel_image(&s, &q, &class_of), || {
            format!("congruence trial {trial}: pairs {pairs:?} of {:?}", s.table())
        });
    }

    // named instances, expected values as stated for each
    let set = |e: &[usize]| Subset::from_elements(e.iter().copied()).unwrap();
    let named_cases: Vec<(&str, Semigroup, Vec<Subset>)> = vec![
        ("B2", named::b2(), vec![]),
        (
            "T2",
            named::t2(),
            vec![set(&[named::T2_C1, named::T2_C2])],
        ),
        ("C2", named::cyclic_group(2), vec![]),
        ("C3", named::cyclic_group(3), vec![]),
        ("C2xC2", named::klein_four(), vec![]),
    ];
    for (name, s, extra) in &named_cases {
        let s = Arc::new(s.clone());
        let expected = Complex::from_downward_closure(&s, extra.iter().copied(), &limits).unwrap();
        let cr = construct_er(&s, &limits).unwrap();
        c6.check(cr.complex == expected, || format!("{name}: fixpoint"));
        let sd = build_stable(&s, &cr, WitnessChoice::Smallest, &limits).unwrap();
        let locals = build_local_groups(&sd, &limits).unwrap();
        let gg = build_global_group(locals, s.order(), &limits).unwrap();
        let fa = build_automaton(&sd, &gg, AutomatonOptions::default(), &limits).unwrap();
        let cover = cover_complex(&s, &fa, &limits).unwrap();
        c6.check(cover == expected, || format!("{name}: cover complex"));
        if *name == "T2" {
            c6.check(
                cr.complex.maximal_members().contains(&set(&[named::T2_C1, named::T2_C2])),
                || "T2: {c1,c2} is maximal".into(),
            );
        }

        let a = certify(&s, VerifyOptions::full(), &limits).unwrap().to_json();
        let b = certify(&s, VerifyOptions::full(), &limits).unwrap().to_json();
        c7.check(a == b, || format!("{name}: JSON differs"));
    }
    for (e, _) in reports.iter().step_by(7) {
        let a = certify(&e.semigroup(), VerifyOptions::full(), &limits).map(|r| r.to_json());
        let b = certify(&e.semigroup(), VerifyOptions::full(), &limits).map(|r| r.to_json());
        c7.check(a.ok() == b.ok(), || describe(e));
    }

    let mut all = true;
    for line in [&c1, &c2, &c3, &c4, &c5, &c6, &c7] {
        all &= line.print();
    }
    println!("acceptance finished in {:.1?}", started.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
