use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use pointlike::automaton::{
    automaton_json, build_automaton, build_global_group, build_local_groups, cover_complex,
    transition_semigroup, witness_relational_morphism, AutomatonOptions,
};
use pointlike::catalog::enumerate_catalog;
use pointlike::construct::{construct_er, er_membership_via_points};
use pointlike::green::{is_in_er, GreenData};
use pointlike::io::parse_cayley;
use pointlike::kernel::{is_in_er_via_injectivity, type2_partition};
use pointlike::stable::{build_stable, WitnessChoice};
use pointlike::verify::{
    certify, error_exit_code, exit_code, VerifyOptions, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION,
};
use pointlike::{Error, Limits, Semigroup, Subset};

#[derive(Parser)]
#[command(name = "pointlike", version, about = "ER-pointlike sets of finite semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, idempotents, Green's relations and ER membership.
    Info { file: PathBuf },
    /// Group kernel and type-II blocks.
    Kernel { file: PathBuf },
    /// Maximal pointlike sets and the construct trace.
    Pointlikes {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Flow automaton, global group and witness morphism.
    Automaton {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Keep only states reachable from init.
        #[arg(long)]
        reachable_only: bool,
    },
    /// Full certification report as JSON.
    Verify {
        file: PathBuf,
        /// Compare pointer pairs on both components.
        #[arg(long)]
        strict_preorder: bool,
        /// Pick the largest idempotent witness instead of the smallest.
        #[arg(long)]
        largest_witness: bool,
        /// Skip the rerun with the other witness choice.
        #[arg(long)]
        no_choice_check: bool,
        #[arg(long)]
        reachable_only: bool,
        /// Print stage timings to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Certify every semigroup up to the given order.
    Catalog {
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// `println!` that ignores a closed stdout.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout().lock(), $($arg)*);
    }};
}

enum Failure {
    Io(PathBuf, io::Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(..) => EXIT_INPUT,
            Failure::Lib(e) => error_exit_code(e),
        }
    }
}

fn read_semigroup(path: &Path) -> Result<Semigroup, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Io(path.to_owned(), e))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?
    };
    Ok(parse_cayley(&text)?)
}

fn show(s: &Semigroup, x: Subset) -> String {
    x.display(s).to_string()
}

fn show_elements(s: &Semigroup, xs: &[usize]) -> String {
    let names: Vec<String> = xs.iter().map(|&x| s.label(x)).collect();
    format!("{{{}}}", names.join(","))
}

fn info(path: &Path, limits: &Limits) -> Result<i32, Failure> {
    let s = Arc::new(read_semigroup(path)?);
    let green = GreenData::new(&s);
    let direct = is_in_er(&s);
    let injective = is_in_er_via_injectivity(&s);
    let points = er_membership_via_points(&s, limits)?;
    out!("order: {}", s.order());
    out!("idempotents: {}", show_elements(&s, &s.idempotents()));
    out!(
        "green: {} R-classes, {} L-classes, {} H-classes, {} J-classes ({} regular)",
        green.r_classes.len(),
        green.l_classes.len(),
        green.h_classes.len(),
        green.j_classes.len(),
        green.regular_j.iter().filter(|&&r| r).count()
    );
    for (i, r) in green.r_classes.iter().enumerate() {
        out!("  R{i}: {}", show_elements(&s, r));
    }
    out!("in ER (idempotent-generated subsemigroup): {direct}");
    out!("in ER (injective right actions): {injective}");
    out!("in ER (trivial construct): {points}");
    Ok(if direct == injective && injective == points {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn kernel(path: &Path) -> Result<i32, Failure> {
    let s = read_semigroup(path)?;
    let t2 = type2_partition(&s);
    out!("group kernel: {}", show_elements(&s, &t2.kernel));
    out!("type-II blocks:");
    for (r, blocks) in t2.per_r_class.iter().enumerate() {
        let rendered: Vec<String> = blocks
            .iter()
            .map(|&b| show_elements(&s, &t2.blocks[b]))
            .collect();
        out!("  R{r}: {}", rendered.join(" "));
    }
    Ok(EXIT_OK)
}

fn pointlikes(path: &Path, as_json: bool, limits: &Limits) -> Result<i32, Failure> {
    let s = Arc::new(read_semigroup(path)?);
    let cr = construct_er(&s, limits)?;
    let maximal = cr.complex.maximal_members();
    if as_json {
        let doc = json!({
            "order": s.order(),
            "er_member": cr.complex.is_singletons(),
            "maximal": maximal,
            "members": cr.complex.members(),
            "trace": cr.trace_json(),
        });
        out!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        out!("maximal pointlikes:");
        for x in &maximal {
            out!("  {}", show(&s, *x));
        }
        out!("construct: {} members, {} rounds", cr.complex.len(), cr.iterations);
        for (i, round) in cr.trace.iter().enumerate() {
            let added: Vec<String> = round.iter().map(|x| show(&s, *x)).collect();
            out!("  round {}: added {}", i + 1, added.join(" "));
        }
    }
    Ok(EXIT_OK)
}

fn automaton(path: &Path, as_json: bool, reachable_only: bool, limits: &Limits) -> Result<i32, Failure> {
    let s = Arc::new(read_semigroup(path)?);
    let cr = construct_er(&s, limits)?;
    let sd = build_stable(&s, &cr, WitnessChoice::Smallest, limits)?;
    let locals = build_local_groups(&sd, limits)?;
    let gg = build_global_group(locals, s.order(), limits)?;
    let fa = build_automaton(&sd, &gg, AutomatonOptions { reachable_only }, limits)?;
    let t = transition_semigroup(&fa, limits)?;
    let w = witness_relational_morphism(&s, &t, limits)?;
    if as_json {
        let doc = automaton_json(&sd, &gg, &fa, &t, &w);
        out!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        let cover = cover_complex(&s, &fa, limits)?;
        out!("construct: {} members", cr.complex.len());
        out!("fixed points: {}", sd.fixed.len());
        out!("stable blocks: {}", sd.blocks.len());
        out!(
            "local groups: {}",
            gg.locals
                .iter()
                .map(|l| format!("{} on {}", l.group.len(), l.states.len()))
                .collect::<Vec<_>>()
                .join(", ")
        );
        out!("global group: {}", gg.len());
        out!("states: {} (including init)", fa.len());
        out!("transition semigroup: {}", t.len());
        out!("witness pairs: {}", w.pairs.len());
        out!("cover complex equals construct: {}", cover == cr.complex);
        out!("fibers:");
        for (u, fiber) in &w.fibers {
            out!("  t{u}: {}", show(&s, *fiber));
        }
    }
    Ok(EXIT_OK)
}

fn verify(path: &Path, options: VerifyOptions, timings: bool, limits: &Limits) -> Result<i32, Failure> {
    let s = read_semigroup(path)?;
    let outcome = certify(&s, options, limits);
    let code = exit_code(&outcome);
    let report = outcome?;
    out!("{}", report.to_json());
    if timings {
        let t = &report.timings;
        eprintln!(
            "construct {:?}, stable and automaton {:?}, transition semigroup {:?}, checks {:?}",
            t.construct, t.stable, t.automaton, t.checks
        );
    }
    Ok(code)
}

fn catalog(max_order: usize, jobs: Option<usize>, limits: &Limits) -> Result<i32, Failure> {
    let entries = enumerate_catalog(max_order)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    let outcomes: Vec<_> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| certify(&e.semigroup(), VerifyOptions::full(), limits))
            .collect()
    });
    let mut worst = EXIT_OK;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (e, outcome) in entries.iter().zip(&outcomes) {
        let code = exit_code(outcome);
        worst = worst.max(code);
        let line = match outcome {
            Ok(r) => format!(
                "entry {:>3} order {} er={:<5} construct={:<3} states={:<4} transitions={:<4} {}",
                e.id,
                e.order,
                r.er_member,
                r.sizes.construct,
                r.sizes.states,
                r.sizes.transition_semigroup,
                if r.ok() { "ok" } else { "FAILED" }
            ),
            Err(err) => format!("entry {:>3} order {} error: {err}", e.id, e.order),
        };
        let _ = writeln!(out, "{line}");
    }
    let passed = outcomes.iter().filter(|o| exit_code(o) == EXIT_OK).count();
    let _ = writeln!(out, "{passed}/{} entries certified", entries.len());
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::default();
    let result = match cli.command {
        Command::Info { file } => info(&file, &limits),
        Command::Kernel { file } => kernel(&file),
        Command::Pointlikes { file, json } => pointlikes(&file, json, &limits),
        Command::Automaton {
            file,
            json,
            reachable_only,
        } => automaton(&file, json, reachable_only, &limits),
        Command::Verify {
            file,
            strict_preorder,
            largest_witness,
            no_choice_check,
            reachable_only,
            timings,
        } => {
            let options = VerifyOptions {
                strict_preorder,
                witness_choice: if largest_witness {
                    WitnessChoice::Largest
                } else {
                    WitnessChoice::Smallest
                },
                check_choice_invariance: !no_choice_check,
                reachable_only,
            };
            verify(&file, options, timings, &limits)
        }
        Command::Catalog { max_order, jobs } => catalog(max_order, jobs, &limits),
    };
    let code = match result {
        Ok(code) => code,
        Err(failure) => {
            match &failure {
                Failure::Io(path, e) => eprintln!("error: {}: {e}", path.display()),
                Failure::Lib(e) => eprintln!("error: {e}"),
            }
            failure.code()
        }
    };
    ExitCode::from(code as u8)
}
