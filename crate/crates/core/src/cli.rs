//! The `arrangements` command line.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::catalog;
use crate::error::{Error, Result};
use crate::freeness::{
    cert_verify, divisionally_free, enumerate_candidates, exponents_from_charpoly,
    inductively_free, recursively_free, sweep_in, Budget, Certificate, Class, Membership,
    Universe, DEFAULT_NODE_CAP,
};
use crate::g31::{self, CrossValidateConfig, G31};
use crate::lattice::{Lattice, DEFAULT_FLAT_BUDGET};
use crate::reproduce;

pub const SCHEMA: u32 = 1;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "arrangements", version, about = "Intersection lattices and freeness certificates for hyperplane arrangements")]
pub struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// A catalog entry (see `catalog list`).
    #[arg(long)]
    pub catalog: Option<String>,
    /// An `.arr` file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic polynomial.
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_FLAT_BUDGET)]
        budget: usize,
    },
    /// Flats by rank, Möbius values and χ.
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_FLAT_BUDGET)]
        budget: usize,
    },
    /// Rank-2 profile `{{|A_X| : X of rank 2}}`.
    Profile {
        #[command(flatten)]
        input: Input,
    },
    /// Inductive, divisional or recursive freeness.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_class)]
        class: Class,
        /// Hyperplanes the recursive search may add: a named pool, an `.arr`
        /// file, or `candidates` (may be repeated).
        #[arg(long)]
        pool: Vec<String>,
        /// Net additions allowed in the recursive search.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Search node cap.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: usize,
        /// Write the certificate as JSON.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Replays a certificate written by `certify --cert-out`.
    VerifyCert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Candidate additions that could keep a free arrangement free.
    Sweep {
        #[command(flatten)]
        input: Input,
        /// Exponents of the input (default: catalog value or roots of χ).
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u64>,
        /// Report survivors lying in this catalog arrangement separately
        /// (default for g29: g31).
        #[arg(long)]
        ambient: Option<String>,
    },
    /// Runs the reproduction criteria of the given sections (all if none):
    /// g24, g31, g33, restrictions, monomial, properties.
    PaperVerify { sections: Vec<String> },
    /// Built-in arrangements.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Blocks, stars, filtrations and sweeps of A(G31).
    #[command(subcommand)]
    G31(G31Cmd),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// Entries with their expected invariants.
    List,
    /// Builds and validates an entry; `--out` writes it as `.arr`.
    Build { name: String },
}

#[derive(Subcommand, Debug)]
pub enum G31Cmd {
    /// The 15 blocks and six stars as a grid.
    Partition,
    /// Block patterns of the rank-2 flats through every hyperplane.
    Trichotomy,
    /// Compares the FFSA characterization with filtration searches.
    CrossValidate {
        #[arg(long, default_value_t = 3)]
        exhaustive_max: usize,
        #[arg(long, default_value_t = 200)]
        per_size: usize,
        #[arg(long, default_value_t = 13)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: usize,
    },
    /// No-addition sweeps over sampled free filtration subarrangements.
    Sweep {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: usize,
    },
    /// Filtrations deleting each M_i in random orders.
    Ladder {
        #[arg(long, default_value_t = 5)]
        orders: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        budget: usize,
    },
}

fn parse_class(s: &str) -> std::result::Result<Class, String> {
    s.parse()
}

/// A finished command: text and JSON renderings and an exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: EXIT_OK,
        }
    }

    fn code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

fn load(input: &Input) -> Result<(Arrangement, Option<catalog::CatalogEntry>)> {
    match (&input.catalog, &input.input) {
        (Some(name), _) => {
            let e = catalog::lookup(name)?;
            let (a, _) = catalog::build_entry(&e)?;
            Ok((a, Some(e)))
        }
        (None, Some(path)) => Ok((Arrangement::read_arr(path)?, None)),
        (None, None) => Err(Error::Invalid("give --catalog or --in".into())),
    }
}

fn membership_code(m: &Membership) -> i32 {
    match m {
        Membership::Unknown { reason } if reason.starts_with("budget") => EXIT_BUDGET,
        _ => EXIT_OK,
    }
}

fn pool_hyperplanes(names: &[String], a: &Arrangement) -> Result<Vec<Hyperplane>> {
    let names: Vec<String> = if names.is_empty() {
        vec!["candidates".into()]
    } else {
        names.to_vec()
    };
    let mut out: Vec<Hyperplane> = Vec::new();
    for n in &names {
        let hs = if n == "candidates" {
            let u = Universe::new(a.clone())?;
            enumerate_candidates(&u, &u.full())
                .into_iter()
                .filter(|c| c.internal.is_none())
                .map(|c| c.hyperplane)
                .collect()
        } else if catalog::POOLS.contains(&n.as_str()) {
            catalog::pool(n, a)?
        } else {
            let p = Arrangement::read_arr(std::path::Path::new(n))?;
            p.hyperplanes().to_vec()
        };
        for h in hs {
            if !a.contains(&h) && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

fn charpoly_cmd(input: &Input, budget: usize) -> Result<Report> {
    let (a, _) = load(input)?;
    let mut l = Lattice::build(&a, None, budget)?;
    let chi = l.charpoly();
    let exps = exponents_from_charpoly(&chi, a.len());
    Ok(Report::new(
        chi.to_string(),
        json!({"size": a.len(), "dim": a.dim(), "charpoly": chi.coeffs(), "charpoly_text": chi.to_string(), "roots": exps}),
    ))
}

fn lattice_cmd(input: &Input, max_rank: Option<usize>, budget: usize) -> Result<Report> {
    let (a, _) = load(input)?;
    let mut l = Lattice::build(&a, max_rank, budget)?;
    let mut text = format!("flats by rank: {:?}\n", l.counts_by_rank());
    if l.is_complete() {
        text.push_str(&format!("charpoly: {}\n", l.charpoly()));
    }
    text.push_str(&format!("rank-2 profile: {}", l.rank2_profile()));
    Ok(Report::new(text, l.to_json()))
}

fn profile_cmd(input: &Input) -> Result<Report> {
    let (a, _) = load(input)?;
    let l = Lattice::build(&a, Some(2), DEFAULT_FLAT_BUDGET)?;
    let p = l.rank2_profile();
    Ok(Report::new(p.to_string(), json!({"profile": p, "text": p.to_string()})))
}

#[allow(clippy::too_many_arguments)]
fn certify_cmd(
    input: &Input,
    class: Class,
    pool: &[String],
    depth: usize,
    budget: usize,
    cert_out: Option<&PathBuf>,
) -> Result<Report> {
    let (a, _) = load(input)?;
    let b = Budget::new(budget);
    let m = match class {
        Class::Inductive => inductively_free(&a, &b)?,
        Class::Divisional => divisionally_free(&a, &b)?,
        Class::Recursive => {
            let p = pool_hyperplanes(pool, &a)?;
            recursively_free(&a, &p, depth, &b)?
        }
    };
    let mut text = format!("{}: {m}\nnodes: {}", class.name(), b.used());
    if let Some(c) = m.certificate() {
        let rules: Vec<String> = c.rule_counts().iter().map(|(r, k)| format!("{r}×{k}")).collect();
        text.push_str(&format!("\ncertificate: {} nodes ({})", c.size(), rules.join(", ")));
        if let Some(path) = cert_out {
            let body = serde_json::to_string_pretty(&json!({"schema": SCHEMA, "key": a.key().0, "certificate": c}))?;
            std::fs::write(path, body).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
    }
    let code = membership_code(&m);
    Ok(Report::new(
        text,
        json!({"class": class.name(), "result": m, "nodes": b.used()}),
    )
    .code(code))
}

fn verify_cert_cmd(input: &Input, cert: &PathBuf) -> Result<Report> {
    let (a, _) = load(input)?;
    let body = std::fs::read_to_string(cert).map_err(|source| Error::Io {
        path: cert.display().to_string(),
        source,
    })?;
    let v: Value = serde_json::from_str(&body)?;
    let c: Certificate = serde_json::from_value(v.get("certificate").cloned().unwrap_or(v))?;
    let r = cert_verify(&a, &c);
    let (text, code) = match &r {
        Ok(()) => ("certificate valid".to_string(), EXIT_OK),
        Err(e) => (format!("certificate invalid: {e}"), EXIT_FALSIFIED),
    };
    Ok(Report::new(text, json!({"valid": r.is_ok(), "error": r.err()})).code(code))
}

fn sweep_cmd(input: &Input, exponents: &[u64], ambient: Option<&str>) -> Result<Report> {
    let (a, entry) = load(input)?;
    let u = Universe::new(a.clone())?;
    let exps = if !exponents.is_empty() {
        let mut e = exponents.to_vec();
        e.sort_unstable();
        e
    } else if let Some((e, _)) = entry.as_ref().and_then(|e| e.exponents.clone()) {
        e
    } else {
        exponents_from_charpoly(&u.charpoly(&u.full()), a.len())
            .ok_or_else(|| Error::Invalid("χ does not split; give --exponents".into()))?
    };
    let ambient = match (ambient, entry.as_ref().map(|e| e.name.as_str())) {
        (Some(n), _) => Some(catalog::build(n)?),
        (None, Some("g29")) => Some(catalog::build("g31")?),
        _ => None,
    };
    let r = sweep_in(&u, &u.full(), &exps, ambient.as_ref())?;
    let mut text = format!(
        "exponents {:?}\ncandidates: {} external, {} internal\nobstruction sums: {:?}\n",
        r.exponents, r.external_candidates, r.internal_candidates, r.obstruction_histogram
    );
    text.push_str(&format!(
        "complete: {} (max single flat {}, least admissible exponent {:?})\n",
        r.complete, r.max_single_flat, r.min_admissible_exponent
    ));
    text.push_str(&format!("fingerprint classes: {}\n", r.fingerprint_classes.len()));
    if ambient.is_some() {
        text.push_str(&format!("survivors inside the ambient arrangement: {}\n", r.ambient_survivors.len()));
    }
    text.push_str(&format!("survivors: {}", r.survivors.len()));
    for s in &r.survivors {
        text.push_str(&format!("\n  {s}"));
    }
    let mut j = serde_json::to_value(&r)?;
    if let Some(o) = j.as_object_mut() {
        o.remove("tested");
    }
    Ok(Report::new(text, j))
}

fn paper_verify_cmd(sections: &[String], seed: u64) -> Result<Report> {
    let ids = reproduce::criteria_for(sections).map_err(Error::Invalid)?;
    let mut lines = Vec::new();
    let mut outcomes = Vec::new();
    for id in ids {
        let o = reproduce::run(id, seed);
        eprintln!("{}", o.line());
        lines.push(o.line());
        outcomes.push(o);
    }
    let ok = outcomes.iter().all(|o| o.passed());
    let first = outcomes.iter().find(|o| !o.passed());
    if let Some(f) = first {
        lines.push(format!("first failing criterion: {} ({})", f.id, f.title));
    }
    Ok(Report::new(
        lines.join("\n"),
        json!({"passed": ok, "seed": seed, "criteria": outcomes}),
    )
    .code(if ok { EXIT_OK } else { EXIT_FALSIFIED }))
}

fn catalog_cmd(cmd: &CatalogCmd, out: Option<&PathBuf>) -> Result<(Report, bool)> {
    match cmd {
        CatalogCmd::List => {
            let es = catalog::entries();
            let mut text = String::new();
            for e in &es {
                let exps = e.exponents.as_ref().map(|(x, o)| format!(" exp {x:?} ({o:?})")).unwrap_or_default();
                let prof = e.profile.as_ref().map(|(p, o)| format!(" profile {p} ({o:?})")).unwrap_or_default();
                text.push_str(&format!(
                    "{:<11} Q(z{}) |A|={:<3} rank {}{exps}{prof}  {}\n",
                    e.name, e.field_order, e.size, e.rank, e.summary
                ));
            }
            text.push_str("also: boolean<n>, monomial:<r>,<l>,<k>; pools: ");
            text.push_str(&catalog::POOLS.join(", "));
            Ok((Report::new(text, json!({"entries": es, "pools": catalog::POOLS})), false))
        }
        CatalogCmd::Build { name } => {
            let e = catalog::lookup(name)?;
            let (a, v) = catalog::build_entry(&e)?;
            match out {
                Some(path) => {
                    std::fs::write(path, a.to_arr_string()).map_err(|source| Error::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    let text = format!("{}: {} hyperplanes written to {}", e.name, a.len(), path.display());
                    Ok((Report::new(text, json!({"validation": v})), true))
                }
                None => Ok((Report::new(a.to_arr_string(), json!({"validation": v, "arr": a.to_arr_string()})), false)),
            }
        }
    }
}

fn g31_cmd(cmd: &G31Cmd, seed: u64) -> Result<Report> {
    let g = G31::new()?;
    let u: &Arc<Universe> = &g.universe;
    match cmd {
        G31Cmd::Partition => Ok(Report::new(g.partition.grid(u), serde_json::to_value(&g.partition)?)),
        G31Cmd::Trichotomy => {
            let t = g31::trichotomy_check(u, &g.partition);
            let text = format!(
                "pairs (H, X): {}\ncases (6 / 3 / 2): {:?}\nper hyperplane (6/3/2 flats): {:?}\nviolations: {}",
                t.pairs,
                t.case_counts,
                t.per_hyperplane,
                t.violations.len()
            );
            let code = if t.violations.is_empty() { EXIT_OK } else { EXIT_FALSIFIED };
            Ok(Report::new(text, serde_json::to_value(&t)?).code(code))
        }
        G31Cmd::CrossValidate {
            exhaustive_max,
            per_size,
            max_size,
            budget,
        } => {
            let cfg = CrossValidateConfig {
                seed,
                exhaustive_max: *exhaustive_max,
                random_per_size: *per_size,
                max_size: *max_size,
                node_cap: *budget,
            };
            let r = g31::ffsa_cross_validate(&g, &cfg);
            let mut text = String::from("|N| checked predicted found inconclusive mismatches\n");
            for (n, t) in &r.by_size {
                text.push_str(&format!(
                    "{n:>3} {:>7} {:>9} {:>5} {:>12} {:>10}\n",
                    t.checked, t.predicted_free, t.found_free, t.inconclusive, t.mismatches
                ));
            }
            for m in &r.minimal {
                text.push_str(&format!(
                    "A∖M{}: free single deletions {}, undecided {}\n",
                    m.star + 1,
                    m.free.len(),
                    m.undecided.len()
                ));
            }
            text.push_str(&format!("passed: {}", r.passed()));
            let code = if r.passed() { EXIT_OK } else { EXIT_FALSIFIED };
            Ok(Report::new(text, serde_json::to_value(&r)?).code(code))
        }
        G31Cmd::Sweep { samples, budget } => {
            let s = g31::ffsa_no_addition_sweep(&g, seed, *samples, &Budget::new(*budget))?;
            let mut text = String::new();
            for x in &s {
                text.push_str(&format!(
                    "{:<22} |Ã|={:<2} exp {:?} filtration {} candidates {} survivors {}\n",
                    x.label,
                    x.size,
                    x.exponents,
                    x.filtration_ok,
                    x.external_candidates,
                    x.survivors.len()
                ));
            }
            let ok = s.iter().all(|x| x.passed());
            text.push_str(&format!("passed: {ok}"));
            Ok(Report::new(text, serde_json::to_value(&s)?).code(if ok { EXIT_OK } else { EXIT_FALSIFIED }))
        }
        G31Cmd::Ladder { orders, budget } => {
            let runs = g31::filtration_ladder(&g, seed, *orders, &Budget::new(*budget));
            let mut text = String::new();
            for r in &runs {
                text.push_str(&format!(
                    "M{} steps {} ladder {} {}\n",
                    r.star + 1,
                    r.steps,
                    r.exponents_ok,
                    r.failure.as_deref().unwrap_or("")
                ));
            }
            let ok = runs.iter().all(|r| r.passed());
            text.push_str(&format!("passed: {ok}"));
            Ok(Report::new(text, serde_json::to_value(&runs)?).code(if ok { EXIT_OK } else { EXIT_FALSIFIED }))
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Validation { .. } | Error::ConstructionMismatch(_) => EXIT_FALSIFIED,
        _ => EXIT_INPUT,
    }
}

fn emit(cli: &Cli, r: &Report, wrote_out: bool) -> std::io::Result<()> {
    let body = if cli.json {
        let mut j = json!({"schema": SCHEMA});
        if let (Some(o), Value::Object(m)) = (j.as_object_mut(), &r.json) {
            o.extend(m.clone());
        } else if let Some(o) = j.as_object_mut() {
            o.insert("result".into(), r.json.clone());
        }
        serde_json::to_string_pretty(&j).expect("serializable") + "\n"
    } else {
        format!("{}\n", r.text.trim_end())
    };
    match &cli.out {
        Some(path) if !wrote_out => std::fs::write(path, body),
        _ => std::io::stdout().write_all(body.as_bytes()),
    }
}

/// Runs a parsed command line; returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    if let Some(n) = cli.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Charpoly { input, budget } => charpoly_cmd(input, *budget).map(|r| (r, false)),
        Command::Lattice { input, max_rank, budget } => lattice_cmd(input, *max_rank, *budget).map(|r| (r, false)),
        Command::Profile { input } => profile_cmd(input).map(|r| (r, false)),
        Command::Certify {
            input,
            class,
            pool,
            depth,
            budget,
            cert_out,
        } => certify_cmd(input, *class, pool, *depth, *budget, cert_out.as_ref()).map(|r| (r, false)),
        Command::VerifyCert { input, cert } => verify_cert_cmd(input, cert).map(|r| (r, false)),
        Command::Sweep { input, exponents, ambient } => sweep_cmd(input, exponents, ambient.as_deref()).map(|r| (r, false)),
        Command::PaperVerify { sections } => paper_verify_cmd(sections, cli.seed).map(|r| (r, false)),
        Command::Catalog(c) => catalog_cmd(c, cli.out.as_ref()),
        Command::G31(c) => g31_cmd(c, cli.seed).map(|r| (r, false)),
    };
    match result {
        Ok((r, wrote_out)) => {
            if let Err(e) = emit(cli, &r, wrote_out) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            r.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
