//! Command-line surface over the library: file-based invariants, catalog
//! generation, classification with replayable witnesses, equivalence
//! testing, enumeration, and the verification suites.
//!
//! Exit codes: 0 on success / all checks pass, 1 when a claim fails (not
//! equivalent, volume outside the catalog, failing suite), 2 on malformed
//! input or invalid parameters.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use smallvol::catalog::{
    classify, half_sum_invariant, make_polytope, spans_lattice, strip_pyramids, FamilyId,
    Outcome, DEFAULT_BUDGET,
};
use smallvol::ehrhart::delta_of_polytope;
use smallvol::enumerate::enumerate_simplices;
use smallvol::equiv::{are_equivalent, EquivOutcome};
use smallvol::io::{MapFile, PolytopeFile, TransformFile, WitnessFile};
use smallvol::polytope::LatticePolytope;
use smallvol::verify::{run_suite, VerifyOptions, SUITE_NAMES};
use smallvol::{Error, Result};

#[derive(Parser)]
#[command(
    name = "smallvol",
    version,
    about = "Exact invariants of lattice polytopes and the classification of normalized volume <= 4"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print delta-vector, volume, spanning flag, pyramid layers, half-sum
    Invariants {
        /// Polytope file: {"name": optional, "dim": int, "vertices": [[int]]}
        file: PathBuf,
        /// Emit machine-readable JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Write a catalog polytope to stdout as a polytope file
    Generate {
        /// Family id, e.g. Δ2 (or D2), Δ41, P2, Q4_9, A4_1, B4
        family: String,
        /// First exponent parameter (simplex families)
        #[arg(long)]
        i1: Option<i64>,
        /// Second exponent parameter
        #[arg(long)]
        i2: Option<i64>,
        /// Third exponent parameter
        #[arg(long)]
        i3: Option<i64>,
        /// Degree parameter of the non-spanning families (k >= 2)
        #[arg(long)]
        k: Option<i64>,
        /// Name stored in the output file (defaults to the family label)
        #[arg(long)]
        name: Option<String>,
    },
    /// Identify a polytope as a pyramid tower over a catalog entry
    Classify {
        file: PathBuf,
        /// Node budget for the equivalence search
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Emit outcome and witness chain as JSON
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two polytopes are related by an affine unimodular map
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Node budget for the search; exhausting it exits 1 as indeterminate
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Emit outcome and witness map as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite against the published claims
    Verify {
        /// One of: tables, matrices, feasibility, enumeration, lemmas,
        /// oracle, roundtrip, all
        suite: String,
        /// Largest simplex dimension exercised
        #[arg(long)]
        dmax: Option<usize>,
        /// Largest k for the parameterized families
        #[arg(long)]
        kmax: Option<i64>,
        /// Node budget per equivalence search
        #[arg(long)]
        budget: Option<u64>,
        /// Use the commonly quoted volume-3 feasibility inequalities verbatim
        #[arg(long)]
        as_printed: bool,
        /// Seed for the randomized checks
        #[arg(long)]
        seed: Option<u64>,
        /// Emit the full report as JSON
        #[arg(long)]
        json: bool,
    },
    /// List unimodular classes of lattice simplices of small volume
    Enumerate {
        /// Largest dimension to sweep
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        /// Largest normalized volume
        #[arg(long, default_value_t = 4)]
        vmax: i64,
        /// Emit one record per class as JSON
        #[arg(long)]
        json: bool,
    },
    /// Apply a map file or a classification witness to a polytope
    Apply {
        /// Either {"matrix": [[int]], "translation": [int]} or {"stages": [...]}
        transform: PathBuf,
        file: PathBuf,
    },
}

/// Writes a line to stdout; when the reader has gone away (e.g. piping into
/// `head`) the process dies quietly with the conventional SIGPIPE code
/// instead of panicking.
fn emit(args: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|()| out.write_all(b"\n")).is_err() {
        std::process::exit(141);
    }
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

fn read_polytope_file(path: &Path) -> Result<PolytopeFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PolytopeFile::from_json(&text)
}

/// Full-dimensional model of the input; degenerate polytopes are measured
/// inside their own affine lattice.
fn load_normalized(path: &Path) -> Result<(Option<String>, LatticePolytope)> {
    let pf = read_polytope_file(path)?;
    let p = pf.to_polytope()?;
    let q = if p.affine_rank()? == p.dim() { p } else { p.normalized()?.0 };
    Ok((pf.name, q))
}

fn cmd_invariants(file: &Path, as_json: bool) -> Result<ExitCode> {
    let (name, p) = load_normalized(file)?;
    let delta = delta_of_polytope(&p)?;
    let vol = delta.volume()?;
    let spans = spans_lattice(&p)?;
    let (_, pyramids, _) = strip_pyramids(&p)?;
    let half_sum = half_sum_invariant(&p)?;
    if as_json {
        let doc = json!({
            "name": name,
            "dim": p.dim(),
            "delta": {
                "polynomial": delta.polynomial(),
                "coefficients": delta.coeffs(),
            },
            "vol": vol,
            "spans": spans,
            "pyramids": pyramids,
            "half_sum": half_sum,
        });
        outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        outln!(
            "delta: {}, vol: {vol}, spans: {spans}, pyramids: {pyramids}, half-sum: {half_sum}",
            delta.polynomial()
        );
        outln!("delta coefficients: {:?}", delta.coeffs());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(
    family: &str,
    i1: Option<i64>,
    i2: Option<i64>,
    i3: Option<i64>,
    k: Option<i64>,
    name: Option<String>,
) -> Result<ExitCode> {
    let family: FamilyId = family.parse()?;
    let supplied = [("i1", i1), ("i2", i2), ("i3", i3), ("k", k)];
    let mut params = Vec::new();
    for want in family.param_names() {
        let (_, value) = supplied
            .iter()
            .find(|(n, _)| n == want)
            .expect("parameter names are drawn from the supplied flags");
        match value {
            Some(v) => params.push(*v),
            None => {
                return Err(Error::BadInput(format!("{family} requires --{want}")));
            }
        }
    }
    for (n, value) in supplied {
        if value.is_some() && !family.param_names().contains(&n) {
            return Err(Error::BadInput(format!("{family} does not take --{n}")));
        }
    }
    let p = make_polytope(family, &params)?;
    let label = name.unwrap_or_else(|| {
        if params.is_empty() {
            family.to_string()
        } else {
            let named: Vec<String> = family
                .param_names()
                .iter()
                .zip(&params)
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            format!("{family}({})", named.join(","))
        }
    });
    outln!("{}", PolytopeFile::new(Some(label), &p).to_json());
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(file: &Path, budget: u64, as_json: bool) -> Result<ExitCode> {
    let pf = read_polytope_file(file)?;
    let p = pf.to_polytope()?;
    let c = classify(&p, budget)?;
    if as_json {
        let outcome = match &c.outcome {
            Outcome::Catalog { family, params } => {
                let named: serde_json::Map<String, serde_json::Value> = family
                    .param_names()
                    .iter()
                    .zip(params)
                    .map(|(n, v)| (n.to_string(), json!(v)))
                    .collect();
                json!({"kind": "catalog", "family": family.to_string(), "params": named})
            }
            Outcome::UnitSimplex { dim } => json!({"kind": "unit-simplex", "dim": dim}),
            Outcome::VolumeExceedsFour { volume } => {
                json!({"kind": "volume-exceeds-4", "volume": volume})
            }
        };
        let doc = json!({
            "outcome": outcome,
            "pyramids": c.pyramid_layers,
            "witness": WitnessFile { stages: c.witness.clone() },
        });
        outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        outln!("{c}");
    }
    Ok(match c.outcome {
        Outcome::VolumeExceedsFour { .. } => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn cmd_equiv(first: &Path, second: &Path, budget: u64, as_json: bool) -> Result<ExitCode> {
    let (_, p) = load_normalized(first)?;
    let (_, q) = load_normalized(second)?;
    if p.dim() != q.dim() {
        if as_json {
            let doc = json!({"equivalent": false, "details": format!(
                "intrinsic dimensions differ: {} vs {}", p.dim(), q.dim())});
            outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            outln!("not equivalent (intrinsic dimensions {} and {})", p.dim(), q.dim());
        }
        return Ok(ExitCode::from(1));
    }
    match are_equivalent(&p, &q, budget)? {
        EquivOutcome::Equivalent(w) => {
            if as_json {
                let doc = json!({
                    "equivalent": true,
                    "map": MapFile::new(&w.map),
                    "correspondence": w.correspondence,
                });
                outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                outln!("equivalent");
            }
            Ok(ExitCode::SUCCESS)
        }
        EquivOutcome::NotEquivalent => {
            if as_json {
                let doc = json!({"equivalent": false});
                outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                outln!("not equivalent");
            }
            Ok(ExitCode::from(1))
        }
        EquivOutcome::Indeterminate => {
            if as_json {
                let doc = json!({"equivalent": null, "details": "budget exhausted"});
                outln!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                outln!("indeterminate (budget {budget} exhausted; raise --budget)");
            }
            Ok(ExitCode::from(1))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    dmax: Option<usize>,
    kmax: Option<i64>,
    budget: Option<u64>,
    as_printed: bool,
    seed: Option<u64>,
    as_json: bool,
) -> Result<ExitCode> {
    let mut opts = VerifyOptions::default();
    if let Some(d) = dmax {
        opts.dmax = d;
    }
    if let Some(k) = kmax {
        opts.kmax = k;
    }
    if let Some(b) = budget {
        opts.budget = b;
    }
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts.as_printed = as_printed;
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut reports = Vec::with_capacity(names.len());
    for name in names {
        reports.push(run_suite(name, &opts)?);
    }
    let mut failed = false;
    if as_json {
        if reports.len() == 1 {
            outln!("{}", reports[0].to_json());
        } else {
            outln!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
        }
        failed = reports.iter().any(|r| r.exit_code() != 0);
    } else {
        for r in &reports {
            outln!("{}", r.render_text().trim_end_matches('\n'));
            failed |= r.exit_code() != 0;
        }
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_enumerate(dmax: usize, vmax: i64, as_json: bool) -> Result<ExitCode> {
    let mut docs = Vec::new();
    for d in 1..=dmax {
        let classes = enumerate_simplices(d, vmax)?;
        if as_json {
            for c in &classes {
                docs.push(json!({
                    "dim": c.dim,
                    "vol": c.volume,
                    "exponents": c.exponents,
                    "pyramid": c.is_pyramid,
                    "vertices": c.representative.vertices(),
                }));
            }
        } else {
            let mut by_volume = vec![0usize; (vmax + 1).max(0) as usize + 1];
            for c in &classes {
                by_volume[c.volume as usize] += 1;
            }
            let parts: Vec<String> = (2..=vmax)
                .filter(|&v| by_volume[v as usize] > 0)
                .map(|v| format!("vol {v}: {}", by_volume[v as usize]))
                .collect();
            outln!(
                "d={d}: {} classes ({})",
                classes.len(),
                if parts.is_empty() { "none".to_string() } else { parts.join(", ") }
            );
        }
    }
    if as_json {
        outln!("{}", serde_json::to_string_pretty(&docs).expect("serializable"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_apply(transform: &Path, file: &Path) -> Result<ExitCode> {
    let text = fs::read_to_string(transform)
        .map_err(|e| Error::Io(format!("{}: {e}", transform.display())))?;
    let t = TransformFile::from_json(&text)?;
    let pf = read_polytope_file(file)?;
    let p = pf.to_polytope()?;
    let image = match t {
        TransformFile::Map(m) => p.apply(&m.to_map()?)?,
        TransformFile::Witness(w) => smallvol::catalog::replay_witness(&p, &w.stages)?,
    };
    outln!("{}", PolytopeFile::new(pf.name, &image).to_json());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Invariants { file, json } => cmd_invariants(&file, json),
        Cmd::Generate { family, i1, i2, i3, k, name } => {
            cmd_generate(&family, i1, i2, i3, k, name)
        }
        Cmd::Classify { file, budget, json } => cmd_classify(&file, budget, json),
        Cmd::Equiv { first, second, budget, json } => cmd_equiv(&first, &second, budget, json),
        Cmd::Verify { suite, dmax, kmax, budget, as_printed, seed, json } => {
            cmd_verify(&suite, dmax, kmax, budget, as_printed, seed, json)
        }
        Cmd::Enumerate { dmax, vmax, json } => cmd_enumerate(dmax, vmax, json),
        Cmd::Apply { transform, file } => cmd_apply(&transform, &file),
    }
}

/// 1 for failed mathematical claims, 2 for anything wrong with the input.
fn failure_code(e: &Error) -> ExitCode {
    match e {
        Error::VolumeExceedsFour { .. } | Error::NoCatalogMatch { .. } => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            failure_code(&e)
        }
    }
}
