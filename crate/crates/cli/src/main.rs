//! `qskein`: command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cluster_maps::{duality_x, run_suite, SuiteConfig, SUITES};
use laminations::{ALamination, LaminationJson, PLamination};
use quantum_torus::torus::{pointed_normalize_by, TorusElement};
use quantum_torus::Error;
use skein_engine::{cut_element, lamination_lift, SkeinEngine};
use surface_combinatorics::surface::{mat_mul, transpose, EdgeKind, Model};
use surface_combinatorics::{Curve, Multicurve, Triangulation, TriangulationJson};

#[derive(Parser)]
#[command(name = "qskein", version, about = "Quantum tori, skein algebras, traces and duality maps on marked surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct TriArg {
    /// Triangulation JSON file.
    #[arg(long)]
    tri: PathBuf,
}

#[derive(Args)]
struct TriLamArgs {
    /// Triangulation JSON file.
    #[arg(long)]
    tri: PathBuf,
    /// Lamination JSON file.
    #[arg(long)]
    lam: PathBuf,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    /// Total weight of non-peripheral arcs on disks.
    #[arg(long = "bound-weight")]
    weight: Option<i64>,
    /// Absolute bound on peripheral weights.
    #[arg(long = "bound-peripheral")]
    peripheral: Option<i64>,
    /// Winding bound on the annulus.
    #[arg(long = "bound-twist")]
    twist: Option<i64>,
    /// Chebyshev degree bound on the annulus.
    #[arg(long = "bound-degree")]
    degree: Option<i64>,
    /// Parallel copies per chord in the positivity sweep.
    #[arg(long = "bound-copies")]
    copies: Option<i64>,
    /// Distinct components per basis element in the positivity sweep.
    #[arg(long = "bound-components")]
    components: Option<usize>,
    /// Random sample size.
    #[arg(long = "bound-samples")]
    samples: Option<usize>,
    /// Largest n in the annulus formulas.
    #[arg(long = "bound-n")]
    n: Option<i64>,
    /// Disk sizes of the positivity sweep, comma separated.
    #[arg(long = "bound-disks", value_delimiter = ',')]
    disks: Option<Vec<u32>>,
}

impl Bounds {
    fn config(&self) -> SuiteConfig {
        let d = SuiteConfig::default();
        SuiteConfig {
            seed: self.seed,
            max_arcs: self.weight.unwrap_or(d.max_arcs),
            max_peripheral: self.peripheral.unwrap_or(d.max_peripheral),
            max_twist: self.twist.unwrap_or(d.max_twist),
            max_degree: self.degree.unwrap_or(d.max_degree),
            max_copies: self.copies.unwrap_or(d.max_copies),
            max_components: self.components.unwrap_or(d.max_components),
            samples: self.samples.unwrap_or(d.samples),
            annulus_samples: self.samples.map(|s| s.min(d.annulus_samples)).unwrap_or(d.annulus_samples),
            disks: self.disks.clone().unwrap_or(d.disks),
            max_n: self.n.unwrap_or(d.max_n),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exchange, compatibility and p matrices with their identities.
    Matrices(TriArg),
    /// Flip one or more interior edges in order.
    Flip {
        #[arg(long)]
        tri: PathBuf,
        /// Edge identifiers to flip, in order.
        #[arg(long = "edge", required = true)]
        edges: Vec<u32>,
    },
    /// a-coordinates and shear coordinates of an A-lamination.
    Coords(TriLamArgs),
    /// Quantum trace of an A-lamination in the square-root torus.
    Trace(TriLamArgs),
    /// The duality map on a congruent A-lamination.
    DualityA(TriLamArgs),
    /// The duality map on a P-lamination.
    DualityX(TriLamArgs),
    /// The cutting map on the skein lift of an A-lamination.
    Cut(TriLamArgs),
    /// Structure constants of two bracelets basis elements, e.g. `c0_2,c0_3^2` or `t1,b0^-1`.
    StructureConstants {
        /// `d<n>` for a disk or `a11` for the annulus.
        #[arg(long)]
        surface: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
    },
    /// Run a verification suite.
    Verify {
        /// One of square, trace-cut, flip-transport, positivity, annulus-formulas, allegretti.
        suite: String,
        #[command(flatten)]
        bounds: Bounds,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: Value,
}

fn input_error(context: &str, e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: json!({"error": "input", "context": context, "message": e.to_string()}) }
}

fn ctx(context: &'static str) -> impl Fn(Error) -> Failure {
    move |e| compute_error(context, e)
}

fn compute_error(context: &str, e: Error) -> Failure {
    Failure { code: 2, message: json!({"error": error_kind(&e), "context": context, "message": e.to_string()}) }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::LatticeMismatch => "lattice_mismatch",
        Error::NotPointed(_) => "not_pointed",
        Error::FlipNotAllowed(_) => "flip_not_allowed",
        Error::NotBalanced => "not_balanced",
        Error::OddExponent => "odd_exponent",
        Error::NotCongruent => "not_congruent",
        Error::Inadmissible(_) => "inadmissible",
        Error::OutOfScope(_) => "out_of_scope",
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(&path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| input_error(&path.display().to_string(), e))
}

fn load_tri(path: &Path) -> Result<Triangulation, Failure> {
    let j: TriangulationJson = read_json(path)?;
    Triangulation::from_json(&j).map_err(|e| compute_error(&path.display().to_string(), e))
}

fn load_a(path: &Path, tri: &Triangulation) -> Result<ALamination, Failure> {
    let j: LaminationJson = read_json(path)?;
    ALamination::from_json(&j, tri).map_err(|e| compute_error(&path.display().to_string(), e))
}

fn load_p(path: &Path, tri: &Triangulation) -> Result<PLamination, Failure> {
    let j: LaminationJson = read_json(path)?;
    PLamination::from_json(&j, tri).map_err(|e| compute_error(&path.display().to_string(), e))
}

fn parse_surface(s: &str) -> Result<Model, Failure> {
    match s {
        "a11" | "annulus" => Ok(Model::Annulus11),
        _ => s
            .strip_prefix('d')
            .and_then(|n| n.parse::<u32>().ok())
            .filter(|&n| n >= 3)
            .map(Model::Disk)
            .ok_or_else(|| input_error("surface", format!("unknown surface {s}"))),
    }
}

/// Parses `c0_2,b1,t-1^2,z^3` into a multicurve.
fn parse_multicurve(s: &str, model: Model) -> Result<Multicurve, Failure> {
    let mut m = Multicurve::empty();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (name, k) = match tok.split_once('^') {
            Some((n, k)) => (n, k.parse::<i64>().map_err(|e| input_error(tok, e))?),
            None => (tok, 1),
        };
        let bad = || input_error(tok, "expected c<i>_<j>, b<i>, t<k> or z");
        let c = if name == "z" {
            Curve::Loop
        } else if let Some(r) = name.strip_prefix('c') {
            let (i, j) = r.split_once('_').ok_or_else(bad)?;
            Curve::chord(i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?)
        } else if let Some(r) = name.strip_prefix('b') {
            Curve::Boundary(r.parse().map_err(|_| bad())?)
        } else if let Some(r) = name.strip_prefix('t') {
            Curve::Span(r.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        m.add(c, k);
    }
    m.validate(model).map_err(|e| compute_error(s, e))?;
    Ok(m)
}

fn torus_json(x: &TorusElement) -> Value {
    json!(x.to_json())
}

fn matrices(tri: &Triangulation) -> Value {
    let eps = tri.exchange_matrix();
    let pi = tri.compatibility_matrix();
    let p = tri.p_matrix();
    let antisym = |m: &[Vec<i64>]| (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == -m[j][i]));
    let ppp = mat_mul(&mat_mul(&p, &pi), &transpose(&p));
    let minus4: Vec<Vec<i64>> = eps.iter().map(|r| r.iter().map(|x| -4 * x).collect()).collect();
    let ep = mat_mul(&eps, &pi);
    let eps_pi = tri.edges.iter().enumerate().filter(|(_, e)| e.kind == EdgeKind::Interior).all(|(i, _)| {
        (0..tri.n()).all(|j| ep[i][j] == if i == j { 4 } else { 0 })
    });
    json!({
        "labels": tri.labels(),
        "epsilon": eps,
        "pi": pi,
        "p": p,
        "checks": {
            "epsilon_antisymmetric": antisym(&eps),
            "pi_antisymmetric": antisym(&pi),
            "p_pi_pt_equals_minus_4_epsilon": ppp == minus4,
            "epsilon_pi_equals_4_delta": eps_pi,
        }
    })
}

fn engine_for(tri: &Triangulation) -> Result<SkeinEngine, Failure> {
    match tri.model {
        Model::Abstract => Err(compute_error("triangulation", Error::OutOfScope("no skein model for this surface".into()))),
        m => Ok(SkeinEngine::new(m)),
    }
}

/// Runs a command; `Ok(false)` marks a verification failure.
fn run(cmd: &Command) -> Result<(Value, bool), Failure> {
    Ok(match cmd {
        Command::Matrices(a) => (matrices(&load_tri(&a.tri)?), true),
        Command::Flip { tri, edges } => {
            let mut t = load_tri(tri)?;
            let mut receipts = vec![];
            for &e in edges {
                let (next, r) = t.flip(e).map_err(ctx("flip"))?;
                receipts.push(json!({"old": r.old, "new": r.new}));
                t = next;
            }
            (json!({"triangulation": t.to_json(), "receipts": receipts}), true)
        }
        Command::Coords(a) => {
            let tri = load_tri(&a.tri)?;
            let l = load_a(&a.lam, &tri)?;
            let doubled = l.a_coords_doubled(&tri).map_err(ctx("a-coordinates"))?;
            let shear = l.tropical_ensemble().shear_coords(&tri).map_err(ctx("shear coordinates"))?;
            let congruent = doubled.iter().all(|x| x % 2 == 0);
            let a: Option<Vec<i64>> = congruent.then(|| doubled.iter().map(|x| x / 2).collect());
            (json!({"labels": tri.labels(), "a_doubled": doubled, "a": a, "congruent": congruent, "shear": shear}), true)
        }
        Command::Trace(a) => {
            let tri = load_tri(&a.tri)?;
            let l = load_a(&a.lam, &tri)?;
            let t = quantum_trace::trace_lamination(&l, &tri).map_err(ctx("trace"))?;
            let pointed = pointed_normalize_by(&t, |d| d.iter().all(|&v| v <= 0 && v % 2 == 0));
            let (lowest, verified) = match &pointed {
                Ok((_, m)) => (json!(m), t.coeff(m).is_one()),
                Err(_) => (Value::Null, false),
            };
            let mut v = torus_json(&t);
            v["pointed"] = json!({"lowest_exponents": lowest, "verified": verified});
            (v, true)
        }
        Command::DualityA(a) => {
            let tri = load_tri(&a.tri)?;
            let l = load_a(&a.lam, &tri)?;
            (torus_json(&quantum_trace::duality_a(&l, &tri).map_err(ctx("duality_a"))?), true)
        }
        Command::DualityX(a) => {
            let tri = load_tri(&a.tri)?;
            let lp = load_p(&a.lam, &tri)?;
            let engine = engine_for(&tri)?;
            (torus_json(&duality_x(&engine, &lp, &tri).map_err(ctx("duality_x"))?), true)
        }
        Command::Cut(a) => {
            let tri = load_tri(&a.tri)?;
            let l = load_a(&a.lam, &tri)?;
            let engine = engine_for(&tri)?;
            let s = lamination_lift(&l).map_err(ctx("skein lift"))?;
            (torus_json(&cut_element(&engine, &s, &tri).map_err(ctx("cut"))?), true)
        }
        Command::StructureConstants { surface, b1, b2 } => {
            let model = parse_surface(surface)?;
            let (m1, m2) = (parse_multicurve(b1, model)?, parse_multicurve(b2, model)?);
            let s = SkeinEngine::new(model).structure_constants(&m1, &m2).map_err(ctx("structure constants"))?;
            let terms: Vec<Value> =
                s.terms.iter().map(|(m, c)| json!({"basis": m.to_string(), "scalar": c})).collect();
            let positive = s.is_positive();
            (json!({"b1": m1.to_string(), "b2": m2.to_string(), "terms": terms, "positive": positive}), true)
        }
        Command::Verify { suite, bounds } => {
            let cfg = bounds.config();
            let s = run_suite(suite, &cfg).ok_or_else(|| {
                input_error("suite", format!("unknown suite {suite}; expected one of {}", SUITES.join(", ")))
            })?;
            let ok = s.all_passed();
            (json!({"config": cfg, "summary": s}), ok)
        }
    })
}

fn tsv(v: &Value) -> String {
    let mut out = String::new();
    if let Some(terms) = v.get("terms").and_then(Value::as_array) {
        for t in terms {
            let left = t.get("coords").or_else(|| t.get("basis")).cloned().unwrap_or(Value::Null);
            let left = match left {
                Value::Array(a) => a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                Value::String(s) => s,
                other => other.to_string(),
            };
            out.push_str(&format!("{}\t{}\n", left, t.get("scalar").cloned().unwrap_or(Value::Null)));
        }
        return out;
    }
    if let Some(s) = v.get("summary") {
        out.push_str("suite\tcases\tpassed\tfailed\n");
        let n = |k: &str| s.get(k).cloned().unwrap_or(Value::Null);
        let failed = s.get("failures").and_then(Value::as_array).map_or(0, Vec::len);
        out.push_str(&format!("{}\t{}\t{}\t{}\n", n("suite").as_str().unwrap_or(""), n("cases"), n("passed"), failed));
        return out;
    }
    if let Value::Object(map) = v {
        for (k, x) in map {
            out.push_str(&format!("{k}\t{x}\n"));
        }
    }
    out
}

fn emit(cli: &Cli, v: &Value) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")),
        Format::Tsv => tsv(v),
    };
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| input_error(&p.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command).and_then(|(v, ok)| emit(&cli, &v).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f.message).expect("json values serialize"));
            ExitCode::from(f.code)
        }
    }
}
