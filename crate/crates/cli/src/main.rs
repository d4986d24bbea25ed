//! `wbrauer`: command-line front end for the walled-brauer library.
//!
//! Every command prints one JSON document on standard output (`blocks --csv`
//! prints CSV instead). Exit status: 0 on success, 1 on a domain error or a
//! failed verification, 2 on a usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use walled_brauer::blocks::{self, AlgebraParams};
use walled_brauer::cell::{self, CellLabel, CellModule};
use walled_brauer::combinatorics::factorial;
use walled_brauer::diagram::WalledDiagram;
use walled_brauer::geometry::{self, GeometryContext};
use walled_brauer::verify::{self, Suite, SweepSpec, DEFAULT_SEED};
use walled_brauer::{Bipartition, DeltaValue, Error, Partition, Poly, ScalarContext};

const SCHEMA_VERSION: &str = "wbrauer-cli/1";
const OUT_ENV: &str = "WBRAUER_OUT";

#[derive(Parser)]
#[command(name = "wbrauer", version, about = "Walled Brauer algebras: diagrams, cell modules, blocks")]
struct Cli {
    /// Print the output schemas and exit.
    #[arg(long)]
    schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct Ambient {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Args, Clone)]
struct Params {
    #[command(flatten)]
    ambient: Ambient,
    /// Integer, `a/b`, or `symbolic`.
    #[arg(long, allow_hyphen_values = true)]
    delta: DeltaValue,
    /// 0 or a prime.
    #[arg(long, default_value_t = 0)]
    p: u64,
}

#[derive(Args, Clone)]
struct OptParams {
    #[command(flatten)]
    ambient: Ambient,
    #[arg(long, allow_hyphen_values = true, default_value = "symbolic")]
    delta: DeltaValue,
    #[arg(long, default_value_t = 0)]
    p: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two diagrams (JSON `{"r","s","edges"}`), `a` on top.
    Mult {
        #[command(flatten)]
        params: OptParams,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Dimension of the algebra, or of a cell module with `--left/--right`.
    Dim {
        #[command(flatten)]
        ambient: Ambient,
        /// Partition as a JSON array, e.g. `[2,1]`.
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
    },
    /// Gram matrix and determinant of a cell module.
    Gram {
        #[command(flatten)]
        params: OptParams,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Semisimplicity verdict with the deciding clause.
    Semisimple {
        #[command(flatten)]
        params: Params,
    },
    /// Block classes of cell labels.
    Blocks {
        #[command(flatten)]
        params: Params,
        /// One CSV row per label instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// W- and W_p-orbit tests for two bipartitions
    /// (JSON `{"left":[..],"right":[..]}`).
    Orbit {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Linkage (necessary condition only) for two bipartitions.
    Linkage {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Dimension of Hom between two cell modules.
    Homdim {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
    },
    /// Run verification suites and write JSON and CSV reports.
    Verify {
        /// Suite names (comma separated or repeated); `all` for every suite.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 0)]
        rmin: usize,
        #[arg(long, default_value_t = 2)]
        rmax: usize,
        #[arg(long, default_value_t = 0)]
        smin: usize,
        #[arg(long, default_value_t = 2)]
        smax: usize,
        /// Cap on r + s.
        #[arg(long)]
        total_max: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        delta: Vec<DeltaValue>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        p: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Report directory; defaults to $WBRAUER_OUT, then the current directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Domain(Error),
    Input(String),
    Io(String),
    /// Verification ran but something failed; the report is already printed.
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPartition(_) => "invalid-partition",
        Error::DegreeMismatch(..) => "degree-mismatch",
        Error::InvalidDiagram(_) => "invalid-diagram",
        Error::AmbientMismatch(..) => "ambient-mismatch",
        Error::BoundExceeded { .. } => "bound-exceeded",
        Error::IdempotentUnavailable(_) => "idempotent-unavailable",
        Error::InvalidLabel(_) => "invalid-label",
        Error::WallCrossing(_) => "wall-crossing",
        Error::InvalidPermutation(_) => "invalid-permutation",
        Error::Unsupported(_) => "unsupported",
        Error::NotBalanced(_) => "not-balanced",
        Error::InvalidWeight(_) => "invalid-weight",
        Error::Parse(_) => "parse",
    }
}

type Output = std::result::Result<Emit, Failure>;

enum Emit {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.schema {
        println!("{}", serde_json::to_string_pretty(&schema()).expect("schema serializes"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand or --schema is required (see --help)");
        return ExitCode::from(2);
    };
    match run(command) {
        Ok(Emit::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Emit::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(f) => {
            let (kind, message) = match f {
                Failure::Domain(e) => (error_kind(&e), e.to_string()),
                Failure::Input(m) => ("input", m),
                Failure::Io(m) => ("io", m),
                Failure::Verify => unreachable!(),
            };
            println!("{}", json!({ "error": { "kind": kind, "message": message } }));
            ExitCode::from(1)
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("--{what}: {e}")))
}

fn validated(r: usize, s: usize, delta: &DeltaValue, p: u64) -> std::result::Result<AlgebraParams, Failure> {
    Ok(AlgebraParams::new(r, s, delta.clone(), p)?)
}

fn geometry_ctx(params: &AlgebraParams) -> std::result::Result<GeometryContext, Failure> {
    let d = params.integral_delta().ok_or_else(|| {
        Failure::Domain(Error::Unsupported(format!(
            "weight geometry needs an integral δ, got {}",
            params.delta
        )))
    })?;
    Ok(GeometryContext::new(params.r, params.s, d, params.p)?)
}

fn coeffs(poly: &Poly) -> Value {
    match poly.to_i64_coeffs() {
        Some(c) => json!(c),
        None => json!(poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
    }
}

/// `poly` at the run's δ, as a string (`a/b` over Q, a residue over F_p).
fn evaluate(poly: &Poly, params: &AlgebraParams) -> Option<String> {
    if params.p == 0 {
        params.delta.as_rational().map(|q| poly.eval_rational(&q).to_string())
    } else {
        let d = params.integral_delta()?.rem_euclid(params.p as i64) as u64;
        Some(poly.eval_mod(d, params.p).to_string())
    }
}

fn run(command: Command) -> Output {
    match command {
        Command::Mult { params, a, b } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let a: WalledDiagram = parse_json("a", &a)?;
            let b: WalledDiagram = parse_json("b", &b)?;
            for d in [&a, &b] {
                if d.ambient() != (r, s) {
                    return Err(Error::AmbientMismatch(r, s, d.r(), d.s()).into());
                }
            }
            let (loops, d) = a.multiply(&b)?;
            let power = Poly::monomial(1, loops);
            Ok(Emit::Json(json!({
                "loops": loops,
                "diagram": d,
                "coefficient": coeffs(&power),
                "value": evaluate(&power, &alg),
            })))
        }
        Command::Dim { ambient, left, right } => {
            let Ambient { r, s } = ambient;
            match (left, right) {
                (Some(l), Some(rt)) => {
                    let left: Partition = parse_json("left", &l)?;
                    let right: Partition = parse_json("right", &rt)?;
                    let label = CellLabel::new(r, s, Bipartition::new(left, right))?;
                    Ok(Emit::Json(json!({ "dimension": cell::cell_dim(&label) })))
                }
                _ => {
                    if r + s > 20 {
                        return Err(Error::BoundExceeded { what: "r + s", value: r + s, bound: 20 }.into());
                    }
                    Ok(Emit::Json(json!({ "dimension": factorial(r + s) })))
                }
            }
        }
        Command::Gram { params, left, right } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let left: Partition = parse_json("left", &left)?;
            let right: Partition = parse_json("right", &right)?;
            let label = CellLabel::new(r, s, Bipartition::new(left, right))?;
            let module = CellModule::build(&label)?;
            let gram = module.gram();
            let matrix: Vec<Vec<Value>> = gram.to_rows().iter().map(|row| row.iter().map(coeffs).collect()).collect();
            let det = module.gram_det();
            Ok(Emit::Json(json!({
                "label": label,
                "dimension": module.dim(),
                "gram": matrix,
                "determinant": coeffs(&det),
                "integer_roots": det.integer_roots(),
                "determinant_at_delta": evaluate(&det, &alg),
            })))
        }
        Command::Semisimple { params } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            if alg.delta == DeltaValue::Symbolic {
                return Err(Error::Unsupported("semisimplicity depends on δ; choose a value".into()).into());
            }
            Ok(Emit::Json(serde_json::to_value(blocks::is_semisimple(&alg)).expect("verdict serializes")))
        }
        Command::Blocks { params, csv } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let report = blocks::block_partition(&alg)?;
            if csv {
                return blocks_csv(&report).map(Emit::Text);
            }
            let classes: Vec<Value> = report
                .classes
                .iter()
                .enumerate()
                .map(|(id, c)| {
                    json!({
                        "id": id,
                        "labels": c.labels.iter().map(|l| json!({
                            "t": l.t, "left": l.bip.left, "right": l.bip.right,
                        })).collect::<Vec<_>>(),
                        "minimal": c.minimal,
                    })
                })
                .collect();
            Ok(Emit::Json(json!({
                "r": r, "s": s, "delta": alg.delta, "p": alg.p, "classes": classes,
            })))
        }
        Command::Orbit { params, lam, mu } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let lam: Bipartition = parse_json("lam", &lam)?;
            let mu: Bipartition = parse_json("mu", &mu)?;
            let ctx = geometry_ctx(&alg)?;
            let a = geometry::to_weight(&lam, &ctx)?;
            let b = geometry::to_weight(&mu, &ctx)?;
            let w_orbit = geometry::same_w_orbit(&a, &b, &ctx)?;
            let (wp_orbit, matching) = if alg.p == 0 {
                (Value::Null, Value::Null)
            } else {
                let m = geometry::wp_orbit_matching(&a, &b, &ctx)?;
                (json!(m.is_some()), json!(m))
            };
            Ok(Emit::Json(json!({
                "lam_weight": a.to_string(),
                "mu_weight": b.to_string(),
                "w_orbit": w_orbit,
                "wp_orbit": wp_orbit,
                "matching": matching,
            })))
        }
        Command::Linkage { params, lam, mu } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let lam: Bipartition = parse_json("lam", &lam)?;
            let mu: Bipartition = parse_json("mu", &mu)?;
            let ctx = geometry_ctx(&alg)?;
            let allowed = geometry::linkage_allows(&lam, &mu, &ctx)?;
            Ok(Emit::Json(json!({ "linkage_allows": allowed, "necessary_only": true })))
        }
        Command::Homdim { params, src, tgt } => {
            let Ambient { r, s } = params.ambient;
            let alg = validated(r, s, &params.delta, params.p)?;
            let src: Bipartition = parse_json("src", &src)?;
            let tgt: Bipartition = parse_json("tgt", &tgt)?;
            let ctx = ScalarContext::new(&alg.delta, alg.p)?;
            let a = CellModule::build(&CellLabel::new(r, s, src)?)?;
            let b = CellModule::build(&CellLabel::new(r, s, tgt)?)?;
            let n = cell::hom_space_dim_in(&ctx, &a, &b)?;
            Ok(Emit::Json(json!({ "hom_dim": n })))
        }
        Command::Verify { suite, rmin, rmax, smin, smax, total_max, delta, p, seed, samples, out } => {
            let mut suites = Vec::new();
            for name in &suite {
                if name == "all" {
                    suites.extend_from_slice(&Suite::ALL);
                } else {
                    suites.push(name.parse::<Suite>()?);
                }
            }
            suites.dedup();
            for d in &delta {
                for &q in &p {
                    if *d != DeltaValue::Symbolic {
                        validated(rmin, smin, d, q)?;
                    } else if q != 0 && !walled_brauer::scalar::is_prime(q) {
                        validated(rmin, smin, &DeltaValue::Integer(0), q)?;
                    }
                }
            }
            let spec = SweepSpec {
                suites,
                r_range: (rmin, rmax),
                s_range: (smin, smax),
                total_max,
                deltas: delta,
                primes: p,
                seed,
                samples,
            };
            let report = verify::run_suite(&spec);
            let dir = out
                .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            let json_path = dir.join("verify_report.json");
            let csv_path = dir.join("verify_report.csv");
            std::fs::write(&json_path, report.to_json())
                .map_err(|e| Failure::Io(format!("{}: {e}", json_path.display())))?;
            std::fs::write(&csv_path, report.to_csv())
                .map_err(|e| Failure::Io(format!("{}: {e}", csv_path.display())))?;
            let summary = json!({
                "format": report.format,
                "passed": report.passed,
                "summary": report.summary,
                "json": json_path,
                "csv": csv_path,
            });
            println!("{summary}");
            if report.passed {
                Ok(Emit::Text(String::new()))
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn blocks_csv(report: &blocks::BlockReport) -> std::result::Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(["t", "left", "right", "class", "minimal"]).map_err(io)?;
    for (id, class) in report.classes.iter().enumerate() {
        let minimal = class.minimal.as_ref().map(|m| m.to_string()).unwrap_or_default();
        for l in &class.labels {
            w.write_record([l.t.to_string(), l.bip.left.to_string(), l.bip.right.to_string(), id.to_string(), minimal.clone()])
                .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn schema() -> Value {
    let bip = json!({ "left": "array<uint>", "right": "array<uint>" });
    let error = json!({ "error": { "kind": "string", "message": "string" } });
    json!({
        "version": SCHEMA_VERSION,
        "error": error,
        "commands": {
            "mult": {
                "loops": "uint",
                "diagram": { "r": "uint", "s": "uint", "edges": "array<[node, node]>" },
                "coefficient": "array<int> (ascending powers of δ)",
                "value": "string|null",
            },
            "dim": { "dimension": "uint" },
            "gram": {
                "label": { "r": "uint", "s": "uint", "t": "uint", "bip": bip },
                "dimension": "uint",
                "gram": "array<array<array<int>>>",
                "determinant": "array<int> (ascending powers of δ)",
                "integer_roots": "array<int>|null",
                "determinant_at_delta": "string|null",
            },
            "semisimple": {
                "semisimple": "bool",
                "clause": "not-sigma-semisimple|non-integer-delta|large-delta|one-sided|delta0-exceptional|none",
            },
            "blocks": {
                "r": "uint", "s": "uint", "delta": "int|string", "p": "uint",
                "classes": [{ "id": "uint", "labels": [{ "t": "uint", "left": "array<uint>", "right": "array<uint>" }], "minimal": "bipartition|null" }],
                "csv_columns": ["t", "left", "right", "class", "minimal"],
            },
            "orbit": {
                "lam_weight": "string", "mu_weight": "string",
                "w_orbit": "bool", "wp_orbit": "bool|null", "matching": "array<[int, int]>|null",
            },
            "linkage": { "linkage_allows": "bool", "necessary_only": "bool" },
            "homdim": { "hom_dim": "uint" },
            "verify": {
                "format": verify::REPORT_FORMAT,
                "passed": "bool",
                "summary": "array<suite summary>",
                "json": "path",
                "csv": "path",
            },
        },
    })
}
