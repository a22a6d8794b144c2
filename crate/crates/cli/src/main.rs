//! ekrtool: construct extended Reed-Solomon codes, compute exact
//! hyperplane-avoidance spectra, check EKR-type properties and bounds, run
//! exact intersecting-family searches, and build translation schemes with
//! their eigenvalue matrices.
//!
//! Exit codes: 0 success (including computed `false` answers), 1 when
//! verification of a claimed artifact fails, 2 on usage errors, 3 when a
//! resource cap is exceeded.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use ekr_core::codes::{mds_weight_distribution, ExtendOutcome, LinearCode};
use ekr_core::config::Caps;
use ekr_core::ekr;
use ekr_core::gf::Field;
use ekr_core::nrc;
use ekr_core::schemes::{self, SchemeFamily};
use ekr_core::search;
use ekr_core::spectral::{self, AvoidSet, CodeGeometry};
use ekr_core::Error;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "ekrtool", version, about, max_term_width = 100)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Directory for cached avoid sets, created lazily.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap on enumerated vectors q^k.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    enum_cap: u64,
    /// Cap on search-graph vertices.
    #[arg(long, global = true, default_value_t = 10_000)]
    search_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a finite field and optionally dump its tables.
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        h: u32,
        /// Also emit the full addition and multiplication tables.
        #[arg(long)]
        table: bool,
    },
    /// Code constructions.
    Code {
        #[command(subcommand)]
        what: CodeCommand,
    },
    /// Hyperplane profile of the normal rational curve.
    Nrc {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[command(subcommand)]
        action: NrcAction,
    },
    /// Exact spectra of the avoidance graphs on a code.
    Spectrum {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = GraphKind::Gamma0)]
        graph: GraphKind,
        /// Comma-separated admissible intersection counts for gammat.
        #[arg(long = "T")]
        t_set: Option<String>,
        /// Star coordinate for the bipartite graph.
        #[arg(long)]
        i: Option<usize>,
        /// Re-verify the spectrum by eigenvector identities and trace moments.
        #[arg(long)]
        verify: bool,
    },
    /// EKR property checks on ERS(q, k).
    Ekr {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[command(subcommand)]
        action: EkrAction,
    },
    /// Upper bounds for t-intersecting families of degree-k forms.
    Bounds {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Exact maximum t-intersecting family search.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        /// Enumerate and classify all maximum families.
        #[arg(long)]
        census: bool,
        /// Abort the search after this many seconds.
        #[arg(long)]
        timeout: Option<u64>,
        /// Write a re-verifiable certificate of the witness family.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Re-verify a search certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Translation schemes on homogeneous polynomials.
    Scheme {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        q: u32,
        /// Match the enumerated matrices against the closed-form tables.
        #[arg(long)]
        verify: bool,
        /// Clique bound for a relation set, e.g. "R3" or "R1,R2".
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Stability-hypothesis evaluation for ERS(q, k).
    Stability {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum CodeCommand {
    /// The extended Reed-Solomon code of degree k over F_q.
    Ers {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        /// Extend by the points on no avoiding hyperplane.
        #[arg(long)]
        extend: bool,
        /// Include the enumerated and closed-form weight distributions.
        #[arg(long)]
        wdist: bool,
    },
}

#[derive(Subcommand)]
enum NrcAction {
    /// Hyperplane-intersection counts against the closed form.
    Profile,
    /// Per-point profiles and deviation summary.
    St,
}

#[derive(Subcommand, Clone, Copy)]
enum EkrAction {
    Check {
        #[arg(value_enum)]
        which: EkrCheck,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EkrCheck {
    Weak,
    Module,
    Strict,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Gamma0,
    Gammat,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Hom2,
    Hom3,
    Ternary2,
}

impl From<FamilyArg> for SchemeFamily {
    fn from(f: FamilyArg) -> SchemeFamily {
        match f {
            FamilyArg::Hom2 => SchemeFamily::Hom2,
            FamilyArg::Hom3 => SchemeFamily::Hom3,
            FamilyArg::Ternary2 => SchemeFamily::Ternary2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::TooLarge { .. } | Error::Timeout(_) => 3,
        Error::NotPrime(_)
        | Error::OrderTooLarge(_)
        | Error::BadParameters(_)
        | Error::DegreeTooLarge { .. }
        | Error::BadRelationSet(_) => 2,
        _ => 1,
    }
}

fn caps_of(cli: &Cli) -> Caps {
    Caps {
        enumeration: cli.enum_cap,
        moment_check: cli.enum_cap.min(200_000),
        census_vertices: cli.search_cap.min(2_048),
        search_vertices: cli.search_cap,
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, table: impl FnOnce()) -> Result<(), Error> {
    match cli.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(value)
                .map_err(|e| Error::BadParameters(format!("serialization failed: {e}")))?;
            println!("{text}");
        }
        Format::Table => table(),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Error> {
    let caps = caps_of(cli);
    match &cli.command {
        Command::Field { p, h, table } => cmd_field(cli, *p, *h, *table),
        Command::Code {
            what: CodeCommand::Ers { q, k, extend, wdist },
        } => cmd_code_ers(cli, &caps, *q, *k, *extend, *wdist),
        Command::Nrc { q, k, action } => match action {
            NrcAction::Profile => cmd_nrc_profile(cli, &caps, *q, *k),
            NrcAction::St => cmd_nrc_st(cli, &caps, *q, *k),
        },
        Command::Spectrum {
            q,
            k,
            graph,
            t_set,
            i,
            verify,
        } => cmd_spectrum(cli, &caps, *q, *k, *graph, t_set.as_deref(), *i, *verify),
        Command::Ekr { q, k, action } => {
            let EkrAction::Check { which } = action;
            cmd_ekr(cli, &caps, *q, *k, *which)
        }
        Command::Bounds { q, k, t } => cmd_bounds(cli, &caps, *q, *k, *t),
        Command::Search {
            q,
            k,
            t,
            census,
            timeout,
            cert,
        } => cmd_search(cli, &caps, *q, *k, *t, *census, *timeout, cert.as_deref()),
        Command::Verify { cert } => cmd_verify(cli, cert),
        Command::Scheme {
            family,
            q,
            verify,
            bounds,
        } => cmd_scheme(cli, &caps, (*family).into(), *q, *verify, bounds.as_deref()),
        Command::Stability { q, k } => cmd_stability(cli, &caps, *q, *k),
    }
}

fn rational_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize)]
struct FieldOut {
    schema_version: u32,
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    add: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mul: Option<Vec<Vec<u32>>>,
}

fn cmd_field(cli: &Cli, p: u32, h: u32, table: bool) -> Result<(), Error> {
    let field = Field::new(p, h)?;
    let q = field.q();
    let (add, mul) = if table {
        let add = (0..q)
            .map(|a| (0..q).map(|b| field.add(a, b)).collect())
            .collect();
        let mul = (0..q)
            .map(|a| (0..q).map(|b| field.mul(a, b)).collect())
            .collect();
        (Some(add), Some(mul))
    } else {
        (None, None)
    };
    let out = FieldOut {
        schema_version: SCHEMA_VERSION,
        p,
        h,
        q,
        modulus: field.modulus().to_vec(),
        generator: field.generator(),
        add,
        mul,
    };
    emit(cli, &out, || {
        println!("F_{q} = F_{p}^{h}, modulus {:?}, generator {}", out.modulus, out.generator);
        if let (Some(add), Some(mul)) = (&out.add, &out.mul) {
            println!("add table:");
            for row in add {
                println!("  {row:?}");
            }
            println!("mul table:");
            for row in mul {
                println!("  {row:?}");
            }
        }
    })
}

#[derive(Serialize)]
struct CodeOut {
    schema_version: u32,
    q: u32,
    p: u32,
    h: u32,
    n: usize,
    k: usize,
    #[serde(rename = "G")]
    generator: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extended_columns: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_distribution: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_distribution_closed_form: Option<Vec<String>>,
}

fn cmd_code_ers(
    cli: &Cli,
    caps: &Caps,
    q: u32,
    k: usize,
    extend: bool,
    wdist: bool,
) -> Result<(), Error> {
    let code = LinearCode::ers(q, k)?;
    let (code, extended_columns) = if extend {
        let (ext, outcome) = code.extend(caps)?;
        let cols = match outcome {
            ExtendOutcome::Extended(points) => {
                Some(points.iter().map(|p| p.to_string()).collect())
            }
            ExtendOutcome::NothingToExtend => Some(Vec::new()),
        };
        (ext, cols)
    } else {
        (code, None)
    };
    let (dist, closed) = if wdist {
        let dist = code.weight_distribution(caps)?;
        let closed = mds_weight_distribution(code.n(), code.dim(), q)
            .iter()
            .map(|w| w.to_string())
            .collect();
        (Some(dist), Some(closed))
    } else {
        (None, None)
    };
    let out = CodeOut {
        schema_version: SCHEMA_VERSION,
        q,
        p: code.field().p(),
        h: code.field().h(),
        n: code.n(),
        k: code.dim(),
        generator: code.generator().to_vec(),
        extended_columns,
        weight_distribution: dist,
        weight_distribution_closed_form: closed,
    };
    emit(cli, &out, || {
        println!("[{}, {}]_{} code, generator matrix:", out.n, out.k, out.q);
        for row in &out.generator {
            println!("  {row:?}");
        }
        if let Some(cols) = &out.extended_columns {
            println!("extension columns: {cols:?}");
        }
        if let Some(d) = &out.weight_distribution {
            println!("weight distribution: {d:?}");
        }
    })
}

#[derive(Serialize)]
struct NrcProfileOut {
    schema_version: u32,
    q: u32,
    k: usize,
    counts: Vec<u64>,
    closed_form: Vec<String>,
}

fn cmd_nrc_profile(cli: &Cli, caps: &Caps, q: u32, k: usize) -> Result<(), Error> {
    let profile = nrc::nrc_profile(q, k, caps)?;
    let out = NrcProfileOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        counts: profile.counts.clone(),
        closed_form: profile.closed_form.iter().map(|v| v.to_string()).collect(),
    };
    emit(cli, &out, || {
        println!("hyperplanes of PG({k},{q}) by intersection count with the curve:");
        for (t, c) in profile.counts.iter().enumerate() {
            println!("  t = {t}: {c}");
        }
        println!("closed form agrees.");
    })
}

#[derive(Serialize)]
struct StOut {
    schema_version: u32,
    q: u32,
    k: usize,
    off_curve_points: usize,
    max_deviation: String,
    per_t_deviation: Vec<String>,
}

fn cmd_nrc_st(cli: &Cli, caps: &Caps, q: u32, k: usize) -> Result<(), Error> {
    let profile = nrc::s_t_profile(q, k, caps)?;
    let out = StOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        off_curve_points: profile.off_curve.len(),
        max_deviation: rational_str(&profile.max_deviation),
        per_t_deviation: profile.per_t_deviation.iter().map(rational_str).collect(),
    };
    emit(cli, &out, || {
        println!(
            "per-point profiles over {} off-curve points; max |s_t - mu q^(k-1)| = {}",
            out.off_curve_points, out.max_deviation
        );
        for (t, d) in out.per_t_deviation.iter().enumerate() {
            println!("  t = {t}: max deviation {d}");
        }
    })
}

#[derive(Serialize, Deserialize)]
struct AvoidSetCache {
    schema_version: u32,
    tool_version: String,
    q: u32,
    k: usize,
    t_set: Vec<usize>,
    hyperplanes: Vec<Vec<u32>>,
}

fn cache_path(dir: &std::path::Path, q: u32, k: usize, t_set: &BTreeSet<usize>) -> PathBuf {
    let t_tag: Vec<String> = t_set.iter().map(|t| t.to_string()).collect();
    dir.join(format!("avoidset_q{q}_k{k}_T{}.json", t_tag.join("-")))
}

fn load_or_compute_avoid(
    cli: &Cli,
    caps: &Caps,
    code: &LinearCode,
    q: u32,
    k: usize,
    t_set: &BTreeSet<usize>,
) -> Result<AvoidSet, Error> {
    if let Some(dir) = &cli.cache_dir {
        let path = cache_path(dir, q, k, t_set);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(cache) = serde_json::from_str::<AvoidSetCache>(&text) {
                let avoid = AvoidSet {
                    t_set: t_set.clone(),
                    hyperplanes: cache
                        .hyperplanes
                        .into_iter()
                        .map(ekr_core::pg::Hyperplane)
                        .collect(),
                };
                if cache.schema_version == SCHEMA_VERSION
                    && cache.q == q
                    && cache.k == k
                    && spectral::recheck_avoid_set(code, &avoid, caps).is_ok()
                {
                    return Ok(avoid);
                }
                eprintln!("warning: cached avoid set at {} is stale, recomputing", path.display());
            }
        }
        let avoid = spectral::avoiding_hyperplanes(code, t_set, caps)?;
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::BadParameters(format!("cannot create cache dir: {e}")))?;
        let cache = AvoidSetCache {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            q,
            k,
            t_set: t_set.iter().copied().collect(),
            hyperplanes: avoid.hyperplanes.iter().map(|h| h.0.clone()).collect(),
        };
        let text = serde_json::to_string_pretty(&cache)
            .map_err(|e| Error::BadParameters(format!("serialization failed: {e}")))?;
        std::fs::write(&path, text)
            .map_err(|e| Error::BadParameters(format!("cannot write cache: {e}")))?;
        Ok(avoid)
    } else {
        spectral::avoiding_hyperplanes(code, t_set, caps)
    }
}

#[derive(Serialize)]
struct SpectrumOut {
    schema_version: u32,
    q: u32,
    k: usize,
    graph: String,
    eigenvalues: Vec<SpectrumEntryOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize)]
struct SpectrumEntryOut {
    value: i64,
    mult: u64,
}

#[derive(Serialize)]
struct BipartiteOut {
    schema_version: u32,
    q: u32,
    k: usize,
    graph: String,
    coordinate: usize,
    top_squared: String,
    line_classes: Vec<BipLineOut>,
    zero_multiplicity: u64,
    total_multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize)]
struct BipLineOut {
    lambda_squared: String,
    lines: u64,
    pair_multiplicity: u64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectrum(
    cli: &Cli,
    caps: &Caps,
    q: u32,
    k: usize,
    graph: GraphKind,
    t_set: Option<&str>,
    i: Option<usize>,
    verify: bool,
) -> Result<(), Error> {
    let code = LinearCode::ers(q, k)?;
    match graph {
        GraphKind::Gamma0 | GraphKind::Gammat => {
            let t_set: BTreeSet<usize> = match (graph, t_set) {
                (GraphKind::Gamma0, _) => BTreeSet::from([0]),
                (GraphKind::Gammat, Some(spec)) => spec
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::BadParameters(format!("bad T entry '{s}'")))
                    })
                    .collect::<Result<_, _>>()?,
                (GraphKind::Gammat, None) => {
                    return Err(Error::BadParameters("--graph gammat needs --T".into()))
                }
                _ => unreachable!(),
            };
            let avoid = load_or_compute_avoid(cli, caps, &code, q, k, &t_set)?;
            let spectrum = spectral::gamma_t_spectrum_with(&code, &avoid, caps)?;
            let verified = if verify {
                spectral::verify_spectrum(&code, &t_set, &spectrum, caps)?;
                Some(true)
            } else {
                None
            };
            let out = SpectrumOut {
                schema_version: SCHEMA_VERSION,
                q,
                k,
                graph: format!("gamma_T, T = {t_set:?}"),
                eigenvalues: spectrum
                    .entries
                    .iter()
                    .map(|&(value, mult)| SpectrumEntryOut { value, mult })
                    .collect(),
                verified,
            };
            emit(cli, &out, || {
                println!("{} on ERS({q},{k}):", out.graph);
                for e in &out.eigenvalues {
                    println!("  {:>8}  x{}", e.value, e.mult);
                }
                if out.verified == Some(true) {
                    println!("verified by eigenvector identities and trace moments.");
                }
            })
        }
        GraphKind::B => {
            let i = i.ok_or_else(|| Error::BadParameters("--graph b needs --i".into()))?;
            let spectrum = spectral::b_graph_spectrum(&code, i, caps)?;
            let verified = if verify {
                spectral::verify_b_spectrum(&code, i, &spectrum, caps)?;
                Some(true)
            } else {
                None
            };
            let out = BipartiteOut {
                schema_version: SCHEMA_VERSION,
                q,
                k,
                graph: "B(C, i, 0)".into(),
                coordinate: i,
                top_squared: spectrum.top_sq.to_string(),
                line_classes: spectrum
                    .line_classes
                    .iter()
                    .map(|&(v, lines)| BipLineOut {
                        lambda_squared: v.to_string(),
                        lines,
                        pair_multiplicity: lines * (q as u64 - 1),
                    })
                    .collect(),
                zero_multiplicity: spectrum.zero_mult,
                total_multiplicity: spectrum.total_multiplicity(),
                verified,
            };
            emit(cli, &out, || {
                println!("B(ERS({q},{k}), {i}, 0): +-sqrt pairs");
                println!("  top lambda^2 = {}", out.top_squared);
                for l in &out.line_classes {
                    println!(
                        "  lambda^2 = {} from {} lines (pair mult {})",
                        l.lambda_squared, l.lines, l.pair_multiplicity
                    );
                }
                println!("  zero multiplicity {}", out.zero_multiplicity);
            })
        }
    }
}

#[derive(Serialize)]
struct EkrOut {
    schema_version: u32,
    q: u32,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    weak: Option<WeakOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strict_condition: Option<StrictOut>,
}

#[derive(Serialize)]
struct WeakOut {
    holds: bool,
    all_intersecting: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_family_size: Option<u64>,
}

#[derive(Serialize)]
struct StrictOut {
    holds: bool,
    no_three_collinear: bool,
    deviation_holds: bool,
    worst_margin: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation_witness: Option<String>,
}

fn cmd_ekr(cli: &Cli, caps: &Caps, q: u32, k: usize, which: EkrCheck) -> Result<(), Error> {
    let code = LinearCode::ers(q, k)?;
    let geom = CodeGeometry::new(&code, caps)?;
    let mut out = EkrOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        weak: None,
        module: None,
        witness: None,
        strict_condition: None,
    };
    if matches!(which, EkrCheck::Weak | EkrCheck::All) {
        let weak = ekr::weak_ekr_check(&geom);
        out.weak = Some(match weak {
            ekr::WeakEkr::AllIntersecting => WeakOut {
                holds: false,
                all_intersecting: true,
                max_family_size: None,
            },
            ekr::WeakEkr::Holds { max_family_size } => WeakOut {
                holds: true,
                all_intersecting: false,
                max_family_size: Some(max_family_size),
            },
        });
    }
    if matches!(which, EkrCheck::Module | EkrCheck::All) {
        let report = ekr::module_property_check(&geom);
        out.module = Some(report.holds);
        out.witness = report.witness.map(|p| p.to_string());
    }
    if matches!(which, EkrCheck::Strict | EkrCheck::All) {
        let report = ekr::strict_condition_check(&geom)?;
        out.strict_condition = Some(StrictOut {
            holds: report.holds,
            no_three_collinear: report.no_three_collinear,
            deviation_holds: report.deviation_holds,
            worst_margin: report.worst_margin.to_string(),
            deviation_witness: report.deviation_witness.map(|p| p.to_string()),
        });
    }
    emit(cli, &out, || {
        if let Some(w) = &out.weak {
            if w.all_intersecting {
                println!("weak EKR: the whole code is an intersecting family");
            } else {
                println!("weak EKR: holds, maximum family size {}", w.max_family_size.unwrap());
            }
        }
        if let Some(m) = out.module {
            match &out.witness {
                Some(w) => println!("module property: {m} (witness {w})"),
                None => println!("module property: {m}"),
            }
        }
        if let Some(s) = &out.strict_condition {
            println!(
                "strict-EKR sufficient condition: {} (collinearity ok: {}, deviation ok: {}, worst margin {})",
                s.holds, s.no_three_collinear, s.deviation_holds, s.worst_margin
            );
        }
    })
}

#[derive(Serialize)]
struct BoundsOut {
    schema_version: u32,
    q: u32,
    k: usize,
    t: usize,
    bound: String,
    strict: bool,
    source: String,
}

fn cmd_bounds(cli: &Cli, caps: &Caps, q: u32, k: usize, t: usize) -> Result<(), Error> {
    // For k-intersecting cubic forms over fields of characteristic 3 with
    // q >= 9 the Delsarte bound from the enumerated scheme is sharper than
    // the generic double-counting bound.
    let (bound, strict, source) = if t == k && k == 3 && q >= 9 && q.is_multiple_of(3) {
        let scheme = schemes::build_scheme(SchemeFamily::Hom3, q, caps)?;
        let em = schemes::scheme_eigenmatrices(&scheme, caps)?;
        let clique = schemes::scheme_clique_bound(&em, &[3])?;
        (
            clique.bound.to_string(),
            true,
            "Delsarte clique bound from the enumerated scheme".to_string(),
        )
    } else {
        let b = ekr::t_int_upper_bound(q, k, t)?;
        let source = if b.strict {
            "double counting at t = k".to_string()
        } else {
            "t-star bound, attained".to_string()
        };
        (rational_str(&b.value), b.strict, source)
    };
    let out = BoundsOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        t,
        bound,
        strict,
        source,
    };
    emit(cli, &out, || {
        let rel = if out.strict { "<" } else { "<=" };
        println!(
            "t-intersecting families of degree-{k} forms over F_{q}: |F| {rel} {} ({})",
            out.bound, out.source
        );
    })
}

#[derive(Serialize)]
struct SearchOut {
    schema_version: u32,
    q: u32,
    k: usize,
    t: usize,
    size: u64,
    node_count: u64,
    elapsed_ms: u128,
    family: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<CensusOut>,
}

#[derive(Serialize)]
struct CensusOut {
    families: usize,
    stars: usize,
    contained_in_star: usize,
    hilton_milner: usize,
    b_line: usize,
    other: usize,
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    cli: &Cli,
    caps: &Caps,
    q: u32,
    k: usize,
    t: usize,
    census: bool,
    timeout: Option<u64>,
    cert: Option<&std::path::Path>,
) -> Result<(), Error> {
    let code = LinearCode::ers(q, k)?;
    let config = search::SearchConfig {
        census,
        timeout: timeout.map(Duration::from_secs),
        caps: *caps,
    };
    let result = search::max_intersecting_family(&code, t, &config)?;
    if let Some(path) = cert {
        let certificate = search::certificate(q, k, t, &result.witness);
        let text = serde_json::to_string_pretty(&certificate)
            .map_err(|e| Error::BadParameters(format!("serialization failed: {e}")))?;
        std::fs::write(path, text)
            .map_err(|e| Error::BadParameters(format!("cannot write certificate: {e}")))?;
    }
    let census_out = result.census.as_ref().map(|c| {
        let count = |pred: &dyn Fn(&search::FamilyTag) -> bool| {
            c.tags.iter().filter(|t| pred(t)).count()
        };
        CensusOut {
            families: c.families.len(),
            stars: count(&|t| matches!(t, search::FamilyTag::Star { .. })),
            contained_in_star: count(&|t| matches!(t, search::FamilyTag::ContainedInStar { .. })),
            hilton_milner: count(&|t| matches!(t, search::FamilyTag::HiltonMilner)),
            b_line: count(&|t| matches!(t, search::FamilyTag::BLine { .. })),
            other: count(&|t| matches!(t, search::FamilyTag::Other)),
        }
    });
    let out = SearchOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        t,
        size: result.max_size as u64,
        node_count: result.node_count,
        elapsed_ms: result.elapsed.as_millis(),
        family: result
            .witness
            .members
            .iter()
            .map(|c| c.coeff.clone())
            .collect(),
        census: census_out,
    };
    emit(cli, &out, || {
        println!(
            "maximum {t}-intersecting family in ERS({q},{k}): size {} ({} nodes, {} ms)",
            out.size, out.node_count, out.elapsed_ms
        );
        if let Some(c) = &out.census {
            println!(
                "census: {} families ({} stars, {} b-line, {} Hilton-Milner, {} other)",
                c.families, c.stars, c.b_line, c.hilton_milner, c.other
            );
        }
    })
}

fn cmd_verify(cli: &Cli, path: &std::path::Path) -> Result<(), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::CertificateInvalid(format!("cannot read certificate: {e}")))?;
    let cert: search::Certificate = serde_json::from_str(&text)
        .map_err(|e| Error::CertificateInvalid(format!("cannot parse certificate: {e}")))?;
    search::verify_certificate(&cert)?;
    #[derive(Serialize)]
    struct VerifyOut {
        schema_version: u32,
        valid: bool,
        q: u32,
        k: usize,
        t: usize,
        size: usize,
    }
    let out = VerifyOut {
        schema_version: SCHEMA_VERSION,
        valid: true,
        q: cert.q,
        k: cert.k,
        t: cert.t,
        size: cert.size,
    };
    emit(cli, &out, || {
        println!(
            "certificate valid: {}-intersecting family of size {} in ERS({},{})",
            cert.t, cert.size, cert.q, cert.k
        );
    })
}

#[derive(Serialize)]
struct SchemeOut {
    schema_version: u32,
    family: String,
    q: u32,
    #[serde(rename = "P")]
    p: Vec<Vec<String>>,
    #[serde(rename = "Q")]
    q_matrix: Vec<Vec<String>>,
    classes: Vec<u64>,
    multiplicities: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matched_table: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    row_permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_bound: Option<CliqueBoundOut>,
}

#[derive(Serialize)]
struct CliqueBoundOut {
    relations: Vec<usize>,
    bound: String,
    valency: String,
    min_eigenvalue: String,
    single_relation: bool,
}

fn parse_relations(spec: &str) -> Result<Vec<usize>, Error> {
    spec.split(',')
        .map(|s| {
            let s = s.trim().trim_start_matches(['R', 'r']);
            s.parse::<usize>()
                .map_err(|_| Error::BadRelationSet(format!("bad relation '{s}'")))
        })
        .collect()
}

fn cmd_scheme(
    cli: &Cli,
    caps: &Caps,
    family: SchemeFamily,
    q: u32,
    verify: bool,
    bounds: Option<&str>,
) -> Result<(), Error> {
    let scheme = schemes::build_scheme(family, q, caps)?;
    let em = schemes::scheme_eigenmatrices(&scheme, caps)?;
    let (matched_table, row_permutation) = if verify {
        let m = schemes::verify_closed_form(family, q, &em)?;
        (Some(m.branch.to_string()), Some(m.row_perm))
    } else {
        (None, None)
    };
    let clique_bound = match bounds {
        Some(spec) => {
            let relations = parse_relations(spec)?;
            let b = schemes::scheme_clique_bound(&em, &relations)?;
            Some(CliqueBoundOut {
                relations,
                bound: b.bound.to_string(),
                valency: b.valency.to_string(),
                min_eigenvalue: b.min_eigenvalue.to_string(),
                single_relation: b.single_relation,
            })
        }
        None => None,
    };
    let fmt = |m: &Vec<Vec<BigInt>>| -> Vec<Vec<String>> {
        m.iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect())
            .collect()
    };
    let out = SchemeOut {
        schema_version: SCHEMA_VERSION,
        family: family.name().to_string(),
        q,
        p: fmt(&em.p),
        q_matrix: fmt(&em.q),
        classes: scheme.class_sizes.clone(),
        multiplicities: em.multiplicities.clone(),
        matched_table,
        row_permutation,
        clique_bound,
    };
    emit(cli, &out, || {
        println!("{} over F_{q}: class sizes {:?}", out.family, out.classes);
        println!("P:");
        for row in &out.p {
            println!("  {row:?}");
        }
        println!("Q:");
        for row in &out.q_matrix {
            println!("  {row:?}");
        }
        if let Some(table) = &out.matched_table {
            println!("matched closed-form table: {table} (row permutation {:?})", out.row_permutation.as_ref().unwrap());
        }
        if let Some(b) = &out.clique_bound {
            println!(
                "clique bound for R{:?}: {} (valency {}, min eigenvalue {}, single relation: {})",
                b.relations, b.bound, b.valency, b.min_eigenvalue, b.single_relation
            );
        }
    })
}

#[derive(Serialize)]
struct StabilityOut {
    schema_version: u32,
    q: u32,
    k: usize,
    no_three_collinear: bool,
    length_ok: bool,
    m_size: u64,
    m_deviation: String,
    tau_margin: String,
    point_deviation: String,
    delta_margin: String,
    sqrt2_dominates: bool,
    threshold_symbolic: String,
    threshold_decimal: f64,
}

fn cmd_stability(cli: &Cli, caps: &Caps, q: u32, k: usize) -> Result<(), Error> {
    let report = nrc::stability_report(q, k, caps)?;
    let out = StabilityOut {
        schema_version: SCHEMA_VERSION,
        q,
        k,
        no_three_collinear: report.no_three_collinear,
        length_ok: report.length_ok,
        m_size: report.m_size,
        m_deviation: rational_str(&report.m_deviation),
        tau_margin: rational_str(&report.tau_margin),
        point_deviation: rational_str(&report.point_deviation),
        delta_margin: rational_str(&report.delta_margin),
        sqrt2_dominates: report.sqrt2_dominates,
        threshold_symbolic: report.threshold_symbolic.clone(),
        threshold_decimal: report.threshold_decimal,
    };
    emit(cli, &out, || {
        println!("stability hypotheses for ERS({q},{k}):");
        println!("  (1) no 3 curve points collinear: {}", out.no_three_collinear);
        println!("  (2) n <= q + 1: {}", out.length_ok);
        println!(
            "  (3) |M| = {}, | |M| - mu q^k | = {} (tau margin {})",
            out.m_size, out.m_deviation, out.tau_margin
        );
        println!(
            "  (4) max point deviation {} (delta margin {})",
            out.point_deviation, out.delta_margin
        );
        println!(
            "  threshold {} ~ {:.3} (1/√2 dominates 1 - mu: {})",
            out.threshold_symbolic, out.threshold_decimal, out.sqrt2_dominates
        );
    })
}
