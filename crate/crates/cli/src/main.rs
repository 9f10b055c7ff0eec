//! Command-line surface over the library: file parsing, mutation runs,
//! exploration, basis elements, characters, and the verification suites.
//!
//! Exit codes: 0 success, 1 domain error, 2 input-format error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_core::bases::{self, AnnulusKind};
use cluster_core::ccmap;
use cluster_core::explore::{self, ExploreMode};
use cluster_core::io;
use cluster_core::matrix::Matrix;
use cluster_core::quiver::principal_quiver;
use cluster_core::seed::{seed_from_triangulation, Seed};
use cluster_core::tropical;
use cluster_core::{Error, Result, ScalarPoly};

#[derive(Parser)]
#[command(
    name = "cluster",
    version,
    about = "Exact cluster algebra computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a seed at one or more vertices and print the new variable
    /// with the mutated exchange matrix (and skew form when present).
    Mutate(MutateArgs),
    /// Print variables of the seed reached by a mutation sequence, expanded
    /// in the initial cluster.
    Expand(ExpandArgs),
    /// Degree vector and F-polynomial of a reached variable.
    Gvec(GvecArgs),
    /// Piecewise-linear transform of a degree vector.
    Trop(TropArgs),
    /// Breadth-first exploration of the exchange graph.
    Explore(ExploreArgs),
    /// Search for a seed whose variables realize the negated unit degrees.
    FindT1(FindT1Args),
    /// Basis families and their verification.
    #[command(subcommand)]
    Bases(BasesCommand),
    /// Characters of quiver representations and sampled generic characters.
    Ccmap(CcmapArgs),
    /// Verification suites over a seed or triangulation file.
    Check(CheckArgs),
}

#[derive(Args)]
struct FrameChoice {
    /// Drop the skew form and work classically.
    #[arg(long, conflicts_with = "quantum")]
    classical: bool,
    /// Require the skew form from the input file.
    #[arg(long)]
    quantum: bool,
}

impl FrameChoice {
    fn apply(&self, s: Seed) -> Result<Seed> {
        if self.classical {
            return classicalize(&s);
        }
        if self.quantum && !s.frame().is_quantum() {
            return Err(Error::LambdaMissing);
        }
        Ok(s)
    }
}

fn classicalize(s: &Seed) -> Result<Seed> {
    let frame = s.frame().classical();
    Seed::new(Arc::new(frame), s.b_full().clone())
}

#[derive(Args)]
struct MutateArgs {
    /// Seed file.
    #[arg(long)]
    seed: PathBuf,
    /// Vertex to mutate, 1-based; repeat for a sequence.
    #[arg(short, long = "vertex", required = true)]
    k: Vec<usize>,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long)]
    seed: PathBuf,
    /// Mutation sequence, 1-based, comma-separated.
    #[arg(long, value_delimiter = ',')]
    seq: Vec<usize>,
    /// Variable to print, 1-based; all unfrozen variables when omitted.
    #[arg(long)]
    var: Option<usize>,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GvecArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long, value_delimiter = ',')]
    seq: Vec<usize>,
    /// Variable of the reached seed, 1-based.
    #[arg(long, required = true)]
    var: usize,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TropArgs {
    #[arg(long)]
    seed: PathBuf,
    /// Degree vector, comma-separated, one entry per vertex.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    g: Vec<i64>,
    /// Single transform step at this vertex, 1-based.
    #[arg(short, long = "vertex", conflicts_with = "seq")]
    k: Option<usize>,
    /// Transport along a mutation sequence, 1-based.
    #[arg(long, value_delimiter = ',')]
    seq: Vec<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExploreArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Identify seeds differing by a relabeling of the unfrozen vertices.
    #[arg(long)]
    unlabeled: bool,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FindT1Args {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum BasesCommand {
    /// Bangle, bracelet, or band elements on the annulus core seed.
    Annulus(AnnulusArgs),
    /// Check a family file for pointedness, bar-invariance, and triangular
    /// products; prints one JSON verdict per member.
    VerifyTriangular(VerifyTriangularArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bangle,
    Bracelet,
    Band,
}

#[derive(Args)]
struct AnnulusArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(short, long)]
    k: i64,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyTriangularArgs {
    /// Family file: a seed plus the candidate elements.
    #[arg(long)]
    family: PathBuf,
    /// Truncation order for the product expansions.
    #[arg(long)]
    trunc: usize,
    /// Search depth for the reachability witness.
    #[arg(long, default_value_t = 4)]
    depth: usize,
}

#[derive(Args)]
struct CcmapArgs {
    #[arg(long)]
    seed: PathBuf,
    /// Representation file; its character is printed.
    #[arg(long, conflicts_with = "generic")]
    rep: Option<PathBuf>,
    /// Principal degree for a sampled generic character, comma-separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "rng_seed"
    )]
    generic: Option<Vec<i64>>,
    #[arg(long, default_value_t = 4)]
    samples: usize,
    /// Sampling seed; required with --generic.
    #[arg(long)]
    rng_seed: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Seed file to check.
    #[arg(
        long,
        conflicts_with = "triangulation",
        required_unless_present = "triangulation"
    )]
    seed: Option<PathBuf>,
    /// Triangulation file; its seed is checked.
    #[arg(long)]
    triangulation: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Every variable in the catalog is a pointed Laurent expansion with
    /// constant F-term 1.
    #[arg(long)]
    laurent: bool,
    /// Every coefficient of every catalog variable is nonnegative.
    #[arg(long)]
    positivity: bool,
    /// Degree vectors transform consistently under every one-step mutation.
    #[arg(long)]
    tropical: bool,
    #[command(flatten)]
    frame: FrameChoice,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_schema() { 2 } else { 1 })
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))
}

fn load_seed(path: &PathBuf) -> Result<Seed> {
    io::parse_seed(&read_file(path)?)
}

/// Converts a 1-based CLI vertex number to a 0-based index.
fn vertex_index(k: usize, s: &Seed) -> Result<usize> {
    if k == 0 || k > s.n() {
        return Err(Error::VertexOutOfRange(format!(
            "k = {k} with {} vertices",
            s.n()
        )));
    }
    Ok(k - 1)
}

fn vertex_indices(ks: &[usize], s: &Seed) -> Result<Vec<usize>> {
    ks.iter().map(|&k| vertex_index(k, s)).collect()
}

fn fmt_vec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn print_matrix(label: &str, m: &Matrix) {
    println!("{label}:");
    for row in m {
        println!("  {}", fmt_vec(row));
    }
}

fn scalar_prefix(c: &ScalarPoly) -> String {
    if c.is_one() {
        return String::new();
    }
    if let Some((0, x)) = c.as_single_term() {
        return format!("{x}*");
    }
    if let Some(a) = c.as_unit_v_power() {
        return format!("v^{a}*");
    }
    format!("({c})*")
}

fn fmt_f_poly<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a Vec<i64>, &'a ScalarPoly)>,
{
    let mut parts = Vec::new();
    for (n, c) in terms {
        if n.iter().all(|&x| x == 0) {
            parts.push(format!("{c}"));
        } else {
            let ns: Vec<String> = n.iter().map(|x| x.to_string()).collect();
            parts.push(format!("{}Y[{}]", scalar_prefix(c), ns.join(",")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Mutate(a) => run_mutate(a),
        Command::Expand(a) => run_expand(a),
        Command::Gvec(a) => run_gvec(a),
        Command::Trop(a) => run_trop(a),
        Command::Explore(a) => run_explore(a),
        Command::FindT1(a) => run_find_t1(a),
        Command::Bases(c) => match c {
            BasesCommand::Annulus(a) => run_annulus(a),
            BasesCommand::VerifyTriangular(a) => run_verify_triangular(a),
        },
        Command::Ccmap(a) => run_ccmap(a),
        Command::Check(a) => run_check(a),
    }
}

fn run_mutate(a: MutateArgs) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let seq = vertex_indices(&a.k, &s)?;
    let t = s.mutate_seq(&seq)?;
    let last = *seq.last().expect("clap enforces at least one vertex");
    let name = &s.frame().vertices()[last];
    let var = t.var(last);
    if a.json {
        let mut out = serde_json::json!({
            "vertex": name,
            "variable": io::element_to_value(var),
            "b": t.b_full(),
        });
        if let Some(l) = t.lambda_local() {
            out["lambda"] = serde_json::json!(l);
        }
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    println!("{name}' = {var}");
    print_matrix("b'", t.b_full());
    if let Some(l) = t.lambda_local() {
        print_matrix("lambda'", l);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_expand(a: ExpandArgs) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let seq = vertex_indices(&a.seq, &s)?;
    let t = s.mutate_seq(&seq)?;
    if let Some(k) = a.var {
        let i = vertex_index(k, &s)?;
        if a.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&io::element_to_value(t.var(i))).unwrap()
            );
        } else {
            println!("{}", t.var(i));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if a.json {
        let vars: Vec<serde_json::Value> = t
            .frame()
            .unfrozen()
            .iter()
            .map(|&i| {
                serde_json::json!({
                    "vertex": t.frame().vertices()[i],
                    "expansion": io::element_to_value(t.var(i)),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&vars).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    for &i in t.frame().unfrozen() {
        println!("{} = {}", t.frame().vertices()[i], t.var(i));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gvec(a: GvecArgs) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let seq = vertex_indices(&a.seq, &s)?;
    let t = s.mutate_seq(&seq)?;
    let i = vertex_index(a.var, &s)?;
    let dec = tropical::extract_pointed(t.var(i), &s)?;
    if a.json {
        let f: Vec<serde_json::Value> = dec
            .f_poly
            .iter()
            .map(|(n, c)| serde_json::json!([n, c.to_string()]))
            .collect();
        let out = serde_json::json!({ "g": dec.g, "f": f });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    println!("g = {}", fmt_vec(&dec.g));
    println!("F = {}", fmt_f_poly(dec.f_poly.iter()));
    Ok(ExitCode::SUCCESS)
}

fn run_trop(a: TropArgs) -> Result<ExitCode> {
    let s = load_seed(&a.seed)?;
    if a.g.len() != s.n() {
        return Err(Error::DimensionMismatch(format!(
            "degree has length {} but the seed has {} vertices",
            a.g.len(),
            s.n()
        )));
    }
    let out = if let Some(k) = a.k {
        let i = vertex_index(k, &s)?;
        tropical::transport_degree(&a.g, &[i], &s)?
    } else {
        let seq = vertex_indices(&a.seq, &s)?;
        tropical::transport_degree(&a.g, &seq, &s)?
    };
    if a.json {
        println!("{}", serde_json::json!({ "g": out }));
    } else {
        println!("g' = {}", fmt_vec(&out));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_explore(a: ExploreArgs) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let mode = if a.unlabeled {
        ExploreMode::Unlabeled
    } else {
        ExploreMode::Labeled
    };
    let catalog = explore::explore(&s, a.depth, mode)?;
    if a.json {
        let out = serde_json::json!({
            "seeds": catalog.seed_count(),
            "variables": catalog.variable_count(),
            "depths": catalog.seeds().iter().map(|e| e.depth).collect::<Vec<_>>(),
            "renderings": catalog
                .variables()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    println!("seeds: {}", catalog.seed_count());
    println!("variables: {}", catalog.variable_count());
    Ok(ExitCode::SUCCESS)
}

fn run_find_t1(a: FindT1Args) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let witness = explore::find_injective_copy(&s, a.depth)?;
    let seq: Vec<usize> = witness.sequence.iter().map(|&k| k + 1).collect();
    if a.json {
        let sigma: Vec<(usize, usize)> = witness
            .sigma
            .iter()
            .map(|(&k, &i)| (k + 1, i + 1))
            .collect();
        let out = serde_json::json!({ "sequence": seq, "sigma": sigma });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    let seq_s: Vec<String> = seq.iter().map(|k| k.to_string()).collect();
    println!("sequence = [{}]", seq_s.join(", "));
    let sig_s: Vec<String> = witness
        .sigma
        .iter()
        .map(|(&k, &i)| format!("{} -> {}", k + 1, i + 1))
        .collect();
    println!("sigma = {{{}}}", sig_s.join(", "));
    Ok(ExitCode::SUCCESS)
}

fn run_annulus(a: AnnulusArgs) -> Result<ExitCode> {
    let s = a.frame.apply(load_seed(&a.seed)?)?;
    let kind = match a.kind {
        KindArg::Bangle => AnnulusKind::Bangle,
        KindArg::Bracelet => AnnulusKind::Bracelet,
        KindArg::Band => AnnulusKind::Band,
    };
    let z = bases::annulus_element(kind, a.k, &s)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&io::element_to_value(&z)).unwrap()
        );
    } else {
        println!("{z}");
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_value(v: &bases::Verdict) -> serde_json::Value {
    serde_json::Value::String(v.label().into())
}

fn run_verify_triangular(a: VerifyTriangularArgs) -> Result<ExitCode> {
    let (seed, family) = io::parse_family(&read_file(&a.family)?)?;
    let witness = explore::find_injective_copy(&seed, a.depth)?;
    let report = bases::verify_triangular(&family, &seed, &witness, a.trunc)?;
    let members: Vec<serde_json::Value> = report
        .members
        .iter()
        .map(|m| {
            let mut reasons = serde_json::Map::new();
            for (key, v) in [
                ("pointed", &m.pointed),
                ("bar_invariant", &m.bar_invariant),
                ("multiplication", &m.multiplication),
            ] {
                if let Some(r) = v.reason() {
                    reasons.insert(key.into(), serde_json::Value::String(r.into()));
                }
            }
            serde_json::json!({
                "degree": m.degree,
                "pointed": verdict_value(&m.pointed),
                "bar_invariant": verdict_value(&m.bar_invariant),
                "multiplication": verdict_value(&m.multiplication),
                "reasons": reasons,
            })
        })
        .collect();
    let out = serde_json::json!({
        "truncation": report.truncation,
        "all_pass": report.all_pass(),
        "members": members,
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn run_ccmap(a: CcmapArgs) -> Result<ExitCode> {
    let s = classicalize(&load_seed(&a.seed)?)?;
    if let Some(rep_path) = &a.rep {
        let rep = io::parse_rep(&read_file(rep_path)?)?;
        let z = ccmap::cc(&rep, &s)?;
        if a.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&io::element_to_value(&z)).unwrap()
            );
        } else {
            println!("{z}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let Some(g) = &a.generic else {
        return Err(Error::Schema(
            "ccmap needs either --rep or --generic".into(),
        ));
    };
    let rng_seed = a.rng_seed.expect("clap enforces --rng-seed with --generic");
    let quiver = principal_quiver(&s).opposite();
    let out = ccmap::generic_character(g, &quiver, &s, a.samples, rng_seed)?;
    if a.json {
        let v = serde_json::json!({
            "value": io::element_to_value(&out.value),
            "stable": out.stable,
            "supports": out.support_sizes,
            "rng_seed": rng_seed,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    println!("{}", out.value);
    println!("stable = {}", out.stable);
    println!(
        "supports = [{}]",
        out.support_sizes
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(ExitCode::SUCCESS)
}

struct CheckOutcome {
    name: &'static str,
    count: usize,
    failure: Option<String>,
}

fn run_check(a: CheckArgs) -> Result<ExitCode> {
    let (seed, roundtrip_ok) = if let Some(path) = &a.seed {
        let text = read_file(path)?;
        let s = io::parse_seed(&text)?;
        let ok = io::seed_to_string(&s) == text;
        (s, ok)
    } else {
        let path = a.triangulation.as_ref().expect("clap enforces one input");
        let text = read_file(path)?;
        let t = io::parse_triangulation(&text)?;
        let ok = io::triangulation_to_string(&t) == text;
        (seed_from_triangulation(&t)?, ok)
    };
    let seed = a.frame.apply(seed)?;

    let all = !(a.laurent || a.positivity || a.tropical);
    let catalog = explore::explore(&seed, a.depth, ExploreMode::Labeled)?;
    let mut outcomes = vec![CheckOutcome {
        name: "roundtrip",
        count: 1,
        failure: (!roundtrip_ok).then(|| "serialization differs from the input file".into()),
    }];

    if all || a.laurent {
        let mut failure = None;
        for z in catalog.variables() {
            let dec = tropical::extract_pointed(z, &seed)?;
            let constant = dec
                .f_poly
                .get(&vec![0i64; seed.frame().unfrozen().len()])
                .cloned()
                .unwrap_or_else(ScalarPoly::zero);
            if !constant.is_one() {
                failure = Some(format!("constant F-term of {z} is {constant}"));
                break;
            }
        }
        outcomes.push(CheckOutcome {
            name: "laurent",
            count: catalog.variable_count(),
            failure,
        });
    }
    if all || a.positivity {
        let mut failure = None;
        for z in catalog.variables() {
            if let Some((_, c)) = z.terms().find(|(_, c)| !c.all_coeffs_nonnegative()) {
                failure = Some(format!("negative coefficient {c} in {z}"));
                break;
            }
        }
        outcomes.push(CheckOutcome {
            name: "positivity",
            count: catalog.variable_count(),
            failure,
        });
    }
    if all || a.tropical {
        let mut count = 0;
        let mut failure = None;
        'outer: for &k in seed.frame().unfrozen() {
            // Every path replayed from the mutated anchor re-expresses the
            // same abstract variable in the new cluster.
            let t1 = seed.mutate(k)?.re_anchored()?;
            let back = t1.mutate(k)?;
            for entry in catalog.seeds() {
                let replayed = back.mutate_seq(entry.seed.history())?;
                for &i in seed.frame().unfrozen() {
                    let dec = tropical::extract_pointed(entry.seed.var(i), &seed)?;
                    let moved = tropical::tropical_transform(&dec.g, k, seed.b_full());
                    let there = tropical::extract_pointed(replayed.var(i), &t1)?;
                    if moved != there.g {
                        failure = Some(format!(
                            "transform of {} at vertex {} gives {} but extraction gives {}",
                            fmt_vec(&dec.g),
                            k + 1,
                            fmt_vec(&moved),
                            fmt_vec(&there.g)
                        ));
                        break 'outer;
                    }
                    count += 1;
                }
            }
        }
        outcomes.push(CheckOutcome {
            name: "tropical",
            count,
            failure,
        });
    }

    let mut failed = false;
    if a.json {
        let rows: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "check": o.name,
                    "count": o.count,
                    "ok": o.failure.is_none(),
                    "failure": o.failure,
                })
            })
            .collect();
        failed = outcomes.iter().any(|o| o.failure.is_some());
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    } else {
        for o in &outcomes {
            match &o.failure {
                None => println!("{}: {} ok", o.name, o.count),
                Some(why) => {
                    failed = true;
                    println!("{}: FAILED: {}", o.name, why);
                }
            }
        }
    }
    if failed {
        Ok(ExitCode::FAILURE)
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
