//! `boundrmq`: generate arrays, build and query encodings, verify them
//! against the brute-force oracle, count trees and benchmark.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

mod bench;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use boundrmq::hardness::{self, gen_family, FamilyKind, FamilyParams};
use boundrmq::io::{emit_answers, emit_array_with_comments, emit_queries, parse_array, parse_queries};
use boundrmq::oracle::{distinct_tables_guarded, oracle_rmq, DEFAULT_MAX_CELLS};
use boundrmq::{AnyEncoding, Array2D, EncodingKind, Grid, Pos2D, QueryClass, Rect, TieBreakPolicy};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "boundrmq", version, about = "Range minimum query encodings over bounded alphabets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random array or a lower-bound family member.
    Gen(GenArgs),
    /// Build an encoding from an array file.
    Build(BuildArgs),
    /// Answer queries from an encoding file (or the oracle).
    Query(QueryArgs),
    /// Differential check of encodings against the oracle.
    Verify(verify::VerifyArgs),
    /// Space and latency table plus a JSON report.
    Bench(bench::BenchArgs),
    /// Tree and answer-table counts.
    Count(CountArgs),
}

#[derive(Args)]
struct GenArgs {
    /// `random` or a family name such as `two_sided_rows`.
    #[arg(long, default_value = "random")]
    kind: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    sigma: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write this many random queries of `--class`.
    #[arg(long, default_value_t = 0)]
    num_queries: usize,
    #[arg(long, default_value = "four_sided")]
    class: String,
    #[arg(long)]
    queries_out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    enc: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Tie-break policy; the encoding's native one when omitted.
    #[arg(long)]
    policy: Option<String>,
    /// Encode the transposed array (useful when m > n).
    #[arg(long)]
    transpose: bool,
    /// Block side of the 4-sided encoding.
    #[arg(long)]
    side: Option<usize>,
    /// Print the space report as JSON.
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    enc_file: Option<PathBuf>,
    #[arg(long)]
    queries: PathBuf,
    /// Query class of the file; the encoding's class when omitted.
    #[arg(long)]
    class: Option<String>,
    /// Array file answered by brute force; compared with the encoding when
    /// both are given.
    #[arg(long)]
    oracle: Option<PathBuf>,
    #[arg(long)]
    policy: Option<String>,
    /// Queries are in the orientation before a `build --transpose`.
    #[arg(long)]
    transpose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    /// Binary trees with `n` nodes and left height at most `k`.
    #[arg(long)]
    trees: bool,
    /// Distinct Cartesian tree shapes over all arrays of length `n`.
    #[arg(long)]
    cartesian: bool,
    /// Distinct answer tables of a family.
    #[arg(long)]
    tables: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sigma: Option<u64>,
    #[arg(long)]
    family: Option<String>,
    /// Sample this many members instead of enumerating the family.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest array (in cells) whose answer table may be built.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
}

/// Error that maps to exit code 2 with the offending flag named.
fn flag_err(flag: &str, e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!("--{}: {}", flag, e)
}

pub(crate) fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--{} is required here", flag))
}

pub(crate) fn parse_policy(s: Option<&str>, kind: Option<EncodingKind>) -> Result<Option<TieBreakPolicy>> {
    let p = s.map(|s| s.parse::<TieBreakPolicy>()).transpose().map_err(|e| flag_err("policy", e))?;
    if let (Some(p), Some(kind)) = (p, kind) {
        if !kind.policies().contains(&p) {
            bail!("--policy: {} does not support {}", kind, p.name());
        }
    }
    Ok(p)
}

pub(crate) fn parse_kind(s: &str) -> Result<EncodingKind> {
    s.parse().map_err(|e| flag_err("enc", e))
}

pub(crate) fn read_array(path: &Path, flag: &str) -> Result<Array2D> {
    let text = fs::read_to_string(path).map_err(|e| flag_err(flag, format!("{}: {}", path.display(), e)))?;
    parse_array(&text).map_err(|e| flag_err(flag, format!("{}: {}", path.display(), e)))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| flag_err("out", format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

pub(crate) fn random_array(m: usize, n: usize, sigma: u64, rng: &mut impl Rng) -> Array2D {
    let cells = (0..m * n).map(|_| rng.gen_range(0..sigma) as u32).collect();
    Array2D::new(Grid::from_vec(m, n, cells).expect("dims match"), sigma).expect("values below sigma")
}

fn gen(args: GenArgs) -> Result<()> {
    if args.m == 0 || args.n == 0 {
        bail!("--m/--n: dimensions must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (array, mut comments) = if args.kind == "random" {
        let sigma = need(args.sigma, "sigma")?;
        if sigma == 0 || sigma > u32::MAX as u64 {
            bail!("--sigma: must lie in 1..=2^32-1");
        }
        let a = random_array(args.m, args.n, sigma, &mut rng);
        (a, vec!["kind=random".to_string()])
    } else {
        let kind: FamilyKind = args.kind.parse().map_err(|e| flag_err("kind", e))?;
        let params = FamilyParams::sample(kind, args.m, args.n, args.sigma.unwrap_or(2), &mut rng)
            .map_err(|e| flag_err("kind", e))?;
        let member = gen_family(&params).map_err(|e| flag_err("kind", e))?;
        let a = member.to_bounded().map_err(|e| flag_err("kind", e))?;
        let mut comments = vec![format!("kind={}", kind), format!("query_class={}", kind.query_class().name())];
        if let hardness::FamilyArray::Wide(g) = &member {
            // file cells must be non-negative, so signed members are shifted
            let lo = g.cells().iter().min().copied().unwrap_or(0);
            comments.push(format!("offset={}", -lo));
        }
        comments.push(format!("choices={:?}", params.choices));
        (a, comments)
    };
    comments.push(format!("m={} n={} sigma={} seed={}", args.m, args.n, array.sigma(), args.seed));
    write_out(args.out.as_deref(), &emit_array_with_comments(&array, &comments))?;

    if args.num_queries > 0 {
        let class: QueryClass = args.class.parse().map_err(|e| flag_err("class", e))?;
        let path = need(args.queries_out.as_deref(), "queries-out")?;
        let qs: Vec<Rect> = (0..args.num_queries)
            .map(|_| class.random_query(args.m, args.n, &mut rng))
            .collect();
        fs::write(path, emit_queries(&qs)).map_err(|e| flag_err("queries-out", e))?;
    }
    Ok(())
}

fn build(args: BuildArgs) -> Result<()> {
    let kind = parse_kind(&args.enc)?;
    let policy = parse_policy(args.policy.as_deref(), Some(kind))?.unwrap_or(kind.native_policy());
    let mut a = read_array(&args.input, "in")?;
    if args.transpose {
        a = a.transposed();
    }
    let enc = match args.side {
        Some(c) if kind == EncodingKind::FourSided => AnyEncoding::build_four_sided(&a, policy, c),
        Some(_) => bail!("--side: only the foursided encoding has a block side"),
        None => AnyEncoding::build(kind, &a, policy),
    }
    .map_err(|e| flag_err("enc", e))?;
    fs::write(&args.out, enc.to_bytes()).map_err(|e| flag_err("out", format!("{}: {}", args.out.display(), e)))?;
    let report = enc.measure();
    if args.report {
        println!("{}", boundrmq::emit_report(&report));
    }
    eprintln!(
        "built {} ({}x{}, sigma={}, {}): {} bits, {:.4} bits/element",
        kind,
        a.m(),
        a.n(),
        a.sigma(),
        policy.name(),
        report.total_bits(),
        report.bits_per_element()
    );
    Ok(())
}

/// The same rectangle in the transposed array, for classes that survive it.
fn transpose_rect(q: &Rect) -> Result<Rect> {
    match q.class {
        QueryClass::TwoSided | QueryClass::FourSided => Ok(Rect {
            r1: q.c1,
            r2: q.c2,
            c1: q.r1,
            c2: q.r2,
            class: q.class,
        }),
        c => bail!("--transpose: {} queries are not closed under transposition", c.name()),
    }
}

fn query(args: QueryArgs) -> Result<u8> {
    let enc = match &args.enc_file {
        Some(p) => {
            let bytes = fs::read(p).map_err(|e| flag_err("enc-file", format!("{}: {}", p.display(), e)))?;
            Some(AnyEncoding::from_bytes(&bytes).map_err(|e| flag_err("enc-file", e))?)
        }
        None => None,
    };
    let oracle = args.oracle.as_deref().map(|p| read_array(p, "oracle")).transpose()?;
    let (m, n) = match (&enc, &oracle) {
        (Some(e), _) if args.transpose => (e.dims().1, e.dims().0),
        (Some(e), _) => e.dims(),
        (None, Some(a)) => (a.m(), a.n()),
        (None, None) => bail!("--enc-file: give an encoding file, an --oracle array, or both"),
    };
    if let (Some(e), Some(a)) = (&enc, &oracle) {
        if (a.m(), a.n()) != (m, n) {
            bail!("--oracle: array is {}x{} but the encoding answers {}x{}", a.m(), a.n(), e.dims().0, e.dims().1);
        }
    }
    let class = match (&args.class, &enc) {
        (Some(c), _) => c.parse().map_err(|e| flag_err("class", e))?,
        (None, Some(e)) => e.kind().query_class(),
        (None, None) => QueryClass::FourSided,
    };
    let text = fs::read_to_string(&args.queries).map_err(|e| flag_err("queries", e))?;
    let rects = parse_queries(&text, class, m, n).map_err(|e| flag_err("queries", e))?;
    let policy = parse_policy(args.policy.as_deref(), None)?
        .or(enc.as_ref().map(|e| e.policy()))
        .unwrap_or(TieBreakPolicy::RowMajor);

    let mut answers = Vec::with_capacity(rects.len());
    let mut mismatches = 0usize;
    for q in &rects {
        let expected = match &oracle {
            Some(a) => Some(oracle_rmq(a.grid(), q, policy)?),
            None => None,
        };
        let got = match &enc {
            Some(e) if args.transpose => {
                let p = e.query(&transpose_rect(q)?).map_err(|err| flag_err("queries", err))?;
                Some(Pos2D::new(p.col, p.row))
            }
            Some(e) => Some(e.query(q).map_err(|err| flag_err("queries", err))?),
            None => None,
        };
        match (got, expected) {
            (Some(g), Some(x)) => {
                if g != x {
                    mismatches += 1;
                    eprintln!("mismatch: query {:?} encoding {} oracle {}", q, g, x);
                }
                answers.push(g);
            }
            (Some(p), None) | (None, Some(p)) => answers.push(p),
            (None, None) => unreachable!(),
        }
    }
    write_out(args.out.as_deref(), &emit_answers(&answers))?;
    if enc.is_some() && oracle.is_some() {
        eprintln!("queries={} mismatches={}", rects.len(), mismatches);
    }
    Ok(u8::from(mismatches > 0))
}

fn count(args: CountArgs) -> Result<()> {
    match (args.trees, args.cartesian, args.tables) {
        (true, false, false) => {
            println!("{}", hardness::count_trees(need(args.n, "n")?, need(args.k, "k")?));
        }
        (false, true, false) => {
            let c = hardness::count_distinct_cartesian(need(args.n, "n")?, need(args.sigma, "sigma")?)
                .map_err(|e| flag_err("n", e))?;
            println!("{}", c);
        }
        (false, false, true) => {
            let kind: FamilyKind = need(args.family.as_deref(), "family")?
                .parse()
                .map_err(|e| flag_err("family", e))?;
            let (m, n, sigma) = (need(args.m, "m")?, need(args.n, "n")?, args.sigma.unwrap_or(2));
            let members = match args.samples {
                Some(s) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    let mut seen = std::collections::HashSet::new();
                    let mut out = Vec::new();
                    for _ in 0..s {
                        let p = FamilyParams::sample(kind, m, n, sigma, &mut rng).map_err(|e| flag_err("family", e))?;
                        if seen.insert(p.key()) {
                            out.push(p);
                        }
                    }
                    out
                }
                None => FamilyParams::enumerate(kind, m, n, sigma, 1 << 16).map_err(|e| flag_err("family", e))?,
            };
            let grids = members
                .iter()
                .map(|p| gen_family(p).map(|a| a.wide()))
                .collect::<boundrmq::Result<Vec<_>>>()
                .map_err(|e| flag_err("family", e))?;
            let distinct = distinct_tables_guarded(&grids, kind.query_class(), kind.policy(), args.max_cells)
                .map_err(|e| flag_err("max-cells", e))?;
            println!("members={} distinct_tables={}", grids.len(), distinct);
        }
        _ => bail!("--trees/--cartesian/--tables: choose exactly one"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen(a) => gen(a).map(|_| 0),
        Command::Build(a) => build(a).map(|_| 0),
        Command::Query(a) => query(a),
        Command::Verify(a) => verify::run(a),
        Command::Bench(a) => bench::run(a).map(|_| 0),
        Command::Count(a) => count(a).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
