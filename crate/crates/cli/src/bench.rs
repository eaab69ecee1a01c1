use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Result};
use boundrmq::encoding::median_latency_ns;
use boundrmq::{AnyEncoding, EncodingKind, Rect};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{parse_kind, random_array};

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated encodings, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    enc: Vec<String>,
    /// Rows of the 2D arrays (1D encodings always use one row).
    #[arg(long, default_value = "64", value_delimiter = ',')]
    m: Vec<usize>,
    #[arg(long, default_value = "4096", value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value = "4", value_delimiter = ',')]
    sigma: Vec<u64>,
    #[arg(long, default_value_t = 10_000)]
    queries: usize,
    /// Timed passes over the query set; the median is reported.
    #[arg(long, default_value_t = 9)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
}

pub fn run(args: BenchArgs) -> Result<()> {
    let kinds: Vec<EncodingKind> = if args.enc.iter().any(|e| e == "all") {
        EncodingKind::ALL.to_vec()
    } else {
        args.enc.iter().map(|e| parse_kind(e)).collect::<Result<_>>()?
    };
    let mut rows = Vec::new();
    println!(
        "{:<20} {:>6} {:>9} {:>6} {:>14} {:>10} {:>11} {:>11}",
        "encoding", "m", "n", "sigma", "total_bits", "bits/elem", "build_ms", "median_ns"
    );
    for &kind in &kinds {
        let ms: Vec<usize> = if kind.is_1d() { vec![1] } else { args.m.clone() };
        for &m in &ms {
            for &n in &args.n {
                for &sigma in &args.sigma {
                    if !kind.supports(m, n, sigma) || m == 0 || n == 0 || sigma == 0 {
                        continue;
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                    let a = random_array(m, n, sigma, &mut rng);
                    let start = Instant::now();
                    let enc = AnyEncoding::build(kind, &a, kind.native_policy())
                        .map_err(|e| anyhow!("--enc: {} on {}x{} sigma={}: {}", kind, m, n, sigma, e))?;
                    let build_ms = start.elapsed().as_secs_f64() * 1e3;
                    let queries: Vec<Rect> = (0..args.queries)
                        .map(|_| kind.query_class().random_query(m, n, &mut rng))
                        .collect();
                    let latency = median_latency_ns(&enc, &queries, args.rounds);
                    let report = enc.measure();
                    println!(
                        "{:<20} {:>6} {:>9} {:>6} {:>14} {:>10.4} {:>11.2} {:>11.1}",
                        kind.name(),
                        m,
                        n,
                        sigma,
                        report.total_bits(),
                        report.bits_per_element(),
                        build_ms,
                        latency
                    );
                    rows.push(json!({
                        "encoding": kind.name(),
                        "m": m,
                        "n": n,
                        "sigma": sigma,
                        "total_bits": report.total_bits(),
                        "bits_per_element": report.bits_per_element(),
                        "build_ms": build_ms,
                        "median_query_ns": latency,
                        "report": report.to_json(),
                    }));
                }
            }
        }
    }
    let doc = serde_json::to_string_pretty(&json!({ "rows": rows }))?;
    match args.json {
        Some(p) => std::fs::write(&p, doc).map_err(|e| anyhow!("--json: {}: {}", p.display(), e))?,
        None => println!("{}", doc),
    }
    Ok(())
}
