use anyhow::{bail, Result};
use boundrmq::oracle::oracle_rmq;
use boundrmq::{AnyEncoding, Array2D, EncodingKind, Grid, Rect, TieBreakPolicy};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{parse_kind, parse_policy, random_array};

#[derive(Args)]
pub struct VerifyArgs {
    /// Encoding name, or `all`.
    #[arg(long, default_value = "all")]
    enc: String,
    /// Restrict to one policy; every supported policy otherwise.
    #[arg(long)]
    policy: Option<String>,
    /// Every array up to the `--max-*` dimensions instead of random ones.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, default_value_t = 3)]
    max_m: usize,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    max_sigma: u64,
    /// Largest exhaustive array, in cells.
    #[arg(long, default_value_t = 12)]
    max_cells: usize,
    #[arg(long, default_value_t = 200)]
    arrays: usize,
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    sigma: u64,
    /// Random queries per (array, encoding).
    #[arg(long, default_value_t = 1000)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Encode and query the transposed arrays.
    #[arg(long)]
    transpose: bool,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    arrays: u64,
    queries: u64,
    mismatches: u64,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            arrays: self.arrays + o.arrays,
            queries: self.queries + o.queries,
            mismatches: self.mismatches + o.mismatches,
        }
    }
}

/// Builds, reloads from bytes and compares every query with the oracle. A
/// failed build counts as one mismatch.
fn check(kind: EncodingKind, policy: TieBreakPolicy, a: &Array2D, queries: &[Rect]) -> Tally {
    let reloaded = AnyEncoding::build(kind, a, policy).and_then(|e| AnyEncoding::from_bytes(&e.to_bytes()));
    let enc = match reloaded {
        Ok(e) => e,
        Err(err) => {
            eprintln!("build failed: {} {} on {:?}: {}", kind, policy.name(), a.grid(), err);
            return Tally {
                arrays: 1,
                queries: 0,
                mismatches: 1,
            };
        }
    };
    let mut t = Tally {
        arrays: 1,
        queries: queries.len() as u64,
        mismatches: 0,
    };
    for q in queries {
        let want = oracle_rmq(a.grid(), q, policy).expect("valid query");
        let got = enc.query_unchecked(q);
        if got != want {
            if t.mismatches == 0 {
                eprintln!("mismatch: {} {} {:?} {:?}: got {} want {}", kind, policy.name(), a.grid(), q, got, want);
            }
            t.mismatches += 1;
        }
    }
    t
}

fn nth_array(code: u64, m: usize, n: usize, sigma: u64) -> Array2D {
    let mut c = code;
    let cells = (0..m * n)
        .map(|_| {
            let v = c % sigma;
            c /= sigma;
            v as u32
        })
        .collect();
    Array2D::new(Grid::from_vec(m, n, cells).expect("dims"), sigma).expect("alphabet")
}

fn orient(a: Array2D, transpose: bool) -> Array2D {
    if transpose {
        a.transposed()
    } else {
        a
    }
}

pub fn run(args: VerifyArgs) -> Result<u8> {
    let kinds: Vec<EncodingKind> = if args.enc == "all" {
        EncodingKind::ALL.to_vec()
    } else {
        vec![parse_kind(&args.enc)?]
    };
    let only = parse_policy(args.policy.as_deref(), (kinds.len() == 1).then(|| kinds[0]))?;
    if args.exhaustive {
        if args.max_m * args.max_n > args.max_cells {
            bail!(
                "--max-cells: {}x{} arrays exceed {} cells (raise --max-cells to allow it)",
                args.max_m,
                args.max_n,
                args.max_cells
            );
        }
        if args.max_m == 0 || args.max_n == 0 || args.max_sigma == 0 {
            bail!("--max-m/--max-n/--max-sigma: must be positive");
        }
    } else if args.m == 0 || args.n == 0 || args.sigma == 0 {
        bail!("--m/--n/--sigma: must be positive");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()?;

    let mut total = Tally::default();
    for &kind in &kinds {
        for &policy in kind.policies() {
            if only.is_some_and(|p| p != policy) {
                continue;
            }
            let class = kind.query_class();
            let tally = if args.exhaustive {
                let mut t = Tally::default();
                for m in 1..=args.max_m {
                    for n in 1..=args.max_n {
                        for sigma in 1..=args.max_sigma {
                            let (em, en) = if args.transpose { (n, m) } else { (m, n) };
                            if !kind.supports(em, en, sigma) {
                                continue;
                            }
                            let queries = class.queries(em, en);
                            let count = sigma.pow((m * n) as u32);
                            t = t.add(pool.install(|| {
                                (0..count)
                                    .into_par_iter()
                                    .map(|code| {
                                        let a = orient(nth_array(code, m, n, sigma), args.transpose);
                                        check(kind, policy, &a, &queries)
                                    })
                                    .reduce(Tally::default, Tally::add)
                            }));
                        }
                    }
                }
                t
            } else {
                let m = if kind.is_1d() { 1 } else { args.m };
                let sigma = if kind == EncodingKind::BinaryRmq { args.sigma.min(2) } else { args.sigma };
                pool.install(|| {
                    (0..args.arrays as u64)
                        .into_par_iter()
                        .map(|i| {
                            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
                            rng.set_stream(i);
                            let a = orient(random_array(m, args.n, sigma, &mut rng), args.transpose);
                            let queries: Vec<Rect> = (0..args.queries)
                                .map(|_| class.random_query(a.m(), a.n(), &mut rng))
                                .collect();
                            check(kind, policy, &a, &queries)
                        })
                        .reduce(Tally::default, Tally::add)
                })
            };
            println!(
                "verify enc={} policy={} mode={} arrays={} queries={} mismatches={}",
                kind,
                policy.name(),
                if args.exhaustive { "exhaustive" } else { "random" },
                tally.arrays,
                tally.queries,
                tally.mismatches
            );
            total = total.add(tally);
        }
    }
    println!(
        "summary: arrays={} queries={} mismatches={}",
        total.arrays, total.queries, total.mismatches
    );
    Ok(u8::from(total.mismatches > 0))
}
