//! Wall-clock and operation-count comparison of naive and Strassen products.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{OperationCounter, RingMatrix};
use super::multiply::{naive_multiply, strassen_multiply};
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::exact::rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Rational,
    I64,
    F64,
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "q" => Ok(Self::Rational),
            "i64" | "int" => Ok(Self::I64),
            "f64" | "float" => Ok(Self::F64),
            other => Err(Error::input(format!(
                "unknown ring {other:?} (expected rational, i64 or f64)"
            ))),
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rational => "rational",
            Self::I64 => "i64",
            Self::F64 => "f64",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Strassen,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Naive => "naive",
            Self::Strassen => "strassen",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub ring: RingKind,
    pub cutoffs: Vec<usize>,
    pub methods: Vec<Method>,
    pub trials: usize,
    pub seed: u64,
}

/// One CSV row: `size,method,cutoff,ring,trials,median_ns,mults,adds`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub size: usize,
    pub method: Method,
    /// Zero for the naive method.
    pub cutoff: usize,
    pub ring: RingKind,
    pub trials: usize,
    pub median_ns: u128,
    pub mults: u64,
    pub adds: u64,
}

/// Log-log slope between two consecutive power-of-two sizes of one series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Slope {
    pub method: Method,
    pub cutoff: usize,
    pub from_size: usize,
    pub to_size: usize,
    pub mults_slope: f64,
    pub time_slope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub slopes: Vec<Slope>,
}

pub const CSV_HEADER: &str = "size,method,cutoff,ring,trials,median_ns,mults,adds";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.size, self.method, self.cutoff, self.ring, self.trials, self.median_ns, self.mults, self.adds
        )
    }
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv());
            out.push('\n');
        }
        out
    }
}

fn random_matrix<R: Ring>(n: usize, rng: &mut ChaCha8Rng, sample: &impl Fn(&mut ChaCha8Rng) -> R) -> RingMatrix<R> {
    RingMatrix::from_fn(n, n, |_, _| sample(rng))
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2
    }
}

fn run_series<R: Ring>(
    cfg: &BenchConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> R,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in &cfg.sizes {
        // Same inputs for every method and cutoff at a given size.
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (size as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let a = random_matrix(size, &mut rng, &sample);
        let b = random_matrix(size, &mut rng, &sample);
        for &method in &cfg.methods {
            let cutoffs: Vec<usize> = match method {
                Method::Naive => vec![0],
                Method::Strassen => cfg.cutoffs.clone(),
            };
            for cutoff in cutoffs {
                let mut times = Vec::with_capacity(cfg.trials);
                let mut counts = OperationCounter::new();
                for _ in 0..cfg.trials {
                    let mut counter = OperationCounter::new();
                    let start = Instant::now();
                    match method {
                        Method::Naive => naive_multiply(&a, &b, &mut counter)?,
                        Method::Strassen => strassen_multiply(&a, &b, cutoff, &mut counter)?,
                    };
                    times.push(start.elapsed().as_nanos());
                    counts = counter;
                }
                rows.push(BenchRow {
                    size,
                    method,
                    cutoff,
                    ring: cfg.ring,
                    trials: cfg.trials,
                    median_ns: median(times),
                    mults: counts.multiplications,
                    adds: counts.additions,
                });
            }
        }
    }
    Ok(rows)
}

fn slopes(rows: &[BenchRow]) -> Vec<Slope> {
    let mut out = Vec::new();
    for r in rows {
        if !r.size.is_power_of_two() {
            continue;
        }
        let next = rows.iter().find(|s| {
            s.method == r.method && s.cutoff == r.cutoff && s.size == r.size * 2
        });
        if let Some(s) = next {
            out.push(Slope {
                method: r.method,
                cutoff: r.cutoff,
                from_size: r.size,
                to_size: s.size,
                mults_slope: (s.mults as f64 / r.mults as f64).log2(),
                time_slope: (s.median_ns.max(1) as f64 / r.median_ns.max(1) as f64).log2(),
            });
        }
    }
    out
}

/// Runs every (size, method, cutoff) combination `trials` times on seeded
/// random inputs: entries in `{-5..5}` for exact rings, `[-1, 1]` for floats.
pub fn bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.sizes.is_empty() || cfg.sizes.contains(&0) {
        return Err(Error::input("sizes must be positive"));
    }
    if cfg.trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    if cfg.cutoffs.is_empty() || cfg.cutoffs.contains(&0) {
        return Err(Error::input("cutoffs must be positive"));
    }
    let rows = match cfg.ring {
        RingKind::Rational => run_series(cfg, |r| rational::int(r.gen_range(-5..=5)))?,
        RingKind::I64 => run_series(cfg, |r| r.gen_range(-5i64..=5))?,
        RingKind::F64 => run_series(cfg, |r| r.gen_range(-1.0f64..=1.0))?,
    };
    let slopes = slopes(&rows);
    Ok(BenchReport {
        seed: cfg.seed,
        rows,
        slopes,
    })
}
