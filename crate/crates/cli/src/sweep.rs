//! Batch evaluation over ranges of `(n, d, g)` with `k = n - 2`.
//!
//! Work is fanned out over a rayon pool; results are collected in input order
//! and written by this thread alone, so output bytes depend only on the sweep parameters.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use cohsys::exact::{IntPoly, Rational};
use cohsys::moduli::{certified_walls_k_n_minus_2, chambers_k_n_minus_2, SystemType};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{group_walls, poincare_at, PoincarePayload, WallOut};
use crate::error::CliError;
use crate::OutputFormat;

/// Inclusive integer range written `a:b` or `a`; empty when `a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn values(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("expected an integer or a range a:b, got {s:?}"))
        };
        match s.split_once(':') {
            Some((a, b)) => Ok(IntRange { lo: parse(a)?, hi: parse(b)? }),
            None => {
                let v = parse(s)?;
                Ok(IntRange { lo: v, hi: v })
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Odd,
    Even,
    All,
}

impl Parity {
    fn admits(self, d: i64) -> bool {
        match self {
            Parity::Odd => d.rem_euclid(2) == 1,
            Parity::Even => d.rem_euclid(2) == 0,
            Parity::All => true,
        }
    }
}

/// Which chambers of each type to evaluate, at their midpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChamberRule {
    All,
    Lowest,
    Highest,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub n: IntRange,
    pub d: IntRange,
    pub g: IntRange,
    pub parity: Parity,
    pub chambers: ChamberRule,
    pub out: PathBuf,
    pub format: OutputFormat,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), CliError> {
        let checks = [(self.n, 3, "n"), (self.d, 1, "d"), (self.g, 2, "g")];
        for (range, min, name) in checks {
            if !range.is_empty() && range.lo < min {
                return Err(CliError::Invalid(format!(
                    "{name} range {range} must start at {min} or above"
                )));
            }
        }
        Ok(())
    }

    fn types(&self) -> Vec<SystemType> {
        let mut out = Vec::new();
        for n in self.n.values() {
            for d in self.d.values().filter(|&d| self.parity.admits(d)) {
                for g in self.g.values() {
                    out.push(SystemType { n, d, k: n - 2, g });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// No Poincaré polynomial: `d` is even.
    EvenDegree,
    /// No Poincaré polynomial: the moduli space is empty.
    Empty,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::EvenDegree => "even_degree",
            Status::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: i64,
    pub d: i64,
    pub k: i64,
    pub g: i64,
    pub chamber: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub walls: Vec<WallOut>,
    pub status: Status,
    pub poincare: Option<PoincarePayload>,
}

fn records_for(s: SystemType, rule: ChamberRule) -> Result<Vec<SweepRecord>, CliError> {
    let walls = group_walls(&certified_walls_k_n_minus_2(&s)?);
    let mut chambers = chambers_k_n_minus_2(&s)?;
    match rule {
        ChamberRule::All => {}
        ChamberRule::Lowest => chambers.truncate(1),
        ChamberRule::Highest => {
            chambers.drain(..chambers.len() - 1);
        }
    }
    let status = if s.d.rem_euclid(2) == 0 {
        Status::EvenDegree
    } else if !s.satisfies_section_bound() {
        Status::Empty
    } else {
        Status::Ok
    };
    chambers
        .into_iter()
        .map(|c| {
            let poincare = match status {
                Status::Ok => Some(poincare_at(s, c.sample())?),
                _ => None,
            };
            Ok(SweepRecord {
                n: s.n,
                d: s.d,
                k: s.k,
                g: s.g,
                chamber: c.index,
                lo: c.lo,
                hi: c.hi,
                walls: walls.clone(),
                status,
                poincare,
            })
        })
        .collect()
}

/// Worker count from `COHSYS_THREADS`, or rayon's default when unset.
fn thread_count() -> Result<usize, CliError> {
    match std::env::var("COHSYS_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Invalid(format!(
                "COHSYS_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

pub fn compute(spec: &SweepSpec) -> Result<Vec<SweepRecord>, CliError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let types = spec.types();
    let nested: Vec<Vec<SweepRecord>> = pool.install(|| {
        types
            .par_iter()
            .map(|&s| records_for(s, spec.chambers))
            .collect::<Result<_, _>>()
    })?;
    Ok(nested.into_iter().flatten().collect())
}

/// Runs the sweep and writes it to `spec.out`, returning the record count.
/// The file is created (truncated) before any work so that an unwritable
/// path fails fast and an empty range leaves an empty file. Invalid specs
/// are rejected before the file is touched.
pub fn run(spec: &SweepSpec) -> Result<usize, CliError> {
    let unwritable = |e: std::io::Error| {
        CliError::Unwritable(format!("cannot write {}: {e}", spec.out.display()))
    };
    spec.validate()?;
    thread_count()?;
    let file = File::create(&spec.out).map_err(unwritable)?;
    let records = compute(spec)?;
    let mut w = BufWriter::new(file);
    match spec.format {
        OutputFormat::Json => {
            for r in &records {
                let line = serde_json::to_string(r)?;
                writeln!(w, "{line}").map_err(unwritable)?;
            }
        }
        OutputFormat::Csv if records.is_empty() => {}
        OutputFormat::Csv => write_csv(&mut w, &records).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => unwritable(io),
            other => CliError::Internal(format!("{other:?}")),
        })?,
    }
    w.flush().map_err(unwritable)?;
    Ok(records.len())
}

/// One row per record; Betti columns run to the largest `2 beta` present
/// and are left blank where a record has none.
fn write_csv<W: Write>(w: W, records: &[SweepRecord]) -> csv::Result<()> {
    let width = records
        .iter()
        .filter_map(|r| r.poincare.as_ref())
        .map(betti_width)
        .max()
        .unwrap_or(0);
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = ["n", "d", "k", "g", "chamber", "alpha", "status", "beta", "palindrome"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..width).map(|i| format!("b{i}")));
    out.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.n.to_string(),
            r.d.to_string(),
            r.k.to_string(),
            r.g.to_string(),
            r.chamber.to_string(),
            r.lo.midpoint(&r.hi).to_string(),
            r.status.as_str().to_string(),
        ];
        match &r.poincare {
            Some(p) => {
                row.push(p.beta.to_string());
                row.push(p.palindrome.to_string());
                row.extend(betti_row(&p.coeffs, width));
            }
            None => row.extend(std::iter::repeat_n(String::new(), 2 + width)),
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Number of Betti columns `b0..b_{2 beta}`, widened if the polynomial is longer.
pub fn betti_width(p: &PoincarePayload) -> usize {
    let by_beta = usize::try_from(2 * p.beta + 1).unwrap_or(0);
    by_beta.max(p.coeffs.coeffs().len())
}

pub fn betti_row(poly: &IntPoly, width: usize) -> Vec<String> {
    (0..width).map(|i| poly.coeff(i).to_string()).collect()
}
