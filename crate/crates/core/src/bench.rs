//! Batch runs comparing the PTAS, the baseline and the oracle.
//!
//! Records are computed in parallel, then sorted by `(instance id, eps
//! position)`, so report files do not depend on scheduling. Wall times are
//! only recorded when asked for.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::ReportError;
use crate::generate::{generate, GeneratorSpec, SpecError};
use crate::oracle::{baseline_two_thirds, exact_opt, verify_solution};
use crate::rational::Rational;
use crate::solver::{solve_ptas, SolverConfig};
use crate::triangles::TriangleSet;

pub const SCHEMA: &str = "tf2m-bench v1";

pub const CSV_COLUMNS: [&str; 17] = [
    "id",
    "model",
    "seed",
    "n",
    "m",
    "triangles",
    "eps",
    "ptas_weight",
    "baseline_weight",
    "oracle_weight",
    "ptas_ratio",
    "baseline_ratio",
    "iterations",
    "iteration_bound",
    "ptas_ms",
    "baseline_ms",
    "oracle_ms",
];

/// Decimal places used when rendering ratios.
pub const RATIO_PLACES: usize = 6;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub instances: Vec<(String, GeneratorSpec)>,
    pub eps: Vec<Rational>,
    pub oracle: bool,
    pub oracle_limit: usize,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub id: String,
    pub model: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub triangles: usize,
    pub eps: Rational,
    pub ptas_weight: Rational,
    pub baseline_weight: Rational,
    pub oracle_weight: Option<Rational>,
    /// `ptas / oracle`, or 1 when both are zero.
    pub ptas_ratio: Option<Rational>,
    pub baseline_ratio: Option<Rational>,
    pub iterations: u64,
    pub iteration_bound: Option<Rational>,
    pub feasible: bool,
    pub ptas_ms: Option<u128>,
    pub baseline_ms: Option<u128>,
    pub oracle_ms: Option<u128>,
}

impl BenchRecord {
    /// `ptas >= (1 - eps) opt` and `baseline >= (2/3)(1 - eps) opt`, exactly.
    pub fn within_bounds(&self) -> bool {
        let Some(opt) = &self.oracle_weight else {
            return true;
        };
        let keep = Rational::one() - &self.eps;
        let ptas_ok = self.ptas_weight >= &keep * opt;
        let base_ok = self.baseline_weight >= Rational::new(2, 3) * &keep * opt;
        ptas_ok && base_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchSummary {
    pub records: usize,
    pub oracle_rows: usize,
    pub ptas_ratio_min: Option<Rational>,
    pub ptas_ratio_mean: Option<Rational>,
    pub baseline_ratio_min: Option<Rational>,
    pub baseline_ratio_mean: Option<Rational>,
    pub bound_violations: usize,
    pub infeasible: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub records: Vec<BenchRecord>,
    pub summary: BenchSummary,
}

fn ratio(x: &Rational, opt: &Rational) -> Rational {
    if opt.is_zero() {
        Rational::one()
    } else {
        x / opt
    }
}

fn run_instance(id: &str, spec: &GeneratorSpec, config: &BenchConfig) -> Result<Vec<BenchRecord>, SpecError> {
    let g = generate(spec)?;
    let t = TriangleSet::enumerate(&g);
    let ms = |start: Instant| config.timing.then(|| start.elapsed().as_millis());
    let started = Instant::now();
    let oracle = if config.oracle {
        exact_opt(&g, &t, config.oracle_limit).ok()
    } else {
        None
    };
    let oracle_ms = oracle.as_ref().and_then(|_| ms(started));
    let mut out = Vec::with_capacity(config.eps.len());
    for eps in &config.eps {
        let solver = SolverConfig::new(eps.clone()).expect("eps validated by caller");
        let started = Instant::now();
        let ptas = solve_ptas(&g, &t, &solver).expect("validated config");
        let ptas_ms = ms(started);
        let started = Instant::now();
        let base = baseline_two_thirds(&g, &t, eps).expect("validated config");
        let baseline_ms = ms(started);
        let feasible = verify_solution(&g, &t, &ptas.solution).is_feasible()
            && verify_solution(&g, &t, &base.solution).is_feasible();
        let opt = oracle.as_ref().map(|o| o.weight.clone());
        out.push(BenchRecord {
            id: id.to_string(),
            model: spec.model.to_string(),
            seed: spec.seed,
            n: g.vertex_count(),
            m: g.edge_count(),
            triangles: t.len(),
            eps: eps.clone(),
            ptas_ratio: opt.as_ref().map(|o| ratio(&ptas.weight, o)),
            baseline_ratio: opt.as_ref().map(|o| ratio(&base.weight, o)),
            oracle_weight: opt,
            ptas_weight: ptas.weight,
            baseline_weight: base.weight,
            iterations: ptas.iterations,
            iteration_bound: ptas.iteration_bound,
            feasible,
            ptas_ms,
            baseline_ms,
            oracle_ms,
        });
    }
    Ok(out)
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, SpecError> {
    let per_instance: Result<Vec<Vec<BenchRecord>>, SpecError> = config
        .instances
        .par_iter()
        .map(|(id, spec)| run_instance(id, spec, config))
        .collect();
    let mut records: Vec<BenchRecord> = per_instance?.into_iter().flatten().collect();
    let eps_pos = |e: &Rational| config.eps.iter().position(|x| x == e);
    records.sort_by(|a, b| a.id.cmp(&b.id).then(eps_pos(&a.eps).cmp(&eps_pos(&b.eps))));
    let summary = summarize(&records);
    Ok(BenchReport {
        schema: SCHEMA,
        records,
        summary,
    })
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let stats = |pick: fn(&BenchRecord) -> Option<&Rational>| {
        let values: Vec<&Rational> = records.iter().filter_map(pick).collect();
        if values.is_empty() {
            return (None, None);
        }
        let min = values.iter().min().map(|r| (*r).clone());
        let total: Rational = values.iter().copied().sum();
        let mean = total / Rational::from_integer(values.len() as i64);
        (min, Some(mean))
    };
    let (ptas_ratio_min, ptas_ratio_mean) = stats(|r| r.ptas_ratio.as_ref());
    let (baseline_ratio_min, baseline_ratio_mean) = stats(|r| r.baseline_ratio.as_ref());
    BenchSummary {
        records: records.len(),
        oracle_rows: records.iter().filter(|r| r.oracle_weight.is_some()).count(),
        ptas_ratio_min,
        ptas_ratio_mean,
        baseline_ratio_min,
        baseline_ratio_mean,
        bound_violations: records.iter().filter(|r| !r.within_bounds()).count(),
        infeasible: records.iter().filter(|r| !r.feasible).count(),
    }
}

fn opt_str<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn opt_ratio(x: &Option<Rational>) -> String {
    x.as_ref().map(|r| r.to_decimal(RATIO_PLACES)).unwrap_or_default()
}

/// CSV text: the schema comment, the header, one row per record, then the
/// `summary-min` and `summary-mean` rows (ratio columns only).
pub fn to_csv(report: &BenchReport) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(format!("# {SCHEMA}\n").into_bytes());
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in &report.records {
        w.write_record([
            r.id.clone(),
            r.model.clone(),
            r.seed.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.triangles.to_string(),
            r.eps.to_string(),
            r.ptas_weight.to_string(),
            r.baseline_weight.to_string(),
            opt_str(&r.oracle_weight),
            opt_ratio(&r.ptas_ratio),
            opt_ratio(&r.baseline_ratio),
            r.iterations.to_string(),
            opt_str(&r.iteration_bound),
            opt_str(&r.ptas_ms),
            opt_str(&r.baseline_ms),
            opt_str(&r.oracle_ms),
        ])
        .map_err(csv_err)?;
    }
    let s = &report.summary;
    if !report.records.is_empty() {
        for (label, ptas, base) in [
            ("summary-min", &s.ptas_ratio_min, &s.baseline_ratio_min),
            ("summary-mean", &s.ptas_ratio_mean, &s.baseline_ratio_mean),
        ] {
            let mut row = vec![String::new(); CSV_COLUMNS.len()];
            row[0] = label.to_string();
            row[10] = opt_ratio(ptas);
            row[11] = opt_ratio(base);
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| csv_err(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> ReportError {
    ReportError::Csv(e.to_string())
}

pub fn to_json(report: &BenchReport) -> Result<String, ReportError> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), ReportError> {
    let io_err = |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Writes `<stem>.csv` and `<stem>.json` into `dir`.
pub fn write_reports(report: &BenchReport, dir: &Path, stem: &str) -> Result<(PathBuf, PathBuf), ReportError> {
    std::fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let csv = dir.join(format!("{stem}.csv"));
    let json = dir.join(format!("{stem}.json"));
    write_atomic(&csv, &to_csv(report)?)?;
    write_atomic(&json, &to_json(report)?)?;
    Ok((csv, json))
}

/// `count` copies of `template` with `n` cycling through `n_min..=n_max`
/// and seeds `template.seed, template.seed + 1, ...`. Ids are
/// `<prefix>-<index>`, zero-padded to five digits.
pub fn corpus(
    prefix: &str,
    template: &GeneratorSpec,
    count: usize,
    n_min: usize,
    n_max: usize,
) -> Vec<(String, GeneratorSpec)> {
    let span = n_max.saturating_sub(n_min) + 1;
    (0..count)
        .map(|i| {
            let spec = GeneratorSpec {
                n: n_min + i % span,
                seed: template.seed.wrapping_add(i as u64),
                ..template.clone()
            };
            (format!("{prefix}-{i:05}"), spec)
        })
        .collect()
}
