use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use seqaccel::problems::{generate, ProblemSpec};
use seqaccel::{error_against, staircase_entry, EntryStatus, Error, SequenceSample, TransformTable};

use crate::config::RunConfig;
use crate::error::BenchError;
use crate::registry::{method_label, parse_problem, parse_transform, problem_label, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Valid,
    Unstable,
    /// Not enough input for any admissible entry.
    Undefined,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Valid => "valid",
            RowStatus::Unstable => "unstable",
            RowStatus::Undefined => "undefined",
        }
    }

    pub fn parse(s: &str) -> Option<RowStatus> {
        match s {
            "valid" => Some(RowStatus::Valid),
            "unstable" => Some(RowStatus::Unstable),
            "undefined" => Some(RowStatus::Undefined),
            _ => None,
        }
    }
}

impl From<EntryStatus> for RowStatus {
    fn from(s: EntryStatus) -> Self {
        match s {
            EntryStatus::Valid => RowStatus::Valid,
            EntryStatus::Unstable => RowStatus::Unstable,
            EntryStatus::Undefined => RowStatus::Undefined,
        }
    }
}

/// One staircase entry of one (problem, transform) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub problem: String,
    pub transform: String,
    pub budget: usize,
    pub k: Option<usize>,
    pub n: Option<usize>,
    /// Present only for valid entries.
    pub value: Option<f64>,
    /// Present for valid entries of problems with a reference value.
    pub abs_error: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub version: String,
    pub precision: String,
    pub guard: f64,
    pub timestamp: u64,
    pub wall_time_ms: f64,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata {
            version: concat!("seqaccel-bench ", env!("CARGO_PKG_VERSION")).to_string(),
            precision: "IEEE-754 binary64".to_string(),
            guard: seqaccel::Guard::DEFAULT,
            timestamp: 0,
            wall_time_ms: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchmarkReport {
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
}

impl BenchmarkReport {
    pub fn find(&self, problem: &str, transform: &str, budget: usize) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.problem == problem && r.transform == transform && r.budget == budget)
    }
}

/// A generated problem ready to be transformed.
pub struct Prepared {
    pub label: String,
    pub sample: SequenceSample,
}

pub fn prepare(problem: &str, n_max: usize, config: &RunConfig) -> Result<Prepared, BenchError> {
    let kind = parse_problem(problem, &config.defaults)?;
    let start = kind.default_start_index();
    let count = (n_max + 1).saturating_sub(start).max(4);
    let g = generate(&ProblemSpec::new(kind.clone(), count)?)?;
    Ok(Prepared {
        label: problem_label(&kind),
        sample: g.sample,
    })
}

fn undefined_row(problem: &str, transform: &str, budget: usize) -> ReportRow {
    ReportRow {
        problem: problem.to_string(),
        transform: transform.to_string(),
        budget,
        k: None,
        n: None,
        value: None,
        abs_error: None,
        status: RowStatus::Undefined,
    }
}

fn row(p: &Prepared, transform: &str, budget: usize, k: usize, n: usize, value: f64, st: EntryStatus) -> ReportRow {
    let valid = st == EntryStatus::Valid;
    ReportRow {
        problem: p.label.clone(),
        transform: transform.to_string(),
        budget,
        k: Some(k),
        n: Some(n),
        value: valid.then_some(value),
        abs_error: if valid {
            p.sample.limit_ref().map(|s| error_against(value, s))
        } else {
            None
        },
        status: st.into(),
    }
}

/// Apply a method, treating too-short input as an empty table.
pub fn apply(method: &Method, sample: &SequenceSample, config: &RunConfig) -> Result<Option<TransformTable>, BenchError> {
    match method {
        Method::PartialSums => Ok(None),
        Method::Transform(t) => match t.apply_with_guard(sample, config.guard) {
            Ok(table) => Ok(Some(table)),
            Err(Error::InsufficientData { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        },
    }
}

fn cell(p: &Prepared, method: &Method, config: &RunConfig) -> Result<Vec<ReportRow>, BenchError> {
    let label = method_label(method);
    let table = apply(method, &p.sample, config)?;
    let start = p.sample.start_index();
    let rows = (config.n_min..=config.n_max)
        .map(|budget| {
            let rel = budget.wrapping_sub(start);
            match (method, &table) {
                (Method::PartialSums, _) => match p.sample.values().get(rel) {
                    Some(&v) if budget >= start => row(p, &label, budget, 0, budget, v, EntryStatus::Valid),
                    _ => undefined_row(&p.label, &label, budget),
                },
                (_, Some(t)) => match staircase_entry(t, budget) {
                    Ok(e) => row(p, &label, budget, e.k, e.n, e.value, e.status),
                    Err(_) => undefined_row(&p.label, &label, budget),
                },
                (_, None) => undefined_row(&p.label, &label, budget),
            }
        })
        .collect();
    Ok(rows)
}

/// Run every (problem, transform) cell. Rows come out ordered by problem,
/// then transform, then budget, in configuration order.
pub fn run(config: &RunConfig) -> Result<BenchmarkReport, BenchError> {
    config.validate()?;
    let clock = Instant::now();
    let methods: Vec<Method> = config
        .transforms
        .iter()
        .map(|t| parse_transform(t, &config.defaults))
        .collect::<Result<_, _>>()?;
    let prepared: Vec<Prepared> = config
        .problems
        .par_iter()
        .map(|p| prepare(p, config.n_max, config))
        .collect::<Result<_, _>>()?;
    let cells: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|p| (0..methods.len()).map(move |m| (p, m)))
        .collect();
    let parts: Vec<Vec<ReportRow>> = cells
        .par_iter()
        .map(|&(p, m)| cell(&prepared[p], &methods[m], config))
        .collect::<Result<_, _>>()?;
    let metadata = Metadata {
        guard: config.guard.threshold(),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        wall_time_ms: clock.elapsed().as_secs_f64() * 1e3,
        ..Metadata::default()
    };
    Ok(BenchmarkReport {
        metadata,
        rows: parts.into_iter().flatten().collect(),
    })
}
