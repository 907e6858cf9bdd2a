//! Expected error magnitudes and the decade-band comparison.

use std::collections::HashMap;
use std::io::Read;

use seqaccel::{error_against, EntryStatus};
use serde::Deserialize;

use crate::config::{BandPolicy, RunConfig};
use crate::error::BenchError;
use crate::registry::{method_label, parse_problem, parse_transform, problem_label, Method};
use crate::report::{apply, prepare, run, BenchmarkReport, RowStatus};

/// Reference error tables bundled with the harness.
pub const BUNDLED_FIXTURE: &str = include_str!("../fixtures/reference_tables.csv");

/// Correction applied to a printed value that is inconsistent with the
/// rest of its table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Erratum {
    /// Compare against this error instead of the printed one.
    Error(f64),
    /// The printed value belongs to entry `(k, n)`, not the staircase entry.
    Entry { k: usize, n: usize },
}

impl Erratum {
    fn parse(s: &str) -> Result<Option<Erratum>, BenchError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(None);
        }
        let bad = || BenchError::Config(format!("bad erratum {s:?}"));
        match s.split_once('=') {
            Some(("error", v)) => Ok(Some(Erratum::Error(v.parse().map_err(|_| bad())?))),
            Some(("entry", v)) => {
                let (k, n) = v.split_once(':').ok_or_else(bad)?;
                Ok(Some(Erratum::Entry {
                    k: k.parse().map_err(|_| bad())?,
                    n: n.parse().map_err(|_| bad())?,
                }))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawRow {
    table: u32,
    problem: String,
    transform: String,
    budget: usize,
    printed_error: f64,
    erratum: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRow {
    pub table: u32,
    /// Canonical problem label.
    pub problem: String,
    /// Canonical transform label.
    pub transform: String,
    pub budget: usize,
    pub printed_error: f64,
    pub erratum: Option<Erratum>,
}

impl FixtureRow {
    pub fn expected(&self) -> f64 {
        match self.erratum {
            Some(Erratum::Error(e)) => e,
            _ => self.printed_error,
        }
    }
}

pub fn load_fixture<R: Read>(reader: R) -> Result<Vec<FixtureRow>, BenchError> {
    let defaults = Default::default();
    let mut rdr = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for raw in rdr.deserialize::<RawRow>() {
        let raw = raw?;
        if !(raw.printed_error.is_finite() && raw.printed_error > 0.0) {
            return Err(BenchError::Config(format!(
                "fixture error {} must be positive",
                raw.printed_error
            )));
        }
        rows.push(FixtureRow {
            table: raw.table,
            problem: problem_label(&parse_problem(&raw.problem, &defaults)?),
            transform: method_label(&parse_transform(&raw.transform, &defaults)?),
            budget: raw.budget,
            printed_error: raw.printed_error,
            erratum: Erratum::parse(&raw.erratum)?,
        });
    }
    Ok(rows)
}

pub fn bundled_fixture() -> Vec<FixtureRow> {
    load_fixture(BUNDLED_FIXTURE.as_bytes()).expect("bundled fixture parses")
}

/// One run configuration per problem covering the fixture's budgets.
pub fn fixture_configs(fixture: &[FixtureRow], template: &RunConfig) -> Vec<RunConfig> {
    let mut order: Vec<&str> = Vec::new();
    for r in fixture {
        if !order.contains(&r.problem.as_str()) {
            order.push(&r.problem);
        }
    }
    order
        .into_iter()
        .map(|p| {
            let rows: Vec<&FixtureRow> = fixture.iter().filter(|r| r.problem == p).collect();
            let mut transforms: Vec<String> = Vec::new();
            for r in &rows {
                if !transforms.contains(&r.transform) {
                    transforms.push(r.transform.clone());
                }
            }
            RunConfig {
                problems: vec![p.to_string()],
                transforms,
                n_min: rows.iter().map(|r| r.budget).min().unwrap_or(0),
                n_max: rows.iter().map(|r| r.budget).max().unwrap_or(0),
                ..template.clone()
            }
        })
        .collect()
}

/// Run every configuration implied by the fixture and concatenate rows.
pub fn run_fixture(fixture: &[FixtureRow], template: &RunConfig) -> Result<BenchmarkReport, BenchError> {
    let mut report: Option<BenchmarkReport> = None;
    for config in fixture_configs(fixture, template) {
        let part = run(&config)?;
        match report.as_mut() {
            None => report = Some(part),
            Some(r) => {
                r.metadata.wall_time_ms += part.metadata.wall_time_ms;
                r.rows.extend(part.rows);
            }
        }
    }
    report.ok_or_else(|| BenchError::FixtureMismatch("empty fixture".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Unstable or undefined entries do not take part in the decision.
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub fixture: FixtureRow,
    pub observed: Option<f64>,
    /// `|log10(observed) - log10(expected)|`.
    pub gap: Option<f64>,
    pub allowed: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub rows: Vec<CheckRow>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl CheckSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn describe(row: &CheckRow) -> String {
        let f = &row.fixture;
        format!(
            "table {} {} {} n={}: observed {} expected {:.3e} gap {} (allowed {})",
            f.table,
            f.problem,
            f.transform,
            f.budget,
            row.observed.map(|o| format!("{o:.3e}")).unwrap_or_else(|| "-".into()),
            f.expected(),
            row.gap.map(|g| format!("{g:.2}")).unwrap_or_else(|| "-".into()),
            row.allowed,
        )
    }
}

/// Error of a specific table entry, for rows whose printed value belongs
/// to an entry other than the staircase one.
fn entry_error(
    f: &FixtureRow,
    k: usize,
    n: usize,
    template: &RunConfig,
) -> Result<(Option<f64>, RowStatus), BenchError> {
    let prepared = prepare(&f.problem, f.budget.max(n + 3 * k + 1), template)?;
    let method = parse_transform(&f.transform, &template.defaults)?;
    let entry = match (&method, apply(&method, &prepared.sample, template)?) {
        (Method::PartialSums, _) | (_, None) => return Ok((None, RowStatus::Undefined)),
        (_, Some(t)) => t.get(k, n.wrapping_sub(prepared.sample.start_index())),
    };
    let reference = prepared.sample.limit_ref();
    match (entry.status, reference) {
        (EntryStatus::Valid, Some(s)) => Ok((Some(error_against(entry.value, s)), RowStatus::Valid)),
        (st, _) => Ok((None, st.into())),
    }
}

/// Compare report rows with fixture rows under the band policy.
pub fn check_fixture(
    report: &BenchmarkReport,
    fixture: &[FixtureRow],
    policy: &BandPolicy,
    template: &RunConfig,
) -> Result<CheckSummary, BenchError> {
    let index: HashMap<(&str, &str, usize), usize> = report
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| ((r.problem.as_str(), r.transform.as_str(), r.budget), i))
        .collect();
    let mut rows = Vec::with_capacity(fixture.len());
    for f in fixture {
        let (observed, status) = match f.erratum {
            Some(Erratum::Entry { k, n }) => entry_error(f, k, n, template)?,
            _ => {
                let i = index
                    .get(&(f.problem.as_str(), f.transform.as_str(), f.budget))
                    .ok_or_else(|| {
                        BenchError::FixtureMismatch(format!(
                            "no report row for {} {} n={}",
                            f.problem, f.transform, f.budget
                        ))
                    })?;
                let r = &report.rows[*i];
                (r.abs_error, r.status)
            }
        };
        let expected = f.expected();
        let allowed = policy.allowed(expected);
        let (gap, verdict) = match (status, observed) {
            (RowStatus::Valid, Some(obs)) => {
                // an exact hit is floored at one ulp of the reference
                let obs = if obs == 0.0 { f64::EPSILON * expected.max(f64::MIN_POSITIVE) } else { obs };
                let gap = (obs.log10() - expected.log10()).abs();
                (Some(gap), if gap <= allowed { Verdict::Pass } else { Verdict::Fail })
            }
            (RowStatus::Valid, None) => {
                return Err(BenchError::FixtureMismatch(format!(
                    "{} has no reference value to compare against",
                    f.problem
                )))
            }
            _ => (None, Verdict::Skipped),
        };
        rows.push(CheckRow {
            fixture: f.clone(),
            observed,
            gap,
            allowed,
            verdict,
        });
    }
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    Ok(CheckSummary {
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        skipped: count(Verdict::Skipped),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ReportRow;

    fn report_with(err: f64) -> BenchmarkReport {
        BenchmarkReport {
            rows: vec![ReportRow {
                problem: "euler-gamma".into(),
                transform: "seps".into(),
                budget: 7,
                k: Some(4),
                n: Some(2),
                value: Some(0.5),
                abs_error: Some(err),
                status: RowStatus::Valid,
            }],
            ..Default::default()
        }
    }

    fn fixture(expected: f64) -> Vec<FixtureRow> {
        let text = format!("table,problem,transform,budget,printed_error,erratum\n3,euler-gamma,seps,7,{expected},\n");
        load_fixture(text.as_bytes()).unwrap()
    }

    fn verdict(observed: f64, expected: f64) -> Verdict {
        let c = RunConfig::new(vec![], vec![], 0, 0);
        check_fixture(&report_with(observed), &fixture(expected), &BandPolicy::default(), &c)
            .unwrap()
            .rows[0]
            .verdict
    }

    #[test]
    fn band_examples() {
        assert_eq!(verdict(2.0e-8, 1.521e-8), Verdict::Pass);
        assert_eq!(verdict(5e-10, 3.936e-13), Verdict::Fail);
        // 1.08 decades, and the expected value is not small enough to widen
        assert_eq!(verdict(9e-13, 1.075e-11), Verdict::Fail);
        assert_eq!(verdict(1.2e-12, 1.075e-11), Verdict::Pass);
        assert_eq!(verdict(5e-15, 3.0e-13), Verdict::Pass);
    }

    #[test]
    fn missing_row_is_mismatch() {
        let c = RunConfig::new(vec![], vec![], 0, 0);
        let f = load_fixture("table,problem,transform,budget,printed_error,erratum\n3,euler-gamma,rho,7,1e-8,\n".as_bytes())
            .unwrap();
        assert!(matches!(
            check_fixture(&report_with(1e-8), &f, &BandPolicy::default(), &c),
            Err(BenchError::FixtureMismatch(_))
        ));
    }

    #[test]
    fn bundled_fixture_parses() {
        let f = bundled_fixture();
        assert_eq!(f.len(), 280);
        assert!(f.iter().any(|r| matches!(r.erratum, Some(Erratum::Entry { k: 2, n: 5 }))));
        assert!(f.iter().any(|r| r.problem == "euler-divergent:z=3" && r.transform == "seps"));
    }
}
