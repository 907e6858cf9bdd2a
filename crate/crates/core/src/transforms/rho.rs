use crate::error::{Error, Result};
use crate::seqcore::{Approximants, Entry, EntryStatus, Guard, SequenceSample, TransformTable, Width};

use super::{delta, TransformSpec};

/// Source of the interpolation points used by the rho algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointsMode {
    /// `x_n = n + 1`, counted from the sample's start index.
    Standard,
    /// The points attached to the sample.
    FromSample,
}

/// Rho algorithm with numerator `x_{n+k+1} - x_n`.
pub fn rho(sample: &SequenceSample, mode: PointsMode) -> Result<TransformTable> {
    table(sample, mode, None, Guard::default())
}

/// Osada's variant with numerator `k + theta`.
pub fn rho_osada(sample: &SequenceSample, theta: f64) -> Result<TransformTable> {
    let spec = TransformSpec::RhoOsada { theta };
    spec.validate()?;
    table(sample, PointsMode::Standard, Some(theta), Guard::default())
}

pub(crate) fn standard_points(sample: &SequenceSample) -> Vec<f64> {
    (0..sample.len())
        .map(|i| (i + 1 + sample.start_index()) as f64)
        .collect()
}

pub(crate) fn table(
    sample: &SequenceSample,
    mode: PointsMode,
    osada: Option<f64>,
    guard: Guard,
) -> Result<TransformTable> {
    sample.require_len(2)?;
    let (kind, x) = match (osada, mode) {
        (Some(theta), _) => (TransformSpec::RhoOsada { theta }, Vec::new()),
        (None, PointsMode::Standard) => (TransformSpec::RhoStandard, standard_points(sample)),
        (None, PointsMode::FromSample) => (
            TransformSpec::RhoGeneral,
            sample.points().ok_or(Error::MissingPoints)?.to_vec(),
        ),
    };
    let mut t = TransformTable::new(kind, sample, 0, Approximants::EvenOrders);
    let mut prev: Vec<Entry> = vec![Entry::valid(0.0); sample.len() + 1];
    let mut cur: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let mut k = 0;
    loop {
        let next: Vec<Entry> = (0..cur.len().saturating_sub(1))
            .map(|n| {
                let num = match osada {
                    Some(theta) => k as f64 + theta,
                    None => x[n + k + 1] - x[n],
                };
                let (d, st) = delta(cur[n], cur[n + 1]);
                guard.lozenge(prev[n + 1], num, d, st)
            })
            .collect();
        t.push_column(Width::Order.of(k), cur.clone());
        if next.is_empty() {
            break;
        }
        prev = std::mem::replace(&mut cur, next);
        k += 1;
    }
    Ok(t)
}

/// Estimates of the decay exponent of a logarithmically convergent
/// sequence, one per window `S_n..S_{n+3}`.
pub fn decay_estimate(sample: &SequenceSample) -> Result<Vec<Entry>> {
    sample.require_len(4)?;
    let guard = Guard::default();
    let s = sample.values();
    Ok(s.windows(4)
        .map(|w| {
            let d0 = w[1] - w[0];
            let d1 = w[2] - w[1];
            let d2 = w[3] - w[2];
            let dd0 = d1 - d0;
            let dd1 = d2 - d1;
            let den = d1 * dd1 - d2 * dd0;
            if !guard.admits(den) {
                return Entry::UNSTABLE;
            }
            Entry::derived(dd0 * dd1 / den - 1.0, EntryStatus::Valid)
        })
        .collect())
}
