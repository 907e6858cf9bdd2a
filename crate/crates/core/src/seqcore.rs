//! Input samples, per-entry status bookkeeping and triangular tables.
//!
//! A transformation maps a finite string of partial sums `S_n, ..., S_{n+l(k)}`
//! to an entry `T_k^(n)`. Every table records, for each order `k`, the width
//! `l(k)` of the input window past `S_n` that the entry consumes, so that the
//! highest-order entry available for a given number of terms can be located
//! without knowing how the table was produced.

use crate::error::{Error, Result};
use crate::transforms::TransformSpec;

/// An ordered string of partial sums `S_0..S_N`, optionally with
/// interpolation points `x_0..x_N` and a reference limit.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSample {
    values: Vec<f64>,
    points: Option<Vec<f64>>,
    limit_ref: Option<f64>,
    start_index: usize,
}

impl SequenceSample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(SequenceSample {
            values,
            points: None,
            limit_ref: None,
            start_index: 0,
        })
    }

    /// Attach interpolation points. They must match the values in length and
    /// be positive and strictly increasing.
    pub fn with_points(mut self, points: Vec<f64>) -> Result<Self> {
        if points.len() != self.values.len() {
            return Err(Error::BadPoints(format!(
                "{} points for {} values",
                points.len(),
                self.values.len()
            )));
        }
        if let Some((index, &value)) = points.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        if points[0] <= 0.0 {
            return Err(Error::BadPoints(format!("x_0 = {} is not positive", points[0])));
        }
        if let Some(i) = points.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::BadPoints(format!(
                "points not strictly increasing at index {}",
                i + 1
            )));
        }
        self.points = Some(points);
        Ok(self)
    }

    pub fn with_limit(mut self, limit: f64) -> Self {
        self.limit_ref = Some(limit);
        self
    }

    pub fn with_start_index(mut self, start_index: usize) -> Self {
        self.start_index = start_index;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> Option<&[f64]> {
        self.points.as_deref()
    }

    pub fn limit_ref(&self) -> Option<f64> {
        self.limit_ref
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Offset `N` of the last element, relative to the first.
    pub fn last(&self) -> usize {
        self.values.len() - 1
    }

    /// The first `len` elements, keeping points, limit and start index.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        if len > self.values.len() {
            return Err(Error::InsufficientData {
                needed: len,
                available: self.values.len(),
            });
        }
        Ok(SequenceSample {
            values: self.values[..len].to_vec(),
            points: self.points.as_ref().map(|p| p[..len].to_vec()),
            limit_ref: self.limit_ref,
            start_index: self.start_index,
        })
    }

    pub(crate) fn require_len(&self, needed: usize) -> Result<()> {
        if self.values.len() < needed {
            Err(Error::InsufficientData {
                needed,
                available: self.values.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Running sums of `terms`.
pub fn partial_sums(terms: &[f64]) -> Result<SequenceSample> {
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let values = terms
        .iter()
        .scan(0.0, |acc, &t| {
            *acc += t;
            Some(*acc)
        })
        .collect();
    SequenceSample::new(values)
}

/// `|value - reference|`.
pub fn error_against(value: f64, reference: f64) -> f64 {
    (value - reference).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryStatus {
    Valid,
    /// A denominator on the path to this entry fell below the guard.
    Unstable,
    /// Outside the triangle or not computable from the available input.
    Undefined,
}

impl EntryStatus {
    /// Status of an entry computed from inputs with the given statuses.
    pub fn combine(self, other: EntryStatus) -> EntryStatus {
        use EntryStatus::*;
        match (self, other) {
            (Undefined, _) | (_, Undefined) => Undefined,
            (Unstable, _) | (_, Unstable) => Unstable,
            _ => Valid,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntryStatus::Valid => "valid",
            EntryStatus::Unstable => "unstable",
            EntryStatus::Undefined => "undefined",
        }
    }
}

/// A table entry. Non-valid entries carry `NaN` as value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub value: f64,
    pub status: EntryStatus,
}

impl Entry {
    pub const UNDEFINED: Entry = Entry {
        value: f64::NAN,
        status: EntryStatus::Undefined,
    };
    pub const UNSTABLE: Entry = Entry {
        value: f64::NAN,
        status: EntryStatus::Unstable,
    };

    pub fn valid(value: f64) -> Entry {
        Entry {
            value,
            status: EntryStatus::Valid,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.status == EntryStatus::Valid
    }

    /// The value if the entry is valid.
    pub fn get(&self) -> Option<f64> {
        self.is_valid().then_some(self.value)
    }

    /// Entry with `value` whose inputs had status `inputs`; a non-finite
    /// value is demoted to unstable.
    pub(crate) fn derived(value: f64, inputs: EntryStatus) -> Entry {
        match inputs {
            EntryStatus::Valid if value.is_finite() => Entry::valid(value),
            EntryStatus::Valid | EntryStatus::Unstable => Entry::UNSTABLE,
            EntryStatus::Undefined => Entry::UNDEFINED,
        }
    }
}

/// Threshold below which a recursion denominator counts as vanished.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Guard(f64);

impl Guard {
    pub const DEFAULT: f64 = 1e-30;

    pub fn new(threshold: f64) -> Result<Guard> {
        if threshold.is_finite() && threshold >= 0.0 {
            Ok(Guard(threshold))
        } else {
            Err(Error::BadParameter(format!(
                "guard threshold must be finite and non-negative, got {threshold}"
            )))
        }
    }

    pub fn threshold(self) -> f64 {
        self.0
    }

    /// Whether `den` may be divided by.
    pub fn admits(self, den: f64) -> bool {
        den.is_finite() && den != 0.0 && den.abs() >= self.0
    }

    /// `base + num / den` with status propagation.
    pub(crate) fn lozenge(self, base: Entry, num: f64, den: f64, inputs: EntryStatus) -> Entry {
        let inputs = inputs.combine(base.status);
        if inputs != EntryStatus::Valid {
            return Entry::derived(f64::NAN, inputs);
        }
        if !self.admits(den) {
            return Entry::UNSTABLE;
        }
        Entry::derived(base.value + num / den, inputs)
    }
}

impl Default for Guard {
    fn default() -> Self {
        Guard(Self::DEFAULT)
    }
}

/// Which orders of a table approximate the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approximants {
    /// Only even orders; odd columns are auxiliary.
    EvenOrders,
    /// Every order.
    AllOrders,
}

impl Approximants {
    fn admits(self, k: usize) -> bool {
        match self {
            Approximants::EvenOrders => k.is_multiple_of(2),
            Approximants::AllOrders => true,
        }
    }
}

/// Input width `l(k)` as a function of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Width {
    /// `l(k) = k`
    Order,
    /// `l(k) = k + 1`
    OrderPlusOne,
    /// `l(k) = 2k`
    TwiceOrder,
    /// `l(k) = 3k`
    ThriceOrder,
    /// `l(2k) = 3k`, `l(2k+1) = 3k+1`
    Theta,
    /// `l(0) = 0`, `l(1) = 1`, `l(k) = k+1` for `k >= 2`
    Seps,
}

impl Width {
    pub fn of(self, k: usize) -> usize {
        match self {
            Width::Order => k,
            Width::OrderPlusOne => k + 1,
            Width::TwiceOrder => 2 * k,
            Width::ThriceOrder => 3 * k,
            Width::Theta => 3 * (k / 2) + k % 2,
            Width::Seps => {
                if k < 2 {
                    k
                } else {
                    k + 1
                }
            }
        }
    }
}

/// Triangular array of entries `T_k^(n)`.
///
/// Column `k` holds the entries for offsets `n = 0..=N - l(k)` relative to
/// the first sample element; offsets below `lead` (transforms that read
/// `S_{n-1}`) are undefined.
#[derive(Debug, Clone)]
pub struct TransformTable {
    columns: Vec<Vec<Entry>>,
    widths: Vec<usize>,
    lead: usize,
    last: usize,
    start_index: usize,
    approximants: Approximants,
    kind: TransformSpec,
}

impl TransformTable {
    pub(crate) fn new(
        kind: TransformSpec,
        sample: &SequenceSample,
        lead: usize,
        approximants: Approximants,
    ) -> Self {
        TransformTable {
            columns: Vec::new(),
            widths: Vec::new(),
            lead,
            last: sample.last(),
            start_index: sample.start_index(),
            approximants,
            kind,
        }
    }

    /// Number of entries column `k` can hold given its width.
    pub(crate) fn column_len(&self, width: usize) -> usize {
        (self.last + 1).saturating_sub(width)
    }

    pub(crate) fn push_column(&mut self, width: usize, column: Vec<Entry>) {
        debug_assert_eq!(column.len(), self.column_len(width));
        debug_assert!(self.widths.last().is_none_or(|&w| w <= width));
        self.widths.push(width);
        self.columns.push(column);
    }

    /// Entry at order `k` and offset `n`; undefined outside the triangle.
    pub fn get(&self, k: usize, n: usize) -> Entry {
        self.columns
            .get(k)
            .and_then(|c| c.get(n))
            .copied()
            .unwrap_or(Entry::UNDEFINED)
    }

    pub fn value(&self, k: usize, n: usize) -> Option<f64> {
        self.get(k, n).get()
    }

    pub fn column(&self, k: usize) -> &[Entry] {
        self.columns.get(k).map(|c| c.as_slice()).unwrap_or(&[])
    }

    /// Number of stored columns (highest order + 1).
    pub fn orders(&self) -> usize {
        self.columns.len()
    }

    /// `l(k)`, the number of elements past `S_n` that `T_k^(n)` consumes.
    pub fn width(&self, k: usize) -> Option<usize> {
        self.widths.get(k).copied()
    }

    /// Elements before `S_n` that an entry also reads.
    pub fn lead(&self) -> usize {
        self.lead
    }

    pub fn last(&self) -> usize {
        self.last
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn approximants(&self) -> Approximants {
        self.approximants
    }

    pub fn kind(&self) -> &TransformSpec {
        &self.kind
    }

    /// The entries `T_k^(N - l(k))` whose window ends at the last element.
    pub fn final_antidiagonal(&self) -> Vec<Entry> {
        (0..self.orders())
            .filter_map(|k| {
                let n = self.last.checked_sub(self.widths[k])?;
                Some(self.get(k, n))
            })
            .collect()
    }
}

/// The entry reported for a budget of input terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircaseEntry {
    pub k: usize,
    /// Absolute index of the first input element, `start_index + offset`.
    pub n: usize,
    pub value: f64,
    pub status: EntryStatus,
}

/// Highest-order approximant whose input window ends exactly at `S_budget`.
///
/// `budget` is an absolute index, i.e. it includes the sample's start
/// index. Odd auxiliary orders are skipped for epsilon-type tables. When the
/// highest candidate is not valid, the highest valid lower order is taken;
/// if none is valid the highest candidate is returned with its status.
pub fn staircase_entry(table: &TransformTable, budget: usize) -> Result<StaircaseEntry> {
    let rel = budget
        .checked_sub(table.start_index)
        .ok_or_else(|| Error::BadArgument(format!(
            "budget {budget} precedes the first sample index {}",
            table.start_index
        )))?;
    if rel > table.last {
        return Err(Error::InsufficientData {
            needed: rel + 1,
            available: table.last + 1,
        });
    }
    let candidates: Vec<(usize, usize)> = (0..table.orders())
        .rev()
        .filter(|&k| table.approximants.admits(k))
        .filter_map(|k| {
            let n = rel.checked_sub(table.widths[k])?;
            (n >= table.lead).then_some((k, n))
        })
        .collect();
    let pick = candidates
        .iter()
        .find(|&&(k, n)| table.get(k, n).is_valid())
        .or_else(|| candidates.first())
        .copied();
    match pick {
        Some((k, n)) => {
            let e = table.get(k, n);
            Ok(StaircaseEntry {
                k,
                n: n + table.start_index,
                value: e.value,
                status: e.status,
            })
        }
        None => Err(Error::InsufficientData {
            needed: table.lead + table.widths.first().copied().unwrap_or(0) + 1,
            available: rel + 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums_direct() {
        let s = partial_sums(&[1.0, -0.5, 1.0 / 3.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5, 0.8333333333333333]);
        assert_eq!(s.start_index(), 0);
        assert!(s.points().is_none());
        assert!(s.limit_ref().is_none());
        assert_eq!(partial_sums(&[0.0]).unwrap().values(), &[0.0]);
        assert_eq!(partial_sums(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn sample_rejects_bad_input() {
        assert!(matches!(
            SequenceSample::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        let s = SequenceSample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(s.clone().with_points(vec![1.0, 2.0]).is_err());
        assert!(s.clone().with_points(vec![0.0, 1.0, 2.0]).is_err());
        assert!(s.clone().with_points(vec![1.0, 1.0, 2.0]).is_err());
        assert!(s.with_points(vec![0.5, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn error_against_examples() {
        assert!((error_against(3.0, std::f64::consts::E) - 0.2817181715409549).abs() < 1e-15);
        assert_eq!(error_against(1.25, 1.25), 0.0);
        assert!(error_against(0.5772156649, 0.577215664901532) <= 1e-10);
    }

    #[test]
    fn widths() {
        assert_eq!((0..6).map(|k| Width::Theta.of(k)).collect::<Vec<_>>(), [0, 1, 3, 4, 6, 7]);
        assert_eq!((0..5).map(|k| Width::Seps.of(k)).collect::<Vec<_>>(), [0, 1, 3, 4, 5]);
    }

    #[test]
    fn status_combination() {
        use EntryStatus::*;
        assert_eq!(Valid.combine(Valid), Valid);
        assert_eq!(Valid.combine(Unstable), Unstable);
        assert_eq!(Unstable.combine(Undefined), Undefined);
    }

    #[test]
    fn guard_rejects_tiny_denominators() {
        let g = Guard::default();
        assert!(!g.admits(0.0));
        assert!(!g.admits(1e-31));
        assert!(!g.admits(f64::NAN));
        assert!(g.admits(-1e-29));
        let e = g.lozenge(Entry::valid(1.0), 1.0, 1e-40, EntryStatus::Valid);
        assert_eq!(e.status, EntryStatus::Unstable);
        assert!(e.value.is_nan());
        assert!(Guard::new(-1.0).is_err());
    }
}
