use crate::error::Result;
use crate::seqcore::{Approximants, Entry, EntryStatus, Guard, SequenceSample, TransformTable, Width};

use super::{delta, TransformSpec};

/// Equivalent closed forms of the second theta column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta2Form {
    /// Correction anchored at `S_{n+1}`; the default.
    AnchoredNext,
    /// Single ratio of products of partial sums and differences.
    Ratio,
    /// Quotient of second differences of `S_{n+1}/ΔS_n` and `1/ΔS_n`.
    DifferenceQuotient,
    /// Correction anchored at `S_{n+3}`.
    AnchoredLast,
}

impl Theta2Form {
    pub const ALL: [Theta2Form; 4] = [
        Theta2Form::AnchoredNext,
        Theta2Form::Ratio,
        Theta2Form::DifferenceQuotient,
        Theta2Form::AnchoredLast,
    ];
}

/// Second theta column from four consecutive entries, default form.
pub(crate) fn theta2_step(w: &[Entry], guard: Guard) -> Entry {
    let (d0, a) = delta(w[0], w[1]);
    let (d1, b) = delta(w[1], w[2]);
    let (d2, c) = delta(w[2], w[3]);
    let inputs = a.combine(b).combine(c);
    let dd0 = d1 - d0;
    let dd1 = d2 - d1;
    let den = d2 * dd0 - d0 * dd1;
    guard.lozenge(w[1], -(d0 * d1 * dd1), den, inputs)
}

/// `ϑ_2^(n)` evaluated by the chosen closed form.
pub fn theta2(sample: &SequenceSample, n: usize, form: Theta2Form) -> Result<Entry> {
    sample.require_len(n + 4)?;
    let guard = Guard::default();
    let s = &sample.values()[n..n + 4];
    let d0 = s[1] - s[0];
    let d1 = s[2] - s[1];
    let d2 = s[3] - s[2];
    let dd0 = d1 - d0;
    let dd1 = d2 - d1;
    let den = d2 * dd0 - d0 * dd1;
    let value = match form {
        Theta2Form::AnchoredNext => {
            let e: Vec<Entry> = s.iter().map(|&v| Entry::valid(v)).collect();
            return Ok(theta2_step(&e, guard));
        }
        Theta2Form::Ratio => {
            if !guard.admits(den) {
                return Ok(Entry::UNSTABLE);
            }
            (s[1] * d2 * dd0 - s[2] * d0 * dd1) / den
        }
        Theta2Form::DifferenceQuotient => {
            if !(guard.admits(d0) && guard.admits(d1) && guard.admits(d2)) {
                return Ok(Entry::UNSTABLE);
            }
            let num = s[3] / d2 - 2.0 * (s[2] / d1) + s[1] / d0;
            let q = 1.0 / d2 - 2.0 / d1 + 1.0 / d0;
            if !guard.admits(q) {
                return Ok(Entry::UNSTABLE);
            }
            num / q
        }
        Theta2Form::AnchoredLast => {
            if !guard.admits(den) {
                return Ok(Entry::UNSTABLE);
            }
            s[3] - d2 * (d2 * dd0 + d1 * d1 - d2 * d0) / den
        }
    };
    Ok(Entry::derived(value, EntryStatus::Valid))
}

/// Brezinski's theta algorithm. Even columns approximate the limit.
pub fn theta(sample: &SequenceSample) -> Result<TransformTable> {
    table(sample, Guard::default())
}

pub(crate) fn table(sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
    sample.require_len(4)?;
    let mut t = TransformTable::new(TransformSpec::Theta, sample, 0, Approximants::EvenOrders);
    let mut prev_odd: Vec<Entry> = vec![Entry::valid(0.0); sample.len() + 1];
    let mut even: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let mut k = 0;
    loop {
        let odd: Vec<Entry> = (0..even.len().saturating_sub(1))
            .map(|n| {
                let (d, st) = delta(even[n], even[n + 1]);
                guard.lozenge(prev_odd[n + 1], 1.0, d, st)
            })
            .collect();
        let next: Vec<Entry> = (0..odd.len().saturating_sub(2))
            .map(|n| {
                let (de, se) = delta(even[n + 1], even[n + 2]);
                let (do0, s0) = delta(odd[n], odd[n + 1]);
                let (do1, s1) = delta(odd[n + 1], odd[n + 2]);
                guard.lozenge(even[n + 1], de * do1, do1 - do0, se.combine(s0).combine(s1))
            })
            .collect();
        t.push_column(Width::Theta.of(2 * k), even);
        if odd.is_empty() {
            break;
        }
        t.push_column(Width::Theta.of(2 * k + 1), odd.clone());
        if next.is_empty() {
            break;
        }
        even = next;
        prev_odd = odd;
        k += 1;
    }
    Ok(t)
}

/// Iterated second theta column, `J_{k+1} = ϑ_2` applied to `J_k`.
pub fn iterated_theta(sample: &SequenceSample) -> Result<TransformTable> {
    iterated_table(sample, Guard::default())
}

pub(crate) fn iterated_table(sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
    sample.require_len(4)?;
    let mut t = TransformTable::new(TransformSpec::IteratedTheta, sample, 0, Approximants::AllOrders);
    let mut col: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let mut k = 0;
    loop {
        let next: Vec<Entry> = col.windows(4).map(|w| theta2_step(w, guard)).collect();
        t.push_column(Width::ThriceOrder.of(k), col);
        if next.is_empty() {
            break;
        }
        col = next;
        k += 1;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: Vec<f64>) -> SequenceSample {
        SequenceSample::new(v).unwrap()
    }

    #[test]
    fn forms_agree() {
        let s = sample(vec![0.31, 1.27, 0.66, 0.98, 0.72]);
        for n in 0..2 {
            let base = theta2(&s, n, Theta2Form::AnchoredNext).unwrap().value;
            for form in Theta2Form::ALL {
                let v = theta2(&s, n, form).unwrap().value;
                assert!(((v - base) / base).abs() <= 1e-10, "{form:?}");
            }
        }
    }

    #[test]
    fn geometric_is_exact() {
        let s = sample((0..4).map(|n| 1.0 + 0.5f64.powi(n)).collect());
        for form in Theta2Form::ALL {
            assert!((theta2(&s, 0, form).unwrap().value - 1.0).abs() <= 1e-12, "{form:?}");
        }
    }

    #[test]
    fn table_shape_and_columns() {
        let s = sample((0..10).map(|n| (-1f64).powi(n) / (n as f64 + 1.0)).collect());
        let t = theta(&s).unwrap();
        assert_eq!(t.width(2), Some(3));
        assert_eq!(t.width(4), Some(6));
        assert_eq!(t.value(0, 3), Some(s.values()[3]));
        let j = iterated_theta(&s).unwrap();
        for n in 0..7 {
            let a = t.value(2, n).unwrap();
            let b = theta2(&s, n, Theta2Form::AnchoredNext).unwrap().value;
            assert!(((a - b) / b).abs() <= 1e-12);
            assert_eq!(j.value(1, n), Some(b));
        }
    }
}
