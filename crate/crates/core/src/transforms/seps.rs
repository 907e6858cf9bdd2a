use crate::error::Result;
use crate::seqcore::{Approximants, Entry, EntryStatus, Guard, SequenceSample, TransformTable, Width};

use super::theta::theta2_step;
use super::{delta, TransformSpec};

fn f1_window(s: &[f64], guard: Guard) -> Entry {
    let d0 = s[1] - s[0];
    let d1 = s[2] - s[1];
    let d2 = s[3] - s[2];
    let dd0 = d1 - d0;
    let dd1 = d2 - d1;
    let den = d2 * dd0 - d0 * dd1;
    if !guard.admits(den) {
        return Entry::UNSTABLE;
    }
    Entry::derived(dd0 * dd1 / den, EntryStatus::Valid)
}

pub(crate) fn f1_column(sample: &SequenceSample, guard: Guard) -> Vec<Entry> {
    sample.values().windows(4).map(|w| f1_window(w, guard)).collect()
}

/// Linear coefficient `F_1^(n)` of the numerator rule, determined by
/// requiring `T_2` to be the second theta column.
pub fn seps_f1(sample: &SequenceSample, n: usize) -> Result<Entry> {
    sample.require_len(n + 4)?;
    Ok(f1_window(&sample.values()[n..n + 4], Guard::default()))
}

/// Generalized epsilon recursion with `T_0 = S`, `T_1 = 1/ΔS`, `T_2 = ϑ_2`
/// and numerator `1 - k + k F_1^(n)` for `k >= 2`.
pub fn seps(sample: &SequenceSample) -> Result<TransformTable> {
    table(sample, Guard::default())
}

pub(crate) fn table(sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
    sample.require_len(4)?;
    let mut t = TransformTable::new(TransformSpec::Seps, sample, 0, Approximants::EvenOrders);
    let s: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let f1 = f1_column(sample, guard);
    let mut prev: Vec<Entry> = s
        .windows(2)
        .map(|w| {
            let (d, st) = delta(w[0], w[1]);
            guard.lozenge(Entry::valid(0.0), 1.0, d, st)
        })
        .collect();
    let mut cur: Vec<Entry> = s.windows(4).map(|w| theta2_step(w, guard)).collect();
    t.push_column(Width::Seps.of(0), s);
    t.push_column(Width::Seps.of(1), prev.clone());
    let mut k = 2;
    loop {
        t.push_column(Width::Seps.of(k), cur.clone());
        let len = t.column_len(Width::Seps.of(k + 1));
        if len == 0 {
            break;
        }
        let kf = k as f64;
        let next: Vec<Entry> = (0..len)
            .map(|n| {
                let (d, st) = delta(cur[n], cur[n + 1]);
                let num = 1.0 - kf + kf * f1[n].value;
                guard.lozenge(prev[n + 1], num, d, st.combine(f1[n].status))
            })
            .collect();
        prev = std::mem::replace(&mut cur, next);
        k += 1;
    }
    Ok(t)
}
