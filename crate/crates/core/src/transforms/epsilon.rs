use crate::error::Result;
use crate::seqcore::{Approximants, Entry, Guard, SequenceSample, TransformTable, Width};

use super::{delta, TransformSpec};

/// Wynn's epsilon algorithm. Even columns are Shanks transforms, odd
/// columns are auxiliary.
pub fn epsilon(sample: &SequenceSample) -> Result<TransformTable> {
    table(sample, Guard::default())
}

pub(crate) fn table(sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
    sample.require_len(2)?;
    let mut t = TransformTable::new(TransformSpec::Epsilon, sample, 0, Approximants::EvenOrders);
    let mut prev: Vec<Entry> = vec![Entry::valid(0.0); sample.len() + 1];
    let mut cur: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let mut k = 0;
    loop {
        let next: Vec<Entry> = (0..cur.len().saturating_sub(1))
            .map(|n| {
                let (d, st) = delta(cur[n], cur[n + 1]);
                guard.lozenge(prev[n + 1], 1.0, d, st)
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

/// Last antidiagonal `ε_k^(N-k)`, `k = 0..=N`, computed by moving a single
/// array along the input.
pub fn epsilon_low_memory(sample: &SequenceSample) -> Result<Vec<Entry>> {
    low_memory(sample, Guard::default())
}

pub(crate) fn low_memory(sample: &SequenceSample, guard: Guard) -> Result<Vec<Entry>> {
    sample.require_len(2)?;
    // diag[j] holds ε_j^(m-j) after element m has been absorbed.
    let mut diag: Vec<Entry> = Vec::with_capacity(sample.len());
    for &s in sample.values() {
        let mut two_back = Entry::valid(0.0);
        let mut one_back = Entry::valid(s);
        for slot in diag.iter_mut() {
            let (d, st) = delta(*slot, one_back);
            let fresh = guard.lozenge(two_back, 1.0, d, st);
            two_back = std::mem::replace(slot, one_back);
            one_back = fresh;
        }
        diag.push(one_back);
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::EntryStatus;

    #[test]
    fn exp_partial_sums() {
        let s = SequenceSample::new(vec![1.0, 2.0, 2.5]).unwrap();
        let t = epsilon(&s).unwrap();
        assert_eq!(t.value(2, 0), Some(3.0));
        assert_eq!(t.value(0, 2), Some(2.5));
        assert_eq!(t.get(2, 1).status, EntryStatus::Undefined);
    }

    #[test]
    fn geometric_model_is_exact() {
        let s = SequenceSample::new((0..8).map(|n| 1.0 + 0.3f64.powi(n)).collect()).unwrap();
        let t = epsilon(&s).unwrap();
        for n in 0..6 {
            assert!((t.value(2, n).unwrap() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn low_memory_base_case() {
        let s = SequenceSample::new(vec![0.25, 1.0]).unwrap();
        let d = epsilon_low_memory(&s).unwrap();
        assert_eq!(d, vec![Entry::valid(1.0), Entry::valid(1.0 / 0.75)]);
    }

    #[test]
    fn low_memory_matches_table() {
        let s = SequenceSample::new((0..15).map(|n| ((n as f64) * 0.7).sin() / (n as f64 + 1.0)).collect())
            .unwrap();
        let t = epsilon(&s).unwrap();
        let d = epsilon_low_memory(&s).unwrap();
        let full = t.final_antidiagonal();
        assert_eq!(d.len(), full.len());
        for (a, b) in d.iter().zip(&full) {
            assert_eq!(a.status, b.status);
            assert!(a.value.to_bits() == b.value.to_bits() || (a.value.is_nan() && b.value.is_nan()));
        }
    }

    #[test]
    fn constant_input_is_unstable() {
        let s = SequenceSample::new(vec![2.0; 5]).unwrap();
        let t = epsilon(&s).unwrap();
        assert_eq!(t.get(1, 0).status, EntryStatus::Unstable);
        assert_eq!(t.get(2, 0).status, EntryStatus::Unstable);
        assert!(t.get(2, 0).value.is_nan());
    }
}
