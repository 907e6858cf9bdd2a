use crate::error::Result;
use crate::seqcore::{Approximants, Entry, Guard, SequenceSample, TransformTable, Width};

use super::{delta, TransformSpec};

/// `s0 - (s1 - s0)^2 / (s2 - 2 s1 + s0)` on three entries.
pub(crate) fn delta2_step(s0: Entry, s1: Entry, s2: Entry, guard: Guard) -> Entry {
    let (d0, st0) = delta(s0, s1);
    let (d1, st1) = delta(s1, s2);
    let inputs = st0.combine(st1);
    guard.lozenge(s0, -(d0 * d0), d1 - d0, inputs)
}

/// Aitken's Δ² formula at offset `n`.
pub fn aitken_delta2(sample: &SequenceSample, n: usize) -> Result<Entry> {
    sample.require_len(n + 3)?;
    let s = sample.values();
    Ok(delta2_step(
        Entry::valid(s[n]),
        Entry::valid(s[n + 1]),
        Entry::valid(s[n + 2]),
        Guard::default(),
    ))
}

/// Iterated Δ² process, `A_{k+1}^(n) = Δ²` applied to column `A_k`.
pub fn iterated_aitken(sample: &SequenceSample) -> Result<TransformTable> {
    table(sample, Guard::default())
}

pub(crate) fn table(sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
    sample.require_len(3)?;
    let mut t = TransformTable::new(TransformSpec::IteratedAitken, sample, 0, Approximants::AllOrders);
    let mut col: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();
    let mut k = 0;
    loop {
        let w = Width::TwiceOrder.of(k);
        let next: Vec<Entry> = col.windows(3).map(|w| delta2_step(w[0], w[1], w[2], guard)).collect();
        t.push_column(w, col);
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
    use crate::seqcore::EntryStatus;

    fn sample(v: &[f64]) -> SequenceSample {
        SequenceSample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delta2_examples() {
        assert_eq!(aitken_delta2(&sample(&[1.0, 1.5, 1.75]), 0).unwrap().value, 2.0);
        let v = aitken_delta2(&sample(&[1.0, 0.4, 0.25]), 0).unwrap().value;
        assert!((v - 0.2).abs() < 1e-15);
        let c = aitken_delta2(&sample(&[3.0, 3.0, 3.0]), 0).unwrap();
        assert_eq!(c.status, EntryStatus::Unstable);
        assert!(aitken_delta2(&sample(&[1.0, 2.0]), 0).is_err());
    }

    #[test]
    fn iterated_geometric() {
        let s = crate::seqcore::partial_sums(&[1.0, 0.5, 0.25, 0.125, 0.0625]).unwrap();
        let t = iterated_aitken(&s).unwrap();
        assert_eq!(t.value(1, 0), Some(2.0));
        assert_eq!(t.width(2), Some(4));
        assert_eq!(t.orders(), 3);
    }

    #[test]
    fn second_order_composes() {
        let s = sample(&[0.3, 1.1, 0.7, 0.95, 0.81]);
        let t = iterated_aitken(&s).unwrap();
        let firsts: Vec<f64> = (0..3).map(|n| t.value(1, n).unwrap()).collect();
        let again = aitken_delta2(&sample(&firsts), 0).unwrap().value;
        assert_eq!(t.value(2, 0).unwrap(), again);
    }
}
