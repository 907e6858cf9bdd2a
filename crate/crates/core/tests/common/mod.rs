#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqaccel::{Entry, EntryStatus, SequenceSample, TransformTable};

/// Partial sums of terms `r_j q^j` with `r_j` uniform in `[-1, 1]`.
pub fn random_sample(seed: u64, len: usize) -> SequenceSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q: f64 = rng.gen_range(0.3..0.9);
    let mut s = 0.0;
    let values = (0..len)
        .map(|j| {
            s += rng.gen_range(-1.0..1.0) * q.powi(j as i32);
            s
        })
        .collect();
    SequenceSample::new(values).unwrap()
}

/// Sequence `1 + Σ c_i λ_i^n` with random amplitudes and ratios; its
/// low-order transforms are well conditioned.
pub fn smooth_sample(seed: u64, len: usize) -> SequenceSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..0.9)).collect();
    let amps: Vec<f64> = (0..3).map(|_| rng.gen_range(0.5..2.0)).collect();
    let values = (0..len)
        .map(|n| {
            1.0 + lambdas
                .iter()
                .zip(&amps)
                .map(|(l, c)| c * l.powi(n as i32))
                .sum::<f64>()
        })
        .collect();
    SequenceSample::new(values).unwrap()
}

/// Same status, and the same value when valid. Signed zeros compare equal.
pub fn same(a: Entry, b: Entry) -> bool {
    a.status == b.status && (a.status != EntryStatus::Valid || a.value == b.value)
}

pub fn tables_identical(a: &TransformTable, b: &TransformTable) -> bool {
    a.orders() == b.orders()
        && (0..a.orders()).all(|k| {
            a.column(k).len() == b.column(k).len()
                && a.column(k).iter().zip(b.column(k)).all(|(x, y)| same(*x, *y))
        })
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
