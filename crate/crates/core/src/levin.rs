//! Levin's transformation with explicit or derived remainder estimates.

use crate::error::{Error, Result};
use crate::seqcore::{Approximants, Entry, EntryStatus, Guard, SequenceSample, TransformTable};
use crate::transforms::TransformSpec;

/// How the remainder estimates `ω_n` are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RemainderPolicy {
    /// Supplied by the caller, aligned with the sample.
    ExplicitList,
    /// `ω_n = (β + n) ΔS_{n-1}`.
    UVariant { beta: f64 },
    /// `ω_n = ΔS_{n-1} ΔS_n / (ΔS_{n-1} - ΔS_n)`.
    VVariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderEstimates {
    values: Vec<f64>,
    policy: RemainderPolicy,
}

/// Estimates resolved against a sample.
struct Resolved {
    omega: Vec<Entry>,
    /// Elements before `S_n` that `ω_n` reads.
    lead: usize,
    /// Elements past `S_n` that `ω_n` reads.
    reach: usize,
}

impl RemainderEstimates {
    /// Caller-supplied estimates. Every value must be finite and nonzero.
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite() || *v == 0.0) {
            return Err(Error::BadEstimates { index });
        }
        Ok(RemainderEstimates {
            values,
            policy: RemainderPolicy::ExplicitList,
        })
    }

    pub fn u_variant(beta: f64) -> Self {
        RemainderEstimates {
            values: Vec::new(),
            policy: RemainderPolicy::UVariant { beta },
        }
    }

    pub fn v_variant() -> Self {
        RemainderEstimates {
            values: Vec::new(),
            policy: RemainderPolicy::VVariant,
        }
    }

    pub fn policy(&self) -> RemainderPolicy {
        self.policy
    }

    /// Explicit values; empty for derived policies.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Estimates multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        match self.policy {
            RemainderPolicy::ExplicitList => {
                RemainderEstimates::explicit(self.values.iter().map(|v| c * v).collect())
            }
            _ => Err(Error::BadArgument(
                "only explicit estimates can be rescaled".into(),
            )),
        }
    }

    fn resolve(&self, sample: &SequenceSample, guard: Guard) -> Result<Resolved> {
        let s = sample.values();
        let usable = |w: f64| {
            if w.is_finite() && w != 0.0 {
                Entry::valid(w)
            } else {
                Entry::UNSTABLE
            }
        };
        match self.policy {
            RemainderPolicy::ExplicitList => {
                if self.values.len() < s.len() {
                    return Err(Error::InsufficientData {
                        needed: s.len(),
                        available: self.values.len(),
                    });
                }
                Ok(Resolved {
                    omega: self.values[..s.len()].iter().map(|&w| Entry::valid(w)).collect(),
                    lead: 0,
                    reach: 0,
                })
            }
            RemainderPolicy::UVariant { beta } => {
                let omega = (0..s.len())
                    .map(|i| {
                        if i == 0 {
                            return Entry::UNDEFINED;
                        }
                        let n = (sample.start_index() + i) as f64;
                        usable((beta + n) * (s[i] - s[i - 1]))
                    })
                    .collect();
                Ok(Resolved { omega, lead: 1, reach: 0 })
            }
            RemainderPolicy::VVariant => {
                let omega = (0..s.len())
                    .map(|i| {
                        if i == 0 || i + 1 >= s.len() {
                            return Entry::UNDEFINED;
                        }
                        let a = s[i] - s[i - 1];
                        let b = s[i + 1] - s[i];
                        if !guard.admits(a - b) {
                            return Entry::UNSTABLE;
                        }
                        usable(a * b / (a - b))
                    })
                    .collect();
                Ok(Resolved { omega, lead: 1, reach: 1 })
            }
        }
    }
}

/// `L_k^(n)` from `S_n..S_{n+k}` and `ω_n..ω_{n+k}`; `n` is absolute.
fn levin_entry(s: &[f64], omega: &[Entry], beta: f64, n: usize, guard: Guard) -> Entry {
    let k = s.len() - 1;
    let status = omega
        .iter()
        .fold(EntryStatus::Valid, |acc, w| acc.combine(w.status));
    if status != EntryStatus::Valid {
        return Entry::derived(f64::NAN, status);
    }
    if k == 0 {
        return Entry::valid(s[0]);
    }
    let bn = beta + n as f64;
    let last = bn + k as f64;
    let mut binom = 1.0;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..=k {
        let ratio = ((bn + j as f64) / last).powi(k as i32 - 1);
        let c = if j % 2 == 0 { binom } else { -binom } * ratio;
        num += c * s[j] / omega[j].value;
        den += c / omega[j].value;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    if !guard.admits(den) {
        return Entry::UNSTABLE;
    }
    Entry::derived(num / den, EntryStatus::Valid)
}

pub(crate) fn table(
    sample: &SequenceSample,
    beta: f64,
    estimates: &RemainderEstimates,
    kind: TransformSpec,
    guard: Guard,
) -> Result<TransformTable> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::BadParameter(format!("beta must be positive, got {beta}")));
    }
    let r = estimates.resolve(sample, guard)?;
    sample.require_len(r.lead + r.reach + 1)?;
    let s = sample.values();
    let mut t = TransformTable::new(kind, sample, r.lead, Approximants::AllOrders);
    for k in 0.. {
        let width = k + r.reach;
        let len = t.column_len(width);
        if len <= r.lead {
            break;
        }
        let col = (0..len)
            .map(|i| {
                if i < r.lead {
                    Entry::UNDEFINED
                } else {
                    let n = sample.start_index() + i;
                    levin_entry(&s[i..=i + k], &r.omega[i..=i + k], beta, n, guard)
                }
            })
            .collect();
        t.push_column(width, col);
    }
    Ok(t)
}

/// Levin's transformation with caller-chosen remainder estimates.
pub fn levin_general(
    sample: &SequenceSample,
    beta: f64,
    estimates: &RemainderEstimates,
) -> Result<TransformTable> {
    let kind = TransformSpec::LevinGeneral {
        beta,
        estimates: estimates.clone(),
    };
    table(sample, beta, estimates, kind, Guard::default())
}

/// Levin's u transformation.
pub fn levin_u(sample: &SequenceSample, beta: f64) -> Result<TransformTable> {
    TransformSpec::LevinU { beta }.apply(sample)
}

/// Levin's v transformation.
pub fn levin_v(sample: &SequenceSample, beta: f64) -> Result<TransformTable> {
    TransformSpec::LevinV { beta }.apply(sample)
}

fn window(sample: &SequenceSample, n: usize) -> Result<[f64; 4]> {
    if n == 0 {
        return Err(Error::BadArgument("offset must be at least 1".into()));
    }
    sample.require_len(n + 3)?;
    let s = sample.values();
    Ok([s[n - 1], s[n], s[n + 1], s[n + 2]])
}

/// `u_2^(n)` in closed form; independent of β. `n` is an offset `>= 1`.
pub fn u2_explicit(sample: &SequenceSample, n: usize) -> Result<Entry> {
    let [a, b, c, d] = window(sample, n)?;
    let (dm, d0, dp) = (b - a, c - b, d - c);
    let (ddm, dd0) = (d0 - dm, dp - d0);
    let den = dp * ddm - dm * dd0;
    if !Guard::default().admits(den) {
        return Ok(Entry::UNSTABLE);
    }
    Ok(Entry::derived(b - dm * d0 * dd0 / den, EntryStatus::Valid))
}

/// `v_1^(n)` in closed form; independent of β. `n` is an offset `>= 1`.
pub fn v1_explicit(sample: &SequenceSample, n: usize) -> Result<Entry> {
    let [a, b, c, d] = window(sample, n)?;
    let (dm, d0, dp) = (b - a, c - b, d - c);
    let (ddm, dd0) = (d0 - dm, dp - d0);
    let den = dm * dd0 - dp * ddm;
    if !Guard::default().admits(den) {
        return Ok(Entry::UNSTABLE);
    }
    Ok(Entry::derived(b + d0 * dm * dd0 / den, EntryStatus::Valid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SequenceSample {
        SequenceSample::new((0..10).map(|n| (-1f64).powi(n) / (n as f64 + 1.0) + 0.3).collect()).unwrap()
    }

    #[test]
    fn order_zero_is_input() {
        let s = sample();
        let w = RemainderEstimates::explicit((0..10).map(|n| 1.0 + n as f64).collect()).unwrap();
        let t = levin_general(&s, 1.0, &w).unwrap();
        for n in 0..10 {
            assert_eq!(t.value(0, n), Some(s.values()[n]));
        }
    }

    #[test]
    fn single_term_remainder_exact() {
        let omega: Vec<f64> = (0..8).map(|n| 0.7f64.powi(n) / (n as f64 + 2.0)).collect();
        let s = SequenceSample::new(omega.iter().map(|w| 2.0 + w).collect()).unwrap();
        let t = levin_general(&s, 1.0, &RemainderEstimates::explicit(omega).unwrap()).unwrap();
        for n in 0..7 {
            assert!((t.value(1, n).unwrap() - 2.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn zero_estimate_rejected() {
        assert_eq!(
            RemainderEstimates::explicit(vec![1.0, 0.0]).unwrap_err(),
            Error::BadEstimates { index: 1 }
        );
    }

    #[test]
    fn explicit_forms() {
        let s = sample();
        let u = levin_u(&s, 1.0).unwrap();
        let v = levin_v(&s, 1.0).unwrap();
        assert_eq!(u.lead(), 1);
        assert_eq!(u.get(2, 0).status, EntryStatus::Undefined);
        for n in 1..7 {
            let a = u2_explicit(&s, n).unwrap().value;
            let b = v1_explicit(&s, n).unwrap().value;
            assert!(((u.value(2, n).unwrap() - a) / a).abs() <= 1e-12);
            assert!(((v.value(1, n).unwrap() - b) / b).abs() <= 1e-12);
            assert!(((a - b) / b).abs() <= 1e-12);
        }
        assert!(u2_explicit(&s, 0).is_err());
    }

    #[test]
    fn u2_independent_of_beta() {
        let s = sample();
        let a = levin_u(&s, 1.0).unwrap();
        let b = levin_u(&s, 7.0).unwrap();
        for n in 1..7 {
            let (x, y) = (a.value(2, n).unwrap(), b.value(2, n).unwrap());
            assert!(((x - y) / y).abs() <= 1e-12);
        }
    }

    #[test]
    fn geometric_exact() {
        let s = SequenceSample::new((0..5).map(|n| 1.0 + 0.3f64.powi(n)).collect()).unwrap();
        assert!((u2_explicit(&s, 1).unwrap().value - 1.0).abs() <= 1e-12);
        assert!((v1_explicit(&s, 1).unwrap().value - 1.0).abs() <= 1e-12);
    }
}
