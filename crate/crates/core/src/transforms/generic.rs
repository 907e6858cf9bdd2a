use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seqcore::{Approximants, Entry, Guard, SequenceSample, TransformTable};

use super::seps::f1_column;
use super::theta::theta2_step;
use super::{delta, TransformSpec};

type CustomFn = dyn Fn(usize, usize, &SequenceSample) -> std::result::Result<f64, String> + Send + Sync;

/// Numerator `F_k^(n)` of the recursion
/// `T_{k+1}^(n) = T_{k-1}^(n+1) + F_k^(n) / (T_k^(n+1) - T_k^(n))`.
#[derive(Clone)]
pub enum FRule {
    /// `F_k = c`.
    Constant(f64),
    /// `F_k = f0 + k (f1 - f0)`.
    Linear { f0: f64, f1: f64 },
    /// `F_k^(n) = x_{n+k+1} - x_n` from the sample's points.
    PointGap,
    /// `F_k^(n) = 1 - k + k F_1^(n)` with `F_1^(n)` from [`super::seps_f1`].
    SepsF1,
    /// Caller-supplied evaluator of `(k, n, sample)`, reading at most
    /// `reach` elements past `S_n`.
    Custom { reach: usize, eval: Arc<CustomFn> },
}

impl FRule {
    pub fn custom<F>(reach: usize, eval: F) -> FRule
    where
        F: Fn(usize, usize, &SequenceSample) -> std::result::Result<f64, String> + Send + Sync + 'static,
    {
        FRule::Custom {
            reach,
            eval: Arc::new(eval),
        }
    }

    /// Offset of the last element past `S_n` that `F_k^(n)` reads.
    pub fn reach(&self, k: usize) -> usize {
        match self {
            FRule::Constant(_) | FRule::Linear { .. } => 0,
            FRule::PointGap => k + 1,
            FRule::SepsF1 => 3,
            FRule::Custom { reach, .. } => *reach,
        }
    }

    /// Whether the value varies with `n`.
    pub fn depends_on_n(&self) -> bool {
        !matches!(self, FRule::Constant(_) | FRule::Linear { .. })
    }
}

impl fmt::Debug for FRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FRule::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            FRule::Linear { f0, f1 } => f.debug_struct("Linear").field("f0", f0).field("f1", f1).finish(),
            FRule::PointGap => f.write_str("PointGap"),
            FRule::SepsF1 => f.write_str("SepsF1"),
            FRule::Custom { reach, .. } => f.debug_struct("Custom").field("reach", reach).finish_non_exhaustive(),
        }
    }
}

/// Initial columns of the generic recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initializer {
    /// `T_{-1} = 0`, `T_0 = S`; the recursion starts at `k = 0`.
    Epsilon,
    /// `T_0 = S`, `T_1 = 1/ΔS`, `T_2 = ϑ_2`; the recursion starts at `k = 2`.
    Seps,
}

/// Evaluates a rule with whatever per-sample data it needs precomputed.
struct Evaluator<'a> {
    rule: &'a FRule,
    sample: &'a SequenceSample,
    f1: Vec<Entry>,
}

impl<'a> Evaluator<'a> {
    fn new(rule: &'a FRule, sample: &'a SequenceSample, guard: Guard) -> Result<Self> {
        if matches!(rule, FRule::PointGap) && sample.points().is_none() {
            return Err(Error::MissingPoints);
        }
        let f1 = match rule {
            FRule::SepsF1 => f1_column(sample, guard),
            _ => Vec::new(),
        };
        Ok(Evaluator { rule, sample, f1 })
    }

    fn eval(&self, k: usize, n: usize) -> Result<Entry> {
        let kf = k as f64;
        let v = match self.rule {
            FRule::Constant(c) => *c,
            FRule::Linear { f0, f1 } => f0 + kf * (f1 - f0),
            FRule::PointGap => {
                let x = self.sample.points().expect("checked in new");
                x[n + k + 1] - x[n]
            }
            FRule::SepsF1 => {
                if k == 0 {
                    1.0
                } else {
                    let f1 = self.f1[n];
                    if !f1.is_valid() {
                        return Ok(f1);
                    }
                    1.0 - kf + kf * f1.value
                }
            }
            FRule::Custom { eval, .. } => eval(k, n, self.sample)
                .map_err(|reason| Error::BadRule { k, n, reason })?,
        };
        if v.is_finite() {
            Ok(Entry::valid(v))
        } else {
            Err(Error::BadRule {
                k,
                n,
                reason: format!("non-finite value {v}"),
            })
        }
    }
}

/// Generic lozenge recursion driven by an arbitrary numerator rule.
pub fn generic_f(sample: &SequenceSample, rule: &FRule, init: Initializer) -> Result<TransformTable> {
    table(sample, rule, init, Guard::default())
}

pub(crate) fn table(
    sample: &SequenceSample,
    rule: &FRule,
    init: Initializer,
    guard: Guard,
) -> Result<TransformTable> {
    let ev = Evaluator::new(rule, sample, guard)?;
    let kind = TransformSpec::GenericF {
        rule: rule.clone(),
        init,
    };
    let mut t = TransformTable::new(kind, sample, 0, Approximants::EvenOrders);
    let s0: Vec<Entry> = sample.values().iter().map(|&v| Entry::valid(v)).collect();

    let (mut prev, mut cur, mut cur_w, mut k) = match init {
        Initializer::Epsilon => {
            sample.require_len(2)?;
            (vec![Entry::valid(0.0); sample.len() + 1], s0, 0, 0)
        }
        Initializer::Seps => {
            sample.require_len(4)?;
            let c1: Vec<Entry> = s0
                .windows(2)
                .map(|w| {
                    let (d, st) = delta(w[0], w[1]);
                    guard.lozenge(Entry::valid(0.0), 1.0, d, st)
                })
                .collect();
            let c2: Vec<Entry> = s0.windows(4).map(|w| theta2_step(w, guard)).collect();
            t.push_column(0, s0);
            t.push_column(1, c1.clone());
            (c1, c2, 3, 2)
        }
    };
    loop {
        t.push_column(cur_w, cur.clone());
        let w = (cur_w + 1).max(rule.reach(k));
        let len = t.column_len(w);
        if len == 0 {
            break;
        }
        let mut next = Vec::with_capacity(len);
        for n in 0..len {
            let f = ev.eval(k, n)?;
            let (d, st) = delta(cur[n], cur[n + 1]);
            next.push(guard.lozenge(prev[n + 1], f.value, d, st.combine(f.status)));
        }
        prev = std::mem::replace(&mut cur, next);
        cur_w = w;
        k += 1;
    }
    Ok(t)
}
