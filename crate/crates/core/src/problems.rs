//! Test series and model sequences with reference limits.
//!
//! The registry names used on the command line are given by
//! [`ProblemKind::name`]. Linearly convergent sequences have remainder
//! ratios tending to some `0 < |ρ| < 1`, logarithmically convergent ones to
//! `ρ = 1`.

use crate::error::{Error, Result};
use crate::seqcore::{partial_sums, SequenceSample};
use crate::special::inv_z_series_terms;

/// Limit `S` of the model sequences.
pub const MODEL_LIMIT: f64 = 1.0;

/// Euler's constant to the fifteen digits used as reference.
pub const EULER_GAMMA_DIGITS: f64 = 0.577215664901532;

/// Divergent terms are not generated beyond this magnitude.
pub const TERM_LIMIT: f64 = 1e300;

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    /// `Σ (-1)^k / (k+1)`, limit `ln 2`.
    AltLn2,
    /// `Σ (4/5)^(k+1) / (k+1)`, limit `ln 5`.
    MonoLn5,
    /// `1 + Σ_{k=1}^n [1/(k+1) + ln(k/(k+1))]`, limit Euler's constant.
    EulerGamma,
    /// Binomial series of the lemniscate constant `A`.
    Lemniscate,
    /// `Σ k̂_{m-1/2}(z)/(2^m m!)`, limit `1/z`.
    RbfInvZ { z: f64 },
    /// Euler series `Σ (-1)^m m! z^-m`, summed to `z e^z E_1(z)`.
    EulerDivergent { z: f64 },
    /// `S + Σ c_j n^(η-j)`.
    ModelLog { eta: f64, coeffs: Vec<f64> },
    /// `S + ξ^n Σ c_j n^(η-j)`. `|ξ| = 1` is not a linearly convergent case.
    ModelLinear { xi: f64, eta: f64, coeffs: Vec<f64> },
    /// `S + ξ^n / (n!)^r Σ c_j n^(η-j)` with `r > 0`.
    ModelHyper { xi: f64, r: f64, eta: f64, coeffs: Vec<f64> },
    /// `Σ z^k`, limit `1/(1-z)`.
    Geometric { z: f64 },
}

impl ProblemKind {
    pub const NAMES: [&'static str; 10] = [
        "alt-ln2",
        "mono-ln5",
        "euler-gamma",
        "lemniscate",
        "rbf-invz",
        "euler-divergent",
        "model-log",
        "model-linear",
        "model-hyper",
        "geometric",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::AltLn2 => "alt-ln2",
            ProblemKind::MonoLn5 => "mono-ln5",
            ProblemKind::EulerGamma => "euler-gamma",
            ProblemKind::Lemniscate => "lemniscate",
            ProblemKind::RbfInvZ { .. } => "rbf-invz",
            ProblemKind::EulerDivergent { .. } => "euler-divergent",
            ProblemKind::ModelLog { .. } => "model-log",
            ProblemKind::ModelLinear { .. } => "model-linear",
            ProblemKind::ModelHyper { .. } => "model-hyper",
            ProblemKind::Geometric { .. } => "geometric",
        }
    }

    /// Default index of the first partial sum.
    pub fn default_start_index(&self) -> usize {
        match self {
            ProblemKind::ModelLog { .. }
            | ProblemKind::ModelLinear { .. }
            | ProblemKind::ModelHyper { .. } => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Number of partial sums.
    pub count: usize,
    pub start_index: usize,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind, count: usize) -> Result<Self> {
        let start_index = kind.default_start_index();
        Self::with_start_index(kind, count, start_index)
    }

    pub fn with_start_index(kind: ProblemKind, count: usize, start_index: usize) -> Result<Self> {
        let spec = ProblemSpec {
            kind,
            count,
            start_index,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BadParameter(m));
        if self.count < 4 {
            return bad(format!("count must be at least 4, got {}", self.count));
        }
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                bad(format!("{name} must be positive, got {v}"))
            }
        };
        let model = |eta: f64, coeffs: &[f64], start: usize| {
            if !eta.is_finite() {
                return bad(format!("eta must be finite, got {eta}"));
            }
            match coeffs.first() {
                None => return bad("at least one coefficient is required".into()),
                Some(&c) if c == 0.0 || !c.is_finite() => {
                    return bad("leading coefficient must be finite and nonzero".into())
                }
                _ => {}
            }
            if coeffs.iter().any(|c| !c.is_finite()) {
                return bad("coefficients must be finite".into());
            }
            if start == 0 && (coeffs.len() > 1 || eta < 0.0) {
                return bad("model sequence with negative powers of n must start at n >= 1".into());
            }
            Ok(())
        };
        match &self.kind {
            ProblemKind::RbfInvZ { z } | ProblemKind::EulerDivergent { z } => positive("z", *z),
            ProblemKind::Geometric { z } => {
                if z.is_finite() && *z != 1.0 {
                    Ok(())
                } else {
                    bad(format!("geometric ratio must be finite and differ from 1, got {z}"))
                }
            }
            ProblemKind::ModelLog { eta, coeffs } => model(*eta, coeffs, self.start_index),
            ProblemKind::ModelLinear { xi, eta, coeffs } => {
                if !xi.is_finite() {
                    return bad(format!("xi must be finite, got {xi}"));
                }
                model(*eta, coeffs, self.start_index)
            }
            ProblemKind::ModelHyper { xi, r, eta, coeffs } => {
                if !xi.is_finite() {
                    return bad(format!("xi must be finite, got {xi}"));
                }
                positive("r", *r)?;
                model(*eta, coeffs, self.start_index)
            }
            _ => Ok(()),
        }
    }
}

/// A generated sample and whether generation stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub sample: SequenceSample,
    pub truncated: bool,
}

fn model_tail(n: f64, eta: f64, coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c * n.powf(eta - j as f64))
        .sum()
}

fn terms_to_sample(terms: &[f64]) -> Result<SequenceSample> {
    partial_sums(terms)
}

/// Partial sums for `spec`, with the reference limit attached when one is
/// available.
pub fn generate(spec: &ProblemSpec) -> Result<Generated> {
    spec.validate()?;
    let count = spec.count;
    let idx = |i: usize| (spec.start_index + i) as f64;
    let mut truncated = false;
    let sample = match &spec.kind {
        ProblemKind::AltLn2 => {
            let terms: Vec<f64> = (0..count)
                .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0))
                .collect();
            terms_to_sample(&terms)?
        }
        ProblemKind::MonoLn5 => {
            let terms: Vec<f64> = (0..count)
                .map(|k| 0.8f64.powi(k as i32 + 1) / (k as f64 + 1.0))
                .collect();
            terms_to_sample(&terms)?
        }
        ProblemKind::EulerGamma => {
            let terms: Vec<f64> = (0..count)
                .map(|n| {
                    if n == 0 {
                        1.0
                    } else {
                        let k = n as f64;
                        1.0 / (k + 1.0) + (k / (k + 1.0)).ln()
                    }
                })
                .collect();
            terms_to_sample(&terms)?
        }
        ProblemKind::Lemniscate => {
            let mut t = 1.0;
            let terms: Vec<f64> = (0..count)
                .map(|m| {
                    if m > 0 {
                        let m = m as f64;
                        t *= (2.0 * m - 1.0) / (2.0 * m) * (4.0 * m - 3.0) / (4.0 * m + 1.0);
                    }
                    t
                })
                .collect();
            terms_to_sample(&terms)?
        }
        ProblemKind::RbfInvZ { z } => {
            let t = inv_z_series_terms(*z, count)?;
            truncated = t.truncated;
            terms_to_sample(&t.terms)?
        }
        ProblemKind::EulerDivergent { z } => {
            let mut terms = Vec::with_capacity(count);
            let mut t = 1.0f64;
            for m in 0..count {
                if m > 0 {
                    t = -t * m as f64 / z;
                }
                if t.abs() > TERM_LIMIT || t.is_nan() {
                    truncated = true;
                    break;
                }
                terms.push(t);
            }
            terms_to_sample(&terms)?
        }
        ProblemKind::ModelLog { eta, coeffs } => SequenceSample::new(
            (0..count)
                .map(|i| MODEL_LIMIT + model_tail(idx(i), *eta, coeffs))
                .collect(),
        )?,
        ProblemKind::ModelLinear { xi, eta, coeffs } => SequenceSample::new(
            (0..count)
                .map(|i| MODEL_LIMIT + xi.powf(idx(i)) * model_tail(idx(i), *eta, coeffs))
                .collect(),
        )?,
        ProblemKind::ModelHyper { xi, r, eta, coeffs } => SequenceSample::new(
            (0..count)
                .map(|i| {
                    let n = spec.start_index + i;
                    let ln_fact: f64 = (2..=n).map(|j| (j as f64).ln()).sum();
                    let scale = (idx(i) * xi.abs().ln() - r * ln_fact).exp();
                    let sign = if *xi < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
                    MODEL_LIMIT + sign * scale * model_tail(idx(i), *eta, coeffs)
                })
                .collect(),
        )?,
        ProblemKind::Geometric { z } => {
            let terms: Vec<f64> = (0..count).map(|k| z.powi(k as i32)).collect();
            terms_to_sample(&terms)?
        }
    };
    let sample = sample.with_start_index(spec.start_index);
    let sample = match reference(spec) {
        Ok(r) => sample.with_limit(r.value),
        Err(_) => sample,
    };
    Ok(Generated { sample, truncated })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Digits quoted with the benchmark.
    PaperDigits,
    /// Closed form evaluated in double precision.
    ClosedForm,
    /// Numerical quadrature.
    QuadratureOracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub value: f64,
    pub provenance: Provenance,
    /// Claimed absolute accuracy.
    pub accuracy: f64,
}

/// Arithmetic-geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let next = ((a + b) / 2.0, (a * b).sqrt());
        if next.0 == a && next.1 == b {
            break;
        }
        (a, b) = next;
    }
    (a + b) / 2.0
}

/// Lemniscate constant `A = Γ(1/4)² / (4 √(2π)) = π / (2 agm(1, √2))`.
pub fn lemniscate_constant() -> f64 {
    std::f64::consts::PI / (2.0 * agm(1.0, std::f64::consts::SQRT_2))
}

/// `z e^z E_1(z) = ∫_0^∞ e^(-t) / (1 + t/z) dt` by double-exponential
/// quadrature on a truncated, subdivided range.
pub fn e1_quadrature(z: f64) -> Result<ReferenceValue> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::BadArgument(format!("z must be positive, got {z}")));
    }
    const BREAKS: [f64; 7] = [0.0, 0.5, 2.0, 6.0, 14.0, 30.0, 60.0];
    let f = |t: f64| (-t).exp() / (1.0 + t / z);
    let (mut value, mut err) = (0.0, 0.0);
    for w in BREAKS.windows(2) {
        let out = quadrature::double_exponential::integrate(f, w[0], w[1], 1e-16);
        value += out.integral;
        err += out.error_estimate;
    }
    // tail beyond the last break is below e^-60
    let accuracy = err + (-BREAKS[6]).exp();
    if !value.is_finite() {
        return Err(Error::NoReference(format!("quadrature failed at z = {z}")));
    }
    Ok(ReferenceValue {
        value,
        provenance: Provenance::QuadratureOracle,
        accuracy,
    })
}

/// Reference limit (or antilimit) for `spec`.
pub fn reference(spec: &ProblemSpec) -> Result<ReferenceValue> {
    let closed = |value: f64| {
        Ok(ReferenceValue {
            value,
            provenance: Provenance::ClosedForm,
            accuracy: f64::EPSILON * value.abs().max(1.0),
        })
    };
    match &spec.kind {
        ProblemKind::AltLn2 => closed(std::f64::consts::LN_2),
        ProblemKind::MonoLn5 => closed(5f64.ln()),
        ProblemKind::EulerGamma => Ok(ReferenceValue {
            value: EULER_GAMMA_DIGITS,
            provenance: Provenance::PaperDigits,
            accuracy: 1e-15,
        }),
        ProblemKind::Lemniscate => closed(lemniscate_constant()),
        ProblemKind::RbfInvZ { z } => closed(1.0 / z),
        ProblemKind::EulerDivergent { z } => e1_quadrature(*z),
        ProblemKind::ModelLog { .. } | ProblemKind::ModelLinear { .. } | ProblemKind::ModelHyper { .. } => {
            closed(MODEL_LIMIT)
        }
        ProblemKind::Geometric { z } => closed(1.0 / (1.0 - z)),
    }
}
