//! Lozenge-rule sequence transformations.

mod aitken;
mod epsilon;
mod generic;
mod rho;
mod seps;
mod theta;

pub use aitken::{aitken_delta2, iterated_aitken};
pub use epsilon::{epsilon, epsilon_low_memory};
pub use generic::{generic_f, FRule, Initializer};
pub use rho::{decay_estimate, rho, rho_osada, PointsMode};
pub use seps::{seps, seps_f1};
pub use theta::{iterated_theta, theta, theta2, Theta2Form};

use crate::error::{Error, Result};
use crate::levin::{self, RemainderEstimates};
use crate::seqcore::{Guard, SequenceSample, TransformTable};

/// Selects one transformation and its parameters.
#[derive(Debug, Clone)]
pub enum TransformSpec {
    Epsilon,
    IteratedAitken,
    /// Rho with the interpolation points carried by the sample.
    RhoGeneral,
    /// Rho with `x_n = n + 1`.
    RhoStandard,
    RhoOsada { theta: f64 },
    Theta,
    IteratedTheta,
    LevinGeneral { beta: f64, estimates: RemainderEstimates },
    LevinU { beta: f64 },
    LevinV { beta: f64 },
    Seps,
    GenericF { rule: FRule, init: Initializer },
}

impl TransformSpec {
    /// Check parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::BadParameter(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            TransformSpec::RhoOsada { theta } => positive("theta", *theta),
            TransformSpec::LevinGeneral { beta, .. }
            | TransformSpec::LevinU { beta }
            | TransformSpec::LevinV { beta } => positive("beta", *beta),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, sample: &SequenceSample) -> Result<TransformTable> {
        self.apply_with_guard(sample, Guard::default())
    }

    pub fn apply_with_guard(&self, sample: &SequenceSample, guard: Guard) -> Result<TransformTable> {
        self.validate()?;
        match self {
            TransformSpec::Epsilon => epsilon::table(sample, guard),
            TransformSpec::IteratedAitken => aitken::table(sample, guard),
            TransformSpec::RhoGeneral => rho::table(sample, PointsMode::FromSample, None, guard),
            TransformSpec::RhoStandard => rho::table(sample, PointsMode::Standard, None, guard),
            TransformSpec::RhoOsada { theta } => {
                rho::table(sample, PointsMode::Standard, Some(*theta), guard)
            }
            TransformSpec::Theta => theta::table(sample, guard),
            TransformSpec::IteratedTheta => theta::iterated_table(sample, guard),
            TransformSpec::LevinGeneral { beta, estimates } => {
                levin::table(sample, *beta, estimates, self.clone(), guard)
            }
            TransformSpec::LevinU { beta } => {
                let w = RemainderEstimates::u_variant(*beta);
                levin::table(sample, *beta, &w, self.clone(), guard)
            }
            TransformSpec::LevinV { beta } => {
                let w = RemainderEstimates::v_variant();
                levin::table(sample, *beta, &w, self.clone(), guard)
            }
            TransformSpec::Seps => seps::table(sample, guard),
            TransformSpec::GenericF { rule, init } => generic::table(sample, rule, *init, guard),
        }
    }

    /// Short lowercase name, as used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            TransformSpec::Epsilon => "epsilon",
            TransformSpec::IteratedAitken => "iterated-aitken",
            TransformSpec::RhoGeneral => "rho-general",
            TransformSpec::RhoStandard => "rho",
            TransformSpec::RhoOsada { .. } => "osada",
            TransformSpec::Theta => "theta",
            TransformSpec::IteratedTheta => "iterated-theta",
            TransformSpec::LevinGeneral { .. } => "levin",
            TransformSpec::LevinU { .. } => "levin-u",
            TransformSpec::LevinV { .. } => "levin-v",
            TransformSpec::Seps => "seps",
            TransformSpec::GenericF { .. } => "generic-f",
        }
    }
}

/// Value of `b - a` and the combined status of both entries.
pub(crate) fn delta(
    a: crate::seqcore::Entry,
    b: crate::seqcore::Entry,
) -> (f64, crate::seqcore::EntryStatus) {
    (b.value - a.value, a.status.combine(b.status))
}
