//! Convergence acceleration and summation of scalar sequences.
//!
//! The crate provides Wynn's epsilon and rho algorithms, Osada's rho
//! variant, Brezinski's theta algorithm and its iteration, the iterated
//! Aitken process, Levin's u and v transformations, and a generic
//! epsilon/rho-type recursion driven by a user-chosen numerator rule. The
//! [`seps`] transformation is an instance of the latter whose initial
//! columns are taken from the theta algorithm.
//!
//! ```
//! use seqaccel::{partial_sums, seps, staircase_entry};
//!
//! let terms: Vec<f64> = (0..15).map(|k| (-1f64).powi(k) / (k as f64 + 1.0)).collect();
//! let sample = partial_sums(&terms).unwrap();
//! let table = seps(&sample).unwrap();
//! let best = staircase_entry(&table, 14).unwrap();
//! assert!((best.value - std::f64::consts::LN_2).abs() < 1e-11);
//! ```

pub mod error;
pub mod levin;
pub mod problems;
pub mod seqcore;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use levin::{levin_general, levin_u, levin_v, u2_explicit, v1_explicit, RemainderEstimates, RemainderPolicy};
pub use seqcore::{
    error_against, partial_sums, staircase_entry, Approximants, Entry, EntryStatus, Guard, SequenceSample,
    StaircaseEntry, TransformTable, Width,
};
pub use transforms::{
    aitken_delta2, decay_estimate, epsilon, epsilon_low_memory, generic_f, iterated_aitken, iterated_theta, rho,
    rho_osada, seps, seps_f1, theta, theta2, FRule, Initializer, PointsMode, Theta2Form, TransformSpec,
};
