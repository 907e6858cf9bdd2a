//! Reduced Bessel functions of half-integral order, Bessel polynomials,
//! Padé approximants of the exponential and Hankel determinants.

use crate::error::{Error, Result};
use crate::seqcore::{Entry, EntryStatus, Guard, SequenceSample};

/// Half-integral order `ν = n + 1/2` with `n >= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfIntOrder(i64);

impl HalfIntOrder {
    pub fn new(n: i64) -> Result<Self> {
        if n < -1 {
            return Err(Error::BadArgument(format!("order index {n} below -1")));
        }
        Ok(HalfIntOrder(n))
    }

    pub fn n(self) -> i64 {
        self.0
    }

    pub fn nu(self) -> f64 {
        self.0 as f64 + 0.5
    }
}

/// Reduced Bessel function `k̂_{n+1/2}(z)` by upward recursion.
pub fn rbf_half(order: HalfIntOrder, z: f64) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::BadArgument(format!("z must be positive, got {z}")));
    }
    let e = (-z).exp();
    let (mut lower, mut upper) = (e / z, e);
    if order.0 == -1 {
        return Ok(lower);
    }
    let z2 = z * z;
    for m in 0..order.0 {
        let next = (2 * m + 1) as f64 * upper + z2 * lower;
        lower = upper;
        upper = next;
    }
    Ok(upper)
}

/// `k̂_{n+1/2}(0) = 2^n (1/2)_n = 1·3·5···(2n-1)`.
pub fn rbf_at_zero(n: u32) -> f64 {
    (0..n).map(|j| (2 * j + 1) as f64).product()
}

/// Bessel polynomial `θ_n(z) = e^z k̂_{n+1/2}(z)`, evaluated for any real
/// `z` by its three-term recurrence.
pub fn bessel_poly_theta(n: u32, z: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 + z);
    if n == 0 {
        return prev;
    }
    let z2 = z * z;
    for m in 1..n {
        let next = (2 * m + 1) as f64 * cur + z2 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Terminating `1F1(-a; -(a+b); x)`.
fn terminating_1f1(a: u32, b: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..a {
        term *= (a - j) as f64 / (a + b - j) as f64 * x / (j + 1) as f64;
        sum += term;
    }
    sum
}

/// Padé approximant `[n/m]` of `exp(z)`.
pub fn pade_exp(n: u32, m: u32, z: f64) -> Entry {
    let num = terminating_1f1(n, m, z);
    let den = terminating_1f1(m, n, -z);
    if !Guard::default().admits(den) {
        return Entry::UNSTABLE;
    }
    Entry::derived(num / den, EntryStatus::Valid)
}

/// Determinant by Gaussian elimination with row equilibration and
/// partial pivoting. Returns `None` when a pivot vanishes relative to its
/// row scale.
pub fn determinant(mut a: Vec<Vec<f64>>) -> Option<f64> {
    let dim = a.len();
    let mut det = 1.0;
    for row in a.iter_mut() {
        let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        row.iter_mut().for_each(|v| *v /= scale);
        det *= scale;
    }
    let tiny = 64.0 * f64::EPSILON;
    for c in 0..dim {
        let p = (c..dim).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= tiny {
            return None;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let (upper, lower) = a.split_at_mut(c + 1);
        let pivot = &upper[c];
        for row in lower.iter_mut() {
            let f = row[c] / pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    Some(det)
}

/// Shanks transform `e_k(S_n)` as a ratio of two determinants evaluated
/// by elimination. Limited to `k <= 4`.
pub fn shanks_determinant(sample: &SequenceSample, k: usize, n: usize) -> Result<Entry> {
    if k > 4 {
        return Err(Error::BadArgument(format!("order {k} exceeds 4")));
    }
    sample.require_len(n + 2 * k + 1)?;
    let s = sample.values();
    let diff = |i: usize| s[i + 1] - s[i];
    let lower: Vec<Vec<f64>> = (1..=k)
        .map(|i| (0..=k).map(|j| diff(n + i + j - 1)).collect())
        .collect();
    let with_head = |head: Vec<f64>| {
        let mut m = vec![head];
        m.extend(lower.iter().cloned());
        m
    };
    let num = determinant(with_head(s[n..=n + k].to_vec()));
    let den = determinant(with_head(vec![1.0; k + 1]));
    match (num, den) {
        (_, None) => Ok(Entry::UNSTABLE),
        // numerator singular: the transform vanishes
        (None, Some(_)) => Ok(Entry::valid(0.0)),
        (Some(a), Some(b)) => Ok(Entry::derived(a / b, EntryStatus::Valid)),
    }
}

/// `H_k(u_n)`, the `k x k` Hankel determinant of `u_n..u_{n+2k-2}`, by
/// elimination.
pub fn hankel_direct(u: &[f64], k: usize, n: usize) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    if u.len() < n + 2 * k - 1 {
        return Err(Error::InsufficientData {
            needed: n + 2 * k - 1,
            available: u.len(),
        });
    }
    let m = (0..k).map(|i| (0..k).map(|j| u[n + i + j]).collect()).collect();
    Ok(determinant(m).unwrap_or(0.0))
}

/// `H_k(u_n)` by the nonlinear three-term recursion. Limited to `k <= 6`.
pub fn hankel_recursive(u: &[f64], k: usize, n: usize) -> Result<Entry> {
    if k > 6 {
        return Err(Error::BadArgument(format!("order {k} exceeds 6")));
    }
    if k == 0 {
        return Ok(Entry::valid(1.0));
    }
    let needed = n + 2 * k - 1;
    if u.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            available: u.len(),
        });
    }
    let guard = Guard::default();
    let top = needed;
    let mut below: Vec<Entry> = vec![Entry::valid(1.0); top];
    let mut cur: Vec<Entry> = u[..top].iter().map(|&v| Entry::valid(v)).collect();
    for _ in 1..k {
        let next: Vec<Entry> = (0..cur.len().saturating_sub(2))
            .map(|m| {
                let st = cur[m]
                    .status
                    .combine(cur[m + 1].status)
                    .combine(cur[m + 2].status)
                    .combine(below[m + 2].status);
                if st != EntryStatus::Valid {
                    return Entry::derived(f64::NAN, st);
                }
                let num = cur[m].value * cur[m + 2].value - cur[m + 1].value * cur[m + 1].value;
                if !guard.admits(below[m + 2].value) {
                    return Entry::UNSTABLE;
                }
                Entry::derived(num / below[m + 2].value, EntryStatus::Valid)
            })
            .collect();
        below = std::mem::replace(&mut cur, next);
    }
    Ok(cur[n])
}

/// Terms of the series `Σ_m k̂_{m-1/2}(z) / (2^m m!) = 1/z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTerms {
    pub terms: Vec<f64>,
    /// Generation stopped early because a term was no longer finite.
    pub truncated: bool,
}

/// First `count` terms of the `1/z` expansion in reduced Bessel functions,
/// carried in scaled form so that no term overflows.
pub fn inv_z_series_terms(z: f64, count: usize) -> Result<SeriesTerms> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::BadArgument(format!("z must be positive, got {z}")));
    }
    let e = (-z).exp();
    let z2 = z * z;
    let mut terms = Vec::with_capacity(count);
    let (mut prev, mut cur) = (e / z, e / 2.0);
    for m in 0..count {
        if m == 0 {
            terms.push(prev);
            continue;
        }
        if !cur.is_finite() {
            return Ok(SeriesTerms { terms, truncated: true });
        }
        terms.push(cur);
        let mf = m as f64;
        let next = (2.0 * mf - 1.0) / (2.0 * (mf + 1.0)) * cur + z2 / (4.0 * mf * (mf + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    Ok(SeriesTerms { terms, truncated: false })
}
