//! The vector `y = sum_{k>=2} e_{k, k!-k+1} / 2^k` and its certificates.
//!
//! `y` is the sum of a convergent series of unimodular eigenvectors of `u`:
//! block `k` of `y` equals `(1 / (k! 2^k!)) sum_{lambda in U_{k!}} lambda^k
//! X_{k,lambda}`, and the partial sums of that inner series are uniformly
//! small. Yet `||u^l y - y||^2 >= 1/4` for every `l >= 1`, because block
//! `l + 1` carries `e_{l+1,(l+1)!-l} / 2^(l+1)` exactly `l` steps short of
//! its wrap point.
//!
//! On a truncation with depth `k_max` only `l <= k_max - 1` is certified.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::block_operator::BlockOperator;
use crate::eigen::{lemma3_bound_check, PartialSumScan, PartialSums};
use crate::seqspace::{block_norm, factorial, BlockLayout, SeqVector, MAX_K};
use crate::{Error, Result};

/// Default truncation depth: certifies `l <= 6`.
pub const DEFAULT_K_MAX: usize = 7;
/// Largest block for which the series term is materialized and compared.
pub const MAX_SERIES_TERM_K: usize = 6;

/// 1-based position of `y`'s nonzero coefficient in block `k`.
pub fn y_position(k: usize) -> usize {
    factorial(k) - k + 1
}

pub fn build_y(layout: &BlockLayout) -> Result<SeqVector> {
    if layout.k_max() < 2 {
        return Err(Error::Config("y needs k_max >= 2".into()));
    }
    let mut y = SeqVector::zeros(layout);
    for k in 2..=layout.k_max() {
        y.set(k, y_position(k), Complex64::new(2f64.powi(-(k as i32)), 0.0))?;
    }
    Ok(y)
}

#[derive(Debug, Clone)]
pub struct CounterexampleInstance {
    layout: BlockLayout,
    y: SeqVector,
    operator: BlockOperator,
}

impl CounterexampleInstance {
    pub fn new(k_max: usize) -> Result<Self> {
        let layout = BlockLayout::new(k_max)?;
        let y = build_y(&layout)?;
        let operator = BlockOperator::new(&layout);
        Ok(Self { layout, y, operator })
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn y(&self) -> &SeqVector {
        &self.y
    }

    pub fn operator(&self) -> &BlockOperator {
        &self.operator
    }

    /// `||u^l y - y||^2` on the truncation, for `1 <= l <= k_max - 1`.
    pub fn non_recurrence_distance(&self, power: u64) -> Result<f64> {
        let k_max = self.layout.k_max();
        if power == 0 || power >= k_max as u64 {
            return Err(Error::Truncation { power, k_max });
        }
        let moved = self.operator.apply_pow(power, &self.y)?;
        Ok(moved.sub(&self.y)?.norm_sqr())
    }

    /// `||u^n y - y||` for any `n >= 0` that does not trip the overflow guard,
    /// certified or not.
    pub fn orbit_distance(&self, n: u64) -> Result<f64> {
        let moved = self.operator.apply_pow(n, &self.y)?;
        moved.distance(&self.y)
    }
}

pub fn non_recurrence_distance(instance: &CounterexampleInstance, power: u64) -> Result<f64> {
    instance.non_recurrence_distance(power)
}

/// The certifying block's contribution `1/4 + 4^-(l+1)`.
pub fn certifying_term(power: u64) -> f64 {
    0.25 + 4f64.powi(-(power as i32 + 1))
}

/// `(1 / (2 k!)) Shat_{k!-1}`, which should reproduce block `k` of `y`.
pub fn eigen_series_term(k: usize) -> Result<Vec<Complex64>> {
    if !(2..=MAX_SERIES_TERM_K).contains(&k) {
        return Err(Error::Config(format!("series term supports 2 <= k <= {MAX_SERIES_TERM_K}, got {k}")));
    }
    let n = factorial(k);
    let mut scan = PartialSums::new(k)?;
    while scan.advance() {}
    let scale = 1.0 / (2.0 * n as f64);
    Ok(scan.materialize().into_iter().map(|z| z * scale).collect())
}

/// `max_A ||Shat_A|| / (2 k!)`, the largest partial sum of the block-`k`
/// eigenvector series in the original normalization.
pub fn series_tail_sup(k: usize) -> Result<f64> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::Config(format!("series tail supports 2 <= k <= {MAX_K}, got {k}")));
    }
    let row = lemma3_bound_check(k)?;
    Ok(row.max_norm / (2.0 * factorial(k) as f64))
}

pub fn series_tail_bound(k: usize) -> f64 {
    6.0 / 2f64.powi(k as i32)
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceEntry {
    #[serde(rename = "ℓ")]
    pub power: u64,
    pub distance_sq: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesTermEntry {
    pub k: usize,
    /// `|| eigen_series_term(k) - block k of y ||`, absent past
    /// [`MAX_SERIES_TERM_K`].
    pub term_error: Option<f64>,
    pub tail_sup: f64,
    pub tail_bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub k_max: usize,
    #[serde(rename = "per_ℓ")]
    pub per_power: Vec<DistanceEntry>,
    pub lemma3: Vec<PartialSumScan>,
    pub series_terms: Vec<SeriesTermEntry>,
}

impl CounterexampleReport {
    pub fn all_pass(&self) -> bool {
        self.per_power.iter().all(|d| d.certified) && self.lemma3.iter().all(|r| r.pass) && self.series_terms.iter().all(|s| s.pass)
    }
}

/// Runs the certificate for `l = 1..=l_max` and the series checks for
/// `k = 2..=k_max`.
pub fn run_report(k_max: usize, l_max: u64) -> Result<CounterexampleReport> {
    let instance = CounterexampleInstance::new(k_max)?;
    let per_power = (1..=l_max)
        .into_par_iter()
        .map(|l| {
            let distance_sq = instance.non_recurrence_distance(l)?;
            Ok(DistanceEntry { power: l, distance_sq, certified: distance_sq >= 0.25 })
        })
        .collect::<Result<Vec<_>>>()?;
    let lemma3 = (2..=k_max).into_par_iter().map(lemma3_bound_check).collect::<Result<Vec<_>>>()?;
    let series_terms = lemma3
        .iter()
        .map(|row| {
            let k = row.k;
            let term_error = if k <= MAX_SERIES_TERM_K {
                let term = eigen_series_term(k)?;
                let diff: Vec<Complex64> = term.iter().zip(instance.y().block(k)).map(|(a, b)| a - b).collect();
                Some(block_norm(&diff))
            } else {
                None
            };
            let tail_sup = row.max_norm / (2.0 * factorial(k) as f64);
            let tail_bound = series_tail_bound(k);
            let pass = tail_sup <= tail_bound && term_error.is_none_or(|e| e <= 1e-10);
            Ok(SeriesTermEntry { k, term_error, tail_sup, tail_bound, pass })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CounterexampleReport { k_max, per_power, lemma3, series_terms })
}
