//! Return-time statistics of orbits and finite eigenvector sums.
//!
//! For a map `T`, a point `x` and the ball `V` of radius `epsilon` around it,
//! the return set is `{n >= 1 : d(T^n x, x) < epsilon}` and `R(x, V, N)`
//! counts its elements up to `N`. Finite data cannot decide the limits in
//! the definitions of recurrent, strongly recurrent or uniformly recurrent
//! points, so everything here is reported as evidence.
//!
//! A sum `x = x_1 + ... + x_d` of eigenvectors with distinct unimodular
//! eigenvalues `exp(2 pi i theta_j)` is uniformly recurrent: its orbit is
//! the image of the orbit of `(1, ..., 1)` under the torus translation by
//! `(theta_j)`. The demonstration restricts to pairwise orthogonal `x_j` with
//! norms `w_j`, so that `||u^n x - x||^2 = sum_j w_j^2 |exp(2 pi i n theta_j) - 1|^2`.
//! Non-orthogonal components are not modelled.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::eigen::gcd;
use crate::{Error, Result};

/// A rotation angle in turns, either an exact rational or a double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Rational { num: u64, den: u64 },
    Real(f64),
}

impl Angle {
    pub fn rational(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Config("angle denominator must be positive".into()));
        }
        let num = num % den;
        let g = gcd(num, den).max(1);
        Ok(Self::Rational { num: num / g, den: den / g })
    }

    pub fn real(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..1.0).contains(&theta) {
            return Err(Error::Config(format!("angle must lie in [0, 1), got {theta}")));
        }
        Ok(Self::Real(theta))
    }

    /// `(sqrt 5 - 1) / 2`.
    pub fn golden() -> Self {
        Self::Real((5f64.sqrt() - 1.0) / 2.0)
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Self::Rational { num, den } => num as f64 / den as f64,
            Self::Real(t) => t,
        }
    }

    /// `n theta mod 1`, in `[0, 1)`.
    ///
    /// Exact for rationals. For doubles the product is split with an FMA
    /// into a rounded part and its exact error, so the fractional part keeps
    /// full relative accuracy even when `n theta` is large.
    pub fn times_mod_one(&self, n: u64) -> f64 {
        match *self {
            Self::Rational { num, den } => {
                let r = (n as u128 * num as u128) % den as u128;
                r as f64 / den as f64
            }
            Self::Real(theta) => {
                let nf = n as f64;
                let p = nf * theta;
                let e = nf.mul_add(theta, -p);
                let mut f = (p - p.floor()) + e;
                f -= f.floor();
                if f >= 1.0 {
                    f = 0.0;
                }
                f
            }
        }
    }

    /// `exp(2 pi i n theta)`.
    pub fn rotation(&self, n: u64) -> Complex64 {
        turn(self.times_mod_one(n))
    }

    /// `|exp(2 pi i n theta) - 1| = 2 sin(pi ||n theta||)`.
    pub fn chord(&self, n: u64) -> f64 {
        let f = self.times_mod_one(n);
        let g = f.min(1.0 - f);
        2.0 * (PI * g).sin()
    }
}

fn turn(f: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * f)
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational { num, den } => write!(f, "{num}/{den}"),
            Self::Real(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `p/q`, a decimal in `[0, 1)`, or `golden`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("golden") {
            return Ok(Self::golden());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| Error::Config(format!("bad angle numerator in {s:?}")))?;
            let q: u64 = q.trim().parse().map_err(|_| Error::Config(format!("bad angle denominator in {s:?}")))?;
            return Self::rational(p, q);
        }
        let t: f64 = s.parse().map_err(|_| Error::Config(format!("bad angle {s:?}")))?;
        Self::real(t)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteEigenSum {
    angles: Vec<Angle>,
    weights: Vec<f64>,
}

fn same_angle(a: &Angle, b: &Angle) -> bool {
    match (a, b) {
        (Angle::Rational { .. }, Angle::Rational { .. }) => a == b,
        _ => a.as_f64() == b.as_f64(),
    }
}

impl FiniteEigenSum {
    pub fn new(angles: Vec<Angle>, weights: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::Config("an eigenvector sum needs d >= 1 components".into()));
        }
        if angles.len() != weights.len() {
            return Err(Error::Config(format!("{} angles but {} weights", angles.len(), weights.len())));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::Config(format!("weights must be positive, got {w}")));
        }
        for (i, a) in angles.iter().enumerate() {
            if let Angle::Real(t) = a {
                Angle::real(*t)?;
            }
            if angles[..i].iter().any(|b| same_angle(a, b)) {
                return Err(Error::Config(format!("eigenvalue angles must be pairwise distinct ({a} repeats)")));
            }
        }
        Ok(Self { angles, weights })
    }

    /// Equal unit weights.
    pub fn unit(angles: Vec<Angle>) -> Result<Self> {
        let w = vec![1.0; angles.len()];
        Self::new(angles, w)
    }

    pub fn d(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Common period when every angle is rational.
    pub fn period(&self) -> Option<u64> {
        self.angles.iter().try_fold(1u64, |acc, a| match a {
            Angle::Rational { den, .. } => Some(acc / gcd(acc, *den) * den),
            Angle::Real(_) => None,
        })
    }
}

/// `||u^n x - x||` for the orthogonal eigenvector sum.
pub fn eigensum_distance(sum: &FiniteEigenSum, n: u64) -> f64 {
    sum.angles
        .iter()
        .zip(&sum.weights)
        .map(|(a, w)| {
            let c = w * a.chord(n);
            c * c
        })
        .sum::<f64>()
        .sqrt()
}

/// Distance between `phi(tau^n (1, ..., 1))` computed by `n` successive
/// multiplications and by direct angle reduction.
pub fn torus_conjugacy_residual(sum: &FiniteEigenSum, n: u64) -> f64 {
    sum.angles
        .iter()
        .zip(&sum.weights)
        .map(|(a, w)| {
            let step = a.rotation(1);
            let mut z = Complex64::new(1.0, 0.0);
            for _ in 0..n {
                z *= step;
            }
            let d = w * (z - a.rotation(n)).norm();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Largest conjugacy residual over `n = 0..=n_max`, in one pass.
/// Returns the residual and the first `n` attaining it.
pub fn torus_conjugacy_sweep(sum: &FiniteEigenSum, n_max: u64) -> (f64, u64) {
    let steps: Vec<Complex64> = sum.angles.iter().map(|a| a.rotation(1)).collect();
    let mut z = vec![Complex64::new(1.0, 0.0); sum.d()];
    let mut worst = (0.0, 0);
    for n in 1..=n_max {
        let mut ss = 0.0;
        for (j, a) in sum.angles.iter().enumerate() {
            z[j] *= steps[j];
            let d = sum.weights[j] * (z[j] - a.rotation(n)).norm();
            ss += d * d;
        }
        let r = ss.sqrt();
        if r > worst.0 {
            worst = (r, n);
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceReport {
    pub epsilon: f64,
    pub horizon: u64,
    pub return_times: Vec<u64>,
    pub count: u64,
    pub density: f64,
    pub max_gap: u64,
}

impl RecurrenceReport {
    /// Report from `distances[n - 1] = d(T^n x, x)` for `n = 1..=N`.
    pub fn from_trace(distances: &[f64], epsilon: f64) -> Self {
        let horizon = distances.len() as u64;
        let return_times: Vec<u64> = distances.iter().enumerate().filter(|(_, &d)| d < epsilon).map(|(i, _)| i as u64 + 1).collect();
        let count = return_times.len() as u64;
        let mut max_gap = 0;
        let mut prev = 0;
        for &t in &return_times {
            max_gap = max_gap.max(t - prev);
            prev = t;
        }
        max_gap = max_gap.max(horizon - prev);
        let density = if horizon == 0 { 0.0 } else { count as f64 / horizon as f64 };
        Self { epsilon, horizon, return_times, count, density, max_gap }
    }

    /// Smallest `l` such that every window `(m - l, m]` with `l <= m <= N`
    /// contains a return time; `N` when there is none.
    pub fn uniform_gap(&self) -> u64 {
        let Some(&last) = self.return_times.last() else {
            return self.horizon;
        };
        let mut need = 0;
        let mut prev = 0;
        for &t in &self.return_times {
            need = need.max(t - prev);
            prev = t;
        }
        need.max(self.horizon - last + 1).min(self.horizon)
    }

    /// `n,distance` rows for the return times.
    pub fn csv(&self, distances: &[f64]) -> String {
        let mut out = String::from("n,distance\n");
        for &t in &self.return_times {
            out.push_str(&format!("{t},{}\n", distances[(t - 1) as usize]));
        }
        out
    }
}

fn check_scan(epsilon: f64, horizon: u64) -> Result<()> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Config(format!("epsilon must be > 0, got {epsilon}")));
    }
    if horizon == 0 {
        return Err(Error::Config("horizon must be >= 1".into()));
    }
    Ok(())
}

/// Return times of an orbit whose distances to the start are `distance_fn(n)`.
pub fn return_times(mut distance_fn: impl FnMut(u64) -> f64, epsilon: f64, horizon: u64) -> Result<RecurrenceReport> {
    check_scan(epsilon, horizon)?;
    let trace: Vec<f64> = (1..=horizon).map(&mut distance_fn).collect();
    Ok(RecurrenceReport::from_trace(&trace, epsilon))
}

/// Distances `d(T^n x, x)` for `n = 1..=horizon`, evaluated in parallel.
pub fn trace_par(distance_fn: impl Fn(u64) -> f64 + Sync + Send, horizon: u64) -> Vec<f64> {
    (1..=horizon).into_par_iter().map(distance_fn).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    NonrecurrentEvidence,
    RecurrentEvidence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: Evidence,
    pub strong_density: f64,
    pub uniform_gap: u64,
}

pub fn classify(report: &RecurrenceReport) -> Classification {
    let label = if report.count == 0 { Evidence::NonrecurrentEvidence } else { Evidence::RecurrentEvidence };
    Classification { label, strong_density: report.density, uniform_gap: report.max_gap }
}

pub fn eigensum_report(sum: &FiniteEigenSum, epsilon: f64, horizon: u64) -> Result<(RecurrenceReport, Vec<f64>)> {
    check_scan(epsilon, horizon)?;
    let trace = trace_par(|n| eigensum_distance(sum, n), horizon);
    Ok((RecurrenceReport::from_trace(&trace, epsilon), trace))
}

pub fn uniform_gap_scan(sum: &FiniteEigenSum, epsilon: f64, horizon: u64) -> Result<u64> {
    Ok(eigensum_report(sum, epsilon, horizon)?.0.uniform_gap())
}
