//! Alternating zeta `zeta*(s) = sum_{n>=1} (-1)^n n^-s` on the strip
//! `1/2 < Re s < 1` and its orbit under `tau: f(s) -> f(s - 2 pi i / log 2)`.
//!
//! `zeta*(s) = (2^(1-s) - 1) zeta(s)`, and the translation `tau` leaves the
//! factor `2^(1-s) - 1` fixed. Two evaluators are provided and kept
//! independent of each other:
//!
//! * [`zeta_star`]: Chebyshev-weighted acceleration of the alternating
//!   series, with the number of terms chosen from the a priori bound
//!   `2 Gamma(sigma) / (|Gamma(s)| (3 + sqrt 8)^n)`.
//! * [`zeta_em`]: Euler-Maclaurin summation of `zeta(s)`.
//!
//! Neighborhoods of `zeta*` in the compact-open topology are approximated by
//! sup-distance balls over a finite [`StripGrid`]. Orbit scans are
//! exploratory: a finite scan says nothing about the lower density of the
//! return times as `N -> infinity`.

use std::f64::consts::{LN_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::recurrence::RecurrenceReport;
use crate::scaling::ldexp;
use crate::scaling::Scaled;
use crate::{Error, Result};

/// Smallest tolerance accepted by the evaluators.
pub const MIN_TOL: f64 = 1e-12;
/// Largest scan horizon accepted by [`recurrence_scan`].
pub const MAX_HORIZON: u64 = 500;
/// Hard cap on series terms for one evaluation.
pub const MAX_TERMS: usize = 2_000_000;

/// Imaginary step `2 pi / log 2` of the translation.
pub const SHIFT: f64 = TAU / LN_2;

/// `B_{2j}` for `j = 1..=16`.
const BERNOULLI: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: Complex64,
    /// Truncation bound plus a floating-point rounding estimate.
    pub error_estimate: f64,
    pub terms: usize,
}

/// `log |Gamma(z)|` for `Re z > 0` (Stirling series after upward shift).
pub fn ln_abs_gamma(z: Complex64) -> f64 {
    let mut z = z;
    let mut acc = 0.0;
    while z.re < 10.0 {
        acc -= z.norm().ln();
        z += 1.0;
    }
    let mut r = ((z - 0.5) * z.ln() - z).re + 0.5 * TAU.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for (j, b) in BERNOULLI.iter().take(8).enumerate() {
        let m = (2 * j + 2) as f64;
        r += (p * (b / (m * (m - 1.0)))).re;
        p *= inv2;
    }
    acc + r
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol < MIN_TOL {
        return Err(Error::Accuracy { requested: tol, achievable: MIN_TOL });
    }
    Ok(())
}

/// `(k+1)^-s` for `k >= 0`.
#[inline]
fn inv_pow(k: usize, s: Complex64) -> Complex64 {
    let l = ((k + 1) as f64).ln();
    let m = (-s.re * l).exp();
    let (sin, cos) = (-s.im * l).sin_cos();
    Complex64::new(m * cos, m * sin)
}

/// Accelerated-series weights `w_k = (d_n - d_k) / d_n`, `k = 0..n`, with
/// `d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)`.
fn acceleration_weights(n: usize) -> Vec<f64> {
    // a_i up to a common factor, as mantissa/exponent pairs
    let mut a = Vec::with_capacity(n + 1);
    let mut cur = Scaled::from_f64(1.0);
    a.push(cur);
    for i in 0..n {
        let (nf, fi) = (n as f64, i as f64);
        let ratio = 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        cur = cur * Scaled::from_f64(ratio);
        a.push(cur);
    }
    let top = a.iter().map(|x| x.exponent).max().unwrap_or(0);
    let e: Vec<f64> = a.iter().map(|x| ldexp(x.mantissa, x.exponent - top)).collect();
    // tails T_k = sum_{i>k} e_i, compensated, from the top down
    let mut tails = vec![0.0; n + 1];
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for i in (0..=n).rev() {
        tails[i] = sum + comp;
        let y = e[i];
        let t = sum + y;
        comp += if sum.abs() >= y.abs() { (sum - t) + y } else { (y - t) + sum };
        sum = t;
    }
    let total = sum + comp;
    tails.truncate(n);
    tails.iter().map(|t| t / total).collect()
}

/// Terms needed so that `2 Gamma(sigma) / (|Gamma(s)| (3+sqrt 8)^n) <= target`.
fn acceleration_terms(s: Complex64, target: f64) -> Option<usize> {
    let ln_bound0 = LN_2 + ln_abs_gamma(Complex64::new(s.re, 0.0)) - ln_abs_gamma(s);
    let rate = (3.0 + 8f64.sqrt()).ln();
    let n = ((ln_bound0 - target.ln()) / rate).ceil().max(1.0);
    (n <= MAX_TERMS as f64).then_some(n as usize)
}

fn acceleration_bound(s: Complex64, n: usize) -> f64 {
    let ln_bound0 = LN_2 + ln_abs_gamma(Complex64::new(s.re, 0.0)) - ln_abs_gamma(s);
    (ln_bound0 - n as f64 * (3.0 + 8f64.sqrt()).ln()).exp()
}

/// `zeta*(s)` with its error estimate.
pub fn zeta_star_eval(s: Complex64, tol: f64) -> Result<Evaluation> {
    if s.re.is_nan() || s.re <= 0.0 || !s.im.is_finite() {
        return Err(Error::Domain(format!("alternating series needs Re s > 0, got {s}")));
    }
    check_tol(tol)?;
    let terms = acceleration_terms(s, tol / 4.0).ok_or(Error::Accuracy { requested: tol, achievable: f64::INFINITY })?;
    let weights = acceleration_weights(terms);
    // eta(s) = sum_k (-1)^k (k+1)^-s;  zeta*(s) = -eta(s)
    let mut eta = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (k, &w) in weights.iter().enumerate() {
        let t = inv_pow(k, s) * w;
        if k % 2 == 0 {
            eta += t;
        } else {
            eta -= t;
        }
        let l = ((k + 1) as f64).ln();
        magnitude += w * (-s.re * l).exp() * (1.0 + s.im.abs() * l);
    }
    let rounding = 4.0 * f64::EPSILON * magnitude;
    let error_estimate = acceleration_bound(s, terms) + rounding;
    if error_estimate > tol {
        return Err(Error::Accuracy { requested: tol, achievable: error_estimate });
    }
    Ok(Evaluation { value: -eta, error_estimate, terms })
}

pub fn zeta_star(s: Complex64, tol: f64) -> Result<Complex64> {
    zeta_star_eval(s, tol).map(|e| e.value)
}

/// Rising factorial `s (s+1) ... (s+m-1)`.
fn rising(s: Complex64, m: usize) -> Complex64 {
    (0..m).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (s + i as f64))
}

fn factorial_f64(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

/// Euler-Maclaurin correction terms at cut `N` with `M = 15`, plus the
/// remainder estimate `|s+2M+1| / (sigma+2M+1) |T_{M+1}|`.
fn em_tail(s: Complex64, cut: usize) -> (Complex64, f64) {
    let nf = cut as f64;
    let n_pow = (-s * nf.ln()).exp(); // N^-s
    let mut tail = n_pow * nf / (s - 1.0) + n_pow * 0.5;
    let m = BERNOULLI.len() - 1;
    for j in 1..=m {
        let term = rising(s, 2 * j - 1) * n_pow * nf.powi(1 - 2 * j as i32) * (BERNOULLI[j - 1] / factorial_f64(2 * j));
        tail += term;
    }
    let j = m + 1;
    let next = rising(s, 2 * j - 1) * n_pow * nf.powi(1 - 2 * j as i32) * (BERNOULLI[j - 1] / factorial_f64(2 * j));
    let remainder = next.norm() * (s + (2 * m + 1) as f64).norm() / (s.re + (2 * m + 1) as f64);
    (tail, remainder)
}

/// `zeta(s)` by Euler-Maclaurin summation, with its error estimate.
pub fn zeta_em_eval(s: Complex64, tol: f64) -> Result<Evaluation> {
    if s.re.is_nan() || s.re <= 0.0 || !s.im.is_finite() {
        return Err(Error::Domain(format!("Euler-Maclaurin oracle needs Re s > 0, got {s}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    check_tol(tol)?;
    let mut cut = (((s.norm() + 30.0) * 0.6).ceil() as usize).max(16);
    let (tail, remainder) = loop {
        let (tail, remainder) = em_tail(s, cut);
        if remainder <= tol / 4.0 {
            break (tail, remainder);
        }
        cut = cut * 3 / 2;
        if cut > MAX_TERMS {
            return Err(Error::Accuracy { requested: tol, achievable: remainder });
        }
    };
    let mut head = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in (1..cut).rev() {
        head += inv_pow(k - 1, s);
        let l = (k as f64).ln();
        magnitude += (-s.re * l).exp() * (1.0 + s.im.abs() * l);
    }
    let value = head + tail;
    let error_estimate = remainder + 4.0 * f64::EPSILON * (magnitude + tail.norm());
    if error_estimate > tol {
        return Err(Error::Accuracy { requested: tol, achievable: error_estimate });
    }
    Ok(Evaluation { value, error_estimate, terms: cut - 1 })
}

pub fn zeta_em(s: Complex64, tol: f64) -> Result<Complex64> {
    zeta_em_eval(s, tol).map(|e| e.value)
}

/// `2^(1-s) - 1`.
pub fn eta_factor(s: Complex64) -> Complex64 {
    ((1.0 - s) * LN_2).exp() - 1.0
}

/// `|zeta*(s) - (2^(1-s) - 1) zeta(s)|` with both sides at tolerance `1e-12`.
pub fn identity_residual(s: Complex64) -> Result<f64> {
    let star = zeta_star(s, MIN_TOL)?;
    let zeta = zeta_em(s, MIN_TOL)?;
    Ok((star - eta_factor(s) * zeta).norm())
}

/// `s - i 2 pi n / log 2`.
pub fn tau_shift(s: Complex64, n: i64) -> Complex64 {
    s - Complex64::new(0.0, SHIFT * n as f64)
}

/// A point `s - i 2 pi n / log 2` kept as its base point and turn count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedPoint {
    pub base: Complex64,
    pub turns: i64,
}

impl ShiftedPoint {
    pub fn new(base: Complex64, turns: i64) -> Self {
        Self { base, turns }
    }

    pub fn value(&self) -> Complex64 {
        tau_shift(self.base, self.turns)
    }

    /// `2^(1 - point)`. The exponent is `(1 - base) log 2 + 2 pi i turns`;
    /// the whole turns are dropped before exponentiating.
    pub fn pow2_one_minus(&self) -> Complex64 {
        ((1.0 - self.base) * LN_2).exp()
    }
}

/// `|2^(1 - tau^n s) - 2^(1-s)|` with the turns reduced symbolically.
pub fn factor_invariance_residual(s: Complex64, n: i64) -> f64 {
    let shifted = ShiftedPoint::new(s, n).pow2_one_minus();
    let base = ShiftedPoint::new(s, 0).pow2_one_minus();
    (shifted - base).norm()
}

/// Same residual computed from the rounded shifted point, for comparison.
pub fn naive_factor_residual(s: Complex64, n: i64) -> f64 {
    let shifted = ((1.0 - tau_shift(s, n)) * LN_2).exp();
    (shifted - ((1.0 - s) * LN_2).exp()).norm()
}

/// A rectangular grid over a compact subset of the strip, with `zeta*` values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub n_re: usize,
    pub n_im: usize,
    pub tol: f64,
    #[serde(skip)]
    points: Vec<Complex64>,
    #[serde(skip)]
    values: Vec<Complex64>,
}

fn linspace(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![lo];
    }
    (0..m).map(|i| lo + (hi - lo) * i as f64 / (m - 1) as f64).collect()
}

impl StripGrid {
    /// Builds the grid (row-major in the imaginary direction) and evaluates
    /// `zeta*` at every point to `tol`.
    pub fn new(re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize, tol: f64) -> Result<Self> {
        let (re_min, re_max) = re;
        let (im_min, im_max) = im;
        let inside = |x: f64| x > 0.5 && x < 1.0;
        if !(inside(re_min) && inside(re_max) && re_min <= re_max) {
            return Err(Error::Config(format!("grid real range [{re_min}, {re_max}] must lie inside (1/2, 1)")));
        }
        if !(im_min.is_finite() && im_max.is_finite() && im_min <= im_max) {
            return Err(Error::Config(format!("bad imaginary range [{im_min}, {im_max}]")));
        }
        if n_re == 0 || n_im == 0 {
            return Err(Error::Config("grid needs at least one point per direction".into()));
        }
        let mut points = Vec::with_capacity(n_re * n_im);
        for y in linspace(im_min, im_max, n_im) {
            for x in linspace(re_min, re_max, n_re) {
                points.push(Complex64::new(x, y));
            }
        }
        let values = points.par_iter().map(|&s| zeta_star(s, tol)).collect::<Result<Vec<_>>>()?;
        Ok(Self { re_min, re_max, im_min, im_max, n_re, n_im, tol, points, values })
    }

    /// `[0.6, 0.9] x [-1, 1] i` on an 11 x 11 grid.
    pub fn default_grid(tol: f64) -> Result<Self> {
        Self::new((0.6, 0.9), (-1.0, 1.0), 11, 11, tol)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `max_s |zeta*(tau^n s) - zeta*(s)|` over the grid.
pub fn orbit_sup_distance(grid: &StripGrid, n: u64, tol: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let mut sup = 0.0f64;
    for (&s, &v) in grid.points.iter().zip(&grid.values) {
        let shifted = zeta_star(tau_shift(s, n as i64), tol)?;
        sup = sup.max((shifted - v).norm());
    }
    Ok(sup)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaScan {
    pub exploratory: bool,
    pub report: RecurrenceReport,
    pub sup_distances: Vec<f64>,
}

impl ZetaScan {
    /// `n,sup_distance,in_ball` rows for `n = 1..=N`.
    pub fn csv(&self) -> String {
        let mut out = String::from("n,sup_distance,in_ball\n");
        for (i, d) in self.sup_distances.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i + 1, d, *d < self.report.epsilon));
        }
        out
    }
}

/// Return times of `zeta*` to its sup-ball of radius `epsilon` on the grid.
pub fn recurrence_scan(grid: &StripGrid, epsilon: f64, horizon: u64, tol: f64) -> Result<ZetaScan> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::Config(format!("epsilon must be > 0, got {epsilon}")));
    }
    if !(1..=MAX_HORIZON).contains(&horizon) {
        return Err(Error::Config(format!("horizon must be in 1..={MAX_HORIZON}, got {horizon}")));
    }
    let sup_distances = (1..=horizon)
        .into_par_iter()
        .map(|n| orbit_sup_distance(grid, n, tol).map_err(|e| Error::Scan { n, source: Box::new(e) }))
        .collect::<Result<Vec<_>>>()?;
    let report = RecurrenceReport::from_trace(&sup_distances, epsilon);
    Ok(ZetaScan { exploratory: true, report, sup_distances })
}

/// Sum of the sup moduli of `zeta*` on the grid and on its `n`-th shift,
/// an upper bound for [`orbit_sup_distance`].
pub fn triangle_bound(grid: &StripGrid, n: u64, tol: f64) -> Result<f64> {
    let mut shifted_max = 0.0f64;
    for &s in &grid.points {
        shifted_max = shifted_max.max(zeta_star(tau_shift(s, n as i64), tol)?.norm());
    }
    let base_max = grid.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(shifted_max + base_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Partial sums of the alternating series with averaging of consecutive
    /// partial sums repeated (iterated Euler transform of the tail); only
    /// valid for real `s`.
    fn euler_oracle(s: f64) -> f64 {
        let m = 60;
        let mut sums: Vec<f64> = Vec::with_capacity(m);
        let mut acc = 0.0;
        for n in 1..=m {
            acc += if n % 2 == 0 { 1.0 } else { -1.0 } * (n as f64).powf(-s);
            sums.push(acc);
        }
        while sums.len() > 1 {
            sums = sums.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        }
        sums[0]
    }

    #[test]
    fn classical_values() {
        let z2 = zeta_star(c(2.0, 0.0), 1e-12).unwrap();
        assert!((z2.re + PI * PI / 12.0).abs() < 1e-12 && z2.im == 0.0);
        let z1 = zeta_star(c(1.0, 0.0), 1e-12).unwrap();
        assert!((z1.re + LN_2).abs() < 1e-12);
        let z3 = zeta_star(c(3.0, 0.0), 1e-12).unwrap();
        let zeta3 = zeta_em(c(3.0, 0.0), 1e-12).unwrap();
        assert!((z3 + 0.75 * zeta3).norm() < 1e-12);
        assert!((z3.re + 0.9015426773696957).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_euler_transform_oracle() {
        for s in [0.6, 0.75, 1.0, 2.0, 3.0] {
            let got = zeta_star(c(s, 0.0), 1e-12).unwrap().re;
            assert!((got - euler_oracle(s)).abs() < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn em_classical_values() {
        assert!((zeta_em(c(2.0, 0.0), 1e-12).unwrap().re - PI * PI / 6.0).abs() < 1e-12);
        assert!((zeta_em(c(4.0, 0.0), 1e-12).unwrap().re - PI.powi(4) / 90.0).abs() < 1e-12);
        assert!(matches!(zeta_em(c(1.0, 0.0), 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_cross_checks() {
        assert!(identity_residual(c(2.0, 0.0)).unwrap() <= 1e-10);
        assert!(identity_residual(c(0.6, 5.0)).unwrap() <= 1e-8);
        assert!(identity_residual(c(0.9, 0.0)).unwrap() <= 1e-9);
        assert!(identity_residual(c(0.75, 10.0)).unwrap() < 1e-8);
    }

    #[test]
    fn identity_on_grid_both_directions() {
        for i in 0..10 {
            for j in 0..10 {
                let s = c(0.6 + 0.3 * i as f64 / 9.0, 30.0 * j as f64 / 9.0);
                assert!(identity_residual(s).unwrap() <= 1e-8, "s = {s}");
                let back = zeta_star(s, 1e-12).unwrap() / eta_factor(s);
                assert!((zeta_em(s, 1e-12).unwrap() - back).norm() <= 1e-8, "s = {s}");
            }
        }
    }

    #[test]
    fn domain_and_tolerance_errors() {
        assert!(matches!(zeta_star(c(0.0, 1.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_star(c(-1.0, 0.0), 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_star(c(0.7, 0.0), 1e-14), Err(Error::Accuracy { .. })));
        // far up the strip the rounding floor exceeds 1e-12
        match zeta_star(c(0.7, 4000.0), 1e-12) {
            Err(Error::Accuracy { achievable, .. }) => assert!(achievable > 1e-12),
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for s in [c(0.7, 3.0), c(0.6, 25.0), c(0.85, -12.5)] {
            let a = zeta_star(s.conj(), 1e-12).unwrap();
            let b = zeta_star(s, 1e-12).unwrap().conj();
            assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn gamma_against_known_values() {
        assert!((ln_abs_gamma(c(1.0, 0.0))).abs() < 1e-14);
        assert!((ln_abs_gamma(c(0.5, 0.0)) - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_abs_gamma(c(5.0, 0.0)) - 24f64.ln()).abs() < 1e-13);
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        let t = 7.0;
        let want = 0.5 * (PI / (PI * t).cosh()).ln();
        assert!((ln_abs_gamma(c(0.5, t)) - want).abs() < 1e-12);
    }

    #[test]
    fn acceleration_weights_are_monotone() {
        let w = acceleration_weights(40);
        assert!(w[0] <= 1.0 && w[0] > 0.999);
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
        assert!(*w.last().unwrap() > 0.0);
    }

    #[test]
    fn tau_shift_examples() {
        let s = c(0.75, 0.0);
        assert_eq!(tau_shift(s, 0), s);
        let s1 = tau_shift(s, 1);
        assert_eq!(s1.re, 0.75);
        assert!((s1.im + 9.064720283654388).abs() < 1e-14);
    }

    #[test]
    fn factor_invariance() {
        let s = c(0.75, 0.0);
        for n in [0i64, 1, 1000, 1_000_000] {
            assert!(factor_invariance_residual(s, n) <= 1e-12);
        }
        assert!(naive_factor_residual(s, 1_000_000) > 1e-12);
    }

    #[test]
    fn grid_validation() {
        assert!(StripGrid::new((0.5, 0.9), (0.0, 1.0), 2, 2, 1e-10).is_err());
        assert!(StripGrid::new((0.6, 1.0), (0.0, 1.0), 2, 2, 1e-10).is_err());
        assert!(StripGrid::new((0.6, 0.9), (0.0, 1.0), 0, 2, 1e-10).is_err());
        let g = StripGrid::new((0.6, 0.9), (0.0, 1.0), 3, 2, 1e-10).unwrap();
        assert_eq!(g.points().len(), 6);
        assert_eq!(g.points()[4], c(0.75, 1.0));
    }

    #[test]
    fn orbit_distance_basics() {
        let g = StripGrid::new((0.6, 0.9), (-1.0, 1.0), 3, 3, 1e-10).unwrap();
        assert_eq!(orbit_sup_distance(&g, 0, 1e-10).unwrap(), 0.0);
        let d1 = orbit_sup_distance(&g, 1, 1e-10).unwrap();
        assert!(d1 > 0.0);
        assert_eq!(orbit_sup_distance(&g, 1, 1e-10).unwrap(), d1);
        assert!(d1 <= triangle_bound(&g, 1, 1e-10).unwrap());
    }

    #[test]
    fn scan_basics() {
        let g = StripGrid::new((0.6, 0.9), (-1.0, 1.0), 2, 2, 1e-10).unwrap();
        let huge = recurrence_scan(&g, 1e3, 5, 1e-10).unwrap();
        assert_eq!(huge.report.density, 1.0);
        assert!(huge.exploratory);
        assert!(recurrence_scan(&g, 0.0, 5, 1e-10).is_err());
        assert!(recurrence_scan(&g, 1.0, 501, 1e-10).is_err());
        let csv = huge.csv();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.lines().nth(1).unwrap().ends_with(",true"));
    }
}
