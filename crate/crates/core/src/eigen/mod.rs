//! Eigenstructure of the weighted cyclic shift on one block.
//!
//! For `lambda` in `U_n` the vector `X_lambda = sum_j (2 lambda)^(j-1) e_j`
//! satisfies `v X_lambda = lambda^-1 X_lambda`. Its entries grow like
//! `2^(j-1)`, so everything here works with the scaled vector
//! `Xhat_lambda = 2^(1-n) X_lambda`, whose entry `j` is `lambda^(j-1) 2^(j-n)`.
//! Every stored modulus lies in `[2^(1-n), 1]`; below the subnormal floor
//! (`n > 1075`) the smallest entries flush to zero, which perturbs norms by
//! less than `1e-300`.
//!
//! `U_{k!}` is ordered as `lambda_{rk+b} = exp(2 pi i (b (k-1)! + r) / k!)`
//! with `0 <= b < k` and `0 <= r < (k-1)!`. With that order all `k` roots
//! in a run `rk .. rk+k-1` share the same `lambda^k`, which makes the runs
//! `T_r` of the partial sums `Shat_A = sum_{a<=A} lambda_a^k Xhat_{lambda_a}`
//! collapse to a sparse closed form.

mod cyclotomic;
mod roots;

use num_complex::Complex64;
use serde::Serialize;

use crate::block_operator::apply_block;
use crate::scaling::{ldexp_c, pow2, Scaled, MIN_EXP};
use crate::seqspace::{block_norm, factorial, MAX_K};
use crate::{Error, Result};

pub use cyclotomic::{phi as cyclotomic_polynomial, CyclotomicSums};
pub use roots::{gcd, root_power_sum, unit_root, RootOfUnity, RootTable};

/// Largest `n` for which [`basis_from_eigen`] is supported.
pub const MAX_RECONSTRUCTION_ORDER: usize = 720;

#[derive(Debug, Clone, PartialEq)]
pub struct ScaledEigenvector {
    lambda: RootOfUnity,
    coefficients: Vec<Complex64>,
}

impl ScaledEigenvector {
    pub fn lambda(&self) -> RootOfUnity {
        self.lambda
    }

    /// The eigenvalue `lambda^-1` of the shift.
    pub fn eigenvalue(&self) -> RootOfUnity {
        self.lambda.inv()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Complex64> {
        self.coefficients
    }

    pub fn norm(&self) -> f64 {
        block_norm(&self.coefficients)
    }
}

/// Index of the first stored entry of a length-`n` scaled vector whose
/// weight `2^(j-n)` does not flush to zero (0-based).
fn window_start(n: usize) -> usize {
    n.saturating_sub((-MIN_EXP) as usize + 1)
}

/// `Xhat_lambda` in `C^n`; `lambda` must have order dividing `n`.
pub fn x_hat(n: usize, lambda: RootOfUnity) -> Result<ScaledEigenvector> {
    if n < 2 {
        return Err(Error::Config(format!("eigenvector dimension must be >= 2, got {n}")));
    }
    let m = lambda.index_in(n as u64).ok_or_else(|| Error::Domain(format!("root of order {} does not lie in U_{n}", lambda.order())))?;
    let table = RootTable::new(n as u64);
    let mut coefficients = vec![Complex64::new(0.0, 0.0); n];
    for (pos, c) in coefficients.iter_mut().enumerate().skip(window_start(n)) {
        // entry j = pos + 1 is lambda^(j-1) 2^(j-n)
        *c = table.get_u(m * pos as u64) * pow2(pos as i64 + 1 - n as i64);
    }
    Ok(ScaledEigenvector { lambda: RootOfUnity::new(n as u64, m)?, coefficients })
}

/// `|| v_k Xhat - lambda^-1 Xhat || / || Xhat ||`.
pub fn eigen_residual(k: usize, lambda: RootOfUnity) -> Result<f64> {
    if k < 2 {
        return Err(Error::Config(format!("eigen relation needs k >= 2, got {k}")));
    }
    let n = factorial(k);
    let x = x_hat(n, lambda)?;
    let vx = apply_block(k, x.coefficients())?;
    let mu = x.eigenvalue().value();
    let diff: Vec<Complex64> = vx.iter().zip(x.coefficients()).map(|(a, b)| a - mu * b).collect();
    Ok(block_norm(&diff) / x.norm())
}

fn check_reconstruction(n: usize, j: usize) -> Result<()> {
    if !(2..=MAX_RECONSTRUCTION_ORDER).contains(&n) {
        return Err(Error::Config(format!("basis reconstruction supports 2 <= n <= {MAX_RECONSTRUCTION_ORDER}, got {n}")));
    }
    if !(1..=n).contains(&j) {
        return Err(Error::OutOfRange(format!("basis index j = {j} outside 1..={n}")));
    }
    Ok(())
}

/// `2^(n-1) / (n 2^(j-1))`, the factor turning `sum lambda^(1-j) Xhat` into `e_j`.
fn reconstruction_prefactor(n: usize, j: usize) -> Scaled {
    Scaled::pow2(n as i64 - j as i64) * Scaled::from_f64(1.0 / n as f64)
}

/// `e_j` rebuilt as `(1 / (n 2^(j-1))) sum_{lambda in U_n} lambda^(1-j) X_lambda`.
///
/// The sum over `U_n` is carried out exactly in the cyclotomic integers
/// (entry `i` is `2^(i-n) sum_m zeta^{m (i-j)}`), then scaled. The prefactor
/// magnifies entry `i` by `2^(n-j)`, so a floating-point sum of rounded roots
/// would swamp entries `i > j` with noise of order `eps 2^(i-j)`; see
/// [`basis_from_eigen_float`] for that route.
pub fn basis_from_eigen(n: usize, j: usize) -> Result<Vec<Complex64>> {
    check_reconstruction(n, j)?;
    let sums = CyclotomicSums::new(n as u64);
    let pre = reconstruction_prefactor(n, j);
    Ok((1..=n)
        .map(|i| {
            let s = sums.power_sum(i as i64 - j as i64);
            ldexp_c(s * pre.mantissa, pre.exponent + i as i64 - n as i64)
        })
        .collect())
}

/// Same reconstruction, summing the floating-point vectors `lambda^(1-j) Xhat`
/// directly. Accurate only while `eps 2^(n-1)` stays small.
pub fn basis_from_eigen_float(n: usize, j: usize) -> Result<Vec<Complex64>> {
    check_reconstruction(n, j)?;
    let table = RootTable::new(n as u64);
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for m in 0..n as u64 {
        let lambda = RootOfUnity::new(n as u64, m)?;
        let x = x_hat(n, lambda)?;
        let w = table.get(-(m as i64) * (j as i64 - 1));
        for (a, c) in acc.iter_mut().zip(x.coefficients()) {
            *a += w * c;
        }
    }
    let pre = reconstruction_prefactor(n, j);
    Ok(acc.into_iter().map(|z| ldexp_c(z * pre.mantissa, pre.exponent)).collect())
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::Config(format!("k must be in 2..={MAX_K}, got {k}")));
    }
    Ok(())
}

/// Index `b (k-1)! + r` of `lambda_a` in `U_{k!}`, with `a = r k + b`.
pub fn ordered_index(k: usize, a: usize) -> Result<u64> {
    check_k(k)?;
    let n = factorial(k);
    if a >= n {
        return Err(Error::OutOfRange(format!("ordering index a = {a} outside 0..{n}")));
    }
    let (r, b) = (a / k, a % k);
    Ok((b * factorial(k - 1) + r) as u64)
}

pub fn ordered_lambda(k: usize, a: usize) -> Result<RootOfUnity> {
    let m = ordered_index(k, a)?;
    RootOfUnity::new(factorial(k) as u64, m)
}

/// The variant division `A = R k + B` with `-1 <= B <= k - 2`.
pub fn decompose(k: usize, a: usize) -> (usize, i64) {
    let r = (a + 1) / k;
    (r, a as i64 - (r * k) as i64)
}

/// Incremental scan over the scaled partial sums `Shat_0, Shat_1, ...`.
///
/// Only the entries whose weight `2^(j-n)` is representable are touched; the
/// rest are exactly zero in every term.
pub struct PartialSums {
    k: usize,
    n: usize,
    start: usize,
    table: RootTable,
    weights: Vec<f64>,
    acc: Vec<Complex64>,
    next: usize,
}

impl PartialSums {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k)?;
        let n = factorial(k);
        let start = window_start(n);
        let weights = (start..n).map(|pos| pow2(pos as i64 + 1 - n as i64)).collect();
        Ok(Self { k, n, start, table: RootTable::new(n as u64), weights, acc: vec![Complex64::new(0.0, 0.0); n - start], next: 0 })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the partial sum currently held, if any term was added.
    pub fn current(&self) -> Option<usize> {
        self.next.checked_sub(1)
    }

    /// Adds `lambda_a^k Xhat_{lambda_a}` for the next `a`; `false` once all
    /// `n` terms are in.
    pub fn advance(&mut self) -> bool {
        if self.next >= self.n {
            return false;
        }
        let m = ordered_index(self.k, self.next).expect("index in range") as usize;
        add_term(&self.table, self.n, self.k, m, self.start, &self.weights, &mut self.acc);
        self.next += 1;
        true
    }

    pub fn norm(&self) -> f64 {
        block_norm(&self.acc)
    }

    pub fn materialize(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.start];
        out.extend_from_slice(&self.acc);
        out
    }
}

/// `acc += lambda^k Xhat_lambda` restricted to positions `start..n`, with
/// `lambda = zeta^m`. Entry `j` of the term is `zeta^{m (k + j - 1)} 2^(j-n)`.
fn add_term(table: &RootTable, n: usize, k: usize, m: usize, start: usize, weights: &[f64], acc: &mut [Complex64]) {
    let mut idx = (m * (k + start)) % n;
    for (a, &w) in acc.iter_mut().zip(weights) {
        *a += table.get_u(idx as u64) * w;
        idx += m;
        if idx >= n {
            idx -= n;
        }
    }
}

/// `sum_{a in range} lambda_a^k Xhat_{lambda_a}` as a full block.
fn run_sum(k: usize, range: std::ops::Range<usize>) -> Vec<Complex64> {
    let n = factorial(k);
    let start = window_start(n);
    let table = RootTable::new(n as u64);
    let weights: Vec<f64> = (start..n).map(|pos| pow2(pos as i64 + 1 - n as i64)).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); n - start];
    for a in range {
        let m = ordered_index(k, a).expect("index in range") as usize;
        add_term(&table, n, k, m, start, &weights, &mut acc);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); start];
    out.extend(acc);
    out
}

/// `Shat_A = 2^(1-n) S_A`.
pub fn partial_sum_scaled(k: usize, a: usize) -> Result<Vec<Complex64>> {
    check_k(k)?;
    let n = factorial(k);
    if a >= n {
        return Err(Error::OutOfRange(format!("partial-sum index A = {a} outside 0..{n}")));
    }
    Ok(run_sum(k, 0..a + 1))
}

/// `That_r = 2^(1-n) T_r` summed term by term over `b = 0..k`.
pub fn t_r_direct(k: usize, r: usize) -> Result<Vec<Complex64>> {
    check_r(k, r)?;
    Ok(run_sum(k, r * k..(r + 1) * k))
}

/// The tail `Ehat_A` of the decomposition `Shat_A = sum_{r<R} That_r + Ehat_A`.
pub fn e_a_direct(k: usize, a: usize) -> Result<Vec<Complex64>> {
    check_k(k)?;
    let n = factorial(k);
    if a >= n {
        return Err(Error::OutOfRange(format!("partial-sum index A = {a} outside 0..{n}")));
    }
    let (r, b) = decompose(k, a);
    Ok(run_sum(k, r * k..(r * k) + (b + 1) as usize))
}

fn check_r(k: usize, r: usize) -> Result<()> {
    check_k(k)?;
    let runs = factorial(k - 1);
    if r >= runs {
        return Err(Error::OutOfRange(format!("run index r = {r} outside 0..{runs}")));
    }
    Ok(())
}

/// Closed form for `That_r`:
/// `exp(2 pi i k r / n) k sum_{l=1}^{n/k} 2^(1-kl) exp(-2 pi i k l r / n) e_{n-kl+1}`.
pub fn t_r_closed_form(k: usize, r: usize) -> Result<Vec<Complex64>> {
    check_r(k, r)?;
    let n = factorial(k);
    let table = RootTable::new(n as u64);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let kr = (k * r) as i64;
    for l in 1..=(n / k) {
        let pos = n - k * l; // 0-based position of e_{n-kl+1}
        let phase = table.get(kr - kr * l as i64);
        out[pos] = phase * ldexp_agnostic(k as f64, 1 - (k * l) as i64);
    }
    Ok(out)
}

fn ldexp_agnostic(x: f64, e: i64) -> Complex64 {
    Complex64::new(crate::scaling::ldexp(x, e), 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSumScan {
    pub k: usize,
    pub max_norm: f64,
    /// First `A` attaining `max_norm`.
    pub argmax: usize,
    pub bound: f64,
    pub pass: bool,
}

impl PartialSumScan {
    pub fn csv_header() -> &'static str {
        "k,max_norm,bound,pass"
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.k, self.max_norm, self.bound, self.pass)
    }
}

/// Scaled partial-sum bound `12 k! / 2^k`.
pub fn lemma3_bound(k: usize) -> f64 {
    12.0 * factorial(k) as f64 / 2f64.powi(k as i32)
}

/// Exhaustive scan of `||Shat_A||` over `A = 0..k!` against `12 k! / 2^k`.
pub fn lemma3_bound_check(k: usize) -> Result<PartialSumScan> {
    let mut scan = PartialSums::new(k)?;
    let mut max_norm = 0.0f64;
    let mut argmax = 0;
    while scan.advance() {
        let norm = scan.norm();
        if norm > max_norm {
            max_norm = norm;
            argmax = scan.current().unwrap();
        }
    }
    let bound = lemma3_bound(k);
    Ok(PartialSumScan { k, max_norm, argmax, bound, pass: max_norm <= bound })
}
