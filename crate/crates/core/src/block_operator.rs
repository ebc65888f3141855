//! The block-diagonal weighted cyclic shift `u`.
//!
//! On block `k >= 2` (dimension `n = k!`) the shift `v_k` sends
//! `e_{k,j} -> 2 e_{k,j+1}` for `j < n` and wraps `e_{k,n} -> 2^(1-n) e_{k,1}`.
//! Block 1 is the identity. The wrap target is read as `e_{k,1}`, the first
//! vector of the same block: mapping into block 1 would break
//! block-diagonality and the eigen relations of [`crate::eigen`].
//!
//! The product of the weights around the cycle is `2^(n-1) * 2^(1-n) = 1`, so
//! the weight carried from position `j` to position `t` by any power of `v_k`
//! is exactly `2^(t-j)` (0-based or 1-based alike).

use num_complex::Complex64;

use crate::scaling::{ldexp, ldexp_c};
use crate::seqspace::{factorial, BlockLayout, SeqVector};
use crate::{Error, Result};

/// Largest accumulated base-2 weight exponent `apply_pow` will materialize.
pub const MAX_WEIGHT_EXPONENT: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockOperator {
    layout: BlockLayout,
}

fn check_len(k: usize, b: &[Complex64]) -> Result<usize> {
    if k == 0 {
        return Err(Error::Layout("block index must be >= 1".into()));
    }
    let n = factorial(k);
    if b.len() != n {
        return Err(Error::Layout(format!("block {k} needs length {n}, got {}", b.len())));
    }
    Ok(n)
}

/// `v_k` applied to one block.
pub fn apply_block(k: usize, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = check_len(k, b)?;
    if k == 1 {
        return Ok(b.to_vec());
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[0] = ldexp_c(b[n - 1], 1 - n as i64);
    for j in 0..n - 1 {
        out[j + 1] = b[j] * 2.0;
    }
    Ok(out)
}

/// Adjoint of `v_k`: `e_{k,j+1} -> 2 e_{k,j}`, `e_{k,1} -> 2^(1-n) e_{k,n}`.
pub fn apply_block_adjoint(k: usize, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = check_len(k, b)?;
    if k == 1 {
        return Ok(b.to_vec());
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[n - 1] = ldexp_c(b[0], 1 - n as i64);
    for j in 0..n - 1 {
        out[j] = b[j + 1] * 2.0;
    }
    Ok(out)
}

/// `v_k^power` on one block by index arithmetic.
///
/// Fails with [`Error::Overflow`] when a nonzero coefficient would need a
/// weight beyond `2^(+-MAX_WEIGHT_EXPONENT)`.
pub fn apply_block_pow(k: usize, power: u64, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = check_len(k, b)?;
    if k == 1 || power == 0 {
        return Ok(b.to_vec());
    }
    let shift = (power % n as u64) as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (j, &z) in b.iter().enumerate() {
        let t = (j + shift) % n;
        // non-wrap steps minus n times the number of wraps
        let exponent = t as i64 - j as i64;
        if z != Complex64::new(0.0, 0.0) && exponent.abs() > MAX_WEIGHT_EXPONENT {
            return Err(Error::Overflow { k, power, exponent });
        }
        out[t] = ldexp_c(z, exponent);
    }
    Ok(out)
}

/// Largest weight modulus of `v_k`, which is its operator norm since `v_k`
/// permutes an orthonormal basis up to weights.
pub fn block_norm(k: usize) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    let n = factorial(k) as i64;
    2f64.max(ldexp(1.0, 1 - n))
}

/// Operator norm of `v_k` by power iteration on `v_k^* v_k`.
pub fn block_norm_power_iteration(k: usize, iterations: usize) -> f64 {
    let n = factorial(k);
    let mut x = vec![Complex64::new(1.0, 0.0); n];
    let mut estimate = 0.0;
    for _ in 0..iterations.max(1) {
        let norm = crate::seqspace::block_norm(&x);
        for z in x.iter_mut() {
            *z /= norm;
        }
        let vx = apply_block(k, &x).expect("length matches");
        estimate = crate::seqspace::block_norm(&vx);
        x = apply_block_adjoint(k, &vx).expect("length matches");
    }
    estimate
}

impl BlockOperator {
    pub fn new(layout: &BlockLayout) -> Self {
        Self { layout: layout.clone() }
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    fn check(&self, x: &SeqVector) -> Result<()> {
        if x.layout() != &self.layout {
            return Err(Error::Layout(format!(
                "operator on k_max {} applied to vector with k_max {}",
                self.layout.k_max(),
                x.layout().k_max()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, x: &SeqVector) -> Result<SeqVector> {
        self.check(x)?;
        let blocks = (1..=self.layout.k_max()).map(|k| apply_block(k, x.block(k))).collect::<Result<Vec<_>>>()?;
        SeqVector::from_blocks(&self.layout, blocks)
    }

    pub fn apply_pow(&self, power: u64, x: &SeqVector) -> Result<SeqVector> {
        self.check(x)?;
        let blocks = (1..=self.layout.k_max()).map(|k| apply_block_pow(k, power, x.block(k))).collect::<Result<Vec<_>>>()?;
        SeqVector::from_blocks(&self.layout, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_block_examples() {
        assert_eq!(apply_block(1, &[c(3.5)]).unwrap(), vec![c(3.5)]);
        assert_eq!(apply_block(2, &[c(1.0), c(0.0)]).unwrap(), vec![c(0.0), c(2.0)]);
        assert_eq!(apply_block(2, &[c(0.0), c(1.0)]).unwrap(), vec![c(0.5), c(0.0)]);
    }

    #[test]
    fn wrong_length_is_a_layout_error() {
        assert!(matches!(apply_block(3, &[c(1.0); 5]), Err(Error::Layout(_))));
        assert!(matches!(apply_block_pow(3, 2, &[c(1.0); 7]), Err(Error::Layout(_))));
    }

    #[test]
    fn operator_examples() {
        let l = BlockLayout::new(3).unwrap();
        let u = BlockOperator::new(&l);
        let d1 = SeqVector::delta(&l, 1).unwrap();
        assert_eq!(u.apply(&d1).unwrap(), d1);
        let x = SeqVector::basis(&l, 2, 1).unwrap().scale(c(0.25));
        let want = SeqVector::basis(&l, 2, 2).unwrap().scale(c(0.5));
        assert_eq!(u.apply(&x).unwrap(), want);
        let y3 = SeqVector::basis(&l, 3, 4).unwrap().scale(c(0.125));
        assert_eq!(u.apply(&y3).unwrap(), SeqVector::basis(&l, 3, 5).unwrap().scale(c(0.25)));
    }

    #[test]
    fn powers() {
        let mut b = vec![c(0.0); 6];
        b[3] = c(1.0); // e_{3,4}
                       // 4 -> 5 -> 6 -> 1 with weights 2, 2, 2^-5
        let out = apply_block_pow(3, 3, &b).unwrap();
        assert_eq!(out[0], c(0.125));
        let mut stepped = b.clone();
        for _ in 0..3 {
            stepped = apply_block(3, &stepped).unwrap();
        }
        assert_eq!(out, stepped);
        assert_eq!(out.iter().filter(|z| z.norm() != 0.0).count(), 1);
        assert_eq!(apply_block_pow(3, 0, &b).unwrap(), b);
        assert_eq!(apply_block_pow(3, 6, &b).unwrap(), b);
        assert_eq!(apply_block_pow(3, 6 * 1000 + 3, &b).unwrap(), out);
    }

    #[test]
    fn overflow_guard_names_block_and_power() {
        let mut b = vec![c(0.0); 5040];
        b[5039] = c(1.0);
        match apply_block_pow(7, 1, &b) {
            Err(Error::Overflow { k: 7, power: 1, exponent }) => assert_eq!(exponent, -5039),
            other => panic!("expected overflow, got {other:?}"),
        }
        // zero coefficients never trip the guard
        b[5039] = c(0.0);
        b[10] = c(1.0);
        assert!(apply_block_pow(7, 1, &b).is_ok());
    }

    #[test]
    fn norms() {
        assert_eq!(block_norm(1), 1.0);
        for k in 2..=8 {
            assert_eq!(block_norm(k), 2.0);
        }
        for k in 1..=5 {
            let p = block_norm_power_iteration(k, 50);
            assert!((p - block_norm(k)).abs() < 1e-10, "k = {k}: {p}");
        }
    }

    #[test]
    fn adjoint_is_consistent() {
        // <v x, y> = <x, v* y>
        let k = 3;
        let x: Vec<_> = (0..6).map(|i| Complex64::new(i as f64 + 1.0, 0.5 * i as f64)).collect();
        let y: Vec<_> = (0..6).map(|i| Complex64::new(1.0 - i as f64, 2.0)).collect();
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(p, q)| p * q.conj()).sum() };
        let lhs = dot(&apply_block(k, &x).unwrap(), &y);
        let rhs = dot(&x, &apply_block_adjoint(k, &y).unwrap());
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
