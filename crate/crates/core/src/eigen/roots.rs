//! Roots of unity generated from their integer index.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;

use crate::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `exp(2 pi i m / n)` with quadrant reduction on the reduced fraction.
///
/// Multiples of a quarter turn are exact, and the values satisfy
/// `root(n - m) = conj(root(m))` bit for bit.
pub fn unit_root(m: u64, n: u64) -> Complex64 {
    assert!(n > 0, "root order must be positive");
    let m = m % n;
    let g = gcd(m, n).max(1);
    let (m, n) = (m / g, n / g);
    let q4 = 4 * m as u128;
    let quadrant = (q4 / n as u128) as u8;
    let rem = (q4 % n as u128) as u64;
    let (c, s) = if rem == 0 {
        (1.0, 0.0)
    } else if 2 * rem == n {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    } else if 2 * rem < n {
        let a = FRAC_PI_2 * (rem as f64 / n as f64);
        (a.cos(), a.sin())
    } else {
        let a = FRAC_PI_2 * ((n - rem) as f64 / n as f64);
        (a.sin(), a.cos())
    };
    match quadrant {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// An element `exp(2 pi i index / order)` of `U_order`.
#[derive(Debug, Clone, Copy, Eq)]
pub struct RootOfUnity {
    order: u64,
    index: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, index: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Config("root order must be >= 1".into()));
        }
        Ok(Self { order, index: index % order })
    }

    pub fn one(order: u64) -> Self {
        Self { order: order.max(1), index: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// The reduced fraction `index / order` as `(numerator, denominator)`.
    pub fn reduced(&self) -> (u64, u64) {
        let g = gcd(self.index, self.order).max(1);
        (self.index / g, self.order / g)
    }

    pub fn value(&self) -> Complex64 {
        unit_root(self.index, self.order)
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = self.order as i128;
        let idx = (self.index as i128 * e as i128).rem_euclid(n);
        Self { order: self.order, index: idx as u64 }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Index of this root inside `U_n`, if `order` divides `n`.
    pub fn index_in(&self, n: u64) -> Option<u64> {
        (n % self.order == 0).then(|| self.index * (n / self.order))
    }
}

impl PartialEq for RootOfUnity {
    fn eq(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }
}

/// All of `U_n`, tabulated once so that powers are index lookups.
#[derive(Debug, Clone)]
pub struct RootTable {
    n: u64,
    values: Vec<Complex64>,
}

impl RootTable {
    pub fn new(n: u64) -> Self {
        let values = (0..n).map(|m| unit_root(m, n)).collect();
        Self { n, values }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// `exp(2 pi i m / n)` for any integer `m`.
    #[inline]
    pub fn get(&self, m: i64) -> Complex64 {
        self.values[m.rem_euclid(self.n as i64) as usize]
    }

    #[inline]
    pub fn get_u(&self, m: u64) -> Complex64 {
        self.values[(m % self.n) as usize]
    }
}

/// `sum_{lambda in U_n} lambda^p`, summed in ascending index order.
pub fn root_power_sum(n: u64, p: i64) -> Complex64 {
    let table = RootTable::new(n);
    (0..n as i64).map(|m| table.get(m * p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(unit_root(0, 7), Complex64::new(1.0, 0.0));
        assert_eq!(unit_root(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(unit_root(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(unit_root(18, 24), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn values_match_polar_form() {
        for n in [3u64, 5, 6, 24, 120, 5040] {
            for m in 0..n.min(200) {
                let want = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64);
                assert!((unit_root(m, n) - want).norm() < 1e-14, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        let n = 720;
        for m in 1..n {
            assert_eq!(unit_root(n - m, n), unit_root(m, n).conj());
        }
    }

    #[test]
    fn reduced_fraction_determines_value() {
        assert_eq!(unit_root(1, 6), unit_root(4, 24));
        assert_eq!(RootOfUnity::new(6, 1).unwrap(), RootOfUnity::new(24, 4).unwrap());
        assert_ne!(RootOfUnity::new(6, 1).unwrap(), RootOfUnity::new(6, 5).unwrap());
    }

    #[test]
    fn n_th_power_is_one() {
        for n in [2u64, 6, 24, 120] {
            for m in 0..n {
                let z = unit_root(m, n);
                let mut p = Complex64::new(1.0, 0.0);
                for _ in 0..n {
                    p *= z;
                }
                assert!((p - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pow_and_inverse_by_index() {
        let l = RootOfUnity::new(6, 1).unwrap();
        assert_eq!(l.inv().index(), 5);
        assert_eq!(l.pow(6).index(), 0);
        assert_eq!(l.pow(-13).index(), 5);
        assert_eq!(l.index_in(24), Some(4));
        assert_eq!(l.index_in(9), None);
    }

    #[test]
    fn orthogonality_of_power_sums() {
        for n in 1..=24u64 {
            for p in 0..(2 * n as i64) {
                let want = if p % n as i64 == 0 { n as f64 } else { 0.0 };
                let got = root_power_sum(n, p);
                assert!((got - want).norm() <= 1e-10, "n={n} p={p} got {got}");
            }
        }
    }
}
