//! Exact sums of roots of unity in the cyclotomic integers.
//!
//! A sum `sum_m zeta^{e_m}` with `zeta = exp(2 pi i / n)` is formed in the
//! group ring `Z[x]/(x^n - 1)`, reduced modulo the cyclotomic polynomial
//! `Phi_n`, and only then evaluated. Sums that vanish in `Z[zeta]` come out
//! as exact zeros instead of rounding noise.

use std::collections::HashMap;

use num_complex::Complex64;

use super::roots::RootTable;

type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Exact quotient of `num` by the monic polynomial `den`.
fn div_exact(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut q = vec![0i128; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[i + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division is not exact");
    trim(q)
}

fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d, memo);
            p = div_exact(&p, &phi_d);
        }
    }
    memo.insert(n, p.clone());
    p
}

/// `Phi_n` with coefficients from the constant term up.
pub fn phi(n: u64) -> Vec<i128> {
    cyclotomic_poly(n, &mut HashMap::new())
}

pub struct CyclotomicSums {
    n: u64,
    degree: usize,
    /// `x^t mod Phi_n` for `t = 0..n`.
    residues: Vec<Poly>,
    table: RootTable,
}

impl CyclotomicSums {
    pub fn new(n: u64) -> Self {
        let phi = phi(n);
        let degree = phi.len() - 1;
        let mut residues = Vec::with_capacity(n as usize);
        let mut cur = vec![0i128; degree];
        if degree == 0 {
            // n has no primitive part only when Phi_n = 1, which never happens
            unreachable!("cyclotomic polynomial of degree 0");
        }
        cur[0] = 1;
        for _ in 0..n {
            residues.push(cur.clone());
            // multiply by x, then fold the x^degree term back with Phi_n
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] = cur[i].checked_sub(top.checked_mul(phi[i]).expect("coefficient overflow")).expect("coefficient overflow");
                }
            }
        }
        Self { n, degree, residues, table: RootTable::new(n) }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// Evaluates `sum_t counts[t] zeta^t` after exact reduction.
    pub fn evaluate(&self, counts: &[i64]) -> Complex64 {
        let mut acc = vec![0i128; self.degree];
        for (t, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &r) in acc.iter_mut().zip(&self.residues[t]) {
                    *a += c as i128 * r;
                }
            }
        }
        acc.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, &a)| self.table.get_u(i as u64) * a as f64).sum()
    }

    /// `sum_{m=0}^{n-1} zeta^{m p}`, computed exactly.
    pub fn power_sum(&self, p: i64) -> Complex64 {
        let n = self.n as i64;
        let mut counts = vec![0i64; self.n as usize];
        for m in 0..n {
            counts[(m * p).rem_euclid(n) as usize] += 1;
        }
        self.evaluate(&counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(2), vec![1, 1]);
        assert_eq!(phi(3), vec![1, 1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient of modulus 2
        let p105 = phi(105);
        assert_eq!(p105.len() - 1, 48);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn degree_is_euler_phi() {
        let totient = |n: u64| (1..=n).filter(|&m| super::super::roots::gcd(m, n) == 1).count();
        for n in [2u64, 6, 24, 120, 720] {
            assert_eq!(phi(n).len() - 1, totient(n), "n = {n}");
        }
    }

    #[test]
    fn power_sums_are_exact() {
        for n in [2u64, 5, 6, 24, 120] {
            let s = CyclotomicSums::new(n);
            for p in 0..n as i64 {
                let got = s.power_sum(p);
                if p == 0 {
                    assert_eq!(got, Complex64::new(n as f64, 0.0));
                } else {
                    assert_eq!(got, Complex64::new(0.0, 0.0), "n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn nonvanishing_sums_evaluate_correctly() {
        let s = CyclotomicSums::new(12);
        // 1 + zeta + zeta^2 for zeta of order 12
        let got = s.evaluate(&[1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let z = |m: u64| super::super::roots::unit_root(m, 12);
        let want = z(0) + z(1) + z(2);
        assert!((got - want).norm() < 1e-14);
    }
}
