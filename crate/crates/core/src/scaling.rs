//! Exact powers of two and base-2 exponent arithmetic.
//!
//! The weights of the shift operator and the eigenvector entries range over
//! `2^(+-(k!-1))`. They are carried as a mantissa and an integer exponent,
//! and only turned into a double at the last moment.

use num_complex::Complex64;

/// Smallest exponent whose power of two is representable (subnormal floor).
pub const MIN_EXP: i64 = -1074;
/// Largest exponent whose power of two is finite.
pub const MAX_EXP: i64 = 1023;

/// `2^e` as a double, exact whenever representable; 0 below the subnormal
/// floor and infinity above the overflow threshold.
pub fn pow2(e: i64) -> f64 {
    if e > MAX_EXP {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e >= MIN_EXP {
        f64::from_bits(1u64 << (e - MIN_EXP))
    } else {
        0.0
    }
}

/// `x * 2^e` without spurious intermediate overflow or underflow.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    // Steps of 2^+-1000 keep every factor normal.
    while e > 1000 {
        x *= pow2(1000);
        e -= 1000;
        if x.is_infinite() || x == 0.0 {
            return x;
        }
    }
    while e < -1000 {
        x *= pow2(-1000);
        e += 1000;
        if x == 0.0 || x.is_infinite() {
            return x;
        }
    }
    x * pow2(e)
}

pub fn ldexp_c(z: Complex64, e: i64) -> Complex64 {
    Complex64::new(ldexp(z.re, e), ldexp(z.im, e))
}

/// A positive real `mantissa * 2^exponent` with the mantissa kept in
/// `[1, 2)` after normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exponent: i64,
}

impl Scaled {
    pub fn pow2(exponent: i64) -> Self {
        Self { mantissa: 1.0, exponent }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { mantissa: x, exponent: 0 }.normalized()
    }

    pub fn normalized(self) -> Self {
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            return self;
        }
        let bits = self.mantissa.abs().to_bits();
        let raw = ((bits >> 52) & 0x7ff) as i64;
        if raw == 0 {
            // subnormal mantissa: lift it first
            let lifted = Self { mantissa: self.mantissa * pow2(64), exponent: self.exponent - 64 };
            return lifted.normalized();
        }
        let shift = raw - 1023;
        Self { mantissa: self.mantissa * pow2(-shift), exponent: self.exponent + shift }
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }
}

impl std::ops::Mul for Scaled {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Self { mantissa: self.mantissa * other.mantissa, exponent: self.exponent + other.exponent }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_matches_powi_in_normal_range() {
        for e in -1022..=1023 {
            assert_eq!(pow2(e), 2f64.powi(e as i32), "e = {e}");
        }
    }

    #[test]
    fn pow2_subnormal_edges() {
        assert_eq!(pow2(-1074), f64::from_bits(1));
        assert_eq!(pow2(-1075), 0.0);
        assert_eq!(pow2(1024), f64::INFINITY);
        assert_eq!(pow2(-1023) * 2.0, pow2(-1022));
    }

    #[test]
    fn ldexp_avoids_intermediate_overflow() {
        // 2^1500 * 2^-1499 = 2
        assert_eq!(ldexp(ldexp(1.0, 900), -899), 2.0);
        assert_eq!(ldexp(3.0, -1600 + 1600), 3.0);
        assert_eq!(ldexp(pow2(1000), -1999), pow2(-999));
    }

    #[test]
    fn scaled_prefactor_round_trip() {
        // 2^719 / 720 as used by the basis reconstruction at n = 720
        let p = Scaled::pow2(719) * Scaled::from_f64(1.0 / 720.0);
        assert!((1.0..2.0).contains(&p.mantissa));
        let direct = pow2(719) / 720.0;
        assert_eq!(p.to_f64(), direct);
    }
}
