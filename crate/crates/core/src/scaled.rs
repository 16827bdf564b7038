//! Sign/magnitude arithmetic with an unbounded base-2 exponent.
//!
//! Long coefficient products and three-term recurrences overflow binary64
//! well before the final inverse entries do, since every entry is a ratio of
//! such products. [`ScaledValue`] keeps the exponent in a separate integer so
//! products, quotients and sums of astronomically scaled terms stay exact in
//! the exponent and lose nothing beyond ordinary mantissa rounding.

use crate::error::Error;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number stored as `sign * mant * 2^exp` with `mant` in `[1, 2)`.
///
/// The base-2 logarithm of the magnitude is `exp + log2(mant)`; see
/// [`ScaledValue::log2_magnitude`]. Zero is `sign == 0` with a canonical
/// payload so equality is structural.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    sign: i8,
    exp: i64,
    mant: f64,
}

/// Splits a finite nonzero float into `(mant, exp)` with `mant` in `[1, 2)`.
fn decompose(x: f64) -> (f64, i64) {
    let mut v = x.abs();
    let mut shift = 0i64;
    if v < f64::MIN_POSITIVE {
        // Subnormal: renormalize first so the exponent bits are meaningful.
        v *= 2f64.powi(54);
        shift = -54;
    }
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1023 + shift;
    let mant = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (mant, exp)
}

/// Exact `2^e` for `e` in the normal range.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        sign: 0,
        exp: 0,
        mant: 0.0,
    };
    pub const ONE: ScaledValue = ScaledValue {
        sign: 1,
        exp: 0,
        mant: 1.0,
    };

    /// Builds a scaled value from a finite float. The conversion is exact.
    ///
    /// Panics on NaN or infinity: those carry no magnitude to scale.
    pub fn from_f64(x: f64) -> ScaledValue {
        assert!(x.is_finite(), "scaled value from non-finite float");
        if x == 0.0 {
            return ScaledValue::ZERO;
        }
        let (mant, exp) = decompose(x);
        ScaledValue {
            sign: if x < 0.0 { -1 } else { 1 },
            exp,
            mant,
        }
    }

    /// Converts back to a plain float.
    ///
    /// Exact whenever the exponent is in the normal binary64 range; values
    /// below it flush to (signed) zero through the usual subnormal rounding,
    /// and values above it report [`Error::Overflow`].
    pub fn to_f64(self) -> Result<f64, Error> {
        if self.sign == 0 {
            return Ok(0.0);
        }
        let s = self.sign as f64;
        if self.exp > 1023 {
            return Err(Error::Overflow);
        }
        if self.exp < -1140 {
            return Ok(0.0 * s);
        }
        if self.exp >= -1022 {
            Ok(s * self.mant * pow2(self.exp))
        } else {
            // Land in (or below) the subnormal range in two exact-power steps.
            Ok(s * self.mant * pow2(-600) * pow2(self.exp + 600))
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// −1, 0 or +1.
    pub fn signum(self) -> i8 {
        self.sign
    }

    /// Base-2 logarithm of the magnitude. Unspecified (−∞) for zero.
    pub fn log2_magnitude(self) -> f64 {
        if self.sign == 0 {
            return f64::NEG_INFINITY;
        }
        self.exp as f64 + self.mant.log2()
    }

    pub fn abs(self) -> ScaledValue {
        ScaledValue {
            sign: self.sign.abs(),
            ..self
        }
    }

    /// Compares magnitudes without materializing either value.
    pub fn cmp_magnitude(self, other: ScaledValue) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => (self.exp, self.mant)
                .partial_cmp(&(other.exp, other.mant))
                .unwrap_or(Ordering::Equal),
        }
    }

    fn renormalize(sign: i8, exp: i64, mant: f64) -> ScaledValue {
        if mant == 0.0 || sign == 0 {
            return ScaledValue::ZERO;
        }
        let (m, e) = decompose(mant);
        ScaledValue {
            sign,
            exp: exp + e,
            mant: m,
        }
    }

    /// Integer power by repeated squaring; negative powers go through the
    /// reciprocal, so `self` must be nonzero for `k < 0`.
    pub fn powi(self, k: i64) -> ScaledValue {
        if k == 0 {
            return ScaledValue::ONE;
        }
        if self.sign == 0 {
            assert!(k > 0, "zero to a negative power");
            return ScaledValue::ZERO;
        }
        let mut base = if k < 0 { ScaledValue::ONE / self } else { self };
        let mut left = k.unsigned_abs();
        let mut acc = ScaledValue::ONE;
        while left > 0 {
            if left & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            left >>= 1;
        }
        acc
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        if self.sign == 0 || rhs.sign == 0 {
            return ScaledValue::ZERO;
        }
        // mant product is in [1, 4): renormalization shifts at most one bit.
        ScaledValue::renormalize(
            self.sign * rhs.sign,
            self.exp + rhs.exp,
            self.mant * rhs.mant,
        )
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: ScaledValue) -> ScaledValue {
        assert!(rhs.sign != 0, "scaled division by zero");
        if self.sign == 0 {
            return ScaledValue::ZERO;
        }
        ScaledValue::renormalize(
            self.sign * rhs.sign,
            self.exp - rhs.exp,
            self.mant / rhs.mant,
        )
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue {
            sign: -self.sign,
            ..self
        }
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: ScaledValue) -> ScaledValue {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.cmp_magnitude(rhs) == std::cmp::Ordering::Less {
            (rhs, self)
        } else {
            (self, rhs)
        };
        let delta = big.exp - small.exp;
        if delta > 64 {
            // The small term is below half an ulp of the big one.
            return big;
        }
        let small_mant = (small.sign * big.sign) as f64 * small.mant * pow2(-delta);
        ScaledValue::renormalize(big.sign, big.exp, big.mant + small_mant)
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: ScaledValue) -> ScaledValue {
        self + (-rhs)
    }
}

impl std::fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        match self.to_f64() {
            Ok(v) => write!(f, "{v:e}"),
            Err(_) => write!(
                f,
                "{}2^{:.6}",
                if self.sign < 0 { "-" } else { "" },
                self.log2_magnitude()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        for &x in &[1.0, -2.5, 0.3, 1e-300, -7.25e250, f64::MIN_POSITIVE, 0.0] {
            assert_eq!(ScaledValue::from_f64(x).to_f64().unwrap(), x);
        }
        // Subnormal input survives the trip too.
        let sub = f64::MIN_POSITIVE / 1024.0;
        assert_eq!(ScaledValue::from_f64(sub).to_f64().unwrap(), sub);
    }

    #[test]
    fn product_of_many_factors_matches_direct() {
        // Multiplicative congruential stream, factors in [0.5, 2].  The
        // geometric mean of that range sits above 1, so the factor count is
        // kept low enough for the reference product to stay finite.
        let mut state = 0x243F6A8885A308D3u64;
        let mut direct = 1.0f64;
        let mut scaled = ScaledValue::ONE;
        for _ in 0..600 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            let f = 0.5 + 1.5 * u;
            direct *= f;
            scaled = scaled * ScaledValue::from_f64(f);
        }
        assert!(direct.is_finite() && direct != 0.0);
        let got = scaled.to_f64().unwrap();
        assert!((got - direct).abs() <= 1e-12 * direct.abs());
    }

    #[test]
    fn survives_where_direct_product_overflows() {
        let mut direct = 1.0f64;
        let mut scaled = ScaledValue::ONE;
        for _ in 0..2000 {
            direct *= 1.75;
            scaled = scaled * ScaledValue::from_f64(1.75);
        }
        assert!(direct.is_infinite());
        assert!(scaled.to_f64().is_err());
        assert!((scaled.log2_magnitude() - 2000.0 * 1.75f64.log2()).abs() < 1e-6);
        // Dividing the excess back out returns to representable territory.
        let back = scaled / ScaledValue::from_f64(1.75).powi(1999);
        assert!((back.to_f64().unwrap() - 1.75).abs() < 1e-12);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ScaledValue::from_f64(3.0);
        let b = ScaledValue::from_f64(-2.9375);
        assert_eq!((a + b).to_f64().unwrap(), 0.0625);
        assert_eq!(
            (ScaledValue::from_f64(1.5) - ScaledValue::from_f64(1.5)).signum(),
            0
        );
        // Far-apart magnitudes: the small addend disappears.
        let tiny = ScaledValue::from_f64(1.0) / ScaledValue::from_f64(2.0).powi(200);
        assert_eq!((a + tiny).to_f64().unwrap(), 3.0);
    }

    #[test]
    fn integer_powers() {
        let x = ScaledValue::from_f64(3.0);
        assert_eq!(x.powi(0).to_f64().unwrap(), 1.0);
        assert_eq!(x.powi(5).to_f64().unwrap(), 243.0);
        assert!((x.powi(-3).to_f64().unwrap() - 1.0 / 27.0).abs() < 1e-18);
        let two = ScaledValue::from_f64(2.0);
        assert_eq!(two.powi(5000).log2_magnitude(), 5000.0);
    }

    #[test]
    fn magnitude_ordering() {
        use std::cmp::Ordering;
        let a = ScaledValue::from_f64(-8.0);
        let b = ScaledValue::from_f64(5.0);
        assert_eq!(a.cmp_magnitude(b), Ordering::Greater);
        assert_eq!(ScaledValue::ZERO.cmp_magnitude(b), Ordering::Less);
    }
}
