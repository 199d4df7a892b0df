//! Exact rational scalars used by all geometric predicates and constructions.
//!
//! Predicates and intersection points are computed over arbitrary-precision
//! rationals so the combinatorial structure of every arrangement is exact.
//! Metric quantities (lengths, areas reported to callers, weights) are
//! converted to `f64` at the edges.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact coordinate type.
pub type Scalar = BigRational;

/// Shorthand for an integer-valued scalar.
pub fn scalar_int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational from a numerator/denominator pair.
pub fn scalar_ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Lossy conversion for reporting and plotting.
pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        // Fall back to a guarded division for extreme magnitudes.
        let n = v.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = v.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Nearest rational with denominator `2^bits` not exceeding `v`.
///
/// Used to keep level-set values at a bounded bit size so arrangement
/// coordinates stay small.
pub fn snap_floor(v: f64, bits: u32) -> Scalar {
    assert!(v.is_finite());
    let den: i64 = 1i64 << bits;
    let num = (v * den as f64).floor() as i64;
    scalar_ratio(num, den)
}

/// Exact floor of a rational to denominator `2^bits`.
pub fn snap_floor_rational(v: &Scalar, bits: u32) -> Scalar {
    use num::Integer;
    let scaled_num = v.numer() << bits;
    let q = scaled_num.div_floor(v.denom());
    BigRational::new(q, BigInt::one() << bits)
}

/// The exact rational value of an f64.
pub fn rational_from_f64(v: f64) -> Scalar {
    BigRational::from_float(v).expect("finite float")
}

/// True when the scalar is an integer.
pub fn is_integer(v: &Scalar) -> bool {
    v.denom().is_one()
}

/// Sign of a scalar as -1, 0 or +1.
pub fn sign(v: &Scalar) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snap_floor_is_lower_bound() {
        let s = snap_floor(0.1, 20);
        assert!(to_f64(&s) <= 0.1);
        assert!(0.1 - to_f64(&s) < 1e-5);
    }

    #[test]
    fn int_detection() {
        assert!(is_integer(&scalar_int(7)));
        assert!(!is_integer(&scalar_ratio(1, 2)));
    }
}
