//! Exact rational arithmetic over `f64` inputs.
//!
//! Every finite `f64` is a dyadic rational, so levels, areas and crossing
//! times can be carried without rounding and converted back once at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Exact = BigRational;

/// Lifts a finite float into the rationals. Panics on NaN or infinity;
/// callers validate finiteness at the boundary.
pub fn exact(x: f64) -> Exact {
    BigRational::from_float(x).expect("finite value")
}

/// Nearest float to `q`. Never returns `-0.0`.
pub fn to_f64(q: &Exact) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn zero() -> Exact {
    BigRational::zero()
}

pub fn from_int(n: i64) -> Exact {
    BigRational::from_integer(BigInt::from(n))
}
