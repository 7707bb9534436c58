use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{NumAssign, One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Field scalar the generic routines are written against.
///
/// Implemented for [`Rational`] (exact) and for `f64`/`f32`. Exact
/// implementations answer [`Scalar::is_negligible`] and
/// [`Scalar::exact_sqrt`] without any tolerance.
pub trait Scalar: Clone + Debug + PartialOrd + NumAssign + Signed + Send + Sync {
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64(&self) -> f64;

    /// Nonnegative square root when it is representable in `Self`.
    ///
    /// For rationals this is `Some` only for perfect squares; floats return
    /// `Some` for every nonnegative input.
    fn exact_sqrt(&self) -> Option<Self>;

    /// Whether the value should be treated as zero: exact zero for rationals,
    /// a fixed absolute tolerance for floats.
    fn is_negligible(&self) -> bool;

    /// Whether the scalar type represents every field operation exactly.
    fn is_exact() -> bool;

    /// `sum_i a_i b_i` over equal-length slices.
    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter()
            .zip(b)
            .fold(Self::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer();
        let den = self.denom();
        let num_root = num.sqrt();
        let den_root = den.sqrt();
        if &num_root * &num_root == *num && &den_root * &den_root == *den {
            Some(Rational::new(num_root, den_root))
        } else {
            None
        }
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }

    /// Clears denominators first so the sum is a single integer dot product
    /// and one final reduction.
    fn dot(a: &[Self], b: &[Self]) -> Self {
        let lcm_a = common_denominator(a);
        let lcm_b = common_denominator(b);
        let mut acc = BigInt::zero();
        for (x, y) in a.iter().zip(b) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let xs = x.numer() * (&lcm_a / x.denom());
            let ys = y.numer() * (&lcm_b / y.denom());
            acc += xs * ys;
        }
        Rational::new(acc, lcm_a * lcm_b)
    }
}

fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, q| {
        if q.denom().is_one() {
            l
        } else {
            l.lcm(q.denom())
        }
    })
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn from_ratio(num: i64, den: i64) -> Self {
                assert!(den != 0, "zero denominator");
                num as $t / den as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn exact_sqrt(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }

            fn is_negligible(&self) -> bool {
                self.abs() <= $tol
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-3);
