//! Dimensions of spherical-harmonic spaces and normalized Gegenbauer polynomials.

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Dimension of the space of degree-`k` spherical harmonics on `S^d`:
/// `(2k + d - 1) / (k + d - 1) * C(d + k - 1, k)`, with `k = 0` giving 1.
pub fn harmonic_dimension(d: u32, k: u32) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "sphere dimension d must be >= 1".into(),
        ));
    }
    if k == 0 {
        return Ok(1);
    }
    let (d, k) = (d as u128, k as u128);
    let mut binom: u128 = 1;
    // C(d + k - 1, k), built incrementally so every intermediate is an integer.
    for i in 1..=k {
        binom = binom
            .checked_mul(d - 1 + i)
            .ok_or(Error::Overflow("harmonic dimension"))?
            / i;
    }
    let num = binom
        .checked_mul(2 * k + d - 1)
        .ok_or(Error::Overflow("harmonic dimension"))?;
    let dim = num / (k + d - 1);
    debug_assert_eq!(num % (k + d - 1), 0);
    u64::try_from(dim).map_err(|_| Error::Overflow("harmonic dimension"))
}

/// Ultraspherical polynomial for `S^d` scaled so that `g(1) = 1`.
///
/// Coefficients are stored constant term first.
#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerPoly<T> {
    d: u32,
    k: u32,
    coeffs: Vec<T>,
}

impl<T: Scalar> GegenbauerPoly<T> {
    pub fn sphere_dim(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn evaluate(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }
}

/// Normalized Gegenbauer polynomial `g_k^d` with parameter `lambda = (d - 1) / 2`.
///
/// Built from the three-term recurrence
/// `n C_n = 2 (n - 1 + lambda) t C_{n-1} - (n - 2 + 2 lambda) C_{n-2}` and
/// divided by `C_k(1)`. At `d = 1` (`lambda = 0`) the normalized limit is the
/// Chebyshev polynomial `T_k`, generated by its own recurrence.
pub fn gegenbauer<T: Scalar>(d: u32, k: u32) -> Result<GegenbauerPoly<T>> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "sphere dimension d must be >= 1".into(),
        ));
    }
    let raw: Vec<T> = if d == 1 {
        chebyshev(k)
    } else {
        ultraspherical(d, k)
    };
    let at_one = raw.iter().fold(T::zero(), |acc, c| acc + c.clone());
    let coeffs = raw.into_iter().map(|c| c / at_one.clone()).collect();
    Ok(GegenbauerPoly { d, k, coeffs })
}

/// Free-function form of [`GegenbauerPoly::evaluate`].
pub fn evaluate<T: Scalar>(p: &GegenbauerPoly<T>, t: &T) -> T {
    p.evaluate(t)
}

fn ultraspherical<T: Scalar>(d: u32, k: u32) -> Vec<T> {
    let lambda = T::from_ratio(d as i64 - 1, 2);
    let two = T::from_int(2);
    let mut prev = vec![T::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![T::zero(), two.clone() * lambda.clone()];
    for n in 2..=k as i64 {
        let a = two.clone() * (T::from_int(n - 1) + lambda.clone());
        let b = T::from_int(n - 2) + two.clone() * lambda.clone();
        let next = combine(&cur, a, &prev, b, T::from_int(n));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn chebyshev<T: Scalar>(k: u32) -> Vec<T> {
    let mut prev = vec![T::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![T::zero(), T::one()];
    for _ in 2..=k {
        let next = combine(&cur, T::from_int(2), &prev, T::one(), T::one());
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `(a * t * hi - b * lo) / div` on coefficient vectors.
fn combine<T: Scalar>(hi: &[T], a: T, lo: &[T], b: T, div: T) -> Vec<T> {
    let mut out = vec![T::zero(); hi.len() + 1];
    for (i, c) in hi.iter().enumerate() {
        out[i + 1] += a.clone() * c.clone();
    }
    for (i, c) in lo.iter().enumerate() {
        out[i] -= b.clone() * c.clone();
    }
    out.into_iter().map(|c| c / div.clone()).collect()
}
