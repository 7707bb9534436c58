use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` in canonical form.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator {
            numerator: num.to_string(),
        });
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as a `p/q` token; integers keep the `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let token = token.trim();
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in {token:?}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in {token:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    Ok(Rational::new(num, den))
}
