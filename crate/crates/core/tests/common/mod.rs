#![allow(dead_code)]

use harmonic_codes::{rat, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Exact unit vector in `R^dim` from `dim - 1` rationals by inverse
/// stereographic projection: `(2u, |u|^2 - 1) / (|u|^2 + 1)`.
pub fn unit_vector(u: &[Rational]) -> Vec<Rational> {
    let s = u.iter().fold(Rational::zero(), |acc, c| acc + c * c);
    let denom = &s + Rational::one();
    let mut v: Vec<Rational> = u.iter().map(|c| c * rat(2, 1).unwrap() / &denom).collect();
    v.push((&s - Rational::one()) / &denom);
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gram_rows(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    vectors
        .iter()
        .map(|a| vectors.iter().map(|b| dot(a, b)).collect())
        .collect()
}

/// `(dim, vectors)` with `2 <= dim <= 6` and up to `max_n` exact unit vectors.
pub fn arb_unit_vectors(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
    (2usize..=6).prop_flat_map(move |dim| {
        let coord = (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d).unwrap());
        let vector = proptest::collection::vec(coord, dim - 1).prop_map(|u| unit_vector(&u));
        (Just(dim), proptest::collection::vec(vector, 1..=max_n))
    })
}
