use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::LatticeCode;
use crate::exact::{format_rational, Rational};

/// Histogram of normalized inner products over ordered pairs of distinct points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum {
    counts: BTreeMap<Rational, u64>,
}

impl Spectrum {
    pub fn from_values<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v.clone()).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> &BTreeMap<Rational, u64> {
        &self.counts
    }

    pub fn count(&self, value: &Rational) -> u64 {
        self.counts.get(value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> {
        self.counts.keys()
    }

    /// Whether the values other than `+-1` are closed under negation. Distinct
    /// pairs never produce `+1`, so `-1` is left out of the check.
    pub fn is_symmetric(&self) -> bool {
        self.counts
            .keys()
            .filter(|v| !v.abs().is_one())
            .all(|v| self.counts.contains_key(&-v))
    }

    /// Largest absolute value in the support, if any.
    pub fn max_abs(&self) -> Option<Rational> {
        self.counts.keys().map(Signed::abs).max()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", format_rational(v), c)?;
        }
        f.write_str("}")
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.counts.len()))?;
        for (v, c) in &self.counts {
            map.serialize_entry(&format_rational(v), c)?;
        }
        map.end()
    }
}

/// Exact spectrum of a lattice code over its `N (N - 1)` ordered distinct pairs.
pub fn spectrum(code: &LatticeCode) -> Spectrum {
    let mut scaled: BTreeMap<i64, u64> = BTreeMap::new();
    for i in 0..code.len() {
        for j in 0..code.len() {
            if i != j {
                *scaled.entry(code.scaled_inner(i, j)).or_insert(0) += 1;
            }
        }
    }
    let norm = code.norm_sq_scaled() as i64;
    Spectrum {
        counts: scaled
            .into_iter()
            .map(|(dot, c)| (Rational::new(dot.into(), norm.into()), c))
            .collect(),
    }
}
