//! Constant-modulus scans of Gegenbauer images of an inner-product spectrum.
//!
//! Given the set of inner products a code realizes, the kernel map sends each
//! value `t` to `g_k^d(t)`. When `|g_k^d|` takes a single value on every
//! non-antipodal product, the image is equiangular and may be compared with
//! the antipodal quadratic bound in `dim H_k^d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::codes::{quadratic_bound, QuadraticBound};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::harmonics::{gegenbauer, harmonic_dimension};

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub d: u32,
    pub k: u32,
    pub harmonic_dim: u64,
    /// `t -> g_k^d(t)` for every supplied value.
    pub image_values: BTreeMap<Rational, Rational>,
    pub constant_modulus: bool,
    pub modulus: Option<Rational>,
}

/// Hypothetical parameters of the embedded code before building anything.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSummary {
    pub harmonic_dim: u64,
    pub n_points: usize,
    pub coherence: Rational,
    pub bound: QuadraticBound<Rational>,
    pub constant_modulus: bool,
}

impl CandidateSummary {
    pub fn meets_bound(&self) -> bool {
        self.bound.is_attained_by(&self.coherence)
    }
}

fn validate(values: &BTreeSet<Rational>, d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter("scan needs d >= 2".into()));
    }
    for v in values {
        if v.abs() > Rational::one() {
            return Err(Error::OutOfDomain {
                value: format_rational(v),
            });
        }
    }
    if values.iter().all(|v| v.abs().is_one()) {
        return Err(Error::EmptyDomain);
    }
    Ok(())
}

fn scan_one(values: &BTreeSet<Rational>, d: u32, k: u32) -> Result<ScanResult> {
    let poly = gegenbauer::<Rational>(d, k)?;
    let image_values: BTreeMap<Rational, Rational> = values
        .iter()
        .map(|t| (t.clone(), poly.evaluate(t)))
        .collect();
    let moduli: BTreeSet<Rational> = image_values
        .iter()
        .filter(|(t, _)| !t.abs().is_one())
        .map(|(_, g)| g.abs())
        .collect();
    let constant_modulus = moduli.len() == 1;
    Ok(ScanResult {
        d,
        k,
        harmonic_dim: harmonic_dimension(d, k)?,
        image_values,
        constant_modulus,
        modulus: if constant_modulus {
            moduli.into_iter().next()
        } else {
            None
        },
    })
}

/// Evaluates `g_k^d` on `values` for every `k` in `ks` and reports whether the
/// modulus is constant over the values other than `+-1`.
pub fn constant_modulus_scan(
    values: &BTreeSet<Rational>,
    d: u32,
    ks: RangeInclusive<u32>,
) -> Result<Vec<ScanResult>> {
    validate(values, d)?;
    ks.map(|k| scan_one(values, d, k)).collect()
}

/// `(dim H_k^d, n_points, max |g_k^d|, quadratic bound)` for a spectrum.
pub fn candidate_parameters(
    values: &BTreeSet<Rational>,
    d: u32,
    k: u32,
    n_points: usize,
) -> Result<CandidateSummary> {
    validate(values, d)?;
    let scan = scan_one(values, d, k)?;
    let coherence = scan
        .image_values
        .iter()
        .filter(|(t, _)| !t.abs().is_one())
        .map(|(_, g)| g.abs())
        .max()
        .ok_or(Error::EmptyDomain)?;
    let dim =
        usize::try_from(scan.harmonic_dim).map_err(|_| Error::Overflow("harmonic dimension"))?;
    Ok(CandidateSummary {
        harmonic_dim: scan.harmonic_dim,
        n_points,
        coherence,
        bound: quadratic_bound(n_points, dim)?,
        constant_modulus: scan.constant_modulus,
    })
}

/// One `p/q` token per line; blank lines and `#` comments are skipped.
pub fn parse_values(text: &str) -> Result<BTreeSet<Rational>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| parse_rational(l).map_err(|m| Error::parse(i + 1, m)))
        .collect()
}

fn fmt_image(map: &BTreeMap<Rational, Rational>) -> String {
    let cells: Vec<String> = map
        .iter()
        .map(|(t, g)| format!("{}: {}", format_rational(t), format_rational(g)))
        .collect();
    format!("{{{}}}", cells.join(", "))
}

impl fmt::Display for ScanResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d: {}", self.d)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "harmonic_dim: {}", self.harmonic_dim)?;
        writeln!(f, "image: {}", fmt_image(&self.image_values))?;
        writeln!(f, "constant_modulus: {}", self.constant_modulus)?;
        match &self.modulus {
            Some(m) => writeln!(f, "modulus: {}", format_rational(m)),
            None => writeln!(f, "modulus: none"),
        }
    }
}

impl Serialize for ScanResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let image: Vec<(String, String)> = self
            .image_values
            .iter()
            .map(|(t, g)| (format_rational(t), format_rational(g)))
            .collect();
        let mut st = s.serialize_struct("ScanResult", 6)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("harmonic_dim", &self.harmonic_dim)?;
        st.serialize_field("image", &OrderedMap(&image))?;
        st.serialize_field("constant_modulus", &self.constant_modulus)?;
        st.serialize_field("modulus", &self.modulus.as_ref().map(format_rational))?;
        st.end()
    }
}

struct OrderedMap<'a>(&'a [(String, String)]);

impl Serialize for OrderedMap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl fmt::Display for CandidateSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ambient_dim: {}", self.harmonic_dim)?;
        writeln!(f, "n_points: {}", self.n_points)?;
        writeln!(f, "coherence: {}", format_rational(&self.coherence))?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "constant_modulus: {}", self.constant_modulus)?;
        writeln!(f, "meets_bound: {}", self.meets_bound())
    }
}

impl Serialize for CandidateSummary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CandidateSummary", 6)?;
        st.serialize_field("ambient_dim", &self.harmonic_dim)?;
        st.serialize_field("n_points", &self.n_points)?;
        st.serialize_field("coherence", &format_rational(&self.coherence))?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("constant_modulus", &self.constant_modulus)?;
        st.serialize_field("meets_bound", &self.meets_bound())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn set(v: &[(i64, i64)]) -> BTreeSet<Rational> {
        v.iter().map(|&(n, d)| r(n, d)).collect()
    }

    #[test]
    fn e8_spectrum_is_equiangular_at_degree_two() {
        let res = constant_modulus_scan(&set(&[(0, 1), (1, 2), (-1, 2)]), 7, 2..=2).unwrap();
        assert_eq!(res.len(), 1);
        assert!(res[0].constant_modulus);
        assert_eq!(res[0].modulus, Some(r(1, 7)));
        assert_eq!(res[0].harmonic_dim, 35);
    }

    #[test]
    fn leech_like_spectrum_is_not() {
        let values = set(&[(0, 1), (1, 4), (-1, 4), (1, 2), (-1, 2)]);
        let res = &constant_modulus_scan(&values, 23, 2..=2).unwrap()[0];
        assert!(!res.constant_modulus);
        assert_eq!(res.modulus, None);
        assert_eq!(res.harmonic_dim, 299);
        let image: BTreeSet<Rational> = res.image_values.values().cloned().collect();
        assert_eq!(image, set(&[(-1, 23), (1, 46), (5, 23)]));
    }

    #[test]
    fn degree_one_keeps_the_value() {
        for d in 2..10 {
            let res = &constant_modulus_scan(&set(&[(3, 5), (-3, 5)]), d, 1..=1).unwrap()[0];
            assert!(res.constant_modulus);
            assert_eq!(res.modulus, Some(r(3, 5)));
        }
    }

    #[test]
    fn antipodal_values_are_ignored() {
        let res = &constant_modulus_scan(&set(&[(-1, 1), (0, 1)]), 7, 2..=2).unwrap()[0];
        assert!(res.constant_modulus);
        assert_eq!(res.modulus, Some(r(1, 7)));
        assert_eq!(res.image_values[&r(-1, 1)], r(1, 1));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            constant_modulus_scan(&set(&[(3, 2)]), 7, 2..=2),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            constant_modulus_scan(&set(&[(1, 1), (-1, 1)]), 7, 2..=2),
            Err(Error::EmptyDomain)
        ));
        assert!(constant_modulus_scan(&set(&[(0, 1)]), 1, 2..=2).is_err());
    }

    #[test]
    fn candidate_for_e8() {
        let c = candidate_parameters(&set(&[(0, 1), (1, 2), (-1, 2)]), 7, 2, 240).unwrap();
        assert_eq!(c.harmonic_dim, 35);
        assert_eq!(c.coherence, r(1, 7));
        assert_eq!(c.bound, QuadraticBound::Exact(r(1, 7)));
        assert!(c.meets_bound());
    }

    #[test]
    fn candidate_for_leech_like_spectrum() {
        let values = set(&[(0, 1), (1, 4), (-1, 4), (1, 2), (-1, 2)]);
        let c = candidate_parameters(&values, 23, 2, 196560).unwrap();
        assert_eq!(c.harmonic_dim, 299);
        assert_eq!(c.coherence, r(5, 23));
        assert!(!c.constant_modulus);
        // (n/dim - 2)/(n - 2) = (n - 2 dim) / (dim (n - 2))
        let radicand = r(196560 - 2 * 299, 299 * 196558);
        assert_eq!(c.bound.radicand(), radicand);
        assert!(c.bound.exact().is_none());
        assert!(!c.meets_bound());
        assert!(candidate_parameters(&values, 23, 2, 7).is_err());
    }

    #[test]
    fn orthogonal_spectrum_candidate() {
        for d in 2..12u32 {
            let c = candidate_parameters(&set(&[(0, 1)]), d, 2, 2 * d as usize).unwrap();
            assert_eq!(c.coherence, r(1, d as i64));
        }
    }

    #[test]
    fn values_file() {
        let v = parse_values("0\n1/2\n# comment\n\n-1/2\n").unwrap();
        assert_eq!(v, set(&[(0, 1), (1, 2), (-1, 2)]));
        assert!(matches!(
            parse_values("1/2\nabc\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rendering() {
        let res = &constant_modulus_scan(&set(&[(0, 1), (1, 2), (-1, 2)]), 7, 2..=2).unwrap()[0];
        let text = res.to_string();
        assert!(text.contains("image: {-1/2: 1/7, 0/1: -1/7, 1/2: 1/7}\n"));
        assert!(text.contains("modulus: 1/7\n"));
        let json = serde_json::to_string(res).unwrap();
        assert!(json.contains(r#""image":{"-1/2":"1/7","0/1":"-1/7","1/2":"1/7"}"#));
    }

    proptest! {
        #[test]
        fn agrees_with_direct_evaluation(
            d in 2u32..16, k in 0u32..7,
            raw in proptest::collection::btree_set((-20i64..=20, 1i64..=20), 1..6),
        ) {
            let values: BTreeSet<Rational> = raw
                .into_iter()
                .map(|(n, den)| r(n, den))
                .filter(|v| v.abs() < Rational::one())
                .collect();
            prop_assume!(!values.is_empty());
            let res = &constant_modulus_scan(&values, d, k..=k).unwrap()[0];
            let poly = gegenbauer::<Rational>(d, k).unwrap();
            for (t, g) in &res.image_values {
                prop_assert_eq!(g, &poly.evaluate(t));
            }
        }

        #[test]
        fn odd_degree_depends_on_absolute_values(
            d in 2u32..16, k in prop::sample::select(vec![1u32, 3, 5]),
            raw in proptest::collection::btree_set((0i64..20, 1i64..=20), 1..5),
        ) {
            let pos: BTreeSet<Rational> = raw
                .into_iter()
                .map(|(n, den)| r(n, den))
                .filter(|v| *v < Rational::one())
                .collect();
            prop_assume!(!pos.is_empty());
            let sym: BTreeSet<Rational> = pos.iter().flat_map(|v| [v.clone(), -v.clone()]).collect();
            let a = &constant_modulus_scan(&pos, d, k..=k).unwrap()[0];
            let b = &constant_modulus_scan(&sym, d, k..=k).unwrap()[0];
            prop_assert_eq!(a.constant_modulus, b.constant_modulus);
            prop_assert_eq!(&a.modulus, &b.modulus);
        }
    }
}
