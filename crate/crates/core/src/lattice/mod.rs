//! Equinorm integer point sets, the E8 root system, and inner-product spectra.
//!
//! A [`LatticeCode`] stores integer vectors `s * x` for unit-sphere points `x`
//! that all share one squared norm, so normalized inner products
//! `(p . q) / |p|^2` are rational and no square roots ever appear.

mod e8;
mod spectrum;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{Read, Write};

pub use e8::generate_e8_roots;
pub use spectrum::{spectrum, Spectrum};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCode {
    ambient_dim: usize,
    scale: u64,
    points: Vec<Vec<i64>>,
    norm_sq_scaled: u64,
}

impl LatticeCode {
    /// Validates shape, equinorm and distinctness; the common squared norm is
    /// taken from the first point.
    pub fn new(ambient_dim: usize, scale: u64, points: Vec<Vec<i64>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidParameter(
                "ambient dimension must be positive".into(),
            ));
        }
        if scale == 0 {
            return Err(Error::InvalidParameter("scale must be positive".into()));
        }
        let mut norm_sq_scaled = None;
        let mut seen = HashSet::with_capacity(points.len());
        for (index, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    left: ambient_dim,
                    right: p.len(),
                });
            }
            let norm = squared_norm(p)?;
            match norm_sq_scaled {
                None if norm == 0 => {
                    return Err(Error::InvalidParameter(
                        "zero vector is not a sphere point".into(),
                    ))
                }
                None => norm_sq_scaled = Some(norm),
                Some(expected) if expected != norm => {
                    return Err(Error::NotEquinorm {
                        index,
                        found: norm,
                        expected,
                    })
                }
                Some(_) => {}
            }
            if !seen.insert(p.as_slice()) {
                return Err(Error::DuplicatePoint { index });
            }
        }
        let norm_sq_scaled =
            norm_sq_scaled.ok_or_else(|| Error::InvalidParameter("code has no points".into()))?;
        Ok(Self {
            ambient_dim,
            scale,
            points,
            norm_sq_scaled,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension `d` of the sphere `S^d` the points live on.
    pub fn sphere_dim(&self) -> usize {
        self.ambient_dim - 1
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn norm_sq_scaled(&self) -> u64 {
        self.norm_sq_scaled
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Result<&[i64]> {
        self.points
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.points.len(),
            })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scaled_inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.points[i], &self.points[j])
    }

    pub fn normalized_inner(&self, i: usize, j: usize) -> Rational {
        Rational::new(
            self.scaled_inner(i, j).into(),
            (self.norm_sq_scaled as i64).into(),
        )
    }

    /// Whether `-p` is present for every point `p`.
    pub fn is_antipodal(&self) -> bool {
        self.first_unpaired().is_none()
    }

    fn first_unpaired(&self) -> Option<usize> {
        let set: HashSet<&[i64]> = self.points.iter().map(Vec::as_slice).collect();
        self.points
            .iter()
            .position(|p| !set.contains(negate(p).as_slice()))
    }

    /// Line-oriented text form: header `ambient_dim N scale norm_sq_scaled`,
    /// then one row of integers per point.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * self.ambient_dim * 3 + 32);
        let _ = writeln!(
            out,
            "{} {} {} {}",
            self.ambient_dim,
            self.points.len(),
            self.scale,
            self.norm_sq_scaled
        );
        for p in &self.points {
            let row: Vec<String> = p.iter().map(i64::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_text<R: Read>(mut r: R) -> Result<Self> {
        let mut s = String::new();
        r.read_to_string(&mut s)?;
        Self::parse_text(&s)
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let header: Vec<u64> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::parse(1, format!("bad header token {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [ambient_dim, n, scale, norm_sq] = header[..] else {
            return Err(Error::parse(
                1,
                "header needs 4 fields: ambient_dim N scale norm_sq_scaled",
            ));
        };
        let ambient_dim = ambient_dim as usize;
        let mut points = Vec::with_capacity(n as usize);
        for (idx, line) in lines {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(idx + 1, format!("bad coordinate {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != ambient_dim {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {ambient_dim} coordinates, found {}", row.len()),
                ));
            }
            points.push(row);
        }
        if points.len() as u64 != n {
            return Err(Error::parse(
                1,
                format!("header declares {n} points, file has {}", points.len()),
            ));
        }
        let code = Self::new(ambient_dim, scale, points)?;
        if code.norm_sq_scaled != norm_sq {
            return Err(Error::parse(
                1,
                format!(
                    "header declares squared norm {norm_sq}, points have {}",
                    code.norm_sq_scaled
                ),
            ));
        }
        Ok(code)
    }
}

/// Keeps one point of every antipodal pair `{p, -p}`: the lexicographically
/// larger one. Input order is preserved among the kept points.
pub fn select_antipodal_representatives(code: &LatticeCode) -> Result<LatticeCode> {
    if let Some(index) = code.first_unpaired() {
        return Err(Error::NotAntipodal { index });
    }
    let points: Vec<Vec<i64>> = code
        .points
        .iter()
        .filter(|p| **p > negate(p))
        .cloned()
        .collect();
    Ok(LatticeCode {
        ambient_dim: code.ambient_dim,
        scale: code.scale,
        points,
        norm_sq_scaled: code.norm_sq_scaled,
    })
}

pub(crate) fn negate(p: &[i64]) -> Vec<i64> {
    p.iter().map(|&c| -c).collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn squared_norm(p: &[i64]) -> Result<u64> {
    p.iter().try_fold(0u64, |acc, &c| {
        let sq = (c.unsigned_abs()).checked_mul(c.unsigned_abs());
        sq.and_then(|sq| acc.checked_add(sq))
            .ok_or(Error::Overflow("squared norm"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_pair_keeps_larger_point() {
        let code = LatticeCode::new(2, 1, vec![vec![1, 0], vec![-1, 0]]).unwrap();
        let reps = select_antipodal_representatives(&code).unwrap();
        assert_eq!(reps.points(), &[vec![1, 0]]);
    }

    #[test]
    fn missing_negation_is_reported() {
        let code = LatticeCode::new(2, 1, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            select_antipodal_representatives(&code),
            Err(Error::NotAntipodal { index: 2 })
        ));
    }

    #[test]
    fn rejects_unequal_norms_and_duplicates() {
        assert!(matches!(
            LatticeCode::new(2, 1, vec![vec![1, 0], vec![1, 1]]),
            Err(Error::NotEquinorm {
                index: 1,
                found: 2,
                expected: 1
            })
        ));
        assert!(matches!(
            LatticeCode::new(2, 1, vec![vec![1, 0], vec![1, 0]]),
            Err(Error::DuplicatePoint { index: 1 })
        ));
        assert!(LatticeCode::new(2, 1, vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let code = generate_e8_roots();
        let text = code.to_text();
        assert!(text.starts_with("8 240 2 8\n"));
        let back = LatticeCode::parse_text(&text).unwrap();
        assert_eq!(back, code);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert!(matches!(
            LatticeCode::parse_text(""),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            LatticeCode::parse_text("2 2 1 1\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            LatticeCode::parse_text("2 1 1 4\n1 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            LatticeCode::parse_text("2 1 1 1\n1 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    fn arb_half_code() -> impl Strategy<Value = Vec<Vec<i64>>> {
        // Signed permutations of a fixed vector are equinorm.
        (2usize..5)
            .prop_flat_map(|dim| {
                proptest::collection::vec(
                    (
                        Just(dim),
                        Just((0..dim).collect::<Vec<_>>()).prop_shuffle(),
                        0u32..(1 << dim),
                    ),
                    1..12,
                )
            })
            .prop_map(|items| {
                items
                    .into_iter()
                    .map(|(dim, perm, signs)| {
                        let base: Vec<i64> = (1..=dim as i64).collect();
                        let mut v = vec![0; dim];
                        for (slot, &src) in perm.iter().enumerate() {
                            v[slot] = if signs & (1 << slot) == 0 {
                                base[src]
                            } else {
                                -base[src]
                            };
                        }
                        v
                    })
                    .collect()
            })
    }

    proptest! {
        #[test]
        fn representatives_are_idempotent(points in arb_half_code()) {
            let dim = points[0].len();
            let mut full: Vec<Vec<i64>> = Vec::new();
            for p in points {
                for q in [p.clone(), negate(&p)] {
                    if !full.contains(&q) {
                        full.push(q);
                    }
                }
            }
            let code = LatticeCode::new(dim, 1, full).unwrap();
            let reps = select_antipodal_representatives(&code).unwrap();
            prop_assert_eq!(reps.len() * 2, code.len());

            let mut doubled = reps.points().to_vec();
            doubled.extend(reps.points().iter().map(|p| negate(p)));
            let again = select_antipodal_representatives(
                &LatticeCode::new(dim, 1, doubled).unwrap()
            ).unwrap();
            let mut a = again.points().to_vec();
            let mut b = reps.points().to_vec();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}
