//! Certification of antipodal spherical codes from their Gram matrices.
//!
//! For an antipodal set of `N` unit vectors in `R^dim`,
//! `sum_{i,j} (y_i . y_j)^2 >= N^2 / dim`. Removing the `N` diagonal terms
//! and the `N` antipodal terms (all equal to 1) leaves `N (N - 2)` ordered
//! pairs whose squares average at least `(N / dim - 2) / (N - 2)`, which is
//! the square of the smallest coherence any such code can have. A code whose
//! coherence equals that value is optimal.

use std::fmt;

use serde::Serialize;

use crate::embedding::EmbeddedCode;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational, Scalar};
use crate::harmonics::gegenbauer;
use crate::lattice::{LatticeCode, Spectrum};

/// Default highest moment checked by [`certify`].
pub const DEFAULT_DESIGN_T_MAX: u32 = 5;

/// Gram matrix of a unit-vector code, optionally with its antipodal pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct GramView<T> {
    n: usize,
    entries: Vec<T>,
    antipode: Option<Vec<usize>>,
}

fn same<T: Scalar>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).is_negligible()
}

impl<T: Scalar> GramView<T> {
    /// Checks symmetry, unit diagonal, and that `antipode` is a fixed-point-free
    /// involution with `-1` entries on its pairs.
    pub fn new(rows: Vec<Vec<T>>, antipode: Option<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        let g = Self {
            n,
            entries,
            antipode: None,
        };
        for i in 0..n {
            if !same(g.get(i, i), &T::one()) {
                return Err(Error::NonUnitDiagonal { index: i });
            }
            for j in (i + 1)..n {
                if !same(g.get(i, j), g.get(j, i)) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        if let Some(pairs) = &antipode {
            if pairs.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: pairs.len(),
                });
            }
            for (i, &j) in pairs.iter().enumerate() {
                let valid = j < n && j != i && pairs[j] == i && same(g.get(i, j), &-T::one());
                if !valid {
                    return Err(Error::NotAntipodal { index: i });
                }
            }
        }
        Ok(Self { antipode, ..g })
    }

    /// Like [`GramView::new`], pairing each row with its unique `-1` entry
    /// when every row has exactly one.
    pub fn with_detected_antipodes(rows: Vec<Vec<T>>) -> Result<Self> {
        let g = Self::new(rows, None)?;
        let pairing = g.detect_pairing().ok();
        Ok(Self {
            antipode: pairing,
            ..g
        })
    }

    fn detect_pairing(&self) -> std::result::Result<Vec<usize>, usize> {
        let minus_one = -T::one();
        let mut pairs = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut partners = (0..self.n).filter(|&j| j != i && same(self.get(i, j), &minus_one));
            match (partners.next(), partners.next()) {
                (Some(j), None) => pairs.push(j),
                _ => return Err(i),
            }
        }
        match pairs.iter().enumerate().find(|&(i, &j)| pairs[j] != i) {
            Some((i, _)) => Err(i),
            None => Ok(pairs),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn antipode(&self) -> Option<&[usize]> {
        self.antipode.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[T]>::to_vec)
            .collect()
    }

    fn is_antipodal_pair(&self, i: usize, j: usize) -> bool {
        self.antipode.as_ref().is_some_and(|a| a[i] == j)
    }

    fn off_diagonal(&self) -> impl Iterator<Item = &T> {
        (0..self.n)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| self.get(i, j))
    }
}

impl GramView<Rational> {
    /// `N` on the first line, then `N` rows of `p/q` tokens.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.entries.chunks(self.n.max(1)) {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("bad point count {header:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines {
            let row: Vec<Rational> = line
                .split_whitespace()
                .map(|t| parse_rational(t).map_err(|m| Error::parse(idx + 1, m)))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::parse(
                1,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        Self::with_detected_antipodes(rows)
    }
}

/// Gram view of an embedded code, paired through sign-flipped copies.
pub fn gram_from_embedded<T: Scalar>(code: &EmbeddedCode<T>) -> GramView<T> {
    let n = code.len();
    let pairs: Option<Vec<usize>> = (0..n).map(|i| code.antipode_of(i)).collect();
    let entries = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| code.gram(i, j).clone())
        .collect();
    GramView {
        n,
        entries,
        antipode: pairs,
    }
}

/// Exact normalized Gram of a lattice code, pairing `p` with `-p`.
pub fn gram_from_lattice(code: &LatticeCode) -> GramView<Rational> {
    let n = code.len();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| code.normalized_inner(i, j)).collect())
        .collect();
    GramView::with_detected_antipodes(rows).expect("lattice gram is symmetric with unit diagonal")
}

/// Largest `|G_ij|` over distinct, non-antipodal pairs.
pub fn max_coherence<T: Scalar>(g: &GramView<T>) -> Result<T> {
    coherence_over(g, |i, j| !g.is_antipodal_pair(i, j))
}

/// Largest `|G_ij|` over all distinct pairs, antipodal ones included.
pub fn max_coherence_including_antipodes<T: Scalar>(g: &GramView<T>) -> Result<T> {
    coherence_over(g, |_, _| true)
}

fn coherence_over<T: Scalar>(g: &GramView<T>, admit: impl Fn(usize, usize) -> bool) -> Result<T> {
    let mut best: Option<T> = None;
    for i in 0..g.n {
        for j in (i + 1)..g.n {
            if !admit(i, j) {
                continue;
            }
            let v = g.get(i, j).abs();
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best.ok_or(Error::EmptyDomain)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrameCheck<T> {
    /// `sum_{i,j} G_ij^2` over all ordered pairs, diagonal included.
    pub frame_sum: T,
    /// `N^2 / dim`.
    pub frame_bound: T,
    pub satisfied: bool,
}

impl<T: Scalar> FrameCheck<T> {
    /// Equality in the frame inequality.
    pub fn is_tight(&self) -> bool {
        same(&self.frame_sum, &self.frame_bound)
    }
}

pub fn frame_bound_check<T: Scalar>(g: &GramView<T>, dim: usize) -> Result<FrameCheck<T>> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let frame_sum = g
        .entries
        .iter()
        .fold(T::zero(), |acc, v| acc + v.clone() * v.clone());
    let n = T::from_int(g.n as i64);
    let frame_bound = n.clone() * n / T::from_int(dim as i64);
    let satisfied = frame_sum >= frame_bound || same(&frame_sum, &frame_bound);
    Ok(FrameCheck {
        frame_sum,
        frame_bound,
        satisfied,
    })
}

/// Smallest achievable coherence of an antipodal code of `n` points in `R^dim`,
/// either as an exact value or, when the square root is not representable,
/// as its radicand.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadraticBound<T> {
    Exact(T),
    Radicand(T),
}

impl<T: Scalar> QuadraticBound<T> {
    pub fn exact(&self) -> Option<&T> {
        match self {
            QuadraticBound::Exact(v) => Some(v),
            QuadraticBound::Radicand(_) => None,
        }
    }

    pub fn radicand(&self) -> T {
        match self {
            QuadraticBound::Exact(v) => v.clone() * v.clone(),
            QuadraticBound::Radicand(r) => r.clone(),
        }
    }

    /// Whether a nonnegative coherence respects the bound.
    pub fn is_met_by(&self, coherence: &T) -> bool {
        let sq = coherence.clone() * coherence.clone();
        let radicand = self.radicand();
        sq >= radicand || same(&sq, &radicand)
    }

    /// Whether a coherence equals the bound.
    pub fn is_attained_by(&self, coherence: &T) -> bool {
        match self {
            QuadraticBound::Exact(v) => same(v, coherence),
            QuadraticBound::Radicand(_) => false,
        }
    }
}

impl fmt::Display for QuadraticBound<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticBound::Exact(v) => f.write_str(&format_rational(v)),
            QuadraticBound::Radicand(r) => write!(f, "sqrt({})", format_rational(r)),
        }
    }
}

impl Serialize for QuadraticBound<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `a_min` with `a_min^2 = max(0, (n / dim - 2) / (n - 2))`.
pub fn quadratic_bound<T: Scalar>(n: usize, dim: usize) -> Result<QuadraticBound<T>> {
    if n % 2 == 1 {
        return Err(Error::OddPointCount(n));
    }
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "bound needs at least 4 points, got {n}"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let (n, dim) = (n as i64, dim as i64);
    let radicand = (T::from_ratio(n, dim) - T::from_int(2)) / T::from_int(n - 2);
    let radicand = if radicand < T::zero() {
        T::zero()
    } else {
        radicand
    };
    Ok(match radicand.exact_sqrt() {
        Some(root) => QuadraticBound::Exact(root),
        None => QuadraticBound::Radicand(radicand),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignStrength<T> {
    /// Largest `t` such that every moment `1..=t` vanishes.
    pub strength: u32,
    /// `sum_{i,j} g_k(G_ij)` for `k = 1..=t_max`.
    pub residuals: Vec<T>,
}

/// Design strength via vanishing Gegenbauer moment sums, up to `t_max`.
pub fn design_strength<T: Scalar>(
    g: &GramView<T>,
    d_sphere: u32,
    t_max: u32,
) -> Result<DesignStrength<T>> {
    if t_max == 0 {
        return Err(Error::InvalidParameter("t_max must be >= 1".into()));
    }
    // Power sums S_p = sum_{i,j} G_ij^p; each moment is a fixed combination.
    let mut power_sums = vec![T::zero(); t_max as usize + 1];
    for v in &g.entries {
        let mut pow = T::one();
        for s in power_sums.iter_mut() {
            *s += pow.clone();
            pow *= v.clone();
        }
    }
    let residuals: Vec<T> = (1..=t_max)
        .map(|k| {
            let poly = gegenbauer::<T>(d_sphere, k)?;
            Ok(poly
                .coeffs()
                .iter()
                .zip(&power_sums)
                .fold(T::zero(), |acc, (c, s)| acc + c.clone() * s.clone()))
        })
        .collect::<Result<_>>()?;
    let strength = residuals
        .iter()
        .position(|r| !r.is_negligible())
        .unwrap_or(residuals.len()) as u32;
    Ok(DesignStrength {
        strength,
        residuals,
    })
}

/// Certified parameters of an antipodal code.
///
/// Serializes with the keys `ambient_dim, n_points, coherence, spectrum,
/// bound, frame_sum, frame_bound, design_strength, optimal_antipodal`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeReport {
    pub ambient_dim: usize,
    pub n_points: usize,
    #[serde(rename = "coherence", serialize_with = "ser_rational")]
    pub coherence_a: Rational,
    pub spectrum: Spectrum,
    #[serde(rename = "bound")]
    pub lower_bound_a: QuadraticBound<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub frame_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub frame_bound: Rational,
    pub design_strength: u32,
    pub optimal_antipodal: bool,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

impl CodeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn frame_satisfied(&self) -> bool {
        self.frame_sum >= self.frame_bound
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ambient_dim: {}", self.ambient_dim)?;
        writeln!(f, "n_points: {}", self.n_points)?;
        writeln!(f, "coherence: {}", format_rational(&self.coherence_a))?;
        writeln!(f, "spectrum: {}", self.spectrum)?;
        writeln!(f, "bound: {}", self.lower_bound_a)?;
        writeln!(f, "frame_sum: {}", format_rational(&self.frame_sum))?;
        writeln!(f, "frame_bound: {}", format_rational(&self.frame_bound))?;
        writeln!(f, "design_strength: {}", self.design_strength)?;
        writeln!(f, "optimal_antipodal: {}", self.optimal_antipodal)
    }
}

/// Certifies an embedded code in its harmonic space.
pub fn certify(code: &EmbeddedCode<Rational>) -> Result<CodeReport> {
    certify_with(code, DEFAULT_DESIGN_T_MAX)
}

pub fn certify_with(code: &EmbeddedCode<Rational>, t_max: u32) -> Result<CodeReport> {
    certify_gram(
        &gram_from_embedded(code),
        code.ambient_harmonic_dim(),
        t_max,
    )
}

/// Certifies an antipodal code in `R^dim` given only its Gram matrix.
pub fn certify_gram(g: &GramView<Rational>, dim: usize, t_max: u32) -> Result<CodeReport> {
    if g.antipode.is_none() {
        let index = g.detect_pairing().err().unwrap_or(0);
        return Err(Error::NotAntipodal { index });
    }
    if dim < 2 {
        return Err(Error::InvalidParameter(
            "certification needs dim >= 2".into(),
        ));
    }
    let bound = quadratic_bound::<Rational>(g.n, dim)?;
    let coherence = max_coherence(g)?;
    let frame = frame_bound_check(g, dim)?;
    let design = design_strength(g, dim as u32 - 1, t_max)?;
    Ok(CodeReport {
        ambient_dim: dim,
        n_points: g.n,
        optimal_antipodal: bound.is_attained_by(&coherence),
        coherence_a: coherence,
        spectrum: Spectrum::from_values(g.off_diagonal()),
        lower_bound_a: bound,
        frame_sum: frame.frame_sum,
        frame_bound: frame.frame_bound,
        design_strength: design.strength,
    })
}
