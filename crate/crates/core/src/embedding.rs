//! Degree-2 reproducing-kernel embedding in the traceless-symmetric-matrix model.
//!
//! A unit vector `x` in `R^{d+1}` maps to `M_x = x x^T - I / (d + 1)`. The
//! Frobenius product satisfies
//! `<M_x, M_y> / <M_x, M_x> = ((x.y)^2 - 1/(d+1)) / (1 - 1/(d+1)) = g_2^d(x.y)`,
//! so these matrices reproduce the Gram matrix of the normalized kernel
//! elements of the degree-2 harmonic space, which has dimension
//! `(d+1)(d+2)/2 - 1`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{frobenius_inner, Scalar, SymMatrix};
use crate::harmonics::harmonic_dimension;
use crate::lattice::{select_antipodal_representatives, LatticeCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn apply<T: Scalar>(self, v: T) -> T {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `sign * M_x`, with `source_index` pointing back at the originating code point.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedPoint<T> {
    pub matrix: SymMatrix<T>,
    pub source_index: Option<usize>,
    pub sign: Sign,
}

impl<T: Scalar> EmbeddedPoint<T> {
    pub fn negated(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            source_index: self.source_index,
            sign: self.sign.flip(),
        }
    }
}

/// Traceless symmetric matrix `x x^T / |x|^2 - I / (d + 1)` for point `index`.
pub fn embed_degree2<T: Scalar>(code: &LatticeCode, index: usize) -> Result<EmbeddedPoint<T>> {
    let x = code.point(index)?;
    let n = code.ambient_dim();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "embedding needs ambient dimension >= 2".into(),
        ));
    }
    let norm = code.norm_sq_scaled() as i64;
    let n_i = n as i64;
    let matrix = SymMatrix::from_upper_fn(n, |i, j| {
        // (x_i x_j (d+1) - delta_ij |x|^2) / (|x|^2 (d+1))
        let mut num = x[i] * x[j] * n_i;
        if i == j {
            num -= norm;
        }
        T::from_ratio(num, norm * n_i)
    });
    Ok(EmbeddedPoint {
        matrix,
        source_index: Some(index),
        sign: Sign::Plus,
    })
}

/// `sign_a sign_b <M_a, M_b> / <M_a, M_a>`.
pub fn normalized_inner<T: Scalar>(a: &EmbeddedPoint<T>, b: &EmbeddedPoint<T>) -> Result<T> {
    let cross = frobenius_inner(&a.matrix, &b.matrix)?;
    let self_norm = frobenius_inner(&a.matrix, &a.matrix)?;
    if self_norm.is_zero() {
        return Err(Error::InvalidParameter("zero embedded matrix".into()));
    }
    Ok(a.sign.times(b.sign).apply(cross / self_norm))
}

/// A signed set of embedded points with its cached normalized Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedCode<T> {
    sphere_dim: usize,
    ambient_harmonic_dim: usize,
    points: Vec<EmbeddedPoint<T>>,
    gram: Vec<T>,
}

impl<T: Scalar> EmbeddedCode<T> {
    /// Computes the Gram matrix pair by pair. All matrices must share one
    /// order and one Frobenius norm.
    pub fn from_points(points: Vec<EmbeddedPoint<T>>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyDomain)?;
        let order = first.matrix.order();
        let reference = frobenius_inner(&first.matrix, &first.matrix)?;
        for (index, p) in points.iter().enumerate() {
            let norm = frobenius_inner(&p.matrix, &p.matrix)?;
            if !(norm.clone() - reference.clone()).is_negligible() {
                return Err(Error::InvalidParameter(format!(
                    "embedded point {index} is not equinorm with point 0"
                )));
            }
        }
        let n = points.len();
        let upper: Vec<Vec<T>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i..n)
                    .map(|j| normalized_inner(&points[i], &points[j]))
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<_>>()?;
        let gram = mirror(n, &upper);
        Self::assemble(order - 1, points, gram)
    }

    fn assemble(sphere_dim: usize, points: Vec<EmbeddedPoint<T>>, gram: Vec<T>) -> Result<Self> {
        let ambient_harmonic_dim = harmonic_dimension(sphere_dim as u32, 2)? as usize;
        Ok(Self {
            sphere_dim,
            ambient_harmonic_dim,
            points,
            gram,
        })
    }

    /// `d` of the source sphere `S^d`.
    pub fn sphere_dim(&self) -> usize {
        self.sphere_dim
    }

    /// Dimension of the harmonic space the code lives in.
    pub fn ambient_harmonic_dim(&self) -> usize {
        self.ambient_harmonic_dim
    }

    pub fn points(&self) -> &[EmbeddedPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn gram(&self, i: usize, j: usize) -> &T {
        &self.gram[i * self.points.len() + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<T>> {
        let n = self.points.len();
        self.gram.chunks(n.max(1)).map(<[T]>::to_vec).collect()
    }

    /// Same code with point `index` removed.
    pub fn without_point(&self, index: usize) -> Result<Self> {
        let n = self.points.len();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let mut points = self.points.clone();
        points.remove(index);
        let gram = (0..n)
            .filter(|&i| i != index)
            .flat_map(|i| (0..n).filter(|&j| j != index).map(move |j| (i, j)))
            .map(|(i, j)| self.gram(i, j).clone())
            .collect();
        Self::assemble(self.sphere_dim, points, gram)
    }

    /// Index of the sign-flipped copy of point `i`, when present.
    pub fn antipode_of(&self, i: usize) -> Option<usize> {
        let p = &self.points[i];
        p.source_index?;
        self.points
            .iter()
            .position(|q| q.source_index == p.source_index && q.sign != p.sign)
    }
}

fn mirror<T: Scalar>(n: usize, upper: &[Vec<T>]) -> Vec<T> {
    let mut gram = vec![T::zero(); n * n];
    for (i, row) in upper.iter().enumerate() {
        for (off, v) in row.iter().enumerate() {
            let j = i + off;
            gram[i * n + j] = v.clone();
            gram[j * n + i] = v.clone();
        }
    }
    gram
}

/// Embeds one representative of every antipodal pair of `roots` and appends
/// the sign-flipped copies: points `0..m` are `+G_{x_i}` and `m..2m` are
/// `-G_{x_i}`.
pub fn build_code<T: Scalar>(roots: &LatticeCode) -> Result<EmbeddedCode<T>> {
    let reps = select_antipodal_representatives(roots)?;
    let source: Vec<usize> = reps
        .points()
        .iter()
        .map(|p| {
            roots
                .points()
                .iter()
                .position(|q| q == p)
                .expect("representative comes from the input")
        })
        .collect();
    let m = reps.len();
    let base: Vec<EmbeddedPoint<T>> = (0..m)
        .map(|i| {
            let mut p = embed_degree2(&reps, i)?;
            p.source_index = Some(source[i]);
            Ok(p)
        })
        .collect::<Result<_>>()?;

    // Gram of the representatives; signs are applied when expanding.
    let upper: Vec<Vec<T>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i..m)
                .map(|j| normalized_inner(&base[i], &base[j]))
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    let base_gram = mirror(m, &upper);

    let n = 2 * m;
    let sign = |a: usize| if a < m { Sign::Plus } else { Sign::Minus };
    let gram: Vec<T> = (0..n * n)
        .map(|idx| {
            let (a, b) = (idx / n, idx % n);
            let v = base_gram[(a % m) * m + b % m].clone();
            sign(a).times(sign(b)).apply(v)
        })
        .collect();

    let mut points = base.clone();
    points.extend(base.iter().map(EmbeddedPoint::negated));
    EmbeddedCode::assemble(roots.sphere_dim(), points, gram)
}

/// Coordinates of `sign * M / |M|` in the orthonormal basis of traceless
/// symmetric matrices: `(E_ij + E_ji) / sqrt(2)` for `i < j`, then the diagonal
/// chain `diag(1, .., 1, -m, 0, ..) / sqrt(m (m + 1))` for `m = 1 .. n - 1`.
pub fn flatten_coordinates<T: Scalar>(p: &EmbeddedPoint<T>) -> Vec<f64> {
    let n = p.matrix.order();
    let m = |i: usize, j: usize| p.matrix.get(i, j).to_f64();
    let mut coords = Vec::with_capacity(n * (n + 1) / 2 - 1);
    for i in 0..n {
        for j in (i + 1)..n {
            coords.push(std::f64::consts::SQRT_2 * m(i, j));
        }
    }
    let mut prefix = 0.0;
    for k in 1..n {
        prefix += m(k - 1, k - 1);
        let kf = k as f64;
        coords.push((prefix - kf * m(k, k)) / (kf * (kf + 1.0)).sqrt());
    }
    let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
    let factor = match p.sign {
        Sign::Plus => 1.0 / norm,
        Sign::Minus => -1.0 / norm,
    };
    coords.iter().map(|c| c * factor).collect()
}

/// Float export: header `dim N float`, then one row of 17-significant-digit
/// coordinates per point.
pub fn float_export<T: Scalar>(code: &EmbeddedCode<T>) -> String {
    let rows: Vec<Vec<f64>> = code.points.iter().map(flatten_coordinates).collect();
    let dim = rows.first().map_or(code.ambient_harmonic_dim, Vec::len);
    let mut out = format!("{} {} float\n", dim, rows.len());
    for row in rows {
        // adding 0.0 folds -0.0 into 0.0
        let cells: Vec<String> = row.iter().map(|c| format!("{:.16e}", c + 0.0)).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
