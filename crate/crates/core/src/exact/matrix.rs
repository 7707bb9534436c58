use super::Scalar;
use crate::error::{Error, Result};

/// Dense symmetric `n x n` matrix stored as a full row-major square.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![T::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_upper_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: Vec<T>) -> Self {
        let order = values.len();
        let mut m = Self::zeros(order);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * order + i] = v;
        }
        m
    }

    /// Builds the matrix from its upper triangle; `f` is called once per
    /// `(i, j)` with `i <= j` and mirrored below the diagonal.
    pub fn from_upper_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = vec![T::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                if i != j {
                    entries[j * order + i] = v.clone();
                }
                entries[i * order + j] = v;
            }
        }
        Self { order, entries }
    }

    /// Validates symmetry of an explicit square.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::DimensionMismatch {
                    left: order,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if entries[i * order + j] != entries[j * order + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

/// `sum_{i,j} a[i][j] * b[i][j]`.
pub fn frobenius_inner<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<T> {
    if a.order != b.order {
        return Err(Error::DimensionMismatch {
            left: a.order,
            right: b.order,
        });
    }
    Ok(T::dot(&a.entries, &b.entries))
}
