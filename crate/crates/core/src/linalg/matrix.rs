use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigInt, Integer, One, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use super::LinalgError;

/// Dense row-major matrix of rationals.
///
/// Square matrices derived from graphs carry vertex labels, shared by rows
/// and columns. Column vectors such as the all-ones `j` are `n x 1`
/// matrices; most APIs take plain `&[Rational]` slices for vectors instead.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
    labels: Option<Vec<String>>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
            labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// `J = j jᵀ`, the all-ones square matrix.
    pub fn ones(n: usize) -> Self {
        RMatrix {
            rows: n,
            cols: n,
            data: vec![Rational::one(); n * n],
            labels: None,
        }
    }

    /// The all-ones column vector as an `n x 1` matrix.
    pub fn ones_column(n: usize) -> Self {
        Self::column(&vec![Rational::one(); n])
    }

    pub fn column(v: &[Rational]) -> Self {
        RMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
            labels: None,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(LinalgError::Ragged {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            labels: None,
        })
    }

    /// Convenience constructor from small integers, mainly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::rational::int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix {
            rows,
            cols,
            data,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LinalgError> {
        if !self.is_square() || labels.len() != self.rows {
            return Err(LinalgError::LabelCount {
                order: self.rows,
                labels: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let c = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / c, k % c, x))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone());
        t.labels = self.labels.clone();
        t
    }

    pub fn matmul(&self, other: &RMatrix) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        // Integer products with one reduction per entry: row i of `self` is
        // scaled by the lcm of its denominators, column j of `other` likewise.
        let lcm_of = |it: &mut dyn Iterator<Item = &Rational>| {
            it.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        };
        let row_scale: Vec<BigInt> = (0..self.rows)
            .map(|i| lcm_of(&mut self.row(i).iter()))
            .collect();
        let col_scale: Vec<BigInt> = (0..other.cols)
            .map(|j| lcm_of(&mut (0..other.rows).map(|k| &other[(k, j)])))
            .collect();
        let left: Vec<BigInt> = (0..self.rows)
            .flat_map(|i| {
                let s = &row_scale[i];
                self.row(i).iter().map(move |x| x.numer() * (s / x.denom()))
            })
            .collect();
        let right: Vec<BigInt> = (0..other.cols)
            .flat_map(|j| {
                let s = &col_scale[j];
                (0..other.rows).map(move |k| {
                    let x = &other[(k, j)];
                    x.numer() * (s / x.denom())
                })
            })
            .collect();
        let inner = self.cols;
        let mut out = Self::from_fn(self.rows, other.cols, |i, j| {
            let a = &left[i * inner..(i + 1) * inner];
            let b = &right[j * inner..(j + 1) * inner];
            let dot: BigInt = a
                .iter()
                .zip(b)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum();
            Rational::new(dot, &row_scale[i] * &col_scale[j])
        });
        out.labels = self.labels.clone().or_else(|| other.labels.clone());
        Ok(out)
    }

    /// `A v` for a column vector `v`.
    pub fn matvec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "matvec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `vᵀ A` for a column vector `v`, returned as a plain vector.
    pub fn vecmat(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if self.rows != v.len() {
            return Err(LinalgError::DimensionMismatch {
                op: "vecmat",
                left: (1, v.len()),
                right: (self.rows, self.cols),
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        Ok(out)
    }

    /// `a bᵀ`.
    pub fn outer_product(a: &[Rational], b: &[Rational]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| &a[i] * &b[j])
    }

    pub fn scalar_mul(&self, s: &Rational) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
            labels: self.labels.clone(),
        }
    }

    fn zip_with(
        &self,
        other: &RMatrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
            labels: self.labels.clone().or_else(|| other.labels.clone()),
        })
    }

    pub fn add(&self, other: &RMatrix) -> Result<Self, LinalgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &RMatrix) -> Result<Self, LinalgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// Rows and columns restricted to `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self, LinalgError> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.rows || i >= self.cols) {
            return Err(LinalgError::IndexOutOfRange {
                index: bad,
                order: self.rows.min(self.cols),
            });
        }
        let mut sub = Self::from_fn(indices.len(), indices.len(), |i, j| {
            self[(indices[i], indices[j])].clone()
        });
        sub.labels = self
            .labels
            .as_ref()
            .map(|l| indices.iter().map(|&i| l[i].clone()).collect());
        Ok(sub)
    }

    /// `A(i|j)`: delete row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self[(r, c)].clone());
            }
        }
        RMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
            labels: None,
        }
    }

    /// Entry-wise equality, ignoring labels.
    pub fn entries_eq(&self, other: &RMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Sum of all entries, `jᵀ A j`.
    pub fn entry_sum(&self) -> Rational {
        self.data.iter().sum()
    }

    /// One row per line, entries comma-separated as canonical rational literals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV format produced by [`RMatrix::to_csv`]. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn from_csv(text: &str) -> Result<Self, LinalgError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| LinalgError::Csv {
                    line: lineno + 1,
                    message: e.to_string(),
                })?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{}", self.rows, self.cols)?;
        if let Some(l) = &self.labels {
            writeln!(f, "  labels: {l:?}")?;
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of rational strings.
impl serde::Serialize for RMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for RMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let rows = raw
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        RMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}
