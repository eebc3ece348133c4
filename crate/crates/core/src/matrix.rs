//! Dense exact matrices over a [`RingSpec`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    ring: RingSpec,
}

impl Mat {
    /// Build a matrix from row-major entries, checking every entry against the ring.
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>, ring: RingSpec) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims(
                "Mat::new",
                format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            ));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(Mat {
            rows,
            cols,
            entries,
            ring,
        })
    }

    pub fn zeros(rows: usize, cols: usize, ring: RingSpec) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
            ring,
        }
    }

    pub fn identity(n: usize, ring: RingSpec) -> Self {
        let mut m = Mat::zeros(n, n, ring);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Convenience constructor from integer rows.
    pub fn from_i64_rows(rows: &[Vec<i64>], ring: RingSpec) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("Mat::from_i64_rows", "ragged rows"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| Scalar::from_integer(v.into()))
            .collect();
        Mat::new(r, c, entries, ring)
    }

    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize, ring: RingSpec) -> Result<Self> {
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::dims("Mat::from_rows", "ragged rows"));
        }
        Mat::new(rows.len(), cols, rows.concat(), ring)
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize, ring: RingSpec) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dims("Mat::from_columns", "column length"));
        }
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Mat::new(rows, cols, entries, ring)
    }

    pub fn column_vector(v: Vec<Scalar>, ring: RingSpec) -> Result<Self> {
        let n = v.len();
        Mat::new(n, 1, v, ring)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Same entries, viewed over a larger ring.
    pub fn with_ring(&self, ring: RingSpec) -> Result<Self> {
        Mat::new(self.rows, self.cols, self.entries.clone(), ring)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows, self.ring.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &Mat, op: &'static str) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                op,
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other, "mat_mul")?;
        if self.cols != other.rows {
            return Err(Error::dims(
                "mat_mul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.ring.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Mat, op: &'static str, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Mat> {
        self.same_ring(other, op)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims(op, "shapes differ"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries,
            ring: self.ring.clone(),
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, "mat_add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip(other, "mat_sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
            ring: self.ring.clone(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other, "hstack")?;
        if self.rows != other.rows {
            return Err(Error::dims("hstack", "row counts differ"));
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols + other.cols,
            entries,
            ring: self.ring.clone(),
        })
    }

    /// `self` stacked above `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other, "vstack")?;
        if self.cols != other.cols {
            return Err(Error::dims("vstack", "column counts differ"));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            ring: self.ring.clone(),
        })
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Mat {
        Mat {
            rows: end - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..end * self.cols].to_vec(),
            ring: self.ring.clone(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut entries = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                entries.push(self[(i, j)].clone());
            }
        }
        Mat {
            rows: self.rows,
            cols: idx.len(),
            entries,
            ring: self.ring.clone(),
        }
    }

    /// Apply to a plain vector (length = cols).
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Scalar::zero(), |acc, v| acc + v)
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
