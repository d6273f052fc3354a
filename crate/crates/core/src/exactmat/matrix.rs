use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::GaussRational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussRational>,
}

impl GaussMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![GaussRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = GaussRational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GaussRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds from `(re, im)` integer pairs. Panics on ragged input; meant for constants.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&(a, b)| GaussRational::from_ints(a, b)).collect())
            .collect();
        Self::from_rows(data).expect("constant matrix must be rectangular")
    }

    pub fn from_real_ints(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&a| GaussRational::from_int(a)).collect())
            .collect();
        Self::from_rows(data).expect("constant matrix must be rectangular")
    }

    pub fn diag(values: &[GaussRational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn diag_ints(values: &[i64]) -> Self {
        let v: Vec<_> = values.iter().map(|&a| GaussRational::from_int(a)).collect();
        Self::diag(&v)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussRational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRational::is_zero)
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn require_square(&self, op: &'static str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare { op, rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out.entries[i * other.cols + j] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &GaussRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&GaussRational::from_int(k))
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(GaussRational::mul_i).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| -a).collect() }
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.require_square("bracket")?;
        self.same_shape(other, "bracket")?;
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `Z* = conj(Z)ᵀ`.
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<GaussRational> {
        let n = self.require_square("trace")?;
        let mut t = GaussRational::zero();
        for i in 0..n {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// Copy of the `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.entries[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.entries.iter().map(GaussRational::to_complex64).collect()
    }
}

impl fmt::Display for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussMatrix {}x{}\n{}", self.rows, self.cols, self)
    }
}
