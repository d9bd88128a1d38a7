//! Dense complex matrices sized for link-level processing.
//!
//! Everything in the receiver chain works on small blocks: channels are
//! `N_rx x N_tx`, pilot/regressor blocks are `N_tx x (T_p + selected)`, and the
//! only matrices ever inverted are `N_tx x N_tx` Gram matrices. A compact
//! row-major store with a Cholesky solve covers all of it without pulling in a
//! LAPACK binding.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex-valued matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Scaled identity `s * I_n`.
    pub fn scaled_identity(n: usize, s: f64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(s, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Single-column matrix from a vector.
    pub fn from_col(v: &[Complex64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Appends one column on the right.
    pub fn push_col(&mut self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "column of length {} appended to matrix with {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.push(v[r]);
        }
        self.cols += 1;
        self.data = data;
        Ok(())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} with {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "product of {}x{} with vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::ZERO; self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for c in 0..self.cols {
                acc += self.get(r, c) * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "elementwise op on {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Gram matrix `self * self^H`, Hermitian by construction.
    pub fn gram(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::ZERO;
                for k in 0..self.cols {
                    acc += self.get(i, k) * self.get(j, k).conj();
                }
                out.set(i, j, acc);
                if i != j {
                    out.set(j, i, acc.conj());
                }
            }
        }
        out
    }

    /// In-place rank-1 accumulation `self += x * y^H`.
    pub fn add_outer(&mut self, x: &[Complex64], y: &[Complex64]) {
        debug_assert_eq!(x.len(), self.rows);
        debug_assert_eq!(y.len(), self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                self.data[r * self.cols + c] += x[r] * y[c].conj();
            }
        }
    }

    /// Quadratic form `x^H * self * x`.
    pub fn quad_form(&self, x: &[Complex64]) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        debug_assert_eq!(x.len(), self.rows);
        let mut acc = Complex64::ZERO;
        for r in 0..self.rows {
            let mut row = Complex64::ZERO;
            for c in 0..self.cols {
                row += self.get(r, c) * x[c];
            }
            acc += x[r].conj() * row;
        }
        acc
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frob_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Symmetrizes in place: `self <- (self + self^H) / 2`.
    pub fn hermitianize(&mut self) {
        debug_assert_eq!(self.rows, self.cols);
        for i in 0..self.rows {
            let d = self.get(i, i);
            self.set(i, i, Complex64::new(d.re, 0.0));
            for j in (i + 1)..self.cols {
                let avg = 0.5 * (self.get(i, j) + self.get(j, i).conj());
                self.set(i, j, avg);
                self.set(j, i, avg.conj());
            }
        }
    }

    /// Cholesky factorization `self = L * L^H` for Hermitian positive definite
    /// input. Only the lower triangle of `self` is read.
    pub fn cholesky(&self) -> Result<Cholesky> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "cholesky of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut diag = self.get(j, j).re;
            for k in 0..j {
                diag -= l.get(j, k).norm_sqr();
            }
            if diag <= 0.0 || !diag.is_finite() {
                return Err(Error::NotPositiveDefinite);
            }
            let djj = diag.sqrt();
            l.set(j, j, Complex64::new(djj, 0.0));
            for i in (j + 1)..n {
                let mut acc = self.get(i, j);
                for k in 0..j {
                    acc -= l.get(i, k) * l.get(j, k).conj();
                }
                l.set(i, j, acc / djj);
            }
        }
        Ok(Cholesky { l })
    }

    /// Explicit inverse of a Hermitian positive definite matrix.
    pub fn hpd_inverse(&self) -> Result<Self> {
        let chol = self.cholesky()?;
        let mut inv = chol.solve_mat(&Self::identity(self.rows))?;
        inv.hermitianize();
        Ok(inv)
    }
}

/// Lower-triangular Cholesky factor.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: ComplexMatrix,
}

impl Cholesky {
    /// Solves `A x = b` where `A = L L^H`.
    pub fn solve_vec(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.l.rows();
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "solve with rhs of length {} against {}x{} factor",
                b.len(),
                n,
                n
            )));
        }
        // Forward: L y = b
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let lik = self.l.get(i, k);
                y[i] = y[i] - lik * y[k];
            }
            y[i] /= self.l.get(i, i);
        }
        // Backward: L^H x = y
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let lki = self.l.get(k, i).conj();
                y[i] = y[i] - lki * y[k];
            }
            y[i] /= self.l.get(i, i);
        }
        Ok(y)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_mat(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.l.rows();
        if b.rows() != n {
            return Err(Error::Dimension(format!(
                "solve with rhs of {} rows against {}x{} factor",
                b.rows(),
                n,
                n
            )));
        }
        let mut out = ComplexMatrix::zeros(n, b.cols());
        for c in 0..b.cols() {
            let x = self.solve_vec(&b.col(c))?;
            for r in 0..n {
                out.set(r, c, x[r]);
            }
        }
        Ok(out)
    }
}

/// Inner product `x^H y`.
pub fn dot_h(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Squared Euclidean norm of a complex vector.
pub fn norm_sq(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Takes the real part of a theoretically-real quantity, asserting (in debug
/// builds) that the imaginary residue is negligible.
pub fn real_part_checked(z: Complex64) -> f64 {
    debug_assert!(
        z.im.abs() <= 1e-9 * z.re.abs().max(1.0),
        "imaginary residue {} on theoretically-real value {}",
        z.im,
        z.re
    );
    z.re
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_zero_dimensions() {
        assert!(ComplexMatrix::new(0, 3, vec![]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![Complex64::ZERO; 3]).is_err());
    }

    #[test]
    fn hermitian_transpose_round_trip() {
        let a = ComplexMatrix::new(2, 3, (0..6).map(|k| c(k as f64, -(k as f64))).collect()).unwrap();
        let ah = a.hermitian();
        assert_eq!(ah.rows(), 3);
        assert_eq!(ah.get(2, 1), a.get(1, 2).conj());
        assert_eq!(ah.hermitian(), a);
    }

    #[test]
    fn cholesky_solves_hpd_system() {
        // A = B B^H + I is HPD for any B.
        let b = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 0.5),
                c(-0.3, 0.1),
                c(0.2, -0.7),
                c(0.0, 1.1),
                c(0.9, 0.0),
                c(-0.4, 0.2),
                c(0.5, -0.5),
                c(0.3, 0.3),
                c(1.2, -0.1),
            ],
        )
        .unwrap();
        let a = b.gram().add(&ComplexMatrix::identity(3)).unwrap();
        let rhs = vec![c(1.0, -1.0), c(0.0, 2.0), c(-3.0, 0.5)];
        let x = a.cholesky().unwrap().solve_vec(&rhs).unwrap();
        let back = a.mul_vec(&x).unwrap();
        for (got, want) in back.iter().zip(rhs.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn hpd_inverse_matches_identity() {
        let b = ComplexMatrix::from_fn(4, 4, |r, ci| c((r * ci) as f64 * 0.1 + 1.0, r as f64 - ci as f64));
        let a = b.gram().add(&ComplexMatrix::scaled_identity(4, 2.0)).unwrap();
        let inv = a.hpd_inverse().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        assert!(inv.is_hermitian(1e-14));
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(a.cholesky(), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn push_col_and_hstack_agree() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let col = vec![c(5.0, 1.0), c(6.0, -1.0)];
        let mut pushed = a.clone();
        pushed.push_col(&col).unwrap();
        let stacked = a.hstack(&ComplexMatrix::from_col(&col)).unwrap();
        assert_eq!(pushed, stacked);
    }

    #[test]
    fn quad_form_is_real_for_hermitian() {
        let b = ComplexMatrix::from_fn(3, 5, |r, ci| c(0.3 * r as f64 - ci as f64, 0.2 * ci as f64));
        let a = b.gram();
        let x = vec![c(1.0, 2.0), c(-0.5, 0.3), c(0.0, -1.0)];
        let q = a.quad_form(&x);
        assert!(q.im.abs() < 1e-12 * q.re.abs().max(1.0));
        assert!(q.re >= 0.0);
    }
}
