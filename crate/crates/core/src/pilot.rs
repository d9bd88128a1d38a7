//! Orthogonal pilot design.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Builds the `n_tx x t_p` pilot block from rows of the discrete Fourier
/// basis: entry `(r, c)` is `exp(-2*pi*i*r*c / t_p)`.
///
/// All entries have unit modulus, so every pilot column carries power `n_tx`,
/// and distinct rows are orthogonal, giving `P P^H = t_p I`.
pub fn build_pilot_matrix(n_tx: usize, t_p: usize) -> Result<ComplexMatrix> {
    if n_tx == 0 || t_p == 0 {
        return Err(Error::InvalidParameter(
            "pilot dimensions must be positive".into(),
        ));
    }
    if t_p < n_tx {
        return Err(Error::InvalidParameter(format!(
            "pilot length {t_p} shorter than {n_tx} transmit antennas gives a rank-deficient pilot block"
        )));
    }
    let step = -2.0 * std::f64::consts::PI / t_p as f64;
    Ok(ComplexMatrix::from_fn(n_tx, t_p, |r, c| {
        Complex64::from_polar(1.0, step * (r * c) as f64)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::norm_sq;

    #[test]
    fn rows_orthogonal_scaled() {
        for (n_tx, t_p) in [(2, 4), (2, 2), (3, 4), (4, 4), (2, 8)] {
            let p = build_pilot_matrix(n_tx, t_p).unwrap();
            let gram = p.gram();
            let target = ComplexMatrix::scaled_identity(n_tx, t_p as f64);
            let rel = gram.max_abs_diff(&target) / t_p as f64;
            assert!(rel < 1e-12, "P P^H off by {rel} for {n_tx}x{t_p}");
        }
    }

    #[test]
    fn columns_carry_full_power() {
        let p = build_pilot_matrix(2, 2).unwrap();
        for c in 0..2 {
            assert!((norm_sq(&p.col(c)) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_short_pilot_block() {
        assert!(build_pilot_matrix(4, 2).is_err());
    }
}
