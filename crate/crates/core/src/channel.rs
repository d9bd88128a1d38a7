//! Rayleigh channel draws, Gauss-Markov evolution, and the AWGN transmit step.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::rng::standard_complex;

/// Draws an `n_rx x n_tx` channel with i.i.d. CN(0, 1) entries.
pub fn draw_channel(n_rx: usize, n_tx: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    assert!(n_rx >= 1 && n_tx >= 1, "antenna counts must be positive");
    ComplexMatrix::from_fn(n_rx, n_tx, |_, _| standard_complex(rng))
}

/// One step of the first-order Gauss-Markov recursion
/// `H_next = sqrt(1 - eps^2) * H_prev + eps * E` with `E` i.i.d. CN(0, 1).
///
/// `epsilon = 0` freezes the channel; `epsilon = 1` redraws it independently.
pub fn evolve_channel(
    h_prev: &ComplexMatrix,
    epsilon: f64,
    rng: &mut ChaCha8Rng,
) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "temporal correlation coefficient must lie in [0, 1], got {epsilon}"
        )));
    }
    let keep = (1.0 - epsilon * epsilon).sqrt();
    Ok(ComplexMatrix::from_fn(h_prev.rows(), h_prev.cols(), |r, c| {
        keep * h_prev.get(r, c) + epsilon * standard_complex(rng)
    }))
}

/// Passes one symbol vector through the channel: `y = H x + z`,
/// `z ~ CN(0, sigma2 * I)`.
pub fn transmit(
    h: &ComplexMatrix,
    x: &[Complex64],
    sigma2: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Complex64>> {
    if sigma2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )));
    }
    let clean = h.mul_vec(x)?;
    let sigma = sigma2.sqrt();
    Ok(clean
        .into_iter()
        .map(|y| y + sigma * standard_complex(rng))
        .collect())
}
