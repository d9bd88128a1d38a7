//! LMMSE channel estimation over pilot blocks and virtual-pilot augmented
//! blocks, plus the error-covariance analysis used as an independent oracle
//! for the selection policy.
//!
//! With a unit-variance i.i.d. channel prior, the estimate from observations
//! `Y = H X + Z` against an assumed regressor block `X̂` is
//! `Ĥ = Y X̂^H (X̂ X̂^H + σ² I)^{-1}`. The per-receive-antenna error covariance
//! of that estimate, when the true block is `X`, has the closed form
//! `C_e = σ² Q − σ⁴ Q² + Q D D^H Q` with `Q = (X̂ X̂^H + σ² I)^{-1}` and
//! `D = X̂ (X̂ − X)^H + σ² I`, which [`error_covariance`] evaluates directly.

use num_complex::Complex64;
use sdce_core::{real_part_checked, ComplexMatrix, Error, Result};

/// How a channel estimate was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateSource {
    PilotOnly,
    Augmented,
}

/// A channel estimate with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEstimate {
    /// `n_rx x n_tx` estimated channel.
    pub matrix: ComplexMatrix,
    pub source: EstimateSource,
    /// Total regressor columns behind the estimate (pilots plus virtual
    /// pilots).
    pub pilot_count_effective: usize,
}

/// Observation/regressor column pair for augmented estimation: the pilot
/// block plus any selected data slots.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedBlocks {
    /// `n_rx x m` received columns `[Y_p, selected y]`.
    pub observations: ComplexMatrix,
    /// `n_tx x m` regressor columns `[P, selected symbol vectors]`.
    pub regressors: ComplexMatrix,
    pub noise_variance: f64,
}

impl AugmentedBlocks {
    pub fn new(
        observations: ComplexMatrix,
        regressors: ComplexMatrix,
        noise_variance: f64,
    ) -> Result<Self> {
        if observations.cols() != regressors.cols() {
            return Err(Error::Dimension(format!(
                "observation block has {} columns, regressor block has {}",
                observations.cols(),
                regressors.cols()
            )));
        }
        if noise_variance <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise variance must be positive, got {noise_variance}"
            )));
        }
        Ok(Self {
            observations,
            regressors,
            noise_variance,
        })
    }
}

fn lmmse_solve(
    observations: &ComplexMatrix,
    regressors: &ComplexMatrix,
    sigma2: f64,
) -> Result<ComplexMatrix> {
    let n_tx = regressors.rows();
    let gram = regressors
        .gram()
        .add(&ComplexMatrix::scaled_identity(n_tx, sigma2))?;
    // H^H = (X X^H + s I)^{-1} X Y^H, solved rather than inverted.
    let rhs = regressors.mul(&observations.hermitian())?;
    let solved = gram.cholesky()?.solve_mat(&rhs)?;
    Ok(solved.hermitian())
}

/// Pilot-only LMMSE estimate `Ĥ_p = Y_p P^H (P P^H + σ² I)^{-1}`.
pub fn lmmse_pilot_estimate(
    y_p: &ComplexMatrix,
    p: &ComplexMatrix,
    sigma2: f64,
) -> Result<ChannelEstimate> {
    if sigma2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )));
    }
    if y_p.cols() != p.cols() {
        return Err(Error::Dimension(format!(
            "pilot observations have {} columns, pilot matrix has {}",
            y_p.cols(),
            p.cols()
        )));
    }
    Ok(ChannelEstimate {
        matrix: lmmse_solve(y_p, p, sigma2)?,
        source: EstimateSource::PilotOnly,
        pilot_count_effective: p.cols(),
    })
}

/// Mean squared Frobenius error of the pilot-only LMMSE estimate under the
/// unit-variance channel prior: `N_rx σ² Tr[(P P^H + σ² I)^{-1}]`.
pub fn lmmse_pilot_mse(p: &ComplexMatrix, sigma2: f64, n_rx: usize) -> Result<f64> {
    if sigma2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )));
    }
    let n_tx = p.rows();
    let gram = p
        .gram()
        .add(&ComplexMatrix::scaled_identity(n_tx, sigma2))?;
    let inv = gram.hpd_inverse()?;
    Ok(n_rx as f64 * sigma2 * real_part_checked(inv.trace()))
}

/// LMMSE estimate from an augmented block:
/// `Ĥ = Y X̂^H (X̂ X̂^H + σ² I)^{-1}`. With no appended columns this is exactly
/// the pilot-only estimate.
pub fn lmmse_augmented_estimate(blocks: &AugmentedBlocks) -> Result<ChannelEstimate> {
    Ok(ChannelEstimate {
        matrix: lmmse_solve(&blocks.observations, &blocks.regressors, blocks.noise_variance)?,
        source: EstimateSource::Augmented,
        pilot_count_effective: blocks.regressors.cols(),
    })
}

/// Per-receive-antenna error covariance of the LMMSE estimate formed with
/// regressor block `x_hat` when the transmitted block is actually `x_true`:
/// `C_e = σ² Q − σ⁴ Q² + Q D D^H Q`.
pub fn error_covariance(
    x_true: &ComplexMatrix,
    x_hat: &ComplexMatrix,
    sigma2: f64,
) -> Result<ComplexMatrix> {
    if x_true.rows() != x_hat.rows() || x_true.cols() != x_hat.cols() {
        return Err(Error::Dimension(format!(
            "true block is {}x{}, assumed block is {}x{}",
            x_true.rows(),
            x_true.cols(),
            x_hat.rows(),
            x_hat.cols()
        )));
    }
    if sigma2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "noise variance must be positive, got {sigma2}"
        )));
    }
    let n_tx = x_hat.rows();
    let eye = ComplexMatrix::scaled_identity(n_tx, sigma2);
    let gram = x_hat.gram().add(&eye)?;
    let q = gram.hpd_inverse()?;
    let mismatch = x_hat.sub(x_true)?;
    let d = x_hat.mul(&mismatch.hermitian())?.add(&eye)?;
    let qd = q.mul(&d)?;
    let mut cov = q
        .scaled(sigma2)
        .sub(&q.mul(&q)?.scaled(sigma2 * sigma2))?
        .add(&qd.mul(&qd.hermitian())?)?;
    cov.hermitianize();
    Ok(cov)
}

/// Trace of [`error_covariance`], checked real.
pub fn error_covariance_trace(
    x_true: &ComplexMatrix,
    x_hat: &ComplexMatrix,
    sigma2: f64,
) -> Result<f64> {
    Ok(real_part_checked(
        error_covariance(x_true, x_hat, sigma2)?.trace(),
    ))
}

/// Sherman-Morrison update of a Hermitian positive definite inverse:
/// given `Q = A^{-1}`, returns `(A + x x^H)^{-1}`.
///
/// The result is re-symmetrized so repeated updates cannot drift off the
/// Hermitian manifold.
pub fn rank_one_update_inverse(q: &ComplexMatrix, x: &[Complex64]) -> ComplexMatrix {
    let qx = q.mul_vec(x).expect("dimension checked by caller");
    let denom = 1.0 + real_part_checked(q.quad_form(x));
    let mut out = q.clone();
    let scale = -1.0 / denom;
    for r in 0..out.rows() {
        for c in 0..out.cols() {
            let delta = qx[r] * qx[c].conj() * scale;
            out.set(r, c, out.get(r, c) + delta);
        }
    }
    out.hermitianize();
    out
}
