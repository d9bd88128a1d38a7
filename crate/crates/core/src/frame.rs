//! Frame generation: pilot block followed by a data block, with block-fading
//! or Gauss-Markov time-varying channels.

use num_complex::Complex64;
use rand::Rng;

use crate::channel::{draw_channel, evolve_channel, transmit};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::pilot::build_pilot_matrix;
use crate::rng::RngSpec;

/// Channel evolution model across the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelMode {
    /// Channel constant over the whole frame.
    Block,
    /// First-order Gauss-Markov recursion with temporal correlation
    /// coefficient `epsilon`. When `evolve_during_pilots` is set the
    /// recursion runs from the first pilot slot; otherwise it starts at the
    /// first data slot.
    GaussMarkov {
        epsilon: f64,
        evolve_during_pilots: bool,
    },
}

impl ChannelMode {
    pub fn gauss_markov(epsilon: f64) -> Self {
        ChannelMode::GaussMarkov {
            epsilon,
            evolve_during_pilots: true,
        }
    }
}

/// Dimensions and noise level for one simulated frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameParams {
    pub n_tx: usize,
    pub n_rx: usize,
    pub t_p: usize,
    pub t_u: usize,
    pub t_d: usize,
    pub sigma2: f64,
    pub channel_mode: ChannelMode,
}

impl FrameParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_tx == 0 || self.n_rx == 0 || self.t_p == 0 || self.t_u == 0 {
            return Err(Error::InvalidParameter(
                "frame dimensions must be positive".into(),
            ));
        }
        if self.t_u > self.t_d {
            return Err(Error::InvalidParameter(format!(
                "selection window T_u = {} exceeds data block length T_d = {}",
                self.t_u, self.t_d
            )));
        }
        if self.t_p < self.n_tx {
            return Err(Error::InvalidParameter(format!(
                "pilot length {} shorter than {} transmit antennas",
                self.t_p, self.n_tx
            )));
        }
        if self.sigma2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "noise variance must be positive, got {}",
                self.sigma2
            )));
        }
        if let ChannelMode::GaussMarkov { epsilon, .. } = self.channel_mode {
            if !(0.0..=1.0).contains(&epsilon) {
                return Err(Error::InvalidParameter(format!(
                    "temporal correlation coefficient must lie in [0, 1], got {epsilon}"
                )));
            }
        }
        Ok(())
    }
}

/// Per-slot channel realizations. Slot index 0 is the first pilot slot;
/// data slot `n` (1-based) lives at index `t_p + n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelTrack {
    Block(ComplexMatrix),
    Varying(Vec<ComplexMatrix>),
}

/// One simulated frame: everything the receiver observes plus the
/// simulator-side ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameRealization {
    pub channel: ChannelTrack,
    /// `n_tx x t_p` pilot block.
    pub pilot_matrix: ComplexMatrix,
    /// `n_rx x t_p` received pilot block.
    pub pilot_observations: ComplexMatrix,
    /// Transmitted symbol-book index per data slot (0-based, length `t_d`).
    pub tx_indices: Vec<usize>,
    /// Received vector per data slot (length `t_d`).
    pub data_observations: Vec<Vec<Complex64>>,
    pub noise_variance: f64,
    pub n_tx: usize,
    pub n_rx: usize,
    pub t_p: usize,
    pub t_u: usize,
    pub t_d: usize,
}

impl FrameRealization {
    /// Channel realization at pilot slot `i` in `0..t_p`.
    pub fn channel_at_pilot_slot(&self, i: usize) -> &ComplexMatrix {
        match &self.channel {
            ChannelTrack::Block(h) => h,
            ChannelTrack::Varying(track) => &track[i],
        }
    }

    /// Channel realization at data slot `n` (1-based).
    pub fn channel_at_data_slot(&self, n: usize) -> &ComplexMatrix {
        debug_assert!((1..=self.t_d).contains(&n));
        match &self.channel {
            ChannelTrack::Block(h) => h,
            ChannelTrack::Varying(track) => &track[self.t_p + n - 1],
        }
    }

    /// Received vector at data slot `n` (1-based).
    pub fn observation(&self, n: usize) -> &[Complex64] {
        &self.data_observations[n - 1]
    }

    /// Transmitted symbol index at data slot `n` (1-based).
    pub fn tx_index(&self, n: usize) -> usize {
        self.tx_indices[n - 1]
    }
}

/// Generates a self-consistent frame. `symbol_vectors` is the candidate list
/// the transmitter draws from uniformly (each of length `n_tx`).
///
/// The draw order is fixed (channel track, pilot noise, then per-slot index
/// and noise), so a given `RngSpec` reproduces the frame bit-for-bit.
pub fn generate_frame(
    params: &FrameParams,
    symbol_vectors: &[Vec<Complex64>],
    spec: &RngSpec,
) -> Result<FrameRealization> {
    params.validate()?;
    if symbol_vectors.is_empty() {
        return Err(Error::InvalidParameter("empty symbol candidate list".into()));
    }
    for v in symbol_vectors {
        if v.len() != params.n_tx {
            return Err(Error::Dimension(format!(
                "candidate symbol vector of length {} for {} transmit antennas",
                v.len(),
                params.n_tx
            )));
        }
    }

    let mut rng = spec.rng();
    let total_slots = params.t_p + params.t_d;

    let channel = match params.channel_mode {
        ChannelMode::Block => ChannelTrack::Block(draw_channel(params.n_rx, params.n_tx, &mut rng)),
        ChannelMode::GaussMarkov {
            epsilon,
            evolve_during_pilots,
        } => {
            let mut track = Vec::with_capacity(total_slots);
            track.push(draw_channel(params.n_rx, params.n_tx, &mut rng));
            for idx in 1..total_slots {
                let evolving = evolve_during_pilots || idx >= params.t_p;
                let next = if evolving {
                    evolve_channel(&track[idx - 1], epsilon, &mut rng)?
                } else {
                    track[idx - 1].clone()
                };
                track.push(next);
            }
            ChannelTrack::Varying(track)
        }
    };

    let pilot_matrix = build_pilot_matrix(params.n_tx, params.t_p)?;
    let mut pilot_observations = ComplexMatrix::zeros(params.n_rx, params.t_p);
    for i in 0..params.t_p {
        let h = match &channel {
            ChannelTrack::Block(h) => h,
            ChannelTrack::Varying(track) => &track[i],
        };
        let y = transmit(h, &pilot_matrix.col(i), params.sigma2, &mut rng)?;
        for r in 0..params.n_rx {
            pilot_observations.set(r, i, y[r]);
        }
    }

    let k = symbol_vectors.len();
    let mut tx_indices = Vec::with_capacity(params.t_d);
    let mut data_observations = Vec::with_capacity(params.t_d);
    for n in 1..=params.t_d {
        let idx = rng.random_range(0..k);
        let h = match &channel {
            ChannelTrack::Block(h) => h,
            ChannelTrack::Varying(track) => &track[params.t_p + n - 1],
        };
        let y = transmit(h, &symbol_vectors[idx], params.sigma2, &mut rng)?;
        tx_indices.push(idx);
        data_observations.push(y);
    }

    Ok(FrameRealization {
        channel,
        pilot_matrix,
        pilot_observations,
        tx_indices,
        data_observations,
        noise_variance: params.sigma2,
        n_tx: params.n_tx,
        n_rx: params.n_rx,
        t_p: params.t_p,
        t_u: params.t_u,
        t_d: params.t_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_book() -> Vec<Vec<Complex64>> {
        // Four 2-antenna candidates with unit per-antenna power.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pts = [
            Complex64::new(s, s),
            Complex64::new(-s, s),
            Complex64::new(-s, -s),
            Complex64::new(s, -s),
        ];
        let mut out = Vec::new();
        for &a in &pts {
            for &b in &pts {
                out.push(vec![a, b]);
            }
        }
        out
    }

    fn params() -> FrameParams {
        FrameParams {
            n_tx: 2,
            n_rx: 4,
            t_p: 4,
            t_u: 8,
            t_d: 8,
            sigma2: 0.5,
            channel_mode: ChannelMode::Block,
        }
    }

    #[test]
    fn block_fading_channel_constant() {
        let frame = generate_frame(&params(), &unit_book(), &RngSpec::new(1, 0)).unwrap();
        let h1 = frame.channel_at_data_slot(1).clone();
        for n in 2..=frame.t_d {
            assert_eq!(&h1, frame.channel_at_data_slot(n));
        }
        assert_eq!(&h1, frame.channel_at_pilot_slot(0));
    }

    #[test]
    fn paper_scale_dimensions() {
        let p = FrameParams {
            t_u: 200,
            t_d: 200,
            ..params()
        };
        let frame = generate_frame(&p, &unit_book(), &RngSpec::new(2, 7)).unwrap();
        assert_eq!(frame.pilot_matrix.rows(), 2);
        assert_eq!(frame.pilot_matrix.cols(), 4);
        assert_eq!(frame.pilot_observations.rows(), 4);
        assert_eq!(frame.tx_indices.len(), 200);
        assert_eq!(frame.observation(200).len(), 4);
        assert!(frame.tx_indices.iter().all(|&k| k < 16));
    }

    #[test]
    fn gauss_markov_track_evolves() {
        let p = FrameParams {
            channel_mode: ChannelMode::gauss_markov(1.5e-2),
            ..params()
        };
        let frame = generate_frame(&p, &unit_book(), &RngSpec::new(3, 0)).unwrap();
        assert_ne!(frame.channel_at_pilot_slot(0), frame.channel_at_data_slot(1));
        // Drift over one step is small at this epsilon.
        let diff = frame
            .channel_at_data_slot(1)
            .sub(frame.channel_at_data_slot(2))
            .unwrap();
        assert!(diff.frob_norm_sq() < 0.1);
    }

    #[test]
    fn pilot_block_frozen_when_flagged() {
        let p = FrameParams {
            channel_mode: ChannelMode::GaussMarkov {
                epsilon: 0.5,
                evolve_during_pilots: false,
            },
            ..params()
        };
        let frame = generate_frame(&p, &unit_book(), &RngSpec::new(4, 0)).unwrap();
        for i in 1..p.t_p {
            assert_eq!(frame.channel_at_pilot_slot(0), frame.channel_at_pilot_slot(i));
        }
        assert_ne!(frame.channel_at_pilot_slot(0), frame.channel_at_data_slot(1));
    }

    #[test]
    fn identical_spec_identical_frame() {
        let spec = RngSpec::new(99, 42);
        let a = generate_frame(&params(), &unit_book(), &spec).unwrap();
        let b = generate_frame(&params(), &unit_book(), &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn near_noiseless_pilot_consistency() {
        let p = FrameParams {
            sigma2: 1e-20,
            ..params()
        };
        let frame = generate_frame(&p, &unit_book(), &RngSpec::new(5, 0)).unwrap();
        let clean = frame
            .channel_at_pilot_slot(0)
            .mul(&frame.pilot_matrix)
            .unwrap();
        assert!(frame.pilot_observations.max_abs_diff(&clean) < 1e-9);
    }

    #[test]
    fn rejects_bad_dimensions() {
        let bad = FrameParams {
            t_u: 9,
            t_d: 8,
            ..params()
        };
        assert!(generate_frame(&bad, &unit_book(), &RngSpec::new(0, 0)).is_err());
    }
}
