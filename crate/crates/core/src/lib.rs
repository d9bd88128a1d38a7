//! Core primitives for link-level MIMO simulation: complex matrices, seeded
//! randomness, Rayleigh/Gauss-Markov channels, orthogonal pilots, and frame
//! generation.
//!
//! All values are immutable after construction and every random object is
//! addressed by a [`RngSpec`], so frames and trials parallelize freely while
//! staying bit-for-bit reproducible.

mod channel;
mod error;
mod frame;
mod matrix;
mod pilot;
mod rng;

pub use channel::{draw_channel, evolve_channel, transmit};
pub use error::{Error, Result};
pub use frame::{generate_frame, ChannelMode, ChannelTrack, FrameParams, FrameRealization};
pub use matrix::{dot_h, norm_sq, real_part_checked, Cholesky, ComplexMatrix};
pub use pilot::build_pilot_matrix;
pub use rng::{standard_complex, RngSpec};

pub use num_complex::Complex64;
