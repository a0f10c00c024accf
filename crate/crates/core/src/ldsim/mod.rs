//! Bit-level simulator of the linear deterministic interference channel
//! with noisy, delayed output feedback.
//!
//! Each transmitter sends a `q`-level binary vector per channel use. Receiver
//! `i` observes its own signal attenuated by `q - n_ii` levels plus the other
//! signal attenuated by `q - n_ij` levels, summed over GF(2). Transmitter `i`
//! observes its receiver's output from `delay` uses earlier, attenuated by
//! `(q - fb_ii)^+` levels.

pub mod bits;
pub mod channel;
pub mod schemes;
pub mod session;

pub use bits::BitVector;
pub use channel::{derive_config, down_shift, feedback_signal, forward_outputs, SimConfig};
pub use schemes::{simulate, Scheme};
pub use session::{run_session, Decoder, Encoder, SessionResult, TraceEntry};

use crate::par::{self, Execution};
use crate::params::{ParamError, User};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("all forward exponents are zero, so there is no signal space")]
    EmptySignalSpace,
    #[error("feedback delay must be at least one channel use")]
    ZeroDelay,
    #[error("block length must be at least one channel use")]
    ZeroBlockLength,
    #[error("vector of dimension {found} where {expected} was expected")]
    Dimension { expected: usize, found: usize },
    #[error("encoder {user} produced {found} levels at use {channel_use}, expected {expected}")]
    EncoderDimension {
        user: u8,
        channel_use: usize,
        expected: usize,
        found: usize,
    },
    #[error("decoder {user} produced {found} estimates for a {expected}-bit message")]
    DecoderLength { user: u8, expected: usize, found: usize },
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
}

/// Averages of the per-block error fractions over many message draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonteCarloSummary {
    pub trials: usize,
    pub mean_p: [Rational; 2],
    pub worst_p: [Rational; 2],
}

/// Runs one block per seed in `first_seed..first_seed + trials`.
pub fn monte_carlo(
    cfg: &SimConfig,
    scheme: Scheme,
    first_seed: u64,
    trials: usize,
    exec: Execution,
) -> Result<MonteCarloSummary, SimError> {
    let runs = par::map_range(exec, trials, |k| {
        simulate(cfg, scheme, first_seed + k as u64).map(|r| r.error_probability)
    });
    let mut total = [Rational::ZERO; 2];
    let mut worst = [Rational::ZERO; 2];
    for run in runs {
        let p = run?;
        for u in User::BOTH {
            let i = u.index();
            total[i] = total[i] + p[i];
            worst[i] = worst[i].max(p[i]);
        }
    }
    let denom = Rational::from_integer(trials.max(1) as i128);
    Ok(MonteCarloSummary {
        trials,
        mean_p: total.map(|t| t / denom),
        worst_p: worst,
    })
}
