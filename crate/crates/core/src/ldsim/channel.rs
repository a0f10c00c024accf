use crate::ldsim::bits::BitVector;
use crate::ldsim::SimError;
use crate::params::{ChannelParams, User};

/// Signal dimension, feedback delay and block length for a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub params: ChannelParams,
    pub q: usize,
    pub delay: usize,
    pub block_length: usize,
}

impl SimConfig {
    pub fn new(params: ChannelParams, delay: usize, block_length: usize) -> Result<Self, SimError> {
        params.validate()?;
        let q = params.levels() as usize;
        if q == 0 {
            return Err(SimError::EmptySignalSpace);
        }
        if delay == 0 {
            return Err(SimError::ZeroDelay);
        }
        if block_length == 0 {
            return Err(SimError::ZeroBlockLength);
        }
        Ok(SimConfig {
            params,
            q,
            delay,
            block_length,
        })
    }

    /// Attenuation applied to `user`'s own signal at its receiver.
    pub fn direct_shift(&self, user: User) -> usize {
        self.q - self.params.direct(user) as usize
    }

    /// Attenuation applied to the other transmitter's signal at `user`'s receiver.
    pub fn cross_shift(&self, user: User) -> usize {
        self.q - self.params.interference_at(user) as usize
    }

    /// `(q - fb_ii)^+`
    pub fn feedback_shift(&self, user: User) -> usize {
        self.q.saturating_sub(self.params.feedback(user) as usize)
    }
}

pub fn derive_config(params: ChannelParams, delay: usize, block_length: usize) -> Result<SimConfig, SimError> {
    SimConfig::new(params, delay, block_length)
}

pub fn down_shift(v: &BitVector, k: usize) -> BitVector {
    v.down_shift(k)
}

fn check_dim(v: &BitVector, cfg: &SimConfig) -> Result<(), SimError> {
    if v.len() != cfg.q {
        return Err(SimError::Dimension {
            expected: cfg.q,
            found: v.len(),
        });
    }
    Ok(())
}

/// Receiver outputs for one channel use:
/// `y_i = S^(q - n_ii) x_i + S^(q - n_ij) x_j` over GF(2).
pub fn forward_outputs(
    x1: &BitVector,
    x2: &BitVector,
    cfg: &SimConfig,
) -> Result<(BitVector, BitVector), SimError> {
    check_dim(x1, cfg)?;
    check_dim(x2, cfg)?;
    let y1 = &x1.down_shift(cfg.direct_shift(User::One)) ^ &x2.down_shift(cfg.cross_shift(User::One));
    let y2 = &x2.down_shift(cfg.direct_shift(User::Two)) ^ &x1.down_shift(cfg.cross_shift(User::Two));
    Ok((y1, y2))
}

/// What transmitter `link` observes of an earlier output of its own receiver.
pub fn feedback_signal(y_past: &BitVector, link: User, cfg: &SimConfig) -> Result<BitVector, SimError> {
    check_dim(y_past, cfg)?;
    Ok(y_past.down_shift(cfg.feedback_shift(link)))
}
