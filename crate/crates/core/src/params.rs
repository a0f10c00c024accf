//! Channel parameters of the two-user linear deterministic interference
//! channel with noisy output feedback, and their Gaussian counterparts.

use std::fmt;

/// Largest admissible exponent for any of the six parameters.
pub const PARAM_CAP: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("parameter {name} = {value} exceeds the cap of {PARAM_CAP}")]
    AboveCap { name: &'static str, value: u32 },
    #[error("power ratio {name} = {value} must be a finite number >= 1")]
    RatioBelowOne { name: &'static str, value: f64 },
}

/// The six integer level counts describing the channel.
///
/// `fwd11`/`fwd22` are the direct-link SNR exponents, `inr12` is the
/// interference level at receiver 1 from transmitter 2 (and `inr21`
/// conversely), and `fb11`/`fb22` are the feedback-link SNR exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ChannelParams {
    pub fwd11: u32,
    pub fwd22: u32,
    pub inr12: u32,
    pub inr21: u32,
    pub fb11: u32,
    pub fb22: u32,
}

/// Which user a per-user quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum User {
    One,
    Two,
}

impl User {
    pub const BOTH: [User; 2] = [User::One, User::Two];

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<User> {
        match n {
            1 => Some(User::One),
            2 => Some(User::Two),
            _ => None,
        }
    }
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Feedback modifications used to compare regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Both feedback exponents set to zero.
    NoFeedback,
    /// Each feedback exponent raised to its saturation value.
    PerfectFeedback,
    /// Each feedback exponent capped at its saturation value.
    Saturated,
}

impl ChannelParams {
    pub fn new(fwd11: u32, fwd22: u32, inr12: u32, inr21: u32, fb11: u32, fb22: u32) -> Self {
        ChannelParams {
            fwd11,
            fwd22,
            inr12,
            inr21,
            fb11,
            fb22,
        }
    }

    /// Forward-only parameters with both feedback links off.
    pub fn forward(fwd11: u32, fwd22: u32, inr12: u32, inr21: u32) -> Self {
        Self::new(fwd11, fwd22, inr12, inr21, 0, 0)
    }

    pub fn with_feedback(self, fb11: u32, fb22: u32) -> Self {
        ChannelParams { fb11, fb22, ..self }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in self.named_fields() {
            if value > PARAM_CAP {
                return Err(ParamError::AboveCap { name, value });
            }
        }
        Ok(())
    }

    pub fn named_fields(&self) -> [(&'static str, u32); 6] {
        [
            ("n11", self.fwd11),
            ("n22", self.fwd22),
            ("n12", self.inr12),
            ("n21", self.inr21),
            ("fb11", self.fb11),
            ("fb22", self.fb22),
        ]
    }

    pub fn direct(&self, user: User) -> u32 {
        match user {
            User::One => self.fwd11,
            User::Two => self.fwd22,
        }
    }

    /// Interference level seen at `user`'s receiver from the other transmitter.
    pub fn interference_at(&self, user: User) -> u32 {
        match user {
            User::One => self.inr12,
            User::Two => self.inr21,
        }
    }

    pub fn feedback(&self, user: User) -> u32 {
        match user {
            User::One => self.fb11,
            User::Two => self.fb22,
        }
    }

    /// Feedback level beyond which nothing changes: `max(fwd_ii, inr_ij)`.
    pub fn saturation(&self, user: User) -> u32 {
        self.direct(user).max(self.interference_at(user))
    }

    /// Signal dimension `q`.
    pub fn levels(&self) -> u32 {
        self.fwd11.max(self.fwd22).max(self.inr12).max(self.inr21)
    }

    pub fn with_feedback_on(self, user: User, value: u32) -> Self {
        match user {
            User::One => ChannelParams { fb11: value, ..self },
            User::Two => ChannelParams { fb22: value, ..self },
        }
    }

    /// Relabels the users.
    pub fn swapped(&self) -> Self {
        ChannelParams {
            fwd11: self.fwd22,
            fwd22: self.fwd11,
            inr12: self.inr21,
            inr21: self.inr12,
            fb11: self.fb22,
            fb22: self.fb11,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.fwd11 == self.fwd22 && self.inr12 == self.inr21 && self.fb11 == self.fb22
    }

    pub fn derive_variant(&self, kind: Variant) -> Self {
        let s1 = self.saturation(User::One);
        let s2 = self.saturation(User::Two);
        match kind {
            Variant::NoFeedback => self.with_feedback(0, 0),
            Variant::PerfectFeedback => self.with_feedback(s1, s2),
            Variant::Saturated => self.with_feedback(self.fb11.min(s1), self.fb22.min(s2)),
        }
    }
}

impl fmt::Display for ChannelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.fwd11, self.fwd22, self.inr12, self.inr21, self.fb11, self.fb22
        )
    }
}

/// Linear-scale power ratios of a Gaussian interference channel with feedback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    pub snr_fwd1: f64,
    pub snr_fwd2: f64,
    pub inr_12: f64,
    pub inr_21: f64,
    pub snr_fb1: f64,
    pub snr_fb2: f64,
}

/// `floor(log2(x) / 2)` for a finite `x >= 1`, read off the binary exponent.
fn half_log2_floor(name: &'static str, x: f64) -> Result<u32, ParamError> {
    if !(x.is_finite() && x >= 1.0) {
        return Err(ParamError::RatioBelowOne { name, value: x });
    }
    // x >= 1 is always a normal float, so the biased exponent is floor(log2 x) + 1023.
    let biased = ((x.to_bits() >> 52) & 0x7ff) as u32;
    Ok((biased - 1023) / 2)
}

/// Maps Gaussian power ratios onto integer level counts.
pub fn gaussian_to_ld(g: &GaussianParams) -> Result<ChannelParams, ParamError> {
    let params = ChannelParams {
        fwd11: half_log2_floor("snr_fwd1", g.snr_fwd1)?,
        fwd22: half_log2_floor("snr_fwd2", g.snr_fwd2)?,
        inr12: half_log2_floor("inr_12", g.inr_12)?,
        inr21: half_log2_floor("inr_21", g.inr_21)?,
        fb11: half_log2_floor("snr_fb1", g.snr_fb1)?,
        fb22: half_log2_floor("snr_fb2", g.snr_fb2)?,
    };
    params.validate()?;
    Ok(params)
}
