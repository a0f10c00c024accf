//! Reference encoder/decoder pairs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ldsim::bits::BitVector;
use crate::ldsim::channel::SimConfig;
use crate::ldsim::session::{run_session, Decoder, Encoder, SessionResult};
use crate::ldsim::SimError;
use crate::params::User;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Fresh bits on the top `n_ii` levels, read back off the bottom
    /// `n_ii` levels at the receiver. Error free without interference.
    PointToPoint,
    /// Like point-to-point, but each input is XORed with the newest feedback
    /// observation; the receiver strips that contribution using its own
    /// earlier outputs.
    Echo,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::PointToPoint, Scheme::Echo];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::PointToPoint => "point-to-point",
            Scheme::Echo => "echo",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| SimError::UnknownScheme(s.to_string()))
    }
}

/// Bits user `user` sends per channel use under the reference schemes.
pub fn bits_per_use(cfg: &SimConfig, user: User) -> usize {
    cfg.params.direct(user) as usize
}

pub fn message_len(cfg: &SimConfig, user: User) -> usize {
    bits_per_use(cfg, user) * cfg.block_length
}

/// Places message chunk `n` on the top levels.
#[derive(Debug, Clone)]
struct TopLevels {
    q: usize,
    width: usize,
}

impl TopLevels {
    fn place(&self, channel_use: usize, message: &[bool]) -> BitVector {
        let mut x = BitVector::zeros(self.q);
        let start = (channel_use - 1) * self.width;
        for (k, &b) in message.iter().skip(start).take(self.width).enumerate() {
            x.set(k + 1, b);
        }
        x
    }

    /// Reads the `width` least significant levels of an output that has
    /// been shifted down by `q - width`.
    fn read(&self, y: &BitVector, out: &mut Vec<bool>) {
        let offset = self.q - self.width;
        out.extend((1..=self.width).map(|k| y.get(offset + k)));
    }
}

#[derive(Debug, Clone)]
pub struct PointToPointEncoder(TopLevels);

#[derive(Debug, Clone)]
pub struct PointToPointDecoder(TopLevels);

impl PointToPointEncoder {
    pub fn new(cfg: &SimConfig, user: User) -> Self {
        PointToPointEncoder(TopLevels {
            q: cfg.q,
            width: bits_per_use(cfg, user),
        })
    }
}

impl PointToPointDecoder {
    pub fn new(cfg: &SimConfig, user: User) -> Self {
        PointToPointDecoder(TopLevels {
            q: cfg.q,
            width: bits_per_use(cfg, user),
        })
    }
}

impl Encoder for PointToPointEncoder {
    fn encode(&self, channel_use: usize, message: &[bool], _feedback: &[BitVector]) -> BitVector {
        self.0.place(channel_use, message)
    }
}

impl Decoder for PointToPointDecoder {
    fn decode(&self, received: &[BitVector]) -> Vec<bool> {
        let mut out = Vec::with_capacity(received.len() * self.0.width);
        for y in received {
            self.0.read(y, &mut out);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct EchoEncoder(TopLevels);

#[derive(Debug, Clone)]
pub struct EchoDecoder {
    levels: TopLevels,
    direct_shift: usize,
    feedback_shift: usize,
    delay: usize,
}

impl EchoEncoder {
    pub fn new(cfg: &SimConfig, user: User) -> Self {
        EchoEncoder(TopLevels {
            q: cfg.q,
            width: bits_per_use(cfg, user),
        })
    }
}

impl EchoDecoder {
    pub fn new(cfg: &SimConfig, user: User) -> Self {
        EchoDecoder {
            levels: TopLevels {
                q: cfg.q,
                width: bits_per_use(cfg, user),
            },
            direct_shift: cfg.direct_shift(user),
            feedback_shift: cfg.feedback_shift(user),
            delay: cfg.delay,
        }
    }
}

impl Encoder for EchoEncoder {
    fn encode(&self, channel_use: usize, message: &[bool], feedback: &[BitVector]) -> BitVector {
        let mut x = self.0.place(channel_use, message);
        if let Some(last) = feedback.last() {
            x ^= last;
        }
        x
    }
}

impl Decoder for EchoDecoder {
    fn decode(&self, received: &[BitVector]) -> Vec<bool> {
        let mut out = Vec::with_capacity(received.len() * self.levels.width);
        for (idx, y) in received.iter().enumerate() {
            // Use idx + 1 was XORed with the feedback of use idx, which
            // carries the output of use idx - delay.
            let mut clean = y.clone();
            if idx > self.delay {
                let echoed = received[idx - 1 - self.delay]
                    .down_shift(self.feedback_shift)
                    .down_shift(self.direct_shift);
                clean ^= &echoed;
            }
            self.levels.read(&clean, &mut out);
        }
        out
    }
}

/// Uniform random message bits for both users from one seed.
pub fn random_messages(cfg: &SimConfig, seed: u64) -> [Vec<bool>; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    User::BOTH.map(|u| (0..message_len(cfg, u)).map(|_| rng.gen()).collect())
}

/// Runs `scheme` on messages drawn from `seed`.
pub fn simulate(cfg: &SimConfig, scheme: Scheme, seed: u64) -> Result<SessionResult, SimError> {
    let messages = random_messages(cfg, seed);
    let refs = [messages[0].as_slice(), messages[1].as_slice()];
    match scheme {
        Scheme::PointToPoint => {
            let e = User::BOTH.map(|u| PointToPointEncoder::new(cfg, u));
            let d = User::BOTH.map(|u| PointToPointDecoder::new(cfg, u));
            run_session(cfg, [&e[0], &e[1]], [&d[0], &d[1]], refs)
        }
        Scheme::Echo => {
            let e = User::BOTH.map(|u| EchoEncoder::new(cfg, u));
            let d = User::BOTH.map(|u| EchoDecoder::new(cfg, u));
            run_session(cfg, [&e[0], &e[1]], [&d[0], &d[1]], refs)
        }
    }
}
