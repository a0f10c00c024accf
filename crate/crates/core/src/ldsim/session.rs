use crate::ldsim::bits::BitVector;
use crate::ldsim::channel::{feedback_signal, forward_outputs, SimConfig};
use crate::ldsim::SimError;
use crate::params::User;
use crate::rational::Rational;

/// Transmitter mapping for one user.
///
/// At channel use `n` (1-based) the encoder sees its whole message and the
/// feedback observations of uses `1..n`, i.e. `feedback.len() == n - 1`.
pub trait Encoder {
    fn encode(&self, channel_use: usize, message: &[bool], feedback: &[BitVector]) -> BitVector;
}

/// Receiver mapping from the complete block of outputs to bit estimates.
pub trait Decoder {
    fn decode(&self, received: &[BitVector]) -> Vec<bool>;
}

/// Signals of one channel use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub x1: BitVector,
    pub x2: BitVector,
    pub y1: BitVector,
    pub y2: BitVector,
    /// Feedback observed by transmitter 1 at the end of this use.
    pub fb1: BitVector,
    pub fb2: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionResult {
    pub block_length: usize,
    pub messages: [Vec<bool>; 2],
    pub estimates: [Vec<bool>; 2],
    pub error_probability: [Rational; 2],
    pub trace: Vec<TraceEntry>,
}

impl SessionResult {
    pub fn message_len(&self, user: User) -> usize {
        self.messages[user.index()].len()
    }

    pub fn p(&self, user: User) -> Rational {
        self.error_probability[user.index()]
    }

    /// Message bits per channel use.
    pub fn rate(&self, user: User) -> Rational {
        Rational::new(self.message_len(user) as i128, self.block_length as i128)
    }
}

/// Fraction of mismatched bits; zero for an empty message.
pub fn bit_error_fraction(sent: &[bool], estimate: &[bool]) -> Rational {
    if sent.is_empty() {
        return Rational::ZERO;
    }
    let wrong = sent.iter().zip(estimate).filter(|(a, b)| a != b).count();
    Rational::new(wrong as i128, sent.len() as i128)
}

/// Runs one block of `cfg.block_length` channel uses with delay-`cfg.delay`
/// output feedback, then decodes both receivers.
///
/// The feedback observed at the end of use `n` is the truncated receiver
/// output of use `n - delay`, or zero while `n <= delay`.
pub fn run_session(
    cfg: &SimConfig,
    encoders: [&dyn Encoder; 2],
    decoders: [&dyn Decoder; 2],
    messages: [&[bool]; 2],
) -> Result<SessionResult, SimError> {
    let n_uses = cfg.block_length;
    let mut outputs: [Vec<BitVector>; 2] = [Vec::with_capacity(n_uses), Vec::with_capacity(n_uses)];
    let mut feedback: [Vec<BitVector>; 2] = [Vec::with_capacity(n_uses), Vec::with_capacity(n_uses)];
    let mut trace = Vec::with_capacity(n_uses);

    for n in 1..=n_uses {
        let mut inputs = Vec::with_capacity(2);
        for user in User::BOTH {
            let i = user.index();
            let x = encoders[i].encode(n, messages[i], &feedback[i]);
            if x.len() != cfg.q {
                return Err(SimError::EncoderDimension {
                    user: user.number(),
                    channel_use: n,
                    expected: cfg.q,
                    found: x.len(),
                });
            }
            inputs.push(x);
        }
        let (y1, y2) = forward_outputs(&inputs[0], &inputs[1], cfg)?;
        outputs[0].push(y1);
        outputs[1].push(y2);

        let mut observed = Vec::with_capacity(2);
        for user in User::BOTH {
            let i = user.index();
            let fb = if n > cfg.delay {
                feedback_signal(&outputs[i][n - 1 - cfg.delay], user, cfg)?
            } else {
                BitVector::zeros(cfg.q)
            };
            feedback[i].push(fb.clone());
            observed.push(fb);
        }

        let [x1, x2]: [BitVector; 2] = inputs.try_into().expect("two inputs");
        let [fb1, fb2]: [BitVector; 2] = observed.try_into().expect("two feedback vectors");
        trace.push(TraceEntry {
            x1,
            x2,
            y1: outputs[0][n - 1].clone(),
            y2: outputs[1][n - 1].clone(),
            fb1,
            fb2,
        });
    }

    let mut estimates: [Vec<bool>; 2] = Default::default();
    let mut error_probability = [Rational::ZERO; 2];
    for user in User::BOTH {
        let i = user.index();
        let est = decoders[i].decode(&outputs[i]);
        if est.len() != messages[i].len() {
            return Err(SimError::DecoderLength {
                user: user.number(),
                expected: messages[i].len(),
                found: est.len(),
            });
        }
        error_probability[i] = bit_error_fraction(messages[i], &est);
        estimates[i] = est;
    }

    Ok(SessionResult {
        block_length: n_uses,
        messages: [messages[0].to_vec(), messages[1].to_vec()],
        estimates,
        error_probability,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ChannelParams;
    use std::cell::RefCell;

    /// Sends the message's first q bits at every use, XORed with the latest feedback.
    struct Repeat(usize);

    impl Encoder for Repeat {
        fn encode(&self, _n: usize, message: &[bool], feedback: &[BitVector]) -> BitVector {
            let mut bits = vec![false; self.0];
            for (slot, b) in bits.iter_mut().zip(message) {
                *slot = *b;
            }
            let mut x = BitVector::from_bits(&bits);
            if let Some(last) = feedback.last() {
                x ^= last;
            }
            x
        }
    }

    struct Fixed(Vec<bool>);

    impl Decoder for Fixed {
        fn decode(&self, _received: &[BitVector]) -> Vec<bool> {
            self.0.clone()
        }
    }

    /// Records how many feedback vectors it was offered at each use.
    struct Probe(RefCell<Vec<usize>>, usize);

    impl Encoder for Probe {
        fn encode(&self, _n: usize, _m: &[bool], feedback: &[BitVector]) -> BitVector {
            self.0.borrow_mut().push(feedback.len());
            BitVector::zeros(self.1)
        }
    }

    #[test]
    fn encoder_sees_strictly_past_feedback() {
        let cfg = SimConfig::new(ChannelParams::forward(3, 3, 1, 1), 2, 5).unwrap();
        let probe = Probe(RefCell::new(Vec::new()), 3);
        let dec = Fixed(vec![]);
        let res = run_session(&cfg, [&probe, &probe], [&dec, &dec], [&[], &[]]).unwrap();
        assert_eq!(*probe.0.borrow(), vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(res.trace.len(), 5);
        assert_eq!(res.p(User::One), Rational::ZERO);
    }

    #[test]
    fn complement_decoder_gets_everything_wrong() {
        let cfg = SimConfig::new(ChannelParams::forward(4, 2, 0, 0), 1, 1).unwrap();
        let m1 = vec![true, false, true, true];
        let enc = Repeat(4);
        let d1 = Fixed(m1.iter().map(|b| !b).collect());
        let d2 = Fixed(vec![]);
        let res = run_session(&cfg, [&enc, &enc], [&d1, &d2], [&m1, &[]]).unwrap();
        assert_eq!(res.p(User::One), Rational::ONE);
        assert_eq!(res.message_len(User::One), 4);
        assert_eq!(res.rate(User::One), Rational::from(4i64));
    }

    #[test]
    fn zero_messages_give_zero_errors() {
        let cfg = SimConfig::new(ChannelParams::new(5, 4, 3, 2, 5, 4), 1, 6).unwrap();
        let zeros = vec![false; 5];
        let enc = Repeat(5);
        let dec = Fixed(vec![false; 5]);
        let res = run_session(&cfg, [&enc, &enc], [&dec, &dec], [&zeros, &zeros]).unwrap();
        assert!(res.trace.iter().all(|t| t.x1.is_zero() && t.y2.is_zero() && t.fb1.is_zero()));
        assert_eq!(res.error_probability, [Rational::ZERO; 2]);
    }

    #[test]
    fn contract_violations() {
        let cfg = SimConfig::new(ChannelParams::forward(4, 4, 0, 0), 1, 2).unwrap();
        let short = Repeat(3);
        let ok = Repeat(4);
        let dec = Fixed(vec![true]);
        assert!(matches!(
            run_session(&cfg, [&ok, &short], [&dec, &dec], [&[true], &[true]]),
            Err(SimError::EncoderDimension { user: 2, channel_use: 1, expected: 4, found: 3 })
        ));
        assert!(matches!(
            run_session(&cfg, [&ok, &ok], [&dec, &dec], [&[true, false], &[true]]),
            Err(SimError::DecoderLength { user: 1, expected: 2, found: 1 })
        ));
    }

    #[test]
    fn feedback_follows_delay() {
        let cfg = SimConfig::new(ChannelParams::new(3, 3, 0, 0, 3, 3), 2, 4).unwrap();
        let enc = Repeat(3);
        let dec = Fixed(vec![true, true, true]);
        let m = vec![true, true, true];
        let res = run_session(&cfg, [&enc, &enc], [&dec, &dec], [&m, &m]).unwrap();
        assert!(res.trace[0].fb1.is_zero() && res.trace[1].fb1.is_zero());
        assert_eq!(res.trace[2].fb1, res.trace[0].y1);
        assert_eq!(res.trace[3].fb2, res.trace[1].y2);
    }
}
