//! Fixed-length binary level vectors over GF(2).

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use rand::Rng;

const WORD: usize = 64;

/// `q` binary levels; level 1 is the most significant.
///
/// Level `k` (1-based) is stored at bit `(k - 1) % 64` of word `(k - 1) / 64`,
/// so moving a level toward the least significant end is a left shift of the
/// packed words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitsError {
    #[error("invalid bit character {0:?}, expected '0' or '1'")]
    InvalidChar(char),
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Builds from levels listed most significant first.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i + 1, b);
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = BitVector::zeros(len);
        for w in &mut v.words {
            *w = rng.gen();
        }
        v.clear_tail();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Panics if `level` is outside `1..=len`.
    pub fn get(&self, level: usize) -> bool {
        assert!((1..=self.len).contains(&level), "level {level} out of 1..={}", self.len);
        let i = level - 1;
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, level: usize, value: bool) {
        assert!((1..=self.len).contains(&level), "level {level} out of 1..={}", self.len);
        let i = level - 1;
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (1..=self.len).map(|l| self.get(l)).collect()
    }

    /// `S^k v`: every level moves `k` places toward the least significant
    /// end and the top `k` levels become zero.
    pub fn down_shift(&self, k: usize) -> BitVector {
        let mut out = BitVector::zeros(self.len);
        if k >= self.len {
            return out;
        }
        let (word_shift, bit_shift) = (k / WORD, k % WORD);
        for dst in word_shift..out.words.len() {
            let src = dst - word_shift;
            let mut w = self.words[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                w |= self.words[src - 1] >> (WORD - bit_shift);
            }
            out.words[dst] = w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "dimension mismatch");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// `0`/`1` characters, most significant level first.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.to_bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitsError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitVector::from_bits(&bits))
    }
}
