//! Ultimately periodic words `u·v^ω`.

use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// An ultimately periodic word given by a finite prefix and a nonempty period.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpWord {
    prefix: Word,
    period: Word,
}

impl UpWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(UpWord { prefix, period })
    }

    /// Parses both parts with [`Alphabet::parse_word`].
    pub fn parse(alphabet: &Alphabet, prefix: &str, period: &str) -> Result<Self> {
        UpWord::new(alphabet.parse_word(prefix)?, alphabet.parse_word(period)?)
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    pub fn into_parts(self) -> (Word, Word) {
        (self.prefix, self.period)
    }

    /// Letter at position `i` of `u·v^ω`.
    pub fn letter(&self, i: usize) -> Symbol {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `len` letters of `u·v^ω`.
    pub fn prefix_of_len(&self, len: usize) -> Word {
        (0..len).map(|i| self.letter(i)).collect()
    }

    /// Whether both pairs denote the same infinite word.
    pub fn same_word(&self, other: &UpWord) -> bool {
        up_equal(self, other)
    }

    /// The unique representative: primitive period, shortest prefix.
    pub fn canonical(&self) -> UpWord {
        canonicalize(self)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayUp(self, alphabet)
    }
}

impl fmt::Debug for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.prefix, self.period)
    }
}

struct DisplayUp<'a>(&'a UpWord, &'a Alphabet);

impl fmt::Display for DisplayUp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.1.format_word(&self.0.prefix),
            self.1.format_word(&self.0.period)
        )
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Whether `u1·v1^ω = u2·v2^ω`.
///
/// Compares letters up to `max(|u1|, |u2|) + 2·lcm(|v1|, |v2|)`; past
/// `max(|u1|, |u2|)` both streams are periodic with a period dividing the
/// lcm, so agreement on that window implies equality.
pub fn up_equal(w1: &UpWord, w2: &UpWord) -> bool {
    let bound = w1.prefix.len().max(w2.prefix.len()) + 2 * lcm(w1.period.len(), w2.period.len());
    (0..bound).all(|i| w1.letter(i) == w2.letter(i))
}

/// The shortest `p` with `v = p^m` for some `m ≥ 1`. Returns an empty word
/// only for an empty input.
pub fn primitive_root(v: &[Symbol]) -> Word {
    let n = v.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| v[i] == v[i - p]) {
            return v[..p].to_vec();
        }
    }
    v.to_vec()
}

/// Canonical representative of `u·v^ω`: the period is replaced by its
/// primitive root, then while the prefix ends with the period's last letter,
/// that letter is dropped from the prefix and the period is rotated right by
/// one.
pub fn canonicalize(w: &UpWord) -> UpWord {
    let mut period = primitive_root(&w.period);
    let mut prefix = w.prefix.clone();
    while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
        if a != b {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    UpWord { prefix, period }
}

/// The first `len` letters of `u·v^ω`.
pub fn up_prefix(w: &UpWord, len: usize) -> Word {
    w.prefix_of_len(len)
}
