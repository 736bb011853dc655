//! Finite digit words and eventually periodic digit sequences over {0, 1, 2}.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over {0, 1, 2}; addresses the cylinder of its length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitWord(Vec<u8>);

impl DigitWord {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigit(bad));
        }
        Ok(Self(digits))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self` followed by `d`.
    ///
    /// Panics on a digit outside {0, 1, 2}.
    pub fn child(&self, d: u8) -> Self {
        assert!(d <= 2, "invalid digit {d}");
        let mut digits = Vec::with_capacity(self.0.len() + 1);
        digits.extend_from_slice(&self.0);
        digits.push(d);
        Self(digits)
    }

    pub fn children(&self) -> [DigitWord; 3] {
        [self.child(0), self.child(1), self.child(2)]
    }

    /// The point addressed by this word followed by `tail` repeated forever.
    pub fn then_repeat(&self, d: u8) -> DigitSeq {
        DigitSeq {
            prefix: self.clone(),
            tail: DigitWord(vec![d]),
        }
        .validated()
    }

    /// Every word of exactly `rank` digits, in lexicographic order.
    pub fn all_of_rank(rank: usize) -> impl Iterator<Item = DigitWord> {
        let count = 3usize.pow(rank as u32);
        (0..count).map(move |mut n| {
            let mut digits = vec![0u8; rank];
            for slot in digits.iter_mut().rev() {
                *slot = (n % 3) as u8;
                n /= 3;
            }
            DigitWord(digits)
        })
    }

    pub fn starts_with(&self, other: &DigitWord) -> bool {
        self.0.starts_with(&other.0)
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0'..='2' => Ok(c as u8 - b'0'),
                _ => Err(Error::Parse {
                    what: "digit word",
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self(digits))
    }
}

/// An eventually periodic digit sequence: `prefix` then `tail` forever.
///
/// Written as `prefix(tail)`, e.g. `"21(0)"` or `"(1)"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSeq {
    prefix: DigitWord,
    tail: DigitWord,
}

impl DigitSeq {
    pub fn new(prefix: DigitWord, tail: DigitWord) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { prefix, tail })
    }

    fn validated(self) -> Self {
        debug_assert!(!self.tail.is_empty());
        self
    }

    pub fn zero() -> Self {
        DigitWord::empty().then_repeat(0)
    }

    pub fn one() -> Self {
        DigitWord::empty().then_repeat(2)
    }

    pub fn prefix(&self) -> &DigitWord {
        &self.prefix
    }

    pub fn tail(&self) -> &DigitWord {
        &self.tail
    }

    /// Digit at 1-based position `k`.
    pub fn digit(&self, k: usize) -> u8 {
        let p = self.prefix.len();
        if k <= p {
            self.prefix.0[k - 1]
        } else {
            self.tail.0[(k - p - 1) % self.tail.len()]
        }
    }

    /// The first `n` digits as a word.
    pub fn truncate(&self, n: usize) -> DigitWord {
        DigitWord((1..=n).map(|k| self.digit(k)).collect())
    }

    /// Same sequence with the shortest tail period and the shortest prefix.
    pub fn normalized(&self) -> Self {
        let t = &self.tail.0;
        let period = (1..=t.len())
            .find(|&p| t.len().is_multiple_of(p) && (p..t.len()).all(|i| t[i] == t[i - p]))
            .unwrap_or(t.len());
        let mut tail: Vec<u8> = t[..period].to_vec();
        let mut prefix = self.prefix.0.clone();
        while let Some(&last) = prefix.last() {
            if last != tail[tail.len() - 1] {
                break;
            }
            prefix.pop();
            tail.rotate_right(1);
        }
        Self {
            prefix: DigitWord(prefix),
            tail: DigitWord(tail),
        }
    }

    /// Value-preserving rewrite that never ends in `(2)`, except for the
    /// point 1 whose only expansion is `(2)`.
    pub fn canonicalize(&self) -> Self {
        let n = self.normalized();
        if n.tail.0 != [2] {
            return n;
        }
        match n.prefix.0.iter().rposition(|&d| d != 2) {
            None => Self::one(),
            Some(i) => {
                let mut prefix = n.prefix.0[..=i].to_vec();
                prefix[i] += 1;
                DigitWord(prefix).then_repeat(0)
            }
        }
    }

    /// The other expansion of a cut point: `u a (0)` with `a != 0` pairs with
    /// `u (a-1) (2)`, and vice versa. `None` for sequences with a single
    /// expansion, including the points 0 and 1.
    pub fn dual_representation(&self) -> Option<Self> {
        let n = self.normalized();
        let (&last, rest) = n.prefix.0.split_last()?;
        let mut prefix = rest.to_vec();
        match n.tail.0.as_slice() {
            [0] if last != 0 => {
                prefix.push(last - 1);
                Some(DigitWord(prefix).then_repeat(2))
            }
            [2] if last != 2 => {
                prefix.push(last + 1);
                Some(DigitWord(prefix).then_repeat(0))
            }
            _ => None,
        }
    }
}

impl fmt::Display for DigitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.tail)
    }
}

impl FromStr for DigitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "digit sequence",
            input: s.to_string(),
        };
        let t = s.trim();
        let (prefix, rest) = t.split_once('(').ok_or_else(err)?;
        let tail = rest.strip_suffix(')').ok_or_else(err)?;
        let prefix: DigitWord = prefix.parse().map_err(|_| err())?;
        let tail: DigitWord = tail.parse().map_err(|_| err())?;
        Self::new(prefix, tail).map_err(|_| err())
    }
}
