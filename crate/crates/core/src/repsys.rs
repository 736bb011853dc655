//! The Q*3 representation of `[0, 1]`: stochastic columns, digit
//! extraction, and cylinder geometry.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::digits::{DigitSeq, DigitWord};
use crate::error::{Error, Result};
use crate::rational::in_unit_interval;
use crate::schedule::Schedule;
use crate::series::{self, DigitWeights};
use crate::Rational;

/// One column `(q0, q1, q2)` of the stochastic matrix, with its cut points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixColumn {
    q: [Rational; 3],
    beta: [Rational; 3],
}

impl MatrixColumn {
    pub fn new(q0: Rational, q1: Rational, q2: Rational) -> Result<Self> {
        for (index, value) in [&q0, &q1, &q2].into_iter().enumerate() {
            if !value.is_positive() {
                return Err(Error::NonPositiveProbability {
                    index,
                    value: value.clone(),
                });
            }
        }
        let sum = &q0 + &q1 + &q2;
        if !sum.is_one() {
            return Err(Error::ColumnSum(sum));
        }
        let beta = [Rational::zero(), q0.clone(), &q0 + &q1];
        Ok(Self {
            q: [q0, q1, q2],
            beta,
        })
    }

    /// The ternary column `(1/3, 1/3, 1/3)`.
    pub fn uniform() -> Self {
        let third = crate::ratio(1, 3);
        Self::new(third.clone(), third.clone(), third).expect("uniform column is stochastic")
    }

    pub fn q(&self, d: u8) -> &Rational {
        &self.q[d as usize]
    }

    pub fn probabilities(&self) -> &[Rational; 3] {
        &self.q
    }

    /// Left cut point of digit `d`: `0`, `q0`, `q0 + q1`.
    pub fn beta(&self, d: u8) -> &Rational {
        &self.beta[d as usize]
    }
}

/// Checked cut-point lookup.
pub fn beta_of(column: &MatrixColumn, d: u8) -> Result<Rational> {
    if d > 2 {
        return Err(Error::InvalidDigit(d));
    }
    Ok(column.beta(d).clone())
}

/// The infinite matrix, encoded as preamble columns plus a repeating block.
pub type ColumnSchedule = Schedule<MatrixColumn>;

impl DigitWeights for ColumnSchedule {
    fn cut(&self, k: usize, d: u8) -> &Rational {
        self.at(k).beta(d)
    }
    fn width(&self, k: usize, d: u8) -> &Rational {
        self.at(k).q(d)
    }
    fn preamble_len(&self) -> usize {
        Schedule::preamble_len(self)
    }
    fn period_len(&self) -> usize {
        Schedule::period_len(self)
    }
}

/// Result of digit extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    /// The first `depth` digits of the canonical expansion.
    pub word: DigitWord,
    /// Whether the complete expansion was identified within the budget.
    pub exact: bool,
    /// The complete canonical expansion, when `exact`.
    pub full: Option<DigitSeq>,
}

impl ColumnSchedule {
    /// The ternary representation.
    pub fn uniform() -> Self {
        Schedule::constant(MatrixColumn::uniform())
    }

    /// Column at position `k >= 1`.
    pub fn column_at(&self, k: usize) -> &MatrixColumn {
        self.at(k)
    }

    /// Exact value of the point with the given digits.
    pub fn value_of(&self, x: &DigitSeq) -> Rational {
        series::sum_exact(self, x)
    }

    /// `(left, length)` of the closed cylinder addressed by `w`.
    pub fn cylinder_interval(&self, w: &DigitWord) -> (Rational, Rational) {
        series::partial(self, w)
    }

    /// Largest cut-point ratio over all columns; every rank-`r` cylinder has
    /// length at most `max_probability^r`.
    pub fn max_probability(&self) -> Rational {
        self.defining_entries()
            .flat_map(|c| c.q.iter())
            .max()
            .cloned()
            .expect("schedules are nonempty")
    }

    /// Greedy digit extraction of `x` to `depth` digits.
    ///
    /// At a cut point the higher digit is taken, so expansions end in `(0)`
    /// rather than `(2)`. The state `(remainder, schedule phase)` fixes all
    /// later digits; its first repetition (checked at positions
    /// `1..=depth + 1`) yields the complete eventually periodic expansion.
    pub fn encode(&self, x: &Rational, depth: usize) -> Result<Encoding> {
        if depth == 0 {
            return Err(Error::InvalidDepth);
        }
        if !in_unit_interval(x) {
            return Err(Error::OutOfUnitInterval(x.to_string()));
        }
        let mut u = x.clone();
        let mut digits: Vec<u8> = Vec::with_capacity(depth);
        let mut seen: HashMap<(Rational, usize), usize> = HashMap::new();
        let mut full = None;
        for k in 1..=depth + 1 {
            if let Some(phase) = self.phase(k) {
                if let Some(&first) = seen.get(&(u.clone(), phase)) {
                    let prefix = DigitWord::new(digits[..first - 1].to_vec())?;
                    let tail = DigitWord::new(digits[first - 1..].to_vec())?;
                    full = Some(DigitSeq::new(prefix, tail)?.canonicalize());
                    break;
                }
                seen.insert((u.clone(), phase), k);
            }
            if k > depth {
                break;
            }
            let column = self.at(k);
            let d = if u.is_one() {
                2
            } else {
                (0..3u8).rev().find(|&d| *column.beta(d) <= u).unwrap_or(0)
            };
            u = (u - column.beta(d)) / column.q(d);
            digits.push(d);
        }
        let word = match &full {
            Some(seq) => seq.truncate(depth),
            None => DigitWord::new(digits)?,
        };
        Ok(Encoding {
            word,
            exact: full.is_some(),
            full,
        })
    }
}
