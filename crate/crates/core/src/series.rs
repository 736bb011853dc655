//! Exact summation of Q*-type series `c(a_1,1) + sum_k c(a_k,k) prod_{j<k} w(a_j,j)`.
//!
//! Both the representation of `x` (cut points beta, widths q) and the function
//! value (cut points delta, widths g) are series of this shape, so a single
//! routine serves both.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::digits::{DigitSeq, DigitWord};
use crate::Rational;

/// Per-position cut points and widths of a digit system.
pub(crate) trait DigitWeights {
    fn cut(&self, k: usize, d: u8) -> &Rational;
    fn width(&self, k: usize, d: u8) -> &Rational;
    fn preamble_len(&self) -> usize;
    fn period_len(&self) -> usize;
}

/// Partial sum over a finite word and the product of its widths.
pub(crate) fn partial<W: DigitWeights>(weights: &W, word: &DigitWord) -> (Rational, Rational) {
    let mut sum = Rational::zero();
    let mut prod = Rational::one();
    for (i, &d) in word.digits().iter().enumerate() {
        let k = i + 1;
        sum += &prod * weights.cut(k, d);
        prod *= weights.width(k, d);
    }
    (sum, prod)
}

/// Exact value of the full series for an eventually periodic sequence.
///
/// Past position `max(|prefix|, preamble)` the pair (digit phase, schedule
/// phase) cycles with period `lcm(|tail|, period)`, so the remaining tail
/// `T` satisfies `T = c + r T` with `|r| < 1`.
pub(crate) fn sum_exact<W: DigitWeights>(weights: &W, seq: &DigitSeq) -> Rational {
    let start = seq.prefix().len().max(weights.preamble_len());
    let mut sum = Rational::zero();
    let mut prod = Rational::one();
    for k in 1..=start {
        let d = seq.digit(k);
        sum += &prod * weights.cut(k, d);
        prod *= weights.width(k, d);
    }
    if prod.is_zero() {
        return sum;
    }
    let hyper = seq.tail().len().lcm(&weights.period_len());
    let mut c = Rational::zero();
    let mut r = Rational::one();
    for k in start + 1..=start + hyper {
        let d = seq.digit(k);
        c += &r * weights.cut(k, d);
        r *= weights.width(k, d);
    }
    let tail = c / (Rational::one() - r);
    sum + prod * tail
}
