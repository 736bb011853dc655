//! Regime classification, nowhere-monotonicity witnesses, plateau
//! enumeration and plateau measure, and cylinder derivative probes.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::digits::{DigitSeq, DigitWord};
use crate::gfun::{EpsilonSchedule, FunctionSpec};
use crate::{ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &Rational) -> Self {
        match x.cmp(&Rational::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    /// Every epsilon below 1/2.
    StrictlyIncreasing,
    /// Every epsilon equal to 1/2.
    CantorSingular,
    /// Every epsilon above 1/2.
    NowhereMonotone,
    Mixed,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeTag::StrictlyIncreasing => "StrictlyIncreasing",
            RegimeTag::CantorSingular => "CantorSingular",
            RegimeTag::NowhereMonotone => "NowhereMonotone",
            RegimeTag::Mixed => "Mixed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regime {
    pub tag: RegimeTag,
    /// Sign of `g1` at each defining position (preamble, then one period).
    pub per_index: Vec<Sign>,
}

pub fn classify_regime(eps: &EpsilonSchedule) -> Regime {
    let per_index: Vec<Sign> = eps
        .columns()
        .defining_entries()
        .map(|c| Sign::of(c.g(1)))
        .collect();
    let all = |s: Sign| per_index.iter().all(|&x| x == s);
    let tag = if all(Sign::Positive) {
        RegimeTag::StrictlyIncreasing
    } else if all(Sign::Zero) {
        RegimeTag::CantorSingular
    } else if all(Sign::Negative) {
        RegimeTag::NowhereMonotone
    } else {
        RegimeTag::Mixed
    };
    Regime { tag, per_index }
}

/// Signs of the increments on the three children of `w`.
pub fn subcylinder_signs(f: &FunctionSpec, w: &DigitWord) -> [Sign; 3] {
    let parent = f.increment(w);
    let g = f.g_column_at(w.len() + 1);
    [0, 1, 2].map(|d| Sign::of(&(&parent * g.g(d))))
}

/// The digit alphabet `{0, 2}` of the Cantor-type carrier set, up to a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CantorCarrier {
    pub rank: usize,
}

impl CantorCarrier {
    pub const DIGITS: [u8; 2] = [0, 2];

    pub fn new(rank: usize) -> Self {
        Self { rank }
    }

    pub fn contains(&self, w: &DigitWord) -> bool {
        w.len() <= self.rank && w.digits().iter().all(|d| Self::DIGITS.contains(d))
    }

    /// All carrier words of exactly `self.rank` digits, lexicographically.
    pub fn words(&self) -> Vec<DigitWord> {
        let mut words = vec![DigitWord::empty()];
        for _ in 0..self.rank {
            words = words
                .iter()
                .flat_map(|w| Self::DIGITS.map(|d| w.child(d)))
                .collect();
        }
        words
    }
}

/// Minimal words of rank `<= max_rank` whose increment vanishes, i.e. the
/// maximal cylinders on which `f` is constant. Sorted lexicographically,
/// which is also left-to-right order.
///
/// A factor `g_{d k}` vanishes only for `d = 1` and `eps_k = 1/2`, so with
/// `eps == 1/2` everywhere these are exactly the words `v 1` with `v` over
/// `{0, 2}`.
pub fn plateau_cylinders(f: &FunctionSpec, max_rank: usize) -> Vec<DigitWord> {
    let mut found = Vec::new();
    let mut stack = vec![DigitWord::empty()];
    while let Some(w) = stack.pop() {
        if w.len() == max_rank {
            continue;
        }
        let g = f.g_column_at(w.len() + 1);
        for d in (0..3).rev() {
            let child = w.child(d);
            if g.g(d).is_zero() {
                found.push(child);
            } else {
                stack.push(child);
            }
        }
    }
    found.sort();
    found
}

/// Total `x`-length of the plateau cylinders up to `max_rank`.
///
/// Whether a factor vanishes depends only on `(digit, position)`, so the
/// sum aggregates level by level: with `L_k` the total length of the rank-`k`
/// cylinders still carrying a nonzero increment, rank `k+1` contributes
/// `L_k * sum_{g_{d,k+1} = 0} q_{d,k+1}`.
pub fn plateau_measure(f: &FunctionSpec, max_rank: usize) -> Rational {
    let mut live = Rational::one();
    let mut measure = Rational::zero();
    for k in 1..=max_rank {
        let column = f.x_schedule.at(k);
        let g = f.g_column_at(k);
        let (zero, nonzero): (Vec<u8>, Vec<u8>) = (0..3).partition(|&d| g.g(d).is_zero());
        let mass = |ds: &[u8]| {
            ds.iter()
                .fold(Rational::zero(), |acc, &d| acc + column.q(d))
        };
        measure += &live * mass(&zero);
        live *= mass(&nonzero);
    }
    measure
}

/// `prod_{j<=k} g_{a_j j} / q_{a_j j}` for `k = 1..=m`: the ratio of the
/// increment of `f` to the length on the rank-`k` cylinder around `x`.
pub fn derivative_ratios(f: &FunctionSpec, x: &DigitSeq, m: usize) -> Vec<Rational> {
    let mut ratio_acc = Rational::one();
    (1..=m)
        .map(|k| {
            let d = x.digit(k);
            ratio_acc *= f.g_column_at(k).g(d) / f.x_schedule.at(k).q(d);
            ratio_acc.clone()
        })
        .collect()
}

/// `1 - (2/3)^rank`, the plateau measure of the uniform Cantor case.
pub fn uniform_cantor_plateau_measure(rank: usize) -> Rational {
    Rational::one() - num_traits::pow(ratio(2, 3), rank)
}
