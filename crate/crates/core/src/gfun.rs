//! The function family `f`: image-side columns derived from the epsilon
//! schedule, exact and floating evaluation, cylinder increments and ranges.

use num_traits::{One, ToPrimitive, Zero};

use crate::digits::{DigitSeq, DigitWord};
use crate::error::{Error, Result};
use crate::rational::{from_f64, in_unit_interval};
use crate::repsys::ColumnSchedule;
use crate::schedule::Schedule;
use crate::series::{self, DigitWeights};
use crate::{int, ratio, Rational};

/// Image-side widths `g` and cut points `delta` for one position.
///
/// `g0 = g2 = (1 + eps) / 3`, `g1 = (1 - 2 eps) / 3`; `g1` is negative once
/// `eps > 1/2`, so the cut points `d1 = g0` and `d2 = g0 + g1` may be out
/// of order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GColumn {
    g: [Rational; 3],
    delta: [Rational; 3],
}

impl GColumn {
    pub fn from_epsilon(eps: &Rational) -> Self {
        let third = ratio(1, 3);
        let g0 = (int(1) + eps) * &third;
        let g1 = (int(1) - int(2) * eps) * &third;
        let delta = [Rational::zero(), g0.clone(), &g0 + &g1];
        Self {
            g: [g0.clone(), g1, g0],
            delta,
        }
    }

    pub fn g(&self, d: u8) -> &Rational {
        &self.g[d as usize]
    }

    pub fn delta(&self, d: u8) -> &Rational {
        &self.delta[d as usize]
    }

    pub fn widths(&self) -> &[Rational; 3] {
        &self.g
    }

    pub fn cuts(&self) -> &[Rational; 3] {
        &self.delta
    }
}

/// The sequence `(eps_k)`, each in `[0, 1]`, with its derived columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSchedule {
    eps: Schedule<Rational>,
    columns: Schedule<GColumn>,
    approx: Schedule<[f64; 6]>,
}

impl EpsilonSchedule {
    pub fn new(preamble: Vec<Rational>, period: Vec<Rational>) -> Result<Self> {
        let eps = Schedule::new(preamble, period)?;
        if let Some(bad) = eps.defining_entries().find(|e| !in_unit_interval(e)) {
            return Err(Error::EpsilonOutOfRange(bad.clone()));
        }
        let columns = eps.map(GColumn::from_epsilon);
        let approx = columns.map(|c| {
            let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
            [
                f(c.g(0)),
                f(c.g(1)),
                f(c.g(2)),
                f(c.delta(0)),
                f(c.delta(1)),
                f(c.delta(2)),
            ]
        });
        Ok(Self {
            eps,
            columns,
            approx,
        })
    }

    pub fn constant(eps: Rational) -> Result<Self> {
        Self::new(Vec::new(), vec![eps])
    }

    pub fn epsilon_at(&self, k: usize) -> &Rational {
        self.eps.at(k)
    }

    pub fn g_column_at(&self, k: usize) -> &GColumn {
        self.columns.at(k)
    }

    pub fn schedule(&self) -> &Schedule<Rational> {
        &self.eps
    }

    pub fn columns(&self) -> &Schedule<GColumn> {
        &self.columns
    }
}

impl DigitWeights for EpsilonSchedule {
    fn cut(&self, k: usize, d: u8) -> &Rational {
        self.columns.at(k).delta(d)
    }
    fn width(&self, k: usize, d: u8) -> &Rational {
        self.columns.at(k).g(d)
    }
    fn preamble_len(&self) -> usize {
        self.columns.preamble_len()
    }
    fn period_len(&self) -> usize {
        self.columns.period_len()
    }
}

/// Which end of a cylinder attains an extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Left,
    Right,
}

/// Exact image of a cylinder under `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderRange {
    pub lo: Rational,
    pub hi: Rational,
    pub argmin_at: Endpoint,
    pub argmax_at: Endpoint,
}

impl CylinderRange {
    pub fn contains(&self, y: &Rational) -> bool {
        self.lo <= *y && *y <= self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    fn from_base(base: Rational, increment: &Rational) -> Self {
        use std::cmp::Ordering::*;
        match increment.cmp(&Rational::zero()) {
            Greater => Self {
                hi: &base + increment,
                lo: base,
                argmin_at: Endpoint::Left,
                argmax_at: Endpoint::Right,
            },
            Less => Self {
                lo: &base + increment,
                hi: base,
                argmin_at: Endpoint::Right,
                argmax_at: Endpoint::Left,
            },
            Equal => Self {
                hi: base.clone(),
                lo: base,
                argmin_at: Endpoint::Left,
                argmax_at: Endpoint::Left,
            },
        }
    }
}

/// A cylinder with its geometry and the values of `f` on it, built up
/// incrementally from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub word: DigitWord,
    /// Left endpoint in `x`.
    pub left: Rational,
    pub length: Rational,
    /// `f` at the left endpoint.
    pub base: Rational,
    /// `f(right) - f(left)`.
    pub increment: Rational,
}

impl Cylinder {
    pub fn root() -> Self {
        Self {
            word: DigitWord::empty(),
            left: Rational::zero(),
            length: Rational::one(),
            base: Rational::zero(),
            increment: Rational::one(),
        }
    }

    pub fn child(&self, f: &FunctionSpec, d: u8) -> Self {
        let k = self.word.len() + 1;
        let column = f.x_schedule.at(k);
        let g = f.eps.g_column_at(k);
        Self {
            word: self.word.child(d),
            left: &self.left + &self.length * column.beta(d),
            length: &self.length * column.q(d),
            base: &self.base + &self.increment * g.delta(d),
            increment: &self.increment * g.g(d),
        }
    }

    pub fn right(&self) -> Rational {
        &self.left + &self.length
    }

    pub fn f_right(&self) -> Rational {
        &self.base + &self.increment
    }

    pub fn range(&self) -> CylinderRange {
        CylinderRange::from_base(self.base.clone(), &self.increment)
    }
}

/// Full parameterization of `f`: the matrix schedule fixing how digits map
/// to points, and the epsilon schedule fixing the function values.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub x_schedule: ColumnSchedule,
    pub eps: EpsilonSchedule,
}

impl FunctionSpec {
    pub fn new(x_schedule: ColumnSchedule, eps: EpsilonSchedule) -> Self {
        Self { x_schedule, eps }
    }

    /// Ternary matrix with a constant epsilon.
    pub fn uniform(eps: Rational) -> Result<Self> {
        Ok(Self::new(
            ColumnSchedule::uniform(),
            EpsilonSchedule::constant(eps)?,
        ))
    }

    pub fn g_column_at(&self, k: usize) -> &GColumn {
        self.eps.g_column_at(k)
    }

    /// Exact `f(x)` for an eventually periodic digit sequence.
    pub fn eval_exact(&self, x: &DigitSeq) -> Rational {
        series::sum_exact(&self.eps, x)
    }

    /// `f` at the left endpoint of the cylinder `w`, i.e. at `w(0)`.
    pub fn eval_left(&self, w: &DigitWord) -> Rational {
        series::partial(&self.eps, w).0
    }

    /// Floating evaluation at a real `x`, accurate to `tol`.
    ///
    /// Digits are extracted exactly from the binary value of `x`; the series
    /// is truncated at depth `m = ceil(ln tol / ln(2/3))`, where the
    /// remainder is bounded by `prod |g| <= (2/3)^m`.
    pub fn eval_approx(&self, x: f64, tol: f64) -> Result<f64> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol));
        }
        let exact_x = from_f64(x)
            .filter(in_unit_interval)
            .ok_or_else(|| Error::OutOfUnitInterval(x.to_string()))?;
        let depth = ((tol.ln() / (2.0f64 / 3.0).ln()).ceil() as usize).max(1);
        let encoding = self.x_schedule.encode(&exact_x, depth)?;
        let mut sum = 0.0;
        let mut prod = 1.0;
        for (i, &d) in encoding.word.digits().iter().enumerate() {
            let column = self.eps.approx.at(i + 1);
            sum += prod * column[3 + d as usize];
            prod *= column[d as usize];
        }
        Ok(sum)
    }

    /// `f(w(2)) - f(w(0))`, which is the product of the `g` factors along `w`.
    pub fn increment(&self, w: &DigitWord) -> Rational {
        series::partial(&self.eps, w).1
    }

    /// Exact image of the cylinder `w`; extrema sit at its endpoints.
    pub fn range_on_cylinder(&self, w: &DigitWord) -> CylinderRange {
        let (base, increment) = series::partial(&self.eps, w);
        CylinderRange::from_base(base, &increment)
    }

    /// `f(dual(x)) - f(x)`; zero for every parameterization.
    pub fn dual_consistency(&self, x: &DigitSeq) -> Result<Rational> {
        let dual = x
            .dual_representation()
            .ok_or_else(|| Error::NoDualRepresentation(x.to_string()))?;
        Ok(self.eval_exact(&dual) - self.eval_exact(x))
    }

    pub fn cylinder(&self, w: &DigitWord) -> Cylinder {
        w.digits()
            .iter()
            .fold(Cylinder::root(), |c, &d| c.child(self, d))
    }

    /// All cylinders of the given rank, left to right.
    pub fn cylinders_of_rank(&self, rank: usize) -> Vec<Cylinder> {
        let mut level = vec![Cylinder::root()];
        for _ in 0..rank {
            level = level
                .iter()
                .flat_map(|c| (0..3).map(move |d| c.child(self, d)))
                .collect();
        }
        level
    }
}

/// `g_{c_j j}` product computed directly from the epsilons, without the
/// cached columns.
#[cfg(test)]
pub(crate) fn product_from_epsilons(f: &FunctionSpec, w: &DigitWord) -> Rational {
    w.digits()
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let e = f.eps.epsilon_at(i + 1);
            if d == 1 {
                (int(1) - int(2) * e) / int(3)
            } else {
                (int(1) + e) / int(3)
            }
        })
        .fold(int(1), |acc, g| acc * g)
}
