//! Self-affine structure of the graph of `f`: the three affine maps, exact
//! graph samples, self-affinity residuals and box counting.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gfun::FunctionSpec;
use crate::rational::to_f64;
use crate::{int, Rational};

/// Largest number of cylinders a graph sample or box count may visit.
pub const MAX_GRAPH_POINTS: usize = 3usize.pow(13);

/// `(x, y) -> (qx x + bx, gy y + dy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap2D {
    pub qx: Rational,
    pub bx: Rational,
    pub gy: Rational,
    pub dy: Rational,
}

impl AffineMap2D {
    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (&self.qx * x + &self.bx, &self.gy * y + &self.dy)
    }
}

/// The maps `phi_i` with `Gamma_i = phi_i(Gamma)`, one per first digit.
///
/// Requires both schedules to be constant and every `g_i` nonzero.
pub fn ifs_maps(f: &FunctionSpec) -> Result<[AffineMap2D; 3]> {
    if !f.x_schedule.is_constant() || !f.eps.schedule().is_constant() {
        return Err(Error::NonConstantSchedule);
    }
    let column = f.x_schedule.at(1);
    let g = f.g_column_at(1);
    if let Some(i) = (0..3).find(|&i| g.g(i).is_zero()) {
        return Err(Error::DegenerateMap(i as usize));
    }
    Ok([0u8, 1, 2].map(|i| AffineMap2D {
        qx: column.q(i).clone(),
        bx: column.beta(i).clone(),
        gy: g.g(i).clone(),
        dy: g.delta(i).clone(),
    }))
}

/// Points on the graph of `f`.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSample {
    /// `y == f(x)` exactly.
    Exact(Vec<(Rational, Rational)>),
    /// `|y - f(x)| <= tol`.
    Approximate { points: Vec<(f64, f64)>, tol: f64 },
}

impl GraphSample {
    pub fn len(&self) -> usize {
        match self {
            GraphSample::Exact(p) => p.len(),
            GraphSample::Approximate { points, .. } => points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GraphSample::Exact(_))
    }

    pub fn to_f64_points(&self) -> Vec<(f64, f64)> {
        match self {
            GraphSample::Exact(p) => p.iter().map(|(x, y)| (to_f64(x), to_f64(y))).collect(),
            GraphSample::Approximate { points, .. } => points.clone(),
        }
    }
}

/// The left endpoints of all rank-`rank` cylinders plus `(1, 1)`, exactly,
/// sorted by `x`.
pub fn graph_sample(f: &FunctionSpec, rank: usize) -> Result<GraphSample> {
    let count = 3usize
        .checked_pow(rank as u32)
        .filter(|&n| n <= MAX_GRAPH_POINTS)
        .ok_or(Error::PointBudgetExceeded {
            rank,
            budget: MAX_GRAPH_POINTS,
        })?;
    let mut points = Vec::with_capacity(count + 1);
    points.extend(
        f.cylinders_of_rank(rank)
            .into_iter()
            .map(|c| (c.left, c.base)),
    );
    points.push((int(1), int(1)));
    Ok(GraphSample::Exact(points))
}

/// `count >= 2` equally spaced floating points evaluated to within `tol`.
pub fn graph_sample_approx(f: &FunctionSpec, count: usize, tol: f64) -> Result<GraphSample> {
    if count < 2 {
        return Err(Error::InvalidDepth);
    }
    let points = (0..count)
        .map(|i| {
            let x = i as f64 / (count - 1) as f64;
            f.eval_approx(x, tol).map(|y| (x, y))
        })
        .collect::<Result<_>>()?;
    Ok(GraphSample::Approximate { points, tol })
}

/// Digits budget when re-encoding mapped sample points.
const ENCODE_BUDGET: usize = 4096;

/// `max |f(phi_i^x(x)) - phi_i^y(y)|` over the sample and the three maps,
/// with `f` re-evaluated from a fresh expansion of each mapped `x`.
pub fn self_affine_residual(f: &FunctionSpec, sample: &GraphSample) -> Result<Rational> {
    let maps = ifs_maps(f)?;
    let GraphSample::Exact(points) = sample else {
        return Err(Error::ApproximateSample);
    };
    let mut worst = Rational::zero();
    for (x, y) in points {
        for map in &maps {
            let (mx, my) = map.apply(x, y);
            let enc = f.x_schedule.encode(&mx, ENCODE_BUDGET)?;
            let full = enc
                .full
                .ok_or_else(|| Error::InexactEncoding(mx.clone(), ENCODE_BUDGET))?;
            let residual = (f.eval_exact(&full) - my).abs();
            if residual > worst {
                worst = residual;
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxDimension {
    /// Least-squares slope of `ln(count)` against `ln(n)`.
    pub estimate: f64,
    /// `(n, occupied cells)` per requested scale.
    pub counts: Vec<(usize, usize)>,
}

/// Smallest rank whose cylinders are all at most `1/n` long.
fn rank_for_scale(f: &FunctionSpec, n: usize) -> usize {
    let q = f.x_schedule.max_probability();
    let target = Rational::new(BigInt::one(), BigInt::from(n));
    let mut length = Rational::one();
    let mut rank = 0;
    while length > target {
        length *= &q;
        rank += 1;
    }
    rank
}

fn cell_span(lo: &Rational, hi: &Rational, n: usize) -> (usize, usize) {
    let scale = Rational::from_integer(BigInt::from(n));
    let idx = |r: Rational| r.to_integer().to_usize().unwrap_or(0).min(n - 1);
    let first = idx((lo * &scale).floor());
    let last = idx((hi * &scale).ceil() - int(1)).max(first);
    (first, last)
}

/// Occupied cells of the `n x n` grid over the unit square, covering each
/// rank-`r` cylinder (`r` from [`rank_for_scale`]) by its exact `x` extent
/// times its exact `f` range.
pub fn box_count(f: &FunctionSpec, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidScales(format!("grid size {n} is below 2")));
    }
    let rank = rank_for_scale(f, n);
    if 3usize
        .checked_pow(rank as u32)
        .is_none_or(|c| c > MAX_GRAPH_POINTS)
    {
        return Err(Error::PointBudgetExceeded {
            rank,
            budget: MAX_GRAPH_POINTS,
        });
    }
    let mut cells: HashSet<(usize, usize)> = HashSet::new();
    for c in f.cylinders_of_rank(rank) {
        let (c0, c1) = cell_span(&c.left, &c.right(), n);
        let range = c.range();
        let (r0, r1) = cell_span(&range.lo, &range.hi, n);
        for col in c0..=c1 {
            for row in r0..=r1 {
                cells.insert((col, row));
            }
        }
    }
    Ok(cells.len())
}

/// Box-counting estimate over the given grid sizes. With a single scale the
/// estimate is `ln(count) / ln(n)`.
pub fn box_dimension(f: &FunctionSpec, scales: &[usize]) -> Result<BoxDimension> {
    if scales.is_empty() {
        return Err(Error::InvalidScales("no scales given".into()));
    }
    let counts = scales
        .iter()
        .map(|&n| box_count(f, n).map(|c| (n, c)))
        .collect::<Result<Vec<_>>>()?;
    let logs: Vec<(f64, f64)> = counts
        .iter()
        .map(|&(n, c)| ((n as f64).ln(), (c as f64).ln()))
        .collect();
    let estimate = least_squares_slope(&logs).unwrap_or(logs[0].1 / logs[0].0);
    Ok(BoxDimension { estimate, counts })
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
