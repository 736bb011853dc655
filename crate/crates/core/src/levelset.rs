//! Level sets `f^{-1}(y0)` by exact branch and bound over the cylinder tree.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::classify::{classify_regime, RegimeTag};
use crate::digits::DigitWord;
use crate::error::{Error, Result};
use crate::gfun::{Cylinder, CylinderRange, Endpoint, FunctionSpec};
use crate::rational::in_unit_interval;
use crate::Rational;

/// What is certified about a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `f - y0` has strictly opposite signs at the two endpoints.
    SignChange,
    /// `f` equals `y0` at an endpoint (or on the whole plateau).
    EndpointHit,
    /// Only `y0 in f(cylinder)` is known.
    RangeOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRegion {
    pub word: DigitWord,
    pub x_interval: (Rational, Rational),
    pub f_range: (Rational, Rational),
    /// `f` at the left and right endpoints.
    pub f_endpoints: (Rational, Rational),
    pub witness: Witness,
}

impl SolutionRegion {
    fn new(cylinder: Cylinder, y0: &Rational) -> Self {
        let CylinderRange { lo, hi, .. } = cylinder.range();
        let f_left = cylinder.base.clone();
        let f_right = cylinder.f_right();
        let witness = if f_left == *y0 || f_right == *y0 {
            Witness::EndpointHit
        } else if ((&f_left - y0) * (&f_right - y0)).is_negative() {
            Witness::SignChange
        } else {
            Witness::RangeOnly
        };
        Self {
            x_interval: (cylinder.left.clone(), cylinder.right()),
            f_range: (lo, hi),
            f_endpoints: (f_left, f_right),
            word: cylinder.word,
            witness,
        }
    }

    /// The endpoint holding the only solution of `f(x) = y0` in a
    /// non-constant region hit at an endpoint.
    ///
    /// Endpoint values are the extremes of `f` on a cylinder, and
    /// `f(t) = 0` only at `t = 0`, `f(t) = 1` only at `t = 1`; hence each
    /// extreme of a cylinder with nonzero increment is attained only at its
    /// endpoint.
    fn sole_solution(&self, y0: &Rational) -> Option<Endpoint> {
        if self.is_plateau() {
            None
        } else if self.f_endpoints.0 == *y0 {
            Some(Endpoint::Left)
        } else if self.f_endpoints.1 == *y0 {
            Some(Endpoint::Right)
        } else {
            None
        }
    }

    pub fn is_plateau(&self) -> bool {
        self.f_range.0 == self.f_range.1
    }

    /// Endpoints `x` with `f(x) == y0`.
    pub fn endpoint_hits<'a>(
        &'a self,
        y0: &'a Rational,
    ) -> impl Iterator<Item = &'a Rational> + 'a {
        [
            (&self.x_interval.0, &self.f_endpoints.0),
            (&self.x_interval.1, &self.f_endpoints.1),
        ]
        .into_iter()
        .filter(move |(_, fy)| *fy == y0)
        .map(|(x, _)| x)
    }
}

/// Cylinders of rank `depth` (or plateau cylinders of lower rank) that may
/// contain solutions of `f(x) = y0`, sorted by `x`.
///
/// Children whose exact range excludes `y0` are pruned, so every solution
/// lies in some returned region. A plateau at level `y0` is returned whole
/// and not refined. A region whose only solution is an endpoint already
/// covered by a neighbour is dropped: a right endpoint `x < 1` always
/// belongs to the next cylinder, a left endpoint only when a plateau holds it.
pub fn preimage_regions(
    f: &FunctionSpec,
    y0: &Rational,
    depth: usize,
) -> Result<Vec<SolutionRegion>> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    if !in_unit_interval(y0) {
        return Ok(Vec::new());
    }
    let mut plateaus = Vec::new();
    let mut frontier = vec![Cylinder::root()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for parent in &frontier {
            for d in 0..3 {
                let child = parent.child(f, d);
                if child.increment.is_zero() {
                    if child.base == *y0 {
                        plateaus.push(child);
                    }
                } else if child.range().contains(y0) {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    let plateaus: Vec<SolutionRegion> = plateaus
        .into_iter()
        .map(|c| SolutionRegion::new(c, y0))
        .collect();
    let in_plateau = |x: &Rational| {
        plateaus
            .iter()
            .any(|p| p.x_interval.0 <= *x && *x <= p.x_interval.1)
    };
    let one = Rational::from_integer(1.into());
    let mut regions: Vec<SolutionRegion> = frontier
        .into_iter()
        .map(|c| SolutionRegion::new(c, y0))
        .filter(|r| match r.sole_solution(y0) {
            Some(Endpoint::Right) => r.x_interval.1 == one,
            Some(Endpoint::Left) => !in_plateau(&r.x_interval.0),
            None => true,
        })
        .chain(plateaus.iter().cloned())
        .collect();
    regions.sort_by(|a, b| a.x_interval.0.cmp(&b.x_interval.0));
    Ok(regions)
}

/// The rank-`depth` cylinder whose range contains `y0` for a strictly
/// increasing `f`. At a shared boundary value the higher digit wins.
pub fn invert_monotone(f: &FunctionSpec, y0: &Rational, depth: usize) -> Result<DigitWord> {
    if classify_regime(&f.eps).tag != RegimeTag::StrictlyIncreasing {
        return Err(Error::NotStrictlyIncreasing);
    }
    if !in_unit_interval(y0) {
        return Err(Error::OutOfUnitInterval(y0.to_string()));
    }
    let mut cylinder = Cylinder::root();
    for _ in 0..depth {
        cylinder = (0..3)
            .rev()
            .map(|d| cylinder.child(f, d))
            .find(|c| c.range().contains(y0))
            .expect("children of a strictly increasing cylinder tile its range");
    }
    Ok(cylinder.word)
}

/// Certified lower bound on `|f^{-1}(y0)|`: one solution inside each
/// sign-change region plus every distinct endpoint where `f = y0`.
pub fn root_count_lower_bound(f: &FunctionSpec, y0: &Rational, depth: usize) -> Result<usize> {
    let regions = preimage_regions(f, y0, depth)?;
    let sign_changes = regions
        .iter()
        .filter(|r| r.witness == Witness::SignChange)
        .count();
    let hits: BTreeSet<&Rational> = regions
        .iter()
        .filter(|r| r.witness == Witness::EndpointHit)
        .flat_map(|r| r.endpoint_hits(y0))
        .collect();
    Ok(sign_changes + hits.len())
}
