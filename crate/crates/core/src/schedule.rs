use crate::error::{Error, Result};

/// A finitely specified infinite sequence: a preamble followed by a block
/// repeated forever. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule<T> {
    preamble: Vec<T>,
    period: Vec<T>,
}

impl<T> Schedule<T> {
    pub fn new(preamble: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { preamble, period })
    }

    pub fn constant(value: T) -> Self {
        Self {
            preamble: Vec::new(),
            period: vec![value],
        }
    }

    /// Entry at position `k >= 1`.
    ///
    /// Panics if `k == 0`.
    pub fn at(&self, k: usize) -> &T {
        assert!(k >= 1, "schedule positions are 1-based");
        if k <= self.preamble.len() {
            &self.preamble[k - 1]
        } else {
            &self.period[(k - self.preamble.len() - 1) % self.period.len()]
        }
    }

    pub fn preamble(&self) -> &[T] {
        &self.preamble
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    pub fn preamble_len(&self) -> usize {
        self.preamble.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// The preamble followed by one copy of the period; this determines
    /// every position.
    pub fn defining_entries(&self) -> impl Iterator<Item = &T> {
        self.preamble.iter().chain(self.period.iter())
    }

    /// Phase of position `k` within the periodic part, or `None` while `k`
    /// is still in the preamble.
    pub fn phase(&self, k: usize) -> Option<usize> {
        (k > self.preamble.len()).then(|| (k - self.preamble.len() - 1) % self.period.len())
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Schedule<U> {
        Schedule {
            preamble: self.preamble.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Schedule<U>> {
        Ok(Schedule {
            preamble: self.preamble.iter().map(&mut f).collect::<Result<_>>()?,
            period: self.period.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }
}

impl<T: PartialEq> Schedule<T> {
    /// True when every position holds the same entry.
    pub fn is_constant(&self) -> bool {
        let first = &self.period[0];
        self.defining_entries().all(|e| e == first)
    }
}
