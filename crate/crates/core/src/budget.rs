//! Search budgets and the outcome type shared by the checkers.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};

/// Wall-clock deadline for a search. The default never expires.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + timeout),
        }
    }

    pub fn from_timeout(timeout: Option<Duration>) -> Self {
        timeout.map_or_else(Budget::unlimited, Budget::with_timeout)
    }

    pub fn is_exhausted(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Options common to the shelling and vertex-decomposition searches.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Worker threads for the vertex-decomposition search; `1` keeps the
    /// search (and its certificate) fully deterministic.
    pub threads: usize,
    /// Share memo entries between cyclic rotations of a facet family and
    /// skip candidate vertices equivalent under a rotation stabilizing the
    /// complex.
    pub rotation_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            threads: 1,
            rotation_symmetry: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_hits: u64,
    /// Cone points skipped as shedding candidates. The unrestricted reading
    /// of a shedding vertex would have examined these.
    pub cone_points_skipped: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// Thread-safe counters behind [`SearchStats`].
#[derive(Debug)]
pub(crate) struct Counters {
    start: Instant,
    nodes: AtomicU64,
    memo_hits: AtomicU64,
    cone_points: AtomicU64,
    budget: Budget,
}

impl Counters {
    pub(crate) fn new(budget: Budget) -> Self {
        Counters {
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            memo_hits: AtomicU64::new(0),
            cone_points: AtomicU64::new(0),
            budget,
        }
    }

    /// Counts a node and checks the deadline every 256 nodes.
    pub(crate) fn visit(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n & 0xff == 0 && self.budget.is_exhausted() {
            return Err(Error::Timeout(self.snapshot()));
        }
        Ok(())
    }

    pub(crate) fn memo_hit(&self) {
        self.memo_hits.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn cone_point(&self) {
        self.cone_points.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn snapshot(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_hits: self.memo_hits.load(Ordering::Relaxed),
            cone_points_skipped: self.cone_points.load(Ordering::Relaxed),
            elapsed: self.start.elapsed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C> {
    Yes(C),
    No,
}

/// Result of an exhaustive check. A `Yes` always carries its certificate.
#[derive(Clone, Debug)]
pub struct CheckOutcome<C> {
    pub verdict: Verdict<C>,
    pub stats: SearchStats,
}

impl<C> CheckOutcome<C> {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Yes(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match &self.verdict {
            Verdict::Yes(c) => Some(c),
            Verdict::No => None,
        }
    }
}
