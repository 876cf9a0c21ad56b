use std::path::PathBuf;
use std::time::Duration;

use indcomplex_core::{Budget, HomologyOptions, SearchOptions};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Regression constants checked in next to this crate.
pub fn default_regression_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("regression.json")
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Per-check wall-clock limit; `None` runs to completion.
    pub timeout: Option<Duration>,
    /// Worker count for suites and for the top level of a single VD search.
    pub threads: usize,
    pub seed: u64,
    pub symmetry: bool,
    pub deep: bool,
    /// Where certificates of reported yes verdicts are written; `None`
    /// keeps them in memory only.
    pub cert_dir: Option<PathBuf>,
    pub regression: PathBuf,
    pub bless: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            timeout: None,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: DEFAULT_SEED,
            symmetry: false,
            deep: false,
            cert_dir: None,
            regression: default_regression_path(),
            bless: false,
        }
    }
}

impl RunConfig {
    /// Options for one search; `threads` is the worker count inside it.
    pub fn search(&self, threads: usize) -> SearchOptions {
        SearchOptions {
            budget: Budget::from_timeout(self.timeout),
            threads,
            rotation_symmetry: self.symmetry,
        }
    }

    pub fn homology(&self) -> HomologyOptions {
        HomologyOptions {
            budget: Budget::from_timeout(self.timeout),
            ..HomologyOptions::default()
        }
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.max(1))
            .build()
            .expect("thread pool")
    }
}
