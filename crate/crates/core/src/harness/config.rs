//! Run configuration, per-item random streams and the worker pool.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cstar::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    /// Worker threads for per-item and per-index work.
    pub parallelism: usize,
    pub out: Option<PathBuf>,
    /// Keep wall-clock times in reports. Off by default so reruns compare byte for byte.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, tol: DEFAULT_TOL, parallelism: 1, out: None, timing: false }
    }
}

impl RunConfig {
    pub fn new(seed: u64, tol: f64, parallelism: usize) -> Result<Self> {
        let cfg = RunConfig { seed, tol, parallelism, ..RunConfig::default() };
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.parallelism == 0 {
            return Err(Error::Parse("parallelism must be at least 1".into()));
        }
        Ok(())
    }

    /// The random stream of suite item `item`: the run seed keys ChaCha8 and the
    /// item number selects its stream, so draws do not depend on scheduling.
    pub fn rng(&self, item: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(item);
        rng
    }

    /// Runs `f` on a dedicated pool of `parallelism` threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
            .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(f))
    }

    /// Drops timings unless they were asked for.
    pub fn finish(&self, report: VerificationReport) -> VerificationReport {
        if self.timing {
            report
        } else {
            report.without_timing()
        }
    }
}
