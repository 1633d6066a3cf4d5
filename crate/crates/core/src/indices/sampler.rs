use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Index, IndexError};
use crate::poly::{Polynomial, Rational, Ring};

/// Seeded source of "generic" linear data.
///
/// Each trial draws from its own stream derived from `(seed, trial)`, so
/// results do not depend on the order in which trials run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericitySampler {
    seed: u64,
    trials: usize,
    height: u32,
}

impl GenericitySampler {
    pub const DEFAULT_SEED: u64 = 0x5eed_1d0c;
    pub const DEFAULT_TRIALS: usize = 3;
    pub const DEFAULT_HEIGHT: u32 = 7;

    pub fn new(seed: u64, trials: usize, height: u32) -> Result<Self, IndexError> {
        if trials < 3 {
            return Err(IndexError::InvalidInput(format!("at least 3 trials required, got {trials}")));
        }
        if height == 0 {
            return Err(IndexError::InvalidInput("coefficient height must be positive".into()));
        }
        Ok(GenericitySampler { seed, trials, height })
    }

    pub fn with_seed(seed: u64) -> Self {
        GenericitySampler { seed, trials: Self::DEFAULT_TRIALS, height: Self::DEFAULT_HEIGHT }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Random stream for one trial.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    /// A nonzero coefficient vector of length `n`; entries are `p/q` with
    /// `|p| <= height` and `1 <= q <= height`.
    pub fn coefficients(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        let h = i64::from(self.height);
        loop {
            let v: Vec<Rational> = (0..n)
                .map(|_| Rational::new(rng.random_range(-h..=h).into(), rng.random_range(1..=h).into()))
                .collect();
            if v.iter().any(|c| *c != Rational::from_integer(0.into())) {
                return v;
            }
        }
    }

    /// A random homogeneous linear function on `ring`.
    pub fn linear_function(&self, rng: &mut ChaCha8Rng, ring: &Ring) -> Polynomial {
        Polynomial::linear_form(ring, &self.coefficients(rng, ring.dimension()))
    }

    /// Runs `f` once per trial and requires all values to agree. Any error
    /// aborts; results are returned in trial order.
    pub fn agreeing<F>(&self, f: F) -> Result<Vec<Index>, IndexError>
    where
        F: Fn(&mut ChaCha8Rng) -> Result<Index, IndexError> + Sync + Send,
    {
        let trials: Vec<usize> = (0..self.trials).collect();
        let results = crate::par::map(&trials, |&t| f(&mut self.rng(t))).into_iter().collect::<Result<Vec<_>, _>>()?;
        if results.windows(2).any(|w| w[0].value != w[1].value) {
            return Err(IndexError::GenericityNotReached { values: results.iter().map(|i| i.value).collect() });
        }
        Ok(results)
    }
}

impl Default for GenericitySampler {
    fn default() -> Self {
        Self::with_seed(Self::DEFAULT_SEED)
    }
}
