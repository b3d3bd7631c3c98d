//! Seeded random instance generation.

use std::fmt;
use std::str::FromStr;

use mssc_core::rounding::StreamRng;
use mssc_core::{Instance, MsscError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distribution {
    /// Every request is a uniform random `r`-subset.
    UniformR,
    /// Request sizes are uniform in `[1, r]`.
    Mixed,
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform-r" => Ok(Distribution::UniformR),
            "mixed" => Ok(Distribution::Mixed),
            other => Err(format!("unknown distribution `{other}` (expected uniform-r or mixed)")),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::UniformR => "uniform-r",
            Distribution::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub horizon: usize,
    pub r: usize,
    pub distribution: Distribution,
    pub seed: u64,
}

/// Draws `π⁰` as a uniform shuffle, then each request in turn.
pub fn generate(p: &GenParams) -> Result<Instance, MsscError> {
    if p.r == 0 || p.r > p.n {
        return Err(MsscError::InvalidInstance(format!(
            "need 1 <= r <= n, got r = {} and n = {}",
            p.r, p.n
        )));
    }
    if p.horizon == 0 {
        return Err(MsscError::InvalidInstance("need T >= 1".into()));
    }
    let mut rng = StreamRng::new(p.seed);
    let mut pi0: Vec<usize> = (0..p.n).collect();
    rng.shuffle(&mut pi0);
    let requests: Vec<Vec<usize>> = (0..p.horizon)
        .map(|_| {
            let k = match p.distribution {
                Distribution::UniformR => p.r,
                Distribution::Mixed => 1 + rng.below(p.r),
            };
            let mut pool: Vec<usize> = (0..p.n).collect();
            rng.shuffle(&mut pool);
            pool.truncate(k);
            pool
        })
        .collect();
    Instance::from_indices(&pi0, &requests)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(distribution: Distribution, seed: u64) -> GenParams {
        GenParams {
            n: 5,
            horizon: 8,
            r: 2,
            distribution,
            seed,
        }
    }

    #[test]
    fn uniform_requests_have_exactly_r_elements() {
        let inst = generate(&params(Distribution::UniformR, 3)).unwrap();
        assert!(inst.requests().iter().all(|r| r.len() == 2));
    }

    #[test]
    fn mixed_requests_stay_within_r() {
        let inst = generate(&params(Distribution::Mixed, 3)).unwrap();
        assert!(inst.requests().iter().all(|r| (1..=2).contains(&r.len())));
    }

    #[test]
    fn same_seed_same_instance() {
        let p = params(Distribution::Mixed, 9);
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        assert_ne!(generate(&p).unwrap(), generate(&params(Distribution::Mixed, 10)).unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut p = params(Distribution::UniformR, 0);
        p.r = 6;
        assert!(generate(&p).is_err());
        p.r = 0;
        assert!(generate(&p).is_err());
        p.r = 1;
        p.horizon = 0;
        assert!(generate(&p).is_err());
    }
}
