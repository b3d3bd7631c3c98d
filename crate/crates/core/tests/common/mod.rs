#![allow(dead_code)]

use mssc_core::rounding::StreamRng;
use mssc_core::{GranularMatrix, Instance, Permutation, StochasticMatrix};

pub fn random_perm(rng: &mut StreamRng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut v);
    Permutation::from_order(v).unwrap()
}

/// Sum of `r` random permutation matrices, in units of `1/r`.
pub fn random_granular(rng: &mut StreamRng, n: usize, r: usize) -> GranularMatrix {
    let mut units = vec![0u32; n * n];
    for _ in 0..r {
        let p = random_perm(rng, n);
        for (col, e) in p.order().iter().enumerate() {
            units[e.index() * n + col] += 1;
        }
    }
    GranularMatrix::new(n, r, units).unwrap()
}

/// Random convex combination of a few permutation matrices.
pub fn random_doubly_stochastic(rng: &mut StreamRng, n: usize) -> StochasticMatrix {
    let k = 1 + rng.below(4);
    let weights: Vec<f64> = (0..k).map(|_| 0.05 + rng.next_f64()).collect();
    let total: f64 = weights.iter().sum();
    let mut data = vec![0.0; n * n];
    for w in weights {
        let p = random_perm(rng, n);
        for (col, e) in p.order().iter().enumerate() {
            data[e.index() * n + col] += w / total;
        }
    }
    StochasticMatrix::new(n, data).unwrap()
}

/// Random instance whose requests have between 1 and `r` elements.
pub fn random_instance(rng: &mut StreamRng, n: usize, horizon: usize, r: usize) -> Instance {
    let pi0 = random_perm(rng, n).to_indices();
    let reqs: Vec<Vec<usize>> = (0..horizon)
        .map(|_| {
            let mut v: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut v);
            v.truncate(1 + rng.below(r.min(n)));
            v
        })
        .collect();
    Instance::from_indices(&pi0, &reqs).unwrap()
}

/// Every instance with the given `n` and horizon, `π⁰` fixed to the identity.
pub fn all_instances(n: usize, horizon: usize, max_request: usize) -> Vec<Instance> {
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max_request)
        .map(|m| (0..n).filter(|&e| m >> e & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; horizon];
    loop {
        let reqs: Vec<Vec<usize>> = idx.iter().map(|&k| subsets[k].clone()).collect();
        let pi0: Vec<usize> = (0..n).collect();
        out.push(Instance::from_indices(&pi0, &reqs).unwrap());
        let mut pos = 0;
        loop {
            if pos == horizon {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < subsets.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
