use std::collections::{HashMap, VecDeque};

use crate::error::{MsscError, Result};
use crate::instance::{total_cost, CostReport, Instance, Permutation, SolutionSequence};

use super::states::{StateSpace, MAX_HORIZON, MAX_STATES};

/// Optimal move-to-front solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtfSolution {
    pub solution: SolutionSequence,
    /// Kendall-Tau moving cost.
    pub moving_kt: u64,
    /// FootRule moving cost. Each move-to-front pays twice its Kendall-Tau cost.
    pub moving_footrule: u64,
}

fn check_horizon(inst: &Instance) -> Result<()> {
    if inst.horizon() > MAX_HORIZON {
        return Err(MsscError::GuardExceeded(format!(
            "horizon {} exceeds {MAX_HORIZON}",
            inst.horizon()
        )));
    }
    Ok(())
}

/// Exact minimizer of covering plus Kendall-Tau moving cost. Among optimal
/// solutions returns the lexicographically smallest permutation sequence.
pub fn brute_force_opt(inst: &Instance) -> Result<(SolutionSequence, CostReport)> {
    check_horizon(inst)?;
    let space = StateSpace::build(inst)?;
    let adj = space.neighbors();
    let size = space.len();

    // stage[t][s] = covering cost of round t+1 at s plus optimal cost after it
    let mut stage: Vec<Vec<u64>> = Vec::with_capacity(inst.horizon());
    let mut to_go = vec![0u64; size];
    for req in inst.requests().iter().rev() {
        let mut c = to_go;
        for (s, v) in c.iter_mut().enumerate() {
            let order = space.order(s);
            let pos = order
                .iter()
                .position(|&e| req.members().iter().any(|m| m.0 as u8 == e))
                .expect("requests are nonempty");
            *v += pos as u64 + 1;
        }
        to_go = distance_transform(&c, &adj);
        stage.push(c);
    }
    stage.reverse();

    let mut cur = space.index_of_perm(inst.pi0()).expect("initial order is a state");
    let mut perms = Vec::with_capacity(inst.horizon());
    for c in &stage {
        let dist = bfs(cur, &adj);
        let best = (0..size).map(|s| dist[s] as u64 + c[s]).min().expect("state space is nonempty");
        cur = (0..size).find(|&s| dist[s] as u64 + c[s] == best).expect("minimum is attained");
        perms.push(space.permutation(cur));
    }
    let sol = SolutionSequence::new(perms);
    let report = total_cost(inst, &sol)?;
    Ok((sol, report))
}

/// `out[v] = min_u (c[u] + d(v, u))` on a unit-weight graph, via bucket queue.
fn distance_transform(c: &[u64], adj: &[Vec<u32>]) -> Vec<u64> {
    let lo = c.iter().copied().min().unwrap_or(0);
    let hi = c.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); (hi - lo + 1) as usize];
    for (s, &v) in c.iter().enumerate() {
        buckets[(v - lo) as usize].push(s as u32);
    }
    let mut out = c.to_vec();
    for level in 0..buckets.len() {
        let bucket = std::mem::take(&mut buckets[level]);
        let val = lo + level as u64;
        for s in bucket {
            if out[s as usize] != val {
                continue;
            }
            for &t in &adj[s as usize] {
                if out[t as usize] > val + 1 {
                    out[t as usize] = val + 1;
                    buckets[level + 1].push(t);
                }
            }
        }
    }
    out
}

fn bfs(src: usize, adj: &[Vec<u32>]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src as u32]);
    while let Some(s) = queue.pop_front() {
        let d = dist[s as usize] + 1;
        for &t in &adj[s as usize] {
            if dist[t as usize] == u32::MAX {
                dist[t as usize] = d;
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Exact minimum moving cost when every round moves one request member to
/// the front. Ties go to the lexicographically smallest sequence.
pub fn brute_force_mtf(inst: &Instance) -> Result<MtfSolution> {
    check_horizon(inst)?;
    let n = inst.n();
    if n > u8::MAX as usize {
        return Err(MsscError::GuardExceeded(format!("n = {n} is too large")));
    }
    let start: Vec<u8> = inst.pi0().order().iter().map(|e| e.0 as u8).collect();

    // layers[t] holds the distinct arrangements reachable after t rounds
    let mut layers: Vec<Vec<Vec<u8>>> = vec![vec![start]];
    for req in inst.requests() {
        let mut next: Vec<Vec<u8>> = layers
            .last()
            .expect("layer 0 exists")
            .iter()
            .flat_map(|o| req.members().iter().map(move |e| move_front(o, e.0 as u8).0))
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.len() > MAX_STATES {
            return Err(MsscError::GuardExceeded(format!(
                "more than {MAX_STATES} reachable arrangements"
            )));
        }
        layers.push(next);
    }

    // to_go[t][k] = optimal cost from layers[t][k] to the end
    let horizon = inst.horizon();
    let mut to_go: Vec<Vec<u64>> = vec![Vec::new(); horizon + 1];
    to_go[horizon] = vec![0; layers[horizon].len()];
    for t in (0..horizon).rev() {
        let index: HashMap<&[u8], usize> = layers[t + 1].iter().enumerate().map(|(k, o)| (o.as_slice(), k)).collect();
        let req = &inst.requests()[t];
        to_go[t] = layers[t]
            .iter()
            .map(|o| {
                req.members()
                    .iter()
                    .map(|e| {
                        let (next, cost) = move_front(o, e.0 as u8);
                        cost + to_go[t + 1][index[next.as_slice()]]
                    })
                    .min()
                    .expect("requests are nonempty")
            })
            .collect();
    }

    let mut cur = layers[0][0].clone();
    let mut perms = Vec::with_capacity(horizon);
    let mut moving = 0;
    for t in 0..horizon {
        let index: HashMap<&[u8], usize> = layers[t + 1].iter().enumerate().map(|(k, o)| (o.as_slice(), k)).collect();
        let (next, cost) = inst.requests()[t]
            .members()
            .iter()
            .map(|e| move_front(&cur, e.0 as u8))
            .filter(|(next, cost)| {
                let here = index[next.as_slice()];
                let k = layers[t].binary_search(&cur).expect("current arrangement is reachable");
                cost + to_go[t + 1][here] == to_go[t][k]
            })
            .min()
            .expect("an optimal move exists");
        moving += cost;
        perms.push(Permutation::from_order(next.iter().map(|&e| e as usize))?);
        cur = next;
    }
    debug_assert_eq!(moving, to_go[0][0]);
    Ok(MtfSolution {
        solution: SolutionSequence::new(perms),
        moving_kt: moving,
        moving_footrule: 2 * moving,
    })
}

fn move_front(order: &[u8], e: u8) -> (Vec<u8>, u64) {
    let pos = order.iter().position(|&x| x == e).expect("element present");
    let mut out = Vec::with_capacity(order.len());
    out.push(e);
    out.extend(order.iter().copied().filter(|&x| x != e));
    (out, pos as u64)
}
