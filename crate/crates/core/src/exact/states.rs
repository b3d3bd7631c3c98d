//! Arrangements reachable by an optimal solution, indexed in lexicographic
//! order, with the adjacent-transposition graph over them.
//!
//! Elements that no request mentions ("inert" elements) only ever cost
//! movement, so an optimal solution keeps them in their initial relative
//! order. Restricting to such arrangements leaves `n!/k!` states for `k`
//! inert elements, and Kendall-Tau distance between two of them is still
//! the shortest path along adjacent swaps that never exchange two inert
//! elements.

use std::collections::HashMap;

use crate::error::{MsscError, Result};
use crate::instance::{Instance, Permutation};

/// Upper bound on the number of states the exact solvers will enumerate.
pub const MAX_STATES: usize = 100_000;
/// Upper bound on the horizon for exact solving.
pub const MAX_HORIZON: usize = 32;

pub(crate) struct StateSpace {
    pub n: usize,
    /// Flattened arrangements, `n` bytes per state, in lexicographic order.
    orders: Vec<u8>,
    lookup: HashMap<Box<[u8]>, u32>,
}

impl StateSpace {
    pub fn build(inst: &Instance) -> Result<Self> {
        let n = inst.n();
        if n > u8::MAX as usize {
            return Err(MsscError::GuardExceeded(format!("n = {n} is too large")));
        }
        let mut active = vec![false; n];
        for req in inst.requests() {
            for e in req.members() {
                active[e.index()] = true;
            }
        }
        let inert_order: Vec<u8> = inst
            .pi0()
            .order()
            .iter()
            .filter(|e| !active[e.index()])
            .map(|e| e.0 as u8)
            .collect();
        let count = state_count(n, inert_order.len())
            .filter(|&c| c <= MAX_STATES)
            .ok_or_else(|| {
                MsscError::GuardExceeded(format!(
                    "n = {n} with {} inert elements exceeds {MAX_STATES} states",
                    inert_order.len()
                ))
            })?;

        let mut space = StateSpace {
            n,
            orders: Vec::with_capacity(count * n),
            lookup: HashMap::with_capacity(count),
        };
        let mut prefix = Vec::with_capacity(n);
        let mut used = vec![false; n];
        space.enumerate(&active, &inert_order, 0, &mut prefix, &mut used);
        debug_assert_eq!(space.len(), count);
        Ok(space)
    }

    fn enumerate(&mut self, active: &[bool], inert: &[u8], next_inert: usize, prefix: &mut Vec<u8>, used: &mut [bool]) {
        if prefix.len() == self.n {
            let id = self.len() as u32;
            self.orders.extend_from_slice(prefix);
            self.lookup.insert(prefix.clone().into_boxed_slice(), id);
            return;
        }
        for e in 0..self.n {
            if used[e] {
                continue;
            }
            let step = if active[e] {
                0
            } else if inert.get(next_inert) == Some(&(e as u8)) {
                1
            } else {
                continue;
            };
            used[e] = true;
            prefix.push(e as u8);
            self.enumerate(active, inert, next_inert + step, prefix, used);
            prefix.pop();
            used[e] = false;
        }
    }

    pub fn len(&self) -> usize {
        self.orders.len() / self.n.max(1)
    }

    pub fn order(&self, s: usize) -> &[u8] {
        &self.orders[s * self.n..(s + 1) * self.n]
    }

    pub fn index_of(&self, order: &[u8]) -> Option<usize> {
        self.lookup.get(order).map(|&s| s as usize)
    }

    pub fn index_of_perm(&self, pi: &Permutation) -> Option<usize> {
        let order: Vec<u8> = pi.order().iter().map(|e| e.0 as u8).collect();
        self.index_of(&order)
    }

    pub fn permutation(&self, s: usize) -> Permutation {
        Permutation::from_order(self.order(s).iter().map(|&e| e as usize)).expect("states are permutations")
    }

    /// Adjacency lists: each state's neighbors under one adjacent swap.
    pub fn neighbors(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.len());
        let mut buf = vec![0u8; self.n];
        for s in 0..self.len() {
            let mut adj = Vec::with_capacity(self.n.saturating_sub(1));
            for k in 0..self.n.saturating_sub(1) {
                buf.copy_from_slice(self.order(s));
                buf.swap(k, k + 1);
                // swaps of two inert elements leave the state space
                if let Some(t) = self.index_of(&buf) {
                    adj.push(t as u32);
                }
            }
            out.push(adj);
        }
        out
    }
}

/// `n!/k!` with overflow and guard checks.
fn state_count(n: usize, inert: usize) -> Option<usize> {
    let mut c: usize = 1;
    for v in inert + 1..=n {
        c = c.checked_mul(v)?;
        if c > MAX_STATES {
            return None;
        }
    }
    Some(c)
}
