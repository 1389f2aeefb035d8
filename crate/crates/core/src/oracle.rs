//! Exhaustive breadth-first search over configurations.
//!
//! Obstacles are interchangeable, so a state is the robot's vertex plus the
//! hole set: at most `n * 2^(n-1)` states. Every exact algorithm in this
//! crate is checked against this search.

use std::collections::VecDeque;

use crate::config::{Configuration, Instance, Move, Plan};
use crate::error::OracleError;
use crate::graph::{Digraph, Vertex};

pub const DEFAULT_BOUND: usize = 16;

/// Hard ceiling on the bound: the visited table has `n * 2^n` entries.
pub const MAX_BOUND: usize = 20;

/// Robot vertex plus hole bit-set, packed for `n <= MAX_BOUND`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub robot: Vertex,
    pub holes: u32,
}

impl StateKey {
    pub fn from_config(c: &Configuration) -> StateKey {
        let holes = c.holes().ones().fold(0u32, |acc, v| acc | (1 << v));
        StateKey { robot: c.robot(), holes }
    }

    pub fn to_config(self, n: usize) -> Configuration {
        Configuration::new(n, self.robot, (0..n).filter(|&v| self.holes & (1 << v) != 0))
    }

    fn is_hole(self, v: Vertex) -> bool {
        self.holes & (1 << v) != 0
    }

    fn index(self, n: usize) -> usize {
        (self.robot << n) | self.holes as usize
    }

    fn from_index(i: usize, n: usize) -> StateKey {
        StateKey { robot: i >> n, holes: (i & ((1 << n) - 1)) as u32 }
    }
}

/// Legal moves out of `key`, in adjacency order: sources by vertex index,
/// then each source's out-arcs in insertion order.
pub fn successors(d: &Digraph, key: StateKey) -> Vec<(Move, StateKey)> {
    let mut out = Vec::new();
    for from in 0..d.n() {
        if key.is_hole(from) {
            continue;
        }
        for &to in d.out(from) {
            if key.is_hole(to) {
                let holes = (key.holes & !(1 << to)) | (1 << from);
                let robot = if key.robot == from { to } else { key.robot };
                out.push((Move::new(from, to), StateKey { robot, holes }));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub feasible: bool,
    pub shortest_plan: Option<Plan>,
    pub states_explored: usize,
}

pub fn oracle_decide(inst: &Instance) -> Result<OracleOutcome, OracleError> {
    oracle_decide_bounded(inst, DEFAULT_BOUND)
}

pub fn oracle_decide_bounded(inst: &Instance, bound: usize) -> Result<OracleOutcome, OracleError> {
    let n = inst.n();
    let bound = bound.min(MAX_BOUND);
    if n > bound {
        return Err(OracleError::TooLarge { n, bound });
    }
    let start = StateKey::from_config(&inst.start);
    if start.robot == inst.t {
        return Ok(OracleOutcome { feasible: true, shortest_plan: Some(Plan::default()), states_explored: 1 });
    }
    const UNSEEN: u32 = u32::MAX;
    let mut parent = vec![UNSEEN; n << n];
    let start_idx = start.index(n);
    parent[start_idx] = start_idx as u32;
    let mut explored = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        for (_, next) in successors(&inst.d, key) {
            let idx = next.index(n);
            if parent[idx] != UNSEEN {
                continue;
            }
            parent[idx] = key.index(n) as u32;
            explored += 1;
            if next.robot == inst.t {
                let plan = rebuild(&parent, idx, start_idx, n);
                return Ok(OracleOutcome { feasible: true, shortest_plan: Some(plan), states_explored: explored });
            }
            queue.push_back(next);
        }
    }
    Ok(OracleOutcome { feasible: false, shortest_plan: None, states_explored: explored })
}

fn rebuild(parent: &[u32], mut idx: usize, start_idx: usize, n: usize) -> Plan {
    let mut moves = Vec::new();
    while idx != start_idx {
        let prev = parent[idx] as usize;
        let (a, b) = (StateKey::from_index(prev, n), StateKey::from_index(idx, n));
        // The mover vacated the vertex that became a hole and filled the one
        // that stopped being a hole.
        let from = (b.holes & !a.holes).trailing_zeros() as usize;
        let to = (a.holes & !b.holes).trailing_zeros() as usize;
        moves.push(Move::new(from, to));
        idx = prev;
    }
    moves.reverse();
    Plan::new(moves)
}

/// Every occupancy of `d` with the robot at `s`: `2^(n-1)` instances, hole
/// masks in increasing order.
pub fn enumerate_instances(d: &Digraph, s: Vertex, t: Vertex) -> impl Iterator<Item = Instance> + '_ {
    let n = d.n();
    let others: Vec<Vertex> = (0..n).filter(|&v| v != s).collect();
    (0u64..(1u64 << others.len())).map(move |mask| {
        let holes = others.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v);
        Instance::new(d.clone(), s, t, holes)
    })
}
