//! Execution state for move-level simulations and the hole-routing
//! primitives built on it.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::config::{verify_plan, Configuration, Instance, Move, Plan};
use crate::error::FeasibilityError;
use crate::graph::Vertex;

/// Invariant: replaying `trace` from `inst.start` yields `cur`.
#[derive(Clone, Debug)]
pub struct SimState<'a> {
    pub inst: &'a Instance,
    pub cur: Configuration,
    pub trace: Plan,
}

impl<'a> SimState<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        SimState { inst, cur: inst.start.clone(), trace: Plan::default() }
    }

    pub fn robot(&self) -> Vertex {
        self.cur.robot()
    }

    pub fn step(&mut self, m: Move) -> Result<(), FeasibilityError> {
        self.cur.apply_in_place(m, &self.inst.d)?;
        self.trace.moves.push(m);
        Ok(())
    }

    /// Advances every object on `path` one arc towards its last vertex,
    /// which must be a hole. Afterwards `path[0]` is a hole.
    pub fn shift_along(&mut self, path: &[Vertex]) -> Result<(), FeasibilityError> {
        let Some(&last) = path.last() else { return Ok(()) };
        if !self.cur.is_hole(last) {
            return Err(FeasibilityError::NoHoleAtEnd(last));
        }
        // Processing from the hole end keeps path[i + 1] a hole when arc i
        // is handled.
        for i in (0..path.len() - 1).rev() {
            if !self.cur.is_hole(path[i]) {
                self.step(Move::new(path[i], path[i + 1]))?;
            }
        }
        Ok(())
    }

    /// Carries the object at `path[0]` to the end of `path`, every later
    /// vertex of which must be a hole.
    pub fn push_along(&mut self, path: &[Vertex]) -> Result<(), FeasibilityError> {
        for w in path.windows(2) {
            self.step(Move::new(w[0], w[1]))?;
        }
        Ok(())
    }

    /// Brings a hole to `target` by shifting along a shortest path
    /// `target ⇝ hole` that avoids `forbidden`. `false` leaves the state
    /// untouched.
    pub fn route_hole(&mut self, target: Vertex, forbidden: &FixedBitSet) -> Result<bool, FeasibilityError> {
        debug_assert!(!forbidden.contains(target));
        match self.path_to_hole(target, forbidden) {
            Some(path) => {
                self.shift_along(&path)?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Shortest path from `from` to the nearest hole outside `forbidden`,
    /// following arcs forwards. `[from]` when `from` is a hole.
    pub fn path_to_hole(&self, from: Vertex, forbidden: &FixedBitSet) -> Option<Vec<Vertex>> {
        let cur = &self.cur;
        bfs(self.inst.n(), from, |x| self.inst.d.out(x), |y| !forbidden.contains(y), |x| cur.is_hole(x))
    }

    /// Shortest path `obstacle ⇝ to` through holes only, avoiding
    /// `forbidden`; `None` if `to` is not a hole or no obstacle qualifies.
    pub fn path_from_obstacle(&self, to: Vertex, forbidden: &FixedBitSet) -> Option<Vec<Vertex>> {
        if !self.cur.is_hole(to) {
            return None;
        }
        let cur = &self.cur;
        let robot = cur.robot();
        let mut path = bfs(
            self.inst.n(),
            to,
            |x| if cur.is_hole(x) { self.inst.d.inc(x) } else { &[] },
            |y| y != robot && !forbidden.contains(y),
            |x| !cur.is_hole(x),
        )?;
        path.reverse();
        Some(path)
    }

    /// Debug check of the replay invariant.
    pub fn replay_matches(&self) -> bool {
        let check = verify_plan(self.inst, &self.trace);
        check.ok && check.final_config == self.cur
    }
}

/// Breadth-first search from `from` over `next`, entering only vertices
/// accepted by `allowed`, until a vertex satisfying `goal` is dequeued.
/// Returns the path `from ⇝ goal`.
pub(crate) fn bfs<'g, N, A, G>(n: usize, from: Vertex, next: N, allowed: A, goal: G) -> Option<Vec<Vertex>>
where
    N: Fn(Vertex) -> &'g [Vertex],
    A: Fn(Vertex) -> bool,
    G: Fn(Vertex) -> bool,
{
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if goal(x) {
            let mut path = vec![x];
            while *path.last().unwrap() != from {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for &y in next(x) {
            if parent[y] == usize::MAX && allowed(y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
