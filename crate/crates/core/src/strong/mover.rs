//! Moving one object to a chosen vertex inside a strongly biconnected
//! block, touching nothing outside the block.
//!
//! Both strategies track a single designated hole. A hole step sends the
//! designated hole from `h` to an in-neighbour `y`: if `y` holds an object
//! the real move `(y, h)` is emitted, if `y` is itself a hole nothing moves
//! and `y` simply becomes the designated one. Any other holes therefore
//! behave like obstacles that move for free, and one hole always suffices.

use std::collections::VecDeque;

use crate::config::Move;
use crate::error::FeasibilityError;
use crate::graph::{Digraph, Vertex};
use crate::strong::sim::{bfs, SimState};
use crate::structure::ears::{open_ear_decomposition, EarDecomposition};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MoverStrategy {
    /// Induction over an open ear decomposition of the block.
    #[default]
    EarInduction,
    /// Breadth-first search over (object, designated hole) pairs.
    HolePairSearch,
}

impl MoverStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            MoverStrategy::EarInduction => "ear-induction",
            MoverStrategy::HolePairSearch => "hole-pair-search",
        }
    }
}

/// A block with its local digraph and, once needed, its ear structure.
#[derive(Clone, Debug)]
pub struct BlockView {
    /// Sorted global vertices; local index `i` is `verts[i]`.
    verts: Vec<Vertex>,
    sub: Digraph,
    ears: Option<(EarDecomposition, Vec<usize>)>,
}

impl BlockView {
    pub fn new(d: &Digraph, block: &[Vertex]) -> Self {
        let mut verts = block.to_vec();
        verts.sort_unstable();
        let (sub, _) = d.induced(&verts);
        BlockView { verts, sub, ears: None }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    fn local(&self, v: Vertex) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    fn ensure_ears(&mut self) -> Result<(), FeasibilityError> {
        if self.ears.is_none() {
            let e = open_ear_decomposition(&self.sub)?;
            let level = e.levels(self.sub.n()).vertex;
            self.ears = Some((e, level));
        }
        Ok(())
    }

    /// Moves the robot to `target`.
    pub fn move_robot(
        &mut self,
        sim: &mut SimState<'_>,
        target: Vertex,
        strategy: MoverStrategy,
    ) -> Result<(), FeasibilityError> {
        let robot = sim.robot();
        self.move_object(sim, robot, target, strategy)
    }

    /// Moves the object at `token` to `target`; every move stays inside
    /// the block.
    pub fn move_object(
        &mut self,
        sim: &mut SimState<'_>,
        token: Vertex,
        target: Vertex,
        strategy: MoverStrategy,
    ) -> Result<(), FeasibilityError> {
        let (Some(tk), Some(goal)) = (self.local(token), self.local(target)) else {
            return Err(FeasibilityError::InternalInvariantBroken(format!(
                "object {token} or target {target} outside the block"
            )));
        };
        if sim.cur.is_hole(token) {
            return Err(FeasibilityError::InternalInvariantBroken(format!("no object at {token}")));
        }
        if tk == goal {
            return Ok(());
        }
        let holes: Vec<usize> = (0..self.verts.len()).filter(|&i| sim.cur.is_hole(self.verts[i])).collect();
        if holes.is_empty() {
            return Err(FeasibilityError::NoHoleInBlock);
        }
        match strategy {
            MoverStrategy::HolePairSearch => pair_search(self, sim, tk, goal, &holes),
            MoverStrategy::EarInduction => {
                self.ensure_ears()?;
                let mut run = Walker::new(self, sim, tk, holes[0]);
                match run.solve(goal) {
                    Ok(()) => Ok(()),
                    Err(Halt::At(_)) => unreachable!("solve absorbs arrivals at its own goal"),
                    Err(Halt::Fail(e)) => Err(e),
                }
            }
        }
    }
}

/// Moves the robot to `target` inside `block`.
pub fn move_robot_in_block(
    sim: &mut SimState<'_>,
    block: &[Vertex],
    target: Vertex,
    strategy: MoverStrategy,
) -> Result<(), FeasibilityError> {
    BlockView::new(&sim.inst.d, block).move_robot(sim, target, strategy)
}

/// Moves the object at `token` to `target` inside `block`.
pub fn move_object_in_block(
    sim: &mut SimState<'_>,
    block: &[Vertex],
    token: Vertex,
    target: Vertex,
    strategy: MoverStrategy,
) -> Result<(), FeasibilityError> {
    BlockView::new(&sim.inst.d, block).move_object(sim, token, target, strategy)
}

enum Halt {
    /// The token reached the goal at this depth of the goal stack.
    At(usize),
    Fail(FeasibilityError),
}

impl From<FeasibilityError> for Halt {
    fn from(e: FeasibilityError) -> Self {
        Halt::Fail(e)
    }
}

fn broken(msg: impl Into<String>) -> Halt {
    Halt::Fail(FeasibilityError::InternalInvariantBroken(msg.into()))
}

/// Designated-hole stepper over local indices.
struct Walker<'v, 's, 'a> {
    view: &'v BlockView,
    sim: &'s mut SimState<'a>,
    token: usize,
    hole: usize,
    /// Token position before its latest move.
    prev: usize,
    /// Active goals, outermost first. Reaching any of them unwinds to it.
    goals: Vec<usize>,
}

impl<'v, 's, 'a> Walker<'v, 's, 'a> {
    fn new(view: &'v BlockView, sim: &'s mut SimState<'a>, token: usize, hole: usize) -> Self {
        Walker { view, sim, token, hole, prev: token, goals: Vec::new() }
    }

    fn step(&mut self, y: usize) -> Result<(), Halt> {
        debug_assert!(self.view.sub.has_arc(y, self.hole));
        let (gy, gh) = (self.view.verts[y], self.view.verts[self.hole]);
        if !self.sim.cur.is_hole(gy) {
            self.sim.step(Move::new(gy, gh))?;
        }
        if y == self.token {
            self.prev = y;
            self.token = self.hole;
            self.hole = y;
            if let Some(depth) = self.goals.iter().position(|&g| g == self.token) {
                return Err(Halt::At(depth));
            }
        } else {
            self.hole = y;
        }
        Ok(())
    }

    fn levels(&self) -> (&'v EarDecomposition, &'v [usize]) {
        let (e, lv) = self.view.ears.as_ref().expect("ears computed before induction");
        (e, lv)
    }

    fn solve(&mut self, goal: usize) -> Result<(), Halt> {
        if self.token == goal {
            return Ok(());
        }
        let depth = self.goals.len();
        self.goals.push(goal);
        let out = self.solve_inner(goal);
        self.goals.truncate(depth);
        match out {
            Err(Halt::At(d)) if d == depth => Ok(()),
            Ok(()) if self.token != goal => Err(broken("ear induction ended away from its goal")),
            other => other,
        }
    }

    fn solve_inner(&mut self, goal: usize) -> Result<(), Halt> {
        let (e, lv) = self.levels();
        loop {
            if self.token == goal {
                return Ok(());
            }
            let j0 = lv[self.token].max(lv[goal]).max(lv[self.hole]);
            if j0 == 0 {
                let c = e.cycle.clone();
                return self.rotate(&c, |_| false);
            }
            let ear = &e.ears[j0 - 1];
            let (u, v) = (ear.tail, ear.head);
            if lv[self.token] == j0 {
                let c = self.ear_cycle(j0)?;
                if !c.contains(&self.hole) {
                    self.bring_hole_to(&c, j0 - 1)?;
                }
                if c.contains(&goal) {
                    return self.rotate(&c, |_| false);
                }
                self.rotate(&c, |w| w.token == v)?;
                self.walk_back_along_ear(j0)?;
            } else if lv[self.hole] == j0 {
                if self.token == u {
                    let c = self.ear_cycle(j0)?;
                    self.rotate(&c, |w| w.token != u)?;
                } else {
                    self.walk_back_along_ear(j0)?;
                }
            } else {
                // Goal on the newest ear; token and hole below it.
                if self.token != v {
                    self.solve(v)?;
                }
                self.solve(u)?;
                let w = self.prev;
                let below = |x: usize| lv[x] < j0 && x != u;
                let path = bfs(self.view.sub.n(), v, |x| self.view.sub.out(x), below, |x| x == w)
                    .ok_or_else(|| broken("no return path avoiding the ear tail"))?;
                for &x in path.iter().rev().skip(1) {
                    self.step(x)?;
                }
                let c = self.ear_cycle(j0)?;
                return self.rotate(&c, |_| false);
            }
        }
    }

    /// The newest ear closed by a shortest path back through lower levels:
    /// `u', x1, ..., xk, v', p1, ...` in arc order.
    fn ear_cycle(&self, j0: usize) -> Result<Vec<usize>, Halt> {
        let (e, lv) = self.levels();
        let ear = &e.ears[j0 - 1];
        let back = bfs(self.view.sub.n(), ear.head, |x| self.view.sub.out(x), |x| lv[x] < j0, |x| x == ear.tail)
            .ok_or_else(|| broken("lower levels are not strongly connected"))?;
        let mut c = ear.vertices();
        c.pop();
        c.extend_from_slice(&back[..back.len() - 1]);
        Ok(c)
    }

    /// Rotates objects along cycle `c` (hole on it) until `stop` holds
    /// after a token move, or a goal is reached.
    fn rotate(&mut self, c: &[usize], stop: impl Fn(&Self) -> bool) -> Result<(), Halt> {
        let len = c.len();
        let mut idx = c.iter().position(|&x| x == self.hole).ok_or_else(|| broken("hole off the rotation cycle"))?;
        for _ in 0..len * len + len {
            idx = (idx + len - 1) % len;
            let moved_token = c[idx] == self.token;
            self.step(c[idx])?;
            if moved_token && stop(self) {
                return Ok(());
            }
        }
        Err(broken("rotation did not reach its goal"))
    }

    /// Sends the hole from the inside of ear `j0` back to its tail.
    fn walk_back_along_ear(&mut self, j0: usize) -> Result<(), Halt> {
        let (e, _) = self.levels();
        let ear = e.ears[j0 - 1].vertices();
        let i = ear.iter().position(|&x| x == self.hole).ok_or_else(|| broken("hole not on the newest ear"))?;
        for k in (0..i).rev() {
            self.step(ear[k])?;
        }
        Ok(())
    }

    /// Moves the hole against arcs through levels `<= j` until it lands on
    /// `c`.
    fn bring_hole_to(&mut self, c: &[usize], j: usize) -> Result<(), Halt> {
        let (_, lv) = self.levels();
        let path = bfs(self.view.sub.n(), self.hole, |x| self.view.sub.inc(x), |x| lv[x] <= j, |x| c.contains(&x))
            .ok_or_else(|| broken("hole cannot reach the rotation cycle"))?;
        for &x in &path[1..] {
            self.step(x)?;
        }
        Ok(())
    }
}

/// Multi-source BFS over (token, designated hole) pairs; the shortest
/// sequence of hole positions is replayed through the stepper.
fn pair_search(
    view: &BlockView,
    sim: &mut SimState<'_>,
    token: usize,
    goal: usize,
    holes: &[usize],
) -> Result<(), FeasibilityError> {
    let k = view.verts.len();
    let idx = |tk: usize, h: usize| tk * k + h;
    const UNSEEN: u32 = u32::MAX;
    const ROOT: u32 = u32::MAX - 1;
    let mut parent = vec![UNSEEN; k * k];
    let mut queue = VecDeque::new();
    for &h in holes {
        parent[idx(token, h)] = ROOT;
        queue.push_back((token, h));
    }
    let mut found = None;
    while let Some((tk, h)) = queue.pop_front() {
        if tk == goal {
            found = Some((tk, h));
            break;
        }
        for &y in view.sub.inc(h) {
            let next = if y == tk { (h, y) } else { (tk, y) };
            let slot = &mut parent[idx(next.0, next.1)];
            if *slot == UNSEEN {
                *slot = idx(tk, h) as u32;
                queue.push_back(next);
            }
        }
    }
    let (mut tk, mut h) = found
        .ok_or(FeasibilityError::InternalInvariantBroken("block mover found no route for the object".to_string()))?;
    let mut seq = vec![h];
    while parent[idx(tk, h)] != ROOT {
        let p = parent[idx(tk, h)] as usize;
        (tk, h) = (p / k, p % k);
        seq.push(h);
    }
    seq.reverse();
    let mut walker = Walker::new(view, sim, token, seq[0]);
    for &y in &seq[1..] {
        match walker.step(y) {
            Ok(()) => {}
            Err(Halt::Fail(e)) => return Err(e),
            Err(Halt::At(_)) => unreachable!("no goals are active"),
        }
    }
    Ok(())
}
