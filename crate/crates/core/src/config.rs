//! Occupancy configurations, single-arc moves, plans and the plan verifier.
//!
//! A move carries an object (the robot or an obstacle) along an arc into a
//! hole. Read backwards it moves the hole against the arc. Obstacles carry
//! no identity, so a configuration is just the robot's vertex plus the set
//! of holes; every other vertex holds an obstacle.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{IllegalMove, IllegalReason};
use crate::graph::{reachable_from, underlying_graph, Digraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Occupancy {
    Robot,
    Obstacle,
    Hole,
}

impl Occupancy {
    pub fn is_object(self) -> bool {
        !matches!(self, Occupancy::Hole)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    robot: Vertex,
    holes: FixedBitSet,
}

impl Configuration {
    /// `holes` must not contain the robot's vertex.
    pub fn new(n: usize, robot: Vertex, holes: impl IntoIterator<Item = Vertex>) -> Self {
        assert!(robot < n, "robot vertex out of range");
        let mut set = FixedBitSet::with_capacity(n);
        for h in holes {
            assert!(h != robot, "robot vertex cannot be a hole");
            set.insert(h);
        }
        Configuration { robot, holes: set }
    }

    /// Builds a configuration from a per-vertex occupancy list. Returns
    /// `None` unless exactly one vertex holds the robot.
    pub fn from_occupancy(occ: &[Occupancy]) -> Option<Self> {
        let mut robots = occ.iter().enumerate().filter(|(_, o)| **o == Occupancy::Robot);
        let (robot, _) = robots.next()?;
        if robots.next().is_some() {
            return None;
        }
        let holes = occ.iter().enumerate().filter(|(_, o)| **o == Occupancy::Hole).map(|(v, _)| v);
        Some(Configuration::new(occ.len(), robot, holes))
    }

    pub fn n(&self) -> usize {
        self.holes.len()
    }

    pub fn robot(&self) -> Vertex {
        self.robot
    }

    pub fn occ(&self, v: Vertex) -> Occupancy {
        if v == self.robot {
            Occupancy::Robot
        } else if self.holes.contains(v) {
            Occupancy::Hole
        } else {
            Occupancy::Obstacle
        }
    }

    pub fn is_hole(&self, v: Vertex) -> bool {
        self.holes.contains(v)
    }

    pub fn holes(&self) -> &FixedBitSet {
        &self.holes
    }

    pub fn hole_count(&self) -> usize {
        self.holes.count_ones(..)
    }

    pub fn obstacle_count(&self) -> usize {
        self.n() - 1 - self.hole_count()
    }

    pub fn occupancies(&self) -> Vec<Occupancy> {
        (0..self.n()).map(|v| self.occ(v)).collect()
    }

    /// Executes `m` on a copy.
    pub fn apply_move(&self, m: Move, d: &Digraph) -> Result<Configuration, IllegalMove> {
        let mut next = self.clone();
        next.apply_in_place(m, d)?;
        Ok(next)
    }

    pub fn apply_in_place(&mut self, m: Move, d: &Digraph) -> Result<(), IllegalMove> {
        let reject = |reason| IllegalMove { from: m.from, to: m.to, reason };
        if !d.has_arc(m.from, m.to) {
            return Err(reject(IllegalReason::NoSuchArc));
        }
        if !self.occ(m.from).is_object() {
            return Err(reject(IllegalReason::SourceEmpty));
        }
        if !self.is_hole(m.to) {
            return Err(reject(IllegalReason::TargetOccupied));
        }
        self.holes.set(m.to, false);
        self.holes.insert(m.from);
        if self.robot == m.from {
            self.robot = m.to;
        }
        Ok(())
    }
}

pub fn apply_move(c: &Configuration, m: Move, d: &Digraph) -> Result<Configuration, IllegalMove> {
    c.apply_move(m, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        Move { from, to }
    }
}

impl From<(Vertex, Vertex)> for Move {
    fn from((from, to): (Vertex, Vertex)) -> Self {
        Move { from, to }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub moves: Vec<Move>,
}

impl Plan {
    pub fn new(moves: Vec<Move>) -> Self {
        Plan { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl<M: Into<Move>> FromIterator<M> for Plan {
    fn from_iter<I: IntoIterator<Item = M>>(iter: I) -> Self {
        Plan { moves: iter.into_iter().map(Into::into).collect() }
    }
}

/// A robot motion problem: digraph, source, target and initial occupancy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub d: Digraph,
    pub s: Vertex,
    pub t: Vertex,
    pub start: Configuration,
}

impl Instance {
    /// Robot at `s`, holes at `holes`, obstacles everywhere else.
    pub fn new(d: Digraph, s: Vertex, t: Vertex, holes: impl IntoIterator<Item = Vertex>) -> Self {
        let start = Configuration::new(d.n(), s, holes);
        Instance { d, s, t, start }
    }

    pub fn n(&self) -> usize {
        self.d.n()
    }

    pub fn with_start(&self, start: Configuration) -> Instance {
        Instance { d: self.d.clone(), s: start.robot(), t: self.t, start }
    }
}

/// A broken standing assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ConfigurationSizeMismatch { digraph: usize, configuration: usize },
    VertexOutOfRange(Vertex),
    SourceEqualsTarget,
    RobotNotAtSource,
    UnderlyingGraphDisconnected,
    TargetUnreachable,
}

pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    let n = inst.d.n();
    let mut out = Vec::new();
    if inst.start.n() != n {
        out.push(Violation::ConfigurationSizeMismatch { digraph: n, configuration: inst.start.n() });
        return out;
    }
    for v in [inst.s, inst.t] {
        if v >= n {
            out.push(Violation::VertexOutOfRange(v));
        }
    }
    if !out.is_empty() {
        return out;
    }
    if inst.s == inst.t {
        out.push(Violation::SourceEqualsTarget);
    }
    if inst.start.robot() != inst.s {
        out.push(Violation::RobotNotAtSource);
    }
    if !underlying_graph(&inst.d).is_connected() {
        out.push(Violation::UnderlyingGraphDisconnected);
    }
    if inst.s != inst.t && !reachable_from(&inst.d, inst.s).contains(inst.t) {
        out.push(Violation::TargetUnreachable);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanCheck {
    pub ok: bool,
    pub final_config: Configuration,
    pub reaches_target: bool,
    pub failing_index: Option<usize>,
    pub failure: Option<IllegalMove>,
}

/// Replays `p` from the start configuration. `final_config` is the state
/// before the first illegal move when replay fails.
pub fn verify_plan(inst: &Instance, p: &Plan) -> PlanCheck {
    let mut cur = inst.start.clone();
    for (i, &m) in p.moves.iter().enumerate() {
        if let Err(e) = cur.apply_in_place(m, &inst.d) {
            return PlanCheck {
                ok: false,
                final_config: cur,
                reaches_target: false,
                failing_index: Some(i),
                failure: Some(e),
            };
        }
    }
    let reaches_target = cur.robot() == inst.t;
    PlanCheck { ok: true, final_config: cur, reaches_target, failing_index: None, failure: None }
}
