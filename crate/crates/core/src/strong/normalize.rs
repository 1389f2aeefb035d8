//! Gathering holes onto the robot's `t`-side.
//!
//! Each round moves one hole from the non-`t`-side of the robot to its
//! `t`-side while there is still an obstacle there to trade places with.
//! Rounds end when either side runs out.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::FeasibilityError;
use crate::graph::Vertex;
use crate::strong::mover::{BlockView, MoverStrategy};
use crate::strong::sim::SimState;
use crate::structure::blocks::BlockTree;
use crate::structure::side::side_mask;

/// Tie-breaking among eligible blocks and cut vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SelectionOrder {
    /// Smallest block id, then smallest vertex.
    #[default]
    Ascending,
    Descending,
}

impl SelectionOrder {
    fn arrange<T>(self, mut items: Vec<T>) -> Vec<T> {
        if self == SelectionOrder::Descending {
            items.reverse();
        }
        items
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct StrongOptions {
    pub mover: MoverStrategy,
    pub order: SelectionOrder,
}

/// Hole and obstacle counts on both sides of the robot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideCounts {
    pub t_holes: usize,
    pub t_obstacles: usize,
    pub other_holes: usize,
}

pub fn side_counts(sim: &SimState<'_>, bt: &BlockTree) -> Result<(FixedBitSet, SideCounts), FeasibilityError> {
    let robot = sim.robot();
    let t = sim.inst.t;
    let side = side_mask(bt, robot, t)?;
    let holes = sim.cur.holes();
    let t_holes = side.intersection(holes).count();
    let t_obstacles = side.count_ones(..) - t_holes;
    let other_holes = holes.count_ones(..) - t_holes;
    Ok((side, SideCounts { t_holes, t_obstacles, other_holes }))
}

pub(crate) struct Normalizer<'b> {
    bt: &'b BlockTree,
    opts: StrongOptions,
    views: HashMap<usize, BlockView>,
}

impl<'b> Normalizer<'b> {
    pub(crate) fn new(bt: &'b BlockTree, opts: StrongOptions) -> Self {
        Normalizer { bt, opts, views: HashMap::new() }
    }

    /// Runs rounds until one side is exhausted or the robot stands on `t`;
    /// returns the number of rounds.
    pub(crate) fn run(&mut self, sim: &mut SimState<'_>) -> Result<usize, FeasibilityError> {
        let mut rounds = 0;
        loop {
            if sim.robot() == sim.inst.t {
                return Ok(rounds);
            }
            let (_, before) = side_counts(sim, self.bt)?;
            if before.t_obstacles == 0 || before.other_holes == 0 {
                return Ok(rounds);
            }
            let v = sim.robot();
            if self.bt.is_cut(v) {
                self.at_cut_vertex(sim, v)?;
            } else {
                self.inside_block(sim, v)?;
            }
            rounds += 1;
            if sim.robot() == sim.inst.t {
                return Ok(rounds);
            }
            let (_, after) = side_counts(sim, self.bt)?;
            if after.other_holes >= before.other_holes {
                return Err(FeasibilityError::InternalInvariantBroken(format!(
                    "round {rounds} left {} holes off the t-side (was {})",
                    after.other_holes, before.other_holes
                )));
            }
        }
    }

    fn complement_of(&self, keep: &FixedBitSet) -> FixedBitSet {
        let mut out = keep.clone();
        out.toggle_range(..);
        out
    }

    /// Robot on a cut vertex: pull a hole through a block away from `t`
    /// into `v`, stepping the robot into that block.
    fn at_cut_vertex(&mut self, sim: &mut SimState<'_>, v: Vertex) -> Result<(), FeasibilityError> {
        let bt = self.bt;
        let g = &bt.graph;
        let n = g.n();
        let mut removed = FixedBitSet::with_capacity(n);
        removed.insert(v);
        let comp = g.components_without(&removed);
        let t_comp = comp[sim.inst.t];
        let mut comp_holes: HashMap<usize, usize> = HashMap::new();
        for h in sim.cur.holes().ones() {
            if let Some(c) = comp[h] {
                *comp_holes.entry(c).or_default() += 1;
            }
        }
        let candidates: Vec<usize> = bt
            .blocks_of(v)
            .iter()
            .copied()
            .filter(|&b| {
                let other = bt.block(b).iter().copied().find(|&x| x != v).expect("blocks have two or more vertices");
                comp[other] != t_comp && comp[other].is_some_and(|c| comp_holes.get(&c).copied().unwrap_or(0) > 0)
            })
            .collect();
        let b = *self
            .opts
            .order
            .arrange(candidates)
            .first()
            .ok_or_else(|| FeasibilityError::InternalInvariantBroken(format!("no block at {v} leads to a hole")))?;
        let block = bt.block_mask(b);
        if !bt.block(b).iter().any(|&x| sim.cur.is_hole(x)) {
            let cuts: Vec<Vertex> = bt.block_cuts[b].iter().copied().filter(|&w| w != v).collect();
            let mut fed = false;
            for w in self.opts.order.arrange(cuts) {
                let mut forbidden = block.clone();
                forbidden.set(w, false);
                if sim.route_hole(w, &forbidden)? {
                    fed = true;
                    break;
                }
            }
            if !fed {
                return Err(FeasibilityError::InternalInvariantBroken(format!(
                    "no hole could be brought into block {b}"
                )));
            }
        }
        let outside = self.complement_of(&block);
        if !sim.route_hole(v, &outside)? {
            return Err(FeasibilityError::InternalInvariantBroken(format!(
                "block {b} has a hole unreachable from {v}"
            )));
        }
        Ok(())
    }

    /// Robot inside a single block `B`: trade an obstacle of `B` (sitting on
    /// the cut vertex towards a hole-bearing branch) for that hole, then
    /// return the robot to `v`.
    fn inside_block(&mut self, sim: &mut SimState<'_>, v: Vertex) -> Result<(), FeasibilityError> {
        let bt = self.bt;
        let g = &bt.graph;
        let n = g.n();
        let b = bt.blocks_of(v)[0];
        let block = bt.block_mask(b);
        let comp = g.components_without(&block);
        let t = sim.inst.t;
        let t_comp = comp[t];
        let mut comp_holes: HashMap<usize, usize> = HashMap::new();
        for h in sim.cur.holes().ones() {
            if let Some(c) = comp[h] {
                *comp_holes.entry(c).or_default() += 1;
            }
        }
        // (cut vertex, branch component) pairs, ascending.
        let mut branches: Vec<(Vertex, usize)> = Vec::new();
        for &w in &bt.block_cuts[b] {
            let mut seen: Vec<usize> = g.neighbors(w).iter().filter_map(|&x| comp[x]).collect();
            seen.sort_unstable();
            seen.dedup();
            branches.extend(seen.into_iter().map(|c| (w, c)));
        }
        let eligible: Vec<(Vertex, usize)> = branches
            .iter()
            .copied()
            .filter(|&(_, c)| Some(c) != t_comp && comp_holes.get(&c).copied().unwrap_or(0) > 0)
            .collect();
        let (w, c) = *self.opts.order.arrange(eligible).first().ok_or_else(|| {
            FeasibilityError::InternalInvariantBroken(format!("no hole-bearing branch off block {b}"))
        })?;

        let has_obstacle = |sim: &SimState<'_>| bt.block(b).iter().any(|&x| x != sim.robot() && !sim.cur.is_hole(x));
        if !has_obstacle(sim) {
            let (wt, ct) =
                branches.iter().copied().find(|&(_, c)| Some(c) == t_comp).ok_or_else(|| {
                    FeasibilityError::InternalInvariantBroken("t-side has no obstacle to offer".into())
                })?;
            let mut allowed = FixedBitSet::with_capacity(n);
            allowed.extend((0..n).filter(|&x| comp[x] == Some(ct)));
            allowed.insert(wt);
            let path = sim.path_from_obstacle(wt, &self.complement_of(&allowed)).ok_or_else(|| {
                FeasibilityError::InternalInvariantBroken(format!("no obstacle can reach cut vertex {wt}"))
            })?;
            sim.push_along(&path)?;
        }

        if sim.cur.is_hole(w) {
            match sim.path_from_obstacle(w, &self.complement_of(&block)) {
                Some(path) => sim.push_along(&path)?,
                None => {
                    let token = self
                        .opts
                        .order
                        .arrange(
                            bt.block(b).iter().copied().filter(|&x| x != sim.robot() && !sim.cur.is_hole(x)).collect(),
                        )
                        .first()
                        .copied()
                        .ok_or_else(|| {
                            FeasibilityError::InternalInvariantBroken(format!("block {b} holds no obstacle"))
                        })?;
                    let mover = self.opts.mover;
                    self.view(sim, b).move_object(sim, token, w, mover)?;
                }
            }
        }

        let mut allowed = FixedBitSet::with_capacity(n);
        allowed.extend((0..n).filter(|&x| comp[x] == Some(c)));
        allowed.insert(w);
        if !sim.route_hole(w, &self.complement_of(&allowed))? {
            return Err(FeasibilityError::InternalInvariantBroken(format!("branch at {w} lost its hole")));
        }
        if sim.robot() != v {
            let mover = self.opts.mover;
            self.view(sim, b).move_robot(sim, v, mover)?;
        }
        Ok(())
    }

    fn view(&mut self, sim: &SimState<'_>, b: usize) -> &mut BlockView {
        let bt = self.bt;
        self.views.entry(b).or_insert_with(|| BlockView::new(&sim.inst.d, bt.block(b)))
    }
}
