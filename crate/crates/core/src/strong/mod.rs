//! Feasibility on strongly connected digraphs.
//!
//! Holes are first gathered onto the robot's `t`-side by legal moves (which
//! never change feasibility on a strongly connected digraph). The verdict
//! then depends only on how many holes sit on that side: one suffices when
//! the robot shares a block with `t`; otherwise the longest unreplenished
//! run of two-vertex blocks on the way to `t` sets the price.

pub mod mover;
pub mod normalize;
pub mod sim;

use std::collections::VecDeque;

use crate::config::{validate_instance, Instance};
use crate::error::{FeasibilityError, StructureError};
use crate::graph::{is_strongly_connected, Vertex};
use crate::report::{Branch, Diagnostics, FeasibilityReport, StrongDiagnostics};
use crate::structure::blocks::{block_tree, is_strongly_biconnected, BlockTree};

pub use mover::{move_object_in_block, move_robot_in_block, BlockView, MoverStrategy};
pub use normalize::{side_counts, SelectionOrder, SideCounts, StrongOptions};
pub use sim::SimState;

/// `B_0 v_1 B_1 ... v_r B_r` in the block tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPath {
    /// Block ids `B_0..=B_r`.
    pub blocks: Vec<usize>,
    /// Cut vertices `v_1..=v_r`.
    pub cuts: Vec<Vertex>,
}

impl BlockPath {
    pub fn r(&self) -> usize {
        self.cuts.len()
    }
}

/// Tree path from the robot's block to `t`'s block, with endpoint blocks
/// chosen so that neither `s′` nor `t` is an interior cut vertex.
pub fn block_path(bt: &BlockTree, s_prime: Vertex, t: Vertex) -> Result<BlockPath, FeasibilityError> {
    if bt.decomposition.shared_block(s_prime, t).is_some() {
        return Err(FeasibilityError::SameBlock);
    }
    let nb = bt.block_count();
    let cuts = bt.cut_vertices();
    // Tree nodes: blocks `0..nb`, then cut vertices by rank.
    let node_of = |v: Vertex| match cuts.binary_search(&v) {
        Ok(rank) => nb + rank,
        Err(_) => bt.blocks_of(v)[0],
    };
    let neighbours = |x: usize| -> Vec<usize> {
        if x < nb {
            bt.block_cuts[x].iter().map(|&w| node_of(w)).collect()
        } else {
            bt.blocks_of(cuts[x - nb]).to_vec()
        }
    };
    let (from, to) = (node_of(s_prime), node_of(t));
    let total = nb + cuts.len();
    let mut parent = vec![usize::MAX; total];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in neighbours(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[to] == usize::MAX {
        return Err(StructureError::Disconnected.into());
    }
    let mut nodes = vec![to];
    while *nodes.last().unwrap() != from {
        nodes.push(parent[*nodes.last().unwrap()]);
    }
    nodes.reverse();
    if from >= nb {
        nodes.remove(0);
    }
    if to >= nb {
        nodes.pop();
    }
    let blocks = nodes.iter().copied().filter(|&x| x < nb).collect();
    let cuts = nodes.iter().copied().filter(|&x| x >= nb).map(|x| cuts[x - nb]).collect();
    Ok(BlockPath { blocks, cuts })
}

struct PathShape {
    r: usize,
    /// `|B_k| >= 3` for `k = 0..=r`.
    big: Vec<bool>,
    /// Some block off the path attaches at `v_k`; index `k = 1..=r`.
    branch: Vec<bool>,
}

impl PathShape {
    fn new(bp: &BlockPath, bt: &BlockTree) -> Self {
        let r = bp.r();
        let big = bp.blocks.iter().map(|&b| bt.block(b).len() >= 3).collect();
        let mut branch = vec![false; r + 1];
        for (k, &v) in bp.cuts.iter().enumerate() {
            branch[k + 1] = bt.blocks_of(v).len() > 2;
        }
        PathShape { r, big, branch }
    }

    fn starts(&self, i: usize) -> bool {
        i == 1 || self.big[i - 1] || self.branch[i]
    }

    fn ends(&self, j: usize) -> bool {
        j == self.r || self.big[j] || self.branch[j]
    }

    fn bare_run(&self, i: usize, j: usize) -> bool {
        (i..j).all(|k| !self.big[k]) && (i + 1..j).all(|k| !self.branch[k])
    }
}

/// Longest `j - i + 1` over index pairs whose stretch `v_i..v_j` runs
/// through two-vertex blocks only, with nowhere to park a hole strictly
/// inside and a parking spot (or the path end) at both ends. `O(r²)`.
pub fn bottleneck_l(bp: &BlockPath, bt: &BlockTree) -> usize {
    let shape = PathShape::new(bp, bt);
    let r = shape.r;
    let mut best = None;
    for i in 1..=r {
        if !shape.starts(i) {
            continue;
        }
        for j in i..=r {
            if !shape.bare_run(i, j) {
                break;
            }
            if shape.ends(j) {
                best = best.max(Some(j - i + 1));
            }
        }
    }
    best.expect("i = 1 always starts a valid stretch")
}

/// Same value as [`bottleneck_l`] in `O(r)`: from each valid start the
/// best end is the furthest one the bare run can reach.
pub fn bottleneck_l_linear(bp: &BlockPath, bt: &BlockTree) -> usize {
    let shape = PathShape::new(bp, bt);
    let r = shape.r;
    let mut reach = vec![0usize; r + 2];
    for i in (1..=r).rev() {
        reach[i] = if i == r || shape.big[i] {
            i
        } else if shape.branch[i + 1] {
            i + 1
        } else {
            reach[i + 1]
        };
    }
    (1..=r).filter(|&i| shape.starts(i)).map(|i| reach[i] - i + 1).max().unwrap_or(0)
}

pub fn decide_strong(inst: &Instance) -> Result<FeasibilityReport, FeasibilityError> {
    decide_strong_with(inst, StrongOptions::default())
}

pub fn decide_strong_with(inst: &Instance, opts: StrongOptions) -> Result<FeasibilityReport, FeasibilityError> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(FeasibilityError::InvalidInstance(violations));
    }
    if !is_strongly_connected(&inst.d) {
        return Err(FeasibilityError::NotStronglyConnected);
    }
    if is_strongly_biconnected(&inst.d) {
        let holes = inst.start.hole_count();
        return Ok(FeasibilityReport {
            verdict: holes >= 1,
            branch: Branch::SameBlock,
            diagnostics: Diagnostics::Strong(StrongDiagnostics {
                fast_path: true,
                settled_robot: inst.s,
                iterations: 0,
                holes_on_t_side: holes,
                obstacles_on_t_side: inst.n() - 1 - holes,
                block_path: None,
                bottleneck: None,
                trace: Default::default(),
            }),
        });
    }
    let bt = block_tree(&inst.d)?;
    let mut sim = SimState::new(inst);
    let iterations = normalize::Normalizer::new(&bt, opts).run(&mut sim)?;
    debug_assert!(sim.replay_matches(), "normalization trace diverged from its state");
    let s_prime = sim.robot();
    let mut diag = StrongDiagnostics {
        fast_path: false,
        settled_robot: s_prime,
        iterations,
        holes_on_t_side: 0,
        obstacles_on_t_side: 0,
        block_path: None,
        bottleneck: None,
        trace: Default::default(),
    };
    let (verdict, branch) = if s_prime == inst.t {
        (true, Branch::SameBlock)
    } else {
        let (_, counts) = side_counts(&sim, &bt)?;
        diag.holes_on_t_side = counts.t_holes;
        diag.obstacles_on_t_side = counts.t_obstacles;
        if bt.decomposition.shared_block(s_prime, inst.t).is_some() {
            (counts.t_holes >= 1, Branch::SameBlock)
        } else {
            let bp = block_path(&bt, s_prime, inst.t)?;
            let l = bottleneck_l(&bp, &bt);
            debug_assert_eq!(l, bottleneck_l_linear(&bp, &bt));
            diag.block_path = Some(bp);
            diag.bottleneck = Some(l);
            (counts.t_holes > l, Branch::CrossBlock)
        }
    };
    diag.trace = sim.trace;
    Ok(FeasibilityReport { verdict, branch, diagnostics: Diagnostics::Strong(diag) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::verify_plan;
    use crate::fixtures;
    use crate::graph::Digraph;
    use crate::oracle::{enumerate_instances, oracle_decide};
    use crate::structure::block_tree;

    fn strong(report: &FeasibilityReport) -> &StrongDiagnostics {
        match &report.diagnostics {
            Diagnostics::Strong(sd) => sd,
            other => panic!("unexpected diagnostics {other:?}"),
        }
    }

    #[test]
    fn c3_one_hole_is_enough() {
        let inst = fixtures::c3_fixture().with_holes(&["a"]);
        let report = decide_strong(&inst).unwrap();
        assert!(report.verdict);
        assert!(strong(&report).fast_path);
    }

    #[test]
    fn bidirectional_path_needs_every_hole() {
        let bp = fixtures::bp_fixture(3);
        assert!(!decide_strong(&bp.with_holes(&["u1", "u2"])).unwrap().verdict);
        assert!(!decide_strong(&bp.with_holes(&["u2", "u3"])).unwrap().verdict);
        let all = decide_strong(&bp.with_holes(&["u1", "u2", "u3"])).unwrap();
        assert!(all.verdict);
        assert_eq!(all.branch, Branch::CrossBlock);
        assert_eq!(strong(&all).bottleneck, Some(2));
    }

    #[test]
    fn tt_threshold() {
        let tt = fixtures::tt_fixture();
        let one = decide_strong(&tt.with_holes(&["t"])).unwrap();
        assert!(!one.verdict);
        assert_eq!(strong(&one).bottleneck, Some(1));
        assert!(decide_strong(&tt.with_holes(&["b", "t"])).unwrap().verdict);
    }

    #[test]
    fn block_path_examples() {
        let tt = fixtures::tt_fixture();
        let bt = block_tree(&tt.d).unwrap();
        let bp = block_path(&bt, 0, 4).unwrap();
        assert_eq!(
            bp.blocks.iter().map(|&b| bt.block(b).to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![2, 3, 4]]
        );
        assert_eq!(bp.cuts, vec![2]);

        let bp3 = fixtures::bp_fixture(3);
        let bt = block_tree(&bp3.d).unwrap();
        let path = block_path(&bt, 0, 3).unwrap();
        assert_eq!(path.r(), 2);
        assert_eq!(path.cuts, vec![1, 2]);
        // From a cut vertex the first block is the one towards t.
        let path = block_path(&bt, 1, 3).unwrap();
        assert_eq!(path.cuts, vec![2]);

        let c3 = fixtures::c3_fixture();
        let bt = block_tree(&c3.d).unwrap();
        assert_eq!(block_path(&bt, 0, 2), Err(FeasibilityError::SameBlock));
    }

    #[test]
    fn bottleneck_examples() {
        for m in 2..=6 {
            let bp = fixtures::bp_fixture(m);
            let bt = block_tree(&bp.d).unwrap();
            let path = block_path(&bt, 0, m).unwrap();
            assert_eq!(bottleneck_l(&path, &bt), m - 1);
            assert_eq!(bottleneck_l_linear(&path, &bt), m - 1);
        }
        let tt = fixtures::tt_fixture();
        let bt = block_tree(&tt.d).unwrap();
        assert_eq!(bottleneck_l(&block_path(&bt, 0, 4).unwrap(), &bt), 1);
    }

    /// Blocks along the path: {0,1}, triangle {1,2,3}, {3,4}, {4,5}, {5,6};
    /// `r = 4`, the triangle is `B_1`.
    fn triangle_chain() -> Digraph {
        Digraph::new(7, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (3, 4), (4, 3), (4, 5), (5, 4), (5, 6), (6, 5)])
            .unwrap()
    }

    #[test]
    fn bottleneck_after_replenishment() {
        let d = triangle_chain();
        let bt = block_tree(&d).unwrap();
        let path = block_path(&bt, 0, 6).unwrap();
        assert_eq!(path.r(), 4);
        assert_eq!(bottleneck_l(&path, &bt), 3);
        assert_eq!(bottleneck_l_linear(&path, &bt), 3);
    }

    #[test]
    fn fixtures_agree_with_oracle() {
        let cases = [fixtures::tt_fixture(), fixtures::bp_fixture(2), fixtures::bp_fixture(3), fixtures::c3_fixture()];
        for f in cases {
            for inst in enumerate_instances(&f.d, f.s, f.t) {
                let report = decide_strong(&inst).unwrap();
                let truth = oracle_decide(&inst).unwrap().feasible;
                assert_eq!(report.verdict, truth, "{inst:?}");
                let check = verify_plan(&inst, &strong(&report).trace);
                assert!(check.ok);
            }
        }
    }

    #[test]
    fn triangle_chain_agrees_with_oracle() {
        let d = triangle_chain();
        for s in 0..7 {
            for t in (0..7).filter(|&t| t != s) {
                for inst in enumerate_instances(&d, s, t) {
                    for mover in [MoverStrategy::EarInduction, MoverStrategy::HolePairSearch] {
                        let opts = StrongOptions { mover, ..Default::default() };
                        let report = decide_strong_with(&inst, opts).unwrap();
                        assert_eq!(report.verdict, oracle_decide(&inst).unwrap().feasible, "{inst:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_strong() {
        assert_eq!(decide_strong(&fixtures::p3_open()).unwrap_err(), FeasibilityError::NotStronglyConnected);
    }

    #[test]
    fn tt_normalization_pulls_hole_forward() {
        // Robot at v1 with the only non-t-side hole at s.
        let tt = fixtures::tt_fixture();
        let inst = Instance::new(tt.d.clone(), 2, 4, [0, 4]);
        let bt = block_tree(&inst.d).unwrap();
        let mut sim = SimState::new(&inst);
        let rounds = normalize::Normalizer::new(&bt, StrongOptions::default()).run(&mut sim).unwrap();
        assert_eq!(rounds, 1);
        assert!(verify_plan(&inst, &sim.trace).ok);
        assert!(bt.block(0).contains(&sim.robot()));
        let (_, counts) = side_counts(&sim, &bt).unwrap();
        assert_eq!(counts.other_holes, 0);
    }
}
