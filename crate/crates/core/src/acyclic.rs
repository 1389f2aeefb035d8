//! Feasibility on acyclic digraphs.
//!
//! Only vertices on some path from s to t matter (`V′`). For each of them the
//! decision needs two numbers: `h(v)`, the holes that can ever be pulled
//! into `v`, and `h_t(v)`, the length of the shortest robot route from `v`
//! to `t` along which every vertex can be supplied with its own hole. Holes
//! only travel against arcs, so a hole pulled into one route vertex can
//! never serve a later one; the route from `v` through successor `w` is
//! viable iff `h(w) >= h_t(w) + 1`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::config::{validate_instance, Instance, Plan};
use crate::error::FeasibilityError;
use crate::graph::{co_reachable_to, is_acyclic, reachable_from, topological_order_within, AcyclicOrdering, Vertex};
use crate::report::{Branch, Diagnostics, FeasibilityReport};
use crate::strong::sim::SimState;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FadTables {
    /// Vertices reachable from `s` that can reach `t`.
    pub v_prime: FixedBitSet,
    /// Hole supply; `None` outside `V′`.
    pub h: Vec<Option<usize>>,
    /// Robot distance to `t`; `None` is infinity (and the value outside `V′`).
    pub h_t: Vec<Option<usize>>,
    /// A successor realizing `h_t`, smallest index on ties.
    pub succ_choice: Vec<Option<Vertex>>,
    /// Acyclic ordering of `D[V′]`.
    pub ordering: AcyclicOrdering,
}

impl FadTables {
    /// Follows `succ_choice` from `s`; `None` when `h_t(s)` is infinite.
    pub fn witness_path(&self, s: Vertex, t: Vertex) -> Option<Vec<Vertex>> {
        self.h_t[s]?;
        let mut path = vec![s];
        let mut cur = s;
        while cur != t {
            cur = self.succ_choice[cur]?;
            path.push(cur);
        }
        Some(path)
    }
}

pub fn relevant_vertices(inst: &Instance) -> FixedBitSet {
    let mut v_prime = reachable_from(&inst.d, inst.s);
    v_prime.intersect_with(&co_reachable_to(&inst.d, inst.t));
    v_prime
}

/// `h(v)` for every `v ∈ V′`: holes reachable from `v` over the whole
/// digraph, `v` itself included. Not restricted to `D[V′]`.
pub fn hole_supply(inst: &Instance) -> Vec<Option<usize>> {
    hole_supply_on(inst, &relevant_vertices(inst))
}

pub(crate) fn hole_supply_on(inst: &Instance, v_prime: &FixedBitSet) -> Vec<Option<usize>> {
    let n = inst.n();
    let mut h = vec![None; n];
    // Visit stamps avoid clearing a seen-array per source.
    let mut stamp = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in v_prime.ones() {
        let mut count = usize::from(inst.start.is_hole(v));
        stamp[v] = v;
        queue.push_back(v);
        while let Some(w) = queue.pop_front() {
            for &x in inst.d.out(w) {
                if stamp[x] != v {
                    stamp[x] = v;
                    queue.push_back(x);
                    count += usize::from(inst.start.is_hole(x));
                }
            }
        }
        h[v] = Some(count);
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTables {
    pub h_t: Vec<Option<usize>>,
    pub succ_choice: Vec<Option<Vertex>>,
    pub ordering: AcyclicOrdering,
}

/// Fills `h_t` over `D[V′]` in reverse acyclic order.
pub fn distance_to_target(inst: &Instance, h: &[Option<usize>]) -> Result<DistanceTables, FeasibilityError> {
    let v_prime = relevant_vertices(inst);
    distance_on(inst, &v_prime, h)
}

fn distance_on(
    inst: &Instance,
    v_prime: &FixedBitSet,
    h: &[Option<usize>],
) -> Result<DistanceTables, FeasibilityError> {
    let n = inst.n();
    let ordering = topological_order_within(&inst.d, v_prime).map_err(|_| FeasibilityError::NotAcyclic)?;
    let order = ordering.order();
    if order.first() != Some(&inst.s) || order.last() != Some(&inst.t) {
        return Err(FeasibilityError::InternalInvariantBroken(
            "acyclic ordering of D[V′] must start at s and end at t".into(),
        ));
    }
    let mut h_t: Vec<Option<usize>> = vec![None; n];
    let mut succ_choice = vec![None; n];
    h_t[inst.t] = Some(0);
    for &v in order.iter().rev().skip(1) {
        let mut best: Option<(usize, Vertex)> = None;
        for &w in inst.d.out(v) {
            if !v_prime.contains(w) {
                continue;
            }
            let (Some(dw), Some(hw)) = (h_t[w], h[w]) else { continue };
            // Viable iff h(w) >= h_t(w) + 1.
            if hw > dw {
                let cand = (dw + 1, w);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        if let Some((dist, w)) = best {
            h_t[v] = Some(dist);
            succ_choice[v] = Some(w);
        }
    }
    Ok(DistanceTables { h_t, succ_choice, ordering })
}

/// Builds all tables without checking acyclicity of the whole digraph.
pub fn fad_tables(inst: &Instance) -> Result<FadTables, FeasibilityError> {
    let v_prime = relevant_vertices(inst);
    let h = hole_supply_on(inst, &v_prime);
    let DistanceTables { h_t, succ_choice, ordering } = distance_on(inst, &v_prime, &h)?;
    Ok(FadTables { v_prime, h, h_t, succ_choice, ordering })
}

pub fn decide_acyclic(inst: &Instance) -> Result<FeasibilityReport, FeasibilityError> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(FeasibilityError::InvalidInstance(violations));
    }
    if !is_acyclic(&inst.d) {
        return Err(FeasibilityError::NotAcyclic);
    }
    let tables = fad_tables(inst)?;
    let witness = tables.witness_path(inst.s, inst.t);
    Ok(FeasibilityReport {
        verdict: tables.h_t[inst.s].is_some(),
        branch: Branch::AcyclicFad,
        diagnostics: Diagnostics::Fad { tables, witness },
    })
}

/// Walks the witness path. Before each robot step into `w_i`, one hole
/// reachable from `w_i` is pulled in by shifting objects forward. The hole
/// chosen is the one least useful later on: the smallest last index `j` with
/// the hole reachable from `w_j`. Reachable sets shrink along the path, so
/// this greedy choice never starves a later step.
pub fn synthesize_plan_acyclic(inst: &Instance) -> Result<Plan, FeasibilityError> {
    let report = decide_acyclic(inst)?;
    let Diagnostics::Fad { witness: Some(path), .. } = report.diagnostics else {
        return Err(FeasibilityError::Infeasible);
    };
    let n = inst.n();
    // last_use[x] = largest i >= 1 with x reachable from path[i].
    let mut last_use = vec![0usize; n];
    for (i, &w) in path.iter().enumerate().skip(1) {
        for x in reachable_from(&inst.d, w).ones() {
            last_use[x] = i;
        }
    }
    let mut sim = SimState::new(inst);
    for i in 1..path.len() {
        let (prev, next) = (path[i - 1], path[i]);
        debug_assert_eq!(sim.cur.robot(), prev);
        if !sim.cur.is_hole(next) {
            let route = hole_route(&sim, next, &last_use).ok_or_else(|| {
                FeasibilityError::InternalInvariantBroken(format!("no hole reachable from witness vertex {next}"))
            })?;
            sim.shift_along(&route)?;
        }
        sim.step((prev, next).into())?;
    }
    Ok(sim.trace)
}

/// Shortest path from `from` to the chosen hole, cut at the first hole on it.
fn hole_route(sim: &SimState<'_>, from: Vertex, last_use: &[usize]) -> Option<Vec<Vertex>> {
    let d = &sim.inst.d;
    let mut parent = vec![usize::MAX; d.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    let mut best: Option<(usize, Vertex)> = None;
    while let Some(x) = queue.pop_front() {
        if sim.cur.is_hole(x) {
            let key = (last_use[x], x);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        for &y in d.out(x) {
            if parent[y] == usize::MAX && y != sim.cur.robot() {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let (_, target) = best?;
    let mut path = vec![target];
    while *path.last().unwrap() != from {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    let cut = path.iter().skip(1).position(|&v| sim.cur.is_hole(v)).map(|p| p + 1)?;
    path.truncate(cut + 1);
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::verify_plan;
    use crate::fixtures;
    use crate::graph::Digraph;
    use crate::oracle::oracle_decide;

    fn set(bits: &FixedBitSet) -> Vec<usize> {
        bits.ones().collect()
    }

    #[test]
    fn relevant_vertices_examples() {
        let d4 = fixtures::d4_fixture().with_holes(&["t"]);
        assert_eq!(set(&relevant_vertices(&d4)), vec![0, 1, 2, 3]);

        // x = 3 only feeds t.
        let d = Digraph::new(4, [(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(set(&relevant_vertices(&Instance::new(d, 0, 2, [2]))), vec![0, 1, 2]);

        // x = 3 is a sink other than t.
        let d = Digraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(set(&relevant_vertices(&Instance::new(d, 0, 2, [2]))), vec![0, 1, 2]);
    }

    #[test]
    fn hole_supply_examples() {
        // Recounted by hand from the definition.
        assert_eq!(hole_supply(&fixtures::p3_open()), vec![Some(2), Some(2), Some(1)]);
        assert_eq!(hole_supply(&fixtures::p3_blocked()), vec![Some(1), Some(1), Some(1)]);
        let none = fixtures::p3_fixture().with_holes(&[]);
        assert_eq!(hole_supply(&none), vec![Some(0), Some(0), Some(0)]);
    }

    #[test]
    fn hole_supply_counts_outside_v_prime() {
        // s→a→t, a→x: x is not in V′ but its hole can still be pulled into a.
        let d = Digraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let inst = Instance::new(d, 0, 2, [2, 3]);
        assert_eq!(hole_supply(&inst)[1], Some(2));
        assert_eq!(hole_supply(&inst)[3], None);
    }

    #[test]
    fn distance_examples() {
        let open = fixtures::p3_open();
        let dist = distance_to_target(&open, &hole_supply(&open)).unwrap();
        assert_eq!(dist.h_t, vec![Some(2), Some(1), Some(0)]);
        assert_eq!(dist.succ_choice, vec![Some(1), Some(2), None]);

        let blocked = fixtures::p3_blocked();
        let dist = distance_to_target(&blocked, &hole_supply(&blocked)).unwrap();
        assert_eq!(dist.h_t, vec![None, Some(1), Some(0)]);
    }

    #[test]
    fn decide_examples_match_oracle() {
        for (inst, expected) in [(fixtures::p3_open(), true), (fixtures::p3_blocked(), false)] {
            let report = decide_acyclic(&inst).unwrap();
            assert_eq!(report.verdict, expected);
            assert_eq!(oracle_decide(&inst).unwrap().feasible, expected);
        }
        let none = fixtures::d4_fixture().with_holes(&[]);
        assert!(!decide_acyclic(&none).unwrap().verdict);
    }

    #[test]
    fn decide_rejects_cycles() {
        assert_eq!(decide_acyclic(&fixtures::c2()).unwrap_err(), FeasibilityError::NotAcyclic);
    }

    #[test]
    fn witness_path_for_p3() {
        let report = decide_acyclic(&fixtures::p3_open()).unwrap();
        let Diagnostics::Fad { witness, .. } = report.diagnostics else { panic!() };
        assert_eq!(witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn synthesized_plans_replay() {
        let plan = synthesize_plan_acyclic(&fixtures::p3_open()).unwrap();
        assert_eq!(plan, Plan::from_iter([(0, 1), (1, 2)]));

        let d4 = fixtures::d4_fixture().with_holes(&["a", "b", "t"]);
        let plan = synthesize_plan_acyclic(&d4).unwrap();
        assert_eq!(plan, Plan::from_iter([(0, 1), (1, 3)]));
        assert!(verify_plan(&d4, &plan).reaches_target);
    }

    #[test]
    fn synthesis_needs_routing() {
        // s→a→b→t with a side hole at x reachable from b only: b→x.
        let d = Digraph::new(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let inst = Instance::new(d, 0, 3, [3, 4, 1]);
        let plan = synthesize_plan_acyclic(&inst).unwrap();
        assert!(verify_plan(&inst, &plan).reaches_target);
    }

    #[test]
    fn synthesis_refuses_infeasible() {
        // s→a→t plus s→x: the hole at x is useless for a.
        let d = Digraph::new(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        let inst = Instance::new(d, 0, 2, [2, 3]);
        assert!(!decide_acyclic(&inst).unwrap().verdict);
        assert!(!oracle_decide(&inst).unwrap().feasible);
        assert_eq!(synthesize_plan_acyclic(&inst), Err(FeasibilityError::Infeasible));
    }
}
