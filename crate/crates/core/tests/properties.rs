//! Invariants as properties over generated instances.

use proptest::prelude::*;

use dmp_core::acyclic::decide_acyclic;
use dmp_core::config::{verify_plan, Move};
use dmp_core::generate::{generate, Family, GenSpec};
use dmp_core::graph::{classify, GraphClass};
use dmp_core::io::{parse_instance, parse_plan, serialize_instance, serialize_plan};
use dmp_core::oracle::{oracle_decide, successors, StateKey};
use dmp_core::report::Diagnostics;
use dmp_core::strong::{block_path, bottleneck_l, bottleneck_l_linear};
use dmp_core::structure::{block_tree, is_strongly_biconnected, side_mask, t_side};
use dmp_core::Instance;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// A satisfiable spec: `n` in `2..=max_n`, arc count and holes in range.
fn spec(max_n: usize) -> impl Strategy<Value = GenSpec> {
    (family(), 2..=max_n, any::<u64>(), 0.0f64..1.0, 0.0f64..1.0).prop_map(|(family, n, seed, a, b)| {
        let (lo, hi) = match family {
            Family::Acyclic => (n - 1, n * (n - 1) / 2),
            Family::Strong | Family::StronglyBiconnected => (n, n * (n - 1)),
            Family::BidirPath => (0, 0),
        };
        let m = lo + ((hi - lo) as f64 * a) as usize;
        let k = ((n - 1) as f64 * b) as usize;
        GenSpec::new(family, n, m, k, seed)
    })
}

fn acyclic_spec(max_n: usize) -> impl Strategy<Value = GenSpec> {
    (2..=max_n, any::<u64>(), 0.0f64..1.0, 0.0f64..1.0).prop_map(|(n, seed, a, b)| {
        let m = n - 1 + ((n * (n - 1) / 2 + 1 - n) as f64 * a) as usize;
        GenSpec::new(Family::Acyclic, n, m, ((n - 1) as f64 * b) as usize, seed)
    })
}

fn strong_spec(max_n: usize) -> impl Strategy<Value = GenSpec> {
    (2..=max_n, any::<u64>(), 0.0f64..1.0).prop_map(|(n, seed, a)| {
        let m = n + ((n * (n - 1) - n) as f64 * a * 0.3) as usize;
        GenSpec::new(Family::Strong, n, m, n / 2, seed)
    })
}

/// Fewest moves to put the robot on `t`, by level-set expansion.
fn goal_depth(inst: &Instance) -> Option<usize> {
    use std::collections::BTreeSet;
    let start = StateKey::from_config(&inst.start);
    let mut seen = BTreeSet::from([start]);
    let mut level = vec![start];
    let mut depth = 0;
    while !level.is_empty() {
        if level.iter().any(|k| k.robot == inst.t) {
            return Some(depth);
        }
        let next: BTreeSet<StateKey> =
            level.iter().flat_map(|&k| successors(&inst.d, k)).map(|(_, k)| k).filter(|k| !seen.contains(k)).collect();
        seen.extend(next.iter().copied());
        level = next.into_iter().collect();
        depth += 1;
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generator_keeps_its_promises(spec in spec(12)) {
        let inst = generate(&spec).unwrap();
        prop_assert_eq!(inst.n(), spec.n);
        prop_assert_eq!(inst.start.hole_count(), spec.k);
        prop_assert!(!inst.start.is_hole(inst.s));
        match spec.family {
            Family::Acyclic => {
                // Repairs for reachability and connectivity may add arcs.
                prop_assert!(inst.d.m() >= spec.m && inst.d.m() < spec.m + spec.n);
                prop_assert_eq!(classify(&inst.d), GraphClass::Acyclic);
            }
            Family::Strong => {
                prop_assert_eq!(inst.d.m(), spec.m);
                prop_assert_eq!(classify(&inst.d), GraphClass::StronglyConnected);
            }
            Family::StronglyBiconnected => {
                prop_assert_eq!(inst.d.m(), spec.m);
                prop_assert!(is_strongly_biconnected(&inst.d));
            }
            Family::BidirPath => prop_assert_eq!(inst.d.m(), 2 * (spec.n - 1)),
        }
    }

    #[test]
    fn generator_is_deterministic(spec in spec(12)) {
        prop_assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn instance_text_round_trips(spec in spec(12)) {
        let inst = generate(&spec).unwrap();
        prop_assert_eq!(parse_instance(&serialize_instance(&inst, None)).unwrap(), inst.clone());
        let labels: Vec<String> = (0..inst.n()).map(|v| format!("x{v}")).collect();
        prop_assert_eq!(parse_instance(&serialize_instance(&inst, Some(&labels))).unwrap(), inst);
    }

    /// Moving an object along `u -> v` is the hole moving along `v -> u`.
    #[test]
    fn moves_carry_holes_backwards(spec in spec(10), pick in any::<prop::sample::Index>()) {
        let inst = generate(&spec).unwrap();
        let key = StateKey::from_config(&inst.start);
        let moves = successors(&inst.d, key);
        prop_assume!(!moves.is_empty());
        let (m, next) = moves[pick.index(moves.len())];
        let after = inst.start.apply_move(m, &inst.d).unwrap();
        prop_assert_eq!(StateKey::from_config(&after), next);
        prop_assert!(after.is_hole(m.from) && !after.is_hole(m.to));
        prop_assert_eq!(after.hole_count(), inst.start.hole_count());
        for v in (0..inst.n()).filter(|&v| v != m.from && v != m.to) {
            prop_assert_eq!(after.is_hole(v), inst.start.is_hole(v));
        }
    }

    /// The oracle's successors are exactly the arcs `apply_move` accepts.
    #[test]
    fn successors_match_legal_moves(spec in spec(10)) {
        let inst = generate(&spec).unwrap();
        let mut generated: Vec<Move> = successors(&inst.d, StateKey::from_config(&inst.start)).into_iter().map(|(m, _)| m).collect();
        let mut legal: Vec<Move> = Vec::new();
        for &(u, v) in inst.d.arcs() {
            let expected = !inst.start.is_hole(u) && inst.start.is_hole(v);
            let accepted = inst.start.apply_move(Move::new(u, v), &inst.d).is_ok();
            prop_assert_eq!(accepted, expected);
            if accepted {
                legal.push(Move::new(u, v));
            }
        }
        generated.sort_by_key(|m| (m.from, m.to));
        legal.sort_by_key(|m| (m.from, m.to));
        prop_assert_eq!(generated, legal);
    }

    /// A state with a feasible successor is itself feasible.
    #[test]
    fn oracle_is_closed_under_moves(spec in spec(8)) {
        let inst = generate(&spec).unwrap();
        let feasible = oracle_decide(&inst).unwrap().feasible;
        for (_, next) in successors(&inst.d, StateKey::from_config(&inst.start)) {
            let moved = inst.with_start(next.to_config(inst.n()));
            let next_feasible = moved.s == moved.t
                || oracle_decide(&Instance { s: moved.s, ..moved.clone() }).unwrap().feasible;
            prop_assert!(!next_feasible || feasible);
        }
    }

    #[test]
    fn oracle_plans_replay(spec in spec(8)) {
        let inst = generate(&spec).unwrap();
        let out = oracle_decide(&inst).unwrap();
        prop_assert_eq!(out.shortest_plan.is_some(), out.feasible);
        prop_assert_eq!(out.shortest_plan.as_ref().map(|p| p.len()), goal_depth(&inst));
        if let Some(plan) = out.shortest_plan {
            let check = verify_plan(&inst, &plan);
            prop_assert!(check.ok && check.reaches_target);
            let labels: Vec<String> = (0..inst.n()).map(|v| v.to_string()).collect();
            prop_assert_eq!(parse_plan(&serialize_plan(&plan, None), &labels).unwrap(), plan);
        }
    }

    /// Along the witness path the remaining distance drops by one per step
    /// and every step has its own hole to spare.
    #[test]
    fn acyclic_witness_is_consistent(spec in acyclic_spec(12)) {
        let inst = generate(&spec).unwrap();
        let report = decide_acyclic(&inst).unwrap();
        let Diagnostics::Fad { tables, witness } = report.diagnostics else { unreachable!() };
        prop_assert_eq!(witness.is_some(), report.verdict);
        if let Some(path) = witness {
            prop_assert_eq!(path.first(), Some(&inst.s));
            prop_assert_eq!(path.last(), Some(&inst.t));
            for (i, &v) in path.iter().enumerate() {
                prop_assert_eq!(tables.h_t[v], Some(path.len() - 1 - i));
                if i > 0 {
                    prop_assert!(inst.d.has_arc(path[i - 1], v));
                    prop_assert!(tables.h[v].unwrap() > tables.h_t[v].unwrap());
                }
            }
        }
    }

    /// A side is closed under its members, and once the part common to all
    /// sides of `v` is removed the sides partition the remaining vertices.
    #[test]
    fn sides_nest_and_partition(spec in strong_spec(14), v in any::<prop::sample::Index>()) {
        let inst = generate(&spec).unwrap();
        let bt = block_tree(&inst.d).unwrap();
        let n = inst.n();
        let v = v.index(n);
        let sides: Vec<_> = (0..n).filter(|&w| w != v).map(|w| (w, side_mask(&bt, v, w).unwrap())).collect();
        let mut core = sides[0].1.clone();
        for (_, side) in &sides {
            core.intersect_with(side);
        }
        // Only a non-cut vertex has a nonempty common part: its block minus itself.
        if bt.is_cut(v) {
            prop_assert_eq!(core.count_ones(..), 0);
        } else {
            let mut block = bt.block_mask(bt.blocks_of(v)[0]);
            block.set(v, false);
            prop_assert_eq!(&core, &block);
        }
        let mut covered = vec![0usize; n];
        let mut distinct: Vec<_> = Vec::new();
        for (w, side) in &sides {
            prop_assert!(side.contains(*w) && !side.contains(v));
            for u in side.ones() {
                prop_assert!(t_side(&bt, v, *w, u).unwrap());
                prop_assert!(side_mask(&bt, v, u).unwrap().is_subset(side));
            }
            let mut rest = side.clone();
            rest.difference_with(&core);
            if !distinct.contains(&rest) {
                for u in rest.ones() {
                    covered[u] += 1;
                }
                distinct.push(rest);
            }
        }
        for u in (0..n).filter(|&u| u != v && !core.contains(u)) {
            prop_assert_eq!(covered[u], 1, "vertex {} lies in {} sides of {}", u, covered[u], v);
        }
    }

    #[test]
    fn bottleneck_scans_agree(spec in strong_spec(16)) {
        let inst = generate(&spec).unwrap();
        let bt = block_tree(&inst.d).unwrap();
        for s in 0..inst.n() {
            if let Ok(bp) = block_path(&bt, s, inst.t) {
                let l = bottleneck_l(&bp, &bt);
                prop_assert_eq!(l, bottleneck_l_linear(&bp, &bt));
                prop_assert!(l >= 1 && l <= bp.r());
            }
        }
    }
}
