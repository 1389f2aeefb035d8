//! Ear decompositions of digraphs.
//!
//! A decomposition starts from a directed cycle and repeatedly attaches an
//! ear to the part built so far: a path whose two distinct endpoints are
//! already present and whose internal vertices and arcs are new (open), or
//! additionally a cycle meeting the built part in a single vertex (closed).
//! A nontrivial digraph has an open decomposition iff it is strongly
//! biconnected and a closed one iff it is strongly connected.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::StructureError;
use crate::graph::{is_strongly_connected, Digraph, Vertex};
use crate::structure::blocks::is_strongly_biconnected;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EarKind {
    Open,
    Closed,
}

/// `tail -> internal... -> head`. `tail == head` makes it a cycle through a
/// single attachment vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub tail: Vertex,
    pub internal: Vec<Vertex>,
    pub head: Vertex,
}

impl Ear {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs = Vec::with_capacity(self.internal.len() + 2);
        vs.push(self.tail);
        vs.extend_from_slice(&self.internal);
        vs.push(self.head);
        vs
    }

    pub fn arcs(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices().windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn is_cycle(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub kind: EarKind,
    /// The starting cycle `c0 -> c1 -> ... -> ck -> c0`.
    pub cycle: Vec<Vertex>,
    /// Ears after the starting cycle, in attachment order.
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn cycle_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.cycle.len();
        (0..k).map(|i| (self.cycle[i], self.cycle[(i + 1) % k])).collect()
    }

    /// Number of ears including the starting cycle.
    pub fn len(&self) -> usize {
        1 + self.ears.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `ear[0]` as `v0 -> v1 -> ... -> v0`, later ears as `tail -> ... -> head`.
    pub fn walks(&self) -> Vec<Vec<Vertex>> {
        let mut first = self.cycle.clone();
        first.push(self.cycle[0]);
        std::iter::once(first).chain(self.ears.iter().map(Ear::vertices)).collect()
    }

    /// Level at which each vertex and arc first appears (0 = starting cycle).
    pub fn levels(&self, n: usize) -> EarLevels {
        let mut vertex = vec![usize::MAX; n];
        let mut arc = HashMap::new();
        for &c in &self.cycle {
            vertex[c] = 0;
        }
        for a in self.cycle_arcs() {
            arc.insert(a, 0);
        }
        for (i, ear) in self.ears.iter().enumerate() {
            for &v in &ear.internal {
                vertex[v] = i + 1;
            }
            for a in ear.arcs() {
                arc.insert(a, i + 1);
            }
        }
        EarLevels { vertex, arc }
    }
}

#[derive(Clone, Debug)]
pub struct EarLevels {
    pub vertex: Vec<usize>,
    pub arc: HashMap<(Vertex, Vertex), usize>,
}

/// Directed cycle found by DFS from vertex 0: the first arc into a vertex
/// still on the DFS stack closes it.
fn initial_cycle(d: &Digraph) -> Option<Vec<Vertex>> {
    let n = d.n();
    let mut on_stack = vec![false; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        seen[root] = true;
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = d.out(v).get(*next) {
                *next += 1;
                if on_stack[w] {
                    let start = stack.iter().position(|&(x, _)| x == w).expect("w is on the stack");
                    return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                }
                if !seen[w] {
                    seen[w] = true;
                    on_stack[w] = true;
                    stack.push((w, 0));
                }
            } else {
                on_stack[v] = false;
                stack.pop();
            }
        }
    }
    None
}

fn search(d: &Digraph, kind: EarKind) -> Option<EarDecomposition> {
    let n = d.n();
    let cycle = initial_cycle(d)?;
    let mut in_di = FixedBitSet::with_capacity(n);
    let mut order: Vec<Vertex> = Vec::with_capacity(n);
    let mut arcs_in: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(d.m());
    for &c in &cycle {
        in_di.insert(c);
        order.push(c);
    }
    let k = cycle.len();
    for i in 0..k {
        arcs_in.insert((cycle[i], cycle[(i + 1) % k]));
    }
    let mut ears = Vec::new();
    let mut parent = vec![usize::MAX; n];
    while arcs_in.len() < d.m() || order.len() < n {
        let ear = chord_ear(d, &order, &in_di, &arcs_in).or_else(|| path_ear(d, &order, &in_di, kind, &mut parent))?;
        for &v in &ear.internal {
            in_di.insert(v);
            order.push(v);
        }
        for a in ear.arcs() {
            arcs_in.insert(a);
        }
        ears.push(ear);
    }
    Some(EarDecomposition { kind, cycle, ears })
}

/// An unused arc between two built vertices.
fn chord_ear(d: &Digraph, order: &[Vertex], in_di: &FixedBitSet, arcs_in: &HashSet<(Vertex, Vertex)>) -> Option<Ear> {
    order.iter().find_map(|&u| {
        d.out(u).iter().find(|&&w| in_di.contains(w) && !arcs_in.contains(&(u, w))).map(|&w| Ear {
            tail: u,
            internal: Vec::new(),
            head: w,
        })
    })
}

/// Leaves the built part along `(u, x)`, explores outside it breadth-first
/// and returns on the first arc back in (to a vertex other than `u` for
/// open ears).
fn path_ear(d: &Digraph, order: &[Vertex], in_di: &FixedBitSet, kind: EarKind, parent: &mut [usize]) -> Option<Ear> {
    let mut touched = Vec::new();
    let mut result = None;
    'outer: for &u in order {
        for &x in d.out(u) {
            if in_di.contains(x) || parent[x] != usize::MAX {
                continue;
            }
            // Starts already explored from this tail cannot succeed; reset
            // between tails.
            parent[x] = x;
            touched.push(x);
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for &w in d.out(y) {
                    if in_di.contains(w) {
                        if w != u || kind == EarKind::Closed {
                            let mut internal = vec![y];
                            while *internal.last().unwrap() != x {
                                internal.push(parent[*internal.last().unwrap()]);
                            }
                            internal.reverse();
                            result = Some(Ear { tail: u, internal, head: w });
                            break 'outer;
                        }
                    } else if parent[w] == usize::MAX {
                        parent[w] = y;
                        touched.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        for &v in &touched {
            parent[v] = usize::MAX;
        }
        touched.clear();
    }
    for &v in &touched {
        parent[v] = usize::MAX;
    }
    result
}

pub fn open_ear_decomposition(d: &Digraph) -> Result<EarDecomposition, StructureError> {
    if d.n() < 2 || !is_strongly_biconnected(d) {
        return Err(StructureError::NotStronglyBiconnected);
    }
    search(d, EarKind::Open).ok_or(StructureError::NotStronglyBiconnected)
}

pub fn closed_ear_decomposition(d: &Digraph) -> Result<EarDecomposition, StructureError> {
    if d.n() < 2 || !is_strongly_connected(d) {
        return Err(StructureError::NotStronglyConnected);
    }
    search(d, EarKind::Closed).ok_or(StructureError::NotStronglyConnected)
}

/// Checks every defining condition of `e` against `d`.
pub fn validate_ear_decomposition(d: &Digraph, e: &EarDecomposition) -> bool {
    let n = d.n();
    let k = e.cycle.len();
    if k < 2 || e.cycle.iter().any(|&v| v >= n) {
        return false;
    }
    let mut in_di = FixedBitSet::with_capacity(n);
    for &c in &e.cycle {
        if in_di.put(c) {
            return false;
        }
    }
    let mut arcs_in = HashSet::new();
    for a in e.cycle_arcs() {
        if !d.has_arc(a.0, a.1) || !arcs_in.insert(a) {
            return false;
        }
    }
    for ear in &e.ears {
        if ear.tail >= n || ear.head >= n || !in_di.contains(ear.tail) || !in_di.contains(ear.head) {
            return false;
        }
        if ear.is_cycle() && (e.kind == EarKind::Open || ear.internal.is_empty()) {
            return false;
        }
        let mut fresh = FixedBitSet::with_capacity(n);
        for &v in &ear.internal {
            if v >= n || in_di.contains(v) || fresh.put(v) {
                return false;
            }
        }
        for a in ear.arcs() {
            if !d.has_arc(a.0, a.1) || arcs_in.contains(&a) {
                return false;
            }
        }
        in_di.union_with(&fresh);
        arcs_in.extend(ear.arcs());
    }
    in_di.count_ones(..) == n && arcs_in.len() == d.m()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn c3_is_a_single_ear() {
        let d = fixtures::c3_fixture().d;
        let e = open_ear_decomposition(&d).unwrap();
        assert_eq!(e.cycle, vec![0, 1, 2]);
        assert!(e.ears.is_empty());
        assert!(validate_ear_decomposition(&d, &e));
        let closed = closed_ear_decomposition(&d).unwrap();
        assert_eq!(closed.len(), 1);
    }

    #[test]
    fn c2_with_bypass() {
        // s=0, t=1, x=2: s⇄t plus s→x→t.
        let d = Digraph::new(3, [(0, 1), (1, 0), (0, 2), (2, 1)]).unwrap();
        let e = open_ear_decomposition(&d).unwrap();
        assert_eq!(e.walks(), vec![vec![0, 1, 0], vec![0, 2, 1]]);
        assert!(validate_ear_decomposition(&d, &e));
    }

    #[test]
    fn tt_needs_a_closed_ear() {
        let d = fixtures::tt_fixture().d;
        assert_eq!(open_ear_decomposition(&d), Err(StructureError::NotStronglyBiconnected));
        let e = closed_ear_decomposition(&d).unwrap();
        // s=0 a=1 v1=2 b=3 t=4
        assert_eq!(e.walks(), vec![vec![0, 1, 2, 0], vec![2, 3, 4, 2]]);
        assert!(validate_ear_decomposition(&d, &e));
    }

    #[test]
    fn acyclic_has_no_closed_decomposition() {
        let d = fixtures::p3_fixture().d;
        assert_eq!(closed_ear_decomposition(&d), Err(StructureError::NotStronglyConnected));
    }

    #[test]
    fn trivial_digraph_rejected() {
        let d = Digraph::new(1, []).unwrap();
        assert!(open_ear_decomposition(&d).is_err());
    }

    #[test]
    fn validator_catches_broken_decompositions() {
        let d = Digraph::new(3, [(0, 1), (1, 0), (0, 2), (2, 1)]).unwrap();
        let good = open_ear_decomposition(&d).unwrap();

        let mut shares_internal = good.clone();
        shares_internal.ears[0].internal = vec![1];
        assert!(!validate_ear_decomposition(&d, &shares_internal));

        let mut misses_arc = good.clone();
        misses_arc.ears.clear();
        assert!(!validate_ear_decomposition(&d, &misses_arc));

        let mut not_a_cycle = good;
        not_a_cycle.cycle = vec![0, 2];
        assert!(!validate_ear_decomposition(&d, &not_a_cycle));
    }

    #[test]
    fn open_kind_rejects_cycle_ears() {
        let d = fixtures::tt_fixture().d;
        let mut e = closed_ear_decomposition(&d).unwrap();
        assert!(validate_ear_decomposition(&d, &e));
        e.kind = EarKind::Open;
        assert!(!validate_ear_decomposition(&d, &e));
    }

    #[test]
    fn levels_track_first_appearance() {
        let d = Digraph::new(3, [(0, 1), (1, 0), (0, 2), (2, 1)]).unwrap();
        let e = open_ear_decomposition(&d).unwrap();
        let lv = e.levels(3);
        assert_eq!(lv.vertex, vec![0, 0, 1]);
        assert_eq!(lv.arc[&(0, 2)], 1);
        assert_eq!(lv.arc[&(1, 0)], 0);
    }
}
