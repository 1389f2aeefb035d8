//! Directed graphs with dense vertex indices, their underlying undirected
//! graphs, and the traversals the feasibility algorithms are built from.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

/// A vertex is a dense index in `0..n`.
pub type Vertex = usize;

/// Simple digraph: no self-loops, no parallel arcs. Forward and reverse
/// adjacency are kept in sync and never mutated after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl Digraph {
    /// Builds a digraph on `n` vertices. Arcs keep their first-seen order;
    /// repeated arcs are rejected rather than merged.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateArc(u, v));
            }
            list.push((u, v));
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        Ok(Digraph { n, arcs: list, out_adj, in_adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn out(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn inc(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.out_adj[u].contains(&v)
    }

    /// Same vertices, every arc flipped.
    pub fn reversed(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
        }
    }

    /// Sub-digraph induced by `keep`, relabelled to `0..keep.len()` in the
    /// given order. Returns the digraph and the local-to-global map.
    pub fn induced(&self, keep: &[Vertex]) -> (Digraph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        let d = Digraph::new(keep.len(), arcs).expect("induced arcs are valid");
        (d, keep.to_vec())
    }
}

/// Simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if set.insert(key) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Ok(Graph { n, edges: set, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Connected-component label for every vertex not in `removed`
    /// (`None` for removed vertices). Labels are dense, assigned in order of
    /// the lowest vertex of each component.
    pub fn components_without(&self, removed: &FixedBitSet) -> Vec<Option<usize>> {
        let mut label = vec![None; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if removed.contains(root) || label[root].is_some() {
                continue;
            }
            label[root] = Some(next);
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !removed.contains(y) && label[y].is_none() {
                        label[y] = Some(next);
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let labels = self.components_without(&FixedBitSet::with_capacity(self.n));
        labels.iter().all(|l| *l == Some(0))
    }
}

/// A permutation of a vertex subset in which every arc inside the subset
/// points forward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicOrdering {
    order: Vec<Vertex>,
    position: Vec<Option<usize>>,
}

impl AcyclicOrdering {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.position.get(v).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks the forward-arc property against `d`.
    pub fn respects(&self, d: &Digraph) -> bool {
        d.arcs().iter().all(|&(u, v)| match (self.position(u), self.position(v)) {
            (Some(pu), Some(pv)) => pu < pv,
            _ => true,
        })
    }
}

/// Acyclic ordering of all vertices of `d`.
pub fn topological_order(d: &Digraph) -> Result<AcyclicOrdering, GraphError> {
    let mut all = FixedBitSet::with_capacity(d.n());
    all.insert_range(..);
    topological_order_within(d, &all)
}

/// Acyclic ordering of `D[subset]`. Cycle detection is fused into the DFS:
/// an arc into a vertex still on the stack closes a cycle.
pub fn topological_order_within(d: &Digraph, subset: &FixedBitSet) -> Result<AcyclicOrdering, GraphError> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = d.n();
    let mut color = vec![WHITE; n];
    let mut post = Vec::with_capacity(n);
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in subset.ones() {
        if color[root] != WHITE {
            continue;
        }
        color[root] = GREY;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = d.out(v).get(*next) {
                *next += 1;
                if !subset.contains(w) {
                    continue;
                }
                match color[w] {
                    WHITE => {
                        color[w] = GREY;
                        stack.push((w, 0));
                    }
                    GREY => return Err(GraphError::CyclicInput { witness: (v, w) }),
                    _ => {}
                }
            } else {
                color[v] = BLACK;
                post.push(v);
                stack.pop();
            }
        }
    }
    post.reverse();
    let mut position = vec![None; n];
    for (i, &v) in post.iter().enumerate() {
        position[v] = Some(i);
    }
    Ok(AcyclicOrdering { order: post, position })
}

/// Vertices reachable from `v` along arcs, `v` included.
pub fn reachable_from(d: &Digraph, v: Vertex) -> FixedBitSet {
    search(d.n(), v, |x| d.out(x))
}

/// Vertices that can reach `v`, `v` included.
pub fn co_reachable_to(d: &Digraph, v: Vertex) -> FixedBitSet {
    search(d.n(), v, |x| d.inc(x))
}

fn search<'a>(n: usize, start: Vertex, next: impl Fn(Vertex) -> &'a [Vertex]) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::new();
    seen.insert(start);
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for &y in next(x) {
            if !seen.put(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Antiparallel arcs collapse into one edge.
pub fn underlying_graph(d: &Digraph) -> Graph {
    Graph::new(d.n(), d.arcs().iter().copied()).expect("digraph arcs are simple")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Acyclic,
    StronglyConnected,
    Other,
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    if d.n() == 0 {
        return true;
    }
    reachable_from(d, 0).count_ones(..) == d.n() && co_reachable_to(d, 0).count_ones(..) == d.n()
}

pub fn is_acyclic(d: &Digraph) -> bool {
    topological_order(d).is_ok()
}

/// For `n >= 2` the two named classes are disjoint: a strongly connected
/// digraph on two or more vertices always has a cycle.
pub fn classify(d: &Digraph) -> GraphClass {
    if is_acyclic(d) {
        GraphClass::Acyclic
    } else if is_strongly_connected(d) {
        GraphClass::StronglyConnected
    } else {
        GraphClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn set(bits: &FixedBitSet) -> Vec<usize> {
        bits.ones().collect()
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert_eq!(Digraph::new(2, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Digraph::new(2, [(0, 1), (0, 1)]), Err(GraphError::DuplicateArc(0, 1)));
        assert!(matches!(Digraph::new(2, [(0, 5)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn adjacency_mirrors_arcs() {
        let d = Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]).unwrap();
        for &(u, v) in d.arcs() {
            assert!(d.out(u).contains(&v));
            assert!(d.inc(v).contains(&u));
        }
        let total_out: usize = (0..4).map(|v| d.out(v).len()).sum();
        let total_in: usize = (0..4).map(|v| d.inc(v).len()).sum();
        assert_eq!(total_out, d.m());
        assert_eq!(total_in, d.m());
    }

    #[test]
    fn topological_order_of_chain() {
        assert_eq!(topological_order(&chain()).unwrap().order(), &[0, 1, 2]);
    }

    #[test]
    fn topological_order_rejects_two_cycle() {
        let d = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(topological_order(&d), Err(GraphError::CyclicInput { .. })));
    }

    #[test]
    fn topological_order_of_diamond() {
        let d = Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let ord = topological_order(&d).unwrap();
        assert_eq!(ord.position(0), Some(0));
        assert_eq!(ord.position(3), Some(3));
        assert!(ord.respects(&d));
    }

    #[test]
    fn reachability_examples() {
        let c = chain();
        assert_eq!(set(&reachable_from(&c, 0)), vec![0, 1, 2]);
        assert_eq!(set(&reachable_from(&c, 2)), vec![2]);
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(set(&reachable_from(&c3, 1)), vec![0, 1, 2]);

        assert_eq!(set(&co_reachable_to(&c, 2)), vec![0, 1, 2]);
        assert_eq!(set(&co_reachable_to(&c, 0)), vec![0]);
        let diamond = Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(set(&co_reachable_to(&diamond, 3)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn underlying_graph_examples() {
        let c2 = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(underlying_graph(&c2).edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(underlying_graph(&chain()).edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let empty = Digraph::new(3, []).unwrap();
        assert_eq!(underlying_graph(&empty).edge_count(), 0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&chain()), GraphClass::Acyclic);
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(classify(&c3), GraphClass::StronglyConnected);
        let other = Digraph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(classify(&other), GraphClass::Other);
    }

    #[test]
    fn induced_relabels() {
        let d = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let (sub, map) = d.induced(&[2, 0, 1]);
        assert_eq!(map, vec![2, 0, 1]);
        assert_eq!(sub.m(), 3);
        assert!(sub.has_arc(0, 1)); // 2 -> 0
    }

    #[test]
    fn components_without_vertex() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut removed = FixedBitSet::with_capacity(5);
        removed.insert(2);
        let comp = g.components_without(&removed);
        assert_eq!(comp, vec![Some(0), Some(0), None, Some(1), Some(1)]);
    }
}
