//! Biconnected components of the underlying graph and the bipartite
//! block/cut-vertex tree. For a strongly connected digraph the sub-digraph
//! induced by each block is itself strongly connected, so these blocks are
//! exactly its strongly biconnected components.

use fixedbitset::FixedBitSet;

use crate::error::StructureError;
use crate::graph::{is_strongly_connected, underlying_graph, Digraph, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets, each sorted; blocks ordered by their sorted vertex lists.
    pub blocks: Vec<Vec<Vertex>>,
    /// Vertices lying in two or more blocks, ascending.
    pub cut_vertices: Vec<Vertex>,
    /// Block ids containing each vertex, ascending.
    pub block_of: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn is_cut(&self, v: Vertex) -> bool {
        self.block_of[v].len() >= 2
    }

    pub fn contains(&self, block: usize, v: Vertex) -> bool {
        self.blocks[block].binary_search(&v).is_ok()
    }

    /// Blocks containing both `u` and `v` (at most one when `u != v`).
    pub fn shared_block(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.block_of[u].iter().copied().find(|b| self.block_of[v].contains(b))
    }
}

/// Lowpoint DFS with an edge stack; iterative.
pub fn biconnected_components(g: &Graph) -> Result<BlockDecomposition, StructureError> {
    let n = g.n();
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    if n == 1 {
        blocks.push(vec![0]);
    } else if n > 1 {
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut mark = vec![usize::MAX; n];
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = 0;
        low[0] = 0;
        time += 1;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*next) {
                *next += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let id = blocks.len();
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            for x in [a, b] {
                                if mark[x] != id {
                                    mark[x] = id;
                                    verts.push(x);
                                }
                            }
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        blocks.push(verts);
                    }
                }
            }
        }
    }
    blocks.sort();
    let mut block_of = vec![Vec::new(); n];
    for (id, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v].push(id);
        }
    }
    let cut_vertices = (0..n).filter(|&v| block_of[v].len() >= 2).collect();
    Ok(BlockDecomposition { blocks, cut_vertices, block_of })
}

/// Bipartite tree of blocks and cut vertices; `(B, w)` is an edge iff the
/// cut vertex `w` lies in block `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    pub graph: Graph,
    pub decomposition: BlockDecomposition,
    /// Cut vertices of each block, ascending.
    pub block_cuts: Vec<Vec<Vertex>>,
}

impl BlockTree {
    pub fn block_count(&self) -> usize {
        self.decomposition.blocks.len()
    }

    pub fn block(&self, b: usize) -> &[Vertex] {
        &self.decomposition.blocks[b]
    }

    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.decomposition.block_of[v]
    }

    pub fn is_cut(&self, v: Vertex) -> bool {
        self.decomposition.is_cut(v)
    }

    pub fn cut_vertices(&self) -> &[Vertex] {
        &self.decomposition.cut_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.block_cuts.iter().map(Vec::len).sum()
    }

    pub fn block_mask(&self, b: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.graph.n());
        for &v in self.block(b) {
            mask.insert(v);
        }
        mask
    }

    /// Connected and acyclic, checked with union-find over the bipartite
    /// node set (blocks first, then cut vertices).
    pub fn is_tree(&self) -> bool {
        let blocks = self.block_count();
        let cuts = self.cut_vertices();
        let nodes = blocks + cuts.len();
        let mut uf = UnionFind::new(nodes);
        for (b, bc) in self.block_cuts.iter().enumerate() {
            for w in bc {
                let Ok(ci) = cuts.binary_search(w) else { return false };
                if !uf.union(b, blocks + ci) {
                    return false;
                }
            }
        }
        nodes == 0 || (0..nodes).all(|x| uf.find(x) == uf.find(0))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// `false` if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

pub fn block_tree(d: &Digraph) -> Result<BlockTree, StructureError> {
    if !is_strongly_connected(d) {
        return Err(StructureError::NotStronglyConnected);
    }
    let tree = block_tree_unchecked(d)?;
    assert!(tree.is_tree(), "block/cut-vertex graph of a connected graph must be a tree");
    Ok(tree)
}

pub(crate) fn block_tree_unchecked(d: &Digraph) -> Result<BlockTree, StructureError> {
    let graph = underlying_graph(d);
    let decomposition = biconnected_components(&graph)?;
    let block_cuts =
        decomposition.blocks.iter().map(|b| b.iter().copied().filter(|&v| decomposition.is_cut(v)).collect()).collect();
    Ok(BlockTree { graph, decomposition, block_cuts })
}

/// `D[V(B)]` for every block `B` of the underlying graph, with the
/// local-to-global vertex map.
pub fn strongly_biconnected_components(d: &Digraph) -> Result<Vec<(Digraph, Vec<Vertex>)>, StructureError> {
    let tree = block_tree(d)?;
    Ok(tree
        .decomposition
        .blocks
        .iter()
        .map(|b| {
            let (sub, map) = d.induced(b);
            assert!(is_strongly_connected(&sub), "induced block {map:?} is not strongly connected");
            (sub, map)
        })
        .collect())
}

pub fn is_strongly_biconnected(d: &Digraph) -> bool {
    if d.n() <= 1 {
        return true;
    }
    if !is_strongly_connected(d) {
        return false;
    }
    match biconnected_components(&underlying_graph(d)) {
        Ok(dec) => dec.blocks.len() == 1,
        Err(_) => false,
    }
}
