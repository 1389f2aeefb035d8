//! Which vertices lie "towards" `w` as seen from `v`.
//!
//! A cut vertex `v` splits the rest of the graph into components; the
//! `w`-side is the component holding `w`. A non-cut vertex `v` belongs to a
//! single block `B`; the `w`-side is `B - v` together with the component of
//! `G - V(B)` holding `w` (none when `w` is in `B`). `v` itself is on no
//! side.

use fixedbitset::FixedBitSet;

use crate::error::StructureError;
use crate::graph::Vertex;
use crate::structure::blocks::BlockTree;

/// Vertices on the `w`-side of `v`.
pub fn side_mask(bt: &BlockTree, v: Vertex, w: Vertex) -> Result<FixedBitSet, StructureError> {
    if v == w {
        return Err(StructureError::SameVertex);
    }
    let g = &bt.graph;
    let n = g.n();
    let mut mask = FixedBitSet::with_capacity(n);
    if bt.is_cut(v) {
        let mut removed = FixedBitSet::with_capacity(n);
        removed.insert(v);
        let comp = g.components_without(&removed);
        mask.extend((0..n).filter(|&u| comp[u].is_some() && comp[u] == comp[w]));
        return Ok(mask);
    }
    let b = bt.blocks_of(v)[0];
    let block = bt.block_mask(b);
    mask.union_with(&block);
    mask.set(v, false);
    if !block.contains(w) {
        let comp = g.components_without(&block);
        mask.extend((0..n).filter(|&u| comp[u].is_some() && comp[u] == comp[w]));
    }
    Ok(mask)
}

/// Whether `u` is on the `w`-side of `v`.
pub fn t_side(bt: &BlockTree, v: Vertex, w: Vertex, u: Vertex) -> Result<bool, StructureError> {
    Ok(side_mask(bt, v, w)?.contains(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::block_tree;

    #[test]
    fn bidirectional_path_sides() {
        let bp = fixtures::bp_fixture(2);
        let bt = block_tree(&bp.d).unwrap();
        assert!(!t_side(&bt, 1, 2, 0).unwrap());
        assert!(t_side(&bt, 1, 2, 2).unwrap());
        assert!(!t_side(&bt, 1, 2, 1).unwrap());
    }

    #[test]
    fn target_in_own_block() {
        let c3 = fixtures::c3_fixture();
        let bt = block_tree(&c3.d).unwrap();
        assert!(t_side(&bt, c3.s, c3.t, c3.v("a")).unwrap());
        assert!(!t_side(&bt, c3.s, c3.t, c3.s).unwrap());
    }

    #[test]
    fn non_cut_vertex_looks_through_its_block() {
        // s=0 a=1 v1=2 b=3 t=4; a is interior to {s,a,v1}.
        let tt = fixtures::tt_fixture();
        let bt = block_tree(&tt.d).unwrap();
        let mask = side_mask(&bt, 1, 4).unwrap();
        assert_eq!(mask.ones().collect::<Vec<_>>(), vec![0, 2, 3, 4]);
        let mask = side_mask(&bt, 2, 4).unwrap();
        assert_eq!(mask.ones().collect::<Vec<_>>(), vec![3, 4]);
        let mask = side_mask(&bt, 3, 0).unwrap();
        assert_eq!(mask.ones().collect::<Vec<_>>(), vec![0, 1, 2, 4]);
    }

    #[test]
    fn same_vertex_rejected() {
        let bt = block_tree(&fixtures::c3_fixture().d).unwrap();
        assert_eq!(t_side(&bt, 0, 0, 1), Err(StructureError::SameVertex));
    }
}
