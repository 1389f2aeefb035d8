//! Workloads shared by the integration tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dmp_core::generate::{generate, Family, GenSpec};
use dmp_core::{Digraph, Instance, Vertex};

/// Strongly biconnected pieces of `piece` vertices, each glued at one vertex
/// to a random earlier vertex: a strongly connected digraph with many blocks
/// and about `5n` arcs. `hole_percent` of the vertices hold holes.
pub fn glued_blocks(n: usize, piece: usize, hole_percent: usize, seed: u64) -> Instance {
    assert!(piece >= 2 && n >= piece);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    let mut count = 0;
    let mut sub_seed = seed << 20;
    while count < n {
        let p = if count == 0 { piece } else { piece.min(n - count + 1).max(2) };
        let m = (5 * (p - 1)).clamp(p, p * (p - 1));
        let sub = generate(&GenSpec::new(Family::StronglyBiconnected, p, m, 0, sub_seed)).unwrap().d;
        sub_seed += 1;
        let map: Vec<Vertex> = if count == 0 {
            (0..p).collect()
        } else {
            std::iter::once(rng.gen_range(0..count)).chain(count..count + p - 1).collect()
        };
        count += if count == 0 { p } else { p - 1 };
        arcs.extend(sub.arcs().iter().map(|&(u, v)| (map[u], map[v])));
    }
    let d = Digraph::new(count, arcs).unwrap();
    let s = rng.gen_range(0..count);
    let t = (s + rng.gen_range(1..count)) % count;
    let mut others: Vec<Vertex> = (0..count).filter(|&v| v != s).collect();
    others.shuffle(&mut rng);
    others.truncate(count * hole_percent / 100);
    Instance::new(d, s, t, others)
}
