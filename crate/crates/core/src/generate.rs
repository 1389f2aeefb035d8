//! Seeded random instances with guaranteed structure.
//!
//! Strongly connected digraphs are grown ear by ear from a cycle, so the
//! construction itself certifies the class; each result is still
//! re-checked before it is returned.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{validate_instance, Instance};
use crate::error::GenError;
use crate::graph::{classify, Digraph, GraphClass, Vertex};
use crate::structure::blocks::is_strongly_biconnected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Acyclic,
    Strong,
    StronglyBiconnected,
    BidirPath,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Acyclic, Family::Strong, Family::StronglyBiconnected, Family::BidirPath];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Acyclic => "acyclic",
            Family::Strong => "strong",
            Family::StronglyBiconnected => "strongly-biconnected",
            Family::BidirPath => "bidir-path",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| GenError::UnsatisfiableSpec(format!("unknown family `{s}`")))
    }
}

/// `m` is an arc budget: the acyclic family may add a few repair arcs and
/// the bidirectional path ignores it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    /// Number of holes.
    pub k: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, m: usize, k: usize, seed: u64) -> Self {
        GenSpec { family, n, m, k, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GenSpec { seed, ..self }
    }
}

fn unsat(msg: impl Into<String>) -> GenError {
    GenError::UnsatisfiableSpec(msg.into())
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    let GenSpec { family, n, m, k, seed } = *spec;
    if n < 2 {
        return Err(unsat("at least two vertices are needed"));
    }
    if k > n - 1 {
        return Err(unsat(format!("{k} holes do not fit beside the robot in {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, s, t) = match family {
        Family::Acyclic => acyclic(n, m, &mut rng)?,
        Family::Strong | Family::StronglyBiconnected => {
            let d = ear_built(n, m, family == Family::StronglyBiconnected, &mut rng)?;
            let s = rng.gen_range(0..n);
            let t = (s + rng.gen_range(1..n)) % n;
            (d, s, t)
        }
        Family::BidirPath => {
            let d = Digraph::new(n, (0..n - 1).flat_map(|i| [(i, i + 1), (i + 1, i)])).expect("path arcs are valid");
            (d, 0, n - 1)
        }
    };
    let others: Vec<Vertex> = (0..n).filter(|&v| v != s).collect();
    let holes: Vec<Vertex> = others.choose_multiple(&mut rng, k).copied().collect();
    let inst = Instance::new(d, s, t, holes);

    let class_ok = match family {
        Family::Acyclic => classify(&inst.d) == GraphClass::Acyclic,
        Family::Strong | Family::BidirPath => classify(&inst.d) == GraphClass::StronglyConnected,
        Family::StronglyBiconnected => is_strongly_biconnected(&inst.d),
    };
    assert!(class_ok, "generator broke its {family} guarantee for {spec:?}");
    assert!(validate_instance(&inst).is_empty(), "generator produced an invalid instance for {spec:?}");
    Ok(inst)
}

/// Forward arcs along a random order, then repairs for `s ⇝ t` and
/// underlying connectivity.
fn acyclic(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<(Digraph, Vertex, Vertex), GenError> {
    let total = n * (n - 1) / 2;
    if m > total {
        return Err(unsat(format!("{m} arcs exceed the {total} forward pairs of {n} vertices")));
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    // Pair index -> (i, j) with i < j, row by row.
    let mut row_start = Vec::with_capacity(n);
    let mut acc = 0;
    for i in 0..n {
        row_start.push(acc);
        acc += n - 1 - i;
    }
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(m + n);
    let mut pos_arcs: Vec<(usize, usize)> = Vec::with_capacity(m + n);
    for p in index::sample(rng, total, m) {
        let i = row_start.partition_point(|&start| start <= p) - 1;
        let j = i + 1 + (p - row_start[i]);
        present.insert((i, j));
        pos_arcs.push((i, j));
    }
    // Reach t by bridging from the furthest position reachable from s.
    loop {
        let mut reach = vec![false; n];
        reach[0] = true;
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in &pos_arcs {
            out[i].push(j);
        }
        for i in 0..n {
            if reach[i] {
                for &j in &out[i] {
                    reach[j] = true;
                }
            }
        }
        if reach[n - 1] {
            break;
        }
        let far = (0..n).rev().find(|&i| reach[i]).expect("s reaches itself");
        present.insert((far, far + 1));
        pos_arcs.push((far, far + 1));
    }
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &(i, j) in &pos_arcs {
        let (a, b) = (find(&mut uf, i), find(&mut uf, j));
        uf[a] = b;
    }
    for i in 1..n {
        let (a, b) = (find(&mut uf, i - 1), find(&mut uf, i));
        if a != b {
            uf[a] = b;
            if present.insert((i - 1, i)) {
                pos_arcs.push((i - 1, i));
            }
        }
    }
    let d = Digraph::new(n, pos_arcs.iter().map(|&(i, j)| (order[i], order[j]))).expect("forward arcs are valid");
    Ok((d, order[0], order[n - 1]))
}

/// A cycle plus ears covering every vertex, then chords up to `m` arcs.
/// Open ears only when `open`, otherwise roughly a third of the ears close
/// on their own tail (cut vertices).
fn ear_built(n: usize, m: usize, open: bool, rng: &mut ChaCha8Rng) -> Result<Digraph, GenError> {
    if m < n {
        return Err(unsat(format!("a strongly connected digraph on {n} vertices needs at least {n} arcs, got {m}")));
    }
    if m > n * (n - 1) {
        return Err(unsat(format!("{m} arcs exceed the {} ordered pairs", n * (n - 1))));
    }
    let spare = m - n;
    // Cycle length; every ear beyond it costs one extra arc.
    let cycle_len = if spare == 0 { n } else { rng.gen_range(2.max(n.saturating_sub(spare))..=n) };
    let rest = n - cycle_len;
    let ear_count = if rest == 0 { 0 } else { rng.gen_range(1..=rest.min(spare)) };
    // Split `rest` into `ear_count` positive parts.
    let mut cuts: Vec<usize> =
        if ear_count > 1 { index::sample(rng, rest - 1, ear_count - 1).into_vec() } else { Vec::new() };
    cuts.sort_unstable();
    let mut sizes = Vec::with_capacity(ear_count);
    let mut prev = 0;
    for c in cuts.into_iter().map(|c| c + 1).chain(std::iter::once(rest)).filter(|_| ear_count > 0) {
        sizes.push(c - prev);
        prev = c;
    }

    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(rng);
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(m);
    let mut add = |u: Vertex, v: Vertex, arcs: &mut Vec<(Vertex, Vertex)>| {
        if present.insert((u, v)) {
            arcs.push((u, v));
            true
        } else {
            false
        }
    };
    for i in 0..cycle_len {
        add(i, (i + 1) % cycle_len, &mut arcs);
    }
    let mut built = cycle_len;
    for size in sizes {
        let tail = rng.gen_range(0..built);
        let head = if open {
            (tail + rng.gen_range(1..built)) % built
        } else if rng.gen_bool(1.0 / 3.0) {
            tail
        } else {
            rng.gen_range(0..built)
        };
        let internal: Vec<Vertex> = (built..built + size).collect();
        let mut prev = tail;
        for &x in &internal {
            add(prev, x, &mut arcs);
            prev = x;
        }
        add(prev, head, &mut arcs);
        built += size;
    }
    let want = m;
    let mut attempts = 0usize;
    while arcs.len() < want && attempts < 50 * want {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            add(u, v, &mut arcs);
        }
    }
    if arcs.len() < want {
        let mut missing: Vec<(Vertex, Vertex)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).collect();
        missing.retain(|a| !arcs.contains(a));
        missing.shuffle(rng);
        for (u, v) in missing.into_iter().take(want - arcs.len()) {
            add(u, v, &mut arcs);
        }
    }
    Ok(Digraph::new(n, arcs.into_iter().map(|(u, v)| (label[u], label[v]))).expect("ear arcs are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_instance;

    #[test]
    fn acyclic_example() {
        let inst = generate(&GenSpec::new(Family::Acyclic, 6, 9, 2, 7)).unwrap();
        assert_eq!(classify(&inst.d), GraphClass::Acyclic);
        assert_eq!(inst.start.hole_count(), 2);
    }

    #[test]
    fn strongly_biconnected_example() {
        let inst = generate(&GenSpec::new(Family::StronglyBiconnected, 5, 8, 1, 1)).unwrap();
        assert!(is_strongly_biconnected(&inst.d));
        assert_eq!(inst.d.m(), 8);
    }

    #[test]
    fn strong_needs_enough_arcs() {
        assert!(matches!(generate(&GenSpec::new(Family::Strong, 2, 1, 0, 0)), Err(GenError::UnsatisfiableSpec(_))));
        assert!(matches!(generate(&GenSpec::new(Family::Strong, 3, 7, 0, 0)), Err(GenError::UnsatisfiableSpec(_))));
        assert!(generate(&GenSpec::new(Family::Strong, 3, 6, 0, 0)).is_ok());
    }

    #[test]
    fn too_many_holes() {
        assert!(generate(&GenSpec::new(Family::BidirPath, 3, 0, 3, 0)).is_err());
    }

    #[test]
    fn seed_determinism() {
        for family in Family::ALL {
            let spec = GenSpec::new(family, 8, 12, 3, 42);
            let a = serialize_instance(&generate(&spec).unwrap(), None);
            let b = serialize_instance(&generate(&spec).unwrap(), None);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn strong_family_hits_exact_budget() {
        for seed in 0..50 {
            let inst = generate(&GenSpec::new(Family::Strong, 7, 10, 2, seed)).unwrap();
            assert_eq!(inst.d.m(), 10);
        }
    }

    #[test]
    fn family_names_round_trip() {
        for family in Family::ALL {
            assert_eq!(family.as_str().parse::<Family>().unwrap(), family);
        }
        assert!("dag".parse::<Family>().is_err());
    }
}
