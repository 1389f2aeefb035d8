//! Small named digraphs used across tests, docs and the CLI.
//!
//! | name   | arcs                                             |
//! |--------|--------------------------------------------------|
//! | `P3`   | s→a, a→t                                         |
//! | `C2`   | s→t, t→s                                         |
//! | `C3`   | s→a, a→t, t→s                                    |
//! | `BP_m` | u0⇄u1⇄…⇄u_m, s = u0, t = u_m                     |
//! | `TT`   | s→a, a→v1, v1→s, v1→b, b→t, t→v1                 |
//! | `D4`   | s→a, s→b, a→t, b→t                               |

use crate::config::Instance;
use crate::graph::{Digraph, Vertex};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub d: Digraph,
    pub s: Vertex,
    pub t: Vertex,
    pub labels: Vec<String>,
}

impl Fixture {
    fn build(labels: &[&str], arcs: &[(&str, &str)], s: &str, t: &str) -> Fixture {
        let idx = |name: &str| labels.iter().position(|l| *l == name).expect("known label");
        let d =
            Digraph::new(labels.len(), arcs.iter().map(|&(u, v)| (idx(u), idx(v)))).expect("fixture arcs are valid");
        Fixture { d, s: idx(s), t: idx(t), labels: labels.iter().map(|l| l.to_string()).collect() }
    }

    pub fn v(&self, label: &str) -> Vertex {
        self.labels.iter().position(|l| l == label).unwrap_or_else(|| panic!("no vertex {label}"))
    }

    /// Robot at `s`, holes at the named vertices, obstacles elsewhere.
    pub fn with_holes(&self, holes: &[&str]) -> Instance {
        Instance::new(self.d.clone(), self.s, self.t, holes.iter().map(|h| self.v(h)))
    }
}

pub fn p3_fixture() -> Fixture {
    Fixture::build(&["s", "a", "t"], &[("s", "a"), ("a", "t")], "s", "t")
}

pub fn c2_fixture() -> Fixture {
    Fixture::build(&["s", "t"], &[("s", "t"), ("t", "s")], "s", "t")
}

pub fn c3_fixture() -> Fixture {
    Fixture::build(&["s", "a", "t"], &[("s", "a"), ("a", "t"), ("t", "s")], "s", "t")
}

pub fn tt_fixture() -> Fixture {
    Fixture::build(
        &["s", "a", "v1", "b", "t"],
        &[("s", "a"), ("a", "v1"), ("v1", "s"), ("v1", "b"), ("b", "t"), ("t", "v1")],
        "s",
        "t",
    )
}

pub fn d4_fixture() -> Fixture {
    Fixture::build(&["s", "a", "b", "t"], &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")], "s", "t")
}

/// Bidirectional path with `m` arcs in each direction; vertex `i` is `u<i>`.
pub fn bp_fixture(m: usize) -> Fixture {
    assert!(m >= 1);
    let arcs = (0..m).flat_map(|i| [(i, i + 1), (i + 1, i)]);
    Fixture {
        d: Digraph::new(m + 1, arcs).expect("path arcs are valid"),
        s: 0,
        t: m,
        labels: (0..=m).map(|i| format!("u{i}")).collect(),
    }
}

/// P3 with the robot at `s`, an obstacle at `a` and a hole at `t`.
pub fn p3_blocked() -> Instance {
    p3_fixture().with_holes(&["t"])
}

/// P3 with holes at `a` and `t`.
pub fn p3_open() -> Instance {
    p3_fixture().with_holes(&["a", "t"])
}

/// C2 with the robot at `s` and a hole at `t`.
pub fn c2() -> Instance {
    c2_fixture().with_holes(&["t"])
}
