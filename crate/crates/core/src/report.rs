use std::fmt::Write as _;

use crate::acyclic::FadTables;
use crate::config::Plan;
use crate::graph::Vertex;
use crate::strong::BlockPath;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    AcyclicFad,
    SameBlock,
    CrossBlock,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::AcyclicFad => "acyclic",
            Branch::SameBlock => "same-block",
            Branch::CrossBlock => "cross-block",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDiagnostics {
    /// Decided from the hole count alone (the digraph is strongly biconnected).
    pub fast_path: bool,
    /// Robot vertex after normalization.
    pub settled_robot: Vertex,
    pub iterations: usize,
    pub holes_on_t_side: usize,
    pub obstacles_on_t_side: usize,
    pub block_path: Option<BlockPath>,
    pub bottleneck: Option<usize>,
    /// Moves executed by normalization, replayable from the start.
    pub trace: Plan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostics {
    Fad { tables: FadTables, witness: Option<Vec<Vertex>> },
    Strong(StrongDiagnostics),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub verdict: bool,
    pub branch: Branch,
    pub diagnostics: Diagnostics,
}

fn count(v: Option<usize>) -> String {
    v.map_or_else(|| "inf".to_string(), |c| c.to_string())
}

impl FeasibilityReport {
    /// Flat `key -> value` pairs; vertices are rendered with `name`.
    pub fn key_values(&self, name: &dyn Fn(Vertex) -> String) -> Vec<(String, String)> {
        let mut kv = vec![
            ("verdict".to_string(), if self.verdict { "feasible" } else { "infeasible" }.to_string()),
            ("branch".to_string(), self.branch.as_str().to_string()),
        ];
        let join = |vs: &[Vertex]| vs.iter().map(|&v| name(v)).collect::<Vec<_>>().join(" ");
        match &self.diagnostics {
            Diagnostics::Fad { tables, witness } => {
                let vp: Vec<Vertex> = tables.v_prime.ones().collect();
                kv.push(("v_prime".into(), join(&vp)));
                let h = vp.iter().map(|&v| format!("{}:{}", name(v), count(tables.h[v]))).collect::<Vec<_>>();
                kv.push(("h".into(), h.join(" ")));
                let ht = vp.iter().map(|&v| format!("{}:{}", name(v), count(tables.h_t[v]))).collect::<Vec<_>>();
                kv.push(("h_t".into(), ht.join(" ")));
                kv.push(("witness".into(), witness.as_deref().map(join).unwrap_or_default()));
            }
            Diagnostics::Strong(sd) => {
                kv.push(("fast_path".into(), sd.fast_path.to_string()));
                kv.push(("settled_robot".into(), name(sd.settled_robot)));
                kv.push(("iterations".into(), sd.iterations.to_string()));
                kv.push(("holes_on_t_side".into(), sd.holes_on_t_side.to_string()));
                kv.push(("obstacles_on_t_side".into(), sd.obstacles_on_t_side.to_string()));
                if let Some(bp) = &sd.block_path {
                    kv.push(("block_path_r".into(), bp.r().to_string()));
                    kv.push(("cut_vertices".into(), join(&bp.cuts)));
                }
                if let Some(l) = sd.bottleneck {
                    kv.push(("l".into(), l.to_string()));
                }
                kv.push(("trace_moves".into(), sd.trace.len().to_string()));
            }
        }
        kv
    }

    pub fn render_text(&self, name: &dyn Fn(Vertex) -> String) -> String {
        let mut out = String::new();
        for (k, v) in self.key_values(name) {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}
