//! Feasibility of moving one robot from a source to a target vertex of a
//! digraph whose other vertices hold movable obstacles or holes.
//!
//! Two exact decision procedures are provided: one for acyclic digraphs
//! ([`acyclic::decide_acyclic`]) and one for strongly connected digraphs
//! ([`strong::decide_strong`]). Both run in `O(nm)`. Around them sit the
//! block and ear-decomposition machinery ([`structure`]), plan synthesis and
//! verification ([`config`]), an exhaustive search used as ground truth
//! ([`oracle`]), and instance I/O plus random generators for differential
//! testing ([`io`], [`generate`], [`compare`]).

pub mod acyclic;
pub mod compare;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod report;
pub mod strong;
pub mod structure;

pub use config::{Configuration, Instance, Move, Occupancy, Plan};
pub use graph::{Digraph, Graph, GraphClass, Vertex};
pub use report::{Branch, FeasibilityReport};

use error::FeasibilityError;

/// Validates `inst` and dispatches on its class. `Ok(None)` means the
/// digraph is neither acyclic nor strongly connected.
pub fn decide(inst: &Instance) -> Result<Option<FeasibilityReport>, FeasibilityError> {
    let violations = config::validate_instance(inst);
    if !violations.is_empty() {
        return Err(FeasibilityError::InvalidInstance(violations));
    }
    match graph::classify(&inst.d) {
        GraphClass::Acyclic => acyclic::decide_acyclic(inst).map(Some),
        GraphClass::StronglyConnected => strong::decide_strong(inst).map(Some),
        GraphClass::Other => Ok(None),
    }
}
