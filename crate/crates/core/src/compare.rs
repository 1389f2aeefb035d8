//! Differential runs of the exact deciders against the exhaustive oracle.

use rayon::prelude::*;

use crate::config::Instance;
use crate::error::{CompareError, FeasibilityError};
use crate::generate::{generate, GenSpec};
use crate::io::serialize_instance;
use crate::oracle::{oracle_decide, DEFAULT_BOUND};

/// An instance on which the decider disagreed with the oracle (or failed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub seed: u64,
    pub expected: bool,
    pub got: Result<bool, String>,
    /// Instance file text.
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub total: usize,
    pub agreed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CompareReport {
    pub fn agreement(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.agreed as f64 / self.total as f64
        }
    }
}

/// Verdict of the matching exact algorithm; `Ok(None)` outside both
/// supported classes.
pub fn exact_verdict(inst: &Instance) -> Result<bool, FeasibilityError> {
    match crate::decide(inst)? {
        Some(report) => Ok(report.verdict),
        None => {
            Err(FeasibilityError::InternalInvariantBroken("digraph is neither acyclic nor strongly connected".into()))
        }
    }
}

/// Instance `i` uses seed `spec.seed + i`.
pub fn compare(spec: &GenSpec, count: usize) -> Result<CompareReport, CompareError> {
    compare_with(spec, count, &exact_verdict)
}

pub fn compare_with(
    spec: &GenSpec,
    count: usize,
    decider: &(dyn Fn(&Instance) -> Result<bool, FeasibilityError> + Sync),
) -> Result<CompareReport, CompareError> {
    if spec.n > DEFAULT_BOUND {
        return Err(CompareError::TooLarge { n: spec.n, bound: DEFAULT_BOUND });
    }
    let outcomes: Vec<Result<Option<Counterexample>, CompareError>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed.wrapping_add(i);
            let inst = generate(&spec.with_seed(seed))?;
            let expected = oracle_decide(&inst)?.feasible;
            let got = decider(&inst).map_err(|e| e.to_string());
            Ok(if got.as_ref() == Ok(&expected) {
                None
            } else {
                Some(Counterexample { seed, expected, got, instance: serialize_instance(&inst, None) })
            })
        })
        .collect();
    let mut counterexamples = Vec::new();
    for o in outcomes {
        if let Some(c) = o? {
            counterexamples.push(c);
        }
    }
    Ok(CompareReport { total: count, agreed: count - counterexamples.len(), counterexamples })
}
