//! Structured verification reports and the deterministic, parallel sample
//! runner shared by all axiom/theorem suites.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::sample::rng_for;

/// Maximum number of counterexamples retained in a report.
pub const MAX_COUNTEREXAMPLES: usize = 10;

/// Outcome of one verification suite: sample counts, the worst violation
/// measure observed, and up to [`MAX_COUNTEREXAMPLES`] offending inputs.
///
/// `violations == 0` iff `max_violation <= tolerance`, and counterexamples
/// are non-empty iff `violations > 0`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub samples: u64,
    pub violations: u64,
    pub max_violation: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub counterexamples: Vec<Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Result of checking one sample: a nonnegative violation measure
/// (a sample violates iff its measure exceeds the suite tolerance) and a
/// witness description consulted only when it does.
pub struct SampleOutcome {
    pub measure: f64,
    pub witness: Option<Value>,
}

impl SampleOutcome {
    pub fn ok() -> Self {
        Self {
            measure: 0.0,
            witness: None,
        }
    }
}

/// Runs `check` over sample indices `0..samples`, each with its own RNG
/// substream derived from (seed, suite, index). Samples are evaluated in
/// parallel; the report is assembled in index order, so output is
/// deterministic regardless of scheduling.
pub fn run_suite<F>(suite: &str, seed: u64, samples: u64, tolerance: f64, check: F) -> VerificationReport
where
    F: Fn(u64, &mut ChaCha8Rng) -> SampleOutcome + Sync,
{
    let outcomes: Vec<(u64, f64, Option<Value>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, suite, i);
            let out = check(i, &mut rng);
            let witness = if out.measure > tolerance {
                out.witness
            } else {
                None
            };
            (i, out.measure, witness)
        })
        .collect();

    let mut max_violation: f64 = 0.0;
    let mut violations = 0u64;
    let mut counterexamples = Vec::new();
    for (i, measure, witness) in outcomes {
        max_violation = max_violation.max(measure);
        if measure > tolerance {
            violations += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(witness.unwrap_or_else(|| Value::from(i)));
            }
        }
    }

    VerificationReport {
        suite: suite.to_string(),
        samples,
        violations,
        max_violation,
        tolerance,
        seed,
        counterexamples,
    }
}
