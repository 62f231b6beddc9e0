use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::trace::ProjectionTrace;

/// Outcome of replaying a trace's postselections with random ancilla
/// measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingSummary {
    pub shots: usize,
    pub successes: usize,
    /// Boxes executed over all shots, failed attempts included.
    pub boxes_executed: usize,
}

impl SamplingSummary {
    pub fn success_rate(&self) -> f64 {
        if self.shots == 0 { 0.0 } else { self.successes as f64 / self.shots as f64 }
    }
}

/// Each shot runs the boxes in order and stops at the first failed
/// postselection. Demonstration only; the deterministic trace is the
/// reference.
pub fn sample_postselection(trace: &ProjectionTrace, shots: usize, seed: u64) -> SamplingSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    let mut boxes_executed = 0;
    for _ in 0..shots {
        let mut ok = true;
        for rec in &trace.records {
            boxes_executed += 1;
            if !rng.random_bool(rec.probability.clamp(0.0, 1.0)) {
                ok = false;
                break;
            }
        }
        successes += ok as usize;
    }
    SamplingSummary { shots, successes, boxes_executed }
}
