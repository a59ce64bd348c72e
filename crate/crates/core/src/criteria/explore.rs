use serde::Serialize;

use crate::error::Result;
use crate::numkernel::{majorizes, Tolerances};
use crate::states::random::{random_mixed_with, rng_for};
use crate::states::{BipartiteDims, Subsystem};

use super::{reduction, Criterion};

/// Tally of random states that pass a reduction criterion, and of those among them
/// whose reduction fails to majorize the joint spectrum.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Exploration {
    pub trials: usize,
    pub reduction_passing: usize,
    /// `(trial, side, margin)` for each majorization failure under a passing reduction.
    pub majorization_failures: Vec<(usize, Subsystem, f64)>,
}

/// Samples full-rank random mixed states and records every case where
/// `reduction_X` holds but `majorization_X` fails. Nothing is asserted.
pub fn explore_reduction_majorization(
    dims: BipartiteDims,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Exploration> {
    let mut out = Exploration {
        trials,
        ..Default::default()
    };
    for t in 0..trials {
        let rho = random_mixed_with(&mut rng_for(seed, t as u64), dims, dims.total())?;
        for side in Subsystem::BOTH {
            if !reduction(&rho, side, tol)?.holds {
                continue;
            }
            out.reduction_passing += 1;
            let red = crate::numkernel::eigvalsh(&rho.reduced(side))?;
            let m = majorizes(&red, rho.spectrum(), tol)?;
            if m.margin < -Criterion::majorization(side).tolerance(tol) {
                out.majorization_failures.push((t, side, m.margin));
            }
        }
    }
    Ok(out)
}
