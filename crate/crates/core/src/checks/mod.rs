//! Randomized Loewner-order checkers, one per inequality family.
//!
//! Every checker follows the same shape: a sampler draws trial inputs from a
//! per-trial RNG substream, a pure margin evaluation scores the asserted
//! difference, and the worst trial is kept as a self-contained witness. A
//! checker re-run with the same `(seed, config)` is bit-identical regardless
//! of how trials are scheduled.

mod ando;
mod choi;
mod info;
mod jensen;
mod kantorovich;
mod payload;
mod reverse;
mod structural;

pub use ando::{check_ando_multilinear, check_fiedler_extension, check_mean_symmetrization};
pub use choi::{check_choi_normal, check_schwarz_multilinear, SchwarzVariant};
pub use info::{
    check_info_monotonicity_karcher, check_info_monotonicity_power, info_karcher_result,
    info_power_result,
};
pub use jensen::{check_cdj, check_cdj_at, check_power_family, check_power_monotonicity};
pub use kantorovich::{check_kantorovich, convexity_profile, convexity_profile_sampled, KantorovichVariant};
pub use payload::{KantorovichInputs, WitnessPayload};
pub use reverse::{
    check_reverse_ando, check_reverse_cdj, check_reverse_mean_additivity,
    check_reverse_symmetrization,
};
pub use structural::{
    check_adjoint_preserving, check_monotone, check_multilinearity, check_positivity,
    check_unital, russo_dye_check,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::RngStream;

/// Direction of a Jensen-type assertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Convex,
    Concave,
}

/// A raw Loewner margin together with the scale it is judged against.
///
/// `raw` is the minimum eigenvalue of the asserted difference (RHS - LHS);
/// `scale = max(1, ||LHS||, ||RHS||)`. An inequality holds at tolerance
/// `tol` when `raw / scale >= -tol`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Margin {
    pub raw: f64,
    pub scale: f64,
}

impl Margin {
    pub fn scaled(&self) -> f64 {
        self.raw / self.scale
    }

    /// The worst (most negative, after scaling) of several margins.
    pub fn worst(parts: impl IntoIterator<Item = Margin>) -> Margin {
        parts
            .into_iter()
            .min_by(|a, b| a.scaled().partial_cmp(&b.scaled()).expect("finite margins"))
            .expect("at least one margin part")
    }
}

/// Outcome of one inequality check across all trials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// `worst_margin >= -tol`.
    pub holds: bool,
    /// Most negative scaled margin across trials.
    pub worst_margin: f64,
    /// The unscaled margin of the same trial.
    pub worst_margin_raw: f64,
    /// Scale of the worst trial.
    pub scale: f64,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Inputs of the worst trial, sufficient to replay the margin.
    pub witness: Witness,
}

/// Self-contained worst-trial record: the exact inputs, the map and
/// function descriptors, and the seed provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub trial: usize,
    pub seed: u64,
    pub payload: WitnessPayload,
}

impl Witness {
    /// Recomputes the margin from the stored inputs alone.
    pub fn replay(&self) -> Result<Margin> {
        self.payload.evaluate_margin()
    }
}

/// Drives `trials` independent trials of `sample`, each on the substream
/// `(seed, trial)`, and keeps the worst margin. Trials run in parallel; the
/// reduction is by trial index, so results do not depend on scheduling.
pub(crate) fn run_sampled<S>(
    name: &str,
    trials: usize,
    seed: u64,
    tol: f64,
    sample: S,
) -> Result<CheckResult>
where
    S: Fn(&mut RngStream) -> Result<WitnessPayload> + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let root = RngStream::from_seed(seed);
    let margins: Result<Vec<Margin>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.substream(i as u64);
            sample(&mut rng)?.evaluate_margin()
        })
        .collect();
    let margins = margins?;

    let mut worst_idx = 0;
    for (i, m) in margins.iter().enumerate() {
        if m.scaled() < margins[worst_idx].scaled() {
            worst_idx = i;
        }
    }
    let worst = margins[worst_idx];

    let mut rng = root.substream(worst_idx as u64);
    let payload = sample(&mut rng)?;

    Ok(CheckResult {
        name: name.to_string(),
        holds: worst.scaled() >= -tol,
        worst_margin: worst.scaled(),
        worst_margin_raw: worst.raw,
        scale: worst.scale,
        trials,
        seed,
        tol,
        witness: Witness {
            check: name.to_string(),
            trial: worst_idx,
            seed,
            payload,
        },
    })
}

/// Evaluates one fixed payload as a single-trial check (used for pinned
/// counterexample witnesses and explicit-input operations).
pub fn run_fixed(name: &str, payload: WitnessPayload, seed: u64, tol: f64) -> Result<CheckResult> {
    let margin = payload.evaluate_margin()?;
    Ok(CheckResult {
        name: name.to_string(),
        holds: margin.scaled() >= -tol,
        worst_margin: margin.scaled(),
        worst_margin_raw: margin.raw,
        scale: margin.scale,
        trials: 1,
        seed,
        tol,
        witness: Witness {
            check: name.to_string(),
            trial: 0,
            seed,
            payload,
        },
    })
}
