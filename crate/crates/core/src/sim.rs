//! Seeded channel simulation: plant errors of a given weight at uniformly
//! random positions with uniformly random nonzero values, decode, and report
//! one CSV row per trial.
//!
//! Trial `i` draws from the ChaCha8 stream `i` of the base seed, so rows are
//! reproducible individually and independent of scheduling.

use crate::code::Codeword;
use crate::decode::{DecodeError, DecodeStatus, DecoderPair};
use crate::gf::{Fe, FieldSpec};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::time::Instant;
use thiserror::Error;

pub const CSV_HEADER: &str = "trial,seed,t,status,residual_weight,correct,ms";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("cannot plant {weight} errors in a word of length {len}")]
    WeightTooLarge { weight: usize, len: usize },
}

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_message(field: &FieldSpec, k: usize, rng: &mut impl Rng) -> Vec<Fe> {
    (0..k).map(|_| Fe::from_raw(rng.random_range(0..field.size()))).collect()
}

/// Adds exactly `weight` errors; returns the received word and the sorted
/// error positions.
pub fn corrupt(
    field: &FieldSpec,
    word: &[Fe],
    weight: usize,
    rng: &mut impl Rng,
) -> Result<(Codeword, Vec<usize>), SimError> {
    if weight > word.len() {
        return Err(SimError::WeightTooLarge {
            weight,
            len: word.len(),
        });
    }
    let mut received = word.to_vec();
    let mut positions = sample(rng, word.len(), weight).into_vec();
    for &i in &positions {
        let e = Fe::from_raw(rng.random_range(1..field.size()));
        received[i] = field.add(received[i], e);
    }
    positions.sort_unstable();
    Ok((received, positions))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// Planted error weight.
    pub t: usize,
    pub status: DecodeStatus,
    pub residual_weight: Option<usize>,
    /// Whether the decoded message equals the planted one.
    pub correct: bool,
    pub ms: Option<f64>,
    pub received: Codeword,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationPlan {
    pub seed: u64,
    pub trials: usize,
    /// Planted error weights; `trials` rows are produced for each.
    pub weights: Vec<usize>,
    /// Record wall-clock time per trial. Off by default so the CSV is
    /// byte-reproducible.
    pub timing: bool,
}

/// Runs one trial on its own PRNG stream.
pub fn run_trial(pair: &DecoderPair, seed: u64, trial: usize, weight: usize, timing: bool) -> Result<TrialRecord, SimError> {
    let code = pair.code();
    let field = code.field();
    let mut rng = trial_rng(seed, trial as u64);
    let msg = random_message(field, code.exponents().len(), &mut rng);
    let cw = code.encode(&msg).map_err(DecodeError::from)?;
    let (received, _) = corrupt(field, &cw, weight, &mut rng)?;
    let start = Instant::now();
    let out = pair.decode(&received)?;
    let ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(TrialRecord {
        trial,
        seed,
        t: weight,
        status: out.status,
        residual_weight: out.residual_weight,
        correct: out.message.as_deref() == Some(msg.as_slice()),
        ms,
        received,
    })
}

/// Runs every trial in parallel; rows come back in trial order.
pub fn simulate(pair: &DecoderPair, plan: &SimulationPlan) -> Result<Vec<TrialRecord>, SimError> {
    let jobs: Vec<(usize, usize)> = plan
        .weights
        .iter()
        .flat_map(|&w| std::iter::repeat_n(w, plan.trials))
        .enumerate()
        .collect();
    jobs.into_par_iter()
        .map(|(trial, w)| run_trial(pair, plan.seed, trial, w, plan.timing))
        .collect()
}

pub fn to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let residual = r.residual_weight.map(|w| w.to_string()).unwrap_or_default();
        let ms = r.ms.map(|m| format!("{m:.3}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            r.t,
            r.status.as_str(),
            residual,
            r.correct,
            ms
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Fraction of rows with planted weight `t` that decoded to the planted
/// message; `None` when there are no such rows.
pub fn success_rate(records: &[TrialRecord], t: usize) -> Option<f64> {
    let rows: Vec<_> = records.iter().filter(|r| r.t == t).collect();
    (!rows.is_empty()).then(|| rows.iter().filter(|r| r.correct).count() as f64 / rows.len() as f64)
}
