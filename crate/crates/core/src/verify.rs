//! Seeded randomized property checks for the measures.
//!
//! Each trial draws from its own ChaCha20 stream selected by
//! `(seed, trial index)`, so a check gives bit-identical results whether
//! its trials run serially or in parallel.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bipartition::{canonical_cuts, Bipartition};
use crate::concurrence::{
    cut_dimensions, dense_oracle_purity, full_spectrum_with, reduced_purity, DENSE_ORACLE_CAP,
};
use crate::error::{GmeError, Result};
use crate::exec::{self, Execution};
use crate::linalg::CMatrix;
use crate::measures::{self, geometric_mean, polygonal_volume};
use crate::state::{total_dimension, PureState};

/// RNG for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector of length `len`.
pub fn haar_amplitudes<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..len).map(|_| gaussian_complex(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|z| *z /= norm);
            return v;
        }
    }
}

pub fn haar_state_with<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<PureState> {
    let total = total_dimension(dims)?;
    PureState::new(dims.to_vec(), haar_amplitudes(total, rng))
}

/// Haar-random pure state, deterministic in `seed`.
pub fn haar_random_state(dims: &[usize], seed: u64) -> Result<PureState> {
    haar_state_with(dims, &mut ChaCha20Rng::seed_from_u64(seed))
}

/// Haar-random `d × d` unitary: Gram-Schmidt on the columns of a complex
/// Gaussian matrix. The implied `R` factor has a positive real diagonal,
/// which is the phase fixing that makes `Q` Haar-distributed.
pub fn random_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    assert!(d >= 1, "unitary dimension must be positive");
    let mut columns: Vec<Vec<Complex64>> = (0..d)
        .map(|_| (0..d).map(|_| gaussian_complex(rng)).collect())
        .collect();
    for j in 0..d {
        let (done, rest) = columns.split_at_mut(j);
        let col = &mut rest[0];
        // Two passes keep the orthogonality defect at rounding level.
        for _ in 0..2 {
            for q in done.iter() {
                let overlap: Complex64 = q.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
                col.iter_mut().zip(q).for_each(|(c, a)| *c -= overlap * a);
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        col.iter_mut().for_each(|z| *z /= norm);
    }
    let mut u = CMatrix::zeros(d, d);
    for (j, col) in columns.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Haar-random unitary, deterministic in `seed`.
pub fn random_local_unitary(d: usize, seed: u64) -> CMatrix {
    random_unitary_with(d, &mut ChaCha20Rng::seed_from_u64(seed))
}

/// Applies an independent Haar-random unitary to every subsystem.
pub fn scramble_locally<R: Rng + ?Sized>(state: &PureState, rng: &mut R) -> Result<PureState> {
    let mut out = state.clone();
    for (site, &d) in state.dims().iter().enumerate() {
        out = out.apply_local_unitary(site + 1, &random_unitary_with(d, rng))?;
    }
    Ok(out)
}

/// A Haar-random product `|α⟩_S ⊗ |β⟩_S̄` across a uniformly random cut.
pub fn random_biseparable_with<R: Rng + ?Sized>(
    dims: &[usize],
    rng: &mut R,
) -> Result<(PureState, Bipartition)> {
    let n = dims.len();
    total_dimension(dims)?;
    // Nonempty proper subsets <-> masks 1..2^n - 1.
    let mask: u64 = rng.gen_range(1..(1u64 << n) - 1);
    let cut = Bipartition::new(
        n,
        (1..=n)
            .filter(|i| mask >> (i - 1) & 1 == 1)
            .collect::<Vec<_>>(),
    )?;
    let order: Vec<usize> = cut
        .subset()
        .iter()
        .copied()
        .chain(cut.complement())
        .collect();

    let (inside, outside) = cut_dimensions(dims, &cut);
    let alpha = haar_amplitudes(inside, rng);
    let beta = haar_amplitudes(outside, rng);
    let amps = alpha
        .iter()
        .flat_map(|a| beta.iter().map(move |b| a * b))
        .collect();
    let grouped_dims = order.iter().map(|&i| dims[i - 1]).collect();
    let grouped = PureState::new(grouped_dims, amps)?;

    // Original subsystem i sits at position order⁻¹(i) in `grouped`.
    let mut perm = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        perm[i - 1] = pos + 1;
    }
    Ok((grouped.permute_subsystems(&perm)?, cut))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    LuInvariance,
    PermutationInvariance,
    OracleAgreement,
    BiseparableNullity,
    GhzClosedForm,
    N4FormulaEquivalence,
}

impl CheckName {
    pub const ALL: [CheckName; 6] = [
        CheckName::LuInvariance,
        CheckName::PermutationInvariance,
        CheckName::OracleAgreement,
        CheckName::BiseparableNullity,
        CheckName::GhzClosedForm,
        CheckName::N4FormulaEquivalence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::LuInvariance => "lu-invariance",
            CheckName::PermutationInvariance => "permutation-invariance",
            CheckName::OracleAgreement => "oracle-agreement",
            CheckName::BiseparableNullity => "biseparable-nullity",
            CheckName::GhzClosedForm => "ghz-closed-form",
            CheckName::N4FormulaEquivalence => "n4-formula-equivalence",
        }
    }

    /// Pass threshold on the maximum deviation.
    pub fn default_tolerance(self) -> f64 {
        match self {
            CheckName::LuInvariance => 1e-9,
            CheckName::PermutationInvariance => 1e-10,
            CheckName::OracleAgreement => 1e-12,
            CheckName::BiseparableNullity => 1e-9,
            CheckName::GhzClosedForm => 1e-9,
            CheckName::N4FormulaEquivalence => 1e-12,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = GmeError;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| GmeError::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Overrides [`CheckName::default_tolerance`].
    pub tolerance: Option<f64>,
}

impl TrialConfig {
    pub fn new(dims: impl Into<Vec<usize>>, trials: usize, seed: u64) -> Self {
        Self {
            dims: dims.into(),
            trials,
            seed,
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub check: CheckName,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Trial index (RNG stream) that produced `max_deviation`.
    pub worst_trial: usize,
}

pub fn run_check(check: CheckName, config: &TrialConfig) -> Result<TrialOutcome> {
    run_check_with(check, config, Execution::default())
}

/// Runs `config.trials` independent trials of `check`; trials are spread
/// across threads according to `mode`.
pub fn run_check_with(
    check: CheckName,
    config: &TrialConfig,
    mode: Execution,
) -> Result<TrialOutcome> {
    validate(check, config)?;
    let deviations = exec::map_indices(config.trials, mode, |t| {
        let mut rng = trial_rng(config.seed, t as u64);
        run_trial(check, &config.dims, &mut rng)
    });

    let mut max_deviation = f64::NEG_INFINITY;
    let mut worst_trial = 0;
    for (t, dev) in deviations.into_iter().enumerate() {
        let dev = dev?;
        // NaN must surface as the worst case.
        if dev > max_deviation || dev.is_nan() && !max_deviation.is_nan() {
            max_deviation = dev;
            worst_trial = t;
        }
    }
    let tolerance = config
        .tolerance
        .unwrap_or_else(|| check.default_tolerance());
    Ok(TrialOutcome {
        check,
        dims: config.dims.clone(),
        seed: config.seed,
        trials: config.trials,
        max_deviation,
        tolerance,
        passed: max_deviation <= tolerance,
        worst_trial,
    })
}

fn validate(check: CheckName, config: &TrialConfig) -> Result<()> {
    if config.trials == 0 {
        return Err(GmeError::InvalidConfig(
            "trial count must be at least 1".into(),
        ));
    }
    if let Some(tol) = config.tolerance {
        if !(tol >= 0.0) {
            return Err(GmeError::InvalidConfig(format!(
                "tolerance {tol} is not a nonnegative number"
            )));
        }
    }
    total_dimension(&config.dims)?;
    let n = config.dims.len();
    let reject = |why: &str| {
        Err(GmeError::InvalidConfig(format!(
            "{check} {why}, got dims {:?}",
            config.dims
        )))
    };
    match check {
        CheckName::LuInvariance
        | CheckName::PermutationInvariance
        | CheckName::BiseparableNullity
            if n < 3 =>
        {
            reject("needs at least 3 parties")
        }
        CheckName::GhzClosedForm if n < 3 || config.dims.iter().any(|&d| d != 2) => {
            reject("needs at least 3 qubits")
        }
        CheckName::N4FormulaEquivalence if n != 4 => reject("needs exactly 4 parties"),
        _ => Ok(()),
    }
}

fn volume_of(state: &PureState) -> Result<f64> {
    let spectrum = full_spectrum_with(state, Execution::Serial)?;
    Ok(measures::volume(&spectrum)?.volume)
}

fn run_trial(check: CheckName, dims: &[usize], rng: &mut ChaCha20Rng) -> Result<f64> {
    match check {
        CheckName::LuInvariance => {
            let state = haar_state_with(dims, rng)?;
            let moved = scramble_locally(&state, rng)?;
            Ok((volume_of(&moved)? - volume_of(&state)?).abs())
        }
        CheckName::PermutationInvariance => {
            let state = haar_state_with(dims, rng)?;
            let mut perm: Vec<usize> = (1..=dims.len()).collect();
            perm.shuffle(rng);
            let moved = state.permute_subsystems(&perm)?;
            let before = full_spectrum_with(&state, Execution::Serial)?;
            let after = full_spectrum_with(&moved, Execution::Serial)?;
            let mut dev = (measures::volume(&after)?.volume - measures::volume(&before)?.volume)
                .abs()
                .max((measures::c_gme(&after) - measures::c_gme(&before)).abs());
            if dims.len() == 3 {
                dev = dev.max(
                    (measures::triangle_measure(&after)? - measures::triangle_measure(&before)?)
                        .abs(),
                );
            }
            Ok(dev)
        }
        CheckName::OracleAgreement => {
            let state = haar_state_with(dims, rng)?;
            let mut worst = 0.0_f64;
            for cut in canonical_cuts(dims.len())? {
                for side in [cut.flipped(), cut] {
                    if cut_dimensions(dims, &side).0 > DENSE_ORACLE_CAP {
                        continue;
                    }
                    let gram = reduced_purity(&state, &side)?;
                    let dense = dense_oracle_purity(&state, &side)?;
                    worst = worst.max((gram - dense).abs());
                }
            }
            Ok(worst)
        }
        CheckName::BiseparableNullity => {
            let (state, _) = random_biseparable_with(dims, rng)?;
            volume_of(&state)
        }
        CheckName::GhzClosedForm => {
            let n = dims.len();
            let state = scramble_locally(&PureState::ghz(n)?, rng)?;
            let nf = n as f64;
            let closed = nf / 12.0 / (std::f64::consts::PI / nf).tan();
            Ok((volume_of(&state)? - closed).abs())
        }
        CheckName::N4FormulaEquivalence => {
            let state = haar_state_with(dims, rng)?;
            let spectrum = full_spectrum_with(&state, Execution::Serial)?;
            let a = geometric_mean(spectrum.singletons());
            let h = geometric_mean(spectrum.multi_party());
            // Square-pyramid route from plain products and roots.
            let a4 = spectrum.singletons().product::<f64>().powf(0.25);
            let h4 = spectrum.multi_party().product::<f64>().cbrt();
            Ok((polygonal_volume(4, a, h) - a4 * a4 * h4 / 3.0).abs())
        }
    }
}
