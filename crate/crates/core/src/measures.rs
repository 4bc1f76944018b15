//! Geometric GME measures built from a [`ConcurrenceSpectrum`].
//!
//! The base edge `a` is the geometric mean of the one-versus-rest
//! concurrences and the height `h` the geometric mean of every other
//! canonical cut. The measure is the volume of the regular `N`-gon pyramid
//! with those dimensions; for `N = 3` the height is fixed at 1.

use std::f64::consts::PI;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bipartition::Bipartition;
use crate::concurrence::{full_spectrum_with, ConcurrenceSpectrum};
use crate::error::{GmeError, Result};
use crate::exec::Execution;
use crate::state::PureState;

/// Concurrences at or below this are treated as zero.
pub const ZERO_TOL: f64 = 1e-9;

/// Geometric mean as `exp(mean(ln x))`; exactly 0 when any factor is `≤ ZERO_TOL`.
///
/// An empty input yields 1, the empty product.
pub fn geometric_mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut log_sum = 0.0;
    let mut count = 0usize;
    for v in values {
        if v <= ZERO_TOL {
            return 0.0;
        }
        log_sum += v.ln();
        count += 1;
    }
    if count == 0 {
        1.0
    } else {
        (log_sum / count as f64).exp()
    }
}

/// Base edge `a = (Π_i C_{i|î})^{1/N}`.
pub fn base_edge(spectrum: &ConcurrenceSpectrum) -> f64 {
    geometric_mean(spectrum.singletons())
}

/// Height: geometric mean over canonical cuts with `|S| ≥ 2`, of which
/// there are `2^{N-1} - N - 1`. Fixed at 1 for three parties.
pub fn height(spectrum: &ConcurrenceSpectrum) -> Result<f64> {
    match spectrum.n() {
        n @ 0..=2 => Err(GmeError::Unsupported {
            measure: "pyramid height",
            n,
            reason: "there are no multi-party cuts",
        }),
        3 => Ok(1.0),
        _ => Ok(geometric_mean(spectrum.multi_party())),
    }
}

fn cot(x: f64) -> f64 {
    1.0 / x.tan()
}

/// Area `(N a²/4)·cot(π/N)` of the regular `N`-gon with side `a`.
pub fn base_area(n: usize, a: f64) -> Result<f64> {
    if n < 3 {
        return Err(GmeError::Unsupported {
            measure: "base area",
            n,
            reason: "a polygon needs at least 3 sides",
        });
    }
    let n = n as f64;
    Ok(n * a * a / 4.0 * cot(PI / n))
}

/// `(N a²/12)·cot(π/N)·h`, the regular-polygon pyramid volume.
pub fn polygonal_volume(n: usize, a: f64, h: f64) -> f64 {
    let nf = n as f64;
    nf * a * a / 12.0 * cot(PI / nf) * h
}

/// `a²h/3`, the square pyramid volume used for four parties.
pub fn rectangular_volume(a: f64, h: f64) -> f64 {
    a * a * h / 3.0
}

/// `(√3/12)·a²`, the tripartite volume.
pub fn tripartite_volume(a: f64) -> f64 {
    3f64.sqrt() / 12.0 * a * a
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PyramidGeometry {
    pub n: usize,
    pub a: f64,
    pub h: f64,
    pub base_area: f64,
    pub volume: f64,
}

/// Pyramid geometry and volume for a spectrum of three or more parties.
pub fn volume(spectrum: &ConcurrenceSpectrum) -> Result<PyramidGeometry> {
    let n = spectrum.n();
    if n < 3 {
        return Err(GmeError::Unsupported {
            measure: "pyramid volume",
            n,
            reason: "it is defined from three parties upward",
        });
    }
    let a = base_edge(spectrum);
    let h = height(spectrum)?;
    let volume = match n {
        3 => tripartite_volume(a),
        4 => rectangular_volume(a, h),
        _ => polygonal_volume(n, a, h),
    };
    Ok(PyramidGeometry {
        n,
        a,
        h,
        base_area: base_area(n, a)?,
        volume,
    })
}

/// Triangle measure `F = [(16/3)·Q·Π_i(Q − C_i²)]^{1/4}`, `Q = ½Σ_i C_i²`,
/// over the three one-versus-rest cuts.
pub fn triangle_measure(spectrum: &ConcurrenceSpectrum) -> Result<f64> {
    if spectrum.n() != 3 {
        return Err(GmeError::Unsupported {
            measure: "triangle measure",
            n: spectrum.n(),
            reason: "it is defined for three parties only",
        });
    }
    let squares: Vec<f64> = spectrum.singletons().map(|c| c * c).collect();
    let q = 0.5 * squares.iter().sum::<f64>();
    // Q - C² ≥ 0 analytically; clamp rounding noise.
    let product: f64 = squares.iter().map(|c2| (q - c2).max(0.0)).product();
    Ok((16.0 / 3.0 * q * product).powf(0.25))
}

/// Genuine multipartite concurrence: the smallest concurrence over all cuts.
pub fn c_gme(spectrum: &ConcurrenceSpectrum) -> f64 {
    spectrum.values().fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeparabilityClass {
    #[serde(rename = "fully-separable")]
    FullySeparable,
    #[serde(rename = "biseparable")]
    Biseparable,
    #[serde(rename = "GME")]
    Gme,
}

impl SeparabilityClass {
    pub fn label(self) -> &'static str {
        match self {
            SeparabilityClass::FullySeparable => "fully-separable",
            SeparabilityClass::Biseparable => "biseparable",
            SeparabilityClass::Gme => "GME",
        }
    }
}

impl std::fmt::Display for SeparabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: SeparabilityClass,
    /// Cuts with concurrence `≤ tol`; each is a factorization of the pure state.
    pub zero_cuts: Vec<Bipartition>,
}

/// Separability class from the concurrences: GME when every cut exceeds
/// `tol`, fully separable when every one-versus-rest cut is at most `tol`,
/// biseparable otherwise.
pub fn classify(spectrum: &ConcurrenceSpectrum, tol: f64) -> Classification {
    let zero_cuts: Vec<Bipartition> = spectrum
        .entries()
        .iter()
        .filter(|(_, c)| *c <= tol)
        .map(|(cut, _)| cut.clone())
        .collect();
    let class = if zero_cuts.is_empty() {
        SeparabilityClass::Gme
    } else if spectrum.singletons().all(|c| c <= tol) {
        SeparabilityClass::FullySeparable
    } else {
        SeparabilityClass::Biseparable
    };
    Classification { class, zero_cuts }
}

/// Which measures to compute in [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureSelection {
    Volume,
    CGme,
    Triangle,
    /// Every measure defined for the state's party count.
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub tol: f64,
    pub measure: MeasureSelection,
    pub execution: Execution,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            tol: ZERO_TOL,
            measure: MeasureSelection::All,
            execution: Execution::default(),
        }
    }
}

/// All measures and the classification for one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub id: String,
    pub n: usize,
    pub dims: Vec<usize>,
    pub volume: Option<f64>,
    pub geometry: Option<PyramidGeometry>,
    pub c_gme: Option<f64>,
    pub triangle: Option<f64>,
    pub classification: SeparabilityClass,
    /// Keyed by comma-joined cut indices, in canonical order.
    pub concurrences: IndexMap<String, f64>,
    pub zero_cuts: Vec<String>,
}

pub fn evaluate(
    id: impl Into<String>,
    state: &PureState,
    opts: &EvalOptions,
) -> Result<MeasureReport> {
    let spectrum = full_spectrum_with(state, opts.execution)?;
    report_from_spectrum(id.into(), &spectrum, opts)
}

pub fn report_from_spectrum(
    id: String,
    spectrum: &ConcurrenceSpectrum,
    opts: &EvalOptions,
) -> Result<MeasureReport> {
    let n = spectrum.n();
    let (want_volume, want_cgme, want_triangle) = match opts.measure {
        MeasureSelection::Volume => (true, false, false),
        MeasureSelection::CGme => (false, true, false),
        MeasureSelection::Triangle => (false, false, true),
        MeasureSelection::All => (n >= 3, true, n == 3),
    };
    let geometry = want_volume.then(|| volume(spectrum)).transpose()?;
    let triangle = want_triangle
        .then(|| triangle_measure(spectrum))
        .transpose()?;
    let classification = classify(spectrum, opts.tol);
    Ok(MeasureReport {
        id,
        n,
        dims: spectrum.dims().to_vec(),
        volume: geometry.map(|g| g.volume),
        geometry,
        c_gme: want_cgme.then(|| c_gme(spectrum)),
        triangle,
        classification: classification.class,
        concurrences: spectrum
            .entries()
            .iter()
            .map(|(cut, c)| (cut.key(), *c))
            .collect(),
        zero_cuts: classification
            .zero_cuts
            .iter()
            .map(Bipartition::key)
            .collect(),
    })
}
