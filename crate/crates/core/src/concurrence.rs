//! Pure-state concurrence `C_S = √(2(1 − Tr ρ_S²))` across bipartitions.
//!
//! The production path reshapes the statevector into a `d_S × d_S̄` matrix
//! `M` and takes `Tr ρ_S² = ‖M M†‖_F²`. [`dense_oracle_purity`] is an
//! independent route that sums the reduced density matrix entry by entry.

use std::borrow::Cow;

use num_complex::Complex64;

use crate::bipartition::{canonical_cuts, Bipartition};
use crate::error::{GmeError, Result};
use crate::exec::{self, Execution};
use crate::linalg::{gram_frobenius_sq, CMatrix};
use crate::state::{permute_axes, unflatten, PureState};

/// Largest reduced dimension the dense oracle will materialize.
pub const DENSE_ORACLE_CAP: usize = 4096;

fn check_cut(state: &PureState, cut: &Bipartition) -> Result<()> {
    if cut.n() != state.n_parties() {
        return Err(GmeError::InvalidBipartition(format!(
            "cut {cut} is over {} parties, state has {}",
            cut.n(),
            state.n_parties()
        )));
    }
    Ok(())
}

/// Product of local dimensions on each side of the cut.
pub fn cut_dimensions(dims: &[usize], cut: &Bipartition) -> (usize, usize) {
    let inside: usize = cut.subset().iter().map(|&i| dims[i - 1]).product();
    let total: usize = dims.iter().product();
    (inside, total / inside)
}

/// Upper bound `√(2(m−1)/m)` on the concurrence of a cut whose smaller side has dimension `m`.
pub fn max_concurrence(m: usize) -> f64 {
    let m = m as f64;
    (2.0 * (m - 1.0) / m).sqrt()
}

/// `Tr ρ_S²` via the Gram matrix of the reshaped amplitudes, clamped to `[0, 1]`.
pub fn reduced_purity(state: &PureState, cut: &Bipartition) -> Result<f64> {
    check_cut(state, cut)?;
    let dims = state.dims();
    let (rows, cols) = cut_dimensions(dims, cut);

    // Axes in `S` first, then the complement, both ascending.
    let axes: Vec<usize> = cut
        .subset()
        .iter()
        .copied()
        .chain(cut.complement())
        .map(|i| i - 1)
        .collect();
    let matrix: Cow<'_, [Complex64]> = if axes.iter().enumerate().all(|(k, &a)| k == a) {
        Cow::Borrowed(state.amplitudes())
    } else {
        Cow::Owned(permute_axes(state.amplitudes(), dims, &axes))
    };
    Ok(gram_frobenius_sq(&matrix, rows, cols).clamp(0.0, 1.0))
}

/// Builds `ρ_S` explicitly by summing over complement indices and returns `Tr(ρ_S ρ_S)`.
pub fn dense_oracle_purity(state: &PureState, cut: &Bipartition) -> Result<f64> {
    reduced_density_matrix(state, cut).map(|rho| {
        let sq = rho.matmul(&rho);
        (0..sq.rows()).map(|i| sq[(i, i)].re).sum()
    })
}

/// Reduced density matrix on the subsystems in `cut`, by direct partial trace.
///
/// Rows and columns are indexed row-major over the subsystems in `S` in
/// ascending order.
pub fn reduced_density_matrix(state: &PureState, cut: &Bipartition) -> Result<CMatrix> {
    check_cut(state, cut)?;
    let dims = state.dims();
    let (inside, outside) = cut_dimensions(dims, cut);
    if inside > DENSE_ORACLE_CAP {
        return Err(GmeError::OracleCapExceeded {
            dim: inside,
            cap: DENSE_ORACLE_CAP,
        });
    }
    let sites_in: Vec<usize> = cut.subset().iter().map(|i| i - 1).collect();
    let sites_out: Vec<usize> = cut.complement().iter().map(|i| i - 1).collect();

    // Scatter every amplitude into its (inside, outside) slot by decoding digits.
    let mut slots = vec![Vec::new(); outside];
    let mut digits = vec![0usize; dims.len()];
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if *amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        unflatten(idx, dims, &mut digits);
        let row = sites_in.iter().fold(0, |acc, &s| acc * dims[s] + digits[s]);
        let col = sites_out
            .iter()
            .fold(0, |acc, &s| acc * dims[s] + digits[s]);
        slots[col].push((row, *amp));
    }

    let mut rho = CMatrix::zeros(inside, inside);
    for column in &slots {
        for &(i, a) in column {
            for &(j, b) in column {
                rho[(i, j)] += a * b.conj();
            }
        }
    }
    Ok(rho)
}

/// Concurrence of `state` across `cut`. Symmetric under `cut ↔ complement`.
pub fn concurrence(state: &PureState, cut: &Bipartition) -> Result<f64> {
    reduced_purity(state, cut).map(concurrence_from_purity)
}

/// Values of `1 − Tr ρ²` at or below this are rounding noise and give zero concurrence.
///
/// The square root lifts purity noise of order 1e-16 to concurrences of
/// order 1e-8, so the clamp has to act on the radicand.
pub const RADICAND_TOL: f64 = 1e-12;

/// `√(2(1 − purity))`, zero when `1 − purity ≤ RADICAND_TOL`.
pub fn concurrence_from_purity(purity: f64) -> f64 {
    let mixedness = 1.0 - purity;
    if mixedness <= RADICAND_TOL {
        0.0
    } else {
        (2.0 * mixedness).sqrt()
    }
}

/// Concurrence of every canonical cut of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceSpectrum {
    dims: Vec<usize>,
    entries: Vec<(Bipartition, f64)>,
}

impl ConcurrenceSpectrum {
    /// Wraps precomputed values. `values` must follow [`canonical_cuts`] order.
    pub fn from_values(dims: &[usize], values: Vec<f64>) -> Result<Self> {
        let cuts = canonical_cuts(dims.len())?;
        if cuts.len() != values.len() {
            return Err(GmeError::InvalidBipartition(format!(
                "{} parties need {} concurrences, got {}",
                dims.len(),
                cuts.len(),
                values.len()
            )));
        }
        Ok(Self {
            dims: dims.to_vec(),
            entries: cuts.into_iter().zip(values).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `(cut, concurrence)` pairs in canonical order.
    pub fn entries(&self) -> &[(Bipartition, f64)] {
        &self.entries
    }

    /// Concurrence for any cut, canonical or not.
    pub fn get(&self, cut: &Bipartition) -> Option<f64> {
        let canonical = cut.canonical();
        self.entries
            .iter()
            .find(|(c, _)| *c == canonical)
            .map(|(_, v)| *v)
    }

    /// One-versus-rest concurrences `C_{i|î}` for `i = 1..N`.
    pub fn singletons(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries
            .iter()
            .filter(|(c, _)| c.len() == 1)
            .map(|(_, v)| *v)
    }

    /// Concurrences of the canonical cuts with `|S| ≥ 2`.
    pub fn multi_party(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries
            .iter()
            .filter(|(c, _)| c.len() >= 2)
            .map(|(_, v)| *v)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }
}

/// Concurrence across all canonical cuts, using the default execution mode.
pub fn full_spectrum(state: &PureState) -> Result<ConcurrenceSpectrum> {
    full_spectrum_with(state, Execution::default())
}

/// As [`full_spectrum`], with an explicit execution mode. Output is identical in every mode.
pub fn full_spectrum_with(state: &PureState, mode: Execution) -> Result<ConcurrenceSpectrum> {
    let cuts = canonical_cuts(state.n_parties())?;
    let values = exec::map(&cuts, mode, |cut| concurrence(state, cut));
    let entries = cuts
        .into_iter()
        .zip(values)
        .map(|(cut, v)| v.map(|v| (cut, v)))
        .collect::<Result<_>>()?;
    Ok(ConcurrenceSpectrum {
        dims: state.dims().to_vec(),
        entries,
    })
}
