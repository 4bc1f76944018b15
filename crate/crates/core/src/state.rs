//! Multipartite pure states over `H_1^{d_1} ⊗ … ⊗ H_N^{d_N}`.
//!
//! Amplitudes are stored row-major with subsystem 1 varying slowest: the
//! basis state with digits `(b_1, …, b_N)` lives at
//! `Σ_f b_f · Π_{g>f} d_g`. Every other module relies on this layout.
//!
//! Subsystems are numbered from 1 in the public API.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{GmeError, Result};
use crate::linalg::CMatrix;

/// Largest supported statevector length.
pub const MAX_AMPLITUDES: usize = 1 << 26;

/// Norm tolerance for states built in code.
pub const NORM_TOL: f64 = 1e-12;

/// Norm tolerance for states read from text, whose amplitudes are printed
/// with finite precision. Within it the state is rescaled to unit norm.
pub const PARSE_NORM_TOL: f64 = 1e-6;

/// Tolerance on `u·u† = 1` accepted by [`PureState::apply_local_unitary`].
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

fn validate_dims(dims: &[usize]) -> Result<usize> {
    if dims.len() < 2 {
        return Err(GmeError::InvalidDims(format!(
            "need at least 2 subsystems, got {}",
            dims.len()
        )));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(GmeError::InvalidDims(format!(
            "local dimension {d} is below 2"
        )));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&total| total <= MAX_AMPLITUDES)
        .ok_or_else(|| {
            let approx: f64 = dims.iter().map(|&d| d as f64).product();
            GmeError::TooLarge(approx.min(usize::MAX as f64) as usize)
        })
}

/// Total Hilbert dimension for `dims`, validating the party count, local
/// dimensions and the size cap.
pub fn total_dimension(dims: &[usize]) -> Result<usize> {
    validate_dims(dims)
}

fn norm_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl PureState {
    /// Builds a state whose norm is already 1 within [`NORM_TOL`].
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(dims, amps, NORM_TOL)
    }

    /// Builds a state and rescales it to unit norm.
    pub fn normalized(dims: Vec<usize>, mut amps: Vec<Complex64>) -> Result<Self> {
        Self::check_shape(&dims, &amps)?;
        let norm = norm_of(&amps);
        if norm == 0.0 || !norm.is_finite() {
            return Err(GmeError::ZeroVector);
        }
        amps.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { dims, amps })
    }

    /// Verifies the norm within `tol`, then rescales so the stored state is
    /// unit-norm to rounding.
    pub fn with_tolerance(dims: Vec<usize>, amps: Vec<Complex64>, tol: f64) -> Result<Self> {
        Self::check_shape(&dims, &amps)?;
        let norm = norm_of(&amps);
        if !((norm - 1.0).abs() <= tol) {
            return Err(GmeError::NotNormalized { norm, tol });
        }
        Self::normalized(dims, amps)
    }

    fn check_shape(dims: &[usize], amps: &[Complex64]) -> Result<()> {
        let expected = validate_dims(dims)?;
        if amps.len() != expected {
            return Err(GmeError::LengthMismatch {
                expected,
                got: amps.len(),
            });
        }
        Ok(())
    }

    /// Normalized superposition of basis states given as `(digits, amplitude)`.
    pub fn from_terms<'a>(
        dims: &[usize],
        terms: impl IntoIterator<Item = (&'a [usize], Complex64)>,
    ) -> Result<Self> {
        let total = validate_dims(dims)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        for (digits, amp) in terms {
            let idx = flat_index(dims, digits).ok_or_else(|| {
                GmeError::InvalidDims(format!("basis digits {digits:?} do not fit dims {dims:?}"))
            })?;
            amps[idx] += amp;
        }
        Self::normalized(dims.to_vec(), amps)
    }

    /// Normalized equal-weight superposition of qubit basis strings such as `"0110"`.
    pub fn from_bitstrings(strings: &[&str]) -> Result<Self> {
        let n = strings.first().map_or(0, |s| s.len());
        let dims = vec![2; n];
        let digits: Vec<Vec<usize>> = strings
            .iter()
            .map(|s| {
                s.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(GmeError::InvalidDims(format!("bad bit `{c}` in {s}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_terms(
            &dims,
            digits
                .iter()
                .map(|d| (d.as_slice(), Complex64::new(1.0, 0.0))),
        )
    }

    /// Computational basis state `|b_1 … b_N⟩`.
    pub fn basis(dims: &[usize], digits: &[usize]) -> Result<Self> {
        Self::from_terms(dims, [(digits, Complex64::new(1.0, 0.0))])
    }

    /// N-qubit GHZ state `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        let zeros = vec![0; n];
        let ones = vec![1; n];
        Self::from_terms(
            &vec![2; n],
            [
                (zeros.as_slice(), Complex64::new(1.0, 0.0)),
                (ones.as_slice(), Complex64::new(1.0, 0.0)),
            ],
        )
    }

    /// N-qubit W state, the equal superposition of single excitations.
    pub fn w(n: usize) -> Result<Self> {
        let excitations: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..n).map(|j| usize::from(j == k)).collect())
            .collect();
        Self::from_terms(
            &vec![2; n],
            excitations
                .iter()
                .map(|d| (d.as_slice(), Complex64::new(1.0, 0.0))),
        )
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    /// Amplitude of the basis state with the given digits.
    pub fn amplitude(&self, digits: &[usize]) -> Option<Complex64> {
        flat_index(&self.dims, digits).map(|i| self.amps[i])
    }

    /// `self ⊗ other`, with `other`'s subsystems appended after ours.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        validate_dims(&dims)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(PureState { dims, amps })
    }

    /// Applies `u` to subsystem `site` (1-based).
    pub fn apply_local_unitary(&self, site: usize, u: &CMatrix) -> Result<PureState> {
        let n = self.n_parties();
        if site == 0 || site > n {
            return Err(GmeError::SiteOutOfRange { index: site, n });
        }
        let d = self.dims[site - 1];
        if u.rows() != d || u.cols() != d {
            return Err(GmeError::DimensionMismatch {
                site,
                dim: d,
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        let defect = u.unitarity_defect();
        if !(defect <= UNITARY_TOL) {
            return Err(GmeError::NotUnitary(defect));
        }

        let inner: usize = self.dims[site..].iter().product();
        let outer: usize = self.dims[..site - 1].iter().product();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut column = vec![Complex64::new(0.0, 0.0); d];
        for o in 0..outer {
            let base = o * d * inner;
            for r in 0..inner {
                for (j, c) in column.iter_mut().enumerate() {
                    *c = self.amps[base + j * inner + r];
                }
                for i in 0..d {
                    let row = u.row(i);
                    out[base + i * inner + r] = row.iter().zip(&column).map(|(x, y)| x * y).sum();
                }
            }
        }
        Ok(PureState {
            dims: self.dims.clone(),
            amps: out,
        })
    }

    /// Relabels subsystems: new subsystem `j` is old subsystem `perm[j-1]`
    /// (1-based), so the new amplitude at digits `(b_{perm(1)}, …, b_{perm(N)})`
    /// equals the old amplitude at `(b_1, …, b_N)`.
    pub fn permute_subsystems(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.n_parties();
        if !is_permutation(perm, n) {
            return Err(GmeError::InvalidPermutation(n));
        }
        let zero_based: Vec<usize> = perm.iter().map(|&p| p - 1).collect();
        let dims: Vec<usize> = zero_based.iter().map(|&p| self.dims[p]).collect();
        let amps = permute_axes(&self.amps, &self.dims, &zero_based);
        Ok(PureState { dims, amps })
    }

    /// Serializes to the line-based state format. Only nonzero amplitudes are written.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("dims");
        for d in &self.dims {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
        let mut digits = vec![0usize; self.dims.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            unflatten(idx, &self.dims, &mut digits);
            out.push_str("amp");
            for b in &digits {
                let _ = write!(out, " {b}");
            }
            let _ = writeln!(out, " {:?} {:?}", amp.re, amp.im);
        }
        out
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter()
        .all(|&p| (1..=n).contains(&p) && !std::mem::replace(&mut seen[p - 1], true))
}

/// Flat row-major index for `digits`, or `None` when a digit is out of range.
pub fn flat_index(dims: &[usize], digits: &[usize]) -> Option<usize> {
    if digits.len() != dims.len() {
        return None;
    }
    digits
        .iter()
        .zip(dims)
        .try_fold(0usize, |acc, (&b, &d)| (b < d).then_some(acc * d + b))
}

/// Inverse of [`flat_index`]; writes the digits of `idx` into `digits`.
pub fn unflatten(mut idx: usize, dims: &[usize], digits: &mut [usize]) {
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
}

/// Transposes a row-major tensor so that new axis `k` is old axis `axes[k]` (0-based).
pub(crate) fn permute_axes(data: &[Complex64], dims: &[usize], axes: &[usize]) -> Vec<Complex64> {
    let n = dims.len();
    let mut old_strides = vec![1usize; n];
    for f in (0..n.saturating_sub(1)).rev() {
        old_strides[f] = old_strides[f + 1] * dims[f + 1];
    }
    let new_dims: Vec<usize> = axes.iter().map(|&a| dims[a]).collect();
    let strides: Vec<usize> = axes.iter().map(|&a| old_strides[a]).collect();

    // Walk the output in order, carrying the source offset like an odometer.
    let mut out = Vec::with_capacity(data.len());
    let mut counter = vec![0usize; n];
    let mut src = 0usize;
    for _ in 0..data.len() {
        out.push(data[src]);
        for k in (0..n).rev() {
            counter[k] += 1;
            src += strides[k];
            if counter[k] < new_dims[k] {
                break;
            }
            src -= strides[k] * new_dims[k];
            counter[k] = 0;
        }
    }
    out
}

/// Parses the line-based state format.
///
/// ```text
/// # comment
/// dims 2 2
/// amp 0 0 0.7071067811865476 0
/// amp 1 1 0.7071067811865476 0
/// ```
///
/// With `normalize` the amplitudes are rescaled to unit norm; otherwise the
/// norm must already be 1 within [`PARSE_NORM_TOL`].
pub fn parse_state(text: &str, normalize: bool) -> Result<PureState> {
    let mut dims: Option<(Vec<usize>, usize)> = None;
    let mut amps: Vec<Complex64> = Vec::new();
    let mut assigned: Vec<bool> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| GmeError::Parse {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap_or_default();

        let Some((ref dims, total)) = dims else {
            if keyword != "dims" {
                return Err(err(format!("expected `dims` line, found `{keyword}`")));
            }
            let parsed: Vec<usize> = fields
                .map(|f| f.parse().map_err(|_| err(format!("bad dimension `{f}`"))))
                .collect::<Result<_>>()?;
            let total = validate_dims(&parsed).map_err(|e| err(e.to_string()))?;
            amps = vec![Complex64::new(0.0, 0.0); total];
            assigned = vec![false; total];
            dims = Some((parsed, total));
            continue;
        };
        debug_assert_eq!(amps.len(), total);

        match keyword {
            "amp" => {}
            "dims" => return Err(err("duplicate `dims` line".into())),
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
        let fields: Vec<&str> = fields.collect();
        let n = dims.len();
        if fields.len() != n + 2 {
            return Err(err(format!(
                "expected {n} basis digits and re im, found {} fields",
                fields.len()
            )));
        }
        let mut digits = Vec::with_capacity(n);
        for (f, (tok, &d)) in fields[..n].iter().zip(dims).enumerate() {
            let b: usize = tok
                .parse()
                .map_err(|_| err(format!("bad basis digit `{tok}`")))?;
            if b >= d {
                return Err(err(format!(
                    "basis digit {b} for subsystem {} is out of range 0..{d}",
                    f + 1
                )));
            }
            digits.push(b);
        }
        let parse_real = |tok: &str| -> Result<f64> {
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(format!("bad amplitude component `{tok}`")))
        };
        let amp = Complex64::new(parse_real(fields[n])?, parse_real(fields[n + 1])?);
        let idx = flat_index(dims, &digits).expect("digits validated above");
        if std::mem::replace(&mut assigned[idx], true) {
            return Err(err(format!("duplicate basis entry {digits:?}")));
        }
        amps[idx] = amp;
    }

    let Some((dims, _)) = dims else {
        return Err(GmeError::Parse {
            line: text.lines().count().max(1),
            message: "missing `dims` line".into(),
        });
    };
    if normalize {
        PureState::normalized(dims, amps)
    } else {
        PureState::with_tolerance(dims, amps, PARSE_NORM_TOL)
    }
}

impl std::str::FromStr for PureState {
    type Err = GmeError;

    fn from_str(s: &str) -> Result<Self> {
        parse_state(s, false)
    }
}
