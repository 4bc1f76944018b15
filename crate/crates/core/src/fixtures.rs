//! Benchmark states with published measure values.

use num_complex::Complex64;

use crate::error::Result;
use crate::state::PureState;

/// A named state together with its published values.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: &'static str,
    pub description: &'static str,
    pub state: PureState,
    pub published_volume: Option<f64>,
    pub published_c_gme: Option<f64>,
    /// Set when the published volume is known not to follow from the
    /// concurrence definition applied to the listed amplitudes.
    pub volume_note: Option<&'static str>,
}

pub const W4_NOTE: &str = "published 0.1875 equals a^2 h/3 with squared one-vs-rest concurrences; \
     the unsquared concurrences sqrt(3)/2 and 1 give 0.25";

pub const PSI_C_NOTE: &str = "the listed amplitudes give one-vs-rest concurrences (0.8, 0.9798 x3) \
     and two-vs-two concurrences 1.0583 x3, hence 0.3060; no variant of the formula reproduces 0.1487";

/// `x = 5√113/32 + 51/32`, the weight parameter of ψ_D.
pub fn psi_d_weight() -> f64 {
    5.0 * 113f64.sqrt() / 32.0 + 51.0 / 32.0
}

/// ψ_D with amplitude `√x` on each of `|0000⟩, |0101⟩, |1010⟩, |1111⟩` and
/// `i, 1, −i` on `|0001⟩, |0110⟩, |1011⟩`, normalized by `1/√(4x + 3)`.
pub fn psi_d() -> Result<PureState> {
    let x = psi_d_weight();
    let big = Complex64::new(x.sqrt(), 0.0);
    let norm = (4.0 * x + 3.0).sqrt();
    let terms: [(&[usize], Complex64); 7] = [
        (&[0, 0, 0, 0], big),
        (&[0, 1, 0, 1], big),
        (&[1, 0, 1, 0], big),
        (&[1, 1, 1, 1], big),
        (&[0, 0, 0, 1], Complex64::new(0.0, 1.0)),
        (&[0, 1, 1, 0], Complex64::new(1.0, 0.0)),
        (&[1, 0, 1, 1], Complex64::new(0.0, -1.0)),
    ];
    let mut amps = vec![Complex64::new(0.0, 0.0); 16];
    for (digits, amp) in terms {
        let idx = digits.iter().fold(0, |acc, &b| acc * 2 + b);
        amps[idx] = amp / norm;
    }
    PureState::new(vec![2; 4], amps)
}

pub fn ghz4() -> Result<PureState> {
    PureState::ghz(4)
}

pub fn w4() -> Result<PureState> {
    PureState::w(4)
}

pub fn psi_a() -> Result<PureState> {
    PureState::from_bitstrings(&["0000", "1011", "1101", "1110"])
}

pub fn psi_b() -> Result<PureState> {
    PureState::from_bitstrings(&["0000", "0101", "1000", "1110"])
}

pub fn psi_c() -> Result<PureState> {
    PureState::from_bitstrings(&["0000", "1111", "0011", "0101", "0110"])
}

/// `(|00⟩+|11⟩)_{13} ⊗ (|000⟩+|110⟩)_{245} / 2`.
pub fn phi5() -> Result<PureState> {
    PureState::from_bitstrings(&["00000", "01010", "10100", "11110"])
}

/// All benchmark states in presentation order.
pub fn all() -> Result<Vec<Fixture>> {
    Ok(vec![
        Fixture {
            id: "GHZ4",
            description: "(|0000> + |1111>)/sqrt(2)",
            state: ghz4()?,
            published_volume: Some(0.3333),
            published_c_gme: None,
            volume_note: None,
        },
        Fixture {
            id: "W4",
            description: "(|1000> + |0100> + |0010> + |0001>)/2",
            state: w4()?,
            published_volume: Some(0.1875),
            published_c_gme: None,
            volume_note: Some(W4_NOTE),
        },
        Fixture {
            id: "psi_A",
            description: "(|0000> + |1011> + |1101> + |1110>)/2",
            state: psi_a()?,
            published_volume: Some(0.3468),
            published_c_gme: Some(0.8660),
            volume_note: None,
        },
        Fixture {
            id: "psi_B",
            description: "(|0000> + |0101> + |1000> + |1110>)/2",
            state: psi_b()?,
            published_volume: Some(0.2788),
            published_c_gme: Some(0.8660),
            volume_note: None,
        },
        Fixture {
            id: "psi_C",
            description: "(|0000> + |1111> + |0011> + |0101> + |0110>)/sqrt(5)",
            state: psi_c()?,
            published_volume: Some(0.1487),
            published_c_gme: Some(0.8000),
            volume_note: Some(PSI_C_NOTE),
        },
        Fixture {
            id: "psi_D",
            description: "[sqrt(x)(|0000> + |0101> + |1010> + |1111>) + i|0001> + |0110> - i|1011>]/sqrt(4x+3), x = (5 sqrt(113) + 51)/32",
            state: psi_d()?,
            published_volume: Some(0.3407),
            published_c_gme: Some(0.8000),
            volume_note: None,
        },
        Fixture {
            id: "phi_12345",
            description: "(|00000> + |01010> + |10100> + |11110>)/2",
            state: phi5()?,
            published_volume: Some(0.0),
            published_c_gme: None,
            volume_note: None,
        },
    ])
}
