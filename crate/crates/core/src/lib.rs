//! Genuine multipartite entanglement measures for pure states of any
//! number of parties and local dimensions.
//!
//! The main entry points are [`concurrence::full_spectrum`], which computes
//! the concurrence of every bipartition, and [`measures::volume`], which
//! turns that spectrum into the concurrence-pyramid volume.
//!
//! ```
//! use gme_core::{concurrence::full_spectrum, measures, PureState};
//!
//! let ghz = PureState::ghz(4).unwrap();
//! let spectrum = full_spectrum(&ghz).unwrap();
//! let v = measures::volume(&spectrum).unwrap().volume;
//! assert!((v - 1.0 / 3.0).abs() < 1e-12);
//! ```

pub mod bipartition;
pub mod concurrence;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod linalg;
pub mod measures;
pub mod report;
pub mod state;
pub mod verify;

pub use bipartition::{canonical_bipartitions, Bipartition};
pub use concurrence::{full_spectrum, ConcurrenceSpectrum};
pub use error::{GmeError, Result};
pub use exec::Execution;
pub use measures::{MeasureReport, PyramidGeometry, SeparabilityClass};
pub use state::{parse_state, PureState};
