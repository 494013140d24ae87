//! Entangled Talbot carpets: coefficient matrix, Talbot basis, position-basis
//! slice, and the entanglement indicators built on them.

pub mod basis;
pub mod cglmp;
pub mod coeff;
pub mod params;
pub mod tomogram;

pub use basis::{basis_function, max_off_diagonal, TalbotBasis};
pub use cglmp::{
    cglmp_id, joint_outcome_distribution, measurement_state, tei_discrete_basis, tei_discrete_basis_with,
    MeasurementSetting, Side,
};
pub use coeff::{coeff_matrix, subsystem_density, svne, CoeffMatrix};
pub use params::TalbotParams;
pub use tomogram::{direct_position_mi, patch_position_mi, patch_table, position_tomogram, tei_position, TeiPath};

/// Correlations of the standard D sweep; 0.998 sits just above the entanglement threshold.
pub const SWEEP_CORRELATIONS: [f64; 3] = [0.9998, 0.99998, 1.0];
pub const NEAR_THRESHOLD_CORRELATION: f64 = 0.998;
