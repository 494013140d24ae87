//! Time-time slices of frequency-comb biphotons.

mod comb;
mod oracle;
mod params;
mod peaks;
mod slice;

pub use comb::{comb_factor_f, comb_factor_g, dirichlet};
pub use oracle::{
    fourier_oracle_profile, fourier_oracle_slice, relative_linf, OracleOptions, ALIAS_ENERGY_LIMIT,
};
pub use params::{BiphotonParams, CombState, TimeWindow};
pub use peaks::{find_peaks, mean_peak_spacing, PEAK_THRESHOLD};
pub use slice::{
    closed_form_profile, closed_form_slice, intensity, line_integral_numeric, line_normalization,
    normalization_ratio, profile_difference, slice_difference, tei_time_slice,
};
