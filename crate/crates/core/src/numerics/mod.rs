//! Grids, entropy and mutual-information kernels, deterministic summation.

pub mod entropy;
pub mod grid;
pub mod profile;
pub mod sum;

pub use entropy::{
    discrete_mutual_information, entropy_continuous, mutual_information, shannon_bits, DifferentialEntropy, EPS_NUM,
    ZERO_CUTOFF,
};
pub use grid::{marginals, normalize, Axis1D, DiscreteJoint, JointGrid, Marginal1D};
pub use profile::DiagonalProfile;
pub use sum::{pairwise_sum, par_sum_by, CompensatedSum};
