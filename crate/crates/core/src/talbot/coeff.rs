use nalgebra::DMatrix;

use super::params::TalbotParams;
use crate::error::Result;
use crate::numerics::shannon_bits;

/// Schmidt weights below this singular value are dropped.
pub const SINGULAR_VALUE_CUTOFF: f64 = 1e-14;

/// Frobenius-normalized two-slit amplitude matrix `C[d1, d2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    dim: usize,
    c: Vec<f64>,
}

impl CoeffMatrix {
    /// Wraps an arbitrary real amplitude matrix, renormalizing it.
    pub fn from_rows(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(crate::Error::ShapeMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let norm = entries.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(crate::Error::DegenerateDistribution);
        }
        Ok(Self {
            dim,
            c: entries.into_iter().map(|x| x / norm).collect(),
        })
    }

    /// `(1/√D) I`.
    pub fn maximally_entangled(dim: usize) -> Self {
        let mut c = vec![0.0; dim * dim];
        let v = 1.0 / (dim as f64).sqrt();
        for d in 0..dim {
            c[d * dim + d] = v;
        }
        Self { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, d1: usize, d2: usize) -> f64 {
        self.c[d1 * self.dim + d2]
    }

    pub fn entries(&self) -> &[f64] {
        &self.c
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.c)
    }

    /// Squared singular values, descending.
    pub fn schmidt_weights(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .to_matrix()
            .singular_values()
            .iter()
            .filter(|&&s| s >= SINGULAR_VALUE_CUTOFF)
            .map(|s| s * s)
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }
}

/// Amplitudes `N exp{-(s²/4Δ+²)(d1² - 2R d1 d2 + d2²)}`, with the R = 1 delta limit taken exactly.
pub fn coeff_matrix(params: &TalbotParams) -> Result<CoeffMatrix> {
    params.validate()?;
    let dim = params.slits;
    if params.is_perfectly_correlated() {
        return Ok(CoeffMatrix::maximally_entangled(dim));
    }
    let scale = params.coefficient_scale();
    let r = params.correlation;
    let entries = (0..dim)
        .flat_map(|d1| (0..dim).map(move |d2| (d1 as f64, d2 as f64)))
        .map(|(a, b)| (-scale * ((a * a + b * b) - 2.0 * r * (a * b))).exp())
        .collect();
    CoeffMatrix::from_rows(dim, entries)
}

/// Subsystem von Neumann entropy in bits, from the singular values of `c`.
pub fn svne(c: &CoeffMatrix) -> f64 {
    shannon_bits(&c.schmidt_weights())
}

/// Reduced density matrix `ρ_A = C Cᵀ`.
pub fn subsystem_density(c: &CoeffMatrix) -> DMatrix<f64> {
    let m = c.to_matrix();
    let rho = &m * m.transpose();
    // symmetrize away roundoff
    (&rho + rho.transpose()) * 0.5
}
