//! Position-basis slice `w(x_A; x_B) = |Ψ(x_A, x_B)|²` and its mutual information.
//!
//! Two routes are provided. The direct route samples the slice on a grid
//! over the evaluation window. The patch route uses that the basis functions
//! are sums of Gaussian patches at `ds + mℓ` which, at the standard geometry,
//! overlap by less than 1e-80: the slice is then a weighted sum of disjoint,
//! identically shaped 2-D patches with weights `C[d1,d2]² u_m1 u_m2`, and its
//! mutual information equals the discrete mutual information of that table.

use rayon::prelude::*;

use super::basis::{max_off_diagonal, TalbotBasis};
use super::coeff::{coeff_matrix, CoeffMatrix};
use super::params::TalbotParams;
use crate::error::{Error, Result};
use crate::numerics::{discrete_mutual_information, normalize, pairwise_sum, Axis1D, DiscreteJoint, JointGrid};
use crate::numerics::{entropy::checked_mi, CompensatedSum, ZERO_CUTOFF};

/// Largest tolerated mass outside the sampled window.
pub const WINDOW_MASS_TOLERANCE: f64 = 1e-9;

/// Largest basis overlap for which the patch route is exact to working precision.
pub const PATCH_OVERLAP_LIMIT: f64 = 1e-12;

/// How the position-basis indicator is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TeiPath {
    /// Discrete MI of the patch-weight table, full adaptive basis.
    Patch,
    /// Grid quadrature with the basis truncated to `|m| ≤ m_max`, step `step_fraction * δ`.
    Direct { m_max: usize, step_fraction: f64 },
}

impl TeiPath {
    pub const DEFAULT_DIRECT: TeiPath = TeiPath::Direct {
        m_max: 2,
        step_fraction: 0.5,
    };
}

fn check_compatible(c: &CoeffMatrix, basis: &TalbotBasis, params: &TalbotParams) -> Result<()> {
    if c.dim() != params.slits {
        return Err(Error::ShapeMismatch(format!(
            "coefficient matrix is {0}x{0} but D = {1}",
            c.dim(),
            params.slits
        )));
    }
    if basis.params() != params {
        return Err(Error::param("basis", "basis was built for different parameters"));
    }
    Ok(())
}

fn check_step(axis: &Axis1D, params: &TalbotParams) -> Result<()> {
    if axis.step() > params.aperture_width {
        return Err(Error::GridTooCoarse(format!(
            "step {:.3e} exceeds the slit width δ = {:.3e}",
            axis.step(),
            params.aperture_width
        )));
    }
    Ok(())
}

fn sample_basis(basis: &TalbotBasis, dim: usize, axis: &Axis1D) -> Vec<Vec<f64>> {
    (0..dim)
        .into_par_iter()
        .map(|d| axis.points().map(|x| basis.eval(d, x)).collect())
        .collect()
}

/// Samples `|Ψ|²` on `axis_a × axis_b` and normalizes it.
///
/// Fails with [`Error::WindowTooSmall`] when more than 1e-9 of the state's
/// mass falls outside the axes.
pub fn position_tomogram(
    c: &CoeffMatrix,
    basis: &TalbotBasis,
    params: &TalbotParams,
    axis_a: Axis1D,
    axis_b: Axis1D,
) -> Result<JointGrid> {
    check_compatible(c, basis, params)?;
    check_step(&axis_a, params)?;
    check_step(&axis_b, params)?;
    let dim = params.slits;
    let ta = sample_basis(basis, dim, &axis_a);
    let tb = sample_basis(basis, dim, &axis_b);
    let nb = axis_b.len();
    let mut values = vec![0.0; axis_a.len() * nb];
    values.par_chunks_mut(nb).enumerate().for_each(|(i, row)| {
        let u: Vec<f64> = (0..dim)
            .map(|d2| (0..dim).map(|d1| c.get(d1, d2) * ta[d1][i]).sum())
            .collect();
        for (j, v) in row.iter_mut().enumerate() {
            let psi: f64 = (0..dim).map(|d2| u[d2] * tb[d2][j]).sum();
            *v = psi * psi;
        }
    });
    let grid = JointGrid::new(axis_a, axis_b, values)?;
    let missing = 1.0 - grid.total_mass();
    if missing > WINDOW_MASS_TOLERANCE {
        return Err(Error::WindowTooSmall { missing });
    }
    normalize(&grid)
}

/// Mutual information of `|Ψ|²` sampled on the square window, streamed row by row.
///
/// Equivalent to `mutual_information(&position_tomogram(..))` without holding
/// the full grid, which at the standard geometry has ~10⁷ cells.
pub fn direct_position_mi(
    c: &CoeffMatrix,
    basis: &TalbotBasis,
    params: &TalbotParams,
    axis: Axis1D,
) -> Result<f64> {
    check_compatible(c, basis, params)?;
    check_step(&axis, params)?;
    let dim = params.slits;
    let n = axis.len();
    let h = axis.step();
    let t = sample_basis(basis, dim, &axis);

    const ROWS_PER_CHUNK: usize = 64;
    struct Partial {
        mass: f64,
        wlogw: f64,
        row_mass: Vec<(usize, f64)>,
        col: Vec<f64>,
    }
    let chunks = n.div_ceil(ROWS_PER_CHUNK);
    let partials: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let mut col = vec![CompensatedSum::new(); n];
            let mut mass = CompensatedSum::new();
            let mut wlogw = CompensatedSum::new();
            let mut row_mass = Vec::new();
            let mut row = vec![0.0; n];
            for i in ch * ROWS_PER_CHUNK..((ch + 1) * ROWS_PER_CHUNK).min(n) {
                if (0..dim).all(|d| t[d][i] == 0.0) {
                    continue;
                }
                let u: Vec<f64> = (0..dim)
                    .map(|d2| (0..dim).map(|d1| c.get(d1, d2) * t[d1][i]).sum())
                    .collect();
                for (j, v) in row.iter_mut().enumerate() {
                    let psi: f64 = (0..dim).map(|d2| u[d2] * t[d2][j]).sum();
                    *v = psi * psi;
                }
                let rm = pairwise_sum(&row);
                if rm == 0.0 {
                    continue;
                }
                row_mass.push((i, rm));
                mass.add(rm);
                let wl: Vec<f64> = row.iter().map(|&w| if w >= ZERO_CUTOFF { w * w.log2() } else { 0.0 }).collect();
                wlogw.add(pairwise_sum(&wl));
                for (acc, &w) in col.iter_mut().zip(&row) {
                    acc.add(w);
                }
            }
            Partial {
                mass: mass.value(),
                wlogw: wlogw.value(),
                row_mass,
                col: col.iter().map(|c| c.value()).collect(),
            }
        })
        .collect();

    let total_raw = pairwise_sum(&partials.iter().map(|p| p.mass).collect::<Vec<_>>());
    let missing = 1.0 - total_raw * h * h;
    if missing > WINDOW_MASS_TOLERANCE {
        return Err(Error::WindowTooSmall { missing });
    }
    let wlogw = pairwise_sum(&partials.iter().map(|p| p.wlogw).collect::<Vec<_>>());
    let rows: Vec<f64> = partials
        .iter()
        .flat_map(|p| p.row_mass.iter().map(|&(_, m)| m))
        .collect();
    let cols: Vec<f64> = (0..n)
        .map(|j| pairwise_sum(&partials.iter().map(|p| p.col[j]).collect::<Vec<_>>()))
        .collect();

    // With p = w/Z and Z = h² Σw:  -h² Σ p log p = log Z - (h²/Z) Σ w log w.
    // Marginal densities are (h Σ_j w)/Z.
    let z = total_raw * h * h;
    let s_ab = z.log2() - (h * h / z) * wlogw;
    let marginal_entropy = |sums: &[f64]| {
        let terms: Vec<f64> = sums
            .iter()
            .map(|&s| {
                let m = s * h / z;
                if m > 0.0 {
                    -m * m.log2()
                } else {
                    0.0
                }
            })
            .collect();
        pairwise_sum(&terms) * h
    };
    let s_a = marginal_entropy(&rows);
    let s_b = marginal_entropy(&cols);
    checked_mi(s_a + s_b - s_ab)
}

/// Joint weights of the patches `(d1, m1) × (d2, m2)`, rows indexed by `d·(2M+1) + (m+M)`.
pub fn patch_table(c: &CoeffMatrix, basis: &TalbotBasis) -> Result<DiscreteJoint> {
    let dim = c.dim();
    let u = basis.order_probabilities();
    let orders = u.len();
    let side = dim * orders;
    let mut w = vec![0.0; side * side];
    w.par_chunks_mut(side).enumerate().for_each(|(row, out)| {
        let (d1, m1) = (row / orders, row % orders);
        for (col, v) in out.iter_mut().enumerate() {
            let (d2, m2) = (col / orders, col % orders);
            let amp = c.get(d1, d2);
            *v = amp * amp * u[m1] * u[m2];
        }
    });
    DiscreteJoint::from_weights(side, side, w)
}

/// Patch-route mutual information; refuses geometries where the patches overlap.
pub fn patch_position_mi(c: &CoeffMatrix, basis: &TalbotBasis, params: &TalbotParams) -> Result<f64> {
    let overlap = max_off_diagonal(&basis.gram_matrix());
    if overlap > PATCH_OVERLAP_LIMIT {
        return Err(Error::param(
            "geometry",
            format!("basis overlap {overlap:.3e} too large for patch factorization; use the direct path"),
        ));
    }
    check_compatible(c, basis, params)?;
    Ok(discrete_mutual_information(&patch_table(c, basis)?))
}

/// Tomographic entanglement indicator of the position-basis slice, in bits.
pub fn tei_position(params: &TalbotParams, path: TeiPath) -> Result<f64> {
    let c = coeff_matrix(params)?;
    match path {
        TeiPath::Patch => {
            let basis = TalbotBasis::adaptive(params)?;
            patch_position_mi(&c, &basis, params)
        }
        TeiPath::Direct { m_max, step_fraction } => {
            let basis = TalbotBasis::with_truncation(params, m_max)?;
            let axis = basis.window_axis(step_fraction)?;
            direct_position_mi(&c, &basis, params, axis)
        }
    }
}
