//! Independent reference implementations shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use tomo_core::talbot::CoeffMatrix;

/// Cyclic Jacobi eigenvalues of a symmetric matrix.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

pub fn jacobi_svne(c: &CoeffMatrix) -> f64 {
    let d = c.dim();
    let rho: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| c.get(i, k) * c.get(j, k)).sum()).collect())
        .collect();
    jacobi_eigenvalues(rho)
        .into_iter()
        .filter(|&l| l > 1e-300)
        .map(|l| -l * l.log2())
        .sum()
}

/// Brute-force CGLMP over the `D²`-dimensional state vector.
pub fn brute_force_cglmp(c: &CoeffMatrix) -> f64 {
    let d = c.dim();
    let psi: Vec<Complex64> = (0..d * d).map(|k| Complex64::new(c.get(k / d, k % d), 0.0)).collect();
    let two_pi = 2.0 * std::f64::consts::PI;
    let norm = 1.0 / d as f64;
    let alpha = [0.0, 0.5];
    let beta = [0.25, -0.25];
    // p[a][b][k][l] = P(A_a = k, B_b = l)
    let mut p = vec![vec![vec![vec![0.0; d]; d]; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for k in 0..d {
                for l in 0..d {
                    let mut amp = Complex64::new(0.0, 0.0);
                    for j in 0..d {
                        for m in 0..d {
                            let phase_a = two_pi * j as f64 * (k as f64 + alpha[a]) / d as f64;
                            let phase_b = two_pi * m as f64 * (-(l as f64) + beta[b]) / d as f64;
                            let bra = Complex64::from_polar(norm, -(phase_a + phase_b));
                            amp += bra * psi[j * d + m];
                        }
                    }
                    p[a][b][k][l] = amp.norm_sqr();
                }
            }
        }
    }
    let di = d as i64;
    // P(X_x = Y_y + shift)
    let rel = |a: usize, b: usize, a_minus_b: i64| -> f64 {
        let mut s = 0.0;
        for k in 0..di {
            for l in 0..di {
                if (k - l - a_minus_b).rem_euclid(di) == 0 {
                    s += p[a][b][k as usize][l as usize];
                }
            }
        }
        s
    };
    let mut total = 0.0;
    for k in 0..di / 2 {
        let plus = rel(0, 0, k) + rel(1, 0, -(k + 1)) + rel(1, 1, k) + rel(0, 1, -k);
        let minus = rel(0, 0, -k - 1) + rel(1, 0, k) + rel(1, 1, -k - 1) + rel(0, 1, k + 1);
        total += (1.0 - 2.0 * k as f64 / (d as f64 - 1.0)) * (plus - minus);
    }
    total
}

