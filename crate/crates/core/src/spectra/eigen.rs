//! Eigenvalues of dense symmetric and Hermitian matrices.
//!
//! Householder reduction to tridiagonal form followed by the implicit-shift
//! QL iteration. Only eigenvalues are computed.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::{ComplexMatrix, RealMatrix};
use crate::error::{Error, Result};

/// Relative symmetry tolerance accepted by [`eigenvalues_symmetric`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;
/// Absolute gap allowed between the two copies of each eigenvalue in the
/// real embedding of a Hermitian matrix.
pub const PAIRING_TOLERANCE: f64 = 1e-7;

const MAX_QL_ITERATIONS: usize = 60;

/// Reduces the symmetric matrix held in `a` (row-major, order `n`, both
/// triangles) to tridiagonal form. Returns `(diagonal, off_diagonal)` where
/// `off_diagonal[k]` couples rows `k` and `k + 1`.
fn tridiagonalize(mut a: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        diag[k] = a[k * n + k];
        let m = n - k - 1;
        let x = &a[k * n + k + 1..(k + 1) * n];
        let norm = libm::sqrt(x.iter().map(|t| t * t).sum::<f64>());
        if norm == 0.0 {
            off[k] = 0.0;
            continue;
        }
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        off[k] = alpha;
        let v = &mut v[..m];
        v.copy_from_slice(x);
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|t| t * t).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        // p = beta * S v for the trailing block S, then w = p - (beta/2)(v.p) v.
        let p = &mut p[..m];
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
            p[i] = beta * row.iter().zip(v.iter()).map(|(s, t)| s * t).sum::<f64>();
        }
        let kappa = 0.5 * beta * v.iter().zip(p.iter()).map(|(s, t)| s * t).sum::<f64>();
        for i in 0..m {
            p[i] -= kappa * v[i];
        }
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
            for ((s, &vj), &wj) in row.iter_mut().zip(v.iter()).zip(p.iter()) {
                *s -= vi * wj + wi * vj;
            }
        }
    }
    if n > 0 {
        diag[n - 1] = a[n * n - 1];
    }
    (diag, off)
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `off[k]` couples rows
/// `k` and `k + 1`. Returns the unsorted eigenvalues.
fn tridiagonal_ql(mut d: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { iterations: MAX_QL_ITERATIONS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + sign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

fn sorted(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    values
}

/// All eigenvalues of a real symmetric matrix, ascending, with multiplicity.
pub fn eigenvalues_symmetric(m: &RealMatrix) -> Result<Vec<f64>> {
    let deviation = m.symmetry_deviation();
    if !(deviation <= SYMMETRY_TOLERANCE * m.max_abs()) {
        return Err(Error::NotSymmetric { deviation });
    }
    let (d, e) = tridiagonalize(m.as_slice().to_vec(), m.order());
    Ok(sorted(tridiagonal_ql(d, &e)?))
}

/// All eigenvalues of a complex Hermitian matrix, ascending, with
/// multiplicity. Computed from the real symmetric embedding
/// `[[X, -Y], [Y, X]]` of `H = X + iY`, whose spectrum is that of `H` with
/// every eigenvalue doubled.
pub fn eigenvalues_hermitian(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let deviation = h.hermitian_deviation();
    if !(deviation <= SYMMETRY_TOLERANCE) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.order();
    let (re, im) = h.split();
    let mut embed = vec![0.0; 4 * n * n];
    let width = 2 * n;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (re[(i, j)], im[(i, j)]);
            embed[i * width + j] = x;
            embed[i * width + n + j] = -y;
            embed[(n + i) * width + j] = y;
            embed[(n + i) * width + n + j] = x;
        }
    }
    let (d, e) = tridiagonalize(embed, width);
    let doubled = sorted(tridiagonal_ql(d, &e)?);
    doubled
        .chunks_exact(2)
        .map(|pair| {
            let gap = (pair[1] - pair[0]).abs();
            if gap > PAIRING_TOLERANCE {
                Err(Error::NumericalDegeneracy { deviation: gap })
            } else {
                Ok(0.5 * (pair[0] + pair[1]))
            }
        })
        .collect()
}
