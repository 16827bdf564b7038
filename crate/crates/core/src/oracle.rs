//! Brute-force dense reference implementations.
//!
//! Everything here is deliberately naive O(m^3) linear algebra with no
//! knowledge of tridiagonal structure, fundamental sequences or scaled
//! arithmetic, so it can serve as an independent check on the closed-form
//! path. Accuracy degrades with size in the usual Gaussian-elimination way;
//! the determinant comparison is reliable only at moderate orders.

use crate::dense::DenseMatrix;
use crate::error::Error;

/// Pivot floor relative to the input's norm below which elimination stops.
const PIVOT_FLOOR: f64 = 1e-13;

/// Inverts by Gauss-Jordan elimination with partial pivoting.
pub fn dense_invert(m: &DenseMatrix) -> Result<DenseMatrix, Error> {
    let order = m.order();
    let norm = m.inf_norm().max(f64::MIN_POSITIVE);
    let mut work = m.clone();
    let mut inv = DenseMatrix::identity(order);
    for col in 0..order {
        let pivot_row = (col..order)
            .max_by(|&i, &j| work.get(i, col).abs().total_cmp(&work.get(j, col).abs()))
            .unwrap();
        let pivot = work.get(pivot_row, col);
        if pivot.abs() < PIVOT_FLOOR * norm {
            return Err(Error::NumericallySingular(col));
        }
        if pivot_row != col {
            for j in 0..order {
                let (x, y) = (work.get(col, j), work.get(pivot_row, j));
                work.set(col, j, y);
                work.set(pivot_row, j, x);
                let (x, y) = (inv.get(col, j), inv.get(pivot_row, j));
                inv.set(col, j, y);
                inv.set(pivot_row, j, x);
            }
        }
        let inv_pivot = 1.0 / pivot;
        for j in 0..order {
            work.set(col, j, work.get(col, j) * inv_pivot);
            inv.set(col, j, inv.get(col, j) * inv_pivot);
        }
        for i in 0..order {
            if i == col {
                continue;
            }
            let factor = work.get(i, col);
            if factor == 0.0 {
                continue;
            }
            for j in 0..order {
                work.set(i, j, work.get(i, j) - factor * work.get(col, j));
                inv.set(i, j, inv.get(i, j) - factor * inv.get(col, j));
            }
        }
    }
    Ok(inv)
}

/// Determinant by LU elimination with partial pivoting: the signed product
/// of the pivots. Returns a zero-ish value for singular input.
pub fn dense_det(m: &DenseMatrix) -> f64 {
    let order = m.order();
    let mut work = m.clone();
    let mut det = 1.0;
    for col in 0..order {
        let pivot_row = (col..order)
            .max_by(|&i, &j| work.get(i, col).abs().total_cmp(&work.get(j, col).abs()))
            .unwrap();
        let pivot = work.get(pivot_row, col);
        if pivot == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            det = -det;
            for j in col..order {
                let (x, y) = (work.get(col, j), work.get(pivot_row, j));
                work.set(col, j, y);
                work.set(pivot_row, j, x);
            }
        }
        det *= pivot;
        for i in col + 1..order {
            let factor = work.get(i, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col + 1..order {
                work.set(i, j, work.get(i, j) - factor * work.get(col, j));
            }
        }
    }
    det
}

/// `max` norm of `A B - Id`, the two-sided inversion residual when called
/// both ways round.
pub fn residual_inf_norm(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64, Error> {
    if a.order() != b.order() {
        return Err(Error::SizeMismatch("residual factors"));
    }
    let order = a.order();
    let mut worst: f64 = 0.0;
    for i in 0..order {
        let mut row_sum = 0.0;
        for j in 0..order {
            let mut dot = 0.0;
            for (k, &aik) in a.row(i).iter().enumerate() {
                dot += aik * b.get(k, j);
            }
            if i == j {
                dot -= 1.0;
            }
            row_sum += dot.abs();
        }
        worst = worst.max(row_sum);
    }
    Ok(worst)
}

/// The factored form a matrix must have to be the inverse of an irreducible
/// tridiagonal matrix: `r(i, j) = h(j) v(min) w(max)` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct GreenFactorization {
    pub h: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

/// Extracts the rank-structure factorization from ratios against the first
/// row and column and verifies every entry against it, plus the determinant
/// product formula against [`dense_det`].
///
/// Gauge: `v(1) = 1`, `h(1) = r(1,1) / (v(1) w(1))` with `w(1) = r(1,1)`.
/// The positions used for ratio extraction must be comfortably nonzero.
pub fn green_matrix_check(r: &DenseMatrix, tol: f64) -> Result<GreenFactorization, Error> {
    let m = r.order();
    if m < 2 {
        return Err(Error::SizeMismatch("factorization needs order >= 2"));
    }
    let max_abs = r.max_abs();
    if max_abs == 0.0 {
        return Err(Error::NotGreenStructured(1, 1));
    }
    let floor = max_abs * 1e-15;
    let need = |value: f64, i: usize, j: usize| {
        if value.abs() <= floor {
            Err(Error::NotGreenStructured(i, j))
        } else {
            Ok(value)
        }
    };
    // 1-based working vectors, slot 0 unused.
    let last_col_top = need(r.get(0, m - 1), 1, m)?;
    let mut v = vec![0.0; m + 1];
    for i in 1..=m {
        v[i] = r.get(i - 1, m - 1) / last_col_top;
    }
    let mut w = vec![0.0; m + 1];
    for i in 1..=m {
        w[i] = need(r.get(i - 1, 0), i, 1)?;
    }
    let mut h = vec![0.0; m + 1];
    for j in 1..=m {
        h[j] = need(r.get(0, j - 1), 1, j)? / need(r.get(j - 1, 0), j, 1)?;
    }
    for i in 1..=m {
        for j in 1..=m {
            let predicted = h[j] * v[i.min(j)] * w[i.max(j)];
            let actual = r.get(i - 1, j - 1);
            if (predicted - actual).abs() > tol * actual.abs().max(max_abs) {
                return Err(Error::NotGreenStructured(i, j));
            }
        }
    }
    let mut product = h[1] * v[1] * w[m];
    for s in 2..=m {
        product *= h[s] * (v[s] * w[s - 1] - v[s - 1] * w[s]);
    }
    let dense = dense_det(r);
    let det_tol = tol * 10.0 * m as f64;
    if (product - dense).abs() > det_tol * product.abs().max(dense.abs()) {
        return Err(Error::GreenDetMismatch { product, dense });
    }
    Ok(GreenFactorization {
        h: h[1..].to_vec(),
        v: v[1..].to_vec(),
        w: w[1..].to_vec(),
    })
}
