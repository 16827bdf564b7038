//! The coefficient triple viewed as a second-order difference operator on
//! the index path, plus the initial-value machinery that makes its solution
//! space concrete: two-sided recurrence solves, Wronskians, and the
//! one-sided kernel columns used to build particular solutions.
//!
//! Everything here works directly on the recurrence in plain binary64. It
//! deliberately shares no code with the closed-form inverse path, so the two
//! can be used to cross-check each other.

use crate::error::Error;
use crate::model::{GridFunction, JacobiCoefficients};

/// Initial data for a two-sided recurrence solve: values at one anchor pair
/// of adjacent indices plus a right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct IvpSpec {
    /// Anchor index; the solve pins `u(m)` and `u(m+1)`. Must satisfy `m <= n`.
    pub m: usize,
    pub alpha: f64,
    pub beta: f64,
    pub data: GridFunction,
}

/// Applies the operator: `(L u)(k)` for every `k` on the path.
///
/// The boundary rows only couple inward:
/// `a(0)(u(0)-u(1)) + q(0)u(0)` at the left end,
/// `c(n)(u(n+1)-u(n)) + q(n+1)u(n+1)` at the right end, and
/// `a(k)(u(k)-u(k+1)) + c(k-1)(u(k)-u(k-1)) + q(k)u(k)` inside, where `q`
/// is the potential. This agrees with the dense matrix-vector product.
pub fn apply(j: &JacobiCoefficients, u: &GridFunction) -> Result<GridFunction, Error> {
    let n = j.n();
    if u.n() != n {
        return Err(Error::SizeMismatch("operator application"));
    }
    let q = j.potential();
    let mut out = Vec::with_capacity(n + 2);
    out.push(j.a(0) * (u[0] - u[1]) + q[0] * u[0]);
    for k in 1..=n {
        out.push(j.a(k) * (u[k] - u[k + 1]) + j.c(k - 1) * (u[k] - u[k - 1]) + q[k] * u[k]);
    }
    out.push(j.c(n) * (u[n + 1] - u[n]) + q[n + 1] * u[n + 1]);
    Ok(GridFunction::unchecked(n, out))
}

/// Solves `(L u)(k) = f(k)` on the interior rows `1..=n` with `u(m)`,
/// `u(m+1)` pinned to `alpha`, `beta`.
///
/// The interior rows leave a two-dimensional affine solution set; pinning
/// two adjacent values selects exactly one member, filled in by running the
/// recurrence away from the anchor in both directions. The boundary rows are
/// not imposed.
pub fn solve_ivp(j: &JacobiCoefficients, spec: &IvpSpec) -> Result<GridFunction, Error> {
    let n = j.n();
    if spec.data.n() != n {
        return Err(Error::SizeMismatch("initial value problem data"));
    }
    if spec.m > n {
        return Err(Error::IndexOutOfRange {
            what: "anchor index",
            index: spec.m,
            limit: n,
        });
    }
    if !spec.alpha.is_finite() || !spec.beta.is_finite() {
        return Err(Error::NonFiniteInput("anchor values"));
    }
    let m = spec.m;
    let f = &spec.data;
    let mut u = vec![0.0; n + 2];
    u[m] = spec.alpha;
    u[m + 1] = spec.beta;
    for k in m + 1..=n {
        u[k + 1] = (j.b(k) * u[k] - j.c(k - 1) * u[k - 1] - f[k]) / j.a(k);
    }
    for k in (1..=m).rev() {
        u[k - 1] = (j.b(k) * u[k] - j.a(k) * u[k + 1] - f[k]) / j.c(k - 1);
    }
    Ok(GridFunction::unchecked(n, u))
}

/// Wronskian of two grid functions: `w(k) = u(k)v(k+1) - v(k)u(k+1)` for
/// `k <= n`, extended by `w(n+1) = w(n)`.
pub fn wronskian(u: &GridFunction, v: &GridFunction) -> Result<GridFunction, Error> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch("wronskian arguments"));
    }
    let n = u.n();
    let mut w = Vec::with_capacity(n + 2);
    for k in 0..=n {
        w.push(u[k] * v[k + 1] - v[k] * u[k + 1]);
    }
    w.push(w[n]);
    Ok(GridFunction::unchecked(n, w))
}

/// Kernel column through index `s`: the homogeneous solution `g` with
/// `g(s) = 0` and `g(s+1) = -1/a(s)` for `s <= n`; for `s = n+1` the
/// solution with `g(n+1) = 0` and `g(n) = 1/a(n+1)`.
pub fn green_ivp(j: &JacobiCoefficients, s: usize) -> Result<GridFunction, Error> {
    let n = j.n();
    if s > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "kernel column index",
            index: s,
            limit: n + 1,
        });
    }
    let zero = GridFunction::zeros(n);
    let spec = if s <= n {
        IvpSpec {
            m: s,
            alpha: 0.0,
            beta: -1.0 / j.a(s),
            data: zero,
        }
    } else {
        IvpSpec {
            m: n,
            alpha: 1.0 / j.a(n + 1),
            beta: 0.0,
            data: zero,
        }
    };
    solve_ivp(j, &spec)
}

/// Particular solution of `(L u) = f` on the interior with `u` vanishing at
/// the anchor pair `m`, `m+1`, via the oriented kernel-column sum
/// `u(k) = sum_{s = m+1}^{k} g(k, s) f(s)`.
///
/// The sum is oriented like a definite integral: for `k < m` it runs
/// backwards and carries a minus sign.  Without that orientation the rows at
/// or left of the anchor would pick up `-f` instead of `f`.
pub fn particular_solution(
    j: &JacobiCoefficients,
    f: &GridFunction,
    m: usize,
) -> Result<GridFunction, Error> {
    let n = j.n();
    if f.n() != n {
        return Err(Error::SizeMismatch("right-hand side"));
    }
    if m > n {
        return Err(Error::IndexOutOfRange {
            what: "anchor index",
            index: m,
            limit: n,
        });
    }
    // Columns for s = 1..=n; the s = n+1 column only ever contributes its
    // (n+1, n+1) value, which is zero.
    let columns: Vec<GridFunction> = (1..=n).map(|s| green_ivp(j, s)).collect::<Result<_, _>>()?;
    let mut u = vec![0.0; n + 2];
    for (k, slot) in u.iter_mut().enumerate() {
        let (lo, hi) = (k.min(m) + 1, k.max(m));
        let sign = if k < m { -1.0 } else { 1.0 };
        let mut acc = 0.0;
        for s in lo..=hi.min(n) {
            acc += columns[s - 1][k] * f[s];
        }
        *slot = sign * acc;
    }
    Ok(GridFunction::unchecked(n, u))
}
