//! Two-point boundary value problems for the difference operator: the pair
//! of one-sided fundamental solutions, the regularity test, and the
//! resolvent kernel built from them.
//!
//! This module stays on the plain-recurrence side of the crate (see
//! [`crate::schrodinger`]); the closed-form inverse in [`crate::inverse`]
//! reaches the same kernel by an unrelated route, which the tests exploit.

use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::model::{GridFunction, JacobiCoefficients};
use crate::schrodinger::{solve_ivp, IvpSpec};
use crate::DEFAULT_SINGULARITY_TOL;

/// Outcome of the regularity test, kept alongside results that depend on it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    /// Boundary determinant in the normalization recovered from the second
    /// boundary functional of the forward fundamental solution.
    pub d_abc: f64,
    /// Set when `d_abc` left the representable range (its sign and
    /// magnitude are then meaningless).
    pub d_abc_overflowed: bool,
    /// The denominator every kernel entry is divided by.
    pub denom: f64,
    pub regular: bool,
    pub tolerance_used: f64,
    /// Magnitude the verdict threshold was taken relative to.
    pub scale: f64,
}

/// The resolvent kernel as a full `(n+2) x (n+2)` entry table.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    n: usize,
    entries: DenseMatrix,
}

impl KernelMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, k: usize, s: usize) -> f64 {
        self.entries.get(k, s)
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }
}

/// First boundary functional: the operator row at index 0.
pub fn boundary_first(j: &JacobiCoefficients, u: &GridFunction) -> f64 {
    j.b(0) * u[0] - j.a(0) * u[1]
}

/// Second boundary functional: the operator row at index `n+1`.
pub fn boundary_second(j: &JacobiCoefficients, u: &GridFunction) -> f64 {
    let n = j.n();
    j.b(n + 1) * u[n + 1] - j.c(n) * u[n]
}

/// Forward fundamental solution: homogeneous, `phi(0) = a(0)`,
/// `phi(1) = b(0)`. It annihilates the first boundary functional.
pub fn fundamental_phi(j: &JacobiCoefficients) -> GridFunction {
    let spec = IvpSpec {
        m: 0,
        alpha: j.a(0),
        beta: j.b(0),
        data: GridFunction::zeros(j.n()),
    };
    solve_ivp(j, &spec).expect("anchor 0 is always valid")
}

/// Backward fundamental solution: homogeneous, `psi(n) = b(n+1)`,
/// `psi(n+1) = c(n)`. It annihilates the second boundary functional.
pub fn fundamental_psi(j: &JacobiCoefficients) -> GridFunction {
    let n = j.n();
    let spec = IvpSpec {
        m: n,
        alpha: j.b(n + 1),
        beta: j.c(n),
        data: GridFunction::zeros(n),
    };
    solve_ivp(j, &spec).expect("anchor n is always valid")
}

/// Tests whether the full boundary value problem is uniquely solvable.
///
/// The verdict compares `denom = a(0)(b(0)psi(0) - a(0)psi(1))` against
/// `tol` times the larger of its two constituent terms, so it is invariant
/// under a global rescaling of the coefficients.
pub fn regularity(j: &JacobiCoefficients, tol: f64) -> RegularityReport {
    let psi = fundamental_psi(j);
    let phi = fundamental_phi(j);
    let t1 = j.a(0) * j.b(0) * psi[0];
    let t2 = j.a(0) * j.a(0) * psi[1];
    let denom = t1 - t2;
    let scale = t1.abs().max(t2.abs()).max(f64::MIN_POSITIVE);
    let regular = denom.abs() > tol * scale;
    let d_abc = boundary_second(j, &phi) / (j.a(0) * j.c(0));
    RegularityReport {
        d_abc,
        d_abc_overflowed: !d_abc.is_finite(),
        denom,
        regular,
        tolerance_used: tol,
        scale,
    }
}

/// Builds the full resolvent kernel
/// `R(k, s) = phi(min(k,s)) psi(max(k,s)) rho(s) / denom`.
pub fn resolvent_kernel(j: &JacobiCoefficients, tol: f64) -> Result<KernelMatrix, Error> {
    let report = regularity(j, tol);
    if !report.regular {
        return Err(Error::SingularProblem);
    }
    let n = j.n();
    let phi = fundamental_phi(j);
    let psi = fundamental_psi(j);
    let rho: Vec<f64> = j
        .companion_rho_all()
        .into_iter()
        .map(|r| r.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let mut entries = DenseMatrix::zeros(n + 2);
    for k in 0..n + 2 {
        for s in 0..n + 2 {
            let v = phi[k.min(s)] * psi[k.max(s)] * rho[s] / report.denom;
            entries.set(k, s, v);
        }
    }
    Ok(KernelMatrix { n, entries })
}

/// Solves the full boundary value problem `(L u) = f` (all rows, boundary
/// included) without materializing the kernel: one prefix and one suffix
/// accumulation of the kernel sum `u(k) = sum_s R(k, s) f(s)`.
pub fn solve_bvp(
    j: &JacobiCoefficients,
    f: &GridFunction,
    tol: f64,
) -> Result<GridFunction, Error> {
    if f.n() != j.n() {
        return Err(Error::SizeMismatch("right-hand side"));
    }
    let report = regularity(j, tol);
    if !report.regular {
        return Err(Error::SingularProblem);
    }
    let n = j.n();
    let phi = fundamental_phi(j);
    let psi = fundamental_psi(j);
    let rho: Vec<f64> = j
        .companion_rho_all()
        .into_iter()
        .map(|r| r.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    // prefix(k) = sum_{s <= k} phi(s) rho(s) f(s); suffix(k) analogous.
    let mut prefix = Vec::with_capacity(n + 2);
    let mut acc = 0.0;
    for s in 0..n + 2 {
        acc += phi[s] * rho[s] * f[s];
        prefix.push(acc);
    }
    let mut suffix = vec![0.0; n + 3];
    for s in (0..n + 2).rev() {
        suffix[s] = suffix[s + 1] + psi[s] * rho[s] * f[s];
    }
    let u: Vec<f64> = (0..n + 2)
        .map(|k| (psi[k] * prefix[k] + phi[k] * suffix[k + 1]) / report.denom)
        .collect();
    Ok(GridFunction::unchecked(n, u))
}

pub fn default_tolerance() -> f64 {
    DEFAULT_SINGULARITY_TOL
}
