//! Problem model: the tridiagonal coefficient triple and functions on the
//! index path it acts on.
//!
//! A size-`n + 2` instance is described by three sequences `a`, `b`, `c`:
//! row `k` of the matrix holds `-c(k-1), b(k), -a(k)`. The off-diagonals must
//! be nonzero everywhere; with that, solutions of the associated three-term
//! recurrence are determined by two consecutive values, which is what every
//! closed form in this crate is built on. Two ghost values `a(n+1) = c(n)`
//! and `c(n+1) = a(n)` are stored so boundary formulas need no special cases.

use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::scaled::ScaledValue;

/// Validated coefficient triple for one problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiCoefficients {
    n: usize,
    a: Vec<f64>, // length n + 2, last entry is the ghost a(n+1) = c(n)
    b: Vec<f64>, // length n + 2
    c: Vec<f64>, // length n + 2, last entry is the ghost c(n+1) = a(n)
}

impl JacobiCoefficients {
    /// Validates and stores a coefficient triple.
    ///
    /// `a` and `c` carry `n + 1` values each (indices `0..=n`), `b` carries
    /// `n + 2` (indices `0..=n+1`). All values must be finite and every
    /// off-diagonal value nonzero.
    pub fn new(n: usize, a: &[f64], b: &[f64], c: &[f64]) -> Result<Self, Error> {
        let check_len = |what, expected, got| {
            if got != expected {
                Err(Error::LengthMismatch {
                    what,
                    expected,
                    got,
                })
            } else {
                Ok(())
            }
        };
        check_len("superdiagonal sequence a", n + 1, a.len())?;
        check_len("diagonal sequence b", n + 2, b.len())?;
        check_len("subdiagonal sequence c", n + 1, c.len())?;
        for (name, seq) in [("a", a), ("b", b), ("c", c)] {
            if seq.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput(match name {
                    "a" => "superdiagonal sequence a",
                    "b" => "diagonal sequence b",
                    _ => "subdiagonal sequence c",
                }));
            }
        }
        for (k, &v) in a.iter().enumerate() {
            if v == 0.0 {
                return Err(Error::ZeroOffDiagonal(k));
            }
        }
        for (k, &v) in c.iter().enumerate() {
            if v == 0.0 {
                return Err(Error::ZeroOffDiagonal(k));
            }
        }
        let mut a = a.to_vec();
        let mut c = c.to_vec();
        a.push(c[n]); // ghost a(n+1)
        c.push(a[n]); // ghost c(n+1)
        Ok(JacobiCoefficients {
            n,
            a,
            b: b.to_vec(),
            c,
        })
    }

    /// Constant-coefficient instance: all of `a` is `alpha`, `b` is `beta`,
    /// `c` is `gamma`, matrix order `size >= 2`.
    pub fn constant(alpha: f64, beta: f64, gamma: f64, size: usize) -> Result<Self, Error> {
        if size < 2 {
            return Err(Error::SizeMismatch("constant instance needs order >= 2"));
        }
        let n = size - 2;
        JacobiCoefficients::new(
            n,
            &vec![alpha; n + 1],
            &vec![beta; n + 2],
            &vec![gamma; n + 1],
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix order, `n + 2`.
    pub fn size(&self) -> usize {
        self.n + 2
    }

    /// Superdiagonal value, valid for `k <= n + 1` (the last is the ghost).
    #[inline]
    pub fn a(&self, k: usize) -> f64 {
        self.a[k]
    }

    /// Diagonal value, valid for `k <= n + 1`.
    #[inline]
    pub fn b(&self, k: usize) -> f64 {
        self.b[k]
    }

    /// Subdiagonal value, valid for `k <= n + 1` (the last is the ghost).
    #[inline]
    pub fn c(&self, k: usize) -> f64 {
        self.c[k]
    }

    /// Materializes the tridiagonal matrix.
    pub fn to_dense(&self) -> DenseMatrix {
        let m = self.size();
        let mut out = DenseMatrix::zeros(m);
        for k in 0..m {
            out.set(k, k, self.b[k]);
            if k <= self.n {
                out.set(k, k + 1, -self.a[k]);
                out.set(k + 1, k, -self.c[k]);
            }
        }
        out
    }

    /// Diagonal shift that turns the matrix into a pure difference operator
    /// plus potential: `q(0) = b(0) - a(0)`, interior
    /// `q(k) = b(k) - a(k) - c(k-1)`, and `q(n+1) = b(n+1) - c(n)`.
    pub fn potential(&self) -> GridFunction {
        let n = self.n;
        let mut q = Vec::with_capacity(n + 2);
        q.push(self.b[0] - self.a[0]);
        for k in 1..=n {
            q.push(self.b[k] - self.a[k] - self.c[k - 1]);
        }
        q.push(self.b[n + 1] - self.c[n]);
        GridFunction::unchecked(n, q)
    }

    /// Companion product `rho(k) = prod_{s<k} a(s)/c(s)`, with `rho(0) = 1`.
    ///
    /// Kept in scaled form: the ratios compound exponentially in `k`.
    pub fn companion_rho(&self, k: usize) -> Result<ScaledValue, Error> {
        if k > self.n + 1 {
            return Err(Error::IndexOutOfRange {
                what: "companion product",
                index: k,
                limit: self.n + 1,
            });
        }
        let mut rho = ScaledValue::ONE;
        for s in 0..k {
            rho = rho * ScaledValue::from_f64(self.a[s]) / ScaledValue::from_f64(self.c[s]);
        }
        Ok(rho)
    }

    /// All companion products `rho(0..=n+1)` in one pass.
    pub fn companion_rho_all(&self) -> Vec<ScaledValue> {
        let mut out = Vec::with_capacity(self.n + 2);
        let mut rho = ScaledValue::ONE;
        out.push(rho);
        for s in 0..=self.n {
            rho = rho * ScaledValue::from_f64(self.a[s]) / ScaledValue::from_f64(self.c[s]);
            out.push(rho);
        }
        out
    }
}

/// A real-valued function on the index path `0..=n+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<f64>,
}

impl GridFunction {
    /// Wraps `n + 2` finite values.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self, Error> {
        if values.len() != n + 2 {
            return Err(Error::LengthMismatch {
                what: "grid function values",
                expected: n + 2,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput("grid function values"));
        }
        Ok(GridFunction { n, values })
    }

    /// Internal constructor for computed results, which may legitimately
    /// carry values the finiteness check would reject only after an
    /// upstream overflow already happened.
    pub(crate) fn unchecked(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n + 2);
        GridFunction { n, values }
    }

    pub fn zeros(n: usize) -> Self {
        GridFunction {
            n,
            values: vec![0.0; n + 2],
        }
    }

    /// Indicator of the single index `s`.
    pub fn dirac(s: usize, n: usize) -> Result<Self, Error> {
        if s > n + 1 {
            return Err(Error::IndexOutOfRange {
                what: "dirac index",
                index: s,
                limit: n + 1,
            });
        }
        let mut values = vec![0.0; n + 2];
        values[s] = 1.0;
        Ok(GridFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn inf_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

impl std::ops::Index<usize> for GridFunction {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.values[k]
    }
}
