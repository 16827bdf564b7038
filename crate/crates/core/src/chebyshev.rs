//! Polynomials attached to a pair of coefficient sequences.
//!
//! `P(-1) = 0`, `P(0) = 1` and `P(k) = x(k) P(k-1) - y(k-1) P(k-2)`. Two
//! independent evaluation routes are kept side by side: an explicit signed
//! sum over sparse binary multi-indices (the slow route, used as a
//! cross-check oracle) and the three-term recurrence in scaled arithmetic
//! (the production route). With constant sequences the family collapses to
//! the classical second-kind polynomials `U`.

use crate::error::Error;
use crate::scaled::ScaledValue;

/// A 0/1 multi-index of fixed order with its support positions (1-based).
///
/// Valid indices here always have the last position clear and no two
/// support positions adjacent, so the complement-pair positions
/// `{i, i+1}` for `i` in the support never collide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMultiIndex {
    order: usize,
    support: Vec<usize>,
}

impl BinaryMultiIndex {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    /// Ascending 1-based positions of the ones.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// The index as explicit 0/1 components at positions `1..=order`.
    pub fn bits(&self) -> Vec<u8> {
        let mut bits = vec![0u8; self.order];
        for &i in &self.support {
            bits[i - 1] = 1;
        }
        bits
    }

    /// Components of the complementary index: ones everywhere except at
    /// each support position and its right neighbor.
    pub fn complement_bits(&self) -> Vec<u8> {
        let mut bits = vec![1u8; self.order];
        for &i in &self.support {
            bits[i - 1] = 0;
            bits[i] = 0;
        }
        bits
    }
}

/// All order-`p` indices of weight `m` whose support avoids position `p`
/// and has pairwise gaps of at least 2, in lexicographic support order.
///
/// There are exactly `C(p - m, m)` of them.
pub fn enumerate_multi_indices(p: usize, m: usize) -> Result<Vec<BinaryMultiIndex>, Error> {
    if p == 0 || m > p / 2 {
        return Err(Error::InvalidArity { p, m });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(
        p: usize,
        m: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<BinaryMultiIndex>,
    ) {
        if current.len() == m {
            out.push(BinaryMultiIndex {
                order: p,
                support: current.clone(),
            });
            return;
        }
        let needed = m - current.len();
        // Highest admissible start so the remaining positions still fit.
        let last = p - 1 - 2 * (needed - 1);
        for i in start..=last {
            current.push(i);
            rec(p, m, i + 2, current, out);
            current.pop();
        }
    }
    if m == 0 {
        out.push(BinaryMultiIndex {
            order: p,
            support: Vec::new(),
        });
    } else {
        rec(p, m, 1, &mut current, &mut out);
    }
    Ok(out)
}

/// The `(x, y)` sequence pair a polynomial is evaluated over, with an index
/// shift: lookup `j` reads the underlying slice at `j + offset`.
#[derive(Debug, Clone, Copy)]
pub struct ChebSequencePair<'a> {
    x: &'a [f64],
    y: &'a [f64],
    offset: i64,
}

impl<'a> ChebSequencePair<'a> {
    pub fn new(x: &'a [f64], y: &'a [f64]) -> Self {
        ChebSequencePair { x, y, offset: 0 }
    }

    pub fn with_offset(x: &'a [f64], y: &'a [f64], offset: i64) -> Self {
        ChebSequencePair { x, y, offset }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    fn read(seq: &[f64], what: &'static str, j: i64, offset: i64) -> Result<f64, Error> {
        let idx = j + offset;
        if idx < 0 || idx as usize >= seq.len() {
            return Err(Error::IndexOutOfRange {
                what,
                index: idx.max(0) as usize,
                limit: seq.len().saturating_sub(1),
            });
        }
        Ok(seq[idx as usize])
    }

    pub fn x_at(&self, j: i64) -> Result<f64, Error> {
        Self::read(self.x, "x sequence", j, self.offset)
    }

    pub fn y_at(&self, j: i64) -> Result<f64, Error> {
        Self::read(self.y, "y sequence", j, self.offset)
    }
}

/// Neumaier-compensated accumulator.
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn new() -> Self {
        Compensated {
            sum: 0.0,
            carry: 0.0,
        }
    }

    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Direct evaluation of `P(k)` as the signed multi-index sum.
///
/// Exponential in `k`; meant for cross-checking the recurrence at small
/// orders, not for production evaluation. Terms are grouped by weight and
/// added in enumeration order under compensated summation.
pub fn cheb_direct(k: i64, seqs: &ChebSequencePair<'_>) -> Result<f64, Error> {
    if k == -1 {
        return Ok(0.0);
    }
    if k == 0 {
        return Ok(1.0);
    }
    assert!(k >= -1, "polynomial order below -1");
    let p = k as usize;
    let mut acc = Compensated::new();
    for m in 0..=p / 2 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for idx in enumerate_multi_indices(p, m)? {
            let mut term = sign;
            for (pos0, &bit) in idx.complement_bits().iter().enumerate() {
                if bit == 1 {
                    term *= seqs.x_at((pos0 + 1) as i64)?;
                }
            }
            for &i in idx.support() {
                term *= seqs.y_at(i as i64)?;
            }
            acc.add(term);
        }
    }
    Ok(acc.total())
}

/// Recurrence evaluation of `P(k)` in scaled arithmetic.
///
/// `y(0)` is never read: the `k = 1` step has no second term.
pub fn cheb_recurrence(k: i64, seqs: &ChebSequencePair<'_>) -> Result<ScaledValue, Error> {
    assert!(k >= -1, "polynomial order below -1");
    if k == -1 {
        return Ok(ScaledValue::ZERO);
    }
    let mut prev = ScaledValue::ZERO; // P(-1)
    let mut cur = ScaledValue::ONE; // P(0)
    for j in 1..=k {
        let mut next = ScaledValue::from_f64(seqs.x_at(j)?) * cur;
        if j >= 2 {
            next = next - ScaledValue::from_f64(seqs.y_at(j - 1)?) * prev;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Second-kind polynomial `U(k)` at `t`, by its recurrence. `U(-1) = 0`.
///
/// Plain binary64: overflows for large `k` when `|t| > 1`; use
/// [`cheb_u_all`] where growth matters.
pub fn cheb_u(k: i64, t: f64) -> f64 {
    assert!(k >= -1, "polynomial order below -1");
    let mut prev = 0.0; // U(-1)
    let mut cur = 1.0; // U(0)
    if k == -1 {
        return prev;
    }
    for _ in 1..=k {
        (prev, cur) = (cur, 2.0 * t * cur - prev);
    }
    cur
}

/// Scaled values `U(0), ..., U(k_max)` at `t` in one pass.
pub fn cheb_u_all(k_max: usize, t: f64) -> Vec<ScaledValue> {
    let two_t = ScaledValue::from_f64(2.0 * t);
    let mut out = Vec::with_capacity(k_max + 1);
    let mut prev = ScaledValue::ZERO;
    let mut cur = ScaledValue::ONE;
    out.push(cur);
    for _ in 1..=k_max {
        let next = two_t * cur - prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// The `k` real zeros of `U(k)`, in decreasing order:
/// `cos(j pi / (k + 1))` for `j = 1..=k`.
pub fn cheb_u_zeros(k: usize) -> Vec<f64> {
    (1..=k)
        .map(|j| (j as f64 * std::f64::consts::PI / (k + 1) as f64).cos())
        .collect()
}
