//! Minimal row-major dense matrix used by the brute-force oracle and as the
//! output container for inverse entries.

use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> DenseMatrix {
        DenseMatrix {
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from row-major data; the length must be a square.
    pub fn from_rows(order: usize, data: Vec<f64>) -> Result<DenseMatrix, Error> {
        if data.len() != order * order {
            return Err(Error::LengthMismatch {
                what: "dense matrix data",
                expected: order * order,
                got: data.len(),
            });
        }
        Ok(DenseMatrix { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Plain matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>, Error> {
        if x.len() != self.order {
            return Err(Error::SizeMismatch("matrix-vector product"));
        }
        Ok((0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}
