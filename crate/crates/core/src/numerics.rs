//! Dense real kernels used by the learners.
//!
//! Vectors are plain `f64` slices. Matrices are square and stored row-major
//! in [`SquareMatrix`]. Nothing here exploits sparsity, and there is no
//! matrix-matrix product: the only way to modify a matrix is the rank-1
//! left update, which costs `O(n²)`.

use crate::error::{Error, Result};

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}

/// Inner product `Σ aᵢbᵢ`.
pub fn dot(a: &[f64], b: &[f64]) -> Result<f64> {
    check_len(a.len(), b.len())?;
    Ok(dot_unchecked(a, b))
}

#[inline]
pub(crate) fn dot_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `y ← y + a·x`.
pub fn axpy(y: &mut [f64], a: f64, x: &[f64]) -> Result<()> {
    check_len(y.len(), x.len())?;
    axpy_unchecked(y, a, x);
    Ok(())
}

#[inline]
pub(crate) fn axpy_unchecked(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn all_finite(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

/// Square `n × n` matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.set_identity();
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_len(dim, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(SquareMatrix { dim, data })
    }

    /// Overwrites the matrix with the identity, keeping the allocation.
    pub fn set_identity(&mut self) {
        self.data.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..self.dim {
            self.data[i * self.dim + i] = 1.0;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.data)
    }

    /// `out ← M·v`.
    pub fn mul_vec_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.dim, v.len())?;
        check_len(self.dim, out.len())?;
        for (o, row) in out.iter_mut().zip(self.data.chunks_exact(self.dim)) {
            *o = dot_unchecked(row, v);
        }
        Ok(())
    }

    /// `M ← M + a·u·vᵀ`.
    pub fn add_outer(&mut self, a: f64, u: &[f64], v: &[f64]) -> Result<()> {
        check_len(self.dim, u.len())?;
        check_len(self.dim, v.len())?;
        for (row, &ui) in self.data.chunks_exact_mut(self.dim).zip(u) {
            axpy_unchecked(row, a * ui, v);
        }
        Ok(())
    }

    /// `M ← M − α·φ·(φᵀM)`, i.e. `(I − αφφᵀ)·M` without forming the product.
    ///
    /// `work` receives the row vector `φᵀM`; it must have length `n`.
    pub fn rank1_left_update_with(&mut self, phi: &[f64], alpha: f64, work: &mut [f64]) -> Result<()> {
        check_len(self.dim, phi.len())?;
        check_len(self.dim, work.len())?;
        work.iter_mut().for_each(|w| *w = 0.0);
        for (row, &p) in self.data.chunks_exact(self.dim).zip(phi) {
            axpy_unchecked(work, p, row);
        }
        for (row, &p) in self.data.chunks_exact_mut(self.dim).zip(phi) {
            axpy_unchecked(row, -alpha * p, work);
        }
        Ok(())
    }
}

/// Returns `M − α·φ·(φᵀM)`.
pub fn rank1_left_update(m: &SquareMatrix, phi: &[f64], alpha: f64) -> Result<SquareMatrix> {
    let mut out = m.clone();
    let mut work = vec![0.0; m.dim()];
    out.rank1_left_update_with(phi, alpha, &mut work)?;
    Ok(out)
}

/// Returns `M·v`.
pub fn mat_vec(m: &SquareMatrix, v: &[f64]) -> Result<Vec<f64>> {
    let mut out = vec![0.0; m.dim()];
    m.mul_vec_into(v, &mut out)?;
    Ok(out)
}
