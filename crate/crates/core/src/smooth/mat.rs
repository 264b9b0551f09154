//! Small dense real matrices for Jacobians and tangent-fiber algebra.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    Singular,
    IllConditioned { cond: f64 },
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::IllConditioned { cond } => {
                write!(
                    f,
                    "matrix condition number {cond:.3e} exceeds the trusted range"
                )
            }
        }
    }
}

impl std::error::Error for MatError {}

/// Inversions with a condition estimate above this are rejected rather than
/// silently returning noise.
pub const MAX_CONDITION: f64 = 1e12;

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            a: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.a[r * self.cols + c] = v;
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.get(i, k);
                if lik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.a[i * other.cols + j] += lik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Operator ∞-norm: the maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Gauss–Jordan inverse with partial pivoting, rejecting singular or
    /// numerically untrustworthy matrices.
    pub fn invert(&self) -> Result<Mat, MatError> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let n = self.rows;
        let mut aug = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| aug.get(i, col).abs().total_cmp(&aug.get(j, col).abs()))
                .unwrap();
            let pivot = aug.get(pivot_row, col);
            if pivot.abs() < 1e-300 {
                return Err(MatError::Singular);
            }
            if pivot_row != col {
                for j in 0..n {
                    let (x, y) = (aug.get(col, j), aug.get(pivot_row, j));
                    aug.set(col, j, y);
                    aug.set(pivot_row, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot_row, j));
                    inv.set(col, j, y);
                    inv.set(pivot_row, j, x);
                }
            }
            let scale = 1.0 / aug.get(col, col);
            for j in 0..n {
                aug.set(col, j, aug.get(col, j) * scale);
                inv.set(col, j, inv.get(col, j) * scale);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = aug.get(i, col);
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    aug.set(i, j, aug.get(i, j) - f * aug.get(col, j));
                    inv.set(i, j, inv.get(i, j) - f * inv.get(col, j));
                }
            }
        }
        let cond = self.inf_norm() * inv.inf_norm();
        if !cond.is_finite() || cond > MAX_CONDITION {
            return Err(MatError::IllConditioned { cond });
        }
        Ok(inv)
    }

    /// Solves `self · x = b` through the checked inverse.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, MatError> {
        Ok(self.invert()?.matvec(b))
    }
}
