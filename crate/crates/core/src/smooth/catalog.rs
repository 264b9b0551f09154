//! Built-in differentiable loops in global coordinates.
//!
//! Each loop is given by chart formulas for the product and both divisions,
//! written generically over [`Scalar`] so the same code evaluates on plain
//! numbers and on dual numbers. The identity sits at a known coordinate
//! point, and each loop carries a sampling box on which its operations are
//! smooth and well-conditioned.
//!
//! * `additive` — the vector group `(Rⁿ, +)`; every check is trivial on it.
//! * `affine` — the `ax + b` group on `{a > 0} × R` with
//!   `(a₁,b₁)·(a₂,b₂) = (a₁a₂, a₁b₂ + b₁)`: nonabelian but associative.
//! * `parabolic` — `R²` with `x·y = (x₁+y₁, x₂+y₂+x₁y₁²)`: a genuine loop
//!   (globally affine translations) that is nonassociative and fails every
//!   weak property, with different left and right inverses.

use rand::Rng;

use super::dual::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothLoop {
    Additive { dim: usize },
    Affine,
    Parabolic,
}

impl SmoothLoop {
    /// Looks up a built-in loop; `additive` defaults to two dimensions.
    pub fn by_name(name: &str) -> Option<SmoothLoop> {
        match name {
            "additive" => Some(SmoothLoop::Additive { dim: 2 }),
            "affine" => Some(SmoothLoop::Affine),
            "parabolic" => Some(SmoothLoop::Parabolic),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 3] = ["additive", "affine", "parabolic"];

    pub fn name(&self) -> &'static str {
        match self {
            SmoothLoop::Additive { .. } => "additive",
            SmoothLoop::Affine => "affine",
            SmoothLoop::Parabolic => "parabolic",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            SmoothLoop::Additive { dim } => *dim,
            SmoothLoop::Affine | SmoothLoop::Parabolic => 2,
        }
    }

    pub fn identity(&self) -> Vec<f64> {
        match self {
            SmoothLoop::Additive { dim } => vec![0.0; *dim],
            SmoothLoop::Affine => vec![1.0, 0.0],
            SmoothLoop::Parabolic => vec![0.0, 0.0],
        }
    }

    /// Per-coordinate sampling intervals on which the operations are smooth.
    pub fn sample_box(&self) -> Vec<(f64, f64)> {
        match self {
            SmoothLoop::Additive { dim } => vec![(-2.0, 2.0); *dim],
            // Keep the scale coordinate away from 0 so divisions stay tame.
            SmoothLoop::Affine => vec![(0.5, 2.0), (-2.0, 2.0)],
            SmoothLoop::Parabolic => vec![(-2.0, 2.0), (-2.0, 2.0)],
        }
    }

    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.sample_box()
            .into_iter()
            .map(|(lo, hi)| rng.gen_range(lo..hi))
            .collect()
    }

    pub fn sample_tangent<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    pub fn mul<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        match self {
            SmoothLoop::Additive { .. } => x.iter().zip(y).map(|(&a, &b)| a + b).collect(),
            SmoothLoop::Affine => vec![x[0] * y[0], x[0] * y[1] + x[1]],
            SmoothLoop::Parabolic => vec![x[0] + y[0], x[1] + y[1] + x[0] * y[0] * y[0]],
        }
    }

    /// `x \ y`: the unique `z` with `x·z = y`.
    pub fn ldiv<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        match self {
            SmoothLoop::Additive { .. } => x.iter().zip(y).map(|(&a, &b)| b - a).collect(),
            SmoothLoop::Affine => vec![y[0] / x[0], (y[1] - x[1]) / x[0]],
            SmoothLoop::Parabolic => {
                let d = y[0] - x[0];
                vec![d, y[1] - x[1] - x[0] * d * d]
            }
        }
    }

    /// `y / x`: the unique `z` with `z·x = y`.
    pub fn rdiv<S: Scalar>(&self, y: &[S], x: &[S]) -> Vec<S> {
        match self {
            SmoothLoop::Additive { .. } => y.iter().zip(x).map(|(&b, &a)| b - a).collect(),
            SmoothLoop::Affine => vec![y[0] / x[0], y[1] - (y[0] / x[0]) * x[1]],
            SmoothLoop::Parabolic => {
                let d = y[0] - x[0];
                vec![d, y[1] - x[1] - d * x[0] * x[0]]
            }
        }
    }
}

/// Max-norm distance between two coordinate vectors.
pub fn vec_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
