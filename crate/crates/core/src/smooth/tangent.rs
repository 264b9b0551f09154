//! Jacobians of chart maps and the tangent prolongation of a smooth loop.
//!
//! The prolonged loop lives on pairs `(ξ, x)` of a base point and a tangent
//! fiber vector. Its product is the linear extension by the cocycle
//!
//! ```text
//! P(ξ,η) = d_e( y ↦ ξη \ (ξy · η) ),    Q(ξ,η) = d_e( y ↦ ξη \ (ξ · ηy) ),
//! ```
//!
//! both Jacobians taken at the identity. Divisions solve the corresponding
//! linear systems in the fiber. For an associative base the same product
//! collapses to the classical tangent-group law `(ξη, d_e(η\(uη)) x + y)`,
//! which `classical_group_mul` computes along an independent route.

use super::catalog::SmoothLoop;
use super::dual::Dual;
use super::mat::{Mat, MatError};

/// Default step for the finite-difference oracle.
pub const FD_STEP: f64 = 1e-4;

fn consts(v: &[f64]) -> Vec<Dual> {
    v.iter().map(|&x| Dual::constant(x)).collect()
}

/// Jacobian of `f` at `at`, column by column via dual-number seeding.
pub fn jacobian<F>(f: F, at: &[f64]) -> Mat
where
    F: Fn(&[Dual]) -> Vec<Dual>,
{
    let n = at.len();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut xs = consts(at);
        xs[j].der = 1.0;
        columns.push(f(&xs).into_iter().map(|d| d.der).collect());
    }
    let rows = columns.first().map_or(0, |c| c.len());
    let mut m = Mat::zeros(rows, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// Central-difference Jacobian: an oracle independent of dual arithmetic.
pub fn jacobian_fd<F>(f: F, at: &[f64], h: f64) -> Mat
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = at.len();
    let mut m: Option<Mat> = None;
    for j in 0..n {
        let mut hi = at.to_vec();
        let mut lo = at.to_vec();
        hi[j] += h;
        lo[j] -= h;
        let (fh, fl) = (f(&hi), f(&lo));
        let mat = m.get_or_insert_with(|| Mat::zeros(fh.len(), n));
        for i in 0..fh.len() {
            mat.set(i, j, (fh[i] - fl[i]) / (2.0 * h));
        }
    }
    m.unwrap_or_else(|| Mat::zeros(0, n))
}

/// `P(ξ,η)`: Jacobian at the identity of `y ↦ ξη \ (ξy · η)`.
pub fn cocycle_p(l: &SmoothLoop, xi: &[f64], eta: &[f64]) -> Mat {
    let (xi_d, eta_d) = (consts(xi), consts(eta));
    let prod = consts(&l.mul(xi, eta));
    jacobian(
        |y| l.ldiv(&prod, &l.mul(&l.mul(&xi_d, y), &eta_d)),
        &l.identity(),
    )
}

/// `Q(ξ,η)`: Jacobian at the identity of `y ↦ ξη \ (ξ · ηy)`.
pub fn cocycle_q(l: &SmoothLoop, xi: &[f64], eta: &[f64]) -> Mat {
    let (xi_d, eta_d) = (consts(xi), consts(eta));
    let prod = consts(&l.mul(xi, eta));
    jacobian(
        |y| l.ldiv(&prod, &l.mul(&xi_d, &l.mul(&eta_d, y))),
        &l.identity(),
    )
}

/// A point of the prolonged loop: a base point with a fiber vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPoint {
    pub base: Vec<f64>,
    pub fiber: Vec<f64>,
}

impl TangentPoint {
    pub fn new(base: Vec<f64>, fiber: Vec<f64>) -> TangentPoint {
        assert_eq!(base.len(), fiber.len());
        TangentPoint { base, fiber }
    }
}

pub fn tangent_identity(l: &SmoothLoop) -> TangentPoint {
    TangentPoint::new(l.identity(), vec![0.0; l.dim()])
}

fn vec_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `(ξ,x)·(η,y) = (ξη, P(ξ,η)x + Q(ξ,η)y)`.
pub fn prolong_mul(l: &SmoothLoop, a: &TangentPoint, b: &TangentPoint) -> TangentPoint {
    let base = l.mul(&a.base, &b.base);
    let p = cocycle_p(l, &a.base, &b.base);
    let q = cocycle_q(l, &a.base, &b.base);
    let fiber = vec_add(&p.matvec(&a.fiber), &q.matvec(&b.fiber));
    TangentPoint::new(base, fiber)
}

/// `(ξ,x)\(η,y) = (ξ\η, Q(ξ,ξ\η)⁻¹(y − P(ξ,ξ\η)x))`.
pub fn prolong_ldiv(
    l: &SmoothLoop,
    a: &TangentPoint,
    b: &TangentPoint,
) -> Result<TangentPoint, MatError> {
    let base = l.ldiv(&a.base, &b.base);
    let p = cocycle_p(l, &a.base, &base);
    let q = cocycle_q(l, &a.base, &base);
    let fiber = q.solve(&vec_sub(&b.fiber, &p.matvec(&a.fiber)))?;
    Ok(TangentPoint::new(base, fiber))
}

/// `(η,y)/(ξ,x) = (η/ξ, P(η/ξ,ξ)⁻¹(y − Q(η/ξ,ξ)x))`.
pub fn prolong_rdiv(
    l: &SmoothLoop,
    b: &TangentPoint,
    a: &TangentPoint,
) -> Result<TangentPoint, MatError> {
    let base = l.rdiv(&b.base, &a.base);
    let p = cocycle_p(l, &base, &a.base);
    let q = cocycle_q(l, &base, &a.base);
    let fiber = p.solve(&vec_sub(&b.fiber, &q.matvec(&a.fiber)))?;
    Ok(TangentPoint::new(base, fiber))
}

/// The classical tangent-group law `(ξη, d_e(u ↦ η\(uη)) x + y)`, valid when
/// the base loop is associative. Computed from a composite unrelated to the
/// prolongation cocycle so the two routes cross-check each other.
pub fn classical_group_mul(l: &SmoothLoop, a: &TangentPoint, b: &TangentPoint) -> TangentPoint {
    let base = l.mul(&a.base, &b.base);
    let eta = consts(&b.base);
    let ad = jacobian(|u| l.ldiv(&eta, &l.mul(u, &eta)), &l.identity());
    let fiber = vec_add(&ad.matvec(&a.fiber), &b.fiber);
    TangentPoint::new(base, fiber)
}
