//! Numerical audits of the prolonged loop.
//!
//! Three quantities are sampled for each weak property: the defining
//! identity's residual on the base loop, the same residual on the prolonged
//! loop, and the residual of the tangent condition characterizing when the
//! prolongation inherits the property. The headline fact being exercised is
//! that the prolongation has a property exactly when the base loop does, so
//! the first two verdicts must always agree; the condition residual shows
//! *why* (it vanishes identically whenever the base identity holds, and is
//! meaningless otherwise).
//!
//! Conditions for the inverse-flavored properties differentiate through
//! `ξ⁻¹` and are reported as not applicable when left and right inverses
//! disagree on the sampled region.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::{vec_dist, SmoothLoop};
use super::dual::Dual;
use super::mat::Mat;
use super::tangent::{
    jacobian, prolong_ldiv, prolong_mul, prolong_rdiv, tangent_identity, TangentPoint,
};
use crate::conditions::PropertyKind;

/// The largest sampled residual together with the tuple that produced it.
#[derive(Debug, Clone)]
pub struct ResidualStat {
    pub max: f64,
    pub argmax: Vec<Vec<f64>>,
}

impl ResidualStat {
    fn new() -> ResidualStat {
        ResidualStat {
            max: 0.0,
            argmax: Vec::new(),
        }
    }

    fn update(&mut self, r: f64, args: &[Vec<f64>]) {
        if r > self.max || self.argmax.is_empty() {
            self.max = r;
            self.argmax = args.to_vec();
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max <= tol
    }
}

/// Either a sampled condition residual, or the reason it cannot be formed.
#[derive(Debug, Clone)]
pub enum SmoothCondition {
    Checked(ResidualStat),
    /// The condition references `ξ⁻¹`, but the loop's left and right
    /// inverses differ by this much on the sampled region.
    NotApplicable {
        inverse_mismatch: ResidualStat,
    },
}

/// The base loop or its tangent prolongation, under one interface so the
/// same identity evaluator runs on both.
enum Space<'a> {
    Base(&'a SmoothLoop),
    Tangent(&'a SmoothLoop),
}

impl Space<'_> {
    fn identity(&self) -> Vec<f64> {
        match self {
            Space::Base(l) => l.identity(),
            Space::Tangent(l) => {
                let e = tangent_identity(l);
                [e.base, e.fiber].concat()
            }
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            Space::Base(l) => l.sample_point(rng),
            Space::Tangent(l) => [l.sample_point(rng), l.sample_tangent(rng)].concat(),
        }
    }

    fn split(l: &SmoothLoop, v: &[f64]) -> TangentPoint {
        let d = l.dim();
        TangentPoint::new(v[..d].to_vec(), v[d..].to_vec())
    }

    fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        match self {
            Space::Base(l) => l.mul(a, b),
            Space::Tangent(l) => {
                let p = prolong_mul(l, &Self::split(l, a), &Self::split(l, b));
                [p.base, p.fiber].concat()
            }
        }
    }

    fn ldiv(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        match self {
            Space::Base(l) => l.ldiv(a, b),
            Space::Tangent(l) => {
                let p = prolong_ldiv(l, &Self::split(l, a), &Self::split(l, b))
                    .expect("fiber system is well-conditioned on the sample box");
                [p.base, p.fiber].concat()
            }
        }
    }

    fn rdiv(&self, b: &[f64], a: &[f64]) -> Vec<f64> {
        match self {
            Space::Base(l) => l.rdiv(b, a),
            Space::Tangent(l) => {
                let p = prolong_rdiv(l, &Self::split(l, b), &Self::split(l, a))
                    .expect("fiber system is well-conditioned on the sample box");
                [p.base, p.fiber].concat()
            }
        }
    }

    /// Residual of the property's defining identity at one sampled tuple.
    fn identity_residual(&self, kind: PropertyKind, args: &[Vec<f64>]) -> f64 {
        let e = self.identity();
        let m = |a: &[f64], b: &[f64]| self.mul(a, b);
        let tsi = |x: &[f64]| vec_dist(&self.ldiv(x, &e), &self.rdiv(&e, x));
        match kind {
            PropertyKind::TwoSidedInverse => tsi(&args[0]),
            PropertyKind::LeftInverse => {
                let (x, y) = (&args[0], &args[1]);
                let inv = self.rdiv(&e, x);
                tsi(x).max(vec_dist(&m(&inv, &m(x, y)), y))
            }
            PropertyKind::RightInverse => {
                let (x, y) = (&args[0], &args[1]);
                let inv = self.ldiv(x, &e);
                tsi(x).max(vec_dist(&m(&m(y, x), &inv), y))
            }
            PropertyKind::Monoassociative => {
                let x = &args[0];
                let sq = m(x, x);
                vec_dist(&m(x, &sq), &m(&sq, x))
            }
            PropertyKind::LeftAlternative => {
                let (x, y) = (&args[0], &args[1]);
                vec_dist(&m(x, &m(x, y)), &m(&m(x, x), y))
            }
            PropertyKind::RightAlternative => {
                let (x, y) = (&args[0], &args[1]);
                vec_dist(&m(&m(y, x), x), &m(y, &m(x, x)))
            }
            PropertyKind::Flexible => {
                let (x, y) = (&args[0], &args[1]);
                vec_dist(&m(x, &m(y, x)), &m(&m(x, y), x))
            }
            PropertyKind::LeftBol => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                vec_dist(&m(&m(x, &m(y, x)), z), &m(x, &m(y, &m(x, z))))
            }
            PropertyKind::RightBol => {
                let (x, y, z) = (&args[0], &args[1], &args[2]);
                vec_dist(&m(z, &m(&m(x, y), x)), &m(&m(&m(z, x), y), x))
            }
        }
    }
}

fn arity(kind: PropertyKind) -> usize {
    match kind {
        PropertyKind::TwoSidedInverse | PropertyKind::Monoassociative => 1,
        PropertyKind::LeftBol | PropertyKind::RightBol => 3,
        _ => 2,
    }
}

fn sampled_residual<R: Rng>(
    space: &Space<'_>,
    kind: PropertyKind,
    samples: usize,
    rng: &mut R,
) -> ResidualStat {
    let mut stat = ResidualStat::new();
    for _ in 0..samples {
        let args: Vec<Vec<f64>> = (0..arity(kind)).map(|_| space.sample(rng)).collect();
        stat.update(space.identity_residual(kind, &args), &args);
    }
    stat
}

/// Sampled residual of the property identity on the base loop.
pub fn base_property_residual(
    l: &SmoothLoop,
    kind: PropertyKind,
    samples: usize,
    seed: u64,
) -> ResidualStat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampled_residual(&Space::Base(l), kind, samples, &mut rng)
}

/// Sampled residual of the property identity on the tangent prolongation.
pub fn tangent_property_residual(
    l: &SmoothLoop,
    kind: PropertyKind,
    samples: usize,
    seed: u64,
) -> ResidualStat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sampled_residual(&Space::Tangent(l), kind, samples, &mut rng)
}

fn consts(v: &[f64]) -> Vec<Dual> {
    v.iter().map(|&x| Dual::constant(x)).collect()
}

/// Residual of the tangent condition for `kind` at one sampled tuple: the
/// operator norm of (sum of left-side Jacobians) − (sum of right-side
/// Jacobians), each Jacobian taken at the tuple's distinguished point.
fn condition_residual_at(l: &SmoothLoop, kind: PropertyKind, args: &[Vec<f64>]) -> f64 {
    let e = l.identity();
    let sum = |mats: Vec<Mat>| -> Mat {
        let mut it = mats.into_iter();
        let first = it.next().expect("at least one term");
        it.fold(first, |acc, m| acc.add(&m))
    };
    match kind {
        PropertyKind::TwoSidedInverse => {
            let xi = &args[0];
            let inv = l.ldiv(xi, &e);
            let (xi_c, inv_c) = (consts(xi), consts(&inv));
            let lhs = jacobian(|u| l.mul(u, &inv_c), xi);
            let rhs = jacobian(|u| l.mul(&xi_c, &l.rdiv(&l.mul(&inv_c, u), &xi_c)), xi);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::LeftInverse => {
            let (xi, eta) = (&args[0], &args[1]);
            let inv = l.ldiv(xi, &e);
            let prod_c = consts(&l.mul(xi, eta));
            let (xi_c, eta_c) = (consts(xi), consts(eta));
            let lhs = jacobian(|u| l.mul(&xi_c, &l.mul(u, &prod_c)), &inv);
            let rhs = jacobian(|u| l.mul(&l.mul(&xi_c, &l.mul(u, &xi_c)), &eta_c), &inv);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::RightInverse => {
            let (xi, eta) = (&args[0], &args[1]);
            let inv = l.ldiv(eta, &e);
            let prod_c = consts(&l.mul(xi, eta));
            let (xi_c, eta_c) = (consts(xi), consts(eta));
            let lhs = jacobian(|u| l.mul(&l.mul(&prod_c, u), &eta_c), &inv);
            let rhs = jacobian(|u| l.mul(&xi_c, &l.mul(&l.mul(&eta_c, u), &eta_c)), &inv);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::Monoassociative => {
            let xi = &args[0];
            let xi_c = consts(xi);
            let sq_c = consts(&l.mul(xi, xi));
            let lhs = sum(vec![
                jacobian(|u| l.mul(u, &sq_c), xi),
                jacobian(|u| l.mul(&xi_c, &l.mul(u, &xi_c)), xi),
                jacobian(|u| l.mul(&xi_c, &l.mul(&xi_c, u)), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(u, &xi_c), &xi_c), xi),
                jacobian(|u| l.mul(&l.mul(&xi_c, u), &xi_c), xi),
                jacobian(|u| l.mul(&sq_c, u), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::LeftAlternative => {
            let (xi, eta) = (&args[0], &args[1]);
            let (xi_c, eta_c) = (consts(xi), consts(eta));
            let prod_c = consts(&l.mul(xi, eta));
            let lhs = sum(vec![
                jacobian(|u| l.mul(u, &prod_c), xi),
                jacobian(|u| l.mul(&xi_c, &l.mul(u, &eta_c)), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(u, &xi_c), &eta_c), xi),
                jacobian(|u| l.mul(&l.mul(&xi_c, u), &eta_c), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::RightAlternative => {
            let (xi, eta) = (&args[0], &args[1]);
            let (xi_c, eta_c) = (consts(xi), consts(eta));
            let prod_c = consts(&l.mul(eta, xi));
            let lhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(&eta_c, u), &xi_c), xi),
                jacobian(|u| l.mul(&prod_c, u), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&eta_c, &l.mul(u, &xi_c)), xi),
                jacobian(|u| l.mul(&eta_c, &l.mul(&xi_c, u)), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::Flexible => {
            let (xi, eta) = (&args[0], &args[1]);
            let (xi_c, eta_c) = (consts(xi), consts(eta));
            let ex_c = consts(&l.mul(eta, xi));
            let xe_c = consts(&l.mul(xi, eta));
            let lhs = sum(vec![
                jacobian(|u| l.mul(u, &ex_c), xi),
                jacobian(|u| l.mul(&xi_c, &l.mul(&eta_c, u)), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(u, &eta_c), &xi_c), xi),
                jacobian(|u| l.mul(&xe_c, u), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::LeftBol => {
            let (xi, eta, zeta) = (&args[0], &args[1], &args[2]);
            let (xi_c, eta_c, zeta_c) = (consts(xi), consts(eta), consts(zeta));
            let b_c = consts(&l.mul(eta, &l.mul(xi, zeta)));
            let ex_c = consts(&l.mul(eta, xi));
            let lhs = sum(vec![
                jacobian(|u| l.mul(u, &b_c), xi),
                jacobian(|u| l.mul(&xi_c, &l.mul(&eta_c, &l.mul(u, &zeta_c))), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(u, &ex_c), &zeta_c), xi),
                jacobian(|u| l.mul(&l.mul(&xi_c, &l.mul(&eta_c, u)), &zeta_c), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
        PropertyKind::RightBol => {
            let (xi, eta, zeta) = (&args[0], &args[1], &args[2]);
            let (xi_c, eta_c, zeta_c) = (consts(xi), consts(eta), consts(zeta));
            let u_c = consts(&l.mul(xi, eta));
            let r_c = consts(&l.mul(&l.mul(zeta, xi), eta));
            let lhs = sum(vec![
                jacobian(|u| l.mul(&zeta_c, &l.mul(&l.mul(u, &eta_c), &xi_c)), xi),
                jacobian(|u| l.mul(&zeta_c, &l.mul(&u_c, u)), xi),
            ]);
            let rhs = sum(vec![
                jacobian(|u| l.mul(&l.mul(&l.mul(&zeta_c, u), &eta_c), &xi_c), xi),
                jacobian(|u| l.mul(&r_c, u), xi),
            ]);
            lhs.sub(&rhs).inf_norm()
        }
    }
}

/// Sampled residual of the tangent condition for `kind`, or not-applicable
/// when the condition needs two-sided inverses and the loop lacks them.
pub fn condition_residual(
    l: &SmoothLoop,
    kind: PropertyKind,
    samples: usize,
    seed: u64,
    tol: f64,
) -> SmoothCondition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = Space::Base(l);
    if kind.needs_inverses() {
        let mut mismatch = ResidualStat::new();
        let mut rng_probe = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..samples {
            let x = l.sample_point(&mut rng_probe);
            let r =
                space.identity_residual(PropertyKind::TwoSidedInverse, std::slice::from_ref(&x));
            mismatch.update(r, &[x]);
        }
        if !mismatch.within(tol) {
            return SmoothCondition::NotApplicable {
                inverse_mismatch: mismatch,
            };
        }
    }
    let mut stat = ResidualStat::new();
    for _ in 0..samples {
        let args: Vec<Vec<f64>> = (0..arity(kind)).map(|_| l.sample_point(&mut rng)).collect();
        stat.update(condition_residual_at(l, kind, &args), &args);
    }
    SmoothCondition::Checked(stat)
}

/// One property's base/tangent/condition residuals with the tolerance used
/// for verdicts.
#[derive(Debug, Clone)]
pub struct TangentPropertyReport {
    pub property: PropertyKind,
    pub base: ResidualStat,
    pub tangent: ResidualStat,
    pub condition: SmoothCondition,
    pub tol: f64,
}

impl TangentPropertyReport {
    pub fn base_has(&self) -> bool {
        self.base.within(self.tol)
    }

    pub fn tangent_has(&self) -> bool {
        self.tangent.within(self.tol)
    }

    /// The prolongation must have the property exactly when the base does.
    pub fn transfer_agrees(&self) -> bool {
        self.base_has() == self.tangent_has()
    }

    /// When the base has the property, the condition must hold as well.
    pub fn condition_agrees(&self) -> bool {
        match (&self.condition, self.base_has()) {
            (SmoothCondition::Checked(stat), true) => stat.within(self.tol),
            _ => true,
        }
    }
}

/// Runs all nine property transfers on one loop.
pub fn transfer_suite(
    l: &SmoothLoop,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Vec<TangentPropertyReport> {
    PropertyKind::ALL
        .iter()
        .map(|&kind| TangentPropertyReport {
            property: kind,
            base: base_property_residual(l, kind, samples, seed),
            tangent: tangent_property_residual(l, kind, samples, seed.wrapping_add(1)),
            condition: condition_residual(l, kind, samples, seed.wrapping_add(2), tol),
            tol,
        })
        .collect()
}

/// Residuals of the two inverse-derivative formulas: the derivative of the
/// inverse curve `t ↦ (ξ + tv)\e` against `−d_ξ(u ↦ ξ⁻¹u / ξ)(v)` and
/// against `−d_ξ(u ↦ ξ \ uξ⁻¹)(v)`. Meaningful on loops with two-sided
/// inverses.
pub fn inverse_derivative_residuals(l: &SmoothLoop, samples: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = l.identity();
    let e_c = consts(&e);
    let (mut worst_a, mut worst_b) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let xi = l.sample_point(&mut rng);
        let v = l.sample_tangent(&mut rng);
        let inv = l.ldiv(&xi, &e);
        let (xi_c, inv_c) = (consts(&xi), consts(&inv));

        // Direct route: differentiate the inverse curve itself.
        let curve: Vec<Dual> = (0..l.dim()).map(|i| Dual::seeded(xi[i], v[i])).collect();
        let direct: Vec<f64> = l.ldiv(&curve, &e_c).into_iter().map(|d| d.der).collect();

        let via_a = jacobian(|u| l.rdiv(&l.mul(&inv_c, u), &xi_c), &xi).matvec(&v);
        let via_b = jacobian(|u| l.ldiv(&xi_c, &l.mul(u, &inv_c)), &xi).matvec(&v);
        let neg = |w: Vec<f64>| -> Vec<f64> { w.into_iter().map(|t| -t).collect() };
        worst_a = worst_a.max(vec_dist(&direct, &neg(via_a)));
        worst_b = worst_b.max(vec_dist(&direct, &neg(via_b)));
    }
    (worst_a, worst_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_pass_every_transfer() {
        for name in ["additive", "affine"] {
            let l = SmoothLoop::by_name(name).unwrap();
            for report in transfer_suite(&l, 60, 42, 1e-8) {
                assert!(report.base_has(), "{name} base {}", report.property);
                assert!(report.tangent_has(), "{name} tangent {}", report.property);
                assert!(report.condition_agrees(), "{name} cond {}", report.property);
            }
        }
    }

    #[test]
    fn parabolic_fails_every_property_on_both_levels() {
        let l = SmoothLoop::Parabolic;
        for report in transfer_suite(&l, 60, 42, 1e-8) {
            assert!(!report.base_has(), "base lacks {}", report.property);
            assert!(!report.tangent_has(), "tangent lacks {}", report.property);
            assert!(report.transfer_agrees());
            assert!(
                !report.base.argmax.is_empty() && !report.tangent.argmax.is_empty(),
                "failures carry witnesses"
            );
        }
    }

    #[test]
    fn parabolic_inverse_conditions_are_not_applicable() {
        let l = SmoothLoop::Parabolic;
        for kind in [
            PropertyKind::TwoSidedInverse,
            PropertyKind::LeftInverse,
            PropertyKind::RightInverse,
        ] {
            match condition_residual(&l, kind, 60, 7, 1e-8) {
                SmoothCondition::NotApplicable { inverse_mismatch } => {
                    assert!(inverse_mismatch.max > 1e-3);
                }
                SmoothCondition::Checked(_) => panic!("{kind} should be n/a"),
            }
        }
    }

    #[test]
    fn inverse_derivative_formulas_hold_on_the_affine_group() {
        let l = SmoothLoop::Affine;
        let (a, b) = inverse_derivative_residuals(&l, 200, 23);
        assert!(a < 1e-9, "first formula residual {a}");
        assert!(b < 1e-9, "second formula residual {b}");
    }
}
