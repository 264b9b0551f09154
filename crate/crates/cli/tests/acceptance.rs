//! Acceptance gate: one test per shipping criterion, each printing a
//! `criterion N (...): PASS` line (visible with `--nocapture`). A failed
//! assertion is the FAIL line for its criterion.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopkit::abelian::{AbGroup, ModMatrix};
use loopkit::conditions::{
    audit_all, cocycle_condition, induced_condition, property_witness, ConditionOutcome,
    NotApplicable, PropertyKind,
};
use loopkit::extension::{Cocycle, LinearQuasigroup, DEFAULT_EXTENSION_CAP};
use loopkit::finite::{find_identity, FiniteLoop};
use loopkit::fixtures;
use loopkit::mapping::{inner_map_p, mlt_and_inn};
use loopkit::phi::{induced_cocycle, PhiHom};
use loopkit::smooth::{
    classical_group_mul, cocycle_q, inverse_derivative_residuals, jacobian, jacobian_fd,
    prolong_ldiv, prolong_mul, prolong_rdiv, transfer_suite, Mat, SmoothLoop, TangentPoint,
};

fn z2() -> AbGroup {
    AbGroup::new(2, 1)
}

fn z3() -> AbGroup {
    AbGroup::new(3, 1)
}

fn z2sq() -> AbGroup {
    AbGroup::new(2, 2)
}

fn z4k() -> AbGroup {
    AbGroup::new(4, 1)
}

/// The four base loops and three kernels of the randomized-extension corpus.
fn audit_corpus() -> (Vec<(&'static str, FiniteLoop)>, Vec<AbGroup>) {
    let loops = vec![
        ("z4", fixtures::z4()),
        ("s3", fixtures::s3()),
        ("n5", fixtures::n5()),
        ("n6", fixtures::n6()),
    ];
    (loops, vec![z2(), z3(), z2sq()])
}

fn corpus_seed(loop_idx: usize, kernel_idx: usize) -> u64 {
    0xC0C * (loop_idx as u64 + 1) + kernel_idx as u64
}

#[test]
fn criterion_1_extension_iff_audit() {
    let started = Instant::now();
    let (loops, kernels) = audit_corpus();
    let mut cases = 0usize;
    for (li, (name, l)) in loops.iter().enumerate() {
        for (ki, kernel) in kernels.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(corpus_seed(li, ki));
            for trial in 0..100 {
                let c = Cocycle::random(l.clone(), *kernel, &mut rng);
                for audit in audit_all(&c, DEFAULT_EXTENSION_CAP).unwrap() {
                    assert!(
                        audit.consistent(),
                        "{name} kernel {kernel} trial {trial} property {}: \
                         base={} condition={} extension={}",
                        audit.property,
                        audit.base_has,
                        audit.condition,
                        audit.extension_has
                    );
                    cases += 1;
                }
            }
        }
    }
    assert_eq!(cases, 4 * 3 * 100 * 9);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "audit took {elapsed:?}");
    println!("criterion 1 (extension iff-audit): PASS — {cases} cases consistent in {elapsed:?}");
}

#[test]
fn criterion_2_identity_cocycle_is_a_direct_product() {
    let mut pairs = 0usize;
    for (name, l) in fixtures::all() {
        for kernel in [z2(), z3(), z2sq()] {
            let c = Cocycle::identity(l.clone(), kernel);
            let ext = c.build_extension(DEFAULT_EXTENSION_CAP).unwrap();
            for kind in PropertyKind::ALL {
                let base_has = property_witness(&l, kind).is_none();
                let ext_has = property_witness(&ext, kind).is_none();
                assert_eq!(
                    base_has, ext_has,
                    "{name} x {kernel}: {kind} flag changed under direct product"
                );
            }
            pairs += 1;
        }
    }
    assert_eq!(pairs, 15);
    println!(
        "criterion 2 (identity cocycle = direct product): PASS — {pairs} pairs, flags preserved"
    );
}

/// Sign homomorphism on the inner mappings of the S₃ table: conjugation by a
/// transposition goes to `neg`, conjugation by a 3-cycle to the identity.
fn s3_sign_phi(kernel: AbGroup, neg: ModMatrix) -> PhiHom {
    let s3 = fixtures::s3();
    let (_, inn) = mlt_and_inn(&s3).unwrap();
    let conj_transposition = inner_map_p(&s3, 0, 1);
    let conj_three_cycle = inner_map_p(&s3, 0, 4);
    PhiHom::from_generators(
        inn,
        kernel,
        &[
            (conj_transposition, neg),
            (conj_three_cycle, ModMatrix::identity(kernel)),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_3_hom_route_matches_cocycle_route() {
    let mut corpus: Vec<(String, FiniteLoop, PhiHom)> = Vec::new();
    for (name, l) in fixtures::all() {
        let (_, inn) = mlt_and_inn(&l).unwrap();
        for kernel in [z2(), z3(), z2sq(), z4k()] {
            corpus.push((
                format!("trivial {name} {kernel}"),
                l.clone(),
                PhiHom::trivial(inn.clone(), kernel),
            ));
        }
        if inn.elements().iter().any(|p| p.is_odd()) {
            corpus.push((
                format!("parity {name} z4"),
                l.clone(),
                PhiHom::from_parity(inn.clone(), z4k(), ModMatrix::from_entries(z4k(), vec![3]))
                    .unwrap(),
            ));
            corpus.push((
                format!("parity {name} z2^2"),
                l.clone(),
                PhiHom::from_parity(
                    inn.clone(),
                    z2sq(),
                    ModMatrix::from_entries(z2sq(), vec![0, 1, 1, 0]),
                )
                .unwrap(),
            ));
        }
    }
    corpus.push((
        "sign s3 z3".into(),
        fixtures::s3(),
        s3_sign_phi(z3(), ModMatrix::from_entries(z3(), vec![2])),
    ));
    corpus.push((
        "sign s3 z4".into(),
        fixtures::s3(),
        s3_sign_phi(z4k(), ModMatrix::from_entries(z4k(), vec![3])),
    ));
    corpus.push((
        "sign s3 z2^2".into(),
        fixtures::s3(),
        s3_sign_phi(z2sq(), ModMatrix::from_entries(z2sq(), vec![0, 1, 1, 0])),
    ));
    assert!(corpus.len() >= 20, "only {} homomorphisms", corpus.len());

    let mut nontrivial = 0usize;
    for (name, l, phi) in &corpus {
        if !phi.is_trivial() {
            nontrivial += 1;
        }
        let c = induced_cocycle(l, phi).unwrap();
        for kind in PropertyKind::ALL {
            let via_phi = induced_condition(l, phi, kind).unwrap();
            let via_cocycle = cocycle_condition(&c, kind);
            match &via_phi {
                ConditionOutcome::NotApplicable(NotApplicable::BaseLacksProperty { .. }) => {
                    assert!(
                        property_witness(l, kind).is_some(),
                        "{name}: {kind} marked n/a but the base has the property"
                    );
                }
                _ => assert_eq!(
                    via_phi.holds(),
                    via_cocycle.holds(),
                    "{name}: {kind} routes disagree ({via_phi} vs {via_cocycle})"
                ),
            }
        }
        for audit in audit_all(&c, DEFAULT_EXTENSION_CAP).unwrap() {
            assert!(
                audit.consistent(),
                "{name}: audit failed on {}",
                audit.property
            );
        }
    }
    assert!(nontrivial >= 3);
    println!(
        "criterion 3 (hom route = cocycle route): PASS — {} homomorphisms ({} nontrivial)",
        corpus.len(),
        nontrivial
    );
}

#[test]
fn criterion_4_opposite_duality() {
    let mut checked = 0usize;
    let mut check_pairs = |label: &str, c: &Cocycle| {
        let op = c.opposite();
        let dual = [
            (
                PropertyKind::RightAlternative,
                PropertyKind::LeftAlternative,
            ),
            (
                PropertyKind::LeftAlternative,
                PropertyKind::RightAlternative,
            ),
            (PropertyKind::RightBol, PropertyKind::LeftBol),
            (PropertyKind::LeftBol, PropertyKind::RightBol),
        ];
        for (own, mirrored) in dual {
            let direct = cocycle_condition(c, own);
            let via_opposite = cocycle_condition(&op, mirrored);
            assert_eq!(
                direct.holds(),
                via_opposite.holds(),
                "{label}: {own} vs opposite {mirrored} ({direct} / {via_opposite})"
            );
            checked += 1;
        }
    };
    let (loops, kernels) = audit_corpus();
    for (li, (name, l)) in loops.iter().enumerate() {
        for (ki, kernel) in kernels.iter().enumerate() {
            check_pairs(
                &format!("identity {name} {kernel}"),
                &Cocycle::identity(l.clone(), *kernel),
            );
            let mut rng = ChaCha8Rng::seed_from_u64(corpus_seed(li, ki));
            for trial in 0..100 {
                let c = Cocycle::random(l.clone(), *kernel, &mut rng);
                check_pairs(&format!("{name} {kernel} trial {trial}"), &c);
            }
        }
    }
    println!("criterion 4 (opposite duality): PASS — {checked} condition pairs agree");
}

fn sample_tangent_pair<R: rand::Rng>(l: &SmoothLoop, rng: &mut R) -> TangentPoint {
    TangentPoint::new(l.sample_point(rng), l.sample_tangent(rng))
}

#[test]
fn criterion_5_group_prolongation_matches_the_classical_law() {
    let started = Instant::now();
    let l = SmoothLoop::Affine;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_law = 0.0f64;
    let mut worst_q = 0.0f64;
    for _ in 0..1000 {
        let a = sample_tangent_pair(&l, &mut rng);
        let b = sample_tangent_pair(&l, &mut rng);
        let via_cocycle = prolong_mul(&l, &a, &b);
        let via_group = classical_group_mul(&l, &a, &b);
        worst_law = worst_law
            .max(loopkit::smooth::catalog::vec_dist(
                &via_cocycle.base,
                &via_group.base,
            ))
            .max(loopkit::smooth::catalog::vec_dist(
                &via_cocycle.fiber,
                &via_group.fiber,
            ));
        let q = cocycle_q(&l, &a.base, &b.base);
        worst_q = worst_q.max(q.sub(&Mat::identity(l.dim())).inf_norm());
    }
    assert!(worst_law <= 1e-9, "law residual {worst_law}");
    assert!(worst_q <= 1e-9, "Q residual {worst_q}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}");
    println!(
        "criterion 5 (group tangent law): PASS — law residual {worst_law:.3e}, \
         Q-I residual {worst_q:.3e} over 1000 samples in {elapsed:?}"
    );
}

#[test]
fn criterion_6_nonassociative_prolongation_round_trips() {
    let l = SmoothLoop::Parabolic;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_round = 0.0f64;
    for _ in 0..1000 {
        let a = sample_tangent_pair(&l, &mut rng);
        let b = sample_tangent_pair(&l, &mut rng);
        let left = prolong_mul(&l, &a, &prolong_ldiv(&l, &a, &b).unwrap());
        let right = prolong_mul(&l, &prolong_rdiv(&l, &b, &a).unwrap(), &a);
        for got in [left, right] {
            worst_round = worst_round
                .max(loopkit::smooth::catalog::vec_dist(&got.base, &b.base))
                .max(loopkit::smooth::catalog::vec_dist(&got.fiber, &b.fiber));
        }
    }
    assert!(worst_round <= 1e-8, "round-trip residual {worst_round}");

    let mut worst_jac = 0.0f64;
    for _ in 0..200 {
        let xi = l.sample_point(&mut rng);
        let eta = l.sample_point(&mut rng);
        let prod = l.mul(&xi, &eta);
        let dual_jac = jacobian(
            |y| {
                let xi_d: Vec<_> = xi
                    .iter()
                    .map(|&v| loopkit::smooth::Dual::constant(v))
                    .collect();
                let eta_d: Vec<_> = eta
                    .iter()
                    .map(|&v| loopkit::smooth::Dual::constant(v))
                    .collect();
                let prod_d: Vec<_> = prod
                    .iter()
                    .map(|&v| loopkit::smooth::Dual::constant(v))
                    .collect();
                l.ldiv(&prod_d, &l.mul(&l.mul(&xi_d, y), &eta_d))
            },
            &l.identity(),
        );
        let fd_jac = jacobian_fd(
            |y| l.ldiv(&prod, &l.mul(&l.mul(&xi, y), &eta)),
            &l.identity(),
            1e-4,
        );
        worst_jac = worst_jac.max(dual_jac.sub(&fd_jac).inf_norm());
    }
    assert!(
        worst_jac <= 1e-5,
        "dual vs finite-difference gap {worst_jac}"
    );
    println!(
        "criterion 6 (prolongation round-trips): PASS — round-trip {worst_round:.3e}, \
         dual/FD gap {worst_jac:.3e}"
    );
}

#[test]
fn criterion_7_property_transfer_biconditional() {
    for name in ["additive", "affine", "parabolic"] {
        let l = SmoothLoop::by_name(name).unwrap();
        let reports = transfer_suite(&l, 500, 7, 1e-8);
        assert_eq!(reports.len(), 9);
        for r in &reports {
            assert!(
                r.transfer_agrees(),
                "{name} {}: base={} tangent={}",
                r.property,
                r.base_has(),
                r.tangent_has()
            );
            assert!(
                r.condition_agrees(),
                "{name} {}: condition disagrees",
                r.property
            );
            if name == "parabolic" {
                assert!(!r.base_has() && !r.tangent_has(), "{name} {}", r.property);
                assert!(
                    !r.base.argmax.is_empty() && !r.tangent.argmax.is_empty(),
                    "{name} {}: missing witness",
                    r.property
                );
            } else {
                assert!(r.base_has() && r.tangent_has(), "{name} {}", r.property);
            }
        }
    }
    let (derinv, derinv1) = inverse_derivative_residuals(&SmoothLoop::Affine, 500, 7);
    assert!(derinv <= 1e-9, "first inverse-derivative formula {derinv}");
    assert!(
        derinv1 <= 1e-9,
        "second inverse-derivative formula {derinv1}"
    );
    println!(
        "criterion 7 (tangent transfer biconditional): PASS — 3 loops x 9 properties, \
         inverse-derivative residuals {derinv:.3e} / {derinv1:.3e}"
    );
}

#[test]
fn criterion_8_linear_quasigroups_over_z5() {
    let z5 = AbGroup::new(5, 1);
    let elements = z5.elements().unwrap();
    let mut cases = 0usize;
    let mut with_identity = 0usize;
    for phi_u in 1..5i64 {
        for psi_u in 1..5i64 {
            for c0 in 0..5i64 {
                let lq = LinearQuasigroup::new(
                    ModMatrix::from_entries(z5, vec![phi_u]),
                    ModMatrix::from_entries(z5, vec![psi_u]),
                    z5.vec(vec![c0]),
                )
                .unwrap();
                for x in &elements {
                    for y in &elements {
                        assert_eq!(lq.mul(x, &lq.ldiv(x, y)), *y);
                        assert_eq!(lq.ldiv(x, &lq.mul(x, y)), *y);
                        assert_eq!(lq.mul(&lq.rdiv(y, x), x), *y);
                        assert_eq!(lq.rdiv(&lq.mul(y, x), x), *y);
                    }
                }
                let table = lq.table().unwrap();
                let identity = find_identity(&table);
                let expect_identity = phi_u == 1 && psi_u == 1;
                assert_eq!(
                    identity.is_some(),
                    expect_identity,
                    "phi={phi_u} psi={psi_u} c={c0}: identity search disagrees"
                );
                if let Some(e) = identity {
                    assert_eq!(e, z5.rank_of(&z5.vec(vec![-c0])));
                    with_identity += 1;
                }
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 80);
    assert_eq!(with_identity, 5);
    println!(
        "criterion 8 (linear quasigroups over z5): PASS — {cases} parameter triples, \
         divisions exact, identity exists in exactly {with_identity} unit-free cases"
    );
}

fn fixture_bytes(name: &str) -> Vec<u8> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

fn search_stdout(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_loopkit"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "search exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_9_search_regenerates_frozen_fixtures() {
    let n5 = search_stdout(&[
        "search",
        "--order",
        "5",
        "--property",
        "nonassociative",
        "--limit",
        "1",
    ]);
    assert_eq!(n5, fixture_bytes("n5.tbl"), "n5 fixture drifted");
    let b8 = search_stdout(&[
        "search",
        "--order",
        "8",
        "--property",
        "left-bol",
        "--property",
        "nonassociative",
        "--limit",
        "1",
    ]);
    assert_eq!(b8, fixture_bytes("b8.tbl"), "b8 fixture drifted");
    println!("criterion 9 (fixture determinism): PASS — n5 and b8 regenerate byte-identically");
}
