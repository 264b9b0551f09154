//! The nine weak loop properties, their characterizations on cocycle
//! extensions, and audits checking the two against each other.
//!
//! Properties of a loop `L` (juxtaposition = multiplication, binding tighter
//! than `·`; `x⁻¹` is the two-sided inverse where it exists):
//!
//! * two-sided inverse: `e/x = x\e` for all `x`
//! * left inverse:      `x⁻¹ · xy = y`
//! * right inverse:     `yx · x⁻¹ = y`
//! * monoassociative:   `x · x² = x² · x`
//! * left alternative:  `x · xy = x² · y`
//! * right alternative: `yx · x = y · x²`
//! * flexible:          `x · yx = xy · x`
//! * left Bol:          `(x · yx)z = x(y · xz)`
//! * right Bol:         `z(xy · x) = (zx · y)x`
//!
//! The left- and right-inverse checks first require two-sided inverses to
//! exist (loops with either inverse property always have them) and then test
//! the identity with `ι(x) = x⁻¹`.
//!
//! For an extension by a cocycle `(P, Q)` each property of the extension is
//! equivalent — provided the base loop has the property — to a family of
//! matrix identities in the cocycle entries; `cocycle_condition` evaluates
//! those identities directly. `induced_condition` evaluates the same content
//! along an independent route for cocycles induced by a homomorphism `Φ`:
//! each side becomes a sum of `Φ`-images of composites of translation maps,
//! composed at the permutation level before `Φ` is applied once per term.

use std::fmt;

use crate::extension::{Cocycle, ExtensionError};
use crate::finite::{Element, FiniteLoop};
use crate::perm::Perm;
use crate::phi::{PhiError, PhiHom};

/// The nine weak properties, in the fixed report order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    TwoSidedInverse,
    LeftInverse,
    RightInverse,
    Monoassociative,
    LeftAlternative,
    RightAlternative,
    Flexible,
    LeftBol,
    RightBol,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 9] = [
        PropertyKind::TwoSidedInverse,
        PropertyKind::LeftInverse,
        PropertyKind::RightInverse,
        PropertyKind::Monoassociative,
        PropertyKind::LeftAlternative,
        PropertyKind::RightAlternative,
        PropertyKind::Flexible,
        PropertyKind::LeftBol,
        PropertyKind::RightBol,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PropertyKind::TwoSidedInverse => "two-sided-inverse",
            PropertyKind::LeftInverse => "left-inverse",
            PropertyKind::RightInverse => "right-inverse",
            PropertyKind::Monoassociative => "monoassociative",
            PropertyKind::LeftAlternative => "left-alternative",
            PropertyKind::RightAlternative => "right-alternative",
            PropertyKind::Flexible => "flexible",
            PropertyKind::LeftBol => "left-bol",
            PropertyKind::RightBol => "right-bol",
        }
    }

    pub fn parse(s: &str) -> Option<PropertyKind> {
        PropertyKind::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// Whether the cocycle condition references inverse elements of the base.
    pub fn needs_inverses(&self) -> bool {
        matches!(
            self,
            PropertyKind::TwoSidedInverse | PropertyKind::LeftInverse | PropertyKind::RightInverse
        )
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The lexicographically first tuple at which an identity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    One(Element),
    Pair(Element, Element),
    Triple(Element, Element, Element),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::One(x) => write!(f, "({x})"),
            Witness::Pair(x, y) => write!(f, "({x},{y})"),
            Witness::Triple(x, y, z) => write!(f, "({x},{y},{z})"),
        }
    }
}

/// First tuple violating associativity, if any.
pub fn associativity_witness(l: &FiniteLoop) -> Option<Witness> {
    let n = l.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if l.mul(l.mul(x, y), z) != l.mul(x, l.mul(y, z)) {
                    return Some(Witness::Triple(x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_associative(l: &FiniteLoop) -> bool {
    associativity_witness(l).is_none()
}

/// First tuple violating the property's defining identity, or `None` if the
/// loop has the property.
pub fn property_witness(l: &FiniteLoop, kind: PropertyKind) -> Option<Witness> {
    let n = l.order();
    match kind {
        PropertyKind::TwoSidedInverse => l.missing_inverse_witness().map(Witness::One),
        PropertyKind::LeftInverse => {
            if let Some(x) = l.missing_inverse_witness() {
                return Some(Witness::One(x));
            }
            for x in 0..n {
                let inv = l.two_sided_inverse(x).unwrap();
                for y in 0..n {
                    if l.mul(inv, l.mul(x, y)) != y {
                        return Some(Witness::Pair(x, y));
                    }
                }
            }
            None
        }
        PropertyKind::RightInverse => {
            if let Some(x) = l.missing_inverse_witness() {
                return Some(Witness::One(x));
            }
            for x in 0..n {
                let inv = l.two_sided_inverse(x).unwrap();
                for y in 0..n {
                    if l.mul(l.mul(y, x), inv) != y {
                        return Some(Witness::Pair(x, y));
                    }
                }
            }
            None
        }
        PropertyKind::Monoassociative => {
            for x in 0..n {
                let sq = l.mul(x, x);
                if l.mul(x, sq) != l.mul(sq, x) {
                    return Some(Witness::One(x));
                }
            }
            None
        }
        PropertyKind::LeftAlternative => {
            for x in 0..n {
                let sq = l.mul(x, x);
                for y in 0..n {
                    if l.mul(x, l.mul(x, y)) != l.mul(sq, y) {
                        return Some(Witness::Pair(x, y));
                    }
                }
            }
            None
        }
        PropertyKind::RightAlternative => {
            for x in 0..n {
                let sq = l.mul(x, x);
                for y in 0..n {
                    if l.mul(l.mul(y, x), x) != l.mul(y, sq) {
                        return Some(Witness::Pair(x, y));
                    }
                }
            }
            None
        }
        PropertyKind::Flexible => {
            for x in 0..n {
                for y in 0..n {
                    if l.mul(x, l.mul(y, x)) != l.mul(l.mul(x, y), x) {
                        return Some(Witness::Pair(x, y));
                    }
                }
            }
            None
        }
        PropertyKind::LeftBol => {
            for x in 0..n {
                for y in 0..n {
                    let xyx = l.mul(x, l.mul(y, x));
                    for z in 0..n {
                        if l.mul(xyx, z) != l.mul(x, l.mul(y, l.mul(x, z))) {
                            return Some(Witness::Triple(x, y, z));
                        }
                    }
                }
            }
            None
        }
        PropertyKind::RightBol => {
            for x in 0..n {
                for y in 0..n {
                    let xyx = l.mul(l.mul(x, y), x);
                    for z in 0..n {
                        if l.mul(z, xyx) != l.mul(l.mul(l.mul(z, x), y), x) {
                            return Some(Witness::Triple(x, y, z));
                        }
                    }
                }
            }
            None
        }
    }
}

pub fn has_property(l: &FiniteLoop, kind: PropertyKind) -> bool {
    property_witness(l, kind).is_none()
}

/// Outcome of evaluating an extension condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionOutcome {
    Holds,
    Fails(Witness),
    NotApplicable(NotApplicable),
}

/// Why a condition could not be evaluated on this base loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotApplicable {
    /// The condition references `x⁻¹` but this element has none.
    MissingInverse { element: Element },
    /// The `Φ`-route characterization presumes the base loop has the
    /// property; this witness shows it does not.
    BaseLacksProperty { witness: Witness },
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionOutcome::Holds)
    }
}

impl fmt::Display for ConditionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionOutcome::Holds => write!(f, "holds"),
            ConditionOutcome::Fails(w) => write!(f, "fails at {w}"),
            ConditionOutcome::NotApplicable(NotApplicable::MissingInverse { element }) => {
                write!(
                    f,
                    "not applicable: element {element} has no two-sided inverse"
                )
            }
            ConditionOutcome::NotApplicable(NotApplicable::BaseLacksProperty { witness }) => {
                write!(
                    f,
                    "not applicable: base loop lacks the property at {witness}"
                )
            }
        }
    }
}

/// Evaluates the matrix identities characterizing `kind` on the extension
/// defined by `c`, quantified over base-loop tuples.
///
/// Sums of automorphism entries are ordinary matrices mod m; they are
/// compared, never inverted. For the three inverse-flavored properties the
/// identities reference `ξ⁻¹`, so a base loop without two-sided inverses
/// yields `NotApplicable` naming the first offending element.
pub fn cocycle_condition(c: &Cocycle, kind: PropertyKind) -> ConditionOutcome {
    let l = c.base();
    let n = l.order();
    let p = |x: Element, y: Element| c.p(x, y).clone();
    let q = |x: Element, y: Element| c.q(x, y).clone();

    let inv = if kind.needs_inverses() {
        match l.missing_inverse_witness() {
            Some(element) => {
                return ConditionOutcome::NotApplicable(NotApplicable::MissingInverse { element })
            }
            None => (0..n).map(|x| l.two_sided_inverse(x).unwrap()).collect(),
        }
    } else {
        Vec::new()
    };

    match kind {
        PropertyKind::TwoSidedInverse => {
            for (xi, &xv) in inv.iter().enumerate() {
                let lhs = p(xi, xv);
                let rhs = q(xi, xv).mul(&p(xv, xi).invert().unwrap()).mul(&q(xv, xi));
                if lhs != rhs {
                    return ConditionOutcome::Fails(Witness::One(xi));
                }
            }
        }
        PropertyKind::LeftInverse => {
            for (xi, &xv) in inv.iter().enumerate() {
                for eta in 0..n {
                    let prod = l.mul(xi, eta);
                    let q_inv = q(xi, eta).invert().unwrap();
                    let ok = q(xv, prod) == q_inv
                        && p(xv, prod)
                            == q_inv
                                .mul(&p(xi, eta))
                                .mul(&q(xv, xi).invert().unwrap())
                                .mul(&p(xv, xi));
                    if !ok {
                        return ConditionOutcome::Fails(Witness::Pair(xi, eta));
                    }
                }
            }
        }
        PropertyKind::RightInverse => {
            for xi in 0..n {
                for (eta, &ev) in inv.iter().enumerate() {
                    let prod = l.mul(xi, eta);
                    let p_inv = p(xi, eta).invert().unwrap();
                    let ok = p(prod, ev) == p_inv
                        && q(prod, ev)
                            == p_inv
                                .mul(&q(xi, eta))
                                .mul(&p(eta, ev).invert().unwrap())
                                .mul(&q(eta, ev));
                    if !ok {
                        return ConditionOutcome::Fails(Witness::Pair(xi, eta));
                    }
                }
            }
        }
        PropertyKind::Monoassociative => {
            for xi in 0..n {
                let sq = l.mul(xi, xi);
                let s = p(xi, xi).add(&q(xi, xi));
                let lhs = p(xi, sq).add(&q(xi, sq).mul(&s));
                let rhs = p(sq, xi).mul(&s).add(&q(sq, xi));
                if lhs != rhs {
                    return ConditionOutcome::Fails(Witness::One(xi));
                }
            }
        }
        PropertyKind::LeftAlternative => {
            for xi in 0..n {
                let sq = l.mul(xi, xi);
                let s = p(xi, xi).add(&q(xi, xi));
                for eta in 0..n {
                    let xe = l.mul(xi, eta);
                    let ok = q(xi, xe).mul(&q(xi, eta)) == q(sq, eta)
                        && p(xi, xe).add(&q(xi, xe).mul(&p(xi, eta))) == p(sq, eta).mul(&s);
                    if !ok {
                        return ConditionOutcome::Fails(Witness::Pair(xi, eta));
                    }
                }
            }
        }
        PropertyKind::RightAlternative => {
            for xi in 0..n {
                let sq = l.mul(xi, xi);
                let s = p(xi, xi).add(&q(xi, xi));
                for eta in 0..n {
                    let ex = l.mul(eta, xi);
                    let ok = p(ex, xi).mul(&p(eta, xi)) == p(eta, sq)
                        && p(ex, xi).mul(&q(eta, xi)).add(&q(ex, xi)) == q(eta, sq).mul(&s);
                    if !ok {
                        return ConditionOutcome::Fails(Witness::Pair(xi, eta));
                    }
                }
            }
        }
        PropertyKind::Flexible => {
            for xi in 0..n {
                for eta in 0..n {
                    let ex = l.mul(eta, xi);
                    let xe = l.mul(xi, eta);
                    let ok = q(xi, ex).mul(&p(eta, xi)) == p(xe, xi).mul(&q(xi, eta))
                        && p(xi, ex).add(&q(xi, ex).mul(&q(eta, xi)))
                            == p(xe, xi).mul(&p(xi, eta)).add(&q(xe, xi));
                    if !ok {
                        return ConditionOutcome::Fails(Witness::Pair(xi, eta));
                    }
                }
            }
        }
        PropertyKind::LeftBol => {
            for xi in 0..n {
                for eta in 0..n {
                    let ex = l.mul(eta, xi);
                    let d = l.mul(xi, ex);
                    for zeta in 0..n {
                        let a = l.mul(xi, zeta);
                        let b = l.mul(eta, a);
                        let ok = q(xi, b).mul(&q(eta, a)).mul(&q(xi, zeta)) == q(d, zeta)
                            && q(xi, b).mul(&p(eta, a))
                                == p(d, zeta).mul(&q(xi, ex)).mul(&p(eta, xi))
                            && p(xi, b).add(&q(xi, b).mul(&q(eta, a)).mul(&p(xi, zeta)))
                                == p(d, zeta).mul(&p(xi, ex).add(&q(xi, ex).mul(&q(eta, xi))));
                        if !ok {
                            return ConditionOutcome::Fails(Witness::Triple(xi, eta, zeta));
                        }
                    }
                }
            }
        }
        PropertyKind::RightBol => {
            for xi in 0..n {
                for eta in 0..n {
                    let u = l.mul(xi, eta);
                    let v = l.mul(u, xi);
                    for zeta in 0..n {
                        let w = l.mul(zeta, xi);
                        let r = l.mul(w, eta);
                        let ok = p(zeta, v) == p(r, xi).mul(&p(w, eta)).mul(&p(zeta, xi))
                            && q(zeta, v).mul(&p(u, xi)).mul(&q(xi, eta))
                                == p(r, xi).mul(&q(w, eta))
                            && q(zeta, v).mul(&p(u, xi).mul(&p(xi, eta)).add(&q(u, xi)))
                                == p(r, xi).mul(&p(w, eta)).mul(&q(zeta, xi)).add(&q(r, xi));
                        if !ok {
                            return ConditionOutcome::Fails(Witness::Triple(xi, eta, zeta));
                        }
                    }
                }
            }
        }
    }
    ConditionOutcome::Holds
}

/// Composes `[f₁, f₂, .., f_k]` as `f₁ ∘ f₂ ∘ .. ∘ f_k` (rightmost first).
fn chain(perms: &[Perm]) -> Perm {
    let mut iter = perms.iter().rev();
    let mut acc = iter.next().expect("chain of at least one map").clone();
    for p in iter {
        acc = p.compose(&acc);
    }
    acc
}

/// Evaluates the `Φ`-level characterization of `kind` for the cocycle induced
/// by `phi`: each side is a sum of `Φ`-images of translation-map composites.
///
/// The characterization presumes the base loop has the property (otherwise
/// some composites need not fix the identity), so a base loop without it
/// yields `NotApplicable` carrying the property witness.
pub fn induced_condition(
    l: &FiniteLoop,
    phi: &PhiHom,
    kind: PropertyKind,
) -> Result<ConditionOutcome, PhiError> {
    if let Some(witness) = property_witness(l, kind) {
        return Ok(ConditionOutcome::NotApplicable(
            NotApplicable::BaseLacksProperty { witness },
        ));
    }
    let n = l.order();
    let lam = |x: Element| l.left_translation(x);
    let lam_inv = |x: Element| l.left_translation(x).inverse();
    let rho = |x: Element| l.right_translation(x);
    let rho_inv = |x: Element| l.right_translation(x).inverse();
    let m = |x: Element, y: Element| l.mul(x, y);

    // Sums a side given its terms as permutation words.
    let side = |words: Vec<Perm>| -> Result<crate::abelian::ModMatrix, PhiError> {
        let mut acc: Option<crate::abelian::ModMatrix> = None;
        for w in words {
            assert_eq!(w.apply(0), 0, "condition words must fix the identity");
            let img = phi.image(&w)?.clone();
            acc = Some(match acc {
                None => img,
                Some(a) => a.add(&img),
            });
        }
        Ok(acc.expect("every side has at least one term"))
    };

    let inv: Vec<Element> = if kind.needs_inverses() {
        (0..n)
            .map(|x| l.two_sided_inverse(x).expect("property check passed"))
            .collect()
    } else {
        Vec::new()
    };

    match kind {
        PropertyKind::TwoSidedInverse => {
            for (xi, &xv) in inv.iter().enumerate() {
                let lhs = side(vec![chain(&[rho(xv), lam(xi)])])?;
                let rhs = side(vec![chain(&[lam(xi), rho_inv(xi), lam(xv), lam(xi)])])?;
                if lhs != rhs {
                    return Ok(ConditionOutcome::Fails(Witness::One(xi)));
                }
            }
        }
        PropertyKind::LeftInverse => {
            for xi in 0..n {
                for eta in 0..n {
                    let lhs = side(vec![chain(&[lam_inv(eta), rho(m(xi, eta)), lam_inv(xi)])])?;
                    let rhs = side(vec![chain(&[
                        lam_inv(eta),
                        lam_inv(xi),
                        rho(eta),
                        lam(xi),
                        rho(xi),
                        lam_inv(xi),
                    ])])?;
                    if lhs != rhs {
                        return Ok(ConditionOutcome::Fails(Witness::Pair(xi, eta)));
                    }
                }
            }
        }
        PropertyKind::RightInverse => {
            for xi in 0..n {
                for (eta, &ev) in inv.iter().enumerate() {
                    let lhs = side(vec![chain(&[lam_inv(xi), lam(m(xi, eta)), lam(ev)])])?;
                    let rhs = side(vec![chain(&[
                        lam_inv(xi),
                        rho_inv(eta),
                        lam(xi),
                        rho(eta),
                        lam(eta),
                        lam(ev),
                    ])])?;
                    if lhs != rhs {
                        return Ok(ConditionOutcome::Fails(Witness::Pair(xi, eta)));
                    }
                }
            }
        }
        PropertyKind::Monoassociative => {
            for xi in 0..n {
                let sq = m(xi, xi);
                let cube = m(xi, sq);
                let lhs = side(vec![
                    chain(&[lam_inv(cube), rho(sq), lam(xi)]),
                    chain(&[lam_inv(cube), lam(xi), rho(xi), lam(xi)]),
                    chain(&[lam_inv(cube), lam(xi), lam(xi), lam(xi)]),
                ])?;
                let rhs = side(vec![
                    chain(&[lam_inv(cube), rho(xi), rho(xi), lam(xi)]),
                    chain(&[lam_inv(cube), rho(xi), lam(xi), lam(xi)]),
                    chain(&[lam_inv(cube), lam(sq), lam(xi)]),
                ])?;
                if lhs != rhs {
                    return Ok(ConditionOutcome::Fails(Witness::One(xi)));
                }
            }
        }
        PropertyKind::LeftAlternative => {
            for xi in 0..n {
                let sq = m(xi, xi);
                for eta in 0..n {
                    let xe = m(xi, eta);
                    let c1 = m(xi, xe);
                    let c2 = m(sq, eta);
                    let lhs = side(vec![
                        chain(&[lam_inv(c1), rho(xe), lam(xi)]),
                        chain(&[lam_inv(c1), lam(xi), rho(eta), lam(xi)]),
                    ])?;
                    let rhs = side(vec![
                        chain(&[lam_inv(c2), rho(eta), rho(xi), lam(xi)]),
                        chain(&[lam_inv(c2), rho(eta), lam(xi), lam(xi)]),
                    ])?;
                    if lhs != rhs {
                        return Ok(ConditionOutcome::Fails(Witness::Pair(xi, eta)));
                    }
                }
            }
        }
        PropertyKind::RightAlternative => {
            for xi in 0..n {
                let sq = m(xi, xi);
                for eta in 0..n {
                    let ex = m(eta, xi);
                    let c1 = m(ex, xi);
                    let c2 = m(eta, sq);
                    let lhs = side(vec![
                        chain(&[lam_inv(c1), rho(xi), lam(eta), lam(xi)]),
                        chain(&[lam_inv(c1), lam(ex), lam(xi)]),
                    ])?;
                    let rhs = side(vec![
                        chain(&[lam_inv(c2), lam(eta), rho(xi), lam(xi)]),
                        chain(&[lam_inv(c2), lam(eta), lam(xi), lam(xi)]),
                    ])?;
                    if lhs != rhs {
                        return Ok(ConditionOutcome::Fails(Witness::Pair(xi, eta)));
                    }
                }
            }
        }
        PropertyKind::Flexible => {
            for xi in 0..n {
                for eta in 0..n {
                    let ex = m(eta, xi);
                    let xe = m(xi, eta);
                    let c1 = m(xi, ex);
                    let c2 = m(xe, xi);
                    let lhs = side(vec![
                        chain(&[lam_inv(c1), rho(ex), lam(xi)]),
                        chain(&[lam_inv(c1), lam(xi), lam(eta), lam(xi)]),
                    ])?;
                    let rhs = side(vec![
                        chain(&[lam_inv(c2), rho(xi), rho(eta), lam(xi)]),
                        chain(&[lam_inv(c2), lam(xe), lam(xi)]),
                    ])?;
                    if lhs != rhs {
                        return Ok(ConditionOutcome::Fails(Witness::Pair(xi, eta)));
                    }
                }
            }
        }
        PropertyKind::LeftBol => {
            for xi in 0..n {
                for eta in 0..n {
                    let ex = m(eta, xi);
                    let d = m(xi, ex);
                    for zeta in 0..n {
                        let a = m(xi, zeta);
                        let b = m(eta, a);
                        let c1 = m(xi, b);
                        let c2 = m(d, zeta);
                        let lhs = side(vec![
                            chain(&[lam_inv(c1), rho(b), lam(xi)]),
                            chain(&[lam_inv(c1), lam(xi), lam(eta), rho(zeta), lam(xi)]),
                        ])?;
                        let rhs = side(vec![
                            chain(&[lam_inv(c2), rho(zeta), rho(ex), lam(xi)]),
                            chain(&[lam_inv(c2), rho(zeta), lam(xi), lam(eta), lam(xi)]),
                        ])?;
                        if lhs != rhs {
                            return Ok(ConditionOutcome::Fails(Witness::Triple(xi, eta, zeta)));
                        }
                    }
                }
            }
        }
        PropertyKind::RightBol => {
            for xi in 0..n {
                for eta in 0..n {
                    let u = m(xi, eta);
                    let v = m(u, xi);
                    for zeta in 0..n {
                        let w = m(zeta, xi);
                        let r = m(w, eta);
                        let c1 = m(zeta, v);
                        let c2 = m(r, xi);
                        let lhs = side(vec![
                            chain(&[lam_inv(c1), lam(zeta), rho(xi), rho(eta), lam(xi)]),
                            chain(&[lam_inv(c1), lam(zeta), lam(u), lam(xi)]),
                        ])?;
                        let rhs = side(vec![
                            chain(&[lam_inv(c2), rho(xi), rho(eta), lam(zeta), lam(xi)]),
                            chain(&[lam_inv(c2), lam(r), lam(xi)]),
                        ])?;
                        if lhs != rhs {
                            return Ok(ConditionOutcome::Fails(Witness::Triple(xi, eta, zeta)));
                        }
                    }
                }
            }
        }
    }
    Ok(ConditionOutcome::Holds)
}

/// One row of an extension audit: the property on the base, the cocycle
/// condition, and the property brute-forced on the materialized extension.
#[derive(Debug, Clone)]
pub struct ExtensionAudit {
    pub property: PropertyKind,
    pub base_has: bool,
    pub base_witness: Option<Witness>,
    pub condition: ConditionOutcome,
    pub extension_has: bool,
    pub extension_witness: Option<Witness>,
}

impl ExtensionAudit {
    /// The expected relationship: the extension has the property exactly when
    /// the base has it and the condition holds.
    pub fn consistent(&self) -> bool {
        self.extension_has == (self.base_has && self.condition.holds())
    }
}

/// Audits one property against an already-materialized extension table.
pub fn audit_property(c: &Cocycle, extension: &FiniteLoop, kind: PropertyKind) -> ExtensionAudit {
    let base_witness = property_witness(c.base(), kind);
    let extension_witness = property_witness(extension, kind);
    ExtensionAudit {
        property: kind,
        base_has: base_witness.is_none(),
        base_witness,
        condition: cocycle_condition(c, kind),
        extension_has: extension_witness.is_none(),
        extension_witness,
    }
}

/// Materializes the extension once and audits all nine properties.
pub fn audit_all(c: &Cocycle, cap: usize) -> Result<Vec<ExtensionAudit>, ExtensionError> {
    let extension = c.build_extension(cap)?;
    Ok(PropertyKind::ALL
        .iter()
        .map(|&kind| audit_property(c, &extension, kind))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_have_every_property() {
        let z5 = FiniteLoop::cyclic(5);
        for kind in PropertyKind::ALL {
            assert!(has_property(&z5, kind), "{kind} should hold on z5");
        }
        assert!(is_associative(&z5));
    }

    #[test]
    fn property_names_round_trip() {
        for kind in PropertyKind::ALL {
            assert_eq!(PropertyKind::parse(kind.name()), Some(kind));
        }
        assert_eq!(PropertyKind::parse("bogus"), None);
    }

    #[test]
    fn identity_cocycle_conditions_hold() {
        let c = Cocycle::identity(FiniteLoop::cyclic(4), crate::abelian::AbGroup::new(3, 1));
        for kind in PropertyKind::ALL {
            assert_eq!(cocycle_condition(&c, kind), ConditionOutcome::Holds);
        }
    }
}
