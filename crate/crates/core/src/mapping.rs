//! The multiplication group `Mlt(L)`, the inner mapping group `Inn(L)`, and
//! the two families of inner maps attached to pairs of loop elements.
//!
//! `Mlt(L)` is the closure of all left and right translations; `Inn(L)` is its
//! stabilizer of the identity element 0. Since `Mlt(L)` acts transitively,
//! `|Mlt(L)| = n · |Inn(L)|` always holds and is asserted here.

use crate::finite::{Element, FiniteLoop};
use crate::perm::{ClosureError, Perm, PermGroup, DEFAULT_CLOSURE_CAP};

/// Closure of `{λ_x, ρ_x : x ∈ L}` under composition.
pub fn multiplication_group(l: &FiniteLoop, cap: usize) -> Result<PermGroup, ClosureError> {
    let n = l.order();
    let mut generators = Vec::with_capacity(2 * n);
    for x in 1..n {
        generators.push(l.left_translation(x));
        generators.push(l.right_translation(x));
    }
    PermGroup::closure(n, &generators, cap)
}

/// Stabilizer of the identity inside [`multiplication_group`].
pub fn inner_mapping_group(l: &FiniteLoop, cap: usize) -> Result<PermGroup, ClosureError> {
    let mlt = multiplication_group(l, cap)?;
    Ok(inner_from_mlt(l, &mlt))
}

/// Extracts `Inn(L)` from an already-computed `Mlt(L)`.
pub fn inner_from_mlt(l: &FiniteLoop, mlt: &PermGroup) -> PermGroup {
    let fixing: Vec<Perm> = mlt
        .elements()
        .iter()
        .filter(|p| p.apply(0) == 0)
        .cloned()
        .collect();
    let inn = PermGroup::from_elements(l.order(), fixing);
    // Transitivity of Mlt(L) forces the orbit-stabilizer count.
    assert_eq!(
        mlt.len(),
        l.order() * inn.len(),
        "|Mlt| must equal order × |Inn|"
    );
    inn
}

/// Convenience wrapper using the default closure cap.
pub fn mlt_and_inn(l: &FiniteLoop) -> Result<(PermGroup, PermGroup), ClosureError> {
    let mlt = multiplication_group(l, DEFAULT_CLOSURE_CAP)?;
    let inn = inner_from_mlt(l, &mlt);
    Ok((mlt, inn))
}

/// The inner map `λ_{ξη}⁻¹ ∘ ρ_η ∘ λ_ξ`; always fixes 0.
///
/// In a group this is conjugation by `η`; for `η = 0` it is the identity.
pub fn inner_map_p(l: &FiniteLoop, xi: Element, eta: Element) -> Perm {
    let prod = l.mul(xi, eta);
    let composite = l
        .left_translation(prod)
        .inverse()
        .compose(&l.right_translation(eta))
        .compose(&l.left_translation(xi));
    debug_assert_eq!(composite.apply(0), 0);
    composite
}

/// The inner map `λ_{ξη}⁻¹ ∘ λ_ξ ∘ λ_η`; always fixes 0.
///
/// In a group this is the identity map for every pair.
pub fn inner_map_q(l: &FiniteLoop, xi: Element, eta: Element) -> Perm {
    let prod = l.mul(xi, eta);
    let composite = l
        .left_translation(prod)
        .inverse()
        .compose(&l.left_translation(xi))
        .compose(&l.left_translation(eta));
    debug_assert_eq!(composite.apply(0), 0);
    composite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteLoop;

    #[test]
    fn mlt_of_z4_is_z4() {
        let z4 = FiniteLoop::cyclic(4);
        let (mlt, inn) = mlt_and_inn(&z4).unwrap();
        assert_eq!(mlt.len(), 4);
        assert_eq!(inn.len(), 1);
        assert!(inn.elements()[0].is_identity());
    }

    #[test]
    fn inner_maps_fix_identity_and_live_in_inn() {
        let z4 = FiniteLoop::cyclic(4);
        let (_, inn) = mlt_and_inn(&z4).unwrap();
        for xi in 0..4 {
            for eta in 0..4 {
                let p = inner_map_p(&z4, xi, eta);
                let q = inner_map_q(&z4, xi, eta);
                assert_eq!(p.apply(0), 0);
                assert_eq!(q.apply(0), 0);
                assert!(inn.contains(&p));
                assert!(inn.contains(&q));
            }
        }
    }

    #[test]
    fn p_with_identity_arguments() {
        let z4 = FiniteLoop::cyclic(4);
        for xi in 0..4 {
            // ρ_0 is the identity, so λ_ξ⁻¹ ∘ λ_ξ cancels.
            assert!(inner_map_p(&z4, xi, 0).is_identity());
        }
        for eta in 0..4 {
            assert!(inner_map_q(&z4, 0, eta).is_identity());
        }
    }

    #[test]
    fn closure_cap_propagates() {
        let z4 = FiniteLoop::cyclic(4);
        assert!(multiplication_group(&z4, 2).is_err());
    }
}
