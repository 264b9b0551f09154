//! Homomorphisms `Φ : Inn(L) → Aut(A)` and the extension cocycle they induce.
//!
//! A [`PhiHom`] stores the complete image map over `Inn(L)` and is only
//! constructible through paths that verify it really is a homomorphism. The
//! induced cocycle takes `P(ξ,η) = Φ(λ_{ξη}⁻¹ρ_ηλ_ξ)` and
//! `Q(ξ,η) = Φ(λ_{ξη}⁻¹λ_ξλ_η)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::abelian::{AbGroup, ModMatrix};
use crate::extension::Cocycle;
use crate::finite::FiniteLoop;
use crate::mapping::{inner_map_p, inner_map_q};
use crate::perm::{Perm, PermGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhiError {
    #[error("assignment for permutation [{perm}] maps outside the inner mapping group")]
    NotInDomain { perm: String },
    #[error("assignment for permutation [{perm}] is not an automorphism")]
    NotAutomorphism { perm: String },
    #[error("conflicting images for permutation [{perm}]")]
    Conflict { perm: String },
    #[error("generators span only {reached} of {expected} inner mappings")]
    Incomplete { reached: usize, expected: usize },
    #[error("not a homomorphism: images of [{p}] and [{q}] do not compose")]
    NotHomomorphism { p: String, q: String },
    #[error("matrix is not an involution, cannot drive a parity homomorphism")]
    NotInvolution,
}

/// A homomorphism from a permutation group into `Aut(A)`, stored extensionally.
#[derive(Debug, Clone)]
pub struct PhiHom {
    domain: PermGroup,
    kernel: AbGroup,
    images: HashMap<Perm, ModMatrix>,
}

impl PhiHom {
    /// Maps every element of the domain to the identity matrix.
    pub fn trivial(domain: PermGroup, kernel: AbGroup) -> PhiHom {
        let images = domain
            .elements()
            .iter()
            .map(|p| (p.clone(), ModMatrix::identity(kernel)))
            .collect();
        PhiHom {
            domain,
            kernel,
            images,
        }
    }

    /// Extends generator assignments to the whole domain by breadth-first
    /// closure, checking single-valuedness along the way, then verifies the
    /// homomorphism property over all pairs (cheap at the orders this crate
    /// supports) and that the domain is fully covered.
    pub fn from_generators(
        domain: PermGroup,
        kernel: AbGroup,
        assignments: &[(Perm, ModMatrix)],
    ) -> Result<PhiHom, PhiError> {
        for (p, m) in assignments {
            if !domain.contains(p) {
                return Err(PhiError::NotInDomain {
                    perm: p.to_string(),
                });
            }
            if !m.is_automorphism() {
                return Err(PhiError::NotAutomorphism {
                    perm: p.to_string(),
                });
            }
        }
        let mut images: HashMap<Perm, ModMatrix> = HashMap::new();
        let identity = Perm::identity(domain.degree());
        images.insert(identity.clone(), ModMatrix::identity(kernel));
        let mut queue = vec![identity];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            let current_image = images[&current].clone();
            for (gen, gen_image) in assignments {
                let next = current.compose(gen);
                let next_image = current_image.mul(gen_image);
                match images.get(&next) {
                    Some(existing) => {
                        if *existing != next_image {
                            return Err(PhiError::Conflict {
                                perm: next.to_string(),
                            });
                        }
                    }
                    None => {
                        images.insert(next.clone(), next_image);
                        queue.push(next);
                    }
                }
            }
        }
        if images.len() != domain.len() {
            return Err(PhiError::Incomplete {
                reached: images.len(),
                expected: domain.len(),
            });
        }
        let phi = PhiHom {
            domain,
            kernel,
            images,
        };
        phi.verify_homomorphism()?;
        Ok(phi)
    }

    /// `Φ(p) = M` for odd permutations, `I` for even ones; requires `M² = I`.
    pub fn from_parity(
        domain: PermGroup,
        kernel: AbGroup,
        m: ModMatrix,
    ) -> Result<PhiHom, PhiError> {
        if !m.mul(&m).is_identity() {
            return Err(PhiError::NotInvolution);
        }
        // Feed the full element list through the generator path so the same
        // closure and homomorphism verification runs.
        let assignments: Vec<(Perm, ModMatrix)> = domain
            .elements()
            .iter()
            .map(|p| {
                let image = if p.is_odd() {
                    m.clone()
                } else {
                    ModMatrix::identity(kernel)
                };
                (p.clone(), image)
            })
            .collect();
        PhiHom::from_generators(domain, kernel, &assignments)
    }

    fn verify_homomorphism(&self) -> Result<(), PhiError> {
        for p in self.domain.elements() {
            let ip = &self.images[p];
            for q in self.domain.elements() {
                let composed = p.compose(q);
                if self.images[&composed] != ip.mul(&self.images[q]) {
                    return Err(PhiError::NotHomomorphism {
                        p: p.to_string(),
                        q: q.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn kernel(&self) -> AbGroup {
        self.kernel
    }

    /// Image of a permutation, which must lie in the domain.
    pub fn image(&self, p: &Perm) -> Result<&ModMatrix, PhiError> {
        self.images.get(p).ok_or_else(|| PhiError::NotInDomain {
            perm: p.to_string(),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.images.values().all(|m| m.is_identity())
    }

    /// Deterministic listing of the image map, sorted by permutation.
    pub fn assignments(&self) -> Vec<(Perm, ModMatrix)> {
        let mut out: Vec<(Perm, ModMatrix)> = self
            .images
            .iter()
            .map(|(p, m)| (p.clone(), m.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// The cocycle induced by `Φ` on pairs of inner maps.
///
/// Every `P`/`Q` entry is the `Φ`-image of the corresponding inner map; the
/// normalization `P(ξ,0) = Q(0,η) = I` is inherited from the inner maps
/// collapsing to the identity there. Fails if some inner map eludes the
/// domain, which indicates `Φ` was built over the wrong group.
pub fn induced_cocycle(l: &FiniteLoop, phi: &PhiHom) -> Result<Cocycle, PhiError> {
    let n = l.order();
    let mut p = Vec::with_capacity(n * n);
    let mut q = Vec::with_capacity(n * n);
    for xi in 0..n {
        for eta in 0..n {
            p.push(phi.image(&inner_map_p(l, xi, eta))?.clone());
            q.push(phi.image(&inner_map_q(l, xi, eta))?.clone());
        }
    }
    Ok(Cocycle::from_tables(l.clone(), phi.kernel(), p, q)
        .expect("images of inner maps form a normalized cocycle"))
}
