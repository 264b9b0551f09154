//! Extensions of a finite loop by an abelian kernel, driven by a cocycle pair
//! `(P, Q)` of automorphisms, plus linear quasigroups over an abelian group.
//!
//! The product on pairs is
//! `(ξ, x) · (η, y) = (ξη, P(ξ,η)x + Q(ξ,η)y)`,
//! normalized so that `P(ξ, 0) = Q(0, η) = I`; the divisions solve that
//! equation for the fiber component:
//! `(ξ, x) \ (η, y) = (ξ\η, Q(ξ, ξ\η)⁻¹(y − P(ξ, ξ\η)x))` and
//! `(η, y) / (ξ, x) = (η/ξ, P(η/ξ, ξ)⁻¹(y − Q(η/ξ, ξ)x))`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::abelian::{random_automorphism, AbGroup, AbVec, AbelianError, ModMatrix};
use crate::finite::{CayleyTable, Element, FiniteLoop};

/// Default cap on the order of a materialized extension table.
pub const DEFAULT_EXTENSION_CAP: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("entry {which}({xi},{eta}) is not an automorphism")]
    NotAutomorphism { which: char, xi: usize, eta: usize },
    #[error("normalization broken: {which}({xi},{eta}) must be the identity matrix")]
    NotNormalized { which: char, xi: usize, eta: usize },
    #[error("expected {expected} matrices per family for a loop of order {order}, got {found}")]
    WrongShape {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("kernel mismatch: cocycle over {expected}, entry over {found}")]
    KernelMismatch { expected: String, found: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("extension of order {order} exceeds the cap of {cap} elements")]
    TooLarge { order: usize, cap: usize },
    #[error(transparent)]
    Kernel(#[from] AbelianError),
}

/// An element `(ξ, x)` of an extension: base loop element plus kernel vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub base: Element,
    pub fiber: AbVec,
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base, self.fiber)
    }
}

/// A normalized cocycle `(P, Q)` over a base loop and abelian kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    base: FiniteLoop,
    kernel: AbGroup,
    p: Vec<ModMatrix>, // p[ξ·n + η] = P(ξ, η)
    q: Vec<ModMatrix>,
}

impl Cocycle {
    /// The identity cocycle: every entry is `I`, so the extension is the
    /// direct product `L × A`.
    pub fn identity(base: FiniteLoop, kernel: AbGroup) -> Cocycle {
        let n = base.order();
        let id = ModMatrix::identity(kernel);
        Cocycle {
            base,
            kernel,
            p: vec![id.clone(); n * n],
            q: vec![id; n * n],
        }
    }

    /// Validates shape, normalization (`P(ξ,0) = Q(0,η) = I`) and that every
    /// entry is an automorphism.
    pub fn from_tables(
        base: FiniteLoop,
        kernel: AbGroup,
        p: Vec<ModMatrix>,
        q: Vec<ModMatrix>,
    ) -> Result<Cocycle, CocycleError> {
        let n = base.order();
        for (family, table) in [('P', &p), ('Q', &q)] {
            if table.len() != n * n {
                return Err(CocycleError::WrongShape {
                    order: n,
                    expected: n * n,
                    found: table.len(),
                });
            }
            for (i, m) in table.iter().enumerate() {
                let (xi, eta) = (i / n, i % n);
                if m.group() != kernel {
                    return Err(CocycleError::KernelMismatch {
                        expected: kernel.to_string(),
                        found: m.group().to_string(),
                    });
                }
                if !m.is_automorphism() {
                    return Err(CocycleError::NotAutomorphism {
                        which: family,
                        xi,
                        eta,
                    });
                }
            }
        }
        for xi in 0..n {
            if !p[xi * n].is_identity() {
                return Err(CocycleError::NotNormalized {
                    which: 'P',
                    xi,
                    eta: 0,
                });
            }
        }
        for (eta, q0) in q.iter().take(n).enumerate() {
            if !q0.is_identity() {
                return Err(CocycleError::NotNormalized {
                    which: 'Q',
                    xi: 0,
                    eta,
                });
            }
        }
        Ok(Cocycle { base, kernel, p, q })
    }

    /// Entrywise random automorphisms, then normalized.
    pub fn random<R: Rng>(base: FiniteLoop, kernel: AbGroup, rng: &mut R) -> Cocycle {
        let n = base.order();
        let id = ModMatrix::identity(kernel);
        let mut p = Vec::with_capacity(n * n);
        let mut q = Vec::with_capacity(n * n);
        for xi in 0..n {
            for eta in 0..n {
                p.push(if eta == 0 {
                    id.clone()
                } else {
                    random_automorphism(kernel, rng)
                });
                q.push(if xi == 0 {
                    id.clone()
                } else {
                    random_automorphism(kernel, rng)
                });
            }
        }
        Cocycle { base, kernel, p, q }
    }

    pub fn base(&self) -> &FiniteLoop {
        &self.base
    }

    pub fn kernel(&self) -> AbGroup {
        self.kernel
    }

    pub fn p(&self, xi: Element, eta: Element) -> &ModMatrix {
        &self.p[xi * self.base.order() + eta]
    }

    pub fn q(&self, xi: Element, eta: Element) -> &ModMatrix {
        &self.q[xi * self.base.order() + eta]
    }

    /// Order of the extension, `None` when the kernel is infinite.
    pub fn extension_order(&self) -> Option<usize> {
        self.kernel.order().map(|a| a * self.base.order())
    }

    /// `(ξ, x) · (η, y)`
    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let p = self.p(a.base, b.base).apply(&a.fiber);
        let q = self.q(a.base, b.base).apply(&b.fiber);
        ExtElement {
            base: self.base.mul(a.base, b.base),
            fiber: p.add(&q),
        }
    }

    /// `(ξ, x) \ (η, y)`
    pub fn ldiv(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let s = self.base.ldiv(a.base, b.base);
        let rhs = b.fiber.sub(&self.p(a.base, s).apply(&a.fiber));
        let fiber = self
            .q(a.base, s)
            .invert()
            .expect("cocycle entries are invertible")
            .apply(&rhs);
        ExtElement { base: s, fiber }
    }

    /// `(η, y) / (ξ, x)`
    pub fn rdiv(&self, b: &ExtElement, a: &ExtElement) -> ExtElement {
        let s = self.base.rdiv(b.base, a.base);
        let rhs = b.fiber.sub(&self.q(s, a.base).apply(&a.fiber));
        let fiber = self
            .p(s, a.base)
            .invert()
            .expect("cocycle entries are invertible")
            .apply(&rhs);
        ExtElement { base: s, fiber }
    }

    pub fn identity_element(&self) -> ExtElement {
        ExtElement {
            base: 0,
            fiber: self.kernel.zero(),
        }
    }

    /// Index of `(ξ, x)` in the materialized table: base-major, kernel
    /// elements in lexicographic coordinate order.
    pub fn element_index(&self, e: &ExtElement) -> usize {
        let a = self.kernel.order().expect("finite kernel required");
        e.base * a + self.kernel.rank_of(&e.fiber)
    }

    pub fn element_at(&self, index: usize) -> ExtElement {
        let a = self.kernel.order().expect("finite kernel required");
        ExtElement {
            base: index / a,
            fiber: self.kernel.unrank(index % a),
        }
    }

    /// Materializes the extension as a Cayley table and validates it as a loop.
    pub fn build_extension(&self, cap: usize) -> Result<FiniteLoop, ExtensionError> {
        let a = self
            .kernel
            .order()
            .ok_or_else(|| AbelianError::InfiniteGroup {
                spec: self.kernel.to_string(),
            })?;
        let order = a * self.base.order();
        if order > cap {
            return Err(ExtensionError::TooLarge { order, cap });
        }
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            let x = self.element_at(i);
            for j in 0..order {
                let y = self.element_at(j);
                entries.push(self.element_index(&self.mul(&x, &y)));
            }
        }
        let table = CayleyTable::from_flat(order, entries);
        Ok(FiniteLoop::from_table(table).expect("cocycle extension is always a loop"))
    }

    /// The cocycle of the opposite extension: over the opposite base loop,
    /// with `P°(ξ,η) = Q(η,ξ)` and `Q°(ξ,η) = P(η,ξ)`.
    pub fn opposite(&self) -> Cocycle {
        let n = self.base.order();
        let mut p = Vec::with_capacity(n * n);
        let mut q = Vec::with_capacity(n * n);
        for xi in 0..n {
            for eta in 0..n {
                p.push(self.q(eta, xi).clone());
                q.push(self.p(eta, xi).clone());
            }
        }
        Cocycle {
            base: self.base.opposite(),
            kernel: self.kernel,
            p,
            q,
        }
    }
}

/// A linear quasigroup over an abelian group: `x · y = φ(x) + ψ(y) + c`
/// with `φ, ψ` automorphisms and a constant `c`.
#[derive(Debug, Clone)]
pub struct LinearQuasigroup {
    group: AbGroup,
    phi: ModMatrix,
    psi: ModMatrix,
    phi_inv: ModMatrix,
    psi_inv: ModMatrix,
    c: AbVec,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearError {
    #[error("{which} is not an automorphism of {group}")]
    NotAutomorphism { which: &'static str, group: String },
}

impl LinearQuasigroup {
    pub fn new(phi: ModMatrix, psi: ModMatrix, c: AbVec) -> Result<LinearQuasigroup, LinearError> {
        let group = c.group();
        assert_eq!(phi.group(), group, "group mismatch");
        assert_eq!(psi.group(), group, "group mismatch");
        let phi_inv = phi.invert().map_err(|_| LinearError::NotAutomorphism {
            which: "phi",
            group: group.to_string(),
        })?;
        let psi_inv = psi.invert().map_err(|_| LinearError::NotAutomorphism {
            which: "psi",
            group: group.to_string(),
        })?;
        Ok(LinearQuasigroup {
            group,
            phi,
            psi,
            phi_inv,
            psi_inv,
            c,
        })
    }

    pub fn group(&self) -> AbGroup {
        self.group
    }

    /// `x · y = φ(x) + ψ(y) + c`
    pub fn mul(&self, x: &AbVec, y: &AbVec) -> AbVec {
        self.phi.apply(x).add(&self.psi.apply(y)).add(&self.c)
    }

    /// `x \ y = ψ⁻¹(y − φ(x) − c)`
    pub fn ldiv(&self, x: &AbVec, y: &AbVec) -> AbVec {
        self.psi_inv.apply(&y.sub(&self.phi.apply(x)).sub(&self.c))
    }

    /// `y / x = φ⁻¹(y − ψ(x) − c)`
    pub fn rdiv(&self, y: &AbVec, x: &AbVec) -> AbVec {
        self.phi_inv.apply(&y.sub(&self.psi.apply(x)).sub(&self.c))
    }

    /// Materializes the Cayley table over the kernel's lexicographic
    /// element order. Requires a finite group.
    pub fn table(&self) -> Result<CayleyTable, AbelianError> {
        let elems = self.group.elements()?;
        let n = elems.len();
        let mut entries = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                entries.push(self.group.rank_of(&self.mul(x, y)));
            }
        }
        Ok(CayleyTable::from_flat(n, entries))
    }
}
