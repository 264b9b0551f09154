//! Permutations of `{0, .., n-1}` and brute-force closures of permutation sets.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images {images:?} are not a bijection: value {value} appears twice")]
    NotABijection { images: Vec<usize>, value: usize },
    #[error("image {value} out of range for degree {degree}")]
    OutOfRange { value: usize, degree: usize },
}

/// A permutation stored as its image array: `p.apply(i) == images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &v in &images {
            if v >= degree {
                return Err(PermError::OutOfRange { value: v, degree });
            }
            if seen[v] {
                return Err(PermError::NotABijection { images, value: v });
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "cannot compose permutations of different degrees"
        );
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `false` for even permutations, `true` for odd ones.
    pub fn is_odd(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosureError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator degree {found} does not match expected degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
}

/// Default cap on closure sizes; generous for every loop order this crate targets.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A finite permutation group materialized as its full, canonically sorted element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    /// Sorted lexicographically by image arrays; position 0 is not necessarily the identity.
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    /// Closes `generators` under composition, breadth-first from the identity.
    ///
    /// Inverses come for free in a finite closure. Fails once more than `cap`
    /// distinct elements have been produced.
    pub fn closure(
        degree: usize,
        generators: &[Perm],
        cap: usize,
    ) -> Result<PermGroup, ClosureError> {
        for g in generators {
            if g.degree() != degree {
                return Err(ClosureError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        seen.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            head += 1;
            for g in generators {
                let next = current.compose(g);
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(ClosureError::CapExceeded { cap });
                    }
                    seen.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(PermGroup {
            degree,
            elements,
            index,
        })
    }

    /// Builds a group from an explicit element list (already known to be closed).
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermGroup {
            degree,
            elements,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }
}
