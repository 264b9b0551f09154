//! Exhaustive enumeration of small loops as normalized Cayley tables.
//!
//! Tables are normalized so that element 0 is the identity: row 0 and column
//! 0 are fixed, and the remaining cells are filled row-major with candidate
//! values tried in ascending order. The enumeration order — and therefore the
//! first table returned under any filter — is deterministic.
//!
//! Pruning happens at three levels. Latin constraints are enforced per cell
//! with row/column bitmasks. Properties expressible through left translations
//! (`λ_{x²} = λ_x λ_x` for left alternative, `λ_{x·yx} = λ_x λ_y λ_x` for
//! left Bol) force entire future rows as soon as their inputs are complete;
//! a forced row that conflicts with an earlier forcing or an existing column
//! entry kills the subtree before any of its cells are tried. All other
//! requested properties (plus the ones they imply) are re-checked after each
//! completed row on every instance whose lookups are already defined.
//! Associativity has no partial signal, so the nonassociativity filter is
//! applied to completed tables only.

use std::fmt;

use crate::conditions::{associativity_witness, has_property, PropertyKind};
use crate::finite::{CayleyTable, FiniteLoop};

pub const MAX_SEARCH_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    UnsupportedOrder { order: usize, max: usize },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::UnsupportedOrder { order, max } => {
                write!(
                    f,
                    "search order {order} exceeds the supported maximum {max}"
                )
            }
        }
    }
}

impl std::error::Error for SearchError {}

/// What the enumeration keeps: loops with every property in `require`,
/// optionally restricted to nonassociative ones.
#[derive(Debug, Clone, Default)]
pub struct SearchFilter {
    pub require: Vec<PropertyKind>,
    pub nonassociative: bool,
}

impl SearchFilter {
    /// The requested properties together with the properties they imply,
    /// which prune earlier because their instances complete sooner.
    fn effective(&self) -> Vec<PropertyKind> {
        let mut out = self.require.clone();
        let push = |k: PropertyKind, out: &mut Vec<PropertyKind>| {
            if !out.contains(&k) {
                out.push(k);
            }
        };
        for kind in self.require.clone() {
            match kind {
                PropertyKind::LeftBol => {
                    push(PropertyKind::LeftAlternative, &mut out);
                    push(PropertyKind::Monoassociative, &mut out);
                }
                PropertyKind::RightBol => {
                    push(PropertyKind::RightAlternative, &mut out);
                    push(PropertyKind::Monoassociative, &mut out);
                }
                PropertyKind::LeftAlternative
                | PropertyKind::RightAlternative
                | PropertyKind::Flexible => {
                    push(PropertyKind::Monoassociative, &mut out);
                }
                PropertyKind::LeftInverse | PropertyKind::RightInverse => {
                    push(PropertyKind::TwoSidedInverse, &mut out);
                }
                _ => {}
            }
        }
        out
    }
}

/// Enumerates normalized loops of the given order passing `filter`, in
/// deterministic lexicographic order, stopping after `limit` results.
pub fn enumerate_loops(
    order: usize,
    filter: &SearchFilter,
    limit: usize,
) -> Result<Vec<FiniteLoop>, SearchError> {
    if order == 0 || order > MAX_SEARCH_ORDER {
        return Err(SearchError::UnsupportedOrder {
            order,
            max: MAX_SEARCH_ORDER,
        });
    }
    if limit == 0 {
        return Ok(Vec::new());
    }
    if order == 1 {
        let trivial = FiniteLoop::cyclic(1);
        let keep = !filter.nonassociative;
        return Ok(if keep { vec![trivial] } else { Vec::new() });
    }

    let effective = filter.effective();
    let la_forcing = effective.contains(&PropertyKind::LeftAlternative);
    let lbol_forcing = effective.contains(&PropertyKind::LeftBol);
    let scanned: Vec<PropertyKind> = effective
        .iter()
        .copied()
        .filter(|k| {
            !(la_forcing && *k == PropertyKind::LeftAlternative)
                && !(lbol_forcing && *k == PropertyKind::LeftBol)
        })
        .collect();

    let mut s = Searcher {
        n: order,
        grid: vec![EMPTY; order * order],
        row_mask: vec![0u32; order],
        col_mask: vec![0u32; order],
        forced: vec![None; order * order],
        la_forcing,
        lbol_forcing,
        scanned,
        nonassociative: filter.nonassociative,
        limit,
        out: Vec::new(),
    };
    for c in 0..order {
        s.place(0, c, c);
    }
    for r in 1..order {
        s.place(r, 0, r);
    }
    s.fill_row(1);
    Ok(s.out)
}

const EMPTY: usize = usize::MAX;

struct Searcher {
    n: usize,
    grid: Vec<usize>,
    row_mask: Vec<u32>,
    col_mask: Vec<u32>,
    forced: Vec<Option<usize>>,
    la_forcing: bool,
    lbol_forcing: bool,
    scanned: Vec<PropertyKind>,
    nonassociative: bool,
    limit: usize,
    out: Vec<FiniteLoop>,
}

impl Searcher {
    fn at(&self, x: usize, y: usize) -> usize {
        self.grid[x * self.n + y]
    }

    fn place(&mut self, x: usize, y: usize, v: usize) {
        self.grid[x * self.n + y] = v;
        self.row_mask[x] |= 1 << v;
        self.col_mask[y] |= 1 << v;
    }

    fn unplace(&mut self, x: usize, y: usize, v: usize) {
        self.grid[x * self.n + y] = EMPTY;
        self.row_mask[x] &= !(1 << v);
        self.col_mask[y] &= !(1 << v);
    }

    fn pmul(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.at(x, y);
        (v != EMPTY).then_some(v)
    }

    /// Fills the cells of row `r` starting at column 1, then recurses.
    fn fill_row(&mut self, r: usize) {
        self.fill_cell(r, 1);
    }

    fn fill_cell(&mut self, r: usize, c: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if c == self.n {
            self.row_completed(r);
            return;
        }
        let candidates: Vec<usize> = match self.forced[r * self.n + c] {
            Some(v) => vec![v],
            None => (0..self.n).collect(),
        };
        for v in candidates {
            let bit = 1u32 << v;
            if self.row_mask[r] & bit != 0 || self.col_mask[c] & bit != 0 {
                continue;
            }
            self.place(r, c, v);
            self.fill_cell(r, c + 1);
            self.unplace(r, c, v);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }

    /// Row `r` is complete: verify, derive forcings, and descend or emit.
    fn row_completed(&mut self, r: usize) {
        let mut trail: Vec<usize> = Vec::new();
        let ok = self.derive_and_check(r, &mut trail);
        if ok {
            if r + 1 == self.n {
                self.emit();
            } else {
                self.fill_row(r + 1);
            }
        }
        for idx in trail {
            self.forced[idx] = None;
        }
    }

    /// Applies the λ-level identities made decidable by the completion of row
    /// `r` (verifying completed targets, forcing future ones) and re-runs the
    /// partial instance scan for the other tracked properties.
    fn derive_and_check(&mut self, r: usize, trail: &mut Vec<usize>) -> bool {
        if self.la_forcing {
            // λ_{x²} = λ_x λ_x for every x whose square is known; row x must
            // be complete, so x ≤ r, and the pair is new only when x == r or
            // the target row was previously out of reach.
            for x in 0..=r {
                let sq = self.at(x, x);
                let images: Vec<usize> = (0..self.n).map(|z| self.at(x, self.at(x, z))).collect();
                if !self.handle_lambda(r, x, sq, &images, trail) {
                    return false;
                }
            }
        }
        if self.lbol_forcing {
            // λ_{x·yx} = λ_x λ_y λ_x for x, y with complete rows.
            for x in 0..=r {
                for y in 0..=r {
                    let yx = self.at(y, x);
                    let target = self.at(x, yx);
                    let images: Vec<usize> = (0..self.n)
                        .map(|z| self.at(x, self.at(y, self.at(x, z))))
                        .collect();
                    if !self.handle_lambda(r, x.max(y), target, &images, trail) {
                        return false;
                    }
                }
            }
        }
        for kind in self.scanned.clone() {
            if !self.scan_property(kind) {
                return false;
            }
        }
        true
    }

    /// One λ-identity `λ_target = composite` whose inputs completed at row
    /// `newest`. Verifies it if row `target` is already filled, otherwise
    /// records the forced row, pruning on any conflict.
    fn handle_lambda(
        &mut self,
        r: usize,
        newest: usize,
        target: usize,
        images: &[usize],
        trail: &mut Vec<usize>,
    ) -> bool {
        if target <= r {
            // Re-verify only identities that gained new inputs this row;
            // older ones were verified when their own rows completed.
            if newest < r && target < r {
                return true;
            }
            (0..self.n).all(|z| self.at(target, z) == images[z])
        } else {
            for (z, &v) in images.iter().enumerate().skip(1) {
                let idx = target * self.n + z;
                match self.forced[idx] {
                    Some(w) if w != v => return false,
                    Some(_) => {}
                    None => {
                        // The column already holding v in an earlier row can
                        // never legally hold it again in row `target`.
                        if self.col_mask[z] & (1 << v) != 0 {
                            return false;
                        }
                        self.forced[idx] = Some(v);
                        trail.push(idx);
                    }
                }
            }
            true
        }
    }

    fn pleft_inverse(&self, x: usize) -> Option<usize> {
        (0..self.n).find(|&w| self.at(w, x) == 0)
    }

    fn pright_inverse(&self, x: usize) -> Option<usize> {
        (0..self.n).find(|&z| self.at(x, z) == 0)
    }

    /// Checks every instance of `kind` whose lookups are all defined in the
    /// current partial table; returns false on a definite violation.
    fn scan_property(&self, kind: PropertyKind) -> bool {
        let n = self.n;
        match kind {
            PropertyKind::TwoSidedInverse => {
                (0..n).all(|x| match (self.pleft_inverse(x), self.pright_inverse(x)) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                })
            }
            PropertyKind::LeftInverse => (0..n).all(|x| {
                let (Some(a), Some(b)) = (self.pleft_inverse(x), self.pright_inverse(x)) else {
                    return true;
                };
                if a != b {
                    return false;
                }
                (0..n).all(|y| {
                    self.pmul(x, y)
                        .and_then(|xy| self.pmul(a, xy))
                        .is_none_or(|res| res == y)
                })
            }),
            PropertyKind::RightInverse => (0..n).all(|x| {
                let (Some(a), Some(b)) = (self.pleft_inverse(x), self.pright_inverse(x)) else {
                    return true;
                };
                if a != b {
                    return false;
                }
                (0..n).all(|y| {
                    self.pmul(y, x)
                        .and_then(|yx| self.pmul(yx, a))
                        .is_none_or(|res| res == y)
                })
            }),
            PropertyKind::Monoassociative => (0..n).all(|x| {
                let lhs = self.pmul(x, x).and_then(|sq| self.pmul(x, sq));
                let rhs = self.pmul(x, x).and_then(|sq| self.pmul(sq, x));
                match (lhs, rhs) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                }
            }),
            PropertyKind::LeftAlternative => (0..n).all(|x| {
                (0..n).all(|y| {
                    let lhs = self.pmul(x, y).and_then(|xy| self.pmul(x, xy));
                    let rhs = self.pmul(x, x).and_then(|sq| self.pmul(sq, y));
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => a == b,
                        _ => true,
                    }
                })
            }),
            PropertyKind::RightAlternative => (0..n).all(|x| {
                (0..n).all(|y| {
                    let lhs = self.pmul(y, x).and_then(|yx| self.pmul(yx, x));
                    let rhs = self.pmul(x, x).and_then(|sq| self.pmul(y, sq));
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => a == b,
                        _ => true,
                    }
                })
            }),
            PropertyKind::Flexible => (0..n).all(|x| {
                (0..n).all(|y| {
                    let lhs = self.pmul(y, x).and_then(|yx| self.pmul(x, yx));
                    let rhs = self.pmul(x, y).and_then(|xy| self.pmul(xy, x));
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => a == b,
                        _ => true,
                    }
                })
            }),
            PropertyKind::LeftBol => (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        let lhs = self
                            .pmul(y, x)
                            .and_then(|yx| self.pmul(x, yx))
                            .and_then(|xyx| self.pmul(xyx, z));
                        let rhs = self
                            .pmul(x, z)
                            .and_then(|xz| self.pmul(y, xz))
                            .and_then(|yxz| self.pmul(x, yxz));
                        match (lhs, rhs) {
                            (Some(a), Some(b)) => a == b,
                            _ => true,
                        }
                    })
                })
            }),
            PropertyKind::RightBol => (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        let lhs = self
                            .pmul(x, y)
                            .and_then(|xy| self.pmul(xy, x))
                            .and_then(|xyx| self.pmul(z, xyx));
                        let rhs = self
                            .pmul(z, x)
                            .and_then(|zx| self.pmul(zx, y))
                            .and_then(|zxy| self.pmul(zxy, x));
                        match (lhs, rhs) {
                            (Some(a), Some(b)) => a == b,
                            _ => true,
                        }
                    })
                })
            }),
        }
    }

    fn emit(&mut self) {
        let table = CayleyTable::from_flat(self.n, self.grid.clone());
        let l = FiniteLoop::from_table(table).expect("search grids satisfy the loop axioms");
        if self.nonassociative && associativity_witness(&l).is_none() {
            return;
        }
        for kind in &self.scanned {
            assert!(
                has_property(&l, *kind),
                "partial pruning let a non-{kind} table through"
            );
        }
        self.out.push(l);
    }
}
