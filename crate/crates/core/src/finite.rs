//! Finite quasigroups and loops as explicit Cayley tables.
//!
//! Conventions used throughout the crate:
//! * elements are the indices `0, .., n-1`;
//! * a loop's identity element sits at index 0 (row 0 and column 0 are the
//!   identity row/column) — tables that merely contain an identity somewhere
//!   else are rejected, not renormalized;
//! * `mul(x, y)` is `x · y`, `ldiv(x, y)` is `x \ y` (the unique `z` with
//!   `x · z = y`), and `rdiv(y, x)` is `y / x` (the unique `z` with `z · x = y`).

use std::fmt;

use thiserror::Error;

use crate::perm::Perm;

/// Index of a quasigroup element within its Cayley table.
pub type Element = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
}

/// A square multiplication table with entries in `0..n`.
///
/// Construction checks only the shape and entry range; use
/// [`validate_quasigroup`] / [`validate_loop`] for the algebraic structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>, // row-major
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<CayleyTable, TableError> {
        let order = rows.len();
        if order == 0 {
            return Err(TableError::Empty);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(TableError::RaggedRow {
                    row: r,
                    expected: order,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(TableError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order,
                    });
                }
                entries.push(v);
            }
        }
        Ok(CayleyTable { order, entries })
    }

    pub(crate) fn from_flat(order: usize, entries: Vec<usize>) -> CayleyTable {
        debug_assert_eq!(entries.len(), order * order);
        debug_assert!(entries.iter().all(|&v| v < order));
        CayleyTable { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, x: Element, y: Element) -> Element {
        self.entries[x * self.order + y]
    }

    pub fn row(&self, x: Element) -> &[usize] {
        &self.entries[x * self.order..(x + 1) * self.order]
    }

    /// The transposed table: `entry'(x, y) = entry(y, x)`.
    pub fn transposed(&self) -> CayleyTable {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[y * n + x] = self.entry(x, y);
            }
        }
        CayleyTable { order: n, entries }
    }
}

/// A single structural defect found while validating a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    /// `value` appears at both `first` and `second` within row `row`.
    RowDuplicate {
        row: usize,
        value: usize,
        first: usize,
        second: usize,
    },
    /// `value` appears at both rows `first` and `second` within column `col`.
    ColDuplicate {
        col: usize,
        value: usize,
        first: usize,
        second: usize,
    },
    /// Row 0 is not the identity row: `0 · y != y`.
    NotLeftIdentity { y: usize, product: usize },
    /// Column 0 is not the identity column: `x · 0 != x`.
    NotRightIdentity { x: usize, product: usize },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::RowDuplicate {
                row,
                value,
                first,
                second,
            } => write!(
                f,
                "row {row} is not a permutation: value {value} at columns {first} and {second}"
            ),
            Problem::ColDuplicate {
                col,
                value,
                first,
                second,
            } => write!(
                f,
                "column {col} is not a permutation: value {value} at rows {first} and {second}"
            ),
            Problem::NotLeftIdentity { y, product } => {
                write!(f, "0 is not a left identity: 0*{y} = {product}")
            }
            Problem::NotRightIdentity { x, product } => {
                write!(f, "0 is not a right identity: {x}*0 = {product}")
            }
        }
    }
}

/// Outcome of a structural validation pass; empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub problems: Vec<Problem>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.problems.is_empty() {
            return write!(f, "valid");
        }
        for (i, p) in self.problems.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Checks that every row and every column of the table is a permutation.
pub fn validate_quasigroup(table: &CayleyTable) -> ValidationReport {
    let n = table.order();
    let mut problems = Vec::new();
    for x in 0..n {
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            let v = table.entry(x, y);
            if seen[v] != usize::MAX {
                problems.push(Problem::RowDuplicate {
                    row: x,
                    value: v,
                    first: seen[v],
                    second: y,
                });
            } else {
                seen[v] = y;
            }
        }
    }
    for y in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let v = table.entry(x, y);
            if seen[v] != usize::MAX {
                problems.push(Problem::ColDuplicate {
                    col: y,
                    value: v,
                    first: seen[v],
                    second: x,
                });
            } else {
                seen[v] = x;
            }
        }
    }
    ValidationReport { problems }
}

/// Checks the quasigroup structure plus the identity at index 0.
pub fn validate_loop(table: &CayleyTable) -> ValidationReport {
    let mut report = validate_quasigroup(table);
    let n = table.order();
    for y in 0..n {
        let v = table.entry(0, y);
        if v != y {
            report
                .problems
                .push(Problem::NotLeftIdentity { y, product: v });
        }
    }
    for x in 0..n {
        let v = table.entry(x, 0);
        if v != x {
            report
                .problems
                .push(Problem::NotRightIdentity { x, product: v });
        }
    }
    report
}

/// Searches for a two-sided identity element anywhere in a quasigroup table.
pub fn find_identity(table: &CayleyTable) -> Option<Element> {
    let n = table.order();
    (0..n)
        .find(|&e| (0..n).all(|y| table.entry(e, y) == y) && (0..n).all(|x| table.entry(x, e) == x))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoopError {
    #[error("table is not a loop:\n{0}")]
    Invalid(ValidationReport),
}

/// A validated loop: a quasigroup table with identity at index 0 and
/// precomputed division tables for O(1) `ldiv`/`rdiv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLoop {
    table: CayleyTable,
    ldiv: Vec<usize>, // ldiv[x][y] = x \ y
    rdiv: Vec<usize>, // rdiv[y][x] = y / x
}

impl FiniteLoop {
    pub fn from_table(table: CayleyTable) -> Result<FiniteLoop, LoopError> {
        let report = validate_loop(&table);
        if !report.is_valid() {
            return Err(LoopError::Invalid(report));
        }
        let n = table.order();
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = table.entry(x, y);
                ldiv[x * n + p] = y; // x · y = p  =>  x \ p = y
                rdiv[p * n + y] = x; // x · y = p  =>  p / y = x
            }
        }
        Ok(FiniteLoop { table, ldiv, rdiv })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> FiniteLoop {
        assert!(n > 0);
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                entries.push((x + y) % n);
            }
        }
        FiniteLoop::from_table(CayleyTable::from_flat(n, entries)).expect("cyclic table is a loop")
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    /// `x · y`
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table.entry(x, y)
    }

    /// `x \ y`: the unique `z` with `x · z = y`.
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        self.ldiv[x * self.order() + y]
    }

    /// `y / x`: the unique `z` with `z · x = y`.
    pub fn rdiv(&self, y: Element, x: Element) -> Element {
        self.rdiv[y * self.order() + x]
    }

    /// λ_x : y ↦ x · y (row x as a permutation).
    pub fn left_translation(&self, x: Element) -> Perm {
        Perm::from_images(self.table.row(x).to_vec()).expect("loop rows are permutations")
    }

    /// ρ_x : y ↦ y · x (column x as a permutation).
    pub fn right_translation(&self, x: Element) -> Perm {
        let n = self.order();
        Perm::from_images((0..n).map(|y| self.table.entry(y, x)).collect())
            .expect("loop columns are permutations")
    }

    /// The opposite loop `x ⋆ y = y · x`; left and right divisions swap roles.
    pub fn opposite(&self) -> FiniteLoop {
        FiniteLoop::from_table(self.table.transposed()).expect("opposite of a loop is a loop")
    }

    /// `e / x`, the left inverse element of `x`.
    pub fn left_inverse_elem(&self, x: Element) -> Element {
        self.rdiv(0, x)
    }

    /// `x \ e`, the right inverse element of `x`.
    pub fn right_inverse_elem(&self, x: Element) -> Element {
        self.ldiv(x, 0)
    }

    /// `Some(x⁻¹)` when left and right inverses of `x` coincide.
    pub fn two_sided_inverse(&self, x: Element) -> Option<Element> {
        let l = self.left_inverse_elem(x);
        (l == self.right_inverse_elem(x)).then_some(l)
    }

    /// The first element (if any) whose left and right inverses differ.
    pub fn missing_inverse_witness(&self) -> Option<Element> {
        (0..self.order()).find(|&x| self.two_sided_inverse(x).is_none())
    }

    pub fn has_two_sided_inverses(&self) -> bool {
        self.missing_inverse_witness().is_none()
    }
}
