//! Bundled reference tables used by tests and the command-line tools.
//!
//! * `z4` — the cyclic group of order 4.
//! * `s3` — the symmetric group on three symbols (smallest nonabelian group),
//!   numbered identity, the three transpositions, then the two 3-cycles.
//! * `n5` — the lexicographically first nonassociative loop of order 5.
//! * `n6` — the lexicographically first nonassociative loop of order 6.
//! * `b8` — the lexicographically first nonassociative left Bol loop of
//!   order 8 (the smallest order where one exists).
//!
//! `n5`, `n6`, and `b8` are frozen outputs of [`crate::search::enumerate_loops`];
//! tests regenerate them and compare bytes.

use crate::finite::FiniteLoop;
use crate::io::parse_loop;

pub const Z4_TEXT: &str = include_str!("../../../fixtures/z4.tbl");
pub const S3_TEXT: &str = include_str!("../../../fixtures/s3.tbl");
pub const N5_TEXT: &str = include_str!("../../../fixtures/n5.tbl");
pub const N6_TEXT: &str = include_str!("../../../fixtures/n6.tbl");
pub const B8_TEXT: &str = include_str!("../../../fixtures/b8.tbl");

pub fn z4() -> FiniteLoop {
    parse_loop(Z4_TEXT).expect("bundled z4 table is valid")
}

pub fn s3() -> FiniteLoop {
    parse_loop(S3_TEXT).expect("bundled s3 table is valid")
}

pub fn n5() -> FiniteLoop {
    parse_loop(N5_TEXT).expect("bundled n5 table is valid")
}

pub fn n6() -> FiniteLoop {
    parse_loop(N6_TEXT).expect("bundled n6 table is valid")
}

pub fn b8() -> FiniteLoop {
    parse_loop(B8_TEXT).expect("bundled b8 table is valid")
}

/// Every bundled loop with its name, in a fixed order.
pub fn all() -> Vec<(&'static str, FiniteLoop)> {
    vec![
        ("z4", z4()),
        ("s3", s3()),
        ("n5", n5()),
        ("n6", n6()),
        ("b8", b8()),
    ]
}

/// Looks a bundled loop up by name.
pub fn by_name(name: &str) -> Option<FiniteLoop> {
    match name {
        "z4" => Some(z4()),
        "s3" => Some(s3()),
        "n5" => Some(n5()),
        "n6" => Some(n6()),
        "b8" => Some(b8()),
        _ => None,
    }
}
