//! Text formats for tables, cocycles, and kernel-valued homomorphisms.
//!
//! Table files: the order `n` on the first line, then `n` lines of `n`
//! space-separated entries in `0..n`. `#` starts a comment running to the end
//! of the line; blank lines are ignored. The writer is canonical — no
//! comments, single spaces, a trailing newline per row — so equal tables
//! produce byte-equal files.
//!
//! Cocycle files: a header `cocycle n=<n> A=z<m>^<k>`, then for every base
//! pair in row-major order a `P <xi> <eta>` block and a `Q <xi> <eta>` block,
//! each followed by `k` lines of `k` integers. The base table travels
//! separately; `parse_cocycle` returns the raw pieces and the caller attaches
//! them to a base loop.
//!
//! Homomorphism files: one line per generator assignment,
//! `perm <d images> -> matrix <k*k entries>`, closed over the given domain.

use std::fmt::Write as _;

use thiserror::Error;

use crate::abelian::{AbGroup, AbelianError, ModMatrix};
use crate::extension::{Cocycle, CocycleError};
use crate::finite::{CayleyTable, FiniteLoop, LoopError, TableError};
use crate::perm::{Perm, PermError, PermGroup};
use crate::phi::{PhiError, PhiHom};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("table: {0}")]
    Table(#[from] TableError),
    #[error("loop: {0}")]
    Loop(#[from] LoopError),
    #[error("kernel: {0}")]
    Abelian(#[from] AbelianError),
    #[error("cocycle: {0}")]
    Cocycle(#[from] CocycleError),
    #[error("homomorphism: {0}")]
    Phi(#[from] PhiError),
    #[error("permutation: {0}")]
    Perm(#[from] PermError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, IoError> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected {what}, found {token:?}")))
}

pub fn parse_table(text: &str) -> Result<CayleyTable, IoError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty table file"))?;
    let order = parse_usize(header_line, header, "the table order")?;
    if order == 0 {
        return Err(parse_err(header_line, "table order must be positive"));
    }
    let mut rows = Vec::with_capacity(order);
    for _ in 0..order {
        let (line, body) = lines
            .next()
            .ok_or_else(|| parse_err(header_line, format!("expected {order} table rows")))?;
        let row = body
            .split_whitespace()
            .map(|tok| parse_usize(line, tok, "a table entry"))
            .collect::<Result<Vec<usize>, IoError>>()?;
        rows.push(row);
    }
    if let Some((line, body)) = lines.next() {
        return Err(parse_err(
            line,
            format!("unexpected trailing content {body:?}"),
        ));
    }
    Ok(CayleyTable::from_rows(rows)?)
}

pub fn parse_loop(text: &str) -> Result<FiniteLoop, IoError> {
    Ok(FiniteLoop::from_table(parse_table(text)?)?)
}

/// Canonical table text: equal tables yield byte-equal strings.
pub fn format_table(table: &CayleyTable) -> String {
    let n = table.order();
    let mut out = String::new();
    writeln!(out, "{n}").unwrap();
    for x in 0..n {
        let row: Vec<String> = table.row(x).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// The pieces of a cocycle file; attach them to a base with [`assemble_cocycle`].
#[derive(Debug, Clone)]
pub struct CocycleFile {
    pub order: usize,
    pub kernel: AbGroup,
    pub p: Vec<ModMatrix>,
    pub q: Vec<ModMatrix>,
}

pub fn parse_cocycle(text: &str) -> Result<CocycleFile, IoError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty cocycle file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("cocycle") {
        return Err(parse_err(hline, "expected header starting with 'cocycle'"));
    }
    let mut order: Option<usize> = None;
    let mut kernel: Option<AbGroup> = None;
    for tok in toks {
        if let Some(v) = tok.strip_prefix("n=") {
            order = Some(parse_usize(hline, v, "the base order")?);
        } else if let Some(v) = tok.strip_prefix("A=") {
            kernel = Some(v.parse().map_err(IoError::Abelian)?);
        } else {
            return Err(parse_err(hline, format!("unexpected header token {tok:?}")));
        }
    }
    let order = order.ok_or_else(|| parse_err(hline, "header is missing n=<order>"))?;
    let kernel = kernel.ok_or_else(|| parse_err(hline, "header is missing A=<kernel>"))?;
    if order == 0 {
        return Err(parse_err(hline, "base order must be positive"));
    }
    let k = kernel.rank();

    let mut p: Vec<Option<ModMatrix>> = vec![None; order * order];
    let mut q: Vec<Option<ModMatrix>> = vec![None; order * order];
    while let Some((line, body)) = lines.next() {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 || (toks[0] != "P" && toks[0] != "Q") {
            return Err(parse_err(
                line,
                "expected a block label 'P <xi> <eta>' or 'Q <xi> <eta>'",
            ));
        }
        let xi = parse_usize(line, toks[1], "a base element")?;
        let eta = parse_usize(line, toks[2], "a base element")?;
        if xi >= order || eta >= order {
            return Err(parse_err(
                line,
                format!("pair ({xi},{eta}) out of range for order {order}"),
            ));
        }
        let mut entries = Vec::with_capacity(k * k);
        for _ in 0..k {
            let (mline, mbody) = lines.next().ok_or_else(|| {
                parse_err(
                    line,
                    format!("block {} {xi} {eta} is missing matrix rows", toks[0]),
                )
            })?;
            let row: Vec<i64> = mbody
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>().map_err(|_| {
                        parse_err(mline, format!("expected a matrix entry, found {t:?}"))
                    })
                })
                .collect::<Result<_, IoError>>()?;
            if row.len() != k {
                return Err(parse_err(
                    mline,
                    format!("expected {k} entries per matrix row, found {}", row.len()),
                ));
            }
            entries.extend(row);
        }
        let m = ModMatrix::from_entries(kernel, entries);
        let slot = if toks[0] == "P" { &mut p } else { &mut q };
        if slot[xi * order + eta].replace(m).is_some() {
            return Err(parse_err(
                line,
                format!("duplicate block {} {xi} {eta}", toks[0]),
            ));
        }
    }
    let unwrap_all = |v: Vec<Option<ModMatrix>>, which: char| -> Result<Vec<ModMatrix>, IoError> {
        v.into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    parse_err(
                        0,
                        format!("missing block {which} {} {}", i / order, i % order),
                    )
                })
            })
            .collect()
    };
    Ok(CocycleFile {
        order,
        kernel,
        p: unwrap_all(p, 'P')?,
        q: unwrap_all(q, 'Q')?,
    })
}

/// Attaches parsed cocycle data to its base loop, validating everything.
pub fn assemble_cocycle(base: FiniteLoop, file: CocycleFile) -> Result<Cocycle, IoError> {
    if base.order() != file.order {
        return Err(parse_err(
            1,
            format!(
                "cocycle is over a base of order {}, table has order {}",
                file.order,
                base.order()
            ),
        ));
    }
    Ok(Cocycle::from_tables(base, file.kernel, file.p, file.q)?)
}

pub fn format_cocycle(c: &Cocycle) -> String {
    let n = c.base().order();
    let kernel = c.kernel();
    let k = kernel.rank();
    let mut out = String::new();
    writeln!(out, "cocycle n={n} A={kernel}").unwrap();
    let block = |label: &str, xi: usize, eta: usize, m: &ModMatrix, out: &mut String| {
        writeln!(out, "{label} {xi} {eta}").unwrap();
        for r in 0..k {
            let row: Vec<String> = (0..k).map(|cc| m.entry(r, cc).to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    };
    for xi in 0..n {
        for eta in 0..n {
            block("P", xi, eta, c.p(xi, eta), &mut out);
            block("Q", xi, eta, c.q(xi, eta), &mut out);
        }
    }
    out
}

/// Parses generator assignments and closes them over `domain`.
pub fn parse_phi(text: &str, domain: &PermGroup, kernel: AbGroup) -> Result<PhiHom, IoError> {
    let k = kernel.rank();
    let mut assignments = Vec::new();
    for (line, body) in content_lines(text) {
        let (lhs, rhs) = body
            .split_once("->")
            .ok_or_else(|| parse_err(line, "expected 'perm <images> -> matrix <entries>'"))?;
        let ltoks: Vec<&str> = lhs.split_whitespace().collect();
        let rtoks: Vec<&str> = rhs.split_whitespace().collect();
        if ltoks.first() != Some(&"perm") {
            return Err(parse_err(line, "assignment must start with 'perm'"));
        }
        if rtoks.first() != Some(&"matrix") {
            return Err(parse_err(line, "assignment image must start with 'matrix'"));
        }
        let images = ltoks[1..]
            .iter()
            .map(|t| parse_usize(line, t, "a permutation image"))
            .collect::<Result<Vec<usize>, IoError>>()?;
        if images.len() != domain.degree() {
            return Err(parse_err(
                line,
                format!(
                    "expected {} permutation images, found {}",
                    domain.degree(),
                    images.len()
                ),
            ));
        }
        let entries = rtoks[1..]
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| parse_err(line, format!("expected a matrix entry, found {t:?}")))
            })
            .collect::<Result<Vec<i64>, IoError>>()?;
        if entries.len() != k * k {
            return Err(parse_err(
                line,
                format!("expected {} matrix entries, found {}", k * k, entries.len()),
            ));
        }
        let perm = Perm::from_images(images)?;
        assignments.push((perm, ModMatrix::from_entries(kernel, entries)));
    }
    Ok(PhiHom::from_generators(
        domain.clone(),
        kernel,
        &assignments,
    )?)
}

pub fn format_phi(phi: &PhiHom) -> String {
    let k = phi.kernel().rank();
    let mut out = String::new();
    for (perm, m) in phi.assignments() {
        let images: Vec<String> = perm.images().iter().map(|v| v.to_string()).collect();
        let entries: Vec<String> = (0..k)
            .flat_map(|r| (0..k).map(move |c| (r, c)))
            .map(|(r, c)| m.entry(r, c).to_string())
            .collect();
        writeln!(
            out,
            "perm {} -> matrix {}",
            images.join(" "),
            entries.join(" ")
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::mlt_and_inn;

    #[test]
    fn table_round_trip_is_byte_exact() {
        let text = "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
        let table = parse_table(text).unwrap();
        assert_eq!(format_table(&table), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# the cyclic group\n\n2  # order\n0 1\n1 0 # last row\n";
        let l = parse_loop(text).unwrap();
        assert_eq!(l, FiniteLoop::cyclic(2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_table("3\n0 1 2\n1 2 zero\n2 0 1\n").unwrap_err();
        let IoError::Parse { line, .. } = err else {
            panic!("expected a parse diagnostic, got {err:?}");
        };
        assert_eq!(line, 3);
    }

    #[test]
    fn trailing_rows_are_rejected() {
        let err = parse_table("2\n0 1\n1 0\n0 1\n").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 4, .. }));
    }

    #[test]
    fn cocycle_round_trip() {
        let base = FiniteLoop::cyclic(3);
        let kernel = AbGroup::new(4, 2);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c = Cocycle::random(base.clone(), kernel, &mut rng);
        let text = format_cocycle(&c);
        let file = parse_cocycle(&text).unwrap();
        let back = assemble_cocycle(base, file).unwrap();
        assert_eq!(format_cocycle(&back), text);
    }

    #[test]
    fn phi_round_trip() {
        let (_, inn) = mlt_and_inn(&crate::fixtures::s3()).unwrap();
        let kernel = AbGroup::new(3, 1);
        let phi = PhiHom::trivial(inn.clone(), kernel);
        let text = format_phi(&phi);
        let back = parse_phi(&text, &inn, kernel).unwrap();
        assert_eq!(format_phi(&back), text);
    }
}
