//! `loopkit` — command-line driver for finite-loop extensions and smooth
//! tangent prolongations.
//!
//! Exit codes: 0 success/verified, 1 a checked property or condition fails,
//! 2 usage or file-format error, 3 resource or numeric error. Informational
//! notes go to stderr so that stdout stays machine-consumable (table and
//! cocycle outputs can be piped straight back into other subcommands).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use loopkit::abelian::AbGroup;
use loopkit::conditions::{
    audit_all, cocycle_condition, induced_condition, property_witness, ConditionOutcome,
    PropertyKind,
};
use loopkit::extension::{Cocycle, DEFAULT_EXTENSION_CAP};
use loopkit::finite::{validate_loop, FiniteLoop};
use loopkit::io::{
    assemble_cocycle, format_cocycle, format_table, parse_cocycle, parse_phi, parse_table,
};
use loopkit::mapping::mlt_and_inn;
use loopkit::phi::{induced_cocycle, PhiHom};
use loopkit::search::{enumerate_loops, SearchFilter};
use loopkit::smooth::{inverse_derivative_residuals, transfer_suite, SmoothCondition, SmoothLoop};

/// Prints a line to stdout, exiting quietly if the consumer closed the pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Prints to stdout without a trailing newline, exiting quietly if the
/// consumer closed the pipe.
macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "loopkit",
    version,
    about = "Finite loops, their abelian extensions, and smooth tangent prolongations",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a Cayley-table file as a loop.
    Verify {
        /// Table file (line 1: order; then one row per line; '#' comments).
        table: PathBuf,
    },
    /// Report the nine weak properties of a loop, with witnesses.
    Props {
        table: PathBuf,
        /// One `property=... holds=... witness=...` line per property.
        #[arg(long)]
        porcelain: bool,
    },
    /// Print the multiplication group and inner mapping group sizes and the
    /// inner mappings as image arrays.
    Inn { table: PathBuf },
    /// Build an abelian extension and print its Cayley table.
    Extend {
        #[arg(long)]
        table: PathBuf,
        /// Kernel group, e.g. `z3^1` or `z2^2`.
        #[arg(long)]
        kernel: String,
        /// Cocycle file; conflicts with --phi and --seed.
        #[arg(long, conflicts_with_all = ["phi", "seed"])]
        cocycle: Option<PathBuf>,
        /// Homomorphism file inducing the cocycle from inner mappings.
        #[arg(long, conflicts_with = "seed")]
        phi: Option<PathBuf>,
        /// Generate a random normalized cocycle from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the cocycle induced by a homomorphism on inner mappings
    /// (trivial homomorphism when --phi is omitted).
    Tangentlike {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Evaluate the extension conditions for one or all properties.
    Check {
        #[arg(long)]
        table: PathBuf,
        /// Cocycle file route.
        #[arg(long, conflicts_with = "phi")]
        cocycle: Option<PathBuf>,
        /// Homomorphism route; requires --kernel.
        #[arg(long, requires = "kernel")]
        phi: Option<PathBuf>,
        /// Kernel group for interpreting --phi matrices.
        #[arg(long)]
        kernel: Option<String>,
        /// Property name (kebab-case); all nine when omitted.
        #[arg(long)]
        property: Option<String>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Audit random cocycles: extension has a property iff the base has it
    /// and the condition holds. One line per (trial, property).
    Audit {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        kernel: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Enumerate loops of a given order in lexicographic table order,
    /// printing each Cayley table.
    Search {
        #[arg(long)]
        order: usize,
        /// Required property (repeatable); `nonassociative` excludes groups
        /// and other associative loops.
        #[arg(long)]
        property: Vec<String>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Numeric suites on differentiable loops.
    Smooth {
        #[command(subcommand)]
        action: SmoothCmd,
    },
}

#[derive(Subcommand)]
enum SmoothCmd {
    /// Sample property residuals on a loop and its tangent prolongation and
    /// evaluate the tangent transfer conditions.
    Demo {
        /// One of: additive, affine, parabolic.
        name: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        porcelain: bool,
    },
}

/// A terminating failure: message plus process exit code (2 usage/format,
/// 3 resource/numeric).
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code: 2,
        }
    }

    fn format(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code: 2,
        }
    }

    fn resource(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code: 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_loop(path: &Path) -> Result<FiniteLoop, Failure> {
    let table = parse_table(&read_file(path)?)
        .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
    let report = validate_loop(&table);
    if !report.is_valid() {
        return Err(Failure::format(format!(
            "{}: not a loop\n{report}",
            path.display()
        )));
    }
    FiniteLoop::from_table(table).map_err(|e| Failure::format(format!("{}: {e}", path.display())))
}

fn parse_kernel(spec: &str) -> Result<AbGroup, Failure> {
    spec.parse::<AbGroup>()
        .map_err(|e| Failure::usage(format!("invalid kernel {spec:?}: {e}")))
}

fn parse_property(name: &str) -> Result<PropertyKind, Failure> {
    PropertyKind::parse(name).ok_or_else(|| {
        let names: Vec<&str> = PropertyKind::ALL.iter().map(|k| k.name()).collect();
        Failure::usage(format!(
            "unknown property {name:?}; expected one of: {}",
            names.join(", ")
        ))
    })
}

fn seed_or_default(seed: Option<u64>) -> (u64, &'static str) {
    match seed {
        Some(s) => (s, ""),
        None => (0, " (default)"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Verify { table } => cmd_verify(&table),
        Cmd::Props { table, porcelain } => cmd_props(&table, porcelain),
        Cmd::Inn { table } => cmd_inn(&table),
        Cmd::Extend {
            table,
            kernel,
            cocycle,
            phi,
            seed,
        } => cmd_extend(&table, &kernel, cocycle.as_deref(), phi.as_deref(), seed),
        Cmd::Tangentlike { table, kernel, phi } => cmd_tangentlike(&table, &kernel, phi.as_deref()),
        Cmd::Check {
            table,
            cocycle,
            phi,
            kernel,
            property,
            porcelain,
        } => cmd_check(
            &table,
            cocycle.as_deref(),
            phi.as_deref(),
            kernel.as_deref(),
            property.as_deref(),
            porcelain,
        ),
        Cmd::Audit {
            table,
            kernel,
            trials,
            seed,
            porcelain,
        } => cmd_audit(&table, &kernel, trials, seed, porcelain),
        Cmd::Search {
            order,
            property,
            limit,
        } => cmd_search(order, &property, limit),
        Cmd::Smooth {
            action:
                SmoothCmd::Demo {
                    name,
                    samples,
                    seed,
                    tol,
                    porcelain,
                },
        } => cmd_smooth_demo(&name, samples, seed, tol, porcelain),
    }
}

fn cmd_verify(path: &Path) -> Result<u8, Failure> {
    let table = parse_table(&read_file(path)?)
        .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
    let report = validate_loop(&table);
    if report.is_valid() {
        out!("loop of order {}", table.order());
        Ok(0)
    } else {
        out!("not a loop of order {}", table.order());
        out_raw!("{report}");
        Ok(1)
    }
}

fn cmd_props(path: &Path, porcelain: bool) -> Result<u8, Failure> {
    let l = load_loop(path)?;
    let mut any_failed = false;
    for kind in PropertyKind::ALL {
        match property_witness(&l, kind) {
            None => {
                if porcelain {
                    out!("property={} holds=true witness=-", kind.name());
                } else {
                    out!("{}: holds", kind.name());
                }
            }
            Some(w) => {
                any_failed = true;
                if porcelain {
                    out!("property={} holds=false witness={w}", kind.name());
                } else {
                    out!("{}: fails at {w}", kind.name());
                }
            }
        }
    }
    Ok(u8::from(any_failed))
}

fn cmd_inn(path: &Path) -> Result<u8, Failure> {
    let l = load_loop(path)?;
    let (mlt, inn) = mlt_and_inn(&l).map_err(|e| Failure::resource(e.to_string()))?;
    out!("mlt order {}", mlt.len());
    out!("inn order {}", inn.len());
    out!("inn elements:");
    for p in inn.elements() {
        out!("{p}");
    }
    Ok(0)
}

/// Builds the cocycle a subcommand should operate on, from one of the three
/// sources (file, homomorphism, seeded random) or the identity cocycle.
fn resolve_cocycle(
    base: FiniteLoop,
    kernel: AbGroup,
    cocycle_path: Option<&Path>,
    phi_path: Option<&Path>,
    seed: Option<u64>,
) -> Result<Cocycle, Failure> {
    if let Some(path) = cocycle_path {
        let file = parse_cocycle(&read_file(path)?)
            .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
        if file.kernel != kernel {
            return Err(Failure::usage(format!(
                "kernel {} does not match cocycle file kernel {}",
                kernel, file.kernel
            )));
        }
        return assemble_cocycle(base, file)
            .map_err(|e| Failure::format(format!("{}: {e}", path.display())));
    }
    if let Some(path) = phi_path {
        let phi = load_phi(&base, kernel, path)?;
        return induced_cocycle(&base, &phi).map_err(|e| Failure::resource(e.to_string()));
    }
    if let Some(s) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        return Ok(Cocycle::random(base, kernel, &mut rng));
    }
    Ok(Cocycle::identity(base, kernel))
}

fn load_phi(base: &FiniteLoop, kernel: AbGroup, path: &Path) -> Result<PhiHom, Failure> {
    let (_, inn) = mlt_and_inn(base).map_err(|e| Failure::resource(e.to_string()))?;
    parse_phi(&read_file(path)?, &inn, kernel)
        .map_err(|e| Failure::format(format!("{}: {e}", path.display())))
}

fn cmd_extend(
    table: &Path,
    kernel_spec: &str,
    cocycle_path: Option<&Path>,
    phi_path: Option<&Path>,
    seed: Option<u64>,
) -> Result<u8, Failure> {
    let base = load_loop(table)?;
    let kernel = parse_kernel(kernel_spec)?;
    if let Some(s) = seed {
        eprintln!("seed {s}");
    }
    let c = resolve_cocycle(base, kernel, cocycle_path, phi_path, seed)?;
    let ext = c
        .build_extension(DEFAULT_EXTENSION_CAP)
        .map_err(|e| Failure::resource(e.to_string()))?;
    eprintln!(
        "extension of order {} (base order {}, kernel {})",
        ext.order(),
        c.base().order(),
        c.kernel()
    );
    out_raw!("{}", format_table(ext.table()));
    Ok(0)
}

fn cmd_tangentlike(
    table: &Path,
    kernel_spec: &str,
    phi_path: Option<&Path>,
) -> Result<u8, Failure> {
    let base = load_loop(table)?;
    let kernel = parse_kernel(kernel_spec)?;
    let phi = match phi_path {
        Some(path) => load_phi(&base, kernel, path)?,
        None => {
            let (_, inn) = mlt_and_inn(&base).map_err(|e| Failure::resource(e.to_string()))?;
            PhiHom::trivial(inn, kernel)
        }
    };
    let c = induced_cocycle(&base, &phi).map_err(|e| Failure::resource(e.to_string()))?;
    out_raw!("{}", format_cocycle(&c));
    Ok(0)
}

fn selected_properties(property: Option<&str>) -> Result<Vec<PropertyKind>, Failure> {
    match property {
        Some(name) => Ok(vec![parse_property(name)?]),
        None => Ok(PropertyKind::ALL.to_vec()),
    }
}

fn porcelain_outcome(outcome: &ConditionOutcome) -> String {
    match outcome {
        ConditionOutcome::Holds => "outcome=holds witness=-".into(),
        ConditionOutcome::Fails(w) => format!("outcome=fails witness={w}"),
        ConditionOutcome::NotApplicable(_) => "outcome=na witness=-".into(),
    }
}

fn cmd_check(
    table: &Path,
    cocycle_path: Option<&Path>,
    phi_path: Option<&Path>,
    kernel_spec: Option<&str>,
    property: Option<&str>,
    porcelain: bool,
) -> Result<u8, Failure> {
    let base = load_loop(table)?;
    let kinds = selected_properties(property)?;
    let outcomes: Vec<(PropertyKind, ConditionOutcome)> = if let Some(path) = cocycle_path {
        let file = parse_cocycle(&read_file(path)?)
            .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
        let c = assemble_cocycle(base, file)
            .map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
        kinds
            .iter()
            .map(|&kind| (kind, cocycle_condition(&c, kind)))
            .collect()
    } else if let Some(path) = phi_path {
        let kernel = parse_kernel(kernel_spec.expect("clap enforces --kernel with --phi"))?;
        let phi = load_phi(&base, kernel, path)?;
        let mut out = Vec::new();
        for &kind in &kinds {
            let outcome = induced_condition(&base, &phi, kind)
                .map_err(|e| Failure::resource(e.to_string()))?;
            out.push((kind, outcome));
        }
        out
    } else {
        return Err(Failure::usage("one of --cocycle or --phi is required"));
    };
    let mut any_failed = false;
    for (kind, outcome) in &outcomes {
        any_failed |= matches!(outcome, ConditionOutcome::Fails(_));
        if porcelain {
            out!("property={} {}", kind.name(), porcelain_outcome(outcome));
        } else {
            out!("condition {}: {outcome}", kind.name());
        }
    }
    Ok(u8::from(any_failed))
}

fn cmd_audit(
    table: &Path,
    kernel_spec: &str,
    trials: u64,
    seed: Option<u64>,
    porcelain: bool,
) -> Result<u8, Failure> {
    let base = load_loop(table)?;
    let kernel = parse_kernel(kernel_spec)?;
    let (seed, note) = seed_or_default(seed);
    out!(
        "# audit table={} kernel={} trials={} seed={}{}",
        table.display(),
        kernel,
        trials,
        seed,
        note
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut lines = 0usize;
    for trial in 0..trials {
        let c = Cocycle::random(base.clone(), kernel, &mut rng);
        let audits =
            audit_all(&c, DEFAULT_EXTENSION_CAP).map_err(|e| Failure::resource(e.to_string()))?;
        for a in audits {
            lines += 1;
            let consistent = a.consistent();
            if !consistent {
                violations += 1;
            }
            if porcelain {
                let mut line = format!(
                    "trial={} property={} base={} cond={} ext={} consistent={}",
                    trial,
                    a.property.name(),
                    a.base_has,
                    a.condition.holds(),
                    a.extension_has,
                    consistent
                );
                if let Some(w) = &a.base_witness {
                    let _ = write!(line, " witness_base={w}");
                }
                if let ConditionOutcome::Fails(w) = &a.condition {
                    let _ = write!(line, " witness_cond={w}");
                }
                if let Some(w) = &a.extension_witness {
                    let _ = write!(line, " witness_ext={w}");
                }
                out!("{line}");
            } else {
                let base_part = match &a.base_witness {
                    None => "base yes".to_string(),
                    Some(w) => format!("base no at {w}"),
                };
                let ext_part = match &a.extension_witness {
                    None => "extension yes".to_string(),
                    Some(w) => format!("extension no at {w}"),
                };
                out!(
                    "trial {} {}: {}; condition {}; {}; {}",
                    trial,
                    a.property.name(),
                    base_part,
                    a.condition,
                    ext_part,
                    if consistent {
                        "consistent"
                    } else {
                        "IFF-VIOLATION"
                    }
                );
            }
        }
    }
    out!("# consistent {}/{}", lines - violations, lines);
    Ok(u8::from(violations > 0))
}

fn cmd_search(order: usize, properties: &[String], limit: usize) -> Result<u8, Failure> {
    let mut filter = SearchFilter {
        require: Vec::new(),
        nonassociative: false,
    };
    for name in properties {
        if name == "nonassociative" {
            filter.nonassociative = true;
        } else {
            filter.require.push(parse_property(name)?);
        }
    }
    let found =
        enumerate_loops(order, &filter, limit).map_err(|e| Failure::usage(e.to_string()))?;
    for l in &found {
        out_raw!("{}", format_table(l.table()));
    }
    eprintln!("found {} loop(s) of order {}", found.len(), order);
    Ok(u8::from(found.is_empty()))
}

fn cmd_smooth_demo(
    name: &str,
    samples: usize,
    seed: Option<u64>,
    tol: f64,
    porcelain: bool,
) -> Result<u8, Failure> {
    let l = SmoothLoop::by_name(name).ok_or_else(|| {
        Failure::usage(format!(
            "unknown smooth loop {name:?}; expected one of: {}",
            SmoothLoop::NAMES.join(", ")
        ))
    })?;
    let (seed, note) = seed_or_default(seed);
    if !porcelain {
        out!("# smooth demo {name} samples={samples} seed={seed}{note} tol={tol:.1e}");
        out!(
            "{:<18} {:>12} {:>12} {:>12}  verdict",
            "property",
            "resL",
            "resT",
            "resCond"
        );
    }
    let reports = transfer_suite(&l, samples, seed, tol);
    let mut all_pass = true;
    let mut base_tsi = false;
    for r in &reports {
        let pass = r.transfer_agrees() && r.condition_agrees();
        all_pass &= pass;
        if r.property == PropertyKind::TwoSidedInverse {
            base_tsi = r.base_has();
        }
        let cond_str = match &r.condition {
            SmoothCondition::Checked(stat) => format!("{:.3e}", stat.max),
            SmoothCondition::NotApplicable { .. } => "n/a".to_string(),
        };
        if porcelain {
            out!(
                "property={} resL={:.3e} resT={:.3e} resCond={} pass={}",
                r.property.name(),
                r.base.max,
                r.tangent.max,
                match &r.condition {
                    SmoothCondition::Checked(stat) => format!("{:.3e}", stat.max),
                    SmoothCondition::NotApplicable { .. } => "na".to_string(),
                },
                pass
            );
        } else {
            out!(
                "{:<18} {:>12.3e} {:>12.3e} {:>12}  {}",
                r.property.name(),
                r.base.max,
                r.tangent.max,
                cond_str,
                if pass { "ok" } else { "IFF-VIOLATION" }
            );
        }
    }
    if base_tsi {
        let (a, b) = inverse_derivative_residuals(&l, samples, seed.wrapping_add(3));
        if porcelain {
            out!("derinv={a:.3e} derinv1={b:.3e}");
        } else {
            out!("inverse-derivative residuals: {a:.3e} {b:.3e}");
        }
    } else if porcelain {
        out!("derinv=na derinv1=na");
    } else {
        out!("inverse-derivative residuals: not applicable (no two-sided inverses)");
    }
    Ok(u8::from(!all_pass))
}
