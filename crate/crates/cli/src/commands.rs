//! Command dispatch.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use thiserror::Error;

use conspec::k0::{chi, closed_support_decomposition, global_euler, realize, ConsFunction};
use conspec::linalg::{FreeChainComplex, ScalarRing};
use conspec::sheaf::{
    base_change_compare, base_change_locus, cell_decompose, pushforward, rgamma, CartesianSquare, SheafComplex,
    SheafError,
};
use conspec::space::{FinSpec, MonotoneMap, PointSet};
use conspec::sper::{
    cell_poset, from_formula, line_euler, push_cons, real_roots, AlgNumber, CellMap, LineFunction, PolyMap, SperError,
};

use crate::parse::{self, ParseError};
use crate::print;
use crate::report::Report;
use crate::selftest;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Sper(SperError),
    #[error("invariant failure: {0}")]
    Internal(String),
    #[error("{0} self-test cases failed")]
    SelfTestFailed(usize, Report),
}

impl CliError {
    /// 1 for bad input, 2 when a computed result fails its own check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) | CliError::SelfTestFailed(..) | CliError::Sper(SperError::InconsistentSamples(_)) => 2,
            _ => 1,
        }
    }
}

impl From<SperError> for CliError {
    fn from(e: SperError) -> Self {
        CliError::Sper(e)
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Global sections cohomology of a sheaf complex.
    Cohomology {
        #[arg(long)]
        sheaf: PathBuf,
    },
    /// Pushforward along a monotone map, with stalk cohomology.
    Pushforward {
        #[arg(long)]
        sheaf: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Pointwise Euler characteristic of the stalks.
    Chi {
        #[arg(long)]
        sheaf: PathBuf,
    },
    /// A complex with the given Euler function.
    Realize {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Decomposition into point-supported pieces.
    Decompose {
        #[arg(long)]
        sheaf: PathBuf,
    },
    /// Base change along each point of the target.
    BaseChange {
        #[arg(long)]
        sheaf: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Real spectrum of the affine line.
    #[command(subcommand)]
    Sper(SperCommand),
    /// Randomized invariant suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SperCommand {
    /// Real roots of a polynomial.
    Roots {
        #[arg(long)]
        poly: String,
    },
    /// Cells of the set defined by a formula.
    Set {
        #[arg(long)]
        formula: String,
    },
    /// All cells of a formula's partition, with closure and interior.
    Cells {
        #[arg(long)]
        formula: String,
    },
    /// Euler pushforward of a formula's indicator (default 1) along a polynomial.
    Push {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        formula: Option<String>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn inline<T>(what: &str, text: &str, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(text).map_err(|source| CliError::Parse { path: what.to_string(), source })
}

/// `H^0 = Z, H^1 = Z/2`, or `0`.
pub fn homology_summary(c: &FreeChainComplex) -> String {
    let parts: Vec<String> =
        c.homology().into_iter().filter(|(_, m)| !m.is_zero()).map(|(n, m)| format!("H^{n} = {m}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(", ")
    }
}

fn classification(flags: conspec::space::SubsetFlags) -> &'static str {
    match (flags.open, flags.closed, flags.locally_closed) {
        (true, true, _) => "open and closed",
        (true, false, _) => "open",
        (false, true, _) => "closed",
        (false, false, true) => "locally closed",
        (false, false, false) => "not locally closed",
    }
}

/// Exact value when rational, otherwise the isolating interval with an
/// approximation.
pub fn alg(a: &AlgNumber) -> String {
    match a.as_rational() {
        Some(r) => r.to_string(),
        None => format!("{a} ~ {:.6}", a.approx()),
    }
}

fn roots_report(report: &mut Report, roots: &[AlgNumber]) {
    report.field("roots", roots.len().to_string());
    for (j, a) in roots.iter().enumerate() {
        report.field(format!("a{}", j + 1), alg(a));
    }
}

fn cells_list<V: Clone + PartialEq>(m: &CellMap<V>, keep: impl Fn(&V) -> bool) -> String {
    let labels: Vec<String> =
        m.cell_labels().into_iter().zip(m.values()).filter(|(_, v)| keep(v)).map(|(l, _)| l).collect();
    if labels.is_empty() {
        "empty".to_string()
    } else {
        labels.join(" ")
    }
}

fn cohomology(k: &SheafComplex) -> Report {
    let mut r = Report::default();
    let h: Vec<_> = rgamma(k).homology().into_iter().filter(|(_, m)| !m.is_zero()).collect();
    if h.is_empty() {
        r.field("H^*", "0");
    }
    for (n, m) in h {
        r.field(format!("H^{n}"), m.to_string());
    }
    r
}

fn stalk_lines(r: &mut Report, k: &SheafComplex) {
    for x in k.space().points() {
        r.field(format!("stalk {}", k.space().id(x)), homology_summary(k.stalk(x)));
    }
}

fn decompose(k: &SheafComplex) -> Result<Report, CliError> {
    let cells = cell_decompose(k)?;
    if cells.certificates.iter().any(|c| !c.is_quasi_iso()) {
        return Err(CliError::Internal("decomposition certificate is not a quasi-isomorphism".into()));
    }
    let space = k.space();
    let mut total = ConsFunction::zero(space);
    let mut r = Report::default();
    for ((x, c), piece) in cells.pieces.iter().zip(&cells.point_sheaves) {
        let phi = chi(piece);
        total = total.add(&phi);
        r.field(format!("piece {}", space.id(*x)), format!("{}; euler {}", homology_summary(c), global_euler(piece)));
    }
    if total != chi(k) {
        return Err(CliError::Internal("piece Euler functions do not sum to chi".into()));
    }
    r.field("chi", chi(k).to_string());
    r.field("euler", global_euler(k).to_string());
    let parts: Vec<String> = closed_support_decomposition(&chi(k))
        .iter()
        .map(|(z, c)| format!("{}:{c}", space.format_subset(z)))
        .collect();
    r.field("closed supports", if parts.is_empty() { "0".to_string() } else { parts.join(" ") });
    Ok(r)
}

fn base_change(f: &MonotoneMap, k: &SheafComplex) -> Result<Report, CliError> {
    let s = f.target();
    let locus = base_change_locus(f, k)?;
    let mut r = Report::default();
    for x in s.points() {
        let verdict = if locus.verdicts[x] {
            "iso".to_string()
        } else {
            let inc = MonotoneMap::inclusion(s, &PointSet::from([x]), s.id(x));
            let bc = base_change_compare(&CartesianSquare::new(f, &inc)?, k)?;
            let defect: Vec<String> =
                bc.defect.space().points().map(|w| homology_summary(bc.defect.stalk(w))).collect();
            format!("not iso; defect {}", defect.join(", "))
        };
        r.field(format!("point {}", s.id(x)), verdict);
    }
    r.field("locus", s.format_subset(&locus.locus));
    r.field("classification", classification(locus.flags));
    Ok(r)
}

fn sper_cells(text: &str) -> Result<Report, CliError> {
    let phi = inline("--formula", text, parse::parse_formula)?;
    let set = from_formula(&phi);
    let mut r = Report::default();
    r.field("formula", phi.to_string());
    roots_report(&mut r, set.roots());
    for (label, v) in set.cell_labels().into_iter().zip(set.values()) {
        r.field(label, if *v { "in" } else { "out" });
    }
    r.field("closure", cells_list(&set.closure(), |v| *v));
    r.field("interior", cells_list(&set.interior(), |v| *v));
    r.field("dimension", cell_poset(set.roots().len()).krull_dim().to_string());
    Ok(r)
}

fn sper_push(poly: &str, formula: Option<&str>) -> Result<Report, CliError> {
    let p = PolyMap::new(inline("--poly", poly, parse::parse_poly)?)?;
    let phi: LineFunction = match formula {
        Some(text) => LineFunction::indicator(&from_formula(&inline("--formula", text, parse::parse_formula)?)),
        None => CellMap::constant(1),
    };
    let pushed = push_cons(&p, &phi)?;
    if line_euler(&pushed) != line_euler(&phi) {
        return Err(CliError::Internal("pushforward changed the global Euler characteristic".into()));
    }
    let mut r = Report::default();
    r.field("map", format!("t -> {}", p.poly()));
    roots_report(&mut r, pushed.roots());
    for (label, v) in pushed.cell_labels().into_iter().zip(pushed.values()) {
        r.field(label, v.to_string());
    }
    r.field("euler", line_euler(&pushed).to_string());
    Ok(r)
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Cohomology { sheaf } => Ok(cohomology(&load(sheaf, parse::parse_sheaf)?)),
        Command::Pushforward { sheaf, map } => {
            let k = load(sheaf, parse::parse_sheaf)?;
            let f = load(map, parse::parse_map)?;
            let pushed = pushforward(&f, &k)?;
            let mut r = Report::default();
            r.text(print::sheaf(&pushed));
            stalk_lines(&mut r, &pushed);
            Ok(r)
        }
        Command::Chi { sheaf } => {
            let mut r = Report::default();
            r.text(chi(&load(sheaf, parse::parse_sheaf)?).to_string());
            Ok(r)
        }
        Command::Realize { space, phi, ring } => {
            let m: FinSpec = load(space, parse::parse_space)?;
            let ring: ScalarRing = inline("--ring", ring, parse::parse_ring)?;
            let phi = inline("--phi", phi, |t| parse::parse_cons(t, &m))?;
            let k = realize(&phi, ring);
            if chi(&k) != phi {
                return Err(CliError::Internal("realized complex has the wrong Euler function".into()));
            }
            let mut r = Report::default();
            r.text(print::sheaf(&k));
            r.text(chi(&k).to_string());
            Ok(r)
        }
        Command::Decompose { sheaf } => decompose(&load(sheaf, parse::parse_sheaf)?),
        Command::BaseChange { sheaf, map } => base_change(&load(map, parse::parse_map)?, &load(sheaf, parse::parse_sheaf)?),
        Command::Sper(SperCommand::Roots { poly }) => {
            let f = inline("--poly", poly, parse::parse_poly)?;
            let mut r = Report::default();
            r.field("poly", f.to_string());
            roots_report(&mut r, &real_roots(&f)?);
            Ok(r)
        }
        Command::Sper(SperCommand::Set { formula }) => {
            let phi = inline("--formula", formula, parse::parse_formula)?;
            let set = from_formula(&phi);
            let mut r = Report::default();
            r.field("formula", phi.to_string());
            roots_report(&mut r, set.roots());
            r.field("set", cells_list(&set, |v| *v));
            Ok(r)
        }
        Command::Sper(SperCommand::Cells { formula }) => sper_cells(formula),
        Command::Sper(SperCommand::Push { poly, formula }) => sper_push(poly, formula.as_deref()),
        Command::Selftest { seed } => {
            let (report, failed) = selftest::run(*seed);
            if failed > 0 {
                return Err(CliError::SelfTestFailed(failed, report));
            }
            Ok(report)
        }
    }
}
