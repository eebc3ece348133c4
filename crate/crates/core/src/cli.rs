//! Command-line front end: JSON in, JSON out, a short human summary on stderr.
//!
//! Exit codes: 0 success, 1 malformed input (bad JSON, schema or usage),
//! 2 precondition violated, 3 resource cap exceeded.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::calculus::{
    change_spanning, field_equation_solve, localize_lift, matrix_ring_solve, quotient_solve,
    semimodule_intersect, solve_equation, solve_mixed_capped,
};
use crate::cone::{hrep_to_vrep, vrep_to_hrep};
use crate::error::Error;
use crate::genset::GenSet;
use crate::hilbert::{
    certify, hilbert_basis_capped, solve_mixed_z_capped, HilbertBasis, MixedSystem,
    DEFAULT_BOX, DEFAULT_COMPLETION_CAP,
};
use crate::json::{
    scalar_from_json, ConeJson, EquationJson, GenSetJson, HilbertBasisJson, IrrationalRowJson,
    LPresentationJson, MatJson, PolyConeJson, TermJson,
};
use crate::lgroup::{
    irrational_demo, lgroup_solve, pl_equal, presentation_cone, sqrt2_convergents,
    DEFAULT_PIECE_CAP,
};
use crate::matrix::Mat;
use crate::ring::RingSpec;

/// The oracle cross-check of `hilbert` runs only when the box has at most
/// this many points.
pub const ORACLE_POINT_LIMIT: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "pocoh", version, about = "Exact solvers for ordered linear systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coordinate bound of the brute-force Hilbert basis oracle
    #[arg(long = "box", global = true, default_value_t = DEFAULT_BOX)]
    pub box_bound: u64,

    /// Maximum number of convex pieces in piecewise-linear decompositions
    #[arg(long, global = true, default_value_t = DEFAULT_PIECE_CAP)]
    pub piece_cap: usize,

    /// Maximum number of vectors generated by the Hilbert basis completion
    #[arg(long, global = true, default_value_t = DEFAULT_COMPLETION_CAP)]
    pub completion_cap: usize,

    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Suppress the summary on standard error
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators of a mixed system {"M", "sign_cols"} over the ring of M
    Solve { input: Option<PathBuf> },
    /// Generators of {X : U X = 0} for {"U"}
    SolveEq { input: Option<PathBuf> },
    /// Hilbert basis of {"M", "sign_cols"?, "box"?} over Z
    Hilbert { input: Option<PathBuf> },
    /// Convert a cone {"dim", "hrep"?, "vrep"?} to both representations
    Dd { input: Option<PathBuf> },
    /// Intersection of two generated semimodules {"b", "c"}
    Intersect { input: Option<PathBuf> },
    /// Nonnegative solutions modulo a convex submodule {"U", "V"}
    Quotient { input: Option<PathBuf> },
    /// Nonnegative matrix tuples with Σ a_j ξ_j >= 0, input {"a": [M, ...]}
    Matring { input: Option<PathBuf> },
    /// Solve over a localization of Z by clearing denominators {"M", "sign_cols"?}
    Localize { input: Option<PathBuf> },
    /// Nonnegative rational solutions of Σ p_i x_i = 0, input {"p"}
    FieldEq { input: Option<PathBuf> },
    /// Move a presentation to a new spanning row {"U", "V", "M", "N", "S"}
    ChangeSpan { input: Option<PathBuf> },
    /// Hilbert basis of {λ >= 0 : Σ λ_i f_i >= 0} in a presented ℓ-group
    LgroupSolve { input: Option<PathBuf> },
    /// Decide f = g in a presented ℓ-group {"presentation", "f", "g"}
    LgroupEq { input: Option<PathBuf> },
    /// Hilbert bases along the convergents of √2
    DemoIrrational {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=8))]
        depth: u64,
    },
}

/// Why a command failed, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Precondition(String),
    Resource(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Resource(m) => m,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn op_err(e: Error) -> Failure {
    if e.is_resource() {
        Failure::Resource(e.to_string())
    } else {
        Failure::Precondition(e.to_string())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedInput {
    #[serde(rename = "M")]
    m: MatJson,
    sign_cols: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionalSignInput {
    #[serde(rename = "M")]
    m: MatJson,
    #[serde(default)]
    sign_cols: Option<Vec<usize>>,
    #[serde(default, rename = "box")]
    box_bound: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EqInput {
    #[serde(rename = "U")]
    u: MatJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IntersectInput {
    b: GenSetJson,
    c: GenSetJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientInput {
    #[serde(rename = "U")]
    u: MatJson,
    #[serde(rename = "V")]
    v: MatJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatringInput {
    a: Vec<MatJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldEqInput {
    p: Vec<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChangeSpanInput {
    #[serde(rename = "U")]
    u: MatJson,
    #[serde(rename = "V")]
    v: MatJson,
    #[serde(rename = "M")]
    m: MatJson,
    #[serde(rename = "N")]
    n: MatJson,
    #[serde(rename = "S")]
    s: GenSetJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LgroupSolveInput {
    presentation: LPresentationJson,
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LgroupEqInput {
    presentation: LPresentationJson,
    f: TermJson,
    g: TermJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatringOutput {
    pub m: usize,
    pub gens: GenSetJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LgroupEqOutput {
    pub equal: bool,
    pub cone: PolyConeJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoOutput {
    pub rows: Vec<IrrationalRowJson>,
}

/// Result of a successful command.
pub struct Outcome {
    pub json: String,
    pub summary: String,
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(input_err)
}

fn render<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn genset_summary(name: &str, g: &GenSet) -> String {
    format!(
        "{name}: {} generator(s) in dimension {} over {}, {}",
        g.len(),
        g.dim(),
        g.ring(),
        if g.nonneg() { "nonnegative" } else { "signed" }
    )
}

fn genset_outcome(name: &str, g: &GenSet) -> Outcome {
    Outcome {
        json: render(&GenSetJson::from_genset(g)),
        summary: genset_summary(name, g),
    }
}

fn mixed(m: &MatJson, sign_cols: Option<Vec<usize>>) -> Result<MixedSystem, Failure> {
    let m = m.to_mat().map_err(input_err)?;
    let cols = sign_cols.unwrap_or_else(|| (0..m.cols()).collect());
    MixedSystem::new(m, cols).map_err(input_err)
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(input_err)?;
            Ok(s)
        }
    }
}

/// Run one command against the given input source.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    let cap = cli.completion_cap;
    let piece_cap = cli.piece_cap;
    match &cli.command {
        Command::Solve { input } => {
            let inp: MixedInput = parse(&read_input(input, stdin)?)?;
            let sys = mixed(&inp.m, Some(inp.sign_cols))?;
            let ring = sys.m().ring().clone();
            let g = solve_mixed_capped(&sys, &ring, cap).map_err(op_err)?;
            Ok(genset_outcome("solve", &g))
        }
        Command::SolveEq { input } => {
            let inp: EqInput = parse(&read_input(input, stdin)?)?;
            let u = inp.u.to_mat().map_err(input_err)?;
            let sol = solve_equation(&u, &u.ring().clone()).map_err(op_err)?;
            Ok(Outcome {
                json: render(&EquationJson::from_solution(&sol)),
                summary: genset_summary("solve-eq", &sol.gens),
            })
        }
        Command::Hilbert { input } => {
            let inp: OptionalSignInput = parse(&read_input(input, stdin)?)?;
            let bound = inp.box_bound.unwrap_or(cli.box_bound);
            let sys = mixed(&inp.m, inp.sign_cols)?;
            let m = sys.m().with_ring(RingSpec::Integers).map_err(input_err)?;
            let n = m.cols() as u32;
            let hb = if sys.free_cols().is_empty() {
                let mut hb = hilbert_basis_capped(&m, cap).map_err(op_err)?;
                let points = (bound + 1).checked_pow(n).unwrap_or(u64::MAX);
                if bound >= 1 && points <= ORACLE_POINT_LIMIT && !certify(&m, &mut hb, bound).map_err(op_err)? {
                    return Err(Failure::Precondition(format!(
                        "completion disagrees with the box-{bound} oracle"
                    )));
                }
                hb
            } else {
                let sys = MixedSystem::new(m, sys.sign_cols().to_vec()).map_err(input_err)?;
                HilbertBasis {
                    basis: solve_mixed_z_capped(&sys, cap).map_err(op_err)?,
                    box_certified: None,
                }
            };
            let mut summary = genset_summary("hilbert", &hb.basis);
            if let Some(b) = hb.box_certified {
                summary.push_str(&format!("; matches the oracle on [0, {b}]^{n}"));
            }
            Ok(Outcome {
                json: render(&HilbertBasisJson::from_basis(&hb)),
                summary,
            })
        }
        Command::Dd { input } => {
            let inp: ConeJson = parse(&read_input(input, stdin)?)?;
            let c = inp.to_cone().map_err(input_err)?;
            let out = if c.hrep().is_some() {
                hrep_to_vrep(&c)
            } else {
                vrep_to_hrep(&c)
            }
            .map_err(op_err)?;
            let summary = format!(
                "dd: {} inequalities, {} rays, lineality dimension {}",
                out.hrep().map_or(0, Mat::rows),
                out.vrep().map_or(0, Mat::cols),
                out.lineality().map_or(0, Mat::cols)
            );
            Ok(Outcome {
                json: render(&ConeJson::from_cone(&out)),
                summary,
            })
        }
        Command::Intersect { input } => {
            let inp: IntersectInput = parse(&read_input(input, stdin)?)?;
            let b = inp.b.to_genset().map_err(input_err)?;
            let c = inp.c.to_genset().map_err(input_err)?;
            if b.ring() != c.ring() {
                return Err(Failure::Precondition(format!(
                    "generating sets over different rings: {} and {}",
                    b.ring(),
                    c.ring()
                )));
            }
            let g = semimodule_intersect(&b, &c, &b.ring().clone()).map_err(op_err)?;
            Ok(genset_outcome("intersect", &g))
        }
        Command::Quotient { input } => {
            let inp: QuotientInput = parse(&read_input(input, stdin)?)?;
            let u = inp.u.to_mat().map_err(input_err)?;
            let v = inp.v.to_mat().map_err(input_err)?;
            let g = quotient_solve(&u, &v, &u.ring().clone()).map_err(op_err)?;
            Ok(genset_outcome("quotient", &g))
        }
        Command::Matring { input } => {
            let inp: MatringInput = parse(&read_input(input, stdin)?)?;
            let a = inp
                .a
                .iter()
                .map(MatJson::to_mat)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input_err)?;
            let ring = a
                .first()
                .map(|m| m.ring().clone())
                .ok_or_else(|| Failure::Input("no coefficient matrices".into()))?;
            let g = matrix_ring_solve(&a, &ring).map_err(op_err)?;
            let m = a[0].rows();
            Ok(Outcome {
                json: render(&MatringOutput {
                    m,
                    gens: GenSetJson::from_genset(&g),
                }),
                summary: format!(
                    "{}; each generator is a tuple of {} matrices of size {m}x{m}",
                    genset_summary("matring", &g),
                    a.len()
                ),
            })
        }
        Command::Localize { input } => {
            let inp: OptionalSignInput = parse(&read_input(input, stdin)?)?;
            let sys = mixed(&inp.m, inp.sign_cols)?;
            let ring = sys.m().ring().clone();
            let g = localize_lift(&sys, &ring).map_err(op_err)?;
            Ok(genset_outcome("localize", &g))
        }
        Command::FieldEq { input } => {
            let inp: FieldEqInput = parse(&read_input(input, stdin)?)?;
            let p = inp
                .p
                .iter()
                .map(scalar_from_json)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input_err)?;
            let g = field_equation_solve(&p);
            Ok(genset_outcome("field-eq", &g))
        }
        Command::ChangeSpan { input } => {
            let inp: ChangeSpanInput = parse(&read_input(input, stdin)?)?;
            let [u, v, m, n] = [&inp.u, &inp.v, &inp.m, &inp.n].map(MatJson::to_mat);
            let (u, v, m, n) = (
                u.map_err(input_err)?,
                v.map_err(input_err)?,
                m.map_err(input_err)?,
                n.map_err(input_err)?,
            );
            let s = inp.s.to_genset().map_err(input_err)?;
            let g = change_spanning(&u, &v, &m, &n, &s).map_err(op_err)?;
            Ok(genset_outcome("change-span", &g))
        }
        Command::LgroupSolve { input } => {
            let inp: LgroupSolveInput = parse(&read_input(input, stdin)?)?;
            let pres = inp.presentation.to_presentation().map_err(input_err)?;
            let fs = inp
                .terms
                .iter()
                .map(TermJson::to_term)
                .collect::<Result<Vec<_>, _>>()
                .map_err(input_err)?;
            let hb = lgroup_solve(&pres, &fs, piece_cap).map_err(op_err)?;
            Ok(Outcome {
                json: render(&HilbertBasisJson::from_basis(&hb)),
                summary: genset_summary("lgroup-solve", &hb.basis),
            })
        }
        Command::LgroupEq { input } => {
            let inp: LgroupEqInput = parse(&read_input(input, stdin)?)?;
            let pres = inp.presentation.to_presentation().map_err(input_err)?;
            let f = inp.f.to_term().map_err(input_err)?;
            let g = inp.g.to_term().map_err(input_err)?;
            let equal = pl_equal(&pres, &f, &g, piece_cap).map_err(op_err)?;
            let cone = presentation_cone(&pres, piece_cap).map_err(op_err)?;
            Ok(Outcome {
                json: render(&LgroupEqOutput {
                    equal,
                    cone: PolyConeJson::from_polycone(&cone),
                }),
                summary: format!(
                    "lgroup-eq: {} on a zero set of {} convex piece(s)",
                    if equal { "equal" } else { "different" },
                    cone.pieces.len()
                ),
            })
        }
        Command::DemoIrrational { depth } => {
            let rows = irrational_demo(&sqrt2_convergents(*depth as usize)).map_err(op_err)?;
            let mut table = String::from("    p     q  size  basis\n");
            for r in &rows {
                let basis: Vec<String> = r
                    .basis
                    .basis
                    .columns()
                    .iter()
                    .map(|c| format!("({},{})", c[0], c[1]))
                    .collect();
                table.push_str(&format!(
                    "{:>5} {:>5} {:>5}  {}\n",
                    r.p,
                    r.q,
                    r.basis.basis.len(),
                    basis.join(" ")
                ));
            }
            Ok(Outcome {
                json: render(&DemoOutput {
                    rows: rows.iter().map(IrrationalRowJson::from_row).collect(),
                }),
                summary: table.trim_end().to_string(),
            })
        }
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdin = std::io::stdin();
    match run(&cli, &mut stdin) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &out.json) {
                    eprintln!("error: {}: {e}", path.display());
                    return 1;
                }
            } else {
                print!("{}", out.json);
            }
            if !cli.quiet {
                eprintln!("{}", out.summary);
            }
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
