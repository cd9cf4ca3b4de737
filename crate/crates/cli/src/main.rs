//! dulac: exact computations with polynomial contraction jets and their
//! invariant real hypersurfaces.
//!
//! Every subcommand reads JSON (file path or `-` for stdin), dispatches one
//! library operation, and prints a deterministic result: identical
//! invocations produce byte-identical output. All numbers on the wire are
//! exact rational strings.
//!
//! Exit codes: 0 on success (an `Inconsistent` solver outcome is a result,
//! not an error), 2 on malformed input, 3 on a precondition violation such
//! as an inadmissible tangent index.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dulac_core::demo;
use dulac_core::hypersurface::{
    hermitian_report, solve_invariant_surfaces, verify_invariance, HypersurfaceModel,
    SolutionSpace, SolutionStatus,
};
use dulac_core::modelgeom::{
    curve_membership, homogeneity_weights, monomial_curve_search, FormalCurve, WeightVector,
};
use dulac_core::normalform::{default_order, normalize};
use dulac_core::polyring::{JetMap, RealPoly};
use dulac_core::spectrum::Spectrum;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dulac",
    version,
    about = "Exact toolkit for contraction jets, resonances, and invariant real hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Fill missing inputs from a built-in fixture (available: powers-1-2-4)
    #[arg(long, value_name = "NAME")]
    demo: Option<String>,
}

#[derive(Args)]
struct SpectrumIn {
    /// Spectrum JSON: file path, or - for stdin
    #[arg(long, value_name = "PATH")]
    spectrum: Option<String>,
}

#[derive(Args)]
struct JetIn {
    /// Jet JSON: file path, or - for stdin
    #[arg(long, value_name = "PATH")]
    jet: Option<String>,
}

#[derive(Args)]
struct SurfaceIn {
    /// Surface model JSON: file path, or - for stdin
    #[arg(long, value_name = "PATH")]
    surface: Option<String>,
}

#[derive(Args)]
struct CurveIn {
    /// Curve JSON: file path, or - for stdin
    #[arg(long, value_name = "PATH")]
    curve: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the resonant multi-indices of one eigenvalue block
    Resonances {
        #[command(flatten)]
        spectrum: SpectrumIn,
        /// Block index, 1-based
        #[arg(long)]
        nu: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// List the extended resonance pairs of one eigenvalue block
    ExtResonances {
        #[command(flatten)]
        spectrum: SpectrumIn,
        /// Block index, 1-based
        #[arg(long)]
        nu: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// List the blocks admissible as tangent directions (real eigenvalue)
    TangentIndices {
        #[command(flatten)]
        spectrum: SpectrumIn,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the Poincare-Dulac normal form of a contraction jet
    Normalize {
        #[command(flatten)]
        spectrum: SpectrumIn,
        #[command(flatten)]
        jet: JetIn,
        /// Truncation order (default: the spectrum's resonance degree bound)
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve for every invariant surface tangent to one block
    InvariantSolve {
        #[command(flatten)]
        spectrum: SpectrumIn,
        #[command(flatten)]
        jet: JetIn,
        /// Tangent block index, 1-based
        #[arg(long = "i")]
        i: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check the invariance identity for a given surface
    Verify {
        #[command(flatten)]
        spectrum: SpectrumIn,
        #[command(flatten)]
        jet: JetIn,
        #[command(flatten)]
        surface: SurfaceIn,
        /// Truncate the residual at this total degree (default: exact)
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Recover weighted-homogeneity weights of a surface model
    Weights {
        #[command(flatten)]
        surface: SurfaceIn,
        #[command(flatten)]
        common: Common,
    },
    /// Membership residual of a curve in a surface model
    CurveCheck {
        #[command(flatten)]
        surface: SurfaceIn,
        #[command(flatten)]
        curve: CurveIn,
        /// Truncate the residual at this total degree (default: exact)
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Bounded search for monomial curves inside a surface model
    CurveSearch {
        #[command(flatten)]
        surface: SurfaceIn,
        /// Largest exponent tried per component
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Normalize, solve, and run every diagnostic in one pass
    Report {
        #[command(flatten)]
        spectrum: SpectrumIn,
        #[command(flatten)]
        jet: JetIn,
        /// Tangent block index, 1-based
        #[arg(long = "i")]
        i: Option<usize>,
        /// Normalization order (default: the spectrum's resonance degree bound)
        #[arg(long)]
        order: Option<u32>,
        /// Curve search bound
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    /// Malformed input: unreadable file, bad JSON, schema violation.
    Schema(String),
    /// Well-formed input that violates an operation's precondition.
    Precondition(String),
}

fn schema<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Schema(format!("{what}: {e}"))
}

fn precondition<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Precondition(e.to_string())
}

/// Loads the JSON inputs of one invocation, tracking stdin so only a single
/// input can claim it, and substituting fixture data when `--demo` is given.
struct Inputs {
    demo: bool,
    stdin_used: bool,
}

impl Inputs {
    fn new(common: &Common) -> Result<Self, Failure> {
        let demo = match &common.demo {
            None => false,
            Some(name) if name == demo::NAME => true,
            Some(name) => {
                return Err(Failure::Schema(format!(
                    "unknown demo {name:?}; available: {}",
                    demo::NAME
                )))
            }
        };
        Ok(Inputs { demo, stdin_used: false })
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::Schema("only one input may come from stdin".into()));
            }
            self.stdin_used = true;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Schema(format!("stdin: {e}")))?;
            Ok(buf)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Schema(format!("{path}: {e}")))
        }
    }

    fn load<T: DeserializeOwned>(
        &mut self,
        what: &str,
        path: &Option<String>,
        fixture: fn() -> T,
    ) -> Result<T, Failure> {
        match path {
            Some(p) => {
                let text = self.read(p)?;
                serde_json::from_str(&text).map_err(schema(what))
            }
            None if self.demo => Ok(fixture()),
            None => Err(Failure::Schema(format!(
                "missing --{what} (pass a file, -, or use --demo {})",
                demo::NAME
            ))),
        }
    }

    fn spectrum(&mut self, arg: &SpectrumIn) -> Result<Spectrum, Failure> {
        self.load("spectrum", &arg.spectrum, demo::spectrum)
    }

    fn jet(&mut self, arg: &JetIn) -> Result<JetMap, Failure> {
        self.load("jet", &arg.jet, demo::contraction)
    }

    fn surface(&mut self, arg: &SurfaceIn) -> Result<HypersurfaceModel, Failure> {
        self.load("surface", &arg.surface, demo::surface)
    }

    fn curve(&mut self, arg: &CurveIn) -> Result<FormalCurve, Failure> {
        self.load("curve", &arg.curve, demo::curve)
    }

    /// A 1-based index flag, falling back to the fixture's tangent block.
    fn index(&self, flag: Option<usize>, name: &str) -> Result<usize, Failure> {
        match flag {
            Some(v) => Ok(v),
            None if self.demo => Ok(3),
            None => Err(Failure::Schema(format!("missing --{name}"))),
        }
    }
}

/// Converts a 1-based block index from the command line to the internal
/// 0-based index, rejecting out-of-range values.
fn block_index(s: &Spectrum, one_based: usize, flag: &str) -> Result<usize, Failure> {
    if one_based == 0 || one_based > s.num_blocks() {
        return Err(Failure::Precondition(format!(
            "{flag} = {one_based} is out of range: the spectrum has {} block(s), indexed from 1",
            s.num_blocks()
        )));
    }
    Ok(one_based - 1)
}

fn val<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize infallibly")
}

/// Object builder; serde_json orders keys alphabetically, which keeps the
/// output byte-stable.
fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

fn emit(format: Format, json: Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&json).expect("value prints"),
        Format::Text => text.trim_end().to_string(),
    }
}

fn format_index(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(", "))
}

fn format_pair(i: &[u32], iprime: &[u32]) -> String {
    let a: Vec<String> = i.iter().map(u32::to_string).collect();
    let b: Vec<String> = iprime.iter().map(u32::to_string).collect();
    format!("({} | {})", a.join(", "), b.join(", "))
}

/// Renders a polynomial in one variable with `t` in place of `z1`.
fn poly_in_t(p: &RealPoly) -> String {
    p.to_string().replace("zb1", "tb").replace("z1", "t")
}

fn curve_text(c: &FormalCurve) -> String {
    let comps: Vec<String> = c.components().iter().map(poly_in_t).collect();
    format!("({})", comps.join(", "))
}

fn surface_equation(m: &HypersurfaceModel) -> String {
    let t = m.tangent_var() + 1;
    format!("z{t} + zb{t} = {}", m.rho())
}

fn jet_lines(out: &mut String, label: char, f: &JetMap) {
    for j in 0..f.n() {
        let _ = writeln!(out, "  {label}{}(z) = {}", j + 1, f.component(j));
    }
}

fn weights_text(w: &Option<WeightVector>) -> String {
    match w {
        Some(w) => {
            let r: Vec<String> = w.r.iter().map(u32::to_string).collect();
            format!("weights: r = ({}), target = {}", r.join(", "), w.target)
        }
        None => "weights: none (the support is not weighted homogeneous)".into(),
    }
}

fn solution_text(out: &mut String, space: &SolutionSpace) {
    match space.status {
        SolutionStatus::Inconsistent => {
            let _ = writeln!(out, "status: Inconsistent");
            let _ = writeln!(out, "no invariant surface exists over this block");
        }
        SolutionStatus::Solvable => {
            let _ = writeln!(out, "status: Solvable");
            let _ = writeln!(out, "real dimension: {}", space.real_dimension);
            if let Some(p) = &space.particular {
                let _ = writeln!(out, "particular solution: {}", surface_equation(p));
            }
            for (k, dir) in space.kernel_basis.iter().enumerate() {
                let _ = writeln!(out, "kernel direction {}: rho = {}", k + 1, dir.rho());
            }
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Resonances { spectrum, nu, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let nu1 = inputs.index(nu, "nu")?;
            let block = block_index(&s, nu1, "--nu")?;
            let list = s.resonances(block).map_err(precondition)?;
            let json = object(vec![
                ("spectrum", val(&s)),
                ("nu", val(&nu1)),
                ("resonances", val(&list)),
            ]);
            let mut text = format!("resonances of block {nu1}: {} total\n", list.len());
            for r in &list {
                let _ = writeln!(text, "  I = {}", format_index(&r.i));
            }
            Ok(emit(common.format, json, text))
        }
        Command::ExtResonances { spectrum, nu, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let nu1 = inputs.index(nu, "nu")?;
            let block = block_index(&s, nu1, "--nu")?;
            let list = s.extended_resonances(block).map_err(precondition)?;
            let json = object(vec![
                ("spectrum", val(&s)),
                ("nu", val(&nu1)),
                ("extended_resonances", val(&list)),
            ]);
            let mut text =
                format!("extended resonances of block {nu1}: {} total\n", list.len());
            for p in &list {
                let _ = writeln!(text, "  (I | I') = {}", format_pair(&p.i, &p.iprime));
            }
            Ok(emit(common.format, json, text))
        }
        Command::TangentIndices { spectrum, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let idx: Vec<usize> =
                s.admissible_tangent_indices().iter().map(|b| b + 1).collect();
            let json =
                object(vec![("spectrum", val(&s)), ("tangent_indices", val(&idx))]);
            let shown: Vec<String> = idx.iter().map(usize::to_string).collect();
            let text = format!(
                "admissible tangent blocks (real eigenvalue, 1-based): {}\n",
                if shown.is_empty() { "none".into() } else { shown.join(", ") }
            );
            Ok(emit(common.format, json, text))
        }
        Command::Normalize { spectrum, jet, order, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let f = inputs.jet(&jet)?;
            let order = order.unwrap_or_else(|| default_order(&s));
            let r = normalize(&f, &s, order).map_err(precondition)?;
            let mut json = val(&r);
            let obj = json.as_object_mut().expect("result is an object");
            obj.insert("spectrum".into(), val(&s));
            let mut text = format!(
                "normalized to order {order}; conjugacy residual re-checked, identically zero\n"
            );
            text.push_str("normal form:\n");
            jet_lines(&mut text, 'f', &r.normal_form);
            text.push_str("conjugator:\n");
            jet_lines(&mut text, 'h', &r.conjugator);
            Ok(emit(common.format, json, text))
        }
        Command::InvariantSolve { spectrum, jet, i, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let f = inputs.jet(&jet)?;
            let i1 = inputs.index(i, "i")?;
            let block = block_index(&s, i1, "--i")?;
            let space = solve_invariant_surfaces(&f, &s, block).map_err(precondition)?;
            let mut json = val(&space);
            let obj = json.as_object_mut().expect("result is an object");
            obj.insert("spectrum".into(), val(&s));
            obj.insert("tangent_index".into(), val(&i1));
            let mut text = format!("invariant surfaces over block {i1}\n");
            solution_text(&mut text, &space);
            Ok(emit(common.format, json, text))
        }
        Command::Verify { spectrum, jet, surface, order, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let f = inputs.jet(&jet)?;
            let m = inputs.surface(&surface)?;
            let residual = verify_invariance(&f, &s, &m, order).map_err(precondition)?;
            let json = object(vec![
                ("spectrum", val(&s)),
                ("order", val(&order)),
                ("residual", val(&residual)),
                ("residual_zero", val(&residual.is_zero())),
            ]);
            let mut text = format!("surface: {}\n", surface_equation(&m));
            let shown = match order {
                Some(k) => format!("through degree {k}"),
                None => "exact".into(),
            };
            let _ = writeln!(text, "residual ({shown}): {}", residual);
            let verdict = if residual.is_zero() {
                "the surface is invariant"
            } else {
                "the surface is NOT invariant"
            };
            let _ = writeln!(text, "{verdict}");
            Ok(emit(common.format, json, text))
        }
        Command::Weights { surface, common } => {
            let mut inputs = Inputs::new(&common)?;
            let m = inputs.surface(&surface)?;
            let w = homogeneity_weights(&m);
            let json = object(vec![
                ("nvars", val(&m.nvars())),
                ("tangent_index", val(&(m.tangent_var() + 1))),
                ("weights", val(&w)),
            ]);
            let text = format!("{}\n", weights_text(&w));
            Ok(emit(common.format, json, text))
        }
        Command::CurveCheck { surface, curve, order, common } => {
            let mut inputs = Inputs::new(&common)?;
            let m = inputs.surface(&surface)?;
            let phi = inputs.curve(&curve)?;
            let residual = curve_membership(&m, &phi, order).map_err(precondition)?;
            let json = object(vec![
                ("order", val(&order)),
                ("residual", val(&residual)),
                ("contained", val(&residual.is_zero())),
            ]);
            let mut text = format!("curve: phi(t) = {}\n", curve_text(&phi));
            let _ = writeln!(text, "surface: {}", surface_equation(&m));
            let _ = writeln!(text, "residual: {}", poly_in_t(&residual));
            let verdict = if residual.is_zero() {
                "the curve lies in the surface"
            } else {
                "the curve does NOT lie in the surface"
            };
            let _ = writeln!(text, "{verdict}");
            Ok(emit(common.format, json, text))
        }
        Command::CurveSearch { surface, dmax, common } => {
            let mut inputs = Inputs::new(&common)?;
            let m = inputs.surface(&surface)?;
            let curves = monomial_curve_search(&m, dmax).map_err(precondition)?;
            let json = object(vec![
                ("dmax", val(&dmax)),
                ("count", val(&curves.len())),
                ("curves", val(&curves)),
            ]);
            let mut text = format!("surface: {}\n", surface_equation(&m));
            if curves.is_empty() {
                let _ = writeln!(
                    text,
                    "no monomial curve found up to degree {dmax} \
                     (evidence of finite type at this bound, not a proof)"
                );
            } else {
                let _ = writeln!(text, "found {} curve(s) up to degree {dmax}:", curves.len());
                for c in &curves {
                    let _ = writeln!(text, "  phi(t) = {}", curve_text(c));
                }
            }
            Ok(emit(common.format, json, text))
        }
        Command::Report { spectrum, jet, i, order, dmax, common } => {
            let mut inputs = Inputs::new(&common)?;
            let s = inputs.spectrum(&spectrum)?;
            let f = inputs.jet(&jet)?;
            let i1 = inputs.index(i, "i")?;
            let block = block_index(&s, i1, "--i")?;
            let order = order.unwrap_or_else(|| default_order(&s));
            let nf = normalize(&f, &s, order).map_err(precondition)?;
            let space =
                solve_invariant_surfaces(&nf.normal_form, &s, block).map_err(precondition)?;
            let diagnostics = match (&space.status, &space.particular) {
                (SolutionStatus::Solvable, Some(p)) => {
                    let hermitian = hermitian_report(&s, p).map_err(precondition)?;
                    let weights = homogeneity_weights(p);
                    let curves = monomial_curve_search(p, dmax).map_err(precondition)?;
                    Some((hermitian, weights, curves))
                }
                _ => None,
            };

            let (h_val, w_val, c_val) = match &diagnostics {
                Some((h, w, c)) => (val(h), val(w), val(c)),
                None => (Value::Null, Value::Null, Value::Null),
            };
            let json = object(vec![
                ("spectrum", val(&s)),
                ("tangent_index", val(&i1)),
                ("order", val(&order)),
                ("normal_form", val(&nf.normal_form)),
                ("conjugator", val(&nf.conjugator)),
                ("residual_zero", val(&true)),
                ("solution", val(&space)),
                ("hermitian", h_val),
                ("weights", w_val),
                ("dmax", val(&dmax)),
                ("curves", c_val),
            ]);

            let mut text = String::new();
            let _ = writeln!(text, "normal form (order {order}):");
            jet_lines(&mut text, 'f', &nf.normal_form);
            let _ = writeln!(text, "invariant surfaces over block {i1}:");
            solution_text(&mut text, &space);
            if let Some((h, w, curves)) = &diagnostics {
                let _ = writeln!(text, "model classification: {}", h.label);
                let _ = writeln!(
                    text,
                    "hermitian inertia (positive, negative, zero): ({}, {}, {})",
                    h.positive, h.negative, h.zero
                );
                let _ = writeln!(text, "{}", weights_text(w));
                if curves.is_empty() {
                    let _ = writeln!(text, "no monomial curve found up to degree {dmax}");
                } else {
                    let _ =
                        writeln!(text, "curves found (degree bound {dmax}), on the particular solution:");
                    for c in curves {
                        let _ = writeln!(text, "  phi(t) = {}", curve_text(c));
                    }
                }
            }
            Ok(emit(common.format, json, text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
