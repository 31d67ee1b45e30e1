//! JSON front end for `cstar-core`.
//!
//! Every subcommand reads its operands from `--input` (a matrix file or a
//! problem object), runs one library operation and writes a [`RunReport`]
//! to stdout or `--out`. Exit codes: 0 on success, 1 when the mathematics
//! refuses the input (for example a non-positive matrix passed to `sqrt`),
//! 2 for usage errors and malformed files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use cstar_core::algebra::{
    quotient, quotient_norm_with, Algebra, ClosureOptions, Element, Field, QuotientNormOptions, SubspaceBasis,
};
use cstar_core::gelfand::{characters_seeded, gelfand_transform, gkz_witness, GkzOutcome, GKZ_DEFAULT_ATTEMPTS};
use cstar_core::linalg::{op_norm, CMat, C64};
use cstar_core::qm::{box_eigenstate, box_energy, cosine_observable, expectation, position_operator, BoxGrid};
use cstar_core::random;
use cstar_core::spectral::{exp_element, neumann_inverse, spectral_radius_limit, spectrum, sqrt_positive};
use cstar_core::states::{gns, universal_rep, vector_state, Functional, State};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Failures of a CLI run, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("MalformedInput: {0}")]
    MalformedInput(String),
    #[error(transparent)]
    Core(#[from] cstar_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 1,
            CliError::Usage(_) | CliError::MalformedInput(_) | CliError::Io(_) => 2,
        }
    }
}

/// `{"rows": r, "cols": c, "data": [[re, im], ...]}`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_cmat(m: &CMat) -> MatrixFile {
        MatrixFile { rows: m.rows(), cols: m.cols(), data: m.data().iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn to_cmat(&self) -> Result<CMat, CliError> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::MalformedInput(format!(
                "{} entries for a {}×{} matrix",
                self.data.len(),
                self.rows,
                self.cols
            )));
        }
        if self.data.iter().flatten().any(|x| !x.is_finite()) {
            return Err(CliError::MalformedInput("non-finite entry".into()));
        }
        let entries = self.data.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        CMat::from_vec(self.rows, self.cols, entries).map_err(|e| CliError::MalformedInput(e.to_string()))
    }
}

/// Input document for commands that need more than one matrix.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub element: Option<MatrixFile>,
    /// Generators of the ambient algebra; the full matrix algebra when absent.
    pub generators: Option<Vec<MatrixFile>>,
    pub ideal: Option<Vec<MatrixFile>>,
    pub include_identity: Option<bool>,
    pub star: Option<bool>,
    /// Density matrix ρ of the functional a ↦ trace(ρa).
    pub density: Option<MatrixFile>,
    /// Unit vector x of the vector state a ↦ ⟨ax, x⟩.
    pub vector: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub residuals: BTreeMap<String, Residual>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Debug, Parser)]
#[command(name = "cstar", version, about = "Finite-dimensional C*-algebra computations over JSON matrix files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Matrix file or problem object.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "complex")]
    field: FieldArg,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Interior grid points for `qm`.
    #[arg(long, global = true, default_value_t = 2000)]
    grid: usize,
    /// Energy levels tabulated by `qm`.
    #[arg(long, global = true, default_value_t = 5)]
    levels: usize,
    /// Box length for `qm`.
    #[arg(long, global = true, default_value_t = 1.0)]
    length: f64,
    /// Largest power for `radius`.
    #[arg(long = "n-max", global = true, default_value_t = 1024)]
    n_max: u64,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Spectrum of the element.
    Spectrum,
    /// Trace of ‖aⁿ‖^(1/n) against the spectral radius.
    Radius,
    /// Exponential of the element.
    Exp,
    /// Positive square root.
    Sqrt,
    /// (𝟙 − a)⁻¹ by the Neumann series.
    Neumann,
    /// Gelfand transform in an abelian algebra.
    Gelfand,
    /// Characters of an abelian algebra, evaluated on its generators.
    Characters,
    /// Invertible element in the kernel of a non-multiplicative functional.
    Gkz,
    /// GNS representation of a state.
    Gns,
    /// Direct sum of GNS representations and its isometry residual.
    Universal,
    /// Norm of the coset of the element modulo an ideal.
    #[command(name = "quotient-norm")]
    QuotientNorm,
    /// Particle-in-a-box expectation table.
    Qm,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Radius => "radius",
            Command::Exp => "exp",
            Command::Sqrt => "sqrt",
            Command::Neumann => "neumann",
            Command::Gelfand => "gelfand",
            Command::Characters => "characters",
            Command::Gkz => "gkz",
            Command::Gns => "gns",
            Command::Universal => "universal",
            Command::QuotientNorm => "quotient-norm",
            Command::Qm => "qm",
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|report| emit_report(&report, cli.out.as_deref())) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Reads a matrix file.
pub fn parse_matrix(path: &Path) -> Result<CMat, CliError> {
    parse_matrix_str(&fs::read_to_string(path)?)
}

pub fn parse_matrix_str(text: &str) -> Result<CMat, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::MalformedInput(e.to_string()))?;
    file.to_cmat()
}

pub fn matrix_to_json(m: &CMat) -> String {
    serde_json::to_string(&MatrixFile::from_cmat(m)).expect("matrix files always serialize")
}

/// Writes the report as pretty JSON to `path`, or to stdout.
pub fn emit_report(report: &RunReport, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| CliError::MalformedInput(e.to_string()))?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses an input document: either a bare matrix file, taken as the
/// element, or a problem object.
pub fn parse_problem_str(text: &str) -> Result<Problem, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::MalformedInput(e.to_string()))?;
    let is_matrix = value.get("rows").is_some();
    let malformed = |e: serde_json::Error| CliError::MalformedInput(e.to_string());
    if is_matrix {
        let element = serde_json::from_value(value).map_err(malformed)?;
        Ok(Problem { element: Some(element), ..Problem::default() })
    } else {
        serde_json::from_value(value).map_err(malformed)
    }
}

fn cpair(z: C64) -> Value {
    json!([z.re, z.im])
}

fn cpairs(zs: &[C64]) -> Value {
    Value::Array(zs.iter().map(|&z| cpair(z)).collect())
}

fn matrix_value(m: &CMat) -> Value {
    serde_json::to_value(MatrixFile::from_cmat(m)).expect("matrix files always serialize")
}

struct Context<'a> {
    cli: &'a Cli,
    problem: Problem,
    field: Field,
    residuals: BTreeMap<String, Residual>,
}

impl Context<'_> {
    fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.insert(name.to_string(), Residual { value, tolerance });
    }

    fn element_matrix(&self) -> Result<CMat, CliError> {
        let file = self.problem.element.as_ref().ok_or_else(|| CliError::Usage("the input needs an element".into()))?;
        square(file.to_cmat()?)
    }

    fn generators(&self) -> Result<Option<Vec<CMat>>, CliError> {
        match &self.problem.generators {
            None => Ok(None),
            Some(gens) if gens.is_empty() => Err(CliError::MalformedInput("empty generator list".into())),
            Some(gens) => gens.iter().map(|g| g.to_cmat().and_then(square)).collect::<Result<_, _>>().map(Some),
        }
    }

    fn closure_options(&self) -> ClosureOptions {
        ClosureOptions {
            include_identity: self.problem.include_identity.unwrap_or(true),
            star: self.problem.star.unwrap_or(true),
            field: self.field,
        }
    }

    /// The algebra named by `generators`, or M_n over the chosen field.
    fn algebra(&self, n: usize) -> Result<Arc<Algebra>, CliError> {
        match self.generators()? {
            Some(gens) => Ok(Algebra::generated(&gens, self.closure_options())?),
            None => Ok(Algebra::full_over(n, self.field)),
        }
    }

    /// Ambient size from whichever operand is present.
    fn ambient_size(&self) -> Result<usize, CliError> {
        let p = &self.problem;
        if let Some(e) = &p.element {
            return Ok(e.rows);
        }
        if let Some(g) = p.generators.as_ref().and_then(|g| g.first()) {
            return Ok(g.rows);
        }
        if let Some(d) = &p.density {
            return Ok(d.rows);
        }
        if let Some(v) = &p.vector {
            return Ok(v.len());
        }
        Err(CliError::Usage("the input names no matrix".into()))
    }

    fn element(&self) -> Result<Element, CliError> {
        let m = self.element_matrix()?;
        let alg = self.algebra(m.rows())?;
        Ok(alg.element(m)?)
    }
}

fn square(m: CMat) -> Result<CMat, CliError> {
    if m.rows() != m.cols() || m.rows() == 0 {
        return Err(CliError::MalformedInput(format!("expected a square matrix, got {}×{}", m.rows(), m.cols())));
    }
    Ok(m)
}

fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let (problem, document) = match &cli.input {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| CliError::MalformedInput(format!("{}: {e}", path.display())))?;
            let problem = parse_problem_str(&text)?;
            let document: Value = serde_json::from_str(&text).map_err(|e| CliError::MalformedInput(e.to_string()))?;
            (problem, document)
        }
        None if matches!(cli.command, Command::Qm) => (Problem::default(), Value::Null),
        None => return Err(CliError::Usage(format!("{} needs --input", cli.command.name()))),
    };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let field = match cli.field {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    };
    let inputs = json!({
        "input": cli.input.as_ref().map(|p| p.display().to_string()),
        "document": document,
        "field": match field { Field::Real => "real", Field::Complex => "complex" },
        "tol": cli.tol,
        "grid": cli.grid,
        "levels": cli.levels,
        "length": cli.length,
        "n_max": cli.n_max,
    });
    let mut ctx = Context { cli, problem, field, residuals: BTreeMap::new() };
    let results = match cli.command {
        Command::Spectrum => cmd_spectrum(&mut ctx)?,
        Command::Radius => cmd_radius(&mut ctx)?,
        Command::Exp => cmd_exp(&mut ctx)?,
        Command::Sqrt => cmd_sqrt(&mut ctx)?,
        Command::Neumann => cmd_neumann(&mut ctx)?,
        Command::Gelfand => cmd_gelfand(&mut ctx)?,
        Command::Characters => cmd_characters(&mut ctx)?,
        Command::Gkz => cmd_gkz(&mut ctx)?,
        Command::Gns => cmd_gns(&mut ctx)?,
        Command::Universal => cmd_universal(&mut ctx)?,
        Command::QuotientNorm => cmd_quotient_norm(&mut ctx)?,
        Command::Qm => cmd_qm(&mut ctx)?,
    };
    Ok(RunReport { command: cli.command.name().to_string(), inputs, results, residuals: ctx.residuals, seed: cli.seed })
}

fn cmd_spectrum(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let s = spectrum(&a, ctx.field)?;
    let norm = a.op_norm();
    ctx.residual("radius_above_norm", (s.radius - norm).max(0.0), 1e-9 * norm.max(1.0));
    Ok(json!({ "points": cpairs(&s.points), "radius": s.radius, "norm": norm }))
}

fn cmd_radius(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let t = spectral_radius_limit(&a, ctx.cli.n_max)?;
    ctx.residual("estimate_gap", t.gap, ctx.cli.tol.unwrap_or(1e-3));
    let entries: Vec<Value> = t.entries.iter().map(|&(n, r)| json!([n, r])).collect();
    Ok(json!({
        "entries": entries,
        "final_root": t.final_root,
        "estimate": t.estimate,
        "infimum": t.infimum,
        "eigen_radius": t.eigen_radius,
    }))
}

fn cmd_exp(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let e = exp_element(&a)?;
    let full = Algebra::full(a.matrix().rows());
    let e_star = exp_element(&full.element(a.matrix().adjoint())?)?;
    let scale = 1.0 + e.matrix().frobenius_norm();
    ctx.residual("adjoint_consistency", e_star.matrix().distance(&e.matrix().adjoint()), 1e-9 * scale);
    Ok(json!({ "matrix": matrix_value(e.matrix()) }))
}

fn cmd_sqrt(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let r = sqrt_positive(&a)?;
    let square = r.matrix().matmul(r.matrix());
    ctx.residual("square_residual", square.distance(a.matrix()), 1e-8 * a.op_norm().max(1.0));
    Ok(json!({ "matrix": matrix_value(r.matrix()) }))
}

fn cmd_neumann(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let s = neumann_inverse(&a, ctx.cli.tol.unwrap_or(1e-12))?;
    let one = a.algebra().unit_matrix();
    let check = (&one - a.matrix()).matmul(s.matrix());
    ctx.residual("inverse_residual", check.distance(&one), 1e-10 * (1.0 + s.op_norm()));
    Ok(json!({ "matrix": matrix_value(s.matrix()), "norm": a.op_norm() }))
}

/// The algebra of `generators`, or the one generated by the element itself.
fn abelian_algebra(ctx: &Context) -> Result<Arc<Algebra>, CliError> {
    match ctx.generators()? {
        Some(gens) => Ok(Algebra::generated(&gens, ctx.closure_options())?),
        None => Ok(Algebra::generated(&[ctx.element_matrix()?], ctx.closure_options())?),
    }
}

fn cmd_gelfand(ctx: &mut Context) -> Result<Value, CliError> {
    let alg = abelian_algebra(ctx)?;
    let a = alg.element(ctx.element_matrix()?)?;
    let spec = characters_seeded(&alg, ctx.cli.seed)?;
    let hat = gelfand_transform(&a, &spec);
    let sup = hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let norm = a.op_norm();
    if alg.is_star_closed() {
        ctx.residual("isometry", (sup - norm).abs(), 1e-8 * norm.max(1.0));
    }
    let s = spectrum(&a, Field::Complex)?;
    ctx.residual("spectrum_distance", cstar_core::linalg::hausdorff(&s.points, &hat), 1e-6 * (1.0 + s.radius));
    Ok(json!({ "transform": cpairs(&hat), "sup": sup, "norm": norm, "characters": spec.characters.len() }))
}

fn cmd_characters(ctx: &mut Context) -> Result<Value, CliError> {
    let alg = abelian_algebra(ctx)?;
    let gens = match ctx.generators()? {
        Some(g) => g,
        None => vec![ctx.element_matrix()?],
    };
    let spec = characters_seeded(&alg, ctx.cli.seed)?;
    let one = alg.unit_matrix();
    let (mut defect, mut unit): (f64, f64) = (0.0, 0.0);
    let mut rows = Vec::new();
    for chi in &spec.characters {
        for g in &gens {
            for h in &gens {
                defect = defect.max((chi.eval(&g.matmul(h)) - chi.eval(g) * chi.eval(h)).norm());
            }
        }
        if alg.is_unital() {
            unit = unit.max((chi.eval(&one) - C64::new(1.0, 0.0)).norm());
        }
        rows.push(cpairs(&gens.iter().map(|g| chi.eval(g)).collect::<Vec<_>>()));
    }
    let scale = gens.iter().map(op_norm).fold(1.0, f64::max);
    ctx.residual("multiplicativity", defect, 1e-7 * scale * scale);
    if alg.is_unital() {
        ctx.residual("unit", unit, 1e-9);
    }
    Ok(json!({
        "count": spec.characters.len(),
        "complexified": spec.complexified,
        "values_on_generators": rows,
    }))
}

fn functional_from_density(ctx: &Context, alg: &Arc<Algebra>) -> Result<Functional, CliError> {
    let rho = ctx
        .problem
        .density
        .as_ref()
        .ok_or_else(|| CliError::Usage("the input needs a density".into()))?
        .to_cmat()
        .and_then(square)?;
    Ok(Functional::from_density(alg, &rho)?)
}

fn cmd_gkz(ctx: &mut Context) -> Result<Value, CliError> {
    let alg = ctx.algebra(ctx.ambient_size()?)?;
    let raw = functional_from_density(ctx, &alg)?;
    let at_one = raw.at_identity().ok_or(cstar_core::Error::NotUnital)?;
    if at_one.norm() <= 1e-12 {
        return Err(cstar_core::Error::NotNormalized { value: at_one.re }.into());
    }
    let phi = raw.scale(at_one.inv());
    match gkz_witness(&alg, &phi, ctx.cli.seed, GKZ_DEFAULT_ATTEMPTS)? {
        GkzOutcome::Character => Ok(json!({ "character": true })),
        GkzOutcome::Witness { element, sigma_min, value } => {
            ctx.residual("witness_value", value.norm(), 1e-9);
            Ok(json!({
                "character": false,
                "witness": matrix_value(element.matrix()),
                "sigma_min": sigma_min,
                "value": cpair(value),
            }))
        }
    }
}

fn state_for(ctx: &Context, alg: &Arc<Algebra>) -> Result<State, CliError> {
    let p = &ctx.problem;
    if let Some(v) = &p.vector {
        let x: Vec<C64> = v.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        return Ok(vector_state(alg, &x)?);
    }
    if p.density.is_some() {
        return Ok(State::new(functional_from_density(ctx, alg)?)?);
    }
    Ok(State::trace_state(alg)?)
}

fn cmd_gns(ctx: &mut Context) -> Result<Value, CliError> {
    let alg = ctx.algebra(ctx.ambient_size()?)?;
    let state = state_for(ctx, &alg)?;
    let g = gns(&alg, &state)?;
    let mut rng = random::rng(ctx.cli.seed);
    let (mut hom, mut star, mut contraction): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..100 {
        let (a, b) = (random::element(&mut rng, &alg), random::element(&mut rng, &alg));
        let (pa, pb) = (g.apply(a.matrix()), g.apply(b.matrix()));
        hom = hom.max(g.apply(&a.matrix().matmul(b.matrix())).distance(&pa.matmul(&pb)));
        star = star.max(g.apply(&a.matrix().adjoint()).distance(&pa.adjoint()));
        contraction = contraction.max(op_norm(&pa) - a.op_norm());
    }
    ctx.residual("homomorphism", hom, 1e-9);
    ctx.residual("star", star, 1e-9);
    ctx.residual("contraction", contraction.max(0.0), 1e-9);
    let mut results = json!({
        "hilbert_dim": g.hilbert_dim,
        "algebra_dim": alg.dim(),
        "cyclic_vector": g.cyclic_vector.as_deref().map(cpairs),
    });
    if ctx.problem.element.is_some() {
        let a = alg.element(ctx.element_matrix()?)?;
        results["representation"] = matrix_value(&g.apply(a.matrix()));
    }
    Ok(results)
}

fn cmd_universal(ctx: &mut Context) -> Result<Value, CliError> {
    let alg = ctx.algebra(ctx.ambient_size()?)?;
    let extra = match &ctx.problem.density {
        Some(_) => vec![functional_from_density(ctx, &alg)?],
        None => Vec::new(),
    };
    let report = universal_rep(&alg, &extra, ctx.cli.seed)?;
    ctx.residual("isometry", report.max_isometry_residual, 1e-7);
    Ok(json!({
        "states_used": report.states_used,
        "representation_dim": report.representation.dim(),
        "algebra_dim": alg.dim(),
    }))
}

fn cmd_quotient_norm(ctx: &mut Context) -> Result<Value, CliError> {
    let a = ctx.element()?;
    let alg = Arc::clone(a.algebra());
    let ideal_files = ctx.problem.ideal.as_ref().ok_or_else(|| CliError::Usage("the input needs an ideal".into()))?;
    let mats = ideal_files.iter().map(|m| m.to_cmat().and_then(square)).collect::<Result<Vec<_>, _>>()?;
    let ideal = SubspaceBasis::span(&alg, &mats)?;
    let q = quotient(&alg, &ideal)?;
    let opts = QuotientNormOptions { seed: ctx.cli.seed, ..QuotientNormOptions::default() };
    let value = quotient_norm_with(&q, &a, opts)?;
    ctx.residual("above_norm", (value - a.op_norm()).max(0.0), 1e-9 * a.op_norm().max(1.0));
    Ok(json!({ "value": value, "norm": a.op_norm(), "quotient_dim": q.dim() }))
}

fn cmd_qm(ctx: &mut Context) -> Result<Value, CliError> {
    let cli = ctx.cli;
    let g = BoxGrid::new(cli.length, cli.grid)?;
    let (x, cos) = (position_operator(&g), cosine_observable(&g));
    let (mut pos_dev, mut cos_dev, mut norm_dev): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut table = Vec::new();
    for n in 1..=cli.levels {
        let psi = box_eigenstate(&g, n)?;
        let ex = expectation(&x, &psi)?;
        let ec = expectation(&cos, &psi)?;
        let target = if n == 1 { 1.0 } else { 0.0 };
        pos_dev = pos_dev.max((ex.re - cli.length / 2.0).abs());
        cos_dev = cos_dev.max((ec.re - target).abs());
        norm_dev = norm_dev.max((psi.norm_sqr() - 1.0).abs());
        table.push(json!({ "n": n, "energy": box_energy(&g, n), "position": ex.re, "cosine": ec.re }));
    }
    ctx.residual("position_vs_half_length", pos_dev, 1e-3 * cli.length);
    ctx.residual("cosine_vs_closed_form", cos_dev, 1e-3);
    ctx.residual("normalization", norm_dev, 1e-9);
    Ok(json!({ "table": table, "spacing": g.spacing() }))
}
