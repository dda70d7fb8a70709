//! Command-line front end: one JSON problem file in, one report out.
//!
//! Every report is `{"command", "status", "result", "certificate"}` on
//! success and `{"command", "status", "error": {"name", "message",
//! "witness"}}` on failure. Exit codes: 0 success, 1 domain error, 2
//! malformed input.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::exterior::{ExteriorError, MAX_ALTERNATION_ORDER};
use crate::free_module::{FreeModuleError, QMatrix, SectionMatrix, SectionVector};
use crate::json::{
    kform_to_json, kform_from_json, matrix_from_json, matrix_to_json, open_from_json, open_to_json,
    polynomial_to_json, compact_section_json, vector_to_json, FormatError,
};
use crate::scalar::Rational;
use crate::sheaf::{check_completeness, report_json, ConstantPresheaf, FunctionSheaf, Presheaf, SheafError};
use crate::site::{FiniteSpace, OpenSet, SiteError, SpaceSpec};
use crate::spectra::{char_poly, cayley_hamilton_check, eigen_sections, SpectraError};
use crate::symplectic::random::{random_invertible, random_symplectic, small_rational};
use crate::symplectic::{
    check_form, congruence, darboux_basis, pairing, skew_normal_form, standard_form, standard_sum_decomposition,
    SymplecticError, SymplecticMap,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

/// Random argument samples drawn by `--seed` self-checks.
const SELF_CHECK_SAMPLES: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "sheafsym", version, about = "Exact symplectic linear algebra over sheaves on finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Problem file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Seed for randomized self-checks; omitted means no self-check.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock timing (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Symplectic basis of a nondegenerate skew form.
    Darboux,
    /// Block normal form of a skew form of constant rank.
    NormalForm,
    /// Check ᵗM·Ω₂·M = Ω₁ (default Ω₁ = Ω₂ = J).
    CheckSymplectic,
    /// Characteristic polynomial with a Cayley–Hamilton certificate.
    Charpoly,
    /// Glued rational eigenpairs.
    Eigen,
    /// Check the S1/S2 axioms of a sampled presheaf over a cover.
    SheafCheck,
    /// Exterior product of two forms.
    Wedge,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Darboux => "darboux",
            Command::NormalForm => "normal-form",
            Command::CheckSymplectic => "check-symplectic",
            Command::Charpoly => "charpoly",
            Command::Eigen => "eigen",
            Command::SheafCheck => "sheaf-check",
            Command::Wedge => "wedge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

/// Exit code and rendered standard output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug, Clone, PartialEq)]
enum CliError {
    Malformed(String),
    Domain { name: String, message: String, witness: Value },
}

impl CliError {
    fn domain(name: &str, message: impl fmt::Display, witness: Value) -> Self {
        CliError::Domain {
            name: name.to_string(),
            message: message.to_string(),
            witness,
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Malformed(message) => json!({"name": "MalformedInput", "message": message, "witness": null}),
            CliError::Domain { name, message, witness } => {
                json!({"name": name, "message": message, "witness": witness})
            }
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Malformed(e.0)
    }
}

/// Parses `argv` (program name first), runs the subcommand and renders the
/// report. Never panics on bad input and never touches the process state.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                };
            }
            let command = args.get(1).map_or("unknown".into(), |a| a.to_string_lossy().into_owned());
            let err = CliError::Malformed(e.render().to_string().trim_end().to_string());
            return finish(&command, Err(err), json_requested(&args), None);
        }
    };
    let start = Instant::now();
    let result = match &cli.input {
        None => Err(CliError::Malformed("missing required --input <path>".into())),
        Some(path) => load_problem(path).and_then(|p| dispatch(cli.command, &p, cli.seed)),
    };
    let timing = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    finish(cli.command.name(), result, cli.output == OutputFormat::Json, timing)
}

fn json_requested(args: &[OsString]) -> bool {
    args.windows(2).any(|w| w[0] == "--output" && w[1] == "json") || args.iter().any(|a| a == "--output=json")
}

fn finish(command: &str, result: Result<(Value, Value), CliError>, as_json: bool, timing: Option<f64>) -> Outcome {
    let (code, mut report) = match result {
        Ok((result, certificate)) => (
            EXIT_OK,
            json!({"command": command, "status": "ok", "result": result, "certificate": certificate}),
        ),
        Err(e) => (e.code(), json!({"command": command, "status": "error", "error": e.to_json()})),
    };
    if let Some(ms) = timing {
        report["timing_ms"] = json!(ms);
    }
    let stdout = if as_json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else {
        render_text(&report)
    };
    Outcome { code, stdout }
}

struct Problem {
    space: FiniteSpace,
    open: OpenSet,
    body: Map<String, Value>,
}

impl Problem {
    fn field(&self, name: &str) -> Result<&Value, CliError> {
        self.body
            .get(name)
            .ok_or_else(|| CliError::Malformed(format!("problem file needs a {name:?} field")))
    }

    fn matrix(&self, name: &str) -> Result<SectionMatrix, CliError> {
        Ok(matrix_from_json(&self.space, self.open, self.field(name)?)?)
    }

    fn optional_matrix(&self, name: &str) -> Result<Option<SectionMatrix>, CliError> {
        match self.body.get(name) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => Ok(Some(matrix_from_json(&self.space, self.open, v)?)),
        }
    }

    fn labels(&self, u: OpenSet) -> Value {
        open_to_json(&self.space, u)
    }

    fn point(&self, p: usize) -> Value {
        json!(self.space.label(p))
    }
}

fn load_problem(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("invalid JSON: {e}")))?;
    let Value::Object(body) = value else {
        return Err(CliError::Malformed("problem file must be a JSON object".into()));
    };
    let space = match body.get("space") {
        None => FiniteSpace::indiscrete(1),
        Some(v) => {
            let spec: SpaceSpec =
                serde_json::from_value(v.clone()).map_err(|e| CliError::Malformed(format!("bad space: {e}")))?;
            FiniteSpace::from_spec(&spec).map_err(|e: SiteError| CliError::Malformed(format!("bad space: {e}")))?
        }
    };
    let open = match body.get("open") {
        None => space.whole(),
        Some(v) => open_from_json(&space, v)?,
    };
    Ok(Problem { space, open, body })
}

fn dispatch(command: Command, p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    match command {
        Command::Darboux => darboux(p, seed),
        Command::NormalForm => normal_form(p, seed),
        Command::CheckSymplectic => check_symplectic(p, seed),
        Command::Charpoly => charpoly(p, seed),
        Command::Eigen => eigen(p),
        Command::SheafCheck => sheaf_check(p),
        Command::Wedge => wedge(p, seed),
    }
}

fn self_check_json(seed: u64, passed: bool) -> Value {
    json!({"seed": seed, "samples": SELF_CHECK_SAMPLES, "passed": passed})
}

fn self_check_failed(what: &str, seed: u64) -> CliError {
    CliError::domain("SelfCheckFailed", format!("{what} disagreed on a random sample"), json!({"seed": seed}))
}

fn random_vector(rng: &mut ChaCha8Rng, domain: OpenSet, n: usize) -> SectionVector {
    SectionVector::from_pointwise(domain, n, |_| (0..n).map(|_| small_rational(rng, 4)).collect())
}

fn darboux(p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    let omega = p.matrix("form")?;
    let basis = darboux_basis(&omega).map_err(|e| symplectic_error(p, e))?;
    let change = basis.change_of_basis();
    let gram = congruence(&omega, &change).map_err(|e| free_module_error(p, e))?;
    let mut certificate = json!({"gram": matrix_to_json(&p.space, &gram)});
    if let Some(seed) = seed {
        let sum = standard_sum_decomposition(&basis).map_err(|e| symplectic_error(p, e))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SELF_CHECK_SAMPLES {
            let x = random_vector(&mut rng, p.open, omega.rows());
            let y = random_vector(&mut rng, p.open, omega.rows());
            let via_form = sum.evaluate(&[x.clone(), y.clone()]).map_err(|e| exterior_error(p, e))?;
            if via_form != pairing(&omega, &x, &y).map_err(|e| free_module_error(p, e))? {
                return Err(self_check_failed("Σ sᵢ*∧tᵢ* and the Gram form", seed));
            }
        }
        certificate["self_check"] = self_check_json(seed, true);
    }
    let result = json!({
        "m": basis.m(),
        "basis": basis.vectors().iter().map(|v| vector_to_json(&p.space, v)).collect::<Vec<_>>(),
        "change_of_basis": matrix_to_json(&p.space, &change),
    });
    Ok((result, certificate))
}

fn normal_form(p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    let omega = p.matrix("form")?;
    let (m, basis) = skew_normal_form(&omega).map_err(|e| symplectic_error(p, e))?;
    let change = basis.change_of_basis();
    let gram = congruence(&omega, &change).map_err(|e| free_module_error(p, e))?;
    let mut certificate = json!({"gram": matrix_to_json(&p.space, &gram)});
    if let Some(seed) = seed {
        // Rank is invariant under congruence by invertible matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let before = check_form(&omega).map_err(|e| symplectic_error(p, e))?.ranks;
        for _ in 0..SELF_CHECK_SAMPLES {
            let q = SectionMatrix::constant(p.open, &random_invertible(&mut rng, omega.rows()));
            let moved = congruence(&omega, &q).map_err(|e| free_module_error(p, e))?;
            if check_form(&moved).map_err(|e| symplectic_error(p, e))?.ranks != before {
                return Err(self_check_failed("pointwise rank under congruence", seed));
            }
        }
        certificate["self_check"] = self_check_json(seed, true);
    }
    let result = json!({
        "m": m,
        "rank": 2 * m,
        "change_of_basis": matrix_to_json(&p.space, &change),
    });
    Ok((result, certificate))
}

fn check_symplectic(p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    let m = p.matrix("matrix")?;
    if !m.is_square() {
        return Err(CliError::Malformed(format!("matrix is {}×{}, not square", m.rows(), m.cols())));
    }
    let source = p.optional_matrix("form")?;
    let target = p.optional_matrix("target_form")?;
    let standard = source.is_none() && target.is_none();
    let default_form = || {
        if m.rows() % 2 == 0 {
            Ok(standard_form(p.open, m.rows() / 2))
        } else {
            Err(CliError::Malformed(format!("odd size {} needs explicit forms", m.rows())))
        }
    };
    let omega1 = match source {
        Some(f) => f,
        None => default_form()?,
    };
    let omega2 = match target {
        Some(f) => f,
        None => omega1.clone(),
    };
    if !omega1.is_square() || !omega2.is_square() || omega1.rows() != m.cols() || omega2.rows() != m.rows() {
        return Err(CliError::Malformed("form sizes do not match the matrix".into()));
    }
    let pullback = congruence(&omega2, &m).map_err(|e| free_module_error(p, e))?;
    if pullback != omega1 {
        return Err(CliError::domain(
            "NotSymplectic",
            "ᵗM·Ω₂·M differs from Ω₁",
            json!({"pullback": matrix_to_json(&p.space, &pullback)}),
        ));
    }
    let determinant = m.determinant().map_err(|e| free_module_error(p, e))?;
    let mut result = json!({
        "symplectic": true,
        "determinant": compact_section_json(&p.space, &determinant),
    });
    let mut certificate = json!({"pullback": matrix_to_json(&p.space, &pullback)});
    if standard {
        let map = SymplecticMap::new(m.clone()).map_err(|e| symplectic_error(p, e))?;
        let inverse = map.inverse().map_err(|e| symplectic_error(p, e))?;
        result["inverse"] = matrix_to_json(&p.space, inverse.matrix());
        if let Some(seed) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SELF_CHECK_SAMPLES {
                let g = SectionMatrix::constant(p.open, &random_symplectic(&mut rng, m.rows() / 2, 3));
                let g = SymplecticMap::new(g).map_err(|e| symplectic_error(p, e))?;
                let closed = map.compose(&g).and_then(|h| h.compose(&g.inverse()?));
                if closed.as_ref().map(SymplecticMap::matrix) != Ok(&m) {
                    return Err(self_check_failed("group closure", seed));
                }
            }
            certificate["self_check"] = self_check_json(seed, true);
        }
    }
    Ok((result, certificate))
}

fn charpoly(p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    let m = p.matrix("matrix")?;
    let poly = char_poly(&m).map_err(|e| spectra_error(p, e))?;
    let residue = cayley_hamilton_check(&m).map_err(|e| spectra_error(p, e))?;
    let mut certificate = json!({"cayley_hamilton": matrix_to_json(&p.space, &residue)});
    if let Some(seed) = seed {
        // P(t₀) against a direct determinant of t₀I − M.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SELF_CHECK_SAMPLES {
            let t0 = small_rational(&mut rng, 6);
            let shifted = SectionMatrix::constant(p.open, &QMatrix::identity(m.rows()).scale(&t0)).sub(&m);
            let det = shifted
                .and_then(|s| s.determinant())
                .map_err(|e| free_module_error(p, e))?;
            let at = poly.map(|c| c.clone()).evaluate(&crate::sheaf::Section::constant(p.open, t0));
            if at != det {
                return Err(self_check_failed("P(t₀) and det(t₀I − M)", seed));
            }
        }
        certificate["self_check"] = self_check_json(seed, true);
    }
    let result = json!({
        "monic": poly.is_monic(),
        "degree": m.rows(),
        "coeffs": polynomial_to_json(&p.space, &poly),
    });
    Ok((result, certificate))
}

fn eigen(p: &Problem) -> Result<(Value, Value), CliError> {
    let m = p.matrix("matrix")?;
    let report = eigen_sections(&m).map_err(|e| spectra_error(p, e))?;
    let omitted: Vec<Value> = report.omitted_points().into_iter().map(|q| p.point(q)).collect();
    if report.pairs.is_empty() && !omitted.is_empty() {
        return Err(CliError::domain(
            "NoRationalEigenvalue",
            "no eigenpair branch exists at every point",
            json!({"omitted_points": omitted}),
        ));
    }
    let mut residues = Vec::with_capacity(report.pairs.len());
    for pair in &report.pairs {
        let residue = m
            .mul_vector(&pair.vector)
            .and_then(|mv| mv.sub(&pair.vector.scale(&pair.lambda)?))
            .map_err(|e| free_module_error(p, e))?;
        residues.push(vector_to_json(&p.space, &residue));
    }
    let result = json!({
        "pairs": report.pairs.iter().map(|pair| pair.to_json(&p.space)).collect::<Vec<_>>(),
        "omitted_points": omitted,
    });
    Ok((result, json!({"residues": residues})))
}

fn sheaf_check(p: &Problem) -> Result<(Value, Value), CliError> {
    let spec = p.field("presheaf")?;
    let kind = spec
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Malformed("presheaf needs a \"kind\" (function | constant)".into()))?;
    let grid: Vec<Rational> = match spec.get("grid") {
        None => vec![Rational::zero(), Rational::one()],
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| CliError::Malformed(format!("bad grid: {e}")))?,
    };
    if grid.is_empty() {
        return Err(CliError::Malformed("grid must not be empty".into()));
    }
    let cover = match p.body.get("cover") {
        None => p.space.minimal_cover(p.open),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| open_from_json(&p.space, v))
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(CliError::Malformed("cover must be an array of open sets".into())),
    };
    match kind {
        "function" => run_sheaf_check(p, &FunctionSheaf::new(p.space.clone(), grid), &cover),
        "constant" => run_sheaf_check(p, &ConstantPresheaf::new(p.space.clone(), grid), &cover),
        other => Err(CliError::Malformed(format!("unknown presheaf kind {other:?}"))),
    }
}

fn run_sheaf_check<P: Presheaf>(p: &Problem, presheaf: &P, cover: &[OpenSet]) -> Result<(Value, Value), CliError> {
    let report = check_completeness(presheaf, p.open, cover).map_err(|e| sheaf_error(p, e))?;
    let axioms = report_json(presheaf, &report);
    if !report.is_complete() {
        return Err(CliError::domain("AxiomFailure", "presheaf is not complete over this cover", axioms));
    }
    let result = json!({
        "complete": true,
        "open": p.labels(p.open),
        "cover": cover.iter().map(|&v| p.labels(v)).collect::<Vec<_>>(),
    });
    let certificate = json!({
        "axioms": axioms,
        "sections_checked": report.sections_checked,
        "families_checked": report.families_checked,
    });
    Ok((result, certificate))
}

fn wedge(p: &Problem, seed: Option<u64>) -> Result<(Value, Value), CliError> {
    let left = kform_from_json(&p.space, p.open, p.field("left")?)?;
    let right = kform_from_json(&p.space, p.open, p.field("right")?)?;
    let product = left.wedge(&right).map_err(|e| exterior_error(p, e))?;
    let swapped = right.wedge(&left).map_err(|e| exterior_error(p, e))?;
    let sign: i64 = if (left.degree() * right.degree()) % 2 == 0 { 1 } else { -1 };
    let mut certificate = json!({"swapped": kform_to_json(&p.space, &swapped), "sign": sign});
    let degree = product.degree();
    if let Some(seed) = seed {
        if degree <= product.rank() && degree <= MAX_ALTERNATION_ORDER {
            // ((k+l)!/(k!l!))·Alt(ξ⊗η) evaluated on random arguments.
            let tensor = left
                .to_tensor()
                .tensor_product(&right.to_tensor())
                .and_then(|t| t.alternation())
                .map_err(|e| exterior_error(p, e))?;
            let factorial = |k: usize| (1..=k as i64).product::<i64>();
            let scale = Rational::new(factorial(degree), factorial(left.degree()) * factorial(right.degree()));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SELF_CHECK_SAMPLES {
                let args: Vec<SectionVector> = (0..degree).map(|_| random_vector(&mut rng, p.open, product.rank())).collect();
                let direct = product.evaluate(&args).map_err(|e| exterior_error(p, e))?;
                let via_alt = tensor.evaluate(&args).map_err(|e| exterior_error(p, e))?.scale(&scale);
                if direct != via_alt {
                    return Err(self_check_failed("wedge and scaled alternation", seed));
                }
            }
            certificate["self_check"] = self_check_json(seed, true);
        }
    }
    let result = json!({
        "form": kform_to_json(&p.space, &product),
        "degree_overflow": product.is_degree_overflow(),
    });
    Ok((result, certificate))
}

fn free_module_error(p: &Problem, e: FreeModuleError) -> CliError {
    match e {
        FreeModuleError::NonUnitDeterminant { zeros } => {
            CliError::domain("NonUnitDeterminant", &e, json!({"zeros": p.labels(zeros)}))
        }
        FreeModuleError::Sheaf(s) => sheaf_error(p, s),
        other => CliError::Malformed(other.to_string()),
    }
}

fn sheaf_error(p: &Problem, e: SheafError) -> CliError {
    match e {
        SheafError::IncompatibleFamily { first, second, overlap } => CliError::domain(
            "IncompatibleFamily",
            &e,
            json!({"first": first, "second": second, "overlap": p.labels(overlap)}),
        ),
        SheafError::NotAUnit { zeros } => CliError::domain("NotAUnit", &e, json!({"zeros": p.labels(zeros)})),
        SheafError::NonEnumerableSections(_) => CliError::domain("NonEnumerableSections", &e, Value::Null),
        other => CliError::Malformed(other.to_string()),
    }
}

fn symplectic_error(p: &Problem, e: SymplecticError) -> CliError {
    match e {
        SymplecticError::NotSkew => CliError::domain("NotSkew", &e, Value::Null),
        SymplecticError::Degenerate { zeros } => CliError::domain("Degenerate", &e, json!({"zeros": p.labels(zeros)})),
        SymplecticError::NonConstantRank { ref ranks } => {
            let by_point: Map<String, Value> = ranks.iter().map(|&(q, r)| (p.space.label(q).to_string(), json!(r))).collect();
            CliError::domain("NonConstantRank", &e, json!({"ranks": by_point}))
        }
        SymplecticError::NoUnitPivot { point } => CliError::domain("NoUnitPivot", &e, json!({"point": p.point(point)})),
        SymplecticError::NotSymplectic => CliError::domain("NotSymplectic", &e, Value::Null),
        SymplecticError::DegenerateForm { zeros } => {
            CliError::domain("DegenerateForm", &e, json!({"zeros": p.labels(zeros)}))
        }
        SymplecticError::FreeModule(f) => free_module_error(p, f),
        SymplecticError::Exterior(x) => exterior_error(p, x),
        SymplecticError::NotSquare { .. } | SymplecticError::DimensionMismatch(_) => CliError::Malformed(e.to_string()),
    }
}

fn spectra_error(p: &Problem, e: SpectraError) -> CliError {
    match e {
        SpectraError::NoRationalEigenvalue { ref points } => CliError::domain(
            "NoRationalEigenvalue",
            &e,
            json!({"points": points.iter().map(|&q| p.point(q)).collect::<Vec<_>>()}),
        ),
        SpectraError::CayleyHamiltonViolation => CliError::domain("CayleyHamiltonViolation", &e, Value::Null),
        SpectraError::RootSearchTooLarge => CliError::domain("RootSearchTooLarge", &e, Value::Null),
        SpectraError::NotAnEigenpair(i) => CliError::domain("NotAnEigenpair", &e, json!({"pair": i})),
        SpectraError::Sheaf(s) => sheaf_error(p, s),
        SpectraError::FreeModule(f) => free_module_error(p, f),
        SpectraError::Symplectic(s) => symplectic_error(p, s),
        SpectraError::NotSquare { .. } | SpectraError::TooLarge(_) | SpectraError::DomainMismatch { .. } => {
            CliError::Malformed(e.to_string())
        }
    }
}

fn exterior_error(p: &Problem, e: ExteriorError) -> CliError {
    match e {
        ExteriorError::DegenerateMetric { zeros } => {
            CliError::domain("DegenerateMetric", &e, json!({"zeros": p.labels(zeros)}))
        }
        ExteriorError::NotSymmetric | ExteriorError::NotABasis | ExteriorError::NotExact => {
            let name = format!("{e:?}");
            CliError::domain(&name, &e, Value::Null)
        }
        ExteriorError::DegreeOverflow { degree, rank } => {
            CliError::domain("DegreeOverflow", &e, json!({"degree": degree, "rank": rank}))
        }
        ExteriorError::FreeModule(f) => free_module_error(p, f),
        other => CliError::Malformed(other.to_string()),
    }
}

/// Human-readable rendering: rationals as `p/q`, sections as
/// `{point: value}` maps, one field per line.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(fields) = report {
        for (key, value) in fields {
            render_field(&mut out, key, value, 0);
        }
    }
    out
}

fn render_field(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) if !is_section(value) && !map.is_empty() => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_field(out, k, v, indent + 1);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_array() || (v.is_object() && !is_section(v))) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                render_field(out, &format!("[{i}]"), item, indent + 1);
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", inline(value))),
    }
}

fn is_section(value: &Value) -> bool {
    value.as_object().is_some_and(|m| {
        m.len() == 2 && m.get("open").is_some_and(Value::is_array) && m.get("values").is_some_and(Value::is_object)
    })
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) if is_section(value) => {
            let values = map["values"].as_object().expect("checked");
            format!(
                "{{{}}}",
                values.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect::<Vec<_>>().join(", ")
            )
        }
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_of_sections_and_matrices() {
        let report = json!({
            "command": "charpoly",
            "status": "ok",
            "result": {"coeffs": [1, {"open": ["a", "b"], "values": {"a": "1/2", "b": 3}}], "monic": true},
            "certificate": {"cayley_hamilton": [[0, 0], [0, 0]]},
        });
        let text = render_text(&report);
        assert!(text.contains("coeffs: [1, {a: 1/2, b: 3}]"), "{text}");
        assert!(text.contains("    [0]: [0, 0]"), "{text}");
        assert!(text.starts_with("command: charpoly\nstatus: ok\n"));
    }

    #[test]
    fn missing_input_is_malformed() {
        let out = run_command(["sheafsym", "darboux", "--output", "json"]);
        assert_eq!(out.code, EXIT_MALFORMED);
        assert!(out.stdout.contains("\"MalformedInput\""));
    }

    #[test]
    fn unknown_subcommand_is_malformed() {
        let out = run_command(["sheafsym", "frobnicate", "--output=json"]);
        assert_eq!(out.code, EXIT_MALFORMED);
        assert!(out.stdout.contains("\"command\": \"frobnicate\""));
    }
}
