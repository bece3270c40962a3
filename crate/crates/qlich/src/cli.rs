//! Command-line orchestration: parse tensor specifications, run checks and
//! cohomology computations, and emit deterministic text/JSON reports.
//!
//! Exit status contract: 0 when every requested check passes, 1 when a check
//! fails, 2 for parse or usage failures. A report is always emitted once the
//! invocation parses.

use crate::algebra::{Generator, Kind, State};
use crate::error::ParseError;
use crate::nambu::{
    even_order_bridge, filippov_check, leibniz_check, random_poly, takhtajan_check, BridgeError,
    NambuTensor,
};
use crate::ope::OpeConvention;
use crate::parse::parse_entry;
use crate::poisson::{jacobi_check, lp_cohomology, schouten, PoissonTensor};
use crate::poly::Poly;
use crate::quantum::{
    build_generator, build_generator_with_pairing, check_chiral_compat, check_generator_self_ope,
    check_nilpotency, quantum_cohomology, BPairing, CommutatorKind, Page, QuantumGenerator,
    Truncation,
};
use crate::render::render_state;
use crate::report::{
    Check, Invocation, NambuSection, NilpotencySection, OperatorSection, ReportDocument,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "qlich",
    version,
    about = "Exact symbolic engine for quantum Lichnerowicz differentials of polynomial Poisson tensors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the Jacobi identity, cross-checked against the Schouten square
    CheckJacobi(CommonArgs),
    /// Classical Lichnerowicz-Poisson cohomology in polynomial-degree bands
    LpCohomology(CommonArgs),
    /// Build the integrated operator and print its single-generator table
    BuildOperator(CommonArgs),
    /// Quantum cohomology of the truncation, per bidegree cell
    Qcohomology(CommonArgs),
    /// Apply the operator twice across the truncation and check the self-OPE
    VerifyNilpotent(CommonArgs),
    /// Verify the chiral de Rham operator squares to zero and commutes
    VerifyChiral(CommonArgs),
    /// Nambu-Poisson verification: Takhtajan conditions, identity trials,
    /// and the even-order bridge
    NambuCheck(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckJacobi(_) => "check-jacobi",
            Command::LpCohomology(_) => "lp-cohomology",
            Command::BuildOperator(_) => "build-operator",
            Command::Qcohomology(_) => "qcohomology",
            Command::VerifyNilpotent(_) => "verify-nilpotent",
            Command::VerifyChiral(_) => "verify-chiral",
            Command::NambuCheck(_) => "nambu-check",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::CheckJacobi(a)
            | Command::LpCohomology(a)
            | Command::BuildOperator(a)
            | Command::Qcohomology(a)
            | Command::VerifyNilpotent(a)
            | Command::VerifyChiral(a)
            | Command::NambuCheck(a) => a,
        }
    }
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Ambient dimension n
    #[arg(long)]
    pub dim: Option<u8>,
    /// Tensor entry "P[i,j,...]=<polynomial>" (repeatable)
    #[arg(long)]
    pub entry: Vec<String>,
    /// Tensor order (arity) for nambu-check
    #[arg(long)]
    pub order: Option<u8>,
    /// Polynomial-degree bound for lp-cohomology
    #[arg(long)]
    pub max_poly_degree: Option<u32>,
    /// Conformal-weight bound of the truncation
    #[arg(long)]
    pub weight: Option<u32>,
    /// Letter-count bound of the truncation
    #[arg(long)]
    pub max_letters: Option<u32>,
    /// Fermion-number range "min..max" of the truncation
    #[arg(long, allow_hyphen_values = true)]
    pub fermion_range: Option<String>,
    /// Spectral page: hbar1 or full
    #[arg(long)]
    pub page: Option<String>,
    /// OPE convention: section2 or section4
    #[arg(long)]
    pub convention: Option<String>,
    /// How to combine the chiral operator with d_qL: super or plain
    #[arg(long)]
    pub commutator: Option<String>,
    /// Output format: text or json
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for randomized identity trials
    #[arg(long)]
    pub seed: Option<u64>,
    /// Read defaults from a TOML file with the same keys
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
    /// Also write the report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Keys accepted in a --spec-file TOML document; dashed and underscored
/// spellings both work for multi-word keys.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    dim: Option<u8>,
    entry: Option<Vec<String>>,
    order: Option<u8>,
    #[serde(alias = "max-poly-degree")]
    max_poly_degree: Option<u32>,
    weight: Option<u32>,
    #[serde(alias = "max-letters")]
    max_letters: Option<u32>,
    #[serde(alias = "fermion-range")]
    fermion_range: Option<String>,
    page: Option<String>,
    convention: Option<String>,
    commutator: Option<String>,
    format: Option<String>,
    seed: Option<u64>,
}

/// Usage or parse failure; `exit_code` is 2 except for --help/--version.
#[derive(Debug)]
pub struct CliFailure {
    pub message: String,
    pub exit_code: i32,
    pub use_stdout: bool,
}

impl CliFailure {
    fn usage(message: impl Into<String>) -> Self {
        CliFailure {
            message: message.into(),
            exit_code: 2,
            use_stdout: false,
        }
    }
}

/// A completed run: the document, its rendering, and the exit code.
#[derive(Debug)]
pub struct RunOutput {
    pub report: ReportDocument,
    pub rendered: String,
    pub exit_code: i32,
    pub out_path: Option<PathBuf>,
}

/// Fully resolved invocation after CLI/spec-file merging.
struct Resolved {
    dim: u8,
    entries: Vec<String>,
    order: Option<u8>,
    max_poly_degree: u32,
    truncation: Truncation,
    page: Page,
    convention: OpeConvention,
    commutator: CommutatorKind,
    json: bool,
    seed: u64,
    out: Option<PathBuf>,
}

fn resolve(args: &CommonArgs) -> Result<Resolved, CliFailure> {
    let file: SpecFile = match &args.spec_file {
        None => SpecFile::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliFailure::usage(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text)
                .map_err(|e| CliFailure::usage(format!("invalid spec file: {e}")))?
        }
    };
    let dim = args
        .dim
        .or(file.dim)
        .ok_or_else(|| CliFailure::usage("--dim is required (or 'dim' in --spec-file)"))?;
    if dim == 0 {
        return Err(CliFailure::usage("--dim must be at least 1"));
    }
    let entries = if args.entry.is_empty() {
        file.entry.unwrap_or_default()
    } else {
        args.entry.clone()
    };
    let fermion_range = args
        .fermion_range
        .clone()
        .or(file.fermion_range)
        .unwrap_or_else(|| "-4..4".to_string());
    let (fermion_min, fermion_max) = parse_range(&fermion_range)
        .ok_or_else(|| CliFailure::usage(format!("invalid --fermion-range '{fermion_range}'")))?;
    let truncation = Truncation {
        max_weight: args.weight.or(file.weight).unwrap_or(2),
        max_letters: args.max_letters.or(file.max_letters).unwrap_or(6),
        fermion_min,
        fermion_max,
    };
    let page: Page = args
        .page
        .clone()
        .or(file.page)
        .unwrap_or_else(|| "hbar1".to_string())
        .parse()
        .map_err(CliFailure::usage)?;
    let convention: OpeConvention = args
        .convention
        .clone()
        .or(file.convention)
        .unwrap_or_else(|| "section2".to_string())
        .parse()
        .map_err(CliFailure::usage)?;
    let commutator = match args
        .commutator
        .clone()
        .or(file.commutator)
        .unwrap_or_else(|| "super".to_string())
        .as_str()
    {
        "super" => CommutatorKind::Super,
        "plain" => CommutatorKind::Plain,
        other => {
            return Err(CliFailure::usage(format!(
                "unknown --commutator '{other}' (expected super or plain)"
            )))
        }
    };
    let json = match args
        .format
        .clone()
        .or(file.format)
        .unwrap_or_else(|| "text".to_string())
        .as_str()
    {
        "text" => false,
        "json" => true,
        other => {
            return Err(CliFailure::usage(format!(
                "unknown --format '{other}' (expected text or json)"
            )))
        }
    };
    Ok(Resolved {
        dim,
        entries,
        order: args.order.or(file.order),
        max_poly_degree: args.max_poly_degree.or(file.max_poly_degree).unwrap_or(6),
        truncation,
        page,
        convention,
        commutator,
        json,
        seed: args.seed.or(file.seed).unwrap_or(0),
        out: args.out.clone(),
    })
}

fn parse_range(text: &str) -> Option<(i64, i64)> {
    let (lo, hi) = text.split_once("..")?;
    let lo: i64 = lo.trim().parse().ok()?;
    let hi: i64 = hi.trim().parse().ok()?;
    (lo <= hi).then_some((lo, hi))
}

fn poisson_from_entries(entries: &[String], dim: u8) -> Result<PoissonTensor, CliFailure> {
    let mut p = PoissonTensor::new(dim);
    for text in entries {
        let entry = parse_entry(text, dim)
            .map_err(|e| CliFailure::usage(format!("in entry '{text}': {e}")))?;
        if entry.indices.len() != 2 {
            return Err(CliFailure::usage(format!(
                "in entry '{text}': a Poisson tensor entry takes two indices"
            )));
        }
        p.set(entry.indices[0], entry.indices[1], entry.value)
            .map_err(|e| CliFailure::usage(format!("in entry '{text}': {e}")))?;
    }
    Ok(p)
}

fn nambu_from_entries(
    entries: &[String],
    dim: u8,
    order: Option<u8>,
) -> Result<NambuTensor, CliFailure> {
    let order = match order {
        Some(o) => o,
        None => {
            // infer the arity from the first entry
            let first = entries.first().ok_or_else(|| {
                CliFailure::usage("--order is required when no entries are given")
            })?;
            parse_entry(first, dim)
                .map_err(|e| CliFailure::usage(format!("in entry '{first}': {e}")))?
                .indices
                .len() as u8
        }
    };
    let mut t = NambuTensor::new(dim, order)
        .map_err(|e| CliFailure::usage(format!("invalid tensor order: {e}")))?;
    for text in entries {
        let entry = parse_entry(text, dim)
            .map_err(|e| CliFailure::usage(format!("in entry '{text}': {e}")))?;
        t.set(&entry.indices, entry.value)
            .map_err(|e| CliFailure::usage(format!("in entry '{text}': {e}")))?;
    }
    Ok(t)
}

/// Entry point shared by the binary and the C ABI.
pub fn run_from_args<I, T>(argv: I) -> Result<RunOutput, CliFailure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let use_stdout = matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        );
        CliFailure {
            message: e.to_string(),
            exit_code: if use_stdout { 0 } else { 2 },
            use_stdout,
        }
    })?;
    run_command(&cli.command)
}

pub fn run_command(command: &Command) -> Result<RunOutput, CliFailure> {
    let resolved = resolve(command.args())?;
    let mut invocation = Invocation {
        dimension: resolved.dim,
        entries: resolved.entries.clone(),
        ..Default::default()
    };
    let report = match command {
        Command::CheckJacobi(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            run_check_jacobi(&p, invocation)
        }
        Command::LpCohomology(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            invocation.max_poly_degree = Some(resolved.max_poly_degree);
            run_lp_cohomology(&p, resolved.max_poly_degree, invocation)
        }
        Command::BuildOperator(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            invocation.convention = Some(resolved.convention.name().to_string());
            run_build_operator(&p, resolved.convention, invocation)
        }
        Command::Qcohomology(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            invocation.convention = Some(resolved.convention.name().to_string());
            invocation.page = Some(resolved.page.name().to_string());
            invocation.truncation = Some(resolved.truncation);
            run_qcohomology(
                &p,
                resolved.convention,
                resolved.page,
                &resolved.truncation,
                invocation,
            )
        }
        Command::VerifyNilpotent(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            invocation.convention = Some(resolved.convention.name().to_string());
            invocation.truncation = Some(resolved.truncation);
            run_verify_nilpotent(&p, resolved.convention, &resolved.truncation, invocation)
        }
        Command::VerifyChiral(_) => {
            let p = poisson_from_entries(&resolved.entries, resolved.dim)?;
            invocation.truncation = Some(resolved.truncation);
            invocation.commutator = Some(
                match resolved.commutator {
                    CommutatorKind::Super => "super",
                    CommutatorKind::Plain => "plain",
                }
                .to_string(),
            );
            run_verify_chiral(&p, &resolved.truncation, resolved.commutator, invocation)
        }
        Command::NambuCheck(_) => {
            let t = nambu_from_entries(&resolved.entries, resolved.dim, resolved.order)?;
            invocation.order = Some(t.order());
            invocation.seed = Some(resolved.seed);
            invocation.convention = Some(resolved.convention.name().to_string());
            run_nambu_check(&t, resolved.convention, resolved.seed, invocation)
        }
    };
    let mut report = report;
    report.command = command.name().to_string();
    let exit_code = i32::from(!report.all_passed());
    let rendered = if resolved.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Ok(RunOutput {
        report,
        rendered,
        exit_code,
        out_path: resolved.out,
    })
}

fn run_check_jacobi(p: &PoissonTensor, invocation: Invocation) -> ReportDocument {
    let mut doc = ReportDocument::new("check-jacobi", invocation);
    let (ok, residual) = jacobi_check(p);
    doc.checks.push(Check::new("jacobi", ok));
    if !ok {
        doc.jacobi_residual = Some(format!("{}", residual));
    }
    // independent route: the Schouten square must agree
    let mv = p.to_multivector();
    let square_zero = schouten(&mv, &mv).map(|s| s.is_zero()).unwrap_or(false);
    doc.checks.push(Check::with_detail(
        "schouten-square-agreement",
        square_zero == ok,
        format!("[[P,P]] = 0: {square_zero}"),
    ));
    doc
}

fn run_lp_cohomology(
    p: &PoissonTensor,
    max_poly_degree: u32,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("lp-cohomology", invocation);
    let (ok, residual) = jacobi_check(p);
    doc.checks.push(Check::new("jacobi", ok));
    if !ok {
        doc.jacobi_residual = Some(format!("{}", residual));
        return doc;
    }
    let report = lp_cohomology(p, max_poly_degree).expect("jacobi verified above");
    doc.classical_cohomology = Some(report);
    doc
}

fn single_generator_table(g: &QuantumGenerator) -> Vec<(String, String)> {
    let mut table = Vec::new();
    for kind in [Kind::Gamma, Kind::C, Kind::B, Kind::Beta] {
        for index in 1..=g.dimension() {
            let gen = Generator::new(kind, index, 0);
            let s = State::generator(gen);
            let image = g.apply_hbar1(&s);
            table.push((render_state(&s), render_state(&image)));
        }
    }
    table
}

fn run_build_operator(
    p: &PoissonTensor,
    conv: OpeConvention,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("build-operator", invocation);
    let g = build_generator(p, conv);
    let graded = g.density().is_zero()
        || (g.density().homogeneous_weight() == Some(1)
            && g.density().homogeneous_fermion() == Some(1));
    doc.checks.push(Check::with_detail(
        "density-grading",
        graded,
        "weight 1, fermion +1",
    ));
    doc.operator = Some(OperatorSection {
        density: render_state(g.density()),
        hbar1_table: single_generator_table(&g),
    });
    doc
}

fn run_qcohomology(
    p: &PoissonTensor,
    conv: OpeConvention,
    page: Page,
    trunc: &Truncation,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("qcohomology", invocation);
    let g = build_generator(p, conv);
    doc.quantum_cohomology = Some(quantum_cohomology(&g, page, trunc));
    doc
}

fn run_verify_nilpotent(
    p: &PoissonTensor,
    conv: OpeConvention,
    trunc: &Truncation,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("verify-nilpotent", invocation);
    let g = build_generator(p, conv);
    let general = check_nilpotency(&g, trunc);
    let (self_ok, witness, pole1) = check_generator_self_ope(&g);
    doc.checks.push(Check::with_detail(
        "nilpotency",
        general.passed(),
        format!("{} basis words", general.checked),
    ));
    doc.checks
        .push(Check::new("self-ope-total-derivative", self_ok));
    doc.checks.push(Check::with_detail(
        "routes-agree",
        general.passed() == self_ok,
        "double application vs self-OPE",
    ));
    let transposed = build_generator_with_pairing(p, conv, BPairing::Transposed)
        .ok()
        .map(|gt| check_nilpotency(&gt, trunc));
    doc.nilpotency = Some(NilpotencySection {
        general,
        transposed,
        self_ope: crate::quantum::SelfOpeReport {
            pole1: render_state(&pole1),
            is_total_derivative: self_ok,
            witness: witness.map(|w| render_state(&w)),
        },
    });
    doc
}

fn run_verify_chiral(
    p: &PoissonTensor,
    trunc: &Truncation,
    kind: CommutatorKind,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("verify-chiral", invocation);
    let report = check_chiral_compat(p, trunc, kind);
    let delta_ok = report.per_convention.iter().all(|c| c.delta_squared_ok);
    doc.checks.push(Check::new("delta-squared", delta_ok));
    let passing = report.passing_conventions();
    doc.checks.push(Check::with_detail(
        "chiral-commutator",
        !passing.is_empty(),
        if passing.is_empty() {
            "no convention passes".to_string()
        } else {
            format!("passes under: {}", passing.join(", "))
        },
    ));
    doc.chiral = Some(report);
    doc
}

fn run_nambu_check(
    t: &NambuTensor,
    conv: OpeConvention,
    seed: u64,
    invocation: Invocation,
) -> ReportDocument {
    let mut doc = ReportDocument::new("nambu-check", invocation);
    let mut section = NambuSection::default();
    let n = t.dimension();

    if t.order() >= 3 {
        let takh = takhtajan_check(t).expect("order checked");
        doc.checks.push(Check::with_detail(
            "takhtajan-algebraic",
            takh.algebraic_residuals.is_empty(),
            format!("{} nonzero residuals", takh.algebraic_residuals.len()),
        ));
        doc.checks.push(Check::with_detail(
            "takhtajan-differential",
            takh.differential_residuals.is_empty(),
            format!("{} nonzero residuals", takh.differential_residuals.len()),
        ));
        section.algebraic_residuals = takh
            .algebraic_residuals
            .iter()
            .take(16)
            .map(|(i, p)| (i.clone(), format!("{}", p)))
            .collect();
        section.differential_residuals = takh
            .differential_residuals
            .iter()
            .take(16)
            .map(|(i, p)| (i.clone(), format!("{}", p)))
            .collect();
    } else {
        let p = t.to_poisson().expect("order 2");
        let (ok, residual) = jacobi_check(&p);
        doc.checks.push(Check::new("jacobi", ok));
        if !ok {
            doc.jacobi_residual = Some(format!("{}", residual));
        }
    }

    // seeded identity trials against the induced bracket when the arity
    // matches the dimension (the Jacobian-bracket situation)
    if t.order() == n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bracket = |fs: &[Poly]| t.bracket(fs).expect("arity matches");
        let trials = 20u32;
        let mut leibniz_ok = true;
        for _ in 0..trials {
            let g = random_poly(&mut rng, n, 2, 3);
            let h = random_poly(&mut rng, n, 2, 3);
            let rest: Vec<Poly> = (1..t.order())
                .map(|_| random_poly(&mut rng, n, 2, 3))
                .collect();
            if !leibniz_check(&bracket, &g, &h, &rest).is_zero() {
                leibniz_ok = false;
            }
        }
        doc.checks.push(Check::with_detail(
            "leibniz-trials",
            leibniz_ok,
            format!("{trials} seeded degree-2 tuples"),
        ));
        section.leibniz_trials = Some(trials);
        if t.order() == 3 {
            let mut filippov_ok = true;
            for _ in 0..trials {
                let g = random_poly(&mut rng, n, 2, 2);
                let h = random_poly(&mut rng, n, 2, 2);
                let f1 = random_poly(&mut rng, n, 2, 2);
                let f2 = random_poly(&mut rng, n, 2, 2);
                let f3 = random_poly(&mut rng, n, 2, 2);
                if !filippov_check(&bracket, &g, &h, &f1, &f2, &f3).is_zero() {
                    filippov_ok = false;
                }
            }
            doc.checks.push(Check::with_detail(
                "filippov-trials",
                filippov_ok,
                format!("{trials} seeded degree-2 tuples"),
            ));
            section.filippov_trials = Some(trials);
        }
    }

    if t.order().is_multiple_of(2) && t.order() > 2 {
        match even_order_bridge(t, conv) {
            Ok(bridge) => {
                doc.checks.push(Check::new("schouten-square", true));
                section.bridge_density = Some(render_state(&bridge.operator.density));
                let g = QuantumGenerator {
                    tensor: PoissonTensor::new(n),
                    op: bridge.operator,
                    pairing: BPairing::DerivIndex,
                };
                let trunc = Truncation {
                    max_weight: 1,
                    max_letters: 4,
                    fermion_min: -2,
                    fermion_max: t.order() as i64,
                };
                section.bridge_nilpotency = Some(check_nilpotency(&g, &trunc));
            }
            Err(BridgeError::SchoutenObstruction(sq)) => {
                doc.checks.push(Check::new("schouten-square", false));
                section.bridge_obstruction = Some(format!("{}", sq));
            }
            Err(BridgeError::OddOrder(_)) => unreachable!("order parity checked"),
        }
    }

    doc.nambu = Some(section);
    doc
}

/// Write the report to `--out` when requested.
pub fn write_out(run: &RunOutput) -> std::io::Result<()> {
    if let Some(path) = &run.out_path {
        std::fs::write(path, &run.rendered)?;
    }
    Ok(())
}

impl From<ParseError> for CliFailure {
    fn from(e: ParseError) -> Self {
        CliFailure::usage(e.to_string())
    }
}
