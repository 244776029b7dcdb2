use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use prym_cli::render::{
    compare, report_text, spectrum_text, table_text, Eigenvalue, ReportDocument, SpectrumDocument, TableDocument,
    TableSummary, ENGINE, VERSION,
};
use prym_cli::{diagnostic_exit_code, error_exit_code, exit, Scenario};
use prym_core::constructions::{
    closed_form_expectation, product_presentation_with, reproduce_paper_table, Family, FamilySpec,
};
use prym_core::permgrp::DEFAULT_ENUMERATION_BOUND;
use prym_core::prym::{
    coefficients, exponent, hecke_matrix, projector_identity_check, run_presentation, EngineOptions,
    PresentationInput, DEFAULT_MATRIX_BOUND,
};
use prym_core::Error;

#[derive(Parser)]
#[command(name = "prym", version, about = "Exact checks of Prym-Tyurin presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Largest group enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    enumeration_bound: usize,
    /// Largest coset space on which the Hecke matrix is built.
    #[arg(long, default_value_t = DEFAULT_MATRIX_BOUND)]
    matrix_bound: usize,
    /// Enumerate direct products as plain groups.
    #[arg(long)]
    flatten: bool,
}

impl Bounds {
    fn options(self) -> EngineOptions {
        EngineOptions {
            enumeration_bound: self.enumeration_bound,
            matrix_bound: self.matrix_bound,
            flatten_products: self.flatten,
        }
    }
}

#[derive(Args)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the JSON document to a file instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn machine(&self) -> bool {
        self.json || self.out.is_some()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on a scenario file.
    Check {
        path: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
    /// Build a product presentation from one of the families and compare
    /// it with the closed forms.
    Product {
        /// sym, alt-dt or alt-3c.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Comma-separated genera, one per factor.
        #[arg(long, value_delimiter = ',', required = true)]
        genera: Vec<u64>,
        /// Comma-separated family per factor, overriding --family.
        #[arg(long, value_delimiter = ',')]
        mixed: Option<Vec<Family>>,
        /// Also write the presentation as a scenario file.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute the tabulated statements and compare with the stated values.
    PaperTable {
        /// Case-insensitive substring of the section or claim.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Eigenvalues of the Hecke operator of a scenario.
    Spectrum {
        path: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: error_exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: exit::INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn write_output(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn load(path: &Path, options: EngineOptions) -> Result<(Scenario, PresentationInput), Failure> {
    let source = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let locate = |d: prym_cli::Diagnostic| Failure {
        code: diagnostic_exit_code(&d),
        message: format!("{}: {d}", path.display()),
    };
    let scenario = Scenario::parse(&source).map_err(locate)?;
    let input = scenario.to_input(&source, options).map_err(locate)?;
    Ok((scenario, input))
}

fn check(path: &Path, bounds: Bounds, output: &Output) -> Result<u8, Failure> {
    let start = Instant::now();
    let (scenario, input) = load(path, bounds.options())?;
    let report = run_presentation(&input)?;
    let shown = path.display().to_string();
    let text = if output.machine() {
        json(&ReportDocument {
            engine: ENGINE,
            version: VERSION,
            command: "check",
            scenario: Some(&shown),
            title: scenario.title.as_deref(),
            family: None,
            report: &report,
            expected: None,
            timing_ms: start.elapsed().as_millis(),
        })
    } else {
        report_text(&report, scenario.title.as_deref(), None)
    };
    write_output(output, &text)?;
    Ok(if report.valid { exit::VALID } else { exit::CHECK_FAILED })
}

fn product(
    family: Family,
    n: usize,
    genera: Vec<u64>,
    mixed: Option<Vec<Family>>,
    emit: Option<&Path>,
    bounds: Bounds,
    output: &Output,
) -> Result<u8, Failure> {
    let start = Instant::now();
    let spec = match mixed {
        Some(families) => FamilySpec::mixed(n, genera, families),
        None => FamilySpec::new(family, n, genera),
    }?;
    let input = product_presentation_with(&spec, bounds.options())?;
    if let Some(path) = emit {
        let scenario = Scenario::from_input(&input, Some(spec.describe()));
        fs::write(path, scenario.to_toml()).map_err(|e| io_failure(path, e))?;
    }
    let report = run_presentation(&input)?;
    let cmp = compare(&report, &closed_form_expectation(&spec));
    let text = if output.machine() {
        json(&ReportDocument {
            engine: ENGINE,
            version: VERSION,
            command: "product",
            scenario: None,
            title: None,
            family: Some(spec.describe()),
            report: &report,
            expected: Some(cmp.clone()),
            timing_ms: start.elapsed().as_millis(),
        })
    } else {
        report_text(&report, Some(&spec.describe()), Some(&cmp))
    };
    write_output(output, &text)?;
    let ok = report.valid && !cmp.iter().any(|c| c.is_mismatch());
    Ok(if ok { exit::VALID } else { exit::CHECK_FAILED })
}

fn paper_table(filter: Option<&str>, output: &Output) -> Result<u8, Failure> {
    let start = Instant::now();
    let rows = reproduce_paper_table(filter);
    let summary = TableSummary::of(&rows);
    let failed = summary.fail > 0;
    let text = if output.machine() {
        json(&TableDocument {
            engine: ENGINE,
            version: VERSION,
            command: "paper-table",
            filter,
            rows: &rows,
            summary,
            timing_ms: start.elapsed().as_millis(),
        })
    } else {
        table_text(&rows)
    };
    write_output(output, &text)?;
    Ok(if failed { exit::CHECK_FAILED } else { exit::VALID })
}

const MATRIX_PRINT_LIMIT: usize = 12;

fn spectrum(path: &Path, bounds: Bounds, output: &Output) -> Result<u8, Failure> {
    let start = Instant::now();
    let (_, input) = load(path, bounds.options())?;
    let (dec, coeffs) = coefficients(&input)?;
    let m = hecke_matrix(&dec, &coeffs, bounds.matrix_bound)?;
    let index = m.rows();
    let matrix = (index <= MATRIX_PRINT_LIMIT)
        .then(|| (0..index).map(|i| m.row(i).iter().map(BigInt::to_string).collect()).collect());
    let shown = path.display().to_string();
    let expected_rank: BigRational = input.characters().iter().map(|c| c.degree()).sum();
    let mut doc = SpectrumDocument {
        engine: ENGINE,
        version: VERSION,
        command: "spectrum",
        scenario: &shown,
        index,
        coefficients: coeffs.iter().map(BigInt::to_string).collect(),
        b: None,
        q: None,
        lambda: None,
        square_ok: None,
        rank: m.rank(),
        expected_rank: expected_rank.to_string(),
        eigenvalues: None,
        matrix,
        holds: false,
        note: String::new(),
        timing_ms: 0,
    };
    match exponent(&input, &coeffs) {
        Ok((b, q)) => {
            let p = projector_identity_check(&m, &b, &q, input.characters())?;
            doc.b = Some(b.to_string());
            doc.q = Some(q.to_string());
            doc.lambda = Some(p.lambda.to_string());
            doc.square_ok = Some(p.square_ok);
            doc.expected_rank = p.expected_rank.to_string();
            if p.square_ok {
                let mut ev = Vec::new();
                if index > p.rank {
                    ev.push(Eigenvalue {
                        value: "0".into(),
                        multiplicity: index - p.rank,
                    });
                }
                if p.rank > 0 {
                    ev.push(Eigenvalue {
                        value: p.lambda.to_string(),
                        multiplicity: p.rank,
                    });
                }
                doc.eigenvalues = Some(ev);
            }
            doc.holds = p.holds();
            doc.note = if doc.holds {
                format!("M is {} times the isotypic projector", p.lambda)
            } else if !p.square_ok {
                format!("M^2 differs from {} M", p.lambda)
            } else {
                format!("rank {} differs from sum dim V_k = {}", p.rank, p.expected_rank)
            };
        }
        Err(e) if matches!(e.root(), Error::Degenerate | Error::ExponentNotIntegral(_)) => {
            doc.note = format!("no correspondence: {e}");
        }
        Err(e) => return Err(e.into()),
    }
    doc.timing_ms = start.elapsed().as_millis();
    let text = if output.machine() { json(&doc) } else { spectrum_text(&doc) };
    write_output(output, &text)?;
    Ok(if doc.holds { exit::VALID } else { exit::CHECK_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { path, bounds, output } => check(&path, bounds, &output),
        Command::Product {
            family,
            n,
            genera,
            mixed,
            emit,
            bounds,
            output,
        } => product(family, n, genera, mixed, emit.as_deref(), bounds, &output),
        Command::PaperTable { filter, output } => paper_table(filter.as_deref(), &output),
        Command::Spectrum { path, bounds, output } => spectrum(&path, bounds, &output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
