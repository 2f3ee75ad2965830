//! Command-line front end: parse JSON inputs, dispatch the exact
//! computations, render canonical outputs.
//!
//! Exit codes: `0` success, `1` mathematical failure (inadmissible input,
//! mismatch verdicts, poles), `2` input failure (unreadable file, malformed
//! JSON, schema violation, bad flags).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use strinv_core::elliptic::{ell_smooth_pair, ell_toric_equivariant, rigidity_check};
use strinv_core::exact::{limit_at_one, parse_ratexpr, rational_to_string};
use strinv_core::io::{
    qseries_to_json, BlowupSpec, GraphSpec, LimitSpec, McKaySpec, OrbifoldSpec, SchemaError,
    ToricSpec,
};
use strinv_core::orbifold::{e_orb, mckay_verify, orbifold_chi_y, orbifold_euler, OrbifoldError};
use strinv_core::stringy::{e_stringy, stringy_chi_y, stringy_euler};

#[derive(Parser)]
#[command(
    name = "strinv",
    version,
    about = "Exact stringy and orbifold invariants of surface singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exceptional strata only: the germ's own invariant.
    Local,
    /// All strata of the pair; needs `ambient_e` in the document.
    Global,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a resolution graph and report admissibility.
    Classify { input: PathBuf },
    /// Solve the discrepancy coefficients of the exceptional curves.
    Discrepancy { input: PathBuf },
    /// Stringy E-function of a resolution graph.
    Stringy {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
        /// Print the stringy Euler number instead.
        #[arg(long, conflicts_with = "chi_y")]
        euler: bool,
        /// Print the stringy χ_y genus instead.
        #[arg(long = "chi-y")]
        chi_y: bool,
    },
    /// Stringy χ_y genus of a resolution graph.
    ChiY {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
    },
    /// Stringy Euler number of a resolution graph.
    Euler {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
    },
    /// Orbifold E-function of a cover with sector data.
    Orbifold {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
        /// Print the orbifold Euler number instead.
        #[arg(long, conflicts_with = "chi_y")]
        euler: bool,
        /// Print the orbifold χ_y genus instead.
        #[arg(long = "chi-y")]
        chi_y: bool,
    },
    /// Check that a cover's orbifold E-function equals its quotient's
    /// stringy E-function.
    MckayCheck {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Local)]
        mode: Mode,
    },
    /// Blow up a resolution graph at a site and print the new graph.
    Blowup { input: PathBuf },
    /// Check that a log Calabi–Yau toric pair's equivariant elliptic genus
    /// vanishes through the requested order.
    ToricRigidity {
        input: PathBuf,
        /// Expansion order in whole powers of q.
        #[arg(long, default_value_t = 3)]
        q_order: u32,
    },
    /// q-expansion of the elliptic genus of a toric pair (equivariant when
    /// the document names a group).
    Elliptic {
        input: PathBuf,
        /// Expansion order in whole powers of q.
        #[arg(long, default_value_t = 3)]
        q_order: u32,
    },
    /// Limit of a quotient of expressions as one variable goes to 1.
    Limit { input: PathBuf },
}

/// What a command produced: the canonical text rendering, the structured
/// value for JSON mode, and whether a verification verdict failed.
struct Rendered {
    canonical: String,
    result: serde_json::Value,
    failed: bool,
}

impl Rendered {
    fn value(canonical: String) -> Self {
        let result = json!({ "value": canonical });
        Rendered {
            canonical,
            result,
            failed: false,
        }
    }
}

enum CliError {
    /// Unreadable input, malformed JSON, schema violation. Exit 2.
    Input(String),
    /// The computation itself rejected the data. Exit 1.
    Math(String),
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Input(e.to_string())
    }
}

macro_rules! math_errors {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Math(e.to_string())
            }
        }
    )*};
}

math_errors!(
    strinv_core::GraphError,
    strinv_core::stringy::StringyError,
    strinv_core::orbifold::OrbifoldError,
    strinv_core::EllipticError,
    strinv_core::ExactError,
    strinv_core::ToricError
);

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn run(command: &Command) -> Result<Rendered, CliError> {
    match command {
        Command::Classify { input } => {
            let spec: GraphSpec = load(input)?;
            let solved = spec.to_graph()?.solve_discrepancies()?;
            let class = solved.classify()?;
            let admissibility = solved.check_admissible();
            let canonical = match &admissibility {
                Ok(()) => format!("{class}; admissible"),
                Err(e) => format!("{class}; not admissible ({e})"),
            };
            Ok(Rendered {
                canonical,
                result: json!({
                    "class": class.to_string(),
                    "admissible": admissibility.is_ok(),
                }),
                failed: false,
            })
        }
        Command::Discrepancy { input } => {
            let spec: GraphSpec = load(input)?;
            let solved = spec.to_graph()?.solve_discrepancies()?;
            let mut lines = Vec::new();
            let mut pairs = Vec::new();
            for i in solved.exceptional_indices() {
                let id = &solved.curves()[i].id;
                let value = rational_to_string(solved.coeff(i)?);
                lines.push(format!("{id} = {value}"));
                pairs.push(json!([id, value]));
            }
            Ok(Rendered {
                canonical: lines.join("\n"),
                result: json!({ "coefficients": pairs }),
                failed: false,
            })
        }
        Command::Stringy {
            input,
            mode,
            euler,
            chi_y,
        } => {
            let spec: GraphSpec = load(input)?;
            let graph = spec.to_graph()?.solve_discrepancies()?;
            let smode = spec.mode(*mode == Mode::Global)?;
            let canonical = if *euler {
                rational_to_string(&stringy_euler(&graph, &smode)?)
            } else if *chi_y {
                stringy_chi_y(&graph, &smode)?.to_string()
            } else {
                e_stringy(&graph, &smode)?.to_string()
            };
            Ok(Rendered::value(canonical))
        }
        Command::ChiY { input, mode } => {
            let spec: GraphSpec = load(input)?;
            let graph = spec.to_graph()?.solve_discrepancies()?;
            let smode = spec.mode(*mode == Mode::Global)?;
            Ok(Rendered::value(stringy_chi_y(&graph, &smode)?.to_string()))
        }
        Command::Euler { input, mode } => {
            let spec: GraphSpec = load(input)?;
            let graph = spec.to_graph()?.solve_discrepancies()?;
            let smode = spec.mode(*mode == Mode::Global)?;
            Ok(Rendered::value(rational_to_string(&stringy_euler(
                &graph, &smode,
            )?)))
        }
        Command::Orbifold {
            input,
            mode,
            euler,
            chi_y,
        } => {
            let spec: OrbifoldSpec = load(input)?;
            let smode = spec.graph.mode(*mode == Mode::Global)?;
            let mut datum = spec.to_datum()?;
            datum.graph = datum.graph.solve_discrepancies()?;
            let canonical = if *euler {
                rational_to_string(&orbifold_euler(&datum, &smode)?)
            } else if *chi_y {
                orbifold_chi_y(&datum, &smode)?.to_string()
            } else {
                e_orb(&datum, &smode, None)?.to_string()
            };
            Ok(Rendered::value(canonical))
        }
        Command::MckayCheck { input, mode } => {
            let spec: McKaySpec = load(input)?;
            let global = *mode == Mode::Global;
            let cover_mode = spec.cover.graph.mode(global)?;
            let quotient_mode = spec.quotient.mode(global)?;
            let mut cover = spec.cover.to_datum()?;
            cover.graph = cover.graph.solve_discrepancies()?;
            let quotient = spec.quotient.to_graph()?.solve_discrepancies()?;
            match mckay_verify(&cover, &cover_mode, &quotient, &quotient_mode) {
                Ok(e) => {
                    let value = e.to_string();
                    Ok(Rendered {
                        canonical: format!(
                            "PASS: orbifold cover equals stringy quotient: {value}"
                        ),
                        result: json!({ "verdict": "PASS", "value": value }),
                        failed: false,
                    })
                }
                Err(OrbifoldError::McKayMismatch { orbifold, stringy }) => Ok(Rendered {
                    canonical: format!(
                        "FAIL: orbifold cover gives {orbifold}; stringy quotient gives {stringy}"
                    ),
                    result: json!({
                        "verdict": "FAIL",
                        "orbifold": orbifold,
                        "stringy": stringy,
                    }),
                    failed: true,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Blowup { input } => {
            let spec: BlowupSpec = load(input)?;
            let graph = spec.graph.to_graph()?.solve_discrepancies()?;
            let mut blown = graph.blowup(&spec.to_site(), &spec.new_id)?;
            // Exceptional coefficients re-solve from the combinatorics, so
            // the output document stays in input form.
            blown.strip_exceptional_coefficients();
            let mut out = GraphSpec::from_graph(&blown);
            // A blow-up of the ambient surface adds one exceptional line,
            // which raises the ambient E-polynomial by uv.
            if let Some(text) = &spec.graph.ambient_e {
                let ambient = parse_ratexpr(text).map_err(|e| {
                    CliError::Input(SchemaError {
                        path: "graph.ambient_e".to_string(),
                        msg: e.to_string(),
                    }
                    .to_string())
                })?;
                let w = parse_ratexpr("u*v").expect("constant expression");
                out.ambient_e = Some((&ambient + &w).to_string());
            }
            let result = serde_json::to_value(&out)
                .map_err(|e| CliError::Input(format!("rendering failed: {e}")))?;
            Ok(Rendered {
                canonical: serde_json::to_string_pretty(&result)
                    .map_err(|e| CliError::Input(format!("rendering failed: {e}")))?,
                result,
                failed: false,
            })
        }
        Command::ToricRigidity { input, q_order } => {
            let spec: ToricSpec = load(input)?;
            let pair = spec.to_pair()?;
            let group = spec.to_group()?;
            let report = rigidity_check(&pair, &group, *q_order)?;
            let series_line = if report.vanishes {
                format!("PASS: all coefficients zero through q^{q_order}")
            } else {
                format!("FAIL: nonzero coefficient at or below q^{q_order}")
            };
            let q0_line = if report.q0_vanishes {
                "PASS: q^0 coefficient zero".to_string()
            } else {
                "FAIL: q^0 coefficient nonzero".to_string()
            };
            let failed = !(report.vanishes && report.q0_vanishes);
            Ok(Rendered {
                canonical: format!("{series_line}\n{q0_line}"),
                result: json!({
                    "verdict": if failed { "FAIL" } else { "PASS" },
                    "q_order": q_order,
                    "vanishes": report.vanishes,
                    "q0_vanishes": report.q0_vanishes,
                }),
                failed,
            })
        }
        Command::Elliptic { input, q_order } => {
            let spec: ToricSpec = load(input)?;
            let pair = spec.to_pair()?;
            let series = if spec.has_group() {
                ell_toric_equivariant(&pair, &spec.to_group()?, *q_order)?
            } else {
                ell_smooth_pair(&pair, *q_order)?
            };
            Ok(Rendered {
                canonical: series.to_string(),
                result: qseries_to_json(&series),
                failed: false,
            })
        }
        Command::Limit { input } => {
            let spec: LimitSpec = load(input)?;
            let (num, den, var) = spec.parse()?;
            let quotient = num.div(&den)?;
            let value = limit_at_one(&quotient, var)?;
            Ok(Rendered::value(value.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(rendered) => {
            match cli.output {
                OutputFormat::Text => println!("{}", rendered.canonical),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "result": rendered.result,
                        "canonical": rendered.canonical,
                    }))
                    .expect("JSON rendering of produced values cannot fail")
                ),
            }
            if rendered.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
