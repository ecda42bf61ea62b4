//! Command-line front end for the exact super Hochschild homology library:
//! axiom validation, homology tables, Morita-invariance verification, and
//! canonical JSON export of the built-in catalog.
//!
//! Exit codes: 0 success (verdict verified), 1 mathematical failure (axiom
//! violation, verdict not verified), 2 input error (unreadable files, parse
//! errors, unknown builtins, bad flags).

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use superhh_cli::format::SpecFile;
use superhh_cli::{builtin, format, Failure};
use superhh_core::bimod::{regular_bimodule, GradedBimodule};
use superhh_core::exactlin::FieldTag;
use superhh_core::hochschild::hochschild_homology;
use superhh_core::morita::{verify_morita_invariance, RotationSign};
use superhh_core::superalg::{SuperAlgebra, ValidationReport};
use superhh_core::MoritaContext;

#[derive(Parser)]
#[command(name = "superhh", version, about = "Exact super Hochschild homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check all axioms of algebra/bimodule files or builtins
    Validate {
        /// builtin:<name> tokens and/or JSON files (bimodule files may
        /// reference algebra files loaded in the same invocation)
        inputs: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Field for builtins: Q (default) or Fp:<prime>
        #[arg(long)]
        field: Option<String>,
    },
    /// Hochschild homology dimensions of an algebra
    Hh {
        /// builtin:<name> or an algebra JSON file
        input: String,
        /// Bimodule JSON file of coefficients; defaults to the algebra itself
        #[arg(long)]
        coefficients: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Field for builtins: Q (default) or Fp:<prime>
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        json: bool,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify Morita invariance for a context (A, B, P, Q)
    Morita {
        /// builtin:matrix:P,Q or builtin:self:<algebra>
        #[arg(long)]
        context: Option<String>,
        /// Alternatively: two algebra files and two bimodule files
        /// (first bimodule = P, second = Q)
        files: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Field for builtins: Q (default) or Fp:<prime>
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        json: bool,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true, default_value = "block-product",
              value_parser = ["block-product", "total-sum"])]
        rotation_sign: String,
    },
    /// Write a builtin to the JSON format
    Export {
        /// builtin:<algebra> (one file) or a context builtin (four files)
        builtin: String,
        /// Target path; a context writes <base>.{a,b,p,q}.json
        #[arg(long)]
        out: PathBuf,
        /// Field for the exported structure: Q (default) or Fp:<prime>
        #[arg(long)]
        field: Option<String>,
    },
    /// List the builtin algebra and context names
    BuiltinList {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate {
            inputs,
            json,
            field,
        } => cmd_validate(&inputs, json, field.as_deref()),
        Command::Hh {
            input,
            coefficients,
            max_degree,
            field,
            json,
            out,
        } => cmd_hh(
            &input,
            coefficients.as_deref(),
            max_degree,
            field.as_deref(),
            json,
            &out,
        ),
        Command::Morita {
            context,
            files,
            max_degree,
            field,
            json,
            out,
            rotation_sign,
        } => cmd_morita(
            context.as_deref(),
            &files,
            max_degree,
            field.as_deref(),
            json,
            &out,
            &rotation_sign,
        ),
        Command::Export {
            builtin,
            out,
            field,
        } => cmd_export(&builtin, &out, field.as_deref()),
        Command::BuiltinList { json } => cmd_builtin_list(json),
    }
}

fn parse_field(flag: Option<&str>) -> Result<FieldTag, Failure> {
    match flag {
        None => Ok(FieldTag::Rational),
        Some(text) => text
            .parse()
            .map_err(|e: superhh_core::Error| Failure::Input(e.to_string())),
    }
}

fn check_degree(max_degree: usize) -> Result<(), Failure> {
    if max_degree > 8 {
        return Err(Failure::Input(format!(
            "--max-degree {max_degree} is above the supported limit of 8 (chain sizes grow as dim^degree)"
        )));
    }
    Ok(())
}

/// Loads a batch of spec files: algebras first, then bimodules resolving
/// their algebra references against the loaded names.
#[allow(clippy::type_complexity)]
fn load_files(
    paths: &[String],
    field_flag: Option<&str>,
) -> Result<(HashMap<String, Arc<SuperAlgebra>>, Vec<GradedBimodule>), Failure> {
    let specs: Vec<(String, SpecFile)> = paths
        .iter()
        .map(|p| format::read_spec(p).map(|s| (p.clone(), s)))
        .collect::<Result<_, _>>()?;
    let mut algebras = HashMap::new();
    for (path, spec) in &specs {
        if let SpecFile::Algebra(a) = spec {
            let algebra = format::algebra_from_spec(a)?;
            if let Some(flag) = field_flag {
                let requested = parse_field(Some(flag))?;
                if algebra.field() != requested {
                    return Err(Failure::Input(format!(
                        "{path}: declares field {}, but --field {flag} was given",
                        algebra.field()
                    )));
                }
            }
            if algebras
                .insert(algebra.name().to_string(), Arc::new(algebra))
                .is_some()
            {
                return Err(Failure::Input(format!("{path}: duplicate algebra name")));
            }
        }
    }
    let mut bimodules = Vec::new();
    for (_, spec) in &specs {
        if let SpecFile::Bimodule(b) = spec {
            bimodules.push(format::bimodule_from_spec(b, &algebras)?);
        }
    }
    Ok((algebras, bimodules))
}

fn require_valid(report: &ValidationReport) -> Result<(), Failure> {
    if report.is_valid() {
        Ok(())
    } else {
        println!("{report}");
        Err(Failure::Math(format!(
            "{} failed validation",
            report.subject
        )))
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_validate(inputs: &[String], json: bool, field_flag: Option<&str>) -> Result<(), Failure> {
    if inputs.is_empty() {
        return Err(Failure::Input("nothing to validate".into()));
    }
    let field = parse_field(field_flag)?;
    let mut reports: Vec<ValidationReport> = Vec::new();

    let (builtins, files): (Vec<_>, Vec<_>) =
        inputs.iter().cloned().partition(|t| builtin::is_builtin(t));
    for token in &builtins {
        match builtin::algebra(token, field) {
            Ok(a) => reports.push(a.validate()),
            Err(_) => reports.extend(builtin::context(token, field)?.validation_reports()),
        }
    }
    let (algebras, bimodules) = load_files(&files, field_flag)?;
    let mut named: Vec<_> = algebras.values().collect();
    named.sort_by_key(|a| a.name().to_string());
    reports.extend(named.iter().map(|a| a.validate()));
    reports.extend(bimodules.iter().map(|m| m.validate()));

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        );
    } else {
        for report in &reports {
            println!("{report}");
        }
    }
    if reports.iter().all(|r| r.is_valid()) {
        Ok(())
    } else {
        Err(Failure::Math("axiom violations found".into()))
    }
}

fn cmd_hh(
    input: &str,
    coefficients: Option<&str>,
    max_degree: usize,
    field_flag: Option<&str>,
    json: bool,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    check_degree(max_degree)?;
    let (algebra, loaded) = if builtin::is_builtin(input) {
        let a = builtin::algebra(input, parse_field(field_flag)?)?;
        let mut map = HashMap::new();
        map.insert(a.name().to_string(), a.clone());
        (a, map)
    } else {
        let (algebras, _) = load_files(&[input.to_string()], field_flag)?;
        let a = algebras
            .values()
            .next()
            .cloned()
            .ok_or_else(|| Failure::Input(format!("{input}: not an algebra file")))?;
        (a, algebras)
    };
    require_valid(&algebra.validate())?;

    let coeffs = match coefficients {
        None => regular_bimodule(&algebra),
        Some(path) => {
            let spec = match format::read_spec(path)? {
                SpecFile::Bimodule(b) => b,
                SpecFile::Algebra(_) => {
                    return Err(Failure::Input(format!("{path}: expected a bimodule file")))
                }
            };
            format::bimodule_from_spec(&spec, &loaded)?
        }
    };
    require_valid(&coeffs.validate())?;

    let table = hochschild_homology(&algebra, &coeffs, max_degree)
        .map_err(|e| Failure::Math(e.to_string()))?;
    let text = if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&table).expect("table serializes")
        )
    } else {
        format!("{table}\n")
    };
    emit(out, text)
}

fn cmd_morita(
    context: Option<&str>,
    files: &[String],
    max_degree: usize,
    field_flag: Option<&str>,
    json: bool,
    out: &Option<PathBuf>,
    rotation_sign: &str,
) -> Result<(), Failure> {
    check_degree(max_degree)?;
    let sign = match rotation_sign {
        "total-sum" => RotationSign::TotalSum,
        _ => RotationSign::BlockProduct,
    };
    let ctx = match (context, files.is_empty()) {
        (Some(token), true) => builtin::context(token, parse_field(field_flag)?)?,
        (None, false) => {
            let (algebras, bimodules) = load_files(files, field_flag)?;
            let [p, q]: [GradedBimodule; 2] = bimodules.try_into().map_err(|_| {
                Failure::Input("a file context needs exactly two bimodule files (P then Q)".into())
            })?;
            let a = p.left_algebra().clone();
            let b = p.right_algebra().clone();
            if algebras.len() > 2 {
                return Err(Failure::Input(
                    "a file context needs at most two algebra files".into(),
                ));
            }
            if q.left_algebra().name() != b.name() || q.right_algebra().name() != a.name() {
                return Err(Failure::Input(format!(
                    "the second bimodule must be a ({}, {})-bimodule to pair with {}",
                    b.name(),
                    a.name(),
                    p.name()
                )));
            }
            let name = format!("{}:{}", p.name(), q.name());
            MoritaContext { name, a, b, p, q }
        }
        (Some(_), false) => {
            return Err(Failure::Input(
                "give either --context or files, not both".into(),
            ))
        }
        (None, true) => return Err(Failure::Input("no context given".into())),
    };

    let report = verify_morita_invariance(&ctx, max_degree, sign)
        .map_err(|e| Failure::Math(e.to_string()))?;
    let text = if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("report serializes")
        )
    } else {
        format!("{report}\n")
    };
    emit(out, text)?;
    if report.verified {
        Ok(())
    } else {
        Err(Failure::Math(format!(
            "Morita invariance not verified for {}",
            report.context
        )))
    }
}

fn cmd_export(token: &str, out: &Path, field_flag: Option<&str>) -> Result<(), Failure> {
    let field = parse_field(field_flag)?;
    if let Ok(algebra) = builtin::algebra(token, field) {
        let text = format::to_canonical_json(&format::algebra_to_spec(&algebra));
        return emit(&Some(out.to_path_buf()), text);
    }
    let ctx = builtin::context(token, field)?;
    let base = out
        .to_str()
        .map(|s| s.strip_suffix(".json").unwrap_or(s).to_string())
        .ok_or_else(|| Failure::Input("non-UTF-8 output path".into()))?;
    let parts = [
        (
            format!("{base}.a.json"),
            format::to_canonical_json(&format::algebra_to_spec(&ctx.a)),
        ),
        (
            format!("{base}.b.json"),
            format::to_canonical_json(&format::algebra_to_spec(&ctx.b)),
        ),
        (
            format!("{base}.p.json"),
            format::to_canonical_json(&format::bimodule_to_spec(&ctx.p)),
        ),
        (
            format!("{base}.q.json"),
            format::to_canonical_json(&format::bimodule_to_spec(&ctx.q)),
        ),
    ];
    for (path, text) in parts {
        emit(&Some(PathBuf::from(&path)), text)?;
        println!("{path}");
    }
    Ok(())
}

fn cmd_builtin_list(json: bool) -> Result<(), Failure> {
    if json {
        let value = serde_json::json!({
            "algebras": builtin::ALGEBRA_NAMES.iter().map(|(n, _)| n).collect::<Vec<_>>(),
            "contexts": builtin::CONTEXT_NAMES.iter().map(|(n, _)| n).collect::<Vec<_>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("static names serialize")
        );
        return Ok(());
    }
    println!("algebras:");
    for (name, what) in builtin::ALGEBRA_NAMES {
        println!("  {name:<28} {what}");
    }
    println!("contexts:");
    for (name, what) in builtin::CONTEXT_NAMES {
        println!("  {name:<28} {what}");
    }
    Ok(())
}
