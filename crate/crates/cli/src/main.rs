use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lrkit_core::enveloping::Enveloping;
use lrkit_core::lie_rinehart::{parse_definition, write_definition, LrPresentation};
use lrkit_core::report::Report;
use lrkit_core::verify::{self, SampleSpec};
use lrkit_core::Error;

/// Universal enveloping algebras of Lie-Rinehart algebras: normal forms,
/// coproducts, primitives and structural checks.
#[derive(Parser)]
#[command(name = "lrkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// PBW degree bound D
    #[arg(long = "pbw-deg", global = true, default_value_t = 2)]
    pbw_deg: u32,
    /// Coefficient degree bound E
    #[arg(long = "coeff-deg", global = true, default_value_t = 2)]
    coeff_deg: u32,
    /// Degree bound for ring monomials used as bar-tensor probes
    #[arg(long = "probe-deg", global = true, default_value_t = 4)]
    probe_deg: u32,
    /// Print only results (verification verbs: only the summary block)
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie-Rinehart axioms of a definition file
    Check { file: PathBuf },
    /// Print the PBW normal form of an expression
    Nf {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the coproduct of an expression
    Coproduct {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the counit of an expression
    Counit {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List a basis of primitives with |alpha| <= D and coefficient degree <= E
    Primitives { file: PathBuf },
    /// Check multiplicativity of PBW symbols
    VerifyPbw { file: PathBuf },
    /// Check the bialgebra axioms on random elements
    VerifyBialgebra { file: PathBuf },
    /// Check the primitives / enveloping algebra correspondence
    VerifyCmm { file: PathBuf },
    /// Print the presentation over the fraction field
    Localize { file: PathBuf },
}

enum Failure {
    /// Validation or verification failed; the report is on stdout.
    Check(String),
    /// Unreadable input or bad usage.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<LrPresentation, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_definition(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn validated(path: &Path) -> Result<Enveloping, Failure> {
    let mut pres = load(path)?;
    let report = pres.validate();
    if !report.is_valid() {
        return Err(Failure::Check(report.render(&pres)));
    }
    Ok(Enveloping::new(pres)?)
}

fn finish(report: Report, quiet: bool) -> Result<String, Failure> {
    let text = if quiet {
        let full = report.render();
        full[full.find("[summary]").unwrap_or(0)..].to_string()
    } else {
        report.render()
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn parse_expr(env: &Enveloping, expr: &str) -> Result<lrkit_core::enveloping::UElement, Failure> {
    env.parse(expr)
        .map_err(|e| Failure::Usage(format!("in expression `{expr}`: {e}")))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let b = cli.bounds;
    let spec = SampleSpec {
        samples: 20,
        pbw_deg: b.pbw_deg,
        coeff_deg: b.coeff_deg,
        seed: 1,
    };
    match &cli.command {
        Command::Check { file } => {
            let mut pres = load(file)?;
            let report = pres.validate();
            if report.is_valid() {
                Ok(if b.quiet {
                    String::new()
                } else {
                    "ok: anchor is a Lie homomorphism and the Jacobi identity holds\n".into()
                })
            } else {
                Err(Failure::Check(report.render(&pres)))
            }
        }
        Command::Nf { file, expr } => {
            let env = validated(file)?;
            let u = parse_expr(&env, expr)?;
            Ok(format!("{}\n", env.render(&u)))
        }
        Command::Coproduct { file, expr } => {
            let env = validated(file)?;
            let u = parse_expr(&env, expr)?;
            Ok(format!("{}\n", env.render_tensor(&env.coproduct(&u)?)))
        }
        Command::Counit { file, expr } => {
            let env = validated(file)?;
            let u = parse_expr(&env, expr)?;
            Ok(format!("{}\n", env.ring().display(&env.counit(&u)?)))
        }
        Command::Primitives { file } => {
            let env = validated(file)?;
            let basis = env.primitives_basis(b.pbw_deg, b.coeff_deg)?;
            let mut out = String::new();
            if !b.quiet {
                out.push_str(&format!(
                    "# {} primitives with |alpha| <= {}, coefficient degree <= {}\n",
                    basis.len(),
                    b.pbw_deg,
                    b.coeff_deg
                ));
            }
            for u in &basis {
                out.push_str(&env.render(u));
                out.push('\n');
            }
            Ok(out)
        }
        Command::VerifyPbw { file } => {
            let env = validated(file)?;
            finish(verify::pbw_suite(&env, b.pbw_deg, spec)?, b.quiet)
        }
        Command::VerifyBialgebra { file } => {
            let env = validated(file)?;
            finish(verify::bialgebra_suite(&env, spec, b.probe_deg)?, b.quiet)
        }
        Command::VerifyCmm { file } => {
            let env = validated(file)?;
            finish(env.cmm_verify(b.pbw_deg, b.coeff_deg)?, b.quiet)
        }
        Command::Localize { file } => {
            let env = validated(file)?;
            Ok(write_definition(&env.presentation().localize()?))
        }
    }
}
