mod args;
mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use mlsp::complex::{construct, io as cio};
use mlsp::lefschetz::*;
use mlsp::{BalancedComplex, Error, MultiDeg};
use sha2::{Digest, Sha256};

use args::{Cli, Command, ConstructKind, Format, Opts};

const SEED_VAR: &str = "MLSP_SEED";

enum Output {
    Report(CheckReport),
    Plain(output::Plain),
}

fn load(path: &Path) -> Result<(BalancedComplex, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Input(format!("{}: not UTF-8", path.display())))?;
    let bc = cio::parse_complex_str(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok((bc, bytes))
}

/// `--seed`, then `MLSP_SEED`, then the first eight bytes of a SHA-256 of
/// the input.
fn base_seed(opts: &Opts, source: &[u8]) -> Result<u64> {
    if let Some(s) = opts.seed {
        return Ok(s);
    }
    if let Ok(v) = std::env::var(SEED_VAR) {
        return v.trim().parse().map_err(|_| Error::Input(format!("{SEED_VAR}={v:?} is not an unsigned integer")).into());
    }
    let digest = Sha256::digest(source);
    Ok(u64::from_be_bytes(digest[..8].try_into().expect("32-byte digest")))
}

fn config(opts: &Opts, seed: u64) -> LefschetzConfig {
    let element = if opts.random_element { ElementChoice::Random { seed } } else { ElementChoice::Canonical };
    LefschetzConfig {
        element,
        field: opts.field,
        seeds: LefschetzConfig::seeds_from(seed, opts.trials),
        trials: opts.trials,
        symbolic: opts.symbolic,
    }
}

fn report_command(cmd: &Command, bc: &BalancedComplex, cfg: &LefschetzConfig) -> Result<CheckReport> {
    Ok(match cmd {
        Command::Slp { .. } => check_multigraded_slp(bc, cfg)?,
        Command::Ends { .. } => check_graded_ends(bc, cfg)?,
        Command::Manifold { .. } => check_manifold_surjectivity(bc, cfg)?,
        Command::TwoCm { .. } => check_2cm_injectivity(bc, cfg)?,
        Command::Bmu { cycle, .. } => check_bmu_slp(bc, *cycle, cfg)?,
        Command::Anisotropy { b, colors, .. } => {
            let colors: Option<Vec<usize>> = match colors {
                Some(cs) => Some(cs.iter().map(|&c| c.checked_sub(1).ok_or_else(|| Error::Input("colors start at 1".into()))).collect::<Result<_, _>>()?),
                None => None,
            };
            check_anisotropy_symbolic(bc, &MultiDeg(b.clone()), colors.as_deref())?
        }
        Command::DiffFormula { general, .. } => verify_differential_formula(bc, *general)?,
        Command::Inequalities { which, betti, .. } => {
            let which = if which.is_empty() { Inequality::ALL.to_vec() } else { which.clone() };
            verify_inequalities(bc, &which, betti.as_deref())?
        }
        _ => unreachable!("not a report command"),
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Construct { kind } => {
            let bc = match kind {
                ConstructKind::Join { a } => {
                    if a.is_empty() || a.contains(&0) {
                        return Err(Error::Input("join needs a nonempty list of positive sizes".into()).into());
                    }
                    construct::join_spheres(a)
                }
                ConstructKind::Crosspoly { d } => {
                    if *d == 0 {
                        return Err(Error::Input("crosspoly needs d ≥ 1".into()).into());
                    }
                    construct::cross_polytope(*d)
                }
                ConstructKind::Simplexbdry { k } => {
                    if *k == 0 {
                        return Err(Error::Input("simplexbdry needs k ≥ 1".into()).into());
                    }
                    BalancedComplex::monochromatic(construct::simplex_boundary(*k))
                }
                ConstructKind::Stacked { d, n } => BalancedComplex::monochromatic(construct::stacked_sphere(*d, *n, opts.seed)?),
                ConstructKind::Stellar { input, face } => {
                    let (bc, _) = load(input)?;
                    let sigma = bc.complex.face_from_names(face)?;
                    BalancedComplex::monochromatic(construct::stellar_subdivision(&bc.complex, &sigma)?)
                }
                ConstructKind::Sd { input, l, fine } => {
                    let (bc, _) = load(input)?;
                    let (f, c) = construct::partial_barycentric_subdivision(&bc.complex, *l)?;
                    if *fine {
                        f
                    } else {
                        c
                    }
                }
            };
            let json = cio::to_json(&bc, true);
            Ok(Output::Plain(output::Plain { text: json.clone(), json }))
        }
        Command::Counterexample { i, d, n } => {
            let seed = base_seed(opts, format!("counterexample {i} {d} {n}").as_bytes())?;
            Ok(Output::Report(reproduce_counterexample(*i, *d, *n, &config(opts, seed))?))
        }
        cmd => {
            let input = cmd.input().expect("every remaining command reads a complex");
            let (bc, bytes) = load(input)?;
            let seed = base_seed(opts, &bytes)?;
            match cmd {
                Command::Info { .. } => Ok(Output::Plain(output::info(&bc))),
                Command::Check { .. } => Ok(Output::Plain(output::check(&bc, opts.field)?)),
                Command::Hvec { betti, .. } => Ok(Output::Plain(output::hvec(&bc, opts.field, betti.as_deref())?)),
                Command::Artinian { socle, .. } => Ok(Output::Plain(output::artinian(&bc, opts.field, opts.symbolic, seed, *socle)?)),
                _ => Ok(Output::Report(report_command(cmd, &bc, &config(opts, seed))?)),
            }
        }
    }
}

fn header(cli: &Cli) -> String {
    let field = if cli.opts.symbolic { "symbolic".to_string() } else { cli.opts.field.to_string() };
    format!("field {field}, {} trials\n", cli.opts.trials)
}

fn emit(cli: &Cli, out: &Output) -> Result<i32> {
    let (body, code) = match out {
        Output::Report(r) => {
            let body = match cli.opts.format {
                Format::Json => r.to_json(),
                Format::Text => format!("{}{}", header(cli), r.to_text()),
            };
            (body, r.exit_code())
        }
        Output::Plain(output::Plain { json, text }) => {
            let body = match cli.opts.format {
                Format::Json => json.clone(),
                Format::Text => text.clone(),
            };
            (body, 0)
        }
    };
    let mut body = body;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.opts.output {
        Some(path) => std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes()).context("writing to stdout")?,
    }
    Ok(code)
}

/// Input problems exit 3; resource limits leave the question open (2).
fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded(_) | Error::FieldTooSmall(_) | Error::Hypothesis(_)) => 2,
        Some(Error::Consistency(_)) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
