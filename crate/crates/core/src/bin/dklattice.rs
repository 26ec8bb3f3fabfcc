use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use dklattice::calculus::OperatorKind;
use dklattice::equations::{residual, EquationKind, MassParameter, ProjectorKind};
use dklattice::error::Error;
use dklattice::formfile;
use dklattice::lattice::{LatticeShape, DIM};
use dklattice::solver::{eigenmodes, plane_wave};
use dklattice::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "dklattice", version, about = "Dirac-Kahler calculus on a periodic 4-D lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites and print one `PROP` line per check.
    Verify {
        #[arg(long, default_value = "4x4x4x4", value_parser = parse_shape)]
        shape: LatticeShape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value = "all", value_parser = parse_tag::<Suite>)]
        suite: Suite,
        /// Random forms drawn per check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Random momenta drawn per solver-built check.
        #[arg(long, default_value_t = 3)]
        momenta: usize,
    },
    /// Plane-wave eigenmodes of one equation at one momentum.
    Solve {
        #[arg(long, value_parser = parse_tag::<EquationKind>)]
        equation: EquationKind,
        #[arg(long, value_parser = parse_shape)]
        shape: LatticeShape,
        #[arg(long, value_parser = parse_momentum)]
        momentum: [usize; DIM],
        #[arg(long, value_enum, default_value_t = MassFilter::All)]
        mass_filter: MassFilter,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Modes are written to `<OUT>.mode<K>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply d_c, delta_c or the Dirac operator to a form file.
    Apply {
        #[arg(long, value_parser = parse_tag::<OperatorKind>)]
        op: OperatorKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Right-multiply a form file by a projector.
    Decompose {
        #[arg(long, value_parser = parse_tag::<ProjectorKind>)]
        projector: ProjectorKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the sup-norm of an equation residual for a form file.
    Residual {
        #[arg(long, value_parser = parse_tag::<EquationKind>)]
        equation: EquationKind,
        #[arg(long, value_parser = parse_mass, allow_hyphen_values = true)]
        mass: Complex64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MassFilter {
    All,
    Real,
}

fn parse_shape(s: &str) -> Result<LatticeShape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tag<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_momentum(s: &str) -> Result<[usize; DIM], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != DIM {
        return Err(format!("expected {DIM} comma-separated integers, got {s:?}"));
    }
    let mut n = [0; DIM];
    for (slot, p) in n.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|_| format!("invalid momentum component {p:?}"))?;
    }
    Ok(n)
}

fn parse_mass(s: &str) -> Result<Complex64, String> {
    let mut it = s.split(',');
    let mut next = |what: &str| -> Result<f64, String> {
        match it.next() {
            Some(p) => p.trim().parse().map_err(|_| format!("invalid {what} part {p:?}")),
            None => Ok(0.0),
        }
    };
    let re = next("real")?;
    let im = next("imaginary")?;
    if it.next().is_some() {
        return Err(format!("expected RE or RE,IM, got {s:?}"));
    }
    Ok(Complex64::new(re, im))
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_MODES: u8 = 3;

fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn mode_path(out: &Path, k: usize) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(format!(".mode{k}.json"));
    PathBuf::from(name)
}

fn usage_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify { shape, seed, tol, suite, samples, momenta } => {
            let config = verify::Config { shape, seed, tol, suite, samples, momenta };
            match verify::run(&config) {
                Ok(report) => {
                    print!("{report}");
                    if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_VIOLATION)
                    }
                }
                Err(e) => fail(EXIT_USAGE, e),
            }
        }
        Command::Solve { equation, shape, momentum, mass_filter, tol, out } => {
            let modes = match eigenmodes(equation, shape, momentum) {
                Ok(m) => m,
                Err(e @ Error::InvalidMomentum { .. }) => return fail(EXIT_USAGE, e),
                Err(e) => return fail(EXIT_VIOLATION, e),
            };
            let selected: Vec<_> = modes
                .into_iter()
                .filter(|m| matches!(mass_filter, MassFilter::All) || m.mass.im.abs() <= tol)
                .collect();
            if selected.is_empty() {
                return fail(EXIT_NO_MODES, "no eigenmodes pass the mass filter");
            }
            println!("equation {} shape {} momentum {:?}", equation.tag(), shape, momentum);
            println!("{:>4} {:>24} {:>24}", "mode", "Re m", "Im m");
            for (k, mode) in selected.iter().enumerate() {
                println!("{:>4} {:>24.16e} {:>24.16e}", k, mode.mass.re, mode.mass.im);
            }
            if let Some(out) = out {
                for (k, mode) in selected.iter().enumerate() {
                    let written = plane_wave(mode, shape).and_then(|f| formfile::save(&f, mode_path(&out, k)));
                    if let Err(e) = written {
                        return fail(EXIT_VIOLATION, e);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Apply { op, input, out } => {
            let form = match formfile::load(&input) {
                Ok(f) => f,
                Err(e) => return fail(usage_code(&e), format!("{}: {e}", input.display())),
            };
            match formfile::save(&op.apply(&form), &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_VIOLATION, e),
            }
        }
        Command::Decompose { projector, input, out } => {
            let form = match formfile::load(&input) {
                Ok(f) => f,
                Err(e) => return fail(usage_code(&e), format!("{}: {e}", input.display())),
            };
            match formfile::save(&form.mul_const_right(&projector.value()), &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_VIOLATION, e),
            }
        }
        Command::Residual { equation, mass, input, tol } => {
            let form = match formfile::load(&input) {
                Ok(f) => f,
                Err(e) => return fail(usage_code(&e), format!("{}: {e}", input.display())),
            };
            let r = residual(equation, &form, MassParameter(mass)).sup_norm();
            println!("{r:.6e}");
            if r <= tol {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
    }
}
