//! `toeplitz-lmi`: positivity certificates, stability tests and LMI inner
//! approximations from the command line.
//!
//! Exit codes: 0 success (or member / stable / found), 1 negative verdict,
//! 2 usage or validation error.

mod output;
mod problem;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toeplitz_lmi::approx::{
    convergence_table, find_m0, member_pc, member_pcm, member_s, MembershipVerdict, SetKind,
    CONVERGENCE_CSV_HEADER, DEFAULT_SPR_TOL,
};
use toeplitz_lmi::polynomial::trig_min;
use toeplitz_lmi::region::{
    boundary_residuals, emit_csv, emit_svg, rasterize, Bounds, CellClass, GridSpec,
};
use toeplitz_lmi::spectra::{min_eigenvalue, DEFAULT_EIG_TOL};
use toeplitz_lmi::toeplitz::{build_moment, build_weighted};
use toeplitz_lmi::{Error, SymmetricBandedToeplitz};

use output::num;
use problem::Inputs;

#[derive(Parser)]
#[command(name = "toeplitz-lmi", version, about)]
struct Cli {
    /// Significant digits for printed floats.
    #[arg(long, global = true, default_value_t = 17,
          value_parser = clap::value_parser!(u32).range(1..=40))]
    digits: u32,
    /// JSON problem file; inline coefficient flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Coefficient lists, ascending powers, space separated.
#[derive(Args)]
struct Coeffs {
    /// Trigonometric polynomial p0 .. pn.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    p: Option<Vec<f64>>,
    /// Central polynomial c0 .. c(n-1) (monic, leading 1 implied).
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    c: Option<Vec<f64>>,
    /// Design polynomial d0 .. d(n-1) (monic, leading 1 implied).
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    d: Option<Vec<f64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Certified minimum of p over the circle.
    TrigMin {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = DEFAULT_EIG_TOL)]
        tol: f64,
    },
    /// Dense weighted (pm) or moment (rm) Toeplitz matrix.
    Matrix {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enclosure of the smallest eigenvalue.
    EigMin {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, default_value_t = DEFAULT_EIG_TOL)]
        tol: f64,
    },
    /// Schur stability of z^n + d(n-1) z^(n-1) + ... + d0.
    Stable {
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        d: Option<Vec<f64>>,
    },
    /// Membership of d in S, P^c or P^c_m.
    Member {
        #[arg(long, value_enum)]
        set: Set,
        #[command(flatten)]
        coeffs: Coeffs,
        /// Matrix order, required for pcm.
        #[arg(long)]
        m: Option<usize>,
        /// Strictness margin for pc.
        #[arg(long, default_value_t = DEFAULT_SPR_TOL)]
        tol: f64,
    },
    /// Smallest order from which P_m stays positive definite up to --max-m.
    FindM0 {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        max_m: usize,
    },
    /// Convergence of the smallest eigenvalues toward the trigonometric minimum.
    Converge {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        /// CSV destination; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasterize a 2D slice of the design space to CSV or SVG.
    Region {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long)]
        m: usize,
        #[arg(long, num_args = 4, allow_negative_numbers = true,
              value_names = ["XMIN", "XMAX", "YMIN", "YMAX"])]
        bounds: Option<Vec<f64>>,
        #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
        res: Option<Vec<usize>>,
        /// Coefficient indices on the x and y axes.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        axes: Option<Vec<usize>>,
        /// Fixed value for a non-axis coefficient, as INDEX=VALUE.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_parser = parse_fix)]
        fix: Vec<(usize, f64)>,
        /// Output file; the extension (.csv or .svg) selects the format.
        #[arg(long)]
        out: PathBuf,
    },
    /// The two boundary factors of det P_7 for c = z^2.
    Boundary {
        #[arg(long, allow_negative_numbers = true)]
        d0: f64,
        #[arg(long, allow_negative_numbers = true)]
        d1: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pm,
    Rm,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Set {
    S,
    Pc,
    Pcm,
}

fn parse_fix(s: &str) -> Result<(usize, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected INDEX=VALUE, got {s:?}"))?;
    let k = k.trim().parse().map_err(|e| format!("index {k:?}: {e}"))?;
    let v = v.trim().parse().map_err(|e| format!("value {v:?}: {e}"))?;
    Ok((k, v))
}

/// What a subcommand produced: standard output text and the exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }

    fn verdict(stdout: String, positive: bool) -> Self {
        Self {
            stdout,
            code: if positive { 0 } else { 1 },
        }
    }
}

type Run = Result<Outcome, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn inputs(coeffs: Coeffs, file: Option<&Path>) -> Result<Inputs, String> {
    Inputs::new(coeffs.p, coeffs.c, coeffs.d, file)
}

fn build(kind: Kind, inputs: &Inputs, m: usize) -> Result<SymmetricBandedToeplitz, String> {
    let p = inputs.trig()?;
    match kind {
        Kind::Pm => build_weighted(&p, m),
        Kind::Rm => build_moment(&p, m),
    }
    .map_err(err)
}

fn check_tol(tol: f64) -> Result<(), String> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(err(Error::InvalidTolerance(tol)))
    }
}

fn run(cli: Cli) -> Run {
    let digits = cli.digits as usize;
    let file = cli.file.as_deref();
    let f = |x: f64| num(x, digits);
    match cli.command {
        Command::TrigMin { coeffs, tol } => {
            let p = inputs(coeffs, file)?.trig()?;
            let r = trig_min(&p, tol).map_err(err)?;
            Ok(Outcome::ok(format!(
                "minimum {}\nargmin {}\ncertified_error {}\n",
                f(r.value),
                f(r.argmin),
                f(r.certified_error)
            )))
        }
        Command::Matrix {
            kind,
            m,
            coeffs,
            format,
        } => {
            let t = build(kind, &inputs(coeffs, file)?, m)?;
            let dense = t.to_dense();
            let rows: Vec<Vec<f64>> = dense
                .row_iter()
                .map(|r| r.iter().copied().collect())
                .collect();
            Ok(Outcome::ok(match format {
                Format::Text => output::matrix_text(&rows, digits),
                Format::Csv => output::matrix_csv(&rows, digits),
            }))
        }
        Command::EigMin {
            kind,
            m,
            coeffs,
            tol,
        } => {
            check_tol(tol)?;
            let t = build(kind, &inputs(coeffs, file)?, m)?;
            let e = min_eigenvalue(&t, tol).map_err(err)?;
            Ok(Outcome::ok(format!(
                "lo {}\nhi {}\nmidpoint {}\nconverged {}\niterations {}\n",
                f(e.lo),
                f(e.hi),
                f(e.midpoint()),
                e.converged,
                e.iterations
            )))
        }
        Command::Stable { d } => {
            let d = Inputs::new(None, None, d, file)?.design()?;
            let stable = member_s(&d).member;
            Ok(Outcome::verdict(format!("stable {stable}\n"), stable))
        }
        Command::Member {
            set,
            coeffs,
            m,
            tol,
        } => {
            let inputs = inputs(coeffs, file)?;
            let d = inputs.design()?;
            let v = match set {
                Set::S => member_s(&d),
                Set::Pc => {
                    check_tol(tol)?;
                    member_pc(&inputs.central()?, &d, tol).map_err(err)?
                }
                Set::Pcm => {
                    let m = m.ok_or("--m is required for --set pcm")?;
                    member_pcm(&inputs.central()?, &d, m).map_err(err)?
                }
            };
            Ok(Outcome::verdict(verdict_text(&v, digits), v.member))
        }
        Command::FindM0 { coeffs, max_m } => {
            let inputs = inputs(coeffs, file)?;
            match find_m0(&inputs.central()?, &inputs.design()?, max_m) {
                Ok(Some(m0)) => Ok(Outcome::ok(format!("{m0}\n"))),
                Ok(None) => Ok(Outcome::verdict("none\n".into(), false)),
                Err(Error::NotStrictlyPositive { minimum }) => Err(format!(
                    "d is not in P^c (trigonometric minimum {}), so no finite m0 exists",
                    f(minimum)
                )),
                Err(e) => Err(err(e)),
            }
        }
        Command::Converge {
            coeffs,
            m_from,
            m_to,
            out,
        } => {
            if m_from > m_to {
                return Err(format!("--m-from {m_from} exceeds --m-to {m_to}"));
            }
            let p = inputs(coeffs, file)?.trig()?;
            let orders: Vec<usize> = (m_from..=m_to).collect();
            let rows = convergence_table(&p, &orders).map_err(err)?;
            let mut csv = format!("{CONVERGENCE_CSV_HEADER}\n");
            for r in rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.m,
                    f(r.lambda_min_pm),
                    f(r.lambda_min_rm),
                    f(r.frobenius_gap),
                    f(r.trig_min)
                ));
            }
            match out {
                Some(path) => {
                    write_file(&path, &csv)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(csv)),
            }
        }
        Command::Region {
            coeffs,
            m,
            bounds,
            res,
            axes,
            fix,
            out,
        } => {
            let c = inputs(coeffs, file)?.central()?;
            let mut spec = GridSpec::default();
            if let Some(b) = bounds {
                spec.bounds = Bounds {
                    x_min: b[0],
                    x_max: b[1],
                    y_min: b[2],
                    y_max: b[3],
                };
            }
            if let Some(r) = res {
                (spec.nx, spec.ny) = (r[0], r[1]);
            }
            if let Some(a) = axes {
                (spec.axis_x, spec.axis_y) = (a[0], a[1]);
            }
            spec.fixed_coords = fix;
            let svg = match out.extension().and_then(|e| e.to_str()) {
                Some("svg") => true,
                Some("csv") => false,
                _ => {
                    return Err(format!(
                        "{}: output must end in .csv or .svg",
                        out.display()
                    ))
                }
            };
            let raster = rasterize(&c, m, &spec).map_err(err)?;
            write_file(
                &out,
                &if svg {
                    emit_svg(&raster)
                } else {
                    emit_csv(&raster)
                },
            )?;
            let mut summary = String::new();
            for class in [
                CellClass::LmiInner,
                CellClass::StableOnly,
                CellClass::Unstable,
            ] {
                summary.push_str(&format!("{} {}\n", class.as_str(), raster.count(class)));
            }
            Ok(Outcome::ok(summary))
        }
        Command::Boundary { d0, d1 } => {
            let (cubic, quartic) = boundary_residuals(d0, d1);
            Ok(Outcome::ok(format!(
                "cubic {}\nquartic {}\n",
                f(cubic),
                f(quartic)
            )))
        }
    }
}

fn verdict_text(v: &MembershipVerdict, digits: usize) -> String {
    let set = match v.set {
        SetKind::Stable => "s",
        SetKind::Spr => "pc",
        SetKind::Lmi => "pcm",
    };
    let mut s = format!("set {set}\nmember {}\n", v.member);
    if let Some(cert) = v.certificate {
        s.push_str(&format!("certificate {}\n", num(cert, digits)));
    }
    if let Some(m) = v.matrix_order {
        s.push_str(&format!("m {m}\n"));
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!(
                "{}",
                msg.lines().next().unwrap_or("error: invalid arguments")
            );
            return ExitCode::from(2);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
