//! The `rebrick` command line.
//!
//! Matrices are read from CSV or JSON files (chosen by extension), every
//! command prints one [`Report`], and the exit status carries the verdict:
//! 0 affirmative, 1 negative, 2 input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::basis;
use crate::error::{Error, Result};
use crate::frame::{self, FiniteFrame};
use crate::io;
use crate::linalg::{self, Complex64, ComplexMatrix, RealMatrix, Tolerance};
use crate::multiplier::{self, Multiplier};
use crate::permutation;
use crate::report::{ExitStatus, InputDigest, Report};

/// Environment variable holding a tolerance override.
pub const TOL_ENV: &str = "REBRICK_TOL";

const DEFAULT_SWEEP: [usize; 5] = [16, 32, 64, 128, 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "rebrick",
    version,
    about = "Rebricking of real bases and frames into complex ones"
)]
pub struct Cli {
    /// Tolerance: a bare number sets rank_rel; otherwise key=value pairs
    /// (rank_rel, eig_abs, equality_abs) separated by commas.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Where to write the constructed matrix (CSV, or JSON for a .json path).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print nothing but the JSON report.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Do the columns of a square matrix form a basis?
    CheckBasis { file: PathBuf },
    /// Rebrick two real bases V1, V2 into V1 + iV2.
    Rebrick { v1: PathBuf, v2: PathBuf },
    /// Find a column permutation so that V + iAVP is a basis.
    Repair { v: PathBuf, a: PathBuf },
    /// Frame operations on synthesis matrices (one frame vector per column).
    #[command(subcommand)]
    Frame(FrameCommand),
    /// Fourier multipliers on signals of length N.
    #[command(subcommand)]
    Multiplier(MultiplierCommand),
}

#[derive(Debug, Subcommand)]
pub enum FrameCommand {
    Bounds {
        file: PathBuf,
    },
    Parseval {
        file: PathBuf,
    },
    /// Compare F and G in both directions.
    Order {
        f: PathBuf,
        g: PathBuf,
    },
    /// Rebrick F with G, or with (Id + iA) F when --operator is given.
    Rebrick {
        f: PathBuf,
        #[arg(required_unless_present = "operator", conflicts_with = "operator")]
        g: Option<PathBuf>,
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Is A(Id + iS) surjective, for A n x p and S p x p?
    Frrebrick {
        a: PathBuf,
        s: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum MultiplierCommand {
    /// Is the symbol real, even and +-1 valued?
    Validate { symbol: PathBuf },
    /// Rebrick the translates of a generator with a symbol.
    Rebrick { generator: PathBuf, symbol: PathBuf },
    /// Rank and kernel of Id + iH for the discrete Hilbert transform.
    Hilbert(SizeArg),
    /// Rebricked trigonometric basis against the complex exponentials.
    Trig {
        #[arg(long = "K", visible_alias = "k")]
        k: usize,
        /// Grid size, at least 4K + 2 (the default).
        #[arg(long = "N", visible_alias = "n")]
        n: Option<usize>,
    },
    /// sigma_min(Id + iA_N) for a symbol approaching i.
    Sweep {
        #[arg(long = "N", visible_alias = "n", value_delimiter = ',')]
        n: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SizeArg {
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
}

/// Parse a tolerance override on top of `base`.
pub fn parse_tolerance(spec: &str, base: Tolerance) -> Result<Tolerance> {
    let bad = Error::InvalidTolerance("expected a number or key=value pairs");
    let mut tol = base;
    if let Ok(x) = spec.trim().parse::<f64>() {
        tol.rank_rel = x;
    } else {
        for part in spec.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| bad.clone())?;
            let value: f64 = value.trim().parse().map_err(|_| bad.clone())?;
            match key.trim() {
                "rank_rel" => tol.rank_rel = value,
                "eig_abs" => tol.eig_abs = value,
                "equality_abs" => tol.equality_abs = value,
                _ => return Err(Error::InvalidTolerance("unknown tolerance key")),
            }
        }
    }
    tol.validate()?;
    Ok(tol)
}

/// Defaults, then the environment value, then the flag.
pub fn resolve_tolerance(env: Option<&str>, flag: Option<&str>) -> Result<Tolerance> {
    let mut tol = Tolerance::default();
    if let Some(spec) = env {
        tol = parse_tolerance(spec, tol)?;
    }
    if let Some(spec) = flag {
        tol = parse_tolerance(spec, tol)?;
    }
    Ok(tol)
}

struct Context {
    tol: Tolerance,
    seed: u64,
    out: Option<PathBuf>,
    inputs: Vec<InputDigest>,
    notes: Vec<String>,
    wrote: Option<String>,
}

impl Context {
    fn load(&mut self, path: &Path) -> Result<ComplexMatrix> {
        let bytes = io::read_bytes(path)?;
        self.inputs
            .push(InputDigest::new(path.display().to_string(), &bytes));
        let text = String::from_utf8(bytes).map_err(|_| Error::Parse {
            row: 0,
            col: 0,
            message: format!("{} is not UTF-8", path.display()),
        })?;
        io::parse_matrix(&text, io::MatrixFormat::from_path(path)).map_err(|e| match e {
            Error::Parse { row, col, message } => Error::Parse {
                row,
                col,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })
    }

    fn load_real(&mut self, path: &Path) -> Result<RealMatrix> {
        let m = self.load(path)?;
        io::require_real(&m, &path.display().to_string())
    }

    fn load_vector(&mut self, path: &Path) -> Result<Vec<Complex64>> {
        let m = self.load(path)?;
        if m.nrows() != 1 && m.ncols() != 1 {
            return Err(Error::ShapeMismatch {
                expected: (1, m.ncols()),
                found: m.shape(),
            });
        }
        Ok(m.iter().copied().collect())
    }

    fn emit(&mut self, m: &ComplexMatrix) -> Result<()> {
        if let Some(path) = &self.out {
            io::write_matrix(path, m)?;
            self.wrote = Some(path.display().to_string());
        }
        Ok(())
    }
}

/// Outcome of one command before it is wrapped into a report.
struct Outcome {
    verdict: bool,
    result: serde_json::Value,
}

fn outcome(verdict: bool, result: impl Serialize) -> Result<Outcome> {
    Ok(Outcome {
        verdict,
        result: serde_json::to_value(result).expect("results are serializable"),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::CheckBasis { .. } => "check-basis",
        Command::Rebrick { .. } => "rebrick",
        Command::Repair { .. } => "repair",
        Command::Frame(f) => match f {
            FrameCommand::Bounds { .. } => "frame bounds",
            FrameCommand::Parseval { .. } => "frame parseval",
            FrameCommand::Order { .. } => "frame order",
            FrameCommand::Rebrick { .. } => "frame rebrick",
            FrameCommand::Frrebrick { .. } => "frame frrebrick",
        },
        Command::Multiplier(m) => match m {
            MultiplierCommand::Validate { .. } => "multiplier validate",
            MultiplierCommand::Rebrick { .. } => "multiplier rebrick",
            MultiplierCommand::Hilbert(_) => "multiplier hilbert",
            MultiplierCommand::Trig { .. } => "multiplier trig",
            MultiplierCommand::Sweep { .. } => "multiplier sweep",
        },
    }
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Outcome> {
    match cmd {
        Command::CheckBasis { file } => check_basis(ctx, file),
        Command::Rebrick { v1, v2 } => rebrick(ctx, v1, v2),
        Command::Repair { v, a } => repair(ctx, v, a),
        Command::Frame(f) => frame_command(ctx, f),
        Command::Multiplier(m) => multiplier_command(ctx, m),
    }
}

fn check_basis(ctx: &mut Context, file: &Path) -> Result<Outcome> {
    let m = ctx.load(file)?;
    let n = linalg::ensure_square(&m)?;
    let sv = linalg::singular_values(&m)?;
    let rank = linalg::rank_from_singular_values(&sv, n, n, &ctx.tol);
    outcome(
        rank == n,
        json!({
            "n": n,
            "rank": rank,
            "sigma_min": sv[n - 1],
            "sigma_max": sv[0],
            "threshold": ctx.tol.rank_threshold(n, n, sv[0]),
        }),
    )
}

fn rebrick(ctx: &mut Context, v1: &Path, v2: &Path) -> Result<Outcome> {
    let a = ctx.load_real(v1)?;
    let b = ctx.load_real(v2)?;
    let (m, verdict) = basis::rebrick_pair(&a, &b, &ctx.tol)?;
    if verdict.near_degenerate {
        ctx.notes
            .push("verdict is near-degenerate at this tolerance".into());
    }
    if verdict.rebrickable {
        ctx.emit(&m)?;
    }
    outcome(verdict.rebrickable, &verdict)
}

fn repair(ctx: &mut Context, v: &Path, a: &Path) -> Result<Outcome> {
    let v = ctx.load_real(v)?;
    let a = ctx.load_real(a)?;
    let local = permutation::change_of_basis(&v, &a, &ctx.tol)?;
    let found = match permutation::repair_permutation(&local, &ctx.tol, ctx.seed) {
        Ok(found) => found,
        Err(Error::SearchExhausted { trials }) => {
            return outcome(false, json!({ "trials": trials }));
        }
        Err(e) => return Err(e),
    };
    let repaired = permutation::rebrick_with_permutation(&v, &a, &found.permutation, &ctx.tol)?;
    if found.degenerate {
        ctx.notes
            .push("repaired operator is near-degenerate at this tolerance".into());
    }
    ctx.emit(&repaired)?;
    outcome(
        true,
        json!({
            "cycles": found.permutation.to_string(),
            "image": found.permutation,
            "trials": found.trials,
            "sigma_min_after": found.sigma_min_after,
            "min_dist_to_i_after": found.min_dist_to_i_after,
            "degenerate": found.degenerate,
            "repaired": matrix_value(&repaired),
        }),
    )
}

fn matrix_value(m: &ComplexMatrix) -> serde_json::Value {
    serde_json::from_str(&io::to_json(m)).expect("matrix JSON is valid")
}

fn load_frame(
    ctx: &mut Context,
    path: &Path,
) -> Result<std::result::Result<FiniteFrame<f64>, Error>> {
    let s = ctx.load_real(path)?;
    match FiniteFrame::new(s, path.display().to_string(), &ctx.tol) {
        Err(e @ Error::NotAFrame { .. }) => Ok(Err(e)),
        other => other.map(Ok),
    }
}

fn not_a_frame(e: Error) -> Result<Outcome> {
    match e {
        Error::NotAFrame { rank, dim } => outcome(
            false,
            json!({ "is_frame": false, "rank": rank, "dim": dim }),
        ),
        other => Err(other),
    }
}

fn frame_command(ctx: &mut Context, cmd: &FrameCommand) -> Result<Outcome> {
    match cmd {
        FrameCommand::Bounds { file } => {
            let f = match load_frame(ctx, file)? {
                Ok(f) => f,
                Err(e) => return not_a_frame(e),
            };
            let b = frame::frame_bounds(&f)?;
            outcome(
                true,
                json!({ "is_frame": true, "dim": f.dim(), "len": f.len(), "c": b.lower, "C": b.upper }),
            )
        }
        FrameCommand::Parseval { file } => {
            let f = match load_frame(ctx, file)? {
                Ok(f) => f,
                Err(e) => return not_a_frame(e),
            };
            let parseval = frame::is_parseval(&f, &ctx.tol);
            let n = f.dim();
            let defect = linalg::max_abs_diff(&f.frame_operator(), &RealMatrix::identity(n, n));
            outcome(parseval, json!({ "parseval": parseval, "defect": defect }))
        }
        FrameCommand::Order { f, g } => {
            let f = load_frame(ctx, f)??;
            let g = load_frame(ctx, g)??;
            let v = frame::frame_leq(&f, &g, &ctx.tol)?;
            let t = frame::compatibility_operator(&f, &g, &ctx.tol)?;
            outcome(
                v.leq,
                json!({
                    "order": v,
                    "compatibility_operator": t.map(|t| matrix_value(&linalg::to_complex(&t))),
                }),
            )
        }
        FrameCommand::Rebrick { f, g, operator } => {
            let f = load_frame(ctx, f)??;
            if let Some(a) = operator {
                let a = ctx.load_real(a)?;
                let r = match frame::operator_rebrick_frame(&f, &a, &ctx.tol) {
                    Ok(r) => r,
                    Err(Error::NotRebrickable { sigma_min }) => {
                        return outcome(
                            false,
                            json!({ "rebrickable": false, "sigma_min_b": sigma_min }),
                        );
                    }
                    Err(e) => return Err(e),
                };
                ctx.emit(r.frame.synthesis())?;
                return outcome(
                    true,
                    json!({ "rebrickable": true, "c": r.bounds.lower, "C": r.bounds.upper, "verdict": r.verdict }),
                );
            }
            let g = load_frame(ctx, g.as_ref().expect("clap requires G without --operator"))??;
            if f.dim() != g.dim() {
                return Err(Error::ShapeMismatch {
                    expected: f.synthesis().shape(),
                    found: g.synthesis().shape(),
                });
            }
            match frame::rebrick_frames(&f, &g, &ctx.tol) {
                Ok((rebricked, b)) => {
                    ctx.emit(rebricked.synthesis())?;
                    outcome(
                        true,
                        json!({ "is_frame": true, "c": b.lower, "C": b.upper }),
                    )
                }
                Err(e) => not_a_frame(e),
            }
        }
        FrameCommand::Frrebrick { a, s } => {
            let a = ctx.load_real(a)?;
            let s = ctx.load_real(s)?;
            let r = frame::frrebrick_check(&a, &s, &ctx.tol)?;
            outcome(r.holds, &r)
        }
    }
}

fn multiplier_command(ctx: &mut Context, cmd: &MultiplierCommand) -> Result<Outcome> {
    match cmd {
        MultiplierCommand::Validate { symbol } => {
            let m = Multiplier::new(ctx.load_vector(symbol)?)?;
            let v = multiplier::validate_rebrick_multiplier(&m, &ctx.tol);
            outcome(v.valid, &v)
        }
        MultiplierCommand::Rebrick { generator, symbol } => {
            let x = ctx.load_vector(generator)?;
            let x = io::require_real(&ComplexMatrix::from_row_slice(1, x.len(), &x), "generator")?;
            let m = Multiplier::new(ctx.load_vector(symbol)?)?;
            let validation = multiplier::validate_rebrick_multiplier(&m, &ctx.tol);
            let (b, unitary) = multiplier::rebrick_translates(x.as_slice(), &m, &ctx.tol)?;
            ctx.emit(&b)?;
            outcome(
                unitary,
                json!({
                    "unitary": unitary,
                    "unitarity_defect": linalg::unitarity_defect(&b)?,
                    "symbol": validation,
                }),
            )
        }
        MultiplierCommand::Hilbert(SizeArg { n }) => {
            let d = multiplier::analytic_defect(*n, &ctx.tol)?;
            ctx.notes
                .push("DC and Nyquist bins of the Hilbert symbol are 0".into());
            outcome(d.kernel_dim == 0, d)
        }
        MultiplierCommand::Trig { k, n } => {
            let grid = n.unwrap_or(4 * k + 2);
            let r = multiplier::trig_rebrick_demo(*k, grid)?;
            outcome(r.unimodular && r.max_deviation <= ctx.tol.equality_abs, &r)
        }
        MultiplierCommand::Sweep { n } => {
            let ns = if n.is_empty() {
                DEFAULT_SWEEP.to_vec()
            } else {
                n.clone()
            };
            let rows = multiplier::conditioning_sweep(&ns, &ctx.tol)?;
            let decreasing = rows.windows(2).all(|w| w[1].sigma_min < w[0].sigma_min);
            let injective = rows.iter().all(|r| r.kernel_dim == 0);
            ctx.notes.push(
                "the symbol and its band layout are a modeling choice; thresholds depend on it"
                    .into(),
            );
            outcome(
                decreasing && injective,
                json!({
                    "rows": rows,
                    "strictly_decreasing": decreasing,
                    "kernel_free": injective,
                    "modeling_dependent": true,
                }),
            )
        }
    }
}

/// Run the command line and return the exit code.
pub fn run<I, T>(
    args: I,
    env_tol: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                ExitStatus::InputError.code()
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let json_out = cli.quiet || cli.format == OutputFormat::Json;
    let tol = match resolve_tolerance(env_tol, cli.tol.as_deref()) {
        Ok(tol) => tol,
        Err(e) => {
            let report = Report::new(name, Tolerance::default()).failed(e.to_string());
            return finish(&report, json_out, cli.quiet, stdout, stderr);
        }
    };
    let mut ctx = Context {
        tol,
        seed: cli.seed,
        out: cli.out.clone(),
        inputs: Vec::new(),
        notes: Vec::new(),
        wrote: None,
    };
    let mut report = Report::new(name, tol);
    report = match dispatch(&cli.command, &mut ctx) {
        Ok(o) => report.with_verdict(o.verdict).with_result(o.result),
        Err(e) => report.failed(e.to_string()),
    };
    report.inputs = ctx.inputs;
    report.notes = ctx.notes;
    report.out = ctx.wrote;
    finish(&report, json_out, cli.quiet, stdout, stderr)
}

fn finish(
    report: &Report,
    json_out: bool,
    quiet: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let text = if json_out {
        report.to_json()
    } else {
        report.to_text()
    };
    let _ = stdout.write_all(text.as_bytes());
    if !quiet && json_out {
        if let Some(e) = &report.error {
            let _ = writeln!(stderr, "error: {e}");
        }
    }
    report.exit_code
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let env = std::env::var(TOL_ENV).ok();
    run(
        std::env::args_os(),
        env.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
