use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use wm_core::constructions::{
    build_as, lambda_q, ll_check, montecarlo_second_moment, remove_poly_intervals, QSignAssignment,
};
use wm_core::generators::{periodic_set, random_normal, sturmian, SturmianParams};
use wm_core::lindecide::{
    decide_wm_solvable, parse_rational, parse_vector, rado_regular, verify_certificate, RadoResult, RationalMatrix,
    Verdict,
};
use wm_core::patterns::{
    additive_poly_witness, find_ap, find_diff_square, find_mult_schur, find_mult_square, find_schur, find_sum_square,
    ip_prefix, recurrence_witness, PatternWitness,
};
use wm_core::setcore::io::{read_auto, write, SetFormat};
use wm_core::setcore::{normality_test, NormalityParams, Tolerance};
use wm_core::{IntPolynomial, IntegerSet, Seed, WmError};

use crate::report::{sha256_hex, CliError, CliResult, Context};

#[derive(Parser)]
#[command(name = "wm", version, about = "Set families, solvability decisions and pattern searches on subsets of ℕ")]
pub struct Cli {
    /// Exit with status 1 when nothing is found or the system is not solvable.
    #[arg(long, global = true)]
    pub expect_witness: bool,
    /// Accepted for compatibility; reports are always JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    pub compact: bool,
    /// Omit the wall-clock timing so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a random normal, Sturmian or periodic set.
    #[command(subcommand)]
    Generate(Generate),
    /// Build one of the counterexample sets.
    #[command(subcommand)]
    Construct(Construct),
    /// Run a statistical or combinatorial test on a set.
    #[command(subcommand)]
    Test(TestCmd),
    /// Decide solvability of a linear system.
    #[command(subcommand)]
    Decide(Decide),
    /// Search a set for a pattern.
    #[command(subcommand)]
    Find(Find),
    /// Monte-Carlo estimate of the second moment of modified Liouville correlations.
    Montecarlo(MonteCarloArgs),
    /// Convert a set file between the text and binary formats.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Binary,
}

impl From<Format> for SetFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => SetFormat::Text,
            Format::Binary => SetFormat::Binary,
        }
    }
}

#[derive(Args)]
pub struct Output {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
pub enum Generate {
    Normal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Inclusion probability `p` or `p/q`.
        #[arg(long, default_value = "1/2")]
        p: String,
        #[command(flatten)]
        output: Output,
    },
    Sturmian {
        #[arg(long)]
        n: usize,
        /// Accepted for symmetry with the other generators; unused.
        #[arg(long)]
        seed: Option<u64>,
        /// Fractional bits of α as hex digits (default √2 − 1 to 128 bits).
        #[arg(long)]
        alpha_bits: Option<String>,
        /// Closed interval `u/v..u'/v'` (default 2/5..3/5).
        #[arg(long)]
        interval: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    Periodic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "mod")]
        modulus: usize,
        #[arg(long, value_delimiter = ',')]
        residues: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
pub enum Construct {
    /// Chain set avoiding `a·x = b·y + c`, seeded by a fair-coin set S.
    AsChain {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        abc: Vec<i64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Modified Liouville set for a random or explicit prime set Q.
    LambdaQ {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "q", required_unless_present = "q")]
        seed: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
        #[command(flatten)]
        output: Output,
    },
    /// Remove the intervals `[p1(n), p2(n)]` from a set.
    RemoveIntervals {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
pub enum TestCmd {
    /// Correlation-based normality test.
    Normality {
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest number of shifts per tuple.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        max_shift: usize,
        /// Averaging length (default: horizon − max shift).
        #[arg(long)]
        n: Option<usize>,
        /// Constant `c` in the threshold `c/√N`.
        #[arg(long, default_value = "10")]
        c: String,
    },
    /// Smallest `L` for the `(l, L)` property.
    Ll {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
pub enum Decide {
    /// Solvability of `B·x = d` within every weakly mixing set.
    Linear {
        #[arg(long)]
        matrix: PathBuf,
        /// Right-hand side; defaults to zero.
        #[arg(long)]
        rhs: Option<PathBuf>,
    },
    /// Rado's columns condition for `A·x = 0`.
    Rado {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum Find {
    Schur(SetInput),
    MultSchur(SetInput),
    MultSquare(SetInput),
    SumSquare(SetInput),
    DiffSquare(SetInput),
    Ap {
        #[command(flatten)]
        set: SetInput,
        #[arg(long)]
        k: usize,
    },
    Ip {
        #[command(flatten)]
        set: SetInput,
        #[arg(long)]
        m: usize,
    },
    PolySystem {
        #[command(flatten)]
        set: SetInput,
        /// Polynomial coefficients, ascending degree; repeat per equation.
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
        #[arg(long)]
        zmax: u64,
        #[arg(long)]
        z_in_set: bool,
    },
    Recurrence {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        e: PathBuf,
    },
}

#[derive(Args)]
pub struct SetInput {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
pub struct MonteCarloArgs {
    #[arg(long, value_delimiter = ',')]
    shifts: Vec<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
pub struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Expected input format (default: detected from the magic bytes).
    #[arg(long, value_enum)]
    from: Option<Format>,
    #[arg(long, value_enum)]
    to: Format,
    #[arg(long)]
    out: PathBuf,
}

pub fn run(cmd: &Command, ctx: &mut Context) -> CliResult<Value> {
    match cmd {
        Command::Generate(g) => generate(g, ctx),
        Command::Construct(c) => construct(c, ctx),
        Command::Test(t) => test(t, ctx),
        Command::Decide(d) => decide(d, ctx),
        Command::Find(f) => find(f, ctx),
        Command::Montecarlo(m) => {
            let seed = ctx.seed("montecarlo", Seed::new(m.seed));
            let report = montecarlo_second_moment(&m.shifts, m.n, m.trials, seed)?;
            Ok(json!({
                "report": report,
                "mean_square_f64": report.mean_square_f64(),
                "std_error": report.std_error(),
            }))
        }
        Command::Convert(c) => convert(c, ctx),
    }
}

fn rational(arg: &str, text: &str) -> CliResult<BigRational> {
    parse_rational(text.trim()).map_err(|e| CliError::Usage(format!("--{arg}: {e}")))
}

fn polynomial(arg: &str, text: &str) -> CliResult<IntPolynomial> {
    IntPolynomial::parse(text).map_err(|e| CliError::Usage(format!("--{arg}: {e}")))
}

fn read_set(ctx: &mut Context, path: &Path) -> CliResult<IntegerSet> {
    let bytes = ctx.read(path)?;
    read_auto(&bytes).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn write_set(set: &IntegerSet, output: &Output) -> CliResult<Value> {
    write_set_as(set, &output.out, output.format.into())
}

fn write_set_as(set: &IntegerSet, path: &Path, format: SetFormat) -> CliResult<Value> {
    let bytes = write(set, format)?;
    std::fs::write(path, &bytes).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        source: e.into(),
    })?;
    Ok(json!({
        "out": path.display().to_string(),
        "format": match format { SetFormat::Text => "text", SetFormat::Binary => "binary" },
        "horizon": set.horizon(),
        "size": set.len(),
        "density": set.density().to_string(),
        "sha256": sha256_hex(&bytes),
    }))
}

fn generate(g: &Generate, ctx: &mut Context) -> CliResult<Value> {
    match g {
        Generate::Normal {
            n,
            seed,
            stream,
            p,
            output,
        } => {
            let seed = ctx.seed("normal", Seed::with_stream(*seed, *stream));
            let p = rational("p", p)?;
            let set = random_normal(*n, seed, &p)?;
            Ok(json!({ "generator": "normal", "p": p.to_string(), "set": write_set(&set, output)? }))
        }
        Generate::Sturmian {
            n,
            alpha_bits,
            interval,
            output,
            ..
        } => {
            let (lower, upper) = match interval {
                None => (BigRational::new(2.into(), 5.into()), BigRational::new(3.into(), 5.into())),
                Some(text) => {
                    let (u, v) = text
                        .split_once("..")
                        .ok_or_else(|| CliError::Usage("--interval must look like u/v..u'/v'".into()))?;
                    (rational("interval", u)?, rational("interval", v)?)
                }
            };
            let params = match alpha_bits {
                None => SturmianParams::with_interval(lower.clone(), upper.clone())?,
                Some(h) => {
                    let (alpha, bits) = SturmianParams::alpha_from_hex(h)?;
                    SturmianParams::new(alpha, bits, lower.clone(), upper.clone())?
                }
            };
            let set = sturmian(*n, &params)?;
            Ok(json!({
                "generator": "sturmian",
                "interval": [lower.to_string(), upper.to_string()],
                "set": write_set(&set, output)?,
            }))
        }
        Generate::Periodic {
            n,
            modulus,
            residues,
            output,
            ..
        } => {
            let set = periodic_set(*n, *modulus, residues)?;
            Ok(json!({
                "generator": "periodic",
                "modulus": modulus,
                "residues": residues,
                "set": write_set(&set, output)?,
            }))
        }
    }
}

fn construct(c: &Construct, ctx: &mut Context) -> CliResult<Value> {
    match c {
        Construct::AsChain { abc, seed, n, output } => {
            let &[a, b, c] = abc.as_slice() else {
                return Err(CliError::Usage("--abc takes exactly three integers a,b,c".into()));
            };
            let seed = ctx.seed("as-chain-s", Seed::new(*seed).derive("as-chain-s", 0));
            let s = random_normal(*n, seed, &BigRational::new(1.into(), 2.into()))?;
            let built = build_as(&s, a, b, c)?;
            Ok(json!({
                "construction": "as-chain",
                "equation": [a, b, c],
                "vacuous": built.vacuous,
                "set": write_set(&built.set, output)?,
            }))
        }
        Construct::LambdaQ { n, seed, q, output } => {
            let assignment = match (seed, q) {
                (Some(s), _) => QSignAssignment::Seeded(ctx.seed("lambda-q", Seed::new(*s))),
                (None, Some(q)) => QSignAssignment::Explicit(q.clone()),
                (None, None) => return Err(CliError::Usage("give --seed or --q".into())),
            };
            let (_, set) = lambda_q(*n, &assignment)?;
            Ok(json!({ "construction": "lambda-q", "set": write_set(&set, output)? }))
        }
        Construct::RemoveIntervals { input, p1, p2, output } => {
            let a = read_set(ctx, input)?;
            let p1 = polynomial("p1", p1)?;
            let p2 = polynomial("p2", p2)?;
            let out = remove_poly_intervals(&a, &p1, &p2)?;
            Ok(json!({
                "construction": "remove-intervals",
                "p1": p1.coeffs(),
                "p2": p2.coeffs(),
                "removed": a.len() - out.len(),
                "set": write_set(&out, output)?,
            }))
        }
    }
}

fn test(t: &TestCmd, ctx: &mut Context) -> CliResult<Value> {
    match t {
        TestCmd::Normality {
            input,
            k,
            max_shift,
            n,
            c,
        } => {
            let a = read_set(ctx, input)?;
            let n = match n {
                Some(n) => *n,
                None => a.horizon().checked_sub(*max_shift).filter(|&n| n > 0).ok_or_else(|| {
                    CliError::Usage(format!("horizon {} too small for max shift {max_shift}", a.horizon()))
                })?,
            };
            let mut params = NormalityParams::new(*k, *max_shift, n);
            params.tolerance = Tolerance::InvSqrt(rational("c", c)?);
            let report = normality_test(&a, &params)?;
            ctx.negative = !report.pass;
            Ok(json!({ "test": "normality", "n": n, "report": report }))
        }
        TestCmd::Ll { input, l } => {
            let a = read_set(ctx, input)?;
            let result = ll_check(&a, *l);
            ctx.negative = matches!(result, wm_core::constructions::LlResult::NotSatisfied);
            Ok(json!({ "test": "ll", "l": l, "result": result }))
        }
    }
}

fn read_matrix(ctx: &mut Context, path: &Path) -> CliResult<RationalMatrix> {
    let text = ctx.read_text(path)?;
    RationalMatrix::parse(&text).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn decide(d: &Decide, ctx: &mut Context) -> CliResult<Value> {
    match d {
        Decide::Linear { matrix, rhs } => {
            let b = read_matrix(ctx, matrix)?;
            let d = match rhs {
                None => vec![BigRational::from_integer(0.into()); b.rows()],
                Some(path) => {
                    let text = ctx.read_text(path)?;
                    let v = parse_vector(&text).map_err(|source| CliError::Input {
                        path: path.display().to_string(),
                        source,
                    })?;
                    if v.len() != b.rows() {
                        return Err(CliError::Usage(format!(
                            "right-hand side has {} entries but the matrix has {} rows",
                            v.len(),
                            b.rows()
                        )));
                    }
                    v
                }
            };
            let verdict = decide_wm_solvable(&b, &d);
            let verification = match &verdict {
                Verdict::Solvable(cert) => Some(verify_certificate(&b, &d, cert)),
                Verdict::NotSolvable(_) => None,
            };
            ctx.negative = !verdict.is_solvable();
            Ok(json!({ "decision": verdict, "verification": verification }))
        }
        Decide::Rado { matrix } => {
            let a = read_matrix(ctx, matrix)?;
            let result = rado_regular(&a)?;
            ctx.negative = matches!(result, RadoResult::NotRegular);
            Ok(json!({ "rado": result }))
        }
    }
}

fn witness_payload(ctx: &mut Context, kind: &str, w: Option<PatternWitness>) -> Value {
    ctx.negative = w.is_none();
    json!({ "pattern": kind, "found": w.is_some(), "witness": w })
}

fn find(f: &Find, ctx: &mut Context) -> CliResult<Value> {
    let (kind, w) = match f {
        Find::Schur(s) => ("schur", find_schur(&read_set(ctx, &s.input)?)),
        Find::MultSchur(s) => ("mult-schur", find_mult_schur(&read_set(ctx, &s.input)?, false)),
        Find::MultSquare(s) => ("mult-square", find_mult_square(&read_set(ctx, &s.input)?)),
        Find::SumSquare(s) => ("sum-square", find_sum_square(&read_set(ctx, &s.input)?)),
        Find::DiffSquare(s) => ("diff-square", find_diff_square(&read_set(ctx, &s.input)?)),
        Find::Ap { set, k } => ("ap", find_ap(&read_set(ctx, &set.input)?, *k)?),
        Find::Ip { set, m } => ("ip", ip_prefix(&read_set(ctx, &set.input)?, *m)?),
        Find::PolySystem {
            set,
            polys,
            zmax,
            z_in_set,
        } => {
            let a = read_set(ctx, &set.input)?;
            let polys = polys.iter().map(|p| polynomial("poly", p)).collect::<CliResult<Vec<_>>>()?;
            let w = additive_poly_witness(&a, &polys, *zmax, *z_in_set)?;
            let mut payload = witness_payload(ctx, "poly-system", w);
            payload["polys"] = json!(polys.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>());
            return Ok(payload);
        }
        Find::Recurrence { s, e } => {
            let s = read_set(ctx, s)?;
            let e = read_set(ctx, e)?;
            ("recurrence", recurrence_witness(&s, &e))
        }
    };
    Ok(witness_payload(ctx, kind, w))
}

fn convert(c: &ConvertArgs, ctx: &mut Context) -> CliResult<Value> {
    let bytes = ctx.read(&c.input)?;
    let corrupt = |source: WmError| CliError::Input {
        path: c.input.display().to_string(),
        source,
    };
    let set = match c.from {
        None => read_auto(&bytes),
        Some(Format::Text) => wm_core::setcore::io::read_text(bytes.as_slice()),
        Some(Format::Binary) => wm_core::setcore::io::read_binary(bytes.as_slice()),
    }
    .map_err(corrupt)?;
    Ok(json!({ "set": write_set_as(&set, &c.out, c.to.into())? }))
}
