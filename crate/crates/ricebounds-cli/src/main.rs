//! Command-line front end for the Rice Ie / incomplete Toronto / ILHI
//! evaluators: point evaluation, parameter sweeps to CSV, figure presets,
//! and the cross-representation verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical (tolerance/overflow) error.

mod presets;
mod sweep;
mod verify;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ricebounds::{
    ilhi_method, ilhi_methods, rice_method, rice_methods, toronto_method, toronto_methods, Error,
    EvalContext, EvalResult, IlhiParams, QuadConfig, RiceParams, TorontoParams,
};

use presets::PresetOverrides;
use sweep::{fmt_value, grid, Column};

/// Environment variable overriding the default quadrature relative
/// tolerance; the --tol flag overrides both.
const TOL_ENV: &str = "RICEBOUNDS_TOL";

#[derive(Parser)]
#[command(name = "ricebounds", version, about = "Rice Ie-function, incomplete Toronto function and incomplete Lipschitz-Hankel integrals: evaluation, sweeps, bounds and verification")]
struct Cli {
    /// Quadrature relative tolerance (overrides RICEBOUNDS_TOL and the
    /// built-in default of 1e-12)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Series term budget for the series methods
    #[arg(long, global = true, default_value_t = 100)]
    terms: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function at one point with a chosen method
    Eval {
        #[command(subcommand)]
        function: EvalFn,
    },
    /// Sweep one parameter over a grid and write a CSV
    Sweep(SweepArgs),
    /// Run the cross-representation identity suite and print residuals
    Verify,
    /// Canned figure sweeps
    Preset {
        #[command(subcommand)]
        action: PresetCmd,
    },
}

#[derive(Subcommand)]
enum EvalFn {
    /// Rice Ie-function Ie(k, x)
    Rice {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        x: f64,
        /// quadrature | alt-integral | series3 | series4 | marcum5 | marcum6
        /// | lemma1-rhs | bound-upper | bound-lower
        #[arg(long)]
        method: String,
    },
    /// Incomplete Toronto function T_B(m, n, r)
    Toronto {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        r: f64,
        #[arg(long = "B")]
        b: f64,
        /// quadrature | marcum-case | series9 | series10 | closed-form
        /// | bound-lower | bound-upper
        #[arg(long)]
        method: String,
    },
    /// Incomplete Lipschitz-Hankel integral Ie_{m,n}(z; a) over the I_n kernel
    Ilhi {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        n: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        z: f64,
        /// quadrature | closed-form | bound-lower | bound-upper
        #[arg(long)]
        method: String,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Which function family to sweep: rice | toronto | ilhi
    #[arg(long)]
    function: String,
    /// Fixed parameters, e.g. --fix k=0.5 (repeatable)
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    fixed: Vec<String>,
    /// Varying parameter as name:lo:hi:steps, e.g. --vary x:0.1:20:100
    #[arg(long)]
    vary: String,
    /// Comma-separated method names forming the CSV columns
    #[arg(long, value_delimiter = ',')]
    methods: Vec<String>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum PresetCmd {
    /// List the available presets with their defaults
    List,
    /// Run one preset (figure1 .. figure6)
    Run {
        name: String,
        /// Output CSV path (defaults to <name>.csv)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        steps: Option<usize>,
        /// Lower end of the varying grid
        #[arg(long)]
        lo: Option<f64>,
        /// Upper end of the varying grid
        #[arg(long)]
        hi: Option<f64>,
        /// Fixed k (figure1)
        #[arg(long)]
        k: Option<f64>,
        /// Fixed x (figures 2 and 3)
        #[arg(long)]
        x: Option<f64>,
        /// Fixed upper limit B (figures 4 and 5)
        #[arg(long = "B")]
        big_b: Option<f64>,
        /// Fixed exponential scale a (figure 6)
        #[arg(long)]
        a: Option<f64>,
    },
}

/// 0 success, 1 verification failure, 2 usage, 3 numerical.
fn error_exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => 2,
        Error::ToleranceNotMet { .. } | Error::Overflow(_) | Error::NonConvergence { .. } => 3,
    }
}

fn resolve_context(tol_flag: Option<f64>, terms: usize) -> Result<EvalContext, String> {
    let mut quad = QuadConfig::default();
    if let Ok(env_val) = std::env::var(TOL_ENV) {
        let v: f64 = env_val
            .parse()
            .map_err(|_| format!("{TOL_ENV} must be a float, got '{env_val}'"))?;
        quad.rel_tol = v;
    }
    if let Some(v) = tol_flag {
        quad.rel_tol = v;
        quad.abs_tol = v;
    }
    if !(quad.rel_tol > 0.0) {
        return Err(format!("tolerance must be positive, got {}", quad.rel_tol));
    }
    Ok(EvalContext { quad, terms })
}

fn print_eval(function: &str, result: &EvalResult) {
    println!(
        "{function} {} value={} est_error={:.2e}",
        result.method,
        fmt_value(result.value),
        result.est_error
    );
}

fn run_eval(function: EvalFn, ctx: &EvalContext) -> Result<(), Error> {
    match function {
        EvalFn::Rice { k, x, method } => {
            let strategy = rice_method(&method).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown rice method '{method}' (available: {})",
                    method_names(rice_methods().iter().map(|m| m.name()))
                ))
            })?;
            let r = strategy.eval(RiceParams::new(k, x)?, ctx)?;
            print_eval("rice", &r);
        }
        EvalFn::Toronto { m, n, r, b, method } => {
            let strategy = toronto_method(&method).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown toronto method '{method}' (available: {})",
                    method_names(toronto_methods().iter().map(|m| m.name()))
                ))
            })?;
            let res = strategy.eval(TorontoParams::new(m, n, r, b)?, ctx)?;
            print_eval("toronto", &res);
        }
        EvalFn::Ilhi { m, n, a, z, method } => {
            let strategy = ilhi_method(&method).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown ilhi method '{method}' (available: {})",
                    method_names(ilhi_methods().iter().map(|m| m.name()))
                ))
            })?;
            let res = strategy.eval(IlhiParams::new(m, n, a, z)?, ctx)?;
            print_eval("ilhi", &res);
        }
    }
    Ok(())
}

fn method_names<'a>(names: impl Iterator<Item = &'a str>) -> String {
    names.collect::<Vec<_>>().join(", ")
}

struct VarySpec {
    name: String,
    lo: f64,
    hi: f64,
    steps: usize,
}

fn parse_vary(spec: &str) -> Result<VarySpec, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("--vary expects name:lo:hi:steps, got '{spec}'"));
    }
    let lo: f64 = parts[1].parse().map_err(|_| format!("bad lo '{}'", parts[1]))?;
    let hi: f64 = parts[2].parse().map_err(|_| format!("bad hi '{}'", parts[2]))?;
    let steps: usize = parts[3]
        .parse()
        .map_err(|_| format!("bad steps '{}'", parts[3]))?;
    if steps < 2 {
        return Err(format!("steps must be >= 2, got {steps}"));
    }
    if !(lo < hi) {
        return Err(format!("need lo < hi, got {lo} .. {hi}"));
    }
    Ok(VarySpec {
        name: parts[0].to_string(),
        lo,
        hi,
        steps,
    })
}

fn parse_fixed(args: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut map = BTreeMap::new();
    for item in args {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--fix expects NAME=VALUE, got '{item}'"))?;
        let v: f64 = value
            .parse()
            .map_err(|_| format!("bad value in --fix '{item}'"))?;
        map.insert(name.to_string(), v);
    }
    Ok(map)
}

fn param_of(
    map: &BTreeMap<String, f64>,
    vary_name: &str,
    v: f64,
    name: &str,
) -> Result<f64, Error> {
    if vary_name == name {
        Ok(v)
    } else {
        map.get(name).copied().ok_or_else(|| {
            Error::Domain(format!(
                "parameter '{name}' is neither fixed (--fix {name}=..) nor varying"
            ))
        })
    }
}

fn build_sweep_columns(args: &SweepArgs, vary: &VarySpec) -> Result<Vec<Column>, Error> {
    let fixed = parse_fixed(&args.fixed).map_err(Error::Domain)?;
    if fixed.contains_key(&vary.name) {
        return Err(Error::Domain(format!(
            "varying parameter '{}' must not also be fixed",
            vary.name
        )));
    }
    let expected: &[&str] = match args.function.as_str() {
        "rice" => &["k", "x"],
        "toronto" => &["m", "n", "r", "B"],
        "ilhi" => &["m", "n", "a", "z"],
        other => {
            return Err(Error::Domain(format!(
                "unknown function '{other}' (rice, toronto or ilhi)"
            )))
        }
    };
    if !expected.contains(&vary.name.as_str()) {
        return Err(Error::Domain(format!(
            "'{}' is not a parameter of {} (expected one of {:?})",
            vary.name, args.function, expected
        )));
    }
    if args.methods.is_empty() {
        return Err(Error::Domain("--methods must name at least one method".into()));
    }

    let mut columns = Vec::new();
    for name in &args.methods {
        let label = name.clone();
        match args.function.as_str() {
            "rice" => {
                let strategy = rice_method(name)
                    .ok_or_else(|| Error::Domain(format!("unknown rice method '{name}'")))?;
                let fixed = fixed.clone();
                let vary_name = vary.name.clone();
                columns.push(Column {
                    label,
                    eval: Box::new(move |v, ctx| {
                        let k = param_of(&fixed, &vary_name, v, "k")?;
                        let x = param_of(&fixed, &vary_name, v, "x")?;
                        strategy.eval(RiceParams::new(k, x)?, ctx).map(|r| r.value)
                    }),
                });
            }
            "toronto" => {
                let strategy = toronto_method(name)
                    .ok_or_else(|| Error::Domain(format!("unknown toronto method '{name}'")))?;
                let fixed = fixed.clone();
                let vary_name = vary.name.clone();
                columns.push(Column {
                    label,
                    eval: Box::new(move |v, ctx| {
                        let m = param_of(&fixed, &vary_name, v, "m")?;
                        let n = param_of(&fixed, &vary_name, v, "n")?;
                        let r = param_of(&fixed, &vary_name, v, "r")?;
                        let b = param_of(&fixed, &vary_name, v, "B")?;
                        strategy
                            .eval(TorontoParams::new(m, n, r, b)?, ctx)
                            .map(|r| r.value)
                    }),
                });
            }
            "ilhi" => {
                let strategy = ilhi_method(name)
                    .ok_or_else(|| Error::Domain(format!("unknown ilhi method '{name}'")))?;
                let fixed = fixed.clone();
                let vary_name = vary.name.clone();
                columns.push(Column {
                    label,
                    eval: Box::new(move |v, ctx| {
                        let m = param_of(&fixed, &vary_name, v, "m")?;
                        let n = param_of(&fixed, &vary_name, v, "n")?;
                        let a = param_of(&fixed, &vary_name, v, "a")?;
                        let z = param_of(&fixed, &vary_name, v, "z")?;
                        strategy
                            .eval(IlhiParams::new(m, n, a, z)?, ctx)
                            .map(|r| r.value)
                    }),
                });
            }
            _ => unreachable!("function validated above"),
        }
    }
    Ok(columns)
}

fn run_sweep_cmd(args: &SweepArgs, ctx: &EvalContext) -> Result<(), Error> {
    let vary = parse_vary(&args.vary).map_err(Error::Domain)?;
    let columns = build_sweep_columns(args, &vary)?;
    let points = grid(vary.lo, vary.hi, vary.steps);
    let file = File::create(&args.out)
        .map_err(|e| Error::Domain(format!("cannot create {}: {e}", args.out.display())))?;
    let mut out = BufWriter::new(file);
    sweep::run_sweep(&vary.name, &points, &columns, ctx, &mut out)
        .and_then(|()| out.flush())
        .map_err(|e| Error::Domain(format!("write failed: {e}")))?;
    Ok(())
}

fn run_verify(ctx: &EvalContext) -> Result<bool, Error> {
    let reports = verify::run(ctx)?;
    println!("{:<44} {:>13} {:>11}  status", "identity", "max residual", "threshold");
    let mut all_ok = true;
    for r in &reports {
        let ok = r.passed();
        all_ok &= ok;
        println!(
            "{:<44} {:>13.3e} {:>11.1e}  {}",
            r.name,
            r.max_residual,
            r.threshold,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if !all_ok {
        let failing: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name)
            .collect();
        eprintln!("verification failed: {}", failing.join("; "));
    }
    Ok(all_ok)
}

fn run_preset(
    name: &str,
    out: Option<PathBuf>,
    ov: &PresetOverrides,
    ctx: &EvalContext,
) -> Result<(), Error> {
    let preset =
        presets::find(name).ok_or_else(|| Error::Domain(format!("unknown preset '{name}'")))?;
    let (columns, lo, hi, steps) = presets::build(preset, ov).map_err(Error::Domain)?;
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
    let file = File::create(&path)
        .map_err(|e| Error::Domain(format!("cannot create {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    let points = grid(lo, hi, steps);
    sweep::run_sweep(preset.varying, &points, &columns, ctx, &mut w)
        .and_then(|()| w.flush())
        .map_err(|e| Error::Domain(format!("write failed: {e}")))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match resolve_context(cli.tol, cli.terms) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let outcome: Result<bool, Error> = match cli.cmd {
        Cmd::Eval { function } => run_eval(function, &ctx).map(|()| true),
        Cmd::Sweep(args) => run_sweep_cmd(&args, &ctx).map(|()| true),
        Cmd::Verify => run_verify(&ctx),
        Cmd::Preset { action } => match action {
            PresetCmd::List => {
                for p in &presets::PRESETS {
                    println!(
                        "{:<8} {} [{} in {}..{}, {} steps]",
                        p.name, p.describe, p.varying, p.lo, p.hi, p.steps
                    );
                }
                Ok(true)
            }
            PresetCmd::Run {
                name,
                out,
                steps,
                lo,
                hi,
                k,
                x,
                big_b,
                a,
            } => {
                let ov = PresetOverrides {
                    steps,
                    lo,
                    hi,
                    k,
                    x,
                    big_b,
                    a,
                };
                run_preset(&name, out, &ov, &ctx).map(|()| true)
            }
        },
    };

    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}
