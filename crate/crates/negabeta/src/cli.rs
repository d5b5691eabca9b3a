use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::alphasrs::{srs_from_base, state_string, D0Decision};
use crate::base::{isolate_pisot_base, PisotBase};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::finiteness::{decide_minus_f_with, Verdict};
use crate::negabase::{digit_sequence, expansion, fr_length, FrLength, DEFAULT_STEP_BUDGET};
use crate::negarith::{frmax_oracle, region_map, CubicFamily, FrOp};
use crate::poly::IntPolynomial;

/// Environment variable overriding the default orbit step budget.
pub const STEP_BUDGET_ENV: &str = "NEGABETA_STEP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "negabeta",
    version,
    about = "Exact negative-base numeration for Pisot bases",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expansion of an element of Q(beta) with its fractional length
    Expand {
        /// Defining polynomial, integer coefficients highest degree first, e.g. "1,-1,-1,-1"
        #[arg(long)]
        poly: String,
        /// Element in the form "c0 + c1*b + c2*b^2" with exact rationals "p/q"
        #[arg(long)]
        num: String,
        #[arg(long)]
        json: bool,
    },
    /// Orbit of an element of [l_beta, l_beta+1) under the transformation
    Orbit {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        num: String,
        /// Step budget override for this invocation
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decide the negative finiteness property with a certificate
    Finiteness {
        #[arg(long)]
        poly: String,
        /// Cap on the witness closure size
        #[arg(long)]
        cap: Option<usize>,
        /// Additional polynomials vanishing at beta, fed to the p(-1) test
        #[arg(long = "extra-poly")]
        extra_poly: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Witness closure of the conjugate shift radix system
    Witness {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Certified maximal fractional length of sums or differences for
    /// the family x^3 - m x^2 - m x - m
    Frmax {
        #[arg(long)]
        m: i64,
        /// "sub" or "add"
        #[arg(long)]
        op: String,
        /// Also run the brute-force search to this digit depth
        #[arg(long = "oracle-depth")]
        oracle_depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Textual map of the invariant set
    Regions {
        #[arg(long)]
        m: i64,
        /// Half-width of the displayed square
        #[arg(long = "box", default_value_t = 5)]
        box_radius: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI against the given argv (including the program name),
/// writing all output to `out`. Exit code 0 on success, 1 on domain
/// errors, 2 on usage errors.
pub fn run_to<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
    }
}

/// Entry point used by the binary: argv from the process, stdout output.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    run_to(&args, &mut stdout)
}

fn step_budget() -> usize {
    std::env::var(STEP_BUDGET_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

fn load_base(poly: &str) -> Result<(IntPolynomial, Arc<PisotBase>)> {
    let p = IntPolynomial::parse(poly)?;
    let base = isolate_pisot_base(&p, true)?;
    Ok((p, base))
}

fn approx_str(base: &Arc<PisotBase>) -> String {
    // midpoint of the current isolating interval, exact and marked as
    // approximate
    format!("~ {}", base.interval().midpoint())
}

fn emit<W: Write>(out: &mut W, v: &Value) -> Result<()> {
    writeln!(out, "{v}").map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<()> {
    let budget = step_budget();
    match cli.command {
        Command::Expand { poly, num, json } => {
            let (_, base) = load_base(&poly)?;
            let x = FieldElement::parse(&base, &num)?;
            let word = expansion(&x, budget)?;
            let fr = fr_length(&x, budget)?;
            if json {
                let (fr_val, cycle) = match &fr {
                    FrLength::Finite(n) => (json!(n), Value::Null),
                    FrLength::NotFinite { period } => (Value::Null, json!(period)),
                };
                emit(
                    out,
                    &json!({
                        "expansion": word.to_json(),
                        "text": word.text(),
                        "fr": fr_val,
                        "fr_cycle": cycle,
                    }),
                )?;
            } else {
                writeln!(out, "base: {} with beta {}", base, approx_str(&base)).map_err(io_err)?;
                writeln!(out, "<x> = {}", word.text()).map_err(io_err)?;
                match fr {
                    FrLength::Finite(n) => writeln!(out, "fr = {n}").map_err(io_err)?,
                    FrLength::NotFinite { period } => writeln!(
                        out,
                        "fr = not finite (digit cycle: {})",
                        period
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                    .map_err(io_err)?,
                }
            }
            Ok(())
        }
        Command::Orbit {
            poly,
            num,
            steps,
            json,
        } => {
            let (_, base) = load_base(&poly)?;
            let x = FieldElement::parse(&base, &num)?;
            let max_steps = steps.unwrap_or(budget);
            let (word, orbit) = digit_sequence(&x, max_steps)?;
            if json {
                emit(
                    out,
                    &json!({
                        "digits": word.to_json(),
                        "cycle_start": orbit.cycle_start,
                        "open": orbit.open,
                        "states": orbit
                            .states
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>(),
                    }),
                )?;
            } else {
                for (i, s) in orbit.states.iter().enumerate() {
                    let d = if i < word.preperiod.len() + word.period.len() {
                        word.digit_at(i).to_string()
                    } else {
                        "-".into()
                    };
                    writeln!(out, "step {i}: digit {d}, state {s}").map_err(io_err)?;
                }
                match orbit.cycle_start {
                    Some(j) => writeln!(out, "cycle enters at step {j}").map_err(io_err)?,
                    None => writeln!(out, "orbit open after {max_steps} steps").map_err(io_err)?,
                }
            }
            Ok(())
        }
        Command::Finiteness {
            poly,
            cap,
            extra_poly,
            json,
        } => {
            let (_, base) = load_base(&poly)?;
            let extras = extra_poly
                .iter()
                .map(|s| IntPolynomial::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let cap = cap.unwrap_or(1_000_000);
            let v = decide_minus_f_with(&base, cap, budget, &extras)?;
            if json {
                emit(
                    out,
                    &json!({
                        "verdict": v.verdict.as_str(),
                        "certificate": v.certificate.to_json(),
                        "pisot_certified": v.pisot_certified,
                    }),
                )?;
            } else {
                writeln!(out, "base: {} with beta {}", base, approx_str(&base)).map_err(io_err)?;
                writeln!(out, "verdict: {}", v.verdict.as_str()).map_err(io_err)?;
                writeln!(out, "certificate: {}", v.certificate.describe()).map_err(io_err)?;
                writeln!(out, "pisot_certified: {}", v.pisot_certified).map_err(io_err)?;
                if v.verdict == Verdict::Inconclusive {
                    writeln!(out, "note: closure cap {cap} exceeded").map_err(io_err)?;
                }
            }
            Ok(())
        }
        Command::Witness { poly, cap, json } => {
            let (_, base) = load_base(&poly)?;
            let cap = cap.unwrap_or(1_000_000);
            let params = srs_from_base(&base)?;
            let wc = params.witness_closure(cap);
            let decision = params.decide_d0(cap);
            if json {
                let (verdict, cycle) = match &decision {
                    D0Decision::InD0 { .. } => ("InD0", Value::Null),
                    D0Decision::NotInD0 { cycle } => {
                        ("NotInD0", crate::finiteness::cycle_json(cycle))
                    }
                    D0Decision::Inconclusive => ("Inconclusive", Value::Null),
                };
                emit(
                    out,
                    &json!({
                        "verdict": verdict,
                        "cycle": cycle,
                        "closure_states": wc.states.len(),
                        "saturated": wc.saturated,
                        "cycles_found": wc.cycles.len(),
                        "max_steps_to_zero": wc.max_steps_to_zero,
                    }),
                )?;
            } else {
                writeln!(out, "base: {} with beta {}", base, approx_str(&base)).map_err(io_err)?;
                writeln!(out, "closure states: {}", wc.states.len()).map_err(io_err)?;
                writeln!(out, "saturated: {}", wc.saturated).map_err(io_err)?;
                writeln!(out, "nonzero cycles: {}", wc.cycles.len()).map_err(io_err)?;
                if let Some(k) = wc.max_steps_to_zero {
                    writeln!(out, "max steps to zero: {k}").map_err(io_err)?;
                }
                for cyc in &wc.cycles {
                    let line = cyc
                        .iter()
                        .map(|s| state_string(s))
                        .collect::<Vec<_>>()
                        .join(" -> ");
                    writeln!(out, "cycle: {line}").map_err(io_err)?;
                }
            }
            Ok(())
        }
        Command::Frmax {
            m,
            op,
            oracle_depth,
            json,
        } => {
            let fr_op = match op.as_str() {
                "sub" => FrOp::Sub,
                "add" => FrOp::Add,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "--op must be \"sub\" or \"add\", got {other:?}"
                    )))
                }
            };
            let fam = CubicFamily::new(m)?;
            let v = crate::negarith::build_v(m);
            let certified = match fr_op {
                FrOp::Sub => fam.frmax_sub(&v)?,
                FrOp::Add => fam.frmax_add(&v)?,
            };
            let oracle = match oracle_depth {
                Some(depth) => Some(frmax_oracle(m, depth, fr_op)?),
                None => None,
            };
            let witness = match fr_op {
                FrOp::Sub => Some(fam.sub_witness()?),
                FrOp::Add => None,
            };
            if json {
                let witness_json = match &witness {
                    Some(w) => json!({
                        "x": w.x_text,
                        "y": w.y_text,
                        "fr": w.fr,
                    }),
                    None => Value::Null,
                };
                emit(
                    out,
                    &json!({
                        "m": m,
                        "op": if fr_op == FrOp::Sub { "sub" } else { "add" },
                        "certified": certified,
                        "oracle": oracle,
                        "witness": witness_json,
                    }),
                )?;
            } else {
                writeln!(out, "certified max fr = {certified}").map_err(io_err)?;
                if let Some(o) = oracle {
                    writeln!(out, "oracle max fr = {o} (depth {})", oracle_depth.unwrap())
                        .map_err(io_err)?;
                }
                if let Some(w) = &witness {
                    writeln!(out, "witness x = {}", w.x_text).map_err(io_err)?;
                    writeln!(out, "witness y = {}", w.y_text).map_err(io_err)?;
                    writeln!(out, "witness fr = {}", w.fr).map_err(io_err)?;
                }
            }
            Ok(())
        }
        Command::Regions {
            m,
            box_radius,
            json,
        } => {
            if m < 1 {
                return Err(Error::InvalidArgument("m must be at least 1".into()));
            }
            let map = region_map(m, box_radius);
            if json {
                let rows: Vec<&str> = map.lines().collect();
                emit(out, &json!({"m": m, "radius": box_radius, "rows": rows}))?;
            } else {
                write!(out, "{map}").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(e.to_string())
}
