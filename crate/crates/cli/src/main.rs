//! `toric`: build toric codes, encode, corrupt, decode, simulate and verify.
//!
//! Exit status: 0 on success, 1 when a decode or verification check fails,
//! 2 on usage or configuration errors.

mod config;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use config::Experiment;
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use toric_core::code::DEFAULT_DISTANCE_BUDGET;
use toric_core::io::{format_words, parse_words};
use toric_core::lattice::simplex_distance;
use toric_core::sim::{self, corrupt, random_message, trial_rng, SimulationPlan};
use toric_core::{
    CodeDescriptor, ConditionReport, DecoderPair, EcpReport, ExponentSource, ToricCode,
};

#[derive(Parser)]
#[command(name = "toric", version, about = "Toric codes over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the code from a config and write its descriptor.
    Build {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode messages (one per line) into codewords.
    Encode {
        /// Code descriptor written by `build`.
        #[arg(long)]
        code: PathBuf,
        /// Message file; omit to draw `--random` messages.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plant exactly `t` errors in every codeword.
    Corrupt {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode received words; one JSON outcome per line.
    Decode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Decoding radius (overrides the config).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded Monte-Carlo trials written as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Decoding radius (overrides the config).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fill the `ms` column with wall-clock decode times.
        #[arg(long)]
        timing: bool,
        /// Also write every received word, one per CSV row, in row order.
        #[arg(long)]
        save_received: Option<PathBuf>,
    },
    /// Check decoding conditions, the dual code and the error-correcting pair.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Build { config, out } => cmd_build(&config, out),
        Command::Encode {
            code,
            input,
            random,
            seed,
            out,
        } => cmd_encode(&code, input.as_deref(), random, seed, out),
        Command::Corrupt {
            code,
            input,
            t,
            seed,
            out,
        } => cmd_corrupt(&code, &input, t, seed, out),
        Command::Decode { config, input, t, out } => cmd_decode(&config, &input, t, out),
        Command::Simulate {
            config,
            seed,
            trials,
            t,
            out,
            timing,
            save_received,
        } => cmd_simulate(&config, seed, trials, t, out, timing, save_received),
        Command::Verify { config, t, out } => cmd_verify(&config, t, out),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn out_path(cli: Option<PathBuf>, exp: &Experiment) -> Option<PathBuf> {
    cli.or_else(|| exp.config.out.clone())
}

fn load_code(path: &Path) -> Result<ToricCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let desc: CodeDescriptor =
        serde_json::from_str(&text).with_context(|| format!("parsing code descriptor {}", path.display()))?;
    ToricCode::from_descriptor(&desc).with_context(|| format!("rebuilding code from {}", path.display()))
}

/// Builds the decoder pair; `t` defaults to the largest supported radius.
fn build_pair(exp: &Experiment, t: Option<usize>) -> Result<DecoderPair> {
    let Some(helper) = &exp.helper else {
        bail!("config has no `helper` polytope; decoding needs one");
    };
    let probe = DecoderPair::new(&exp.field, &exp.code, helper, 0, exp.pair_options())?;
    let t = match t.or(exp.config.t) {
        Some(t) => t,
        None => probe
            .check_conditions()
            .max_t
            .context("no `t` given and the pair supports no positive radius")?,
    };
    Ok(probe.with_t(t))
}

fn code_distance(code: &ToricCode, source: &ExponentSource, budget: u64) -> Option<(usize, &'static str)> {
    if let ExponentSource::Polytope(p) = source {
        if let Some(d) = p.as_axis_simplex().and_then(|a| simplex_distance(code.field().size(), a).ok()) {
            return Some((d, "formula"));
        }
    }
    code.min_distance_bruteforce(budget).ok().map(|d| (d, "brute force"))
}

fn cmd_build(config: &Path, out: Option<PathBuf>) -> Result<ExitCode> {
    let exp = config::load(config)?;
    let code = ToricCode::new(&exp.field, &exp.code.exponents())?;
    let desc = code.descriptor()?;
    let mut table = vec![
        ("q".to_owned(), exp.field.size().to_string()),
        ("n".to_owned(), code.len().to_string()),
        ("k".to_owned(), code.dimension().to_string()),
    ];
    if exp.helper.is_some() {
        let pair = build_pair(&exp, None).or_else(|_| build_pair(&exp, Some(0)))?;
        let rep = pair.check_conditions();
        table.extend([
            ("|Ũ|".to_owned(), rep.helper_size.to_string()),
            ("|U+Ũ|".to_owned(), rep.sum_size.to_string()),
            ("d_C".to_owned(), rep.d_code.value.to_string()),
            ("d_~".to_owned(), rep.d_helper.value.to_string()),
            ("d_sum".to_owned(), rep.d_sum.value.to_string()),
            ("n-d_C".to_owned(), (rep.n.saturating_sub(rep.d_code.value)).to_string()),
            ("max_t".to_owned(), rep.max_t.map_or("none".into(), |t| t.to_string())),
        ]);
    } else if let Some((d, how)) =
        code_distance(&code, &exp.code, exp.config.budget.unwrap_or(DEFAULT_DISTANCE_BUDGET))
    {
        table.push(("d_C".to_owned(), format!("{d} ({how})")));
    }
    for (k, v) in &table {
        eprintln!("{k:>6}  {v}");
    }
    let json = serde_json::to_string_pretty(&desc)? + "\n";
    emit(out_path(out, &exp).as_deref(), &json)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode(code: &Path, input: Option<&Path>, random: Option<usize>, seed: u64, out: Option<PathBuf>) -> Result<ExitCode> {
    let code = load_code(code)?;
    let field = code.field();
    let k = code.exponents().len();
    let messages = match (input, random) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_words(&text, field, Some(k)).with_context(|| path.display().to_string())?
        }
        (None, Some(count)) => (0..count)
            .map(|i| random_message(field, k, &mut trial_rng(seed, i as u64)))
            .collect(),
        (None, None) => bail!("give --input or --random"),
    };
    let words = messages
        .iter()
        .map(|m| code.encode(m))
        .collect::<Result<Vec<_>, _>>()?;
    emit(out.as_deref(), &format_words(&words))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_corrupt(code: &Path, input: &Path, t: usize, seed: u64, out: Option<PathBuf>) -> Result<ExitCode> {
    let code = load_code(code)?;
    let field = code.field();
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let words = parse_words(&text, field, Some(code.len())).with_context(|| input.display().to_string())?;
    let received = words
        .iter()
        .enumerate()
        .map(|(i, w)| corrupt(field, w, t, &mut trial_rng(seed, i as u64)).map(|(y, _)| y))
        .collect::<Result<Vec<_>, _>>()?;
    emit(out.as_deref(), &format_words(&received))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(config: &Path, input: &Path, t: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode> {
    let exp = config::load(config)?;
    let pair = build_pair(&exp, t)?;
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let words = parse_words(&text, pair.code().field(), Some(pair.len())).with_context(|| input.display().to_string())?;
    let mut lines = String::new();
    let mut all_ok = true;
    for y in &words {
        let outcome = pair.decode(y)?;
        all_ok &= outcome.is_success();
        lines.push_str(&serde_json::to_string(&outcome.record())?);
        lines.push('\n');
    }
    emit(out_path(out, &exp).as_deref(), &lines)?;
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    config: &Path,
    seed: Option<u64>,
    trials: Option<usize>,
    t: Option<usize>,
    out: Option<PathBuf>,
    timing: bool,
    save_received: Option<PathBuf>,
) -> Result<ExitCode> {
    let exp = config::load(config)?;
    let pair = build_pair(&exp, t)?;
    let weights = match exp.config.sweep {
        Some([lo, hi]) => (lo..=hi).collect(),
        None => vec![pair.t()],
    };
    let plan = SimulationPlan {
        seed: seed.or(exp.config.seed).unwrap_or(0),
        trials: trials.or(exp.config.trials).unwrap_or(100),
        weights,
        timing,
    };
    let rows = sim::simulate(&pair, &plan)?;
    for &w in &plan.weights {
        if let Some(rate) = sim::success_rate(&rows, w) {
            eprintln!("t={w:<4} success rate {rate:.3}");
        }
    }
    if let Some(path) = save_received {
        let words: Vec<_> = rows.iter().map(|r| r.received.clone()).collect();
        fs::write(&path, format_words(&words)).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(out_path(out, &exp).as_deref(), &sim::to_csv(&rows))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DualCheck {
    n: usize,
    k: usize,
    dual_k: usize,
    orthogonal: bool,
    dimensions_sum_to_n: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    conditions: ConditionReport,
    dual: DualCheck,
    ecp: EcpReport,
}

fn cmd_verify(config: &Path, t: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode> {
    let exp = config::load(config)?;
    let pair = build_pair(&exp, t)?;
    let conditions = pair.check_conditions();
    let dual = pair.code().dual_code()?;
    let dual_check = DualCheck {
        n: pair.len(),
        k: pair.code().dimension(),
        dual_k: dual.dimension(),
        orthogonal: pair.code().generator().mul(&dual.generator().transpose())?.is_zero(),
        dimensions_sum_to_n: pair.code().dimension() + dual.dimension() == pair.len(),
    };
    let ecp = pair.ecp_report()?;

    let yes = |b: bool| if b { "yes" } else { "NO" };
    let n = conditions.n;
    let rows = [
        (format!("i)   |Ũ| = {} > t", conditions.helper_size), conditions.helper_exceeds_t),
        (format!("ii)  d_sum = {} > t", conditions.d_sum.value), conditions.sum_distance_exceeds_t),
        (
            format!("iii) d_~ = {} > n - d_C = {}", conditions.d_helper.value, n.saturating_sub(conditions.d_code.value)),
            conditions.helper_distance_exceeds_redundancy,
        ),
        (format!("dual dimensions {} + {} = n", dual_check.k, dual_check.dual_k), dual_check.dimensions_sum_to_n),
        ("dual orthogonal".to_owned(), dual_check.orthogonal),
        ("ECP A⋆B ⊥ C".to_owned(), ecp.orthogonal),
        (format!("ECP dim A = {} > t", ecp.dim_a), ecp.dim_a_exceeds_t),
        (format!("ECP d(B^⊥) = {} > t", ecp.d_b_perp.value), ecp.d_b_perp_exceeds_t),
        (format!("ECP d(A) + d(C) = {} > n", ecp.d_a.value + ecp.d_c.value), ecp.distance_sum_exceeds_n),
    ];
    eprintln!("t = {}, n = {n}, k = {}", conditions.t, conditions.k);
    for (label, ok) in &rows {
        eprintln!("  {label:<34} {}", yes(*ok));
    }
    let ok = conditions.all_hold() && dual_check.orthogonal && dual_check.dimensions_sum_to_n && ecp.all_hold();
    let report = VerifyReport {
        conditions,
        dual: dual_check,
        ecp,
    };
    emit(out_path(out, &exp).as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
