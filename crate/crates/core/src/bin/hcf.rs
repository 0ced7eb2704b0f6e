use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hcf::certify::{badly_approximable_certificate, log_bound_check};
use hcf::hcf::is_good_approximation;
use hcf::periodic::{
    check_necessary, check_sufficient, eval_formal, eval_periodic, expand_to_cycle, generate_counterexample,
    CounterexampleFamily, PeriodicCF,
};
use hcf::validity::{is_valid_prefix, partition_csv};
use hcf::verify::{verify_all, verify_one};
use hcf::words::{find_wuv, rep_exponent_estimate, repetition, transcendence_hypothesis_check, Word, WuvMode};
use hcf::{expand, Exec, GaussianInt, HcfError, Surd};

#[derive(Parser)]
#[command(name = "hcf", version, about = "Hurwitz complex continued fractions")]
struct Cli {
    #[command(flatten)]
    cfg: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Working precision in bits for enclosures.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(32..))]
    precision: u32,
    /// Output format; commands without a native text/csv form print JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Run sampling loops sequentially.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a quadratic surd.
    Expand {
        #[arg(long, value_parser = parse_surd)]
        surd: Surd,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
    },
    /// Decide whether a digit word is a valid prefix.
    Validate {
        #[arg(long, value_parser = parse_digits)]
        digits: Digits,
    },
    /// Exact value of an eventually periodic expansion.
    EvalPeriodic {
        #[arg(long, value_parser = parse_digits, default_value = "[]")]
        preperiod: Digits,
        #[arg(long, value_parser = parse_digits)]
        period: Digits,
        /// Evaluate the formal continued fraction even when the word is not valid.
        #[arg(long)]
        formal: bool,
    },
    /// Preperiod and period of a quadratic surd.
    Cycle {
        #[arg(long, value_parser = parse_surd)]
        surd: Surd,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
    },
    /// Pure periodicity with conjugate checks.
    PurePeriodic {
        #[arg(long, value_parser = parse_surd)]
        surd: Surd,
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        periods: u64,
    },
    /// Whether p/q is a good approximation (exhaustive competitors).
    GoodApprox {
        #[arg(long, value_parser = parse_surd)]
        surd: Surd,
        #[arg(long, value_parser = parse_gaussian)]
        p: GaussianInt,
        #[arg(long, value_parser = parse_gaussian)]
        q: GaussianInt,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Badly approximable certificate.
    BadCert {
        #[arg(long, value_parser = parse_surd)]
        surd: Surd,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(2..))]
        digits: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Repetition function and exponent estimate.
    Rep {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(4..))]
        horizon: u64,
        /// Only r(n).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        /// Include the transcendence hypothesis report.
        #[arg(long)]
        hypotheses: bool,
    },
    /// Square-mode W/U/V decomposition.
    Wuv {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(8..))]
        horizon: u64,
    },
    /// Reversal-mode W/U/V decomposition.
    Club {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(8..))]
        horizon: u64,
    },
    /// Continuant inequality on every square-mode triple.
    LogBound {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(8..))]
        horizon: u64,
    },
    /// Generate a periodicity counterexample.
    Counterexample {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_parser = parse_gaussian)]
        m: GaussianInt,
        #[arg(long, value_parser = parse_gaussian, default_value = "[2,-2]")]
        n: GaussianInt,
        #[arg(long, value_parser = parse_gaussian, default_value = "[3,0]")]
        k: GaussianInt,
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u64).range(1..))]
        digits: u64,
    },
    /// Boundary samples of the first-digit cells as CSV.
    PartitionDump {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..))]
        cap: u64,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
    },
    /// Seeded acceptance table.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        only: Option<u8>,
    },
}

/// Inline value, or `@path` to read it from a file.
fn inline(s: &str) -> Result<String, String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}")),
        None => Ok(s.to_string()),
    }
}

fn parse_json(s: &str) -> Result<Value, String> {
    serde_json::from_str(&inline(s)?).map_err(|e| e.to_string())
}

fn parse_surd(s: &str) -> Result<Surd, String> {
    let text = inline(s)?;
    let t = text.trim();
    if t.starts_with('{') {
        Surd::from_json(&parse_json(t)?).map_err(|e| e.to_string())
    } else {
        Surd::parse_short(t).map_err(|e| e.to_string())
    }
}

/// A JSON list of `[re, im]` pairs.
#[derive(Clone)]
struct Digits(Vec<GaussianInt>);

fn parse_digits(s: &str) -> Result<Digits, String> {
    match parse_json(s)? {
        Value::Array(a) => a.iter().map(|v| GaussianInt::from_json(v).map_err(|e| e.to_string())).collect::<Result<_, _>>().map(Digits),
        other => Err(format!("expected a list of [re, im] pairs, got {other}")),
    }
}

fn parse_gaussian(s: &str) -> Result<GaussianInt, String> {
    GaussianInt::from_json(&parse_json(s)?).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::from_json(&parse_json(s)?).map_err(|e| e.to_string())
}

/// Rendered output and whether every check passed.
struct Outcome {
    body: String,
    ok: bool,
}

fn emit(v: Value, ok: bool) -> Result<Outcome, HcfError> {
    let body = serde_json::to_string_pretty(&v).map_err(|e| HcfError::Inconsistent(e.to_string()))?;
    Ok(Outcome { body: body + "\n", ok })
}

fn digits_text(d: &[GaussianInt]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cli: Cli) -> Result<Outcome, HcfError> {
    let cfg = &cli.cfg;
    let exec = if cfg.sequential { Exec::Sequential } else { Exec::Parallel };
    let text = cfg.format == Some(Format::Text);
    let needs_native = |native: &[Format]| -> Result<(), HcfError> {
        match cfg.format {
            Some(f) if f != Format::Json && !native.contains(&f) => {
                Err(HcfError::InvalidArgument("output format not supported by this command".into()))
            }
            _ => Ok(()),
        }
    };
    match cli.command {
        Command::Expand { surd, digits } => {
            needs_native(&[Format::Text])?;
            let e = expand(&surd, digits as usize)?;
            if text {
                return Ok(Outcome { body: format!("[{}]\n", digits_text(&e.digits)), ok: true });
            }
            let mut v = e.to_json();
            v["value"] = json!(surd.to_string());
            v["enclosure"] = surd.enclose(cfg.precision).to_json();
            emit(v, true)
        }
        Command::Validate { digits: Digits(digits) } => {
            needs_native(&[Format::Text])?;
            let valid = is_valid_prefix(&digits);
            if text {
                return Ok(Outcome { body: format!("{valid}\n"), ok: valid });
            }
            emit(json!({ "digits": digits.iter().map(GaussianInt::to_json).collect::<Vec<_>>(), "valid": valid }), valid)
        }
        Command::EvalPeriodic { preperiod: Digits(preperiod), period: Digits(period), formal } => {
            needs_native(&[])?;
            let x = if formal {
                eval_formal(&PeriodicCF::formal(preperiod.clone(), period.clone()))?
            } else {
                let cf = PeriodicCF::new(preperiod.clone(), period.clone())?;
                if !cf.valid {
                    return Err(HcfError::InvalidArgument("not a valid periodic word; use --formal".into()));
                }
                eval_periodic(&cf)?
            };
            emit(json!({ "value": x.to_string(), "surd": x.to_json(), "formal": formal }), true)
        }
        Command::Cycle { surd, digits } => {
            needs_native(&[])?;
            let c = expand_to_cycle(&surd, digits as usize)?;
            emit(c.cf.to_json(), true)
        }
        Command::PurePeriodic { surd, digits, periods } => {
            needs_native(&[])?;
            let budget = digits as usize;
            let cyc = expand_to_cycle(&surd, budget)?;
            let pure = cyc.cf.preperiod.is_empty();
            let suff = check_sufficient(&surd, budget)?;
            let mut v = json!({
                "purely_periodic": pure,
                "cycle": cyc.cf.to_json(),
                "conjugate": surd.galois_conjugate().to_string(),
                "sufficient": {
                    "xi_outside_unit_disk": suff.xi_outside_unit_disk,
                    "eta_in_fundamental_domain": suff.eta_in_fundamental_domain,
                    "digits_at_least_sqrt8": suff.digits_at_least_sqrt8,
                    "hypotheses_hold": suff.hypotheses_hold,
                    "k_bounds": suff.k_bounds,
                    "consistent": suff.consistent(),
                },
            });
            let mut ok = suff.consistent();
            if pure {
                let nec = check_necessary(&surd, budget, periods as usize)?;
                ok &= nec.all_pass();
                v["necessary"] = json!({
                    "eta_inside_unit_disk": nec.eta_inside_unit_disk,
                    "conjugate_sum": nec.vieta,
                    "limit_errors": nec.limit_errors,
                    "limit_decreasing": nec.limit_decreasing,
                });
            }
            emit(v, ok)
        }
        Command::GoodApprox { surd, p, q, cap } => {
            needs_native(&[])?;
            let good = is_good_approximation(&surd, &p, &q, cap, exec)?;
            emit(json!({ "p": p.to_json(), "q": q.to_json(), "cap": cap, "good": good }), good)
        }
        Command::BadCert { surd, digits, cap } => {
            needs_native(&[])?;
            let r = badly_approximable_certificate(&surd, digits as usize, cap, exec)?;
            emit(r.to_json(), r.consistent())
        }
        Command::Rep { word, horizon, n, hypotheses } => {
            if let Some(n) = n {
                needs_native(&[Format::Text])?;
                let r = repetition(&word, n as usize)?;
                if text {
                    return Ok(Outcome { body: format!("{r}\n"), ok: true });
                }
                return emit(json!({ "n": n, "r": r }), true);
            }
            needs_native(&[Format::Csv])?;
            let prof = rep_exponent_estimate(&word, horizon as usize)?;
            if cfg.format == Some(Format::Csv) {
                let mut s = String::from("n,r\n");
                for (n, r) in &prof.n_values {
                    s.push_str(&format!("{n},{r}\n"));
                }
                return Ok(Outcome { body: s, ok: true });
            }
            let mut v = prof.to_json();
            if hypotheses {
                v["hypotheses"] = transcendence_hypothesis_check(&word, (horizon as usize).max(16))?.to_json();
            }
            emit(v, true)
        }
        Command::Wuv { word, horizon } => {
            needs_native(&[])?;
            emit(find_wuv(&word, horizon as usize, WuvMode::Square)?.to_json(), true)
        }
        Command::Club { word, horizon } => {
            needs_native(&[])?;
            emit(find_wuv(&word, horizon as usize, WuvMode::Club)?.to_json(), true)
        }
        Command::LogBound { word, horizon } => {
            needs_native(&[])?;
            let d = find_wuv(&word, horizon as usize, WuvMode::Square)?;
            let need = d.triples.iter().map(|t| t.t() + 1).max().unwrap_or(0).max(2);
            let r = log_bound_check(&word.prefix(need)?, &d)?;
            emit(json!({ "decomposition": d.to_json(), "report": r.to_json() }), r.all_hold())
        }
        Command::Counterexample { family, m, n, k, digits } => {
            needs_native(&[])?;
            let fam = match family {
                FamilyArg::A => CounterexampleFamily::A,
                FamilyArg::B => CounterexampleFamily::B,
                FamilyArg::C => CounterexampleFamily::C,
            };
            let r = generate_counterexample(fam, &m, &n, &k, digits as usize)?;
            let v = json!({
                "family": format!("{fam:?}").to_lowercase(),
                "xi": r.xi.to_string(),
                "eta": r.eta.to_string(),
                "expansion": r.cycle.to_json(),
                "xi_outside_unit_disk": r.xi_outside_unit_disk,
                "eta_in_unit_disk": r.eta_in_unit_disk,
                "eta_in_fundamental_domain": r.eta_in_fundamental_domain,
                "has_digit_below_sqrt8": r.has_small_digit,
                "purely_periodic": r.purely_periodic,
                "expected_digits": r.expected_digits,
                "holds": r.holds(),
            });
            emit(v, r.holds())
        }
        Command::PartitionDump { cap, samples } => {
            if matches!(cfg.format, Some(Format::Json | Format::Text)) {
                return Err(HcfError::InvalidArgument("output format not supported by this command".into()));
            }
            Ok(Outcome { body: partition_csv(cap, samples as usize), ok: true })
        }
        Command::VerifyAll { seed, only } => {
            needs_native(&[Format::Text])?;
            let results = match only {
                Some(id) => verify_one(id, seed, exec).into_iter().collect(),
                None => verify_all(seed, exec),
            };
            for r in &results {
                eprintln!("criterion {:>2}: {:.2}s", r.id, r.seconds);
            }
            let ok = results.iter().all(|r| r.pass);
            if cfg.format == Some(Format::Json) {
                return emit(json!({ "seed": seed, "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "all_pass": ok }), ok);
            }
            let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
            s.push_str(&format!("{}/{} passed\n", results.iter().filter(|r| r.pass).count(), results.len()));
            Ok(Outcome { body: s, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failed");
                ExitCode::from(1)
            }
        }
        Err(HcfError::InvalidArgument(msg)) if msg.starts_with("output format") => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
