//! `g2net`: evaluate closed 3-net diagrams and run the built-in checks.

mod verify;

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use g2net_core::coeffs::spider_r;
use g2net_core::{bundled, CoefficientTable, Diagram, Evaluator, FieldValue, RingError};
use num_rational::BigRational;
use serde_json::json;

const EVAL_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "g2net",
    version,
    about = "Exact (g2, V) invariant of framed links and closed 3-nets"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a NET file (`-` reads standard input).
    Eval(EvalArgs),
    /// Run the internal consistency checks.
    Verify,
    /// Evaluate the bundled examples against their known values.
    Examples,
    /// Print the coefficient table.
    Coeffs,
}

#[derive(Args)]
struct EvalArgs {
    file: PathBuf,
    /// Evaluate the mirror image.
    #[arg(long)]
    mirror: bool,
    /// Substitute r = -(q^2+q+1+q^-2+q^-3+q^-4).
    #[arg(long, conflicts_with = "r")]
    r_kuperberg: bool,
    /// Substitute a rational number for r.
    #[arg(long, value_name = "NUM", value_parser = parse_rational, allow_hyphen_values = true)]
    r: Option<BigRational>,
    /// Substitute a nonzero rational number for q.
    #[arg(long, value_name = "NUM", value_parser = parse_rational, allow_hyphen_values = true)]
    q: Option<BigRational>,
    /// Report rule counts, cache use and timing.
    #[arg(long)]
    stats: bool,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a rational number (use N or N/D)"))
}

/// A failed command: exit code and message.
struct Failure(u8, String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match &cli.command {
        Command::Eval(args) => eval(args, cli.json, &mut out),
        Command::Verify => verify::run(cli.json, &mut out),
        Command::Examples => examples(cli.json, &mut out),
        Command::Coeffs => coeffs(cli.json, &mut out),
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure(BAD_INPUT, format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn specialise(v: FieldValue, args: &EvalArgs) -> Result<FieldValue, RingError> {
    let mut v = v;
    if args.r_kuperberg {
        v = v.substitute_r(&spider_r())?;
    }
    if let Some(r) = &args.r {
        v = v.substitute_r(&FieldValue::from_rational(r.clone()))?;
    }
    if let Some(q) = &args.q {
        v = v.substitute_q(q)?;
    }
    Ok(v)
}

fn eval(args: &EvalArgs, as_json: bool, out: &mut String) -> Result<(), Failure> {
    let text = read_input(&args.file)?;
    let mut d: Diagram = text
        .parse()
        .map_err(|e| Failure(BAD_INPUT, format!("{e}")))?;
    if args.mirror {
        d = d.mirror();
    }
    let ev = Evaluator::default();
    let start = Instant::now();
    let value = ev
        .evaluate(&d)
        .map_err(|e| Failure(EVAL_FAILED, e.to_string()))?;
    let elapsed = start.elapsed();
    let value = specialise(value, args).map_err(|e| Failure(EVAL_FAILED, e.to_string()))?;
    let stats = ev.stats();
    if as_json {
        let mut doc = json!({ "value": value, "text": value.to_string() });
        if args.stats {
            let mut s = serde_json::to_value(&stats).expect("stats serialise");
            s["seconds"] = json!(elapsed.as_secs_f64());
            s["cache_entries"] = json!(ev.cache_len());
            doc["stats"] = s;
        }
        let _ = writeln!(out, "{doc}");
    } else {
        let _ = writeln!(out, "{value}");
        if args.stats {
            eprintln!(
                "nodes: {} ({} crossings)",
                d.node_count(),
                d.crossing_count()
            );
            eprintln!("time: {:.3?}", elapsed);
            eprintln!(
                "rules: loop {} tadpole {} bigon {} triangle {} square {} pentagon {}",
                stats.loop_rules,
                stats.tadpole_rules,
                stats.bigon_rules,
                stats.triangle_rules,
                stats.square_rules,
                stats.pentagon_rules
            );
            eprintln!("crossings resolved: {}", stats.crossings_resolved);
            eprintln!("bridges: {}", stats.bridge_zeros);
            eprintln!(
                "cache: {} hits, {} misses, {} entries",
                stats.cache_hits,
                stats.cache_misses,
                ev.cache_len()
            );
            eprintln!("peak live terms: {}", stats.peak_terms);
        }
    }
    Ok(())
}

fn examples(as_json: bool, out: &mut String) -> Result<(), Failure> {
    let ev = Evaluator::default();
    let mut rows = Vec::new();
    let mut bad = 0;
    for ex in &bundled::EXAMPLES {
        let expected = ex.expected();
        let (computed, ok) = match ev.evaluate(&ex.diagram()) {
            Ok(v) => {
                let ok = v == expected;
                (v.to_string(), ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        if !ok {
            bad += 1;
        }
        rows.push((ex.name, ok, computed, expected.to_string()));
    }
    if as_json {
        let doc: Vec<_> = rows
            .iter()
            .map(|(name, ok, computed, expected)| {
                json!({ "name": name, "ok": ok, "computed": computed, "expected": expected })
            })
            .collect();
        let _ = writeln!(out, "{}", serde_json::Value::Array(doc));
    } else {
        for (name, ok, computed, expected) in &rows {
            let mark = if *ok { "ok" } else { "MISMATCH" };
            let _ = writeln!(out, "{name:<13} {mark}");
            let _ = writeln!(out, "  computed: {computed}");
            if !ok {
                let _ = writeln!(out, "  expected: {expected}");
            }
        }
    }
    if bad > 0 {
        return Err(Failure(CHECK_FAILED, format!("{bad} example(s) disagree")));
    }
    Ok(())
}

fn coeffs(as_json: bool, out: &mut String) -> Result<(), Failure> {
    let t = CoefficientTable::standard();
    let mut entries: Vec<(&str, FieldValue)> = t
        .entries()
        .iter()
        .map(|(n, v)| (*n, (*v).clone()))
        .collect();
    entries.push(("square_pairing", t.square_pairing()));
    entries.push(("square_tree", t.square_tree()));
    if as_json {
        let map: serde_json::Map<String, serde_json::Value> = entries
            .iter()
            .map(|(n, v)| (n.to_string(), json!({ "value": v, "text": v.to_string() })))
            .collect();
        let _ = writeln!(out, "{}", serde_json::Value::Object(map));
    } else {
        for (n, v) in &entries {
            let _ = writeln!(out, "{n:<14} = {v}");
        }
    }
    Ok(())
}
