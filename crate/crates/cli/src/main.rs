//! `goldbase`: base-phi expansions, the digit-sum parity sequence `T`, and
//! its substitution description, from the command line.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 verification failure or mismatch, 2 usage error.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use goldbase::harness::{
    self, direct_checksum, empirical_frequencies, exact_coded_frequencies, morphic_checksum, Suite,
    VerifyConfig,
};
use goldbase::morphic::{factors, fixed_point, lambda_coding, render_word, tau};
use goldbase::phicodec::{
    check_n, expand_greedy, expand_recursive, tsd_range, ExpansionRecord, PhiExpansion,
};

#[derive(Parser)]
#[command(
    name = "goldbase",
    version,
    about = "Base-phi expansions and the parity of their digit sums"
)]
struct Cli {
    /// Emit line-delimited JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion of N in base phi.
    Expand {
        n: u64,
        #[arg(long, value_enum, default_value_t = Algorithm::Greedy)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = Format::Word)]
        format: Format,
    },
    /// Emit T, s_beta or expansions over an index range.
    Seq {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value_t = Source::Direct)]
        source: Source,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, env = "GOLDBASE_MAX_N", default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 1_000_000)]
        prefix_len: u64,
    },
    /// Exact (and optionally empirical) letter or 2-block frequencies of T.
    Freq {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        block_length: u8,
        #[arg(long, default_value_t = 0)]
        empirical: u64,
    },
    /// Factors of T of a given length, read off iterates of the substitution.
    Factors {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        probe: Option<String>,
    },
    /// Throughput and checksum of a T generator.
    Bench {
        #[arg(long)]
        count: u64,
        #[arg(long, value_enum, default_value_t = Source::Direct)]
        source: Source,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Greedy,
    Recursive,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Word,
    Support,
    Record,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "T")]
    T,
    #[value(name = "s")]
    S,
    Digits,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Direct,
    Morphic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Lemmas,
    Proposition,
    TheoremPrefix,
    Frequencies,
    Expansions,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::Proposition => Suite::Proposition,
            SuiteArg::TheoremPrefix => Suite::TheoremPrefix,
            SuiteArg::Frequencies => Suite::Frequencies,
            SuiteArg::Expansions => Suite::Expansions,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Usage(String),
    Check,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Largest `max_n` accepted by `verify`; beyond it the intervals outgrow memory.
const VERIFY_MAX_N: u32 = 20;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Expand {
            n,
            algorithm,
            format,
        } => cmd_expand(out, json, n, algorithm, format),
        Command::Seq {
            kind,
            from,
            to,
            source,
        } => cmd_seq(out, json, kind, from, to, source),
        Command::Verify {
            suite,
            max_n,
            prefix_len,
        } => cmd_verify(out, json, suite.into(), max_n, prefix_len),
        Command::Freq {
            block_length,
            empirical,
        } => cmd_freq(out, json, block_length as usize, empirical),
        Command::Factors { length, probe } => cmd_factors(out, json, length, probe),
        Command::Bench { count, source } => cmd_bench(out, json, count, source),
    }
}

fn render_support(e: &PhiExpansion) -> String {
    let parts: Vec<String> = e.support().iter().map(i32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_expansion(
    out: &mut impl Write,
    json: bool,
    n: u64,
    e: &PhiExpansion,
    format: Format,
    label: Option<&str>,
) -> Outcome {
    let record = ExpansionRecord::new(n, e);
    if json {
        match label {
            Some(l) => {
                let mut value = serde_json::to_value(&record).expect("record serializes");
                value["algorithm"] = json!(l);
                writeln!(out, "{value}")?;
            }
            None => writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("record serializes")
            )?,
        }
        return Ok(());
    }
    let body = match format {
        Format::Word => record.word.clone(),
        Format::Support => render_support(e),
        Format::Record => format!(
            "N={} word={} support={} s_beta={} T={} interval={}",
            record.n,
            record.word,
            render_support(e),
            record.s_beta,
            record.t,
            record.interval
        ),
    };
    match label {
        Some(l) => writeln!(out, "{l}: {body}")?,
        None => writeln!(out, "{body}")?,
    }
    Ok(())
}

fn cmd_expand(
    out: &mut impl Write,
    json: bool,
    n: u64,
    algorithm: Algorithm,
    format: Format,
) -> Outcome {
    if let Err(e) = check_n(n) {
        return usage(e.to_string());
    }
    match algorithm {
        Algorithm::Greedy => print_expansion(out, json, n, &expand_greedy(n), format, None),
        Algorithm::Recursive => print_expansion(out, json, n, &expand_recursive(n), format, None),
        Algorithm::Both => {
            let (g, r) = (expand_greedy(n), expand_recursive(n));
            print_expansion(out, json, n, &g, format, Some("greedy"))?;
            print_expansion(out, json, n, &r, format, Some("recursive"))?;
            let verdict = if g == r { "MATCH" } else { "MISMATCH" };
            if json {
                writeln!(out, "{}", json!({ "N": n, "verdict": verdict }))?;
            } else {
                writeln!(out, "{verdict}")?;
            }
            if g == r {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

const CHUNK: u64 = 1 << 16;

fn cmd_seq(
    out: &mut impl Write,
    json: bool,
    kind: Kind,
    from: u64,
    to: u64,
    source: Source,
) -> Outcome {
    if from > to {
        return usage(format!("empty range: --from {from} exceeds --to {to}"));
    }
    if let Err(e) = check_n(to) {
        return usage(e.to_string());
    }
    if source == Source::Morphic && kind != Kind::T {
        return usage("--source morphic is only available for --kind T");
    }
    match kind {
        Kind::T => {
            if json {
                write!(out, "{{\"from\":{from},\"to\":{to},\"T\":\"")?;
            }
            match source {
                Source::Direct => {
                    let mut lo = from;
                    loop {
                        let hi = to.min(lo.saturating_add(CHUNK - 1));
                        out.write_all(render_word(&tsd_range(lo, hi)).as_bytes())?;
                        if hi == to {
                            break;
                        }
                        lo = hi + 1;
                    }
                }
                Source::Morphic => {
                    let lam = lambda_coding();
                    let mut buf = Vec::with_capacity(CHUNK as usize);
                    let stream = fixed_point(&tau(), 1).expect("tau prolongs 1");
                    for a in stream.skip(from as usize).take((to - from + 1) as usize) {
                        buf.push(b'0' + lam.code(a));
                        if buf.len() == CHUNK as usize {
                            out.write_all(&buf)?;
                            buf.clear();
                        }
                    }
                    out.write_all(&buf)?;
                }
            }
            if json {
                write!(out, "\"}}")?;
            }
            writeln!(out)?;
        }
        Kind::S => {
            for n in from..=to {
                let s = expand_greedy(n).digit_sum();
                if json {
                    writeln!(out, "{}", json!({ "N": n, "s_beta": s }))?;
                } else {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Kind::Digits => {
            for n in from..=to {
                print_expansion(out, json, n, &expand_greedy(n), Format::Word, None)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(
    out: &mut impl Write,
    json: bool,
    suite: Suite,
    max_n: u32,
    prefix_len: u64,
) -> Outcome {
    if !(1..=VERIFY_MAX_N).contains(&max_n) {
        return usage(format!(
            "--max-n must lie in 1..={VERIFY_MAX_N}, got {max_n}"
        ));
    }
    let cfg = VerifyConfig { max_n, prefix_len };
    let report = harness::run_suite(suite, &cfg);
    let status = if report.passed() { "pass" } else { "fail" };
    if json {
        for r in &report.records {
            writeln!(
                out,
                "{}",
                serde_json::to_string(r).expect("record serializes")
            )?;
        }
        writeln!(
            out,
            "{}",
            json!({ "suite": report.suite, "status": status })
        )?;
    } else {
        for r in &report.records {
            writeln!(out, "{r}")?;
        }
        writeln!(out, "suite {}: {}", report.suite, status.to_uppercase())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_freq(out: &mut impl Write, json: bool, block_length: usize, empirical: u64) -> Outcome {
    let (letters, blocks) = match exact_coded_frequencies() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(Failure::Check);
        }
    };
    let exact: Vec<(String, String)> = if block_length == 1 {
        letters
            .iter()
            .map(|(a, v)| (a.to_string(), v.to_string()))
            .collect()
    } else {
        blocks
            .iter()
            .map(|(b, v)| (render_word(b), v.to_string()))
            .collect()
    };
    if json {
        for (item, v) in &exact {
            writeln!(out, "{}", json!({ "item": item, "exact": v }))?;
        }
    } else {
        let line: Vec<String> = exact.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        writeln!(out, "{}", line.join(", "))?;
    }
    if empirical == 0 {
        return Ok(());
    }
    let rows = match empirical_frequencies(empirical, block_length) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(Failure::Check);
        }
    };
    for r in &rows {
        if json {
            writeln!(out, "{}", serde_json::to_string(r).expect("row serializes"))?;
        } else {
            writeln!(
                out,
                "{}: count {} of {}, deviation {}, below 1/100: {}",
                r.item,
                r.count,
                r.windows,
                r.deviation,
                if r.within_tolerance { "yes" } else { "no" }
            )?;
        }
    }
    Ok(())
}

fn cmd_factors(out: &mut impl Write, json: bool, length: usize, probe: Option<String>) -> Outcome {
    if !(1..=20).contains(&length) {
        return usage(format!("--length must lie in 1..=20, got {length}"));
    }
    let probe_word = match &probe {
        None => None,
        Some(p) => {
            if p.len() != length {
                return usage(format!(
                    "probe {p:?} has length {}, expected {length}",
                    p.len()
                ));
            }
            if !p.chars().all(|c| c == '0' || c == '1') {
                return usage(format!("probe {p:?} must consist of 0 and 1"));
            }
            Some(p.bytes().map(|b| b - b'0').collect::<Vec<u8>>())
        }
    };
    let report = match factors(
        &tau(),
        1,
        Some(&lambda_coding()),
        length,
        probe_word.as_deref(),
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Err(Failure::Check);
        }
    };
    let listed: Vec<String> = report.factors.iter().map(|w| render_word(w)).collect();
    let first = report.probe_positions.first().copied();
    if json {
        let mut v = json!({
            "length": length,
            "count": listed.len(),
            "factors": listed,
            "stable_level": report.stable_level,
            "prefix_len": report.prefix_len,
        });
        if let Some(p) = &probe {
            v["probe"] = json!(p);
            v["first_position"] = json!(first);
        }
        writeln!(out, "{v}")?;
        return Ok(());
    }
    writeln!(out, "{{{}}}", listed.join(","))?;
    writeln!(out, "count: {}", listed.len())?;
    match report.stable_level {
        Some(level) => writeln!(
            out,
            "stabilized at level {level} (prefix length {})",
            report.prefix_len
        )?,
        None => writeln!(
            out,
            "not stabilized within prefix length {}",
            report.prefix_len
        )?,
    }
    if let Some(p) = probe {
        match first {
            Some(pos) => writeln!(out, "{p}: found, first position {pos}")?,
            None => writeln!(out, "{p}: not found up to stabilization")?,
        }
    }
    Ok(())
}

fn cmd_bench(out: &mut impl Write, json: bool, count: u64, source: Source) -> Outcome {
    if count == 0 {
        return usage("--count must be at least 1");
    }
    let start = Instant::now();
    let checksum = match source {
        Source::Direct => direct_checksum(count),
        Source::Morphic => morphic_checksum(count),
    };
    let secs = start.elapsed().as_secs_f64();
    let rate = count as f64 / secs.max(1e-9);
    let name = match source {
        Source::Direct => "direct",
        Source::Morphic => "morphic",
    };
    if json {
        writeln!(
            out,
            "{}",
            json!({
                "source": name,
                "count": count,
                "checksum": format!("{checksum:016x}"),
                "seconds": secs,
                "symbols_per_second": rate,
            })
        )?;
    } else {
        writeln!(out, "source: {name}")?;
        writeln!(out, "count: {count}")?;
        writeln!(out, "checksum: {checksum:016x}")?;
        writeln!(out, "throughput: {rate:.0} symbols/s ({secs:.3} s)")?;
    }
    Ok(())
}
