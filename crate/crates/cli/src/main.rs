use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use similitude::arith::divisors;
use similitude::asymptotics::{self, ConstantName, GrowthModel};
use similitude::counting::{self, TargetId};
use similitude::dirichlet::is_multiplicative;
use similitude::oracle::{AmbientLattice, OracleConfig, SsmKind};
use similitude::quadratic::is_representable_index;
use similitude::{Error, RingId};

const THREADS_ENV: &str = "SIMILITUDE_THREADS";

#[derive(Parser)]
#[command(name = "similitude", version, about = "Counts of similar sublattices and submodules in four dimensions")]
struct Cli {
    /// Worker threads for the oracle (overrides SIMILITUDE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a series for m = 1..=terms.
    Series {
        #[arg(long, value_parser = parse_target)]
        target: TargetId,
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check closed forms against the generating-function identities.
    Verify {
        #[arg(long, value_parser = parse_target)]
        target: TargetId,
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
    },
    /// Compare brute-force enumeration with the closed forms.
    Oracle {
        #[arg(long, value_enum, conflicts_with = "module")]
        lattice: Option<Lattice>,
        #[arg(long, value_enum)]
        module: Option<Module>,
        /// A single value of m.
        #[arg(long, conflicts_with = "max_m")]
        m: Option<u64>,
        /// Every m from 1 to this bound.
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Print the asymptotic constants.
    Constants {
        /// Also print an empirical estimate from the first `terms` coefficients.
        #[arg(long)]
        estimate: bool,
        #[arg(long, default_value_t = 100_000)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lattice {
    Z4,
    D4star,
}

#[derive(Clone, Copy, ValueEnum)]
enum Module {
    Icosian,
}

fn parse_target(s: &str) -> Result<TargetId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = TargetId::ALL.iter().map(|t| t.name()).collect();
        format!("unknown target `{s}` (expected one of {})", names.join(", "))
    })
}

/// JSON schema of `series --format json`.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct SeriesJson {
    target: String,
    index_kind: String,
    terms: Vec<i128>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } | Error::NotRepresentable(_) | Error::Domain(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn check_terms(terms: usize) -> Result<(), Failure> {
    if terms == 0 {
        return Err(Failure::Usage("terms must be ≥ 1".into()));
    }
    Ok(())
}

fn cmd_series(target: TargetId, terms: usize, format: Format) -> Result<String, Failure> {
    check_terms(terms)?;
    let s = counting::series(target, terms)?;
    let kind = target.index_kind();
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("m,index,count\n");
            for m in 1..=terms {
                writeln!(out, "{m},{},{}", kind.index_of(m as u64), s.get(m)).unwrap();
            }
        }
        Format::Plain => {
            writeln!(out, "# {target}, index = {}", kind.name()).unwrap();
            for m in 1..=terms {
                writeln!(out, "{m:>8} {:>12} {:>16}", kind.index_of(m as u64), s.get(m)).unwrap();
            }
        }
        Format::Json => {
            let doc = SeriesJson {
                target: target.name().into(),
                index_kind: kind.name().into(),
                terms: s.into_values(),
            };
            out = serde_json::to_string(&doc).expect("plain data serializes");
            out.push('\n');
        }
    }
    Ok(out)
}

fn cmd_verify(target: TargetId, terms: usize) -> Result<(String, bool), Failure> {
    check_terms(terms)?;
    let mut out = String::new();
    let mut ok = true;
    let mut report = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        if pass {
            writeln!(out, "PASS {name}").unwrap();
        } else {
            writeln!(out, "FAIL {name}: {detail}").unwrap();
        }
    };
    let seq = match counting::series(target, terms) {
        Ok(s) => {
            report("engine matches closed form", true, String::new());
            Some(s)
        }
        Err(e) => {
            report("engine matches closed form", false, e.to_string());
            None
        }
    };
    let Some(seq) = seq else {
        return Ok((out, ok));
    };
    report("multiplicative", is_multiplicative(&seq), "a(mn) ≠ a(m)a(n) for some coprime pair".into());
    match target {
        TargetId::ZetaJ => {
            let bad = (1..=terms as u64).find(|&m| {
                let odd: i128 = divisors(m).into_iter().filter(|d| d % 2 == 1).map(i128::from).sum();
                seq.get(m as usize) != odd
            });
            report("sum of odd divisors", bad.is_none(), format!("differs at m = {}", bad.unwrap_or(0)));
        }
        TargetId::Z4 => {
            let j = counting::series(TargetId::HurwitzJ, terms)?;
            let bad = (1..=terms).find(|&m| seq.get(m) != j.get(m) * if m % 2 == 0 { 3 } else { 1 });
            report("f_z4 = f_j (odd), 3 f_j (even)", bad.is_none(), format!("differs at m = {}", bad.unwrap_or(0)));
        }
        TargetId::HurwitzJ => {
            let bad = (0..64).map(|r| 1usize << r).take_while(|&p| p <= terms).find(|&p| seq.get(p) != 1);
            report("unique at powers of 2", bad.is_none(), format!("differs at m = {}", bad.unwrap_or(0)));
        }
        TargetId::IcosianI | TargetId::CubianK => {
            let ring = if target == TargetId::IcosianI { RingId::GoldenInt } else { RingId::Sqrt2Int };
            let bad = (1..=terms).find(|&m| (seq.get(m) != 0) != is_representable_index(m as u64, ring));
            report("support is the representable set", bad.is_none(), format!("differs at m = {}", bad.unwrap_or(0)));
        }
        _ => {}
    }
    Ok((out, ok))
}

fn cmd_oracle(lattice: Option<Lattice>, module: Option<Module>, m: Option<u64>, max_m: Option<u64>) -> Result<(String, bool), Failure> {
    let config = OracleConfig::default();
    let ms: Vec<u64> = match (m, max_m) {
        (Some(m), None) => vec![m],
        (None, Some(k)) => (1..=k).collect(),
        _ => return Err(Failure::Usage("give exactly one of --m and --max-m".into())),
    };
    if ms.contains(&0) {
        return Err(Failure::Usage("m must be ≥ 1".into()));
    }
    let mut out = String::new();
    let mut ok = true;
    match (lattice, module) {
        (Some(l), None) => {
            let (amb, target) = match l {
                Lattice::Z4 => (AmbientLattice::Z4, TargetId::Z4),
                Lattice::D4star => (AmbientLattice::D4Star, TargetId::HurwitzJ),
            };
            for &m in &ms {
                let index = m.saturating_mul(m);
                if index > config.index_bound {
                    return Err(Failure::Usage(format!(
                        "index {index} exceeds the oracle bound {}",
                        config.index_bound
                    )));
                }
            }
            for m in ms {
                let brute = config.count_ssl_bruteforce(amb, m)?;
                let formula = counting::ssm_count(target, m)?;
                let matched = brute as i128 == formula;
                ok &= matched;
                writeln!(out, "m={m}: {brute}={formula} {}", if matched { "MATCH" } else { "MISMATCH" }).unwrap();
            }
        }
        (None, Some(Module::Icosian)) => {
            let single = m.is_some();
            for m in ms {
                if m > config.icosian_bound {
                    return Err(Failure::Usage(format!(
                        "m = {m} exceeds the icosian oracle bound {}",
                        config.icosian_bound
                    )));
                }
                if !is_representable_index(m, RingId::GoldenInt) {
                    if single {
                        return Err(Failure::Usage(format!("{m} is not a representable index")));
                    }
                    continue;
                }
                let ssms = config.enumerate_ssm_icosian(m)?;
                let formula = counting::ssm_count(TargetId::IcosianI, m)?;
                let matched = ssms.len() as i128 == formula;
                ok &= matched;
                let count = |k: SsmKind| ssms.iter().filter(|(_, kind)| *kind == k).count();
                writeln!(
                    out,
                    "m={m}: {}={formula} {} (left {}, right {}, two-sided {}, other {})",
                    ssms.len(),
                    if matched { "MATCH" } else { "MISMATCH" },
                    count(SsmKind::LeftIdeal),
                    count(SsmKind::RightIdeal),
                    count(SsmKind::TwoSided),
                    count(SsmKind::Product),
                )
                .unwrap();
            }
        }
        _ => return Err(Failure::Usage("give exactly one of --lattice and --module".into())),
    }
    Ok((out, ok))
}

fn empirical(name: ConstantName, terms: usize) -> Result<f64, Error> {
    let series_for = |t: TargetId| counting::closed_form_series(t, terms);
    let ratio = |t: TargetId, logpower: u32| -> Result<f64, Error> {
        Ok(asymptotics::estimate_constant(&series_for(t)?, &GrowthModel::new(2.0, logpower))?.value)
    };
    match name {
        ConstantName::ResidueDedekindTau => Ok(asymptotics::cesaro_mean(&series_for(TargetId::DedekindTau)?)),
        ConstantName::ResidueDedekindSqrt2 => Ok(asymptotics::cesaro_mean(&series_for(TargetId::DedekindSqrt2)?)),
        ConstantName::SlopeAJ => ratio(TargetId::ZetaJ, 0),
        ConstantName::SlopeAI => ratio(TargetId::ZetaI, 0),
        ConstantName::SlopeAK => ratio(TargetId::ZetaK, 0),
        ConstantName::CJ => ratio(TargetId::HurwitzJ, 1),
        ConstantName::CZ4 => ratio(TargetId::Z4, 1),
        ConstantName::SlopeFI => ratio(TargetId::IcosianI, 1),
        ConstantName::SlopeFK => ratio(TargetId::CubianK, 1),
        special => Ok(asymptotics::zeta_special_value_check_with_terms(special, terms)?.computed),
    }
}

fn cmd_constants(estimate: bool, terms: usize, format: Format) -> Result<String, Failure> {
    check_terms(terms)?;
    if estimate && terms < 2 {
        return Err(Failure::Usage("terms must be ≥ 2 for estimates".into()));
    }
    let mut rows = Vec::new();
    for c in ConstantName::ALL {
        let est = if estimate { Some(empirical(c, terms)?) } else { None };
        rows.push((c, asymptotics::target_constant(c), est));
    }
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(if estimate { "name,formula,value,estimate,n\n" } else { "name,formula,value\n" });
            for (c, v, e) in &rows {
                write!(out, "{},{},{v:.12}", c.name(), c.formula()).unwrap();
                if let Some(e) = e {
                    write!(out, ",{e:.12},{terms}").unwrap();
                }
                out.push('\n');
            }
        }
        Format::Json => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|(c, v, e)| {
                    let mut obj = serde_json::json!({"name": c.name(), "formula": c.formula(), "value": v});
                    if let Some(e) = e {
                        obj["estimate"] = serde_json::json!(e);
                        obj["n"] = serde_json::json!(terms);
                    }
                    obj
                })
                .collect();
            out = serde_json::to_string(&list).expect("plain data serializes");
            out.push('\n');
        }
        Format::Plain => {
            for (c, v, e) in &rows {
                write!(out, "{:<24}{:<38}{v:.6}", c.name(), c.formula()).unwrap();
                if let Some(e) = e {
                    write!(out, "  estimate {e:.6} (N = {terms})").unwrap();
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} threads: {e}")))?;
    }
    match cli.command {
        Command::Series { target, terms, format } => Ok((cmd_series(target, terms, format)?, true)),
        Command::Verify { target, terms } => cmd_verify(target, terms),
        Command::Oracle { lattice, module, m, max_m } => cmd_oracle(lattice, module, m, max_m),
        Command::Constants { estimate, terms, format } => Ok((cmd_constants(estimate, terms, format)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
