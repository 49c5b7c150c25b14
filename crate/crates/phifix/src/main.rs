//! Command-line front end.
//!
//! Subcommands:
//! * `info` — structural profile of one group.
//! * `sweep` — walk a family range, classify every Frattini-fixing
//!   involution, and check the star verdicts against the expected boundary.
//! * `check-witness` — evaluate one cataloged witness map and verify its
//!   claims.
//! * `oracle` — run the independent self-test batteries.
//!
//! Exit codes: 0 = all checks consistent, 1 = a verified mathematical
//! discrepancy or failed claim, 2 = usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phifix::aut::{EnumLimits, EnumMode};
use phifix::group::{Family, FamilyGroup};
use phifix::report::{
    group_info, render_info, render_sweep, run_sweep, ReportFormat, SweepError, SweepSettings,
};
use phifix::selftest::{run_oracle, OracleConfig};
use phifix::witness::{verify_witness, WitnessCase, WitnessParams};

const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Parser)]
#[command(
    name = "phifix",
    version,
    about = "Frattini-fixing involutions of 2-generator class-2 finite 2-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Family tag: Q1, Q2 or R3
    family: String,
    /// Exponent parameter n
    n: u32,
    /// Exponent parameter r (families Q1 and Q2 only)
    r: Option<u32>,
}

impl GroupArgs {
    fn build(&self) -> Result<FamilyGroup, String> {
        let family = Family::parse(&self.family)
            .ok_or_else(|| format!("unknown family `{}`; expected Q1, Q2 or R3", self.family))?;
        FamilyGroup::new(family, self.n, self.r).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural profile of one group
    Info {
        #[command(flatten)]
        group: GroupArgs,
        /// Output format: json, csv or md
        #[arg(long, default_value = "md")]
        format: String,
        /// Write the report to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the selected families up to a maximum order and verify the
    /// star-condition boundary
    Sweep {
        /// Comma-separated families to sweep
        #[arg(long, value_delimiter = ',', default_value = "Q1,Q2,R3")]
        family: Vec<String>,
        /// Restrict rows to this n
        #[arg(long)]
        n: Option<u32>,
        /// Restrict rows to this r
        #[arg(long)]
        r: Option<u32>,
        /// Largest group order to include; accepts `4096` or `2^12`
        #[arg(long, default_value = "2^12")]
        max_order: String,
        /// Enumeration strategy: pruned or brute
        #[arg(long, default_value = "pruned")]
        mode: String,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Output format: json, csv or md
        #[arg(long, default_value = "md")]
        format: String,
        /// Seed for randomized spot checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the report to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one cataloged witness map and verify its claims
    #[command(name = "check-witness")]
    CheckWitness {
        /// Case id: 1i, 1ii, 1iii-a1, 1iii-a2, 2i, 2ii, 2iii, 3i, 3ii
        case: String,
        #[command(flatten)]
        group: GroupArgs,
        /// Free parameter m (cases 1ii, 1iii-*)
        #[arg(long, default_value_t = 0)]
        m: u8,
        /// Free parameter s (cases 1iii-*)
        #[arg(long, default_value_t = 0)]
        s: u8,
        /// Output format: text or json
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the verdict to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the independent self-test batteries up to a maximum order
    Oracle {
        /// Largest group order to test; accepts `512` or `2^9`
        #[arg(default_value = "512")]
        max_order: String,
        /// Seed for randomized associativity checks on larger groups
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Info { group, format, out } => {
            let format = parse_format(&format)?;
            let group = group.build()?;
            let text = render_info(&group_info(&group), format);
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            family,
            n,
            r,
            max_order,
            mode,
            jobs,
            format,
            seed,
            out,
        } => {
            let format = parse_format(&format)?;
            let families = parse_families(&family)?;
            let settings = SweepSettings {
                families,
                max_order: parse_order(&max_order)?,
                mode: parse_mode(&mode)?,
                seed,
                only_n: n,
                only_r: r,
            };
            let outcome = in_pool(jobs, || run_sweep(&settings))?.map_err(|e| match e {
                SweepError::Star(star) => {
                    // an engine inconsistency surfaced mid-sweep
                    star.to_string()
                }
                other => other.to_string(),
            })?;
            emit(&render_sweep(&outcome, format), out.as_deref())?;
            if outcome.matches_prediction() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "star verdicts deviate from the expected boundary on: {}",
                    outcome
                        .mismatches
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Command::CheckWitness {
            case,
            group,
            m,
            s,
            format,
            out,
        } => {
            let case = WitnessCase::parse(&case)
                .ok_or_else(|| format!("unknown witness case `{case}`"))?;
            let group = group.build()?;
            let verdict = verify_witness(&group, case, WitnessParams::new(m, s))
                .map_err(|e| e.to_string())?;
            let text = match format.as_str() {
                "json" => serde_json::to_string_pretty(&verdict).expect("verdict serializes") + "\n",
                "text" | "md" => {
                    let mut t = format!(
                        "witness {} on {} (m={}, s={}): map {}\n",
                        verdict.case,
                        verdict.group,
                        verdict.params.m,
                        verdict.params.s,
                        phifix::GenMap::new(verdict.map.image_a, verdict.map.image_b),
                    );
                    for claim in &verdict.claims {
                        t.push_str(&format!(
                            "  [{}] {} — {}\n",
                            if claim.pass { "pass" } else { "FAIL" },
                            claim.claim.describe(),
                            claim.detail
                        ));
                    }
                    if let Some(order) = verdict.computed_order {
                        t.push_str(&format!("  computed order: {order}\n"));
                    }
                    if let Some(note) = &verdict.convention_note {
                        t.push_str(&format!("  convention note: {note}\n"));
                    }
                    t.push_str(if verdict.all_pass {
                        "verdict: pass\n"
                    } else {
                        "verdict: FAIL\n"
                    });
                    t
                }
                other => return Err(format!("unknown format `{other}` for check-witness")),
            };
            emit(&text, out.as_deref())?;
            Ok(if verdict.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Oracle {
            max_order,
            seed,
            jobs,
        } => {
            let max_order = parse_order(&max_order)?;
            let limits = EnumLimits::default();
            if max_order > limits.pruned_max_order {
                return Err(format!(
                    "oracle max-order is limited to {} (got {max_order})",
                    limits.pruned_max_order
                ));
            }
            let config = OracleConfig {
                max_order,
                seed,
                limits,
            };
            let report = in_pool(jobs, || run_oracle(&config))?;
            for check in &report.checks {
                println!(
                    "[{}] {:<28} {:<10} {}",
                    if check.pass { "pass" } else { "FAIL" },
                    check.name,
                    check.group,
                    check.detail
                );
            }
            println!(
                "oracle: {} checks on groups up to order {max_order}: {}",
                report.checks.len(),
                if report.all_pass { "all pass" } else { "FAILURES" }
            );
            Ok(if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn in_pool<T: Send>(jobs: usize, task: impl FnOnce() -> T + Send) -> Result<T, String> {
    if jobs == 0 {
        return Ok(task());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())?;
    Ok(pool.install(task))
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    ReportFormat::parse(s).ok_or_else(|| format!("unknown format `{s}`; expected json, csv or md"))
}

fn parse_mode(s: &str) -> Result<EnumMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "pruned" => Ok(EnumMode::Pruned),
        "brute" => Ok(EnumMode::Brute),
        other => Err(format!("unknown mode `{other}`; expected pruned or brute")),
    }
}

fn parse_families(tags: &[String]) -> Result<Vec<Family>, String> {
    let mut families = Vec::new();
    for tag in tags {
        let tag = tag.trim();
        if tag.is_empty() {
            continue;
        }
        families.push(
            Family::parse(tag).ok_or_else(|| format!("unknown family `{tag}`"))?,
        );
    }
    if families.is_empty() {
        return Err("no families selected".to_string());
    }
    Ok(families)
}

/// Accepts `4096` or `2^12`.
fn parse_order(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let exp: u32 = exp
            .parse()
            .map_err(|_| format!("bad exponent in `{s}`"))?;
        if exp >= 63 {
            return Err(format!("order 2^{exp} is out of range"));
        }
        Ok(1u64 << exp)
    } else {
        s.parse().map_err(|_| format!("bad order `{s}`"))
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
