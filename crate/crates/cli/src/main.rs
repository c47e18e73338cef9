//! `ord`: command-line front end for the walk library.
//!
//! Every subcommand maps to one library operation. Output goes to stdout
//! (or `--out FILE`) and is deterministic for a fixed flag set; errors are
//! one line on stderr. Exit codes: 0 success, 1 domain error, 2 usage
//! error, 3 resource guard.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordwalk_core::{csequence, ladder, naive, selftest, topology, walks};
use ordwalk_core::{Error, Ordinal, ProbeSet};
use serde::Serialize;
use serde_json::json;

const EMBEDDED_SELFTEST: &str = include_str!("../golden/selftest.json");

#[derive(Parser)]
#[command(name = "ord", version, disable_help_subcommand = true)]
#[command(about = "Walks, colorings, and convergence on ordinals below epsilon-zero")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Probe-set tier for scan commands.
    #[arg(long, global = true, default_value_t = 2)]
    tier: u32,

    /// Step budget for walk loops and member enumeration.
    #[arg(long, global = true, default_value_t = walks::DEFAULT_STEP_GUARD)]
    step_guard: u64,

    /// Seed for the seeded suites.
    #[arg(long, global = true, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an ordinal literal and report its classification.
    Parse { ordinal: String },

    /// Echo an ordinal literal in canonical form.
    Fmt { ordinal: String },

    /// Compare two ordinals.
    Cmp { left: String, right: String },

    /// Add two ordinals.
    Add { left: String, right: String },

    /// Successor of an ordinal.
    Succ { ordinal: String },

    /// Test whether an ordinal is a limit.
    Islimit { ordinal: String },

    /// Enumerate the deterministic probe set below a cap.
    Probe {
        #[arg(long)]
        cap: String,
    },

    /// Fundamental-sequence operations.
    #[command(subcommand)]
    Cseq(CseqCommand),

    /// Walk traces, step counts, and scan harnesses.
    #[command(subcommand)]
    Walk(WalkCommand),

    /// The walk-weight neighborhood base and its witnesses.
    #[command(subcommand)]
    Space(SpaceCommand),

    /// Ladder systems, pairing, and certified colorings.
    #[command(subcommand)]
    Ladder(LadderCommand),

    /// Golden self-check: generate the corpus or verify the production path
    /// against it (the default verifies against the embedded corpus).
    Selftest(SelftestArgs),
}

#[derive(Subcommand)]
enum CseqCommand {
    /// List the fundamental-sequence members of alpha below a bound.
    Members {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        below: String,
    },

    /// One fundamental-sequence element.
    Fund {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        index: u64,
    },

    /// Least C-sequence element of beta at or above alpha, with its index.
    Above {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum WalkCommand {
    /// Full walk from beta down to alpha.
    Trace {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },

    /// Number of walk steps from beta down to alpha.
    Rho2 {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Use the scan-based reference evaluator instead of the fast path.
        #[arg(long)]
        naive: bool,
    },

    /// Largest C-sequence element below alpha seen along the walk.
    Stabilizer {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },

    /// Largest drift between step counts at two endpoints over probes.
    Coherence {
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },

    /// First probe pair whose walk exceeds a threshold.
    Witness {
        #[arg(long)]
        cap: String,
        #[arg(long, default_value_t = 3)]
        threshold: u64,
    },
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Membership of a point (an ordinal or "apex") in a basic open or in
    /// a descriptor given as repeated ANCHOR:LEVEL entries.
    Member {
        #[arg(long)]
        point: String,
        #[arg(long)]
        anchor: Option<String>,
        #[arg(long)]
        level: Option<u64>,
        #[arg(long = "entry", value_name = "ANCHOR:LEVEL")]
        entries: Vec<String>,
    },

    /// Greedy extraction of a sequence converging to the anchor.
    Extract {
        #[arg(long, value_delimiter = ',')]
        pool: Vec<String>,
        #[arg(long)]
        anchor: String,
        #[arg(long)]
        max_index: u64,
    },

    /// Merge indexed families into one set converging to the anchor.
    Merge {
        /// Comma-separated family; repeat the flag for later indices.
        #[arg(long = "family")]
        families: Vec<String>,
        #[arg(long)]
        anchor: String,
    },

    /// Separate a finite set from the apex with a certified scheme.
    Separate {
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },

    /// Histogram walk weights of a set against limit anchors.
    Report {
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long = "anchor")]
        anchors: Vec<String>,
    },
}

#[derive(Subcommand)]
enum LadderCommand {
    /// Build the coloring at gamma; export it over the probe set below
    /// gamma, or evaluate a single point with --xi.
    Build {
        gamma: String,
        #[arg(long)]
        xi: Option<String>,
    },

    /// Fiber report of the coloring on one ladder against its certificate.
    Fiber {
        gamma: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 64)]
        prefix: u64,
    },

    /// Level-indexed uniformization value at a point.
    Uniformize {
        gamma: String,
        #[arg(long)]
        xi: String,
        #[arg(long, default_value_t = 8)]
        depth: u64,
    },

    /// One ladder element.
    Rung {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        index: u64,
    },

    /// Position of a point on a ladder (zero when absent).
    Index {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        xi: String,
    },

    /// Cantor pairing of two naturals.
    Pair { a: u64, b: u64 },

    /// Inverse of the Cantor pairing.
    Unpair { n: u64 },

    /// One element of the canonical club below gamma.
    Club {
        gamma: String,
        #[arg(long)]
        index: u64,
    },
}

#[derive(Args)]
struct SelftestArgs {
    /// Generate the corpus from the reference path.
    #[arg(long)]
    generate: bool,

    /// Verify a corpus against the production path (the default).
    #[arg(long)]
    verify: bool,

    /// Corpus file to verify; the embedded corpus when absent.
    #[arg(long, value_name = "FILE")]
    golden: Option<PathBuf>,
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(output) => match deliver(&output, out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(failure) => report(failure),
        },
        Err(failure) => report(failure),
    }
}

fn deliver(output: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, output)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

fn report(failure: Failure) -> ExitCode {
    match failure {
        Failure::Domain(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Resource(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
        Failure::Usage(msg) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(2)
        }
        Failure::Io(msg) => {
            eprintln!("error: io: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_ordinal(s: &str) -> Result<Ordinal, Failure> {
    Ok(Ordinal::parse(s)?)
}

fn parse_list(items: &[String]) -> Result<Vec<Ordinal>, Failure> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_ordinal(s))
        .collect()
}

fn render_json<T: Serialize>(value: &T) -> String {
    let mut rendered = serde_json::to_string_pretty(value).expect("serializable");
    rendered.push('\n');
    rendered
}

/// Rejects csv for every command except the flat fiber export.
fn no_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::Usage(
            "csv output is only available for `ladder fiber`".into(),
        ));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    let g = &cli.global;
    match cli.command {
        Command::Parse { ordinal } => {
            no_csv(g.format)?;
            let o = parse_ordinal(&ordinal)?;
            let kind = if o.is_zero() {
                "zero"
            } else if o.is_limit() {
                "limit"
            } else {
                "successor"
            };
            Ok(match g.format {
                Format::Text => format!("{o} ({kind})\n"),
                _ => render_json(&json!({
                    "canonical": o,
                    "kind": kind,
                    "natural": o.natural(),
                })),
            })
        }
        Command::Fmt { ordinal } => {
            no_csv(g.format)?;
            let o = parse_ordinal(&ordinal)?;
            Ok(match g.format {
                Format::Text => format!("{o}\n"),
                _ => render_json(&o),
            })
        }
        Command::Cmp { left, right } => {
            no_csv(g.format)?;
            let l = parse_ordinal(&left)?;
            let r = parse_ordinal(&right)?;
            let verdict = match l.compare(&r) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Ok(match g.format {
                Format::Text => format!("{verdict}\n"),
                _ => render_json(&json!({ "left": l, "right": r, "order": verdict })),
            })
        }
        Command::Add { left, right } => {
            no_csv(g.format)?;
            let sum = parse_ordinal(&left)?.add(&parse_ordinal(&right)?);
            Ok(match g.format {
                Format::Text => format!("{sum}\n"),
                _ => render_json(&sum),
            })
        }
        Command::Succ { ordinal } => {
            no_csv(g.format)?;
            let next = parse_ordinal(&ordinal)?.successor();
            Ok(match g.format {
                Format::Text => format!("{next}\n"),
                _ => render_json(&next),
            })
        }
        Command::Islimit { ordinal } => {
            no_csv(g.format)?;
            let o = parse_ordinal(&ordinal)?;
            Ok(match g.format {
                Format::Text => format!("{}\n", o.is_limit()),
                _ => render_json(&o.is_limit()),
            })
        }
        Command::Probe { cap } => {
            no_csv(g.format)?;
            let probe = ProbeSet::new(&parse_ordinal(&cap)?, g.tier)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = String::new();
                    for member in probe.iter() {
                        let _ = writeln!(out, "{member}");
                    }
                    out
                }
                _ => render_json(&probe),
            })
        }
        Command::Cseq(cmd) => run_cseq(cmd, g),
        Command::Walk(cmd) => run_walk(cmd, g),
        Command::Space(cmd) => run_space(cmd, g),
        Command::Ladder(cmd) => run_ladder(cmd, g),
        Command::Selftest(args) => run_selftest(args, g),
    }
}

fn run_cseq(cmd: CseqCommand, g: &Global) -> CliResult {
    no_csv(g.format)?;
    match cmd {
        CseqCommand::Members { alpha, below } => {
            let alpha = parse_ordinal(&alpha)?;
            let below = parse_ordinal(&below)?;
            let members = csequence::c_members_guarded(&alpha, &below, g.step_guard)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = String::new();
                    for member in &members {
                        let _ = writeln!(out, "{member}");
                    }
                    out
                }
                _ => render_json(&members),
            })
        }
        CseqCommand::Fund { alpha, index } => {
            let value = csequence::fund_seq(&parse_ordinal(&alpha)?, index)?;
            Ok(match g.format {
                Format::Text => format!("{value}\n"),
                _ => render_json(&value),
            })
        }
        CseqCommand::Above { beta, alpha } => {
            let beta = parse_ordinal(&beta)?;
            let alpha = parse_ordinal(&alpha)?;
            let (index, value) = csequence::min_above_index(&beta, &alpha)?;
            Ok(match g.format {
                Format::Text => format!("{index} {value}\n"),
                _ => render_json(&json!({ "index": index, "value": value })),
            })
        }
    }
}

fn run_walk(cmd: WalkCommand, g: &Global) -> CliResult {
    no_csv(g.format)?;
    match cmd {
        WalkCommand::Trace { alpha, beta } => {
            let alpha = parse_ordinal(&alpha)?;
            let beta = parse_ordinal(&beta)?;
            let walk = walks::trace_guarded(&alpha, &beta, g.step_guard)?;
            Ok(match g.format {
                Format::Text => {
                    let rendered: Vec<String> =
                        walk.points().iter().map(|p| p.to_string()).collect();
                    format!("{}\n", rendered.join(" -> "))
                }
                _ => render_json(&walk.record()),
            })
        }
        WalkCommand::Rho2 { alpha, beta, naive: use_naive } => {
            let alpha = parse_ordinal(&alpha)?;
            let beta = parse_ordinal(&beta)?;
            let count = if use_naive {
                naive::rho2(&alpha, &beta)?
            } else {
                walks::rho2_guarded(&alpha, &beta, g.step_guard)?
            };
            Ok(match g.format {
                Format::Text => format!("{count}\n"),
                _ => render_json(&json!({ "alpha": alpha, "beta": beta, "rho2": count })),
            })
        }
        WalkCommand::Stabilizer { alpha, beta } => {
            let alpha = parse_ordinal(&alpha)?;
            let beta = parse_ordinal(&beta)?;
            let eta = walks::stabilizer_guarded(&alpha, &beta, g.step_guard)?;
            Ok(match g.format {
                Format::Text => format!("{eta}\n"),
                _ => render_json(&eta),
            })
        }
        WalkCommand::Coherence { beta, gamma } => {
            let beta = parse_ordinal(&beta)?;
            let gamma = parse_ordinal(&gamma)?;
            let probes = ProbeSet::new(&beta, g.tier)?;
            let report = walks::coherence_delta(&beta, &gamma, &probes)?;
            Ok(match g.format {
                Format::Text => format!(
                    "max delta {} at {}\n",
                    report.max_delta, report.argmax
                ),
                _ => render_json(&report),
            })
        }
        WalkCommand::Witness { cap, threshold } => {
            let probe = ProbeSet::new(&parse_ordinal(&cap)?, g.tier)?;
            match walks::unbounded_witness(&probe, &probe, threshold)? {
                Some((alpha, beta)) => {
                    let count = walks::rho2(&alpha, &beta)?;
                    Ok(match g.format {
                        Format::Text => format!("{alpha} {beta} {count}\n"),
                        _ => render_json(&json!({
                            "alpha": alpha,
                            "beta": beta,
                            "rho2": count,
                        })),
                    })
                }
                None => Ok(match g.format {
                    Format::Text => "none\n".to_string(),
                    _ => render_json(&json!(null)),
                }),
            }
        }
    }
}

fn parse_point(s: &str) -> Result<topology::Point, Failure> {
    if s == "apex" {
        Ok(topology::Point::Apex)
    } else {
        Ok(topology::Point::Ord(parse_ordinal(s)?))
    }
}

fn run_space(cmd: SpaceCommand, g: &Global) -> CliResult {
    no_csv(g.format)?;
    match cmd {
        SpaceCommand::Member {
            point,
            anchor,
            level,
            entries,
        } => {
            let point = parse_point(&point)?;
            let verdict = if !entries.is_empty() {
                if anchor.is_some() || level.is_some() {
                    return Err(Failure::Usage(
                        "give either --anchor/--level or --entry, not both".into(),
                    ));
                }
                let mut parsed = Vec::new();
                for entry in &entries {
                    let Some((anchor, level)) = entry.rsplit_once(':') else {
                        return Err(Failure::Usage(format!(
                            "entry `{entry}` is not ANCHOR:LEVEL"
                        )));
                    };
                    let level: u64 = level.parse().map_err(|_| {
                        Failure::Usage(format!("entry level `{level}` is not a natural"))
                    })?;
                    parsed.push((parse_ordinal(anchor)?, level));
                }
                let descriptor = topology::NeighborhoodDescriptor::new(parsed)?;
                topology::member_descriptor(&point, &descriptor)?
            } else {
                let (Some(anchor), Some(level)) = (anchor, level) else {
                    return Err(Failure::Usage(
                        "membership needs --anchor and --level, or --entry".into(),
                    ));
                };
                let open = topology::BasicOpen::new(parse_ordinal(&anchor)?, level)?;
                topology::member(&point, &open)?
            };
            Ok(match g.format {
                Format::Text => format!("{verdict}\n"),
                _ => render_json(&verdict),
            })
        }
        SpaceCommand::Extract {
            pool,
            anchor,
            max_index,
        } => {
            let pool: BTreeSet<Ordinal> = parse_list(&pool)?.into_iter().collect();
            let anchor = parse_ordinal(&anchor)?;
            let picked = topology::frechet_extract(&pool, &anchor, max_index)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = String::new();
                    for xi in &picked {
                        let _ = writeln!(out, "{xi}");
                    }
                    out
                }
                _ => render_json(&picked),
            })
        }
        SpaceCommand::Merge { families, anchor } => {
            let mut parsed = Vec::new();
            for family in &families {
                let items: Vec<String> =
                    family.split(',').map(|s| s.trim().to_string()).collect();
                parsed.push(parse_list(&items)?.into_iter().collect::<BTreeSet<_>>());
            }
            let anchor = parse_ordinal(&anchor)?;
            let merged = topology::alpha1_merge(&parsed, &anchor)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = String::new();
                    for xi in &merged {
                        let _ = writeln!(out, "{xi}");
                    }
                    out
                }
                _ => render_json(&merged),
            })
        }
        SpaceCommand::Separate { set } => {
            let set: BTreeSet<Ordinal> = parse_list(&set)?.into_iter().collect();
            let separation = topology::gdelta_separate(&set)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = format!("beta {}\n", separation.beta);
                    for (xi, level) in &separation.certificate {
                        let _ = writeln!(out, "{xi} {level}");
                    }
                    out
                }
                _ => render_json(&separation),
            })
        }
        SpaceCommand::Report { set, anchors } => {
            let set: BTreeSet<Ordinal> = parse_list(&set)?.into_iter().collect();
            let anchors = parse_list(&anchors)?;
            let report = topology::convergence_report(&set, &anchors)?;
            Ok(match g.format {
                Format::Text => {
                    let mut out = String::new();
                    for entry in &report.anchors {
                        let _ = write!(out, "{}:", entry.anchor);
                        for (weight, count) in &entry.histogram {
                            let _ = write!(out, " {weight}x{count}");
                        }
                        out.push('\n');
                    }
                    let _ = writeln!(out, "max fiber {}", report.max_fiber);
                    out
                }
                _ => render_json(&report),
            })
        }
    }
}

fn run_ladder(cmd: LadderCommand, g: &Global) -> CliResult {
    match cmd {
        LadderCommand::Build { gamma, xi } => {
            no_csv(g.format)?;
            let gamma = parse_ordinal(&gamma)?;
            let coloring = ladder::build_coloring(&gamma)?;
            match xi {
                Some(xi) => {
                    let xi = parse_ordinal(&xi)?;
                    let value = coloring.evaluate(&xi)?;
                    Ok(match g.format {
                        Format::Text => format!("{value}\n"),
                        _ => render_json(&json!({
                            "gamma": gamma,
                            "xi": xi,
                            "value": value,
                        })),
                    })
                }
                None => {
                    let probe = ProbeSet::new(&gamma, g.tier)?;
                    let mut rows = Vec::new();
                    for xi in probe.iter() {
                        rows.push(json!({ "xi": xi, "value": coloring.evaluate(xi)? }));
                    }
                    Ok(match g.format {
                        Format::Text => {
                            let mut out = String::new();
                            for row in &rows {
                                let _ = writeln!(
                                    out,
                                    "{} {}",
                                    row["xi"].as_str().expect("string"),
                                    row["value"]
                                );
                            }
                            out
                        }
                        _ => render_json(&rows),
                    })
                }
            }
        }
        LadderCommand::Fiber {
            gamma,
            alpha,
            prefix,
        } => {
            let gamma = parse_ordinal(&gamma)?;
            let alpha = parse_ordinal(&alpha)?;
            let coloring = ladder::build_coloring(&gamma)?;
            let report = coloring.fiber_report(&alpha, prefix)?;
            Ok(match g.format {
                Format::Text => format!(
                    "bound {} max {}\n",
                    report.bound, report.max_multiplicity
                ),
                Format::Json => render_json(&report),
                Format::Csv => {
                    let mut out = String::from("alpha,prefix,value,count\n");
                    for (value, count) in &report.histogram {
                        let _ = writeln!(out, "{},{},{value},{count}", report.alpha, prefix);
                    }
                    out
                }
            })
        }
        LadderCommand::Uniformize { gamma, xi, depth } => {
            no_csv(g.format)?;
            let club = ladder::club_of(&parse_ordinal(&gamma)?)?;
            let value = ladder::uniformize(&club, depth).evaluate(&parse_ordinal(&xi)?)?;
            Ok(match g.format {
                Format::Text => format!("{value}\n"),
                _ => render_json(&value),
            })
        }
        LadderCommand::Rung { alpha, index } => {
            no_csv(g.format)?;
            let value = ladder::ladder(&parse_ordinal(&alpha)?, index)?;
            Ok(match g.format {
                Format::Text => format!("{value}\n"),
                _ => render_json(&value),
            })
        }
        LadderCommand::Index { alpha, xi } => {
            no_csv(g.format)?;
            let position = ladder::enum_index(&parse_ordinal(&alpha)?, &parse_ordinal(&xi)?)?;
            Ok(match g.format {
                Format::Text => format!("{position}\n"),
                _ => render_json(&position),
            })
        }
        LadderCommand::Pair { a, b } => {
            no_csv(g.format)?;
            let n = ladder::pair(a, b)?;
            Ok(match g.format {
                Format::Text => format!("{n}\n"),
                _ => render_json(&n),
            })
        }
        LadderCommand::Unpair { n } => {
            no_csv(g.format)?;
            let (a, b) = ladder::unpair(n);
            Ok(match g.format {
                Format::Text => format!("{a} {b}\n"),
                _ => render_json(&json!([a, b])),
            })
        }
        LadderCommand::Club { gamma, index } => {
            no_csv(g.format)?;
            let club = ladder::club_of(&parse_ordinal(&gamma)?)?;
            let value = club.get(index)?;
            Ok(match g.format {
                Format::Text => format!("{value}\n"),
                _ => render_json(&value),
            })
        }
    }
}

fn run_selftest(args: SelftestArgs, g: &Global) -> CliResult {
    no_csv(g.format)?;
    if args.generate && args.verify {
        return Err(Failure::Usage(
            "--generate and --verify are mutually exclusive".into(),
        ));
    }
    if args.generate {
        if args.golden.is_some() {
            return Err(Failure::Usage(
                "--golden only applies to verification".into(),
            ));
        }
        let doc = selftest::generate(g.seed)?;
        return Ok(selftest::to_json(&doc));
    }
    let raw = match &args.golden {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?,
        None => EMBEDDED_SELFTEST.to_string(),
    };
    let doc = selftest::from_json(&raw)?;
    let drift = selftest::verify(&doc)?;
    if drift.is_empty() {
        return Ok(match g.format {
            Format::Text => format!("ok ({} sections)\n", section_count()),
            _ => render_json(&json!({ "status": "ok", "drift": [] })),
        });
    }
    let rendered = match g.format {
        Format::Text => {
            let mut out = String::new();
            for line in &drift {
                let _ = writeln!(out, "drift: {line}");
            }
            out
        }
        _ => render_json(&json!({ "status": "drift", "drift": drift })),
    };
    print!("{rendered}");
    Err(Failure::Domain(Error::CertificateViolation(format!(
        "selftest drift: {} finding(s)",
        drift.len()
    ))))
}

fn section_count() -> usize {
    // traces, grid, coherence, witness, separation, extraction, merge, fibers
    8
}
