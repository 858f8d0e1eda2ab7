//! `turanlab`: generators, freeness checks, extremal constructions, exact
//! search, conjecture audits, and the density-argument proof chase, behind
//! one binary. Exit codes: 0 success, 2 a checked mathematical property
//! failed to hold (never used for IO faults), 1 usage or IO errors.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use turanlab::dto;
use turanlab::gio;
use turanlab::manifest::RunManifest;
use turanlab::{default_jobs, run_exact_ex, DriverOpts};
use turanlab_core::construct::{family_claimed_edges, ConstructionSpec, Family};
use turanlab_core::detect::{find_forbidden, verify_tp4_coloring_claim, Forbidden};
use turanlab_core::graph6::write_graph6;
use turanlab_core::prooflab::{check_parameter_inequalities, witness_pipeline, Params};
use turanlab_core::pyramids::triangular_pyramid;
use turanlab_core::search::{verify_conjecture_tp3, ConjectureOpts, SlotOrder, Verdict};
use turanlab_core::{ratio, Rational};

#[derive(Parser)]
#[command(name = "turanlab", version, about = "Extremal-number workbench for layered pyramid patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Forward,
    Reverse,
}

impl From<OrderArg> for SlotOrder {
    fn from(o: OrderArg) -> SlotOrder {
        match o {
            OrderArg::Forward => SlotOrder::RowForward,
            OrderArg::Reverse => SlotOrder::RowReverse,
        }
    }
}

/// `a/b`, an integer, or a decimal such as `0.25`; always parsed exactly.
fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: i128 = a.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
        let den: i128 = b.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
        if den == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(ratio(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => (-1i128, rest),
            None => (1i128, int),
        };
        if frac.len() > 27 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal `{s}`"));
        }
        let int: i128 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| format!("bad decimal `{s}`"))?
        };
        let frac_val: i128 =
            if frac.is_empty() { 0 } else { frac.parse().map_err(|_| format!("bad decimal `{s}`"))? };
        let den = 10i128.pow(frac.len() as u32);
        return Ok(ratio(sign * (int * den + frac_val), den));
    }
    let num: i128 = s.parse().map_err(|_| format!("expected a/b, integer, or decimal, got `{s}`"))?;
    Ok(Rational::from(num))
}

fn parse_forbid(text: &str) -> Result<Forbidden, String> {
    Forbidden::parse(text).ok_or_else(|| {
        let all: Vec<&str> = Forbidden::ALL.iter().map(|f| f.label()).collect();
        format!("unknown pattern `{text}` (expected one of {})", all.join(", "))
    })
}

fn parse_family(text: &str) -> Result<Family, String> {
    Family::parse(text).ok_or_else(|| {
        let all: Vec<&str> = Family::ALL.iter().map(|f| f.label()).collect();
        format!("unknown family `{text}` (expected one of {})", all.join(", "))
    })
}

#[derive(Args)]
struct OutArg {
    /// Write the report here instead of stdout (a manifest lands beside it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the k-layer pyramid as graph6.
    Gen {
        /// Number of layers (k >= 1).
        #[arg(long)]
        k: u32,
        /// Write the graph here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write `<out>.labels.tsv` mapping vertex -> (layer, index).
        #[arg(long, requires = "out")]
        labels: bool,
    },
    /// Report, per graph in a graph6 file, whether a pattern occurs.
    CheckFree {
        /// Pattern family: k3, tp2, tp3, tp4, w7, or c6.
        #[arg(long, value_parser = parse_forbid)]
        forbid: Forbidden,
        /// Input graph6 file, one graph per line.
        #[arg(long = "in")]
        input: PathBuf,
        /// Emit one JSON report instead of per-line text.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Build a named extremal construction and certify it against its
    /// forbidden pattern.
    Construct {
        /// Family: even_k5, odd_k5, div6, or tp4_lower.
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Seed for the randomized family (tp4_lower); others ignore it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exit 2 when the certificate finds the pattern.
        #[arg(long)]
        verify: bool,
        /// Write the graph (graph6) here; the JSON report still prints.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact extremal edge count by exhaustive search.
    SearchEx {
        #[arg(long, value_parser = parse_forbid)]
        forbid: Forbidden,
        #[arg(long)]
        n: u16,
        /// Wall-clock budget, e.g. `30s`, `5m`, `2h`; expiry reports
        /// status=timeout with the best incumbent.
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Worker count (default: TURANLAB_JOBS, else all cores).
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Collect every extremal graph, not just the value.
        #[arg(long)]
        collect: bool,
        /// Slot order the brancher follows; both orders return equal values.
        #[arg(long, value_enum, default_value_t = OrderArg::Forward)]
        order: OrderArg,
        /// Prefix split depth for parallel runs.
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Audit the closed-form prediction for tp3 against computed bounds.
    Conjecture {
        /// First size to audit (>= 6).
        #[arg(long)]
        from: u16,
        /// Last size to audit.
        #[arg(long)]
        to: u16,
        /// Run the exhaustive engine for sizes up to this (0 disables).
        #[arg(long, default_value_t = 0)]
        exact_up_to: u16,
        /// Rounds given to the edge-flip heuristic per size.
        #[arg(long, default_value_t = 200)]
        tabu_iters: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Wall-clock budget; later rows degrade to verdict=open.
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the density-argument witness chase on each input graph and
    /// report the staged trace.
    ProveChase {
        /// Input graph6 file, one graph per line.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        delta: Rational,
        /// Defaults to delta/9296, the smallest admissible value.
        #[arg(long, value_parser = parse_rational)]
        beta: Option<Rational>,
        #[arg(long, value_parser = parse_rational, default_value = "1/1024")]
        gamma: Rational,
        /// Write the trace report here instead of stdout (a manifest lands
        /// beside it).
        #[arg(long, visible_alias = "json")]
        out: Option<PathBuf>,
    },
    /// Evaluate the four density-argument parameter predicates exactly.
    CheckParams {
        #[arg(long, value_parser = parse_rational)]
        delta: Rational,
        /// Defaults to delta/9296, the smallest admissible value.
        #[arg(long, value_parser = parse_rational)]
        beta: Option<Rational>,
        #[arg(long, value_parser = parse_rational, default_value = "1/1024")]
        gamma: Rational,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exhaustively check the two-coloring claim on the four-layer pyramid.
    ColoringClaim {
        #[command(flatten)]
        out: OutArg,
    },
    /// Closed-form bound table over a size range (CSV by default).
    Formulas {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Emit JSON (with a formula legend) instead of CSV.
        #[arg(long)]
        json: bool,
        /// Emit CSV (the default; spelled out for symmetry with `conjecture`).
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Writes to stdout, newline-terminated. A reader that hung up (broken
/// pipe) ends the run cleanly instead of panicking.
fn emit(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    let mut r = out.write_all(text.as_bytes());
    if r.is_ok() && !text.ends_with('\n') {
        r = out.write_all(b"\n");
    }
    match r {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(e.into()),
    }
}

/// Prints `text` to stdout, or writes it to `out` and drops a manifest
/// beside it.
fn deliver(text: &str, out: &Option<PathBuf>, manifest: RunManifest) -> anyhow::Result<()> {
    match out {
        None => emit(text),
        Some(path) => {
            let mut m = manifest;
            std::fs::write(path, text).with_context(|| path.display().to_string())?;
            m.record_output(path);
            m.write_beside(path)?;
            Ok(())
        }
    }
}

fn read_input(m: &mut RunManifest, path: &Path) -> anyhow::Result<Vec<turanlab_core::Graph>> {
    let bytes = std::fs::read(path).with_context(|| path.display().to_string())?;
    m.record_input(path, &bytes);
    gio::parse_graph6_lines(std::str::from_utf8(&bytes).context("input is not UTF-8 text")?)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn pretty(value: &impl serde::Serialize) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Gen { k, out, labels } => {
            let pyr = triangular_pyramid(k)?;
            let line = write_graph6(&pyr.graph);
            match &out {
                None => emit(&line)?,
                Some(path) => {
                    let mut m = RunManifest::begin("gen");
                    std::fs::write(path, format!("{line}\n"))
                        .with_context(|| path.display().to_string())?;
                    m.record_output(path);
                    if labels {
                        // JSON map vertex -> [layer, index], keys in vertex order.
                        let mut text = String::from("{\n");
                        let last = pyr.labels.len().saturating_sub(1);
                        for (v, (layer, index)) in pyr.labels.iter().enumerate() {
                            let sep = if v == last { "" } else { "," };
                            text.push_str(&format!("  \"{v}\": [{layer}, {index}]{sep}\n"));
                        }
                        text.push_str("}\n");
                        let mut name = path.file_name().unwrap_or_default().to_os_string();
                        name.push(".labels.json");
                        let lpath = path.with_file_name(name);
                        std::fs::write(&lpath, text).with_context(|| lpath.display().to_string())?;
                        m.record_output(&lpath);
                    }
                    m.write_beside(path)?;
                }
            }
            Ok(0)
        }

        Command::CheckFree { forbid, input, json, out } => {
            let mut m = RunManifest::begin("check-free");
            let graphs = read_input(&mut m, &input)?;
            let mut lines = Vec::with_capacity(graphs.len());
            for (i, g) in graphs.iter().enumerate() {
                let witness = find_forbidden(g, forbid);
                lines.push(dto::CheckFreeLineDto {
                    index: i + 1,
                    n: g.n(),
                    edges: g.edge_count(),
                    forbid: forbid.label(),
                    free: witness.is_none(),
                    witness: witness.as_ref().map(dto::WitnessDto::from),
                });
            }
            let text = if json {
                let report = serde_json::json!({
                    "forbid": forbid.label(),
                    "count": lines.len(),
                    "all_free": lines.iter().all(|l| l.free),
                    "graphs": lines,
                });
                serde_json::to_string_pretty(&report)?
            } else {
                let mut t = String::new();
                for l in &lines {
                    let verdict = if l.free {
                        "free".to_string()
                    } else {
                        format!("contains {}", describe_witness(l.witness.as_ref()))
                    };
                    t.push_str(&format!("graph {}: n={} e={} {}\n", l.index, l.n, l.edges, verdict));
                }
                t
            };
            deliver(&text, &out.out, m)?;
            Ok(0)
        }

        Command::Construct { family, n, seed, verify, out } => {
            let started = Instant::now();
            let spec = ConstructionSpec { family, n, seed };
            let g = spec.build()?;
            let forbid = match family {
                Family::Tp4Lower => Forbidden::Tp4,
                _ => Forbidden::Tp3,
            };
            let mut cert = turanlab_core::construct::verify_construction(&g, forbid);
            cert.claimed_count = family_claimed_edges(family, n as u64);
            cert.elapsed = Some(started.elapsed());
            let report = dto::construct_report(family.label(), seed, write_graph6(&g), &cert);
            emit(&pretty(&report)?)?;
            if let Some(path) = &out {
                let mut m = RunManifest::begin("construct");
                m.record_seed(seed);
                gio::write_graph6_file(path, std::slice::from_ref(&g))?;
                m.record_output(path);
                m.write_beside(path)?;
            }
            Ok(if verify && !cert.witness_absent { 2 } else { 0 })
        }

        Command::SearchEx { forbid, n, budget, jobs, collect, order, depth, out } => {
            let opts = DriverOpts {
                jobs,
                budget,
                collect_extremal: collect,
                slot_order: order.into(),
                split_depth: depth,
            };
            let result = run_exact_ex(n, forbid, &opts)?;
            let text = pretty(&dto::SearchResultDto::from(&result))?;
            deliver(&text, &out.out, RunManifest::begin("search-ex"))?;
            Ok(0)
        }

        Command::Conjecture {
            from,
            to,
            exact_up_to,
            tabu_iters,
            seed,
            budget,
            csv,
            out,
        } => {
            let deadline = budget.map(|b| Instant::now() + b);
            let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
            let opts = ConjectureOpts {
                tabu_iters,
                tabu_seed: seed,
                exact_up_to,
                stop: Some(&stop),
            };
            let rows = verify_conjecture_tp3(from, to, &opts)?;
            let any_violated = rows.iter().any(|r| r.verdict == Verdict::Violated);
            let dtos: Vec<dto::ConjectureRowDto> =
                rows.iter().map(dto::ConjectureRowDto::from).collect();
            let text = if csv {
                dto::conjecture_rows_csv(&dtos)
            } else {
                let report = serde_json::json!({
                    "from": from,
                    "to": to,
                    "formula": turanlab_core::bounds::BoundKind::ConjectureTp3.formula(),
                    "any_violated": any_violated,
                    "rows": dtos,
                });
                serde_json::to_string_pretty(&report)?
            };
            let mut m = RunManifest::begin("conjecture");
            m.record_seed(seed);
            deliver(&text, &out.out, m)?;
            Ok(if any_violated { 2 } else { 0 })
        }

        Command::ProveChase { input, delta, beta, gamma, out } => {
            let params = match beta {
                Some(b) => Params::new(delta, b, gamma),
                None => Params::auto(delta, gamma),
            };
            let mut m = RunManifest::begin("prove-chase");
            let graphs = read_input(&mut m, &input)?;
            if graphs.is_empty() {
                bail!("{}: no graphs in input", input.display());
            }
            let reports: Vec<dto::ChaseReportDto> = graphs
                .iter()
                .map(|g| {
                    let (witness, trace) = witness_pipeline(g, &params);
                    dto::chase_report(g.n(), g.edge_count(), witness.as_ref(), &trace)
                })
                .collect();
            // one graph: a pretty object; several: one compact object per line
            let text = if reports.len() == 1 {
                pretty(&reports[0])?
            } else {
                let mut t = String::new();
                for r in &reports {
                    t.push_str(&serde_json::to_string(r)?);
                    t.push('\n');
                }
                t
            };
            deliver(&text, &out, m)?;
            Ok(0)
        }

        Command::CheckParams { delta, beta, gamma, n, out } => {
            let params = match beta {
                Some(b) => Params::new(delta, b, gamma),
                None => Params::auto(delta, gamma),
            };
            let report = check_parameter_inequalities(&params, n)?;
            let text = pretty(&dto::param_report(&params, n, &report))?;
            // a false predicate is the answer to the question asked, not a
            // violated promise: exit 0 either way
            deliver(&text, &out.out, RunManifest::begin("check-params"))?;
            Ok(0)
        }

        Command::ColoringClaim { out } => {
            let report = verify_tp4_coloring_claim();
            let text = pretty(&dto::ColoringClaimDto::from(&report))?;
            deliver(&text, &out.out, RunManifest::begin("coloring-claim"))?;
            Ok(if report.all_pass { 0 } else { 2 })
        }

        Command::Formulas { from, to, json, csv: _, out } => {
            if to < from {
                bail!("empty size range: --from {from} --to {to}");
            }
            let rows: Vec<dto::FormulaRowDto> = (from..=to).map(dto::formula_row).collect();
            let text = if json {
                use turanlab_core::bounds::BoundKind;
                let report = serde_json::json!({
                    "columns": {
                        "mantel": BoundKind::Mantel.formula(),
                        "t3": BoundKind::Turan { r: 3 }.formula(),
                        "tp2_exact": BoundKind::Tp2Exact.formula(),
                        "wheel7": BoundKind::Wheel7.formula(),
                        "lemma1": BoundKind::Lemma1.formula(),
                        "conj_tp3": BoundKind::ConjectureTp3.formula(),
                    },
                    "rows": rows,
                });
                serde_json::to_string_pretty(&report)?
            } else {
                dto::formula_rows_csv(&rows)
            };
            deliver(&text, &out.out, RunManifest::begin("formulas"))?;
            Ok(0)
        }
    }
}

fn describe_witness(w: Option<&dto::WitnessDto>) -> String {
    match w {
        None => "(no witness)".to_string(),
        Some(dto::WitnessDto::Map { vertices }) => format!("at vertices {vertices:?}"),
        Some(dto::WitnessDto::Pyramid { hub, rim, apexes }) => {
            format!("pyramid hub={hub} rim={rim:?} apexes={apexes:?}")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                // clap's own usage-error code is 2, which this tool reserves
                // for mathematical-property violations
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e:#}");
            ExitCode::from(1)
        }
    }
}
