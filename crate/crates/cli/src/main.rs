mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qubitloss::base::{all_witnesses, sufficient_3q};
use qubitloss::catalog::{named_state, CatalogKey};
use qubitloss::detector::{measure_with, trace_with};
use qubitloss::format::{parse_qubit_list, parse_state, write_json, write_text};
use qubitloss::oracle::{find_product_cut, oracle_genuine, MAX_ORACLE_QUBITS};
use qubitloss::sample::{random_product_state, random_state, seeded_rng};
use qubitloss::tables::{compute_tables, render};
use qubitloss::{
    all_projections, detect_with, lose_qubit, lose_qubit_set, DetectOptions, StateVector,
    Tolerance, VerdictKind,
};
use rand::Rng;

use report::{Input, MeasureSummary, OracleSummary, Report, SelftestSummary, WitnessReport};

const EXIT_GENUINE: u8 = 0;
const EXIT_NOT_GENUINE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_ERROR: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;

/// Genuine multipartite entanglement checks for pure qubit states.
#[derive(Debug, Parser)]
#[command(name = "qubitloss", version)]
struct Cli {
    /// Relative tolerance for proportionality and rank decisions.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_REL)]
    tol: f64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Explore every projection instead of stopping after two certified ones.
    #[arg(long, global = true)]
    exhaustive: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall time in reports (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify genuine entanglement. Exit 0 genuine, 1 not genuine, 2 inconclusive.
    Detect(Source),
    /// Print projected states in the state file format.
    Project {
        #[command(flatten)]
        source: Source,
        /// Comma-separated qubits to lose, e.g. `1,3`.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        lose: Option<String>,
        /// Print every single-qubit projection.
        #[arg(long)]
        all: bool,
    },
    /// Count genuinely entangled single-qubit projections.
    Measure(Source),
    /// Recompute the three-qubit comparison tables. Exit 1 on any mismatch.
    Tables,
    /// Exhaustive bipartition rank test (up to 12 qubits).
    Oracle {
        #[command(flatten)]
        source: Source,
        /// Also run the detector and check the two agree. Exit 4 on a contradiction.
        #[arg(long)]
        compare: bool,
    },
    /// Seeded soundness sweep against the oracle. Exit 4 on any violation.
    Selftest {
        /// States per register size and kind.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest register size.
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// State file, text or JSON.
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    file: Option<PathBuf>,
    /// Named state such as GHZ, W, DICKE(2), PHI4, EXAMPLE3_4Q.
    #[arg(long)]
    catalog: Option<String>,
    /// Register size for catalog families.
    #[arg(long, requires = "catalog")]
    n: Option<usize>,
}

impl Source {
    fn load(&self) -> anyhow::Result<(StateVector, Input)> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let state =
                parse_state(&text).with_context(|| format!("parsing {}", path.display()))?;
            let input = Input::File {
                path: path.display().to_string(),
                qubits: state.num_qubits(),
            };
            return Ok((state, input));
        }
        let name = self
            .catalog
            .as_deref()
            .expect("clap requires --file or --catalog");
        let key: CatalogKey = name.parse()?;
        if key.fixed_qubits().is_none() && self.n.is_none() {
            bail!("catalog state {key} needs a register size, pass --n");
        }
        let state = named_state(key, self.n)?;
        let input = Input::Catalog {
            name: key.to_string(),
            qubits: state.num_qubits(),
        };
        Ok((state, input))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let tol = Tolerance::new(cli.tol)?;
    let opts = DetectOptions {
        tol,
        exhaustive: cli.exhaustive,
        ..DetectOptions::default()
    };
    let start = Instant::now();
    let (mut report, code) = match &cli.command {
        Command::Detect(source) => detect_cmd(cli, opts, source)?,
        Command::Project { source, lose, all } => {
            return project_cmd(cli, source, lose.as_deref(), *all);
        }
        Command::Measure(source) => measure_cmd(cli, opts, source)?,
        Command::Tables => return tables_cmd(cli, tol),
        Command::Oracle { source, compare } => oracle_cmd(cli, opts, source, *compare)?,
        Command::Selftest { count, max_n } => selftest_cmd(cli, opts, *count, *max_n)?,
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(code)
}

fn verdict_exit(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::CertifiedGenuine => EXIT_GENUINE,
        VerdictKind::CertifiedNotGenuine => EXIT_NOT_GENUINE,
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn detect_cmd(cli: &Cli, opts: DetectOptions, source: &Source) -> anyhow::Result<(Report, u8)> {
    let (state, input) = source.load()?;
    let trace = trace_with(&state, opts)?;
    let mut report = Report::new("detect", cli.tol, cli.exhaustive);
    report.input = Some(input);
    report.verdict = Some(trace.verdict.kind);
    report.witness = trace.verdict.witness.as_ref().map(WitnessReport::from);
    report.certificate = trace.verdict.certificate.clone();
    report.projections = trace.row;
    if cli.exhaustive && state.num_qubits() <= 4 {
        report.all_witnesses = all_witnesses(&state, opts.tol)?
            .iter()
            .map(WitnessReport::from)
            .collect();
    }
    Ok((report, verdict_exit(trace.verdict.kind)))
}

fn project_cmd(cli: &Cli, source: &Source, lose: Option<&str>, all: bool) -> anyhow::Result<u8> {
    let (state, _) = source.load()?;
    let emit = |s: &StateVector| {
        if cli.json {
            write_json(s) + "\n"
        } else {
            write_text(s)
        }
    };
    if all {
        let mut out = String::new();
        for (i, p) in all_projections(&state)?.iter().enumerate() {
            if !cli.json {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!(
                    "# lose {}{}\n",
                    p.lost_qubit,
                    zero_note(p.is_zero)
                ));
            }
            out.push_str(&emit(&p.state));
        }
        print!("{out}");
        return Ok(0);
    }
    let list = parse_qubit_list(lose.expect("clap requires --lose or --all"))?;
    let (projected, is_zero) = match list.as_slice() {
        [k] => {
            let p = lose_qubit(&state, *k)?;
            (p.state, p.is_zero)
        }
        _ => {
            let p = lose_qubit_set(&state, &list)?;
            let zero =
                p.max_modulus() < qubitloss::projection::ZERO_THRESHOLD * state.max_modulus();
            (p, zero)
        }
    };
    if is_zero && !cli.json {
        println!("#{}", zero_note(true));
    }
    print!("{}", emit(&projected));
    Ok(0)
}

fn zero_note(is_zero: bool) -> &'static str {
    if is_zero {
        " (projection is zero)"
    } else {
        ""
    }
}

fn measure_cmd(cli: &Cli, opts: DetectOptions, source: &Source) -> anyhow::Result<(Report, u8)> {
    let (state, input) = source.load()?;
    let m = measure_with(&state, opts)?;
    let mut report = Report::new("measure", cli.tol, cli.exhaustive);
    report.input = Some(input);
    report.projections = m.row.clone();
    report.measure = Some(MeasureSummary::from(&m));
    Ok((report, 0))
}

fn tables_cmd(cli: &Cli, tol: Tolerance) -> anyhow::Result<u8> {
    let tables = compute_tables(tol)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&tables)?);
    } else {
        print!("{}", render(&tables));
    }
    Ok(if tables.all_match() {
        0
    } else {
        EXIT_NOT_GENUINE
    })
}

fn oracle_cmd(
    cli: &Cli,
    opts: DetectOptions,
    source: &Source,
    compare: bool,
) -> anyhow::Result<(Report, u8)> {
    let (state, input) = source.load()?;
    let n = state.num_qubits();
    if n > MAX_ORACLE_QUBITS {
        bail!("the oracle handles at most {MAX_ORACLE_QUBITS} qubits, got {n}");
    }
    let cut = find_product_cut(&state, opts.tol)?;
    let genuine = cut.is_none();
    let mut summary = OracleSummary {
        genuine,
        product_cut: cut.map(|c| c.to_string()),
        detector: None,
        consistent: None,
        shortcut_certified: None,
    };
    if n == 3 {
        summary.shortcut_certified = Some(sufficient_3q(&state, opts.tol)?.certified);
    }
    let mut code = if genuine {
        EXIT_GENUINE
    } else {
        EXIT_NOT_GENUINE
    };
    if compare {
        let kind = detect_with(&state, opts)?.kind;
        let consistent = match kind {
            VerdictKind::CertifiedGenuine => genuine,
            VerdictKind::CertifiedNotGenuine => !genuine,
            VerdictKind::Inconclusive => true,
        };
        summary.detector = Some(kind);
        summary.consistent = Some(consistent);
        if !consistent {
            code = EXIT_INCONSISTENT;
        }
    }
    let mut report = Report::new("oracle", cli.tol, cli.exhaustive);
    report.input = Some(input);
    report.oracle = Some(summary);
    Ok((report, code))
}

fn selftest_cmd(
    cli: &Cli,
    opts: DetectOptions,
    count: usize,
    max_n: usize,
) -> anyhow::Result<(Report, u8)> {
    if !(3..=MAX_ORACLE_QUBITS).contains(&max_n) {
        bail!("--max-n must be between 3 and {MAX_ORACLE_QUBITS}");
    }
    let mut rng = seeded_rng(cli.seed);
    let mut summary = SelftestSummary {
        seed: cli.seed,
        products: 0,
        dense: 0,
        dense_certified: 0,
        violations: Vec::new(),
    };
    for n in 3..=max_n {
        for trial in 0..count {
            let (s, cut) = random_product_state(&mut rng, n)?;
            summary.products += 1;
            if detect_with(&s, opts)?.kind == VerdictKind::CertifiedGenuine {
                summary.violations.push(format!(
                    "n={n} trial={trial}: product across {cut} certified"
                ));
            }
            let genuine_projections = all_projections(&s)?
                .iter()
                .filter(|p| !p.is_zero)
                .map(|p| oracle_genuine(&p.state, opts.tol))
                .collect::<qubitloss::Result<Vec<bool>>>()?
                .into_iter()
                .filter(|&g| g)
                .count();
            if genuine_projections > 1 {
                summary.violations.push(format!(
                    "n={n} trial={trial}: product across {cut} has {genuine_projections} genuine projections"
                ));
            }

            let d = random_state(&mut rng, n)?.scale(rng.random_range(0.5..2.0).into());
            summary.dense += 1;
            let v = detect_with(&d, opts)?;
            if let Some(cert) = &v.certificate {
                summary.dense_certified += 1;
                if !cert.replay(&d, opts.tol)? || !oracle_genuine(&d, opts.tol)? {
                    summary
                        .violations
                        .push(format!("n={n} trial={trial}: dense certificate rejected"));
                }
            }
        }
    }
    let code = if summary.violations.is_empty() {
        0
    } else {
        EXIT_INCONSISTENT
    };
    let mut report = Report::new("selftest", cli.tol, cli.exhaustive);
    report.selftest = Some(summary);
    Ok((report, code))
}
