use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qdiscord::batch::run_batch;
use qdiscord::channels::{apply_local, LocalProductMap};
use qdiscord::correlations::DEFAULT_RANK_TOL;
use qdiscord::error::{Error, Result};
use qdiscord::family::{random_member, SigmaFamilySpec};
use qdiscord::io::{format_state, read_state_file, resolve_channel, write_state_file};
use qdiscord::named::NamedState;
use qdiscord::random::rng_from_seed;
use qdiscord::report::{analyze, AnalysisOptions, ChannelDelta, DEFAULT_DISC_TOL};
use qdiscord::reproduce;
use qdiscord::sphere::OptimizerSettings;
use qdiscord::state::{validate_density, DensityMatrix, Subsystem, Tolerances};

#[derive(Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Two-qubit discord, correlation rank and RSP fidelity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Side on which the discord measurement is made for the verdict.
    #[arg(long, value_enum, default_value = "B")]
    side: Side,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    #[arg(long, default_value_t = DEFAULT_DISC_TOL)]
    disc_tol: f64,
    /// Coarse optimizer grid, polar x azimuthal.
    #[arg(long, value_parser = parse_grid, default_value = "32x64")]
    grid: (usize, usize),
}

impl Common {
    fn options(&self) -> Result<AnalysisOptions> {
        let optimizer = OptimizerSettings {
            coarse_grid: self.grid,
            ..OptimizerSettings::default()
        };
        optimizer.validate()?;
        Ok(AnalysisOptions {
            side: self.side.into(),
            rank_tol: self.rank_tol,
            disc_tol: self.disc_tol,
            optimizer,
            state: Tolerances::default(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one state.
    Analyze {
        /// State file, or one of the built-in names (rho_cl, rho_tilde, sigma, ...).
        state: String,
        #[command(flatten)]
        common: Common,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reference-example suite.
    Reproduce {
        /// Print check names without running them.
        #[arg(long)]
        list: bool,
        /// NAME=VALUE overrides one check's tolerance; a bare VALUE overrides all.
        #[arg(long = "tol")]
        tol: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Apply a local product channel and compare before/after.
    Channel {
        state: String,
        /// Channel on A: a channel file or `name[:param]`.
        #[arg(long = "a", default_value = "identity")]
        channel_a: String,
        /// Channel on B.
        #[arg(long = "b", default_value = "identity")]
        channel_b: String,
        #[command(flatten)]
        common: Common,
        /// Output state file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and analyze a member of the rank-one-tensor family.
    SigmaFamily {
        /// Diagonal r11,r22,r33,r44.
        #[arg(long, value_delimiter = ',', required_unless_present = "random")]
        diag: Option<Vec<f64>>,
        /// Common off-diagonal value.
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Draw a random feasible member instead.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded sweep over random states.
    Batch {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=4))]
        rank: u64,
        /// Apply this channel to both sides of every state.
        #[arg(long)]
        channel: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got `{s}`"))?;
    let n = a.trim().parse().map_err(|e| format!("{e}"))?;
    let m = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((n, m))
}

fn load_state(arg: &str) -> Result<DensityMatrix> {
    let path = Path::new(arg);
    if path.is_file() {
        return validate_density(&read_state_file(path)?, &Tolerances::default());
    }
    match arg.parse::<NamedState>() {
        Ok(n) => Ok(qdiscord::named::named_state(n)),
        Err(_) => Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no state file or built-in state named `{arg}`"),
        ))),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(())
}

fn structured<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (names, value): (Vec<String>, &str) = match item.split_once('=') {
            Some((n, v)) => (vec![n.to_string()], v),
            None => (reproduce::checks().iter().map(|c| c.name.to_string()).collect(), item),
        };
        let v: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad tolerance `{item}`")))?;
        for n in names {
            map.insert(n, v);
        }
    }
    Ok(map)
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Analyze { state, common, out } => {
            let rho = load_state(&state)?;
            let report = analyze(&rho, &common.options()?)?;
            let text = match common.format {
                Format::Table => report.to_table(),
                Format::Structured => structured(&report),
            };
            emit(&text, out.as_deref())?;
        }
        Command::Reproduce { list, tol, format } => {
            if list {
                let names: String = reproduce::checks().iter().map(|c| format!("{}\n", c.name)).collect();
                emit(&names, None)?;
                return Ok(ExitCode::SUCCESS);
            }
            let rows = reproduce::run(&parse_overrides(&tol)?)?;
            let text = match format {
                Format::Table => reproduce::format_rows(&rows),
                Format::Structured => structured(&rows),
            };
            emit(&text, None)?;
            if rows.iter().any(|r| !r.pass) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Channel {
            state,
            channel_a,
            channel_b,
            common,
            out,
        } => {
            let opts = common.options()?;
            let rho = load_state(&state)?;
            let map = LocalProductMap::new(resolve_channel(&channel_a)?, resolve_channel(&channel_b)?);
            let after = apply_local(&rho, &map)?;
            let delta = ChannelDelta::new(
                analyze(&rho, &opts)?,
                analyze(&after, &opts)?,
                map.a.validate_cptp().cptp,
                map.b.validate_cptp().cptp,
            );
            if let Some(p) = &out {
                write_state_file(p, after.matrix())?;
            }
            let text = match common.format {
                Format::Table => {
                    let mut t = String::new();
                    if out.is_none() {
                        t.push_str("output state\n");
                        t.push_str(&format_state(after.matrix()));
                    }
                    t + &delta.to_table()
                }
                Format::Structured => {
                    let state: serde_json::Value =
                        serde_json::from_str(&format_state(after.matrix())).expect("state text is JSON");
                    structured(&serde_json::json!({ "output_state": state, "delta": delta }))
                }
            };
            emit(&text, None)?;
        }
        Command::SigmaFamily {
            diag,
            c,
            random,
            seed,
            common,
            out,
        } => {
            let (spec, rho) = if random {
                random_member(&mut rng_from_seed(seed))
            } else {
                let d = diag.expect("clap requires --diag without --random");
                let d: [f64; 4] = d
                    .try_into()
                    .map_err(|v: Vec<f64>| Error::Parse(format!("--diag needs 4 values, got {}", v.len())))?;
                let spec = SigmaFamilySpec::new(d, c)?;
                (spec, spec.build()?)
            };
            let report = analyze(&rho, &common.options()?)?;
            if report.l_t > 1 || report.rsp.fidelity.abs() > 1e-8 {
                return Err(Error::Consistency(format!(
                    "family member has L_T = {} and F = {:e}",
                    report.l_t, report.rsp.fidelity
                )));
            }
            if let Some(p) = &out {
                write_state_file(p, rho.matrix())?;
            }
            let text = match common.format {
                Format::Table => format!(
                    "{:<24}diag {:?}, c {}\n{}",
                    "family member",
                    spec.diag,
                    spec.c,
                    report.to_table()
                ),
                Format::Structured => structured(&serde_json::json!({ "spec": spec, "report": report })),
            };
            emit(&text, None)?;
        }
        Command::Batch {
            seed,
            count,
            rank,
            channel,
            common,
        } => {
            let opts = common.options()?;
            let map = channel
                .as_deref()
                .map(resolve_channel)
                .transpose()?
                .map(LocalProductMap::both);
            let out = run_batch(seed, count as usize, rank as usize, map.as_ref(), &opts)?;
            let text = match common.format {
                Format::Table => out.to_table(),
                Format::Structured => structured(&out),
            };
            emit(&text, None)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_validation() => 2,
        Error::NonFinite => 2,
        Error::Parse(_)
        | Error::Io(_)
        | Error::Shape(_)
        | Error::UnknownName(_)
        | Error::EmptyChannel
        | Error::ParamOutOfRange { .. }
        | Error::InvalidSettings(_) => 3,
        Error::Annihilated(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
