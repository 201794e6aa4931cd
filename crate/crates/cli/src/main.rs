use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use cke::bench::{
    run_bench, to_csv, to_table, AttackSelection, BenchConfig, BenchError, OutputFormat,
};
use cke::fixture::{fixture_text, load_platform, parse_platform, FixtureError, SMALL_FIXTURES};
use cke::report::{element_line, platform_report, transcript_report};
use cke::transcript_io::{peek_platform, read_transcript, write_transcript, TranscriptError};
use cke_core::attack::{attack_success, fba2_attack, fba_attack};
use cke_core::pc::{action_matrices, build_presentation};
use cke_core::platform::{GroupElement, PlatformSpec};
use cke_core::protocol::{run_protocol, ProtocolParams, PublicView, Transcript};

const EXIT_IO: u8 = 1;
const EXIT_FIXTURE: u8 = 3;
const EXIT_ATTACK: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "cke",
    version,
    about = "Commutator key establishment over U_F x O_F and field based attacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one protocol instance and print the public view.
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Write the transcript to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Leave secrets out of the emitted transcript.
        #[arg(long)]
        public_only: bool,
    },
    /// Attack a stored transcript or a freshly generated instance.
    Attack {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Transcript file written by `simulate --emit`.
        #[arg(long, conflicts_with = "platform")]
        transcript: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        attack: AttackSelection,
    },
    /// Success-rate benchmark over platforms, lengths and attacks.
    Bench(BenchArgs),
    /// Print the platform invariants and its pc-presentation.
    Platform {
        #[arg(long, default_value = "golden")]
        platform: String,
    },
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// Fixture name, alias or path.
    #[arg(long)]
    platform: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    n1: usize,
    #[arg(long, default_value_t = 20)]
    n2: usize,
    /// Private word length.
    #[arg(short = 'L', long = "length", default_value_t = 5)]
    length: usize,
    #[arg(long, default_value_t = ProtocolParams::DEFAULT_GEN_WORD_LENGTH)]
    gen_word_length: usize,
}

impl InstanceArgs {
    fn params(&self) -> ProtocolParams {
        ProtocolParams {
            n1: self.n1,
            n2: self.n2,
            private_len: self.length,
            gen_word_length: self.gen_word_length,
            seed: self.seed,
        }
    }

    fn platform_name(&self) -> &str {
        self.platform.as_deref().unwrap_or("golden")
    }
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Repeat for several platforms; defaults to the five fixtures of degree at most 11.
    #[arg(long)]
    platform: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    n1: usize,
    #[arg(long, default_value_t = 20)]
    n2: usize,
    /// Repeat for several lengths; defaults to 5 and 100.
    #[arg(short = 'L', long = "length")]
    length: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_enum, default_value = "both")]
    attack: AttackSelection,
    #[arg(long, default_value_t = ProtocolParams::DEFAULT_GEN_WORD_LENGTH)]
    gen_word_length: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Also write the output to this file.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, default_value_t = 600)]
    timeout_secs: u64,
    /// Blank the timing column so repeated runs are byte-identical.
    #[arg(long)]
    omit_timing: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FixtureError> for Failure {
    fn from(e: FixtureError) -> Self {
        let code = match e {
            FixtureError::Io { .. } => EXIT_IO,
            _ => EXIT_FIXTURE,
        };
        Failure::new(code, format!("fixture error: {e}"))
    }
}

impl From<TranscriptError> for Failure {
    fn from(e: TranscriptError) -> Self {
        match e {
            TranscriptError::Serialize(_) => Failure::new(EXIT_INTERNAL, e.to_string()),
            _ => Failure::new(EXIT_FIXTURE, format!("transcript error: {e}")),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Fixture(f) => f.into(),
            BenchError::Presentation(..) => Failure::new(EXIT_INTERNAL, e.to_string()),
            BenchError::NoTrials | BenchError::NoLengths => Failure::new(2, e.to_string()),
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn simulate(
    instance: &InstanceArgs,
    emit: Option<&PathBuf>,
    public_only: bool,
) -> Result<(), Failure> {
    let p = load_platform(instance.platform_name())?;
    let params = instance.params();
    let t = run_protocol(&p, &params).map_err(|e| match e {
        cke_core::ProtocolError::KeyMismatch => Failure::new(EXIT_INTERNAL, e.to_string()),
        _ => Failure::new(2, e.to_string()),
    })?;
    println!(
        "platform {} seed {} N1={} N2={} L={}",
        p.name(),
        params.seed,
        params.n1,
        params.n2,
        params.private_len
    );
    print!("{}", transcript_report(&t));
    if let Some(path) = emit {
        write_file(path, &write_transcript(&p, &params, &t, !public_only)?)?;
        println!("transcript written to {}", path.display());
    }
    Ok(())
}

fn attack(
    instance: &InstanceArgs,
    transcript: Option<&PathBuf>,
    selection: AttackSelection,
) -> Result<(), Failure> {
    let (p, view, truth): (
        PlatformSpec,
        PublicView<GroupElement>,
        Option<Transcript<GroupElement>>,
    ) = match transcript {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display()))
            })?;
            let name = peek_platform(&text)?;
            let p = load_platform(&name)?;
            let stored = read_transcript(&p, &text)?;
            (p, stored.view, stored.transcript)
        }
        None => {
            let p = load_platform(instance.platform_name())?;
            let t =
                run_protocol(&p, &instance.params()).map_err(|e| Failure::new(2, e.to_string()))?;
            (p, t.view.clone(), Some(t))
        }
    };
    println!("platform {}", p.name());
    let verdict = |success: Option<bool>| match success {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    };
    let mut failed = false;
    let mut fba_key = None;
    let mut fba2_key = None;

    for kind in selection.kinds() {
        match kind {
            cke::bench::AttackKind::Fba => {
                let start = Instant::now();
                match fba_attack(&view) {
                    Ok(out) => {
                        let success = truth.as_ref().map(|t| attack_success(&out.key, t));
                        failed |= success == Some(false);
                        println!("fba: key {}", element_line(&out.key));
                        println!(
                            "fba: success={} unique={} time_ms={:.1}",
                            verdict(success),
                            out.unique(),
                            start.elapsed().as_secs_f64() * 1e3
                        );
                        fba_key = Some(out.key);
                    }
                    Err(e) => {
                        println!("fba: error: {e}");
                        failed = true;
                    }
                }
            }
            cke::bench::AttackKind::Fba2 => {
                let pc = build_presentation(&p)
                    .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
                let dg = action_matrices(&pc);
                let map =
                    |v: &[GroupElement]| v.iter().map(|g| p.to_deduced(g)).collect::<Vec<_>>();
                let dview = PublicView {
                    alice_public: map(&view.alice_public),
                    bob_public: map(&view.bob_public),
                    alice_conjugates: map(&view.alice_conjugates),
                    bob_conjugates: map(&view.bob_conjugates),
                };
                let start = Instant::now();
                match fba2_attack(&dview, &dg) {
                    Ok(out) => {
                        let success = truth
                            .as_ref()
                            .map(|t| out.key == p.to_deduced(&t.shared_key));
                        failed |= success == Some(false);
                        println!("fba2: key {:?}", out.key);
                        println!(
                            "fba2: success={} unique={} time_ms={:.1}",
                            verdict(success),
                            out.unique(),
                            start.elapsed().as_secs_f64() * 1e3
                        );
                        fba2_key = Some(out.key);
                    }
                    Err(e) => {
                        println!("fba2: error: {e}");
                        failed = true;
                    }
                }
            }
        }
    }
    if let (Some(k1), Some(k2)) = (&fba_key, &fba2_key) {
        let agree = p.to_deduced(k1) == *k2;
        println!("fba and fba2 agree: {agree}");
        failed |= !agree;
    }
    if failed {
        Err(Failure::new(EXIT_ATTACK, "attack failed"))
    } else {
        Ok(())
    }
}

fn bench(args: &BenchArgs) -> Result<(), Failure> {
    let config = BenchConfig {
        platforms: if args.platform.is_empty() {
            SMALL_FIXTURES.iter().map(|s| s.to_string()).collect()
        } else {
            args.platform.clone()
        },
        n1: args.n1,
        n2: args.n2,
        lengths: if args.length.is_empty() {
            vec![5, 100]
        } else {
            args.length.clone()
        },
        trials: args.trials,
        base_seed: args.seed,
        attack: args.attack,
        gen_word_length: args.gen_word_length,
        timeout: Duration::from_secs(args.timeout_secs),
    };
    let rows = run_bench(&config)?;
    let text = match args.format {
        OutputFormat::Csv => to_csv(&rows, !args.omit_timing),
        OutputFormat::Table => to_table(&rows, !args.omit_timing),
    };
    print!("{text}");
    if let Some(path) = &args.emit {
        write_file(path, &text)?;
    }
    if rows.iter().any(|r| r.successes < r.trials) {
        return Err(Failure::new(EXIT_ATTACK, "some trials failed"));
    }
    Ok(())
}

fn platform(name: &str) -> Result<(), Failure> {
    let p = parse_platform(&fixture_text(name)?)?;
    let pc = build_presentation(&p).map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    print!("{}", platform_report(&p, &pc));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate {
            instance,
            emit,
            public_only,
        } => simulate(instance, emit.as_ref(), *public_only),
        Command::Attack {
            instance,
            transcript,
            attack: selection,
        } => attack(instance, transcript.as_ref(), *selection),
        Command::Bench(args) => bench(args),
        Command::Platform { platform: name } => platform(name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cke: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
