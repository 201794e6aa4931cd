//! Seeded success-rate benchmarks.
//!
//! Trial `i` uses seed `base_seed + i`. Trials run on the rayon pool; each is
//! additionally isolated in its own thread so a per-trial timeout can be
//! enforced. Rows are emitted in configuration order, independent of the
//! order in which trials finish.

use std::fmt::{self, Write as _};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::{Duration, Instant};

use cke_core::attack::{attack_success, fba2_attack, fba_attack};
use cke_core::pc::{action_matrices, build_presentation, DeducedGroup, PcError};
use cke_core::platform::PlatformSpec;
use cke_core::protocol::{run_protocol, ProtocolParams};
use rayon::prelude::*;
use thiserror::Error;

use crate::fixture::{load_platform, FixtureError};

pub const CSV_HEADER: [&str; 9] = [
    "platform",
    "hirsch",
    "attack",
    "L",
    "trials",
    "successes",
    "rate",
    "mean_ms",
    "rank_deficient",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttackKind {
    Fba,
    Fba2,
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackKind::Fba => "fba",
            AttackKind::Fba2 => "fba2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AttackSelection {
    Fba,
    Fba2,
    Both,
}

impl AttackSelection {
    pub fn kinds(self) -> &'static [AttackKind] {
        match self {
            AttackSelection::Fba => &[AttackKind::Fba],
            AttackSelection::Fba2 => &[AttackKind::Fba2],
            AttackSelection::Both => &[AttackKind::Fba, AttackKind::Fba2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    /// Fixture names, aliases or paths.
    pub platforms: Vec<String>,
    pub n1: usize,
    pub n2: usize,
    pub lengths: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub attack: AttackSelection,
    pub gen_word_length: usize,
    pub timeout: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            platforms: crate::fixture::SMALL_FIXTURES
                .iter()
                .map(|s| s.to_string())
                .collect(),
            n1: 20,
            n2: 20,
            lengths: vec![5, 100],
            trials: 100,
            base_seed: 0,
            attack: AttackSelection::Both,
            gen_word_length: ProtocolParams::DEFAULT_GEN_WORD_LENGTH,
            timeout: Duration::from_secs(600),
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no private word lengths given")]
    NoLengths,
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("platform `{0}`: {1}")]
    Presentation(String, PcError),
}

/// How one trial ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    /// The recovered key equals the shared key.
    Success {
        unique: bool,
    },
    /// An attack returned a key that differs from the shared key.
    WrongKey {
        unique: bool,
    },
    /// The protocol or the attack returned an error.
    Error(String),
    Timeout,
}

impl TrialOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, TrialOutcome::Success { .. })
    }

    pub fn rank_deficient(&self) -> bool {
        matches!(
            self,
            TrialOutcome::Success { unique: false } | TrialOutcome::WrongKey { unique: false }
        )
    }

    pub fn tag(&self) -> String {
        match self {
            TrialOutcome::Success { .. } => "success".into(),
            TrialOutcome::WrongKey { .. } => "wrong-key".into(),
            TrialOutcome::Error(e) => format!("error: {e}"),
            TrialOutcome::Timeout => "timeout".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub outcome: TrialOutcome,
    /// Attack time only; `None` on timeout or protocol error.
    pub attack_time: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub platform: String,
    pub hirsch: usize,
    pub expected_hirsch: Option<usize>,
    pub attack: AttackKind,
    pub l: usize,
    pub trials: usize,
    pub successes: usize,
    pub rank_deficient: usize,
    pub mean_ms: f64,
    pub total_ms: f64,
    /// Every trial that was not a success, in seed order.
    pub failures: Vec<(u64, String)>,
}

impl BenchRow {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn timeouts(&self) -> usize {
        self.failures.iter().filter(|(_, t)| t == "timeout").count()
    }
}

/// A platform with its deduced group, shared across trial threads.
#[derive(Debug, Clone)]
pub struct PreparedPlatform {
    pub spec: Arc<PlatformSpec>,
    pub deduced: Arc<DeducedGroup>,
}

impl PreparedPlatform {
    pub fn new(spec: PlatformSpec) -> Result<Self, BenchError> {
        let pc = build_presentation(&spec)
            .map_err(|e| BenchError::Presentation(spec.name().to_owned(), e))?;
        Ok(PreparedPlatform {
            deduced: Arc::new(action_matrices(&pc)),
            spec: Arc::new(spec),
        })
    }
}

/// Runs one protocol instance and one attack on it, without a timeout.
pub fn run_trial(
    platform: &PreparedPlatform,
    kind: AttackKind,
    params: &ProtocolParams,
) -> (TrialOutcome, Option<Duration>) {
    match kind {
        AttackKind::Fba => {
            let t = match run_protocol(platform.spec.as_ref(), params) {
                Ok(t) => t,
                Err(e) => return (TrialOutcome::Error(e.to_string()), None),
            };
            let view = t.public_view();
            let start = Instant::now();
            let result = fba_attack(&view);
            let elapsed = start.elapsed();
            let outcome = match result {
                Ok(out) if attack_success(&out.key, &t) => TrialOutcome::Success {
                    unique: out.unique(),
                },
                Ok(out) => TrialOutcome::WrongKey {
                    unique: out.unique(),
                },
                Err(e) => TrialOutcome::Error(e.to_string()),
            };
            (outcome, Some(elapsed))
        }
        AttackKind::Fba2 => {
            let dg = platform.deduced.as_ref();
            let t = match run_protocol(dg, params) {
                Ok(t) => t,
                Err(e) => return (TrialOutcome::Error(e.to_string()), None),
            };
            let view = t.public_view();
            let start = Instant::now();
            let result = fba2_attack(&view, dg);
            let elapsed = start.elapsed();
            let outcome = match result {
                Ok(out) if attack_success(&out.key, &t) => TrialOutcome::Success {
                    unique: out.unique(),
                },
                Ok(out) => TrialOutcome::WrongKey {
                    unique: out.unique(),
                },
                Err(e) => TrialOutcome::Error(e.to_string()),
            };
            (outcome, Some(elapsed))
        }
    }
}

/// [`run_trial`] in a separate thread, abandoned after `timeout`.
pub fn run_trial_with_timeout(
    platform: &PreparedPlatform,
    kind: AttackKind,
    params: ProtocolParams,
    timeout: Duration,
) -> TrialRecord {
    let (tx, rx) = mpsc::channel();
    let p = platform.clone();
    let spawned = thread::Builder::new()
        .name(format!("trial-{}", params.seed))
        .spawn(move || {
            // The receiver may be gone after a timeout.
            let _ = tx.send(run_trial(&p, kind, &params));
        });
    if let Err(e) = spawned {
        return TrialRecord {
            seed: params.seed,
            outcome: TrialOutcome::Error(format!("cannot spawn trial thread: {e}")),
            attack_time: None,
        };
    }
    match rx.recv_timeout(timeout) {
        Ok((outcome, attack_time)) => TrialRecord {
            seed: params.seed,
            outcome,
            attack_time,
        },
        Err(mpsc::RecvTimeoutError::Timeout) => TrialRecord {
            seed: params.seed,
            outcome: TrialOutcome::Timeout,
            attack_time: None,
        },
        Err(mpsc::RecvTimeoutError::Disconnected) => TrialRecord {
            seed: params.seed,
            outcome: TrialOutcome::Error("trial thread panicked".into()),
            attack_time: None,
        },
    }
}

pub fn trial_params(config: &BenchConfig, l: usize, index: usize) -> ProtocolParams {
    ProtocolParams {
        n1: config.n1,
        n2: config.n2,
        private_len: l,
        gen_word_length: config.gen_word_length,
        seed: config.base_seed.wrapping_add(index as u64),
    }
}

pub fn bench_row(
    platform: &PreparedPlatform,
    kind: AttackKind,
    l: usize,
    config: &BenchConfig,
) -> BenchRow {
    let mut records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial_with_timeout(platform, kind, trial_params(config, l, i), config.timeout))
        .collect();
    records.sort_by_key(|r| r.seed);
    summarize(&platform.spec, kind, l, &records)
}

pub fn summarize(
    spec: &PlatformSpec,
    kind: AttackKind,
    l: usize,
    records: &[TrialRecord],
) -> BenchRow {
    let times: Vec<f64> = records
        .iter()
        .filter_map(|r| r.attack_time)
        .map(|d| d.as_secs_f64() * 1e3)
        .collect();
    let total_ms: f64 = times.iter().sum();
    BenchRow {
        platform: spec.name().to_owned(),
        hirsch: spec.hirsch_length(),
        expected_hirsch: spec.expected_hirsch_length(),
        attack: kind,
        l,
        trials: records.len(),
        successes: records.iter().filter(|r| r.outcome.is_success()).count(),
        rank_deficient: records
            .iter()
            .filter(|r| r.outcome.rank_deficient())
            .count(),
        mean_ms: if times.is_empty() {
            0.0
        } else {
            total_ms / times.len() as f64
        },
        total_ms,
        failures: records
            .iter()
            .filter(|r| !r.outcome.is_success())
            .map(|r| (r.seed, r.outcome.tag()))
            .collect(),
    }
}

/// One row per `(platform, L, attack)` in configuration order.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if config.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    if config.lengths.is_empty() {
        return Err(BenchError::NoLengths);
    }
    let platforms = config
        .platforms
        .iter()
        .map(|name| PreparedPlatform::new(load_platform(name)?))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for p in &platforms {
        for &l in &config.lengths {
            for &kind in config.attack.kinds() {
                rows.push(bench_row(p, kind, l, config));
            }
        }
    }
    Ok(rows)
}

/// CSV with the fixed header. With `timings = false` the `mean_ms` column is
/// left empty so output is byte-identical across runs.
pub fn to_csv(rows: &[BenchRow], timings: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.platform.clone(),
            r.hirsch.to_string(),
            r.attack.to_string(),
            r.l.to_string(),
            r.trials.to_string(),
            r.successes.to_string(),
            format!("{:.4}", r.rate()),
            if timings {
                format!("{:.3}", r.mean_ms)
            } else {
                String::new()
            },
            r.rank_deficient.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

/// Published reference figures for one platform. Attack times are for
/// `L = 5` and `L = 100`; every FBA/FBA2 rate was 100%.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub platform: &'static str,
    pub hirsch: usize,
    pub lba_time: &'static str,
    pub lba_rate: &'static str,
    pub fba: [&'static str; 2],
    pub fba2: [&'static str; 2],
}

pub const REFERENCE: &[ReferenceRow] = &[
    ReferenceRow {
        platform: "x2-x-1",
        hirsch: 3,
        lba_time: "0.20 h",
        lba_rate: "100%",
        fba: ["2.4 s", "2.8 s"],
        fba2: ["4.3 s", "3.9 s"],
    },
    ReferenceRow {
        platform: "x5-x3-1",
        hirsch: 7,
        lba_time: "76.87 h",
        lba_rate: "35%",
        fba: ["3.4 s", "5.3 s"],
        fba2: ["4.9 s", "6.8 s"],
    },
    ReferenceRow {
        platform: "x7-x3-1",
        hirsch: 10,
        lba_time: "94.43 h",
        lba_rate: "8%",
        fba: ["5.2 s", "9.7 s"],
        fba2: ["8.1 s", "10.1 s"],
    },
    ReferenceRow {
        platform: "x9-7x3-1",
        hirsch: 14,
        lba_time: "95.18 h",
        lba_rate: "5%",
        fba: ["23.1 s", "57.7 s"],
        fba2: ["34.0 s", "47.7 s"],
    },
    ReferenceRow {
        platform: "x11-x3-1",
        hirsch: 16,
        lba_time: "95.05 h",
        lba_rate: "5%",
        fba: ["15.3 s", "29.5 s"],
        fba2: ["20.9 s", "26.4 s"],
    },
    ReferenceRow {
        platform: "x15-x-2",
        hirsch: 22,
        lba_time: "--",
        lba_rate: "--",
        fba: ["694.8 s", "607.4 s"],
        fba2: ["528.2 s", "761.3 s"],
    },
    ReferenceRow {
        platform: "x20-x-1",
        hirsch: 30,
        lba_time: "--",
        lba_rate: "--",
        fba: ["208.5 s", "192.8 s"],
        fba2: ["164.6 s", "208.2 s"],
    },
];

fn reference_for(row: &BenchRow) -> Option<(String, &'static str)> {
    let r = REFERENCE.iter().find(|r| r.platform == row.platform)?;
    let times = match row.attack {
        AttackKind::Fba => r.fba,
        AttackKind::Fba2 => r.fba2,
    };
    let time = match row.l {
        5 => times[0],
        100 => times[1],
        _ => "--",
    };
    Some((format!("LBA {} {}", r.lba_time, r.lba_rate), time))
}

/// Plain text table. Reference columns are static published figures and are
/// not comparable across hardware.
pub fn to_table(rows: &[BenchRow], timings: bool) -> String {
    let mut out = String::new();
    let header = [
        "platform", "h", "h_exp", "attack", "L", "trials", "succ", "rate", "mean_ms", "rank_def",
        "ref_time", "ref_lba",
    ];
    let body: Vec<[String; 12]> = rows
        .iter()
        .map(|r| {
            let (lba, time) = reference_for(r).unwrap_or_else(|| ("--".into(), "--"));
            [
                r.platform.clone(),
                r.hirsch.to_string(),
                r.expected_hirsch.map_or("-".into(), |h| h.to_string()),
                r.attack.to_string(),
                r.l.to_string(),
                r.trials.to_string(),
                r.successes.to_string(),
                format!("{:.1}%", 100.0 * r.rate()),
                if timings {
                    format!("{:.1}", r.mean_ms)
                } else {
                    "-".into()
                },
                r.rank_deficient.to_string(),
                time.to_owned(),
                lba,
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied(), &mut out);
    for row in &body {
        line(&mut row.iter().map(String::as_str), &mut out);
    }
    for r in rows {
        for (seed, tag) in &r.failures {
            let _ = writeln!(
                out,
                "# {} {} L={} seed {}: {}",
                r.platform, r.attack, r.l, seed, tag
            );
        }
        if let Some(h) = r.expected_hirsch.filter(|&h| h > r.hirsch) {
            let _ = writeln!(
                out,
                "# {}: unit subgroup smaller than expected (h = {} < {})",
                r.platform, r.hirsch, h
            );
        }
    }
    out
}
