//! Fixtures, transcript files, benchmarks and reports for `cke-core`.

pub mod bench;
pub mod fixture;
pub mod report;
pub mod transcript_io;

pub use bench::{run_bench, AttackSelection, BenchConfig, BenchRow, OutputFormat};
pub use fixture::{load_platform, parse_platform, FixtureError, BUILTIN_FIXTURES};
