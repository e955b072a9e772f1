//! Configuration, job orchestration and report output for the `gwa-hh`
//! command.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use gwa_hh::algebra::AlgebraContext;
use gwa_hh::closedform::{
    compute_invariants, gldim, predict, truncated_dim, verdict, DimensionSpec, GlDim, Invariants, TruncatedDim, Verdict,
};
use gwa_hh::complexes::{build_hochschild_complex, identity_suite, Direction, IdentityReport, SuiteBounds};
use gwa_hh::engine::{hochschild_table, smodule_invariants, DimProfile, SModuleInvariants};
use gwa_hh::polyring::Polynomial;
use gwa_hh::scalars::QSpec;

pub const SCHEMA: &str = "gwa-hh/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gwa-hh", version, about = "Hochschild (co)homology of quantum generalized Weyl algebras")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Closed-form predictions for each (r, p) cell
    Predict(CommonArgs),
    /// Truncated computations (and S-module invariants when q is a root of unity)
    Compute(CommonArgs),
    /// Compare computations against predictions
    Verify(CommonArgs),
    /// Run the symbolic identity suite
    Identities(CommonArgs),
    /// Global dimension from the gcd criterion
    Gldim(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Defining polynomial a(h), e.g. "h^2-1" or "(h-1)^2*(h+2)"
    #[arg(long)]
    a: String,
    /// q: a rational such as 2 or -3/2, or zeta:N for a primitive N-th root of unity
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Weight range MIN..MAX
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true, value_parser = parse_weights)]
    weights: RangeInclusive<i64>,
    /// Degree range 0..P
    #[arg(long, default_value = "0..4", value_parser = parse_degrees)]
    degrees: RangeInclusive<usize>,
    /// Truncation levels D1,D2,... (ascending); defaults depend on e
    #[arg(long, value_delimiter = ',')]
    trunc: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = DirectionChoice::Both)]
    direction: DirectionChoice,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Parallel jobs; defaults to the available parallelism
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionChoice {
    Hom,
    Coh,
    Both,
}

impl DirectionChoice {
    pub fn directions(self) -> Vec<Direction> {
        match self {
            DirectionChoice::Hom => vec![Direction::Homology],
            DirectionChoice::Coh => vec![Direction::Cohomology],
            DirectionChoice::Both => vec![Direction::Homology, Direction::Cohomology],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Predict,
    Compute,
    Verify,
    Identities,
    Gldim,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub a: String,
    pub q: String,
    pub weights: RangeInclusive<i64>,
    pub degrees: RangeInclusive<usize>,
    pub truncations: Option<Vec<usize>>,
    pub direction: DirectionChoice,
    pub format: Format,
    pub jobs: Option<usize>,
}

fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(s: &str) -> Result<RangeInclusive<T>, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected MIN..MAX, got {s:?}"))?;
    let lo: T = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: T = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_weights(s: &str) -> Result<RangeInclusive<i64>, String> {
    parse_range(s)
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    parse_range(s)
}

pub fn parse_config<I, T>(args: I) -> Result<JobConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, c) = match cli.command {
        CommandArgs::Predict(c) => (Command::Predict, c),
        CommandArgs::Compute(c) => (Command::Compute, c),
        CommandArgs::Verify(c) => (Command::Verify, c),
        CommandArgs::Identities(c) => (Command::Identities, c),
        CommandArgs::Gldim(c) => (Command::Gldim, c),
    };
    if let Some(t) = &c.trunc {
        if t.is_empty() || t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ValueValidation,
                "truncation levels must be nonempty and strictly ascending\n",
            ));
        }
    }
    Ok(JobConfig {
        command,
        a: c.a,
        q: c.q,
        weights: c.weights,
        degrees: c.degrees,
        truncations: c.trunc,
        direction: c.direction,
        format: c.format,
        jobs: c.jobs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub a: String,
    pub q: String,
    pub e: Option<u32>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub invariants: Option<Invariants>,
    pub truncations: Vec<usize>,
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub r: i64,
    pub p: usize,
    pub direction: Direction,
    pub predicted: Option<DimensionSpec>,
    pub predicted_truncated: Option<Vec<TruncatedDim>>,
    pub computed: Option<DimProfile>,
    pub s_invariants: Option<SModuleInvariants>,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Command,
    pub metadata: Metadata,
    pub records: Vec<Record>,
    pub identities: Vec<IdentityReport>,
    pub gldim: Option<GlDim>,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn empty(command: Command, a: &str, q: &str) -> Self {
        Report {
            schema: SCHEMA.into(),
            command,
            metadata: Metadata {
                a: a.into(),
                q: q.into(),
                e: None,
                n: None,
                m: None,
                invariants: None,
                truncations: Vec::new(),
                timings_ms: BTreeMap::new(),
            },
            records: Vec::new(),
            identities: Vec::new(),
            gldim: None,
            diagnostics: Vec::new(),
        }
    }
}

pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Default levels: three spaced by 4 when `e = 0`, four spaced by `e`
/// otherwise, starting at the first admissible level `≥ 16`.
pub fn default_truncations(actx: &AlgebraContext, weights: &RangeInclusive<i64>) -> Vec<usize> {
    let r_abs = weights.start().unsigned_abs().max(weights.end().unsigned_abs()) as usize;
    let start = 16.max(2 * actx.n()).max(r_abs);
    match actx.e() as usize {
        0 => vec![start, start + 4, start + 8],
        e => {
            let s = start.div_ceil(e) * e;
            (0..4).map(|i| s + i * e).collect()
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn run(config: &JobConfig) -> Outcome {
    let total = Instant::now();
    let mut report = Report::empty(config.command, &config.a, &config.q);
    let a: Polynomial = match config.a.parse() {
        Ok(a) => a,
        Err(e) => {
            report.diagnostics.push(format!("cannot parse a: {e}"));
            return Outcome { report, exit_code: EXIT_USAGE };
        }
    };
    let q: QSpec = match config.q.parse() {
        Ok(q) => q,
        Err(e) => {
            report.diagnostics.push(format!("cannot parse q: {e}"));
            return Outcome { report, exit_code: EXIT_USAGE };
        }
    };
    report.metadata.a = a.to_string();
    report.metadata.q = q.to_string();
    let actx = match AlgebraContext::new(a, &q) {
        Ok(c) => c,
        Err(e) => {
            report.diagnostics.push(format!("hypothesis violated: {e}"));
            return Outcome { report, exit_code: EXIT_HYPOTHESIS };
        }
    };
    report.metadata.e = Some(actx.e());
    report.metadata.n = Some(actx.n());
    report.metadata.m = Some(gwa_hh::closedform::c_of(&actx).degree_i64() as usize);
    let mut hypothesis_violated = false;
    match compute_invariants(&actx) {
        Ok(inv) => report.metadata.invariants = Some(inv),
        Err(e) => {
            if matches!(config.command, Command::Predict | Command::Verify) {
                hypothesis_violated = true;
            }
            report.diagnostics.push(format!("closed forms unavailable: {e}"));
        }
    }

    let mut failed = false;
    match config.command {
        Command::Gldim => report.gldim = Some(gldim(&actx)),
        Command::Identities => {
            let t = Instant::now();
            let bounds = SuiteBounds {
                n_max: *config.degrees.end(),
                r_max: config.weights.start().abs().max(config.weights.end().abs()),
                ..SuiteBounds::default()
            };
            report.identities = with_pool(config.jobs, || identity_suite(&actx, bounds));
            failed = report.identities.iter().any(|r| !r.passed());
            report.metadata.timings_ms.insert("identities".into(), millis(t));
        }
        Command::Predict | Command::Compute | Command::Verify => {
            let levels = config.truncations.clone().unwrap_or_else(|| default_truncations(&actx, &config.weights));
            report.metadata.truncations = levels.clone();
            let want_prediction = config.command != Command::Compute;
            let want_computation = config.command != Command::Predict;
            let cells = build_records(&actx, config, &levels, want_prediction, want_computation, &mut report);
            report.records = cells;
            for rec in &report.records {
                if want_prediction && rec.predicted.is_none() {
                    hypothesis_violated = true;
                }
                if config.command == Command::Verify && rec.verdict != Some(Verdict::Match) {
                    failed = true;
                }
            }
        }
    }
    report.metadata.timings_ms.insert("total".into(), millis(total));
    let exit_code = if hypothesis_violated {
        EXIT_HYPOTHESIS
    } else if failed {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    Outcome { report, exit_code }
}

fn build_records(
    actx: &AlgebraContext,
    config: &JobConfig,
    levels: &[usize],
    want_prediction: bool,
    want_computation: bool,
    report: &mut Report,
) -> Vec<Record> {
    let mut records = Vec::new();
    let p_max = *config.degrees.end();
    let p_min = *config.degrees.start();
    for dir in config.direction.directions() {
        for r in config.weights.clone() {
            for p in p_min..=p_max {
                let mut rec = Record {
                    r,
                    p,
                    direction: dir,
                    predicted: None,
                    predicted_truncated: None,
                    computed: None,
                    s_invariants: None,
                    verdict: None,
                    error: None,
                };
                if want_prediction {
                    match predict(actx, dir, p, r) {
                        Ok(spec) => {
                            rec.predicted_truncated = Some(levels.iter().map(|d| truncated_dim(&spec, *d)).collect());
                            rec.predicted = Some(spec);
                        }
                        Err(e) => report.diagnostics.push(format!("{dir} r={r} p={p}: no prediction: {e}")),
                    }
                }
                records.push(rec);
            }
        }
    }
    if !want_computation {
        return records;
    }
    let t = Instant::now();
    let weights = config.weights.clone();
    let root = actx.e() > 0;
    let computed: Vec<(Direction, Vec<gwa_hh::engine::TableCell>, Vec<Option<SModuleInvariants>>)> =
        with_pool(config.jobs, || {
            config
                .direction
                .directions()
                .into_iter()
                .map(|dir| {
                    let table = hochschild_table(actx, weights.clone(), p_max, levels, dir);
                    let snf = table
                        .par_iter()
                        .map(|cell| {
                            (root && cell.p >= p_min).then(|| {
                                smodule_invariants(&build_hochschild_complex(actx, cell.r, cell.p + 1, dir), cell.p)
                                    .ok()
                            })?
                        })
                        .collect();
                    (dir, table, snf)
                })
                .collect()
        });
    report.metadata.timings_ms.insert("compute".into(), millis(t));
    let mut by_key = BTreeMap::new();
    for (dir, table, snf) in computed {
        for (cell, inv) in table.into_iter().zip(snf) {
            by_key.insert((dir, cell.r, cell.p), (cell.profile, inv));
        }
    }
    for rec in &mut records {
        let Some((profile, inv)) = by_key.remove(&(rec.direction, rec.r, rec.p)) else {
            continue;
        };
        rec.s_invariants = inv;
        match profile {
            Ok(prof) => {
                rec.verdict = rec.predicted.as_ref().map(|spec| verdict(spec, &prof));
                rec.computed = Some(prof);
            }
            Err(e) => {
                rec.error = Some(e.to_string());
                if rec.predicted.is_some() {
                    rec.verdict = Some(Verdict::Inconclusive);
                }
            }
        }
    }
    records
}

#[derive(Serialize)]
struct CsvRow {
    r: i64,
    p: usize,
    direction: String,
    predicted: String,
    computed: String,
    verdict: String,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => emit_csv(report),
    }
}

fn emit_csv(report: &Report) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    match report.command {
        Command::Gldim => {
            w.write_record(["a", "q", "gldim"]).unwrap();
            let g = report.gldim.map(|g| g.to_string()).unwrap_or_default();
            w.write_record([report.metadata.a.as_str(), report.metadata.q.as_str(), g.as_str()]).unwrap();
        }
        Command::Identities => {
            w.write_record(["suite", "checks", "failures"]).unwrap();
            for rep in &report.identities {
                w.write_record([rep.name.clone(), rep.checks.to_string(), rep.failures.len().to_string()]).unwrap();
            }
        }
        _ => {
            // the header is written even when there are no rows
            w.write_record(["r", "p", "direction", "predicted", "computed", "verdict"]).unwrap();
            for rec in &report.records {
                let computed = match (&rec.computed, &rec.error) {
                    (Some(c), _) => c.samples.values().map(|v| v.to_string()).collect::<Vec<_>>().join(";"),
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => String::new(),
                };
                w.serialize(CsvRow {
                    r: rec.r,
                    p: rec.p,
                    direction: rec.direction.to_string(),
                    predicted: rec.predicted.as_ref().map(|s| s.to_string()).unwrap_or_default(),
                    computed,
                    verdict: rec.verdict.map(|v| v.to_string()).unwrap_or_default(),
                })
                .unwrap();
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<JobConfig, clap::Error> {
        parse_config(std::iter::once("gwa-hh").chain(args.iter().cloned()))
    }

    #[test]
    fn defaults_filled() {
        let c = cfg(&["verify", "--a", "h^2-1", "--q", "2"]).unwrap();
        assert_eq!(c.command, Command::Verify);
        assert_eq!(c.weights, -3..=3);
        assert_eq!(c.degrees, 0..=4);
        assert_eq!(c.direction, DirectionChoice::Both);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.truncations, None);
    }

    #[test]
    fn flag_values() {
        let c = cfg(&["compute", "--a", "h^2+1", "--q", "zeta:5", "--weights", "-2..1", "--trunc", "10,12,14"]).unwrap();
        assert_eq!(c.q.parse::<QSpec>().unwrap(), QSpec::RootOfUnity(5));
        assert_eq!(c.weights, -2..=1);
        assert_eq!(c.truncations, Some(vec![10, 12, 14]));
        assert!(cfg(&["compute", "--a", "h^2", "--q", "2", "--weights", "3..1"]).is_err());
        assert!(cfg(&["compute", "--a", "h^2", "--q", "2", "--trunc", "20,16"]).is_err());
        assert!(cfg(&["compute", "--a", "h^2", "--q", "2", "--format", "xml"]).is_err());
        let c = cfg(&["gldim", "--a", "h^2-1", "--q", "-1/2"]).unwrap();
        assert_eq!(c.q, "-1/2");
    }

    #[test]
    fn default_levels() {
        let q2: QSpec = "2".parse().unwrap();
        let c = AlgebraContext::new("h^2-1".parse().unwrap(), &q2).unwrap();
        assert_eq!(default_truncations(&c, &(-3..=3)), vec![16, 20, 24]);
        let z3: QSpec = "zeta:3".parse().unwrap();
        let c = AlgebraContext::new("h^3+h+1".parse().unwrap(), &z3).unwrap();
        assert_eq!(default_truncations(&c, &(-3..=3)), vec![18, 21, 24, 27]);
    }

    #[test]
    fn empty_report_round_trip() {
        let r = Report::empty(Command::Verify, "h^2-1", "2");
        let text = emit(&r, Format::Json);
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(emit(&r, Format::Csv).starts_with("r,p,direction,predicted,computed,verdict"));
    }
}
