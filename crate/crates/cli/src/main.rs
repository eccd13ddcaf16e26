use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use charring::chartab::{dixon_table, CharacterTable, TableFile};
use charring::groups;
use charring::modring::{build_mod_ring_with, InvariantReport, Status, Verification};
use charring::numtheory::prime_factors;
use charring::permgroup::PermutationGroup;
use charring::report::{overall_status, report_text, reproduce, verify_group, RowOutcome, Suite, TableSource};
use charring::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "charring", version, about = "Modular character rings of finite groups")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a character table.
    Table {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Invariant report per prime.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        /// Primes (default: all prime divisors of the order).
        #[arg(long = "p", value_delimiter = ',')]
        primes: Vec<u64>,
        /// Also compute Ext^1..Ext^N for every block.
        #[arg(long)]
        ext: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Invariant report with the full set of checks.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Primes (default: all prime divisors of the order).
        #[arg(long = "p", value_delimiter = ',')]
        primes: Vec<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Recompute a reference table and diff it row by row.
    Reproduce {
        /// One of small, weyl, psl, alternating.
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Directory of table files named `<group>.json`, used before building from scratch.
        #[arg(long)]
        tables: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a saved manifest.
    Replay {
        /// Manifest written by `--save-manifest`.
        manifest: PathBuf,
        /// Override the manifest's expected-output file.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Builtin group name, e.g. S4, A5, PSL(2,7), M11.
    group: Option<String>,
    /// Generators file: the degree on the first line, then one permutation per line.
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Character table file.
    #[arg(long)]
    table: Option<PathBuf>,
}

impl InputArgs {
    fn source(self) -> GroupSource {
        match (self.group, self.generators, self.table) {
            (Some(name), _, _) => GroupSource::Builtin(name),
            (_, Some(path), _) => GroupSource::Generators(path),
            (_, _, Some(path)) => GroupSource::Table(path),
            _ => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Table cache directory, keyed by a hash of the generators.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare the output with this file; a difference exits with status 1.
    #[arg(long)]
    expect: Option<PathBuf>,
    /// Save the run as a manifest for `replay`.
    #[arg(long)]
    save_manifest: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CommandKind {
    Table,
    Invariants,
    Verify,
    Reproduce,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GroupSource {
    Builtin(String),
    Generators(PathBuf),
    Table(PathBuf),
}

/// Everything needed to rerun a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunManifest {
    command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    input: Option<GroupSource>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    primes: Vec<u64>,
    #[serde(default)]
    seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cache: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tables: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ext: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expect: Option<PathBuf>,
}

impl RunManifest {
    fn new(command: CommandKind, common: &CommonArgs) -> Self {
        Self {
            command,
            input: None,
            primes: Vec::new(),
            seed: common.seed,
            format: common.format,
            output: common.out.clone(),
            cache: common.cache.clone(),
            suite: None,
            tables: None,
            ext: None,
            expect: common.expect.clone(),
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            CommandKind::Table => Format::Json,
            _ => Format::Text,
        })
    }
}

struct Output {
    text: String,
    status: Status,
}

struct Loaded {
    table: CharacterTable,
    group: Option<PermutationGroup>,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn cache_key(group: &PermutationGroup) -> String {
    let digest = Sha256::digest(group.to_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn table_with_cache(group: &PermutationGroup, name: &str, cache: Option<&Path>) -> Result<CharacterTable, Error> {
    let Some(dir) = cache else {
        return dixon_table(group, name);
    };
    let path = dir.join(format!("{}.json", cache_key(group)));
    if path.exists() {
        let file: TableFile =
            serde_json::from_str(&read(&path)?).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        let mut table = CharacterTable::from_file(file, Some(group.degree()))?;
        table.name = name.to_string();
        return Ok(table);
    }
    let table = dixon_table(group, name)?;
    write(&path, &table.to_json())?;
    Ok(table)
}

fn load(source: &GroupSource, cache: Option<&Path>) -> Result<Loaded, Error> {
    match source {
        GroupSource::Builtin(name) => {
            let group = groups::builtin(name)?;
            let table = table_with_cache(&group, name, cache)?;
            Ok(Loaded {
                table,
                group: Some(group),
            })
        }
        GroupSource::Generators(path) => {
            let group = PermutationGroup::from_text(&read(path)?)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let table = table_with_cache(&group, &name, cache)?;
            Ok(Loaded {
                table,
                group: Some(group),
            })
        }
        GroupSource::Table(path) => Ok(Loaded {
            table: CharacterTable::from_json(&read(path)?)?,
            group: None,
        }),
    }
}

/// A per-prime result: a report, or the reason it was skipped.
#[derive(Serialize)]
#[serde(untagged)]
enum PrimeEntry {
    Report(Box<InvariantReport>),
    Skipped { p: u64, status: Status, details: String },
}

impl PrimeEntry {
    fn status(&self) -> Status {
        match self {
            PrimeEntry::Report(r) => overall_status(r.verifications.iter().map(|v| &v.status)),
            PrimeEntry::Skipped { status, .. } => *status,
        }
    }

    fn text(&self, group: &str) -> String {
        match self {
            PrimeEntry::Report(r) => report_text(r),
            PrimeEntry::Skipped { p, status, details } => {
                let s = if *status == Status::Skip { "skip" } else { "FAIL" };
                format!("{group} p={p}\n  [{s}] {details}\n")
            }
        }
    }
}

fn per_prime(
    loaded: &Loaded,
    manifest: &RunManifest,
    f: impl Fn(&Loaded, u64) -> Result<InvariantReport, Error> + Sync,
) -> Result<Output, Error> {
    let primes = if manifest.primes.is_empty() {
        prime_factors(loaded.table.order)
    } else {
        manifest.primes.clone()
    };
    let entries: Vec<PrimeEntry> = primes
        .par_iter()
        .map(|&p| match f(loaded, p) {
            Ok(r) => Ok(PrimeEntry::Report(Box::new(r))),
            Err(Error::Resource(details)) => Ok(PrimeEntry::Skipped {
                p,
                status: Status::Skip,
                details,
            }),
            Err(e @ (Error::Input(_) | Error::Schema(_) | Error::Domain(_))) => Err(e),
            Err(e) => Ok(PrimeEntry::Skipped {
                p,
                status: Status::Fail,
                details: e.to_string(),
            }),
        })
        .collect::<Result<_, _>>()?;
    let statuses: Vec<Status> = entries.iter().map(PrimeEntry::status).collect();
    let text = match manifest.format() {
        Format::Json => json(&entries),
        Format::Text if entries.is_empty() => format!("{}: no prime divides the order\n", loaded.table.name),
        Format::Text => entries.iter().map(|e| e.text(&loaded.table.name)).collect(),
    };
    Ok(Output {
        text,
        status: overall_status(&statuses),
    })
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn invariants(loaded: &Loaded, p: u64, manifest: &RunManifest) -> Result<InvariantReport, Error> {
    let table = &loaded.table;
    let ring = build_mod_ring_with(table, p, table.structure_constants()?)?;
    let mut report = ring.report(manifest.seed)?;
    if let Some(n) = manifest.ext {
        for b in &mut report.blocks {
            b.ext = Some(ring.ext_dimensions(b.class, n)?);
        }
    }
    Ok(report)
}

fn verify(loaded: &Loaded, p: u64, manifest: &RunManifest) -> Result<InvariantReport, Error> {
    match &loaded.group {
        Some(g) => verify_group(g, &loaded.table, p, manifest.seed),
        None => {
            let mut report = invariants(loaded, p, manifest)?;
            report.verifications.push(Verification::new(
                "group-level checks",
                Status::Skip,
                "input is a table file without a permutation group",
            ));
            Ok(report)
        }
    }
}

fn table_text(t: &CharacterTable) -> String {
    let mut s = format!("{}: order {}, exponent {}, {} classes\n", t.name, t.order, t.exponent, t.num_classes());
    let sizes: Vec<String> = t.classes.iter().map(|c| c.size.to_string()).collect();
    let orders: Vec<String> = t.classes.iter().map(|c| c.element_order.to_string()).collect();
    let degrees: Vec<String> = t.degrees().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(s, "  class sizes:    {}", sizes.join(" "));
    let _ = writeln!(s, "  element orders: {}", orders.join(" "));
    let _ = writeln!(s, "  degrees:        {}", degrees.join(" "));
    s
}

fn reproduce_output(rows: &[RowOutcome], format: Format) -> Output {
    let status = overall_status(rows.iter().map(|r| &r.status));
    let text = match format {
        Format::Json => json(rows),
        Format::Text => {
            let mut s: String = rows.iter().map(|r| r.text() + "\n").collect();
            let count = |st: Status| rows.iter().filter(|r| r.status == st).count();
            let _ = writeln!(
                s,
                "{} pass, {} fail, {} skip",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skip)
            );
            s
        }
    };
    Output { text, status }
}

fn execute(manifest: &RunManifest) -> Result<Output, Error> {
    let input = || {
        manifest
            .input
            .as_ref()
            .ok_or_else(|| Error::Input("the manifest has no input group".into()))
    };
    match manifest.command {
        CommandKind::Table => {
            let loaded = load(input()?, manifest.cache.as_deref())?;
            let text = match manifest.format() {
                Format::Json => loaded.table.to_json() + "\n",
                Format::Text => table_text(&loaded.table),
            };
            Ok(Output {
                text,
                status: Status::Pass,
            })
        }
        CommandKind::Invariants => {
            let loaded = load(input()?, manifest.cache.as_deref())?;
            per_prime(&loaded, manifest, |l, p| invariants(l, p, manifest))
        }
        CommandKind::Verify => {
            let loaded = load(input()?, manifest.cache.as_deref())?;
            per_prime(&loaded, manifest, |l, p| verify(l, p, manifest))
        }
        CommandKind::Reproduce => {
            let suite = manifest
                .suite
                .ok_or_else(|| Error::Input("the manifest has no suite".into()))?;
            let rows = reproduce(suite.rows(), &TableSource::new(manifest.tables.clone()), manifest.seed);
            Ok(reproduce_output(&rows, manifest.format()))
        }
    }
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Skip => 3,
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Schema(_) => 2,
        Error::Resource(_) => 3,
        _ => 1,
    }
}

fn run(manifest: &RunManifest) -> Result<u8, Error> {
    let out = execute(manifest)?;
    match &manifest.output {
        Some(path) => write(path, &out.text)?,
        None => print!("{}", out.text),
    }
    if let Some(path) = &manifest.expect {
        if read(path)? != out.text {
            eprintln!("output differs from {}", path.display());
            return Ok(1);
        }
    }
    Ok(exit_code(out.status))
}

fn manifest_from(cmd: Cmd) -> Result<(RunManifest, Option<PathBuf>), Error> {
    Ok(match cmd {
        Cmd::Table { input, common } => {
            let mut m = RunManifest::new(CommandKind::Table, &common);
            m.input = Some(input.source());
            (m, common.save_manifest)
        }
        Cmd::Invariants {
            input,
            primes,
            ext,
            common,
        } => {
            let mut m = RunManifest::new(CommandKind::Invariants, &common);
            m.input = Some(input.source());
            m.primes = primes;
            m.ext = ext;
            (m, common.save_manifest)
        }
        Cmd::Verify { input, primes, common } => {
            let mut m = RunManifest::new(CommandKind::Verify, &common);
            m.input = Some(input.source());
            m.primes = primes;
            (m, common.save_manifest)
        }
        Cmd::Reproduce { suite, tables, common } => {
            let mut m = RunManifest::new(CommandKind::Reproduce, &common);
            m.suite = Some(suite);
            m.tables = tables;
            (m, common.save_manifest)
        }
        Cmd::Replay { manifest, expect } => {
            let mut m: RunManifest = serde_json::from_str(&read(&manifest)?)
                .map_err(|e| Error::Schema(format!("{}: {e}", manifest.display())))?;
            if expect.is_some() {
                m.expect = expect;
            }
            (m, None)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = manifest_from(cli.command).and_then(|(manifest, save)| {
        if let Some(path) = save {
            write(&path, &json(&manifest))?;
        }
        for &p in &manifest.primes {
            if !charring::numtheory::is_prime(p) {
                return Err(Error::Input(format!("{p} is not a prime")));
            }
        }
        run(&manifest)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
