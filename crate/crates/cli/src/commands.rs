//! The subcommands, independent of argument parsing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lcx_core::decomposition::{build_decomposition_partial, DecompositionResult, FinderFamily, SearchLimits};
use lcx_core::dispersal::{union_sparsity_check, UnionReport};
use lcx_core::fixtures::{dumbbell, expander, instance_seed, path, random_cut_instance, CutInstance};
use lcx_core::io::{dump_graph, dump_matching_sequence, dump_weighting, parse_graph, parse_weighting};
use lcx_core::parallel_greedy::{generate_parallel_greedy, ladder_sequence, single_edge_sequence};
use lcx_core::{ratio, verify_cut_sequence, CutSequenceReport, Rational, Scalar};
use serde::Serialize;

use crate::campaign::{CampaignReport, Status, Table};
use crate::error::{CliError, ExitCode};

pub type Result<T> = std::result::Result<T, CliError>;

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn stdout_err(e: std::io::Error) -> CliError {
    CliError::io("<stdout>", e)
}

pub fn exit_code(report: &CampaignReport) -> ExitCode {
    match report.worst() {
        Status::Pass => ExitCode::Pass,
        Status::Skipped => ExitCode::Budget,
        Status::Fail => ExitCode::Failure,
    }
}

/// Writes a campaign report. With `out`, each table goes to `<out>/<name>.csv`
/// plus `summary.csv`, and the summary is echoed; without it, everything goes
/// to `sink`, tables separated by `# name` comment lines when there are
/// several.
pub fn write_report(report: &CampaignReport, out: Option<&Path>, sink: &mut impl Write) -> Result<()> {
    let summary = report.summary();
    match out {
        Some(dir) => {
            create_dir(dir)?;
            for table in &report.tables {
                write_file(&dir.join(format!("{}.csv", table.name)), &table.to_csv())?;
            }
            write_file(&dir.join("summary.csv"), &summary.to_csv())?;
            sink.write_all(summary.to_csv().as_bytes()).map_err(stdout_err)
        }
        None if report.tables.len() == 1 => sink.write_all(report.tables[0].to_csv().as_bytes()).map_err(stdout_err),
        None => {
            let sections: Vec<&Table> = report.tables.iter().chain([&summary]).collect();
            for table in sections {
                writeln!(sink, "# {}", table.name).map_err(stdout_err)?;
                sink.write_all(table.to_csv().as_bytes()).map_err(stdout_err)?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenerateKind {
    /// Matching sequences from the parallel-greedy generator.
    ParallelGreedy,
    /// One edge per matching, greedy-spanner style.
    SingleEdge,
    /// Random connected length/capacity graphs with a node-weighting.
    Graph,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenerateConfig {
    pub kind: GenerateKind,
    pub n: usize,
    pub s: usize,
    pub rounds: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    files: Vec<String>,
    seed: u64,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matchings: Option<usize>,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<String>,
}

#[derive(Debug, Serialize)]
struct Manifest {
    kind: GenerateKind,
    master_seed: u64,
    instances: Vec<ManifestEntry>,
}

impl GenerateConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.n < 2 {
            return Err(format!("--n must be at least 2, got {}", self.n));
        }
        if self.s < 2 {
            return Err(format!("--s must be at least 2, got {}", self.s));
        }
        if self.rounds < 1 {
            return Err("--rounds must be at least 1".into());
        }
        if self.count < 1 {
            return Err("--count must be at least 1".into());
        }
        Ok(())
    }
}

/// One generated instance: `(file suffix, contents)` pairs plus its manifest entry.
fn generate_one(config: &GenerateConfig, index: usize) -> Result<(Vec<(String, String)>, ManifestEntry)> {
    let seed = instance_seed(config.seed, index as u64);
    let stem = format!("{:04}", index);
    match config.kind {
        GenerateKind::ParallelGreedy | GenerateKind::SingleEdge => {
            let seq = if config.kind == GenerateKind::ParallelGreedy {
                generate_parallel_greedy(config.n, config.s, config.rounds, seed)?
            } else {
                single_edge_sequence(config.n, config.s, seed)?
            };
            let file = format!("seq-{stem}.txt");
            let entry = ManifestEntry {
                files: vec![file.clone()],
                seed,
                n: config.n,
                s: Some(config.s),
                rounds: (config.kind == GenerateKind::ParallelGreedy).then_some(config.rounds),
                matchings: Some(seq.matching_count()),
                edges: seq.edge_count(),
                h: None,
                phi: None,
            };
            Ok((vec![(file, dump_matching_sequence(&seq))], entry))
        }
        GenerateKind::Graph => {
            let inst = random_cut_instance(seed, config.n);
            let (graph_file, weights_file) = (format!("graph-{stem}.txt"), format!("weights-{stem}.txt"));
            let entry = ManifestEntry {
                files: vec![graph_file.clone(), weights_file.clone()],
                seed,
                n: inst.graph.vertex_count(),
                s: Some(s_as_count(&inst.s)),
                rounds: None,
                matchings: None,
                edges: inst.graph.edge_count(),
                h: Some(inst.h.to_ratio_string()),
                phi: Some(inst.phi.to_ratio_string()),
            };
            Ok((
                vec![
                    (graph_file, dump_graph(&inst.graph)),
                    (weights_file, dump_weighting(&inst.weighting)),
                ],
                entry,
            ))
        }
    }
}

fn s_as_count(s: &Rational) -> usize {
    s.to_integer().try_into().unwrap_or(usize::MAX)
}

/// Writes the instances and `manifest.json` into `out`, or a single
/// instance to `sink` when `out` is absent.
pub fn generate(config: &GenerateConfig, out: Option<&Path>, sink: &mut impl Write) -> Result<Vec<PathBuf>> {
    config.validate().map_err(CliError::Usage)?;
    let Some(dir) = out else {
        if config.count != 1 {
            return Err(CliError::Usage("--count above 1 needs --out".into()));
        }
        let (files, _) = generate_one(config, 0)?;
        for (name, contents) in files {
            if config.kind == GenerateKind::Graph {
                writeln!(sink, "# {name}").map_err(stdout_err)?;
            }
            sink.write_all(contents.as_bytes()).map_err(stdout_err)?;
        }
        return Ok(Vec::new());
    };
    create_dir(dir)?;
    let mut written = Vec::new();
    let mut instances = Vec::new();
    for index in 0..config.count {
        let (files, entry) = generate_one(config, index)?;
        for (name, contents) in files {
            let path = dir.join(name);
            write_file(&path, &contents)?;
            written.push(path);
        }
        instances.push(entry);
    }
    let manifest = Manifest {
        kind: config.kind,
        master_seed: config.seed,
        instances,
    };
    let path = dir.join("manifest.json");
    write_file(&path, &(serde_json::to_string_pretty(&manifest).expect("plain data") + "\n"))?;
    written.push(path);
    Ok(written)
}

/// Parses `exhaustive`, `exhaustive:K`, `balls` or `singletons`.
pub fn parse_family(text: &str) -> std::result::Result<FinderFamily, String> {
    match text.split_once(':') {
        Some(("exhaustive", k)) => k
            .parse::<usize>()
            .ok()
            .filter(|&k| k > 0)
            .map(|max_edges| FinderFamily::Exhaustive { max_edges })
            .ok_or_else(|| format!("bad edge cap {k:?} in {text:?}")),
        None if text == "exhaustive" => Ok(FinderFamily::Exhaustive { max_edges: 3 }),
        None if text == "balls" => Ok(FinderFamily::Balls),
        None if text == "singletons" => Ok(FinderFamily::Singletons),
        _ => Err(format!("unknown finder family {text:?}; use exhaustive[:K], balls or singletons")),
    }
}

pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    Rational::parse_ratio(text).ok_or_else(|| format!("expected a rational like 3/2, found {text:?}"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposeConfig {
    pub graph: PathBuf,
    /// A weighting file, or `deg`.
    pub weights: String,
    pub h: Rational,
    pub s: Rational,
    pub phi: Rational,
    pub family: FinderFamily,
    pub limits: SearchLimits,
    /// Also run the cut-sequence and union checks on the result.
    pub check: bool,
}

#[derive(Serialize)]
struct Checks {
    sequence: CutSequenceReport<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    union: Option<UnionReport>,
}

#[derive(Serialize)]
struct DecomposeOutput<'a> {
    complete: bool,
    stopped: Option<String>,
    #[serde(flatten)]
    result: &'a DecompositionResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Checks>,
}

/// Runs the decomposition and prints its JSON. A run stopped by a budget
/// still prints the progress made (`"complete": false`) and then reports
/// the budget error.
pub fn decompose(config: &DecomposeConfig, sink: &mut impl Write) -> Result<()> {
    let graph_text = read_file(&config.graph)?;
    let graph = parse_graph::<Rational>(&graph_text).map_err(|source| CliError::Parse {
        path: config.graph.clone(),
        source,
    })?;
    let (weights_path, weights_text) = if config.weights == "deg" {
        (PathBuf::from("deg"), "deg".to_string())
    } else {
        let path = PathBuf::from(&config.weights);
        let text = read_file(&path)?;
        (path, text)
    };
    let weighting = parse_weighting(&weights_text, &graph).map_err(|source| CliError::Parse {
        path: weights_path,
        source,
    })?;
    let run = build_decomposition_partial(
        &graph,
        &weighting,
        &config.h,
        &config.s,
        &config.phi,
        config.family,
        &config.limits,
    )?;
    let checks = if config.check && run.stopped.is_none() {
        let r = &run.result;
        let sequence = verify_cut_sequence(&graph, &weighting, &r.cuts, &config.h, &config.s, &config.phi)?;
        let union = if r.cuts.is_empty() {
            None
        } else {
            Some(union_sparsity_check(&graph, &weighting, &r.cuts, &config.h, &config.s)?)
        };
        Some(Checks { sequence, union })
    } else {
        None
    };
    let output = DecomposeOutput {
        complete: run.stopped.is_none(),
        stopped: run.stopped.as_ref().map(ToString::to_string),
        result: &run.result,
        checks,
    };
    let json = serde_json::to_string_pretty(&output).expect("plain data");
    writeln!(sink, "{json}").map_err(stdout_err)?;
    match run.stopped {
        Some(err) => Err(CliError::Budget(err)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct FixtureParams {
    h: String,
    s: String,
    phi: String,
}

fn write_cut_fixture(dir: &Path, name: &str, inst: &CutInstance, written: &mut Vec<PathBuf>) -> Result<()> {
    let params = FixtureParams {
        h: inst.h.to_ratio_string(),
        s: inst.s.to_ratio_string(),
        phi: inst.phi.to_ratio_string(),
    };
    let files = [
        (format!("{name}.graph"), dump_graph(&inst.graph)),
        (format!("{name}.weights"), dump_weighting(&inst.weighting)),
        (format!("{name}.json"), serde_json::to_string_pretty(&params).expect("plain data") + "\n"),
    ];
    for (file, contents) in files {
        let path = dir.join(file);
        write_file(&path, &contents)?;
        written.push(path);
    }
    Ok(())
}

/// Writes the named instances: graph, weighting and parameters of each cut
/// fixture, and the ladder matching sequences.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let mut written = Vec::new();
    write_cut_fixture(dir, "dumbbell", &dumbbell(), &mut written)?;
    write_cut_fixture(dir, "expander", &expander(), &mut written)?;
    let line = path(8);
    let path8 = CutInstance {
        weighting: line.degree_weighting(),
        graph: line,
        h: ratio(1, 1),
        s: ratio(2, 1),
        phi: ratio(1, 4),
    };
    write_cut_fixture(dir, "path8", &path8, &mut written)?;
    for s in [2, 4, 8] {
        let path = dir.join(format!("ladder-s{s}.seq"));
        write_file(&path, &dump_matching_sequence(&ladder_sequence(s)))?;
        written.push(path);
    }
    Ok(written)
}
