//! Lemma campaigns: seeded instance corpora checked one row at a time.

use std::fmt;

use clap::ValueEnum;
use lcx_core::arboricity::{forest_cover, EdgeList};
use lcx_core::decomposition::{build_decomposition_partial, FinderFamily, SearchLimits};
use lcx_core::dispersal::{union_sparsity_check, verify_dispersed_properties, witness_demands};
use lcx_core::fixtures::{instance_seed, random_cut_instance, random_sequence_instance};
use lcx_core::parallel_greedy::{
    check_counting_bound, check_cycle_property, check_dispersion, count_monotonic_paths,
    generate_parallel_greedy, half_length, hiker_walk, power_bound_ratio, single_edge_sequence,
    verify_parallel_greedy, within_power_bound, MatchingSequence,
};
use lcx_core::report::PropertyReport;
use lcx_core::{verify_cut_sequence, Error, Extended, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calibration;
use crate::fixture_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    Dispersion,
    Cycles,
    Hiker,
    Counting,
    Arboricity,
    Dispersal,
    Union,
    Decomposition,
    All,
}

impl Lemma {
    pub const CAMPAIGNS: [Lemma; 8] = [
        Lemma::Dispersion,
        Lemma::Cycles,
        Lemma::Hiker,
        Lemma::Counting,
        Lemma::Arboricity,
        Lemma::Dispersal,
        Lemma::Union,
        Lemma::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Dispersion => "dispersion",
            Lemma::Cycles => "cycles",
            Lemma::Hiker => "hiker",
            Lemma::Counting => "counting",
            Lemma::Arboricity => "arboricity",
            Lemma::Dispersal => "dispersal",
            Lemma::Union => "union",
            Lemma::Decomposition => "decomposition",
            Lemma::All => "all",
        }
    }

    fn default_instances(self) -> usize {
        match self {
            Lemma::Dispersion => 100,
            Lemma::Cycles | Lemma::Hiker | Lemma::Counting | Lemma::Arboricity => 100,
            Lemma::Dispersal | Lemma::Union => 200,
            Lemma::Decomposition => 50,
            Lemma::All => 20,
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Search steps for one cycle enumeration.
    pub cycle_steps: u64,
    /// Candidates for one exhaustive sparse-cut search.
    pub exhaustive_candidates: u64,
    /// Cuts in one decomposition.
    pub iterations: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        let limits = SearchLimits::default();
        Budgets {
            cycle_steps: 20_000_000,
            exhaustive_candidates: limits.candidates,
            iterations: limits.iterations,
        }
    }
}

impl Budgets {
    pub fn search_limits(&self) -> SearchLimits {
        SearchLimits {
            candidates: self.exhaustive_candidates,
            iterations: self.iterations,
        }
    }
}

/// Everything a campaign depends on. Equal configs give byte-identical tables.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub lemma: Lemma,
    /// Instances per campaign; `None` uses the campaign's default.
    pub instances: Option<usize>,
    /// Fixed vertex count (graph campaigns) or vertex cap (cut campaigns).
    pub n: Option<usize>,
    pub s: Option<usize>,
    pub rounds: Option<usize>,
    pub seed: u64,
    pub budgets: Budgets,
    /// Edge cap of the exhaustive finder in the decomposition campaign.
    pub max_edges: usize,
    /// Add float `…_ratio` columns against `s·n^{2/s}`.
    pub report_ratio: bool,
}

impl CampaignConfig {
    pub fn new(lemma: Lemma, seed: u64) -> Self {
        CampaignConfig {
            lemma,
            instances: None,
            n: None,
            s: None,
            rounds: None,
            seed,
            budgets: Budgets::default(),
            max_edges: 3,
            report_ratio: false,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Some(n) = self.n {
            if n < 3 {
                return Err(format!("--n must be at least 3, got {n}"));
            }
        }
        if let Some(s) = self.s {
            if s < 2 {
                return Err(format!("--s must be at least 2, got {s}"));
            }
        }
        if self.rounds == Some(0) {
            return Err("--rounds must be at least 1".into());
        }
        if self.instances == Some(0) {
            return Err("--instances must be at least 1".into());
        }
        if self.max_edges == 0 {
            return Err("--max-edges must be at least 1".into());
        }
        Ok(())
    }

    fn instance_count(&self, lemma: Lemma) -> usize {
        self.instances.unwrap_or(if self.lemma == Lemma::All {
            Lemma::All.default_instances()
        } else {
            lemma.default_instances()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Skipped,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Skipped => "skipped",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub status: Status,
    pub values: Vec<String>,
}

/// One campaign's CSV table; `status` and `detail` are always the last two
/// columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn worst(&self) -> Status {
        self.rows.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(&row.values).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Cells of a row under construction, addressed by column name.
pub(crate) struct Record {
    columns: Vec<&'static str>,
    values: Vec<String>,
}

impl Record {
    pub(crate) fn new(columns: Vec<&'static str>) -> Self {
        let values = vec![String::new(); columns.len()];
        Record { columns, values }
    }

    pub(crate) fn set(&mut self, column: &str, value: impl ToString) {
        let at = self
            .columns
            .iter()
            .position(|c| *c == column)
            .unwrap_or_else(|| panic!("unknown column {column}"));
        self.values[at] = value.to_string();
    }

    pub(crate) fn finish(mut self, status: Status, detail: impl ToString) -> Row {
        self.set("status", status);
        self.set("detail", detail);
        Row {
            status,
            values: self.values,
        }
    }
}

fn columns(base: &[&'static str], ratio: &[&'static str], report_ratio: bool) -> Vec<&'static str> {
    let mut cols = base.to_vec();
    if report_ratio {
        cols.extend_from_slice(ratio);
    }
    cols.extend(["status", "detail"]);
    cols
}

pub(crate) fn float(value: f64) -> String {
    format!("{value:.6}")
}

fn failed_properties(properties: &[PropertyReport]) -> String {
    properties
        .iter()
        .filter(|p| !p.pass)
        .map(|p| p.property.as_str())
        .collect::<Vec<_>>()
        .join(";")
}

/// Per-instance parameter stream.
struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn new(master: u64, index: usize) -> Self {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(instance_seed(master, index as u64)),
        }
    }

    fn range(&mut self, fixed: Option<usize>, lo: usize, hi: usize) -> usize {
        fixed.unwrap_or_else(|| self.rng.random_range(lo..=hi))
    }

    fn pick(&mut self, fixed: Option<usize>, options: &[usize]) -> usize {
        fixed.unwrap_or_else(|| options[self.rng.random_range(0..options.len())])
    }

    fn seed(&mut self) -> u64 {
        self.rng.random()
    }
}

/// A generated parallel-greedy instance and its parameters.
struct PgInstance {
    seed: u64,
    n: usize,
    s: usize,
    rounds: usize,
    seq: MatchingSequence,
}

fn pg_instance(
    config: &CampaignConfig,
    index: usize,
    n_range: (usize, usize),
    s_options: &[usize],
    rounds: usize,
) -> Result<PgInstance, Error> {
    let mut draw = Draw::new(config.seed, index);
    let n = draw.range(config.n, n_range.0, n_range.1);
    let s = draw.pick(config.s, s_options);
    let rounds = config.rounds.unwrap_or(rounds);
    let seed = draw.seed();
    let seq = generate_parallel_greedy(n, s, rounds, seed)?;
    Ok(PgInstance {
        seed,
        n,
        s,
        rounds,
        seq,
    })
}

const PG_COLUMNS: [&str; 7] = ["instance", "seed", "n", "s", "rounds", "matchings", "edges"];

fn record_pg(cols: Vec<&'static str>, index: usize, inst: &PgInstance) -> Record {
    let mut rec = Record::new(cols);
    rec.set("instance", index);
    rec.set("seed", inst.seed);
    rec.set("n", inst.n);
    rec.set("s", inst.s);
    rec.set("rounds", inst.rounds);
    rec.set("matchings", inst.seq.matching_count());
    rec.set("edges", inst.seq.edge_count());
    rec
}

fn error_row(cols: Vec<&'static str>, index: usize, err: &Error) -> Row {
    let mut rec = Record::new(cols);
    rec.set("instance", index);
    let status = match err {
        Error::Budget { .. } => Status::Skipped,
        _ => Status::Fail,
    };
    rec.finish(status, err)
}

fn dispersion_columns(_: &CampaignConfig) -> Vec<&'static str> {
    let mut base = PG_COLUMNS.to_vec();
    base.extend(["greedy_valid", "path_length", "violation"]);
    columns(&base, &[], false)
}

fn dispersion_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = dispersion_columns(config);
    let run = || -> Result<Row, Error> {
        let inst = pg_instance(config, index, (20, 200), &[4, 6, 8, 10], 64)?;
        let mut rec = record_pg(cols.clone(), index, &inst);
        let greedy = verify_parallel_greedy(&inst.seq, inst.s)?;
        let violation = check_dispersion(&inst.seq, inst.s)?;
        rec.set("greedy_valid", greedy.is_none());
        rec.set("path_length", half_length(inst.s));
        if let Some(v) = &violation {
            rec.set("violation", format!("{}->{}:{}", v.from, v.to, v.paths));
        }
        let status = if greedy.is_none() && violation.is_none() {
            Status::Pass
        } else {
            Status::Fail
        };
        let detail = greedy
            .map(|g| format!("matching {} edge {:?} at distance {}", g.matching, g.edge, g.distance))
            .unwrap_or_default();
        Ok(rec.finish(status, detail))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

fn cycles_columns(_: &CampaignConfig) -> Vec<&'static str> {
    let mut base = PG_COLUMNS.to_vec();
    base.extend(["cycles", "violation"]);
    columns(&base, &[], false)
}

fn cycles_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = cycles_columns(config);
    let s_options: Vec<usize> = (2..=12).collect();
    let run = || -> Result<Row, Error> {
        let inst = pg_instance(config, index, (10, 60), &s_options, 64)?;
        let mut rec = record_pg(cols.clone(), index, &inst);
        match check_cycle_property(&inst.seq, inst.s, config.budgets.cycle_steps) {
            Ok(check) => {
                rec.set("cycles", check.cycles);
                let status = match &check.violation {
                    None => Status::Pass,
                    Some(cycle) => {
                        let text: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
                        rec.set("violation", text.join("-"));
                        Status::Fail
                    }
                };
                Ok(rec.finish(status, ""))
            }
            Err(err @ Error::Budget { .. }) => Ok(rec.finish(Status::Skipped, err)),
            Err(err) => Err(err),
        }
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

fn hiker_columns(_: &CampaignConfig) -> Vec<&'static str> {
    let mut base = PG_COLUMNS.to_vec();
    base.extend(["walk_edges", "longest", "dense", "monotonic", "windows_simple"]);
    columns(&base, &[], false)
}

fn hiker_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = hiker_columns(config);
    let s_options: Vec<usize> = (2..=10).collect();
    let run = || -> Result<Row, Error> {
        let inst = pg_instance(config, index, (10, 200), &s_options, 64)?;
        let mut rec = record_pg(cols.clone(), index, &inst);
        let report = hiker_walk(&inst.seq);
        let m = inst.seq.edge_count();
        let dense = 4 * m >= inst.s * inst.n;
        let monotonic = report.walks.iter().all(|w| w.is_monotonic());
        let simple = report.walks.iter().all(|w| w.windows_are_simple(inst.s + 1));
        rec.set("walk_edges", report.total_edges);
        rec.set("longest", report.longest);
        rec.set("dense", dense);
        rec.set("monotonic", monotonic);
        rec.set("windows_simple", simple);
        let mut problems = Vec::new();
        if report.total_edges != 2 * m {
            problems.push(format!("walk edges {} != 2m = {}", report.total_edges, 2 * m));
        }
        if !monotonic {
            problems.push("non-monotonic walk".into());
        }
        if !simple {
            problems.push("window of s+1 edges repeats a vertex".into());
        }
        if dense && 2 * report.longest < inst.s {
            problems.push(format!("dense but longest walk {} < s/2", report.longest));
        }
        let status = if problems.is_empty() { Status::Pass } else { Status::Fail };
        Ok(rec.finish(status, problems.join("; ")))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

fn counting_columns(config: &CampaignConfig) -> Vec<&'static str> {
    let mut base = PG_COLUMNS.to_vec();
    base.extend(["average_degree", "path_length", "paths", "applicable", "constant", "holds"]);
    columns(&base, &["required_constant_ratio"], config.report_ratio)
}

/// Rounds large enough that the generator runs until no far pair is left.
const SATURATING_ROUNDS: usize = 100_000;

fn counting_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = counting_columns(config);
    let run = || -> Result<Row, Error> {
        let inst = pg_instance(config, index, (20, 200), &[2, 3, 4], SATURATING_ROUNDS)?;
        let mut rec = record_pg(cols.clone(), index, &inst);
        let length = half_length(inst.s);
        let paths = count_monotonic_paths(&inst.seq, length)?;
        let m = inst.seq.edge_count();
        let c = calibration::counting_c();
        let check = check_counting_bound(inst.n, m, paths, inst.s, &c);
        rec.set("average_degree", Rational::new((2 * m).into(), inst.n.into()).to_ratio_string());
        rec.set("path_length", length);
        rec.set("paths", paths);
        rec.set("applicable", check.applicable);
        rec.set("constant", c.to_ratio_string());
        rec.set("holds", check.holds);
        if config.report_ratio {
            rec.set("required_constant_ratio", float(check.required_constant));
        }
        let status = if !check.applicable || check.holds {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok(rec.finish(status, ""))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

fn arboricity_columns(config: &CampaignConfig) -> Vec<&'static str> {
    let base = [
        "instance", "seed", "kind", "n", "s", "rounds", "matchings", "edges", "arboricity",
        "cover_size", "cover_valid", "constant", "holds",
    ];
    columns(&base, &["alpha_ratio", "degree_ratio"], config.report_ratio)
}

fn arboricity_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = arboricity_columns(config);
    let s_options: Vec<usize> = (2..=10).collect();
    let run = || -> Result<Row, Error> {
        // Even instances come from the parallel-greedy generator, odd ones
        // are greedy-spanner-like single-edge sequences.
        let (kind, inst) = if index.is_multiple_of(2) {
            ("parallel-greedy", pg_instance(config, index, (10, 150), &s_options, SATURATING_ROUNDS)?)
        } else {
            let mut draw = Draw::new(config.seed, index);
            let n = draw.range(config.n, 10, 80);
            let s = draw.pick(config.s, &s_options);
            let seed = draw.seed();
            let seq = single_edge_sequence(n, s, seed)?;
            let rounds = seq.matching_count();
            ("single-edge", PgInstance { seed, n, s, rounds, seq })
        };
        let mut rec = record_pg(cols.clone(), index, &inst);
        rec.set("kind", kind);
        let c = calibration::arboricity_c();
        let check = lcx_core::arboricity::check_pg_arboricity_bound(&inst.seq, inst.s, &c)?;
        let edges = EdgeList::from(&inst.seq);
        let cover = forest_cover(&edges);
        let cover_valid = cover.validate(&edges).is_ok()
            && cover.len() as u64 <= (2 * check.arboricity).saturating_sub(1).max(check.arboricity);
        rec.set("arboricity", check.arboricity);
        rec.set("cover_size", cover.len());
        rec.set("cover_valid", cover_valid);
        rec.set("constant", c.to_ratio_string());
        rec.set("holds", check.holds);
        if config.report_ratio {
            rec.set("alpha_ratio", float(check.ratio));
            rec.set("degree_ratio", float(check.degree_ratio));
        }
        let status = if check.holds && cover_valid { Status::Pass } else { Status::Fail };
        Ok(rec.finish(status, ""))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

const CUT_COLUMNS: [&str; 9] = ["instance", "seed", "n", "m", "weight", "h", "s", "phi", "family"];

/// Vertex cap of the cut campaigns unless `--n` overrides it.
const CUT_MAX_N: usize = 7;
/// Draws before the sequence corpus gives up on finding a non-empty sequence.
const SEQUENCE_ATTEMPTS: u64 = 8;

fn family_name(family: FinderFamily) -> String {
    match family {
        FinderFamily::Exhaustive { max_edges } => format!("exhaustive:{max_edges}"),
        FinderFamily::Balls => "balls".into(),
        FinderFamily::Singletons => "singletons".into(),
    }
}

fn record_cut(
    cols: Vec<&'static str>,
    index: usize,
    seed: u64,
    inst: &lcx_core::fixtures::CutInstance,
    family: FinderFamily,
) -> Record {
    let mut rec = Record::new(cols);
    rec.set("instance", index);
    rec.set("seed", seed);
    rec.set("n", inst.graph.vertex_count());
    rec.set("m", inst.graph.edge_count());
    rec.set("weight", inst.weighting.total());
    rec.set("h", inst.h.to_ratio_string());
    rec.set("s", inst.s.to_ratio_string());
    rec.set("phi", inst.phi.to_ratio_string());
    rec.set("family", family_name(family));
    rec
}

fn dispersal_columns(_: &CampaignConfig) -> Vec<&'static str> {
    let mut base = CUT_COLUMNS.to_vec();
    base.extend([
        "cuts", "sequence_valid", "cover_size", "witness_total", "unscaled_size", "scale",
        "scaled_size", "failed",
    ]);
    columns(&base, &[], false)
}

fn dispersal_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = dispersal_columns(config);
    let run = || -> Result<Row, Error> {
        let master = instance_seed(config.seed, index as u64);
        let seq = random_sequence_instance(master, config.n.unwrap_or(CUT_MAX_N), SEQUENCE_ATTEMPTS)?;
        let inst = &seq.instance;
        let mut rec = record_cut(cols.clone(), index, seq.seed, inst, seq.family);
        let valid = verify_cut_sequence(&inst.graph, &inst.weighting, &seq.cuts, &inst.h, &inst.s, &inst.phi)?.valid;
        let demands = witness_demands(&inst.graph, &inst.weighting, &seq.cuts, &inst.h, &inst.s)?;
        let report = verify_dispersed_properties(&inst.graph, &inst.weighting, &seq.cuts, &demands, &inst.h, &inst.s)?;
        rec.set("cuts", seq.cuts.len());
        rec.set("sequence_valid", valid);
        rec.set("cover_size", report.cover_size);
        rec.set("witness_total", report.witness_total);
        rec.set("unscaled_size", report.unscaled_size);
        rec.set("scale", report.scale.to_ratio_string());
        let scaled = report.scale.clone() * Rational::from_count(report.unscaled_size);
        rec.set("scaled_size", scaled.to_ratio_string());
        rec.set("failed", failed_properties(&report.properties));
        let status = if valid && report.pass { Status::Pass } else { Status::Fail };
        Ok(rec.finish(status, ""))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

fn union_columns(config: &CampaignConfig) -> Vec<&'static str> {
    let mut base = CUT_COLUMNS.to_vec();
    base.extend([
        "cuts", "cover_size", "cut_size_total", "demand_size_total", "union_size",
        "union_demand_size", "union_sparsity", "bound", "standard_certificate", "failed",
    ]);
    columns(&base, &["sparsity_ratio"], config.report_ratio)
}

fn union_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = union_columns(config);
    let run = || -> Result<Row, Error> {
        let master = instance_seed(config.seed, index as u64);
        let seq = random_sequence_instance(master, config.n.unwrap_or(CUT_MAX_N), SEQUENCE_ATTEMPTS)?;
        let inst = &seq.instance;
        let mut rec = record_cut(cols.clone(), index, seq.seed, inst, seq.family);
        let report = union_sparsity_check(&inst.graph, &inst.weighting, &seq.cuts, &inst.h, &inst.s)?;
        rec.set("cuts", seq.cuts.len());
        rec.set("cover_size", report.cover_size);
        rec.set("cut_size_total", report.cut_size_total.to_ratio_string());
        rec.set("demand_size_total", report.demand_size_total);
        rec.set("union_size", report.union_size.to_ratio_string());
        rec.set("union_demand_size", report.union_demand_size);
        rec.set("union_sparsity", report.union_sparsity.to_ratio_string());
        rec.set("bound", report.bound.to_ratio_string());
        rec.set("standard_certificate", report.standard_certificate_holds);
        rec.set("failed", failed_properties(&report.properties));
        if config.report_ratio {
            let ratio = match &report.union_sparsity {
                Extended::Finite(v) => {
                    let normalized = v.clone() / inst.phi.clone();
                    power_bound_ratio(&normalized, s_count(&inst.s), inst.weighting.total() as usize)
                }
                Extended::Infinite => f64::INFINITY,
            };
            rec.set("sparsity_ratio", float(ratio));
        }
        let status = if report.pass { Status::Pass } else { Status::Fail };
        Ok(rec.finish(status, ""))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

/// `⌊s⌋` as a count; the corpora only draw integer `s`.
fn s_count(s: &Rational) -> usize {
    s.floor().to_integer().try_into().unwrap_or(usize::MAX)
}

fn decomposition_columns(config: &CampaignConfig) -> Vec<&'static str> {
    let mut base = CUT_COLUMNS.to_vec();
    base.extend([
        "cuts", "total_size", "slack", "sequence_valid", "union_pass", "certified_sparsity",
        "size_bound", "constant", "slack_within",
    ]);
    columns(&base, &["slack_ratio"], config.report_ratio)
}

fn decomposition_row(config: &CampaignConfig, index: usize) -> Row {
    let cols = decomposition_columns(config);
    let run = || -> Result<Row, Error> {
        let seed = instance_seed(config.seed, index as u64);
        let inst = random_cut_instance(seed, config.n.unwrap_or(CUT_MAX_N));
        let family = FinderFamily::Exhaustive {
            max_edges: config.max_edges,
        };
        let mut rec = record_cut(cols.clone(), index, seed, &inst, family);
        let limits = config.budgets.search_limits();
        let run = build_decomposition_partial(&inst.graph, &inst.weighting, &inst.h, &inst.s, &inst.phi, family, &limits)?;
        let result = run.result;
        rec.set("cuts", result.cuts.len());
        rec.set("total_size", result.total_size.to_ratio_string());
        rec.set("slack", result.slack.to_ratio_string());
        if let Some(err) = run.stopped {
            return Ok(rec.finish(Status::Skipped, err));
        }
        let sequence = verify_cut_sequence(&inst.graph, &inst.weighting, &result.cuts, &inst.h, &inst.s, &inst.phi)?;
        let sequence_valid = sequence.valid && sequence.steps.iter().all(|s| s.within_size_bound);
        let union = union_sparsity_check(&inst.graph, &inst.weighting, &result.cuts, &inst.h, &inst.s)?;
        // |C| ≤ φ′·|A| with φ′ the sparsity the union check certified.
        let total_weight = Rational::from_count(inst.weighting.total());
        let size_bound = match &union.union_sparsity {
            Extended::Finite(phi_prime) => result.total_size <= phi_prime.clone() * total_weight,
            Extended::Infinite => true,
        };
        let c = calibration::slack_c();
        let s = s_count(&inst.s);
        let weight = inst.weighting.total() as usize;
        let slack_within = within_power_bound(&result.slack, s, weight, &c);
        rec.set("sequence_valid", sequence_valid);
        rec.set("union_pass", union.pass);
        rec.set("certified_sparsity", union.union_sparsity.to_ratio_string());
        rec.set("size_bound", size_bound);
        rec.set("constant", c.to_ratio_string());
        rec.set("slack_within", slack_within);
        if config.report_ratio {
            rec.set("slack_ratio", float(power_bound_ratio(&result.slack, s, weight)));
        }
        let mut problems = Vec::new();
        if !sequence_valid {
            problems.push("cut sequence not sparse".to_string());
        }
        if !union.pass {
            problems.push(format!("union check: {}", failed_properties(&union.properties)));
        }
        if !size_bound {
            problems.push("union size exceeds certified sparsity times |A|".into());
        }
        if !slack_within {
            problems.push("slack above calibrated bound".into());
        }
        let status = if problems.is_empty() { Status::Pass } else { Status::Fail };
        Ok(rec.finish(status, problems.join("; ")))
    };
    run().unwrap_or_else(|err| error_row(cols, index, &err))
}

type RowFn = fn(&CampaignConfig, usize) -> Row;
type ColumnsFn = fn(&CampaignConfig) -> Vec<&'static str>;

fn campaign_fns(lemma: Lemma) -> (ColumnsFn, RowFn) {
    match lemma {
        Lemma::Dispersion => (dispersion_columns, dispersion_row),
        Lemma::Cycles => (cycles_columns, cycles_row),
        Lemma::Hiker => (hiker_columns, hiker_row),
        Lemma::Counting => (counting_columns, counting_row),
        Lemma::Arboricity => (arboricity_columns, arboricity_row),
        Lemma::Dispersal => (dispersal_columns, dispersal_row),
        Lemma::Union => (union_columns, union_row),
        Lemma::Decomposition => (decomposition_columns, decomposition_row),
        Lemma::All => unreachable!("`all` is expanded by run_campaign"),
    }
}

/// Runs one lemma's campaign; rows come back in instance order whatever
/// order the worker threads finish in.
pub fn run_lemma(lemma: Lemma, config: &CampaignConfig) -> Table {
    let (columns, row) = campaign_fns(lemma);
    let count = config.instance_count(lemma);
    let rows = (0..count).into_par_iter().map(|i| row(config, i)).collect();
    Table {
        name: lemma.name().to_string(),
        header: columns(config).into_iter().map(String::from).collect(),
        rows,
    }
}

/// All tables of a `check` run; `all` adds the fixture suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignReport {
    pub tables: Vec<Table>,
}

impl CampaignReport {
    pub fn worst(&self) -> Status {
        self.tables.iter().map(Table::worst).max().unwrap_or(Status::Pass)
    }

    /// One row per table with pass/fail/skipped counts.
    pub fn summary(&self) -> Table {
        let rows = self
            .tables
            .iter()
            .map(|t| {
                let status = t.worst();
                Row {
                    status,
                    values: vec![
                        t.name.clone(),
                        t.rows.len().to_string(),
                        t.count(Status::Pass).to_string(),
                        t.count(Status::Fail).to_string(),
                        t.count(Status::Skipped).to_string(),
                        status.to_string(),
                    ],
                }
            })
            .collect();
        Table {
            name: "summary".into(),
            header: ["campaign", "instances", "pass", "fail", "skipped", "status"]
                .map(String::from)
                .to_vec(),
            rows,
        }
    }
}

pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let tables = match config.lemma {
        Lemma::All => {
            let mut tables: Vec<Table> = Lemma::CAMPAIGNS.iter().map(|&l| run_lemma(l, config)).collect();
            tables.push(fixture_suite::run(config));
            tables
        }
        lemma => vec![run_lemma(lemma, config)],
    };
    CampaignReport { tables }
}
