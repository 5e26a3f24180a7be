//! Hand-checkable named instances with their known outcomes.

use lcx_core::arboricity::{arboricity_exact, EdgeList};
use lcx_core::decomposition::{build_decomposition, FinderFamily};
use lcx_core::fixtures::{complete, dumbbell, expander, path, CutInstance};
use lcx_core::parallel_greedy::{check_cycle_property, check_dispersion, ladder_sequence, verify_parallel_greedy};
use lcx_core::{ratio, verify_cut_sequence, Rational, Scalar};

use crate::campaign::{CampaignConfig, Record, Row, Status, Table};

const COLUMNS: [&str; 6] = ["fixture", "check", "expected", "measured", "status", "detail"];

fn row(fixture: &str, check: &str, expected: impl ToString, measured: impl ToString) -> Row {
    let expected = expected.to_string();
    let measured = measured.to_string();
    let status = if expected == measured { Status::Pass } else { Status::Fail };
    let mut rec = Record::new(COLUMNS.to_vec());
    rec.set("fixture", fixture);
    rec.set("check", check);
    rec.set("expected", &expected);
    rec.set("measured", &measured);
    rec.finish(status, "")
}

fn shown<T: ToString>(result: lcx_core::Result<T>) -> String {
    match result {
        Ok(value) => value.to_string(),
        Err(err) => err.to_string(),
    }
}

fn decompose(
    name: &str,
    inst: &CutInstance,
    phi: &Rational,
    family: FinderFamily,
    config: &CampaignConfig,
    cuts: usize,
    slack: &str,
) -> Vec<Row> {
    let limits = config.budgets.search_limits();
    match build_decomposition(&inst.graph, &inst.weighting, &inst.h, &inst.s, phi, family, &limits) {
        Ok(result) => {
            let valid = verify_cut_sequence(&inst.graph, &inst.weighting, &result.cuts, &inst.h, &inst.s, phi)
                .map(|r| r.valid)
                .unwrap_or(false);
            vec![
                row(name, "cuts", cuts, result.cuts.len()),
                row(name, "slack", slack, result.slack.to_ratio_string()),
                row(name, "sequence_valid", true, valid),
            ]
        }
        Err(err) => {
            let mut rec = Record::new(COLUMNS.to_vec());
            rec.set("fixture", name);
            rec.set("check", "decomposition");
            vec![rec.finish(Status::Fail, err)]
        }
    }
}

/// Runs every fixture check; rows are in a fixed order.
pub fn run(config: &CampaignConfig) -> Table {
    let mut rows = Vec::new();

    let bell = dumbbell();
    rows.extend(decompose("dumbbell", &bell, &bell.phi, FinderFamily::Singletons, config, 1, "5/13"));

    let k4 = expander();
    let exhaustive = FinderFamily::Exhaustive { max_edges: 3 };
    rows.extend(decompose("expander", &k4, &k4.phi, exhaustive, config, 0, "0/1"));

    let line = CutInstance {
        weighting: path(8).degree_weighting(),
        graph: path(8),
        h: ratio(1, 1),
        s: ratio(2, 1),
        phi: ratio(1, 4),
    };
    let no_cut = ratio(1, 5);
    rows.extend(decompose("path8-phi-1/5", &line, &no_cut, FinderFamily::Singletons, config, 0, "0/1"));

    for s in [2, 4, 8] {
        let name = format!("ladder-s{s}");
        let seq = ladder_sequence(s);
        let greedy = verify_parallel_greedy(&seq, s).map(|v| v.is_none());
        rows.push(row(&name, "parallel_greedy", true, shown(greedy)));
        let cycles = check_cycle_property(&seq, s, config.budgets.cycle_steps).map(|c| c.violation.is_none());
        rows.push(row(&name, "cycle_property", true, shown(cycles)));
        let dispersion = check_dispersion(&seq, s).map(|v| v.is_none());
        rows.push(row(&name, "dispersion", true, shown(dispersion)));
    }

    for (n, alpha) in [(4, 2), (7, 4), (8, 4)] {
        let edges = EdgeList::from(&complete(n));
        rows.push(row(&format!("complete-{n}"), "arboricity", alpha, arboricity_exact(&edges)));
    }

    Table {
        name: "fixtures".into(),
        header: COLUMNS.map(String::from).to_vec(),
        rows,
    }
}
