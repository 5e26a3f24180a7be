mod common;

use common::{oracle_max_demand, oracle_pairs};
use lcx_core::cut::eligible_pairs;
use lcx_core::fixtures::{instance_seed, random_demand_instance};
use lcx_core::{demand_size_with_mode, WitnessMode};

#[test]
fn flow_demand_size_matches_exhaustive_search() {
    for index in 0..200 {
        let (inst, cut) = random_demand_instance(instance_seed(3, index), 7, 10);
        let threshold = inst.h.clone() * inst.s.clone();
        let pairs = oracle_pairs(&inst.graph, &cut, &inst.h, &threshold);
        assert_eq!(
            eligible_pairs(&inst.graph, &cut, &inst.h, &threshold).unwrap(),
            pairs,
            "instance {index}"
        );
        for (mode, combined) in [(WitnessMode::Standard, false), (WitnessMode::MatchingSafe, true)] {
            let flow = demand_size_with_mode(&inst.graph, &cut, &inst.weighting, &inst.h, &inst.s, mode).unwrap();
            assert_eq!(flow.value, oracle_max_demand(&inst.weighting, &pairs, combined), "instance {index} {mode:?}");
            assert_eq!(flow.witness.size(), flow.value);
            if combined {
                let incidence = flow.witness.combined_incidence(inst.graph.vertex_count());
                assert!((0..incidence.len()).all(|v| incidence[v] <= inst.weighting.get(v)));
            } else {
                assert!(flow.witness.is_a_respecting(&inst.weighting));
            }
        }
    }
}

#[test]
fn generator_produces_non_trivial_cases() {
    let separating = (0..200)
        .filter(|&index| {
            let (inst, cut) = random_demand_instance(instance_seed(3, index), 7, 10);
            let threshold = inst.h.clone() * inst.s.clone();
            !oracle_pairs(&inst.graph, &cut, &inst.h, &threshold).is_empty()
        })
        .count();
    assert!(separating >= 40, "only {separating} instances have eligible pairs");
}
