//! Randomized property suites. Each runs 500 cases from a fixed seed; the
//! generated structure is derived from the drawn `u64` via ChaCha8.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(seed: u64) -> Config {
    Config { cases: 500, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

macro_rules! property {
    ($name:ident, $seed:expr, $check:path) => {
        proptest! {
            #![proptest_config(config($seed))]
            #[test]
            fn $name(seed in any::<u64>()) {
                if let Err(e) = $check(seed) {
                    prop_assert!(false, "seed {}: {}", seed, e);
                }
            }
        }
    };
}

property!(qimp_sparse_and_ump_nmpl_bmpl_chain, 0x5eed_0001, common::implication_chain);
property!(rank_increments_by_shared_points, 0x5eed_0002, common::rank_increments);
property!(benign_type1_links_keep_bmpl, 0x5eed_0003, common::type1_closure);
property!(sparse_models_have_rank_at_most_rk, 0x5eed_0004, common::sparse_rank_bound);
property!(rank_tight_cycles_map_to_wheels, 0x5eed_0005, common::wheel_conclusion);
property!(cycle_preserving_models_force_bmpl, 0x5eed_0006, common::cycle_pres_implies_bmpl);
property!(splitting_identity, 0x5eed_0007, common::split_identity);
property!(join_irreducible_bound, 0x5eed_0008, common::ji_inequality);
property!(mopls_rank_equals_height_when_thin, 0x5eed_0009, common::mopls_rank);
property!(lattice_model_checks_agree, 0x5eed_000a, common::lattice_checks_agree);
property!(graph_search_agrees_with_direct_search, 0x5eed_000b, common::searches_agree);
property!(extract_then_build_round_trips, 0x5eed_000c, common::extract_round_trip);
property!(canonical_formats_round_trip, 0x5eed_000d, common::format_round_trips);
