use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};
use proptest::strategy::Strategy as _;

use covenc::check::{check_isp_encoding, CheckMode};
use covenc::cover::{greedy_biclique_cover, greedy_clique_cover, Cover};
use covenc::dimacs::{parse_dimacs, to_dimacs};
use covenc::problems::{encode_independent_set, Strategy};
use covenc::{Graph, IntervalVariant, VarMap};

fn strategies() -> [Strategy; 3] {
    [Strategy::Direct, Strategy::CliqueCover, Strategy::BicliqueCover]
}

#[test]
fn interval_encoding_survives_file_round_trip() {
    let g = Graph::interval(5, IntervalVariant::HalfOpen).unwrap();
    let g2 = Graph::parse(&g.to_text()).unwrap();
    assert_eq!(g, g2);
    for strategy in [Strategy::Direct, Strategy::recursive(), Strategy::Block83 { k: Some(3) }] {
        let mut pool = VarMap::new();
        let f = encode_independent_set(&g2, None, strategy, &mut pool).unwrap();
        let f2 = parse_dimacs(&to_dimacs(&f)).unwrap();
        assert_eq!(f.clauses(), f2.clauses());
        let map = VarMap::parse_sidecar(pool.to_sidecar().as_bytes()).unwrap();
        let verdict = check_isp_encoding(&g, &f2, &map, CheckMode::Exhaustive).unwrap();
        assert!(verdict.passed(), "{strategy}");
    }
}

#[test]
fn cover_files_round_trip() {
    let g = Graph::petersen();
    let cc = Cover::Clique(greedy_clique_cover(&g));
    assert_eq!(Cover::parse(&cc.to_text()).unwrap(), cc);
    let bc = Cover::Biclique(greedy_biclique_cover(&g));
    assert_eq!(Cover::parse(&bc.to_text()).unwrap(), bc);
    assert!(Cover::parse("c 1 2\nb | A: 1 | B: 2\n").is_err());
}

#[test]
fn encodings_are_deterministic() {
    let g = Graph::random(14, 0.5, 21).unwrap();
    for strategy in strategies() {
        let run = || {
            let mut pool = VarMap::new();
            let f = encode_independent_set(&g, Some(3), strategy, &mut pool).unwrap();
            (to_dimacs(&f), pool.to_sidecar())
        };
        assert_eq!(run(), run(), "{strategy}");
    }
}

fn graph_strategy() -> impl proptest::strategy::Strategy<Value = Graph> {
    (2usize..=9, any::<u64>(), 0.0f64..=1.0).prop_map(|(n, seed, p)| Graph::random(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covers_are_valid_and_encodings_correct(g in graph_strategy()) {
        let cc = greedy_clique_cover(&g);
        prop_assert!(cc.validate(&g).is_ok());
        let bc = greedy_biclique_cover(&g);
        prop_assert!(bc.validate(&g).is_ok());
        for strategy in strategies() {
            let mut pool = VarMap::new();
            let f = encode_independent_set(&g, None, strategy, &mut pool).unwrap();
            prop_assert!(check_isp_encoding(&g, &f, &pool, CheckMode::Exhaustive).unwrap().passed());
        }
    }

    #[test]
    fn graph_text_round_trips(g in graph_strategy()) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trips(g in graph_strategy(), k in 0usize..4) {
        let mut pool = VarMap::new();
        let f = encode_independent_set(&g, Some(k), Strategy::BicliqueCover, &mut pool).unwrap();
        let text = to_dimacs(&f);
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(to_dimacs(&back), text);
    }
}
