use koszulgraph_core::Graph;
use koszulgraph_workbench::{
    classify, emit_edgelist, emit_graph6, parse_edgelist, parse_graph6, Classification,
    ClassifyOptions,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let m = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trips_up_to_the_cap(g in graph(64)) {
        let s = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        prop_assert_eq!(emit_graph6(&parse_graph6(&s).unwrap()), s);
    }

    #[test]
    fn edgelist_round_trips(g in graph(20)) {
        prop_assert_eq!(parse_edgelist(&emit_edgelist(&g)).unwrap(), g);
    }

    #[test]
    fn stored_classifications_revalidate(g in graph(9)) {
        let c = classify(&g, ClassifyOptions::default()).unwrap();
        let back: Classification = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert!(back.revalidate().is_ok());
        prop_assert_eq!(back.graph().unwrap(), g);
    }
}
