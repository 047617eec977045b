use linlay::generators::{
    challenge_graph, challenge_permutation, complete_bipartite, complete_graph, diagonal_grid_instance,
    permuted_challenge_layout, random_layout_instance, CellPattern, EdgeClass, RandomLayoutParams,
};
use linlay::io::layout_to_json;
use linlay::{validate_layout, Error};

#[test]
fn challenge_family() {
    for k in 1..=6 {
        let inst = challenge_graph(k).unwrap();
        let n = 1usize << k;
        assert_eq!(inst.raw_edge_count, 3 * n);
        assert!(inst.graph.max_degree() <= 3);
        assert!(validate_layout(&inst.mixed_layout).is_valid());
        assert_eq!(inst.mixed_layout.signature(), (1, 2));
        assert!(inst.mixed_layout.separated_first_side().unwrap().is_some());
        for class in [EdgeClass::Red, EdgeClass::Brown, EdgeClass::Blue] {
            assert!(inst.classes.iter().any(|&(_, c)| c == class));
        }

        let perm = challenge_permutation(k).unwrap();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        let l = permuted_challenge_layout(&inst, &perm).unwrap();
        assert!(validate_layout(&l).is_valid(), "k = {k}");
        assert!(l.is_pure_queue() && l.pages().len() <= 4, "k = {k}: {:?}", l.signature());
        assert!(l.separated_first_side().unwrap().is_some());
    }
    assert!(challenge_graph(0).is_err());
}

#[test]
fn g16_has_48_raw_edges() {
    let inst = challenge_graph(4).unwrap();
    assert_eq!(inst.raw_edge_count, 48);
    assert!(inst.permutation_rule_provisional);
}

#[test]
fn complete_families() {
    assert_eq!(complete_graph(6).unwrap().m(), 15);
    let k = complete_bipartite(3, 4).unwrap();
    assert_eq!((k.n(), k.m()), (7, 12));
    assert!(k.is_bipartitioned());
    assert!(complete_graph(1).is_err());
}

#[test]
fn diagonal_grids() {
    let (l, blocks) = diagonal_grid_instance(1, 1, &CellPattern::Increasing, 0).unwrap();
    assert_eq!(l.signature(), (0, 1));
    assert!(blocks.col_cuts.is_empty());
    let (l, _) = diagonal_grid_instance(2, 3, &CellPattern::Alternating, 5).unwrap();
    assert!(validate_layout(&l).is_valid());
    assert_eq!(l.pages().len(), 6);
    assert!(matches!(
        diagonal_grid_instance(0, 1, &CellPattern::Increasing, 0),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn seeds_reproduce_bytes() {
    let p = RandomLayoutParams::new(2, 2, 9, 7).density(0.5).separated(true).seed(42);
    let a = layout_to_json(&random_layout_instance(p.clone()).unwrap());
    let b = layout_to_json(&random_layout_instance(p).unwrap());
    assert_eq!(a, b);
    let c = layout_to_json(&random_layout_instance(RandomLayoutParams::new(2, 2, 9, 7).density(0.5).separated(true).seed(43)).unwrap());
    assert_ne!(a, c);
}
