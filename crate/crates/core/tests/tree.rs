use linlay::generators::{complete_graph, random_layout_instance, RandomLayoutParams};
use linlay::layout::{validate_layout, LinearLayout, Page, PageKind};
use linlay::solver::Solver;
use linlay::tree::{
    contract_subdivision, lambda_values, mixed_to_1s1q_subdivision, mixed_to_3stack_subdivision,
    separated_1sq_to_1s6q_subdivision, subdivide_into_tree_layout, subdivide_once_separated,
    tree_layout_to_mixed, validate_tree_layout, EdgeColor, SubdivisionRecord, Tree, TreeLayout,
};
use linlay::{Edge, Graph, VertexOrder};

fn ceil_log2(x: usize) -> usize {
    (0..).find(|&h| 1usize << h >= x).unwrap()
}

fn page_kind_of(layout: &LinearLayout) -> impl Fn(Edge) -> PageKind + '_ {
    let pages = layout.page_of_edges();
    move |e| layout.pages()[pages[&e]].kind
}

fn assert_round_trip(layout: &LinearLayout, rec: &SubdivisionRecord) {
    rec.validate().unwrap();
    let (g, map) = contract_subdivision(rec).unwrap();
    assert_eq!(g.edges(), layout.graph().edges());
    assert_eq!(map.radius, rec.max_division_count().div_ceil(2));
}

fn mixed(s: usize, q: usize, seed: u64) -> LinearLayout {
    random_layout_instance(RandomLayoutParams::new(s, q, 7, 0).density(0.7).seed(seed)).unwrap()
}

#[test]
fn single_bag_tree_is_its_own_layout() {
    let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let tl = TreeLayout {
        tree: Tree::single(),
        bags: vec![vec![0, 1, 2]],
        s_of: vec![1],
        q_of: vec![0],
        k_of: vec![0],
        coloring: Some(vec![EdgeColor::Red]),
    };
    assert!(validate_tree_layout(&g, &tl).is_valid());
    let out = tree_layout_to_mixed(&g, &tl, &[0]).unwrap();
    assert_eq!(out.signature(), (1, 0));
    assert_eq!(out.order().as_slice(), &[0, 1, 2]);
}

#[test]
fn one_page_one_leaf() {
    let g = complete_graph(3).unwrap();
    let l = Solver::default().minimize(&g, linlay::solver::Measure::Qn).unwrap().1;
    assert_eq!(l.signature(), (0, 1));
    let mut tree = Tree::single();
    tree.add_child(0);
    let (rec, tl) = subdivide_into_tree_layout(&l, &tree).unwrap();
    let report = validate_tree_layout(&rec.host, &tl);
    assert!(report.is_simple(), "{report:?}");
    assert!(g.edges().iter().all(|&e| rec.division_count(e) == Some(2)));
    assert_eq!(tl.bags[0], l.order().as_slice());
}

#[test]
fn random_queue_layouts_on_binary_trees() {
    for seed in 0..20 {
        let l = mixed(0, 4, seed);
        let (rec, tl) = subdivide_into_tree_layout(&l, &Tree::complete_binary(2)).unwrap();
        let report = validate_tree_layout(&rec.host, &tl);
        assert!(report.is_simple(), "seed {seed}: {report:?}");
        assert!(rec.paths.values().all(|p| p.len() == 6));
        assert_round_trip(&l, &rec);
    }
}

#[test]
fn random_stack_layouts_on_binary_trees() {
    for seed in 0..20 {
        let l = mixed(3, 0, seed);
        let (rec, tl) = subdivide_into_tree_layout(&l, &Tree::complete_binary(2)).unwrap();
        assert!(validate_tree_layout(&rec.host, &tl).is_simple(), "seed {seed}");
    }
}

#[test]
fn scrambled_bag_is_reported() {
    let l = mixed(0, 2, 3);
    let (rec, mut tl) = subdivide_into_tree_layout(&l, &Tree::complete_binary(1)).unwrap();
    assert!(validate_tree_layout(&rec.host, &tl).is_valid());
    let bag = &mut tl.bags[1];
    bag.reverse();
    let report = validate_tree_layout(&rec.host, &tl);
    assert!(!report.is_valid());
}

#[test]
fn mixed_input_is_rejected() {
    let l = mixed(1, 1, 0);
    assert!(subdivide_into_tree_layout(&l, &Tree::complete_binary(1)).is_err());
}

#[test]
fn once_separated() {
    for seed in 0..10 {
        let l = mixed(0, 3, seed);
        let (rec, out) = subdivide_once_separated(&l).unwrap();
        assert!(validate_layout(&out).is_valid());
        assert!(out.separated_first_side().unwrap().is_some());
        assert!(out.signature().1 <= 4);
        assert!(rec.paths.values().all(|p| p.len() == 3));
        assert_eq!(&out.order().as_slice()[..l.graph().n()], l.order().as_slice());
        assert_round_trip(&l, &rec);
    }
}

#[test]
fn three_stack_counts() {
    for s in 1..=4 {
        for q in 1..=4 {
            let l = mixed(s, q, (s * 10 + q) as u64);
            let (rec, out) = mixed_to_3stack_subdivision(&l).unwrap();
            let h = ceil_log2(s.max(q));
            assert!(validate_layout(&out).is_valid(), "({s},{q})");
            assert!(out.is_pure_stack() && out.signature().0 <= 3, "({s},{q}) {:?}", out.signature());
            let kind = page_kind_of(&l);
            for (&e, p) in &rec.paths {
                let want = match kind(e) {
                    PageKind::Stack => 2 * h + 2,
                    PageKind::Queue => 2 * h + 3,
                };
                assert_eq!(p.len() - 2, want);
            }
            assert_round_trip(&l, &rec);
        }
    }
}

#[test]
fn one_stack_one_queue_counts() {
    for s in 1..=4 {
        for q in 1..=4 {
            let l = mixed(s, q, (s * 100 + q) as u64);
            let (rec, out) = mixed_to_1s1q_subdivision(&l).unwrap();
            let h = ceil_log2(s.max(q));
            assert!(validate_layout(&out).is_valid(), "({s},{q})");
            let (os, oq) = out.signature();
            assert!(os <= 1 && oq <= 1, "({s},{q}) -> ({os},{oq})");
            let kind = page_kind_of(&l);
            for (&e, p) in &rec.paths {
                let want = match kind(e) {
                    PageKind::Stack => 4 * h + 4,
                    PageKind::Queue => 4 * h + 6,
                };
                assert_eq!(p.len() - 2, want);
            }
            assert_round_trip(&l, &rec);
        }
    }
}

#[test]
fn pure_inputs_go_through_both_pipelines() {
    for (s, q) in [(2, 0), (0, 3)] {
        let l = mixed(s, q, 5);
        let (_, a) = mixed_to_3stack_subdivision(&l).unwrap();
        assert!(validate_layout(&a).is_valid() && a.signature().0 <= 3);
        let (_, b) = mixed_to_1s1q_subdivision(&l).unwrap();
        assert!(validate_layout(&b).is_valid());
    }
}

#[test]
fn separated_six_queue_counts() {
    for q in 1..=8 {
        for seed in 0..3 {
            let l = random_layout_instance(
                RandomLayoutParams::new(1, q, 6, 6).density(0.6).separated(true).seed(seed * 7 + q as u64),
            )
            .unwrap();
            let (rec, out) = separated_1sq_to_1s6q_subdivision(&l).unwrap();
            assert!(validate_layout(&out).is_valid());
            assert!(out.separated_first_side().unwrap().is_some());
            let (os, oq) = out.signature();
            assert!(os <= 1 && oq <= 6, "q={q}: ({os},{oq})");
            let kind = page_kind_of(&l);
            let (_, lq) = l.signature();
            for (&e, p) in &rec.paths {
                let want = match kind(e) {
                    PageKind::Stack => 0,
                    PageKind::Queue => 2 * ceil_log2(lq),
                };
                assert_eq!(p.len() - 2, want);
            }
            assert_round_trip(&l, &rec);
        }
    }
}

#[test]
fn lambda_bounds_hold_on_constructed_trees() {
    let l = mixed(2, 2, 9);
    let (rec, mut tl) = subdivide_into_tree_layout(
        &LinearLayout::new(
            l.graph().edge_subgraph(l.pages().iter().filter(|p| p.kind == PageKind::Queue).flat_map(|p| p.edges.clone())),
            l.order().clone(),
            l.pages().iter().filter(|p| p.kind == PageKind::Queue).cloned().collect::<Vec<Page>>(),
        )
        .unwrap(),
        &Tree::complete_binary(1),
    )
    .unwrap();
    tl.coloring = Some(vec![EdgeColor::Red; tl.tree.len()]);
    let order = tl.tree.bfs();
    let (ls, lq) = lambda_values(&tl, &order).unwrap();
    assert_eq!(ls, 0);
    assert!(lq <= 3);
    let out = tree_layout_to_mixed(&rec.host, &tl, &order).unwrap();
    assert!(out.signature().1 <= lq);
}

#[test]
fn node_order_must_put_parents_first() {
    let l = mixed(0, 2, 1);
    let (_, mut tl) = subdivide_into_tree_layout(&l, &Tree::complete_binary(1)).unwrap();
    tl.coloring = Some(vec![EdgeColor::Red; 3]);
    assert!(lambda_values(&tl, &[1, 0, 2]).is_err());
    assert!(lambda_values(&tl, &[0, 1]).is_err());
    let _ = VertexOrder::identity(1);
}
