mod common;

use common::naive::{self, Kind};
use linlay::generators::{complete_bipartite, complete_graph};
use linlay::solver::{max_rainbow, max_twist, Measure};
use linlay::{validate_layout, Error, Graph, PageBudget, Solver, SolverConfig, VertexOrder};

fn both() -> [Solver; 2] {
    [Solver::default(), Solver::new(SolverConfig::sequential())]
}

#[test]
fn small_connected_graphs_match_the_enumerator() {
    let graphs = common::connected_graphs_up_to(5);
    assert_eq!(graphs.len(), 30);
    let solver = Solver::default();
    for g in &graphs {
        for (s, q) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            let got = solver.feasible(g, PageBudget::new(s, q)).unwrap();
            assert_eq!(got.feasible, naive::feasible(g, s, q, false), "{g:?} ({s},{q})");
            if let Some(w) = got.witness {
                assert!(validate_layout(&w).is_valid());
                assert_eq!(w.graph().edges(), g.edges());
            }
        }
    }
}

#[test]
fn separated_budgets_match_the_enumerator() {
    let solver = Solver::default();
    for g in common::corpus(60).iter().filter_map(common::with_two_coloring) {
        for (s, q) in [(1, 0), (0, 1), (1, 1), (0, 2)] {
            let got = solver.feasible(&g, PageBudget::separated(s, q)).unwrap();
            assert_eq!(got.feasible, naive::feasible(&g, s, q, true), "{g:?} sep ({s},{q})");
            if let Some(w) = got.witness {
                assert!(w.separated_first_side().unwrap().is_some());
                assert!(validate_layout(&w).is_valid());
            }
        }
    }
}

#[test]
fn layout_numbers_of_small_graphs() {
    for g in common::corpus(40).iter().take(40) {
        let solver = Solver::default();
        assert_eq!(solver.stack_number(g).unwrap(), naive::minimum(g, Some(Kind::Stack), false));
        assert_eq!(solver.queue_number(g).unwrap(), naive::minimum(g, Some(Kind::Queue), false));
        assert_eq!(solver.mixed_number(g).unwrap(), naive::minimum(g, None, false));
    }
}

#[test]
fn complete_graph_numbers() {
    for solver in both() {
        let k6 = complete_graph(6).unwrap();
        assert_eq!(solver.stack_number(&k6).unwrap(), 3);
        assert_eq!(solver.queue_number(&k6).unwrap(), 3);
        assert_eq!(solver.mixed_number(&k6).unwrap(), 2);
        let k5 = complete_graph(5).unwrap();
        assert_eq!(solver.stack_number(&k5).unwrap(), 3);
        assert_eq!(solver.queue_number(&k5).unwrap(), 2);
    }
}

#[test]
fn k33_separated_numbers() {
    let g = complete_bipartite(3, 3).unwrap();
    for solver in both() {
        assert!(solver.feasible(&g, PageBudget::separated(1, 1)).unwrap().feasible);
        assert!(!solver.feasible(&g, PageBudget::separated(0, 2)).unwrap().feasible);
        assert!(!solver.feasible(&g, PageBudget::separated(2, 0)).unwrap().feasible);
        assert_eq!(solver.separated_queue_number(&g).unwrap(), 3);
        assert_eq!(solver.separated_stack_number(&g).unwrap(), 3);
        assert_eq!(solver.separated_mixed_number(&g).unwrap(), 2);
    }
}

#[test]
fn witnesses_are_identical_across_modes() {
    let g = complete_graph(6).unwrap();
    let [par, seq] = both();
    let a = par.feasible(&g, PageBudget::new(1, 1)).unwrap();
    let b = seq.feasible(&g, PageBudget::new(1, 1)).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.nodes_explored, b.nodes_explored);
    let (_, w) = par.minimize(&g, Measure::Qn).unwrap();
    assert_eq!(w, seq.minimize(&g, Measure::Qn).unwrap().1);
}

#[test]
fn guards_and_bad_budgets() {
    let g = complete_graph(5).unwrap();
    let small = Solver::new(SolverConfig::default().with_max_vertices(4));
    assert!(matches!(small.stack_number(&g), Err(Error::TooLarge { .. })));
    assert!(Solver::default().feasible(&g, PageBudget::new(0, 0)).is_err());
    assert!(matches!(
        Solver::default().feasible(&g, PageBudget::separated(1, 1)),
        Err(Error::NoBipartition)
    ));
}

#[test]
fn twist_and_rainbow_match_clique_search() {
    for (i, g) in common::corpus(80).iter().enumerate() {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.rotate_left(i % g.n());
        if i % 3 == 0 {
            order.reverse();
        }
        let vo = VertexOrder::new(order.clone()).unwrap();
        assert_eq!(max_twist(g, &vo).unwrap(), naive::twist(g, &order), "{g:?} {order:?}");
        assert_eq!(max_rainbow(g, &vo).unwrap(), naive::rainbow(g, &order), "{g:?} {order:?}");
    }
}

#[test]
fn twists_and_rainbows_bound_the_witness() {
    let g: Graph = complete_graph(6).unwrap();
    let (sn, w) = Solver::default().minimize(&g, Measure::Sn).unwrap();
    assert!(max_twist(&g, w.order()).unwrap() <= sn);
    let (qn, w) = Solver::default().minimize(&g, Measure::Qn).unwrap();
    assert!(max_rainbow(&g, w.order()).unwrap() <= qn);
}
