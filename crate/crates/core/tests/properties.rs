mod common;

use common::naive;
use linlay::generators::{random_layout_instance, random_riffle_spec, RandomLayoutParams};
use linlay::grid::{decreasing_chain_cover, increasing_chain_cover, Point};
use linlay::io::{layout_from_json, layout_to_json, record_from_json, record_to_json, tree_layout_from_json, tree_layout_to_json};
use linlay::transforms::riffle_split;
use linlay::tree::{mixed_to_3stack_subdivision, subdivide_into_tree_layout, Tree};
use linlay::{reverse_segment, separated_flip, validate_layout, Graph, LinearLayout, Page, PageKind, VertexOrder};
use proptest::prelude::*;

/// A random graph, order and page assignment (usually invalid).
fn arbitrary_layout() -> impl Strategy<Value = LinearLayout> {
    (3usize..9)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let m = pairs.len();
            (
                Just(pairs),
                proptest::collection::vec(any::<bool>(), m),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec(0usize..3, m),
                proptest::collection::vec(any::<bool>(), 3),
            )
        })
        .prop_filter_map("needs an edge", |(pairs, keep, order, page, kinds)| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            let n = order.len();
            let g = Graph::new(n, edges).ok()?;
            let mut pages: Vec<Page> = kinds
                .iter()
                .map(|&s| Page::new(if s { PageKind::Stack } else { PageKind::Queue }, vec![]))
                .collect();
            for (i, &e) in g.edges().iter().enumerate() {
                pages[page[i % page.len()]].edges.push(e);
            }
            LinearLayout::new(g, VertexOrder::new(order).ok()?, pages).ok()
        })
}

fn naive_valid(l: &LinearLayout) -> bool {
    let pos = l.order().positions();
    l.pages().iter().all(|p| {
        let spans: Vec<(usize, usize)> = p
            .edges
            .iter()
            .map(|e| (pos[e.u()].min(pos[e.v()]), pos[e.u()].max(pos[e.v()])))
            .collect();
        spans.iter().enumerate().all(|(i, &a)| {
            spans[i + 1..].iter().all(|&b| match p.kind {
                PageKind::Stack => !naive::cross(a, b),
                PageKind::Queue => !naive::nest(a, b),
            })
        })
    })
}

/// Longest chain of points with strictly increasing columns and strictly
/// decreasing rows, by brute force over subsets.
fn longest_antichain(points: &[Point]) -> usize {
    (0u32..1 << points.len())
        .filter(|mask| {
            let mut chosen: Vec<Point> = (0..points.len()).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
            chosen.sort_unstable();
            chosen.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn validator_agrees_with_pairwise_check(l in arbitrary_layout()) {
        prop_assert_eq!(validate_layout(&l).is_valid(), naive_valid(&l));
    }

    #[test]
    fn reversing_the_order_keeps_validity(l in arbitrary_layout()) {
        let r = l.with_order(l.order().reversed()).unwrap();
        prop_assert_eq!(validate_layout(&r).is_valid(), validate_layout(&l).is_valid());
        let whole = reverse_segment(&l, 0, l.order().len() - 1).unwrap();
        prop_assert_eq!(whole.order(), r.order());
    }

    #[test]
    fn layout_json_round_trip(l in arbitrary_layout()) {
        prop_assert_eq!(layout_from_json(&layout_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn chain_covers_are_minimal(points in proptest::collection::vec((0usize..6, 0usize..6), 0..10)) {
        let inc = increasing_chain_cover(&points);
        let mut seen: Vec<usize> = inc.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..points.len()).collect::<Vec<_>>());
        for chain in &inc {
            let mut pts: Vec<Point> = chain.iter().map(|&i| points[i]).collect();
            pts.sort_unstable();
            prop_assert!(pts.windows(2).all(|w| w[0].1 <= w[1].1));
        }
        prop_assert_eq!(inc.len(), longest_antichain(&points));
        let mirrored: Vec<Point> = points.iter().map(|&(c, r)| (c, 5 - r)).collect();
        prop_assert_eq!(decreasing_chain_cover(&points).len(), longest_antichain(&mirrored));
    }

    #[test]
    fn generated_layouts_are_valid(s in 0usize..3, q in 0usize..3, na in 1usize..9, nb in 0usize..9,
                                   sep in any::<bool>(), seed in any::<u64>()) {
        prop_assume!(s + q > 0);
        let p = RandomLayoutParams::new(s, q, na, nb).density(0.6).separated(sep && nb > 0).seed(seed);
        if let Ok(l) = random_layout_instance(p) {
            prop_assert!(validate_layout(&l).is_valid());
            let (ls, lq) = l.signature();
            prop_assert!(ls <= s && lq <= q);
            if sep && nb > 0 {
                prop_assert!(l.separated_first_side().unwrap().is_some());
                let flipped = separated_flip(&l).unwrap();
                prop_assert!(validate_layout(&flipped).is_valid());
            }
        }
    }

    #[test]
    fn riffles_stay_valid(seed in any::<u64>(), k in 1usize..5) {
        let l = random_layout_instance(RandomLayoutParams::new(0, 2, 8, 0).density(0.5).seed(seed)).unwrap();
        let spec = random_riffle_spec(l.order(), k, seed).unwrap();
        let out = riffle_split(&l, &spec).unwrap();
        prop_assert!(validate_layout(&out).is_valid());
        prop_assert!(out.pages().len() <= spec.k() * spec.k() * l.pages().len());
    }

    #[test]
    fn record_and_tree_layout_round_trip(seed in 0u64..500) {
        let l = random_layout_instance(RandomLayoutParams::new(1, 2, 6, 0).density(0.6).seed(seed)).unwrap();
        let (rec, _) = mixed_to_3stack_subdivision(&l).unwrap();
        prop_assert_eq!(record_from_json(&record_to_json(&rec)).unwrap(), rec);
        let q = random_layout_instance(RandomLayoutParams::new(0, 2, 6, 0).density(0.6).seed(seed)).unwrap();
        let (_, tl) = subdivide_into_tree_layout(&q, &Tree::complete_binary(1)).unwrap();
        prop_assert_eq!(tree_layout_from_json(&tree_layout_to_json(&tl)).unwrap(), tl);
    }
}
