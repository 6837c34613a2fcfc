use proptest::prelude::*;

use xorkneser::analysis::{
    gamma_raw, permutation_type_mc, power_lower, power_upper, CrossMatching,
};
use xorkneser::constructions::{
    build_core, construct_f2_lower, core3, core4, core5, core_to_family, extend_power, fuse,
    matrix_family, min_block_size, plane_family, Core,
};
use xorkneser::setsystem::{decode, decode_any, decode_json, encode, encode_json};
use xorkneser::solver::{
    brute_force_f, build_product_graph, check_rank_bound, max_clique, max_clique_parallel,
    parse_dimacs, to_dimacs, CliqueGraph, DEFAULT_NODE_BUDGET,
};
use xorkneser::{verify_family, xor_adjacent, Family, Layout, TransversalSet};

fn layout_strategy() -> impl Strategy<Value = Layout> {
    (1usize..=4, 1usize..=6)
        .prop_flat_map(|(ell, n)| (Just(ell), Just(n), 1..=n))
        .prop_map(|(ell, n, k)| Layout::new(ell, n, k).unwrap())
}

fn member_strategy(layout: Layout) -> impl Strategy<Value = Vec<usize>> {
    let per_block: Vec<_> = (0..layout.ell())
        .map(|b| {
            proptest::sample::subsequence((0..layout.n()).collect::<Vec<_>>(), layout.k()).prop_map(
                move |s| {
                    s.into_iter()
                        .map(|x| b * layout.n() + x)
                        .collect::<Vec<_>>()
                },
            )
        })
        .collect();
    per_block.prop_map(|blocks| blocks.concat())
}

fn family_strategy(max: usize) -> impl Strategy<Value = (Layout, Vec<Vec<usize>>)> {
    layout_strategy().prop_flat_map(move |layout| {
        (
            Just(layout),
            proptest::collection::vec(member_strategy(layout), 0..max),
        )
    })
}

fn dedup_family(layout: Layout, mut lists: Vec<Vec<usize>>) -> Family {
    for l in lists.iter_mut() {
        l.sort_unstable();
    }
    lists.sort();
    lists.dedup();
    Family::from_lists(layout, &lists).unwrap()
}

// Pairwise oracle written directly on element lists.
fn naive_valid(layout: &Layout, lists: &[Vec<usize>]) -> bool {
    let n = layout.n();
    lists.iter().enumerate().all(|(i, a)| {
        lists[i + 1..].iter().all(|b| {
            let disjoint = (0..layout.ell())
                .filter(|&blk| !a.iter().any(|x| x / n == blk && b.contains(x)))
                .count();
            disjoint % 2 == 1
        })
    })
}

fn random_graph(max_vertices: usize) -> impl Strategy<Value = CliqueGraph> {
    (1..=max_vertices)
        .prop_flat_map(|v| {
            (
                Just(v),
                proptest::collection::vec(any::<bool>(), v * (v - 1) / 2),
            )
        })
        .prop_map(|(v, bits)| {
            let mut g = CliqueGraph::new(v);
            let mut it = bits.into_iter();
            for a in 0..v {
                for b in a + 1..v {
                    if it.next().unwrap() {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            g
        })
}

fn exhaustive_clique_number(g: &CliqueGraph) -> usize {
    let v = g.vertex_count();
    (0u32..1 << v)
        .filter(|mask| {
            let verts: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
            g.is_clique(&verts)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn random_core() -> impl Strategy<Value = Core> {
    (0usize..3, any::<proptest::sample::Index>()).prop_map(|(which, idx)| {
        let c = [core3(), core4(), core5()][which].clone();
        let ell = c.ell();
        c.rotate_to_front(idx.index(ell)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjacency_is_symmetric_and_irreflexive(
        (layout, a, b) in layout_strategy().prop_flat_map(|l| (Just(l), member_strategy(l), member_strategy(l)))
    ) {
        let s = TransversalSet::transversal(&layout, &a).unwrap();
        let t = TransversalSet::transversal(&layout, &b).unwrap();
        prop_assert_eq!(xor_adjacent(&s, &t, &layout).unwrap(), xor_adjacent(&t, &s, &layout).unwrap());
        // a set is disjoint from itself in no block
        prop_assert!(!xor_adjacent(&s, &s, &layout).unwrap());
    }

    #[test]
    fn verify_agrees_with_pairwise_oracle((layout, lists) in family_strategy(40)) {
        let f = dedup_family(layout, lists);
        let report = verify_family(&f);
        prop_assert_eq!(report.valid, naive_valid(&layout, &f.member_lists()));
        prop_assert_eq!(report.valid, report.violation.is_none());
    }

    #[test]
    fn text_and_json_round_trip((layout, lists) in family_strategy(30)) {
        let f = dedup_family(layout, lists);
        prop_assert!(decode(&encode(&f)).unwrap() == f);
        prop_assert!(decode_json(&encode_json(&f)).unwrap() == f);
        prop_assert!(decode_any(&encode_json(&f)).unwrap() == f);
        prop_assert_eq!(encode(&decode(&encode(&f)).unwrap()), encode(&f));
    }

    #[test]
    fn random_fusion_trees_stay_cores(parts in proptest::collection::vec(random_core(), 1..12)) {
        let mut acc = parts[0].clone();
        for c in &parts[1..] {
            if acc.ell() + c.ell() - 1 > 30 {
                break;
            }
            let fused = fuse(&acc, c).unwrap();
            prop_assert_eq!(fused.ell(), acc.ell() + c.ell() - 1);
            prop_assert_eq!(fused.universe_size(), acc.universe_size() + c.universe_size());
            fused.validate().unwrap();
            acc = fused;
        }
        let sizes: Vec<usize> = acc.classes().iter().map(|c| c.len() + 1).collect();
        let f = core_to_family(&acc, &sizes).unwrap();
        prop_assert!(verify_family(&f).valid);
    }

    #[test]
    fn f2_size_formula(k in 1usize..=4, n in 1usize..=200) {
        let central = (0..k).fold(1usize, |acc, i| acc * (2 * k - i) / (i + 1));
        match construct_f2_lower(n, k) {
            Ok(f) => {
                prop_assert!(n >= (central - 2) * k * k / 2 && n >= k);
                prop_assert_eq!(f.len(), n / k + central * k / 2 - k);
                prop_assert!(verify_family(&f).valid);
            }
            Err(_) => prop_assert!(n < min_block_size(k).unwrap()),
        }
    }

    #[test]
    fn clique_search_matches_exhaustive(g in random_graph(14)) {
        let r = max_clique(&g, DEFAULT_NODE_BUDGET);
        prop_assert!(r.is_exact());
        prop_assert!(g.is_clique(&r.witness));
        prop_assert_eq!(r.size, exhaustive_clique_number(&g));
        prop_assert_eq!(&max_clique_parallel(&g, DEFAULT_NODE_BUDGET, 3), &r);
    }

    #[test]
    fn dimacs_round_trip(g in random_graph(30)) {
        let back = parse_dimacs(&to_dimacs(&g, Some("round trip"))).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn subfamilies_of_k1_constructions_keep_rank_law(
        ell in 3usize..=12,
        keep in proptest::collection::vec(any::<bool>(), 64),
    ) {
        let core = build_core(ell).unwrap();
        let full = core_to_family(&core, &vec![4; ell]).unwrap();
        let lists: Vec<Vec<usize>> = full
            .member_lists()
            .into_iter()
            .zip(keep.iter().cycle())
            .filter_map(|(m, &k)| k.then_some(m))
            .collect();
        let f = Family::from_lists(*full.layout(), &lists).unwrap();
        prop_assert!(verify_family(&f).valid);
        let c = check_rank_bound(&f).unwrap();
        prop_assert!(c.holds);
        prop_assert!(f.len() <= f.layout().universe() - ell + 1);
    }

    #[test]
    fn extension_preserves_validity(n in 8usize..=20, pick in any::<proptest::sample::Index>()) {
        let f = construct_f2_lower(n, 2).unwrap();
        let a = pick.index(n - 1);
        let g = extend_power(&f, &[a, a + 1]).unwrap();
        prop_assert_eq!(g.layout().ell(), 3);
        prop_assert_eq!(g.len(), f.len());
        prop_assert!(verify_family(&g).valid);
    }

    #[test]
    fn gamma_decreases_beyond_four(a in 5usize..=30, b in 5usize..=30) {
        prop_assume!(a < b);
        prop_assert!(gamma_raw(a).unwrap() > gamma_raw(b).unwrap());
    }

    #[test]
    fn monte_carlo_is_seed_deterministic(seed in any::<u64>()) {
        let m = CrossMatching::new(2, vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]]);
        let a = permutation_type_mc(&m, 500, seed).unwrap();
        let b = permutation_type_mc(&m, 500, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.counts.iter().sum::<u64>() + a.typeless, 500);
    }
}

#[test]
fn first_power_is_the_kneser_graph() {
    for k in 1..=3 {
        for n in k..=8 {
            let g = build_product_graph(n, k, 1).unwrap();
            let labels = g.labels().unwrap();
            for u in 0..g.vertex_count() {
                let a = labels.vertex_set(u).to_vec();
                for v in 0..g.vertex_count() {
                    let b = labels.vertex_set(v).to_vec();
                    let disjoint = a.iter().all(|x| !b.contains(x));
                    assert_eq!(
                        g.adjacent(u, v),
                        disjoint,
                        "KG({n},{k}) vertices {a:?} {b:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn brute_force_values_are_monotone_and_bounded() {
    for (k, ell, ns) in [(1, 2, 1..=6), (1, 3, 1..=4), (2, 2, 2..=7)] {
        let mut prev = 0;
        for n in ns {
            let r = brute_force_f(n, k, ell, DEFAULT_NODE_BUDGET).unwrap();
            assert!(r.is_exact());
            assert!(
                r.size >= prev,
                "f_{ell}({n},{k}) = {} dropped below {prev}",
                r.size
            );
            let size = num_bigint::BigUint::from(r.size);
            assert!(
                size <= power_upper(n, k, ell).unwrap(),
                "f_{ell}({n},{k}) above power_upper"
            );
            if let Some(lo) = power_lower(n, k, ell).unwrap() {
                assert!(size >= lo, "f_{ell}({n},{k}) below power_lower");
            }
            prev = r.size;
        }
    }
}

#[test]
fn plane_families_meet_the_rank_bound_with_equality() {
    for q in [3, 5, 7] {
        let f = plane_family(q).unwrap();
        let c = check_rank_bound(&f).unwrap();
        assert!(c.holds);
        assert_eq!(f.len(), q * q);
        assert_eq!(f.len(), f.layout().universe() - f.layout().ell() + 1);
    }
}

#[test]
fn matrix_families_small_grid() {
    for t in 2..=3 {
        for k in t..=3 {
            for n in k..=3 * k {
                let f = matrix_family(n, k, t).unwrap();
                assert!(verify_family(&f).valid, "matrix_family({n},{k},{t})");
                assert_eq!(f.len(), (n / k).pow(t as u32));
            }
        }
    }
}

#[test]
fn scheduled_cores_stay_small_up_to_sixty() {
    for ell in 3..=60 {
        let core = build_core(ell).unwrap();
        assert_eq!(core.ell(), ell);
        assert!(core.universe_size() <= 2 * ell + 1, "ell = {ell}");
        let sizes: Vec<usize> = (0..ell).map(|i| 2 + (i * 7) % 5).collect();
        let f = core_to_family(&core, &sizes).unwrap();
        assert_eq!(
            f.len(),
            sizes.iter().sum::<usize>() - core.universe_size(),
            "ell = {ell}"
        );
        assert!(verify_family(&f).valid, "ell = {ell}");
    }
}

#[test]
fn brute_force_values_grow_with_ell() {
    for (n, k) in [(2, 1), (3, 1), (4, 2)] {
        let values: Vec<usize> = (1..=3)
            .map(|ell| brute_force_f(n, k, ell, DEFAULT_NODE_BUDGET).unwrap().size)
            .collect();
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "n = {n}, k = {k}: {values:?}"
        );
    }
}
