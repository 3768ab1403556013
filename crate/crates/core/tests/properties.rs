use cactus_dim::cactus::{regional_set, unicyclic_region, Cactus, Cycle};
use cactus_dim::generate::{extremal_family, random_cactus, random_tree};
use cactus_dim::graph::{all_pairs_distances, cyclomatic_number, is_isometric_subgraph};
use cactus_dim::oracle::{
    is_generator_bruteforce, metric_dimension_bruteforce, zero_forcing_closure,
};
use cactus_dim::resolving::{
    canonical_labeling, critical_vertices, evaluate_configurations, geodesic_triple_exists,
    is_biactive, is_branch_resolving, s_path, CycleState, Mode,
};
use cactus_dim::solver::{compute_dimensions_of, CycleClass};
use cactus_dim::{parse_edge_list, Graph};
use proptest::prelude::*;

fn small_cactus() -> impl Strategy<Value = Graph> {
    (
        1usize..=3,
        0usize..=6,
        3usize..=8,
        0.0f64..0.7,
        any::<u64>(),
    )
        .prop_map(|(c, extra, girth, bias, seed)| {
            random_cactus(3 * c + extra.min(13 - 3 * c), c, girth, bias, seed).unwrap()
        })
}

fn plain_cycle(g: usize) -> Cactus {
    let edges: Vec<_> = (0..g).map(|i| (i, (i + 1) % g)).collect();
    Cactus::new(Graph::from_edges(g, &edges).unwrap()).unwrap()
}

/// Gaps between consecutive active positions, walking forward.
fn gaps(g: usize, active: &[usize]) -> Vec<usize> {
    let mut pos = active.to_vec();
    pos.sort_unstable();
    (0..pos.len())
        .map(|j| (pos[(j + 1) % pos.len()] + g - pos[j]) % g)
        .map(|x| if x == 0 { g } else { x })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trips(g in small_cactus()) {
        let back = parse_edge_list(g.to_edge_list().as_bytes()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn generators_keep_their_shape(c in 0usize..4, extra in 0usize..10, seed in any::<u64>()) {
        let n = (3 * c).max(1) + extra;
        let g = random_cactus(n, c, 7, 0.4, seed).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(cyclomatic_number(&g), c);
        prop_assert!(Cactus::new(g).is_ok());
        let t = random_tree(n, seed).unwrap();
        prop_assert!(t.is_tree());
    }

    #[test]
    fn closure_is_monotone_and_idempotent(g in small_cactus(), bits in any::<u32>(), extra in any::<u32>()) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| bits >> v & 1 == 1).collect();
        let t: Vec<usize> = (0..g.n()).filter(|&v| (bits | extra) >> v & 1 == 1).collect();
        let cs = zero_forcing_closure(&g, &s);
        prop_assert_eq!(zero_forcing_closure(&g, &cs), cs.clone());
        let ct = zero_forcing_closure(&g, &t);
        prop_assert!(cs.iter().all(|v| ct.contains(v)));
    }

    #[test]
    fn generator_property_is_monotone(g in small_cactus(), bits in any::<u32>(), extra in any::<u32>()) {
        let dist = all_pairs_distances(&g);
        let s: Vec<usize> = (0..g.n()).filter(|&v| bits >> v & 1 == 1).collect();
        let t: Vec<usize> = (0..g.n()).filter(|&v| (bits | extra) >> v & 1 == 1).collect();
        for mode in Mode::BOTH {
            if is_generator_bruteforce(&g, &dist, &s, mode) {
                prop_assert!(is_generator_bruteforce(&g, &dist, &t, mode));
            }
        }
    }

    #[test]
    fn minimum_witnesses_are_biactive_branch_resolving(g in small_cactus()) {
        let cactus = Cactus::new(g.clone()).unwrap();
        for mode in Mode::BOTH {
            let (_, s) = metric_dimension_bruteforce(&g, mode, 14).unwrap();
            prop_assert!(is_branch_resolving(&cactus.threads, &s));
            prop_assert!(is_biactive(&cactus.decomposition, &s));
        }
    }

    #[test]
    fn regional_sets_of_minimum_witnesses_generate_regions(g in small_cactus()) {
        let cactus = Cactus::new(g.clone()).unwrap();
        let d = &cactus.decomposition;
        for mode in Mode::BOTH {
            let (_, s) = metric_dimension_bruteforce(&g, mode, 14).unwrap();
            for i in 0..d.cycle_count() {
                let r = unicyclic_region(&g, d, i);
                let h = g.induced(&r.vertices).unwrap();
                let local: Vec<usize> = regional_set(&r, &s)
                    .iter()
                    .map(|&v| r.vertices.binary_search(&v).unwrap())
                    .collect();
                prop_assert!(is_generator_bruteforce(&h, &all_pairs_distances(&h), &local, mode));
            }
        }
    }

    #[test]
    fn regions_cover_and_are_unicyclic_and_isometric(g in small_cactus()) {
        let d = &Cactus::new(g.clone()).unwrap().decomposition;
        let dist = all_pairs_distances(&g);
        let mut covered = vec![false; g.n()];
        for i in 0..d.cycle_count() {
            let r = unicyclic_region(&g, d, i);
            prop_assert!(is_isometric_subgraph(&g, &dist, &r.vertices));
            prop_assert_eq!(cyclomatic_number(&g.induced(&r.vertices).unwrap()), 1);
            for &v in &r.vertices {
                covered[v] = true;
            }
        }
        prop_assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn report_is_self_consistent(g in small_cactus()) {
        let cactus = Cactus::new(g).unwrap();
        let r = compute_dimensions_of(&cactus).unwrap();
        prop_assert_eq!(r.dim, r.l + r.b + r.c_abc + r.tau_vi);
        prop_assert_eq!(r.edim, r.l + r.b + r.c_ade + r.tau_ei);
        prop_assert_eq!(r.certificate_vertex.len(), r.dim);
        prop_assert_eq!(r.certificate_edge.len(), r.edim);
        // every incidence edge joins two negative cycles sharing its vertex
        for (edges, negative) in [
            (&r.incidence_vi.edges, r.cycles.iter().map(|c| c.class_abc == CycleClass::Negative).collect::<Vec<_>>()),
            (&r.incidence_ei.edges, r.cycles.iter().map(|c| c.class_ade == CycleClass::Negative).collect()),
        ] {
            for &(i, j, v) in edges {
                prop_assert!(negative[i] && negative[j]);
                prop_assert!(r.cycles[i].vertices.contains(&v) && r.cycles[j].vertices.contains(&v));
            }
        }
    }

    #[test]
    fn positive_cycles_lose_criticality(g in small_cactus()) {
        let cactus = Cactus::new(g).unwrap();
        let d = &cactus.decomposition;
        let r = compute_dimensions_of(&cactus).unwrap();
        for c in &r.cycles {
            for (mode, class) in [(Mode::Vertex, c.class_abc), (Mode::Edge, c.class_ade)] {
                if class == CycleClass::Positive {
                    let act = cactus_dim::resolving::active_vertices(d, c.index, r.certificate(mode));
                    prop_assert!(critical_vertices(d.cycle(c.index), &act).for_mode(mode).is_empty());
                }
            }
        }
    }

    #[test]
    fn canonical_k_is_girth_minus_largest_gap(g in 3usize..12, bits in 1u32..4096) {
        let cactus = plain_cycle(g);
        let c: &Cycle = cactus.decomposition.cycle(0);
        let active: Vec<usize> = (0..g).filter(|&p| bits >> p & 1 == 1).collect();
        prop_assume!(!active.is_empty());
        let p = canonical_labeling(c, &active);
        let max_gap = *gaps(g, &active).iter().max().unwrap();
        prop_assert_eq!(p.k, g - max_gap);
        prop_assert_eq!(p.active_positions[0], 0);
        prop_assert!(active.contains(&p.labeled[0]));
        let path = s_path(c, &active).unwrap();
        prop_assert_eq!(path.length, if active.len() == 1 { 0 } else { g - max_gap });
        prop_assert_eq!(path.unique, gaps(g, &active).iter().filter(|&&x| x == max_gap).count() == 1 || active.len() == 1);
    }

    #[test]
    fn geodesic_triples_clear_every_flag(g in 3usize..14, bits in 1u32..16384, threads in any::<u64>()) {
        let cactus = plain_cycle(g);
        let c = cactus.decomposition.cycle(0);
        let active: Vec<bool> = (0..g).map(|p| bits >> p & 1 == 1).collect();
        let act: Vec<usize> = (0..g).filter(|&p| active[p]).collect();
        prop_assume!(geodesic_triple_exists(c, &act));
        // arbitrary S-free threads: lengths 1..=8 at some positions
        let free_threads = (0..g)
            .map(|p| match threads >> (4 * p % 60) & 15 {
                0..=7 => Vec::new(),
                x => vec![((x - 7) as usize, 100 + p)],
            })
            .collect();
        let report = evaluate_configurations(c, &CycleState { active, free_threads });
        prop_assert!(!report.flags.any());
    }
}

#[test]
fn extremal_cycles_are_positive_with_one_branch_active_vertex() {
    for b in 0..3 {
        for c in 2..5 {
            let cactus = Cactus::new(extremal_family(b, c).unwrap()).unwrap();
            let r = compute_dimensions_of(&cactus).unwrap();
            assert_eq!((r.l, r.dim, r.edim), (b, b + 2 * c, b + 2 * c));
            for cy in &r.cycles {
                assert_eq!(cy.b, 1);
                assert_eq!(cy.class_abc, CycleClass::Positive);
                assert_eq!(cy.class_ade, CycleClass::Positive);
            }
        }
    }
}
