//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::Instant;

use cactus_dim::cactus::{unicyclic_region, Cactus};
use cactus_dim::generate::{extremal_family, random_cactus, random_tree};
use cactus_dim::graph::{all_pairs_distances, is_isometric_subgraph};
use cactus_dim::oracle::{audit_bounds, is_generator_bruteforce, metric_dimension_bruteforce};
use cactus_dim::resolving::{
    evaluate_configurations, geodesic_triple_exists, is_biactive, is_branch_resolving,
    is_generator_structural, CycleState, Mode,
};
use cactus_dim::solver::{compute_dimensions_of, DimensionReport, GraphKind};
use cactus_dim::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_LIMIT: usize = 14;
const Z_LIMIT: usize = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Every graph solved along the way, for the audit criteria.
#[derive(Default)]
struct Solved {
    instances: Vec<(Graph, DimensionReport)>,
}

fn solve(g: &Graph) -> Result<DimensionReport, String> {
    Cactus::new(g.clone())
        .and_then(|c| compute_dimensions_of(&c))
        .map_err(|e| e.to_string())
}

fn fuzz_cactus(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = rng.gen_range(1..=3usize);
    let n = rng.gen_range((3 * c).max(4)..=13);
    let girth = rng.gen_range(3..=9);
    let bias = rng.gen_range(0.0..0.7);
    random_cactus(n, c, girth, bias, seed).expect("valid parameters")
}

fn criterion_1(solved: &mut Solved, fuzzed: &mut Vec<Graph>) -> Outcome {
    let start = Instant::now();
    let total = 300;
    let mut agree = 0;
    let mut first_bad = None;
    for seed in 0..total {
        let g = fuzz_cactus(seed);
        fuzzed.push(g.clone());
        let report = match solve(&g) {
            Ok(r) => r,
            Err(e) => {
                first_bad.get_or_insert(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let ok = Mode::BOTH.iter().all(|&mode| {
            let (want, _) = metric_dimension_bruteforce(&g, mode, ORACLE_LIMIT).expect("n <= 13");
            report.value(mode) == want
        });
        if ok {
            agree += 1;
        } else {
            first_bad.get_or_insert(format!("seed {seed}"));
        }
        solved.instances.push((g, report));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        agree == total && secs < 300.0,
        format!(
            "{agree}/{total} random cacti (n <= 13, 1-3 cycles) match brute force in both modes, {secs:.2}s{}",
            first_bad.map(|b| format!("; first mismatch {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_2(solved: &mut Solved) -> Outcome {
    let mut bad = Vec::new();
    for b in 0..=2 {
        for c in 2..=3 {
            let g = extremal_family(b, c).expect("c >= 2");
            match solve(&g) {
                Ok(r) if r.l == b && r.dim == b + 2 * c && r.edim == b + 2 * c => {
                    solved.instances.push((g, r));
                }
                Ok(r) => bad.push(format!(
                    "({b},{c}): L={} dim={} edim={}",
                    r.l, r.dim, r.edim
                )),
                Err(e) => bad.push(format!("({b},{c}): {e}")),
            }
        }
    }
    let g = extremal_family(0, 2).expect("c >= 2");
    let oracle: Vec<usize> = Mode::BOTH
        .iter()
        .map(|&m| {
            metric_dimension_bruteforce(&g, m, g.n())
                .expect("limit = n")
                .0
        })
        .collect();
    if oracle != [4, 4] {
        bad.push(format!("(0,2) oracle gives {oracle:?}"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "extremal_family(b,c) for b in 0..=2, c in 2..=3 gives dim = edim = b+2c; oracle on (0,2) = {oracle:?}{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

fn criterion_3(solved: &mut Solved) -> Outcome {
    let mut bad = Vec::new();
    let mut trees = 0;
    let mut oracle_runs = 0;
    let mut seed = 0u64;
    while trees < 100 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(4..=40);
        let g = random_tree(n, seed).expect("n >= 1");
        if g.is_path() {
            continue;
        }
        trees += 1;
        match solve(&g) {
            Ok(r) => {
                if r.kind != GraphKind::Tree || r.dim != r.l || r.edim != r.l {
                    bad.push(format!(
                        "seed {seed}: L={} dim={} edim={}",
                        r.l, r.dim, r.edim
                    ));
                }
                if n <= 13 {
                    oracle_runs += 1;
                    for mode in Mode::BOTH {
                        let (want, _) =
                            metric_dimension_bruteforce(&g, mode, ORACLE_LIMIT).expect("small");
                        if want != r.l {
                            bad.push(format!("seed {seed} {mode:?}: oracle {want}, L={}", r.l));
                        }
                    }
                }
                solved.instances.push((g, r));
            }
            Err(e) => bad.push(format!("seed {seed}: {e}")),
        }
    }
    for n in 3..=12 {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edges(n, &edges).expect("path");
        match solve(&g) {
            Ok(r) if r.dim == 1 && r.edim == 1 => solved.instances.push((g, r)),
            Ok(r) => bad.push(format!("P_{n}: dim={} edim={}", r.dim, r.edim)),
            Err(e) => bad.push(format!("P_{n}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{trees} random non-path trees (n <= 40) give dim = edim = L, {oracle_runs} confirmed by brute force; paths P_3..P_12 give 1{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

fn criterion_4(solved: &mut Solved) -> Outcome {
    let g =
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("butterfly");
    let r = match solve(&g) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("butterfly: {e}")),
    };
    let pass = r.dim == 2
        && r.edim == 3
        && r.tau_ei == 1
        && r.tau_vi == 0
        && r.incidence_ei.edges == [(0, 1, 0)]
        && r.incidence_vi.edges.is_empty();
    let detail = format!(
        "dim={} edim={} tau_vi={} tau_ei={} edge-critical incidences {:?} (shared vertex 0)",
        r.dim, r.edim, r.tau_vi, r.tau_ei, r.incidence_ei.edges
    );
    solved.instances.push((g, r));
    outcome(pass, detail)
}

fn criterion_5(fuzzed: &mut Vec<Graph>) -> Outcome {
    let target = 1000;
    let mut pairs = 0;
    let mut disagreements = 0;
    let mut generators = [0usize; 2];
    let mut seed = 10_000u64;
    let mut first_bad = None;
    while pairs < target {
        seed += 1;
        let g = fuzz_cactus(seed);
        fuzzed.push(g.clone());
        let cactus = Cactus::new(g.clone()).expect("generated cacti are cacti");
        let dist = all_pairs_distances(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..40 {
            let p = rng.gen_range(0.15..0.6);
            let s: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(p)).collect();
            if !is_branch_resolving(&cactus.threads, &s) || !is_biactive(&cactus.decomposition, &s)
            {
                continue;
            }
            pairs += 1;
            for (k, &mode) in Mode::BOTH.iter().enumerate() {
                let structural = is_generator_structural(&cactus, &s, mode).is_generator();
                let brute = is_generator_bruteforce(&g, &dist, &s, mode);
                generators[k] += brute as usize;
                if structural != brute {
                    disagreements += 1;
                    first_bad.get_or_insert(format!("seed {seed} {mode:?} S={s:?}"));
                }
            }
        }
    }
    outcome(
        disagreements == 0,
        format!(
            "{pairs} (cactus, S) pairs with S biactive branch-resolving: structural = brute force in both modes \
             ({} vertex / {} edge generators), {disagreements} disagreements{}",
            generators[0],
            generators[1],
            first_bad.map(|b| format!("; first {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_6(solved: &Solved) -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    for (g, r) in &solved.instances {
        let audit = audit_bounds(g, r, 0);
        checks += audit.checks.len();
        bad.extend(
            audit
                .violations()
                .iter()
                .map(|v| format!("{} ({} > {})", v.name, v.lhs, v.rhs)),
        );
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} instances from criteria 1-4, {checks} structural bound checks, {} violations{}",
            solved.instances.len(),
            bad.len(),
            bad.first()
                .map(|b| format!("; first {b}"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_7(solved: &Solved) -> Outcome {
    let mut tested = 0;
    let mut bad = Vec::new();
    for (g, r) in solved.instances.iter().filter(|(g, _)| g.n() <= Z_LIMIT) {
        tested += 1;
        let audit = audit_bounds(g, r, Z_LIMIT);
        bad.extend(
            audit
                .violations()
                .iter()
                .filter(|v| v.name.contains('Z'))
                .map(|v| format!("{} ({} > {})", v.name, v.lhs, v.rhs)),
        );
    }
    outcome(
        bad.is_empty() && tested > 0,
        format!(
            "{tested} cacti with n <= {Z_LIMIT}: dim <= Z+c, edim <= Z+c, L+B <= Z; {} violations{}",
            bad.len(),
            bad.first().map(|b| format!("; first {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut samples = 0;
    let mut flagged = 0;
    while samples < 500 {
        let g = rng.gen_range(3..=16usize);
        let edges: Vec<(usize, usize)> = (0..g).map(|i| (i, (i + 1) % g)).collect();
        let cactus = Cactus::new(Graph::from_edges(g, &edges).expect("cycle")).expect("cycle");
        let c = cactus.decomposition.cycle(0);
        let active: Vec<bool> = (0..g).map(|_| rng.gen_bool(0.4)).collect();
        let act: Vec<usize> = (0..g).filter(|&p| active[p]).collect();
        if !geodesic_triple_exists(c, &act) {
            continue;
        }
        samples += 1;
        // S-free threads of arbitrary length at arbitrary cycle vertices
        let free_threads = (0..g)
            .map(|p| {
                if rng.gen_bool(0.5) {
                    vec![(rng.gen_range(1..=g), g + p)]
                } else {
                    Vec::new()
                }
            })
            .collect();
        if evaluate_configurations(
            c,
            &CycleState {
                active,
                free_threads,
            },
        )
        .flags
        .any()
        {
            flagged += 1;
        }
    }
    outcome(
        flagged == 0,
        format!("{samples} (cycle, active set) samples containing a geodesic triple, {flagged} with a configuration flag"),
    )
}

fn criterion_9(fuzzed: &[Graph]) -> Outcome {
    let mut regions = 0;
    let mut bad = 0;
    for g in fuzzed {
        let d = &Cactus::new(g.clone())
            .expect("generated cacti are cacti")
            .decomposition;
        let dist = all_pairs_distances(g);
        for i in 0..d.cycle_count() {
            regions += 1;
            if !is_isometric_subgraph(g, &dist, &unicyclic_region(g, d, i).vertices) {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "{regions} unicyclic regions over {} fuzzed cacti, {bad} not isometric",
            fuzzed.len()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut solved = Solved::default();
    let mut fuzzed = Vec::new();
    let results = [
        ("oracle equivalence", criterion_1(&mut solved, &mut fuzzed)),
        ("tightness family", criterion_2(&mut solved)),
        ("trees", criterion_3(&mut solved)),
        ("butterfly", criterion_4(&mut solved)),
        ("structural verifier", criterion_5(&mut fuzzed)),
        ("bounds audit", criterion_6(&solved)),
        ("zero forcing bounds", criterion_7(&solved)),
        ("geodesic triples", criterion_8()),
        ("region isometry", criterion_9(&fuzzed)),
    ];
    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += !o.pass as usize;
        println!("{tag} [{}] {name}: {}", k + 1, o.detail);
    }
    println!(
        "acceptance: {}/{} criteria pass in {:.2}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
