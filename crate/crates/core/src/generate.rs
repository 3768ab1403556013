//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Grows a cactus with exactly `n_target` vertices and `cycle_count` cycles.
///
/// Starting from one vertex, each step picks an existing vertex uniformly and
/// hangs either a pendant path of 1 to 3 vertices there (probability
/// `thread_bias`, while the vertex budget allows) or a new cycle of girth
/// uniform in `3..=max_girth`. Girths are clipped so the remaining cycles
/// still fit; once all cycles are placed only paths are added.
pub fn random_cactus(
    n_target: usize,
    cycle_count: usize,
    max_girth: usize,
    thread_bias: f64,
    seed: u64,
) -> Result<Graph> {
    if n_target == 0 {
        return Err(Error::InfeasibleParams(
            "n_target must be at least 1".into(),
        ));
    }
    if cycle_count > 0 && n_target < 3 * cycle_count {
        return Err(Error::InfeasibleParams(format!(
            "{cycle_count} cycles need at least {} vertices, got {n_target}",
            3 * cycle_count
        )));
    }
    if cycle_count > 0 && max_girth < 3 {
        return Err(Error::InfeasibleParams(format!(
            "max_girth {max_girth} is below 3"
        )));
    }
    if !(0.0..=1.0).contains(&thread_bias) {
        return Err(Error::InfeasibleParams(format!(
            "thread_bias {thread_bias} is outside [0, 1]"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 1;
    let mut edges = Vec::new();
    let mut cycles_left = cycle_count;
    while n < n_target {
        let spare = n_target - n;
        let reserve = 2 * cycles_left;
        let at = rng.gen_range(0..n);
        let path = cycles_left == 0 || (spare > reserve && rng.gen_bool(thread_bias));
        if path {
            let len = rng.gen_range(1..=(spare - reserve).min(3));
            let mut prev = at;
            for _ in 0..len {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
        } else {
            let cap = (spare - (reserve - 2) + 1).min(max_girth);
            let girth = rng.gen_range(3..=cap);
            let mut prev = at;
            for _ in 1..girth {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, at));
            cycles_left -= 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Uniform attachment tree: vertex `i` joins a uniformly chosen `j < i`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InfeasibleParams(
            "a tree needs at least one vertex".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(n, &edges)
}

/// A cactus with `c` cycles, `L = b` and `dim = edim = b + 2c`.
///
/// Vertex 0 is the star centre `u` with leaves `1..=b+1`. Each of the `c`
/// copies is a 6-cycle `v, v+1, .., v+5` with a leaf `v+6` at `v`, and `v`
/// is joined to `u`.
pub fn extremal_family(b: usize, c: usize) -> Result<Graph> {
    if c < 2 {
        return Err(Error::InfeasibleParams(format!(
            "the family needs c >= 2, got {c}"
        )));
    }
    let mut edges: Vec<(usize, usize)> = (1..=b + 1).map(|x| (0, x)).collect();
    for j in 0..c {
        let v = b + 2 + 7 * j;
        for k in 0..6 {
            edges.push((v + k, v + (k + 1) % 6));
        }
        edges.push((v, v + 6));
        edges.push((0, v));
    }
    Graph::from_edges(b + 2 + 7 * c, &edges)
}
