//! Exhaustive ground truth: distance-vector generator checks, brute-force
//! metric dimensions, zero forcing, and the bound audit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, DistanceMatrix, Graph};
use crate::resolving::Mode;
use crate::solver::{DimensionReport, GraphKind};

/// Default size guard for brute-force dimensions.
pub const DIMENSION_LIMIT: usize = 14;
/// Default size guard for the zero forcing number.
pub const ZERO_FORCING_LIMIT: usize = 12;

/// True when every vertex (or every edge) has its own vector of distances
/// to the landmarks in `s`, in the given order.
pub fn is_generator_bruteforce(g: &Graph, dist: &DistanceMatrix, s: &[usize], mode: Mode) -> bool {
    let mut vectors: Vec<Vec<u32>> = match mode {
        Mode::Vertex => (0..g.n())
            .map(|v| s.iter().map(|&x| dist.get(x, v)).collect())
            .collect(),
        Mode::Edge => g
            .edges()
            .iter()
            .map(|e| {
                s.iter()
                    .map(|&x| dist.get(x, e.u).min(dist.get(x, e.v)))
                    .collect()
            })
            .collect(),
    };
    vectors.sort_unstable();
    vectors.windows(2).all(|w| w[0] != w[1])
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until
/// it returns true; returns that subset.
fn first_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest generator size and the lexicographically first witness among
/// generators of that size. Fails with `TooLarge` when `n > limit`.
pub fn metric_dimension_bruteforce(
    g: &Graph,
    mode: Mode,
    limit: usize,
) -> Result<(usize, Vec<usize>)> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    let dist = all_pairs_distances(g);
    for k in 0..=g.n() {
        if let Some(s) = first_subset(g.n(), k, |s| is_generator_bruteforce(g, &dist, s, mode)) {
            return Ok((k, s));
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// Repeatedly lets a black vertex with exactly one white neighbour turn that
/// neighbour black. Returns the final black set, sorted.
pub fn zero_forcing_closure(g: &Graph, s: &[usize]) -> Vec<usize> {
    let mut black = vec![false; g.n()];
    for &v in s {
        black[v] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..g.n() {
            if !black[v] {
                continue;
            }
            let mut white = g.neighbors(v).iter().filter(|&&w| !black[w]);
            if let (Some(&w), None) = (white.next(), white.next()) {
                black[w] = true;
                changed = true;
            }
        }
    }
    (0..g.n()).filter(|&v| black[v]).collect()
}

/// Zero forcing number with the lexicographically first minimum witness.
pub fn zero_forcing_number(g: &Graph, limit: usize) -> Result<(usize, Vec<usize>)> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    for k in 0..=g.n() {
        if let Some(s) = first_subset(g.n(), k, |s| zero_forcing_closure(g, s).len() == g.n()) {
            return Ok((k, s));
        }
    }
    unreachable!("the full vertex set forces itself")
}

/// One inequality checked by the audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

impl BoundCheck {
    fn le(name: &'static str, lhs: usize, rhs: usize) -> BoundCheck {
        BoundCheck {
            name,
            lhs,
            rhs,
            pass: lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsAudit {
    /// Zero forcing number, when the graph was within the guard.
    pub z: Option<usize>,
    pub checks: Vec<BoundCheck>,
}

impl BoundsAudit {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Checks the structural bounds against a solved report. The zero forcing
/// bounds are added when `n <= z_limit`.
///
/// Paths are the one family where `dim` exceeds `L + B + c` (both are 0
/// there), so the upper bounds are skipped for them.
pub fn audit_bounds(g: &Graph, report: &DimensionReport, z_limit: usize) -> BoundsAudit {
    let lb = report.l + report.b;
    let c = report.cyclomatic;
    let mut checks = vec![
        BoundCheck::le("L+B<=dim", lb, report.dim),
        BoundCheck::le("L+B<=edim", lb, report.edim),
    ];
    if report.kind != GraphKind::Path {
        checks.push(BoundCheck::le("dim<=L+B+c", report.dim, lb + c));
        checks.push(BoundCheck::le("edim<=L+B+c", report.edim, lb + c));
        if c >= 2 {
            checks.push(BoundCheck::le("dim<=L+2c", report.dim, report.l + 2 * c));
            checks.push(BoundCheck::le("edim<=L+2c", report.edim, report.l + 2 * c));
        }
    }
    let z = zero_forcing_number(g, z_limit).ok().map(|(z, _)| z);
    if let Some(z) = z {
        checks.push(BoundCheck::le("dim<=Z+c", report.dim, z + c));
        checks.push(BoundCheck::le("edim<=Z+c", report.edim, z + c));
        checks.push(BoundCheck::le("L+B<=Z", lb, z));
    }
    BoundsAudit { z, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        graph(n, &edges)
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &edges)
    }

    fn butterfly() -> Graph {
        graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    }

    #[test]
    fn generator_checks() {
        let p4 = path(4);
        assert!(is_generator_bruteforce(
            &p4,
            &all_pairs_distances(&p4),
            &[0],
            Mode::Vertex
        ));
        let c4 = cycle(4);
        assert!(!is_generator_bruteforce(
            &c4,
            &all_pairs_distances(&c4),
            &[0],
            Mode::Vertex
        ));
        // a = 1, c = 3: edges 0-2 and 0-4 both sit at (1, 1)
        let b = butterfly();
        assert!(!is_generator_bruteforce(
            &b,
            &all_pairs_distances(&b),
            &[1, 3],
            Mode::Edge
        ));
    }

    #[test]
    fn subsets_in_lex_order() {
        let mut seen = Vec::new();
        first_subset(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(first_subset(3, 0, |_| true), Some(vec![]));
        assert_eq!(first_subset(2, 3, |_| true), None);
    }

    #[test]
    fn brute_force_dimensions() {
        assert_eq!(
            metric_dimension_bruteforce(&path(7), Mode::Vertex, 14)
                .unwrap()
                .0,
            1
        );
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            metric_dimension_bruteforce(&star, Mode::Vertex, 14).unwrap(),
            (2, vec![1, 2])
        );
        let b = butterfly();
        assert_eq!(
            metric_dimension_bruteforce(&b, Mode::Vertex, 14).unwrap().0,
            2
        );
        assert_eq!(
            metric_dimension_bruteforce(&b, Mode::Edge, 14).unwrap().0,
            3
        );
        assert_eq!(
            metric_dimension_bruteforce(&path(2), Mode::Edge, 14)
                .unwrap()
                .0,
            0
        );
        assert_eq!(
            metric_dimension_bruteforce(&path(15), Mode::Vertex, 14).unwrap_err(),
            Error::TooLarge { n: 15, limit: 14 }
        );
    }

    #[test]
    fn zero_forcing_examples() {
        assert_eq!(zero_forcing_closure(&path(5), &[0]), vec![0, 1, 2, 3, 4]);
        assert_eq!(zero_forcing_closure(&cycle(6), &[0]), vec![0]);
        let b = butterfly();
        assert_eq!(zero_forcing_closure(&b, &[0, 1, 2, 3, 4]).len(), 5);
        assert_eq!(zero_forcing_number(&path(6), 12).unwrap().0, 1);
        assert_eq!(zero_forcing_number(&cycle(6), 12).unwrap().0, 2);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(zero_forcing_number(&star, 12).unwrap().0, 2);
    }
}
