//! Simple undirected graphs, the edge-list text format, and hop distances.
//!
//! Vertices are dense ids `0..n`. Graphs read from text keep the original
//! (possibly sparse) ids as labels so reports can refer back to the input.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An unordered pair of adjacent vertices, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

impl EdgeRef {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            EdgeRef { u: a, v: b }
        } else {
            EdgeRef { u: b, v: a }
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// A simple, connected, undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeRef>,
    adj: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `0..n` from an edge list. Rejects self-loops,
    /// duplicate edges, out-of-range endpoints and disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let labels = (0..n as u64).collect();
        let lined: Vec<(usize, usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (i + 1, a, b))
            .collect();
        Self::build(n, &lined, labels)
    }

    fn build(n: usize, edges: &[(usize, usize, usize)], labels: Vec<u64>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(line, a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::MalformedLine {
                    line,
                    text: format!("{a} {b}"),
                });
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line,
                    vertex: labels[a],
                });
            }
            let e = EdgeRef::new(a, b);
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge {
                    line,
                    u: labels[e.u],
                    v: labels[e.v],
                });
            }
            adj[a].push(b);
            adj[b].push(a);
            list.push(e);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        list.sort_unstable();
        let g = Graph {
            n,
            edges: list,
            adj,
            labels,
        };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<()> {
        let dist = self.bfs(0);
        match dist.iter().position(|&d| d == u32::MAX) {
            Some(v) => Err(Error::Disconnected {
                root: self.labels[0],
                unreached: self.labels[v],
            }),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Original input id of a dense vertex.
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original label, if present.
    pub fn vertex_of_label(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adj.iter().all(|a| a.len() <= 2)
    }

    /// Hop distances from `src`; unreachable vertices get `u32::MAX`.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `keep`, relabelled densely in increasing order.
    /// Labels are carried over. Fails if the result is empty or disconnected.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let order: Vec<usize> = set.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize, usize)> = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .enumerate()
            .map(|(i, e)| (i + 1, index[e.u], index[e.v]))
            .collect();
        let labels = order.iter().map(|&v| self.labels[v]).collect();
        Self::build(order.len(), &edges, labels)
    }

    /// Canonical edge-list text: a header comment, then one `u v` line per
    /// edge using the original labels. The header carries the `n=` vertex
    /// declaration only when labels are exactly `0..n`, so that re-parsing
    /// never introduces phantom vertices.
    pub fn to_edge_list(&self) -> String {
        let dense = self.labels.iter().enumerate().all(|(i, &l)| l == i as u64);
        let mut out = if dense {
            format!("# n={} m={}\n", self.n, self.m())
        } else {
            format!("# vertices={} edges={}\n", self.n, self.m())
        };
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[e.u], self.labels[e.v]);
        }
        out
    }

    /// Graphviz rendering; vertices in `highlight` get a fill colour.
    pub fn to_dot(&self, highlight: &[usize]) -> String {
        let marked: HashSet<usize> = highlight.iter().copied().collect();
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            if marked.contains(&v) {
                let _ = writeln!(
                    out,
                    "  {} [label=\"{}\", style=filled, fillcolor=\"#f4a261\"];",
                    v, self.labels[v]
                );
            } else {
                let _ = writeln!(out, "  {} [label=\"{}\"];", v, self.labels[v]);
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        }
        out.push_str("}\n");
        out
    }
}

/// Parses the whitespace-separated edge-list format.
///
/// Each non-blank line that does not start with `#` must hold exactly two
/// non-negative integer ids. A comment carrying an `n=<k>` token declares
/// vertices `0..k` up front, which is how single-vertex graphs are written.
/// Ids are compacted to `0..n` in increasing order.
pub fn parse_edge_list(text: &[u8]) -> Result<Graph> {
    let text = String::from_utf8_lossy(text);
    let mut ids = BTreeSet::new();
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            for tok in comment.split_whitespace() {
                if let Some(k) = tok.strip_prefix("n=").and_then(|k| k.parse::<u64>().ok()) {
                    ids.extend(0..k);
                }
            }
            continue;
        }
        let malformed = || Error::MalformedLine {
            line: lineno,
            text: line.to_string(),
        };
        let mut parts = trimmed.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(malformed()),
        };
        let a: u64 = a.parse().map_err(|_| malformed())?;
        let b: u64 = b.parse().map_err(|_| malformed())?;
        ids.insert(a);
        ids.insert(b);
        raw.push((lineno, a, b));
    }
    let labels: Vec<u64> = ids.into_iter().collect();
    let dense = |x: u64| labels.binary_search(&x).expect("id collected above");
    let edges: Vec<(usize, usize, usize)> = raw
        .iter()
        .map(|&(line, a, b)| (line, dense(a), dense(b)))
        .collect();
    let n = labels.len();
    Graph::build(n, &edges, labels)
}

/// All-pairs hop distances, one BFS per source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(g.bfs(s));
    }
    DistanceMatrix { n, dist }
}

/// True when the subgraph induced by `vertices` is connected and keeps
/// every pairwise distance of `g`.
pub fn is_isometric_subgraph(g: &Graph, dist: &DistanceMatrix, vertices: &[usize]) -> bool {
    let Ok(h) = g.induced(vertices) else {
        return false;
    };
    let order: Vec<usize> = (0..h.n())
        .map(|i| g.vertex_of_label(h.label(i)).expect("induced keeps labels"))
        .collect();
    let dh = all_pairs_distances(&h);
    (0..h.n()).all(|a| (0..h.n()).all(|b| dh.get(a, b) == dist.get(order[a], order[b])))
}

/// `d(u, xy) = min(d(u, x), d(u, y))`.
#[inline]
pub fn vertex_edge_distance(d: &DistanceMatrix, u: usize, e: EdgeRef) -> u32 {
    d.get(u, e.u).min(d.get(u, e.v))
}

/// `|E| - |V| + 1`; the number of cycles when `g` is a cactus.
pub fn cyclomatic_number(g: &Graph) -> usize {
    g.m() + 1 - g.n()
}
