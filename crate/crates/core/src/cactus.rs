//! Cactus validation and the structural quantities derived from it: cycles,
//! the components `T_v(C)`, threads, branch-active vertices and unicyclic
//! regions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, DistanceMatrix, EdgeRef, Graph};

/// A cycle of the cactus, stored in a fixed cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub index: usize,
    /// Consecutive entries (and last/first) are adjacent.
    pub vertices: Vec<usize>,
}

impl Cycle {
    pub fn girth(&self) -> usize {
        self.vertices.len()
    }

    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// Distance between two positions along the cycle.
    pub fn cyclic_distance(&self, p: usize, q: usize) -> usize {
        let g = self.girth();
        let d = p.abs_diff(q);
        d.min(g - d)
    }
}

/// Cycles of a cactus plus, for every cycle, the map from each vertex of the
/// graph to the cycle position whose component `T_v(C)` contains it.
#[derive(Debug, Clone)]
pub struct CactusDecomposition {
    cycles: Vec<Cycle>,
    membership: Vec<Vec<usize>>,
    edge_cycle: HashMap<EdgeRef, usize>,
    anchor: Vec<Vec<usize>>,
    branch_active: Vec<Vec<usize>>,
}

impl CactusDecomposition {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// Indices of the cycles through `v`.
    pub fn cycles_of(&self, v: usize) -> &[usize] {
        &self.membership[v]
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        !self.membership[v].is_empty()
    }

    /// The cycle owning edge `e`, if it is not a bridge.
    pub fn cycle_of_edge(&self, e: EdgeRef) -> Option<usize> {
        self.edge_cycle.get(&e).copied()
    }

    /// Position on cycle `i` of the vertex `v` with `x ∈ T_v(C_i)`.
    pub fn anchor_position(&self, i: usize, x: usize) -> usize {
        self.anchor[i][x]
    }

    /// Vertex set of `T_v(C_i)` for the vertex at position `pos` of cycle `i`.
    pub fn component(&self, i: usize, pos: usize) -> Vec<usize> {
        self.anchor[i]
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p == pos)
            .map(|(x, _)| x)
            .collect()
    }

    /// Positions on cycle `i` of its branch-active vertices.
    pub fn branch_active_positions(&self, i: usize) -> &[usize] {
        &self.branch_active[i]
    }

    /// Pairs of cycles sharing a vertex, with that vertex. In a cactus two
    /// cycles share at most one vertex.
    pub fn touching_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, cycles) in self.membership.iter().enumerate() {
            for (a, &i) in cycles.iter().enumerate() {
                for &j in &cycles[a + 1..] {
                    out.push((i.min(j), i.max(j), v));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Validates the cactus property and extracts all cycles.
///
/// Cycles come from the biconnected blocks: every block must be a bridge or
/// a single cycle. Anything else is reported as [`Error::NotACactus`].
pub fn decompose_cactus(g: &Graph) -> Result<CactusDecomposition> {
    let n = g.n();
    let mut cycles = Vec::new();
    for block in biconnected_blocks(g) {
        if block.len() == 1 {
            continue;
        }
        let verts: BTreeSet<usize> = block.iter().flat_map(|e| [e.u, e.v]).collect();
        if block.len() != verts.len() {
            return Err(Error::NotACactus {
                block: verts.iter().map(|&v| g.label(v)).collect(),
            });
        }
        cycles.push(order_cycle(&block, &verts));
    }
    cycles.sort_by_key(|c| c.vertices.clone());
    for (i, c) in cycles.iter_mut().enumerate() {
        c.index = i;
    }

    let mut membership = vec![Vec::new(); n];
    let mut edge_cycle = HashMap::new();
    for c in &cycles {
        let girth = c.girth();
        for p in 0..girth {
            membership[c.vertices[p]].push(c.index);
            edge_cycle.insert(
                EdgeRef::new(c.vertices[p], c.vertices[(p + 1) % girth]),
                c.index,
            );
        }
    }

    let mut anchor = Vec::with_capacity(cycles.len());
    let mut branch_active = Vec::with_capacity(cycles.len());
    for c in &cycles {
        let owner = components_off_cycle(g, c, &edge_cycle);
        let mut active = Vec::new();
        for (p, &v) in c.vertices.iter().enumerate() {
            let branchy = g.degree(v) >= 4
                || owner
                    .iter()
                    .enumerate()
                    .any(|(x, &q)| q == p && x != v && g.degree(x) >= 3);
            if branchy {
                active.push(p);
            }
        }
        anchor.push(owner);
        branch_active.push(active);
    }

    Ok(CactusDecomposition {
        cycles,
        membership,
        edge_cycle,
        anchor,
        branch_active,
    })
}

fn order_cycle(block: &[EdgeRef], verts: &BTreeSet<usize>) -> Cycle {
    let mut nbrs: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in block {
        nbrs.entry(e.u).or_default().push(e.v);
        nbrs.entry(e.v).or_default().push(e.u);
    }
    let start = *verts.iter().next().expect("block has vertices");
    let first = *nbrs[&start]
        .iter()
        .min()
        .expect("cycle vertex has two neighbours");
    let mut order = vec![start, first];
    while order.len() < verts.len() {
        let prev = order[order.len() - 2];
        let cur = order[order.len() - 1];
        let next = nbrs[&cur]
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("cycle vertex has two neighbours");
        order.push(next);
    }
    Cycle {
        index: 0,
        vertices: order,
    }
}

/// For cycle `c`, labels every vertex with the position of the cycle vertex
/// it reaches without using edges of `c`.
fn components_off_cycle(g: &Graph, c: &Cycle, edge_cycle: &HashMap<EdgeRef, usize>) -> Vec<usize> {
    let mut owner = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for (p, &v) in c.vertices.iter().enumerate() {
        owner[v] = p;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if owner[w] != usize::MAX {
                continue;
            }
            if edge_cycle.get(&EdgeRef::new(u, w)) == Some(&c.index) {
                continue;
            }
            owner[w] = owner[u];
            queue.push_back(w);
        }
    }
    owner
}

/// Edge sets of the biconnected blocks (iterative Hopcroft–Tarjan).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<EdgeRef>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<EdgeRef> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, usize::MAX, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == usize::MAX {
                    edge_stack.push(EdgeRef::new(v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push(EdgeRef::new(v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let stop = EdgeRef::new(p, v);
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == stop {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

/// A pendant path `u_1 .. u_k` (leaf first) hanging at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub anchor: usize,
    pub vertices: Vec<usize>,
}

impl Thread {
    /// Number of thread vertices, `k`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn leaf(&self) -> usize {
        self.vertices[0]
    }

    pub fn is_free(&self, in_set: &[bool]) -> bool {
        self.vertices.iter().all(|&u| !in_set[u])
    }
}

/// All threads of a graph, grouped by the vertex they hang at.
#[derive(Debug, Clone)]
pub struct ThreadProfile {
    threads: Vec<Thread>,
    /// Thread indices per anchor, sorted by (length, leaf id).
    at: Vec<Vec<usize>>,
}

impl ThreadProfile {
    pub fn threads(&self) -> &[Thread] {
        &self.threads
    }

    /// Threads hanging at `v`, shortest first.
    pub fn threads_at(&self, v: usize) -> impl Iterator<Item = &Thread> + '_ {
        self.at[v].iter().map(move |&t| &self.threads[t])
    }

    /// `ℓ(v)`.
    pub fn ell(&self, v: usize) -> usize {
        self.at[v].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.at.len()
    }
}

pub fn thread_profile(g: &Graph) -> ThreadProfile {
    let n = g.n();
    let mut threads = Vec::new();
    let mut at = vec![Vec::new(); n];
    for leaf in (0..n).filter(|&v| g.degree(v) == 1) {
        let mut path = vec![leaf];
        let mut prev = leaf;
        let mut cur = g.neighbors(leaf)[0];
        loop {
            match g.degree(cur) {
                1 => break,
                2 => {
                    path.push(cur);
                    let next = g.neighbors(cur).iter().copied().find(|&w| w != prev);
                    prev = cur;
                    cur = next.expect("degree-2 vertex has another neighbour");
                }
                _ => {
                    at[cur].push(threads.len());
                    threads.push(Thread {
                        anchor: cur,
                        vertices: path,
                    });
                    break;
                }
            }
        }
    }
    for list in &mut at {
        list.sort_by_key(|&t| (threads[t].len(), threads[t].leaf()));
    }
    ThreadProfile { threads, at }
}

/// `L(G)`: sum of `ℓ(v) - 1` over vertices with more than one thread.
pub fn compute_l(tp: &ThreadProfile) -> usize {
    (0..tp.vertex_count())
        .map(|v| tp.ell(v).saturating_sub(1))
        .sum()
}

/// Branch-active vertices of cycle `i`: `deg(v) >= 4`, or `T_v` holds another
/// vertex of degree at least three.
pub fn branch_active_vertices(d: &CactusDecomposition, i: usize) -> Vec<usize> {
    let c = d.cycle(i);
    let mut out: Vec<usize> = d
        .branch_active_positions(i)
        .iter()
        .map(|&p| c.vertices[p])
        .collect();
    out.sort_unstable();
    out
}

/// `B(G)`: sum over cycles of `max(0, 2 - b(C))`.
pub fn compute_b(d: &CactusDecomposition) -> usize {
    (0..d.cycle_count())
        .map(|i| 2usize.saturating_sub(d.branch_active_positions(i).len()))
        .sum()
}

/// The unicyclic region of one cycle and its boundary vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub cycle: usize,
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
    /// Region vertices lying on some other cycle, sorted.
    pub boundary: Vec<usize>,
}

impl Region {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Vertices with a path to `C_i` that uses no cycle edge and passes through
/// no cycle vertex in its interior.
pub fn unicyclic_region(g: &Graph, d: &CactusDecomposition, i: usize) -> Region {
    let mut inside = vec![false; g.n()];
    let mut queue = VecDeque::new();
    for &v in &d.cycle(i).vertices {
        inside[v] = true;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        // only cycle-i vertices and off-cycle vertices may be passed through
        let expandable = d.cycles_of(u).contains(&i) || !d.on_cycle(u);
        if !expandable {
            continue;
        }
        for &w in g.neighbors(u) {
            if inside[w] || d.cycle_of_edge(EdgeRef::new(u, w)).is_some() {
                continue;
            }
            inside[w] = true;
            queue.push_back(w);
        }
    }
    let vertices: Vec<usize> = (0..g.n()).filter(|&v| inside[v]).collect();
    let boundary = vertices
        .iter()
        .copied()
        .filter(|&v| d.cycles_of(v).iter().any(|&j| j != i))
        .collect();
    Region {
        cycle: i,
        vertices,
        boundary,
    }
}

/// `(S ∩ region) ∪ boundary`, sorted.
pub fn regional_set(r: &Region, s: &[usize]) -> Vec<usize> {
    let mut out: BTreeSet<usize> = s.iter().copied().filter(|&v| r.contains(v)).collect();
    out.extend(r.boundary.iter().copied());
    out.into_iter().collect()
}

/// A validated cactus with everything the analyses share.
#[derive(Debug, Clone)]
pub struct Cactus {
    pub graph: Graph,
    pub dist: DistanceMatrix,
    pub decomposition: CactusDecomposition,
    pub threads: ThreadProfile,
}

impl Cactus {
    pub fn new(graph: Graph) -> Result<Cactus> {
        let decomposition = decompose_cactus(&graph)?;
        let dist = all_pairs_distances(&graph);
        let threads = thread_profile(&graph);
        Ok(Cactus {
            graph,
            dist,
            decomposition,
            threads,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn cycle_count(&self) -> usize {
        self.decomposition.cycle_count()
    }
}
