//! Closed-form vertex and edge metric dimension of a cactus, with a
//! certificate generator for each mode.
//!
//! Pipeline per mode: a base branch-resolving set `S1` of size `L`, extra
//! activity on cycles with fewer than two branch-active vertices, a per-cycle
//! positive/negative classification, a choice of placements minimising
//! critically incident negative pairs, and a minimum vertex cover of the
//! remaining incidence graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cactus::{compute_b, compute_l, Cactus, Cycle};
use crate::error::{Error, Result};
use crate::graph::{cyclomatic_number, Graph};
use crate::oracle::is_generator_bruteforce;
use crate::resolving::{
    active_mask, critical_from_mask, evaluate_configurations, is_generator_structural, mask_of,
    minimal_labelings, CriticalStatus, CycleState, Diagnosis, Flags, Mode,
};

/// Leaf of every thread except a shortest one at each vertex with two or
/// more threads. Ties among shortest threads keep the lowest leaf free.
pub fn base_branch_resolving_set(cactus: &Cactus) -> Vec<usize> {
    let tp = &cactus.threads;
    let mut s = Vec::new();
    for v in 0..tp.vertex_count() {
        if tp.ell(v) > 1 {
            // threads_at yields shortest first, then lowest leaf
            s.extend(tp.threads_at(v).skip(1).map(|t| t.leaf()));
        }
    }
    s.sort_unstable();
    s
}

/// One extra landmark making `anchor` active on a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PlacementChoice {
    pub cycle: usize,
    /// Stored-order position of the anchor on the cycle.
    pub anchor_position: usize,
    pub anchor: usize,
    /// The landmark: the leaf of the anchor's thread, or the anchor itself.
    pub s_vertex: usize,
}

/// Landmarks added to one cycle (one or two choices).
pub type Placement = Vec<PlacementChoice>;

/// Candidate placements for a cycle with fewer than two branch-active
/// vertices. Anchors are the cycle vertices that are not branch-active.
/// Cycles with `b >= 2` get no candidates; `b == 0` yields unordered pairs.
pub fn enumerate_biactive_placements(cactus: &Cactus, i: usize, s1: &[usize]) -> Vec<Placement> {
    let d = &cactus.decomposition;
    let c = d.cycle(i);
    let branch = d.branch_active_positions(i);
    if branch.len() >= 2 {
        return Vec::new();
    }
    let in_s1 = mask_of(cactus.n(), s1);
    let singles: Vec<PlacementChoice> = (0..c.girth())
        .filter(|p| !branch.contains(p))
        .map(|p| {
            let anchor = c.vertices[p];
            let s_vertex = cactus
                .threads
                .threads_at(anchor)
                .find(|t| t.is_free(&in_s1))
                .map_or(anchor, |t| t.leaf());
            PlacementChoice {
                cycle: i,
                anchor_position: p,
                anchor,
                s_vertex,
            }
        })
        .collect();
    if branch.len() == 1 {
        singles.into_iter().map(|p| vec![p]).collect()
    } else {
        let mut out = Vec::new();
        for x in 0..singles.len() {
            for y in x + 1..singles.len() {
                out.push(vec![singles[x], singles[y]]);
            }
        }
        out
    }
}

/// Configuration state of cycle `i` when its active vertices are the
/// branch-active ones plus the anchors of `placement`.
fn placed_state(
    cactus: &Cactus,
    i: usize,
    in_s1: &[bool],
    placement: &[PlacementChoice],
) -> CycleState {
    let d = &cactus.decomposition;
    let mut active = vec![false; d.cycle(i).girth()];
    for &p in d.branch_active_positions(i) {
        active[p] = true;
    }
    let mut in_set = in_s1.to_vec();
    for ch in placement {
        active[ch.anchor_position] = true;
        in_set[ch.s_vertex] = true;
    }
    CycleState::with_active(cactus, i, active, &in_set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleClass {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Positive,
    /// `feasible` lists the placements avoiding every configuration of the
    /// mode; it is empty for cycles whose active set is already fixed.
    Negative {
        feasible: Vec<Placement>,
    },
}

impl Classification {
    pub fn class(&self) -> CycleClass {
        match self {
            Classification::Positive => CycleClass::Positive,
            Classification::Negative { .. } => CycleClass::Negative,
        }
    }
}

/// Positive when every smallest biactive branch-resolving set leaves a
/// configuration of `mode` on cycle `i`.
pub fn classify_cycle(cactus: &Cactus, i: usize, s1: &[usize], mode: Mode) -> Classification {
    let c = cactus.decomposition.cycle(i);
    let in_s1 = mask_of(cactus.n(), s1);
    let clean = |placement: &[PlacementChoice]| {
        let state = placed_state(cactus, i, &in_s1, placement);
        evaluate_configurations(c, &state)
            .flags
            .violation(mode)
            .is_none()
    };
    if cactus.decomposition.branch_active_positions(i).len() >= 2 {
        return if clean(&[]) {
            Classification::Negative {
                feasible: Vec::new(),
            }
        } else {
            Classification::Positive
        };
    }
    let feasible: Vec<Placement> = enumerate_biactive_placements(cactus, i, s1)
        .into_iter()
        .filter(|p| clean(p))
        .collect();
    if feasible.is_empty() {
        Classification::Positive
    } else {
        Classification::Negative { feasible }
    }
}

/// Critically incident cycle pairs for one mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceGraph {
    pub nodes: usize,
    /// `(i, j, shared vertex)` with `i < j`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl IncidenceGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j, _)| i == v || j == v)
            .count()
    }
}

fn critical_mask_of(
    cactus: &Cactus,
    i: usize,
    in_s1: &[bool],
    placement: &[PlacementChoice],
) -> CriticalStatus {
    let state = placed_state(cactus, i, in_s1, placement);
    critical_from_mask(cactus.decomposition.cycle(i), &state.active)
}

/// Edges between negative cycles that are critically incident under the
/// given per-cycle critical status.
pub fn build_incidence_graph(
    cactus: &Cactus,
    status: &[CriticalStatus],
    classes: &[CycleClass],
    mode: Mode,
) -> IncidenceGraph {
    let edges = cactus
        .decomposition
        .touching_pairs()
        .into_iter()
        .filter(|&(i, j, v)| {
            classes[i] == CycleClass::Negative
                && classes[j] == CycleClass::Negative
                && status[i].for_mode(mode).contains(&v)
                && status[j].for_mode(mode).contains(&v)
        })
        .collect();
    IncidenceGraph {
        nodes: cactus.cycle_count(),
        edges,
    }
}

/// The placements chosen for one mode, indexed by cycle (empty for fixed
/// cycles), and the resulting critically incident pair count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceSet {
    pub set: Vec<usize>,
    pub placements: Vec<Placement>,
    pub pairs: usize,
}

/// Chooses one feasible placement per negative flexible cycle so that the
/// number of critically incident negative pairs is smallest. Positive
/// flexible cycles take their first candidate. Ties go to the
/// lexicographically first choice vector in cycle order.
pub fn select_nice_set(
    cactus: &Cactus,
    s1: &[usize],
    classes: &[Classification],
    mode: Mode,
) -> NiceSet {
    let d = &cactus.decomposition;
    let cc = d.cycle_count();
    let in_s1 = mask_of(cactus.n(), s1);

    let mut placements: Vec<Placement> = vec![Vec::new(); cc];
    let mut status: Vec<CriticalStatus> = vec![CriticalStatus::default(); cc];
    let mut options: Vec<Vec<(Placement, CriticalStatus)>> = vec![Vec::new(); cc];
    let mut open = Vec::new();
    for i in 0..cc {
        match &classes[i] {
            Classification::Positive => {
                // the geodesic-triple vertex added later removes criticality
                if let Some(first) = enumerate_biactive_placements(cactus, i, s1)
                    .into_iter()
                    .next()
                {
                    placements[i] = first;
                }
            }
            Classification::Negative { feasible } if feasible.is_empty() => {
                status[i] = critical_mask_of(cactus, i, &in_s1, &[]);
            }
            Classification::Negative { feasible } => {
                // placements interact only through criticality at shared
                // vertices, so keep the first placement per signature
                let shared: Vec<usize> = d
                    .cycle(i)
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| d.cycles_of(v).len() > 1)
                    .collect();
                let mut seen = BTreeSet::new();
                for p in feasible {
                    let st = critical_mask_of(cactus, i, &in_s1, p);
                    let sig: Vec<usize> = shared
                        .iter()
                        .copied()
                        .filter(|v| st.for_mode(mode).contains(v))
                        .collect();
                    if seen.insert(sig) {
                        options[i].push((p.clone(), st));
                    }
                }
                open.push(i);
            }
        }
    }

    let negative: Vec<bool> = classes
        .iter()
        .map(|c| c.class() == CycleClass::Negative)
        .collect();
    let pairs_list = d.touching_pairs();
    let critical = |st: &[CriticalStatus], decided: &[bool], i: usize, j: usize, v: usize| {
        negative[i]
            && negative[j]
            && decided[i]
            && decided[j]
            && st[i].for_mode(mode).contains(&v)
            && st[j].for_mode(mode).contains(&v)
    };

    let mut decided: Vec<bool> = (0..cc).map(|i| !open.contains(&i)).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut choice = vec![0usize; open.len()];

    struct Search<'a, F: Fn(&[CriticalStatus], &[bool], usize, usize, usize) -> bool> {
        open: &'a [usize],
        options: &'a [Vec<(Placement, CriticalStatus)>],
        pairs: &'a [(usize, usize, usize)],
        critical: F,
    }

    impl<F: Fn(&[CriticalStatus], &[bool], usize, usize, usize) -> bool> Search<'_, F> {
        fn count(&self, st: &[CriticalStatus], decided: &[bool]) -> usize {
            self.pairs
                .iter()
                .filter(|&&(i, j, v)| (self.critical)(st, decided, i, j, v))
                .count()
        }

        fn run(
            &self,
            depth: usize,
            st: &mut Vec<CriticalStatus>,
            decided: &mut Vec<bool>,
            choice: &mut Vec<usize>,
            best: &mut Option<(usize, Vec<usize>)>,
        ) {
            let so_far = self.count(st, decided);
            if let Some((b, _)) = best {
                if so_far >= *b {
                    return;
                }
            }
            if depth == self.open.len() {
                *best = Some((so_far, choice.clone()));
                return;
            }
            let i = self.open[depth];
            decided[i] = true;
            for (k, (_, s)) in self.options[i].iter().enumerate() {
                st[i] = s.clone();
                choice[depth] = k;
                self.run(depth + 1, st, decided, choice, best);
                if matches!(best, Some((0, _))) {
                    break;
                }
            }
            decided[i] = false;
            st[i] = CriticalStatus::default();
        }
    }

    let search = Search {
        open: &open,
        options: &options,
        pairs: &pairs_list,
        critical,
    };
    search.run(0, &mut status, &mut decided, &mut choice, &mut best);
    let (pairs, chosen) = best.expect("search always completes one branch");
    for (depth, &i) in open.iter().enumerate() {
        placements[i] = options[i][chosen[depth]].0.clone();
    }

    let mut set: Vec<usize> = s1.to_vec();
    set.extend(placements.iter().flatten().map(|ch| ch.s_vertex));
    set.sort_unstable();
    NiceSet {
        set,
        placements,
        pairs,
    }
}

/// Exact minimum vertex cover; among minimum covers the lexicographically
/// smallest sorted node list is returned.
pub fn min_vertex_cover(ig: &IncidenceGraph) -> (usize, Vec<usize>) {
    fn feasible(
        edges: &[(usize, usize, usize)],
        inn: &mut [bool],
        out: &[bool],
        budget: usize,
    ) -> bool {
        let Some(&(u, v, _)) = edges.iter().find(|&&(u, v, _)| !inn[u] && !inn[v]) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for x in [u, v] {
            if !out[x] {
                inn[x] = true;
                let ok = feasible(edges, inn, out, budget - 1);
                inn[x] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }

    let n = ig.nodes;
    let mut inn = vec![false; n];
    let mut out = vec![false; n];
    let tau = (0..=n)
        .find(|&b| feasible(&ig.edges, &mut inn, &out, b))
        .expect("all nodes always cover");
    let mut cover = Vec::new();
    let mut left = tau;
    for v in 0..n {
        if left == 0 {
            break;
        }
        inn[v] = true;
        if feasible(&ig.edges, &mut inn, &out, left - 1) {
            cover.push(v);
            left -= 1;
        } else {
            inn[v] = false;
            out[v] = true;
        }
    }
    (tau, cover)
}

/// Lowest canonical label of a non-active vertex forming a geodesic triple
/// with two active ones, as a stored-order position.
fn triple_vertex_position(c: &Cycle, active: &[bool]) -> Option<usize> {
    let g = c.girth();
    let (_, labelings) = minimal_labelings(active);
    let lab = labelings.first()?;
    let act: Vec<usize> = (0..g).filter(|&p| active[p]).collect();
    (0..g).map(|label| lab.position(label)).find(|&p| {
        !active[p]
            && act.iter().enumerate().any(|(x, &s)| {
                act[x + 1..].iter().any(|&t| {
                    c.cyclic_distance(s, t) + c.cyclic_distance(t, p) + c.cyclic_distance(s, p) == g
                })
            })
    })
}

/// How the dimension was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    SingleVertex,
    Path,
    Tree,
    Cactus,
}

/// Per-mode pair of values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ByMode<T> {
    pub vertex: T,
    pub edge: T,
}

impl<T> ByMode<T> {
    pub fn get(&self, mode: Mode) -> &T {
        match mode {
            Mode::Vertex => &self.vertex,
            Mode::Edge => &self.edge,
        }
    }

    fn get_mut(&mut self, mode: Mode) -> &mut T {
        match mode {
            Mode::Vertex => &mut self.vertex,
            Mode::Edge => &mut self.edge,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDiagnostics {
    pub index: usize,
    pub girth: usize,
    pub b: usize,
    pub vertices: Vec<usize>,
    pub class_abc: CycleClass,
    pub class_ade: CycleClass,
    /// Flags under the nice set of each mode, before triple vertices.
    pub flags: ByMode<Flags>,
    /// Landmarks placed for biactivity in each mode.
    pub placement: ByMode<Vec<usize>>,
    /// Geodesic-triple vertex added in each mode, if any.
    pub triple_vertex: ByMode<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub kind: GraphKind,
    pub n: usize,
    pub m: usize,
    pub cyclomatic: usize,
    pub l: usize,
    pub b: usize,
    pub c_abc: usize,
    pub c_ade: usize,
    pub tau_vi: usize,
    pub tau_ei: usize,
    pub dim: usize,
    pub edim: usize,
    pub certificate_vertex: Vec<usize>,
    pub certificate_edge: Vec<usize>,
    pub cycles: Vec<CycleDiagnostics>,
    pub incidence_vi: IncidenceGraph,
    pub incidence_ei: IncidenceGraph,
    pub cover_vi: Vec<usize>,
    pub cover_ei: Vec<usize>,
}

impl DimensionReport {
    pub fn value(&self, mode: Mode) -> usize {
        match mode {
            Mode::Vertex => self.dim,
            Mode::Edge => self.edim,
        }
    }

    pub fn certificate(&self, mode: Mode) -> &[usize] {
        match mode {
            Mode::Vertex => &self.certificate_vertex,
            Mode::Edge => &self.certificate_edge,
        }
    }
}

fn inconsistent(msg: String) -> Error {
    Error::InternalInconsistency(msg)
}

/// Checks a certificate with both verifiers.
fn verify_certificate(cactus: &Cactus, set: &[usize], mode: Mode, expected: usize) -> Result<()> {
    if set.len() != expected {
        return Err(inconsistent(format!(
            "{mode:?} certificate has {} vertices, formula gives {expected}",
            set.len()
        )));
    }
    let diagnosis = is_generator_structural(cactus, set, mode);
    if diagnosis != Diagnosis::Generator {
        return Err(inconsistent(format!(
            "{mode:?} certificate {set:?} rejected structurally: {diagnosis:?}"
        )));
    }
    if !is_generator_bruteforce(&cactus.graph, &cactus.dist, set, mode) {
        return Err(inconsistent(format!(
            "{mode:?} certificate {set:?} fails the distance-vector check"
        )));
    }
    Ok(())
}

/// Vertex and edge metric dimension of a connected cactus.
pub fn compute_dimensions(graph: Graph) -> Result<DimensionReport> {
    let cactus = Cactus::new(graph)?;
    compute_dimensions_of(&cactus)
}

pub fn compute_dimensions_of(cactus: &Cactus) -> Result<DimensionReport> {
    let g = &cactus.graph;
    let d = &cactus.decomposition;
    let l = compute_l(&cactus.threads);
    let b_total = compute_b(d);
    let mut report = DimensionReport {
        kind: GraphKind::Cactus,
        n: g.n(),
        m: g.m(),
        cyclomatic: cyclomatic_number(g),
        l,
        b: b_total,
        c_abc: 0,
        c_ade: 0,
        tau_vi: 0,
        tau_ei: 0,
        dim: 0,
        edim: 0,
        certificate_vertex: Vec::new(),
        certificate_edge: Vec::new(),
        cycles: Vec::new(),
        incidence_vi: IncidenceGraph {
            nodes: 0,
            edges: Vec::new(),
        },
        incidence_ei: IncidenceGraph {
            nodes: 0,
            edges: Vec::new(),
        },
        cover_vi: Vec::new(),
        cover_ei: Vec::new(),
    };

    if g.n() == 1 {
        report.kind = GraphKind::SingleVertex;
        return Ok(report);
    }
    if g.is_path() {
        report.kind = GraphKind::Path;
        let end = (0..g.n())
            .find(|&v| g.degree(v) == 1)
            .expect("a path has ends");
        report.dim = 1;
        report.certificate_vertex = vec![end];
        // a single edge is told apart from nothing by the empty set
        if g.m() > 1 {
            report.edim = 1;
            report.certificate_edge = vec![end];
        }
        for mode in Mode::BOTH {
            verify_certificate(cactus, report.certificate(mode), mode, report.value(mode))?;
        }
        return Ok(report);
    }
    let s1 = base_branch_resolving_set(cactus);
    if s1.len() != l {
        return Err(inconsistent(format!(
            "base set has {} vertices, L = {l}",
            s1.len()
        )));
    }
    if g.is_tree() {
        report.kind = GraphKind::Tree;
        report.dim = l;
        report.edim = l;
        report.certificate_vertex = s1.clone();
        report.certificate_edge = s1;
        for mode in Mode::BOTH {
            verify_certificate(cactus, report.certificate(mode), mode, l)?;
        }
        return Ok(report);
    }

    let cc = d.cycle_count();
    let in_s1 = mask_of(cactus.n(), &s1);
    let mut diag: Vec<CycleDiagnostics> = (0..cc)
        .map(|i| {
            let c = d.cycle(i);
            CycleDiagnostics {
                index: i,
                girth: c.girth(),
                b: d.branch_active_positions(i).len(),
                vertices: c.vertices.clone(),
                class_abc: CycleClass::Negative,
                class_ade: CycleClass::Negative,
                flags: ByMode::default(),
                placement: ByMode::default(),
                triple_vertex: ByMode::default(),
            }
        })
        .collect();

    for mode in Mode::BOTH {
        let classes: Vec<Classification> = (0..cc)
            .map(|i| classify_cycle(cactus, i, &s1, mode))
            .collect();
        let class_of: Vec<CycleClass> = classes.iter().map(Classification::class).collect();
        let nice = select_nice_set(cactus, &s1, &classes, mode);
        if nice.set.len() != l + b_total {
            return Err(inconsistent(format!(
                "{mode:?} nice set has {} vertices, L + B = {}",
                nice.set.len(),
                l + b_total
            )));
        }
        let states: Vec<CycleState> = (0..cc)
            .map(|i| placed_state(cactus, i, &in_s1, &nice.placements[i]))
            .collect();
        let status: Vec<CriticalStatus> = (0..cc)
            .map(|i| critical_from_mask(d.cycle(i), &states[i].active))
            .collect();
        let ig = build_incidence_graph(cactus, &status, &class_of, mode);
        let (tau, cover) = min_vertex_cover(&ig);
        let positives = class_of
            .iter()
            .filter(|&&c| c == CycleClass::Positive)
            .count();

        let mut certificate = nice.set.clone();
        for i in 0..cc {
            let c = d.cycle(i);
            diag[i]
                .flags
                .get_mut(mode)
                .clone_from(&evaluate_configurations(c, &states[i]).flags);
            *diag[i].placement.get_mut(mode) =
                nice.placements[i].iter().map(|ch| ch.s_vertex).collect();
            match mode {
                Mode::Vertex => diag[i].class_abc = class_of[i],
                Mode::Edge => diag[i].class_ade = class_of[i],
            }
            if class_of[i] == CycleClass::Positive || cover.contains(&i) {
                let p = triple_vertex_position(c, &states[i].active).ok_or_else(|| {
                    inconsistent(format!(
                        "cycle {i} has no vertex completing a geodesic triple"
                    ))
                })?;
                *diag[i].triple_vertex.get_mut(mode) = Some(c.vertices[p]);
                certificate.push(c.vertices[p]);
            }
        }
        certificate.sort_unstable();
        certificate.dedup();
        let value = l + b_total + positives + tau;
        verify_certificate(cactus, &certificate, mode, value)?;
        for i in (0..cc).filter(|&i| class_of[i] == CycleClass::Positive) {
            let st = critical_from_mask(d.cycle(i), &active_mask(d, i, &certificate));
            if !st.for_mode(mode).is_empty() {
                return Err(inconsistent(format!(
                    "positive cycle {i} keeps critical vertices {:?}",
                    st.for_mode(mode)
                )));
            }
        }

        match mode {
            Mode::Vertex => {
                report.c_abc = positives;
                report.tau_vi = tau;
                report.dim = value;
                report.certificate_vertex = certificate;
                report.incidence_vi = ig;
                report.cover_vi = cover;
            }
            Mode::Edge => {
                report.c_ade = positives;
                report.tau_ei = tau;
                report.edim = value;
                report.certificate_edge = certificate;
                report.incidence_ei = ig;
                report.cover_ei = cover;
            }
        }
    }
    report.cycles = diag;
    Ok(report)
}
