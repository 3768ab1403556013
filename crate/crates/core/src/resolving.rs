//! Predicates on a candidate landmark set `S`: branch-resolving and biactive
//! checks, canonical cycle labelings, the five cycle configurations, S-paths
//! and critical incidences, and the structural generator test built on them.
//!
//! Thread lengths count thread vertices `u_1 .. u_k`. The `C` and `E`
//! thresholds compare against that count; an off-by-one there flips flags,
//! and the oracle equivalence tests are what pin it down.

use serde::Serialize;

use crate::cactus::{Cactus, CactusDecomposition, Cycle, ThreadProfile};
use crate::error::{Error, Result};

/// Which objects a landmark set has to tell apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vertex,
    Edge,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Vertex, Mode::Edge];

    /// The configurations that defeat a generator in this mode.
    pub fn configurations(self) -> [Configuration; 3] {
        match self {
            Mode::Vertex => [Configuration::A, Configuration::B, Configuration::C],
            Mode::Edge => [Configuration::A, Configuration::D, Configuration::E],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Configuration {
    A,
    B,
    C,
    D,
    E,
}

/// Membership mask over `0..n`.
pub fn mask_of(n: usize, s: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in s {
        m[v] = true;
    }
    m
}

/// Active flags by cycle position: position `p` is active when `T_{v_p}`
/// meets the set.
pub fn active_mask(d: &CactusDecomposition, i: usize, s: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; d.cycle(i).girth()];
    for &x in s {
        mask[d.anchor_position(i, x)] = true;
    }
    mask
}

/// S-active vertices of cycle `i`, sorted.
pub fn active_vertices(d: &CactusDecomposition, i: usize, s: &[usize]) -> Vec<usize> {
    let c = d.cycle(i);
    let mut out: Vec<usize> = active_mask(d, i, s)
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a)
        .map(|(p, _)| c.vertices[p])
        .collect();
    out.sort_unstable();
    out
}

/// First vertex with two or more S-free threads, if any.
pub fn branch_resolving_violation(tp: &ThreadProfile, s: &[usize]) -> Option<usize> {
    let in_set = mask_of(tp.vertex_count(), s);
    (0..tp.vertex_count()).find(|&v| tp.threads_at(v).filter(|t| t.is_free(&in_set)).count() > 1)
}

pub fn is_branch_resolving(tp: &ThreadProfile, s: &[usize]) -> bool {
    branch_resolving_violation(tp, s).is_none()
}

/// First cycle with fewer than two S-active vertices, if any.
pub fn biactive_violation(d: &CactusDecomposition, s: &[usize]) -> Option<usize> {
    (0..d.cycle_count()).find(|&i| active_mask(d, i, s).iter().filter(|&&a| a).count() < 2)
}

pub fn is_biactive(d: &CactusDecomposition, s: &[usize]) -> bool {
    biactive_violation(d, s).is_none()
}

/// A labeling `v_0 .. v_{g-1}` of a cycle: label `i` sits at stored
/// position `start + i` (forward) or `start - i` (backward), modulo `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Labeling {
    pub start: usize,
    pub forward: bool,
    girth: usize,
}

impl Labeling {
    pub fn position(&self, label: usize) -> usize {
        let g = self.girth;
        let label = label % g;
        if self.forward {
            (self.start + label) % g
        } else {
            (self.start + g - label) % g
        }
    }
}

/// All labelings that put an active vertex at label 0 and minimise the
/// largest active label `k`, in tie-break order: lexicographically smallest
/// active-label sequence, then forward before backward, then lowest start.
pub fn minimal_labelings(active: &[bool]) -> (usize, Vec<Labeling>) {
    let g = active.len();
    let mut best_k = usize::MAX;
    let mut found: Vec<(Vec<usize>, bool, usize)> = Vec::new();
    for start in (0..g).filter(|&p| active[p]) {
        for forward in [true, false] {
            let lab = Labeling {
                start,
                forward,
                girth: g,
            };
            let labels: Vec<usize> = (0..g).filter(|&i| active[lab.position(i)]).collect();
            let k = *labels.last().expect("start is active");
            if k < best_k {
                best_k = k;
                found.clear();
            }
            if k == best_k {
                found.push((labels, !forward, start));
            }
        }
    }
    found.sort();
    found.dedup();
    let labelings = found
        .into_iter()
        .map(|(_, backward, start)| Labeling {
            start,
            forward: !backward,
            girth: g,
        })
        .collect();
    (best_k, labelings)
}

/// A canonical labeling of one cycle with respect to an active set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveProfile {
    pub cycle: usize,
    /// `v_0 .. v_{g-1}` as graph vertices.
    pub labeled: Vec<usize>,
    /// Labels of the active vertices, ascending; always starts with 0.
    pub active_positions: Vec<usize>,
    pub k: usize,
    pub a: usize,
}

/// Canonical labeling for the given active cycle vertices (non-empty).
pub fn canonical_labeling(c: &Cycle, active: &[usize]) -> ActiveProfile {
    let mask = cycle_mask(c, active);
    assert!(
        mask.iter().any(|&a| a),
        "canonical labeling needs an active vertex"
    );
    let (k, labelings) = minimal_labelings(&mask);
    let lab = labelings[0];
    let g = c.girth();
    let labeled: Vec<usize> = (0..g).map(|i| c.vertices[lab.position(i)]).collect();
    let active_positions: Vec<usize> = (0..g).filter(|&i| mask[lab.position(i)]).collect();
    ActiveProfile {
        cycle: c.index,
        labeled,
        a: active_positions.len(),
        active_positions,
        k,
    }
}

fn cycle_mask(c: &Cycle, vertices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; c.girth()];
    for &v in vertices {
        if let Some(p) = c.position_of(v) {
            mask[p] = true;
        }
    }
    mask
}

/// Three active positions whose pairwise cycle distances sum to the girth.
pub fn geodesic_triple_in_mask(c: &Cycle, active: &[bool]) -> Option<[usize; 3]> {
    let g = c.girth();
    let pos: Vec<usize> = (0..g).filter(|&p| active[p]).collect();
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            for e in b + 1..pos.len() {
                let (x, y, z) = (pos[a], pos[b], pos[e]);
                let sum =
                    c.cyclic_distance(x, y) + c.cyclic_distance(y, z) + c.cyclic_distance(x, z);
                if sum == g {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

pub fn geodesic_triple_exists(c: &Cycle, active: &[usize]) -> bool {
    geodesic_triple_in_mask(c, &cycle_mask(c, active)).is_some()
}

/// The per-position inputs that configurations depend on: which cycle
/// vertices are active, and which S-free threads hang at each of them as
/// `(length, leaf)` pairs.
#[derive(Debug, Clone)]
pub struct CycleState {
    pub active: Vec<bool>,
    pub free_threads: Vec<Vec<(usize, usize)>>,
}

impl CycleState {
    pub fn from_set(cactus: &Cactus, i: usize, s: &[usize]) -> CycleState {
        let in_set = mask_of(cactus.n(), s);
        let active = active_mask(&cactus.decomposition, i, s);
        Self::with_active(cactus, i, active, &in_set)
    }

    /// State with an explicit active mask; threads are free when they avoid
    /// `in_set`.
    pub fn with_active(
        cactus: &Cactus,
        i: usize,
        active: Vec<bool>,
        in_set: &[bool],
    ) -> CycleState {
        let c = cactus.decomposition.cycle(i);
        let free_threads = c
            .vertices
            .iter()
            .map(|&v| {
                cactus
                    .threads
                    .threads_at(v)
                    .filter(|t| t.is_free(in_set))
                    .map(|t| (t.len(), t.leaf()))
                    .collect()
            })
            .collect();
        CycleState {
            active,
            free_threads,
        }
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
    #[serde(rename = "D")]
    pub d: bool,
    #[serde(rename = "E")]
    pub e: bool,
}

impl Flags {
    pub fn get(&self, cfg: Configuration) -> bool {
        match cfg {
            Configuration::A => self.a,
            Configuration::B => self.b,
            Configuration::C => self.c,
            Configuration::D => self.d,
            Configuration::E => self.e,
        }
    }

    fn set(&mut self, cfg: Configuration) {
        match cfg {
            Configuration::A => self.a = true,
            Configuration::B => self.b = true,
            Configuration::C => self.c = true,
            Configuration::D => self.d = true,
            Configuration::E => self.e = true,
        }
    }

    /// First configuration of `mode` that is present.
    pub fn violation(&self, mode: Mode) -> Option<Configuration> {
        mode.configurations().into_iter().find(|&c| self.get(c))
    }

    pub fn any(&self) -> bool {
        self.a || self.b || self.c || self.d || self.e
    }
}

/// Evidence for one present configuration, in canonical labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub configuration: Configuration,
    /// Label `i` of the vertex the condition fired at (`k` for `A`).
    pub label: usize,
    pub vertex: usize,
    /// Leaf of the S-free thread used, when the condition needs one.
    pub thread_leaf: Option<usize>,
    /// For `E` on even cycles: label, vertex and thread leaf at `v_j`.
    pub partner: Option<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigReport {
    pub cycle: usize,
    pub k: usize,
    pub a: usize,
    pub flags: Flags,
    pub witnesses: Vec<Witness>,
}

/// Evaluates configurations `A`–`E` on every minimal labeling and ORs the
/// results; the first witness found per configuration is kept.
pub fn evaluate_configurations(c: &Cycle, state: &CycleState) -> ConfigReport {
    let g = c.girth() as i64;
    let a = state.active_count();
    let mut report = ConfigReport {
        cycle: c.index,
        k: 0,
        a,
        flags: Flags::default(),
        witnesses: Vec::new(),
    };
    if a == 0 {
        return report;
    }
    let (k, labelings) = minimal_labelings(&state.active);
    report.k = k;
    let k = k as i64;
    let floor = g / 2;
    let ceil = (g + 1) / 2;
    let even = g % 2 == 0;

    for lab in labelings {
        let vertex = |i: i64| c.vertices[lab.position(i as usize)];
        let free = |i: i64| &state.free_threads[lab.position(i as usize)];
        let found = |report: &mut ConfigReport, w: Witness| {
            if !report.flags.get(w.configuration) {
                report.flags.set(w.configuration);
                report.witnesses.push(w);
            }
        };

        if a == 2 && even && k == g / 2 {
            found(
                &mut report,
                Witness {
                    configuration: Configuration::A,
                    label: k as usize,
                    vertex: vertex(k),
                    thread_leaf: None,
                    partner: None,
                },
            );
        }

        // B and D: any S-free thread at v_0 or in the index window past v_k.
        let window = |hi: i64, tail_from: i64| {
            std::iter::once(0)
                .chain(k..=hi)
                .chain(tail_from..=g - 1)
                .find_map(|i| free(i).first().map(|&(_, leaf)| (i, leaf)))
        };
        if k < floor {
            if let Some((i, leaf)) = window(floor - 1, ceil + k + 1) {
                found(
                    &mut report,
                    Witness {
                        configuration: Configuration::B,
                        label: i as usize,
                        vertex: vertex(i),
                        thread_leaf: Some(leaf),
                        partner: None,
                    },
                );
            }
        }
        if k < ceil {
            if let Some((i, leaf)) = window(ceil - 1, floor + k + 1) {
                found(
                    &mut report,
                    Witness {
                        configuration: Configuration::D,
                        label: i as usize,
                        vertex: vertex(i),
                        thread_leaf: Some(leaf),
                        partner: None,
                    },
                );
            }
        }

        if a == 2 && even && k <= g / 2 {
            let need = g / 2 - k;
            let hit = (0..=k).find_map(|i| {
                free(i)
                    .iter()
                    .find(|&&(len, _)| len as i64 >= need)
                    .map(|&(_, leaf)| (i, leaf))
            });
            if let Some((i, leaf)) = hit {
                found(
                    &mut report,
                    Witness {
                        configuration: Configuration::C,
                        label: i as usize,
                        vertex: vertex(i),
                        thread_leaf: Some(leaf),
                        partner: None,
                    },
                );
            }
        }

        if a == 2 {
            let need = floor - k + 1;
            for i in 0..=k {
                let Some(&(_, leaf)) = free(i).iter().find(|&&(len, _)| len as i64 >= need) else {
                    continue;
                };
                let partner = if even {
                    // for j == i the same thread serves both roles
                    let j = (g / 2 + k - i).rem_euclid(g);
                    match free(j).first() {
                        Some(&(_, pleaf)) => Some((j as usize, vertex(j), pleaf)),
                        None => continue,
                    }
                } else {
                    None
                };
                found(
                    &mut report,
                    Witness {
                        configuration: Configuration::E,
                        label: i as usize,
                        vertex: vertex(i),
                        thread_leaf: Some(leaf),
                        partner,
                    },
                );
                break;
            }
        }
    }
    report.witnesses.sort_by_key(|w| w.configuration);
    report
}

/// Configuration report of cycle `i` with respect to `S`, which must be a
/// biactive branch-resolving set.
pub fn detect_configurations(cactus: &Cactus, i: usize, s: &[usize]) -> Result<ConfigReport> {
    if !is_branch_resolving(&cactus.threads, s) || !is_biactive(&cactus.decomposition, s) {
        return Err(Error::NotBiactiveBranchResolving);
    }
    let c = cactus.decomposition.cycle(i);
    Ok(evaluate_configurations(
        c,
        &CycleState::from_set(cactus, i, s),
    ))
}

/// A shortest subpath of a cycle covering every active vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SPath {
    pub cycle: usize,
    /// Stored-order positions of the two ends (equal when one vertex is active).
    pub end_positions: (usize, usize),
    pub endpoints: (usize, usize),
    /// Number of edges.
    pub length: usize,
    pub unique: bool,
}

pub fn s_path_from_mask(c: &Cycle, active: &[bool]) -> Option<SPath> {
    let g = c.girth();
    let pos: Vec<usize> = (0..g).filter(|&p| active[p]).collect();
    match pos.len() {
        0 => None,
        1 => Some(SPath {
            cycle: c.index,
            end_positions: (pos[0], pos[0]),
            endpoints: (c.vertices[pos[0]], c.vertices[pos[0]]),
            length: 0,
            unique: true,
        }),
        len => {
            // gap from pos[j] forward to the next active position
            let gaps: Vec<usize> = (0..len)
                .map(|j| (pos[(j + 1) % len] + g - pos[j]) % g)
                .collect();
            let max_gap = *gaps.iter().max().expect("non-empty");
            let j = gaps.iter().position(|&x| x == max_gap).expect("max exists");
            let unique = gaps.iter().filter(|&&x| x == max_gap).count() == 1;
            let (from, to) = (pos[(j + 1) % len], pos[j]);
            Some(SPath {
                cycle: c.index,
                end_positions: (from, to),
                endpoints: (c.vertices[from], c.vertices[to]),
                length: g - max_gap,
                unique,
            })
        }
    }
}

pub fn s_path(c: &Cycle, active: &[usize]) -> Option<SPath> {
    s_path_from_mask(c, &cycle_mask(c, active))
}

/// End vertices of the S-path that are vertex- or edge-critical.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CriticalStatus {
    pub vertex_critical: Vec<usize>,
    pub edge_critical: Vec<usize>,
}

impl CriticalStatus {
    pub fn for_mode(&self, mode: Mode) -> &[usize] {
        match mode {
            Mode::Vertex => &self.vertex_critical,
            Mode::Edge => &self.edge_critical,
        }
    }
}

pub fn critical_from_mask(c: &Cycle, active: &[bool]) -> CriticalStatus {
    let Some(path) = s_path_from_mask(c, active) else {
        return CriticalStatus::default();
    };
    let g = c.girth();
    let mut ends = vec![path.endpoints.0, path.endpoints.1];
    ends.sort_unstable();
    ends.dedup();
    let len = path.length;
    CriticalStatus {
        vertex_critical: if len < g / 2 {
            ends.clone()
        } else {
            Vec::new()
        },
        edge_critical: if len < g.div_ceil(2) {
            ends
        } else {
            Vec::new()
        },
    }
}

pub fn critical_vertices(c: &Cycle, active: &[usize]) -> CriticalStatus {
    critical_from_mask(c, &cycle_mask(c, active))
}

/// Two cycles sharing a vertex that is critical on both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CriticalIncidence {
    pub cycles: (usize, usize),
    pub vertex: usize,
}

/// Critical incidences given the critical status of every cycle.
pub fn incidences_from_status(
    d: &CactusDecomposition,
    status: &[CriticalStatus],
    mode: Mode,
) -> Vec<CriticalIncidence> {
    d.touching_pairs()
        .into_iter()
        .filter(|&(i, j, v)| {
            status[i].for_mode(mode).contains(&v) && status[j].for_mode(mode).contains(&v)
        })
        .map(|(i, j, v)| CriticalIncidence {
            cycles: (i, j),
            vertex: v,
        })
        .collect()
}

pub fn critical_incidences(cactus: &Cactus, s: &[usize], mode: Mode) -> Vec<CriticalIncidence> {
    let d = &cactus.decomposition;
    let status: Vec<CriticalStatus> = (0..d.cycle_count())
        .map(|i| critical_from_mask(d.cycle(i), &active_mask(d, i, s)))
        .collect();
    incidences_from_status(d, &status, mode)
}

/// Why a set is or is not a generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnosis {
    Generator,
    /// Path graph: the set holds no end vertex and fewer than two vertices.
    PathUnresolved,
    NotBranchResolving {
        vertex: usize,
    },
    NotBiactive {
        cycle: usize,
    },
    Configuration {
        cycle: usize,
        configuration: Configuration,
    },
    CriticalIncidence {
        cycles: (usize, usize),
        vertex: usize,
    },
}

impl Diagnosis {
    pub fn is_generator(&self) -> bool {
        matches!(self, Diagnosis::Generator)
    }

    pub fn is_not_biactive_branch_resolving(&self) -> bool {
        matches!(
            self,
            Diagnosis::NotBranchResolving { .. } | Diagnosis::NotBiactive { .. }
        )
    }
}

/// Decides whether `S` is a vertex (or edge) metric generator from the
/// cactus structure alone: `S` must be biactive and branch-resolving, no
/// cycle may contain a configuration of the mode, and no two cycles may be
/// critically incident.
///
/// Trees are handled directly: on a path any end vertex or any two vertices
/// resolve; on other trees branch-resolving sets are exactly the generators.
pub fn is_generator_structural(cactus: &Cactus, s: &[usize], mode: Mode) -> Diagnosis {
    let g = &cactus.graph;
    if g.is_path() {
        let trivial = g.n() == 1 || (mode == Mode::Edge && g.m() <= 1);
        let has_end = s.iter().any(|&v| g.degree(v) <= 1);
        let distinct = s.iter().collect::<std::collections::BTreeSet<_>>().len();
        return if trivial || has_end || distinct >= 2 {
            Diagnosis::Generator
        } else {
            Diagnosis::PathUnresolved
        };
    }
    if let Some(vertex) = branch_resolving_violation(&cactus.threads, s) {
        return Diagnosis::NotBranchResolving { vertex };
    }
    let d = &cactus.decomposition;
    if let Some(cycle) = biactive_violation(d, s) {
        return Diagnosis::NotBiactive { cycle };
    }
    let in_set = mask_of(cactus.n(), s);
    let mut status = Vec::with_capacity(d.cycle_count());
    for i in 0..d.cycle_count() {
        let c = d.cycle(i);
        let state = CycleState::with_active(cactus, i, active_mask(d, i, s), &in_set);
        let report = evaluate_configurations(c, &state);
        if let Some(configuration) = report.flags.violation(mode) {
            return Diagnosis::Configuration {
                cycle: i,
                configuration,
            };
        }
        status.push(critical_from_mask(c, &state.active));
    }
    match incidences_from_status(d, &status, mode).first() {
        Some(inc) => Diagnosis::CriticalIncidence {
            cycles: inc.cycles,
            vertex: inc.vertex,
        },
        None => Diagnosis::Generator,
    }
}
