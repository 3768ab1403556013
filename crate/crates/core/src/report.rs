//! Serializable report with vertices given by their input labels.

use serde::Serialize;

use crate::graph::Graph;
use crate::oracle::BoundsAudit;
use crate::resolving::Flags;
use crate::solver::{ByMode, CycleClass, DimensionReport, GraphKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEntry {
    pub index: usize,
    pub girth: usize,
    pub b: usize,
    pub vertices: Vec<u64>,
    pub class_abc: CycleClass,
    pub class_ade: CycleClass,
    pub flags: ByMode<Flags>,
    pub placement: ByMode<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceEntry {
    pub cycles: (usize, usize),
    pub vertex: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonReport {
    pub n: usize,
    pub m: usize,
    pub cyclomatic: usize,
    pub is_cactus: bool,
    pub kind: GraphKind,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub per_cycle: Vec<CycleEntry>,
    pub c_abc: usize,
    pub c_ade: usize,
    pub tau_vi: usize,
    pub tau_ei: usize,
    pub incidences_vi: Vec<IncidenceEntry>,
    pub incidences_ei: Vec<IncidenceEntry>,
    pub dim: usize,
    pub edim: usize,
    pub cert_vertex: Vec<u64>,
    pub cert_edge: Vec<u64>,
    pub audits: BoundsAudit,
}

fn labels(g: &Graph, vs: &[usize]) -> Vec<u64> {
    let mut out: Vec<u64> = vs.iter().map(|&v| g.label(v)).collect();
    out.sort_unstable();
    out
}

impl JsonReport {
    pub fn new(g: &Graph, r: &DimensionReport, audits: BoundsAudit) -> JsonReport {
        let incidences = |edges: &[(usize, usize, usize)]| {
            edges
                .iter()
                .map(|&(i, j, v)| IncidenceEntry {
                    cycles: (i, j),
                    vertex: g.label(v),
                })
                .collect()
        };
        JsonReport {
            n: r.n,
            m: r.m,
            cyclomatic: r.cyclomatic,
            is_cactus: true,
            kind: r.kind,
            l: r.l,
            b: r.b,
            per_cycle: r
                .cycles
                .iter()
                .map(|c| CycleEntry {
                    index: c.index,
                    girth: c.girth,
                    b: c.b,
                    // cycle order is kept, not sorted
                    vertices: c.vertices.iter().map(|&v| g.label(v)).collect(),
                    class_abc: c.class_abc,
                    class_ade: c.class_ade,
                    flags: c.flags.clone(),
                    placement: ByMode {
                        vertex: labels(g, &c.placement.vertex),
                        edge: labels(g, &c.placement.edge),
                    },
                })
                .collect(),
            c_abc: r.c_abc,
            c_ade: r.c_ade,
            tau_vi: r.tau_vi,
            tau_ei: r.tau_ei,
            incidences_vi: incidences(&r.incidence_vi.edges),
            incidences_ei: incidences(&r.incidence_ei.edges),
            dim: r.dim,
            edim: r.edim,
            cert_vertex: labels(g, &r.certificate_vertex),
            cert_edge: labels(g, &r.certificate_edge),
            audits,
        }
    }
}
