use std::collections::BTreeMap;
use std::fmt::Write;

use confspace::cup_product::{ProductTable, TorusVerification};
use confspace::intersection_form::ConfigHomologyReport;
use confspace::io::GraphDocument;
use confspace::planar::PlanarBettiReport;
use confspace::relative_complex::RankFormulaCheck;
use confspace::{BigInt, GraphClassification, HomologySummary};
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSize {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    /// cells of D(G,2) in degrees 0, 1, 2
    pub cells: [usize; 3],
    pub by_cells: i64,
    pub by_formula: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeReport {
    pub cells: [usize; 3],
    pub h2_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_formula: Option<RankFormulaCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub basis: String,
    pub basis_cycles: Vec<BTreeMap<String, i64>>,
    pub matrix_shape: (usize, usize),
    pub rank: usize,
    #[serde(flatten)]
    pub homology: ConfigHomologyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub labels: Vec<String>,
    pub stationary: Vec<String>,
    pub triple_vertex: String,
    pub triple_edges: Vec<String>,
    pub rank: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<GraphClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySummary<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planar: Option<PlanarBettiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cup: Option<ProductTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cup_verification: Option<TorusVerification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivided: Option<GraphDocument>,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            ..RunReport::default()
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<22}{v}").unwrap();
        line("command", self.command.clone());
        if let Some(d) = &self.input_digest {
            line("input sha256", d.clone());
        }
        if let Some(t) = self.timestamp {
            line("timestamp", t.to_string());
        }
        if let Some(g) = &self.graph {
            line("vertices / edges", format!("{} / {}", g.vertices, g.edges));
        }
        if let Some(c) = &self.classification {
            line("connected", c.connected.to_string());
            line("circle / interval", format!("{} / {}", c.circle_like, c.interval_like));
            line("b1(G), chi(G)", format!("{}, {}", c.first_betti, c.euler));
            line("essential vertices", c.essential_vertices.join(" "));
        }
        if let Some(e) = &self.euler {
            line("cells of D(G,2)", format!("{:?}", e.cells));
            line("chi(D) cells/formula", format!("{} / {}", e.by_cells, e.by_formula));
        }
        if let Some(h) = &self.homology {
            line("betti of D(G,2)", format!("{:?}", h.betti));
            line("torsion", torsion(&h.torsion));
        }
        if let Some(r) = &self.relative {
            line("cells of (N,dN)", format!("{:?}", r.cells));
            line("rk H2(N,dN)", r.h2_rank.to_string());
            if let Some(f) = &r.rank_formula {
                line("rank formula", f.formula.to_string());
                line("H0, H1 of (N,dN) = 0", format!("{}, {}", f.h0_vanishes, f.h1_vanishes));
            }
        }
        if let Some(i) = &self.intersection {
            line("cycle basis", format!("{} ({} cycles)", i.basis, i.basis_cycles.len()));
            line("I shape / rank", format!("{:?} / {}", i.matrix_shape, i.rank));
            line("b1, b2 of F", format!("{}, {}", i.homology.b1, i.homology.b2));
            line("coker free / torsion", format!("{} / {:?}", i.homology.coker_free_rank, ints(&i.homology.coker_torsion)));
        }
        if let Some(p) = &self.planar {
            line("faces", p.faces.to_string());
            line("|J|", p.b2_htwo.to_string());
            let hyp = &p.thm3_hypotheses;
            line(
                "hypotheses",
                format!(
                    "valence {}, simple boundaries {}, connected intersections {}",
                    hyp.valence_at_least_three, hyp.simple_face_boundaries, hyp.connected_intersections
                ),
            );
            match (p.b1_thm3, p.b2_thm3) {
                (Some(b1), Some(b2)) => line("formula b1, b2", format!("{b1}, {b2}")),
                _ => line("formula b1, b2", "not applicable".into()),
            }
        }
        if let Some(g) = &self.generators {
            line("generator cycles", format!("{} of rank {}", g.labels.len(), g.rank));
        }
        if let Some(t) = &self.cup {
            line("cup image rank", t.image_rank().to_string());
        }
        if let Some(v) = &self.cup_verification {
            line("cup mismatches", v.mismatches.len().to_string());
        }
        if let Some(d) = &self.subdivided {
            line("subdivided", format!("{} vertices, {} edges", d.vertices.len(), d.edges.len()));
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status}  {}  {}", c.name, c.detail).unwrap();
        }
        out
    }
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn torsion(t: &[Vec<BigInt>]) -> String {
    if t.iter().all(Vec::is_empty) {
        "none".into()
    } else {
        format!("{:?}", t.iter().map(|v| ints(v)).collect::<Vec<_>>())
    }
}
