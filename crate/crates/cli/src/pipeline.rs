use std::cell::OnceCell;

use confspace::cup_product::{basis_products, measured_products, verify_on_tori, CohomologyModel};
use confspace::discrete_config::{
    build_discrete_config, euler_characteristic_formula, homology_oracle, DiscreteConfigComplex,
};
use confspace::intersection_form::{build_intersection_matrix, config_homology, IntersectionMatrix};
use confspace::io::GraphDocument;
use confspace::planar::{
    check_thm3_hypotheses, disjoint_pairs, h1_generator_cycles, planar_betti_report, torus_basis_check,
    trace_faces, Embedding, PlanarStructure,
};
use confspace::relative_complex::{build_relative_complex, rank_formula_check, relative_h2, RelativeComplex, RelativeH2};
use confspace::{fundamental_cycle_basis, subdivide, validate, BigInt, EdgeChain, Error, Graph, HomologySummary};

use crate::report::{
    EulerReport, GeneratorReport, GraphSize, IntersectionReport, RelativeReport, RunReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Basis {
    Tree,
    Faces,
}

/// Problems with the input rather than with the mathematics.
#[derive(Debug)]
pub struct Malformed(pub String);

impl From<Error> for Malformed {
    fn from(e: Error) -> Self {
        Malformed(e.to_string())
    }
}

pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::MalformedGraph(_)
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::ZeroParts(_)
            | Error::BadRotation(_)
            | Error::EulerMismatch { .. }
            | Error::BadOuterMarker(_)
    )
}

/// A parsed graph and everything computed from it so far.
pub struct Context {
    pub graph: Graph,
    pub embedding: Option<Embedding>,
    d: OnceCell<DiscreteConfigComplex>,
    oracle: OnceCell<HomologySummary<BigInt>>,
    rel: OnceCell<(RelativeComplex, RelativeH2)>,
    planar: OnceCell<PlanarStructure>,
}

impl Context {
    pub fn new(graph: Graph, embedding: Option<Embedding>) -> Context {
        Context {
            graph,
            embedding,
            d: OnceCell::new(),
            oracle: OnceCell::new(),
            rel: OnceCell::new(),
            planar: OnceCell::new(),
        }
    }

    fn d(&self) -> &DiscreteConfigComplex {
        self.d.get_or_init(|| build_discrete_config(&self.graph))
    }

    fn oracle(&self) -> &HomologySummary<BigInt> {
        self.oracle.get_or_init(|| homology_oracle(self.d()))
    }

    fn rel(&self) -> &(RelativeComplex, RelativeH2) {
        self.rel.get_or_init(|| {
            let c = build_relative_complex(&self.graph);
            let h2 = relative_h2(&c);
            (c, h2)
        })
    }

    fn planar(&self) -> Result<&PlanarStructure, Malformed> {
        if let Some(ps) = self.planar.get() {
            return Ok(ps);
        }
        let emb = self
            .embedding
            .as_ref()
            .ok_or_else(|| Malformed("the input has no rotation system".into()))?;
        let ps = trace_faces(&self.graph, emb).map_err(|e| {
            if is_input_error(&e) {
                Malformed(e.to_string())
            } else {
                Malformed(format!("cannot trace faces: {e}"))
            }
        })?;
        Ok(self.planar.get_or_init(|| ps))
    }

    fn face_matrix(&self) -> Result<IntersectionMatrix, Malformed> {
        let ps = self.planar()?;
        let (c, h2) = self.rel();
        Ok(build_intersection_matrix(ps.bounded_cycles(), c, h2)?)
    }
}

pub fn classify(r: &mut RunReport, cx: &Context) {
    r.graph = Some(GraphSize {
        vertices: cx.graph.vertex_count(),
        edges: cx.graph.edge_count(),
    });
    r.classification = Some(validate(&cx.graph));
}

pub fn euler(r: &mut RunReport, cx: &Context, with_oracle: bool) {
    let d = cx.d();
    let rep = EulerReport {
        cells: d.cell_counts(),
        by_cells: d.euler_characteristic(),
        by_formula: euler_characteristic_formula(&cx.graph),
    };
    let mut pass = rep.by_cells == rep.by_formula;
    let mut detail = format!("cells {}, formula {}", rep.by_cells, rep.by_formula);
    if with_oracle {
        let alt: i64 = cx
            .oracle()
            .betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        pass &= alt == rep.by_cells;
        detail.push_str(&format!(", alternating Betti sum {alt}"));
    }
    r.check("euler-consistency", pass, detail);
    r.euler = Some(rep);
}

pub fn homology(r: &mut RunReport, cx: &Context) {
    let ok = cx.d().boundary_squared_is_zero();
    r.check("boundary-squared-zero:discrete", ok, "d1 d2 = 0 on D(G,2)");
    r.homology = Some(cx.oracle().clone());
}

pub fn nform(r: &mut RunReport, cx: &Context) {
    let (c, h2) = cx.rel();
    r.check("boundary-squared-zero:relative", c.boundary_squared_is_zero(), "d1 d2 = 0 on (N,dN)");
    let rank_formula = if validate(&cx.graph).is_generic() {
        let check = rank_formula_check(&cx.graph, c, h2).expect("generic graphs qualify");
        r.check(
            "rank-formula",
            check.holds(),
            format!(
                "rank {}, formula {}, H0 vanishes {}, H1 vanishes {}",
                check.rank, check.formula, check.h0_vanishes, check.h1_vanishes
            ),
        );
        Some(check)
    } else {
        None
    };
    r.relative = Some(RelativeReport {
        cells: [c.cells0.len(), c.cells1.len(), c.cells2.len()],
        h2_rank: h2.rank,
        rank_formula,
    });
}

pub fn iform(r: &mut RunReport, cx: &Context, basis: Basis) -> Result<(), Malformed> {
    let cycles: Vec<EdgeChain> = match basis {
        Basis::Faces => cx.planar()?.bounded_cycles().to_vec(),
        Basis::Tree => match fundamental_cycle_basis(&cx.graph) {
            Ok(b) => b,
            Err(e) => {
                r.check("intersection-route", false, e.to_string());
                return Ok(());
            }
        },
    };
    let (c, h2) = cx.rel();
    let im = build_intersection_matrix(&cycles, c, h2)?;
    match config_homology(&cx.graph, &im, Some(cx.oracle())) {
        Ok(rep) => {
            let oracle = cx.oracle();
            r.check(
                "oracle-equivalence",
                rep.oracle_agreement == Some(true),
                format!(
                    "intersection route b1 {} b2 {}, oracle b1 {} b2 {}",
                    rep.b1,
                    rep.b2,
                    oracle.betti.get(1).copied().unwrap_or(0),
                    oracle.betti.get(2).copied().unwrap_or(0)
                ),
            );
            r.intersection = Some(IntersectionReport {
                basis: format!("{basis:?}").to_lowercase(),
                basis_cycles: cycles.iter().map(|z| z.by_id(&cx.graph)).collect(),
                matrix_shape: (im.matrix.rows(), im.matrix.cols()),
                rank: im.rank(),
                homology: rep,
            });
        }
        Err(e) => r.check("intersection-route", false, e.to_string()),
    }
    Ok(())
}

pub fn planar(r: &mut RunReport, cx: &Context) -> Result<(), Malformed> {
    let ps = cx.planar()?;
    let g = &cx.graph;
    let report = planar_betti_report(ps, g);
    let pairs = disjoint_pairs(ps);
    let im = cx.face_matrix()?;
    let oracle = cx.oracle();
    let b1 = oracle.betti.get(1).copied().unwrap_or(0);
    let b2 = oracle.betti.get(2).copied().unwrap_or(0);

    let torus = torus_basis_check(ps, &pairs, &im);
    r.check(
        "torus-basis",
        torus.passes(),
        format!(
            "{} tensors, in ker I {}, independent {}, saturated {}",
            torus.pair_count, torus.all_in_kernel, torus.independent, torus.saturated
        ),
    );
    r.check(
        "htwo-count",
        pairs.len() == im.nullity() && pairs.len() == b2,
        format!("|J| {}, nullity of I {}, oracle b2 {b2}", pairs.len(), im.nullity()),
    );
    if let (Some(f1), Some(f2)) = (report.b1_thm3, report.b2_thm3) {
        r.check(
            "closed-formulas",
            f1 == b1 as i64 && f2 == pairs.len() as i64,
            format!("formulas b1 {f1} b2 {f2}, oracle b1 {b1}, |J| {}", pairs.len()),
        );
        if let Ok(rep) = config_homology(g, &im, None) {
            r.check("coker-rank-one", rep.coker_free_rank == 1, format!("free rank {}", rep.coker_free_rank));
        }
        match h1_generator_cycles(ps, g, cx.d()) {
            Ok(gens) => {
                r.check(
                    "generator-rank",
                    gens.full_rank(),
                    format!("{} cycles, rank {}", gens.cycles.len(), gens.rank),
                );
                r.generators = Some(GeneratorReport {
                    labels: gens.labels.clone(),
                    stationary: gens.stationary.iter().map(|&v| g.vertex_id(v).to_string()).collect(),
                    triple_vertex: g.vertex_id(gens.triple_vertex).to_string(),
                    triple_edges: gens.triple_edges.iter().map(|&e| g.edge(e).id.clone()).collect(),
                    rank: gens.rank,
                });
            }
            Err(e) => r.check("generator-rank", false, e.to_string()),
        }
    } else {
        let checks = check_thm3_hypotheses(ps, g);
        r.check("closed-formulas", true, format!("not applicable: {}", checks.failures.join("; ")));
    }
    r.planar = Some(report);
    Ok(())
}

pub fn cup(r: &mut RunReport, cx: &Context) -> Result<(), Malformed> {
    let ps = cx.planar()?;
    let pairs = disjoint_pairs(ps);
    let table = match basis_products(ps, &pairs) {
        Ok(t) => t,
        Err(e) => {
            r.check("cup", false, e.to_string());
            return Ok(());
        }
    };
    let model = match CohomologyModel::new(&cx.graph, ps) {
        Ok(m) => m,
        Err(e) => {
            r.check("cup", false, e.to_string());
            r.cup = Some(table);
            return Ok(());
        }
    };
    let im = cx.face_matrix()?;
    let measured = measured_products(&model, ps, &pairs).map_err(Malformed::from)?;
    let verdict = verify_on_tori(&table, &model, ps, &pairs, &im).map_err(Malformed::from)?;
    r.check(
        "cup-antisymmetry",
        table.is_antisymmetric() && measured.is_antisymmetric(),
        "closed-form and measured tables",
    );
    let (special, other): (Vec<_>, Vec<_>) = verdict
        .mismatches
        .iter()
        .partition(|m| m.left == "special" || m.right == "special");
    r.check(
        "cup-xi-eta-on-tori",
        verdict.tori_in_kernel && other.is_empty(),
        format!("{} mismatches over {} tori", other.len(), pairs.len()),
    );
    r.check(
        "cup-special-on-tori",
        special.is_empty(),
        format!("{} nonzero products with the special class", special.len()),
    );
    r.cup = Some(table);
    r.cup_verification = Some(verdict);
    Ok(())
}

pub fn subdivide_graph(r: &mut RunReport, cx: &Context, parts: usize) -> Result<GraphDocument, Malformed> {
    let map = cx.graph.edges().iter().map(|e| (e.id.clone(), parts)).collect();
    let split = subdivide(&cx.graph, &map)?;
    if validate(&cx.graph).is_generic() {
        let after = homology_oracle(&build_discrete_config(&split));
        let before = cx.oracle();
        r.check(
            "subdivision-invariance",
            &after == before,
            format!("betti {:?} before, {:?} after", before.betti, after.betti),
        );
    }
    let doc = GraphDocument::from_graph(&split, None);
    r.subdivided = Some(doc.clone());
    Ok(doc)
}
