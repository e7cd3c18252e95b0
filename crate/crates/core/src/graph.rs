//! Finite simple graphs with oriented edges, and integer edge chains on them.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn has_endpoint(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite `v`. Assumes `v` is an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A one-dimensional simplicial complex: no loops, no parallel edges.
///
/// Vertices and edges keep their input order; every cell enumeration
/// downstream is lexicographic in these indices.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, tail id, head id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let mut edge_list = Vec::new();
        let mut edge_index = HashMap::new();
        let mut endpoints = HashSet::new();
        for (id, tail, head) in edges {
            let lookup = |name: &str| {
                vertex_index.get(name).copied().ok_or_else(|| {
                    Error::MalformedGraph(format!("edge `{id}` names missing vertex `{name}`"))
                })
            };
            let (t, h) = (lookup(&tail)?, lookup(&head)?);
            if t == h {
                return Err(Error::MalformedGraph(format!("edge `{id}` is a loop")));
            }
            if !endpoints.insert((t.min(h), t.max(h))) {
                return Err(Error::MalformedGraph(format!(
                    "edge `{id}` is parallel to an earlier edge"
                )));
            }
            if edge_index.insert(id.clone(), edge_list.len()).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate edge `{id}`")));
            }
            edge_list.push(Edge { id, tail: t, head: h });
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, edge) in edge_list.iter().enumerate() {
            incidence[edge.tail].push(e);
            incidence[edge.head].push(e);
        }
        Ok(Graph {
            vertices,
            edges: edge_list,
            vertex_index,
            edge_index,
            incidence,
        })
    }

    /// Convenience constructor; edge ids are `tail-head`.
    pub fn from_pairs(vertices: &[&str], pairs: &[(&str, &str)]) -> Result<Graph> {
        Graph::new(
            vertices.iter().copied(),
            pairs
                .iter()
                .map(|(t, h)| (format!("{t}-{h}"), t.to_string(), h.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edges incident to `v`, in edge order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Whether two edges meet (a shared endpoint, or the same edge).
    pub fn edges_meet(&self, e: usize, f: usize) -> bool {
        let (a, b) = (&self.edges[e], &self.edges[f]);
        a.has_endpoint(b.tail) || a.has_endpoint(b.head)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Connected component label of every vertex, numbered from zero.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        for s in 0..self.vertices.len() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v] {
                    let w = self.edges[e].other(v);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }
}

/// Number of edges incident to a vertex.
pub fn valence(graph: &Graph, vertex: &str) -> Result<usize> {
    Ok(graph.degree(graph.vertex_index(vertex)?))
}

/// Sparse integer 1-chain on a graph, keyed by edge index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeChain {
    coefficients: BTreeMap<usize, i64>,
}

impl EdgeChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut c = Self::new();
        for (e, n) in terms {
            c.add_term(e, n);
        }
        c
    }

    /// Builds a chain from edge ids.
    pub fn from_ids(graph: &Graph, terms: &[(&str, i64)]) -> Result<Self> {
        let mut c = Self::new();
        for (id, n) in terms {
            c.add_term(graph.edge_index(id)?, *n);
        }
        Ok(c)
    }

    pub fn add_term(&mut self, edge: usize, n: i64) {
        let slot = self.coefficients.entry(edge).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.coefficients.remove(&edge);
        }
    }

    pub fn coefficient(&self, edge: usize) -> i64 {
        self.coefficients.get(&edge).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&e, &n)| (e, n))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn plus(&self, other: &EdgeChain) -> EdgeChain {
        let mut c = self.clone();
        for (e, n) in other.terms() {
            c.add_term(e, n);
        }
        c
    }

    pub fn scaled(&self, k: i64) -> EdgeChain {
        EdgeChain::from_terms(self.terms().map(|(e, n)| (e, n * k)))
    }

    /// Signed vertex incidence `sum n_e (head(e) - tail(e))`.
    pub fn boundary(&self, graph: &Graph) -> Vec<i64> {
        let mut b = vec![0; graph.vertex_count()];
        for (e, n) in self.terms() {
            let edge = graph.edge(e);
            b[edge.head] += n;
            b[edge.tail] -= n;
        }
        b
    }

    pub fn is_cycle(&self, graph: &Graph) -> bool {
        self.boundary(graph).iter().all(|&v| v == 0)
    }

    /// Vertices touched by edges with nonzero coefficient.
    pub fn support_vertices(&self, graph: &Graph) -> HashSet<usize> {
        self.terms()
            .flat_map(|(e, _)| [graph.edge(e).tail, graph.edge(e).head])
            .collect()
    }

    pub fn dense(&self, edge_count: usize) -> Vec<i64> {
        let mut v = vec![0; edge_count];
        for (e, n) in self.terms() {
            v[e] = n;
        }
        v
    }

    /// `edge id -> coefficient`, for reports.
    pub fn by_id(&self, graph: &Graph) -> BTreeMap<String, i64> {
        self.terms()
            .map(|(e, n)| (graph.edge(e).id.clone(), n))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClassification {
    pub connected: bool,
    pub circle_like: bool,
    pub interval_like: bool,
    pub essential_vertices: Vec<String>,
    pub first_betti: i64,
    pub euler: i64,
}

impl GraphClassification {
    /// Connected and homeomorphic to neither the circle nor the interval.
    pub fn is_generic(&self) -> bool {
        self.connected && !self.circle_like && !self.interval_like
    }
}

/// Classifies a graph. Malformed inputs are rejected earlier, by [`Graph::new`].
pub fn validate(graph: &Graph) -> GraphClassification {
    let (components, _) = graph.components();
    let connected = components == 1;
    let euler = graph.euler_characteristic();
    let first_betti = graph.edge_count() as i64 - graph.vertex_count() as i64 + components as i64;
    let degrees: Vec<usize> = (0..graph.vertex_count()).map(|v| graph.degree(v)).collect();
    let circle_like = connected && graph.edge_count() > 0 && degrees.iter().all(|&d| d == 2);
    let leaves = degrees.iter().filter(|&&d| d == 1).count();
    let interval_like = connected
        && first_betti == 0
        && degrees.iter().all(|&d| d <= 2)
        && (leaves == 2 || graph.vertex_count() == 1);
    let essential_vertices = (0..graph.vertex_count())
        .filter(|&v| degrees[v] >= 3)
        .map(|v| graph.vertex_id(v).to_string())
        .collect();
    GraphClassification {
        connected,
        circle_like,
        interval_like,
        essential_vertices,
        first_betti,
        euler,
    }
}

/// Replaces each edge by a path of `per_edge[id]` edges (default 1).
///
/// New vertices are named `<edge>#<k>` and new edges `<edge>.<k>`, with a
/// numeric suffix appended if a name is already taken.
pub fn subdivide(graph: &Graph, per_edge: &BTreeMap<String, usize>) -> Result<Graph> {
    for (id, &k) in per_edge {
        graph.edge_index(id)?;
        if k == 0 {
            return Err(Error::ZeroParts(id.clone()));
        }
    }
    let mut taken: HashSet<String> = graph
        .vertices()
        .iter()
        .chain(graph.edges().iter().map(|e| &e.id))
        .cloned()
        .collect();
    let mut fresh = |base: String| {
        let mut name = base.clone();
        let mut n = 1;
        while !taken.insert(name.clone()) {
            name = format!("{base}_{n}");
            n += 1;
        }
        name
    };
    let mut vertices: Vec<String> = graph.vertices().to_vec();
    let mut edges = Vec::new();
    for edge in graph.edges() {
        let parts = per_edge.get(&edge.id).copied().unwrap_or(1);
        if parts == 1 {
            edges.push((
                edge.id.clone(),
                graph.vertex_id(edge.tail).to_string(),
                graph.vertex_id(edge.head).to_string(),
            ));
            continue;
        }
        let mut path = vec![graph.vertex_id(edge.tail).to_string()];
        for k in 1..parts {
            let v = fresh(format!("{}#{k}", edge.id));
            vertices.push(v.clone());
            path.push(v);
        }
        path.push(graph.vertex_id(edge.head).to_string());
        for k in 0..parts {
            let id = fresh(format!("{}.{}", edge.id, k + 1));
            edges.push((id, path[k].clone(), path[k + 1].clone()));
        }
    }
    Graph::new(vertices, edges)
}

/// Subdivides every edge into `parts` pieces.
pub fn subdivide_uniform(graph: &Graph, parts: usize) -> Result<Graph> {
    let map = graph
        .edges()
        .iter()
        .map(|e| (e.id.clone(), parts))
        .collect();
    subdivide(graph, &map)
}

/// Breadth-first spanning tree from `root`: `parent_edge[v]` for every vertex.
fn bfs_tree(graph: &Graph, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; graph.vertex_count()];
    let mut seen = vec![false; graph.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<(usize, usize)> = graph
            .incident(v)
            .iter()
            .map(|&e| (graph.edge(e).other(v), e))
            .collect();
        nbrs.sort_by(|a, b| graph.vertex_id(a.0).cmp(graph.vertex_id(b.0)));
        for (w, e) in nbrs {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Fundamental cycles of a BFS spanning tree rooted at the smallest vertex id.
pub fn fundamental_cycle_basis(graph: &Graph) -> Result<Vec<EdgeChain>> {
    let root = (0..graph.vertex_count())
        .min_by(|&a, &b| graph.vertex_id(a).cmp(graph.vertex_id(b)))
        .ok_or(Error::Disconnected)?;
    fundamental_cycle_basis_from(graph, graph.vertex_id(root))
}

/// Fundamental cycles of the BFS spanning tree rooted at `root`, one per
/// non-tree edge in edge order. Each carries `+1` on its non-tree edge.
pub fn fundamental_cycle_basis_from(graph: &Graph, root: &str) -> Result<Vec<EdgeChain>> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let root = graph.vertex_index(root)?;
    let parent = bfs_tree(graph, root);
    let tree: HashSet<usize> = parent.iter().flatten().copied().collect();
    // path from v up to the root as a chain oriented towards the root
    let to_root = |mut v: usize| {
        let mut c = EdgeChain::new();
        while let Some(e) = parent[v] {
            let edge = graph.edge(e);
            let up = edge.other(v);
            c.add_term(e, if edge.tail == v { 1 } else { -1 });
            v = up;
        }
        c
    };
    Ok((0..graph.edge_count())
        .filter(|e| !tree.contains(e))
        .map(|e| {
            let edge = graph.edge(e);
            // e: tail -> head, then head -> root -> tail
            let mut c = EdgeChain::from_terms([(e, 1)]);
            c = c.plus(&to_root(edge.head)).plus(&to_root(edge.tail).scaled(-1));
            c
        })
        .collect())
}
