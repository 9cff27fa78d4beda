//! Hypergraphs with edge-dependent vertex weights.
//!
//! A [`Hypergraph`] is `H = (V, E, ω, γ)`: every hyperedge `e` carries a
//! weight `ω(e) > 0` and, for each member `v`, its own vertex weight
//! `γ_e(v) > 0`. Vertices are identified by strings and mapped to dense
//! indices in declaration order.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::io::{EdgeSpec, HypergraphSpec};
use crate::linalg::Matrix;

/// Largest vertex count accepted by the dense walk and spectral routines.
pub const MAX_DENSE_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    weight: f64,
    /// `(vertex index, γ_e(v))` in declaration order.
    members: Vec<(usize, f64)>,
}

impl Hyperedge {
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn members(&self) -> &[(usize, f64)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.iter().any(|&(u, _)| u == v)
    }

    /// `γ_e(v)`, zero for non-members.
    pub fn gamma(&self, v: usize) -> f64 {
        self.members
            .iter()
            .find(|&&(u, _)| u == v)
            .map_or(0.0, |&(_, g)| g)
    }

    /// `δ(e) = Σ_{v ∈ e} γ_e(v)`.
    pub fn delta(&self) -> f64 {
        self.members.iter().map(|&(_, g)| g).sum()
    }
}

/// Whether construction insists on a connected clique skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Require,
    /// Every vertex must still lie in some edge. Only walks with restart
    /// are meaningful on such hypergraphs.
    AllowDisconnected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Hyperedge>,
    incident: Vec<Vec<usize>>,
    connected: bool,
}

/// Vertex degrees `d(v)` and hyperedge degrees `δ(e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Degrees {
    pub vertex: Vec<f64>,
    pub edge: Vec<f64>,
}

/// The matrices `R`, `W`, `D_V`, `D_E`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrices {
    /// `|E| × |V|`, `R(e,v) = γ_e(v)`.
    pub r: Matrix,
    /// `|V| × |E|`, `W(v,e) = ω(e)` when `v ∈ e`.
    pub w: Matrix,
    pub d_v: Matrix,
    pub d_e: Matrix,
}

fn check_weight(what: impl FnOnce() -> String, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveWeight {
            what: what(),
            value,
        })
    }
}

/// Build and validate a connected hypergraph from its parsed description.
pub fn build_hypergraph(spec: &HypergraphSpec) -> Result<Hypergraph> {
    Hypergraph::from_spec(spec, Connectivity::Require)
}

impl Hypergraph {
    pub fn from_spec(spec: &HypergraphSpec, connectivity: Connectivity) -> Result<Self> {
        if spec.vertices.is_empty() {
            return Err(Error::InvalidParameter(
                "hypergraph has no vertices".to_string(),
            ));
        }
        let mut index = HashMap::with_capacity(spec.vertices.len());
        for (i, name) in spec.vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut edges = Vec::with_capacity(spec.edges.len());
        for (e, edge) in spec.edges.iter().enumerate() {
            if edge.members.is_empty() {
                return Err(Error::EmptyEdge(e));
            }
            check_weight(|| format!("weight of edge {e}"), edge.weight)?;
            let mut members: Vec<(usize, f64)> = Vec::with_capacity(edge.members.len());
            for (name, gamma) in &edge.members {
                let v = *index.get(name).ok_or_else(|| Error::UnknownMember {
                    edge: e,
                    vertex: name.clone(),
                })?;
                if members.iter().any(|&(u, _)| u == v) {
                    return Err(Error::DuplicateMember {
                        edge: e,
                        vertex: name.clone(),
                    });
                }
                check_weight(|| format!("vertex weight of `{name}` in edge {e}"), *gamma)?;
                members.push((v, *gamma));
            }
            edges.push(Hyperedge {
                weight: edge.weight,
                members,
            });
        }
        Self::assemble(spec.vertices.clone(), index, edges, connectivity)
    }

    fn assemble(
        vertices: Vec<String>,
        index: HashMap<String, usize>,
        edges: Vec<Hyperedge>,
        connectivity: Connectivity,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut incident = vec![Vec::new(); n];
        for (e, edge) in edges.iter().enumerate() {
            for &(v, _) in &edge.members {
                incident[v].push(e);
            }
        }
        if let Some(v) = incident.iter().position(Vec::is_empty) {
            return Err(Error::DisconnectedHypergraph(vertices[v].clone()));
        }
        let unreachable = first_unreachable(n, &edges);
        if let (Some(v), Connectivity::Require) = (unreachable, connectivity) {
            return Err(Error::DisconnectedHypergraph(vertices[v].clone()));
        }
        Ok(Hypergraph {
            vertices,
            index,
            edges,
            incident,
            connected: unreachable.is_none(),
        })
    }

    /// Same vertices and edge weights, with vertex weights replaced edge by edge.
    fn with_gammas<F>(&self, mut f: F) -> Self
    where
        F: FnMut(usize, &Hyperedge) -> Vec<f64>,
    {
        let mut out = self.clone();
        for (e, edge) in out.edges.iter_mut().enumerate() {
            let gammas = f(e, &self.edges[e]);
            for ((_, g), new) in edge.members.iter_mut().zip(gammas) {
                *g = new;
            }
        }
        out
    }

    pub fn to_spec(&self) -> HypergraphSpec {
        HypergraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    weight: e.weight,
                    members: e
                        .members
                        .iter()
                        .map(|&(v, g)| (self.vertices[v].clone(), g))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Hyperedge {
        &self.edges[e]
    }

    /// `E(v)`: indices of edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn ensure_connected(&self) -> Result<()> {
        match first_unreachable(self.n_vertices(), &self.edges) {
            None => Ok(()),
            Some(v) => Err(Error::DisconnectedHypergraph(self.vertices[v].clone())),
        }
    }

    pub fn ensure_dense_size(&self) -> Result<()> {
        if self.n_vertices() > MAX_DENSE_VERTICES {
            return Err(Error::SizeLimit {
                what: "dense walk matrices",
                size: self.n_vertices(),
                limit: MAX_DENSE_VERTICES,
            });
        }
        Ok(())
    }

    /// `d(v) = Σ_{e∈E(v)} ω(e)`.
    pub fn vertex_degrees(&self) -> Vec<f64> {
        self.incident
            .iter()
            .map(|es| es.iter().map(|&e| self.edges[e].weight).sum())
            .collect()
    }

    /// `δ(e) = Σ_{v∈e} γ_e(v)`.
    pub fn edge_degrees(&self) -> Vec<f64> {
        self.edges.iter().map(Hyperedge::delta).collect()
    }

    pub fn degrees(&self) -> Degrees {
        Degrees {
            vertex: self.vertex_degrees(),
            edge: self.edge_degrees(),
        }
    }

    pub fn incidence_matrices(&self) -> IncidenceMatrices {
        let (n, m) = (self.n_vertices(), self.n_edges());
        let mut r = Matrix::zeros(m, n);
        let mut w = Matrix::zeros(n, m);
        for (e, edge) in self.edges.iter().enumerate() {
            for &(v, g) in &edge.members {
                r[(e, v)] = g;
                w[(v, e)] = edge.weight;
            }
        }
        let degrees = self.degrees();
        IncidenceMatrices {
            r,
            w,
            d_v: Matrix::from_diagonal(&degrees.vertex),
            d_e: Matrix::from_diagonal(&degrees.edge),
        }
    }

    /// Unweighted clique skeleton: `w(u,v) = 1` iff some edge holds both.
    ///
    /// With `self_loops`, every vertex gets a loop (the lazy-walk
    /// convention); without, the diagonal is zero.
    pub fn clique_graph(&self, self_loops: bool) -> WeightedGraph {
        let n = self.n_vertices();
        let mut adj = Matrix::zeros(n, n);
        for edge in &self.edges {
            for &(u, _) in &edge.members {
                for &(v, _) in &edge.members {
                    if u != v || self_loops {
                        adj[(u, v)] = 1.0;
                    }
                }
            }
        }
        WeightedGraph::new(self.vertices.clone(), adj).expect("clique skeleton is symmetric")
    }

    /// `γ(v)` when every vertex has the same weight in all its incident
    /// edges (relative tolerance `tol`); `None` otherwise.
    pub fn edge_independent_weights(&self, tol: f64) -> Option<Vec<f64>> {
        self.check_edge_independent(tol).ok()
    }

    pub(crate) fn check_edge_independent(&self, tol: f64) -> Result<Vec<f64>> {
        let mut gammas = Vec::with_capacity(self.n_vertices());
        for v in 0..self.n_vertices() {
            let mut values = self.incident[v].iter().map(|&e| self.edges[e].gamma(v));
            let first = values.next().expect("every vertex has an incident edge");
            for g in values {
                if (g - first).abs() > tol * first.abs().max(g.abs()) {
                    return Err(Error::NotEdgeIndependent(self.vertices[v].clone()));
                }
            }
            gammas.push(first);
        }
        Ok(gammas)
    }

    pub fn has_trivial_weights(&self) -> bool {
        self.check_trivial_weights().is_ok()
    }

    pub(crate) fn check_trivial_weights(&self) -> Result<()> {
        for (e, edge) in self.edges.iter().enumerate() {
            if let Some(&(v, _)) = edge.members.iter().find(|&&(_, g)| g != 1.0) {
                return Err(Error::NotTrivialWeights {
                    edge: e,
                    vertex: self.vertices[v].clone(),
                });
            }
        }
        Ok(())
    }

    /// Multiply every vertex weight of edge `e` by `factors[e]`.
    pub fn scale_edge_vertex_weights(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.n_edges() {
            return Err(Error::DimensionMismatch(format!(
                "{} scale factors for {} edges",
                factors.len(),
                self.n_edges()
            )));
        }
        for (e, &c) in factors.iter().enumerate() {
            check_weight(|| format!("scale factor of edge {e}"), c)?;
        }
        Ok(self.with_gammas(|e, edge| edge.members.iter().map(|&(_, g)| g * factors[e]).collect()))
    }

    /// Set every `γ_e(v)` to `gamma`.
    pub fn with_all_gammas(&self, gamma: f64) -> Self {
        self.with_gammas(|_, edge| vec![gamma; edge.len()])
    }

    /// Rescale each edge's vertex weights so that `δ(e) = 1`.
    pub fn normalize_edge_degrees(&self) -> Self {
        self.with_gammas(|_, edge| {
            let delta = edge.delta();
            edge.members.iter().map(|&(_, g)| g / delta).collect()
        })
    }

    /// `max_v (max_{e∋v} γ_e(v) / min_{e∋v} γ_e(v))`, over incident edges only.
    pub fn gamma_spread(&self) -> f64 {
        (0..self.n_vertices())
            .map(|v| {
                let (lo, hi) = self.incident[v]
                    .iter()
                    .map(|&e| self.edges[e].gamma(v))
                    .fold((f64::INFINITY, 0.0f64), |(lo, hi), g| (lo.min(g), hi.max(g)));
                hi / lo
            })
            .fold(1.0, f64::max)
    }
}

/// Union-find over the clique skeleton; returns a vertex not connected to
/// vertex 0, if any.
fn first_unreachable(n: usize, edges: &[Hyperedge]) -> Option<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for edge in edges {
        let Some(&(first, _)) = edge.members.first() else {
            continue;
        };
        for &(v, _) in &edge.members[1..] {
            let (a, b) = (find(&mut parent, first), find(&mut parent, v));
            if a != b {
                parent[b] = a;
            }
        }
    }
    if n == 0 {
        return None;
    }
    let root = find(&mut parent, 0);
    (1..n).find(|&v| find(&mut parent, v) != root)
}
