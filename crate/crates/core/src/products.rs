//! Cartesian, tensor and strong products, and checks of how curvature and
//! flatness behave under them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::bakry_emery::{self, BakryEmeryError, Dimension};
use crate::flatness::{
    search_flatness_with, verify_certificate, AssignmentMatrix, FlatnessError, FlatnessFlavor, FlatnessVerdict,
    SearchOptions, Violation,
};
use crate::graph::{Graph, GraphError, VertexId};
use crate::rational::Rational;
use crate::transport::{kappa_lly, kappa_p, TransportError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProductKind {
    Cartesian,
    Tensor,
    Strong,
}

impl ProductKind {
    pub const ALL: [ProductKind; 3] = [ProductKind::Cartesian, ProductKind::Tensor, ProductKind::Strong];

    fn includes(self, class: EdgeClass) -> bool {
        match self {
            ProductKind::Cartesian => class != EdgeClass::Diagonal,
            ProductKind::Tensor => class == EdgeClass::Diagonal,
            ProductKind::Strong => true,
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Tensor => "tensor",
            ProductKind::Strong => "strong",
        })
    }
}

impl FromStr for ProductKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cartesian" | "box" => Ok(ProductKind::Cartesian),
            "tensor" | "direct" | "categorical" => Ok(ProductKind::Tensor),
            "strong" => Ok(ProductKind::Strong),
            other => Err(format!("unknown product kind `{other}`; expected cartesian, tensor or strong")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    Horizontal,
    Vertical,
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the {kind} product is disconnected: vertex {unreachable:?} is unreachable from (0, 0)")]
    Disconnected { kind: ProductKind, unreachable: (VertexId, VertexId) },
    #[error("factors must be regular")]
    NotRegular,
    #[error(transparent)]
    Flatness(#[from] FlatnessError),
    #[error("factor {factor} is not {flavor}-Ricci flat at vertex {vertex}")]
    FactorNotFlat { factor: char, vertex: VertexId, flavor: FlatnessFlavor },
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error(transparent)]
    BakryEmery(#[from] BakryEmeryError),
}

/// A product graph together with its coordinate map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub factor_dims: (usize, usize),
    pub kind: ProductKind,
    coords: Vec<(VertexId, VertexId)>,
    ids: Vec<Option<VertexId>>,
}

impl ProductGraph {
    pub fn coords(&self, v: VertexId) -> (VertexId, VertexId) {
        self.coords[v]
    }

    /// Product vertex `(a, b)`, if present (always, unless the product was
    /// restricted to one component).
    pub fn vertex(&self, a: VertexId, b: VertexId) -> Option<VertexId> {
        self.ids.get(a * self.factor_dims.1 + b).copied().flatten()
    }

    pub fn is_full(&self) -> bool {
        self.graph.vertex_count() == self.factor_dims.0 * self.factor_dims.1
    }
}

fn product_edges(g: &Graph, h: &Graph, kind: ProductKind) -> Vec<(VertexId, VertexId)> {
    let nh = h.vertex_count();
    let id = |a: VertexId, b: VertexId| a * nh + b;
    let mut edges = Vec::new();
    if kind.includes(EdgeClass::Horizontal) {
        for (a1, a2) in g.edges() {
            edges.extend(h.vertices().map(|b| (id(a1, b), id(a2, b))));
        }
    }
    if kind.includes(EdgeClass::Vertical) {
        for (b1, b2) in h.edges() {
            edges.extend(g.vertices().map(|a| (id(a, b1), id(a, b2))));
        }
    }
    if kind.includes(EdgeClass::Diagonal) {
        for (a1, a2) in g.edges() {
            for (b1, b2) in h.edges() {
                edges.push((id(a1, b1), id(a2, b2)));
                edges.push((id(a1, b2), id(a2, b1)));
            }
        }
    }
    edges
}

fn coordinate_labels(g: &Graph, h: &Graph, coords: &[(VertexId, VertexId)]) -> Vec<String> {
    coords.iter().map(|&(a, b)| format!("(g:{},h:{})", g.label(a), h.label(b))).collect()
}

/// Vertex `(a, b)` gets id `a·|V_H| + b`.
pub fn product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductGraph, ProductError> {
    let nh = h.vertex_count();
    let n = g.vertex_count() * nh;
    let graph = match Graph::new(n, &product_edges(g, h, kind)) {
        Ok(graph) => graph,
        Err(GraphError::Disconnected(v)) => {
            return Err(ProductError::Disconnected { kind, unreachable: (v / nh, v % nh) })
        }
        Err(e) => return Err(e.into()),
    };
    let coords: Vec<_> = (0..n).map(|v| (v / nh, v % nh)).collect();
    let graph = graph.with_labels(coordinate_labels(g, h, &coords))?;
    Ok(ProductGraph { graph, factor_dims: (g.vertex_count(), nh), kind, coords, ids: (0..n).map(Some).collect() })
}

/// The connected component of `root` in the product, for products that
/// fall apart (tensor products of bipartite graphs).
pub fn product_component(
    g: &Graph,
    h: &Graph,
    kind: ProductKind,
    root: (VertexId, VertexId),
) -> Result<ProductGraph, ProductError> {
    let nh = h.vertex_count();
    let n = g.vertex_count() * nh;
    g.require_vertex(root.0)?;
    h.require_vertex(root.1)?;
    let (graph, keep) = Graph::component_of(n, &product_edges(g, h, kind), root.0 * nh + root.1)?;
    let coords: Vec<_> = keep.iter().map(|&v| (v / nh, v % nh)).collect();
    let mut ids = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        ids[v] = Some(i);
    }
    let graph = graph.with_labels(coordinate_labels(g, h, &coords))?;
    Ok(ProductGraph { graph, factor_dims: (g.vertex_count(), nh), kind, coords, ids })
}

pub fn classify_edge(p: &ProductGraph, u: VertexId, v: VertexId) -> Result<EdgeClass, GraphError> {
    p.graph.require_edge(u, v)?;
    let ((a1, b1), (a2, b2)) = (p.coords(u), p.coords(v));
    Ok(if b1 == b2 {
        EdgeClass::Horizontal
    } else if a1 == a2 {
        EdgeClass::Vertical
    } else {
        EdgeClass::Diagonal
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartesianBeRow {
    pub x: VertexId,
    pub y: VertexId,
    pub product_value: f64,
    pub g_value: f64,
    pub h_value: f64,
    pub agrees: bool,
}

/// Compares `K_∞` of `G × H` at `(x, y)` with `min(K_∞^G(x), K_∞^H(y))`.
pub fn check_cartesian_be(
    g: &Graph,
    h: &Graph,
    samples: &[(VertexId, VertexId)],
) -> Result<Vec<CartesianBeRow>, ProductError> {
    if g.regular_degree().is_none() || h.regular_degree().is_none() {
        return Err(ProductError::NotRegular);
    }
    let p = product(g, h, ProductKind::Cartesian)?;
    samples
        .iter()
        .map(|&(x, y)| {
            let v = p.vertex(x, y).ok_or(GraphError::OutOfRange { id: x, n: g.vertex_count() })?;
            let product_value = bakry_emery::curvature(&p.graph, v, Dimension::Infinite)?.value;
            let g_value = bakry_emery::curvature(g, x, Dimension::Infinite)?.value;
            let h_value = bakry_emery::curvature(h, y, Dimension::Infinite)?.value;
            let agrees = (product_value - g_value.min(h_value)).abs() <= 1e-6;
            Ok(CartesianBeRow { x, y, product_value, g_value, h_value, agrees })
        })
        .collect()
}

/// One edge of a strong product with its curvatures; `bound0`/`bound_lly`
/// are the factor-based lower bounds (absent on diagonal edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongEdgeRow {
    pub u: VertexId,
    pub v: VertexId,
    pub class: EdgeClass,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub kappa0: Rational,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub kappa_lly: Rational,
    #[serde(skip)]
    pub bound0: Option<Rational>,
    #[serde(skip)]
    pub bound_lly: Option<Rational>,
}

impl StrongEdgeRow {
    /// Whether both lower bounds hold; `None` for diagonal edges.
    pub fn holds(&self) -> Option<bool> {
        Some(self.kappa0 >= self.bound0? && self.kappa_lly >= self.bound_lly?)
    }
}

/// Evaluates the strong-product lower bounds on the given product edges
/// (all edges when `edges` is `None`). Diagonal edges are reported with
/// their curvatures only.
pub fn check_strong_bounds(
    g: &Graph,
    h: &Graph,
    edges: Option<&[(VertexId, VertexId)]>,
) -> Result<Vec<StrongEdgeRow>, ProductError> {
    let dg = g.regular_degree().ok_or(ProductError::NotRegular)? as i64;
    let dh = h.regular_degree().ok_or(ProductError::NotRegular)? as i64;
    let p = product(g, h, ProductKind::Strong)?;
    let d = dg + dh + dg * dh;
    let factor_g = Rational::new(dg * (dh + 1), d);
    let factor_h = Rational::new(dh * (dg + 1), d);
    let mut cache: HashMap<(char, VertexId, VertexId), (Rational, Rational)> = HashMap::new();
    let mut factor_kappas = |which: char, f: &Graph, a: VertexId, b: VertexId| -> Result<(Rational, Rational), ProductError> {
        let key = (which, a.min(b), a.max(b));
        if let Some(k) = cache.get(&key) {
            return Ok(*k);
        }
        let k = (kappa_p(f, a, b, Rational::zero())?, kappa_lly(f, a, b)?);
        cache.insert(key, k);
        Ok(k)
    };
    let all: Vec<(VertexId, VertexId)>;
    let edges = match edges {
        Some(e) => e,
        None => {
            all = p.graph.edges().collect();
            &all
        }
    };
    let mut rows = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let class = classify_edge(&p, u, v)?;
        let ((a1, b1), (a2, b2)) = (p.coords(u), p.coords(v));
        let (bound0, bound_lly) = match class {
            EdgeClass::Horizontal => {
                let (k0, kl) = factor_kappas('g', g, a1, a2)?;
                (Some(factor_g * k0), Some(factor_g * kl))
            }
            EdgeClass::Vertical => {
                let (k0, kl) = factor_kappas('h', h, b1, b2)?;
                (Some(factor_h * k0), Some(factor_h * kl))
            }
            EdgeClass::Diagonal => (None, None),
        };
        rows.push(StrongEdgeRow {
            u,
            v,
            class,
            kappa0: kappa_p(&p.graph, u, v, Rational::zero())?,
            kappa_lly: kappa_lly(&p.graph, u, v)?,
            bound0,
            bound_lly,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessPreservation {
    pub product: ProductGraph,
    /// Product vertex corresponding to `(x, y)`.
    pub vertex: VertexId,
    /// Certificate assembled from the factor certificates.
    pub constructed: AssignmentMatrix,
    pub violations: Vec<Violation>,
    /// Independent search at the product vertex, when its degree is within
    /// the search cap.
    pub search: Option<FlatnessVerdict>,
}

impl FlatnessPreservation {
    pub fn constructed_verifies(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds the product certificate from factor certificates:
/// `η'_i(u,v) = (η_i(u), v)`, `η''_k(u,v) = (u, η_k(v))` and
/// `η_{jl}(u,v) = (η_j(u), η_l(v))`, one map per neighbor of `(x, y)`.
pub fn product_certificate(
    p: &ProductGraph,
    a_g: &AssignmentMatrix,
    a_h: &AssignmentMatrix,
) -> Result<AssignmentMatrix, ProductError> {
    let (x, y) = (a_g.center, a_h.center);
    let center = p.vertex(x, y).ok_or(GraphError::OutOfRange { id: x, n: p.factor_dims.0 })?;
    let neighbors = p.graph.neighbors(center).to_vec();
    let index_g = |u: VertexId| a_g.neighbors.iter().position(|&w| w == u);
    let index_h = |u: VertexId| a_h.neighbors.iter().position(|&w| w == u);
    let map = |m: VertexId, target: VertexId| -> Option<VertexId> {
        let (a, b) = p.coords(m);
        let (u, v) = p.coords(target);
        let image = if b == y {
            (a_g.eta(index_g(a)?, u)?, v)
        } else if a == x {
            (u, a_h.eta(index_h(b)?, v)?)
        } else {
            (a_g.eta(index_g(a)?, u)?, a_h.eta(index_h(b)?, v)?)
        };
        p.vertex(image.0, image.1)
    };
    let entries = neighbors
        .iter()
        .map(|&m| {
            neighbors
                .iter()
                .map(|&t| map(m, t).ok_or(GraphError::NotAnEdge(m, t)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AssignmentMatrix { center, neighbors, entries })
}

/// Certifies the factors at `x` and `y`, assembles the product certificate
/// and verifies it; also searches the product vertex directly when its
/// degree is within `options.cap`. Disconnected products are restricted to
/// the component of `(x, y)`.
pub fn check_flatness_preservation(
    g: &Graph,
    h: &Graph,
    kind: ProductKind,
    x: VertexId,
    y: VertexId,
    flavor: FlatnessFlavor,
    options: SearchOptions,
) -> Result<FlatnessPreservation, ProductError> {
    let certify = |f: &Graph, v: VertexId, factor: char| -> Result<AssignmentMatrix, ProductError> {
        let verdict = search_flatness_with(f, v, flavor, options)?;
        verdict.certificate().cloned().ok_or(ProductError::FactorNotFlat { factor, vertex: v, flavor })
    };
    let a_g = certify(g, x, 'G')?;
    let a_h = certify(h, y, 'H')?;
    let p = match product(g, h, kind) {
        Ok(p) => p,
        Err(ProductError::Disconnected { .. }) => product_component(g, h, kind, (x, y))?,
        Err(e) => return Err(e),
    };
    let constructed = product_certificate(&p, &a_g, &a_h)?;
    let violations = verify_certificate(&p.graph, &constructed, flavor);
    let vertex = constructed.center;
    let search = if p.graph.degree(vertex) <= options.cap {
        Some(search_flatness_with(&p.graph, vertex, flavor, options)?)
    } else {
        None
    };
    Ok(FlatnessPreservation { product: p, vertex, constructed, violations, search })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;

    #[test]
    fn small_products() {
        let k2 = atlas::complete(2).unwrap();
        let k3 = atlas::complete(3).unwrap();
        let strong = product(&k2, &k2, ProductKind::Strong).unwrap();
        assert_eq!(strong.graph.edge_count(), 6);
        let square = product(&k2, &k2, ProductKind::Cartesian).unwrap();
        assert_eq!(square.graph.regular_degree(), Some(2));
        assert_eq!(square.graph.edge_count(), 4);
        assert!(matches!(product(&k2, &k2, ProductKind::Tensor), Err(ProductError::Disconnected { .. })));
        let rook = product(&k3, &k3, ProductKind::Cartesian).unwrap();
        assert_eq!((rook.graph.vertex_count(), rook.graph.regular_degree()), (9, Some(4)));
        let k6 = product(&k3, &k2, ProductKind::Strong).unwrap();
        assert_eq!(k6.graph.edge_count(), 15);
        assert_eq!(k6.graph.label(4), "(g:2,h:0)");
    }

    #[test]
    fn classification_and_counts() {
        let g = atlas::cycle(4).unwrap();
        let h = atlas::complete(3).unwrap();
        let p = product(&g, &h, ProductKind::Strong).unwrap();
        let mut counts = HashMap::new();
        for (u, v) in p.graph.edges() {
            *counts.entry(classify_edge(&p, u, v).unwrap()).or_insert(0) += 1;
        }
        assert_eq!(counts[&EdgeClass::Horizontal], 4 * 3);
        assert_eq!(counts[&EdgeClass::Vertical], 4 * 3);
        assert_eq!(counts[&EdgeClass::Diagonal], 2 * 4 * 3);
        assert_eq!(p.graph.regular_degree(), Some(2 + 2 + 4));
    }

    #[test]
    fn tensor_component() {
        let c4 = atlas::cycle(4).unwrap();
        let p = product_component(&c4, &c4, ProductKind::Tensor, (0, 0)).unwrap();
        assert_eq!(p.graph.vertex_count(), 8);
        assert!(!p.is_full());
        assert_eq!(p.vertex(0, 1), None);
        assert_eq!(p.coords(p.vertex(1, 1).unwrap()), (1, 1));
    }

    #[test]
    fn strong_bounds_on_k4() {
        let k2 = atlas::complete(2).unwrap();
        let rows = check_strong_bounds(&k2, &k2, None).unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert_eq!(row.kappa_lly, Rational::new(4, 3));
            if row.class != EdgeClass::Diagonal {
                assert_eq!(row.holds(), Some(true));
            }
        }
    }

    #[test]
    fn cartesian_square() {
        let k2 = atlas::complete(2).unwrap();
        let rows = check_cartesian_be(&k2, &k2, &[(0, 0), (1, 0)]).unwrap();
        assert!(rows.iter().all(|r| r.agrees && (r.product_value - 2.0).abs() < 1e-6));
    }

    #[test]
    fn preservation_on_squares() {
        let c4 = atlas::cycle(4).unwrap();
        for kind in ProductKind::ALL {
            for flavor in FlatnessFlavor::ALL {
                let r = check_flatness_preservation(&c4, &c4, kind, 0, 0, flavor, SearchOptions::default()).unwrap();
                assert!(r.constructed_verifies(), "{kind} {flavor}: {:?}", r.violations);
                assert!(r.search.unwrap().is_flat());
            }
        }
    }
}
