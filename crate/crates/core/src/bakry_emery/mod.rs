//! Bakry-Émery curvature from the Γ-calculus of the graph Laplacian.
//!
//! `K(x, N)` is the largest `K` for which
//! `Γ₂(f)(x) ≥ (1/N)(Δf(x))² + K Γ(f)(x)` holds for every `f`, i.e. for
//! which `Γ₂(x) − (1/N) δδᵀ − K Γ(x)` is positive semidefinite.

mod forms;

pub use forms::{gamma2_form, gamma_form, QuadraticForm};

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BakryEmeryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not regular")]
    NotRegular,
    #[error("dimension must be positive, got {0}")]
    Dimension(String),
}

/// The dimension parameter `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dimension {
    Finite(f64),
    Infinite,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Dimension::Infinite),
            other => match other.parse::<f64>() {
                Ok(n) if n > 0.0 && n.is_finite() => Ok(Dimension::Finite(n)),
                _ => Err(format!("invalid dimension `{other}`; expected a positive number or `inf`")),
            },
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(n) => s.serialize_f64(*n),
            Dimension::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub vertex: VertexId,
    pub dimension: Dimension,
    /// Lower end of the final bisection bracket; the form is PSD there.
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureOptions {
    pub tolerance: f64,
}

impl Default for CurvatureOptions {
    fn default() -> Self {
        CurvatureOptions { tolerance: 1e-9 }
    }
}

/// Relative slack of the eigenvalue PSD test.
const PSD_EPS: f64 = 1e-12;

/// `Γ₂(x)`, `Γ(x)` and `δδᵀ` over the common index `B₂(x)`, converted to
/// floating point once.
#[derive(Debug, Clone)]
pub struct CdForms {
    pub vertex: VertexId,
    pub index: Vec<VertexId>,
    gamma2: DMatrix<f64>,
    gamma: DMatrix<f64>,
    delta: DMatrix<f64>,
}

impl CdForms {
    pub fn new(g: &Graph, x: VertexId) -> Result<Self, BakryEmeryError> {
        g.require_vertex(x)?;
        let gamma2 = gamma2_form(g, x);
        let gamma = gamma_form(g, x).padded(&gamma2.index);
        let row: Vec<f64> = forms::laplacian_row(g, x, &gamma2.index).iter().map(to_f64).collect();
        let n = row.len();
        Ok(CdForms {
            vertex: x,
            gamma2: gamma2.to_f64(),
            gamma: gamma.to_f64(),
            delta: DMatrix::from_fn(n, n, |i, j| row[i] * row[j]),
            index: gamma2.index,
        })
    }

    /// `M(K) = Γ₂ − (1/N) δδᵀ − K Γ`.
    pub fn matrix(&self, k: f64, dimension: Dimension) -> DMatrix<f64> {
        let mut m = &self.gamma2 - &self.gamma * k;
        if let Dimension::Finite(n) = dimension {
            m -= &self.delta / n;
        }
        m
    }

    /// Smallest eigenvalue of `M(K)` and the spectral norm of `M(K)`.
    pub fn spectrum(&self, k: f64, dimension: Dimension) -> (f64, f64) {
        let eig = SymmetricEigen::new(self.matrix(k, dimension)).eigenvalues;
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        let norm = eig.iter().map(|e| e.abs()).fold(0.0, f64::max);
        (min, norm)
    }

    pub fn is_psd(&self, k: f64, dimension: Dimension) -> bool {
        let (min, norm) = self.spectrum(k, dimension);
        min >= -PSD_EPS * norm.max(1.0)
    }

    /// Bisection for the largest `K` with `M(K)` PSD.
    pub fn curvature(&self, g: &Graph, dimension: Dimension, options: CurvatureOptions) -> CurvatureSample {
        let d_max = g.ball_by_layers(self.vertex, 1).iter().map(|&v| g.degree(v)).max().unwrap_or(0) as f64;
        let mut lo = -3.0 * d_max.max(1.0);
        let mut hi = d_max + 3.0;
        while !self.is_psd(lo, dimension) {
            log::debug!("widening lower bracket end {lo} at vertex {}", self.vertex);
            lo *= 2.0;
        }
        while self.is_psd(hi, dimension) {
            log::debug!("widening upper bracket end {hi} at vertex {}", self.vertex);
            hi = 2.0 * hi + 1.0;
        }
        while hi - lo > options.tolerance {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.is_psd(mid, dimension) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        CurvatureSample { vertex: self.vertex, dimension, value: lo, tolerance: options.tolerance }
    }
}

/// `K(x, N)` with the default tolerance `1e-9`.
pub fn curvature(g: &Graph, x: VertexId, dimension: Dimension) -> Result<CurvatureSample, BakryEmeryError> {
    curvature_with(g, x, dimension, CurvatureOptions::default())
}

pub fn curvature_with(
    g: &Graph,
    x: VertexId,
    dimension: Dimension,
    options: CurvatureOptions,
) -> Result<CurvatureSample, BakryEmeryError> {
    if let Dimension::Finite(n) = dimension {
        if n.is_nan() || n <= 0.0 {
            return Err(BakryEmeryError::Dimension(n.to_string()));
        }
    }
    Ok(CdForms::new(g, x)?.curvature(g, dimension, options))
}

/// `K_∞(x) ≤ 2 + #Δ(x)/d` on a `d`-regular graph.
pub fn be_upper_bound(g: &Graph, x: VertexId) -> Result<Rational, BakryEmeryError> {
    g.require_vertex(x)?;
    let d = g.regular_degree().ok_or(BakryEmeryError::NotRegular)? as i64;
    Ok(Rational::from_integer(2) + Rational::new(g.triangles_at_vertex(x) as i64, d))
}
