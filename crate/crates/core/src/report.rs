//! Curvature report rows and their JSON/CSV renderings.

use serde::Serialize;

use crate::bakry_emery::{self, BakryEmeryError, CurvatureOptions, Dimension};
use crate::graph::{Graph, VertexId};
use crate::rational::{decimal, decimal_f64, fraction, Rational};
use crate::transport::{kappa_lly, kappa_p, TransportError};

/// Decimal places used for floating-point and rational renderings.
pub const PLACES: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeNotion {
    /// `κ_p` at the given idleness.
    Ollivier(Rational),
    LinLuYau,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRow {
    pub u: VertexId,
    pub v: VertexId,
    pub u_label: String,
    pub v_label: String,
    pub notion: String,
    /// Idleness as a fraction; empty for Lin-Lu-Yau rows.
    pub p: String,
    pub kappa: String,
    pub kappa_decimal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexRow {
    pub vertex: VertexId,
    pub label: String,
    pub dimension: String,
    pub value: String,
    pub tolerance: f64,
    /// Triangle bound `2 + #Δ(x)/d`, for regular graphs.
    pub upper_bound: String,
}

pub fn edge_row(g: &Graph, u: VertexId, v: VertexId, notion: EdgeNotion) -> Result<EdgeRow, TransportError> {
    let (name, p, kappa) = match notion {
        EdgeNotion::Ollivier(p) => ("ollivier", fraction(&p), kappa_p(g, u, v, p)?),
        EdgeNotion::LinLuYau => ("lly", String::new(), kappa_lly(g, u, v)?),
    };
    Ok(EdgeRow {
        u,
        v,
        u_label: g.label(u),
        v_label: g.label(v),
        notion: name.to_string(),
        p,
        kappa: fraction(&kappa),
        kappa_decimal: decimal(&kappa, PLACES),
    })
}

pub fn vertex_row(
    g: &Graph,
    x: VertexId,
    dimension: Dimension,
    options: CurvatureOptions,
) -> Result<VertexRow, BakryEmeryError> {
    let sample = bakry_emery::curvature_with(g, x, dimension, options)?;
    let upper_bound = match bakry_emery::be_upper_bound(g, x) {
        Ok(b) => fraction(&b),
        Err(BakryEmeryError::NotRegular) => String::new(),
        Err(e) => return Err(e),
    };
    Ok(VertexRow {
        vertex: x,
        label: g.label(x),
        dimension: dimension.to_string(),
        value: decimal_f64(sample.value, PLACES as usize),
        tolerance: sample.tolerance,
        upper_bound,
    })
}

pub fn to_json<T: Serialize>(rows: &T) -> String {
    let mut text = serde_json::to_string_pretty(rows).expect("report rows serialize");
    text.push('\n');
    text
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
