//! Discrete curvature notions on finite graphs: Ollivier and
//! Lin-Lu-Yau curvature via exact optimal transport, Bakry-Émery
//! curvature, and Ricci-flatness certificates.

pub mod atlas;
pub mod bakry_emery;
pub mod flatness;
pub mod graph;
pub mod products;
pub mod rational;
pub mod report;
pub mod transport;
pub mod verify;

pub use graph::{Graph, GraphError, VertexId};
pub use rational::Rational;
