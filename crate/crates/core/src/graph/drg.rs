use std::fmt;

use serde::Serialize;

use super::{Direction, Graph, VertexId};

/// Intersection array `{b_0, ..., b_{D-1}; c_1, ..., c_D}` of a
/// distance-regular graph of diameter `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    /// `c_2`, when the diameter is at least 2.
    pub fn c2(&self) -> Option<usize> {
        self.c.get(1).copied()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parameter {
    B,
    C,
}

/// Why a graph fails to be distance-regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NotDistanceRegular {
    Irregular { vertex: VertexId, degree: usize, expected: usize },
    DiameterVaries { base: VertexId, eccentricity: usize, expected: usize },
    Parameter {
        base: VertexId,
        vertex: VertexId,
        distance: usize,
        parameter: Parameter,
        expected: usize,
        found: usize,
    },
}

impl fmt::Display for NotDistanceRegular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Irregular { vertex, degree, expected } => {
                write!(f, "vertex {vertex} has degree {degree}, expected {expected}")
            }
            Self::DiameterVaries { base, eccentricity, expected } => {
                write!(f, "vertex {base} has eccentricity {eccentricity}, expected {expected}")
            }
            Self::Parameter { base, vertex, distance, parameter, expected, found } => write!(
                f,
                "{parameter:?}_{distance} from base {base} at vertex {vertex} is {found}, expected {expected}"
            ),
        }
    }
}

/// Computes the intersection array by checking every base vertex and every
/// vertex against the values seen at base vertex 0.
pub fn intersection_array(g: &Graph) -> Result<IntersectionArray, NotDistanceRegular> {
    let d = g.degree(0);
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != d) {
        return Err(NotDistanceRegular::Irregular { vertex: v, degree: g.degree(v), expected: d });
    }
    let mut reference: Option<IntersectionArray> = None;
    for base in g.vertices() {
        let dist = g.distances_from(base);
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let mut b: Vec<Option<usize>> = vec![None; diameter];
        let mut c: Vec<Option<usize>> = vec![None; diameter];
        if let Some(r) = &reference {
            if r.diameter() != diameter {
                return Err(NotDistanceRegular::DiameterVaries {
                    base,
                    eccentricity: diameter,
                    expected: r.diameter(),
                });
            }
        }
        for z in g.vertices() {
            let k = dist[z];
            let checks = [
                (k < diameter).then_some((Parameter::B, k, Direction::Out)),
                (k >= 1).then(|| (Parameter::C, k - 1, Direction::In)),
            ];
            for (parameter, slot, direction) in checks.into_iter().flatten() {
                let found = g.directional_degree_with(&dist, z, direction);
                let table = if parameter == Parameter::B { &mut b } else { &mut c };
                let expected = match &reference {
                    Some(r) => Some(if parameter == Parameter::B { r.b[slot] } else { r.c[slot] }),
                    None => table[slot],
                };
                match expected {
                    Some(e) if e != found => {
                        let distance = if parameter == Parameter::B { slot } else { slot + 1 };
                        return Err(NotDistanceRegular::Parameter {
                            base,
                            vertex: z,
                            distance,
                            parameter,
                            expected: e,
                            found,
                        });
                    }
                    _ => table[slot] = Some(found),
                }
            }
        }
        if reference.is_none() {
            reference = Some(IntersectionArray {
                b: b.into_iter().map(Option::unwrap).collect(),
                c: c.into_iter().map(Option::unwrap).collect(),
            });
        }
    }
    Ok(reference.expect("graphs have at least one vertex"))
}
