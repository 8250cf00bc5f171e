use std::collections::HashMap;

use nalgebra::DMatrix;
use num_traits::Zero;

use crate::graph::{Graph, VertexId};
use crate::rational::{to_f64, Rational};

/// Symmetric bilinear form over the vertices of a local ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub index: Vec<VertexId>,
    pub matrix: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Entry for the pair of parent vertices `(u, v)`.
    pub fn entry(&self, u: VertexId, v: VertexId) -> Option<Rational> {
        let i = self.index.iter().position(|&w| w == u)?;
        let j = self.index.iter().position(|&w| w == v)?;
        Some(self.matrix[i][j])
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    /// True when every row sums to zero, i.e. constants lie in the kernel.
    pub fn annihilates_constants(&self) -> bool {
        self.matrix.iter().all(|row| row.iter().sum::<Rational>().is_zero())
    }

    /// `f ↦ Σ f(u) M(u, v) f(v)` for `f` given on the index.
    pub fn evaluate(&self, f: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                total += f[i] * *m * f[j];
            }
        }
        total
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| to_f64(&self.matrix[i][j]))
    }

    /// The same form over a larger index that starts with this one.
    pub(crate) fn padded(&self, index: &[VertexId]) -> QuadraticForm {
        debug_assert_eq!(&index[..self.dim()], &self.index[..]);
        let n = index.len();
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for (i, row) in self.matrix.iter().enumerate() {
            matrix[i][..row.len()].copy_from_slice(row);
        }
        QuadraticForm { index: index.to_vec(), matrix }
    }
}

type Func<'a> = &'a dyn Fn(VertexId) -> Rational;

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `Δf(u) = Σ_{w ~ u} (f(w) − f(u))`.
fn laplacian(g: &Graph, f: Func, u: VertexId) -> Rational {
    let fu = f(u);
    g.neighbors(u).iter().map(|&w| f(w) - fu).sum()
}

/// `2Γ(f, h) = Δ(fh) − fΔh − hΔf`, evaluated at `u`.
fn gamma(g: &Graph, f: Func, h: Func, u: VertexId) -> Rational {
    let product = |w: VertexId| f(w) * h(w);
    (laplacian(g, &product, u) - f(u) * laplacian(g, h, u) - h(u) * laplacian(g, f, u)) * half()
}

/// `2Γ₂(f, h) = ΔΓ(f, h) − Γ(f, Δh) − Γ(Δf, h)`, evaluated at `x`.
fn gamma2(g: &Graph, f: Func, h: Func, x: VertexId) -> Rational {
    let gamma_fh = |w: VertexId| gamma(g, f, h, w);
    let lap_f = |w: VertexId| laplacian(g, f, w);
    let lap_h = |w: VertexId| laplacian(g, h, w);
    (laplacian(g, &gamma_fh, x) - gamma(g, f, &lap_h, x) - gamma(g, &lap_f, h, x)) * half()
}

fn indicator(v: VertexId) -> impl Fn(VertexId) -> Rational {
    move |w| if w == v { Rational::from_integer(1) } else { Rational::zero() }
}

fn assemble(index: Vec<VertexId>, entry: impl Fn(VertexId, VertexId) -> Rational) -> QuadraticForm {
    let n = index.len();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let value = entry(index[i], index[j]);
            matrix[i][j] = value;
            matrix[j][i] = value;
        }
    }
    QuadraticForm { index, matrix }
}

/// `Γ(·,·)(x)` over `B₁(x)`, listed as `x` followed by its sorted neighbors.
pub fn gamma_form(g: &Graph, x: VertexId) -> QuadraticForm {
    assemble(g.ball_by_layers(x, 1), |a, b| gamma(g, &indicator(a), &indicator(b), x))
}

/// `Γ₂(·,·)(x)` over `B₂(x)`, listed as `x`, then `S₁(x)`, then `S₂(x)`,
/// each sphere sorted.
pub fn gamma2_form(g: &Graph, x: VertexId) -> QuadraticForm {
    assemble(g.ball_by_layers(x, 2), |a, b| gamma2(g, &indicator(a), &indicator(b), x))
}

/// Coefficients of `f ↦ Δf(x)` over the given index.
pub(crate) fn laplacian_row(g: &Graph, x: VertexId, index: &[VertexId]) -> Vec<Rational> {
    let position: HashMap<VertexId, usize> = index.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut row = vec![Rational::zero(); index.len()];
    row[position[&x]] = Rational::from_integer(-(g.degree(x) as i64));
    for w in g.neighbors(x) {
        row[position[w]] += Rational::from_integer(1);
    }
    row
}
