//! Strain smoothing on simplex subcells: the one-point linear scheme (LS1),
//! the three/four-point linear scheme (LS3n) and constant smoothing (CS).

mod baseline;
mod integrate;
mod linear;
mod material;

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix3};
use serde::{Deserialize, Serialize};

use crate::basis::Wachspress;
use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};
use crate::mesh::{subdivide_to_simplices, PolytopeMesh, SmoothingCell};
use crate::quadrature::{line_rule, SimplexRule};

pub use baseline::{element_stiffness_cs, element_stiffness_ls3n};
pub use integrate::{integrate_dense, integrate_function, Hessian};
pub use linear::{
    assemble_f, assemble_w, element_stiffness_ls1, smoothed_basis, ModifiedB, SmoothedBasis,
};
pub use material::{Material, MaterialModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Cs,
    Ls3n,
    Ls1,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Cs, Scheme::Ls3n, Scheme::Ls1];

    pub fn supports(self, dim: Dim) -> bool {
        !(self == Scheme::Cs && dim == Dim::Three)
    }

    /// Interior basis evaluations per subcell.
    pub fn points_per_cell(self, dim: Dim) -> usize {
        match self {
            Scheme::Cs => 0,
            Scheme::Ls1 => 1,
            Scheme::Ls3n => dim.n() + 1,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Cs => "cs",
            Scheme::Ls3n => "ls3n",
            Scheme::Ls1 => "ls1",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cs" => Ok(Scheme::Cs),
            "ls3n" => Ok(Scheme::Ls3n),
            "ls1" => Ok(Scheme::Ls1),
            other => Err(Error::InvalidInput(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Boundary quadrature on subcell facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothingOptions {
    /// Gauss points per subcell edge (2D).
    pub edge_points: usize,
    /// Polynomial degree of the rule on triangular subcell facets (3D).
    pub face_degree: usize,
}

impl Default for SmoothingOptions {
    fn default() -> Self {
        SmoothingOptions {
            edge_points: 2,
            face_degree: 2,
        }
    }
}

/// Basis and subdivision of one element, shared by all schemes.
#[derive(Clone, Debug)]
pub struct ElementData {
    pub element: usize,
    pub dim: Dim,
    pub basis: Wachspress,
    pub cells: Vec<SmoothingCell>,
}

impl ElementData {
    pub fn new(mesh: &PolytopeMesh, element: usize) -> Result<Self> {
        let basis = Wachspress::new(mesh, element).map_err(|e| e.in_element(element))?;
        let cells = subdivide_to_simplices(mesh, element).map_err(|e| e.in_element(element))?;
        Ok(ElementData {
            element,
            dim: mesh.dim,
            basis,
            cells,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.basis.n_vertices()
    }

    pub fn n_dofs(&self) -> usize {
        self.n_nodes() * self.dim.n()
    }
}

/// Element stiffness with the number of interior basis evaluations used.
#[derive(Clone, Debug)]
pub struct ElementMatrix {
    pub k: DMatrix<f64>,
    pub interior_points: usize,
}

pub fn element_stiffness(
    data: &ElementData,
    material: &Material,
    scheme: Scheme,
    opts: &SmoothingOptions,
) -> Result<ElementMatrix> {
    match scheme {
        Scheme::Ls1 => element_stiffness_ls1(data, material, opts),
        Scheme::Ls3n => element_stiffness_ls3n(data, material, opts),
        Scheme::Cs => element_stiffness_cs(data, material, opts),
    }
}

/// Consistent nodal body force. LS1 and CS use the second-moment expansion
/// about each subcell centroid; LS3n uses its interior points.
pub fn body_force_vector(
    data: &ElementData,
    b: &dyn Fn(&Point) -> Point,
    scheme: Scheme,
) -> Result<Vec<f64>> {
    let d = data.dim.n();
    let mut f = vec![0.0; data.n_dofs()];
    for cell in &data.cells {
        match scheme {
            Scheme::Ls3n => {
                let rule = interior_rule(data.dim);
                for (x, w) in rule.points(&cell.vertices).iter().zip(&rule.weights) {
                    let phi = data.basis.values(x)?;
                    let bx = b(x);
                    for (i, p) in phi.iter().enumerate() {
                        for c in 0..d {
                            f[d * i + c] += cell.measure * w * p * bx[c];
                        }
                    }
                }
            }
            Scheme::Ls1 | Scheme::Cs => {
                let ev = data.basis.evaluate(&cell.centroid)?;
                let bx = b(&cell.centroid);
                for i in 0..data.n_nodes() {
                    let weight = taylor_weight(cell, ev.values[i], &ev.hessians[i], data.dim);
                    for c in 0..d {
                        f[d * i + c] += weight * bx[c];
                    }
                }
            }
        }
    }
    Ok(f)
}

/// `A g(x_c) + 1/2 sum_kl I_kl g_kl(x_c)`: the exact integral of the
/// quadratic Taylor polynomial of `g` over the cell.
pub(crate) fn taylor_weight(
    cell: &SmoothingCell,
    value: f64,
    hessian: &Matrix3<f64>,
    dim: Dim,
) -> f64 {
    let d = dim.n();
    let mut s = cell.measure * value;
    for k in 0..d {
        for l in 0..d {
            s += 0.5 * cell.second_moments[(k, l)] * hessian[(k, l)];
        }
    }
    s
}

pub(crate) fn interior_rule(dim: Dim) -> SimplexRule {
    match dim {
        Dim::Two => SimplexRule::triangle3(),
        Dim::Three => SimplexRule::tet4(),
    }
}

/// A quadrature point on a subcell facet with its weight (including the
/// facet measure), outward normal and basis values.
#[derive(Clone, Debug)]
pub(crate) struct BoundaryPoint {
    pub x: Point,
    pub weight: f64,
    pub normal: Point,
    pub phi: Vec<f64>,
}

pub(crate) fn boundary_points(
    cell: &SmoothingCell,
    basis: &Wachspress,
    opts: &SmoothingOptions,
) -> Result<Vec<BoundaryPoint>> {
    let mut out = Vec::new();
    match cell.dim() {
        2 => {
            let (t, w) = line_rule(opts.edge_points);
            for facet in &cell.facets {
                let (a, b) = (facet.vertices[0], facet.vertices[1]);
                for (ti, wi) in t.iter().zip(&w) {
                    let x = a + (b - a) * *ti;
                    out.push(BoundaryPoint {
                        x,
                        weight: wi * facet.measure,
                        normal: facet.normal,
                        phi: basis.values(&x)?,
                    });
                }
            }
        }
        _ => {
            let rule = SimplexRule::of_degree(2, opts.face_degree);
            for facet in &cell.facets {
                for (x, wi) in rule.points(&facet.vertices).into_iter().zip(&rule.weights) {
                    out.push(BoundaryPoint {
                        x,
                        weight: wi * facet.measure,
                        normal: facet.normal,
                        phi: basis.values(&x)?,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `q = (1, x, y[, z])`.
pub(crate) fn q_vector(x: &Point, dim: Dim) -> Vec<f64> {
    let mut q = Vec::with_capacity(dim.n() + 1);
    q.push(1.0);
    q.extend(x.iter().take(dim.n()));
    q
}

/// Strain-displacement matrix for per-node gradients (node-major dofs).
pub fn strain_displacement(dim: Dim, grads: &[Point]) -> DMatrix<f64> {
    let n = grads.len();
    match dim {
        Dim::Two => {
            let mut b = DMatrix::zeros(3, 2 * n);
            for (i, g) in grads.iter().enumerate() {
                b[(0, 2 * i)] = g.x;
                b[(1, 2 * i + 1)] = g.y;
                b[(2, 2 * i)] = g.y;
                b[(2, 2 * i + 1)] = g.x;
            }
            b
        }
        Dim::Three => {
            let mut b = DMatrix::zeros(6, 3 * n);
            for (i, g) in grads.iter().enumerate() {
                let c = 3 * i;
                b[(0, c)] = g.x;
                b[(1, c + 1)] = g.y;
                b[(2, c + 2)] = g.z;
                b[(3, c)] = g.y;
                b[(3, c + 1)] = g.x;
                b[(4, c + 1)] = g.z;
                b[(4, c + 2)] = g.y;
                b[(5, c)] = g.z;
                b[(5, c + 2)] = g.x;
            }
            b
        }
    }
}

/// Accumulates `K = sum w B^T C B` as `G^T G` with stacked rows `sqrt(w) L^T B`,
/// where `C = L L^T`.
pub(crate) struct GramAccumulator {
    lt: DMatrix<f64>,
    rows: Vec<DMatrix<f64>>,
    n_dofs: usize,
}

impl GramAccumulator {
    pub fn new(material: &Material, dim: Dim, n_dofs: usize) -> Result<Self> {
        if material.dim() != dim {
            return Err(Error::InvalidInput(format!(
                "material model {:?} does not match a {}D mesh",
                material.model,
                dim.n()
            )));
        }
        let chol = material.c().cholesky().ok_or_else(|| {
            Error::InvalidInput("constitutive matrix is not positive definite".into())
        })?;
        Ok(GramAccumulator {
            lt: chol.l().transpose(),
            rows: Vec::new(),
            n_dofs,
        })
    }

    /// Add `weight * B^T C B` (weight >= 0).
    pub fn add(&mut self, weight: f64, b: &DMatrix<f64>) {
        self.rows.push(&self.lt * b * weight.sqrt());
    }

    pub fn finish(self) -> DMatrix<f64> {
        let total: usize = self.rows.iter().map(|r| r.nrows()).sum();
        let mut g = DMatrix::zeros(total, self.n_dofs);
        let mut at = 0;
        for r in &self.rows {
            g.rows_mut(at, r.nrows()).copy_from(r);
            at += r.nrows();
        }
        let k = g.transpose() * &g;
        // exact symmetry
        (&k + k.transpose()) * 0.5
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::mesh::fixtures;

    pub fn square() -> (PolytopeMesh, ElementData) {
        let m = fixtures::unit_square();
        let d = ElementData::new(&m, 0).unwrap();
        (m, d)
    }

    pub fn data(mesh: &PolytopeMesh) -> ElementData {
        ElementData::new(mesh, 0).unwrap()
    }

    /// Nodal vector of a displacement field.
    pub fn nodal(data: &ElementData, u: impl Fn(&Point) -> Point) -> Vec<f64> {
        let d = data.dim.n();
        let mut out = Vec::new();
        for v in data.basis.vertices() {
            let val = u(v);
            out.extend(val.iter().take(d));
        }
        out
    }
}
