use nalgebra::Matrix3;

use super::taylor_weight;
use crate::error::Result;
use crate::geometry::{self, Point};
use crate::mesh::{subdivide_to_simplices, PolytopeMesh};
use crate::quadrature::SimplexRule;

/// Source of second derivatives for [`integrate_function`].
pub enum Hessian<'a> {
    Exact(&'a dyn Fn(&Point) -> Matrix3<f64>),
    /// Central differences with step `1e-5` times the element diameter.
    FiniteDifference,
}

fn fd_hessian(f: &dyn Fn(&Point) -> f64, x: &Point, h: f64, d: usize) -> Matrix3<f64> {
    let mut out = Matrix3::zeros();
    let e = |k: usize| {
        let mut v = Point::zeros();
        v[k] = h;
        v
    };
    let f0 = f(x);
    for k in 0..d {
        let ek = e(k);
        out[(k, k)] = (f(&(x + ek)) - 2.0 * f0 + f(&(x - ek))) / (h * h);
        for l in k + 1..d {
            let el = e(l);
            let v = (f(&(x + ek + el)) - f(&(x + ek - el)) - f(&(x - ek + el)) + f(&(x - ek - el)))
                / (4.0 * h * h);
            out[(k, l)] = v;
            out[(l, k)] = v;
        }
    }
    out
}

/// One-point-per-subcell integral of `f` over element `e`, exact for
/// quadratics: `sum_cells A f(x_c) + 1/2 sum_kl I_kl f_kl(x_c)`.
/// Returns the integral and the number of interior evaluation points.
pub fn integrate_function(
    mesh: &PolytopeMesh,
    e: usize,
    f: &dyn Fn(&Point) -> f64,
    hessian: Hessian<'_>,
) -> Result<(f64, usize)> {
    let cells = subdivide_to_simplices(mesh, e)?;
    let step = 1e-5 * geometry::diameter(&mesh.element_coords(e));
    let mut total = 0.0;
    for c in &cells {
        let h = match &hessian {
            Hessian::Exact(h) => h(&c.centroid),
            Hessian::FiniteDifference => fd_hessian(f, &c.centroid, step, mesh.dim.n()),
        };
        total += taylor_weight(c, f(&c.centroid), &h, mesh.dim);
    }
    Ok((total, cells.len()))
}

/// Reference integral with a Gauss rule of the given degree on every subcell.
/// Returns the integral and the number of evaluation points.
pub fn integrate_dense(
    mesh: &PolytopeMesh,
    e: usize,
    f: &dyn Fn(&Point) -> f64,
    degree: usize,
) -> Result<(f64, usize)> {
    let cells = subdivide_to_simplices(mesh, e)?;
    let rule = SimplexRule::of_degree(mesh.dim.n(), degree);
    let mut total = 0.0;
    for c in &cells {
        for (x, w) in rule.points(&c.vertices).iter().zip(&rule.weights) {
            total += c.measure * w * f(x);
        }
    }
    Ok((total, cells.len() * rule.len()))
}
