//! Small geometric helpers shared by the mesh, basis and smoothing code.
//!
//! Points are always stored as 3-vectors; planar meshes keep `z = 0`.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

pub type Point = Vector3<f64>;

/// Spatial dimension of a mesh.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn n(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_usize(d: usize) -> Option<Self> {
        match d {
            2 => Some(Dim::Two),
            3 => Some(Dim::Three),
            _ => None,
        }
    }

    /// Number of rows of a Voigt strain vector.
    pub fn voigt(self) -> usize {
        match self {
            Dim::Two => 3,
            Dim::Three => 6,
        }
    }

    /// Number of rigid-body modes.
    pub fn rigid_modes(self) -> usize {
        match self {
            Dim::Two => 3,
            Dim::Three => 6,
        }
    }
}

pub fn vertex_mean(points: &[Point]) -> Point {
    let mut c = Point::zeros();
    for p in points {
        c += p;
    }
    c / points.len() as f64
}

pub fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// Signed area of a planar loop in the xy plane (positive when counter-clockwise).
pub fn signed_area_xy(points: &[Point]) -> f64 {
    let n = points.len();
    let o = points.first().copied().unwrap_or_else(Point::zeros);
    let mut a = 0.0;
    for i in 0..n {
        let p = points[i] - o;
        let q = points[(i + 1) % n] - o;
        a += p.x * q.y - q.x * p.y;
    }
    0.5 * a
}

/// Newell area vector of a (possibly non-triangular) loop: direction is the
/// right-hand normal, magnitude is the enclosed area.
pub fn area_vector(points: &[Point]) -> Point {
    let n = points.len();
    let o = points.first().copied().unwrap_or_else(Point::zeros);
    let mut s = Point::zeros();
    for i in 0..n {
        s += (points[i] - o).cross(&(points[(i + 1) % n] - o));
    }
    0.5 * s
}

/// Signed volume of the tetrahedron (a, b, c, d); positive when (b-a, c-a, d-a) is right-handed.
pub fn tet_signed_volume(a: &Point, b: &Point, c: &Point, d: &Point) -> f64 {
    (b - a).cross(&(c - a)).dot(&(d - a)) / 6.0
}

pub fn tri_signed_area_xy(a: &Point, b: &Point, c: &Point) -> f64 {
    0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y))
}

/// Restrict a symmetric 3x3 tensor to the active dimension (zeroing z-terms in 2D).
pub fn restrict(m: &Matrix3<f64>, dim: Dim) -> Matrix3<f64> {
    match dim {
        Dim::Three => *m,
        Dim::Two => {
            let mut r = Matrix3::zeros();
            r.fixed_view_mut::<2, 2>(0, 0)
                .copy_from(&m.fixed_view::<2, 2>(0, 0));
            r
        }
    }
}
