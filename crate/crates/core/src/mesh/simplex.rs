//! Simplex subcells of a polytope and their exact moments.

use nalgebra::Matrix3;

use super::{Polytope, PolytopeMesh};
use crate::error::{Error, Result};
use crate::geometry::{self, Dim, Point};

/// Measure, centroid and centroid-referenced second moments of a region.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexMoments {
    pub measure: f64,
    pub centroid: Point,
    /// `integral (x - x_c)(x - x_c)^T` over the region; z-terms are zero in 2D.
    pub second_moments: Matrix3<f64>,
}

/// One facet of a smoothing cell.
#[derive(Clone, Debug)]
pub struct CellFacet {
    pub vertices: Vec<Point>,
    /// Unit outward normal (with respect to the cell).
    pub normal: Point,
    pub measure: f64,
    /// True when the facet lies on the boundary of the parent element.
    pub on_element_boundary: bool,
}

/// A simplex of the centroid-fan subdivision of an element.
#[derive(Clone, Debug)]
pub struct SmoothingCell {
    pub vertices: Vec<Point>,
    pub measure: f64,
    pub centroid: Point,
    pub second_moments: Matrix3<f64>,
    pub parent_element: usize,
    pub facets: Vec<CellFacet>,
}

impl SmoothingCell {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn diameter(&self) -> f64 {
        geometry::diameter(&self.vertices)
    }

    /// Build a cell from a simplex. `boundary_facet` is the index of the
    /// vertex opposite the facet lying on the element boundary, if any.
    pub fn from_simplex(
        vertices: Vec<Point>,
        parent_element: usize,
        boundary_facet: Option<usize>,
    ) -> Result<Self> {
        let m = simplex_moments(&vertices)?;
        let d = vertices.len() - 1;
        let mut facets = Vec::with_capacity(d + 1);
        for opp in 0..=d {
            let fv: Vec<Point> = (0..=d).filter(|&i| i != opp).map(|i| vertices[i]).collect();
            let (mut normal, measure) = if d == 2 {
                let t = fv[1] - fv[0];
                (Point::new(t.y, -t.x, 0.0) / t.norm(), t.norm())
            } else {
                let a = 0.5 * (fv[1] - fv[0]).cross(&(fv[2] - fv[0]));
                let n = a.norm();
                (a / n, n)
            };
            if normal.dot(&(geometry::vertex_mean(&fv) - m.centroid)) < 0.0 {
                normal = -normal;
            }
            facets.push(CellFacet {
                vertices: fv,
                normal,
                measure,
                on_element_boundary: boundary_facet == Some(opp),
            });
        }
        Ok(SmoothingCell {
            vertices,
            measure: m.measure,
            centroid: m.centroid,
            second_moments: m.second_moments,
            parent_element,
            facets,
        })
    }
}

/// Signed measure of a triangle (xy) or tetrahedron given as 3 or 4 points.
fn signed_simplex_measure(v: &[Point]) -> f64 {
    match v.len() {
        3 => geometry::tri_signed_area_xy(&v[0], &v[1], &v[2]),
        4 => geometry::tet_signed_volume(&v[0], &v[1], &v[2], &v[3]),
        n => panic!("simplex with {n} vertices"),
    }
}

/// Exact measure, centroid and second moments of a triangle or tetrahedron.
///
/// For a simplex with vertices `v_i` and centroid `c`,
/// `integral (x-c)(x-c)^T = |S| / ((d+1)(d+2)) * sum_i (v_i-c)(v_i-c)^T`.
pub fn simplex_moments(vertices: &[Point]) -> Result<SimplexMoments> {
    let d = vertices.len() - 1;
    if d != 2 && d != 3 {
        return Err(Error::InvalidInput(format!(
            "a simplex needs 3 or 4 vertices, got {}",
            vertices.len()
        )));
    }
    let measure = signed_simplex_measure(vertices).abs();
    let diam = geometry::diameter(vertices);
    let tolerance = 1e-14 * diam.powi(d as i32);
    if measure <= tolerance {
        return Err(Error::DegenerateSimplex { measure, tolerance });
    }
    let centroid = geometry::vertex_mean(vertices);
    let mut s = Matrix3::zeros();
    for v in vertices {
        let r = v - centroid;
        s += r * r.transpose();
    }
    s *= measure / ((d + 1) * (d + 2)) as f64;
    Ok(SimplexMoments {
        measure,
        centroid,
        second_moments: s,
    })
}

/// Triangles of each face, fanned from the face vertex mean for faces with more than 3 vertices.
fn face_triangles(face: &[Point]) -> Vec<[Point; 3]> {
    if face.len() == 3 {
        return vec![[face[0], face[1], face[2]]];
    }
    let fc = geometry::vertex_mean(face);
    (0..face.len())
        .map(|k| [fc, face[k], face[(k + 1) % face.len()]])
        .collect()
}

/// Fan simplices of element `e` about `point`, with their signed measures.
fn fan(mesh: &PolytopeMesh, e: usize, point: &Point) -> Vec<(Vec<Point>, f64)> {
    match &mesh.elements[e] {
        Polytope::Polygon(v) => (0..v.len())
            .map(|k| {
                let s = vec![*point, mesh.nodes[v[k]], mesh.nodes[v[(k + 1) % v.len()]]];
                let m = signed_simplex_measure(&s);
                (s, m)
            })
            .collect(),
        Polytope::Polyhedron { faces, .. } => faces
            .iter()
            .flat_map(|f| {
                let pts: Vec<Point> = f.iter().map(|&i| mesh.nodes[i]).collect();
                face_triangles(&pts)
            })
            .map(|t| {
                let s = vec![*point, t[0], t[1], t[2]];
                let m = signed_simplex_measure(&s);
                (s, m)
            })
            .collect(),
    }
}

/// True iff every fan simplex from `point` to the element boundary has a
/// positive signed measure (above `1e-14 * diameter^d` to absorb roundoff).
pub fn is_star_convex(mesh: &PolytopeMesh, e: usize, point: &Point) -> bool {
    let diam = mesh.element_diameter(e);
    let tol = 1e-14 * diam.powi(mesh.dim.n() as i32);
    fan(mesh, e, point).iter().all(|(_, m)| *m > tol)
}

/// Split element `e` into simplices fanned from its vertex mean: one
/// triangle per edge in 2D, one tetrahedron per face triangle in 3D.
pub fn subdivide_to_simplices(mesh: &PolytopeMesh, e: usize) -> Result<Vec<SmoothingCell>> {
    let coords = mesh.element_coords(e);
    let center = geometry::vertex_mean(&coords);
    let diam = geometry::diameter(&coords);
    let tol = 1e-14 * diam.powi(mesh.dim.n() as i32);
    let mut cells = Vec::new();
    for (s, m) in fan(mesh, e, &center) {
        if m <= 0.0 {
            return Err(Error::NotStarConvex { element: e });
        }
        if m <= tol {
            return Err(Error::DegenerateSimplex {
                measure: m,
                tolerance: tol,
            });
        }
        // the facet opposite the virtual point lies on the element boundary
        cells.push(SmoothingCell::from_simplex(s, e, Some(0))?);
    }
    debug_assert!(mesh.dim == Dim::Two || cells.iter().all(|c| c.dim() == 3));
    Ok(cells)
}
