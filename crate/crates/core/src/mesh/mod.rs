//! Polytope meshes: storage, validation, boundary tags and file I/O.

mod clip;
mod cvt;
mod io;
mod simplex;
pub mod vtk;

use std::collections::HashMap;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::geometry::{self, Dim, Point};

pub use clip::{ConvexPolygon, ConvexPolyhedron};
pub use cvt::{cvt_energy, generate_cvt_mesh, generate_cvt_mesh_from_seeds, lloyd_sweep, Domain};
pub use simplex::{
    is_star_convex, simplex_moments, subdivide_to_simplices, CellFacet, SimplexMoments,
    SmoothingCell,
};

/// One element of a polytope mesh.
#[derive(Clone, Debug, PartialEq)]
pub enum Polytope {
    /// Counter-clockwise loop of node indices.
    Polygon(Vec<usize>),
    /// Planar faces, each an outward-oriented loop of node indices.
    /// `vertices` lists every node of the element once, in order of first appearance.
    Polyhedron {
        vertices: Vec<usize>,
        faces: Vec<Vec<usize>>,
    },
}

impl Polytope {
    pub fn polyhedron(faces: Vec<Vec<usize>>) -> Self {
        let mut vertices = Vec::new();
        for f in &faces {
            for &v in f {
                if !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
        Polytope::Polyhedron { vertices, faces }
    }

    pub fn vertices(&self) -> &[usize] {
        match self {
            Polytope::Polygon(v) => v,
            Polytope::Polyhedron { vertices, .. } => vertices,
        }
    }

    pub fn n_facets(&self) -> usize {
        match self {
            Polytope::Polygon(v) => v.len(),
            Polytope::Polyhedron { faces, .. } => faces.len(),
        }
    }

    /// Node loop of local facet `k`: edge `k -> k+1` of a polygon, or face `k` of a polyhedron.
    pub fn facet(&self, k: usize) -> Vec<usize> {
        match self {
            Polytope::Polygon(v) => vec![v[k], v[(k + 1) % v.len()]],
            Polytope::Polyhedron { faces, .. } => faces[k].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFacet {
    pub element: usize,
    pub facet: usize,
    pub tag: String,
}

#[derive(Clone, Debug)]
pub struct PolytopeMesh {
    pub dim: Dim,
    pub nodes: Vec<Point>,
    pub elements: Vec<Polytope>,
    pub boundary: Vec<BoundaryFacet>,
}

impl PolytopeMesh {
    pub fn new(dim: Dim, nodes: Vec<Point>, elements: Vec<Polytope>) -> Self {
        PolytopeMesh {
            dim,
            nodes,
            elements,
            boundary: Vec::new(),
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element_coords(&self, e: usize) -> Vec<Point> {
        self.elements[e]
            .vertices()
            .iter()
            .map(|&i| self.nodes[i])
            .collect()
    }

    pub fn element_diameter(&self, e: usize) -> f64 {
        geometry::diameter(&self.element_coords(e))
    }

    /// Area or volume of element `e`, exact for planar-faced polytopes.
    pub fn element_measure(&self, e: usize) -> f64 {
        match &self.elements[e] {
            Polytope::Polygon(v) => {
                let pts: Vec<Point> = v.iter().map(|&i| self.nodes[i]).collect();
                geometry::signed_area_xy(&pts)
            }
            Polytope::Polyhedron { faces, .. } => {
                // divergence theorem: V = 1/3 sum_f (x_f . A_f)
                faces
                    .iter()
                    .map(|f| {
                        let pts: Vec<Point> = f.iter().map(|&i| self.nodes[i]).collect();
                        geometry::vertex_mean(&pts).dot(&geometry::area_vector(&pts)) / 3.0
                    })
                    .sum()
            }
        }
    }

    pub fn measure(&self) -> f64 {
        (0..self.n_elements())
            .map(|e| self.element_measure(e))
            .sum()
    }

    /// Characteristic mesh size `(measure / n_elements)^(1/d)`.
    pub fn mesh_size(&self) -> f64 {
        let m = self.measure() / self.n_elements() as f64;
        match self.dim {
            Dim::Two => m.sqrt(),
            Dim::Three => m.cbrt(),
        }
    }

    pub fn facet_nodes(&self, b: &BoundaryFacet) -> Vec<usize> {
        self.elements[b.element].facet(b.facet)
    }

    /// Nodes on any boundary facet, sorted.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        self.tagged_nodes(|_| true)
    }

    /// Nodes on boundary facets whose tag passes `keep`, sorted.
    pub fn tagged_nodes(&self, keep: impl Fn(&str) -> bool) -> Vec<usize> {
        let mut flag = vec![false; self.n_nodes()];
        for b in &self.boundary {
            if keep(&b.tag) {
                for n in self.facet_nodes(b) {
                    flag[n] = true;
                }
            }
        }
        flag.iter()
            .enumerate()
            .filter_map(|(i, &f)| f.then_some(i))
            .collect()
    }

    /// Facets referenced by exactly one element, as (element, local facet).
    pub fn exterior_facets(&self) -> Vec<(usize, usize)> {
        let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
        for el in &self.elements {
            for k in 0..el.n_facets() {
                let mut key = el.facet(k);
                key.sort_unstable();
                *count.entry(key).or_default() += 1;
            }
        }
        let mut out = Vec::new();
        for (e, el) in self.elements.iter().enumerate() {
            for k in 0..el.n_facets() {
                let mut key = el.facet(k);
                key.sort_unstable();
                if count[&key] == 1 {
                    out.push((e, k));
                }
            }
        }
        out
    }

    /// Rebuild `boundary` from the exterior facets. `classify` receives the
    /// facet centroid and unit outward normal and returns the tag, or `None`
    /// when the facet does not lie on the domain boundary (a conformity defect).
    pub fn tag_boundary<F>(&mut self, classify: F) -> Result<()>
    where
        F: Fn(&Point, &Point) -> Option<String>,
    {
        let mut boundary = Vec::new();
        for (e, k) in self.exterior_facets() {
            let pts: Vec<Point> = self.elements[e]
                .facet(k)
                .iter()
                .map(|&i| self.nodes[i])
                .collect();
            let (c, n) = self.facet_frame(&pts);
            match classify(&c, &n) {
                Some(tag) => boundary.push(BoundaryFacet {
                    element: e,
                    facet: k,
                    tag,
                }),
                None => {
                    return Err(Error::InvalidMesh(format!(
                        "facet {k} of element {e} (centroid {:?}) is unshared but not on the domain boundary",
                        c.as_slice()
                    )))
                }
            }
        }
        self.boundary = boundary;
        Ok(())
    }

    fn facet_frame(&self, pts: &[Point]) -> (Point, Point) {
        let c = geometry::vertex_mean(pts);
        let n = match self.dim {
            Dim::Two => {
                let t = pts[1] - pts[0];
                Point::new(t.y, -t.x, 0.0).normalize()
            }
            Dim::Three => geometry::area_vector(pts).normalize(),
        };
        (c, n)
    }

    /// Unit outward normal and measure of local facet `k` of element `e`.
    pub fn facet_normal_measure(&self, e: usize, k: usize) -> (Point, f64) {
        let pts: Vec<Point> = self.elements[e]
            .facet(k)
            .iter()
            .map(|&i| self.nodes[i])
            .collect();
        match self.dim {
            Dim::Two => {
                let t = pts[1] - pts[0];
                (Point::new(t.y, -t.x, 0.0).normalize(), t.norm())
            }
            Dim::Three => {
                let a = geometry::area_vector(&pts);
                let m = a.norm();
                (a / m, m)
            }
        }
    }

    /// Check structural invariants: index ranges, orientation, simplicity of
    /// polygon loops, planarity and outward orientation of polyhedron faces.
    pub fn validate(&self) -> Result<()> {
        for (e, el) in self.elements.iter().enumerate() {
            for &v in el.vertices() {
                if v >= self.nodes.len() {
                    return Err(Error::InvalidMesh(format!(
                        "element {e} references missing node {v}"
                    )));
                }
            }
            match el {
                Polytope::Polygon(v) => {
                    if self.dim != Dim::Two {
                        return Err(Error::InvalidMesh(format!(
                            "element {e} is a polygon in a 3D mesh"
                        )));
                    }
                    self.validate_polygon(e, v)?;
                }
                Polytope::Polyhedron { faces, .. } => {
                    if self.dim != Dim::Three {
                        return Err(Error::InvalidMesh(format!(
                            "element {e} is a polyhedron in a 2D mesh"
                        )));
                    }
                    self.validate_polyhedron(e, faces)?;
                }
            }
        }
        for b in &self.boundary {
            if b.element >= self.n_elements() || b.facet >= self.elements[b.element].n_facets() {
                return Err(Error::InvalidMesh(format!(
                    "boundary facet {}:{} does not exist",
                    b.element, b.facet
                )));
            }
        }
        Ok(())
    }

    fn validate_polygon(&self, e: usize, v: &[usize]) -> Result<()> {
        if v.len() < 3 {
            return Err(Error::InvalidMesh(format!(
                "element {e} has fewer than 3 vertices"
            )));
        }
        let pts: Vec<Point> = v.iter().map(|&i| self.nodes[i]).collect();
        if geometry::signed_area_xy(&pts) <= 0.0 {
            return Err(Error::InvalidMesh(format!(
                "element {e} is not counter-clockwise"
            )));
        }
        let n = pts.len();
        for i in 0..n {
            for j in i + 1..n {
                // skip edges sharing a vertex
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                if segments_cross(&pts[i], &pts[(i + 1) % n], &pts[j], &pts[(j + 1) % n]) {
                    return Err(Error::InvalidMesh(format!(
                        "element {e} is self-intersecting (edges {i} and {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_polyhedron(&self, e: usize, faces: &[Vec<usize>]) -> Result<()> {
        if faces.len() < 4 {
            return Err(Error::InvalidMesh(format!(
                "element {e} has fewer than 4 faces"
            )));
        }
        let coords = self.element_coords(e);
        let diam = geometry::diameter(&coords);
        let center = geometry::vertex_mean(&coords);
        for (k, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::InvalidMesh(format!(
                    "face {k} of element {e} has fewer than 3 vertices"
                )));
            }
            let pts: Vec<Point> = f.iter().map(|&i| self.nodes[i]).collect();
            let a = geometry::area_vector(&pts);
            let n = a.norm();
            if n <= 0.0 {
                return Err(Error::DegenerateFacet {
                    facet: k,
                    reason: format!("face of element {e} has zero area"),
                });
            }
            let normal = a / n;
            let fc = geometry::vertex_mean(&pts);
            let dev = pts
                .iter()
                .map(|p| (p - fc).dot(&normal).abs())
                .fold(0.0, f64::max);
            if dev > 1e-10 * diam {
                return Err(Error::NonPlanarFace {
                    face: k,
                    deviation: dev,
                });
            }
            if (fc - center).dot(&normal) <= 0.0 {
                return Err(Error::InvalidMesh(format!(
                    "face {k} of element {e} is not outward-oriented"
                )));
            }
        }
        Ok(())
    }

    /// Elements tile a domain of the given measure (relative tolerance 1e-10).
    pub fn check_tiling(&self, domain_measure: f64) -> Result<()> {
        let m = self.measure();
        if ((m - domain_measure) / domain_measure).abs() > 1e-10 {
            return Err(Error::InvalidMesh(format!(
                "element measures sum to {m}, domain measure is {domain_measure}"
            )));
        }
        Ok(())
    }

    /// Second moment tensor of element `e` about its centroid, together with
    /// its measure and centroid (exact, from the simplex subdivision).
    pub fn element_moments(&self, e: usize) -> Result<SimplexMoments> {
        let cells = subdivide_to_simplices(self, e)?;
        let measure: f64 = cells.iter().map(|c| c.measure).sum();
        let centroid = cells
            .iter()
            .fold(Point::zeros(), |acc, c| acc + c.measure * c.centroid)
            / measure;
        let mut second = Matrix3::zeros();
        for c in &cells {
            let d = c.centroid - centroid;
            second += c.second_moments + c.measure * d * d.transpose();
        }
        Ok(SimplexMoments {
            measure,
            centroid,
            second_moments: second,
        })
    }
}

fn orient(a: &Point, b: &Point, c: &Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub use io::{read_mesh, write_mesh, MeshFile};
