//! Wachspress coordinates on convex polygons and simple polyhedra.
//!
//! With unit outward facet normals `n_f` and distances `h_f(x) = (v_f - x) . n_f`,
//! the weight of vertex `v` is `w_v = det(n_f / h_f)` over the facets incident
//! to `v`, and `phi_v = w_v / sum_u w_u`. Since `d h_f / dx = -n_f`, the weight
//! derivatives reduce to `grad w = w R` and `Hess w = w (R R^T + sum p_f p_f^T)`
//! with `p_f = n_f / h_f`, `R = sum p_f`.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geometry::{self, Dim, Point};
use crate::mesh::{Polytope, PolytopeMesh};

/// Basis values and derivatives at one point, one entry per element vertex.
/// In 2D the z-components of gradients and Hessians are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisEval {
    pub values: Vec<f64>,
    pub gradients: Vec<Point>,
    pub hessians: Vec<Matrix3<f64>>,
}

#[derive(Clone, Debug)]
struct Facet {
    normal: Point,
    anchor: Point,
}

/// Precomputed facet data for repeated evaluation on one element.
#[derive(Clone, Debug)]
pub struct Wachspress {
    dim: Dim,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    /// Incident facets of each vertex, ordered so `det` is positive.
    vertex_facets: Vec<Vec<usize>>,
    dets: Vec<f64>,
    diameter: f64,
}

fn det(dim: Dim, n: &[&Point]) -> f64 {
    match dim {
        Dim::Two => n[0].x * n[1].y - n[0].y * n[1].x,
        Dim::Three => n[0].dot(&n[1].cross(n[2])),
    }
}

impl Wachspress {
    pub fn new(mesh: &PolytopeMesh, element: usize) -> Result<Self> {
        match &mesh.elements[element] {
            Polytope::Polygon(_) => Self::polygon(&mesh.element_coords(element)),
            Polytope::Polyhedron { vertices, faces } => {
                let local: Vec<Vec<usize>> = faces
                    .iter()
                    .map(|f| {
                        f.iter()
                            .map(|g| vertices.iter().position(|v| v == g).unwrap())
                            .collect()
                    })
                    .collect();
                Self::polyhedron(&mesh.element_coords(element), &local)
            }
        }
    }

    /// Counter-clockwise polygon.
    pub fn polygon(vertices: &[Point]) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidInput(
                "a polygon needs at least 3 vertices".into(),
            ));
        }
        let diameter = geometry::diameter(vertices);
        let mut facets = Vec::with_capacity(n);
        for k in 0..n {
            let t = vertices[(k + 1) % n] - vertices[k];
            let len = t.norm();
            if len <= 1e-12 * diameter {
                return Err(Error::DegenerateFacet {
                    facet: k,
                    reason: format!("edge length {len:e}"),
                });
            }
            facets.push(Facet {
                normal: Point::new(t.y, -t.x, 0.0) / len,
                anchor: vertices[k],
            });
        }
        let vertex_facets: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + n - 1) % n, i]).collect();
        Self::finish(Dim::Two, vertices.to_vec(), facets, vertex_facets, diameter)
    }

    /// Polyhedron with outward face loops given as local vertex indices.
    pub fn polyhedron(vertices: &[Point], faces: &[Vec<usize>]) -> Result<Self> {
        let diameter = geometry::diameter(vertices);
        let mut facets = Vec::with_capacity(faces.len());
        for (k, f) in faces.iter().enumerate() {
            let pts: Vec<Point> = f.iter().map(|&i| vertices[i]).collect();
            let a = geometry::area_vector(&pts);
            let m = a.norm();
            if f.len() < 3 || m <= 1e-14 * diameter * diameter {
                return Err(Error::DegenerateFacet {
                    facet: k,
                    reason: format!("face area {m:e}"),
                });
            }
            let normal = a / m;
            let dev = pts
                .iter()
                .map(|p| (p - pts[0]).dot(&normal).abs())
                .fold(0.0, f64::max);
            if dev > 1e-10 * diameter {
                return Err(Error::NonPlanarFace {
                    face: k,
                    deviation: dev,
                });
            }
            facets.push(Facet {
                normal,
                anchor: pts[0],
            });
        }
        let mut vertex_facets = vec![Vec::new(); vertices.len()];
        for (k, f) in faces.iter().enumerate() {
            for &i in f {
                if !vertex_facets[i].contains(&k) {
                    vertex_facets[i].push(k);
                }
            }
        }
        for (v, fs) in vertex_facets.iter_mut().enumerate() {
            if fs.len() != 3 {
                return Err(Error::NonSimpleVertex {
                    vertex: v,
                    faces: fs.len(),
                });
            }
            let n: Vec<&Point> = fs.iter().map(|&f| &facets[f].normal).collect();
            if det(Dim::Three, &n) < 0.0 {
                fs.swap(1, 2);
            }
        }
        Self::finish(
            Dim::Three,
            vertices.to_vec(),
            facets,
            vertex_facets,
            diameter,
        )
    }

    fn finish(
        dim: Dim,
        vertices: Vec<Point>,
        facets: Vec<Facet>,
        vertex_facets: Vec<Vec<usize>>,
        diameter: f64,
    ) -> Result<Self> {
        let mut dets = Vec::with_capacity(vertices.len());
        for (v, fs) in vertex_facets.iter().enumerate() {
            let n: Vec<&Point> = fs.iter().map(|&f| &facets[f].normal).collect();
            let d = det(dim, &n);
            if d.abs() <= 1e-10 {
                return Err(Error::DegenerateFacet {
                    facet: fs[0],
                    reason: format!("facets at vertex {v} are parallel"),
                });
            }
            dets.push(d);
        }
        let w = Wachspress {
            dim,
            vertices,
            facets,
            vertex_facets,
            dets,
            diameter,
        };
        let tol = 1e-10 * diameter;
        let convex = w
            .vertices
            .iter()
            .all(|v| (0..w.facets.len()).all(|f| w.distance(f, v) >= -tol))
            && w.dets.iter().all(|&d| d > 0.0);
        if !convex {
            log::warn!("element is not convex; Wachspress coordinates may change sign");
        }
        Ok(w)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    fn distance(&self, f: usize, x: &Point) -> f64 {
        let fa = &self.facets[f];
        (fa.anchor - x).dot(&fa.normal)
    }

    /// Values, gradients and Hessians at a strictly interior point.
    pub fn evaluate(&self, x: &Point) -> Result<BasisEval> {
        self.eval(x, true)
    }

    /// Values and gradients at a strictly interior point; `hessians` is left empty.
    pub fn evaluate_first_order(&self, x: &Point) -> Result<BasisEval> {
        self.eval(x, false)
    }

    fn eval(&self, x: &Point, with_hessians: bool) -> Result<BasisEval> {
        let tol = 1e-12 * self.diameter;
        let mut p = Vec::with_capacity(self.facets.len());
        for f in 0..self.facets.len() {
            let h = self.distance(f, x);
            if h <= tol {
                return Err(Error::QueryOutside {
                    facet: f,
                    distance: h,
                });
            }
            p.push(self.facets[f].normal / h);
        }
        let n = self.vertices.len();
        let mut w = Vec::with_capacity(n);
        let mut gw = Vec::with_capacity(n);
        let mut hw = Vec::with_capacity(if with_hessians { n } else { 0 });
        for fs in &self.vertex_facets {
            let pv: Vec<&Vector3<f64>> = fs.iter().map(|&f| &p[f]).collect();
            let wv = det(self.dim, &pv);
            let r: Point = pv.iter().copied().sum();
            if with_hessians {
                let mut h = r * r.transpose();
                for q in &pv {
                    h += *q * q.transpose();
                }
                hw.push(wv * h);
            }
            w.push(wv);
            gw.push(wv * r);
        }
        let sw: f64 = w.iter().sum();
        let sg: Point = gw.iter().sum();
        let sh: Matrix3<f64> = hw.iter().sum();
        let mut values = Vec::with_capacity(n);
        let mut gradients = Vec::with_capacity(n);
        let mut hessians = Vec::with_capacity(hw.len());
        for v in 0..n {
            let phi = w[v] / sw;
            let g = (gw[v] - phi * sg) / sw;
            if with_hessians {
                hessians.push((hw[v] - g * sg.transpose() - sg * g.transpose() - phi * sh) / sw);
            }
            values.push(phi);
            gradients.push(g);
        }
        Ok(BasisEval {
            values,
            gradients,
            hessians,
        })
    }

    /// Values only, valid on the closed element (including facets and vertices).
    pub fn values(&self, x: &Point) -> Result<Vec<f64>> {
        let tol = 1e-10 * self.diameter;
        let mut h = Vec::with_capacity(self.facets.len());
        for f in 0..self.facets.len() {
            let d = self.distance(f, x);
            if d < -tol {
                return Err(Error::QueryOutside {
                    facet: f,
                    distance: d,
                });
            }
            h.push(d.max(0.0) / self.diameter);
        }
        let mut w: Vec<f64> = self
            .vertex_facets
            .iter()
            .zip(&self.dets)
            .map(|(fs, d)| {
                (0..h.len())
                    .filter(|f| !fs.contains(f))
                    .fold(*d, |acc, f| acc * h[f])
            })
            .collect();
        let s: f64 = w.iter().sum();
        if s == 0.0 {
            return Err(Error::DegenerateFacet {
                facet: 0,
                reason: "all Wachspress weights vanish".into(),
            });
        }
        w.iter_mut().for_each(|v| *v /= s);
        Ok(w)
    }
}

/// Wachspress basis of a polygonal element at an interior point.
pub fn wachspress_2d(mesh: &PolytopeMesh, element: usize, x: &Point) -> Result<BasisEval> {
    if mesh.dim != Dim::Two {
        return Err(Error::InvalidInput("wachspress_2d needs a 2D mesh".into()));
    }
    Wachspress::new(mesh, element)?.evaluate(x)
}

/// Wachspress basis of a polyhedral element at an interior point.
pub fn wachspress_3d(mesh: &PolytopeMesh, element: usize, x: &Point) -> Result<BasisEval> {
    if mesh.dim != Dim::Three {
        return Err(Error::InvalidInput("wachspress_3d needs a 3D mesh".into()));
    }
    Wachspress::new(mesh, element)?.evaluate(x)
}
