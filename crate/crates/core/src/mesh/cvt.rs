//! Clipped centroidal Voronoi meshes of boxes and L-shaped domains.
//!
//! Cells are built by clipping the bounding box with the bisector half-spaces
//! of nearby seeds (closest first, stopping once the remaining seeds are
//! farther than twice the cell radius). L-shaped domains are meshed by
//! relaxing seeds in the corner square and mirroring the resulting cells
//! across the two interior faces, which keeps every element convex and the
//! mesh conforming along the mirror planes.

use std::collections::HashMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::clip::{ConvexPolygon, ConvexPolyhedron};
use super::{Polytope, PolytopeMesh};
use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};

#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Rectangle {
        min: [f64; 2],
        max: [f64; 2],
    },
    Cuboid {
        min: [f64; 3],
        max: [f64; 3],
    },
    /// `[0, 2a]^2` without `[0, a)^2`.
    LShape2 {
        a: f64,
    },
    /// The planar L-shape extruded over `z in [0, thickness]`.
    LShape3 {
        a: f64,
        thickness: f64,
    },
}

impl Domain {
    pub fn unit_square() -> Self {
        Domain::Rectangle {
            min: [0.0; 2],
            max: [1.0; 2],
        }
    }

    pub fn unit_cube() -> Self {
        Domain::Cuboid {
            min: [0.0; 3],
            max: [1.0; 3],
        }
    }

    pub fn dim(&self) -> Dim {
        match self {
            Domain::Rectangle { .. } | Domain::LShape2 { .. } => Dim::Two,
            Domain::Cuboid { .. } | Domain::LShape3 { .. } => Dim::Three,
        }
    }

    pub fn measure(&self) -> f64 {
        match self {
            Domain::Rectangle { min, max } => (max[0] - min[0]) * (max[1] - min[1]),
            Domain::Cuboid { min, max } => {
                (max[0] - min[0]) * (max[1] - min[1]) * (max[2] - min[2])
            }
            Domain::LShape2 { a } => 3.0 * a * a,
            Domain::LShape3 { a, thickness } => 3.0 * a * a * thickness,
        }
    }

    fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        match self {
            Domain::Rectangle { min, max } => ([min[0], min[1], 0.0], [max[0], max[1], 0.0]),
            Domain::Cuboid { min, max } => (*min, *max),
            Domain::LShape2 { a } => ([0.0; 3], [2.0 * a, 2.0 * a, 0.0]),
            Domain::LShape3 { a, thickness } => ([0.0; 3], [2.0 * a, 2.0 * a, *thickness]),
        }
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounds();
        Point::new(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]).norm()
    }

    /// Box in which seeds live and Lloyd relaxation runs.
    fn seed_box(&self) -> ([f64; 3], [f64; 3]) {
        match self {
            Domain::LShape2 { a } => ([*a, *a, 0.0], [2.0 * a, 2.0 * a, 0.0]),
            Domain::LShape3 { a, thickness } => ([*a, *a, 0.0], [2.0 * a, 2.0 * a, *thickness]),
            _ => self.bounds(),
        }
    }

    fn is_lshape(&self) -> bool {
        matches!(self, Domain::LShape2 { .. } | Domain::LShape3 { .. })
    }

    /// Boundary tag for a facet with the given centroid and outward normal.
    pub fn classify(&self, c: &Point, n: &Point) -> Option<String> {
        let tol = 1e-8 * self.diameter();
        let on = |v: f64, target: f64| (v - target).abs() <= tol;
        let along = |axis: usize, sign: f64| (n[axis] - sign).abs() < 1e-6;
        let (lo, hi) = self.bounds();
        let dims = self.dim().n();
        let names = ["x", "y", "z"];
        if self.is_lshape() {
            let a = match self {
                Domain::LShape2 { a } | Domain::LShape3 { a, .. } => *a,
                _ => unreachable!(),
            };
            if on(c.x, a) && along(0, -1.0) && c.y <= a + tol {
                return Some("inner_x".into());
            }
            if on(c.y, a) && along(1, -1.0) && c.x <= a + tol {
                return Some("inner_y".into());
            }
        }
        for k in 0..dims {
            if on(c[k], lo[k]) && along(k, -1.0) {
                return Some(format!("{}min", names[k]));
            }
            if on(c[k], hi[k]) && along(k, 1.0) {
                return Some(format!("{}max", names[k]));
            }
        }
        None
    }
}

fn random_seeds(domain: &Domain, n: usize, rng_seed: u64) -> Vec<Point> {
    let (lo, hi) = domain.seed_box();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..n)
        .map(|_| {
            let mut p = Point::zeros();
            for k in 0..domain.dim().n() {
                p[k] = lo[k] + (hi[k] - lo[k]) * rng.random::<f64>();
            }
            p
        })
        .collect()
}

/// Seeds sorted by distance from seed `i` (excluding `i`), with the distances.
fn neighbours_by_distance(seeds: &[Point], i: usize) -> Vec<(f64, usize)> {
    let mut others: Vec<(f64, usize)> = seeds
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(j, s)| ((s - seeds[i]).norm(), j))
        .collect();
    others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    others
}

fn check_collisions(seeds: &[Point], scale: f64) -> Result<()> {
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            let distance = (seeds[i] - seeds[j]).norm();
            if distance <= 1e-10 * scale {
                return Err(Error::SeedCollision {
                    first: i,
                    second: j,
                    distance,
                });
            }
        }
    }
    Ok(())
}

enum Cells {
    Planar(Vec<ConvexPolygon>),
    Solid(Vec<ConvexPolyhedron>),
}

fn voronoi_cells(domain: &Domain, seeds: &[Point]) -> Result<Cells> {
    let (lo, hi) = domain.seed_box();
    let scale = domain.diameter();
    check_collisions(seeds, scale)?;
    let eps = 1e-12 * scale;
    let bisector = |i: usize, j: usize, d: f64| {
        let n = (seeds[j] - seeds[i]) / d;
        let offset = n.dot(&(0.5 * (seeds[i] + seeds[j])));
        (n, offset)
    };
    match domain.dim() {
        Dim::Two => {
            let rect = ConvexPolygon::rectangle([lo[0], lo[1]], [hi[0], hi[1]]);
            let mut cells = Vec::with_capacity(seeds.len());
            for i in 0..seeds.len() {
                let mut cell = rect.clone();
                for (d, j) in neighbours_by_distance(seeds, i) {
                    if 0.5 * d > cell.max_distance(&seeds[i]) + eps {
                        break;
                    }
                    let (n, off) = bisector(i, j, d);
                    cell.clip(&n, off, eps);
                }
                cells.push(cell);
            }
            Ok(Cells::Planar(cells))
        }
        Dim::Three => {
            let cube = ConvexPolyhedron::cuboid(lo, hi);
            let mut cells = Vec::with_capacity(seeds.len());
            for i in 0..seeds.len() {
                let mut cell = cube.clone();
                for (d, j) in neighbours_by_distance(seeds, i) {
                    if 0.5 * d > cell.max_distance(&seeds[i]) + eps {
                        break;
                    }
                    let (n, off) = bisector(i, j, d);
                    cell.clip(&n, off, eps);
                }
                if cell.is_empty() {
                    return Err(Error::InvalidMesh(format!(
                        "Voronoi cell of seed {i} is empty"
                    )));
                }
                cells.push(cell);
            }
            Ok(Cells::Solid(cells))
        }
    }
}

/// CVT energy `sum_i integral_{cell i} |x - seed_i|^2` of the clipped Voronoi diagram.
pub fn cvt_energy(domain: &Domain, seeds: &[Point]) -> Result<f64> {
    let cells = voronoi_cells(domain, seeds)?;
    let per_cell = |(v, c, s): (f64, Point, nalgebra::Matrix3<f64>), seed: &Point| {
        s.trace() + v * (c - seed).norm_squared()
    };
    Ok(match cells {
        Cells::Planar(cs) => cs
            .iter()
            .zip(seeds)
            .map(|(c, s)| per_cell(c.moments(), s))
            .sum(),
        Cells::Solid(cs) => cs
            .iter()
            .zip(seeds)
            .map(|(c, s)| per_cell(c.moments(), s))
            .sum(),
    })
}

/// One Lloyd sweep: move every seed to the centroid of its clipped cell.
pub fn lloyd_sweep(domain: &Domain, seeds: &[Point]) -> Result<Vec<Point>> {
    Ok(match voronoi_cells(domain, seeds)? {
        Cells::Planar(cs) => cs.iter().map(|c| c.moments().1).collect(),
        Cells::Solid(cs) => cs.iter().map(|c| c.moments().1).collect(),
    })
}

/// Generate a clipped Voronoi mesh from `n_seeds` random seeds after
/// `lloyd_iterations` relaxation sweeps. For L-shaped domains the seeds are
/// placed in the corner square and the mesh has about `n_seeds` elements
/// (three mirrored copies of `round(n_seeds / 3)` cells).
pub fn generate_cvt_mesh(
    domain: &Domain,
    n_seeds: usize,
    lloyd_iterations: usize,
    rng_seed: u64,
) -> Result<PolytopeMesh> {
    if n_seeds == 0 {
        return Err(Error::InvalidInput("at least one seed is required".into()));
    }
    if domain.measure() <= 0.0 {
        return Err(Error::InvalidInput(
            "domain measure must be positive".into(),
        ));
    }
    let n = if domain.is_lshape() {
        ((n_seeds as f64 / 3.0).round() as usize).max(1)
    } else {
        n_seeds
    };
    let seeds = random_seeds(domain, n, rng_seed);
    generate_cvt_mesh_from_seeds(domain, seeds, lloyd_iterations)
}

/// As [`generate_cvt_mesh`], from explicit seeds (in the corner square for L-shapes).
pub fn generate_cvt_mesh_from_seeds(
    domain: &Domain,
    mut seeds: Vec<Point>,
    lloyd_iterations: usize,
) -> Result<PolytopeMesh> {
    for _ in 0..lloyd_iterations {
        seeds = lloyd_sweep(domain, &seeds)?;
    }
    let cells = voronoi_cells(domain, &seeds)?;
    let mut mesh = build_mesh(domain, cells)?;
    for e in 0..mesh.n_elements() {
        let c = crate::geometry::vertex_mean(&mesh.element_coords(e));
        if !super::is_star_convex(&mesh, e, &c) {
            return Err(Error::NotStarConvex { element: e });
        }
    }
    mesh.tag_boundary(|c, n| domain.classify(c, n))?;
    Ok(mesh)
}

/// Merges coincident points within a tolerance using a uniform hash grid.
struct NodeMerger {
    tol: f64,
    grid: HashMap<[i64; 3], Vec<usize>>,
    nodes: Vec<Point>,
}

impl NodeMerger {
    fn new(tol: f64) -> Self {
        NodeMerger {
            tol,
            grid: HashMap::new(),
            nodes: Vec::new(),
        }
    }

    fn key(&self, p: &Point) -> [i64; 3] {
        [
            (p.x / self.tol).floor() as i64,
            (p.y / self.tol).floor() as i64,
            (p.z / self.tol).floor() as i64,
        ]
    }

    fn insert(&mut self, p: &Point) -> usize {
        let k = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.grid.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) {
                        for &id in ids {
                            if (self.nodes[id] - p).norm() <= self.tol {
                                return id;
                            }
                        }
                    }
                }
            }
        }
        let id = self.nodes.len();
        self.nodes.push(*p);
        self.grid.entry(k).or_default().push(id);
        id
    }

    fn insert_loop(&mut self, pts: &[Point]) -> Vec<usize> {
        let mut ids: Vec<usize> = Vec::with_capacity(pts.len());
        for p in pts {
            let id = self.insert(p);
            if ids.last() != Some(&id) {
                ids.push(id);
            }
        }
        while ids.len() > 1 && ids[0] == ids[ids.len() - 1] {
            ids.pop();
        }
        ids
    }
}

fn mirror(p: &Point, axis: usize, plane: f64) -> Point {
    let mut q = *p;
    q[axis] = 2.0 * plane - q[axis];
    q
}

fn build_mesh(domain: &Domain, cells: Cells) -> Result<PolytopeMesh> {
    let mut merger = NodeMerger::new(1e-9 * domain.diameter());
    let mirrors: Vec<Option<(usize, f64)>> = match domain {
        Domain::LShape2 { a } | Domain::LShape3 { a, .. } => {
            vec![None, Some((1, *a)), Some((0, *a))]
        }
        _ => vec![None],
    };
    let mut elements = Vec::new();
    match cells {
        Cells::Planar(cs) => {
            for m in &mirrors {
                for c in &cs {
                    let mut pts: Vec<Point> = match m {
                        None => c.points.clone(),
                        Some((axis, plane)) => {
                            c.points.iter().map(|p| mirror(p, *axis, *plane)).collect()
                        }
                    };
                    if m.is_some() {
                        pts.reverse();
                    }
                    let ids = merger.insert_loop(&pts);
                    if ids.len() < 3 {
                        return Err(Error::InvalidMesh("collapsed Voronoi cell".into()));
                    }
                    elements.push(Polytope::Polygon(ids));
                }
            }
            Ok(PolytopeMesh::new(Dim::Two, merger.nodes, elements))
        }
        Cells::Solid(cs) => {
            for m in &mirrors {
                for c in &cs {
                    let mut faces = Vec::with_capacity(c.faces.len());
                    for f in &c.faces {
                        let mut pts: Vec<Point> = match m {
                            None => f.clone(),
                            Some((axis, plane)) => {
                                f.iter().map(|p| mirror(p, *axis, *plane)).collect()
                            }
                        };
                        if m.is_some() {
                            pts.reverse();
                        }
                        let ids = merger.insert_loop(&pts);
                        if ids.len() >= 3 {
                            faces.push(ids);
                        }
                    }
                    elements.push(Polytope::polyhedron(faces));
                }
            }
            Ok(PolytopeMesh::new(Dim::Three, merger.nodes, elements))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_seed_gives_the_whole_square() {
        let m = generate_cvt_mesh(&Domain::unit_square(), 1, 0, 3).unwrap();
        assert_eq!(m.n_elements(), 1);
        assert_eq!(m.elements[0].vertices().len(), 4);
        assert!((m.measure() - 1.0).abs() < 1e-15);
        assert_eq!(m.boundary.len(), 4);
    }

    #[test]
    fn quadrant_seeds_give_four_squares() {
        let seeds = vec![
            Point::new(0.25, 0.25, 0.0),
            Point::new(0.75, 0.25, 0.0),
            Point::new(0.25, 0.75, 0.0),
            Point::new(0.75, 0.75, 0.0),
        ];
        let m = generate_cvt_mesh_from_seeds(&Domain::unit_square(), seeds, 0).unwrap();
        assert_eq!(m.n_elements(), 4);
        assert_eq!(m.n_nodes(), 9);
        for e in 0..4 {
            assert_eq!(m.elements[e].vertices().len(), 4);
            assert!((m.element_measure(e) - 0.25).abs() < 1e-15);
        }
        m.validate().unwrap();
    }

    #[test]
    fn relaxed_mesh_tiles_the_square() {
        let m = generate_cvt_mesh(&Domain::unit_square(), 10, 50, 7).unwrap();
        assert_eq!(m.n_elements(), 10);
        m.validate().unwrap();
        assert!((m.measure() - 1.0).abs() < 1e-12);
        let tags: std::collections::BTreeSet<_> =
            m.boundary.iter().map(|b| b.tag.as_str()).collect();
        assert_eq!(
            tags.into_iter().collect::<Vec<_>>(),
            vec!["xmax", "xmin", "ymax", "ymin"]
        );
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_cvt_mesh(&Domain::unit_square(), 30, 10, 11).unwrap();
        let b = generate_cvt_mesh(&Domain::unit_square(), 30, 10, 11).unwrap();
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.elements, b.elements);
        let c = generate_cvt_mesh(&Domain::unit_square(), 30, 10, 12).unwrap();
        assert_ne!(a.nodes, c.nodes);
    }

    #[test]
    fn lloyd_energy_is_monotone() {
        for domain in [Domain::unit_square(), Domain::unit_cube()] {
            let mut seeds = random_seeds(&domain, 25, 5);
            let mut prev = cvt_energy(&domain, &seeds).unwrap();
            for _ in 0..8 {
                seeds = lloyd_sweep(&domain, &seeds).unwrap();
                let e = cvt_energy(&domain, &seeds).unwrap();
                assert!(e <= prev * (1.0 + 1e-10), "{e} > {prev}");
                prev = e;
            }
        }
    }

    #[test]
    fn colliding_seeds_are_reported() {
        let seeds = vec![
            Point::new(0.3, 0.3, 0.0),
            Point::new(0.7, 0.2, 0.0),
            Point::new(0.3, 0.3, 0.0),
        ];
        match generate_cvt_mesh_from_seeds(&Domain::unit_square(), seeds, 0) {
            Err(Error::SeedCollision { first, second, .. }) => assert_eq!((first, second), (0, 2)),
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn cube_mesh_is_valid_and_conforming() {
        let m = generate_cvt_mesh(&Domain::unit_cube(), 40, 20, 1).unwrap();
        m.validate().unwrap();
        m.check_tiling(1.0).unwrap();
        assert_eq!(m.n_elements(), 40);
    }

    #[test]
    fn lshape_meshes_are_conforming() {
        let m = generate_cvt_mesh(&Domain::LShape2 { a: 1.0 }, 30, 20, 2).unwrap();
        assert_eq!(m.n_elements(), 30);
        m.validate().unwrap();
        m.check_tiling(3.0).unwrap();
        assert!(m.boundary.iter().any(|b| b.tag == "inner_x"));
        assert!(m.boundary.iter().any(|b| b.tag == "inner_y"));

        let m = generate_cvt_mesh(
            &Domain::LShape3 {
                a: 1.0,
                thickness: 1.0,
            },
            30,
            10,
            2,
        )
        .unwrap();
        m.validate().unwrap();
        m.check_tiling(3.0).unwrap();
    }
}
