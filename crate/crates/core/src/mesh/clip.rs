//! Half-space clipping of convex polygons and polyhedra (Voronoi cell construction).

use nalgebra::Matrix3;

use crate::geometry::{self, Point};

#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    /// Counter-clockwise loop in the xy plane.
    pub points: Vec<Point>,
}

impl ConvexPolygon {
    pub fn rectangle(min: [f64; 2], max: [f64; 2]) -> Self {
        ConvexPolygon {
            points: vec![
                Point::new(min[0], min[1], 0.0),
                Point::new(max[0], min[1], 0.0),
                Point::new(max[0], max[1], 0.0),
                Point::new(min[0], max[1], 0.0),
            ],
        }
    }

    /// Keep the part with `normal . x <= offset`. Vertices within `eps` of the
    /// line are treated as lying on it. Returns false if nothing was removed.
    pub fn clip(&mut self, normal: &Point, offset: f64, eps: f64) -> bool {
        let d: Vec<f64> = self.points.iter().map(|p| normal.dot(p) - offset).collect();
        if d.iter().all(|&v| v <= eps) {
            return false;
        }
        let n = self.points.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (&self.points[i], &self.points[j]);
            if d[i] <= eps {
                out.push(*a);
            }
            if (d[i] < -eps && d[j] > eps) || (d[i] > eps && d[j] < -eps) {
                out.push(a + (b - a) * (d[i] / (d[i] - d[j])));
            }
        }
        self.points = dedup_loop(out, eps);
        true
    }

    pub fn area(&self) -> f64 {
        geometry::signed_area_xy(&self.points)
    }

    /// Area, centroid, and second moments about the centroid.
    pub fn moments(&self) -> (f64, Point, Matrix3<f64>) {
        fan_moments(
            &geometry::vertex_mean(&self.points),
            self.points
                .iter()
                .zip(self.points.iter().cycle().skip(1))
                .map(|(a, b)| vec![*a, *b]),
        )
    }

    pub fn max_distance(&self, from: &Point) -> f64 {
        self.points
            .iter()
            .map(|p| (p - from).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct ConvexPolyhedron {
    /// Outward-oriented face loops.
    pub faces: Vec<Vec<Point>>,
}

impl ConvexPolyhedron {
    pub fn cuboid(min: [f64; 3], max: [f64; 3]) -> Self {
        let c = |i: usize| {
            Point::new(
                if i & 1 == 0 { min[0] } else { max[0] },
                if i & 2 == 0 { min[1] } else { max[1] },
                if i & 4 == 0 { min[2] } else { max[2] },
            )
        };
        let loops = [
            [0, 2, 3, 1], // z min
            [4, 5, 7, 6], // z max
            [0, 1, 5, 4], // y min
            [2, 6, 7, 3], // y max
            [0, 4, 6, 2], // x min
            [1, 3, 7, 5], // x max
        ];
        ConvexPolyhedron {
            faces: loops
                .iter()
                .map(|l| l.iter().map(|&i| c(i)).collect())
                .collect(),
        }
    }

    /// Keep the part with `normal . x <= offset`; adds the cap face.
    pub fn clip(&mut self, normal: &Point, offset: f64, eps: f64) -> bool {
        let dist = |p: &Point| normal.dot(p) - offset;
        if self.faces.iter().flatten().all(|p| dist(p) <= eps) {
            return false;
        }
        let mut faces = Vec::with_capacity(self.faces.len() + 1);
        let mut cap = Vec::new();
        let mut coincident = false;
        for f in &self.faces {
            let d: Vec<f64> = f.iter().map(dist).collect();
            if d.iter().all(|v| v.abs() <= eps) {
                coincident = true;
            }
            let n = f.len();
            let mut out = Vec::with_capacity(n + 1);
            for i in 0..n {
                let j = (i + 1) % n;
                if d[i] <= eps {
                    out.push(f[i]);
                    if d[i] >= -eps {
                        cap.push(f[i]);
                    }
                }
                if (d[i] < -eps && d[j] > eps) || (d[i] > eps && d[j] < -eps) {
                    let p = f[i] + (f[j] - f[i]) * (d[i] / (d[i] - d[j]));
                    out.push(p);
                    cap.push(p);
                }
            }
            let out = dedup_loop(out, eps);
            if out.len() >= 3 && geometry::area_vector(&out).norm() > eps * eps {
                faces.push(out);
            }
        }
        if !coincident {
            let cap = order_cap(dedup_points(cap, eps), normal);
            if cap.len() >= 3 {
                faces.push(cap);
            }
        }
        self.faces = faces;
        true
    }

    pub fn is_empty(&self) -> bool {
        self.faces.len() < 4
    }

    pub fn vertex_mean(&self) -> Point {
        let pts: Vec<Point> = self.faces.iter().flatten().cloned().collect();
        geometry::vertex_mean(&pts)
    }

    pub fn max_distance(&self, from: &Point) -> f64 {
        self.faces
            .iter()
            .flatten()
            .map(|p| (p - from).norm())
            .fold(0.0, f64::max)
    }

    /// Volume, centroid, and second moments about the centroid.
    pub fn moments(&self) -> (f64, Point, Matrix3<f64>) {
        let apex = self.vertex_mean();
        let tris = self.faces.iter().flat_map(|f| {
            let fc = geometry::vertex_mean(f);
            (0..f.len())
                .map(move |k| vec![fc, f[k], f[(k + 1) % f.len()]])
                .collect::<Vec<_>>()
        });
        fan_moments(&apex, tris)
    }
}

/// Accumulate moments of simplices `(apex, facet...)` with signed measures.
fn fan_moments<I>(apex: &Point, facets: I) -> (f64, Point, Matrix3<f64>)
where
    I: Iterator<Item = Vec<Point>>,
{
    let mut vol = 0.0;
    let mut first = Point::zeros();
    let mut second = Matrix3::zeros();
    for f in facets {
        let mut s = vec![*apex];
        s.extend(f);
        let d = s.len() - 1;
        let m = if d == 2 {
            geometry::tri_signed_area_xy(&s[0], &s[1], &s[2])
        } else {
            geometry::tet_signed_volume(&s[0], &s[1], &s[2], &s[3])
        };
        let c = geometry::vertex_mean(&s);
        // raw second moment about the origin: m/((d+1)(d+2)) (sum v v^T + (sum v)(sum v)^T)
        let mut raw = Matrix3::zeros();
        let mut sum = Point::zeros();
        for v in &s {
            raw += v * v.transpose();
            sum += v;
        }
        raw += sum * sum.transpose();
        vol += m;
        first += m * c;
        second += raw * (m / ((d + 1) * (d + 2)) as f64);
    }
    let centroid = first / vol;
    let central = second - vol * centroid * centroid.transpose();
    (vol, centroid, central)
}

fn dedup_loop(pts: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last().is_none_or(|q| (p - q).norm() > eps) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= eps {
        out.pop();
    }
    out
}

fn dedup_points(pts: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.iter().all(|q| (p - q).norm() > eps) {
            out.push(p);
        }
    }
    out
}

/// Order coplanar points counter-clockwise about `normal`.
fn order_cap(mut pts: Vec<Point>, normal: &Point) -> Vec<Point> {
    if pts.len() < 3 {
        return pts;
    }
    let c = geometry::vertex_mean(&pts);
    let helper = if normal.x.abs() < 0.9 {
        Point::x()
    } else {
        Point::y()
    };
    let u = normal.cross(&helper).normalize();
    let v = normal.cross(&u);
    pts.sort_by(|a, b| {
        let ta = (a - c).dot(&v).atan2((a - c).dot(&u));
        let tb = (b - c).dot(&v).atan2((b - c).dot(&u));
        ta.total_cmp(&tb)
    });
    pts
}
