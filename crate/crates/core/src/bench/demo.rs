use nalgebra::Matrix3;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{Dim, Point};
use crate::mesh::{Polytope, PolytopeMesh};
use crate::smoothing::{integrate_dense, integrate_function, Hessian};

/// One row of the quadrature comparison table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrationRow {
    pub shape: String,
    pub function: String,
    pub ls1: f64,
    pub oracle: f64,
    /// Relative error, or absolute when the oracle value is zero.
    pub rel_error: f64,
    pub ls1_points: usize,
    pub dense_points: usize,
}

pub struct TestFunction {
    pub name: &'static str,
    pub f: fn(&Point) -> f64,
    pub hessian: fn(&Point) -> Matrix3<f64>,
}

pub fn functions_2d() -> Vec<TestFunction> {
    vec![
        TestFunction {
            name: "1",
            f: |_| 1.0,
            hessian: |_| Matrix3::zeros(),
        },
        TestFunction {
            name: "x",
            f: |x| x.x,
            hessian: |_| Matrix3::zeros(),
        },
        TestFunction {
            name: "x^2",
            f: |x| x.x * x.x,
            hessian: |_| Matrix3::new(2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        },
        TestFunction {
            name: "xy",
            f: |x| x.x * x.y,
            hessian: |_| Matrix3::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        },
    ]
}

pub fn functions_3d() -> Vec<TestFunction> {
    vec![
        TestFunction {
            name: "1",
            f: |_| 1.0,
            hessian: |_| Matrix3::zeros(),
        },
        TestFunction {
            name: "x^2+y^2+xy+z^2",
            f: |x| x.x * x.x + x.y * x.y + x.x * x.y + x.z * x.z,
            hessian: |_| Matrix3::new(2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 2.0),
        },
    ]
}

fn polygon(pts: &[[f64; 2]]) -> PolytopeMesh {
    let nodes = pts.iter().map(|p| Point::new(p[0], p[1], 0.0)).collect();
    PolytopeMesh::new(
        Dim::Two,
        nodes,
        vec![Polytope::Polygon((0..pts.len()).collect())],
    )
}

/// Hexahedron from bottom and top quadrilaterals, both counter-clockwise seen from above.
pub fn hexahedron(corners: [[f64; 3]; 8]) -> PolytopeMesh {
    let nodes = corners
        .iter()
        .map(|c| Point::new(c[0], c[1], c[2]))
        .collect();
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    PolytopeMesh::new(Dim::Three, nodes, vec![Polytope::polyhedron(faces)])
}

/// Built-in shapes: an irregular pentagon, hexagon and heptagon and a
/// frustum-like hexahedron.
pub fn demo_shapes() -> Vec<(String, PolytopeMesh)> {
    vec![
        (
            "pentagon".into(),
            polygon(&[[0.1, 0.0], [1.3, 0.2], [1.6, 1.1], [0.7, 1.7], [-0.2, 0.9]]),
        ),
        (
            "hexagon".into(),
            polygon(&[
                [0.0, 0.0],
                [1.0, -0.2],
                [2.1, 0.4],
                [2.3, 1.5],
                [1.1, 2.2],
                [-0.3, 1.2],
            ]),
        ),
        (
            "heptagon".into(),
            polygon(&[
                [1.0, 0.0],
                [2.2, 0.3],
                [3.0, 1.2],
                [2.9, 2.4],
                [1.8, 3.1],
                [0.4, 2.6],
                [0.0, 1.2],
            ]),
        ),
        (
            "hexahedron".into(),
            hexahedron([
                [0.0, 0.0, 0.0],
                [2.0, 0.0, 0.0],
                [2.0, 2.0, 0.0],
                [0.0, 2.0, 0.0],
                [0.4, 0.6, 1.0],
                [1.4, 0.6, 1.0],
                [1.4, 1.6, 1.0],
                [0.4, 1.6, 1.0],
            ]),
        ),
    ]
}

/// Compare the one-point-per-subcell rule against a degree-4 Gauss rule on
/// the simplex subdivision, for every element of every shape.
pub fn run_integration_demo(shapes: &[(String, PolytopeMesh)]) -> Result<Vec<IntegrationRow>> {
    let mut rows = Vec::new();
    for (name, mesh) in shapes {
        let funcs = match mesh.dim {
            Dim::Two => functions_2d(),
            Dim::Three => functions_3d(),
        };
        for tf in &funcs {
            let (mut ls1, mut oracle, mut np, mut nd) = (0.0, 0.0, 0, 0);
            for e in 0..mesh.n_elements() {
                let (v, n) = integrate_function(mesh, e, &tf.f, Hessian::Exact(&tf.hessian))?;
                let (o, m) = integrate_dense(mesh, e, &tf.f, 4)?;
                ls1 += v;
                oracle += o;
                np += n;
                nd += m;
            }
            let diff = (ls1 - oracle).abs();
            rows.push(IntegrationRow {
                shape: name.clone(),
                function: tf.name.to_string(),
                ls1,
                oracle,
                rel_error: if oracle != 0.0 {
                    diff / oracle.abs()
                } else {
                    diff
                },
                ls1_points: np,
                dense_points: nd,
            });
        }
    }
    Ok(rows)
}

pub fn integration_table_csv(rows: &[IntegrationRow]) -> String {
    let mut s = String::from("shape,function,ls1,oracle,rel_error,ls1_points,dense_points\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{:.16e},{:.16e},{:.3e},{},{}\n",
            r.shape, r.function, r.ls1, r.oracle, r.rel_error, r.ls1_points, r.dense_points
        ));
    }
    s
}
