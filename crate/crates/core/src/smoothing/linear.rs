//! One-point linear smoothing.
//!
//! On each subcell the smoothed derivative `phi~_{I,j}` is linear. Testing the
//! smoothing relation with `q = (1, x, y[, z])` gives `W d_j = f_j` for
//! `d_j = (phi~_{I,j}(x_c), grad phi~_{I,j})`; the domain term `int phi_I` is
//! replaced by its second-moment expansion about the centroid.

use nalgebra::{DMatrix, DVector, Matrix3};

use super::{
    boundary_points, q_vector, strain_displacement, taylor_weight, BoundaryPoint, ElementData,
    ElementMatrix, GramAccumulator, Material, SmoothingOptions,
};
use crate::basis::{BasisEval, Wachspress};
use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};
use crate::mesh::SmoothingCell;

fn cell_dim(cell: &SmoothingCell) -> Dim {
    if cell.dim() == 2 {
        Dim::Two
    } else {
        Dim::Three
    }
}

/// Moment matrix of the linear smoothing system.
pub fn assemble_w(cell: &SmoothingCell) -> Result<DMatrix<f64>> {
    let d = cell.dim();
    let a = cell.measure;
    let mut w = DMatrix::zeros(d + 1, d + 1);
    w[(0, 0)] = a;
    for k in 0..d {
        w[(k + 1, 0)] = a * cell.centroid[k];
        for l in 0..d {
            w[(k + 1, l + 1)] = cell.second_moments[(k, l)];
        }
    }
    // conditioning of the dimensionless system tested with q = (1, x - x_c)
    let h = cell.diameter();
    let mut s = DMatrix::identity(d + 1, d + 1);
    for k in 0..d {
        for l in 0..d {
            s[(k + 1, l + 1)] = cell.second_moments[(k, l)] / (a * h * h);
        }
    }
    let sv = s.singular_values();
    let condition = sv.max() / sv.min();
    if !condition.is_finite() || condition > 1e12 {
        return Err(Error::IllConditionedCell { condition });
    }
    Ok(w)
}

fn load_matrix(
    cell: &SmoothingCell,
    dim: Dim,
    centroid: &BasisEval,
    bpts: &[BoundaryPoint],
    origin: &Point,
) -> DMatrix<f64> {
    let d = dim.n();
    let n = centroid.values.len();
    let mut f = DMatrix::zeros(d + 1, n * d);
    for p in bpts {
        let q = q_vector(&(p.x - origin), dim);
        for (i, phi) in p.phi.iter().enumerate() {
            for j in 0..d {
                let s = p.weight * phi * p.normal[j];
                for (k, qk) in q.iter().enumerate() {
                    f[(k, i * d + j)] += s * qk;
                }
            }
        }
    }
    for i in 0..n {
        let fg = taylor_weight(cell, centroid.values[i], &centroid.hessians[i], dim);
        for j in 0..d {
            f[(j + 1, i * d + j)] -= fg;
        }
    }
    f
}

/// Right-hand side of the smoothing system for one node and direction.
pub fn assemble_f(
    cell: &SmoothingCell,
    basis: &Wachspress,
    node: usize,
    direction: usize,
    opts: &SmoothingOptions,
) -> Result<DVector<f64>> {
    let dim = cell_dim(cell);
    if node >= basis.n_vertices() {
        return Err(Error::MissingBasis(format!(
            "node {node} of an element with {} nodes",
            basis.n_vertices()
        )));
    }
    if direction >= dim.n() {
        return Err(Error::InvalidInput(format!(
            "direction {direction} in {}D",
            dim.n()
        )));
    }
    let centroid = basis.evaluate(&cell.centroid)?;
    let bpts = boundary_points(cell, basis, opts)?;
    let f = load_matrix(cell, dim, &centroid, &bpts, &Point::zeros());
    Ok(f.column(node * dim.n() + direction).into_owned())
}

/// Smoothed first derivatives at a subcell centroid and their gradients.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothedBasis {
    /// `first[I][j] = phi~_{I,j}(x_c)`.
    pub first: Vec<Point>,
    /// `second[I][(j, k)] = d/dx_k phi~_{I,j}`.
    pub second: Vec<Matrix3<f64>>,
}

impl SmoothedBasis {
    /// The solution vector `d_j` for node `I`.
    pub fn d_vector(&self, node: usize, j: usize, dim: Dim) -> Vec<f64> {
        let mut v = vec![self.first[node][j]];
        v.extend((0..dim.n()).map(|k| self.second[node][(j, k)]));
        v
    }
}

fn solve_cell(
    cell: &SmoothingCell,
    dim: Dim,
    centroid: &BasisEval,
    bpts: &[BoundaryPoint],
) -> Result<SmoothedBasis> {
    let d = dim.n();
    let mut w = assemble_w(cell)?;
    // test with q = (1, x - x_c): same solution, no centroid coupling
    for k in 0..d {
        w[(k + 1, 0)] = 0.0;
    }
    let f = load_matrix(cell, dim, centroid, bpts, &cell.centroid);
    let sol = w.lu().solve(&f).ok_or(Error::IllConditionedCell {
        condition: f64::INFINITY,
    })?;
    let n = centroid.values.len();
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    for i in 0..n {
        let mut g = Point::zeros();
        let mut h = Matrix3::zeros();
        for j in 0..d {
            let col = i * d + j;
            g[j] = sol[(0, col)];
            for k in 0..d {
                h[(j, k)] = sol[(k + 1, col)];
            }
        }
        first.push(g);
        second.push(h);
    }
    Ok(SmoothedBasis { first, second })
}

/// Solve `W d_j = f_j` for every node and direction with one factorisation of `W`.
pub fn smoothed_basis(
    cell: &SmoothingCell,
    basis: &Wachspress,
    opts: &SmoothingOptions,
) -> Result<SmoothedBasis> {
    let centroid = basis.evaluate(&cell.centroid)?;
    let bpts = boundary_points(cell, basis, opts)?;
    solve_cell(cell, cell_dim(cell), &centroid, &bpts)
}

/// Modified strain-displacement matrix at a subcell centroid and its derivatives.
#[derive(Clone, Debug)]
pub struct ModifiedB {
    pub b: DMatrix<f64>,
    /// `db[k] = d B~ / d x_k`.
    pub db: Vec<DMatrix<f64>>,
}

impl ModifiedB {
    pub fn new(dim: Dim, sb: &SmoothedBasis) -> Self {
        let b = strain_displacement(dim, &sb.first);
        let db = (0..dim.n())
            .map(|k| {
                let g: Vec<Point> = sb.second.iter().map(|h| h.column(k).into_owned()).collect();
                strain_displacement(dim, &g)
            })
            .collect();
        ModifiedB { b, db }
    }
}

/// LS1 element stiffness: per subcell
/// `A B~^T C B~ + sum_kl I_kl (d_k B~)^T C (d_l B~)`.
pub fn element_stiffness_ls1(
    data: &ElementData,
    material: &Material,
    opts: &SmoothingOptions,
) -> Result<ElementMatrix> {
    let dim = data.dim;
    let d = dim.n();
    let mut gram = GramAccumulator::new(material, dim, data.n_dofs())?;
    let mut interior_points = 0;
    for cell in &data.cells {
        let centroid = data.basis.evaluate(&cell.centroid)?;
        interior_points += 1;
        let bpts = boundary_points(cell, &data.basis, opts)?;
        let sb = solve_cell(cell, dim, &centroid, &bpts)?;
        let mb = ModifiedB::new(dim, &sb);
        gram.add(cell.measure, &mb.b);
        // I = sum_m lambda_m v_m v_m^T turns the double sum into d squares
        let eig = nalgebra::SymmetricEigen::new(cell.second_moments);
        for m in 0..3 {
            let lambda = eig.eigenvalues[m];
            if lambda <= 0.0 {
                continue;
            }
            let v = eig.eigenvectors.column(m);
            let mut y = DMatrix::zeros(mb.b.nrows(), mb.b.ncols());
            for k in 0..d {
                y += &mb.db[k] * v[k];
            }
            gram.add(lambda, &y);
        }
    }
    Ok(ElementMatrix {
        k: gram.finish(),
        interior_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{fixtures, SmoothingCell};
    use crate::smoothing::element_stiffness_ls3n;
    use crate::smoothing::test_support::*;
    use proptest::prelude::*;

    fn reference_triangle() -> SmoothingCell {
        SmoothingCell::from_simplex(
            vec![
                Point::zeros(),
                Point::new(1.0, 0.0, 0.0),
                Point::new(0.0, 1.0, 0.0),
            ],
            0,
            None,
        )
        .unwrap()
    }

    #[test]
    fn w_of_reference_triangle() {
        let w = assemble_w(&reference_triangle()).unwrap();
        let expected = [
            [0.5, 0.0, 0.0],
            [0.5 / 3.0, 1.0 / 36.0, -1.0 / 72.0],
            [0.5 / 3.0, -1.0 / 72.0, 1.0 / 36.0],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert!((w[(r, c)] - expected[r][c]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn w_scales_with_the_cell() {
        let s = 3.0;
        let big = SmoothingCell::from_simplex(
            vec![
                Point::zeros(),
                Point::new(s, 0.0, 0.0),
                Point::new(0.0, s, 0.0),
            ],
            0,
            None,
        )
        .unwrap();
        let (a, b) = (
            assemble_w(&reference_triangle()).unwrap(),
            assemble_w(&big).unwrap(),
        );
        assert!((b[(0, 0)] - s * s * a[(0, 0)]).abs() < 1e-14);
        assert!((b[(1, 1)] - s.powi(4) * a[(1, 1)]).abs() < 1e-13);
        assert!((b[(2, 1)] - s.powi(4) * a[(2, 1)]).abs() < 1e-13);
    }

    #[test]
    fn sliver_cell_is_rejected() {
        let cell = SmoothingCell::from_simplex(
            vec![
                Point::zeros(),
                Point::new(1.0, 0.0, 0.0),
                Point::new(0.5, 1e-7, 0.0),
            ],
            0,
            None,
        )
        .unwrap();
        assert!(matches!(
            assemble_w(&cell),
            Err(Error::IllConditionedCell { .. })
        ));
    }

    #[test]
    fn small_cell_far_from_origin_is_accepted() {
        let o = Point::new(1e4, -3e4, 0.0);
        let cell = SmoothingCell::from_simplex(
            vec![
                o,
                o + Point::new(1e-3, 0.0, 0.0),
                o + Point::new(0.0, 1e-3, 0.0),
            ],
            0,
            None,
        )
        .unwrap();
        assert!(assemble_w(&cell).is_ok());
    }

    #[test]
    fn triangle_element_gives_p1_derivatives() {
        let mesh = fixtures::polygon_mesh(&[[0.0, 0.0], [2.0, 0.3], [0.4, 1.5]]);
        let d = data(&mesh);
        let v = d.basis.vertices().to_vec();
        let area2 = (v[1] - v[0]).cross(&(v[2] - v[0])).z;
        for cell in &d.cells {
            let sb = smoothed_basis(cell, &d.basis, &SmoothingOptions::default()).unwrap();
            for i in 0..3 {
                let (a, b) = (v[(i + 1) % 3], v[(i + 2) % 3]);
                let exact = Point::new(a.y - b.y, b.x - a.x, 0.0) / area2;
                assert!((sb.first[i] - exact).norm() < 1e-12);
                assert!(sb.second[i].norm() < 1e-10);
                let dx = sb.d_vector(i, 0, Dim::Two);
                assert_eq!(dx.len(), 3);
            }
        }
    }

    #[test]
    fn constant_density_has_zero_boundary_row() {
        let (_, d) = square();
        let cell = &d.cells[1];
        let bpts = boundary_points(cell, &d.basis, &SmoothingOptions::default()).unwrap();
        for j in 0..2 {
            let s: f64 = bpts.iter().map(|p| p.weight * p.normal[j]).sum();
            assert!(s.abs() < 1e-15);
        }
        assert!(assemble_f(cell, &d.basis, 4, 0, &SmoothingOptions::default()).is_err());
    }

    #[test]
    fn square_reproduces_linear_derivative() {
        let (_, d) = square();
        for cell in &d.cells {
            let sb = smoothed_basis(cell, &d.basis, &SmoothingOptions::default()).unwrap();
            let dudx: f64 = sb
                .first
                .iter()
                .zip(d.basis.vertices())
                .map(|(g, v)| g.x * v.x)
                .sum();
            assert!((dudx - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pentagon_x_squared_derivative_is_close_to_2x() {
        let mesh = fixtures::irregular_pentagon();
        let d = data(&mesh);
        for cell in &d.cells {
            let sb = smoothed_basis(cell, &d.basis, &SmoothingOptions::default()).unwrap();
            let val: f64 = sb
                .first
                .iter()
                .zip(d.basis.vertices())
                .map(|(g, v)| g.x * v.x * v.x)
                .sum();
            assert!(
                (val - 2.0 * cell.centroid.x).abs() < cell.diameter(),
                "{val}"
            );
        }
    }

    fn check_linear_consistency(d: &ElementData) {
        let dim = d.dim;
        let diam = d.basis.diameter();
        let coef = crate::geometry::restrict(
            &Matrix3::new(0.3, -1.1, 0.4, 0.7, 0.2, -0.5, -0.9, 0.6, 1.3),
            dim,
        );
        let shift = coef * Point::new(0.2, 0.1, -0.3);
        for cell in &d.cells {
            let sb = smoothed_basis(cell, &d.basis, &SmoothingOptions::default()).unwrap();
            let mut grad = Matrix3::zeros();
            for (i, v) in d.basis.vertices().iter().enumerate() {
                let u = coef * v + shift;
                grad += u * sb.first[i].transpose();
            }
            let mut second = [Matrix3::<f64>::zeros(); 3];
            for (i, v) in d.basis.vertices().iter().enumerate() {
                let u = coef * v;
                for c in 0..dim.n() {
                    second[c] += u[c] * sb.second[i];
                }
            }
            assert!((grad - coef).norm() < 1e-10, "{}", (grad - coef).norm());
            for s in &second {
                assert!(s.norm() < 1e-8 / diam);
            }
            let sum: Point = sb.first.iter().sum();
            assert!(sum.norm() < 1e-10 / diam);
        }
    }

    #[test]
    fn linear_consistency_on_hexahedra() {
        check_linear_consistency(&data(&fixtures::unit_cube()));
        check_linear_consistency(&data(&fixtures::distorted_hexahedron()));
    }

    #[test]
    fn rigid_modes_give_zero_strain() {
        for mesh in [
            fixtures::irregular_pentagon(),
            fixtures::distorted_hexahedron(),
        ] {
            let d = data(&mesh);
            let dim = d.dim;
            let mut modes: Vec<Box<dyn Fn(&Point) -> Point>> = vec![
                Box::new(|_| Point::new(1.0, 0.0, 0.0)),
                Box::new(|_| Point::new(0.0, 1.0, 0.0)),
                Box::new(|x| Point::new(-x.y, x.x, 0.0)),
            ];
            if dim == Dim::Three {
                modes.push(Box::new(|_| Point::new(0.0, 0.0, 1.0)));
                modes.push(Box::new(|x| Point::new(0.0, -x.z, x.y)));
                modes.push(Box::new(|x| Point::new(x.z, 0.0, -x.x)));
            }
            for cell in &d.cells {
                let sb = smoothed_basis(cell, &d.basis, &SmoothingOptions::default()).unwrap();
                let mb = ModifiedB::new(dim, &sb);
                for m in &modes {
                    let u = DVector::from_vec(nodal(&d, m));
                    assert!((&mb.b * &u).norm() < 1e-10);
                    for db in &mb.db {
                        assert!((db * &u).norm() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn ls1_stiffness_is_symmetric_with_rigid_kernel() {
        for (mesh, mat) in [
            (
                fixtures::irregular_pentagon(),
                Material::plane_strain(1.0, 0.3).unwrap(),
            ),
            (
                fixtures::distorted_hexahedron(),
                Material::isotropic_3d(1.0, 0.3).unwrap(),
            ),
        ] {
            let d = data(&mesh);
            let em = element_stiffness_ls1(&d, &mat, &SmoothingOptions::default()).unwrap();
            let k = &em.k;
            assert_eq!(em.interior_points, d.cells.len());
            assert!((k - k.transpose()).amax() <= 1e-12 * k.amax());
            let t = DVector::from_vec(nodal(&d, |_| Point::new(1.0, -2.0, 0.5)));
            assert!((k * &t).amax() <= 1e-9 * k.amax() * t.amax());
            let eig = k.clone().symmetric_eigen();
            let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            let r = d.dim.rigid_modes();
            let scale = ev[ev.len() - 1];
            for e in &ev[..r] {
                assert!(e.abs() < 1e-10 * scale);
            }
            assert!(ev[r] > 1e-6 * scale);
        }
    }

    #[test]
    fn ls1_equals_ls3n_on_the_square() {
        let (_, d) = square();
        let mat = Material::plane_stress(1.0, 0.3).unwrap();
        let opts = SmoothingOptions::default();
        let k1 = element_stiffness_ls1(&d, &mat, &opts).unwrap().k;
        let k3 = element_stiffness_ls3n(&d, &mat, &opts).unwrap().k;
        assert!((&k1 - &k3).norm() <= 1e-8 * k3.norm());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn smoothed_basis_is_linearly_consistent_on_random_convex_polygons(
            n in 3usize..9,
            jitter in proptest::collection::vec(-0.2f64..0.2, 9),
            r in 0.1f64..5.0,
            cx in -3.0f64..3.0,
            cy in -3.0f64..3.0,
        ) {
            let mut angles: Vec<f64> = (0..n)
                .map(|k| 2.0 * std::f64::consts::PI * (k as f64 + jitter[k]) / n as f64)
                .collect();
            angles.sort_by(f64::total_cmp);
            let pts: Vec<[f64; 2]> = angles.iter().map(|t| [cx + r * t.cos(), cy + r * t.sin()]).collect();
            let mesh = fixtures::polygon_mesh(&pts);
            check_linear_consistency(&data(&mesh));
        }
    }
}
