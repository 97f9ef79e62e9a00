use nalgebra::DMatrix;

use super::{
    boundary_points, interior_rule, q_vector, strain_displacement, ElementData, ElementMatrix,
    GramAccumulator, Material, Scheme, SmoothingOptions,
};
use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};

/// Linear smoothing evaluated at `d + 1` interior points per subcell.
///
/// The smoothed derivative is linear on the subcell and is represented by its
/// values at the interior points of a degree-2 rule, so that
/// `sum_g A w_g q_k(x_g) phi~(x_g) = boundary_k - sum_g A w_g phi(x_g) dq_k/dx_j`.
pub fn element_stiffness_ls3n(
    data: &ElementData,
    material: &Material,
    opts: &SmoothingOptions,
) -> Result<ElementMatrix> {
    let dim = data.dim;
    let d = dim.n();
    let n = data.n_nodes();
    let rule = interior_rule(dim);
    let mut gram = GramAccumulator::new(material, dim, data.n_dofs())?;
    let mut interior_points = 0;
    for cell in &data.cells {
        let pts = rule.points(&cell.vertices);
        let mut m = DMatrix::zeros(d + 1, pts.len());
        let mut phi = Vec::with_capacity(pts.len());
        for (g, (x, w)) in pts.iter().zip(&rule.weights).enumerate() {
            for (k, qk) in q_vector(x, dim).iter().enumerate() {
                m[(k, g)] = cell.measure * w * qk;
            }
            phi.push(data.basis.values(x)?);
            interior_points += 1;
        }
        let mut rhs = DMatrix::zeros(d + 1, n * d);
        for p in boundary_points(cell, &data.basis, opts)? {
            let q = q_vector(&p.x, dim);
            for i in 0..n {
                for j in 0..d {
                    let s = p.weight * p.phi[i] * p.normal[j];
                    for (k, qk) in q.iter().enumerate() {
                        rhs[(k, i * d + j)] += s * qk;
                    }
                }
            }
        }
        for (g, w) in rule.weights.iter().enumerate() {
            for i in 0..n {
                for j in 0..d {
                    rhs[(j + 1, i * d + j)] -= cell.measure * w * phi[g][i];
                }
            }
        }
        let values = m.lu().solve(&rhs).ok_or(Error::IllConditionedCell {
            condition: f64::INFINITY,
        })?;
        for (g, w) in rule.weights.iter().enumerate() {
            let grads: Vec<Point> = (0..n)
                .map(|i| {
                    let mut v = Point::zeros();
                    for j in 0..d {
                        v[j] = values[(g, i * d + j)];
                    }
                    v
                })
                .collect();
            gram.add(cell.measure * w, &strain_displacement(dim, &grads));
        }
    }
    Ok(ElementMatrix {
        k: gram.finish(),
        interior_points,
    })
}

/// Constant smoothing: one smoothed gradient `(1/A) int_{dA} phi n` per subcell.
pub fn element_stiffness_cs(
    data: &ElementData,
    material: &Material,
    opts: &SmoothingOptions,
) -> Result<ElementMatrix> {
    if data.dim != Dim::Two {
        return Err(Error::UnsupportedScheme {
            scheme: Scheme::Cs.to_string(),
            dim: data.dim.n(),
        });
    }
    let n = data.n_nodes();
    let mut gram = GramAccumulator::new(material, data.dim, data.n_dofs())?;
    for cell in &data.cells {
        let mut grads = vec![Point::zeros(); n];
        for p in boundary_points(cell, &data.basis, opts)? {
            for (g, phi) in grads.iter_mut().zip(&p.phi) {
                *g += p.normal * (p.weight * phi / cell.measure);
            }
        }
        gram.add(cell.measure, &strain_displacement(data.dim, &grads));
    }
    Ok(ElementMatrix {
        k: gram.finish(),
        interior_points: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::fixtures;
    use crate::smoothing::test_support::*;
    use nalgebra::DVector;

    fn p1_stiffness(v: &[Point], mat: &Material) -> DMatrix<f64> {
        let area2 = (v[1] - v[0]).cross(&(v[2] - v[0])).z;
        let grads: Vec<Point> = (0..3)
            .map(|i| {
                let (a, b) = (v[(i + 1) % 3], v[(i + 2) % 3]);
                Point::new(a.y - b.y, b.x - a.x, 0.0) / area2
            })
            .collect();
        let b = strain_displacement(Dim::Two, &grads);
        b.transpose() * mat.c() * b * (0.5 * area2)
    }

    #[test]
    fn cs_on_a_triangle_is_the_p1_stiffness() {
        let mesh = fixtures::polygon_mesh(&[[0.0, 0.0], [2.0, 0.3], [0.4, 1.5]]);
        let d = data(&mesh);
        let mat = Material::plane_stress(2.0, 0.3).unwrap();
        let k = element_stiffness_cs(&d, &mat, &SmoothingOptions::default()).unwrap();
        let exact = p1_stiffness(d.basis.vertices(), &mat);
        assert!((&k.k - &exact).norm() < 1e-12 * exact.norm());
        assert_eq!(k.interior_points, 0);
        for s in [Scheme::Ls1, Scheme::Ls3n] {
            let k = crate::smoothing::element_stiffness(&d, &mat, s, &SmoothingOptions::default())
                .unwrap();
            assert!((&k.k - &exact).norm() < 1e-10 * exact.norm(), "{s}");
        }
    }

    #[test]
    fn cs_is_rejected_in_3d() {
        let d = data(&fixtures::unit_cube());
        let mat = Material::isotropic_3d(1.0, 0.3).unwrap();
        assert!(matches!(
            element_stiffness_cs(&d, &mat, &SmoothingOptions::default()),
            Err(Error::UnsupportedScheme { .. })
        ));
    }

    #[test]
    fn baselines_are_symmetric_and_annihilate_rigid_modes() {
        let mesh = fixtures::irregular_pentagon();
        let d = data(&mesh);
        let mat = Material::plane_strain(1.0, 0.3).unwrap();
        let opts = SmoothingOptions::default();
        for em in [
            element_stiffness_cs(&d, &mat, &opts).unwrap(),
            element_stiffness_ls3n(&d, &mat, &opts).unwrap(),
        ] {
            let k = em.k;
            assert!((&k - k.transpose()).amax() <= 1e-12 * k.amax());
            for mode in [
                nodal(&d, |_| Point::new(1.0, 0.0, 0.0)),
                nodal(&d, |_| Point::new(0.0, 1.0, 0.0)),
                nodal(&d, |x| Point::new(-x.y, x.x, 0.0)),
            ] {
                let u = DVector::from_vec(mode);
                assert!((&k * &u).amax() <= 1e-9 * k.amax() * u.amax());
            }
        }
    }

    #[test]
    fn ls3n_counts_three_or_four_points_per_cell() {
        let opts = SmoothingOptions::default();
        let d = data(&fixtures::irregular_pentagon());
        let mat = Material::plane_stress(1.0, 0.3).unwrap();
        assert_eq!(
            element_stiffness_ls3n(&d, &mat, &opts)
                .unwrap()
                .interior_points,
            15
        );
        let d = data(&fixtures::unit_cube());
        let mat = Material::isotropic_3d(1.0, 0.3).unwrap();
        assert_eq!(
            element_stiffness_ls3n(&d, &mat, &opts)
                .unwrap()
                .interior_points,
            4 * 24
        );
    }
}
