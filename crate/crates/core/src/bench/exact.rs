//! Closed-form reference solutions.

use std::f64::consts::PI;

use nalgebra::{DVector, Matrix3};

use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};
use crate::smoothing::Material;

/// A displacement field with its gradient `grad[(i, j)] = du_i/dx_j`.
pub trait ExactSolution: Send + Sync {
    fn displacement(&self, x: &Point) -> Point;
    fn gradient(&self, x: &Point) -> Matrix3<f64>;
}

fn to_voigt(dim: Dim, eps: &Matrix3<f64>) -> DVector<f64> {
    match dim {
        Dim::Two => DVector::from_vec(vec![eps[(0, 0)], eps[(1, 1)], 2.0 * eps[(0, 1)]]),
        Dim::Three => DVector::from_vec(vec![
            eps[(0, 0)],
            eps[(1, 1)],
            eps[(2, 2)],
            2.0 * eps[(0, 1)],
            2.0 * eps[(1, 2)],
            2.0 * eps[(2, 0)],
        ]),
    }
}

fn from_voigt(dim: Dim, s: &DVector<f64>) -> Matrix3<f64> {
    match dim {
        Dim::Two => Matrix3::new(s[0], s[2], 0.0, s[2], s[1], 0.0, 0.0, 0.0, 0.0),
        Dim::Three => Matrix3::new(s[0], s[3], s[5], s[3], s[1], s[4], s[5], s[4], s[2]),
    }
}

/// In-plane Cauchy stress tensor for a displacement gradient.
pub fn stress_from_gradient(material: &Material, grad: &Matrix3<f64>) -> Matrix3<f64> {
    let dim = material.dim();
    let eps = 0.5 * (grad + grad.transpose());
    from_voigt(dim, &(material.c() * to_voigt(dim, &eps)))
}

/// Traction `sigma n` of the exact field.
pub fn exact_traction(
    material: &Material,
    exact: &dyn ExactSolution,
    x: &Point,
    n: &Point,
) -> Point {
    stress_from_gradient(material, &exact.gradient(x)) * n
}

/// Polynomial field of degree at most two,
/// `u_i = c_i + g_i . x + 1/2 x^T H_i x`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticField {
    pub dim: Dim,
    pub constant: Point,
    pub linear: Matrix3<f64>,
    pub hessians: [Matrix3<f64>; 3],
}

impl QuadraticField {
    /// Coefficients per component in the order
    /// `1, x, y, z, x^2, y^2, z^2, xy, yz, zx`.
    pub fn from_coefficients(dim: Dim, rows: &[[f64; 10]]) -> Self {
        let mut f = QuadraticField {
            dim,
            constant: Point::zeros(),
            linear: Matrix3::zeros(),
            hessians: [Matrix3::zeros(); 3],
        };
        for (i, r) in rows.iter().enumerate().take(dim.n()) {
            f.constant[i] = r[0];
            for k in 0..3 {
                f.linear[(i, k)] = r[1 + k];
                f.hessians[i][(k, k)] = 2.0 * r[4 + k];
            }
            for (k, (a, b)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
                f.hessians[i][(a, b)] = r[7 + k];
                f.hessians[i][(b, a)] = r[7 + k];
            }
        }
        if dim == Dim::Two {
            f.constant.z = 0.0;
            f.linear = crate::geometry::restrict(&f.linear, dim);
            for h in &mut f.hessians {
                *h = crate::geometry::restrict(h, dim);
            }
            f.hessians[2] = Matrix3::zeros();
        }
        f
    }

    pub fn linear_patch(dim: Dim) -> Self {
        match dim {
            Dim::Two => Self::from_coefficients(
                dim,
                &[
                    [0.1, 0.1, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                    [0.05, 0.15, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                ],
            ),
            Dim::Three => Self::from_coefficients(
                dim,
                &[
                    [0.1, 0.1, 0.2, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                    [0.05, 0.15, 0.1, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                    [0.05, 0.1, 0.2, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                ],
            ),
        }
    }

    pub fn quadratic_patch(dim: Dim) -> Self {
        match dim {
            Dim::Two => Self::from_coefficients(
                dim,
                &[
                    [0.0, 0.0, 0.0, 0.0, 0.1, 0.2, 0.0, 0.1, 0.0, 0.0],
                    [0.0, 0.0, 0.0, 0.0, 0.05, 0.1, 0.0, 0.15, 0.0, 0.0],
                ],
            ),
            // the x coefficient is 0.2 + 0.2
            Dim::Three => Self::from_coefficients(
                dim,
                &[
                    [0.1, 0.4, 0.0, 0.1, 0.15, 0.2, 0.1, 0.15, 0.1, 0.1],
                    [0.15, 0.1, 0.1, 0.2, 0.2, 0.15, 0.1, 0.2, 0.1, 0.2],
                    [0.15, 0.15, 0.2, 0.1, 0.15, 0.1, 0.2, 0.1, 0.2, 0.15],
                ],
            ),
        }
    }

    pub fn zero(dim: Dim) -> Self {
        Self::from_coefficients(dim, &[[0.0; 10]; 3])
    }

    /// Constant body force `b = -div sigma(u)`.
    pub fn body_force(&self, material: &Material) -> Point {
        let mut b = Point::zeros();
        for j in 0..self.dim.n() {
            // d(grad u)/dx_j
            let mut dgrad = Matrix3::zeros();
            for i in 0..self.dim.n() {
                for k in 0..3 {
                    dgrad[(i, k)] = self.hessians[i][(k, j)];
                }
            }
            let dsigma = stress_from_gradient(material, &dgrad);
            for i in 0..self.dim.n() {
                b[i] -= dsigma[(i, j)];
            }
        }
        b
    }
}

impl ExactSolution for QuadraticField {
    fn displacement(&self, x: &Point) -> Point {
        let mut u = self.constant + self.linear * x;
        for i in 0..self.dim.n() {
            u[i] += 0.5 * x.dot(&(self.hessians[i] * x));
        }
        u
    }

    fn gradient(&self, x: &Point) -> Matrix3<f64> {
        let mut g = self.linear;
        for i in 0..self.dim.n() {
            let row = self.hessians[i] * x;
            for k in 0..3 {
                g[(i, k)] += row[k];
            }
        }
        g
    }
}

/// Plane-stress cantilever `[0, L] x [-D/2, D/2]` under a parabolic end shear `P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cantilever {
    pub length: f64,
    pub depth: f64,
    pub e: f64,
    pub nu: f64,
    pub load: f64,
}

impl Default for Cantilever {
    fn default() -> Self {
        Cantilever {
            length: 10.0,
            depth: 2.0,
            e: 3e7,
            nu: 0.25,
            load: 150.0,
        }
    }
}

impl Cantilever {
    pub fn inertia(&self) -> f64 {
        self.depth.powi(3) / 12.0
    }

    fn scale(&self) -> f64 {
        self.load / (6.0 * self.e * self.inertia())
    }

    /// `v(L, 0)`.
    pub fn tip_deflection(&self) -> f64 {
        self.displacement(&Point::new(self.length, 0.0, 0.0)).y
    }

    pub fn material(&self) -> Material {
        Material::plane_stress(self.e, self.nu).expect("valid cantilever material")
    }
}

impl ExactSolution for Cantilever {
    fn displacement(&self, p: &Point) -> Point {
        let (x, y) = (p.x, p.y);
        let (l, d, nu, s) = (self.length, self.depth, self.nu, self.scale());
        let u = s * y * ((6.0 * l - 3.0 * x) * x + (2.0 + nu) * (y * y - d * d / 4.0));
        let v = -s
            * (3.0 * nu * y * y * (l - x)
                + (4.0 + 5.0 * nu) * d * d * x / 4.0
                + (3.0 * l - x) * x * x);
        Point::new(u, v, 0.0)
    }

    fn gradient(&self, p: &Point) -> Matrix3<f64> {
        let (x, y) = (p.x, p.y);
        let (l, d, nu, s) = (self.length, self.depth, self.nu, self.scale());
        let ux = s * y * (6.0 * l - 6.0 * x);
        let uy = s * ((6.0 * l - 3.0 * x) * x + (2.0 + nu) * (3.0 * y * y - d * d / 4.0));
        let vx =
            -s * (-3.0 * nu * y * y + (4.0 + 5.0 * nu) * d * d / 4.0 + 6.0 * l * x - 3.0 * x * x);
        let vy = -s * 6.0 * nu * y * (l - x);
        Matrix3::new(ux, uy, 0.0, vx, vy, 0.0, 0.0, 0.0, 0.0)
    }
}

/// Saint-Venant torsion of the prism `[-a, a] x [-b, b] x [0, L]`,
/// warping series truncated after `n_terms` terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorsionSolution {
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub g: f64,
    pub n_terms: usize,
}

impl TorsionSolution {
    pub fn new(beta: f64, a: f64, b: f64, g: f64, n_terms: usize) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::InvalidInput(
                "torsion series needs at least one term".into(),
            ));
        }
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidInput(
                "torsion cross-section must have positive size".into(),
            ));
        }
        Ok(TorsionSolution {
            beta,
            a,
            b,
            g,
            n_terms,
        })
    }

    fn k(&self, n: usize) -> f64 {
        (2 * n - 1) as f64 * PI / (2.0 * self.a)
    }

    /// Coefficient of `sin(k_n x) sinh(k_n y) / cosh(k_n b)` in the warping function.
    pub fn coefficient(&self, n: usize) -> f64 {
        let m = (2 * n - 1) as f64;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        32.0 * self.a * self.a * sign / (PI.powi(3) * m.powi(3))
    }

    /// Ratio of the last to the first series coefficient.
    pub fn truncation_ratio(&self) -> f64 {
        (self.coefficient(self.n_terms) / self.coefficient(1)).abs()
    }

    /// True when the last retained term is below `1e-12` of the first.
    pub fn series_converged(&self) -> bool {
        self.truncation_ratio() <= 1e-12
    }

    /// `(psi, dpsi/dx, dpsi/dy)` of the warping function.
    fn warping(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let (mut w, mut wx, mut wy) = (x * y, y, x);
        for n in 1..=self.n_terms {
            let k = self.k(n);
            let c = self.coefficient(n);
            let ch = (k * self.b).cosh();
            let (s, co) = (k * x).sin_cos();
            w += c * s * (k * y).sinh() / ch;
            wx += c * k * co * (k * y).sinh() / ch;
            wy += c * k * s * (k * y).cosh() / ch;
        }
        (w, wx, wy)
    }

    /// Stress tensor; only the `xz` and `yz` components are nonzero.
    pub fn stress(&self, p: &Point) -> Matrix3<f64> {
        let (_, wx, wy) = self.warping(p.x, p.y);
        let sxz = self.g * self.beta * (wx - p.y);
        let syz = self.g * self.beta * (wy + p.x);
        Matrix3::new(0.0, 0.0, sxz, 0.0, 0.0, syz, sxz, syz, 0.0)
    }
}

impl ExactSolution for TorsionSolution {
    fn displacement(&self, p: &Point) -> Point {
        let (w, _, _) = self.warping(p.x, p.y);
        self.beta * Point::new(-p.y * p.z, p.x * p.z, w)
    }

    fn gradient(&self, p: &Point) -> Matrix3<f64> {
        let (_, wx, wy) = self.warping(p.x, p.y);
        self.beta * Matrix3::new(0.0, -p.z, -p.y, p.z, 0.0, p.x, wx, wy, 0.0)
    }
}
