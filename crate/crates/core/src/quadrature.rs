//! Gauss rules on lines, triangles and tetrahedra.
//!
//! Simplex rules are stored in barycentric form with weights normalised to
//! sum to one, so a rule is applied as `measure * sum(w * f(sum(lambda_i v_i)))`.

use crate::geometry::Point;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            } else {
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
            }
            // p1 = P_n(z), p0 = P_{n-1}(z)
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss-Legendre rule mapped to [0, 1] (weights sum to one).
pub fn line_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    (
        x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        w.iter().map(|t| 0.5 * t).collect(),
    )
}

#[derive(Clone, Debug)]
pub struct SimplexRule {
    /// Barycentric coordinates, `d + 1` entries per point.
    pub bary: Vec<Vec<f64>>,
    /// Weights as fractions of the simplex measure.
    pub weights: Vec<f64>,
}

impl SimplexRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Physical points on a simplex with the given vertices.
    pub fn points(&self, vertices: &[Point]) -> Vec<Point> {
        self.bary
            .iter()
            .map(|l| {
                l.iter()
                    .zip(vertices)
                    .fold(Point::zeros(), |acc, (li, v)| acc + *li * v)
            })
            .collect()
    }

    /// One point at the centroid.
    pub fn centroid(dim: usize) -> Self {
        SimplexRule {
            bary: vec![vec![1.0 / (dim as f64 + 1.0); dim + 1]],
            weights: vec![1.0],
        }
    }

    /// Three interior points, degree 2 (triangle).
    pub fn triangle3() -> Self {
        let (a, b) = (2.0 / 3.0, 1.0 / 6.0);
        SimplexRule {
            bary: vec![vec![a, b, b], vec![b, a, b], vec![b, b, a]],
            weights: vec![1.0 / 3.0; 3],
        }
    }

    /// Six-point degree-4 rule (Dunavant).
    pub fn triangle6() -> Self {
        let a1 = 0.445_948_490_915_965;
        let w1 = 0.223_381_589_678_011;
        let a2 = 0.091_576_213_509_771;
        let w2 = 0.109_951_743_655_322;
        let mut bary = Vec::new();
        let mut weights = Vec::new();
        for (a, w) in [(a1, w1), (a2, w2)] {
            let b = 1.0 - 2.0 * a;
            bary.push(vec![b, a, a]);
            bary.push(vec![a, b, a]);
            bary.push(vec![a, a, b]);
            weights.extend([w; 3]);
        }
        SimplexRule { bary, weights }
    }

    /// Four interior points, degree 2 (tetrahedron).
    pub fn tet4() -> Self {
        let a = 0.585_410_196_624_968_5;
        let b = 0.138_196_601_125_010_5;
        SimplexRule {
            bary: (0..4)
                .map(|i| (0..4).map(|j| if i == j { a } else { b }).collect())
                .collect(),
            weights: vec![0.25; 4],
        }
    }

    /// Fourteen-point positive-weight rule of degree 5 (tetrahedron).
    pub fn tet14() -> Self {
        let mut bary = Vec::new();
        let mut weights = Vec::new();
        for (a, w) in [
            (0.092_735_250_310_891_23, 0.073_493_043_116_361_96),
            (0.310_885_919_263_300_6, 0.112_687_925_718_015_84),
        ] {
            let b = 1.0 - 3.0 * a;
            for k in 0..4 {
                bary.push((0..4).map(|i| if i == k { b } else { a }).collect());
                weights.push(w);
            }
        }
        let (a, w) = (0.454_496_295_874_350_36, 0.042_546_020_777_081_47);
        let b = 0.5 - a;
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            bary.push(
                (0..4)
                    .map(|k| if k == i || k == j { a } else { b })
                    .collect(),
            );
            weights.push(w);
        }
        SimplexRule { bary, weights }
    }

    /// Collapsed-coordinate (Duffy) Gauss-Legendre product rule with `n`
    /// points per direction. Exact to degree `2n - 2` on triangles and
    /// `2n - 3` on tetrahedra.
    pub fn collapsed(dim: usize, n: usize) -> Self {
        let (x, w) = line_rule(n);
        let mut bary = Vec::new();
        let mut weights = Vec::new();
        match dim {
            2 => {
                for i in 0..n {
                    for j in 0..n {
                        let (u, v) = (x[i], x[j]);
                        let px = u;
                        let py = v * (1.0 - u);
                        bary.push(vec![1.0 - px - py, px, py]);
                        weights.push(2.0 * w[i] * w[j] * (1.0 - u));
                    }
                }
            }
            3 => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let (u, v, t) = (x[i], x[j], x[k]);
                            let px = u;
                            let py = v * (1.0 - u);
                            let pz = t * (1.0 - u) * (1.0 - v);
                            bary.push(vec![1.0 - px - py - pz, px, py, pz]);
                            weights
                                .push(6.0 * w[i] * w[j] * w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
                        }
                    }
                }
            }
            _ => panic!("collapsed rule only for triangles and tetrahedra"),
        }
        SimplexRule { bary, weights }
    }

    /// A positive-weight rule exact for polynomials of the given degree.
    pub fn of_degree(dim: usize, degree: usize) -> Self {
        match (dim, degree) {
            (_, 0 | 1) => Self::centroid(dim),
            (2, 2) => Self::triangle3(),
            (3, 2) => Self::tet4(),
            (2, 3 | 4) => Self::triangle6(),
            (3, 3..=5) => Self::tet14(),
            (2, p) => Self::collapsed(2, (p + 2).div_ceil(2)),
            (3, p) => Self::collapsed(3, (p + 3).div_ceil(2)),
            _ => panic!("unsupported simplex dimension {dim}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    // integral of x^a y^b (z^c) over the unit reference simplex, divided by its measure
    fn reference_moment(pows: &[u32]) -> f64 {
        let d = pows.len() as u32;
        let num: f64 = pows.iter().map(|&p| factorial(p)).product();
        let sum: u32 = pows.iter().sum();
        num * factorial(d) / factorial(sum + d)
    }

    fn check_rule(rule: &SimplexRule, dim: usize, degree: u32) {
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-14, "weights sum {total}");
        let mut pows = vec![0u32; dim];
        loop {
            let s: u32 = pows.iter().sum();
            if s <= degree {
                let q: f64 = rule
                    .bary
                    .iter()
                    .zip(&rule.weights)
                    .map(|(l, w)| {
                        w * pows
                            .iter()
                            .enumerate()
                            .map(|(k, &p)| l[k + 1].powi(p as i32))
                            .product::<f64>()
                    })
                    .sum();
                let exact = reference_moment(&pows);
                assert!(
                    (q - exact).abs() < 1e-13,
                    "dim {dim} pows {pows:?}: {q} vs {exact}"
                );
            }
            // next multi-index
            let mut k = 0;
            loop {
                if k == dim {
                    return;
                }
                pows[k] += 1;
                if pows[k] <= degree {
                    break;
                }
                pows[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..8 {
            let (x, w) = gauss_legendre(n);
            for p in 0..(2 * n) as i32 {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
                let exact = if p % 2 == 0 {
                    2.0 / (p as f64 + 1.0)
                } else {
                    0.0
                };
                assert!((q - exact).abs() < 1e-14, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn fixed_rules_are_exact_to_their_degree() {
        check_rule(&SimplexRule::centroid(2), 2, 1);
        check_rule(&SimplexRule::centroid(3), 3, 1);
        check_rule(&SimplexRule::triangle3(), 2, 2);
        check_rule(&SimplexRule::triangle6(), 2, 4);
        check_rule(&SimplexRule::tet4(), 3, 2);
        check_rule(&SimplexRule::tet14(), 3, 5);
    }

    #[test]
    fn collapsed_rules_are_exact_to_their_degree() {
        for n in 1..6 {
            check_rule(&SimplexRule::collapsed(2, n), 2, (2 * n - 2) as u32);
            if n >= 2 {
                check_rule(&SimplexRule::collapsed(3, n), 3, (2 * n - 3) as u32);
            }
        }
        for p in 0..9 {
            check_rule(&SimplexRule::of_degree(2, p), 2, p as u32);
            check_rule(&SimplexRule::of_degree(3, p), 3, p as u32);
        }
    }
}
