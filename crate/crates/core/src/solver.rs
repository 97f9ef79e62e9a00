//! Global assembly, boundary conditions, sparse solve and error measures.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Side};
use nalgebra::{DMatrix, Matrix3};
use rayon::prelude::*;

use crate::basis::Wachspress;
use crate::error::{Error, Result};
use crate::geometry::{self, Dim, Point};
use crate::mesh::{subdivide_to_simplices, PolytopeMesh};
use crate::quadrature::{line_rule, SimplexRule};
use crate::smoothing::{
    body_force_vector, element_stiffness, ElementData, Material, Scheme, SmoothingOptions,
};

pub type VectorField = dyn Fn(&Point) -> Point + Send + Sync;
/// Traction as a function of position and unit outward normal.
pub type TractionField = Arc<dyn Fn(&Point, &Point) -> Point + Send + Sync>;

#[derive(Clone)]
pub struct NeumannLoad {
    /// Index into `mesh.boundary`.
    pub facet: usize,
    pub traction: TractionField,
}

/// Prescribed displacements per global dof (`dim * node + component`) and
/// tractions per boundary facet.
#[derive(Clone, Default)]
pub struct BoundaryCondition {
    pub dirichlet: BTreeMap<usize, f64>,
    pub neumann: Vec<NeumannLoad>,
}

impl BoundaryCondition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fix_component(&mut self, dim: Dim, node: usize, component: usize, value: f64) {
        self.dirichlet.insert(dim.n() * node + component, value);
    }

    pub fn fix_node(&mut self, dim: Dim, node: usize, value: &Point) {
        for c in 0..dim.n() {
            self.fix_component(dim, node, c, value[c]);
        }
    }

    /// Prescribe `u(x)` at every node of facets whose tag passes `keep`.
    pub fn fix_tagged(
        &mut self,
        mesh: &PolytopeMesh,
        keep: impl Fn(&str) -> bool,
        u: impl Fn(&Point) -> Point,
    ) {
        for n in mesh.tagged_nodes(keep) {
            self.fix_node(mesh.dim, n, &u(&mesh.nodes[n]));
        }
    }

    /// Prescribe one displacement component on tagged facets.
    pub fn fix_tagged_component(
        &mut self,
        mesh: &PolytopeMesh,
        keep: impl Fn(&str) -> bool,
        component: usize,
        value: f64,
    ) {
        for n in mesh.tagged_nodes(keep) {
            self.fix_component(mesh.dim, n, component, value);
        }
    }

    /// Apply a traction on every boundary facet whose tag passes `keep`.
    pub fn traction_on(
        &mut self,
        mesh: &PolytopeMesh,
        keep: impl Fn(&str) -> bool,
        traction: TractionField,
    ) {
        for (i, b) in mesh.boundary.iter().enumerate() {
            if keep(&b.tag) {
                self.neumann.push(NeumannLoad {
                    facet: i,
                    traction: traction.clone(),
                });
            }
        }
    }
}

/// Symmetric sparse matrix in compressed row form (both triangles stored).
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    /// Duplicates are summed in the order given, so the result is deterministic.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|t| (t.0, t.1));
        let mut indptr = vec![0; n + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            indptr[i + 1] += indptr[i];
        }
        CsrMatrix {
            n,
            indptr,
            indices,
            values,
        }
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.indptr[i]..self.indptr[i + 1];
        self.indices[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                m[(i, j)] += v;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// Unconstrained global stiffness and load.
#[derive(Clone, Debug)]
pub struct GlobalSystem {
    pub dim: Dim,
    pub k: CsrMatrix,
    pub f: Vec<f64>,
    /// Interior basis evaluations used by the element stiffness matrices.
    pub interior_points: usize,
    /// Total time spent forming element stiffness matrices (summed over threads).
    pub element_time: Duration,
}

impl GlobalSystem {
    pub fn n_dofs(&self) -> usize {
        self.k.n
    }
}

struct ElementContribution {
    dofs: Vec<usize>,
    k: DMatrix<f64>,
    f: Vec<f64>,
    interior_points: usize,
    time: Duration,
}

fn element_dofs(mesh: &PolytopeMesh, e: usize) -> Vec<usize> {
    let d = mesh.dim.n();
    mesh.elements[e]
        .vertices()
        .iter()
        .flat_map(|&n| (0..d).map(move |c| d * n + c))
        .collect()
}

/// Assemble `K` and `f` (body force and tractions). Element work runs in
/// parallel; the scatter is sequential in element order.
pub fn assemble(
    mesh: &PolytopeMesh,
    material: &Material,
    scheme: Scheme,
    body_force: Option<&VectorField>,
    bc: &BoundaryCondition,
    opts: &SmoothingOptions,
) -> Result<GlobalSystem> {
    if !scheme.supports(mesh.dim) {
        return Err(Error::UnsupportedScheme {
            scheme: scheme.to_string(),
            dim: mesh.dim.n(),
        });
    }
    if material.dim() != mesh.dim {
        return Err(Error::InvalidInput(format!(
            "material model {:?} does not match a {}D mesh",
            material.model,
            mesh.dim.n()
        )));
    }
    let contributions: Vec<Result<ElementContribution>> = (0..mesh.n_elements())
        .into_par_iter()
        .map(|e| {
            let data = ElementData::new(mesh, e)?;
            let start = Instant::now();
            let em = element_stiffness(&data, material, scheme, opts)
                .map_err(|err| err.in_element(e))?;
            let time = start.elapsed();
            let f = match body_force {
                Some(b) => body_force_vector(&data, b, scheme).map_err(|err| err.in_element(e))?,
                None => vec![0.0; data.n_dofs()],
            };
            Ok(ElementContribution {
                dofs: element_dofs(mesh, e),
                k: em.k,
                f,
                interior_points: em.interior_points,
                time,
            })
        })
        .collect();

    let n = mesh.dim.n() * mesh.n_nodes();
    let mut triplets = Vec::new();
    let mut f = vec![0.0; n];
    let mut interior_points = 0;
    let mut element_time = Duration::ZERO;
    for c in contributions {
        let c = c?;
        for (a, &ra) in c.dofs.iter().enumerate() {
            f[ra] += c.f[a];
            for (b, &cb) in c.dofs.iter().enumerate() {
                triplets.push((ra, cb, c.k[(a, b)]));
            }
        }
        interior_points += c.interior_points;
        element_time += c.time;
    }
    add_tractions(mesh, bc, &mut f)?;
    Ok(GlobalSystem {
        dim: mesh.dim,
        k: CsrMatrix::from_triplets(n, triplets),
        f,
        interior_points,
        element_time,
    })
}

/// Quadrature points `(x, weight)` on a boundary facet.
fn facet_quadrature(mesh: &PolytopeMesh, pts: &[Point]) -> Vec<(Point, f64)> {
    match mesh.dim {
        Dim::Two => {
            let (t, w) = line_rule(2);
            let len = (pts[1] - pts[0]).norm();
            t.iter()
                .zip(&w)
                .map(|(t, w)| (pts[0] + (pts[1] - pts[0]) * *t, w * len))
                .collect()
        }
        Dim::Three => {
            let rule = SimplexRule::triangle3();
            let c = geometry::vertex_mean(pts);
            let mut out = Vec::new();
            for i in 0..pts.len() {
                let tri = [c, pts[i], pts[(i + 1) % pts.len()]];
                let area = 0.5 * (tri[1] - tri[0]).cross(&(tri[2] - tri[0])).norm();
                for (x, w) in rule.points(&tri).into_iter().zip(&rule.weights) {
                    out.push((x, w * area));
                }
            }
            out
        }
    }
}

fn add_tractions(mesh: &PolytopeMesh, bc: &BoundaryCondition, f: &mut [f64]) -> Result<()> {
    let d = mesh.dim.n();
    let mut seen = vec![false; mesh.boundary.len()];
    for load in &bc.neumann {
        let b = mesh.boundary.get(load.facet).ok_or_else(|| {
            Error::InvalidInput(format!("traction on missing boundary facet {}", load.facet))
        })?;
        if std::mem::replace(&mut seen[load.facet], true) {
            return Err(Error::InvalidInput(format!(
                "boundary facet {} carries two tractions",
                load.facet
            )));
        }
        let basis = Wachspress::new(mesh, b.element).map_err(|e| e.in_element(b.element))?;
        let pts: Vec<Point> = mesh.facet_nodes(b).iter().map(|&i| mesh.nodes[i]).collect();
        let (normal, _) = mesh.facet_normal_measure(b.element, b.facet);
        let nodes = mesh.elements[b.element].vertices();
        for (x, w) in facet_quadrature(mesh, &pts) {
            let t = (load.traction)(&x, &normal);
            let phi = basis.values(&x).map_err(|e| e.in_element(b.element))?;
            for (i, p) in phi.iter().enumerate() {
                if *p == 0.0 {
                    continue;
                }
                for c in 0..d {
                    f[d * nodes[i] + c] += w * p * t[c];
                }
            }
        }
    }
    Ok(())
}

/// Nodal displacements, `dim` components per node.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementField {
    pub dim: Dim,
    pub values: Vec<f64>,
}

impl DisplacementField {
    pub fn new(dim: Dim, values: Vec<f64>) -> Self {
        DisplacementField { dim, values }
    }

    /// Nodal interpolant of `u`.
    pub fn from_function(mesh: &PolytopeMesh, u: impl Fn(&Point) -> Point) -> Self {
        let d = mesh.dim.n();
        let mut values = Vec::with_capacity(d * mesh.n_nodes());
        for p in &mesh.nodes {
            let v = u(p);
            values.extend(v.iter().take(d));
        }
        DisplacementField::new(mesh.dim, values)
    }

    pub fn n_nodes(&self) -> usize {
        self.values.len() / self.dim.n()
    }

    pub fn at(&self, node: usize) -> Point {
        let d = self.dim.n();
        let mut p = Point::zeros();
        for c in 0..d {
            p[c] = self.values[d * node + c];
        }
        p
    }
}

/// Value of the discrete field at `x` (boundary points allowed).
pub fn interpolate(mesh: &PolytopeMesh, field: &DisplacementField, x: &Point) -> Result<Point> {
    let d = mesh.dim.n();
    for e in 0..mesh.n_elements() {
        let pts = mesh.element_coords(e);
        let tol = 1e-9 * geometry::diameter(&pts);
        let outside = (0..d).any(|k| {
            let lo = pts.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
            x[k] < lo - tol || x[k] > hi + tol
        });
        if outside {
            continue;
        }
        let basis = Wachspress::new(mesh, e).map_err(|err| err.in_element(e))?;
        if let Ok(phi) = basis.values(x) {
            let mut u = Point::zeros();
            for (p, &n) in phi.iter().zip(mesh.elements[e].vertices()) {
                u += *p * field.at(n);
            }
            return Ok(u);
        }
    }
    Err(Error::InvalidInput(format!(
        "point {:?} is outside the mesh",
        x.as_slice()
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolverMethod {
    /// Sparse Cholesky with iterative refinement, falling back to PCG.
    #[default]
    Direct,
    /// Jacobi-preconditioned conjugate gradients.
    Pcg,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub method: SolverMethod,
    /// Required relative residual of the constrained system.
    pub tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            method: SolverMethod::Direct,
            tolerance: 1e-10,
        }
    }
}

fn rigid_modes(mesh_nodes: &[Point], dim: Dim) -> Vec<(&'static str, Vec<f64>)> {
    let d = dim.n();
    let c = geometry::vertex_mean(mesh_nodes);
    let scale = geometry::diameter(mesh_nodes).max(f64::MIN_POSITIVE);
    let field = |f: &dyn Fn(&Point) -> Point| -> Vec<f64> {
        mesh_nodes
            .iter()
            .flat_map(|p| {
                let v = f(&((p - c) / scale));
                (0..d).map(move |k| v[k])
            })
            .collect()
    };
    let mut modes = vec![
        ("translation x", field(&|_| Point::x())),
        ("translation y", field(&|_| Point::y())),
    ];
    if dim == Dim::Three {
        modes.push(("translation z", field(&|_| Point::z())));
        modes.push(("rotation about x", field(&|x| Point::new(0.0, -x.z, x.y))));
        modes.push(("rotation about y", field(&|x| Point::new(x.z, 0.0, -x.x))));
    }
    modes.push(("rotation about z", field(&|x| Point::new(-x.y, x.x, 0.0))));
    modes
}

/// Rigid-body modes not restrained by the Dirichlet dofs.
pub fn unconstrained_modes(nodes: &[Point], dim: Dim, bc: &BoundaryCondition) -> Vec<String> {
    let modes = rigid_modes(nodes, dim);
    let m = modes.len();
    let mut gram = DMatrix::<f64>::zeros(m, m);
    for &dof in bc.dirichlet.keys() {
        for a in 0..m {
            for b in 0..m {
                gram[(a, b)] += modes[a].1[dof] * modes[b].1[dof];
            }
        }
    }
    let eig = gram.symmetric_eigen();
    let mut names = Vec::new();
    for k in 0..m {
        if eig.eigenvalues[k] <= 1e-12 {
            let v = eig.eigenvectors.column(k);
            let best = (0..m)
                .max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
                .unwrap();
            names.push(modes[best].0.to_string());
        }
    }
    names.sort();
    names.dedup();
    names
}

/// Solve `K u = f` subject to the Dirichlet data by elimination.
pub fn solve(
    mesh: &PolytopeMesh,
    system: &GlobalSystem,
    bc: &BoundaryCondition,
) -> Result<DisplacementField> {
    solve_with(mesh, system, bc, &SolverOptions::default())
}

pub fn solve_with(
    mesh: &PolytopeMesh,
    system: &GlobalSystem,
    bc: &BoundaryCondition,
    opts: &SolverOptions,
) -> Result<DisplacementField> {
    let n = system.n_dofs();
    if let Some((&dof, _)) = bc.dirichlet.iter().next_back() {
        if dof >= n {
            return Err(Error::InvalidInput(format!(
                "Dirichlet dof {dof} out of range ({n} dofs)"
            )));
        }
    }
    let modes = unconstrained_modes(&mesh.nodes, system.dim, bc);
    if !modes.is_empty() {
        return Err(Error::Singular {
            message: "boundary conditions leave rigid-body motion free".into(),
            unconstrained_modes: modes,
        });
    }
    let mut u = vec![0.0; n];
    let mut free = vec![usize::MAX; n];
    let mut n_free = 0;
    for i in 0..n {
        match bc.dirichlet.get(&i) {
            Some(v) => u[i] = *v,
            None => {
                free[i] = n_free;
                n_free += 1;
            }
        }
    }
    let mut rows = Vec::with_capacity(n_free + 1);
    let mut rhs = vec![0.0; n_free];
    let mut triplets = Vec::new();
    for i in 0..n {
        let fi = free[i];
        if fi == usize::MAX {
            continue;
        }
        rhs[fi] = system.f[i];
        for (j, v) in system.k.row(i) {
            if free[j] == usize::MAX {
                rhs[fi] -= v * u[j];
            } else {
                triplets.push((fi, free[j], v));
            }
        }
        rows.push(i);
    }
    let reduced = CsrMatrix::from_triplets(n_free, triplets);
    let x = solve_spd(&reduced, &rhs, opts)?;
    for (k, &i) in rows.iter().enumerate() {
        u[i] = x[k];
    }
    Ok(DisplacementField::new(system.dim, u))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(a: &CsrMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    a.matvec(x).iter().zip(b).map(|(ax, b)| b - ax).collect()
}

/// Solve a symmetric positive definite system to the requested relative residual.
pub fn solve_spd(a: &CsrMatrix, b: &[f64], opts: &SolverOptions) -> Result<Vec<f64>> {
    let n = a.n;
    let bnorm = norm(b);
    if n == 0 || bnorm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let mut x = vec![0.0; n];
    if opts.method == SolverMethod::Direct {
        let trip: Vec<Triplet<usize, usize, f64>> = (0..n)
            .flat_map(|i| a.row(i).map(move |(j, v)| Triplet::new(i, j, v)))
            .collect();
        let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trip).map_err(|e| {
            Error::InvalidInput(format!("sparse matrix construction failed: {e:?}"))
        })?;
        let llt = mat.sp_cholesky(Side::Lower).map_err(|e| Error::Singular {
            message: format!("Cholesky factorisation failed: {e:?}"),
            unconstrained_modes: Vec::new(),
        })?;
        let mut r = b.to_vec();
        for _ in 0..4 {
            let rhs = Mat::<f64>::from_fn(n, 1, |i, _| r[i]);
            let dx = llt.solve(&rhs);
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += dx[(i, 0)];
            }
            r = residual(a, &x, b);
            if norm(&r) <= 1e-3 * opts.tolerance * bnorm {
                break;
            }
        }
        if norm(&r) <= opts.tolerance * bnorm {
            return Ok(x);
        }
        log::warn!(
            "direct solve residual {:.3e} above tolerance; continuing with PCG",
            norm(&r) / bnorm
        );
    }
    pcg(a, b, &mut x, opts.tolerance, 20 * n + 100)?;
    Ok(x)
}

fn pcg(a: &CsrMatrix, b: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> Result<()> {
    let n = a.n;
    let mut diag = vec![0.0; n];
    for (i, d) in diag.iter_mut().enumerate() {
        *d = a
            .row(i)
            .find(|&(j, _)| j == i)
            .map(|(_, v)| v)
            .unwrap_or(0.0);
        if *d <= 0.0 {
            return Err(Error::Singular {
                message: format!("non-positive diagonal entry {d:e} at dof {i}"),
                unconstrained_modes: Vec::new(),
            });
        }
    }
    let bnorm = norm(b);
    let mut r = residual(a, x, b);
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    for _ in 0..max_iter {
        if norm(&r) <= tol * bnorm {
            return Ok(());
        }
        let ap = a.matvec(&p);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            return Err(Error::Singular {
                message: format!("matrix is not positive definite (p^T A p = {pap:e})"),
                unconstrained_modes: Vec::new(),
            });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        z = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let res = norm(&residual(a, x, b)) / bnorm;
    if res <= tol {
        Ok(())
    } else {
        Err(Error::ResidualTooLarge {
            residual: res,
            tolerance: tol,
        })
    }
}

/// `1/2 u^T K u` with the unconstrained stiffness.
pub fn strain_energy(field: &DisplacementField, system: &GlobalSystem) -> f64 {
    let ku = system.k.matvec(&field.values);
    0.5 * ku
        .iter()
        .zip(&field.values)
        .map(|(a, b)| a * b)
        .sum::<f64>()
}

/// Error measures of a discrete field against an exact solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorNorms {
    /// Relative L2 error (absolute when `relative` is false).
    pub l2: f64,
    /// Relative H1 seminorm error (absolute when `relative` is false).
    pub h1: f64,
    pub l2_abs: f64,
    pub h1_abs: f64,
    pub exact_l2: f64,
    pub exact_h1: f64,
    /// False when an exact-field norm vanishes and absolute values are reported.
    pub relative: bool,
}

/// L2 and H1-seminorm errors with a degree-4 Gauss rule on the simplex
/// subdivision of each element. `exact_grad(x)[(i, j)] = du_i/dx_j`.
pub fn error_norms(
    mesh: &PolytopeMesh,
    field: &DisplacementField,
    exact_u: &(dyn Fn(&Point) -> Point + Sync),
    exact_grad: &(dyn Fn(&Point) -> Matrix3<f64> + Sync),
) -> Result<ErrorNorms> {
    let d = mesh.dim.n();
    let rule = SimplexRule::of_degree(d, 4);
    let parts: Vec<Result<[f64; 4]>> = (0..mesh.n_elements())
        .into_par_iter()
        .map(|e| {
            let basis = Wachspress::new(mesh, e).map_err(|err| err.in_element(e))?;
            let cells = subdivide_to_simplices(mesh, e).map_err(|err| err.in_element(e))?;
            let nodes = mesh.elements[e].vertices();
            let mut acc = [0.0; 4];
            for cell in &cells {
                for (x, w) in rule.points(&cell.vertices).iter().zip(&rule.weights) {
                    let ev = basis
                        .evaluate_first_order(x)
                        .map_err(|err| err.in_element(e))?;
                    let mut uh = Point::zeros();
                    let mut gh = Matrix3::zeros();
                    for (i, &n) in nodes.iter().enumerate() {
                        let ui = field.at(n);
                        uh += ev.values[i] * ui;
                        gh += ui * ev.gradients[i].transpose();
                    }
                    let ue = restrict_vec(exact_u(x), d);
                    let ge = geometry::restrict(&exact_grad(x), mesh.dim);
                    let wt = cell.measure * w;
                    acc[0] += wt * (ue - uh).norm_squared();
                    acc[1] += wt * (ge - gh).norm_squared();
                    acc[2] += wt * ue.norm_squared();
                    acc[3] += wt * ge.norm_squared();
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = [0.0; 4];
    for p in parts {
        let p = p?;
        for k in 0..4 {
            total[k] += p[k];
        }
    }
    let [el2, eh1, ul2, uh1] = total.map(f64::sqrt);
    let relative = ul2 > 0.0 && uh1 > 0.0;
    Ok(ErrorNorms {
        l2: if relative { el2 / ul2 } else { el2 },
        h1: if relative { eh1 / uh1 } else { eh1 },
        l2_abs: el2,
        h1_abs: eh1,
        exact_l2: ul2,
        exact_h1: uh1,
        relative,
    })
}

fn restrict_vec(v: Point, d: usize) -> Point {
    if d == 2 {
        Point::new(v.x, v.y, 0.0)
    } else {
        v
    }
}
