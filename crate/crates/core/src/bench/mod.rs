//! Benchmark problems, convergence studies and report output.

mod demo;
mod exact;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

pub use demo::{
    demo_shapes, functions_2d, functions_3d, hexahedron, integration_table_csv,
    run_integration_demo, IntegrationRow, TestFunction,
};
pub use exact::{
    exact_traction, stress_from_gradient, Cantilever, ExactSolution, QuadraticField,
    TorsionSolution,
};
pub use report::{convergence_report, ConvergenceReport};

use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};
use crate::mesh::{generate_cvt_mesh, subdivide_to_simplices, vtk, Domain, PolytopeMesh};
use crate::smoothing::{Material, Scheme, SmoothingOptions};
use crate::solver::{
    assemble, error_norms, interpolate, solve, strain_energy, BoundaryCondition, DisplacementField,
    TractionField,
};

/// Reference strain energy of the L-shaped block.
pub const LSHAPE_REFERENCE_ENERGY: f64 = 382505.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Benchmark {
    LinearPatch(Dim),
    QuadraticPatch(Dim),
    Cantilever,
    Torsion,
    LShape,
}

impl Benchmark {
    pub fn name(&self) -> String {
        match self {
            Benchmark::LinearPatch(d) => format!("linear_patch_{}d", d.n()),
            Benchmark::QuadraticPatch(d) => format!("quadratic_patch_{}d", d.n()),
            Benchmark::Cantilever => "cantilever_2d".into(),
            Benchmark::Torsion => "torsion_3d".into(),
            Benchmark::LShape => "lshape_3d".into(),
        }
    }

    pub fn dim(&self) -> Dim {
        match self {
            Benchmark::LinearPatch(d) | Benchmark::QuadraticPatch(d) => *d,
            Benchmark::Cantilever => Dim::Two,
            Benchmark::Torsion | Benchmark::LShape => Dim::Three,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Benchmark::LinearPatch(Dim::Two) | Benchmark::QuadraticPatch(Dim::Two) => {
                Domain::unit_square()
            }
            Benchmark::LinearPatch(Dim::Three) | Benchmark::QuadraticPatch(Dim::Three) => {
                Domain::unit_cube()
            }
            Benchmark::Cantilever => {
                let c = Cantilever::default();
                Domain::Rectangle {
                    min: [0.0, -c.depth / 2.0],
                    max: [c.length, c.depth / 2.0],
                }
            }
            Benchmark::Torsion => Domain::Cuboid {
                min: [-1.0, -1.0, 0.0],
                max: [1.0, 1.0, 5.0],
            },
            Benchmark::LShape => Domain::LShape3 {
                a: 50.0,
                thickness: 100.0,
            },
        }
    }

    /// Identifier of the reference solution.
    pub fn exact_solution_id(&self) -> &'static str {
        match self {
            Benchmark::LinearPatch(_) => "affine",
            Benchmark::QuadraticPatch(_) => "quadratic",
            Benchmark::Cantilever => "timoshenko-beam",
            Benchmark::Torsion => "saint-venant-torsion",
            Benchmark::LShape => "reference-energy",
        }
    }

    pub fn default_material(&self) -> Material {
        match self {
            Benchmark::Cantilever => Cantilever::default().material(),
            _ => match self.dim() {
                Dim::Two => Material::plane_stress(1.0, 0.3),
                Dim::Three => Material::isotropic_3d(1.0, 0.3),
            }
            .expect("valid default material"),
        }
    }

    /// Seed counts per refinement level.
    pub fn default_levels(&self) -> Vec<usize> {
        match self {
            Benchmark::LinearPatch(Dim::Two) => vec![10, 20, 50, 100],
            Benchmark::LinearPatch(Dim::Three) => vec![9, 25, 100, 300],
            Benchmark::QuadraticPatch(Dim::Two) => vec![10, 25, 50, 100, 200, 400],
            Benchmark::QuadraticPatch(Dim::Three) => vec![25, 50, 100, 200, 400, 800],
            Benchmark::Cantilever => vec![80, 160, 320, 640],
            Benchmark::Torsion => vec![50, 100, 200, 500, 1000],
            Benchmark::LShape => vec![40, 80, 160, 320],
        }
    }

    pub fn needs_rates(&self) -> bool {
        matches!(
            self,
            Benchmark::QuadraticPatch(_) | Benchmark::Cantilever | Benchmark::Torsion
        )
    }
}

/// Complete description of a benchmark run.
#[derive(Clone, Debug)]
pub struct BenchmarkSpec {
    pub name: String,
    pub benchmark: Benchmark,
    pub dim: Dim,
    /// Number of CVT seeds per refinement level.
    pub levels: Vec<usize>,
    pub schemes: Vec<Scheme>,
    pub material: Material,
    pub lloyd_iterations: usize,
    pub rng_seed: u64,
    pub smoothing: SmoothingOptions,
    pub output: Option<PathBuf>,
    /// Write a VTK file of every solution when `output` is set.
    pub vtk: bool,
}

impl BenchmarkSpec {
    pub fn new(benchmark: Benchmark) -> Self {
        let dim = benchmark.dim();
        BenchmarkSpec {
            name: benchmark.name(),
            benchmark,
            dim,
            levels: benchmark.default_levels(),
            schemes: Scheme::ALL
                .into_iter()
                .filter(|s| s.supports(dim))
                .collect(),
            material: benchmark.default_material(),
            lloyd_iterations: 30,
            rng_seed: 1,
            smoothing: SmoothingOptions::default(),
            output: None,
            vtk: false,
        }
    }

    pub fn exact_solution_id(&self) -> &'static str {
        self.benchmark.exact_solution_id()
    }

    /// CVT meshes for every level, seeded with `rng_seed + level index`.
    pub fn meshes(&self) -> Result<Vec<PolytopeMesh>> {
        let domain = self.benchmark.domain();
        self.levels
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                generate_cvt_mesh(&domain, n, self.lloyd_iterations, self.rng_seed + i as u64)
            })
            .collect()
    }
}

/// Outcome of one scheme on one mesh.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelResult {
    pub scheme: Scheme,
    pub level: usize,
    pub n_elements: usize,
    pub n_nodes: usize,
    pub n_subcells: usize,
    pub h: f64,
    pub l2: Option<f64>,
    pub h1: Option<f64>,
    pub energy: f64,
    pub interior_points: usize,
    /// Seconds spent forming element stiffness matrices.
    pub element_time: f64,
    pub tip_deflection: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemeRates {
    pub scheme: Scheme,
    pub l2: ConvergenceReport,
    pub h1: ConvergenceReport,
}

/// LS3n to LS1 cost at one level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CostRatio {
    pub level: usize,
    pub point_ratio: f64,
    pub time_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub name: String,
    pub dim: usize,
    pub results: Vec<LevelResult>,
    pub rates: Vec<SchemeRates>,
    pub reference_energy: Option<f64>,
    pub reference_tip_deflection: Option<f64>,
    pub warnings: Vec<String>,
}

impl BenchmarkReport {
    pub fn for_scheme(&self, scheme: Scheme) -> Vec<&LevelResult> {
        self.results.iter().filter(|r| r.scheme == scheme).collect()
    }

    pub fn rates_for(&self, scheme: Scheme) -> Option<&SchemeRates> {
        self.rates.iter().find(|r| r.scheme == scheme)
    }

    pub fn cost_ratios(&self) -> Vec<CostRatio> {
        let ls1 = self.for_scheme(Scheme::Ls1);
        let ls3 = self.for_scheme(Scheme::Ls3n);
        ls1.iter()
            .zip(&ls3)
            .map(|(a, b)| CostRatio {
                level: a.level,
                point_ratio: b.interior_points as f64 / a.interior_points as f64,
                time_ratio: b.element_time / a.element_time.max(f64::MIN_POSITIVE),
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|v| format!("{v:.10e}")).unwrap_or_default();
        let mut s = String::from(
            "scheme,level,n_elements,n_nodes,n_subcells,h,l2,h1,energy,interior_points,element_time_s,tip_deflection\n",
        );
        for r in &self.results {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{:.10e},{},{},{:.10e},{},{:.6e},{}",
                r.scheme,
                r.level,
                r.n_elements,
                r.n_nodes,
                r.n_subcells,
                r.h,
                opt(r.l2),
                opt(r.h1),
                r.energy,
                r.interior_points,
                r.element_time,
                opt(r.tip_deflection)
            );
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}\n", self.name);
        for r in &self.results {
            let _ = write!(
                s,
                "  {:<5} level {} elements {:>5} h {:.4e}",
                r.scheme.to_string(),
                r.level,
                r.n_elements,
                r.h
            );
            if let (Some(l2), Some(h1)) = (r.l2, r.h1) {
                let _ = write!(s, "  L2 {l2:.4e}  H1 {h1:.4e}");
            }
            let _ = write!(s, "  energy {:.6e}", r.energy);
            if let Some(t) = r.tip_deflection {
                let _ = write!(s, "  tip {t:.6e}");
            }
            s.push('\n');
        }
        for r in &self.rates {
            let _ = writeln!(
                s,
                "  {:<5} slopes: L2 {:.3}  H1 {:.3}",
                r.scheme.to_string(),
                r.l2.slope,
                r.h1.slope
            );
        }
        for c in self.cost_ratios() {
            let _ = writeln!(
                s,
                "  level {} LS3n/LS1 interior points {:.2}, element time {:.2}",
                c.level, c.point_ratio, c.time_ratio
            );
        }
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    }

    /// Write the results table, slope tables, plot data and a JSON dump into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let mut put = |name: String, text: String| -> Result<()> {
            let p = dir.join(name);
            fs::write(&p, text)?;
            written.push(p);
            Ok(())
        };
        put(format!("{}.csv", self.name), self.to_csv())?;
        put(
            format!("{}.json", self.name),
            serde_json::to_string_pretty(self)?,
        )?;
        if !self.rates.is_empty() {
            let mut rates = String::from("scheme,l2_slope,h1_slope,l2_monotone,h1_monotone\n");
            for r in &self.rates {
                let _ = writeln!(
                    rates,
                    "{},{:.6},{:.6},{},{}",
                    r.scheme, r.l2.slope, r.h1.slope, r.l2.monotone, r.h1.monotone
                );
                put(
                    format!("{}_{}_l2.dat", self.name, r.scheme),
                    r.l2.plot_data(),
                )?;
                put(
                    format!("{}_{}_h1.dat", self.name, r.scheme),
                    r.h1.plot_data(),
                )?;
            }
            put(format!("{}_rates.csv", self.name), rates)?;
        }
        Ok(written)
    }
}

struct Problem {
    exact: Option<Arc<dyn ExactSolution>>,
    body_force: Option<Point>,
    bc: BoundaryCondition,
}

fn traction_from(exact: Arc<dyn ExactSolution>, material: Material) -> TractionField {
    Arc::new(move |x: &Point, n: &Point| exact_traction(&material, exact.as_ref(), x, n))
}

fn setup(spec: &BenchmarkSpec, mesh: &PolytopeMesh, warnings: &mut Vec<String>) -> Result<Problem> {
    let material = spec.material;
    let mut bc = BoundaryCondition::new();
    let fix_exact = |bc: &mut BoundaryCondition,
                     exact: &Arc<dyn ExactSolution>,
                     keep: &dyn Fn(&str) -> bool| {
        bc.fix_tagged(mesh, keep, |x| exact.displacement(x));
    };
    Ok(match spec.benchmark {
        Benchmark::LinearPatch(d) | Benchmark::QuadraticPatch(d) => {
            let field = match spec.benchmark {
                Benchmark::LinearPatch(_) => QuadraticField::linear_patch(d),
                _ => QuadraticField::quadratic_patch(d),
            };
            let body = field.body_force(&material);
            let exact: Arc<dyn ExactSolution> = Arc::new(field);
            fix_exact(&mut bc, &exact, &|_| true);
            Problem {
                exact: Some(exact),
                body_force: (body != Point::zeros()).then_some(body),
                bc,
            }
        }
        Benchmark::Cantilever => {
            let c = Cantilever {
                e: material.e,
                nu: material.nu,
                ..Cantilever::default()
            };
            let exact: Arc<dyn ExactSolution> = Arc::new(c);
            fix_exact(&mut bc, &exact, &|t| t == "xmin");
            bc.traction_on(
                mesh,
                |t| t != "xmin",
                traction_from(exact.clone(), material),
            );
            Problem {
                exact: Some(exact),
                body_force: None,
                bc,
            }
        }
        Benchmark::Torsion => {
            let t = TorsionSolution::new(1.0, 1.0, 1.0, material.shear_modulus(), 40)?;
            if !t.series_converged() && !warnings.iter().any(|w| w.starts_with("torsion series")) {
                let w = format!(
                    "torsion series truncated at {} terms: last/first term ratio {:.2e} exceeds 1e-12",
                    t.n_terms,
                    t.truncation_ratio()
                );
                log::warn!("{w}");
                warnings.push(w);
            }
            let exact: Arc<dyn ExactSolution> = Arc::new(t);
            let ends = |t: &str| t == "zmin" || t == "zmax";
            fix_exact(&mut bc, &exact, &ends);
            bc.traction_on(mesh, |t| !ends(t), traction_from(exact.clone(), material));
            Problem {
                exact: Some(exact),
                body_force: None,
                bc,
            }
        }
        Benchmark::LShape => {
            bc.fix_tagged_component(mesh, |t| t == "xmin", 0, 0.0);
            bc.fix_tagged_component(mesh, |t| t == "ymin", 1, 0.0);
            bc.fix_tagged_component(mesh, |t| t == "zmin", 2, 0.0);
            bc.traction_on(
                mesh,
                |t| t == "ymax",
                Arc::new(|_: &Point, _: &Point| Point::new(0.0, 1.0, 0.0)),
            );
            Problem {
                exact: None,
                body_force: None,
                bc,
            }
        }
    })
}

fn n_subcells(mesh: &PolytopeMesh) -> Result<usize> {
    let mut n = 0;
    for e in 0..mesh.n_elements() {
        n += subdivide_to_simplices(mesh, e)
            .map_err(|err| err.in_element(e))?
            .len();
    }
    Ok(n)
}

/// Solve one benchmark on one mesh with one scheme.
pub fn solve_level(
    spec: &BenchmarkSpec,
    mesh: &PolytopeMesh,
    scheme: Scheme,
) -> Result<(DisplacementField, LevelResult, Vec<String>)> {
    let mut warnings = Vec::new();
    let problem = setup(spec, mesh, &mut warnings)?;
    let body = problem.body_force;
    let body_fn = move |_: &Point| body.unwrap_or_else(Point::zeros);
    let system = assemble(
        mesh,
        &spec.material,
        scheme,
        body.is_some()
            .then_some(&body_fn as &crate::solver::VectorField),
        &problem.bc,
        &spec.smoothing,
    )?;
    let u = solve(mesh, &system, &problem.bc)?;
    let (l2, h1) = match &problem.exact {
        Some(exact) => {
            let e = error_norms(mesh, &u, &|x| exact.displacement(x), &|x| exact.gradient(x))?;
            (Some(e.l2), Some(e.h1))
        }
        None => (None, None),
    };
    let tip_deflection = match spec.benchmark {
        Benchmark::Cantilever => Some(
            interpolate(
                mesh,
                &u,
                &Point::new(Cantilever::default().length, 0.0, 0.0),
            )?
            .y,
        ),
        _ => None,
    };
    let result = LevelResult {
        scheme,
        level: 0,
        n_elements: mesh.n_elements(),
        n_nodes: mesh.n_nodes(),
        n_subcells: n_subcells(mesh)?,
        h: mesh.mesh_size(),
        l2,
        h1,
        energy: strain_energy(&u, &system),
        interior_points: system.interior_points,
        element_time: system.element_time.as_secs_f64(),
        tip_deflection,
    };
    Ok((u, result, warnings))
}

/// Run the benchmark on the given meshes (one per level, coarse to fine).
pub fn run_on_meshes(spec: &BenchmarkSpec, meshes: &[PolytopeMesh]) -> Result<BenchmarkReport> {
    let mut report = BenchmarkReport {
        name: spec.name.clone(),
        dim: spec.dim.n(),
        results: Vec::new(),
        rates: Vec::new(),
        reference_energy: (spec.benchmark == Benchmark::LShape).then_some(LSHAPE_REFERENCE_ENERGY),
        reference_tip_deflection: (spec.benchmark == Benchmark::Cantilever).then(|| {
            Cantilever {
                e: spec.material.e,
                nu: spec.material.nu,
                ..Cantilever::default()
            }
            .tip_deflection()
        }),
        warnings: Vec::new(),
    };
    for mesh in meshes {
        if mesh.dim != spec.dim {
            return Err(Error::InvalidInput(format!(
                "{} needs a {}D mesh, got {}D",
                spec.name,
                spec.dim.n(),
                mesh.dim.n()
            )));
        }
    }
    for &scheme in &spec.schemes {
        if !scheme.supports(spec.dim) {
            report.warnings.push(format!(
                "scheme {scheme} is not available in {}D; skipped",
                spec.dim.n()
            ));
            continue;
        }
        for (level, mesh) in meshes.iter().enumerate() {
            let (u, mut r, w) = solve_level(spec, mesh, scheme)?;
            r.level = level;
            for w in w {
                if !report.warnings.contains(&w) {
                    report.warnings.push(w);
                }
            }
            if spec.vtk {
                if let Some(dir) = &spec.output {
                    fs::create_dir_all(dir)?;
                    let path = dir.join(format!("{}_{}_level{}.vtk", spec.name, scheme, level));
                    vtk::write_vtk(mesh, Some(&u.values), &path)?;
                }
            }
            log::info!(
                "{} {} level {}: {} elements, L2 {:?}, energy {:.6e}",
                spec.name,
                scheme,
                level,
                r.n_elements,
                r.l2,
                r.energy
            );
            report.results.push(r);
        }
        let rs = report.for_scheme(scheme);
        if spec.benchmark.needs_rates() && rs.len() >= 3 && rs.iter().all(|r| r.l2.is_some()) {
            let h: Vec<f64> = rs.iter().map(|r| r.h).collect();
            let l2: Vec<f64> = rs.iter().map(|r| r.l2.unwrap()).collect();
            let h1: Vec<f64> = rs.iter().map(|r| r.h1.unwrap()).collect();
            let rates = SchemeRates {
                scheme,
                l2: convergence_report(&h, &l2)?,
                h1: convergence_report(&h, &h1)?,
            };
            for (norm, c) in [("L2", &rates.l2), ("H1", &rates.h1)] {
                if !c.monotone {
                    report.warnings.push(format!(
                        "{scheme}: {norm} error is not monotone under refinement"
                    ));
                }
            }
            report.rates.push(rates);
        }
    }
    if spec.benchmark == Benchmark::LShape {
        for &scheme in &spec.schemes {
            let e: Vec<f64> = report.for_scheme(scheme).iter().map(|r| r.energy).collect();
            if e.len() > 2 && !e[1..].windows(2).all(|w| w[1] >= w[0]) {
                report.warnings.push(format!(
                    "{scheme}: strain energy is not monotone after the first level"
                ));
            }
        }
    }
    if let Some(dir) = &spec.output {
        report.write(dir)?;
    }
    Ok(report)
}

/// Generate the meshes of `spec` and run it.
pub fn run_benchmark(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    if spec.benchmark.needs_rates() && spec.levels.len() < 3 {
        return Err(Error::TooFewPoints {
            required: 3,
            got: spec.levels.len(),
        });
    }
    run_on_meshes(spec, &spec.meshes()?)
}

/// Affine Dirichlet data, no body force, on a single mesh.
pub fn run_linear_patch(
    dim: Dim,
    mesh: &PolytopeMesh,
    schemes: &[Scheme],
) -> Result<BenchmarkReport> {
    let mut spec = BenchmarkSpec::new(Benchmark::LinearPatch(dim));
    spec.schemes = schemes.to_vec();
    run_on_meshes(&spec, std::slice::from_ref(mesh))
}

pub fn run_quadratic_patch(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    expect(spec, |b| matches!(b, Benchmark::QuadraticPatch(_)))?;
    run_benchmark(spec)
}

pub fn run_cantilever_2d(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    expect(spec, |b| b == Benchmark::Cantilever)?;
    run_benchmark(spec)
}

pub fn run_torsion_3d(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    expect(spec, |b| b == Benchmark::Torsion)?;
    run_benchmark(spec)
}

pub fn run_lshape_3d(spec: &BenchmarkSpec) -> Result<BenchmarkReport> {
    expect(spec, |b| b == Benchmark::LShape)?;
    run_benchmark(spec)
}

fn expect(spec: &BenchmarkSpec, ok: impl Fn(Benchmark) -> bool) -> Result<()> {
    if ok(spec.benchmark) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "unexpected benchmark {}",
            spec.benchmark.name()
        )))
    }
}
