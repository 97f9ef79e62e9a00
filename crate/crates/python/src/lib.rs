//! Python bindings: meshes, materials, assembly and solve, benchmarks and
//! convergence reports. Structured results come back as plain dicts and lists.

use std::str::FromStr;

use ::polysmooth as core;
use core::bench::{self, Benchmark, BenchmarkSpec};
use core::geometry::{Dim, Point};
use core::mesh::{self as mesh, Domain, PolytopeMesh};
use core::smoothing::{self, Scheme, SmoothingOptions};
use core::solver::{self, BoundaryCondition};
use nalgebra::Matrix3;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(polysmooth, PolysmoothError, PyException);

fn err(e: core::Error) -> PyErr {
    PolysmoothError::new_err(e.to_string())
}

fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PolysmoothError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn scheme(name: &str) -> PyResult<Scheme> {
    Scheme::from_str(name).map_err(err)
}

fn benchmark(name: &str) -> PyResult<Benchmark> {
    Ok(match name {
        "linear_patch_2d" => Benchmark::LinearPatch(Dim::Two),
        "linear_patch_3d" => Benchmark::LinearPatch(Dim::Three),
        "quadratic_patch_2d" => Benchmark::QuadraticPatch(Dim::Two),
        "quadratic_patch_3d" => Benchmark::QuadraticPatch(Dim::Three),
        "cantilever_2d" | "cantilever" => Benchmark::Cantilever,
        "torsion_3d" | "torsion" => Benchmark::Torsion,
        "lshape_3d" | "lshape" => Benchmark::LShape,
        other => {
            return Err(PolysmoothError::new_err(format!(
                "unknown benchmark `{other}`"
            )))
        }
    })
}

fn point(v: &[f64]) -> PyResult<Point> {
    match v {
        [x, y] => Ok(Point::new(*x, *y, 0.0)),
        [x, y, z] => Ok(Point::new(*x, *y, *z)),
        _ => Err(PolysmoothError::new_err("points need 2 or 3 coordinates")),
    }
}

/// A polygonal or polyhedral mesh.
#[pyclass(name = "Mesh", module = "polysmooth", from_py_object)]
#[derive(Clone)]
struct PyMesh {
    inner: PolytopeMesh,
}

#[pymethods]
impl PyMesh {
    /// Centroidal Voronoi mesh of a box `[min, max]` (2 or 3 coordinates each).
    #[staticmethod]
    #[pyo3(signature = (min, max, n_seeds, lloyd_iterations = 30, seed = 1))]
    fn cvt_box(
        min: Vec<f64>,
        max: Vec<f64>,
        n_seeds: usize,
        lloyd_iterations: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let domain = match (min.as_slice(), max.as_slice()) {
            ([a, b], [c, d]) => Domain::Rectangle {
                min: [*a, *b],
                max: [*c, *d],
            },
            ([a, b, c], [d, e, f]) => Domain::Cuboid {
                min: [*a, *b, *c],
                max: [*d, *e, *f],
            },
            _ => {
                return Err(PolysmoothError::new_err(
                    "min and max need 2 or 3 matching coordinates",
                ))
            }
        };
        let inner =
            mesh::generate_cvt_mesh(&domain, n_seeds, lloyd_iterations, seed).map_err(err)?;
        Ok(PyMesh { inner })
    }

    /// Centroidal Voronoi mesh of a benchmark's domain.
    #[staticmethod]
    #[pyo3(signature = (name, n_seeds, lloyd_iterations = 30, seed = 1))]
    fn for_benchmark(
        name: &str,
        n_seeds: usize,
        lloyd_iterations: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let domain = benchmark(name)?.domain();
        let inner =
            mesh::generate_cvt_mesh(&domain, n_seeds, lloyd_iterations, seed).map_err(err)?;
        Ok(PyMesh { inner })
    }

    /// Single polygon from a list of `(x, y)` vertices in counter-clockwise order.
    #[staticmethod]
    fn polygon(vertices: Vec<Vec<f64>>) -> PyResult<Self> {
        let nodes = vertices
            .iter()
            .map(|v| point(v))
            .collect::<PyResult<Vec<_>>>()?;
        let n = nodes.len();
        let inner = PolytopeMesh::new(
            Dim::Two,
            nodes,
            vec![mesh::Polytope::Polygon((0..n).collect())],
        );
        inner.validate().map_err(err)?;
        Ok(PyMesh { inner })
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(PyMesh {
            inner: mesh::read_mesh(path).map_err(err)?,
        })
    }

    fn write(&self, path: &str) -> PyResult<()> {
        mesh::write_mesh(&self.inner, path).map_err(err)
    }

    #[pyo3(signature = (path, displacement = None))]
    fn write_vtk(&self, path: &str, displacement: Option<Vec<f64>>) -> PyResult<()> {
        mesh::vtk::write_vtk(&self.inner, displacement.as_deref(), path).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim.n()
    }

    #[getter]
    fn n_nodes(&self) -> usize {
        self.inner.n_nodes()
    }

    #[getter]
    fn n_elements(&self) -> usize {
        self.inner.n_elements()
    }

    #[getter]
    fn nodes(&self) -> Vec<Vec<f64>> {
        let d = self.inner.dim.n();
        self.inner
            .nodes
            .iter()
            .map(|p| p.iter().take(d).copied().collect())
            .collect()
    }

    /// Vertex indices of every element.
    #[getter]
    fn elements(&self) -> Vec<Vec<usize>> {
        self.inner
            .elements
            .iter()
            .map(|e| e.vertices().to_vec())
            .collect()
    }

    fn measure(&self) -> f64 {
        self.inner.measure()
    }

    fn mesh_size(&self) -> f64 {
        self.inner.mesh_size()
    }

    fn __repr__(&self) -> String {
        format!(
            "Mesh(dim={}, nodes={}, elements={})",
            self.dim(),
            self.n_nodes(),
            self.n_elements()
        )
    }
}

/// Linear elastic material.
#[pyclass(name = "Material", module = "polysmooth")]
#[derive(Clone, Copy)]
struct PyMaterial {
    inner: smoothing::Material,
}

#[pymethods]
impl PyMaterial {
    #[staticmethod]
    fn plane_stress(e: f64, nu: f64) -> PyResult<Self> {
        Ok(PyMaterial {
            inner: smoothing::Material::plane_stress(e, nu).map_err(err)?,
        })
    }

    #[staticmethod]
    fn plane_strain(e: f64, nu: f64) -> PyResult<Self> {
        Ok(PyMaterial {
            inner: smoothing::Material::plane_strain(e, nu).map_err(err)?,
        })
    }

    #[staticmethod]
    fn isotropic_3d(e: f64, nu: f64) -> PyResult<Self> {
        Ok(PyMaterial {
            inner: smoothing::Material::isotropic_3d(e, nu).map_err(err)?,
        })
    }

    #[getter]
    fn e(&self) -> f64 {
        self.inner.e
    }

    #[getter]
    fn nu(&self) -> f64 {
        self.inner.nu
    }

    fn __repr__(&self) -> String {
        format!(
            "Material(e={}, nu={}, {:?})",
            self.inner.e, self.inner.nu, self.inner.model
        )
    }
}

/// Element stiffness matrix of element `element` as a list of rows, and the
/// number of interior basis evaluations.
#[pyfunction]
#[pyo3(signature = (mesh, material, scheme_name = "ls1", element = 0))]
fn element_stiffness(
    mesh: &PyMesh,
    material: &PyMaterial,
    scheme_name: &str,
    element: usize,
) -> PyResult<(Vec<Vec<f64>>, usize)> {
    if element >= mesh.inner.n_elements() {
        return Err(PolysmoothError::new_err(format!(
            "element {element} out of range"
        )));
    }
    let data = smoothing::ElementData::new(&mesh.inner, element).map_err(err)?;
    let m = smoothing::element_stiffness(
        &data,
        &material.inner,
        scheme(scheme_name)?,
        &SmoothingOptions::default(),
    )
    .map_err(err)?;
    let rows = (0..m.k.nrows())
        .map(|i| m.k.row(i).iter().copied().collect())
        .collect();
    Ok((rows, m.interior_points))
}

/// Assemble and solve with the affine displacement `u = shift + grad x` on the
/// whole boundary. Returns nodal displacements (flattened), strain energy and
/// the relative L2/H1 errors against the affine field.
#[pyfunction]
#[pyo3(signature = (mesh, material, grad, shift, scheme_name = "ls1"))]
fn solve_affine<'py>(
    py: Python<'py>,
    mesh: &PyMesh,
    material: &PyMaterial,
    grad: Vec<Vec<f64>>,
    shift: Vec<f64>,
    scheme_name: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let d = mesh.inner.dim.n();
    if grad.len() != d || grad.iter().any(|r| r.len() != d) || shift.len() != d {
        return Err(PolysmoothError::new_err(format!(
            "grad must be {d}x{d} and shift of length {d}"
        )));
    }
    let g = Matrix3::from_fn(|i, j| if i < d && j < d { grad[i][j] } else { 0.0 });
    let c = point(&shift)?;
    let sc = scheme(scheme_name)?;
    let mut bc = BoundaryCondition::new();
    bc.fix_tagged(&mesh.inner, |_| true, |x| c + g * x);
    let m = &mesh.inner;
    let (field, energy, norms) = py
        .detach(|| -> core::Result<_> {
            let sys = solver::assemble(
                m,
                &material.inner,
                sc,
                None,
                &bc,
                &SmoothingOptions::default(),
            )?;
            let field = solver::solve(m, &sys, &bc)?;
            let energy = solver::strain_energy(&field, &sys);
            let norms = solver::error_norms(m, &field, &|x| c + g * x, &|_| g)?;
            Ok((field, energy, norms))
        })
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("displacement", field.values)?;
    out.set_item("energy", energy)?;
    out.set_item("l2", norms.l2)?;
    out.set_item("h1", norms.h1)?;
    Ok(out)
}

/// Run a named benchmark and return its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, levels = None, schemes = None, seed = 1, lloyd_iterations = 30, out = None))]
fn run_benchmark<'py>(
    py: Python<'py>,
    name: &str,
    levels: Option<Vec<usize>>,
    schemes: Option<Vec<String>>,
    seed: u64,
    lloyd_iterations: usize,
    out: Option<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut spec = BenchmarkSpec::new(benchmark(name)?);
    if let Some(l) = levels {
        spec.levels = l;
    }
    if let Some(s) = schemes {
        spec.schemes = s.iter().map(|s| scheme(s)).collect::<PyResult<_>>()?;
    }
    spec.rng_seed = seed;
    spec.lloyd_iterations = lloyd_iterations;
    spec.output = out.map(Into::into);
    let report = py.detach(|| bench::run_benchmark(&spec)).map_err(err)?;
    to_python(py, &report)
}

/// Run a named benchmark on user meshes (one per level, coarse to fine).
#[pyfunction]
#[pyo3(signature = (name, meshes, schemes = None))]
fn run_on_meshes<'py>(
    py: Python<'py>,
    name: &str,
    meshes: Vec<PyMesh>,
    schemes: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut spec = BenchmarkSpec::new(benchmark(name)?);
    if let Some(s) = schemes {
        spec.schemes = s.iter().map(|s| scheme(s)).collect::<PyResult<_>>()?;
    }
    let meshes: Vec<PolytopeMesh> = meshes.into_iter().map(|m| m.inner).collect();
    let report = py
        .detach(|| bench::run_on_meshes(&spec, &meshes))
        .map_err(err)?;
    to_python(py, &report)
}

/// One-point quadrature versus a dense Gauss rule on the built-in shapes.
#[pyfunction]
fn integration_demo(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let rows = bench::run_integration_demo(&bench::demo_shapes()).map_err(err)?;
    to_python(py, &rows)
}

/// Least-squares slope of `log(error)` against `log(h)`.
#[pyfunction]
fn convergence_report(py: Python<'_>, h: Vec<f64>, errors: Vec<f64>) -> PyResult<Bound<'_, PyAny>> {
    let r = bench::convergence_report(&h, &errors).map_err(err)?;
    to_python(py, &r)
}

#[pymodule]
#[pyo3(name = "polysmooth")]
fn polysmooth_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PolysmoothError", m.py().get_type::<PolysmoothError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMesh>()?;
    m.add_class::<PyMaterial>()?;
    m.add_function(wrap_pyfunction!(element_stiffness, m)?)?;
    m.add_function(wrap_pyfunction!(solve_affine, m)?)?;
    m.add_function(wrap_pyfunction!(run_benchmark, m)?)?;
    m.add_function(wrap_pyfunction!(run_on_meshes, m)?)?;
    m.add_function(wrap_pyfunction!(integration_demo, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_report, m)?)?;
    Ok(())
}
