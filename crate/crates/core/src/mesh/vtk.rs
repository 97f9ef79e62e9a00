//! Legacy ASCII VTK export for visual inspection.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Polytope, PolytopeMesh};
use crate::error::Result;
use crate::geometry::Dim;

/// Render the mesh, with optional nodal displacements (`dim` values per node).
pub fn to_vtk_string(mesh: &PolytopeMesh, displacement: Option<&[f64]>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# vtk DataFile Version 3.0\npolysmooth mesh\nASCII");
    let header = match mesh.dim {
        Dim::Two => "DATASET POLYDATA",
        Dim::Three => "DATASET UNSTRUCTURED_GRID",
    };
    let _ = writeln!(s, "{header}\nPOINTS {} double", mesh.n_nodes());
    for p in &mesh.nodes {
        let _ = writeln!(s, "{} {} {}", p.x, p.y, p.z);
    }
    match mesh.dim {
        Dim::Two => {
            let size: usize = mesh.elements.iter().map(|e| e.vertices().len() + 1).sum();
            let _ = writeln!(s, "POLYGONS {} {size}", mesh.n_elements());
            for el in &mesh.elements {
                let v = el.vertices();
                let _ = writeln!(s, "{} {}", v.len(), join(v));
            }
        }
        Dim::Three => {
            let mut rows = Vec::with_capacity(mesh.n_elements());
            for el in &mesh.elements {
                if let Polytope::Polyhedron { faces, .. } = el {
                    let mut row = vec![0usize, faces.len()];
                    for f in faces {
                        row.push(f.len());
                        row.extend(f);
                    }
                    row[0] = row.len() - 1;
                    rows.push(row);
                }
            }
            let size: usize = rows.iter().map(|r| r.len()).sum();
            let _ = writeln!(s, "CELLS {} {size}", rows.len());
            for r in &rows {
                let _ = writeln!(s, "{}", join(r));
            }
            let _ = writeln!(s, "CELL_TYPES {}", rows.len());
            for _ in &rows {
                let _ = writeln!(s, "42");
            }
        }
    }
    if let Some(u) = displacement {
        let d = mesh.dim.n();
        let _ = writeln!(
            s,
            "POINT_DATA {}\nVECTORS displacement double",
            mesh.n_nodes()
        );
        for i in 0..mesh.n_nodes() {
            let z = if d == 3 { u[3 * i + 2] } else { 0.0 };
            let _ = writeln!(s, "{} {} {}", u[d * i], u[d * i + 1], z);
        }
    }
    s
}

pub fn write_vtk(
    mesh: &PolytopeMesh,
    displacement: Option<&[f64]>,
    path: impl AsRef<Path>,
) -> Result<()> {
    fs::write(path, to_vtk_string(mesh, displacement))?;
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
