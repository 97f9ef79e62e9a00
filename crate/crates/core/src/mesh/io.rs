//! JSON mesh files.
//!
//! ```json
//! { "dim": 2,
//!   "nodes": [[0,0],[1,0],[1,1],[0,1]],
//!   "elements": [[0,1,2,3]],
//!   "boundary": [{"element": 0, "facet": 0, "tag": "ymin"}] }
//! ```
//!
//! Three-dimensional files carry `faces`: for each element, a list of
//! outward-oriented node loops. `elements` is then optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BoundaryFacet, Polytope, PolytopeMesh};
use crate::error::{Error, Result};
use crate::geometry::{Dim, Point};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub element: usize,
    pub facet: usize,
    pub tag: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeshFile {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    #[serde(default)]
    pub elements: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default)]
    pub boundary: Vec<BoundaryRecord>,
}

impl From<&PolytopeMesh> for MeshFile {
    fn from(mesh: &PolytopeMesh) -> Self {
        let d = mesh.dim.n();
        let faces = match mesh.dim {
            Dim::Two => None,
            Dim::Three => Some(
                mesh.elements
                    .iter()
                    .map(|el| match el {
                        Polytope::Polyhedron { faces, .. } => faces.clone(),
                        Polytope::Polygon(_) => Vec::new(),
                    })
                    .collect(),
            ),
        };
        MeshFile {
            dim: d,
            nodes: mesh
                .nodes
                .iter()
                .map(|p| p.as_slice()[..d].to_vec())
                .collect(),
            elements: mesh
                .elements
                .iter()
                .map(|el| el.vertices().to_vec())
                .collect(),
            faces,
            boundary: mesh
                .boundary
                .iter()
                .map(|b| BoundaryRecord {
                    element: b.element,
                    facet: b.facet,
                    tag: b.tag.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<MeshFile> for PolytopeMesh {
    type Error = Error;

    fn try_from(f: MeshFile) -> Result<Self> {
        let dim = Dim::from_usize(f.dim)
            .ok_or_else(|| Error::InvalidMesh(format!("unsupported dimension {}", f.dim)))?;
        let d = dim.n();
        let nodes = f
            .nodes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.len() != d {
                    return Err(Error::InvalidMesh(format!(
                        "node {i} has {} coordinates, expected {d}",
                        c.len()
                    )));
                }
                Ok(Point::new(c[0], c[1], if d == 3 { c[2] } else { 0.0 }))
            })
            .collect::<Result<Vec<_>>>()?;
        let elements = match dim {
            Dim::Two => f.elements.into_iter().map(Polytope::Polygon).collect(),
            Dim::Three => f
                .faces
                .ok_or_else(|| Error::InvalidMesh("3D mesh file needs `faces`".into()))?
                .into_iter()
                .map(Polytope::polyhedron)
                .collect(),
        };
        let mut mesh = PolytopeMesh::new(dim, nodes, elements);
        mesh.boundary = f
            .boundary
            .into_iter()
            .map(|b| BoundaryFacet {
                element: b.element,
                facet: b.facet,
                tag: b.tag,
            })
            .collect();
        mesh.validate()?;
        Ok(mesh)
    }
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<PolytopeMesh> {
    let text = fs::read_to_string(path)?;
    let file: MeshFile = serde_json::from_str(&text)?;
    file.try_into()
}

pub fn write_mesh(mesh: &PolytopeMesh, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string(&MeshFile::from(mesh))?;
    fs::write(path, text)?;
    Ok(())
}
