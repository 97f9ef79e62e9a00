use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate simplex: measure {measure:e} is below tolerance {tolerance:e}")]
    DegenerateSimplex { measure: f64, tolerance: f64 },

    #[error("element {element} is not star-convex about its vertex mean")]
    NotStarConvex { element: usize },

    #[error("seeds {first} and {second} collide (distance {distance:e})")]
    SeedCollision {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error(
        "query point is not strictly inside the element (distance {distance:e} to facet {facet})"
    )]
    QueryOutside { facet: usize, distance: f64 },

    #[error("degenerate facet {facet}: {reason}")]
    DegenerateFacet { facet: usize, reason: String },

    #[error(
        "vertex {vertex} has {faces} incident faces; Wachspress coordinates need exactly 3 \
         (perturb the vertex or merge the coplanar faces)"
    )]
    NonSimpleVertex { vertex: usize, faces: usize },

    #[error("face {face} is not planar (deviation {deviation:e})")]
    NonPlanarFace { face: usize, deviation: f64 },

    #[error("smoothing cell is ill-conditioned (condition estimate {condition:e})")]
    IllConditionedCell { condition: f64 },

    #[error("missing basis evaluation: {0}")]
    MissingBasis(String),

    #[error("scheme {scheme} is not available in {dim}D")]
    UnsupportedScheme { scheme: String, dim: usize },

    #[error("singular system: {message}")]
    Singular {
        message: String,
        unconstrained_modes: Vec<String>,
    },

    #[error("solver residual {residual:e} exceeds {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    #[error("at least {required} points are needed, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("element {element}: {source}")]
    Element {
        element: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn in_element(self, element: usize) -> Self {
        match self {
            Error::Element { .. } => self,
            other => Error::Element {
                element,
                source: Box::new(other),
            },
        }
    }
}
