use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("genus {0} is below the supported minimum of 2")]
    GenusTooSmall(u32),
    #[error("a polygon needs at least 3 sides, got {0}")]
    PolygonTooSmall(usize),
    #[error("side label {0} does not occur exactly twice")]
    UnpairedLabel(usize),
    #[error("triangle side {0} has no gluing partner")]
    Dangling(usize),
    #[error("vertex link visits {0} of {1} corners; surface has more than one vertex")]
    NotOneVertex(usize, usize),
    #[error("malformed triangulation json: {0}")]
    Json(String),
    #[error("unsupported triangulation schema version {0}")]
    Schema(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is inessential (bounds a disk or encircles the vertex)")]
    Inessential,
    #[error("input describes {0} components, expected a single curve")]
    MultipleComponents(usize),
    #[error("curve is not simple ({0} self-crossings)")]
    NotSimple(u64),
    #[error("curve is a proper power of another curve")]
    NotPrimitive,
    #[error("weight vector has length {got}, surface has {expected} edges")]
    WrongLength { got: usize, expected: usize },
    #[error("weights violate the matching condition in triangle {0}")]
    NotNormal(usize),
    #[error("weights are not those of the curve's geodesic representative")]
    NotCanonical,
    #[error("invalid polygon side letter {0}")]
    BadLetter(usize),
    #[error("geodesic passes through the polygon vertex; refusing a degenerate cutting sequence")]
    ThroughVertex,
    #[error("geodesic trace did not close after {0} chords")]
    TraceDiverged(usize),
    #[error("two curves meet in a numerically degenerate position")]
    Degenerate,
    #[error("curves live on different surfaces ({0} vs {1})")]
    SurfaceMismatch(String, String),
    #[error("curves in a cut system intersect")]
    NotDisjoint,
    #[error("curve is not separating")]
    NotSeparating,
    #[error("twist exponent must be nonzero")]
    ZeroExponent,
    #[error("({0}) is not a bounding pair")]
    NotBoundingPair(String),
}
