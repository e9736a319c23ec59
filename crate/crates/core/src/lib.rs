//! Exact enumeration of nodal curves on toric Del Pezzo surfaces through
//! λ-admissible lattice paths in their Newton polygons.
//!
//! Every count is an exact integer: a path is compressed into nodal
//! subdivisions of the polygon, each subdivision is weighted by the product
//! of its triangle areas for complex counts, and odd irreducible
//! subdivisions contribute a sign to the Welschinger count.

pub mod bounds;
pub mod classify;
pub mod compression;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod oracles;
pub mod order;
pub mod paths;
pub mod surfaces;
pub mod svg;
pub mod tropical_dual;

pub use classify::{ClassifiedSubdivision, Subdivision};
pub use engine::{count, CountKind, CountReport, CountRequest};
pub use error::{BoundError, CountError, GeometryError, OrderError, SurfaceError, TropicalError};
pub use lattice::{Cell, CellKind, LatticePoint, LatticePolygon};
pub use order::LambdaOrder;
pub use paths::LatticePath;
pub use surfaces::SurfaceSpec;
