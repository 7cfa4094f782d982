//! Planar geodesic nets.
//!
//! A geodesic net is a straight-line graph in the plane whose vertices are
//! either pinned (unbalanced) or balanced: the unit vectors along the edges at
//! a balanced vertex sum to zero. This crate builds such nets (including a
//! 16-balanced-vertex irreducible example on four boundary points and a
//! reducible "overlay" net), verifies them, relaxes arbitrary topologies to
//! critical points of total length, and decides irreducibility with a
//! propagation-based subnet search.

pub mod construct;
pub mod error;
pub mod geom;
pub mod io;
pub mod irreducible;
pub mod net;
pub mod solver;
pub mod svg;

pub use construct::{
    build_default_overlay_net, build_fermat_tripod, build_octagon, build_overlay_net,
    build_paper_net, build_paper_pre_net, fermat_point, place_boundary, OverlayTerminals,
    PaperConstants, Triangle,
};
pub use error::{Error, Result};
pub use geom::{
    angle_at, intersect, rotate, unit_vector, IntersectionKind, Point, Segment, UnitVec, Vec2,
};
pub use io::NetDocument;
pub use irreducible::{
    balanced_edge_subsets, find_proper_subnet, find_proper_subnet_with, is_geodesic_subnet,
    is_irreducible, SearchOptions, SubnetCertificate, SubnetSearch, TraceStep,
};
pub use net::{
    balance_residual, is_symmetric_under_quarter_turn, planarize, verify, verify_with, DegreeRule,
    Edge, Net, VerifyReport, Vertex, VertexKind, DEFAULT_MERGE_EPS, DEFAULT_TOL,
};
pub use solver::{
    length_gradient, relax, total_length, Gradient, RelaxParams, RelaxResult, Topology,
};
pub use svg::{render_svg, RenderOptions};
