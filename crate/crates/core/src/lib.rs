//! Exact geometry of the Laplacian lattice of a connected multigraph under
//! the simplicial distance function.
//!
//! Everything here is exact integer or rational arithmetic except the
//! Laplacian spectrum (cyclic Jacobi), which feeds only the density
//! invariants and the Ramanujan checks.

#![allow(clippy::needless_range_loop)]

pub mod chipfire;
pub mod cli;
pub mod delaunay;
pub mod error;
pub mod exact;
pub mod graph;
pub mod hull;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod oracles;
pub mod reconstruct;
pub mod svg;

pub use error::{Error, Result};
pub use exact::Rational;
pub use graph::{Cut, GraphGenus, LaplacianMatrix, Multigraph};
pub use lattice::{LaplacianLattice, LatticePoint, Orientation, RationalPoint};

/// Size guards for the enumerative routines. Exceeding one is reported as
/// [`Error::GuardExceeded`], never answered approximately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertex count for cut enumeration (`MC_inf`, shortest vector).
    pub enumeration_vertices: usize,
    /// Vertex count for building the Delaunay polytope (`2^(n+1) - 2` vertices).
    pub polytope_vertices: usize,
    /// Vertex count for backtracking isomorphism search.
    pub isomorphism_vertices: usize,
    /// Vertex count for the exhaustive fallback of point location.
    pub locate_vertices: usize,
    /// Vertex count for enumerating vertex orders in the critical-point oracle.
    pub critical_vertices: usize,
    /// Largest grid resolution for the grid oracles.
    pub grid_resolution: usize,
    /// Largest dimension `n` for the exact convex hull.
    pub hull_dimension: usize,
    /// Vertex count for the exhaustive graph census.
    pub census_vertices: usize,
    /// Largest edge multiplicity in the census.
    pub census_multiplicity: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_vertices: 24,
            polytope_vertices: 12,
            isomorphism_vertices: 10,
            locate_vertices: 8,
            critical_vertices: 8,
            grid_resolution: 64,
            hull_dimension: 3,
            census_vertices: 4,
            census_multiplicity: 3,
        }
    }
}

impl Limits {
    /// No guards at all. Running time is then the caller's problem.
    pub fn unlimited() -> Self {
        Limits {
            enumeration_vertices: usize::MAX,
            polytope_vertices: usize::MAX,
            isomorphism_vertices: usize::MAX,
            locate_vertices: usize::MAX,
            critical_vertices: usize::MAX,
            grid_resolution: usize::MAX,
            hull_dimension: usize::MAX,
            census_vertices: usize::MAX,
            census_multiplicity: u32::MAX,
        }
    }
}

pub(crate) fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
