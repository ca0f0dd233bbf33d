//! Determinantal arrangements on the columns of a generic 2×n matrix.
//!
//! The crate covers exact polynomial arithmetic over `Z[x1..xn, y1..yn]`,
//! polynomial determinants, graphs and chordality, the arrangements
//! `V(∏ Δ_ij)` attached to graphs, logarithmic derivations with Saito's
//! criterion, and factored Poincaré polynomials of arrangement complements.

pub mod arrangement;
pub mod derivations;
pub mod graphs;
pub mod polymatrix;
pub mod polyring;
pub mod topology;

pub use arrangement::{minor, Arrangement, ArrangementError};
pub use derivations::{
    Derivation, DerivationError, SaitoMode, SaitoReport, SaitoVerdict, StdBasis,
};
pub use graphs::{Graph, GraphError};
pub use polymatrix::{MatrixError, PolyMatrix};
pub use polyring::{PolyError, Polynomial, Ring, VarId, VarKind};
pub use topology::{FactoredUniPoly, TopologyError, UniPoly};
