//! Exact computations on translation surfaces arising from the Platonic
//! solids: unfoldings, Veech group orbits, Teichmüller curve topology and the
//! classification of closed saddle connections on the unfolded dodecahedron.
//!
//! All geometry is exact over `Q(2 sin(pi/5))`; floating point numbers only
//! appear in reports.

pub mod error;
pub mod exactnum;
pub mod flatsurface;
pub mod orbit;
pub mod origami;
pub mod planar;
pub mod platonic;
pub mod render;
pub mod saddle;
pub mod teichcurve;

pub use error::{Error, Result};
pub use platonic::Permutation;
