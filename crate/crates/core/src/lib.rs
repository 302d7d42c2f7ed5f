//! Construction and certified spectral bounds for large-genus hyperbolic
//! surfaces assembled from chained trivalent graphs.
//!
//! The pipeline: pick a cuff length `eps`, build a connected cubic multigraph
//! whose girth is large enough that the cuffs realize the systole, assemble
//! the surface in Fenchel-Nielsen coordinates (every cuff length equal to
//! `eps`), certify the systole, and then sandwich the low Laplacian
//! eigenvalues between a Cheeger-type lower bound and Rayleigh-quotient upper
//! bounds evaluated on explicit piecewise test functions. The discrete
//! weighted-Laplacian models give certified upper bounds that scale like
//! `1/genus^2`.
//!
//! Modules:
//! - [`hypgeom`]: closed-form pants/collar trigonometry plus independent
//!   numerical oracles (quadrature, discrete variational minimization).
//! - [`graphs`]: cubic multigraphs, girth, bridges, the configuration model,
//!   high-girth block construction and chained graphs.
//! - [`surface`]: the Fenchel-Nielsen surface model and its decomposition
//!   along separating cuffs.
//! - [`certify`]: systole certificates and the Cheeger eigenvalue lower bound.
//! - [`rayleigh`]: test-function families, closed-form bounds, discrete
//!   models and the generalized symmetric eigensolver.

pub mod certify;
pub mod error;
pub mod graphs;
pub mod hypgeom;
pub mod rayleigh;
pub mod surface;

pub use error::{Error, Result};
