//! Discrete Dirac–Kähler calculus on a periodic four-dimensional lattice.
//!
//! A discrete inhomogeneous form assigns a complex coefficient to every
//! (lattice site, Clifford blade) pair. Site-wise Clifford multiplication with
//! the Minkowski metric `diag(1, -1, -1, -1)` turns the space of forms into an
//! algebra, and the forward differences `Δ_μ` give the exterior derivative
//! `d_c`, the codifferential `delta_c` and the Dirac operator `Σ e_μ Δ_μ`.
//!
//! On top of that the crate provides residuals for the discrete Dirac–Kähler,
//! Hestenes, Joyce and volume-form equations, the six constant projectors and
//! the decompositions built from them, and a momentum-space solver that
//! manufactures exact plane-wave solutions for all four equations.
//!
//! ```
//! use dklattice::{calculus, FormField, LatticeShape};
//!
//! let shape = LatticeShape::new([3, 3, 3, 3]).unwrap();
//! let mut rng = dklattice::rng::seeded(1);
//! let omega = FormField::random(shape, &mut rng);
//! let lhs = calculus::d_c(&omega).add(&calculus::delta_c(&omega)).unwrap();
//! let rhs = calculus::dirac(&omega);
//! assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
//! ```

pub mod calculus;
pub mod clifford;
pub mod equations;
pub mod error;
pub mod formfile;
pub mod forms;
pub mod lattice;
pub mod rng;
pub mod solver;
pub mod verify;

pub use clifford::{Blade, Multivector, SignedBlade};
pub use equations::{EquationKind, MassParameter, ProjectorFamily, ProjectorKind};
pub use error::{Error, Result};
pub use forms::FormField;
pub use lattice::{LatticeShape, SiteIndex};
pub use num_complex::Complex64;
pub use solver::MomentumMode;
