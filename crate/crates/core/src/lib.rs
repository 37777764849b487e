//! Entanglement of two magnetic impurities by a scattered electron.
//!
//! An electron travelling along a one-dimensional lattice interacts with two
//! spin-1/2 impurities through a Heisenberg exchange `U S_e · S_i`. The
//! multiple-scattering problem is solved in closed form with the lattice
//! Green's function, giving the reflected and transmitted spin states, the
//! reflection/transmission probabilities, and the negativity of the reduced
//! two-impurity state.
//!
//! Two lattices are supported: a tight-binding chain and the A-type edge band
//! of a zigzag phosphorene nanoribbon.
//!
//! ```
//! use spinscatter::{Lattice, ScatterProblem, SpinLabel, scatter};
//!
//! let lattice = Lattice::chain_with_u_prime(10.0);
//! let problem = ScatterProblem::new(lattice, 2, 1.0, SpinLabel::parse("udd").unwrap().into());
//! let out = scatter(&problem).unwrap();
//! assert!((out.reflection + out.transmission - 1.0).abs() < 1e-10);
//! ```

pub mod entanglement;
pub mod error;
pub mod lattice;
pub mod oracles;
pub mod scattering;
pub mod spin;

pub use entanglement::{density_matrices, negativity, CombineMode, EntanglementReport};
pub use error::{Error, Result};
pub use lattice::{ChainParams, GreensKernel, Lattice, ZpnrParams};
pub use scattering::{scatter, solve_auxiliary, ScatterOutcome, ScatterProblem};
pub use spin::{DensityMatrix, SpinLabel, SpinVector};

pub use num_complex::Complex64;
