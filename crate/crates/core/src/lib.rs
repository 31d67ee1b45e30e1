//! Finite-dimensional C*-algebras of complex matrices.
//!
//! The crate works with *-subalgebras of M_n(ℂ) stored by an orthonormal
//! basis. On top of a small dense linear algebra kernel it provides spectra
//! and functional calculus, characters and the Gelfand transform, positive
//! functionals, states and the GNS construction, and a discretized
//! particle-in-a-box model.
//!
//! ```
//! use cstar_core::{spectral, Algebra, CMat, Field};
//!
//! let a = Algebra::full(2).element(CMat::real(&[[3.0, 2.0], [1.0, 4.0]])).unwrap();
//! let s = spectral::spectrum(&a, Field::Complex).unwrap();
//! assert!((s.points[0].re - 2.0).abs() < 1e-10 && (s.points[1].re - 5.0).abs() < 1e-10);
//! ```

pub mod algebra;
pub mod error;
pub mod gelfand;
pub mod linalg;
pub mod optimize;
pub mod qm;
pub mod random;
pub mod spectral;
pub mod states;

pub use algebra::{
    algebra_from_generators, complexify, direct_sum_algebras, find_identity, ideal_check, is_abelian, quotient,
    quotient_norm, unitize, Algebra, ClosureOptions, Element, Field, IdealKind, QuotientAlgebra, SubspaceBasis,
};
pub use error::{Error, Result};
pub use gelfand::{Character, GelfandSpectrum};
pub use linalg::{CMat, C64, DEFAULT_TOL};
pub use spectral::{RadiusTrace, SpectrumReport};
pub use states::{Functional, GnsRepresentation, Representation, State};
