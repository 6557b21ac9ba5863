//! Exact construction, factorization, and verification of special
//! orthogonal matrices with rational entries.
//!
//! Everything here runs over arbitrary-precision rationals; no value is ever
//! rounded, and every check (orthogonality, determinant, round trips) is an
//! exact structural equality. The pieces fit together like this:
//!
//! * [`rational`] — the scalar field: canonical reduced fractions.
//! * [`linalg`] — dense rational matrices with fraction-free determinant,
//!   exact inverse, block embedding, and the membership test.
//! * [`sphere`] — the stereographic projection between rational unit
//!   vectors and free rational coordinates, exact in both directions.
//! * [`cayley`] — the Cayley transform and the closed-form rotation
//!   attached to a coordinate vector (or to the point at infinity).
//! * [`factor`] — composing a chain of such rotations and, in reverse,
//!   peeling any rational rotation down to its unique parameter chain.
//! * [`generate`] — seeded, platform-independent random chains and
//!   rotations (every output passes the membership test exactly).
//! * [`io`] — bit-exact JSON and text serialization.
//! * [`batch`] — data-parallel batch operations (rayon behind the default
//!   `parallel` feature, with sequential fallbacks).

pub mod batch;
pub mod cayley;
pub mod factor;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod sphere;

pub use cayley::{
    cayley_inverse, cayley_transform, elementary_rotation, rotation_from_params,
    rotation_via_cayley, skew_param_matrix, CayleyError, PlanarUnit,
};
pub use factor::{
    compose, compose_via_cayley, decompose, verify_report, FactorChain, FactorError, VerifyReport,
};
pub use generate::{
    item_stream, random_rotation, sample_chain, sample_rational, stream, GenConfig, GenError,
};
pub use linalg::{LinalgError, MatQ};
pub use rational::{BigInt, NumberError, Rational};
pub use sphere::{ExtParam, SphereError, SpherePoint, StereoCoords};
