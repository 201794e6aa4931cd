//! Commutator key establishment over the metabelian platform groups
//! `U_F ⋉ O_F` built from number fields, together with two deterministic
//! linear-algebra attacks that recover the shared key from public data.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, fixtures, timing and
//! the command-line driver live in the companion `cke` crate.
//!
//! Layout:
//!
//! * [`linalg`]: exact rational scalars, vectors and dense matrices.
//! * [`field`]: arithmetic in `F = Q[x]/(f)`, polynomial and matrix models.
//! * [`platform`]: the pair model of `G_F`, words, fixtures' invariants.
//! * [`pc`]: the polycyclic presentation and the deduced semidirect product.
//! * [`protocol`]: the two-party commutator key establishment.
//! * [`attack`]: the field based attacks over `F* ⋉ F` and over `Q`.
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(missing_debug_implementations)]

extern crate alloc;

pub mod attack;
pub mod field;
pub mod group;
pub mod linalg;
pub mod pc;
pub mod platform;
pub mod protocol;

pub use attack::{AttackError, Fba2Solution, FbaSolution};
pub use field::{FieldElement, FieldError, MonicIntPolynomial, NumberField};
pub use group::{GroupModel, GroupWord, Letter, WordError};
pub use linalg::{BigRational, LinalgError, QMatrix, QVector, SolveResult};
pub use pc::{DeducedElement, DeducedGroup, PcPresentation};
pub use platform::{GroupElement, PlatformData, PlatformError, PlatformSpec};
pub use protocol::{ProtocolError, ProtocolParams, ProtocolWords, PublicView, Transcript};
