//! Topology of real toric varieties computed from their fans.
//!
//! Given a smooth rational fan, this crate decides connectedness of the real
//! toric variety `X(Δ)`, produces Reidemeister–Schreier presentations of its
//! fundamental group, decides whether that group is abelian (and if so its
//! structure), decides asphericity, and analyses the associated real
//! coordinate subspace arrangement. A word engine for the right-angled
//! Coxeter group `W(Δ)` backs every group-level computation and doubles as
//! the verification oracle.
//!
//! Module map:
//!
//! * [`fan`]: fans, faces, primitive collections, stars, barycentric refinement.
//! * [`racg`]: normal forms and orders in right-angled Coxeter groups.
//! * [`pi1`]: characteristic matrix, connectedness, presentations, abelianness.
//! * [`present`]: finitely presented groups, Smith normal form, abelianization.
//! * [`topology`]: asphericity and the subspace arrangement complement.
//! * [`catalog`]: named fans (projective spaces, Hirzebruch surfaces, blow-ups).

pub mod catalog;
pub mod fan;
mod gf2;
mod lattice;
mod lp;
pub mod pi1;
pub mod present;
pub mod racg;
pub mod topology;

pub use fan::{Cone, Fan, FanError, RayVector};
pub use gf2::Gf2Vector;
pub use present::{AbelianInvariants, IntMatrix, Presentation};
pub use racg::{CommutationGraph, NormalForm, Order, Word};
