//! Brauer complexes of symmetric special biserial algebras.
//!
//! A symmetric SB-algebra is determined by a Brauer graph: a finite graph
//! with a cyclic order of half-edges around every vertex and a positive
//! integer multiplicity per vertex. Gluing one polygon onto each face walk
//! turns the graph into a closed oriented surface, the *Brauer complex*.
//! This crate models those complexes as half-edge structures and provides
//!
//! * exact (rational) multiplication tables of the associated algebras,
//!   with center and Hom-space computations,
//! * the derived-equivalence invariants (perimeter multiset, multiplicity
//!   multiset, genus, bipartiteness, center dimension),
//! * the three elementary tilting transformations together with their
//!   two-term tilting complexes,
//! * orbit enumeration under tilting moves, and
//! * a constructive decision procedure for derived equivalence in genus 0,
//!   including replayable move-sequence witnesses.
//!
//! All structures are immutable after construction and safe to share
//! across threads; transformations return fresh values.

pub mod algebra;
pub mod enumerate;
pub mod genus0;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod orbit;
pub mod presets;
pub mod quiver;
pub mod ribbon;
pub mod tilting;

pub use invariants::{compare, signature, InvariantSignature};
pub use ribbon::{BrauerComplex, CanonicalForm, Face, RibbonComplex};
