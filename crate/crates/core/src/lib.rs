//! Exact arithmetic and combinatorics for Teichmüller polynomials of
//! pseudo-Anosov braids on punctured discs.
//!
//! The pipeline goes: a braid word becomes a closed path of folding moves
//! in a decorated automaton of standard train tracks ([`track`],
//! [`automaton`]); the path's transition matrices, decoration vectors and
//! relabeling matrix assemble into a matrix over a Laurent polynomial
//! ring ([`ring`], [`teich`]) whose characteristic polynomial in `u` is the
//! Teichmüller polynomial of the fibered face. Downstream modules evaluate
//! it: stretch factors ([`teich`]), Alexander polynomials and homological
//! dilatations via the reduced Burau representation ([`burau`]), norm balls
//! and fibered cones ([`norms`]), and the topology of every fiber in the
//! cone ([`fiber`]). Built-in seed tracks and loops live in [`families`].

pub mod automaton;
pub mod burau;
pub mod families;
pub mod fiber;
pub mod norms;
pub mod ring;
pub mod teich;
pub mod track;

pub use automaton::{Automaton, AutomatonLoop, DecoratedMove};
pub use burau::BraidWord;
pub use fiber::{FiberReport, LinkData};
pub use norms::{FiberedFace, NormBall};
pub use ring::{CohomologyClass, ExponentVector, LaurentPoly, PolyMatrix};
pub use teich::{TMap, TeichResult};
pub use track::{FoldSpec, SignedPerm, TrainTrack, Weights};
