//! Families of DFAs (FDFAs) as acceptors of ultimately periodic ω-words.
//!
//! An FDFA is a leading DFA without acceptance plus one progress DFA per
//! leading state. A pair `(u, v)` is normalized to `(u·v^i, v^j)` so that the
//! leading automaton loops on the period, and the progress DFA of that state
//! decides the period.

pub mod acceptance;
pub mod algebra;
pub mod alphabet;
pub mod automaton;
pub mod dfa;
pub mod error;
pub mod families;
pub mod fdfa;
pub mod saturation;
pub mod translate;
pub mod word;

pub use acceptance::Acceptance;
pub use alphabet::{Alphabet, Symbol, Word};
pub use automaton::{Automaton, DetAutomaton, ProductMode, State};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use fdfa::{Fdfa, FdfaParts, FdfaSize, Membership, NormalizedPair, ProgressParts};
pub use word::UpWord;
