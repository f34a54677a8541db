use thiserror::Error;

use crate::fdfa::Diagnostic;

/// Errors raised by the library. Query answers (rejection, emptiness, ...)
/// are never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol index {index} out of range for an alphabet of {size} symbols")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("state {state} out of range ({count} states)")]
    StateOutOfRange { state: usize, count: usize },
    #[error("the period of an ultimately periodic word must be nonempty")]
    EmptyPeriod,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("automaton is not deterministic: state {state} has {count} successors on `{symbol}`")]
    NotDeterministic {
        state: usize,
        symbol: String,
        count: usize,
    },
    #[error("automaton is not complete: state {state} has no successor on `{symbol}`")]
    Incomplete { state: usize, symbol: String },
    #[error("{0}")]
    InvalidAlphabet(String),
    #[error("invalid acceptance condition: {0}")]
    InvalidAcceptance(String),
    #[error("invalid family of DFAs: {}", join_diagnostics(.0))]
    InvalidFdfa(Vec<Diagnostic>),
    #[error("progress state {state} is not accepting in the progress DFA of leading state {leading}")]
    NotAccepting { leading: usize, state: usize },
    #[error("leading state {0} is unreachable")]
    Unreachable(usize),
    #[error("letter {letter} outside [1..{n}]")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("parameter must be at least 1")]
    ZeroParameter,
    #[error("exact check infeasible at this size: {explored} transformation classes explored, budget {budget} class pairs")]
    BudgetExceeded { explored: usize, budget: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
