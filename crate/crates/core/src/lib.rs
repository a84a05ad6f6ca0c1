//! Two-level morphology for Czech.
//!
//! Parallel lexical:surface rules are compiled into automata and run as an
//! intersection; a bundled rule program covers Czech epenthesis,
//! palatalization, assimilation and spelling adjustments, and a paradigm
//! lexicon drives generation and analysis of word forms.
//!
//! The crate is `no_std` and needs only `alloc`. File and process handling
//! live in the `czmorph` companion crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod analyzer;
pub mod compile;
pub mod czech;
pub mod error;
pub mod fsa;
pub mod generate;
pub mod lexicon;
pub mod rules;

pub use alphabet::{Alphabet, Category, Marker, MarkerKind, Pair, Symbol};
pub use analyzer::{analyze, build_index, coverage, generate_form, Analysis, Coverage, FormIndex};
pub use compile::{compile_rule, detect_conflicts, Conflict, RuleAutomaton};
pub use error::{Error, Location, Result};
pub use generate::{Grammar, Rejection, Trace, TraceItem, Warning};
pub use lexicon::{build_lexical_string, validate_lexicon, Lexicon, LexiconEntry};
pub use rules::{parse_rules, ContextRegex, Operator, TwoLevelRule};
