use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// 1-based line and column (in characters) inside a source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Syntax {
        at: Location,
        message: String,
    },
    DuplicateSet {
        at: Location,
        name: String,
    },
    DuplicateDefinition {
        at: Location,
        name: String,
    },
    UnknownSymbol {
        at: Option<Location>,
        symbol: String,
    },
    UnknownSet {
        at: Option<Location>,
        name: String,
    },
    InfeasiblePair {
        at: Option<Location>,
        pair: String,
    },
    UnknownParadigm {
        entry: String,
        paradigm: String,
    },
    UnknownEndingSet {
        paradigm: String,
        set: String,
    },
    DuplicateTag {
        owner: String,
        tag: String,
    },
    DuplicateEntry {
        lemma: String,
        paradigm: String,
    },
    UnknownTag {
        owner: String,
        tag: String,
    },
    UnknownLemma {
        lemma: String,
    },
    BadStems {
        entry: String,
        message: String,
    },
    /// A lexicon form without exactly one realization.
    Realization {
        lemma: String,
        paradigm: String,
        tag: String,
        forms: Vec<String>,
    },
}

impl Error {
    pub(crate) fn syntax(at: Location, message: impl Into<String>) -> Self {
        Error::Syntax {
            at,
            message: message.into(),
        }
    }
}

fn at(f: &mut fmt::Formatter<'_>, loc: &Option<Location>) -> fmt::Result {
    match loc {
        Some(l) => write!(f, "{l}: "),
        None => Ok(()),
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { at, message } => write!(f, "{at}: syntax error: {message}"),
            Error::DuplicateSet { at, name } => write!(f, "{at}: duplicate set `{name}`"),
            Error::DuplicateDefinition { at, name } => {
                write!(f, "{at}: duplicate definition `{name}`")
            }
            Error::UnknownSymbol { at: loc, symbol } => {
                at(f, loc)?;
                write!(f, "unknown symbol `{symbol}`")
            }
            Error::UnknownSet { at: loc, name } => {
                at(f, loc)?;
                write!(f, "unknown set `{name}`")
            }
            Error::InfeasiblePair { at: loc, pair } => {
                at(f, loc)?;
                write!(f, "pair `{pair}` is not declared feasible")
            }
            Error::UnknownParadigm { entry, paradigm } => {
                write!(f, "entry `{entry}` refers to unknown paradigm `{paradigm}`")
            }
            Error::UnknownEndingSet { paradigm, set } => {
                write!(
                    f,
                    "paradigm `{paradigm}` refers to unknown ending set `{set}`"
                )
            }
            Error::DuplicateTag { owner, tag } => write!(f, "`{owner}`: duplicate tag `{tag}`"),
            Error::DuplicateEntry { lemma, paradigm } => {
                write!(f, "duplicate entry `{lemma}` in paradigm `{paradigm}`")
            }
            Error::UnknownTag { owner, tag } => write!(f, "`{owner}`: unknown tag `{tag}`"),
            Error::UnknownLemma { lemma } => write!(f, "unknown lemma `{lemma}`"),
            Error::BadStems { entry, message } => write!(f, "entry `{entry}`: {message}"),
            Error::Realization {
                lemma,
                paradigm,
                tag,
                forms,
            } => {
                write!(
                    f,
                    "{lemma} ({paradigm}) {tag}: expected one realization, got {}",
                    forms.len()
                )?;
                if !forms.is_empty() {
                    write!(f, " [{}]", forms.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
