//! Loading alphabet, rule and lexicon sources, falling back to the bundled
//! Czech assets.

use std::fs;
use std::path::{Path, PathBuf};

use czmorph_core::rules::parse_rule_set;
use czmorph_core::{
    compile_rule, czech, Alphabet, Error as CoreError, FormIndex, Grammar, Lexicon,
};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone)]
pub struct Source {
    /// File path, or a `<bundled ...>` label.
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn load(path: Option<&Path>, bundled: &str, text: &'static str) -> Result<Source> {
        match path {
            None => Ok(Source {
                name: format!("<bundled {bundled}>"),
                text: text.to_string(),
            }),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                Ok(Source {
                    name: p.display().to_string(),
                    text,
                })
            }
        }
    }

    pub fn sha256(&self) -> String {
        Sha256::digest(self.text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Wraps a core error with the source name, as `file:line:col: ...`
    /// when the error carries a location.
    pub fn error(&self, e: CoreError) -> CliError {
        let located = matches!(
            e,
            CoreError::Syntax { .. }
                | CoreError::DuplicateSet { .. }
                | CoreError::DuplicateDefinition { .. }
        ) || matches!(
            e,
            CoreError::UnknownSymbol { at: Some(_), .. }
                | CoreError::UnknownSet { at: Some(_), .. }
                | CoreError::InfeasiblePair { at: Some(_), .. }
        );
        if located {
            CliError::Content(format!("{}:{e}", self.name))
        } else {
            CliError::Content(format!("{}: {e}", self.name))
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Paths {
    pub alphabet: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Sources {
    pub alphabet: Source,
    pub rules: Source,
    pub lexicon: Source,
}

impl Sources {
    pub fn load(paths: &Paths) -> Result<Sources> {
        Ok(Sources {
            alphabet: Source::load(paths.alphabet.as_deref(), "czech.alphabet", czech::ALPHABET)?,
            rules: Source::load(paths.rules.as_deref(), "czech.rules", czech::RULES)?,
            lexicon: Source::load(paths.lexicon.as_deref(), "czech.lexicon", czech::LEXICON)?,
        })
    }

    pub fn grammar(&self) -> Result<Grammar> {
        let alphabet = Alphabet::parse(&self.alphabet.text).map_err(|e| self.alphabet.error(e))?;
        let set = parse_rule_set(&self.rules.text, &alphabet).map_err(|e| self.rules.error(e))?;
        let compiled = set
            .rules
            .iter()
            .map(|r| compile_rule(r, &alphabet))
            .collect();
        Ok(Grammar::new(alphabet, compiled))
    }

    pub fn lexicon(&self, grammar: &Grammar) -> Result<Lexicon> {
        Lexicon::parse(&self.lexicon.text, &grammar.alphabet).map_err(|e| self.lexicon.error(e))
    }

    pub fn build_index(&self, grammar: &Grammar, lexicon: &Lexicon) -> Result<FormIndex> {
        czmorph_core::build_index(lexicon, grammar).map_err(|e| self.lexicon.error(e))
    }

    pub fn hashes(&self) -> [(&'static str, String); 3] {
        [
            ("alphabet", self.alphabet.sha256()),
            ("rules", self.rules.sha256()),
            ("lexicon", self.lexicon.sha256()),
        ]
    }
}
