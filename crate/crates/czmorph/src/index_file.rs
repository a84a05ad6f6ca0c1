//! On-disk form index.
//!
//! A UTF-8 text file:
//!
//! ```text
//! czmorph-index 1
//! alphabet-sha256 <hex>
//! rules-sha256 <hex>
//! lexicon-sha256 <hex>
//! pairs <n>
//! <surface> TAB <lemma> TAB <paradigm> TAB <tag> TAB <G|E>
//! ...
//! ```
//!
//! Lines are sorted by surface, then analysis. `G` marks a generated form,
//! `E` a lexicon exception. The hashes are of the three source texts the
//! index was built from.

use std::fmt::Write as _;

use czmorph_core::{Analysis, FormIndex};

use crate::error::{CliError, Result};
use crate::sources::Sources;

pub const MAGIC: &str = "czmorph-index";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFile {
    /// `(source kind, sha256 hex)` for alphabet, rules and lexicon.
    pub hashes: Vec<(String, String)>,
    pub index: FormIndex,
}

impl IndexFile {
    pub fn new(sources: &Sources, index: FormIndex) -> Self {
        let hashes = sources
            .hashes()
            .into_iter()
            .map(|(k, h)| (k.to_string(), h))
            .collect();
        IndexFile { hashes, index }
    }

    pub fn render(&self) -> String {
        let mut out = format!("{MAGIC} {VERSION}\n");
        for (kind, hash) in &self.hashes {
            let _ = writeln!(out, "{kind}-sha256 {hash}");
        }
        let _ = writeln!(out, "pairs {}", self.index.pair_count());
        for (surface, analyses) in self.index.iter() {
            for a in analyses {
                let kind = if a.via_exception { 'E' } else { 'G' };
                let _ = writeln!(
                    out,
                    "{surface}\t{}\t{}\t{}\t{kind}",
                    a.lemma, a.paradigm, a.tag
                );
            }
        }
        out
    }

    /// Parses an index; `name` is used in error messages.
    pub fn parse(text: &str, name: &str) -> Result<IndexFile> {
        let bad = |line: usize, msg: &str| CliError::Content(format!("{name}:{line}: {msg}"));
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l == format!("{MAGIC} {VERSION}") => {}
            Some((_, l)) if l.starts_with(MAGIC) => {
                return Err(bad(1, "unsupported index version"))
            }
            _ => return Err(bad(1, "not a czmorph index")),
        }
        let mut hashes = Vec::new();
        for kind in ["alphabet", "rules", "lexicon"] {
            let (n, l) = lines
                .next()
                .ok_or_else(|| bad(hashes.len() + 2, "truncated header"))?;
            let hash = l
                .strip_prefix(kind)
                .and_then(|r| r.strip_prefix("-sha256 "))
                .filter(|h| h.len() == 64 && h.bytes().all(|b| b.is_ascii_hexdigit()))
                .ok_or_else(|| bad(n, &format!("expected `{kind}-sha256 <hex>`")))?;
            hashes.push((kind.to_string(), hash.to_string()));
        }
        let (n, l) = lines.next().ok_or_else(|| bad(5, "truncated header"))?;
        let expected: usize = l
            .strip_prefix("pairs ")
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| bad(n, "expected `pairs <count>`"))?;
        let mut index = FormIndex::default();
        let mut count = 0;
        for (n, l) in lines {
            let fields: Vec<&str> = l.split('\t').collect();
            let [surface, lemma, paradigm, tag, kind] = fields[..] else {
                return Err(bad(n, "expected five tab-separated fields"));
            };
            let via_exception = match kind {
                "G" => false,
                "E" => true,
                _ => return Err(bad(n, "kind must be `G` or `E`")),
            };
            let analysis = Analysis {
                lemma: lemma.into(),
                paradigm: paradigm.into(),
                tag: tag.into(),
                via_exception,
            };
            index.insert(surface.to_string(), analysis);
            count += 1;
        }
        if count != expected {
            return Err(bad(
                5,
                &format!("header announces {expected} pairs, found {count}"),
            ));
        }
        Ok(IndexFile { hashes, index })
    }

    /// Fails when the index was built from sources other than `sources`.
    pub fn check_fresh(&self, sources: &Sources, name: &str) -> Result<()> {
        for ((kind, have), (_, want)) in self.hashes.iter().zip(sources.hashes()) {
            if *have != want {
                return Err(CliError::Content(format!(
                    "{name}: index is stale ({kind} changed since it was built); run `czmorph compile` again"
                )));
            }
        }
        Ok(())
    }
}
