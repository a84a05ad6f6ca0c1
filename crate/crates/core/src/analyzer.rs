//! Generation and analysis over a precomputed form index, and corpus
//! coverage.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::alphabet::normalize;
use crate::error::{Error, Result};
use crate::generate::Grammar;
use crate::lexicon::{Anomaly, FormKind, Lexicon};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Analysis {
    pub lemma: String,
    pub paradigm: String,
    pub tag: String,
    pub via_exception: bool,
}

/// Surface form → analyses, for every form a lexicon realizes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormIndex {
    forms: BTreeMap<String, Vec<Analysis>>,
}

impl FormIndex {
    /// Indexes every realization, including those of anomalous forms,
    /// and returns the anomalies next to the index.
    pub fn build_lenient(lexicon: &Lexicon, grammar: &Grammar) -> (FormIndex, Vec<Anomaly>) {
        let mut index = FormIndex::default();
        let mut anomalies = Vec::new();
        for entry in &lexicon.entries {
            for form in lexicon.expand(entry) {
                let (surfaces, via_exception) = match &form.kind {
                    FormKind::Exception(s) => (BTreeSet::from([s.clone()]), true),
                    FormKind::Lexical(s) => {
                        let out = grammar.generate(s);
                        if out.len() != 1 {
                            anomalies.push(Anomaly {
                                lemma: entry.lemma.clone(),
                                paradigm: entry.paradigm.clone(),
                                tag: form.tag.clone(),
                                lexical: grammar.alphabet.render(s),
                                realizations: out.iter().cloned().collect(),
                            });
                        }
                        (out, false)
                    }
                };
                for surface in surfaces {
                    index.insert(
                        surface,
                        Analysis {
                            lemma: entry.lemma.clone(),
                            paradigm: entry.paradigm.clone(),
                            tag: form.tag.clone(),
                            via_exception,
                        },
                    );
                }
            }
        }
        (index, anomalies)
    }

    /// Adds one analysis, keeping each list sorted and free of repeats.
    pub fn insert(&mut self, surface: String, analysis: Analysis) {
        let list = self.forms.entry(surface).or_default();
        if let Err(at) = list.binary_search(&analysis) {
            list.insert(at, analysis);
        }
    }

    pub fn get(&self, surface: &str) -> &[Analysis] {
        self.forms.get(surface).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.forms.contains_key(surface)
    }

    /// Number of distinct surface forms.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Number of (surface, analysis) pairs.
    pub fn pair_count(&self) -> usize {
        self.forms.values().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Analysis])> {
        self.forms.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// Builds the index, failing on the first form that does not realize to
/// exactly one surface word.
pub fn build_index(lexicon: &Lexicon, grammar: &Grammar) -> Result<FormIndex> {
    let (index, anomalies) = FormIndex::build_lenient(lexicon, grammar);
    match anomalies.into_iter().next() {
        None => Ok(index),
        Some(a) => Err(Error::Realization {
            lemma: a.lemma,
            paradigm: a.paradigm,
            tag: a.tag,
            forms: a.realizations,
        }),
    }
}

/// Surface forms of `lemma` for `tag`, across every entry of the lemma
/// whose paradigm has the tag.
pub fn generate_form(
    lexicon: &Lexicon,
    grammar: &Grammar,
    lemma: &str,
    tag: &str,
) -> Result<BTreeSet<String>> {
    let lemma = fold(lemma);
    let mut found_lemma = false;
    let mut found_tag = false;
    let mut out = BTreeSet::new();
    for entry in lexicon.entries_for(&lemma) {
        found_lemma = true;
        for form in lexicon.expand(entry).into_iter().filter(|f| f.tag == tag) {
            found_tag = true;
            match form.kind {
                FormKind::Exception(s) => {
                    out.insert(s);
                }
                FormKind::Lexical(s) => out.extend(grammar.generate(&s)),
            }
        }
    }
    if !found_lemma {
        return Err(Error::UnknownLemma { lemma });
    }
    if !found_tag {
        return Err(Error::UnknownTag {
            owner: lemma,
            tag: tag.into(),
        });
    }
    Ok(out)
}

/// All analyses of a word, ordered by lemma, paradigm and tag.
pub fn analyze(index: &FormIndex, surface: &str) -> Vec<Analysis> {
    index.get(&fold(surface)).to_vec()
}

fn fold(s: &str) -> String {
    normalize(s.trim())
        .chars()
        .flat_map(char::to_lowercase)
        .collect()
}

/// Splits text into case-folded words at every non-letter character.
pub fn tokenize_corpus(text: &str) -> impl Iterator<Item = String> + '_ {
    // combining marks count as letters so decomposed input stays whole
    text.split(|c: char| !is_word_char(c))
        .filter(|w| !w.is_empty())
        .map(fold)
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || matches!(c, '\u{300}'..='\u{36f}')
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coverage {
    pub tokens: usize,
    pub analyzed: usize,
    /// `analyzed / tokens`; 0 when the corpus is empty.
    pub ratio: f64,
    pub types: usize,
    pub analyzed_types: usize,
    pub type_ratio: f64,
    /// Set when there were no tokens and the ratios are meaningless.
    pub empty: bool,
    /// Most frequent unanalyzed words with their counts.
    pub top_unknown: Vec<(String, usize)>,
}

/// Accumulates coverage over a corpus read piece by piece.
#[derive(Debug, Clone)]
pub struct CoverageCounter<'a> {
    index: &'a FormIndex,
    tokens: usize,
    analyzed: usize,
    seen: BTreeMap<String, bool>,
    unknown: BTreeMap<String, usize>,
}

impl<'a> CoverageCounter<'a> {
    pub fn new(index: &'a FormIndex) -> Self {
        CoverageCounter {
            index,
            tokens: 0,
            analyzed: 0,
            seen: BTreeMap::new(),
            unknown: BTreeMap::new(),
        }
    }

    pub fn add_text(&mut self, text: &str) {
        for word in tokenize_corpus(text) {
            self.tokens += 1;
            let known = self.index.contains(&word);
            if known {
                self.analyzed += 1;
            } else {
                *self.unknown.entry(word.clone()).or_default() += 1;
            }
            self.seen.entry(word).or_insert(known);
        }
    }

    pub fn finish(self, top: usize) -> Coverage {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let analyzed_types = self.seen.values().filter(|&&k| k).count();
        let mut top_unknown: Vec<(String, usize)> = self.unknown.into_iter().collect();
        top_unknown.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        top_unknown.truncate(top);
        Coverage {
            tokens: self.tokens,
            analyzed: self.analyzed,
            ratio: ratio(self.analyzed, self.tokens),
            types: self.seen.len(),
            analyzed_types,
            type_ratio: ratio(analyzed_types, self.seen.len()),
            empty: self.tokens == 0,
            top_unknown,
        }
    }
}

/// Coverage of a whole corpus text.
pub fn coverage(index: &FormIndex, corpus: &str, top: usize) -> Coverage {
    let mut c = CoverageCounter::new(index);
    c.add_text(corpus);
    c.finish(top)
}
