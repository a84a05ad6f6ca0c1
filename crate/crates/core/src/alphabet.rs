//! Symbols, feasible lexical:surface pairs, and the named symbol sets rules
//! quantify over.
//!
//! The Czech letters are built in together with their phonological classes;
//! an alphabet declaration adds markers, non-identity pairs and extra sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Location, Result};

/// Index of a symbol inside an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub(crate) u16);

impl Symbol {
    /// The zero symbol `0`, always index 0.
    pub const ZERO: Symbol = Symbol(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self == Symbol::ZERO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkerKind {
    /// `^1P`: first palatalization (or the only one).
    FirstPalatalization,
    /// `^2P`: second palatalization (or the only one).
    SecondPalatalization,
    /// `^A`: assimilation.
    Assimilation,
    /// `^N`: no alternation.
    NoAlternation,
    /// `^E1`: epenthetic e present in the base form, deleted before a
    /// non-empty ending.
    EpentheticDelete,
    /// `^E2`: epenthetic e inserted before an empty ending.
    EpentheticInsert,
    /// `^IK`: the suffix -ík in feminine derivation.
    SuffixIk,
}

/// A morpheme-boundary or auxiliary marker such as `^2P1`, `^N4` or `^E1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marker {
    pub kind: MarkerKind,
    /// Number of base-form characters the marker says to strip. Only the
    /// boundary kinds carry one.
    pub strip: Option<u8>,
}

impl Marker {
    pub const MAX_STRIP: u8 = 4;

    /// Parses the full marker text, including the leading `^`.
    pub fn parse(text: &str) -> Option<Marker> {
        let body = text.strip_prefix('^')?;
        let (kind, strip) = match body {
            "E1" => (MarkerKind::EpentheticDelete, None),
            "E2" => (MarkerKind::EpentheticInsert, None),
            "IK" => (MarkerKind::SuffixIk, None),
            _ => {
                let mut chars = body.chars();
                let (kind, rest) = match chars.next()? {
                    '1' if chars.next()? == 'P' => {
                        (MarkerKind::FirstPalatalization, chars.as_str())
                    }
                    '2' if chars.next()? == 'P' => {
                        (MarkerKind::SecondPalatalization, chars.as_str())
                    }
                    'A' => (MarkerKind::Assimilation, chars.as_str()),
                    'N' => (MarkerKind::NoAlternation, chars.as_str()),
                    _ => return None,
                };
                let mut digits = rest.chars();
                let d = digits.next()?.to_digit(10)? as u8;
                if digits.next().is_some() || d > Marker::MAX_STRIP {
                    return None;
                }
                (kind, Some(d))
            }
        };
        Some(Marker { kind, strip })
    }

    /// True for the kinds that sit on a morpheme boundary (`^1P`, `^2P`,
    /// `^A`, `^N`).
    pub fn is_boundary(&self) -> bool {
        self.strip.is_some()
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            MarkerKind::FirstPalatalization => "1P",
            MarkerKind::SecondPalatalization => "2P",
            MarkerKind::Assimilation => "A",
            MarkerKind::NoAlternation => "N",
            MarkerKind::EpentheticDelete => return f.write_str("^E1"),
            MarkerKind::EpentheticInsert => return f.write_str("^E2"),
            MarkerKind::SuffixIk => return f.write_str("^IK"),
        };
        write!(f, "^{head}{}", self.strip.unwrap_or(0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    HardConsonant,
    SoftConsonant,
    NeutralConsonant,
    HardVowel,
    SoftVowel,
    Marker,
    Zero,
    Other,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::HardConsonant => "hard-cons",
            Category::SoftConsonant => "soft-cons",
            Category::NeutralConsonant => "neutral-cons",
            Category::HardVowel => "hard-vowel",
            Category::SoftVowel => "soft-vowel",
            Category::Marker => "marker",
            Category::Zero => "zero",
            Category::Other => "other",
        }
    }

    pub fn is_letter(self) -> bool {
        matches!(
            self,
            Category::HardConsonant
                | Category::SoftConsonant
                | Category::NeutralConsonant
                | Category::HardVowel
                | Category::SoftVowel
        )
    }
}

// q, w, x and f behave like k, v, v and s.
const HARD_CONS: &str = "dghknrtq";
const SOFT_CONS: &str = "cčďjňřšťž";
const NEUTRAL_CONS: &str = "blmpsvzfwx";
const HARD_VOWELS: &str = "aáeéoóuúůyý";
const SOFT_VOWELS: &str = "ěií";

/// A lexical:surface correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    pub lexical: Symbol,
    pub surface: Symbol,
}

impl Pair {
    pub fn new(lexical: Symbol, surface: Symbol) -> Self {
        Pair { lexical, surface }
    }

    pub fn is_identity(&self) -> bool {
        self.lexical == self.surface
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SymbolInfo {
    text: String,
    category: Category,
}

/// The symbol universe, the feasible pairs and the named sets.
///
/// Immutable once built; pair indices are stable and dense, so automata use
/// them directly as transition labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<SymbolInfo>,
    by_text: BTreeMap<String, Symbol>,
    pairs: Vec<Pair>,
    pair_ids: BTreeMap<Pair, usize>,
    sets: BTreeMap<String, BTreeSet<Symbol>>,
    longest_symbol: usize,
}

/// NFC-normalizes text so that one accented letter is one `char`.
pub fn normalize(text: &str) -> String {
    text.nfc().collect()
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::builtin()
    }
}

impl Alphabet {
    /// Built-in Czech letters with identity pairs and the class sets.
    pub fn builtin() -> Self {
        let mut a = Alphabet {
            symbols: Vec::new(),
            by_text: BTreeMap::new(),
            pairs: Vec::new(),
            pair_ids: BTreeMap::new(),
            sets: BTreeMap::new(),
            longest_symbol: 1,
        };
        a.intern("0", Category::Zero);
        let classes = [
            (HARD_CONS, Category::HardConsonant, "HardCons"),
            (SOFT_CONS, Category::SoftConsonant, "SoftCons"),
            (NEUTRAL_CONS, Category::NeutralConsonant, "NeutralCons"),
            (HARD_VOWELS, Category::HardVowel, "HardVowel"),
            (SOFT_VOWELS, Category::SoftVowel, "SoftVowel"),
        ];
        for (letters, cat, set) in classes {
            let mut members = BTreeSet::new();
            for c in letters.chars() {
                let mut buf = [0u8; 4];
                let s = a.intern(c.encode_utf8(&mut buf), cat);
                a.add_pair(Pair::new(s, s));
                members.insert(s);
            }
            a.sets.insert(set.to_string(), members);
        }
        let union = |a: &Alphabet, names: &[&str]| -> BTreeSet<Symbol> {
            names
                .iter()
                .flat_map(|n| a.sets[*n].iter().copied())
                .collect()
        };
        let cons = union(&a, &["HardCons", "SoftCons", "NeutralCons"]);
        let vowels = union(&a, &["HardVowel", "SoftVowel"]);
        let letters: BTreeSet<Symbol> = cons.union(&vowels).copied().collect();
        let excluded: Vec<Symbol> = ["c", "č", "s"].iter().map(|t| a.by_text[*t]).collect();
        let non_c_cs = letters
            .iter()
            .copied()
            .filter(|s| !excluded.contains(s))
            .collect();
        a.sets.insert("Cons".to_string(), cons);
        a.sets.insert("Vowel".to_string(), vowels);
        a.sets.insert("Letter".to_string(), letters);
        a.sets.insert("NonCČS".to_string(), non_c_cs);
        a.finish();
        a
    }

    fn intern(&mut self, text: &str, category: Category) -> Symbol {
        if let Some(&s) = self.by_text.get(text) {
            return s;
        }
        let s = Symbol(self.symbols.len() as u16);
        self.symbols.push(SymbolInfo {
            text: text.to_string(),
            category,
        });
        self.by_text.insert(text.to_string(), s);
        if category != Category::Marker {
            self.longest_symbol = self.longest_symbol.max(text.chars().count());
        }
        s
    }

    fn add_pair(&mut self, pair: Pair) {
        if let alloc::collections::btree_map::Entry::Vacant(e) = self.pair_ids.entry(pair) {
            e.insert(usize::MAX);
            self.pairs.push(pair);
        }
    }

    fn finish(&mut self) {
        self.pairs.sort();
        for (i, p) in self.pairs.iter().enumerate() {
            self.pair_ids.insert(*p, i);
        }
    }

    /// Parses an alphabet declaration on top of the built-in letters.
    pub fn parse(text: &str) -> Result<Alphabet> {
        let mut a = Alphabet::builtin();
        let text = normalize(text);
        let tokens = scan(&text);
        let mut section = None::<&str>;
        let mut declared_sets = BTreeSet::new();
        let mut i = 0;
        while i < tokens.len() {
            let tok = &tokens[i];
            match tok.text.as_str() {
                "Alphabet" | "Sets" => {
                    section = Some(if tok.text == "Alphabet" {
                        "Alphabet"
                    } else {
                        "Sets"
                    });
                    i += 1;
                    continue;
                }
                _ => {}
            }
            match section {
                None => {
                    return Err(Error::syntax(
                        tok.at,
                        "expected section header `Alphabet` or `Sets`",
                    ))
                }
                Some("Alphabet") => {
                    if tok.text != ";" {
                        a.declare_item(tok)?;
                    }
                    i += 1;
                }
                Some(_) => {
                    let name = tok;
                    if !is_identifier(&name.text) {
                        return Err(Error::syntax(name.at, "expected a set name"));
                    }
                    match tokens.get(i + 1) {
                        Some(t) if t.text == "=" => {}
                        Some(t) => return Err(Error::syntax(t.at, "expected `=`")),
                        None => return Err(Error::syntax(name.at, "expected `=`")),
                    }
                    let mut members = BTreeSet::new();
                    let mut j = i + 2;
                    loop {
                        let Some(t) = tokens.get(j) else {
                            return Err(Error::syntax(name.at, "set not terminated by `;`"));
                        };
                        if t.text == ";" {
                            break;
                        }
                        if let Some(set) = a.sets.get(&t.text) {
                            members.extend(set.iter().copied());
                        } else if let Some(&s) = a.by_text.get(&t.text) {
                            members.insert(s);
                        } else {
                            return Err(Error::UnknownSymbol {
                                at: Some(t.at),
                                symbol: t.text.clone(),
                            });
                        }
                        j += 1;
                    }
                    if !declared_sets.insert(name.text.clone()) {
                        return Err(Error::DuplicateSet {
                            at: name.at,
                            name: name.text.clone(),
                        });
                    }
                    a.sets.insert(name.text.clone(), members);
                    i = j + 1;
                }
            }
        }
        a.finish();
        Ok(a)
    }

    fn declare_item(&mut self, tok: &Token) -> Result<()> {
        let (lex, surf) = match tok.text.split_once(':') {
            Some((l, s)) => (l, Some(s)),
            None => (tok.text.as_str(), None),
        };
        if lex.is_empty() || surf == Some("") {
            return Err(Error::syntax(tok.at, "incomplete pair"));
        }
        if let Some(m) = Marker::parse(lex) {
            if surf.is_some_and(|s| s != "0") {
                return Err(Error::InfeasiblePair {
                    at: Some(tok.at),
                    pair: tok.text.clone(),
                });
            }
            let text = m.to_string();
            let s = self.intern(&text, Category::Marker);
            self.add_pair(Pair::new(s, Symbol::ZERO));
            return Ok(());
        }
        if lex.starts_with('^') {
            return Err(Error::syntax(tok.at, "malformed marker"));
        }
        match surf {
            None => {
                if lex == "0" {
                    return Err(Error::syntax(tok.at, "`0` cannot be declared on its own"));
                }
                let s = self.intern(lex, Category::Other);
                self.add_pair(Pair::new(s, s));
            }
            Some(surf) => {
                let resolve = |t: &str| {
                    self.by_text
                        .get(t)
                        .copied()
                        .ok_or_else(|| Error::UnknownSymbol {
                            at: Some(tok.at),
                            symbol: t.to_string(),
                        })
                };
                let l = resolve(lex)?;
                let s = resolve(surf)?;
                if l.is_zero() && s.is_zero() {
                    return Err(Error::syntax(tok.at, "`0:0` is not a pair"));
                }
                if self.category(s) == Category::Marker || self.category(l) == Category::Marker {
                    return Err(Error::InfeasiblePair {
                        at: Some(tok.at),
                        pair: tok.text.clone(),
                    });
                }
                self.add_pair(Pair::new(l, s));
            }
        }
        Ok(())
    }

    pub fn symbol(&self, text: &str) -> Option<Symbol> {
        self.by_text.get(text).copied()
    }

    pub fn text(&self, s: Symbol) -> &str {
        &self.symbols[s.index()].text
    }

    pub fn category(&self, s: Symbol) -> Category {
        self.symbols[s.index()].category
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }

    /// The class of a symbol by text; errors for unknown symbols.
    pub fn classify(&self, text: &str) -> Result<Category> {
        let text = normalize(text);
        self.symbol(&text)
            .map(|s| self.category(s))
            .ok_or(Error::UnknownSymbol {
                at: None,
                symbol: text,
            })
    }

    pub fn marker(&self, s: Symbol) -> Option<Marker> {
        if self.category(s) == Category::Marker {
            Marker::parse(self.text(s))
        } else {
            None
        }
    }

    /// Membership test against a named set.
    pub fn member(&self, set: &str, text: &str) -> Result<bool> {
        let members = self.set(set).ok_or_else(|| Error::UnknownSet {
            at: None,
            name: set.into(),
        })?;
        Ok(self
            .symbol(&normalize(text))
            .is_some_and(|s| members.contains(&s)))
    }

    pub fn set(&self, name: &str) -> Option<&BTreeSet<Symbol>> {
        self.sets.get(name)
    }

    pub fn set_names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    /// All feasible pairs; the position of a pair is its label id.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn pair_id(&self, pair: Pair) -> Option<usize> {
        self.pair_ids.get(&pair).copied()
    }

    pub fn is_feasible(&self, pair: Pair) -> bool {
        self.pair_ids.contains_key(&pair)
    }

    /// Feasible pairs with the given lexical side, in label order.
    pub fn pairs_for(&self, lexical: Symbol) -> impl Iterator<Item = (usize, Pair)> + '_ {
        self.pairs
            .iter()
            .copied()
            .enumerate()
            .filter(move |(_, p)| p.lexical == lexical)
    }

    pub fn pair_text(&self, p: Pair) -> String {
        let mut s = String::from(self.text(p.lexical));
        s.push(':');
        s.push_str(self.text(p.surface));
        s
    }

    /// Splits a word into symbols: markers are `^…` tokens, letters are
    /// lower-cased, and declared multi-character symbols match greedily.
    pub fn tokenize(&self, word: &str) -> Result<Vec<Symbol>> {
        let word = normalize(word);
        let chars: Vec<char> = word.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i] == '^' {
                let mut j = i + 1;
                while j < chars.len()
                    && (chars[j].is_ascii_uppercase() || chars[j].is_ascii_digit())
                {
                    // a digit after an uppercase letter ends the marker
                    let ends =
                        chars[j].is_ascii_digit() && j > i + 1 && chars[j - 1].is_ascii_uppercase();
                    j += 1;
                    if ends {
                        break;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                // `^IK` and `^E1` style markers have no trailing strip digit.
                let text = match Marker::parse(&text) {
                    Some(m) => m.to_string(),
                    None => {
                        return Err(Error::UnknownSymbol {
                            at: None,
                            symbol: text,
                        })
                    }
                };
                let s = self.symbol(&text).ok_or(Error::UnknownSymbol {
                    at: None,
                    symbol: text,
                })?;
                out.push(s);
                i = j;
                continue;
            }
            let mut matched = None;
            for len in (1..=self.longest_symbol.min(chars.len() - i)).rev() {
                let piece: String = chars[i..i + len]
                    .iter()
                    .flat_map(|c| c.to_lowercase())
                    .collect();
                if piece == "0" {
                    continue;
                }
                if let Some(s) = self.symbol(&piece) {
                    if self.category(s) != Category::Marker {
                        matched = Some((s, len));
                        break;
                    }
                }
            }
            let Some((s, len)) = matched else {
                return Err(Error::UnknownSymbol {
                    at: None,
                    symbol: chars[i].to_string(),
                });
            };
            out.push(s);
            i += len;
        }
        Ok(out)
    }

    /// Concatenated text of a symbol sequence, zeros dropped.
    pub fn render(&self, symbols: &[Symbol]) -> String {
        symbols
            .iter()
            .filter(|s| !s.is_zero())
            .map(|&s| self.text(s))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub text: String,
    pub at: Location,
}

/// Whitespace tokenizer with `!` comments; `;` and `=` stand alone.
pub(crate) fn scan(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut cur = String::new();
        let mut start = 0;
        let flush = |cur: &mut String, start: usize, out: &mut Vec<Token>| {
            if !cur.is_empty() {
                out.push(Token {
                    text: core::mem::take(cur),
                    at: Location {
                        line: ln + 1,
                        column: start + 1,
                    },
                });
            }
        };
        for (col, c) in line.chars().enumerate() {
            if c == '!' {
                break;
            }
            if c.is_whitespace() {
                flush(&mut cur, start, &mut out);
            } else if c == ';' || c == '=' {
                flush(&mut cur, start, &mut out);
                out.push(Token {
                    text: c.to_string(),
                    at: Location {
                        line: ln + 1,
                        column: col + 1,
                    },
                });
            } else {
                if cur.is_empty() {
                    start = col;
                }
                cur.push(c);
            }
        }
        flush(&mut cur, start, &mut out);
    }
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic())
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}
