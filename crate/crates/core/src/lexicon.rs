//! Paradigm lexicon: ending sets, paradigms and entries, and their
//! expansion into lexical strings.
//!
//! ```text
//! ENDINGS noun-a-hard
//! NomSg
//! GenSg   ^N1 y
//! DatSg   ^2P1 ě
//!
//! PARADIGMS
//! fem-a-hard : noun-a-hard
//! verb-jit stems=6 : infinitive=v-inf present=v-pres past=v-past
//!
//! ENTRIES
//! matka    fem-a-hard  mat^E2ka
//! člověk   masc-anim   člověk   NomPl=lidé
//! jít      verb-jit    infinitive=jít present=jd past=š^E2la
//! ```

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{normalize, Alphabet, Category, Symbol};
use crate::error::{Error, Location, Result};
use crate::generate::Grammar;

/// Stem slots of irregular verbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StemSlot {
    Infinitive,
    Present,
    Imperative,
    Past,
    Transgressive,
    Passive,
}

impl StemSlot {
    pub const ALL: [StemSlot; 6] = [
        StemSlot::Infinitive,
        StemSlot::Present,
        StemSlot::Imperative,
        StemSlot::Past,
        StemSlot::Transgressive,
        StemSlot::Passive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StemSlot::Infinitive => "infinitive",
            StemSlot::Present => "present",
            StemSlot::Imperative => "imperative",
            StemSlot::Past => "past",
            StemSlot::Transgressive => "transgressive",
            StemSlot::Passive => "passive",
        }
    }

    pub fn parse(s: &str) -> Option<StemSlot> {
        StemSlot::ALL.into_iter().find(|x| x.name() == s)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StemSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ending {
    pub tag: String,
    pub marker: Option<Symbol>,
    pub ending: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingSet {
    pub name: String,
    pub endings: Vec<Ending>,
}

/// An ending set attached to a paradigm, bound to a stem slot for
/// six-stem paradigms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetRef {
    pub slot: Option<StemSlot>,
    pub set: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradigm {
    pub name: String,
    pub six_stems: bool,
    pub sets: Vec<SetRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stems {
    One(Vec<Symbol>),
    /// Indexed by `StemSlot`; `None` for a slot the lemma lacks.
    Six([Option<Vec<Symbol>>; 6]),
}

impl Stems {
    pub fn get(&self, slot: Option<StemSlot>) -> Option<&[Symbol]> {
        match (self, slot) {
            (Stems::One(s), None) => Some(s),
            (Stems::Six(v), Some(slot)) => v[slot.index()].as_deref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub lemma: String,
    pub paradigm: String,
    pub stems: Stems,
    /// Literal surface forms replacing generation for some tags.
    pub exceptions: BTreeMap<String, String>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormKind {
    Lexical(Vec<Symbol>),
    Exception(String),
}

/// One expanded form of an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub tag: String,
    pub kind: FormKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub ending_sets: BTreeMap<String, EndingSet>,
    pub paradigms: BTreeMap<String, Paradigm>,
    pub entries: Vec<LexiconEntry>,
}

/// Base form, optional boundary marker and ending, concatenated.
pub fn build_lexical_string(
    base: &[Symbol],
    marker: Option<Symbol>,
    ending: &[Symbol],
) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(base.len() + ending.len() + 1);
    out.extend_from_slice(base);
    out.extend(marker);
    out.extend_from_slice(ending);
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Endings,
    Paradigms,
    Entries,
}

struct Field<'a> {
    text: &'a str,
    at: Location,
}

fn fields(line: &str, ln: usize) -> Vec<Field<'_>> {
    let body = line.split('!').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in body.char_indices().enumerate() {
        if c.is_whitespace() {
            if let Some((s, sc)) = start.take() {
                out.push(Field {
                    text: &body[s..i],
                    at: Location {
                        line: ln,
                        column: sc,
                    },
                });
            }
        } else if start.is_none() {
            start = Some((i, col + 1));
        }
    }
    if let Some((s, sc)) = start {
        out.push(Field {
            text: &body[s..],
            at: Location {
                line: ln,
                column: sc,
            },
        });
    }
    out
}

fn symbols(alphabet: &Alphabet, f: &Field<'_>) -> Result<Vec<Symbol>> {
    alphabet.tokenize(f.text).map_err(|e| match e {
        Error::UnknownSymbol { symbol, .. } => Error::UnknownSymbol {
            at: Some(f.at),
            symbol,
        },
        e => e,
    })
}

impl Lexicon {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Lexicon> {
        let text = normalize(text);
        let mut lex = Lexicon::default();
        let mut section = Section::None;
        let mut current: Option<EndingSet> = None;
        for (i, line) in text.lines().enumerate() {
            let fs = fields(line, i + 1);
            let Some(head) = fs.first() else { continue };
            match head.text {
                "ENDINGS" => {
                    lex.close_set(current.take())?;
                    let [_, name] = &fs[..] else {
                        return Err(Error::syntax(head.at, "expected `ENDINGS name`"));
                    };
                    if lex.ending_sets.contains_key(name.text) {
                        return Err(Error::syntax(
                            name.at,
                            format!("duplicate ending set `{}`", name.text),
                        ));
                    }
                    current = Some(EndingSet {
                        name: name.text.to_string(),
                        endings: Vec::new(),
                    });
                    section = Section::Endings;
                }
                "PARADIGMS" | "ENTRIES" => {
                    lex.close_set(current.take())?;
                    if fs.len() != 1 {
                        return Err(Error::syntax(
                            fs[1].at,
                            "unexpected text after section header",
                        ));
                    }
                    section = if head.text == "PARADIGMS" {
                        Section::Paradigms
                    } else {
                        Section::Entries
                    };
                }
                _ => match section {
                    Section::None => {
                        return Err(Error::syntax(head.at, "expected a section header"))
                    }
                    Section::Endings => {
                        let set = current.as_mut().expect("open ending set");
                        set.endings.push(parse_ending(&fs, alphabet)?);
                    }
                    Section::Paradigms => {
                        let p = parse_paradigm(&fs)?;
                        if lex.paradigms.contains_key(&p.name) {
                            return Err(Error::syntax(
                                head.at,
                                format!("duplicate paradigm `{}`", p.name),
                            ));
                        }
                        lex.paradigms.insert(p.name.clone(), p);
                    }
                    Section::Entries => lex.entries.push(parse_entry(&fs, alphabet)?),
                },
            }
        }
        lex.close_set(current.take())?;
        lex.resolve()?;
        Ok(lex)
    }

    fn close_set(&mut self, set: Option<EndingSet>) -> Result<()> {
        if let Some(set) = set {
            let mut seen = BTreeSet::new();
            for e in &set.endings {
                if !seen.insert(e.tag.as_str()) {
                    return Err(Error::DuplicateTag {
                        owner: set.name.clone(),
                        tag: e.tag.clone(),
                    });
                }
            }
            self.ending_sets.insert(set.name.clone(), set);
        }
        Ok(())
    }

    fn resolve(&self) -> Result<()> {
        for p in self.paradigms.values() {
            let mut seen = BTreeSet::new();
            for r in &p.sets {
                let set = self
                    .ending_sets
                    .get(&r.set)
                    .ok_or_else(|| Error::UnknownEndingSet {
                        paradigm: p.name.clone(),
                        set: r.set.clone(),
                    })?;
                for e in &set.endings {
                    if !seen.insert(e.tag.as_str()) {
                        return Err(Error::DuplicateTag {
                            owner: p.name.clone(),
                            tag: e.tag.clone(),
                        });
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            let p = self
                .paradigms
                .get(&e.paradigm)
                .ok_or_else(|| Error::UnknownParadigm {
                    entry: e.lemma.clone(),
                    paradigm: e.paradigm.clone(),
                })?;
            if !seen.insert((e.lemma.as_str(), e.paradigm.as_str())) {
                return Err(Error::DuplicateEntry {
                    lemma: e.lemma.clone(),
                    paradigm: e.paradigm.clone(),
                });
            }
            match (&e.stems, p.six_stems) {
                (Stems::One(_), false) | (Stems::Six(_), true) => {}
                (Stems::One(_), true) => {
                    return Err(Error::BadStems {
                        entry: e.lemma.clone(),
                        message: format!("paradigm `{}` needs six stems", p.name),
                    })
                }
                (Stems::Six(_), false) => {
                    return Err(Error::BadStems {
                        entry: e.lemma.clone(),
                        message: format!("paradigm `{}` takes a single base form", p.name),
                    })
                }
            }
            let tags = self.tags(p);
            for tag in e.exceptions.keys() {
                if !tags.contains(tag.as_str()) {
                    return Err(Error::UnknownTag {
                        owner: e.lemma.clone(),
                        tag: tag.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn tags<'a>(&'a self, p: &'a Paradigm) -> BTreeSet<&'a str> {
        p.sets
            .iter()
            .flat_map(|r| {
                self.ending_sets[&r.set]
                    .endings
                    .iter()
                    .map(|e| e.tag.as_str())
            })
            .collect()
    }

    /// Every tag of a paradigm in table order.
    pub fn paradigm_tags(&self, paradigm: &str) -> Vec<&str> {
        let Some(p) = self.paradigms.get(paradigm) else {
            return Vec::new();
        };
        p.sets
            .iter()
            .flat_map(|r| {
                self.ending_sets[&r.set]
                    .endings
                    .iter()
                    .map(|e| e.tag.as_str())
            })
            .collect()
    }

    pub fn entries_for<'a>(
        &'a self,
        lemma: &'a str,
    ) -> impl Iterator<Item = &'a LexiconEntry> + 'a {
        self.entries.iter().filter(move |e| e.lemma == lemma)
    }

    /// One form per tag, in paradigm order. Tags whose stem slot the
    /// entry lacks are skipped; exceptions replace generated forms.
    pub fn expand(&self, entry: &LexiconEntry) -> Vec<Form> {
        let p = &self.paradigms[&entry.paradigm];
        let mut out = Vec::new();
        for r in &p.sets {
            let Some(base) = entry.stems.get(r.slot) else {
                continue;
            };
            for e in &self.ending_sets[&r.set].endings {
                let kind = match entry.exceptions.get(&e.tag) {
                    Some(lit) => FormKind::Exception(lit.clone()),
                    None => FormKind::Lexical(build_lexical_string(base, e.marker, &e.ending)),
                };
                out.push(Form {
                    tag: e.tag.clone(),
                    kind,
                });
            }
        }
        out
    }
}

fn parse_ending(fs: &[Field<'_>], alphabet: &Alphabet) -> Result<Ending> {
    let tag = fs[0].text.to_string();
    let mut rest = &fs[1..];
    let mut marker = None;
    if let Some(f) = rest.first() {
        let s = symbols(alphabet, f)?;
        if let [m] = s[..] {
            if alphabet.marker(m).is_some_and(|m| m.is_boundary()) {
                marker = Some(m);
                rest = &rest[1..];
            }
        }
    }
    let ending = match rest {
        [] => Vec::new(),
        [f] => symbols(alphabet, f)?,
        [_, extra, ..] => return Err(Error::syntax(extra.at, "expected `tag [marker] [ending]`")),
    };
    Ok(Ending {
        tag,
        marker,
        ending,
    })
}

fn parse_paradigm(fs: &[Field<'_>]) -> Result<Paradigm> {
    let name = fs[0].text.to_string();
    let mut i = 1;
    let mut six_stems = false;
    if let Some(f) = fs.get(i) {
        if let Some(n) = f.text.strip_prefix("stems=") {
            six_stems = match n {
                "1" => false,
                "6" => true,
                _ => return Err(Error::syntax(f.at, "stem count must be 1 or 6")),
            };
            i += 1;
        }
    }
    match fs.get(i) {
        Some(f) if f.text == ":" => i += 1,
        Some(f) => return Err(Error::syntax(f.at, "expected `:`")),
        None => return Err(Error::syntax(fs[0].at, "expected `:` and ending sets")),
    }
    let mut sets = Vec::new();
    for f in &fs[i..] {
        let r = match (six_stems, f.text.split_once('=')) {
            (false, None) => SetRef {
                slot: None,
                set: f.text.to_string(),
            },
            (true, Some((slot, set))) => {
                let slot = StemSlot::parse(slot)
                    .ok_or_else(|| Error::syntax(f.at, format!("unknown stem slot `{slot}`")))?;
                SetRef {
                    slot: Some(slot),
                    set: set.to_string(),
                }
            }
            (false, Some(_)) => return Err(Error::syntax(f.at, "stem slots need `stems=6`")),
            (true, None) => return Err(Error::syntax(f.at, "expected `slot=set`")),
        };
        sets.push(r);
    }
    if sets.is_empty() {
        return Err(Error::syntax(fs[0].at, "paradigm without ending sets"));
    }
    Ok(Paradigm {
        name,
        six_stems,
        sets,
    })
}

fn parse_entry(fs: &[Field<'_>], alphabet: &Alphabet) -> Result<LexiconEntry> {
    let [lemma, paradigm, rest @ ..] = fs else {
        return Err(Error::syntax(fs[0].at, "expected `lemma paradigm base`"));
    };
    let lemma_text: String = lemma.text.chars().flat_map(char::to_lowercase).collect();
    let mut six: [Option<Vec<Symbol>>; 6] = Default::default();
    let mut one = None;
    let mut slotted = false;
    let mut exceptions = BTreeMap::new();
    for f in rest {
        match f.text.split_once('=') {
            Some((key, value)) => {
                if let Some(slot) = StemSlot::parse(key) {
                    slotted = true;
                    if value != "-" {
                        six[slot.index()] = Some(base_form(alphabet, &lemma_text, f, value)?);
                    }
                } else {
                    let value: String = value.chars().flat_map(char::to_lowercase).collect();
                    if exceptions.insert(key.to_string(), value).is_some() {
                        return Err(Error::DuplicateTag {
                            owner: lemma_text,
                            tag: key.to_string(),
                        });
                    }
                }
            }
            None if one.is_none() => one = Some(base_form(alphabet, &lemma_text, f, f.text)?),
            None => return Err(Error::syntax(f.at, "more than one base form")),
        }
    }
    let stems = match (one, slotted) {
        (Some(b), false) => Stems::One(b),
        (None, true) => Stems::Six(six),
        (None, false) => return Err(Error::syntax(lemma.at, "entry without a base form")),
        (Some(_), true) => {
            return Err(Error::BadStems {
                entry: lemma_text,
                message: "mixes a single base form with stem slots".into(),
            })
        }
    };
    Ok(LexiconEntry {
        lemma: lemma_text,
        paradigm: paradigm.text.to_string(),
        stems,
        exceptions,
        line: lemma.at.line,
    })
}

fn base_form(alphabet: &Alphabet, lemma: &str, f: &Field<'_>, text: &str) -> Result<Vec<Symbol>> {
    let s = alphabet.tokenize(text).map_err(|e| match e {
        Error::UnknownSymbol { symbol, .. } => Error::UnknownSymbol {
            at: Some(f.at),
            symbol,
        },
        e => e,
    })?;
    match s.first() {
        None => Err(Error::BadStems {
            entry: lemma.into(),
            message: "empty base form".into(),
        }),
        Some(&first) if alphabet.category(first) == Category::Marker => Err(Error::BadStems {
            entry: lemma.into(),
            message: format!("base form `{text}` starts with a marker"),
        }),
        Some(_) => Ok(s),
    }
}

/// A form whose realization set is not a single word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anomaly {
    pub lemma: String,
    pub paradigm: String,
    pub tag: String,
    pub lexical: String,
    pub realizations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: usize,
    pub forms: usize,
    pub exceptions: usize,
    pub anomalies: Vec<Anomaly>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty()
    }
}

/// Realizes every expanded form and reports those without exactly one
/// surface word.
pub fn validate_lexicon(lexicon: &Lexicon, grammar: &Grammar) -> ValidationReport {
    let mut report = ValidationReport {
        entries: lexicon.entries.len(),
        ..Default::default()
    };
    for entry in &lexicon.entries {
        for form in lexicon.expand(entry) {
            report.forms += 1;
            let lexical = match &form.kind {
                FormKind::Exception(_) => {
                    report.exceptions += 1;
                    continue;
                }
                FormKind::Lexical(s) => s,
            };
            let out = grammar.generate(lexical);
            if out.len() != 1 {
                report.anomalies.push(Anomaly {
                    lemma: entry.lemma.clone(),
                    paradigm: entry.paradigm.clone(),
                    tag: form.tag,
                    lexical: grammar.alphabet.render(lexical),
                    realizations: out.into_iter().collect(),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::czech;
    use alloc::vec;

    const SMALL: &str = "
ENDINGS fem
NomSg
DatSg  ^2P1 ě
GenPl  ^N1

ENDINGS verb-pres
Pres.1Sg u
ENDINGS verb-past
Past.M ^N1
Past.F ^N1 a

PARADIGMS
fem-a-hard : fem
irr stems=6 : present=verb-pres past=verb-past

ENTRIES
matka fem-a-hard matka
chodba fem-a-hard chod^E2ba GenPl=chodeb
jít irr present=jd past=š^E2la infinitive=jít
";

    fn alphabet() -> Alphabet {
        Alphabet::parse(czech::ALPHABET).unwrap()
    }

    fn text(a: &Alphabet, s: &[Symbol]) -> String {
        a.render(s)
    }

    #[test]
    fn builds_lexical_strings() {
        let a = alphabet();
        let t = |s: &str| a.tokenize(s).unwrap();
        let m = |s: &str| a.symbol(s);
        let s = build_lexical_string(&t("korek"), m("^2P0"), &t("^E1em"));
        assert_eq!(text(&a, &s), "korek^2P0^E1em");
        let s = build_lexical_string(&t("doktorka"), m("^1P1"), &t("in^2P0ých"));
        assert_eq!(text(&a, &s), "doktorka^1P1in^2P0ých");
        assert_eq!(text(&a, &build_lexical_string(&t("les"), None, &[])), "les");
    }

    #[test]
    fn parses_and_expands() {
        let a = alphabet();
        let lex = Lexicon::parse(SMALL, &a).unwrap();
        assert_eq!(lex.entries.len(), 3);
        let matka = &lex.entries[0];
        let forms = lex.expand(matka);
        assert_eq!(forms.len(), 3);
        assert_eq!(forms[1].tag, "DatSg");
        assert_eq!(
            forms[1].kind,
            FormKind::Lexical(a.tokenize("matka^2P1ě").unwrap())
        );
        let chodba = lex.expand(&lex.entries[1]);
        assert_eq!(chodba[2].kind, FormKind::Exception("chodeb".into()));
    }

    #[test]
    fn six_stems_feed_their_own_tags() {
        let a = alphabet();
        let lex = Lexicon::parse(SMALL, &a).unwrap();
        let forms = lex.expand(&lex.entries[2]);
        let tags: Vec<&str> = forms.iter().map(|f| f.tag.as_str()).collect();
        assert_eq!(tags, ["Pres.1Sg", "Past.M", "Past.F"]);
        assert_eq!(forms[0].kind, FormKind::Lexical(a.tokenize("jdu").unwrap()));
        assert_eq!(
            forms[2].kind,
            FormKind::Lexical(a.tokenize("š^E2la^N1a").unwrap())
        );
    }

    #[test]
    fn empty_lexicon() {
        let lex = Lexicon::parse("", &alphabet()).unwrap();
        assert!(lex.entries.is_empty());
        assert_eq!(
            validate_lexicon(&lex, &czech::grammar()),
            ValidationReport::default()
        );
    }

    #[test]
    fn reports_reference_errors() {
        let a = alphabet();
        let base = "ENDINGS e\nNomSg\nPARADIGMS\np : e\nENTRIES\n";
        let err = |extra: &str| Lexicon::parse(&alloc::format!("{base}{extra}"), &a).unwrap_err();
        assert_eq!(
            err("matka nope matka\n"),
            Error::UnknownParadigm {
                entry: "matka".into(),
                paradigm: "nope".into()
            }
        );
        assert_eq!(
            err("matka p matka\nmatka p matka\n"),
            Error::DuplicateEntry {
                lemma: "matka".into(),
                paradigm: "p".into()
            }
        );
        assert_eq!(
            err("matka p matka GenSg=matky\n"),
            Error::UnknownTag {
                owner: "matka".into(),
                tag: "GenSg".into()
            }
        );
        assert!(matches!(err("x p ^N1a\n"), Error::BadStems { .. }));
        assert_eq!(
            err("matka p ma@ka\n"),
            Error::UnknownSymbol {
                at: Some(Location { line: 6, column: 9 }),
                symbol: "@".into()
            }
        );
        let e = Lexicon::parse("PARADIGMS\np : missing\n", &a).unwrap_err();
        assert_eq!(
            e,
            Error::UnknownEndingSet {
                paradigm: "p".into(),
                set: "missing".into()
            }
        );
        let e = Lexicon::parse("ENDINGS e\nNomSg\nNomSg u\n", &a).unwrap_err();
        assert_eq!(
            e,
            Error::DuplicateTag {
                owner: "e".into(),
                tag: "NomSg".into()
            }
        );
        let e = Lexicon::parse("ENDINGS a\nX\nENDINGS b\nX\nPARADIGMS\np : a b\n", &a).unwrap_err();
        assert_eq!(
            e,
            Error::DuplicateTag {
                owner: "p".into(),
                tag: "X".into()
            }
        );
        assert!(matches!(
            Lexicon::parse("matka p matka\n", &a),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn missing_epenthesis_marker_changes_zero_ending_form() {
        let g = czech::grammar();
        let text = czech::LEXICON.replace("chod^E2ba", "chodba");
        let lex = Lexicon::parse(&text, &g.alphabet).unwrap();
        let lex = Lexicon {
            entries: lex
                .entries
                .into_iter()
                .filter(|e| e.lemma == "chodba")
                .collect(),
            ..lex
        };
        let report = validate_lexicon(&lex, &g);
        assert_eq!(report.forms, 14);
        assert_eq!(report.anomalies.len(), 0, "chodb is still a single word");
        // without epenthesis the zero-ending form is not the expected one
        let gen_pl = lex
            .expand(&lex.entries[0])
            .into_iter()
            .find(|f| f.tag == "GenPl")
            .unwrap();
        let FormKind::Lexical(s) = gen_pl.kind else {
            panic!()
        };
        assert_eq!(
            g.generate(&s).into_iter().collect::<Vec<_>>(),
            vec![String::from("chodb")]
        );
    }
}
