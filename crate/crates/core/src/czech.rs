//! The bundled Czech rule program and its alternation inventory.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::generate::Grammar;
use crate::rules::TwoLevelRule;

pub const ALPHABET: &str = include_str!("../assets/czech.alphabet");
pub const RULES: &str = include_str!("../assets/czech.rules");
pub const LEXICON: &str = include_str!("../assets/czech.lexicon");

/// Alphabet and rule sources of the bundled program.
pub fn builtin_rules() -> (&'static str, &'static str) {
    (ALPHABET, RULES)
}

/// Compiles the bundled program. Takes a noticeable fraction of a second;
/// callers should keep the result.
pub fn grammar() -> Grammar {
    Grammar::compile(ALPHABET, RULES).expect("bundled rules compile")
}

/// Surface forms of a lexical string under `grammar`.
pub fn realize(grammar: &Grammar, lexical: &str) -> Result<BTreeSet<String>> {
    grammar.generate_surface(lexical)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trigger {
    FirstPalatalization,
    SecondPalatalization,
    Assimilation,
    /// Same outcome under either palatalization.
    Either,
    None,
}

impl Trigger {
    pub fn name(self) -> &'static str {
        match self {
            Trigger::FirstPalatalization => "1st-palat",
            Trigger::SecondPalatalization => "2nd-palat",
            Trigger::Assimilation => "assimilation",
            Trigger::Either => "either",
            Trigger::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternationEntry {
    pub lexical: &'static str,
    pub trigger: Trigger,
    pub surface: &'static str,
    pub productive: bool,
    pub example: &'static str,
    /// Lexical string exercising the alternation.
    pub input: &'static str,
    /// Its only expected realization.
    pub expected: &'static str,
}

macro_rules! entry {
    ($lex:literal, $trig:ident, $surf:literal, $prod:literal, $ex:literal, $input:literal => $expected:literal) => {
        AlternationEntry {
            lexical: $lex,
            trigger: Trigger::$trig,
            surface: $surf,
            productive: $prod,
            example: $ex,
            input: $input,
            expected: $expected,
        }
    };
}

/// Consonant and vowel alternations of Czech stems, each with a lexical
/// string that must realize to exactly one surface form.
pub fn alternation_table() -> Vec<AlternationEntry> {
    alloc::vec![
        entry!("ki", FirstPalatalization, "či", true, "matka→matčin", "matka^1P1in" => "matčin"),
        entry!("kě", FirstPalatalization, "če", true, "hořký→hořčejší", "hořký^1P2ejší" => "hořčejší"),
        entry!("kě", SecondPalatalization, "ce", true, "matka→matce", "matka^2P1ě" => "matce"),
        entry!("ki", SecondPalatalization, "ci", true, "kluk→kluci", "kluk^2P0i" => "kluci"),
        entry!("ke", Assimilation, "če", true, "tlak→tlačen", "tlak^A0en" => "tlačen"),
        entry!("he", FirstPalatalization, "že", true, "bůh→bože", "bůh^1P0e" => "bože"),
        entry!("hi", SecondPalatalization, "zi", true, "bůh→bozi", "bůh^2P0i" => "bozi"),
        entry!("he", Assimilation, "že", true, "mnoho→množení", "mnoho^A1ení" => "množení"),
        entry!("gi", FirstPalatalization, "ži", true, "jaga→jažin", "jaga^1P1in" => "jažin"),
        entry!("gě", SecondPalatalization, "ze", true, "jaga→jaze", "jaga^2P1ě" => "jaze"),
        entry!("ge", Assimilation, "že", true, "pedagog→pedagožení", "pedagog^A0ení" => "pedagožení"),
        entry!("chě", SecondPalatalization, "še", true, "moucha→mouše", "moucha^2P1ě" => "mouše"),
        entry!("chi", SecondPalatalization, "ši", true, "tichý→tiší", "tichý^2P3í" => "tiší"),
        entry!("dje", Assimilation, "ze", false, "sladit→slazení", "sladit^A2ení" => "slazení"),
        entry!("dě", SecondPalatalization, "dě", true, "sladit→sladění", "sladit^2P2ení" => "sladění"),
        entry!("dě", Either, "dě", true, "rada→radě", "rada^2P1ě" => "radě"),
        entry!("tje", Assimilation, "ce", false, "platit→placení", "platit^A2ení" => "placení"),
        entry!("tě", Either, "tě", true, "teta→tetě", "teta^2P1ě" => "tetě"),
        entry!("ně", SecondPalatalization, "ně", true, "honit→honěný", "honit^2P2ený" => "honěný"),
        entry!("ni", SecondPalatalization, "ni", true, "slon→sloni", "slon^2P0i" => "sloni"),
        entry!("ri", FirstPalatalization, "ři", true, "var→vařit", "var^1P0it" => "vařit"),
        entry!("rě", SecondPalatalization, "ře", true, "sestra→sestře", "sestra^2P1ě" => "sestře"),
        entry!("rě", FirstPalatalization, "ře", true, "chytrý→chytřejší", "chytrý^1P2ejší" => "chytřejší"),
        entry!("bje", Assimilation, "be", true, "zlobit→zlobení", "zlobit^A2ení" => "zlobení"),
        entry!("mje", Assimilation, "me", true, "zlomit→zlomený", "zlomit^A2ený" => "zlomený"),
        entry!("pje", Assimilation, "pe", true, "kropit→kropení", "kropit^A2ení" => "kropení"),
        entry!("vje", Assimilation, "ve", true, "lovit→lovení", "lovit^A2ení" => "lovení"),
        entry!("bě", SecondPalatalization, "bě", true, "vrba→vrbě", "vrba^2P1ě" => "vrbě"),
        entry!("sje", Assimilation, "še", false, "prosit→prošení", "prosit^A2ení" => "prošení"),
        entry!("se", SecondPalatalization, "se", true, "kosit→kosení", "kosit^2P2ení" => "kosení"),
        entry!("zje", Assimilation, "že", false, "kazit→kažení", "kazit^A2ení" => "kažení"),
        entry!("sě", SecondPalatalization, "se", true, "vosa→vose", "vosa^2P1ě" => "vose"),
        entry!("zě", SecondPalatalization, "ze", true, "koza→koze", "koza^2P1ě" => "koze"),
        entry!("lje", Assimilation, "le", true, "školit→školení", "školit^A2ení" => "školení"),
        entry!("lě", Either, "le", true, "škola→škole", "škola^2P1ě" => "škole"),
        entry!("stj", Assimilation, "šť", true, "čistit→čištění", "čistit^A2ení" => "čištění"),
        entry!("slj", Assimilation, "šl", true, "myslit→myšlení", "myslit^A2ení" => "myšlení"),
        entry!("sk", SecondPalatalization, "šť", true, "kamarádský→kamarádští", "kamarádský^2P3í" => "kamarádští"),
        entry!("sk", FirstPalatalization, "šť", true, "kamarádský→kamarádštější", "kamarádský^1P2ejší" => "kamarádštější"),
        entry!("ck", SecondPalatalization, "čť", true, "čacký→čačtí", "čacký^2P3í" => "čačtí"),
        entry!("ck", FirstPalatalization, "čť", true, "čacký→čačtější", "čacký^1P2ejší" => "čačtější"),
        entry!("čk", FirstPalatalization, "čť", true, "žluťoučký→žluťoučtější", "žluťoučký^1P2ejší" => "žluťoučtější"),
        entry!("čk", SecondPalatalization, "cc", true, "žluťoučký→žluťouccí", "žluťoučký^2P3í" => "žluťouccí"),
        entry!("čě", Either, "če", true, "čiča→čiče", "čiča^2P1ě" => "čiče"),
        entry!("cě", FirstPalatalization, "če", true, "chlapec→chlapče", "chlap^E1ec^1P0e" => "chlapče"),
        entry!("žy", None, "ži", true, "muž→muži", "muž^2P0y" => "muži"),
        entry!("ďi", None, "di", true, "loď→lodi", "loď^2P0i" => "lodi"),
        entry!("ťe", None, "tě", true, "zeť→zetě", "zeť^2P0e" => "zetě"),
        entry!("ůhe", FirstPalatalization, "ože", true, "bůh→bože", "bůh^1P0e" => "bože"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleClass {
    /// Removes endings or suffixes of the base form.
    Removal,
    Epenthesis,
    Alternation,
    Spelling,
    Technical,
}

impl RuleClass {
    pub fn name(self) -> &'static str {
        match self {
            RuleClass::Removal => "removal",
            RuleClass::Epenthesis => "epenthesis",
            RuleClass::Alternation => "alternation",
            RuleClass::Spelling => "spelling",
            RuleClass::Technical => "technical",
        }
    }
}

const SPELLING: &[&str] = &["e:ě", "y:i", "ý:í", "ď:d", "ť:t", "ň:n"];
const TECHNICAL: &[&str] = &["h:0"];

/// Class of a bundled rule, decided by its center pair.
pub fn classify_rule(grammar: &Grammar, rule: &TwoLevelRule) -> RuleClass {
    let center = grammar.alphabet.pair_text(rule.center);
    if TECHNICAL.contains(&center.as_str()) {
        RuleClass::Technical
    } else if SPELLING.contains(&center.as_str()) {
        RuleClass::Spelling
    } else if rule.center.lexical.is_zero() {
        RuleClass::Epenthesis
    } else if rule.center.surface.is_zero() {
        RuleClass::Removal
    } else {
        RuleClass::Alternation
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub removal: usize,
    pub epenthesis: usize,
    pub alternation: usize,
    pub spelling: usize,
    pub technical: usize,
}

/// Rule counts by class for a grammar built from the bundled sources.
pub fn census(grammar: &Grammar) -> Census {
    let mut c = Census::default();
    for r in &grammar.rules {
        c.total += 1;
        match classify_rule(grammar, &r.rule) {
            RuleClass::Removal => c.removal += 1,
            RuleClass::Epenthesis => c.epenthesis += 1,
            RuleClass::Alternation => c.alternation += 1,
            RuleClass::Spelling => c.spelling += 1,
            RuleClass::Technical => c.technical += 1,
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markers_never_surface() {
        let g = grammar();
        for (lexical, want) in [
            ("matka^2P1ě", "matce"),
            ("pes", "pes"),
            ("muž^2P0y", "muži"),
        ] {
            assert_eq!(
                realize(&g, lexical).unwrap(),
                BTreeSet::from([String::from(want)])
            );
        }
        assert!(realize(&g, "pes^Q1").is_err());
    }

    #[test]
    fn table_covers_every_trigger() {
        let table = alternation_table();
        assert!(table.len() >= 24);
        for t in [
            Trigger::FirstPalatalization,
            Trigger::SecondPalatalization,
            Trigger::Assimilation,
            Trigger::None,
        ] {
            assert!(table.iter().any(|e| e.trigger == t), "{}", t.name());
        }
        assert!(table.iter().any(|e| !e.productive));
    }

    #[test]
    fn bundled_census_and_conflicts() {
        let g = grammar();
        let c = census(&g);
        assert_eq!(
            (
                c.total,
                c.removal,
                c.epenthesis,
                c.alternation,
                c.spelling,
                c.technical
            ),
            (35, 9, 1, 18, 6, 1)
        );
        assert!(g.conflicts().is_empty());
        assert!(g.warnings().is_empty());
    }
}
