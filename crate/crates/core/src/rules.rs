//! Two-level rule source: context expressions, rules, and the parser.
//!
//! ```text
//! Definitions
//!   Soft = [ ě: | i: | í: ] ;
//! Rules
//! "Deletion of the ending -a-"
//! a:0 <=> _ [ ^N1: | ^1P1: | ^2P1: ] ;
//!         _ t: [ ^N2: | ^N4: ] ;
//! ```
//!
//! Atoms: `x` is the identity pair `x:x` (a bare marker means `x:0`), `x:`
//! any pair with lexical `x`, `:y` any pair with surface `y`, `x:y` one
//! exact pair, `?` any pair. A set name on either side matches its members;
//! a bare set name constrains the lexical side. `#` is the word boundary.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{normalize, Alphabet, Category, Pair, Symbol};
use crate::error::{Error, Location, Result};

/// One side of a pair pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Any,
    Symbol(Symbol),
    Set(String, BTreeSet<Symbol>),
}

impl Side {
    pub fn matches(&self, s: Symbol) -> bool {
        match self {
            Side::Any => true,
            Side::Symbol(x) => *x == s,
            Side::Set(_, members) => members.contains(&s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPattern {
    pub lexical: Side,
    pub surface: Side,
}

impl PairPattern {
    pub fn matches(&self, p: Pair) -> bool {
        self.lexical.matches(p.lexical) && self.surface.matches(p.surface)
    }
}

/// Context expression over feasible pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextRegex {
    Pair(PairPattern),
    Boundary,
    Seq(Vec<ContextRegex>),
    Alt(Vec<ContextRegex>),
    Optional(Box<ContextRegex>),
    Star(Box<ContextRegex>),
    Plus(Box<ContextRegex>),
}

impl ContextRegex {
    pub fn empty() -> Self {
        ContextRegex::Seq(Vec::new())
    }

    pub fn is_empty_seq(&self) -> bool {
        matches!(self, ContextRegex::Seq(v) if v.is_empty())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    /// `<=>`
    Biconditional,
    /// `=>`: the center occurs only in the listed contexts.
    ContextRestriction,
    /// `<=`: in the listed contexts the lexical side surfaces as the center.
    SurfaceCoercion,
    /// `/<=`: the center never occurs in the listed contexts.
    Exclusion,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::Biconditional => "<=>",
            Operator::ContextRestriction => "=>",
            Operator::SurfaceCoercion => "<=",
            Operator::Exclusion => "/<=",
        }
    }

    pub fn restricts(self) -> bool {
        matches!(self, Operator::Biconditional | Operator::ContextRestriction)
    }

    pub fn coerces(self) -> bool {
        matches!(self, Operator::Biconditional | Operator::SurfaceCoercion)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub left: ContextRegex,
    pub right: ContextRegex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLevelRule {
    pub name: String,
    pub center: Pair,
    pub operator: Operator,
    pub contexts: Vec<Context>,
    pub at: Location,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Op(Operator),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    at: Location,
    /// No whitespace between this token and the previous one.
    glued: bool,
}

const PUNCT: &[char] = &['[', ']', '(', ')', '|', '*', '+', ':', '_', ';', '#', '='];

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let mut glued = false;
        while i < chars.len() {
            let c = chars[i];
            let at = Location {
                line: ln + 1,
                column: i + 1,
            };
            if c == '!' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                glued = false;
                continue;
            }
            let was_glued = core::mem::replace(&mut glued, true);
            if c == '"' {
                let end = chars[i + 1..]
                    .iter()
                    .position(|&c| c == '"')
                    .ok_or_else(|| Error::syntax(at, "unterminated rule name"))?;
                out.push(Lexed {
                    tok: Tok::Str(chars[i + 1..i + 1 + end].iter().collect()),
                    at,
                    glued: was_glued,
                });
                i += end + 2;
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let op = [
                ("/<=", Operator::Exclusion),
                ("<=>", Operator::Biconditional),
                ("<=", Operator::SurfaceCoercion),
                ("=>", Operator::ContextRestriction),
            ]
            .into_iter()
            .find(|(s, _)| rest.starts_with(s));
            if let Some((s, op)) = op {
                out.push(Lexed {
                    tok: Tok::Op(op),
                    at,
                    glued: was_glued,
                });
                i += s.len();
                continue;
            }
            if PUNCT.contains(&c) {
                out.push(Lexed {
                    tok: Tok::Punct(c),
                    at,
                    glued: was_glued,
                });
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len()
                && !chars[i].is_whitespace()
                && !PUNCT.contains(&chars[i])
                && !matches!(chars[i], '"' | '!')
            {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Word(chars[start..i].iter().collect()),
                at,
                glued: was_glued,
            });
        }
    }
    Ok(out)
}

/// Parsed rule file: named definitions plus rules in source order.
#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    pub rules: Vec<TwoLevelRule>,
    pub definitions: BTreeMap<String, ContextRegex>,
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    alphabet: &'a Alphabet,
    defs: BTreeMap<String, ContextRegex>,
    end: Location,
}

/// Parses a rule file against an alphabet.
pub fn parse_rules(text: &str, alphabet: &Alphabet) -> Result<Vec<TwoLevelRule>> {
    parse_rule_set(text, alphabet).map(|s| s.rules)
}

pub fn parse_rule_set(text: &str, alphabet: &Alphabet) -> Result<RuleSet> {
    let text = normalize(text);
    let toks = lex(&text)?;
    let end = Location {
        line: text.lines().count() + 1,
        column: 1,
    };
    let mut p = Parser {
        toks,
        pos: 0,
        alphabet,
        defs: BTreeMap::new(),
        end,
    };
    let mut rules = Vec::new();
    while let Some(t) = p.peek() {
        match &t.tok {
            Tok::Word(w) if w == "Definitions" || w == "Rules" => {
                p.pos += 1;
            }
            Tok::Str(_) => rules.push(p.rule()?),
            Tok::Word(_) => p.definition()?,
            _ => return Err(Error::syntax(t.at, "expected a quoted rule name")),
        }
    }
    Ok(RuleSet {
        rules,
        definitions: p.defs,
    })
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Lexed> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> Location {
        self.peek().map_or(self.end, |t| t.at)
    }

    fn next(&mut self) -> Option<Lexed> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Lexed {
                tok: Tok::Punct(p), ..
            }) if p == c => Ok(()),
            Some(t) => Err(Error::syntax(t.at, alloc::format!("expected `{c}`"))),
            None => Err(Error::syntax(self.end, alloc::format!("expected `{c}`"))),
        }
    }

    fn is_glued_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Lexed { tok: Tok::Punct(p), glued: true, .. }) if *p == c)
    }

    fn is_glued_word(&self) -> bool {
        matches!(
            self.peek(),
            Some(Lexed {
                tok: Tok::Word(_),
                glued: true,
                ..
            })
        )
    }

    fn is_punct(&self, c: char) -> bool {
        matches!(self.peek(), Some(Lexed { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn definition(&mut self) -> Result<()> {
        let t = self.next().unwrap();
        let Tok::Word(name) = t.tok else {
            unreachable!()
        };
        self.expect('=')?;
        let re = self.alternation()?;
        self.expect(';')?;
        if self.defs.contains_key(&name) {
            return Err(Error::DuplicateDefinition { at: t.at, name });
        }
        self.defs.insert(name, re);
        Ok(())
    }

    fn rule(&mut self) -> Result<TwoLevelRule> {
        let head = self.next().unwrap();
        let Tok::Str(name) = head.tok else {
            unreachable!()
        };
        let center_at = self.here();
        let lex = self.word()?;
        self.expect(':')?;
        let surf = self.word()?;
        let l = self.symbol(&lex, center_at)?;
        let s = self.symbol(&surf, center_at)?;
        let center = Pair::new(l, s);
        if !self.alphabet.is_feasible(center) {
            return Err(Error::InfeasiblePair {
                at: Some(center_at),
                pair: alloc::format!("{lex}:{surf}"),
            });
        }
        let operator = match self.next() {
            Some(Lexed {
                tok: Tok::Op(op), ..
            }) => op,
            Some(t) => return Err(Error::syntax(t.at, "expected a rule operator")),
            None => return Err(Error::syntax(self.end, "expected a rule operator")),
        };
        let mut contexts = Vec::new();
        loop {
            let left = self.alternation()?;
            self.expect('_')?;
            let right = self.alternation()?;
            self.expect(';')?;
            contexts.push(Context { left, right });
            match self.peek() {
                None
                | Some(Lexed {
                    tok: Tok::Str(_), ..
                }) => break,
                Some(Lexed {
                    tok: Tok::Word(w), ..
                }) if w == "Rules" || w == "Definitions" => break,
                _ => {}
            }
        }
        Ok(TwoLevelRule {
            name,
            center,
            operator,
            contexts,
            at: head.at,
        })
    }

    fn word(&mut self) -> Result<String> {
        match self.next() {
            Some(Lexed {
                tok: Tok::Word(w), ..
            }) => Ok(w),
            Some(t) => Err(Error::syntax(t.at, "expected a symbol")),
            None => Err(Error::syntax(self.end, "expected a symbol")),
        }
    }

    fn symbol(&self, text: &str, at: Location) -> Result<Symbol> {
        self.alphabet
            .symbol(text)
            .ok_or_else(|| Error::UnknownSymbol {
                at: Some(at),
                symbol: text.to_string(),
            })
    }

    fn side(&self, text: &str, at: Location) -> Result<Side> {
        if text == "?" {
            return Ok(Side::Any);
        }
        if let Some(s) = self.alphabet.symbol(text) {
            return Ok(Side::Symbol(s));
        }
        if let Some(set) = self.alphabet.set(text) {
            return Ok(Side::Set(text.to_string(), set.clone()));
        }
        if text.chars().count() > 1 && !text.starts_with('^') {
            Err(Error::UnknownSet {
                at: Some(at),
                name: text.to_string(),
            })
        } else {
            Err(Error::UnknownSymbol {
                at: Some(at),
                symbol: text.to_string(),
            })
        }
    }

    fn alternation(&mut self) -> Result<ContextRegex> {
        let mut alts = alloc::vec![self.sequence()?];
        while self.is_punct('|') {
            self.pos += 1;
            alts.push(self.sequence()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            ContextRegex::Alt(alts)
        })
    }

    fn sequence(&mut self) -> Result<ContextRegex> {
        let mut items = Vec::new();
        while let Some(t) = self.peek() {
            match &t.tok {
                Tok::Punct(']' | ')' | '|' | ';' | '_') | Tok::Str(_) | Tok::Op(_) => break,
                _ => {}
            }
            let mut item = self.primary()?;
            loop {
                if self.is_punct('*') {
                    self.pos += 1;
                    item = ContextRegex::Star(Box::new(item));
                } else if self.is_punct('+') {
                    self.pos += 1;
                    item = ContextRegex::Plus(Box::new(item));
                } else {
                    break;
                }
            }
            items.push(item);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            ContextRegex::Seq(items)
        })
    }

    fn primary(&mut self) -> Result<ContextRegex> {
        let t = self.next().unwrap();
        match t.tok {
            Tok::Punct('[') => {
                let inner = self.alternation()?;
                self.expect(']')?;
                Ok(inner)
            }
            Tok::Punct('(') => {
                let inner = self.alternation()?;
                self.expect(')')?;
                Ok(ContextRegex::Optional(Box::new(inner)))
            }
            Tok::Punct('#') => Ok(ContextRegex::Boundary),
            Tok::Punct(':') => {
                if !self.is_glued_word() {
                    return Err(Error::syntax(t.at, "expected a symbol after `:`"));
                }
                let w = self.word()?;
                let surface = self.side(&w, t.at)?;
                Ok(ContextRegex::Pair(PairPattern {
                    lexical: Side::Any,
                    surface,
                }))
            }
            Tok::Word(w) => {
                if self.is_glued_punct(':') {
                    self.pos += 1;
                    let lexical = self.side(&w, t.at)?;
                    let surface = match self.is_glued_word() {
                        true => {
                            let s = self.word()?;
                            self.side(&s, t.at)?
                        }
                        false => Side::Any,
                    };
                    if let (Side::Symbol(l), Side::Symbol(s)) = (&lexical, &surface) {
                        let pair = Pair::new(*l, *s);
                        if !self.alphabet.is_feasible(pair) {
                            return Err(Error::InfeasiblePair {
                                at: Some(t.at),
                                pair: self.alphabet.pair_text(pair),
                            });
                        }
                    }
                    return Ok(ContextRegex::Pair(PairPattern { lexical, surface }));
                }
                if let Some(def) = self.defs.get(&w) {
                    return Ok(def.clone());
                }
                match self.side(&w, t.at)? {
                    Side::Symbol(s) => {
                        let surface = if self.alphabet.category(s) == Category::Marker {
                            Symbol::ZERO
                        } else {
                            s
                        };
                        Ok(ContextRegex::Pair(PairPattern {
                            lexical: Side::Symbol(s),
                            surface: Side::Symbol(surface),
                        }))
                    }
                    side => Ok(ContextRegex::Pair(PairPattern {
                        lexical: side,
                        surface: Side::Any,
                    })),
                }
            }
            _ => Err(Error::syntax(t.at, "unexpected token in context")),
        }
    }
}
