//! Command results. Each is printed either as JSON or as text lines
//! carrying the same data.

use std::fmt::Write as _;

use serde::Serialize;

pub trait Human {
    fn human(&self, out: &mut String);
}

/// Renders `value` in the requested mode, newline-terminated.
pub fn render<T: Serialize + Human>(value: &T, json: bool) -> String {
    let mut out = String::new();
    if json {
        out = serde_json::to_string_pretty(value).expect("plain data serializes");
        out.push('\n');
    } else {
        value.human(&mut out);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct WarningOut {
    pub rule: String,
    pub context: usize,
}

#[derive(Debug, Serialize)]
pub struct CompileReport {
    pub index: String,
    pub rules: usize,
    pub warnings: Vec<WarningOut>,
    pub entries: usize,
    pub surfaces: usize,
    pub pairs: usize,
    pub hashes: Vec<(String, String)>,
}

impl Human for CompileReport {
    fn human(&self, out: &mut String) {
        let _ = writeln!(out, "compiled {} rules", self.rules);
        for w in &self.warnings {
            let _ = writeln!(
                out,
                "warning: rule \"{}\": context {} can never match",
                w.rule,
                w.context + 1
            );
        }
        let _ = writeln!(
            out,
            "indexed {} entries: {} surface forms, {} analyses -> {}",
            self.entries, self.surfaces, self.pairs, self.index
        );
        for (kind, hash) in &self.hashes {
            let _ = writeln!(out, "{kind} sha256 {hash}");
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GenerateOut {
    pub lemma: String,
    pub tag: String,
    pub forms: Vec<String>,
}

impl Human for GenerateOut {
    fn human(&self, out: &mut String) {
        for f in &self.forms {
            let _ = writeln!(out, "{f}");
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisOut {
    pub lemma: String,
    pub paradigm: String,
    pub tag: String,
    pub exception: bool,
}

#[derive(Debug, Serialize)]
pub struct WordOut {
    pub word: String,
    pub analyses: Vec<AnalysisOut>,
}

#[derive(Debug, Serialize)]
#[serde(transparent)]
pub struct AnalyzeOut(pub Vec<WordOut>);

impl Human for AnalyzeOut {
    fn human(&self, out: &mut String) {
        for w in &self.0 {
            if w.analyses.is_empty() {
                let _ = writeln!(out, "{}\t?", w.word);
            }
            for a in &w.analyses {
                let mark = if a.exception { "\texception" } else { "" };
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}{mark}",
                    w.word, a.lemma, a.paradigm, a.tag
                );
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExpandedForm {
    pub paradigm: String,
    pub tag: String,
    /// Lexical string, absent for forms listed as exceptions.
    pub lexical: Option<String>,
    pub surfaces: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ExpandOut {
    pub lemma: String,
    pub forms: Vec<ExpandedForm>,
}

impl Human for ExpandOut {
    fn human(&self, out: &mut String) {
        for f in &self.forms {
            let lexical = f.lexical.as_deref().unwrap_or("(exception)");
            let _ = writeln!(
                out,
                "{}\t{}\t{lexical}\t{}",
                f.paradigm,
                f.tag,
                f.surfaces.join(" ")
            );
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CandidateOut {
    pub surface: String,
    pub pairs: String,
    pub accepted: bool,
    pub rule: Option<String>,
    /// Index into the pair string where the rule first fails.
    pub position: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct TraceOut {
    pub lexical: String,
    pub surface: Option<String>,
    pub candidates: Vec<CandidateOut>,
    pub truncated: bool,
}

impl Human for TraceOut {
    fn human(&self, out: &mut String) {
        if self.candidates.is_empty() {
            let _ = writeln!(
                out,
                "no candidate pair string realizes the requested surface"
            );
        }
        for c in &self.candidates {
            match (&c.rule, c.position) {
                (Some(rule), Some(pos)) => {
                    let _ = writeln!(
                        out,
                        "rejected {}: rule \"{rule}\" at position {pos}\t{}",
                        c.surface, c.pairs
                    );
                }
                _ => {
                    let _ = writeln!(out, "accepted {}\t{}", c.surface, c.pairs);
                }
            }
        }
        if self.truncated {
            let _ = writeln!(out, "(candidate list truncated)");
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConflictOut {
    pub first: String,
    pub second: String,
    pub first_context: usize,
    pub second_context: usize,
    pub witness: String,
}

#[derive(Debug, Serialize)]
#[serde(transparent)]
pub struct ConflictsOut(pub Vec<ConflictOut>);

impl Human for ConflictsOut {
    fn human(&self, out: &mut String) {
        if self.0.is_empty() {
            let _ = writeln!(out, "no conflicts");
        }
        for c in &self.0 {
            let _ = writeln!(
                out,
                "\"{}\" (context {}) and \"{}\" (context {}) clash in {}",
                c.first,
                c.first_context + 1,
                c.second,
                c.second_context + 1,
                c.witness
            );
        }
    }
}

#[derive(Debug, Serialize)]
pub struct UnknownOut {
    pub word: String,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct CoverageOut {
    pub tokens: usize,
    pub analyzed: usize,
    pub ratio: f64,
    pub types: usize,
    pub analyzed_types: usize,
    pub type_ratio: f64,
    pub empty: bool,
    pub top_unknown: Vec<UnknownOut>,
}

impl Human for CoverageOut {
    fn human(&self, out: &mut String) {
        if self.empty {
            let _ = writeln!(
                out,
                "empty corpus: no tokens, ratios undefined (reported as 0)"
            );
        }
        let _ = writeln!(
            out,
            "tokens {} analyzed {} ratio {}",
            self.tokens, self.analyzed, self.ratio
        );
        let _ = writeln!(
            out,
            "types {} analyzed {} ratio {}",
            self.types, self.analyzed_types, self.type_ratio
        );
        for u in &self.top_unknown {
            let _ = writeln!(out, "unknown {}\t{}", u.word, u.count);
        }
    }
}
