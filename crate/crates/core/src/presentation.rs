//! The presentation record `⟨generators | relators⟩`.
//!
//! Presentations are immutable values: every transformation returns a new
//! value. Relators are stored freely reduced (guaranteed by [`Word`]) and in
//! exactly the order they were constructed, so builder outputs are
//! reproducible byte for byte.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{parse_word, GenSym, Word, WordError};

/// One violation found by [`Presentation::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// Relator `relator` references generator index `gen` which is out of range.
    IndexOutOfRange { relator: usize, gen: usize },
    DuplicateName(String),
    InvalidName(String),
    /// Relator `0`-based index stored in non-reduced form.
    UnreducedRelator(usize),
    /// The empty relator is vacuous and therefore forbidden.
    EmptyRelator(usize),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::IndexOutOfRange { relator, gen } => {
                write!(f, "relator {relator}: generator index {gen} out of range")
            }
            Diagnostic::DuplicateName(n) => write!(f, "duplicate generator name `{n}`"),
            Diagnostic::InvalidName(n) => write!(f, "invalid generator name `{n}`"),
            Diagnostic::UnreducedRelator(i) => write!(f, "relator {i} is not freely reduced"),
            Diagnostic::EmptyRelator(i) => write!(f, "relator {i} is empty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid presentation: {}", format_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("relator `{text}`: {source}")]
    Relator { text: String, source: WordError },
    #[error(transparent)]
    Word(#[from] WordError),
}

fn format_diagnostics(ds: &[Diagnostic]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

/// A finite presentation: generator symbols plus relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GenSym>,
    relators: Vec<Word>,
    label: Option<String>,
}

impl Presentation {
    /// Assembles a presentation without validating the invariants; call
    /// [`Presentation::validate`] (or use [`Presentation::parse`]) when the
    /// parts come from outside.
    pub fn new(generators: Vec<GenSym>, relators: Vec<Word>, label: Option<String>) -> Self {
        Presentation {
            generators,
            relators,
            label,
        }
    }

    /// Builds a validated presentation from generator names and relator texts
    /// in the word grammar.
    pub fn parse<N, R>(names: &[N], relators: &[R]) -> Result<Self, PresentationError>
    where
        N: AsRef<str>,
        R: AsRef<str>,
    {
        let gens = names
            .iter()
            .map(|n| GenSym::new(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let words = relators
            .iter()
            .map(|r| {
                parse_word(r.as_ref(), names).map_err(|source| PresentationError::Relator {
                    text: r.as_ref().to_string(),
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, words, None).validated()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn generators(&self) -> &[GenSym] {
        &self.generators
    }

    pub fn gen_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name() == name)
    }

    /// Renders a word over this presentation's generator names.
    pub fn word_text(&self, w: &Word) -> String {
        w.to_text(&self.generators)
    }

    /// Checks every structural invariant and returns the violations found.
    /// An empty list means the presentation is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for g in &self.generators {
            if GenSym::new(g.name()).is_err() {
                out.push(Diagnostic::InvalidName(g.name().to_string()));
            }
            if !seen.insert(g.name()) {
                out.push(Diagnostic::DuplicateName(g.name().to_string()));
            }
        }
        for (i, r) in self.relators.iter().enumerate() {
            if r.is_identity() {
                out.push(Diagnostic::EmptyRelator(i));
            }
            if let Some(max) = r.max_gen_index() {
                if max >= self.generators.len() {
                    out.push(Diagnostic::IndexOutOfRange { relator: i, gen: max });
                }
            }
            let reduced = r
                .syllables()
                .windows(2)
                .all(|w| w[0].gen != w[1].gen)
                && r.syllables().iter().all(|s| s.exp != 0);
            if !reduced {
                out.push(Diagnostic::UnreducedRelator(i));
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self, PresentationError> {
        let ds = self.validate();
        if ds.is_empty() {
            Ok(self)
        } else {
            Err(PresentationError::Invalid(ds))
        }
    }

    /// The |relators| x |generators| matrix of exponent sums: the
    /// abelianization data used by the Frattini-quotient check.
    pub fn exponent_matrix(&self) -> ExponentMatrix {
        let cols = self.generators.len();
        let rows = self
            .relators
            .iter()
            .map(|r| (0..cols).map(|g| r.exponent_sum(g)).collect())
            .collect();
        ExponentMatrix { rows, cols }
    }

    fn to_doc(&self) -> PresentationDoc {
        PresentationDoc {
            label: self.label.clone(),
            generators: self.generators.iter().map(|g| g.name().to_string()).collect(),
            relators: self.relators.iter().map(|r| self.word_text(r)).collect(),
        }
    }

    /// Canonical JSON document (schema: `{"label"?, "generators", "relators"}`).
    pub fn to_json(&self) -> String {
        to_canonical_json(&self.to_doc())
    }

    /// Parses the canonical JSON document and validates the result.
    pub fn from_json(json: &str) -> Result<Self, PresentationError> {
        let doc: PresentationDoc = serde_json::from_str(json).map_err(|e| {
            PresentationError::Invalid(vec![Diagnostic::InvalidName(format!("json: {e}"))])
        })?;
        doc.into_presentation()
    }
}

/// Serialized form of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl PresentationDoc {
    pub fn from_presentation(p: &Presentation) -> Self {
        p.to_doc()
    }

    pub fn into_presentation(self) -> Result<Presentation, PresentationError> {
        let p = Presentation::parse(&self.generators, &self.relators)?;
        Ok(match self.label {
            Some(l) => p.with_label(l),
            None => p,
        })
    }
}

/// Serializes any document as deterministic pretty JSON with a trailing
/// newline; this is the canonical byte form used by all file outputs.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// An integer matrix of relator exponent sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: Vec<Vec<i64>>,
    cols: usize,
}

impl ExponentMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.rows[row][col]
    }
}

/// Renames generators so that all names across `parts` become globally
/// distinct. Names that are already unique are preserved; a name appearing in
/// several parts gains the suffix `_k` with `k` the 1-based part index. In the
/// degenerate case where a suffixed name is itself taken, the suffix is
/// repeated until the name is free.
pub fn rename_disjoint(parts: &[Presentation]) -> Vec<Presentation> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for p in parts {
        for g in &p.generators {
            *count.entry(g.name()).or_insert(0) += 1;
        }
    }
    let mut taken: HashSet<String> = count
        .iter()
        .filter(|(_, c)| **c == 1)
        .map(|(n, _)| n.to_string())
        .collect();
    parts
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let generators = p
                .generators
                .iter()
                .map(|g| {
                    if count[g.name()] == 1 {
                        return g.clone();
                    }
                    let mut candidate = format!("{}_{}", g.name(), k + 1);
                    while taken.contains(&candidate) {
                        candidate = format!("{}_{}", candidate, k + 1);
                    }
                    taken.insert(candidate.clone());
                    GenSym::new(candidate).expect("suffixed name stays valid")
                })
                .collect();
            Presentation {
                generators,
                relators: p.relators.clone(),
                label: p.label.clone(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn pres(names: &[&str], relators: &[&str]) -> Presentation {
        Presentation::parse(names, relators).unwrap()
    }

    #[test]
    fn validate_clean() {
        assert!(pres(&["x"], &["x^2"]).validate().is_empty());
    }

    #[test]
    fn validate_flags_out_of_range() {
        let p = Presentation::new(
            vec![GenSym::new("x").unwrap(), GenSym::new("y").unwrap()],
            vec![Word::generator(5)],
            None,
        );
        assert_eq!(
            p.validate(),
            vec![Diagnostic::IndexOutOfRange { relator: 0, gen: 5 }]
        );
    }

    #[test]
    fn validate_flags_duplicates_and_empty() {
        let p = Presentation::new(
            vec![GenSym::new("x").unwrap(), GenSym::new("x").unwrap()],
            vec![Word::identity()],
            None,
        );
        let ds = p.validate();
        assert!(ds.contains(&Diagnostic::DuplicateName("x".to_string())));
        assert!(ds.contains(&Diagnostic::EmptyRelator(0)));
    }

    #[test]
    fn rename_disjoint_examples() {
        let a = pres(&["x"], &["x^2"]);
        let b = pres(&["y"], &["y^3"]);
        let out = rename_disjoint(&[a.clone(), b.clone()]);
        assert_eq!(out, vec![a.clone(), b]);

        let c = pres(&["x"], &["x^3"]);
        let out = rename_disjoint(&[a.clone(), c]);
        assert_eq!(out[0].generators()[0].name(), "x_1");
        assert_eq!(out[1].generators()[0].name(), "x_2");
        assert_eq!(out[0].word_text(&out[0].relators()[0]), "x_1^2");
        assert_eq!(out[1].word_text(&out[1].relators()[0]), "x_2^3");

        let out = rename_disjoint(&[a.clone(), a.clone(), a.clone()]);
        let names: Vec<_> = out.iter().map(|p| p.generators()[0].name().to_string()).collect();
        assert_eq!(names, vec!["x_1", "x_2", "x_3"]);
    }

    #[test]
    fn rename_disjoint_avoids_taken_suffixes() {
        let a = pres(&["x", "x_1"], &["x^2"]);
        let b = pres(&["x"], &["x^3"]);
        let out = rename_disjoint(&[a, b]);
        let all: Vec<_> = out
            .iter()
            .flat_map(|p| p.generators().iter().map(|g| g.name().to_string()))
            .collect();
        assert_eq!(all, vec!["x_1_1", "x_1", "x_2"]);
    }

    #[test]
    fn rename_round_trips_relator_structure() {
        let a = pres(&["x", "y"], &["x^2*y^-1", "[x,y]"]);
        let b = pres(&["x"], &["x^5"]);
        let out = rename_disjoint(&[a.clone(), b]);
        // mapping names back recovers the original relators
        for (orig, renamed) in a.relators().iter().zip(out[0].relators()) {
            assert_eq!(orig, renamed);
        }
        assert_eq!(out[0].generators()[0].name(), "x_1");
        assert_eq!(out[0].generators()[1].name(), "y");
    }

    #[test]
    fn exponent_matrix_examples() {
        let p = pres(&["x", "y"], &["x^2", "[x,y]"]);
        assert_eq!(p.exponent_matrix().rows(), &[vec![2, 0], vec![0, 0]]);

        let p = pres(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]);
        assert_eq!(
            p.exponent_matrix().rows(),
            &[vec![3, 0], vec![0, 3], vec![3, 3]]
        );

        let p = pres(&["x", "y"], &[]);
        assert_eq!(p.exponent_matrix().row_count(), 0);
        assert_eq!(p.exponent_matrix().col_count(), 2);
    }

    #[test]
    fn exponent_matrix_conjugation_invariant() {
        let p = pres(&["a", "b"], &["a^3*b^-1"]);
        let r = &p.relators()[0];
        let t = parse_word("b*a^-2", &["a", "b"]).unwrap();
        let conj = Presentation::new(p.generators().to_vec(), vec![r.conjugate(&t)], None);
        assert_eq!(p.exponent_matrix(), conj.exponent_matrix());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = pres(&["x", "y"], &["x^4", "y^3", "[y,x^-1*y*x]"]).with_label("demo");
        let json = p.to_json();
        let back = Presentation::from_json(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn json_rejects_bad_docs() {
        assert!(Presentation::from_json("{\"generators\": [\"x\"], \"relators\": [\"z\"]}").is_err());
        assert!(Presentation::from_json("{\"generators\": [\"x\", \"x\"], \"relators\": []}").is_err());
        assert!(Presentation::from_json("not json").is_err());
    }
}
