//! Presentation files and export formats.
//!
//! The canonical on-disk form is the presentation JSON document with an
//! optional `wreath_meta` key carrying construction metadata. Exports to GAP
//! input syntax and to a human-diffable text form are one-way.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::{BuildError, WreathMeta, WreathMetaDoc};
use crate::presentation::{to_canonical_json, Presentation, PresentationDoc, PresentationError};
use crate::words::Word;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Meta(#[from] BuildError),
}

/// The complete presentation file schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wreath_meta: Option<WreathMetaDoc>,
}

/// Canonical JSON bytes for a presentation with optional metadata.
pub fn encode(p: &Presentation, meta: Option<&WreathMeta>) -> String {
    let doc = PresentationDoc::from_presentation(p);
    let file = PresentationFile {
        label: doc.label,
        generators: doc.generators,
        relators: doc.relators,
        wreath_meta: meta.map(|m| m.to_doc(p)),
    };
    to_canonical_json(&file)
}

/// Parses and validates a presentation file.
pub fn decode(json: &str) -> Result<(Presentation, Option<WreathMeta>), FileError> {
    let file: PresentationFile = serde_json::from_str(json)?;
    let doc = PresentationDoc {
        label: file.label,
        generators: file.generators,
        relators: file.relators,
    };
    let p = doc.into_presentation()?;
    let meta = match &file.wreath_meta {
        Some(m) => Some(WreathMeta::from_doc(m, &p)?),
        None => None,
    };
    Ok((p, meta))
}

pub fn load(path: &Path) -> Result<(Presentation, Option<WreathMeta>), FileError> {
    let json = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode(&json)
}

pub fn save(path: &Path, p: &Presentation, meta: Option<&WreathMeta>) -> Result<(), FileError> {
    std::fs::write(path, encode(p, meta)).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn word_to_gap(w: &Word) -> String {
    let mut parts = Vec::with_capacity(w.syllables().len());
    for s in w.syllables() {
        if s.exp == 1 {
            parts.push(format!("F.{}", s.gen + 1));
        } else {
            parts.push(format!("F.{}^{}", s.gen + 1, s.exp));
        }
    }
    parts.join("*")
}

/// GAP input: a free group on the generator names, the relator list in
/// `F.i` notation, and the finitely presented quotient. Feeding the output
/// to GAP needs no glue code.
pub fn to_gap(p: &Presentation) -> String {
    let mut out = String::new();
    if p.gen_count() == 0 {
        out.push_str("F := FreeGroup(0);;\n");
    } else {
        let names: Vec<String> = p
            .generators()
            .iter()
            .map(|g| format!("\"{}\"", g.name()))
            .collect();
        let _ = writeln!(out, "F := FreeGroup({});;", names.join(", "));
    }
    let rels: Vec<String> = p.relators().iter().map(word_to_gap).collect();
    if rels.is_empty() {
        out.push_str("rels := [ ];;\n");
    } else {
        let _ = writeln!(out, "rels := [ {} ];;", rels.join(", "));
    }
    out.push_str("G := F / rels;;\n");
    out
}

/// Angle-bracket text form, one relator per line, for human diffing.
pub fn to_text(p: &Presentation) -> String {
    let mut out = String::new();
    if let Some(label) = p.label() {
        let _ = writeln!(out, "# {label}");
    }
    let names: Vec<&str> = p.generators().iter().map(|g| g.name()).collect();
    let _ = writeln!(out, "⟨ {} |", names.join(", "));
    for (i, r) in p.relators().iter().enumerate() {
        let sep = if i + 1 == p.relators().len() { "" } else { "," };
        let _ = writeln!(out, "  {}{}", p.word_text(r), sep);
    }
    out.push_str("⟩\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cyclic_wreath_presentation;

    #[test]
    fn file_round_trip_with_meta_is_bit_exact() {
        let (p, meta) = cyclic_wreath_presentation(2, 3).unwrap();
        let json = encode(&p, Some(&meta));
        let (p2, meta2) = decode(&json).unwrap();
        assert_eq!(p2, p);
        assert_eq!(meta2.as_ref(), Some(&meta));
        assert_eq!(encode(&p2, meta2.as_ref()), json);
    }

    #[test]
    fn decode_without_meta() {
        let json = r#"{"generators": ["x"], "relators": ["x^3"]}"#;
        let (p, meta) = decode(json).unwrap();
        assert_eq!(p.gen_count(), 1);
        assert!(meta.is_none());
    }

    #[test]
    fn gap_export_shape() {
        let (p, _) = cyclic_wreath_presentation(2, 2).unwrap();
        let gap = to_gap(&p);
        assert_eq!(
            gap,
            "F := FreeGroup(\"x\", \"y\");;\n\
             rels := [ F.1^2, F.2^2, F.2^-1*F.1^-1*F.2^-1*F.1*F.2*F.1^-1*F.2*F.1 ];;\n\
             G := F / rels;;\n"
        );
    }

    #[test]
    fn text_export_shape() {
        let (p, _) = cyclic_wreath_presentation(2, 2).unwrap();
        let text = to_text(&p.with_label("demo"));
        assert_eq!(
            text,
            "# demo\n⟨ x, y |\n  x^2,\n  y^2,\n  y^-1*x^-1*y^-1*x*y*x^-1*y*x\n⟩\n"
        );
    }
}
