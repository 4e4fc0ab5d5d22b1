//! Corpus files: one `name ; notation` record per line, `#` comments.

use std::path::Path;

use crate::diagram::{parse_notation, LinkDiagram};
use crate::error::Error;

/// The bundled corpus.
pub const DEFAULT_CORPUS: &str = include_str!("../data/corpus.txt");

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub notation: String,
    pub diagram: LinkDiagram,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Corpus {
    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Parses corpus text, continuing past bad lines.
pub fn parse_corpus(text: &str) -> Corpus {
    let mut out = Corpus::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, notation)) = line.split_once(';') else {
            out.diagnostics.push(Diagnostic {
                line: i + 1,
                message: "expected `name ; notation`".into(),
            });
            continue;
        };
        let (name, notation) = (name.trim(), notation.trim());
        match parse_notation(notation) {
            Ok(mut diagram) => {
                diagram.source_notation = notation.to_string();
                out.entries.push(CorpusEntry {
                    name: name.to_string(),
                    notation: notation.to_string(),
                    diagram,
                })
            }
            Err(e) => out.diagnostics.push(Diagnostic {
                line: i + 1,
                message: format!("{name}: {e}"),
            }),
        }
    }
    out
}

pub fn load_corpus(path: &Path) -> std::io::Result<Corpus> {
    Ok(parse_corpus(&std::fs::read_to_string(path)?))
}

pub fn default_corpus() -> Corpus {
    parse_corpus(DEFAULT_CORPUS)
}

impl From<Error> for Diagnostic {
    fn from(e: Error) -> Self {
        Diagnostic {
            line: 0,
            message: e.to_string(),
        }
    }
}
