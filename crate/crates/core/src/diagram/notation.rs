//! Text notations: planar diagram codes and braid words.
//!
//! Grammar accepted by [`parse_pd`]:
//!
//! ```text
//! pd    := ["PD" [":"]] ["[" | "("] term ("," term)* ["]" | ")"]
//! term  := ("X" | "x") ("(" | "[") int "," int "," int "," int (")" | "]")
//!        | "U"
//! ```
//!
//! `U` terms are crossingless unknotted components; the string `U` on its own
//! is the 0-crossing unknot. [`parse_braid`] accepts `BR[n; w1, ..., wk]`
//! (the word may be empty, a comma may replace the semicolon, and the word may
//! be wrapped in braces).

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Raw planar diagram code: each crossing lists its four edge labels
/// counterclockwise starting from the incoming under-strand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    pub crossings: Vec<[usize; 4]>,
    pub free_loops: usize,
}

impl PdCode {
    /// Canonical text form, accepted back by [`parse_pd`].
    pub fn render(&self) -> String {
        let mut terms: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        terms.extend(std::iter::repeat_n("U".to_string(), self.free_loops));
        terms.join(",")
    }
}

pub fn parse_pd_code(text: &str) -> Result<PdCode> {
    let mut s = text.trim();
    if s.is_empty() {
        return Err(Error::MalformedNotation("empty input".into()));
    }
    if let Some(rest) = s.strip_prefix("PD") {
        s = rest.trim_start();
        s = s.strip_prefix(':').unwrap_or(s).trim();
        if let Some(inner) = strip_wrapping(s) {
            s = inner.trim();
        }
    }
    let mut code = PdCode {
        crossings: Vec::new(),
        free_loops: 0,
    };
    let mut rest = s;
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('U') {
            code.free_loops += 1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix(['X', 'x']) {
            let (labels, r) = parse_quad(r)?;
            code.crossings.push(labels);
            rest = r;
        } else {
            return Err(Error::MalformedNotation(format!(
                "expected `X(...)` or `U` at `{}`",
                preview(rest)
            )));
        }
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| {
            Error::MalformedNotation(format!("expected `,` at `{}`", preview(rest)))
        })?;
    }
    Ok(code)
}

fn strip_wrapping(s: &str) -> Option<&str> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .or_else(|| s.strip_prefix('(').and_then(|r| r.strip_suffix(')')))?;
    Some(inner)
}

fn preview(s: &str) -> String {
    s.chars().take(16).collect()
}

fn parse_quad(s: &str) -> Result<([usize; 4], &str)> {
    let s = s.trim_start();
    let close = match s.chars().next() {
        Some('(') => ')',
        Some('[') => ']',
        _ => {
            return Err(Error::MalformedNotation(format!(
                "expected `(` after `X` at `{}`",
                preview(s)
            )))
        }
    };
    let end = s.find(close).ok_or_else(|| {
        Error::MalformedNotation(format!("unclosed crossing at `{}`", preview(s)))
    })?;
    let body = &s[1..end];
    let nums: Vec<usize> = body
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::MalformedNotation(format!("bad label `{}`", t.trim())))
        })
        .collect::<Result<_>>()?;
    let quad: [usize; 4] = nums
        .try_into()
        .map_err(|_| Error::MalformedNotation(format!("crossing `{body}` needs four labels")))?;
    Ok((quad, &s[end + 1..]))
}

/// Parsed braid word. Letters are 1-based generator indices, negative for
/// inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

pub fn parse_braid_word(text: &str) -> Result<BraidWord> {
    let s = text.trim();
    let inner = s
        .strip_prefix("BR")
        .map(str::trim_start)
        .and_then(strip_wrapping)
        .ok_or_else(|| {
            Error::MalformedNotation(format!("expected `BR[n; word]`, got `{}`", preview(s)))
        })?;
    let (n_text, word) = inner.split_once([';', ',']).unwrap_or((inner, ""));
    let strands: usize = n_text
        .trim()
        .parse()
        .map_err(|_| Error::MalformedNotation(format!("bad strand count `{}`", n_text.trim())))?;
    if strands == 0 {
        return Err(Error::MalformedNotation(
            "strand count must be positive".into(),
        ));
    }
    let mut word = word.trim();
    if let Some(w) = word.strip_prefix('{').and_then(|w| w.strip_suffix('}')) {
        word = w.trim();
    }
    let letters: Vec<i64> = if word.is_empty() {
        Vec::new()
    } else {
        word.split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| {
                    Error::MalformedNotation(format!("bad braid letter `{}`", t.trim()))
                })
            })
            .collect::<Result<_>>()?
    };
    for &l in &letters {
        if l == 0 || l.unsigned_abs() as usize >= strands {
            return Err(Error::LetterOutOfRange { letter: l, strands });
        }
    }
    Ok(BraidWord { strands, letters })
}

/// PD code of the braid closure. Strands run upward; `σᵢ` is a positive
/// crossing in which the strand at position `i` passes over. Labels are
/// assigned consecutively along each component, components ordered by their
/// lowest starting position.
pub fn braid_to_pd(b: &BraidWord) -> PdCode {
    let n = b.strands;
    let mut next_edge = n;
    let mut cur: Vec<usize> = (0..n).collect();
    // per crossing: raw edges in PD slot order and the slot where each strand enters
    let mut raw: Vec<[usize; 4]> = Vec::with_capacity(b.letters.len());
    let mut enters: Vec<(usize, usize, usize)> = Vec::new(); // (edge, crossing, slot)
    for (ci, &l) in b.letters.iter().enumerate() {
        let p = l.unsigned_abs() as usize - 1;
        let (e1, e2) = (next_edge, next_edge + 1);
        next_edge += 2;
        if l > 0 {
            // under: p+1 -> p, over: p -> p+1
            raw.push([cur[p + 1], e2, e1, cur[p]]);
            enters.push((cur[p + 1], ci, 0));
            enters.push((cur[p], ci, 3));
        } else {
            // under: p -> p+1, over: p+1 -> p
            raw.push([cur[p], cur[p + 1], e2, e1]);
            enters.push((cur[p], ci, 0));
            enters.push((cur[p + 1], ci, 1));
        }
        cur[p] = e1;
        cur[p + 1] = e2;
    }
    // closure: the top edge at each position is the bottom edge there
    let mut canon: Vec<usize> = (0..next_edge).collect();
    for (p, &top) in cur.iter().enumerate() {
        canon[top] = p;
    }
    let raw: Vec<[usize; 4]> = raw.iter().map(|x| x.map(|e| canon[e])).collect();
    let entry: HashMap<usize, (usize, usize)> = enters
        .into_iter()
        .map(|(e, c, s)| (canon[e], (c, s)))
        .collect();

    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut next_label = 1;
    let mut free_loops = 0;
    for start in 0..n {
        if label.contains_key(&start) {
            continue;
        }
        if !entry.contains_key(&start) {
            free_loops += 1;
            continue;
        }
        let mut e = start;
        loop {
            label.insert(e, next_label);
            next_label += 1;
            let (c, s) = entry[&e];
            e = raw[c][(s + 2) % 4];
            if e == start {
                break;
            }
        }
    }
    PdCode {
        crossings: raw.iter().map(|x| x.map(|e| label[&e])).collect(),
        free_loops,
    }
}
