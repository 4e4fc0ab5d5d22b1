//! Oriented link diagrams.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * A PD crossing `X(a,b,c,d)` lists its edge labels counterclockwise,
//!   starting from the incoming under-strand `a`; `c` is the outgoing
//!   under-strand and `{b, d}` the over-strand.
//! * Orientation of each component is read off its under-crossings (`a → c`).
//!   A component that never passes under is oriented so that labels increase.
//! * Sign: the crossing is positive iff the over-strand runs `d → b`
//!   (equivalently `b = d + 1` for consecutively labelled components). This is
//!   the usual KnotTheory/KnotInfo rule, under which the braid generator `σᵢ`
//!   is positive and `X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)` is the negative
//!   (left-handed) trefoil.
//! * Arcs are maximal over-strands; arcs are numbered by `(component, lowest
//!   edge label on the arc)`, components by their lowest edge label, with
//!   crossingless `U` components last.

mod goeritz;
mod notation;

pub use goeritz::{goeritz, goeritz_pieces, GoeritzData};
pub use notation::{braid_to_pd, parse_braid_word, parse_pd_code, BraidWord, PdCode};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    /// `+1` or `−1`.
    pub sign: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: usize,
    pub component: usize,
}

/// A corner of a crossing: the sector between slot `k` and slot `k + 1`
/// (counterclockwise).
pub type Corner = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Arc>,
    pub n_components: usize,
    pub source_notation: String,
    pd: PdCode,
    /// For each crossing, whether the over-strand enters at slot 3 (`d → b`).
    over_enters_at_d: Vec<bool>,
    /// Faces as cycles of corners; empty when there are no crossings.
    faces: Vec<Vec<Corner>>,
    /// Connected pieces: sets of crossing indices, then one entry per free loop.
    pieces: Vec<Vec<usize>>,
    free_loops: usize,
}

pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let code = parse_pd_code(text)?;
    LinkDiagram::from_pd(code, text.trim())
}

pub fn parse_braid(text: &str) -> Result<LinkDiagram> {
    let word = parse_braid_word(text)?;
    LinkDiagram::from_pd(braid_to_pd(&word), text.trim())
}

/// Dispatches on the leading token: `BR` selects the braid grammar, anything
/// else the PD grammar.
pub fn parse_notation(text: &str) -> Result<LinkDiagram> {
    if text.trim_start().starts_with("BR") {
        parse_braid(text)
    } else {
        parse_pd(text)
    }
}

impl LinkDiagram {
    pub fn from_pd(code: PdCode, source: &str) -> Result<Self> {
        let n = code.crossings.len();
        if n == 0 && code.free_loops == 0 {
            return Err(Error::MalformedNotation("diagram has no components".into()));
        }
        // every label 1..=2n exactly twice
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 2 * n + 1];
        for (ci, x) in code.crossings.iter().enumerate() {
            for (slot, &l) in x.iter().enumerate() {
                if l == 0 || l > 2 * n {
                    return Err(Error::NonPlanarOrInconsistent(format!(
                        "label {l} outside 1..={}",
                        2 * n
                    )));
                }
                occurrences[l].push((ci, slot));
            }
        }
        if let Some(l) = (1..=2 * n).find(|&l| occurrences[l].len() != 2) {
            return Err(Error::NonPlanarOrInconsistent(format!(
                "label {l} appears {} times",
                occurrences[l].len()
            )));
        }
        let other_end = |l: usize, at: (usize, usize)| -> (usize, usize) {
            let o = &occurrences[l];
            if o[0] == at {
                o[1]
            } else {
                o[0]
            }
        };

        // Trace strand cycles. A step enters crossing `c` through `slot`.
        let mut component_of_label = vec![usize::MAX; 2 * n + 1];
        let mut over_enters_at_d = vec![false; n];
        let mut cycles: Vec<Vec<(usize, usize, usize)>> = Vec::new(); // (label, crossing, entry slot)
        for start in 1..=2 * n {
            if component_of_label[start] != usize::MAX {
                continue;
            }
            let mut steps = Vec::new();
            let mut label = start;
            let mut head = occurrences[start][1];
            loop {
                component_of_label[label] = cycles.len();
                steps.push((label, head.0, head.1));
                let exit = (head.0, (head.1 + 2) % 4);
                label = code.crossings[exit.0][exit.1];
                head = other_end(label, exit);
                if label == start {
                    break;
                }
            }
            // orientation from the under passages
            let forward = steps.iter().filter(|s| s.2 == 0).count();
            let backward = steps.iter().filter(|s| s.2 == 2).count();
            if forward > 0 && backward > 0 {
                return Err(Error::NonPlanarOrInconsistent(format!(
                    "under-strands of the component through label {start} disagree on orientation"
                )));
            }
            let reverse = if forward + backward > 0 {
                backward > 0
            } else {
                let incr = |a: usize, b: usize| b == a + 1;
                let len = steps.len();
                let up = (0..len)
                    .filter(|&i| incr(steps[i].0, steps[(i + 1) % len].0))
                    .count();
                let down = (0..len)
                    .filter(|&i| incr(steps[(i + 1) % len].0, steps[i].0))
                    .count();
                down > up
            };
            if reverse {
                // walk the same cycle the other way: each label now enters
                // the crossing it previously left
                let len = steps.len();
                let rev: Vec<(usize, usize, usize)> = (0..len)
                    .rev()
                    .map(|i| {
                        let p = (i + len - 1) % len;
                        (steps[i].0, steps[p].1, (steps[p].2 + 2) % 4)
                    })
                    .collect();
                steps = rev;
            }
            cycles.push(steps);
        }
        for steps in &cycles {
            for &(_, c, slot) in steps {
                match slot {
                    1 => over_enters_at_d[c] = false,
                    3 => over_enters_at_d[c] = true,
                    _ => {}
                }
            }
        }

        // components ordered by lowest label
        let mut order: Vec<usize> = (0..cycles.len()).collect();
        order.sort_by_key(|&i| cycles[i].iter().map(|s| s.0).min());
        let mut rank = vec![0; cycles.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }

        // arcs: a new arc starts on the label leaving an under passage
        let mut arc_of_label = vec![usize::MAX; 2 * n + 1];
        let mut raw_arcs: Vec<(usize, usize)> = Vec::new(); // (component, min label)
        for (ci, steps) in cycles.iter().enumerate() {
            let len = steps.len();
            let start = (0..len)
                .find(|&i| steps[(i + len - 1) % len].2 % 2 == 0)
                .unwrap_or(0);
            let mut current = usize::MAX;
            for k in 0..len {
                let i = (start + k) % len;
                let prev_slot = steps[(i + len - 1) % len].2;
                if current == usize::MAX || prev_slot % 2 == 0 {
                    current = raw_arcs.len();
                    raw_arcs.push((rank[ci], steps[i].0));
                }
                arc_of_label[steps[i].0] = current;
                raw_arcs[current].1 = raw_arcs[current].1.min(steps[i].0);
            }
        }
        let mut arc_order: Vec<usize> = (0..raw_arcs.len()).collect();
        arc_order.sort_by_key(|&a| raw_arcs[a]);
        let mut arc_id = vec![0; raw_arcs.len()];
        for (id, &a) in arc_order.iter().enumerate() {
            arc_id[a] = id;
        }
        let mut arcs: Vec<Arc> = arc_order
            .iter()
            .enumerate()
            .map(|(id, &a)| Arc {
                id,
                component: raw_arcs[a].0,
            })
            .collect();
        let n_linked = cycles.len();
        for f in 0..code.free_loops {
            arcs.push(Arc {
                id: arcs.len(),
                component: n_linked + f,
            });
        }

        let crossings: Vec<Crossing> = code
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, x)| Crossing {
                over: arc_id[arc_of_label[x[1]]],
                under_in: arc_id[arc_of_label[x[0]]],
                under_out: arc_id[arc_of_label[x[2]]],
                sign: if over_enters_at_d[ci] { 1 } else { -1 },
            })
            .collect();

        let faces = trace_faces(&code, &occurrences);
        let pieces = crossing_pieces(&code, &occurrences);
        // Euler characteristic of each piece on the sphere: V − E + F = 2
        for piece in &pieces {
            let v = piece.len();
            let f = faces
                .iter()
                .filter(|face| piece.contains(&face[0].0))
                .count();
            if v + f != 2 * v + 2 {
                return Err(Error::NonPlanarOrInconsistent(format!(
                    "piece with {v} crossings has {f} faces; not a planar diagram"
                )));
            }
        }

        Ok(LinkDiagram {
            crossings,
            arcs,
            n_components: n_linked + code.free_loops,
            source_notation: source.to_string(),
            free_loops: code.free_loops,
            pd: code,
            over_enters_at_d,
            faces,
            pieces,
        })
    }

    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    /// Canonical PD rendering.
    pub fn render(&self) -> String {
        if self.pd.crossings.is_empty() && self.pd.free_loops == 1 {
            return "U".into();
        }
        self.pd.render()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_knot(&self) -> bool {
        self.n_components == 1
    }

    pub fn component_of_arc(&self, arc: usize) -> usize {
        self.arcs[arc].component
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Number of connected pieces, counting each crossingless loop.
    pub fn n_pieces(&self) -> usize {
        self.pieces.len() + self.free_loops
    }

    pub fn is_split_diagram(&self) -> bool {
        self.n_pieces() > 1
    }

    pub(crate) fn crossing_pieces(&self) -> &[Vec<usize>] {
        &self.pieces
    }

    pub(crate) fn faces(&self) -> &[Vec<Corner>] {
        &self.faces
    }

    pub(crate) fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Whether the over-strand of crossing `c` enters through PD slot 3.
    pub(crate) fn over_enters_at_d(&self, c: usize) -> bool {
        self.over_enters_at_d[c]
    }

    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64> {
        for c in [c1, c2] {
            if c >= self.n_components {
                return Err(Error::UnknownComponent(c));
            }
        }
        if c1 == c2 {
            return Err(Error::UnknownComponent(c2));
        }
        let twice: i64 = self
            .crossings
            .iter()
            .filter(|x| {
                let a = self.component_of_arc(x.over);
                let b = self.component_of_arc(x.under_in);
                (a, b) == (c1, c2) || (a, b) == (c2, c1)
            })
            .map(|x| x.sign as i64)
            .sum();
        debug_assert_eq!(twice % 2, 0);
        Ok(twice / 2)
    }

    /// Arcs of each component, in arc-id order.
    pub fn component_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_components];
        for a in &self.arcs {
            out[a.component].push(a.id);
        }
        out
    }

    /// Counts of crossings by (over component, under component).
    pub fn crossing_table(&self) -> BTreeMap<(usize, usize), usize> {
        let mut t = BTreeMap::new();
        for x in &self.crossings {
            *t.entry((
                self.component_of_arc(x.over),
                self.component_of_arc(x.under_in),
            ))
            .or_insert(0) += 1;
        }
        t
    }

    /// The mirror diagram: every crossing switched.
    pub fn mirror(&self) -> Result<LinkDiagram> {
        // rotate each crossing so the old over-strand becomes the under-strand
        let crossings = self
            .pd
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, x)| {
                if self.over_enters_at_d[ci] {
                    [x[3], x[0], x[1], x[2]]
                } else {
                    [x[1], x[2], x[3], x[0]]
                }
            })
            .collect();
        let code = PdCode {
            crossings,
            free_loops: self.pd.free_loops,
        };
        LinkDiagram::from_pd(code, &format!("mirror({})", self.source_notation))
    }
}

fn trace_faces(code: &PdCode, occurrences: &[Vec<(usize, usize)>]) -> Vec<Vec<Corner>> {
    let n = code.crossings.len();
    let mut seen = vec![[false; 4]; n];
    let mut faces = Vec::new();
    for c in 0..n {
        for k in 0..4 {
            if seen[c][k] {
                continue;
            }
            let mut face = Vec::new();
            let (mut x, mut s) = (c, k);
            while !seen[x][s] {
                seen[x][s] = true;
                face.push((x, s));
                let slot = (s + 1) % 4;
                let label = code.crossings[x][slot];
                let o = &occurrences[label];
                let (y, m) = if o[0] == (x, slot) { o[1] } else { o[0] };
                (x, s) = (y, m);
            }
            faces.push(face);
        }
    }
    faces
}

fn crossing_pieces(code: &PdCode, occurrences: &[Vec<(usize, usize)>]) -> Vec<Vec<usize>> {
    let n = code.crossings.len();
    let mut piece = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if piece[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        piece[s] = id;
        let mut stack = vec![s];
        while let Some(c) = stack.pop() {
            for &l in &code.crossings[c] {
                for &(y, _) in &occurrences[l] {
                    if piece[y] == usize::MAX {
                        piece[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}
