//! Wirtinger presentations and Fox calculus.
//!
//! Generators are the arcs of the diagram. At a crossing with over-arc `b`,
//! incoming under-arc `a`, outgoing under-arc `c` and sign `ε`, the relation is
//! `S_b^ε S_a S_b^{−ε} = S_c`; its relator word is `S_b^ε S_a S_b^{−ε} S_c^{−1}`.
//! The same word walk drives the Alexander matrix here, the relation defects
//! of the variety solver, and the cocycle equations of the cohomology module.

mod invariants;
mod laurent;

pub use invariants::{
    congruence_checks, determinant, invariants, signature, CongruenceChecks, InvariantReport,
};
pub use laurent::{laurent_determinant, LaurentPolynomial};

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `−1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        Self {
            generator,
            exponent,
        }
    }
}

pub type Word = Vec<Letter>;

/// `S_over^ε S_input S_over^{−ε} = S_output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub over: usize,
    pub epsilon: i8,
    pub input: usize,
    pub output: usize,
}

impl Relation {
    /// Left-hand side `S_over^ε S_input S_over^{−ε}`.
    pub fn conjugate_word(&self) -> Word {
        vec![
            Letter::new(self.over, self.epsilon),
            Letter::new(self.input, 1),
            Letter::new(self.over, -self.epsilon),
        ]
    }

    pub fn relator(&self) -> Word {
        let mut w = self.conjugate_word();
        w.push(Letter::new(self.output, -1));
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WirtingerPresentation {
    /// Component of each generator.
    pub generators: Vec<usize>,
    pub relations: Vec<Relation>,
    pub distinguished_meridian: usize,
    pub n_components: usize,
}

pub fn wirtinger(d: &LinkDiagram) -> WirtingerPresentation {
    let relations = d
        .crossings
        .iter()
        .map(|x| Relation {
            over: x.over,
            epsilon: x.sign,
            input: x.under_in,
            output: x.under_out,
        })
        .collect();
    let generators: Vec<usize> = d.arcs.iter().map(|a| a.component).collect();
    let distinguished_meridian = generators
        .iter()
        .position(|&c| c == 0)
        .expect("component 0 has an arc");
    WirtingerPresentation {
        generators,
        relations,
        distinguished_meridian,
        n_components: d.n_components,
    }
}

impl WirtingerPresentation {
    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    /// One generator per component: the lowest-numbered arc.
    pub fn component_meridians(&self) -> Vec<usize> {
        (0..self.n_components)
            .map(|c| self.generators.iter().position(|&g| g == c).unwrap())
            .collect()
    }

    /// Rank of the abelianization, computed from the relation matrix over ℤ.
    pub fn abelianization_rank(&self) -> Result<usize> {
        let s = self.n_generators();
        let mut m = crate::intmat::IntMatrix::zeros(self.relations.len(), s);
        for (i, r) in self.relations.iter().enumerate() {
            m[(i, r.input)] += 1;
            m[(i, r.output)] -= 1;
        }
        Ok(s - m.smith()?.rank())
    }
}

/// Abelianized Fox derivative `∂w/∂S_g` with every generator sent to `t`.
pub fn fox_derivative(w: &[Letter], g: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    let mut prefix = 0i64;
    for l in w {
        if l.generator == g {
            let term = if l.exponent > 0 {
                LaurentPolynomial::monomial(1, prefix)
            } else {
                LaurentPolynomial::monomial(-1, prefix - 1)
            };
            out = out.add(&term).expect("small coefficients");
        }
        prefix += l.exponent as i64;
    }
    out
}

/// Full Fox matrix: one row per relation, one column per generator.
pub fn fox_matrix(p: &WirtingerPresentation) -> Vec<Vec<LaurentPolynomial>> {
    p.relations
        .iter()
        .map(|r| {
            let w = r.relator();
            (0..p.n_generators())
                .map(|g| fox_derivative(&w, g))
                .collect()
        })
        .collect()
}

/// Working Alexander matrix: the Fox matrix with the distinguished meridian's
/// column deleted and, when there are more rows than columns, trailing rows
/// dropped (they are consequences of the others for a connected diagram).
/// `None` when too few relations remain for a square matrix.
pub fn alexander_matrix(p: &WirtingerPresentation) -> Option<Vec<Vec<LaurentPolynomial>>> {
    let s = p.n_generators();
    let full = fox_matrix(p);
    if full.len() + 1 < s {
        return None;
    }
    Some(
        full.into_iter()
            .take(s - 1)
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|&(g, _)| g != p.distinguished_meridian)
                    .map(|(_, e)| e)
                    .collect()
            })
            .collect(),
    )
}

/// One-variable Alexander polynomial, normalized. Zero for split diagrams.
pub fn alexander_polynomial(p: &WirtingerPresentation) -> Result<LaurentPolynomial> {
    match alexander_matrix(p) {
        None => Ok(LaurentPolynomial::zero()),
        Some(m) => Ok(laurent_determinant(&m)?.normalized()),
    }
}

/// The crossing congruence matrix `m_a − 2m_b + m_c`: the full Fox matrix at
/// `t = −1`, negated.
pub fn coloring_matrix(p: &WirtingerPresentation) -> crate::intmat::IntMatrix {
    let full = fox_matrix(p);
    let mut m = crate::intmat::IntMatrix::zeros(full.len(), p.n_generators());
    for (i, row) in full.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = -e.eval_at_minus_one();
        }
    }
    m
}
