//! Numerical meridian-traceless SU(2) representations.
//!
//! A point assigns a unit quaternion to every Wirtinger generator. Its
//! residual is
//!
//! ```text
//! Σ_relations |S_b^ε S_a S_b^{−ε} − S_c|² + Σ_generators (Re S_r)² [+ |S_μ − i|²]
//! ```
//!
//! with the last term present when the distinguished meridian is pinned to
//! `i`. Points are accepted below [`ACCEPT_RESIDUAL`].
//!
//! Characters are traces over a fixed word schedule: every product `S_a S_b`
//! (`a < b`) followed by every `S_a S_b S_c` (`a < b < c`). Generator traces
//! vanish identically on this variety and even words are blind to the
//! involution `ρ ↦ j·χρ·j⁻¹` (it flips the sign of every odd-length trace),
//! so the triples are what separates a representation from its image under
//! it. Pairs and triples together determine a tuple of traceless elements up
//! to SU(2) conjugacy.

mod classify;
mod scan;
mod solve;

pub use classify::{
    dihedral_routes, involution, is_binary_dihedral, is_reducible, max_commutator_deviation,
    DihedralRoutes,
};
pub use scan::{
    scan, simplicity_verdict, Classification, Cluster, ConjugacyClassSet, ScanOptions, Verdict,
};
pub use solve::{solve_from_seed, SolveOptions};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::presentation::{Letter, WirtingerPresentation};
use crate::quaternion::Quaternion;

pub const ACCEPT_RESIDUAL: f64 = 1e-9;
pub const CLUSTER_TOLERANCE: f64 = 1e-4;
pub const EQUALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepPoint {
    pub images: Vec<Quaternion>,
    pub residual: f64,
    pub character: Vec<f64>,
    pub pinned: bool,
}

impl RepPoint {
    pub fn new(images: Vec<Quaternion>, p: &WirtingerPresentation, pinned: bool) -> Self {
        let residual = residual(&images, p, pinned);
        let character = character(&images);
        RepPoint {
            images,
            residual,
            character,
            pinned,
        }
    }

    pub fn is_accepted(&self) -> bool {
        self.residual < ACCEPT_RESIDUAL
    }

    pub fn eval(&self, w: &[Letter]) -> Quaternion {
        eval_word(&self.images, w)
    }

    /// Conjugates every image by `g`.
    pub fn conjugated(&self, g: Quaternion, p: &WirtingerPresentation) -> RepPoint {
        let images = self.images.iter().map(|&q| g * q * g.inv()).collect();
        RepPoint::new(images, p, self.pinned)
    }

    pub fn max_unit_defect(&self) -> f64 {
        self.images
            .iter()
            .map(|q| (q.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn eval_word(images: &[Quaternion], w: &[Letter]) -> Quaternion {
    w.iter().fold(Quaternion::ONE, |acc, l| {
        acc * images[l.generator].powi(l.exponent as i32)
    })
}

/// Words whose traces make up the character vector.
pub fn character_schedule(n_generators: usize) -> Vec<Vec<usize>> {
    let s = n_generators;
    let mut out = Vec::new();
    for a in 0..s {
        for b in a + 1..s {
            out.push(vec![a, b]);
        }
    }
    for a in 0..s {
        for b in a + 1..s {
            for c in b + 1..s {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

pub fn character(images: &[Quaternion]) -> Vec<f64> {
    character_schedule(images.len())
        .iter()
        .map(|w| 2.0 * w.iter().fold(Quaternion::ONE, |acc, &g| acc * images[g]).w)
        .collect()
}

/// Max-abs distance between character vectors.
pub fn character_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn residual_vector(images: &[Quaternion], p: &WirtingerPresentation, pinned: bool) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * p.relations.len() + images.len() + 4);
    for r in &p.relations {
        let d = eval_word(images, &r.conjugate_word()) - images[r.output];
        out.extend(d.to_array());
    }
    out.extend(images.iter().map(|q| q.w));
    if pinned {
        out.extend((images[p.distinguished_meridian] - Quaternion::I).to_array());
    }
    out
}

pub fn residual(images: &[Quaternion], p: &WirtingerPresentation, pinned: bool) -> f64 {
    residual_vector(images, p, pinned)
        .iter()
        .map(|x| x * x)
        .sum()
}

const BASIS: [Quaternion; 3] = [Quaternion::I, Quaternion::J, Quaternion::K];

/// Derivatives of a word's value under `S_g ↦ S_g·exp(v)`: entry `(g, e)` is
/// `∂/∂v_e` at `v = 0`.
fn word_derivatives(images: &[Quaternion], w: &[Letter]) -> Vec<(usize, [Quaternion; 3])> {
    let factors: Vec<Quaternion> = w
        .iter()
        .map(|l| images[l.generator].powi(l.exponent as i32))
        .collect();
    let n = factors.len();
    let mut suffix = vec![Quaternion::ONE; n + 1];
    for p in (0..n).rev() {
        suffix[p] = factors[p] * suffix[p + 1];
    }
    let mut prefix = Quaternion::ONE;
    let mut out = Vec::with_capacity(n);
    for (p, l) in w.iter().enumerate() {
        let q = images[l.generator];
        let d = BASIS.map(|e| {
            let dx = if l.exponent > 0 {
                q * e
            } else {
                -(e * q.inv())
            };
            prefix * dx * suffix[p + 1]
        });
        out.push((l.generator, d));
        prefix = prefix * factors[p];
    }
    out
}

/// Jacobian of [`residual_vector`] in the tangent coordinates
/// `S_g ↦ S_g·exp(v_g)`, `v_g ∈ ℝ³`.
pub fn jacobian(images: &[Quaternion], p: &WirtingerPresentation, pinned: bool) -> DMatrix<f64> {
    let s = images.len();
    let rows = 4 * p.relations.len() + s + if pinned { 4 } else { 0 };
    let mut j = DMatrix::zeros(rows, 3 * s);
    for (ri, r) in p.relations.iter().enumerate() {
        for (g, d) in word_derivatives(images, &r.conjugate_word()) {
            for (e, q) in d.iter().enumerate() {
                for (k, v) in q.to_array().iter().enumerate() {
                    j[(4 * ri + k, 3 * g + e)] += v;
                }
            }
        }
        let out = images[r.output];
        for (e, b) in BASIS.iter().enumerate() {
            for (k, v) in (out * *b).to_array().iter().enumerate() {
                j[(4 * ri + k, 3 * r.output + e)] -= v;
            }
        }
    }
    let base = 4 * p.relations.len();
    for (g, q) in images.iter().enumerate() {
        for (e, b) in BASIS.iter().enumerate() {
            j[(base + g, 3 * g + e)] = (*q * *b).w;
        }
    }
    if pinned {
        let base = base + s;
        let g = p.distinguished_meridian;
        for (e, b) in BASIS.iter().enumerate() {
            for (k, v) in (images[g] * *b).to_array().iter().enumerate() {
                j[(base + k, 3 * g + e)] = *v;
            }
        }
    }
    j
}

/// Singular values in decreasing order.
pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerical rank with relative threshold, plus the gap between the smallest
/// retained and the largest discarded singular value (infinite when nothing
/// or everything is discarded).
pub(crate) fn numerical_rank(sv: &[f64], relative: f64) -> (usize, f64) {
    let Some(&top) = sv.first() else {
        return (0, f64::INFINITY);
    };
    if top == 0.0 {
        return (0, f64::INFINITY);
    }
    let rank = sv.iter().take_while(|&&x| x > relative * top).count();
    let gap = if rank == 0 || rank == sv.len() {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank].max(f64::MIN_POSITIVE)
    };
    (rank, gap)
}
