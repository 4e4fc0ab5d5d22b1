//! The branched double cover `Σ₂(L)`.
//!
//! `π₁` of the unbranched double cover is the kernel of the map sending every
//! meridian to the generator of `ℤ/2`. With Schreier transversal `{1, μ}`
//! (μ the distinguished meridian) it is generated by
//!
//! ```text
//! μ²,   μ·S_r,   S_r·μ⁻¹      (r ≠ μ)
//! ```
//!
//! and `π₁(Σ₂)` is its quotient by the squares of meridians. A meridian-
//! traceless `ρ` has `ρ(S_r)² = −1`, so `Ad ∘ ρ` restricted to even words kills
//! those squares and descends to `B(ρ): π₁(Σ₂) → SO(3)`.

use nalgebra::Matrix3;
use serde::Serialize;

use crate::diagram::{goeritz_pieces, LinkDiagram};
use crate::error::{Error, Result};
use crate::presentation::{determinant, wirtinger, Letter, WirtingerPresentation, Word};
use crate::variety::{eval_word, RepPoint};

/// Allowed deviation of a filling relator's image from the identity.
pub const FILLING_TOLERANCE: f64 = 1e-6;
/// Commutators closer than this to the identity count as trivial.
pub const ABELIAN_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Sigma2 {
    /// `|H₁(Σ₂)|`; 0 when infinite.
    pub order: u128,
    /// `dim H₁(Σ₂; 𝔽₂)`.
    pub mod2_rank: usize,
}

/// Order from the determinant; mod 2 rank from the Goeritz matrices, which
/// present `H₁` of each split piece's cover (the covers are joined by a
/// connected sum with one `S¹ × S²` per extra piece). The rank must equal
/// `ℓ − 1` and `2^{rank}` must divide a nonzero order.
pub fn h1_sigma2(d: &LinkDiagram) -> Result<H1Sigma2> {
    let p = wirtinger(d);
    let order = determinant(d, &p)?;
    let pieces = goeritz_pieces(d)?;
    let corank: usize = pieces
        .iter()
        .map(|g| g.matrix.rows() - g.matrix.rank_mod2())
        .sum();
    let mod2_rank = corank + pieces.len() - 1;
    if mod2_rank != d.n_components - 1 {
        return Err(Error::OracleMismatch(format!(
            "mod 2 rank {mod2_rank} but {} components",
            d.n_components
        )));
    }
    if order != 0 && order % (1u128 << mod2_rank.min(127)) != 0 {
        return Err(Error::OracleMismatch(format!(
            "2^{mod2_rank} does not divide det {order}"
        )));
    }
    Ok(H1Sigma2 { order, mod2_rank })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenWords {
    /// Schreier generators of the index-2 subgroup.
    pub generators: Vec<Word>,
    /// `(component, S_m²)` with `S_m` the component's first meridian.
    pub filling: Vec<(usize, Word)>,
}

pub fn even_subgroup_generators(p: &WirtingerPresentation) -> EvenWords {
    let mu = p.distinguished_meridian;
    let mut generators = vec![vec![Letter::new(mu, 1), Letter::new(mu, 1)]];
    for r in (0..p.n_generators()).filter(|&r| r != mu) {
        generators.push(vec![Letter::new(mu, 1), Letter::new(r, 1)]);
        generators.push(vec![Letter::new(r, 1), Letter::new(mu, -1)]);
    }
    let filling = p
        .component_meridians()
        .into_iter()
        .enumerate()
        .map(|(c, m)| (c, vec![Letter::new(m, 1), Letter::new(m, 1)]))
        .collect();
    EvenWords {
        generators,
        filling,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SO3Rep {
    pub generator_words: Vec<Word>,
    /// Row-major rotation matrices, one per generator word.
    pub images: Vec<[[f64; 3]; 3]>,
}

fn polar(m: Matrix3<f64>) -> Matrix3<f64> {
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let r = u * v_t;
    if r.determinant() < 0.0 {
        let mut u = u;
        u.column_mut(2).neg_mut();
        u * v_t
    } else {
        r
    }
}

fn ad_matrix(q: crate::quaternion::Quaternion) -> Matrix3<f64> {
    let a = q.normalize().adjoint();
    polar(Matrix3::from_fn(|i, j| a[i][j]))
}

/// `B(ρ)`: `Ad ∘ ρ` on the even generators. Fails when a filling relator is
/// not sent to the identity, which means `ρ` is not meridian-traceless.
pub fn b_map(r: &RepPoint, p: &WirtingerPresentation, det: u128) -> Result<SO3Rep> {
    if det == 0 {
        return Err(Error::HypothesisViolation(
            "determinant is zero; the image of B need not be finite".into(),
        ));
    }
    let words = even_subgroup_generators(p);
    for (component, w) in &words.filling {
        let m = ad_matrix(eval_word(&r.images, w));
        let deviation = (m - Matrix3::identity()).norm();
        if deviation > FILLING_TOLERANCE {
            return Err(Error::FillingNotKilled {
                component: *component,
                deviation,
            });
        }
    }
    let images = words
        .generators
        .iter()
        .map(|w| {
            let m = ad_matrix(eval_word(&r.images, w));
            [0, 1, 2].map(|i| [0, 1, 2].map(|j| m[(i, j)]))
        })
        .collect();
    Ok(SO3Rep {
        generator_words: words.generators,
        images,
    })
}

/// Largest Frobenius distance from the identity over pairwise commutators.
pub fn max_commutator_deviation_so3(s: &SO3Rep) -> f64 {
    let ms: Vec<Matrix3<f64>> = s
        .images
        .iter()
        .map(|a| Matrix3::from_fn(|i, j| a[i][j]))
        .collect();
    let mut worst: f64 = 0.0;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            let c = a * b * a.transpose() * b.transpose();
            worst = worst.max((c - Matrix3::identity()).norm());
        }
    }
    worst
}

pub fn is_abelian_so3(s: &SO3Rep) -> bool {
    max_commutator_deviation_so3(s) < ABELIAN_TOLERANCE
}
