use serde::Serialize;

use super::{character_distance, RepPoint, EQUALITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::presentation::WirtingerPresentation;
use crate::quaternion::{cross3, dot3, norm3, Quaternion};

pub fn max_commutator_deviation(images: &[Quaternion]) -> f64 {
    let mut worst: f64 = 0.0;
    for (a, &qa) in images.iter().enumerate() {
        for &qb in &images[a + 1..] {
            let c = qa * qb * qa.inv() * qb.inv();
            worst = worst.max(c.distance(Quaternion::ONE));
        }
    }
    worst
}

/// Reducible (equivalently abelian, in SU(2)) when every pair of images
/// commutes to within the equality tolerance.
pub fn is_reducible(r: &RepPoint) -> bool {
    max_commutator_deviation(&r.images) < EQUALITY_TOLERANCE
}

/// `ρ'(S_r) = j·(−ρ(S_r))·j⁻¹`, the twist by the character sending every
/// meridian to `−1` followed by conjugation by `j`. It fixes the pin:
/// `j(−i)j⁻¹ = i`.
pub fn involution(r: &RepPoint, p: &WirtingerPresentation) -> RepPoint {
    let j = Quaternion::J;
    let images = r.images.iter().map(|&q| j * (-q) * j.inv()).collect();
    RepPoint::new(images, p, r.pinned)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DihedralRoutes {
    /// An explicit axis puts every image in `N ∪ Nj` of the binary dihedral
    /// group it determines.
    pub frame: bool,
    /// `ρ` and `ρ'` have equal characters. Knots only: for links the twist
    /// by `χ` is not conjugation when a component lands in `N`.
    pub involution: Option<bool>,
}

/// Whether every image lies in `{e^{φu}} ∪ {traceless ⟂ u}` for the axis `u`.
fn fits_axis(images: &[Quaternion], u: [f64; 3]) -> bool {
    images.iter().all(|q| {
        let v = q.vector();
        let len = norm3(v);
        if len < EQUALITY_TOLERANCE {
            return true;
        }
        let w = v.map(|x| x / len);
        let along = norm3(cross3(w, u)) < EQUALITY_TOLERANCE;
        let across = q.w.abs() < EQUALITY_TOLERANCE && dot3(w, u).abs() < EQUALITY_TOLERANCE;
        along || across
    })
}

fn candidate_axes(images: &[Quaternion]) -> Vec<[f64; 3]> {
    let vs: Vec<[f64; 3]> = images.iter().map(|q| q.vector()).collect();
    let mut out = Vec::new();
    let mut m = nalgebra::Matrix3::<f64>::zeros();
    for v in &vs {
        let c = nalgebra::Vector3::from(*v);
        m += c * c.transpose();
    }
    let eig = m.symmetric_eigen();
    for k in 0..3 {
        let c = eig.eigenvectors.column(k);
        out.push([c[0], c[1], c[2]]);
    }
    for (a, &va) in vs.iter().enumerate() {
        out.push(va);
        for &vb in &vs[a + 1..] {
            out.push(cross3(va, vb));
        }
    }
    out.into_iter()
        .filter(|u| norm3(*u) > 1e-3)
        .map(|u| {
            let n = norm3(u);
            u.map(|x| x / n)
        })
        .collect()
}

pub fn dihedral_routes(r: &RepPoint, p: &WirtingerPresentation) -> DihedralRoutes {
    let frame = candidate_axes(&r.images)
        .into_iter()
        .any(|u| fits_axis(&r.images, u));
    let involution = (p.n_components == 1).then(|| {
        let r2 = involution(r, p);
        character_distance(&r.character, &r2.character) < EQUALITY_TOLERANCE
    });
    DihedralRoutes { frame, involution }
}

/// Conjugate into the binary dihedral group? Both routes must agree when
/// both apply.
pub fn is_binary_dihedral(r: &RepPoint, p: &WirtingerPresentation) -> Result<bool> {
    let routes = dihedral_routes(r, p);
    match routes.involution {
        Some(inv) if inv != routes.frame => Err(Error::TestDisagreement {
            frame: routes.frame,
            involution: inv,
        }),
        _ => Ok(routes.frame),
    }
}
