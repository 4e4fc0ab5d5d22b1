//! Exact binary dihedral representations.
//!
//! A meridian-traceless representation into `D = {e^{iθ}} ∪ {e^{iθ}j}` sending
//! every generator into `Nj` is `S_r ↦ e^{iθ_r} j` with `θ_a − 2θ_b + θ_c ≡ 0
//! (mod 2π)` at every crossing. With `θ_r = 2π m_r / Δ` this is the integer
//! system `m_a − 2m_b + m_c ≡ 0 (mod Δ)`, solved exactly through the Smith
//! form of the coloring matrix.
//!
//! Conjugation acts on labels by the affine maps `m ↦ ±m + c`. Classes are
//! normalized to `m_μ = 0` on the distinguished meridian and then represented
//! by the lexicographically smaller of `m` and `−m`. A labeling is abelian
//! exactly when `2(m_r − m_s) ≡ 0` for all `r, s`: then every image commutes
//! with every other.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::PI;

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::presentation::{coloring_matrix, WirtingerPresentation};
use crate::quaternion::Quaternion;
use crate::variety::RepPoint;

/// Enumeration refuses solution groups larger than this.
pub const MAX_SOLUTIONS: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DihedralClass {
    /// One label mod `modulus` per Wirtinger generator.
    pub labels: Vec<u64>,
    pub modulus: u64,
    pub normalized: bool,
}

impl DihedralClass {
    pub fn new(labels: Vec<u64>, modulus: u64) -> Self {
        let labels = labels.into_iter().map(|m| m % modulus.max(1)).collect();
        DihedralClass {
            labels,
            modulus,
            normalized: false,
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.modulus;
        let base = self.labels.first().copied().unwrap_or(0);
        self.labels
            .iter()
            .all(|&m| (2 * (m + n - base)).is_multiple_of(n))
    }

    /// Whether the crossing congruences hold.
    pub fn satisfies(&self, p: &WirtingerPresentation) -> bool {
        let n = self.modulus as i128;
        p.relations.iter().all(|r| {
            let m = |g: usize| self.labels[g] as i128;
            (m(r.input) - 2 * m(r.over) + m(r.output)).rem_euclid(n) == 0
        })
    }

    /// Canonical representative of the conjugacy class: labels shifted so the
    /// generator `mu` is 0, then the lexicographic minimum of `m` and `−m`.
    pub fn canonical(&self, mu: usize) -> DihedralClass {
        let n = self.modulus;
        let shift = self.labels[mu];
        let m: Vec<u64> = self.labels.iter().map(|&x| (x + n - shift) % n).collect();
        let neg: Vec<u64> = m.iter().map(|&x| (n - x) % n).collect();
        DihedralClass {
            labels: m.min(neg),
            modulus: n,
            normalized: true,
        }
    }

    /// `θ_r = 2π m_r / Δ`.
    pub fn angles(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|&m| 2.0 * PI * m as f64 / self.modulus as f64)
            .collect()
    }
}

/// Every non-abelian class of binary dihedral representations whose labels
/// live in `ℤ/Δ`, one canonical representative each, sorted.
pub fn enumerate_classes(p: &WirtingerPresentation, delta: u64) -> Result<Vec<DihedralClass>> {
    if delta == 0 {
        return Err(Error::ZeroDeterminant);
    }
    let n = delta as i128;
    let s = p.n_generators();
    let a = coloring_matrix(p);
    let smith = a.smith()?;
    let v = smith.right;

    // generators of the kernel of A mod Δ in y-coordinates, mapped back by V
    let mut gens: Vec<(Vec<i128>, i128)> = Vec::new();
    for i in 0..s {
        let d = smith.diagonal.get(i).copied().unwrap_or(0);
        let g = crate::intmat::gcd(d, n);
        if g == 1 {
            continue;
        }
        let step = n / g;
        let col = (0..s).map(|r| (v[(r, i)] * step).rem_euclid(n)).collect();
        gens.push((col, g));
    }
    let total: u128 = gens.iter().map(|(_, g)| *g as u128).product();
    if total > MAX_SOLUTIONS {
        return Err(Error::HypothesisViolation(format!(
            "{total} labelings mod {delta} exceed the enumeration limit"
        )));
    }

    let mu = p.distinguished_meridian;
    let mut found = BTreeSet::new();
    let mut counter = vec![0i128; gens.len()];
    let mut m = vec![0i128; s];
    loop {
        if m[mu] == 0 {
            let c = DihedralClass::new(m.iter().map(|&x| x as u64).collect(), delta);
            if !c.is_abelian() {
                found.insert(c.canonical(mu));
            }
        }
        // odometer over the generator multiples
        let mut k = 0;
        loop {
            if k == gens.len() {
                return Ok(found.into_iter().collect());
            }
            counter[k] += 1;
            for (x, y) in m.iter_mut().zip(&gens[k].0) {
                *x = (*x + y) % n;
            }
            if counter[k] < gens[k].1 {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Order of the subgroup of `D` generated by the images `e^{2πi m_r/Δ} j`.
///
/// Elements are tracked exactly as `(k, f)` meaning `e^{iπk/Δ} j^f` with
/// `k mod 2Δ`; then `j e^{iφ} = e^{−iφ} j` and `j² = e^{iπ}` give the product.
pub fn image_order(c: &DihedralClass) -> u64 {
    let n = c.modulus;
    let two_n = 2 * n;
    let mul = |(k1, f1): (u64, u8), (k2, f2): (u64, u8)| -> (u64, u8) {
        match (f1, f2) {
            (0, f) => ((k1 + k2) % two_n, f),
            (1, 0) => ((k1 + two_n - k2) % two_n, 1),
            _ => ((k1 + two_n - k2 + n) % two_n, 0),
        }
    };
    let gens: Vec<(u64, u8)> = c.labels.iter().map(|&m| ((2 * m) % two_n, 1)).collect();
    let identity = (0u64, 0u8);
    let mut seen = HashSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = mul(x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u64
}

/// One sign-propagation walk: component `n_component` is sent into `N`
/// (images `±i`) and the other into `Nj`. The value flips at every crossing
/// where the walk passes under the other component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedWalk {
    pub n_component: usize,
    pub flips: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeridianFormVerdict {
    pub classes_checked: usize,
    /// Every generator of every class lifts to an element `e^{iθ}j`.
    pub all_meridians_in_nj: bool,
    pub mixed_walks: Vec<MixedWalk>,
    /// A consistent mixed walk, if one exists, contradicting the claim that
    /// every meridian lands in `Nj`.
    pub contradiction: Option<MixedWalk>,
    pub passed: bool,
}

/// For a two-component link with `det ≡ 2 (mod 4)`, checks that every class
/// sends all meridians into `Nj` and that no labeling with one component in
/// `N` and the other in `Nj` survives the sign walk.
pub fn meridian_form_check(
    classes: &[DihedralClass],
    d: &LinkDiagram,
    p: &WirtingerPresentation,
    det: u128,
) -> Result<MeridianFormVerdict> {
    if d.n_components != 2 {
        return Err(Error::HypothesisViolation(format!(
            "meridian form check needs 2 components, got {}",
            d.n_components
        )));
    }
    if det % 4 != 2 {
        return Err(Error::HypothesisViolation(format!(
            "det = {det} is not 2 mod 4"
        )));
    }
    let mut all_in_nj = true;
    for c in classes {
        let r = lift_to_su2(c, p);
        // after the global conjugation Nj is the unit circle in the (i, k) plane
        all_in_nj &= r.residual < 1e-12
            && r.images
                .iter()
                .all(|q| q.w.abs() < 1e-12 && q.y.abs() < 1e-12);
    }
    let mixed_walks: Vec<MixedWalk> = (0..2)
        .map(|n_component| {
            let flips = d
                .crossings
                .iter()
                .filter(|x| {
                    d.component_of_arc(x.under_in) == n_component
                        && d.component_of_arc(x.over) != n_component
                })
                .count();
            MixedWalk {
                n_component,
                flips,
                consistent: flips % 2 == 0,
            }
        })
        .collect();
    let contradiction = mixed_walks.iter().find(|w| w.consistent).cloned();
    Ok(MeridianFormVerdict {
        classes_checked: classes.len(),
        all_meridians_in_nj: all_in_nj,
        passed: all_in_nj && contradiction.is_none(),
        mixed_walks,
        contradiction,
    })
}

/// Numerical lift `S_r ↦ cos θ_r j + sin θ_r k`, conjugated by `(1 − k)/√2`
/// so that the distinguished meridian (label 0) goes to `i`. The result is
/// `S_r ↦ cos θ_r i + sin θ_r k`.
pub fn lift_to_su2(c: &DihedralClass, p: &WirtingerPresentation) -> RepPoint {
    let g = Quaternion::new(1.0, 0.0, 0.0, -1.0).normalize();
    let images = c
        .angles()
        .iter()
        .map(|&t| {
            let q = Quaternion::new(0.0, 0.0, t.cos(), t.sin());
            g * q * g.inv()
        })
        .collect();
    RepPoint::new(images, p, true)
}
