//! Twisted cohomology `H¹(π; su(2)_ρ)` of a representation.
//!
//! A cocycle is determined by its values `ξ(S_r) ∈ ℝ³` on the generators,
//! subject to `ξ(w) = 0` for every relator `w`. Expanding with
//! `ξ(gh) = ξ(g) + Ad_{ρ(g)} ξ(h)` and `ξ(g⁻¹) = −Ad_{ρ(g⁻¹)} ξ(g)` gives one
//! 3×3 block per letter: `Ad(prefix)` for `g`, `−Ad(prefix·g⁻¹)` for `g⁻¹`.
//! This is the Fox derivative of the relator with `Ad ∘ ρ` in place of the
//! abelianization.

use nalgebra::{DMatrix, Matrix3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Letter, WirtingerPresentation};
use crate::quaternion::Quaternion;
use crate::variety::RepPoint;

pub const RELATIVE_THRESHOLD: f64 = 1e-7;
pub const MIN_GAP: f64 = 1e2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CocycleReport {
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub restriction_onto: bool,
    /// Largest `|ξ(μ) · axis(ρ(μ))|` over the orthonormal Z¹ basis.
    pub meridian_axis_component: f64,
    /// Singular-value gap behind the Z¹ rank decision.
    pub rank_gap: f64,
}

fn ad(q: Quaternion) -> Matrix3<f64> {
    let a = q.adjoint();
    Matrix3::from_fn(|i, j| a[i][j])
}

/// Fox expansion of a word: `(generator, coefficient block)` per letter.
fn word_blocks(images: &[Quaternion], w: &[Letter]) -> Vec<(usize, Matrix3<f64>)> {
    let mut prefix = Quaternion::ONE;
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        let q = images[l.generator];
        if l.exponent > 0 {
            out.push((l.generator, ad(prefix)));
            prefix = prefix * q;
        } else {
            prefix = prefix * q.inv();
            out.push((l.generator, -ad(prefix)));
        }
    }
    out
}

/// The linear system whose kernel is `Z¹`: `3·relations × 3·generators`.
pub fn cocycle_matrix(r: &RepPoint, p: &WirtingerPresentation) -> DMatrix<f64> {
    let s = p.n_generators();
    let mut m = DMatrix::zeros(3 * p.relations.len(), 3 * s);
    for (ri, rel) in p.relations.iter().enumerate() {
        for (g, b) in word_blocks(&r.images, &rel.relator()) {
            let mut view = m.fixed_view_mut::<3, 3>(3 * ri, 3 * g);
            view += b;
        }
    }
    m
}

struct Kernel {
    basis: Vec<Vec<f64>>,
    gap: f64,
}

/// Orthonormal kernel basis by SVD with a relative threshold.
fn kernel(m: &DMatrix<f64>) -> Kernel {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        sv.iter()
            .take_while(|&&x| x > RELATIVE_THRESHOLD * top)
            .count()
    };
    let gap = if rank == 0 || rank == sv.len() {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank].max(f64::MIN_POSITIVE)
    };
    let basis = order[rank..]
        .iter()
        .map(|&i| v_t.row(i).iter().copied().collect())
        .collect();
    Kernel { basis, gap }
}

/// Orthonormal basis of `Z¹` as vectors `(ξ(S_0), ξ(S_1), …)` in `ℝ^{3s}`.
pub fn cocycle_space(r: &RepPoint, p: &WirtingerPresentation) -> Result<Vec<Vec<f64>>> {
    let k = kernel(&cocycle_matrix(r, p));
    if k.gap < MIN_GAP {
        return Err(Error::IllConditioned { gap: k.gap });
    }
    Ok(k.basis)
}

/// `3 − dim` of the subspace fixed by every `Ad ρ(S_r)`.
pub fn coboundary_dim(r: &RepPoint) -> usize {
    let s = r.images.len();
    let mut m = DMatrix::zeros(3 * s, 3);
    for (g, &q) in r.images.iter().enumerate() {
        m.fixed_view_mut::<3, 3>(3 * g, 0)
            .copy_from(&(ad(q) - Matrix3::identity()));
    }
    let sv = m.svd(false, false).singular_values;
    let fixed = sv.iter().filter(|&&x| x < RELATIVE_THRESHOLD).count();
    3 - fixed
}

pub fn cocycle_report(r: &RepPoint, p: &WirtingerPresentation) -> Result<CocycleReport> {
    let k = kernel(&cocycle_matrix(r, p));
    if k.gap < MIN_GAP {
        return Err(Error::IllConditioned { gap: k.gap });
    }
    let dim_z1 = k.basis.len();
    let dim_b1 = coboundary_dim(r);
    let mu = p.distinguished_meridian;
    let v = r.images[mu].vector();
    let len = crate::quaternion::norm3(v);
    let meridian_axis_component = if len < 1e-6 {
        0.0
    } else {
        k.basis
            .iter()
            .map(|b| {
                let xi = [b[3 * mu], b[3 * mu + 1], b[3 * mu + 2]];
                (crate::quaternion::dot3(xi, v) / len).abs()
            })
            .fold(0.0, f64::max)
    };
    Ok(CocycleReport {
        dim_z1,
        dim_b1,
        dim_h1: dim_z1.saturating_sub(dim_b1),
        restriction_onto: meridian_axis_component > RELATIVE_THRESHOLD,
        meridian_axis_component,
        rank_gap: k.gap,
    })
}

pub fn h1_dim(r: &RepPoint, p: &WirtingerPresentation) -> Result<usize> {
    Ok(cocycle_report(r, p)?.dim_h1)
}

pub fn restriction_onto(r: &RepPoint, p: &WirtingerPresentation) -> Result<bool> {
    Ok(cocycle_report(r, p)?.restriction_onto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_notation;
    use crate::dihedral::{enumerate_classes, lift_to_su2};
    use crate::presentation::{determinant, wirtinger};
    use crate::variety::residual_vector;

    fn dihedral_points(text: &str) -> (WirtingerPresentation, Vec<RepPoint>) {
        let d = parse_notation(text).unwrap();
        let p = wirtinger(&d);
        let det = determinant(&d, &p).unwrap() as u64;
        let pts = enumerate_classes(&p, det)
            .unwrap()
            .iter()
            .map(|c| lift_to_su2(c, &p))
            .collect();
        (p, pts)
    }

    /// Rank of the relation-defect Jacobian by central differences.
    fn finite_difference_nullity(r: &RepPoint, p: &WirtingerPresentation) -> usize {
        let s = r.images.len();
        let rows = 4 * p.relations.len();
        let h = 1e-6;
        let mut j = DMatrix::zeros(rows.max(3 * s), 3 * s);
        for g in 0..s {
            for e in 0..3 {
                let eval = |sgn: f64| {
                    let mut im = r.images.clone();
                    let mut dv = [0.0; 3];
                    dv[e] = sgn * h;
                    im[g] = Quaternion::exp_pure(dv) * im[g];
                    residual_vector(&im, p, false)
                };
                let (a, b) = (eval(1.0), eval(-1.0));
                for row in 0..rows {
                    j[(row, 3 * g + e)] = (a[row] - b[row]) / (2.0 * h);
                }
            }
        }
        let sv = j.svd(false, false).singular_values;
        let top = sv.iter().copied().fold(0.0, f64::max);
        3 * s - sv.iter().filter(|&&x| x > 1e-5 * top).count()
    }

    #[test]
    fn trefoil_dihedral_rep_is_nondegenerate() {
        let (p, pts) = dihedral_points("BR[2; 1,1,1]");
        let rep = cocycle_report(&pts[0], &p).unwrap();
        assert_eq!((rep.dim_z1, rep.dim_b1, rep.dim_h1), (4, 3, 1));
        assert!(rep.restriction_onto);
        assert!(rep.rank_gap >= MIN_GAP);
        assert_eq!(finite_difference_nullity(&pts[0], &p), 4);
    }

    #[test]
    fn figure_eight_dihedral_reps_are_nondegenerate() {
        let (p, pts) = dihedral_points("BR[3; 1,-2,1,-2]");
        for r in &pts {
            let rep = cocycle_report(r, &p).unwrap();
            assert_eq!(rep.dim_h1, 1);
            assert!(rep.restriction_onto);
            assert_eq!(finite_difference_nullity(r, &p), rep.dim_z1);
        }
    }

    #[test]
    fn trivial_rep_of_unknot() {
        let p = wirtinger(&parse_notation("U").unwrap());
        let r = RepPoint::new(vec![Quaternion::ONE], &p, false);
        let rep = cocycle_report(&r, &p).unwrap();
        assert_eq!((rep.dim_z1, rep.dim_b1, rep.dim_h1), (3, 0, 3));
        assert!(!rep.restriction_onto);
    }

    #[test]
    fn abelian_rep_on_trefoil() {
        let p = wirtinger(&parse_notation("BR[2; 1,1,1]").unwrap());
        let r = RepPoint::new(vec![Quaternion::I; 3], &p, true);
        let rep = cocycle_report(&r, &p).unwrap();
        assert_eq!(rep.dim_b1, 2);
        assert_eq!(rep.dim_z1, finite_difference_nullity(&r, &p));
        assert_eq!(rep.dim_z1, 3);
    }

    #[test]
    fn dimensions_are_conjugation_invariant() {
        let (p, pts) = dihedral_points("BR[2; 1,1,1,1,1]");
        let g = Quaternion::new(0.3, -0.2, 0.9, 0.4).normalize();
        for r in &pts {
            let a = cocycle_report(r, &p).unwrap();
            let b = cocycle_report(&r.conjugated(g, &p), &p).unwrap();
            assert_eq!((a.dim_z1, a.dim_b1), (b.dim_z1, b.dim_b1));
        }
    }

    /// Exact arithmetic in `ℚ(√3)`, enough for the trefoil's dihedral point
    /// whose angles are multiples of `2π/3`.
    mod exact {
        use std::ops::{Add, Mul, Neg, Sub};

        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }

        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct Q(pub i128, pub i128);

        impl Q {
            pub fn new(n: i128, d: i128) -> Q {
                let g = gcd(n, d).max(1) * d.signum();
                Q(n / g, d / g)
            }
            fn is_zero(self) -> bool {
                self.0 == 0
            }
            fn inv(self) -> Q {
                Q::new(self.1, self.0)
            }
        }
        impl Add for Q {
            type Output = Q;
            fn add(self, o: Q) -> Q {
                Q::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
            }
        }
        impl Neg for Q {
            type Output = Q;
            fn neg(self) -> Q {
                Q(-self.0, self.1)
            }
        }
        impl Sub for Q {
            type Output = Q;
            fn sub(self, o: Q) -> Q {
                self + -o
            }
        }
        impl Mul for Q {
            type Output = Q;
            fn mul(self, o: Q) -> Q {
                Q::new(self.0 * o.0, self.1 * o.1)
            }
        }

        /// `a + b√3`.
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct R3(pub Q, pub Q);

        pub const ZERO: R3 = R3(Q(0, 1), Q(0, 1));
        pub const ONE: R3 = R3(Q(1, 1), Q(0, 1));

        impl R3 {
            pub fn is_zero(self) -> bool {
                self.0.is_zero() && self.1.is_zero()
            }
            pub fn inv(self) -> R3 {
                let norm = self.0 * self.0 - Q(3, 1) * self.1 * self.1;
                let n = norm.inv();
                R3(self.0 * n, -(self.1 * n))
            }
        }
        impl Add for R3 {
            type Output = R3;
            fn add(self, o: R3) -> R3 {
                R3(self.0 + o.0, self.1 + o.1)
            }
        }
        impl Neg for R3 {
            type Output = R3;
            fn neg(self) -> R3 {
                R3(-self.0, -self.1)
            }
        }
        impl Sub for R3 {
            type Output = R3;
            fn sub(self, o: R3) -> R3 {
                self + -o
            }
        }
        impl Mul for R3 {
            type Output = R3;
            fn mul(self, o: R3) -> R3 {
                R3(
                    self.0 * o.0 + Q(3, 1) * self.1 * o.1,
                    self.0 * o.1 + self.1 * o.0,
                )
            }
        }

        /// Quaternion `(w, x, y, z)` over `ℚ(√3)`.
        pub type H = [R3; 4];

        pub fn qmul(a: H, b: H) -> H {
            [
                a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
            ]
        }

        /// Inverse of a unit quaternion.
        pub fn qinv(a: H) -> H {
            [a[0], -a[1], -a[2], -a[3]]
        }

        /// `Ad` of a unit quaternion: column `c` is `q e_c q⁻¹`.
        pub fn ad(q: H) -> [[R3; 3]; 3] {
            let mut m = [[ZERO; 3]; 3];
            for c in 0..3 {
                let mut e = [ZERO; 4];
                e[c + 1] = ONE;
                let v = qmul(qmul(q, e), qinv(q));
                for r in 0..3 {
                    m[r][c] = v[r + 1];
                }
            }
            m
        }

        pub fn rank(mut m: Vec<Vec<R3>>) -> usize {
            let rows = m.len();
            let cols = m.first().map_or(0, |r| r.len());
            let mut rank = 0;
            for c in 0..cols {
                let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
                    continue;
                };
                m.swap(rank, p);
                let inv = m[rank][c].inv();
                for r in 0..rows {
                    if r != rank && !m[r][c].is_zero() {
                        let f = m[r][c] * inv;
                        let pivot = m[rank].clone();
                        for (x, t) in m[r].iter_mut().zip(pivot).skip(c) {
                            *x = *x - f * t;
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
    }

    #[test]
    fn trefoil_nullity_matches_exact_arithmetic() {
        use exact::*;
        let (p, pts) = dihedral_points("BR[2; 1,1,1]");
        let labels = enumerate_classes(&p, 3).unwrap()[0].labels.clone();
        // lift is S_r ↦ cos θ i + sin θ k with θ = 2π m / 3
        let half = Q::new(1, 2);
        let images: Vec<H> = labels
            .iter()
            .map(|&m| {
                let (c, s) = match m {
                    0 => (ONE, ZERO),
                    1 => (R3(-half, Q::new(0, 1)), R3(Q::new(0, 1), half)),
                    _ => (R3(-half, Q::new(0, 1)), R3(Q::new(0, 1), -half)),
                };
                [ZERO, c, ZERO, s]
            })
            .collect();
        for (q, f) in images.iter().zip(&pts[0].images) {
            let approx = |x: R3| {
                let (a, b) = (x.0, x.1);
                a.0 as f64 / a.1 as f64 + 3f64.sqrt() * b.0 as f64 / b.1 as f64
            };
            assert!((approx(q[1]) - f.x).abs() < 1e-12 && (approx(q[3]) - f.z).abs() < 1e-12);
        }
        let s = images.len();
        let mut m = vec![vec![ZERO; 3 * s]; 3 * p.relations.len()];
        for (ri, rel) in p.relations.iter().enumerate() {
            let mut prefix: H = [ONE, ZERO, ZERO, ZERO];
            for l in rel.relator() {
                let q = images[l.generator];
                let (block, sign) = if l.exponent > 0 {
                    let b = ad(prefix);
                    prefix = qmul(prefix, q);
                    (b, ONE)
                } else {
                    prefix = qmul(prefix, qinv(q));
                    (ad(prefix), -ONE)
                };
                for a in 0..3 {
                    for b in 0..3 {
                        let e = &mut m[3 * ri + a][3 * l.generator + b];
                        *e = *e + sign * block[a][b];
                    }
                }
            }
        }
        let exact_nullity = 3 * s - rank(m);
        assert_eq!(exact_nullity, 4);
        assert_eq!(cocycle_space(&pts[0], &p).unwrap().len(), exact_nullity);
    }
}
