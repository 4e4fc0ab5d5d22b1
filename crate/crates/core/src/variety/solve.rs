use nalgebra::{DMatrix, DVector};

use super::{jacobian, residual, residual_vector, RepPoint, ACCEPT_RESIDUAL};
use crate::error::{Error, Result};
use crate::presentation::WirtingerPresentation;
use crate::quaternion::Quaternion;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub max_iterations: usize,
    /// Iteration stops early once the residual is below this.
    pub target: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_iterations: 500,
            target: 1e-26,
        }
    }
}

fn retract(images: &[Quaternion], step: &DVector<f64>) -> Vec<Quaternion> {
    images
        .iter()
        .enumerate()
        .map(|(g, &q)| {
            let v = [step[3 * g], step[3 * g + 1], step[3 * g + 2]];
            (q * Quaternion::exp_pure(v)).normalize()
        })
        .collect()
}

/// Levenberg–Marquardt on the product of unit spheres. Steps are taken in
/// the tangent coordinates `S_g ↦ S_g·exp(v_g)` so every iterate stays unit.
pub fn solve_from_seed(
    seed: &[Quaternion],
    p: &WirtingerPresentation,
    pinned: bool,
    opts: SolveOptions,
) -> Result<RepPoint> {
    let mut x: Vec<Quaternion> = seed.iter().map(|q| q.normalize()).collect();
    let n = 3 * x.len();
    let mut cost = residual(&x, p, pinned);
    let mut lambda = 1e-3;
    let mut iterations = 0;
    while iterations < opts.max_iterations && cost > opts.target {
        iterations += 1;
        let j = jacobian(&x, p, pinned);
        let f = DVector::from_vec(residual_vector(&x, p, pinned));
        let jt = j.transpose();
        let jtj = &jt * &j;
        let grad = &jt * &f;
        let mut improved = false;
        while lambda < 1e12 {
            let a = &jtj + DMatrix::identity(n, n) * lambda;
            let Some(chol) = a.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = -chol.solve(&grad);
            let cand = retract(&x, &step);
            let c = residual(&cand, p, pinned);
            if c < cost {
                x = cand;
                cost = c;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    if cost < ACCEPT_RESIDUAL {
        Ok(RepPoint::new(x, p, pinned))
    } else {
        Err(Error::NoConvergence {
            iterations,
            residual: cost,
        })
    }
}
