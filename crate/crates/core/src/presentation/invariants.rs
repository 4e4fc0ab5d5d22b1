//! Determinant, signature and the congruences tying them together.

use serde::Serialize;

use crate::diagram::{goeritz_pieces, LinkDiagram};
use crate::error::{Error, Result};
use crate::presentation::{
    alexander_polynomial, wirtinger, LaurentPolynomial, WirtingerPresentation,
};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CongruenceChecks {
    /// `det ≡ (−1)^{σ/2} (mod 4)`, knots only.
    pub murasugi: Option<bool>,
    /// `Δ(−1) = (−1)^{σ/2} det` for the normalized polynomial, knots only.
    pub alexander_sign: Option<bool>,
    /// `Δ_L(−1,−1) = det/2 ≡ lk (mod 2)`, two-component links only.
    pub torres_mod2: Option<bool>,
    /// `det ≡ 2 lk (mod 4)`, two-component links only.
    pub hosokawa_kinoshita: Option<bool>,
    /// `2^{ℓ−1}` divides det; det odd for knots.
    pub det_divisibility: bool,
}

impl CongruenceChecks {
    pub fn all_pass(&self) -> bool {
        self.det_divisibility
            && [
                self.murasugi,
                self.alexander_sign,
                self.torres_mod2,
                self.hosokawa_kinoshita,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub det: u128,
    pub sigma: i64,
    /// Normalized one-variable Alexander polynomial, lowest exponent first.
    pub alex_low: i64,
    pub alex_coeffs: Vec<i128>,
    pub alexander_at_minus1: i128,
    pub components: usize,
    /// `(c1, c2, lk)` for every pair of components.
    pub linking_numbers: Vec<(usize, usize, i64)>,
    pub checks: CongruenceChecks,
}

impl InvariantReport {
    pub fn alexander(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(self.alex_low, self.alex_coeffs.clone())
    }
}

/// `det(L)` by two independent routes: `|Δ(−1)|` from Fox calculus and
/// `|det G|` from the Goeritz matrix. Split diagrams have determinant 0.
pub fn determinant(d: &LinkDiagram, p: &WirtingerPresentation) -> Result<u128> {
    let alex = alexander_polynomial(p)?.eval_at_minus_one().unsigned_abs();
    let goeritz = if d.is_split_diagram() {
        0
    } else {
        goeritz_pieces(d)?
            .first()
            .map(|g| g.determinant())
            .transpose()?
            .unwrap_or(1)
            .unsigned_abs()
    };
    if alex != goeritz {
        return Err(Error::OracleMismatch(format!(
            "|Δ(−1)| = {alex} but |det Goeritz| = {goeritz}"
        )));
    }
    Ok(alex)
}

/// Gordon–Litherland signature, summed over split pieces.
pub fn signature(d: &LinkDiagram) -> Result<i64> {
    goeritz_pieces(d)?.iter().map(|g| g.signature()).sum()
}

pub fn invariants(d: &LinkDiagram) -> Result<InvariantReport> {
    let p = wirtinger(d);
    let det = determinant(d, &p)?;
    let sigma = signature(d)?;
    let alex = alexander_polynomial(&p)?;
    let mut linking_numbers = Vec::new();
    for a in 0..d.n_components {
        for b in a + 1..d.n_components {
            linking_numbers.push((a, b, d.linking_number(a, b)?));
        }
    }
    let mut r = InvariantReport {
        det,
        sigma,
        alex_low: alex.low_degree(),
        alex_coeffs: alex.coeffs().to_vec(),
        alexander_at_minus1: alex.eval_at_minus_one(),
        components: d.n_components,
        linking_numbers,
        checks: CongruenceChecks::default(),
    };
    r.checks = congruence_checks(&r);
    Ok(r)
}

pub fn congruence_checks(r: &InvariantReport) -> CongruenceChecks {
    let det = r.det as i128;
    let sign_term: i128 = if (r.sigma / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    let knot = r.components == 1;
    let lk = (r.components == 2).then(|| r.linking_numbers[0].2 as i128);
    let pow = 1i128 << (r.components - 1).min(100);
    CongruenceChecks {
        murasugi: knot.then(|| r.sigma % 2 == 0 && (det - sign_term).rem_euclid(4) == 0),
        alexander_sign: knot.then(|| r.alexander_at_minus1 == sign_term * det),
        torres_mod2: lk.map(|lk| det % 2 == 0 && (det / 2 - lk).rem_euclid(2) == 0),
        hosokawa_kinoshita: lk.map(|lk| (det - 2 * lk).rem_euclid(4) == 0),
        det_divisibility: det % pow == 0 && (!knot || det % 2 == 1),
    }
}
