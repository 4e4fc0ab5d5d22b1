use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Integer Laurent polynomial in one variable `t`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct LaurentPolynomial {
    /// Exponent of `coeffs[0]`.
    low: i64,
    /// No leading or trailing zeros; empty for the zero polynomial.
    coeffs: Vec<i128>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<i128>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> i128 {
        let k = e - self.low;
        if k < 0 {
            0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i64, c))
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    pub fn eval_at_minus_one(&self) -> i128 {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self {
            low: if self.is_zero() { 0 } else { self.low + k },
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(o.low);
        let high = self.high_degree().max(o.high_degree());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e).checked_add(o.coeff(e)).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Self::from_coeffs(low, coeffs))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(ab).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_coeffs(self.low + o.low, coeffs))
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let lead = *d.coeffs.last().unwrap();
        let mut q = vec![0i128; rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dl - 1];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[k] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].checked_sub(f.checked_mul(dc)?)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.low - d.low, q))
    }

    /// Multiplies by `±t^k` so that the polynomial is as centred as possible
    /// (symmetric when it is a knot's Alexander polynomial) with positive
    /// value at `t = 1`, or positive leading coefficient when that value
    /// vanishes.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let span = self.high_degree() - self.low;
        let mut p = self.shift(-self.low - span / 2);
        let v = p.eval_at_one();
        if v < 0 || (v == 0 && *p.coeffs.last().unwrap() < 0) {
            p = p.neg();
        }
        p
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                write!(f, " ")?;
            }
            let a = c.abs();
            let mag = match (a, e) {
                (_, 0) => format!("{a}"),
                (1, 1) => "t".to_string(),
                (1, _) => format!("t^{e}"),
                (_, 1) => format!("{a}t"),
                _ => format!("{a}t^{e}"),
            };
            if first {
                write!(f, "{sign}{mag}")?;
            } else {
                write!(f, "{sign} {mag}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Determinant of a square matrix over `ℤ[t, t⁻¹]` by Bareiss elimination with
/// exact Laurent division.
pub fn laurent_determinant(m: &[Vec<LaurentPolynomial>]) -> Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    assert!(m.iter().all(|r| r.len() == n), "non-square matrix");
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(LaurentPolynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss quotient is exact over an integral domain");
            }
            a[i][k] = LaurentPolynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}
