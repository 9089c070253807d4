use std::fmt;

use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};

/// A linear form `Σ c_k λ_k` in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coefficients: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Scalar>) -> Self {
        LinearForm { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        LinearForm {
            coefficients: coefficients.iter().map(|&c| super::scalar(c)).collect(),
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coefficients = vec![Scalar::zero(); rank];
        coefficients[i] = Scalar::one();
        LinearForm { coefficients }
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub(crate) fn set(&mut self, i: usize, c: Scalar) {
        self.coefficients[i] = c;
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let rank = self.rank();
        let mut p = Polynomial::zero(rank);
        for (i, c) in self.coefficients.iter().enumerate() {
            p.add_term(Monomial::lambda_var(rank, i), c.clone());
        }
        p
    }

    /// Reads a polynomial back as a linear form; fails unless it is linear in
    /// `λ` with no constant or `q` part.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let rank = p.rank();
        let mut coefficients = vec![Scalar::zero(); rank];
        for (m, c) in p.terms() {
            let Some(i) = (m.q_degree() == 0 && m.lambda_degree() == 1)
                .then(|| m.lambda_exponents().iter().position(|&e| e == 1))
                .flatten()
            else {
                return Err(Error::Parse(format!("`{p}` is not a linear form in λ")));
            };
            coefficients[i] = c.clone();
        }
        Ok(LinearForm { coefficients })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// A change of linear coordinates: `forms[i]` expresses the `i`-th new
/// variable in terms of `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    forms: Vec<LinearForm>,
}

impl LinearMap {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self> {
        let rank = forms.len();
        if let Some(bad) = forms.iter().find(|f| f.rank() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: bad.rank(),
            });
        }
        Ok(LinearMap { forms })
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    /// Inverse map: expresses each `λ_j` in terms of the new variables.
    pub fn inverse(&self) -> Result<LinearMap> {
        let n = self.forms.len();
        // Row i of `a` holds forms[i]; solve a · Λ = X for Λ.
        let mut a: Vec<Vec<Scalar>> = self.forms.iter().map(|f| f.coefficients.clone()).collect();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Parse("coordinate change is singular".into()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip();
            for k in 0..n {
                a[col][k] *= &p;
                inv[col][k] *= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for k in 0..n {
                        let t = &factor * &a[col][k];
                        a[r][k] -= t;
                        let t = &factor * &inv[col][k];
                        inv[r][k] -= t;
                    }
                }
            }
        }
        Ok(LinearMap {
            forms: inv.into_iter().map(LinearForm::new).collect(),
        })
    }

    /// Rewrites `f` (in `λ`) in the new coordinates; the result reuses the
    /// `λ` slots for the new variables.
    pub fn rewrite(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute_linear(self.inverse()?.forms())
    }
}
