use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{display_scalar, format_scalar, parse_scalar, LinearForm, Monomial, Scalar};
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in `λ_1..λ_l, q_1..q_l`.
///
/// No stored coefficient is ever zero, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// One term of the JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub lambda: Vec<u32>,
    pub q: Vec<u32>,
    pub coeff: String,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Scalar::one())
    }

    pub fn constant(rank: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(rank), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero(m.rank());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn lambda(rank: usize, i: usize) -> Self {
        Self::term(Monomial::lambda_var(rank, i), Scalar::one())
    }

    pub fn q(rank: usize, i: usize) -> Self {
        Self::term(Monomial::q_var(rank, i), Scalar::one())
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and dropping
    /// zeros.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(rank);
        for (m, c) in terms {
            if m.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: m.rank(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The constant term, or `None` if any other monomial is present.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.rank(), self.rank);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Polynomial) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        let mut out = Polynomial::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.rank);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Largest λ-degree among the terms; `None` for the zero polynomial.
    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::lambda_degree).max()
    }

    /// Common total degree (`deg λ = 2`, `deg q = 4`) if the polynomial is
    /// homogeneous; `None` if it is not. The zero polynomial reports
    /// `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let Some(first) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when every term has the same λ-degree `d`.
    pub fn is_lambda_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.lambda_degree() == d)
    }

    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(|m| m.q_degree() == 0)
    }

    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(Monomial::is_q_only)
    }

    /// Splits by total λ-degree. The components sum back to `self`.
    pub fn lambda_homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.lambda_degree())
                .or_insert_with(|| Polynomial::zero(self.rank))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// The λ-degree `d` component.
    pub fn lambda_component(&self, d: u32) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.lambda_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Groups the terms by their `q` exponents: `self = Σ q^a · slice[a]`
    /// with each slice free of `q`.
    pub fn q_slices(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.q_part())
                .or_insert_with(|| Polynomial::zero(self.rank))
                .terms
                .insert(m.lambda_part(), c.clone());
        }
        out
    }

    /// The `q = 0` specialisation.
    pub fn q_free_part(&self) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q_degree() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces each `λ_i` by `images[i]`; `q` variables are untouched.
    pub fn substitute_linear(&self, images: &[LinearForm]) -> Result<Polynomial> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|f| f.rank() != self.rank) {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: bad.rank(),
            });
        }
        let image_polys: Vec<Polynomial> = images.iter().map(|f| f.to_polynomial()).collect();
        let mut powers: Vec<Vec<Polynomial>> = image_polys
            .iter()
            .map(|_| vec![Polynomial::one(self.rank)])
            .collect();
        let mut out = Polynomial::zero(self.rank);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::term(m.q_part(), c.clone());
            for (i, &e) in m.lambda_exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &image_polys[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Returns `g` with `divisor · g = self`, treating `q` as inert
    /// coefficients. Fails with [`Error::NotDivisible`] if the remainder is
    /// nonzero.
    pub fn exact_divide_by_linear(&self, divisor: &LinearForm) -> Result<Polynomial> {
        if divisor.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: divisor.rank(),
            });
        }
        let Some(pivot) = divisor.coefficients().iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroDivisor);
        };
        if self.is_zero() {
            return Ok(Polynomial::zero(self.rank));
        }
        let lead_inv = divisor.coefficients()[pivot].recip();
        // divisor = a·λ_p + rest
        let mut rest = divisor.clone();
        rest.set(pivot, Scalar::zero());
        let rest = rest.to_polynomial();

        // Coefficients of λ_p^e, with λ_p removed.
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.lambda_exponents()[pivot];
            let mut stripped = m.clone();
            stripped.lambda_mut()[pivot] = 0;
            by_power
                .entry(e)
                .or_insert_with(|| Polynomial::zero(self.rank))
                .add_term(stripped, c.clone());
        }
        let top = *by_power.keys().next_back().unwrap();
        let mut quotient = Polynomial::zero(self.rank);
        let take = |by_power: &mut BTreeMap<u32, Polynomial>, e: u32| {
            by_power.remove(&e).unwrap_or_else(|| Polynomial::zero(self.rank))
        };
        let mut current = take(&mut by_power, top);
        for e in (1..=top).rev() {
            let g = current.scale(&lead_inv);
            current = &take(&mut by_power, e - 1) - &(&rest * &g);
            let mut shift = Monomial::one(self.rank);
            shift.lambda_mut()[pivot] = e - 1;
            quotient += &g.mul_monomial(&shift, &Scalar::one());
        }
        if !current.is_zero() {
            return Err(Error::NotDivisible {
                divisor: divisor.to_string(),
            });
        }
        Ok(quotient)
    }

    /// Evaluates at a point; `lambda` and `q` give the variable values.
    pub fn evaluate(&self, lambda: &[Scalar], q: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in lambda.iter().zip(m.lambda_exponents()) {
                v *= num_traits::pow(x.clone(), e as usize);
            }
            for (x, &e) in q.iter().zip(m.q_exponents()) {
                v *= num_traits::pow(x.clone(), e as usize);
            }
            total += v;
        }
        total
    }

    /// JSON terms in canonical order (highest monomial first).
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                lambda: m.lambda_exponents().to_vec(),
                q: m.q_exponents().to_vec(),
                coeff: format_scalar(c),
            })
            .collect()
    }

    pub fn from_json_terms(rank: usize, terms: &[TermJson]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(rank);
        for t in terms {
            if t.lambda.len() != rank || t.q.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: t.lambda.len().max(t.q.len()),
                });
            }
            let c = parse_scalar(&t.coeff)?;
            out.add_term(Monomial::new(t.lambda.clone(), t.q.clone()), c);
        }
        Ok(out)
    }

    /// Human-readable rendering with the given variable names.
    pub fn display_with(&self, lambda_names: &[String], q_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (name, &e) in q_names.iter().zip(m.q_exponents()) {
                push_power(&mut factors, name, e);
            }
            for (name, &e) in lambda_names.iter().zip(m.lambda_exponents()) {
                push_power(&mut factors, name, e);
            }
            if factors.is_empty() {
                out.push_str(&display_scalar(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&display_scalar(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(rank: usize) -> (Vec<String>, Vec<String>) {
        (
            (1..=rank).map(|i| format!("l{i}")).collect(),
            (1..=rank).map(|i| format!("q{i}")).collect(),
        )
    }
}

fn push_power(factors: &mut Vec<String>, name: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(name.to_string()),
        _ => factors.push(format!("{name}^{e}")),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, q) = Polynomial::default_names(self.rank);
        f.write_str(&self.display_with(&l, &q))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

// Operator impls panic on rank mismatch; the `try_*` methods report it.

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, scalar};

    fn l(i: usize) -> Polynomial {
        Polynomial::lambda(2, i)
    }

    fn x1() -> Polynomial {
        &l(0).scale(&scalar(2)) - &l(1)
    }

    fn x2() -> Polynomial {
        l(1)
    }

    fn form(c: &[i64]) -> LinearForm {
        LinearForm::new(c.iter().map(|&v| scalar(v)).collect())
    }

    #[test]
    fn additive_identity_and_inverse() {
        let f = &x1() * &x2();
        assert_eq!(&f + &Polynomial::zero(2), f);
        assert!((&l(0) + &(-&l(0))).is_zero());
    }

    #[test]
    fn sum_of_squares_in_weight_basis() {
        let f = &x1().pow(2) + &x2().pow(2);
        // 4λ1² − 4λ1λ2 + 2λ2²
        let expected = Polynomial::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0], vec![0, 0]), scalar(4)),
                (Monomial::new(vec![1, 1], vec![0, 0]), scalar(-4)),
                (Monomial::new(vec![0, 2], vec![0, 0]), scalar(2)),
            ],
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn difference_of_squares() {
        let f = &(&l(0) - &l(1)) * &(&l(0) + &l(1));
        assert_eq!(f, &l(0).pow(2) - &l(1).pow(2));
        assert_eq!(&f * &Polynomial::one(2), f);
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let a = Polynomial::lambda(2, 0);
        let b = Polynomial::lambda(3, 0);
        assert!(matches!(a.try_add(&b), Err(Error::RankMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(Error::RankMismatch { .. })));
        assert!(a.substitute_linear(&[form(&[1, 0])]).is_err());
    }

    #[test]
    fn substitution_identity_and_reflections() {
        let f = &x1() * &x2() + Polynomial::q(2, 1);
        let id = [form(&[1, 0]), form(&[0, 1])];
        assert_eq!(f.substitute_linear(&id).unwrap(), f);

        // s1: λ1 ↦ λ1 − α1 = −λ1 + λ2, λ2 fixed; sends x1 to −x1.
        let s1 = [form(&[-1, 1]), form(&[0, 1])];
        assert_eq!(x1().substitute_linear(&s1).unwrap(), -x1());
        // s2: λ2 ↦ λ2 − α2 = 2λ1 − λ2; swaps x1 and x2.
        let s2 = [form(&[1, 0]), form(&[2, -1])];
        assert_eq!(x1().substitute_linear(&s2).unwrap(), x2());
        let prod = &x1() * &x2();
        assert_eq!(prod.substitute_linear(&s2).unwrap(), prod);
        // q is inert.
        assert_eq!(
            Polynomial::q(2, 0).substitute_linear(&s1).unwrap(),
            Polynomial::q(2, 0)
        );
    }

    #[test]
    fn exact_division() {
        let z = Polynomial::zero(2);
        assert!(z.exact_divide_by_linear(&form(&[1, -1])).unwrap().is_zero());

        let f = &l(0).pow(2) - &l(1).pow(2);
        assert_eq!(f.exact_divide_by_linear(&form(&[1, -1])).unwrap(), &l(0) + &l(1));

        // ((x1+x2)² − (−x1+x2)²) / x1 = 4 x2
        let num = &(&x1() + &x2()).pow(2) - &(&x2() - &x1()).pow(2);
        let q = num.exact_divide_by_linear(&form(&[2, -1])).unwrap();
        assert_eq!(q, x2().scale(&scalar(4)));

        assert!(matches!(
            l(0).exact_divide_by_linear(&form(&[0, 1])),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            l(0).exact_divide_by_linear(&form(&[0, 0])),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn division_with_q_coefficients() {
        let f = &(&Polynomial::q(2, 0) * &l(1)) * &(&l(0) + &l(1).scale(&ratio(1, 3)));
        let g = f
            .exact_divide_by_linear(&LinearForm::new(vec![scalar(1), ratio(1, 3)]))
            .unwrap();
        assert_eq!(g, &Polynomial::q(2, 0) * &l(1));
    }

    #[test]
    fn components_by_lambda_degree() {
        let f = &l(0) + &Polynomial::q(2, 0);
        let comps = f.lambda_homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], l(0));
        assert_eq!(comps[&0], Polynomial::q(2, 0));

        let h = x1().pow(3);
        let comps = h.lambda_homogeneous_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&3], h);
    }

    #[test]
    fn json_terms_round_trip_and_are_canonical() {
        let f = &(&x1().pow(2) * &Polynomial::q(2, 1)).scale(&ratio(-3, 8)) + &l(1);
        let terms = f.to_json_terms();
        assert_eq!(Polynomial::from_json_terms(2, &terms).unwrap(), f);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, serde_json::to_string(&f.clone()).unwrap());
        assert!(json.contains("\"coeff\":\"-3/2\""));
    }

    #[test]
    fn display() {
        let f = &x1().pow(2) + &Polynomial::q(2, 0).scale(&ratio(-1, 2));
        assert_eq!(f.to_string(), "4*l1^2 - 4*l1*l2 + l2^2 - 1/2*q1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }
}
