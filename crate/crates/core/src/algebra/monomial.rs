use std::cmp::Ordering;

use super::{LAMBDA_WEIGHT, Q_WEIGHT};

/// A monomial `q^d λ^b`, stored as two exponent vectors of length `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    lambda: Vec<u32>,
    q: Vec<u32>,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial {
            lambda: vec![0; rank],
            q: vec![0; rank],
        }
    }

    /// Panics if the two exponent vectors have different lengths.
    pub fn new(lambda: Vec<u32>, q: Vec<u32>) -> Self {
        assert_eq!(lambda.len(), q.len(), "exponent vectors must have equal length");
        Monomial { lambda, q }
    }

    pub fn lambda_var(rank: usize, i: usize) -> Self {
        let mut m = Monomial::one(rank);
        m.lambda[i] = 1;
        m
    }

    pub fn q_var(rank: usize, i: usize) -> Self {
        let mut m = Monomial::one(rank);
        m.q[i] = 1;
        m
    }

    /// The pure-`q` monomial with the given exponents.
    pub fn q_power(q: Vec<u32>) -> Self {
        let rank = q.len();
        Monomial {
            lambda: vec![0; rank],
            q,
        }
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda_exponents(&self) -> &[u32] {
        &self.lambda
    }

    pub fn q_exponents(&self) -> &[u32] {
        &self.q
    }

    pub fn lambda_degree(&self) -> u32 {
        self.lambda.iter().sum()
    }

    pub fn q_degree(&self) -> u32 {
        self.q.iter().sum()
    }

    /// Total degree with `deg λ_i = 2`, `deg q_i = 4`.
    pub fn degree(&self) -> u32 {
        LAMBDA_WEIGHT * self.lambda_degree() + Q_WEIGHT * self.q_degree()
    }

    pub fn is_one(&self) -> bool {
        self.lambda.iter().chain(&self.q).all(|&e| e == 0)
    }

    pub fn is_q_only(&self) -> bool {
        self.lambda.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.rank(), other.rank());
        Monomial {
            lambda: self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect(),
            q: self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect(),
        }
    }

    /// The `q` part of this monomial, as a monomial.
    pub fn q_part(&self) -> Monomial {
        Monomial::q_power(self.q.clone())
    }

    /// The `λ` part of this monomial, as a monomial.
    pub fn lambda_part(&self) -> Monomial {
        Monomial {
            lambda: self.lambda.clone(),
            q: vec![0; self.rank()],
        }
    }

    pub(crate) fn lambda_mut(&mut self) -> &mut [u32] {
        &mut self.lambda
    }
}

// Graded lexicographic: total degree first, then the λ block, then the q block.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lambda.cmp(&other.lambda))
            .then_with(|| self.q.cmp(&other.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
