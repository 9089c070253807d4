//! Cartan data and positive roots.
//!
//! Convention: `A[i][j] = α_j(α_i∨)`. With it, `s_i(λ_j) = λ_j − δ_ij α_i`
//! and the simple root `α_j` has weight coordinates `A[·][j]`.
//!
//! Every root is stored twice: by its weight coordinates (to use it as a
//! linear form in `λ`) and by its coroot coordinates `α∨ = Σ m_k α_k∨` (to
//! read off heights, pairings `λ_k(α∨) = m_k` and `q^{α∨}`).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{LinearForm, Monomial, Scalar};
use crate::error::{Error, Result};

/// Closure guard for root enumeration; larger than any finite root system
/// this engine can enumerate a Weyl group for.
const ROOT_LIMIT: usize = 100_000;

/// Largest rank accepted without the size-guard flag, per family.
const DEFAULT_A: usize = 8;
const DEFAULT_BC: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates and wraps the matrix. Rejects anything that is not a
    /// generalized Cartan matrix of finite type.
    #[allow(clippy::needless_range_loop)]
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) are not simultaneously zero"
                    )));
                }
            }
        }
        // Finite type: every principal minor is positive (this includes the
        // leading ones).
        if n <= 16 {
            for mask in 1u32..(1 << n) {
                let idx: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
                if principal_minor(&entries, &idx) <= 0 {
                    return Err(Error::InvalidCartan(format!(
                        "principal minor on {idx:?} is not positive; not of finite type"
                    )));
                }
            }
        } else {
            for k in 1..=n {
                let idx: Vec<usize> = (0..k).collect();
                if principal_minor(&entries, &idx) <= 0 {
                    return Err(Error::InvalidCartan(
                        "leading principal minor is not positive; not of finite type".into(),
                    ));
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `α_j(α_i∨)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
fn principal_minor(a: &[Vec<i64>], idx: &[usize]) -> i128 {
    let n = idx.len();
    let mut m: Vec<Vec<i128>> = idx
        .iter()
        .map(|&r| idx.iter().map(|&c| a[r][c] as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// A Cartan–Killing type such as `B2` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        match self {
            CartanType::A(n) => n * (n + 1) / 2,
            CartanType::B(n) | CartanType::C(n) => n * n,
            CartanType::D(n) => n * (n - 1),
            CartanType::E(6) => 36,
            CartanType::E(7) => 63,
            CartanType::E(8) => 120,
            CartanType::E(_) => unreachable!(),
            CartanType::F4 => 24,
            CartanType::G2 => 6,
        }
    }

    /// Whether the type is in the default set that needs no size guard
    /// (`A1..A8`, `B2..B4`, `C2..C4`, `D4`, `G2`, `F4`).
    pub fn is_default_size(self) -> bool {
        match self {
            CartanType::A(n) => n <= DEFAULT_A,
            CartanType::B(n) | CartanType::C(n) => n <= DEFAULT_BC,
            CartanType::D(n) => n == 4,
            CartanType::E(_) => false,
            CartanType::F4 | CartanType::G2 => true,
        }
    }

    /// The Cartan matrix in this crate's numbering.
    ///
    /// Chains are numbered from the end carrying the multiple bond, so
    /// `α_1` is the short simple root of `B_n`, the long one of `C_n`, and
    /// the short one of `G2`. For `B2` this is the numbering in which
    /// `α_1 = x_1`, `α_2 = x_2 − x_1`. `D_n`, `E_n` and `F4` follow
    /// Bourbaki.
    pub fn cartan_matrix(self) -> CartanMatrix {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            CartanType::E(_) => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            CartanType::G2 => link(0, 1),
        }
        // A[i][j] = α_j(α_i∨) has absolute value > 1 when α_i is short and
        // α_j is long.
        match self {
            CartanType::B(_) => a[0][1] = -2,
            CartanType::C(_) => a[1][0] = -2,
            CartanType::F4 => a[2][1] = -2,
            CartanType::G2 => a[0][1] = -3,
            _ => {}
        }
        CartanMatrix::new(a).expect("built-in Cartan matrices are of finite type")
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownType(s.to_string());
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let t = match (family, n) {
            ('A', n) if n >= 1 => CartanType::A(n),
            ('B', n) if n >= 2 => CartanType::B(n),
            ('C', n) if n >= 2 => CartanType::C(n),
            ('D', n) if n >= 4 => CartanType::D(n),
            ('E', 6..=8) => CartanType::E(n),
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(unknown()),
        };
        Ok(t)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// What to build a root datum from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Type(CartanType),
    Cartan(CartanMatrix),
}

impl GroupSpec {
    /// Parses a type label, refusing types outside the default set unless
    /// `allow_large` is set.
    pub fn from_label(label: &str, allow_large: bool) -> Result<Self> {
        let t: CartanType = label.parse()?;
        if !allow_large && !t.is_default_size() {
            return Err(Error::LargeType(t.to_string()));
        }
        Ok(GroupSpec::Type(t))
    }
}

/// A positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Expansion in the simple roots.
    pub root_coords: Vec<i64>,
    /// Expansion in the fundamental weights.
    pub weight_coords: Vec<i64>,
    /// `m_k` with `α∨ = Σ m_k α_k∨`.
    pub coroot_coords: Vec<i64>,
    /// `|α∨| = Σ m_k`.
    pub height: u32,
    /// `l(s_α)`, filled in once the Weyl group is generated.
    pub reflection_length: Option<u32>,
    /// Membership in `Φ̃⁺` (`l(s_α) = 2|α∨| − 1`), filled in with
    /// `reflection_length`.
    pub is_tilde: Option<bool>,
}

impl Root {
    pub fn is_simple(&self) -> bool {
        self.height == 1
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan: CartanMatrix,
    positive_roots: Vec<Root>,
    type_label: Option<String>,
}

impl RootDatum {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Type(t) => {
                let datum = Self::from_cartan(t.cartan_matrix(), Some(t.to_string()))?;
                if datum.positive_roots.len() != t.positive_root_count() {
                    return Err(Error::InvariantViolation(format!(
                        "{t} produced {} positive roots, expected {}",
                        datum.positive_roots.len(),
                        t.positive_root_count()
                    )));
                }
                Ok(datum)
            }
            GroupSpec::Cartan(c) => Self::from_cartan(c.clone(), None),
        }
    }

    /// Enumerates positive roots by saturating the simple roots under the
    /// simple reflections, tracking root and coroot coordinates together.
    pub fn from_cartan(cartan: CartanMatrix, type_label: Option<String>) -> Result<Self> {
        let n = cartan.rank();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            seen.insert(unit(i));
            queue.push_back((unit(i), unit(i)));
        }
        while let Some((root, coroot)) = queue.pop_front() {
            for i in 0..n {
                // s_i(β) = β − β(α_i∨) α_i,  s_i(β∨) = β∨ − α_i(β∨) α_i∨
                let pair_root: i64 = (0..n).map(|k| cartan.get(i, k) * root[k]).sum();
                let pair_coroot: i64 = (0..n).map(|k| coroot[k] * cartan.get(k, i)).sum();
                let mut r = root.clone();
                r[i] -= pair_root;
                let mut c = coroot.clone();
                c[i] -= pair_coroot;
                if r.iter().any(|&x| x < 0) || r == root {
                    continue;
                }
                if seen.insert(r.clone()) {
                    queue.push_back((r, c));
                }
            }
            found.push((root, coroot));
            if found.len() > ROOT_LIMIT {
                return Err(Error::NonFiniteGroup);
            }
        }
        // Order by height in the simple roots, then reverse-lexicographically
        // so that α_1 precedes α_2.
        found.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_roots = found
            .into_iter()
            .map(|(root_coords, coroot_coords)| {
                let weight_coords = (0..n)
                    .map(|j| (0..n).map(|k| cartan.get(j, k) * root_coords[k]).sum())
                    .collect();
                Root {
                    height: coroot_coords.iter().sum::<i64>() as u32,
                    root_coords,
                    weight_coords,
                    coroot_coords,
                    reflection_length: None,
                    is_tilde: None,
                }
            })
            .collect();
        Ok(RootDatum {
            cartan,
            positive_roots,
            type_label,
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.positive_roots[k]
    }

    pub fn type_label(&self) -> Option<&str> {
        self.type_label.as_deref()
    }

    /// Index of the simple root `α_i`.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| r.height == 1 && r.coroot_coords[i] == 1)
            .expect("every simple root is enumerated")
    }

    /// Index of the positive root with the given simple-root coordinates.
    pub fn root_index(&self, root_coords: &[i64]) -> Option<usize> {
        self.positive_roots
            .iter()
            .position(|r| r.root_coords == root_coords)
    }

    /// Map from weight coordinates to root index, for sign tests.
    pub(crate) fn weight_lookup(&self) -> HashMap<Vec<i64>, usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.weight_coords.clone(), k))
            .collect()
    }

    /// `μ(α∨)` for a weight `μ` given in the `λ` basis.
    pub fn pairing(&self, weight: &[Scalar], root: &Root) -> Scalar {
        weight
            .iter()
            .zip(&root.coroot_coords)
            .fold(Scalar::zero(), |acc, (w, &m)| acc + w * Scalar::from_integer(m.into()))
    }

    /// `λ_i(α∨) = m_i`.
    pub fn fundamental_pairing(&self, i: usize, root: &Root) -> i64 {
        root.coroot_coords[i]
    }

    pub fn root_as_linear_form(&self, root: &Root) -> LinearForm {
        LinearForm::from_integers(&root.weight_coords)
    }

    /// `q^{α∨}`.
    pub fn q_monomial(&self, root: &Root) -> Monomial {
        Monomial::q_power(root.coroot_coords.iter().map(|&m| m as u32).collect())
    }

    pub(crate) fn positive_roots_mut(&mut self) -> &mut [Root] {
        &mut self.positive_roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar;

    fn datum(label: &str) -> RootDatum {
        RootDatum::build(&GroupSpec::from_label(label, true).unwrap()).unwrap()
    }

    #[test]
    fn b2_roots_match_orthogonal_presentation() {
        let d = datum("B2");
        let coords: Vec<_> = d.positive_roots().iter().map(|r| r.root_coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
        // α1 = x1 = 2λ1 − λ2, α3 = x2 = λ2, α4 = x1 + x2 = 2λ1
        assert_eq!(d.root(0).weight_coords, vec![2, -1]);
        assert_eq!(d.root(1).weight_coords, vec![-2, 2]);
        assert_eq!(d.root(2).weight_coords, vec![0, 1]);
        assert_eq!(d.root(3).weight_coords, vec![2, 0]);
        // α3∨ = α1∨ + 2α2∨, α4∨ = α1∨ + α2∨
        assert_eq!(d.root(2).coroot_coords, vec![1, 2]);
        assert_eq!(d.root(3).coroot_coords, vec![1, 1]);
        assert_eq!(d.root(2).height, 3);
        assert_eq!(d.root(3).height, 2);
    }

    #[test]
    fn rank_one_and_a2() {
        let a1 = datum("A1");
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.root(0).coroot_coords, vec![1]);
        assert_eq!(a1.root(0).height, 1);

        let a2 = datum("A2");
        let heights: Vec<_> = a2.positive_roots().iter().map(|r| r.height).collect();
        assert_eq!(heights, vec![1, 1, 2]);
        assert_eq!(a2.root(2).root_coords, vec![1, 1]);
    }

    #[test]
    fn root_counts_for_all_types() {
        for label in [
            "A1", "A2", "A3", "A4", "A8", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6",
            "E7", "E8", "F4", "G2",
        ] {
            let t: CartanType = label.parse().unwrap();
            assert_eq!(datum(label).positive_roots().len(), t.positive_root_count(), "{label}");
        }
    }

    #[test]
    fn pairings() {
        let d = datum("B2");
        for i in 0..2 {
            for j in 0..2 {
                let mut w = vec![scalar(0); 2];
                w[i] = scalar(1);
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(d.pairing(&w, d.root(d.simple_root_index(j))), scalar(expected));
            }
        }
        assert_eq!(d.pairing(&[scalar(1), scalar(0)], d.root(2)), scalar(1));
        // x1 = 2λ1 − λ2 against α4∨ = α1∨ + α2∨
        assert_eq!(d.pairing(&[scalar(2), scalar(-1)], d.root(3)), scalar(1));
    }

    #[test]
    fn linear_forms_and_q_monomials() {
        let d = datum("B2");
        assert_eq!(d.root_as_linear_form(d.root(0)), LinearForm::from_integers(&[2, -1]));
        assert_eq!(d.root_as_linear_form(d.root(2)), LinearForm::from_integers(&[0, 1]));
        assert_eq!(d.q_monomial(d.root(0)), Monomial::q_var(2, 0));
        assert_eq!(d.q_monomial(d.root(3)), Monomial::q_power(vec![1, 1]));
        assert_eq!(d.q_monomial(d.root(2)), Monomial::q_power(vec![1, 2]));
        for (j, r) in d.positive_roots().iter().take(2).enumerate() {
            let column: Vec<i64> = (0..2).map(|i| d.cartan().get(i, j)).collect();
            assert_eq!(r.weight_coords, column);
        }
    }

    #[test]
    fn cartan_validation() {
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        assert!(CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).is_err()); // affine
        assert!(CartanMatrix::new(vec![vec![2, 0], vec![-1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![1, 0], vec![0, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).is_err());
    }

    #[test]
    fn labels() {
        assert!(matches!("X3".parse::<CartanType>(), Err(Error::UnknownType(_))));
        assert!("B1".parse::<CartanType>().is_err());
        assert!(GroupSpec::from_label("E6", false).is_err());
        assert!(GroupSpec::from_label("E6", true).is_ok());
        assert!(GroupSpec::from_label("D4", false).is_ok());
        assert!(GroupSpec::from_label("A9", false).is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let d = datum("F4");
        let again = RootDatum::from_cartan(d.cartan().clone(), None).unwrap();
        assert_eq!(again.positive_roots(), d.positive_roots());
    }
}
