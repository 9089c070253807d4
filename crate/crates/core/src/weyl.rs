//! Enumeration of the Weyl group and its action on weights and
//! polynomials.
//!
//! Elements are identified by their integer matrix acting on weight
//! coordinates in the `λ` basis: column `j` of the matrix is `w(λ_j)`.
//! Element ids are assigned breadth-first by length, ties broken by the
//! lexicographic order of canonical words. The canonical word of an element
//! is its lexicographically first reduced word.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{LinearForm, Polynomial};
use crate::error::{Error, Result};
use crate::rootsystem::{CartanMatrix, RootDatum};

pub const DEFAULT_SIZE_LIMIT: usize = 100_000;

/// Index of an element inside its [`WeylGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Vec<i64>,
    length: usize,
    word: Vec<usize>,
}

impl WeylElement {
    /// Row-major `l × l` matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Canonical reduced word, 0-based simple indices; `w = s_{w[0]} ⋯ s_{w[k-1]}`.
    pub fn word(&self) -> &[usize] {
        &self.word
    }
}

/// A reduced word rendered with 1-based indices, e.g. `s1*s2*s1`; the
/// identity renders as `e`.
pub struct WordDisplay<'a>(pub &'a [usize]);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("s{}", i + 1)).collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<i64>, ElementId>,
    longest: ElementId,
    simple: Vec<ElementId>,
    reflections: Vec<ElementId>,
    inverses: Vec<ElementId>,
    /// `(i, s_i w)` for the first letter `i` of the canonical word.
    left_parent: Vec<Option<(usize, ElementId)>>,
    /// `w s_i` for each `w` and `i`.
    right_simple: Vec<Vec<ElementId>>,
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn mat_vec(a: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|k| a[i * n + k] * v[k]).sum())
        .collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Matrix of `s_i`: `c ↦ c − c_i · A[·][i]`.
fn simple_matrix(cartan: &CartanMatrix, i: usize) -> Vec<i64> {
    let n = cartan.rank();
    let mut m = identity(n);
    for k in 0..n {
        m[k * n + i] -= cartan.get(k, i);
    }
    m
}

impl WeylGroup {
    /// Enumerates the group, then records `l(s_α)` and `Φ̃⁺` membership on
    /// every positive root of the datum it takes ownership of.
    pub fn generate(mut datum: RootDatum, size_limit: usize) -> Result<Self> {
        let n = datum.rank();
        let cartan = datum.cartan().clone();
        let roots_by_weight = datum.weight_lookup();
        let root_weights: Vec<Vec<i64>> = datum
            .positive_roots()
            .iter()
            .map(|r| r.weight_coords.clone())
            .collect();
        let simple_roots: Vec<Vec<i64>> = (0..n)
            .map(|i| datum.root(datum.simple_root_index(i)).weight_coords.clone())
            .collect();
        let simple_mats: Vec<Vec<i64>> = (0..n).map(|i| simple_matrix(&cartan, i)).collect();
        let max_length = root_weights.len();

        let is_positive = |m: &[i64], weight: &[i64]| -> bool {
            let image = mat_vec(m, weight, n);
            if roots_by_weight.contains_key(&image) {
                true
            } else {
                let neg: Vec<i64> = image.iter().map(|x| -x).collect();
                debug_assert!(roots_by_weight.contains_key(&neg));
                false
            }
        };
        let inversions = |m: &[i64]| root_weights.iter().filter(|w| !is_positive(m, w)).count();

        // Breadth-first by length.
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut raw: Vec<(Vec<i64>, usize)> = vec![(identity(n), 0)];
        seen.insert(identity(n), 0);
        let mut layer = vec![0usize];
        let mut length = 0usize;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &idx in &layer {
                let m = raw[idx].0.clone();
                for i in 0..n {
                    if !is_positive(&m, &simple_roots[i]) {
                        continue;
                    }
                    let v = mat_mul(&m, &simple_mats[i], n);
                    if seen.contains_key(&v) {
                        continue;
                    }
                    if raw.len() >= size_limit {
                        return Err(Error::SizeLimitExceeded { limit: size_limit });
                    }
                    let len = inversions(&v);
                    if len != length + 1 {
                        return Err(Error::InvariantViolation(format!(
                            "element reached at depth {} has {len} inversions",
                            length + 1
                        )));
                    }
                    seen.insert(v.clone(), raw.len());
                    next.push(raw.len());
                    raw.push((v, len));
                }
            }
            length += 1;
            if length > max_length + 1 {
                return Err(Error::NonFiniteGroup);
            }
            layer = next;
        }

        // Canonical words: strip the smallest left descent, which yields the
        // lexicographically first reduced word.
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); raw.len()];
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&k| raw[k].1);
        for &k in &order {
            if raw[k].1 == 0 {
                continue;
            }
            let (i, parent) = (0..n)
                .find_map(|i| {
                    let p = seen[&mat_mul(&simple_mats[i], &raw[k].0, n)];
                    (raw[p].1 < raw[k].1).then_some((i, p))
                })
                .expect("non-identity element has a left descent");
            let mut w = vec![i];
            w.extend_from_slice(&words[parent]);
            words[k] = w;
        }

        order.sort_by(|&a, &b| raw[a].1.cmp(&raw[b].1).then_with(|| words[a].cmp(&words[b])));
        let elements: Vec<WeylElement> = order
            .iter()
            .map(|&k| WeylElement {
                matrix: raw[k].0.clone(),
                length: raw[k].1,
                word: words[k].clone(),
            })
            .collect();
        let lookup: HashMap<Vec<i64>, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.matrix.clone(), ElementId(k)))
            .collect();
        let find = |m: &Vec<i64>| -> Result<ElementId> {
            lookup
                .get(m)
                .copied()
                .ok_or_else(|| Error::InvariantViolation("group is not closed".into()))
        };

        let simple = simple_mats.iter().map(&find).collect::<Result<Vec<_>>>()?;
        let max_len = elements.iter().map(|e| e.length).max().unwrap_or(0);
        let longest: Vec<ElementId> = (0..elements.len())
            .filter(|&k| elements[k].length == max_len)
            .map(ElementId)
            .collect();
        if longest.len() != 1 || max_len != max_length {
            return Err(Error::InvariantViolation(format!(
                "expected a unique longest element of length {max_length}"
            )));
        }

        let mut inverses = Vec::with_capacity(elements.len());
        let mut left_parent = Vec::with_capacity(elements.len());
        let mut right_simple = Vec::with_capacity(elements.len());
        for e in &elements {
            let mut inv = identity(n);
            for &i in &e.word {
                inv = mat_mul(&simple_mats[i], &inv, n);
            }
            inverses.push(find(&inv)?);
            left_parent.push(match e.word.first() {
                Some(&i) => Some((i, find(&mat_mul(&simple_mats[i], &e.matrix, n))?)),
                None => None,
            });
            right_simple.push(
                (0..n)
                    .map(|i| find(&mat_mul(&e.matrix, &simple_mats[i], n)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }

        // s_α: μ ↦ μ − μ(α∨) α
        let mut reflections = Vec::with_capacity(datum.positive_roots().len());
        for root in datum.positive_roots() {
            let mut m = identity(n);
            for r in 0..n {
                for c in 0..n {
                    m[r * n + c] -= root.weight_coords[r] * root.coroot_coords[c];
                }
            }
            reflections.push(find(&m)?);
        }
        for (root, &refl) in datum.positive_roots_mut().iter_mut().zip(&reflections) {
            let len = elements[refl.0].length as u32;
            let bound = 2 * root.height - 1;
            if len > bound {
                return Err(Error::InvariantViolation(format!(
                    "l(s_α) = {len} exceeds 2|α∨| − 1 = {bound} for α = {:?}",
                    root.root_coords
                )));
            }
            root.reflection_length = Some(len);
            root.is_tilde = Some(len == bound);
        }

        Ok(WeylGroup {
            datum,
            elements,
            lookup,
            longest: longest[0],
            simple,
            reflections,
            inverses,
            left_parent,
            right_simple,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn element(&self, w: ElementId) -> &WeylElement {
        &self.elements[w.0]
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.elements[w.0].length
    }

    pub fn word(&self, w: ElementId) -> &[usize] {
        &self.elements[w.0].word
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    pub fn longest(&self) -> ElementId {
        self.longest
    }

    pub fn simple(&self, i: usize) -> ElementId {
        self.simple[i]
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverses[w.0]
    }

    /// `s_α` for the positive root with index `k`.
    pub fn reflection(&self, k: usize) -> ElementId {
        self.reflections[k]
    }

    /// `w s_i`.
    pub fn right_multiply_simple(&self, w: ElementId, i: usize) -> ElementId {
        self.right_simple[w.0][i]
    }

    pub(crate) fn left_parent(&self, w: ElementId) -> Option<(usize, ElementId)> {
        self.left_parent[w.0]
    }

    pub fn multiply(&self, u: ElementId, v: ElementId) -> ElementId {
        let n = self.rank();
        let m = mat_mul(&self.elements[u.0].matrix, &self.elements[v.0].matrix, n);
        self.lookup[&m]
    }

    pub fn find_matrix(&self, matrix: &[i64]) -> Option<ElementId> {
        self.lookup.get(matrix).copied()
    }

    /// The product `s_{word[0]} ⋯ s_{word[k-1]}` (need not be reduced).
    pub fn from_word(&self, word: &[usize]) -> Result<ElementId> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::InvalidElement(format!("simple index {} out of range", i + 1)));
            }
            w = self.right_multiply_simple(w, i);
        }
        Ok(w)
    }

    /// Parses a word such as `s1s2s1`, `s1*s2*s1` or `1,2,1`; `e` is the
    /// identity.
    pub fn parse_element(&self, text: &str) -> Result<ElementId> {
        let word = parse_word(text, self.rank())?;
        self.from_word(&word)
    }

    /// Right descents: `i` with `l(w s_i) < l(w)`.
    pub fn right_descents(&self, w: ElementId) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.length(self.right_multiply_simple(w, i)) < self.length(w))
            .collect()
    }

    /// All reduced words of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: ElementId) -> Vec<Vec<usize>> {
        let mut memo: HashMap<ElementId, Vec<Vec<usize>>> = HashMap::new();
        self.reduced_words_memo(w, &mut memo)
    }

    fn reduced_words_memo(
        &self,
        w: ElementId,
        memo: &mut HashMap<ElementId, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let out = if self.length(w) == 0 {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for i in self.right_descents(w) {
                for mut word in self.reduced_words_memo(self.right_multiply_simple(w, i), memo) {
                    word.push(i);
                    out.push(word);
                }
            }
            out.sort();
            out
        };
        memo.insert(w, out.clone());
        out
    }

    /// `w(μ)` for a weight in `λ` coordinates.
    pub fn act_on_weight(&self, w: ElementId, weight: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[w.0].matrix, weight, self.rank())
    }

    /// Images `w(λ_j)` as linear forms.
    pub fn weight_images(&self, w: ElementId) -> Vec<LinearForm> {
        let n = self.rank();
        let m = &self.elements[w.0].matrix;
        (0..n)
            .map(|j| LinearForm::from_integers(&(0..n).map(|i| m[i * n + j]).collect::<Vec<_>>()))
            .collect()
    }

    /// The algebra automorphism `λ_j ↦ w(λ_j)`; a left action, `q` inert.
    pub fn act_on_polynomial(&self, w: ElementId, f: &Polynomial) -> Polynomial {
        f.substitute_linear(&self.weight_images(w))
            .expect("polynomial rank matches the group rank")
    }

    /// Sign of the determinant, `(−1)^{l(w)}`, computed from the matrix.
    pub fn determinant(&self, w: ElementId) -> i64 {
        let n = self.rank();
        let m = &self.elements[w.0].matrix;
        let rows: Vec<Vec<i64>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
        integer_determinant(&rows)
    }
}

fn integer_determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Parses a word into 0-based simple indices. Accepts `s1s2s1`, `s1*s2`,
/// `1,2,1` and `1 2 1`; `e`, `id` or the empty string give the identity.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    let t = text.trim();
    let bad = || Error::InvalidElement(text.to_string());
    if t.is_empty() || t == "e" || t == "id" || t == "identity" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    if t.contains('s') {
        for part in t.split('s').skip(1) {
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = &part[digits.len()..];
            if digits.is_empty() || !rest.chars().all(|c| c == '*' || c == '_' || c.is_whitespace())
            {
                return Err(bad());
            }
            word.push(digits.parse::<usize>().map_err(|_| bad())?);
        }
        if !t.starts_with('s') {
            return Err(bad());
        }
    } else {
        for part in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
            word.push(part.parse::<usize>().map_err(|_| bad())?);
        }
    }
    word.into_iter()
        .map(|i| {
            if i == 0 || i > rank {
                Err(Error::InvalidElement(format!("{text}: index {i} out of range 1..={rank}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

/// External JSON form `{"word": [1,2,1], "length": 3}` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylGroup {
    pub fn element_json(&self, w: ElementId) -> ElementJson {
        ElementJson {
            word: self.word(w).iter().map(|i| i + 1).collect(),
            length: self.length(w),
        }
    }

    pub fn element_from_json(&self, e: &ElementJson) -> Result<ElementId> {
        let word = e
            .word
            .iter()
            .map(|&i| {
                if i == 0 || i > self.rank() {
                    Err(Error::InvalidElement(format!("{:?}", e.word)))
                } else {
                    Ok(i - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let w = self.from_word(&word)?;
        if self.length(w) != e.length {
            return Err(Error::InvalidElement(format!(
                "{:?} has length {}, not {}",
                e.word,
                self.length(w),
                e.length
            )));
        }
        Ok(w)
    }

    /// Serializable dump of the group: Cartan data plus every element's
    /// canonical word, in id order.
    pub fn to_dump(&self) -> GroupDump {
        GroupDump {
            schema: crate::SCHEMA.to_string(),
            type_label: self.datum.type_label().map(str::to_string),
            cartan: self.datum.cartan().entries().to_vec(),
            elements: self.ids().map(|w| self.element_json(w)).collect(),
        }
    }

    /// Rebuilds a group from a dump and checks that it matches the dump
    /// element for element.
    pub fn from_dump(dump: &GroupDump, size_limit: usize) -> Result<Self> {
        if dump.schema != crate::SCHEMA {
            return Err(Error::Parse(format!("unsupported schema `{}`", dump.schema)));
        }
        let cartan = CartanMatrix::new(dump.cartan.clone())?;
        let datum = RootDatum::from_cartan(cartan, dump.type_label.clone())?;
        let group = WeylGroup::generate(datum, size_limit)?;
        if group.len() != dump.elements.len() {
            return Err(Error::Parse("dump does not match the Cartan matrix".into()));
        }
        for (w, e) in group.ids().zip(&dump.elements) {
            if group.element_json(w) != *e {
                return Err(Error::Parse(format!("dump element {:?} does not match", e.word)));
            }
        }
        Ok(group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDump {
    pub schema: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub type_label: Option<String>,
    pub cartan: Vec<Vec<i64>>,
    pub elements: Vec<ElementJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::GroupSpec;

    fn group(label: &str) -> WeylGroup {
        let datum = RootDatum::build(&GroupSpec::from_label(label, true).unwrap()).unwrap();
        WeylGroup::generate(datum, DEFAULT_SIZE_LIMIT).unwrap()
    }

    #[test]
    fn orders_and_longest_lengths() {
        for (label, order, top) in [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("B2", 8, 4),
            ("G2", 12, 6),
            ("A3", 24, 6),
            ("B3", 48, 9),
            ("D4", 192, 12),
            ("F4", 1152, 24),
        ] {
            let g = group(label);
            assert_eq!(g.len(), order, "{label}");
            assert_eq!(g.length(g.longest()), top, "{label}");
            assert_eq!(g.datum().positive_roots().len(), top, "{label}");
        }
    }

    #[test]
    fn a3_matches_permutation_model() {
        // Independent oracle: S_4 with length = number of inversions.
        let mut counts = [0usize; 7];
        let mut perm = [0usize, 1, 2, 3];
        fn permutations(k: usize, perm: &mut [usize; 4], counts: &mut [usize; 7]) {
            if k == 4 {
                let inv = (0..4)
                    .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                counts[inv] += 1;
                return;
            }
            for i in k..4 {
                perm.swap(k, i);
                permutations(k + 1, perm, counts);
                perm.swap(k, i);
            }
        }
        permutations(0, &mut perm, &mut counts);
        let g = group("A3");
        let mut ours = [0usize; 7];
        for w in g.ids() {
            ours[g.length(w)] += 1;
        }
        assert_eq!(ours, counts);
    }

    #[test]
    fn b2_longest_and_products() {
        let g = group("B2");
        assert_eq!(g.word(g.longest()), &[0, 1, 0, 1]);
        let s1s2 = g.parse_element("s1s2").unwrap();
        assert_eq!(g.multiply(s1s2, s1s2), g.longest());
        assert_eq!(g.length(s1s2) * 2, g.length(g.longest()));
        let s1 = g.simple(0);
        assert_eq!(g.multiply(s1, s1), g.identity());
        assert_eq!(g.multiply(s1s2, g.identity()), s1s2);
    }

    #[test]
    fn b2_reflections() {
        let g = group("B2");
        let d = g.datum();
        assert_eq!(g.reflection(0), g.simple(0));
        assert_eq!(g.word(g.reflection(3)), &[0, 1, 0]);
        assert_eq!(d.root(3).is_tilde, Some(true));
        assert_eq!(g.word(g.reflection(2)), &[1, 0, 1]);
        assert_eq!(d.root(2).reflection_length, Some(3));
        assert_eq!(d.root(2).is_tilde, Some(false));
    }

    #[test]
    fn reflection_negates_root_and_is_involution() {
        for label in ["B2", "G2", "A3", "B3", "C3"] {
            let g = group(label);
            for (k, r) in g.datum().positive_roots().iter().enumerate() {
                let s = g.reflection(k);
                assert_eq!(g.multiply(s, s), g.identity());
                let neg: Vec<i64> = r.weight_coords.iter().map(|x| -x).collect();
                assert_eq!(g.act_on_weight(s, &r.weight_coords), neg);
            }
        }
    }

    #[test]
    fn words_multiply_back_and_have_right_length() {
        for label in ["B2", "G2", "A3", "B3", "D4"] {
            let g = group(label);
            for w in g.ids() {
                assert_eq!(g.from_word(g.word(w)).unwrap(), w);
                assert_eq!(g.word(w).len(), g.length(w));
                let det = if g.length(w).is_multiple_of(2) { 1 } else { -1 };
                assert_eq!(g.determinant(w), det);
                assert_eq!(g.multiply(w, g.inverse(w)), g.identity());
            }
        }
    }

    #[test]
    fn enumeration_order_is_by_length_then_word() {
        let g = group("B2");
        let words: Vec<Vec<usize>> = g.ids().map(|w| g.word(w).to_vec()).collect();
        let mut sorted = words.clone();
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(words, sorted);
    }

    #[test]
    fn reduced_words_of_b2_longest() {
        let g = group("B2");
        assert_eq!(
            g.reduced_words(g.longest()),
            vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]
        );
    }

    #[test]
    fn action_on_polynomials() {
        let g = group("B2");
        let x1 = &Polynomial::lambda(2, 0).scale(&crate::algebra::scalar(2)) - &Polynomial::lambda(2, 1);
        assert_eq!(g.act_on_polynomial(g.simple(0), &x1), -&x1);
        assert_eq!(g.act_on_polynomial(g.identity(), &x1), x1);
        // Left action: (uv)·f = u·(v·f).
        let f = &x1.pow(2) * &Polynomial::lambda(2, 1);
        for u in g.ids() {
            for v in g.ids() {
                let lhs = g.act_on_polynomial(g.multiply(u, v), &f);
                let rhs = g.act_on_polynomial(u, &g.act_on_polynomial(v, &f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("s1s2s1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("s1*s2", 2).unwrap(), vec![0, 1]);
        assert_eq!(parse_word("1,2 1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("e", 2).unwrap(), Vec::<usize>::new());
        assert!(parse_word("s3", 2).is_err());
        assert!(parse_word("s0", 2).is_err());
        assert!(parse_word("x1", 2).is_err());
    }

    #[test]
    fn size_limit() {
        let datum = RootDatum::build(&GroupSpec::from_label("F4", true).unwrap()).unwrap();
        assert_eq!(
            WeylGroup::generate(datum, 100).unwrap_err(),
            Error::SizeLimitExceeded { limit: 100 }
        );
    }

    #[test]
    fn dump_round_trip() {
        let g = group("G2");
        let dump = g.to_dump();
        let text = serde_json::to_string(&dump).unwrap();
        let back: GroupDump = serde_json::from_str(&text).unwrap();
        let h = WeylGroup::from_dump(&back, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(h.to_dump(), dump);
    }
}
