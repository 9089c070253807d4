//! The self-checking property suite and the golden B2 comparisons.
//!
//! Every check is exact. Random inputs come from a seeded ChaCha stream so
//! reports are reproducible.

use std::collections::BTreeSet;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{format_scalar, is_integer, Monomial, Polynomial, Scalar};
use crate::classical::{
    all_deltas, check_hiller_identity, classical_chevalley, classical_normal_form, delta_w, delta_word,
    BggFamily, SchubertExpansion,
};
use crate::engine::Engine;
use crate::error::Result;
use crate::fixtures::GoldenFixture;
use crate::quantum::{grading_holds, quantum_chevalley};
use crate::rootsystem::{CartanType, GroupSpec};
use crate::weyl::{ElementId, WeylGroup, WordDisplay, DEFAULT_SIZE_LIMIT};

/// Groups up to this order get exhaustive pair checks and full product
/// tables; larger ones are sampled.
const EXHAUSTIVE_ORDER: usize = 24;
const SAMPLED_PAIRS: usize = 200;
const MAX_REDUCED_WORDS: usize = 24;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random polynomials per randomized check.
    pub random_samples: usize,
    /// Full product tables regardless of group order.
    pub full_tables: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0x5eed_2024,
            random_samples: 50,
            full_tables: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_failures(name: &str, checked: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} cases")
        } else {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            format!("{} of {checked} cases failed: {}", failures.len(), shown.join("; "))
        };
        CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    fn errored(name: &str, e: impl std::fmt::Display) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed: false,
            detail: format!("error: {e}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub group: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn new(group: String, checks: Vec<CheckOutcome>) -> Self {
        VerifyReport {
            schema: crate::SCHEMA,
            passed: checks.iter().all(|c| c.passed),
            group,
            checks,
        }
    }
}

/// Runs the property suite, plus the golden fixture when the group is the
/// built-in B2.
pub fn verify(engine: &Engine, label: &str, opts: &SuiteOptions) -> VerifyReport {
    let mut checks = property_suite(engine, opts);
    if label == "B2" {
        checks.extend(golden_checks());
    }
    VerifyReport::new(label.to_string(), checks)
}

/// A random polynomial with up to `terms` terms, λ-degree at most
/// `max_degree`, optional `q` factors and small integer coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R, rank: usize, max_degree: u32, with_q: bool, terms: usize) -> Polynomial {
    let mut f = Polynomial::zero(rank);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let lambda = random_exponents(rng, rank, d);
        let q = if with_q {
            (0..rank).map(|_| u32::from(rng.gen_bool(0.25))).collect()
        } else {
            vec![0; rank]
        };
        f.add_term(Monomial::new(lambda, q), random_coeff(rng));
    }
    f
}

/// A random λ-homogeneous, `q`-free polynomial of degree `d`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, rank: usize, d: u32, terms: usize) -> Polynomial {
    let mut f = Polynomial::zero(rank);
    for _ in 0..terms {
        f.add_term(Monomial::new(random_exponents(rng, rank, d), vec![0; rank]), random_coeff(rng));
    }
    f
}

fn random_exponents<R: Rng>(rng: &mut R, rank: usize, d: u32) -> Vec<u32> {
    let mut e = vec![0u32; rank];
    for _ in 0..d {
        e[rng.gen_range(0..rank)] += 1;
    }
    e
}

fn random_coeff<R: Rng>(rng: &mut R) -> Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-5i64..=5);
    }
    Scalar::from_integer(c.into())
}

fn label(group: &WeylGroup, w: ElementId) -> String {
    WordDisplay(group.word(w)).to_string()
}

/// Pairs `(u, v)`: all of them for small groups, a seeded sample otherwise.
fn pairs<R: Rng>(group: &WeylGroup, rng: &mut R, exhaustive: bool) -> Vec<(ElementId, ElementId)> {
    let ids: Vec<_> = group.ids().collect();
    if exhaustive || ids.len() <= EXHAUSTIVE_ORDER {
        ids.iter().flat_map(|&u| ids.iter().map(move |&v| (u, v))).collect()
    } else {
        (0..SAMPLED_PAIRS)
            .map(|_| (*ids.choose(rng).unwrap(), *ids.choose(rng).unwrap()))
            .collect()
    }
}

/// Every property check, in a fixed order.
pub fn property_suite(engine: &Engine, opts: &SuiteOptions) -> Vec<CheckOutcome> {
    type Check = fn(&Engine, &mut ChaCha8Rng, &SuiteOptions) -> Result<CheckOutcome>;
    let checks: [(&str, Check); 16] = [
        ("reflection length bound", check_reflection_lengths),
        ("reduced-word independence of Δ_w", check_reduced_words),
        ("composition rule Δ_u Δ_v", check_composition),
        ("dual basis Δ_v(c_w) = δ_vw", check_dual_basis),
        ("commutation identity for Δ_w λ_i", check_hiller),
        ("classical Chevalley vs normal form", check_classical_chevalley),
        ("Λ_i commute", check_commutativity),
        ("ψ evaluation order", check_evaluation_order),
        ("ψ round trips", check_round_trips),
        ("ψ⁻¹ binomial vs triangular", check_inverse_routes),
        ("ψ preserves degree", check_psi_degree),
        ("quantum family shape", check_quantum_family),
        ("Λ_i(c_w) vs quantum Chevalley", check_operator_chevalley),
        ("quantum product vs quantum Chevalley", check_product_chevalley),
        ("structure constants", check_structure_constants),
        ("quantum normal form vs NF(ψ(f))", check_normal_form_routes),
    ];
    checks
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(k as u64));
            check(engine, &mut rng, opts).unwrap_or_else(|e| CheckOutcome::errored(name, e))
        })
        .collect()
}

fn check_reflection_lengths(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let datum = group.datum();
    let mut failures = Vec::new();
    for (k, root) in datum.positive_roots().iter().enumerate() {
        let len = group.length(group.reflection(k)) as i64;
        let bound = 2 * root.coroot_coords.iter().sum::<i64>() - 1;
        let tilde = root.is_tilde == Some(true);
        if len > bound || tilde != (len == bound) || (root.is_simple() && !tilde) {
            failures.push(format!("root {:?}: l(s_α) = {len}, bound {bound}", root.root_coords));
        }
    }
    Ok(CheckOutcome::from_failures(
        "reflection length bound",
        datum.positive_roots().len(),
        failures,
    ))
}

fn check_reduced_words(engine: &Engine, rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let rank = group.rank();
    let mut ids: Vec<_> = group.ids().collect();
    if ids.len() > 2 * EXHAUSTIVE_ORDER {
        ids.shuffle(rng);
        ids.truncate(2 * EXHAUSTIVE_ORDER);
    }
    let mut failures = Vec::new();
    for &w in &ids {
        let f = random_homogeneous(rng, rank, group.length(w) as u32 + 1, 4);
        let expected = delta_w(group, w, &f)?;
        for word in group.reduced_words(w).into_iter().take(MAX_REDUCED_WORDS) {
            if delta_word(group, &word, &f)? != expected {
                failures.push(format!("{} via {}", label(group, w), WordDisplay(&word)));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        "reduced-word independence of Δ_w",
        ids.len(),
        failures,
    ))
}

fn check_composition(engine: &Engine, rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let rank = group.rank();
    let cases = pairs(group, rng, false);
    let mut failures = Vec::new();
    for &(u, v) in &cases {
        let uv = group.multiply(u, v);
        let f = random_homogeneous(rng, rank, (group.length(u) + group.length(v)) as u32 + 1, 4);
        let lhs = delta_w(group, u, &delta_w(group, v, &f)?)?;
        let rhs = if group.length(uv) == group.length(u) + group.length(v) {
            delta_w(group, uv, &f)?
        } else {
            Polynomial::zero(rank)
        };
        if lhs != rhs {
            failures.push(format!("u = {}, v = {}", label(group, u), label(group, v)));
        }
    }
    Ok(CheckOutcome::from_failures(
        "composition rule Δ_u Δ_v",
        cases.len(),
        failures,
    ))
}

fn check_dual_basis(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let family = engine.classical();
    let mut failures = Vec::new();
    for w in group.ids() {
        let len = group.length(w);
        let deltas = all_deltas(group, family.member(w), len)?;
        for v in group.ids().filter(|&v| group.length(v) == len) {
            let value = deltas[v.index()].as_ref().expect("computed up to l(w)");
            let ok = if v == w { value.is_one() } else { value.is_zero() };
            if !ok {
                failures.push(format!("Δ_{}(c_{}) = {value}", label(group, v), label(group, w)));
            }
        }
    }
    Ok(CheckOutcome::from_failures("dual basis Δ_v(c_w) = δ_vw", group.len(), failures))
}

fn check_hiller(engine: &Engine, rng: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let rank = group.rank();
    let mut failures = Vec::new();
    let mut count = 0;
    for w in group.ids() {
        for i in 0..rank {
            let f = random_homogeneous(rng, rank, group.length(w) as u32 + 1, 4);
            count += 1;
            if !check_hiller_identity(group, i, w, &f)? {
                failures.push(format!("i = {}, w = {}", i + 1, label(group, w)));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        "commutation identity for Δ_w λ_i",
        count,
        failures,
    ))
}

fn check_classical_chevalley(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let rank = group.rank();
    let family = engine.classical();
    let mut failures = Vec::new();
    for w in group.ids() {
        for i in 0..rank {
            let product = &Polynomial::lambda(rank, i) * family.member(w);
            if classical_normal_form(group, &product)? != classical_chevalley(group, i, w) {
                failures.push(format!("i = {}, w = {}", i + 1, label(group, w)));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        "classical Chevalley vs normal form",
        rank * group.len(),
        failures,
    ))
}

fn sample_inputs(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Vec<Polynomial> {
    let group = engine.group();
    let top = group.length(group.longest()) as u32;
    let mut inputs: Vec<Polynomial> = engine.classical().members().to_vec();
    inputs.extend((0..opts.random_samples).map(|_| random_polynomial(rng, group.rank(), top, true, 5)));
    inputs
}

fn check_commutativity(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let rank = ops.rank();
    let inputs = sample_inputs(engine, rng, opts);
    let mut failures = Vec::new();
    let mut count = 0;
    for (n, f) in inputs.iter().enumerate() {
        for i in 0..rank {
            for j in i + 1..rank {
                count += 1;
                let ij = ops.apply_lambda_op(i, &ops.apply_lambda_op(j, f)?)?;
                let ji = ops.apply_lambda_op(j, &ops.apply_lambda_op(i, f)?)?;
                if ij != ji {
                    failures.push(format!("input {n}, i = {}, j = {}", i + 1, j + 1));
                }
            }
        }
    }
    Ok(CheckOutcome::from_failures("Λ_i commute", count, failures))
}

fn check_evaluation_order(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let rank = ops.rank();
    let top = ops.group().length(ops.group().longest()) as u32;
    let reversed: Vec<usize> = (0..rank).rev().collect();
    let mut failures = Vec::new();
    let samples = opts.random_samples.min(10);
    for n in 0..samples {
        let f = random_polynomial(rng, rank, top, true, 4);
        if ops.quantize_with_order(&f, &reversed)? != ops.quantize(&f)? {
            failures.push(format!("input {n}"));
        }
    }
    Ok(CheckOutcome::from_failures("ψ evaluation order", samples, failures))
}

fn check_normal_form_routes(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let group = ops.group();
    let rank = ops.rank();
    let top = group.length(group.longest()) as u32;
    let samples = opts.random_samples.min(10);
    let mut failures = Vec::new();
    for n in 0..samples {
        let f = random_polynomial(rng, rank, top + 2, true, 4);
        if ops.quantum_normal_form(&f)? != ops.quantum_normal_form_direct(&f)? {
            failures.push(format!("input {n}"));
        }
    }
    let family = engine.quantum()?;
    let ids: Vec<_> = group.ids().collect();
    for _ in 0..samples {
        let (u, v) = (*ids.choose(rng).unwrap(), *ids.choose(rng).unwrap());
        let f = family.hat(u) * family.hat(v);
        if ops.quantum_normal_form(&f)? != ops.quantum_normal_form_direct(&f)? {
            failures.push(format!("ĉ_u ĉ_v for u = {}, v = {}", label(group, u), label(group, v)));
        }
    }
    Ok(CheckOutcome::from_failures(
        "quantum normal form vs NF(ψ(f))",
        2 * samples,
        failures,
    ))
}

fn check_round_trips(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let rank = ops.rank();
    let top = ops.group().length(ops.group().longest()) as u32;
    let mut failures = Vec::new();
    for n in 0..opts.random_samples {
        let f = random_polynomial(rng, rank, top, true, 5);
        if ops.quantize(&ops.dequantize(&f)?)? != f {
            failures.push(format!("ψ(ψ⁻¹ f) ≠ f for input {n}"));
        }
        if ops.dequantize(&ops.quantize(&f)?)? != f {
            failures.push(format!("ψ⁻¹(ψ f) ≠ f for input {n}"));
        }
    }
    Ok(CheckOutcome::from_failures("ψ round trips", opts.random_samples, failures))
}

fn check_inverse_routes(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let inputs = sample_inputs(engine, rng, opts);
    let mut failures = Vec::new();
    for (n, f) in inputs.iter().enumerate() {
        if ops.dequantize(f)? != ops.dequantize_binomial(f)? {
            failures.push(format!("input {n}"));
        }
    }
    Ok(CheckOutcome::from_failures(
        "ψ⁻¹ binomial vs triangular",
        inputs.len(),
        failures,
    ))
}

fn check_psi_degree(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let rank = ops.rank();
    let top = ops.group().length(ops.group().longest()) as u32;
    let mut failures = Vec::new();
    for n in 0..opts.random_samples {
        // Homogeneous of total degree 2d: λ^b q^a with |b| + 2|a| = d.
        let d = rng.gen_range(1..=top);
        let mut f = Polynomial::zero(rank);
        for _ in 0..4 {
            let a = rng.gen_range(0..=d / 2);
            let mut q = vec![0u32; rank];
            q[rng.gen_range(0..rank)] = a;
            let lambda = random_exponents(rng, rank, d - 2 * a);
            f.add_term(Monomial::new(lambda, q), random_coeff(rng));
        }
        let image = ops.quantize(&f)?;
        if !f.is_zero() && image.homogeneous_degree() != Some(2 * d) {
            failures.push(format!("input {n} of degree {}", 2 * d));
        }
        for i in 0..rank {
            let g = ops.apply_lambda_op(i, &f)?;
            if !f.is_zero() && !g.is_zero() && g.homogeneous_degree() != Some(2 * d + 2) {
                failures.push(format!("Λ_{} on input {n}", i + 1));
            }
        }
    }
    Ok(CheckOutcome::from_failures("ψ preserves degree", opts.random_samples, failures))
}

fn check_quantum_family(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let family = engine.quantum()?;
    let group = engine.group();
    let ops = engine.ops();
    let rank = group.rank();
    let mut failures = Vec::new();
    for w in group.ids() {
        let hat = family.hat(w);
        let c = family.classical().member(w);
        let len = group.length(w) as u32;
        if hat.homogeneous_degree() != Some(2 * len) {
            failures.push(format!("ĉ_{} is not homogeneous of degree {}", label(group, w), 2 * len));
        }
        let correction = hat - c;
        if correction.lambda_degree().is_some_and(|d| d >= len) {
            failures.push(format!("ĉ_{} − c_w is not of lower λ-degree", label(group, w)));
        }
        if ops.quantize(hat)? != *c {
            failures.push(format!("ψ(ĉ_{}) ≠ c_w", label(group, w)));
        }
    }
    if !family.hat(group.identity()).is_one() {
        failures.push("ĉ_e ≠ 1".into());
    }
    for i in 0..rank {
        if *family.hat(group.simple(i)) != Polynomial::lambda(rank, i) {
            failures.push(format!("ĉ_s{} ≠ λ{}", i + 1, i + 1));
        }
    }
    Ok(CheckOutcome::from_failures("quantum family shape", group.len(), failures))
}

fn check_operator_chevalley(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let ops = engine.ops();
    let rank = group.rank();
    let mut failures = Vec::new();
    for w in group.ids() {
        for i in 0..rank {
            let image = ops.apply_lambda_op(i, engine.classical().member(w))?;
            if classical_normal_form(group, &image)? != quantum_chevalley(group, i, w)? {
                failures.push(format!("i = {}, w = {}", i + 1, label(group, w)));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        "Λ_i(c_w) vs quantum Chevalley",
        rank * group.len(),
        failures,
    ))
}

fn check_product_chevalley(engine: &Engine, _: &mut ChaCha8Rng, _: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let rank = group.rank();
    let mut failures = Vec::new();
    for w in group.ids() {
        for i in 0..rank {
            if engine.quantum_product(group.simple(i), w)? != quantum_chevalley(group, i, w)? {
                failures.push(format!("i = {}, w = {}", i + 1, label(group, w)));
            }
        }
    }
    Ok(CheckOutcome::from_failures(
        "quantum product vs quantum Chevalley",
        rank * group.len(),
        failures,
    ))
}

/// Problems with one product `σ_u ∘ σ_v`: non-integral or negative
/// coefficients, grading violations, and a `q = 0` slice that differs from
/// the classical cup product.
pub fn structure_constant_problems(
    engine: &Engine,
    u: ElementId,
    v: ElementId,
    product: &SchubertExpansion,
) -> Result<Vec<String>> {
    let group = engine.group();
    let mut problems = Vec::new();
    let tag = format!("{} ∘ {}", label(group, u), label(group, v));
    for (&w, coeff) in product.coords() {
        for (m, c) in coeff.terms() {
            if !m.is_q_only() {
                problems.push(format!("{tag}: coefficient of {} involves λ", label(group, w)));
            }
            if !is_integer(c) {
                problems.push(format!("{tag}: non-integer {c} at {}", label(group, w)));
            }
            if c.is_negative() {
                problems.push(format!("{tag}: negative {c} at {}", label(group, w)));
            }
            if !grading_holds(group, u, v, w, m.q_exponents()) {
                problems.push(format!("{tag}: grading fails at {}", label(group, w)));
            }
        }
    }
    let classical = classical_normal_form(
        group,
        &(engine.classical().member(u) * engine.classical().member(v)),
    )?;
    if product.q_free_part() != classical {
        problems.push(format!("{tag}: q = 0 slice differs from the cup product"));
    }
    Ok(problems)
}

fn check_structure_constants(engine: &Engine, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<CheckOutcome> {
    let group = engine.group();
    let cases = pairs(group, rng, opts.full_tables);
    let mut failures = Vec::new();
    for &(u, v) in &cases {
        let product = engine.quantum_product(u, v)?;
        failures.extend(structure_constant_problems(engine, u, v, &product)?);
    }
    Ok(CheckOutcome::from_failures("structure constants", cases.len(), failures))
}

/// Golden comparisons against the bundled B2 fixture.
pub fn golden_checks() -> Vec<CheckOutcome> {
    let setup = || -> Result<(GoldenFixture, Engine, Engine)> {
        let fx = GoldenFixture::b2()?;
        let spec = GroupSpec::Type(CartanType::B(2));
        let engine = Engine::new(&spec, DEFAULT_SIZE_LIMIT, Some(fx.top.clone()))?;
        let default = Engine::new(&spec, DEFAULT_SIZE_LIMIT, None)?;
        Ok((fx, engine, default))
    };
    let (fx, engine, default) = match setup() {
        Ok(s) => s,
        Err(e) => return vec![CheckOutcome::errored("golden B2 fixture", e)],
    };
    type Golden = fn(&GoldenFixture, &Engine, &Engine) -> Result<CheckOutcome>;
    let checks: [(&str, Golden); 6] = [
        ("golden B2 classical table", |fx, e, _| golden_classical(fx, e)),
        ("golden B2 quantum table", |fx, e, _| golden_quantum(fx, e)),
        ("golden B2 operators", |fx, e, _| golden_operators(fx, e)),
        ("golden B2 relations", |fx, e, _| golden_relations(fx, e)),
        ("golden B2 ψ of the top class", |fx, e, _| golden_psi_top(fx, e)),
        ("golden B2 representative invariance", |_, e, d| representative_invariance(e, d)),
    ];
    checks
        .iter()
        .map(|(name, check)| check(&fx, &engine, &default).unwrap_or_else(|e| CheckOutcome::errored(name, e)))
        .collect()
}

/// Resolves a fixture word, failing unless it is the element's canonical
/// word.
fn fixture_element(group: &WeylGroup, word: &str, failures: &mut Vec<String>) -> Result<ElementId> {
    let w = group.parse_element(word)?;
    let canonical = WordDisplay(group.word(w)).to_string().replace('*', "");
    if canonical != word {
        failures.push(format!("{word} is labelled {canonical}"));
    }
    Ok(w)
}

pub fn golden_classical(fx: &GoldenFixture, engine: &Engine) -> Result<CheckOutcome> {
    let group = engine.group();
    let mut failures = Vec::new();
    for (word, expected) in &fx.classical {
        let w = fixture_element(group, word, &mut failures)?;
        let got = engine.classical().member(w);
        if got != expected {
            failures.push(format!(
                "c_{word}: got {}, expected {}",
                fx.dictionary.render(got)?,
                fx.dictionary.render(expected)?
            ));
        }
    }
    Ok(CheckOutcome::from_failures("golden B2 classical table", fx.classical.len(), failures))
}

pub fn golden_quantum(fx: &GoldenFixture, engine: &Engine) -> Result<CheckOutcome> {
    let group = engine.group();
    let family = engine.quantum()?;
    let mut failures = Vec::new();
    for (word, expected) in &fx.quantum_corrections {
        let w = fixture_element(group, word, &mut failures)?;
        let got = family.hat(w) - family.classical().member(w);
        if &got != expected {
            failures.push(format!(
                "ĉ_{word} − c_{word}: got {}, expected {}",
                fx.dictionary.render(&got)?,
                fx.dictionary.render(expected)?
            ));
        }
    }
    Ok(CheckOutcome::from_failures(
        "golden B2 quantum table",
        fx.quantum_corrections.len(),
        failures,
    ))
}

pub fn golden_operators(fx: &GoldenFixture, engine: &Engine) -> Result<CheckOutcome> {
    let group = engine.group();
    let datum = group.datum();
    let ops = engine.ops();
    let mut failures = Vec::new();
    for row in &fx.operators {
        let got: BTreeSet<(Vec<u32>, String, String)> = ops
            .combined_terms(&row.form)
            .into_iter()
            .map(|t| {
                let word = WordDisplay(group.word(t.reflection)).to_string().replace('*', "");
                (t.q.q_exponents().to_vec(), format_scalar(&t.coefficient), word)
            })
            .collect();
        let expected: BTreeSet<(Vec<u32>, String, String)> = row
            .terms
            .iter()
            .map(|t| (t.q.clone(), format_scalar(&t.coeff), t.word.clone()))
            .collect();
        if got != expected {
            failures.push(format!("{}: got {got:?}, expected {expected:?}", row.variable));
        }
    }
    let tilde: BTreeSet<Vec<i64>> = ops
        .tilde_roots()
        .into_iter()
        .map(|k| datum.root(k).root_coords.clone())
        .collect();
    let expected: BTreeSet<Vec<i64>> = fx.tilde_roots.iter().cloned().collect();
    if tilde != expected {
        failures.push(format!("Φ̃⁺: got {tilde:?}, expected {expected:?}"));
    }
    Ok(CheckOutcome::from_failures(
        "golden B2 operators",
        fx.operators.len() + 1,
        failures,
    ))
}

pub fn golden_relations(fx: &GoldenFixture, engine: &Engine) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (n, row) in fx.relations.iter().enumerate() {
        let report = engine.ops().verify_relation_quantization(&row.relation, &row.free_term)?;
        notes.push(format!("R{} exact_equality = {}", n + 1, report.exact_equality));
        if !report.membership || !report.free_term_matches {
            failures.push(format!(
                "R{}: membership = {}, free_term_matches = {}, ψ(R) = {}",
                n + 1,
                report.membership,
                report.free_term_matches,
                fx.dictionary.render(&report.image)?
            ));
        }
    }
    let mut outcome = CheckOutcome::from_failures("golden B2 relations", fx.relations.len(), failures);
    outcome.detail = format!("{} ({})", outcome.detail, notes.join(", "));
    Ok(outcome)
}

/// Coefficient of `q_i` (to the first power, no other `q`) in `f`.
pub fn linear_q_coefficient(f: &Polynomial, i: usize) -> Polynomial {
    let rank = f.rank();
    f.q_slices()
        .remove(&Monomial::q_var(rank, i))
        .unwrap_or_else(|| Polynomial::zero(rank))
}

pub fn golden_psi_top(fx: &GoldenFixture, engine: &Engine) -> Result<CheckOutcome> {
    let ops = engine.ops();
    let mut failures = Vec::new();
    let image = ops.quantize(&fx.top)?;
    if image != fx.psi_top {
        failures.push(format!(
            "ψ(c_w0) − c_w0: got {}, expected {}",
            fx.dictionary.render(&(&image - &fx.top))?,
            fx.dictionary.render(&(&fx.psi_top - &fx.top))?
        ));
    }
    // a_i cancels the q_i coefficient of ψ(c_w0).
    for (i, expected) in [&fx.a1, &fx.a2].into_iter().enumerate() {
        let a = -linear_q_coefficient(&image, i);
        if &a != expected {
            failures.push(format!(
                "a{}: got {}, expected {}",
                i + 1,
                fx.dictionary.render(&a)?,
                fx.dictionary.render(expected)?
            ));
        }
    }
    Ok(CheckOutcome::from_failures("golden B2 ψ of the top class", 3, failures))
}

/// Compares every product `σ_u ∘ σ_v` computed from two engines on the same
/// group with different top classes.
pub fn representative_invariance(a: &Engine, b: &Engine) -> Result<CheckOutcome> {
    let group = a.group();
    let mut failures = Vec::new();
    let mut differing = 0;
    for w in group.ids() {
        if a.quantum()?.hat(w) != b.quantum()?.hat(w) {
            differing += 1;
        }
    }
    for u in group.ids() {
        for v in group.ids() {
            if a.quantum_product(u, v)? != b.quantum_product(u, v)? {
                failures.push(format!("{} ∘ {}", label(group, u), label(group, v)));
            }
        }
    }
    let mut outcome = CheckOutcome::from_failures(
        "golden B2 representative invariance",
        group.len() * group.len(),
        failures,
    );
    outcome.detail = format!("{}; {differing} of {} ĉ_w differ", outcome.detail, group.len());
    Ok(outcome)
}

/// A second valid top class: `top + (Σ_{α>0} α²) · g` for a random `g`.
pub fn perturbed_top<R: Rng>(group: &WeylGroup, family: &BggFamily, rng: &mut R) -> Option<Polynomial> {
    let datum = group.datum();
    let top_len = group.length(group.longest()) as u32;
    if top_len < 2 {
        return None;
    }
    let mut invariant = Polynomial::zero(group.rank());
    for root in datum.positive_roots() {
        invariant += &datum.root_as_linear_form(root).to_polynomial().pow(2);
    }
    let g = random_homogeneous(rng, group.rank(), top_len - 2, 3);
    let shifted = family.top() + &(&invariant * &g);
    (!shifted.is_zero() && &shifted != family.top()).then_some(shifted)
}
