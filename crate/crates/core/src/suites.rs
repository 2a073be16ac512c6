//! Exhaustive and randomized identity checks, grouped into named suites,
//! plus the report comparing competing readings of ambiguous definitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{Diagram, OrthodonticSequence};
use crate::diffops::{self, Operator};
use crate::error::Result;
use crate::families::{self, script_g, script_s, stable_grothendieck, Family, InnerOmega, LascouxCache};
use crate::lascouxbasis::{expand_with, flipped_specialization, graded_positive, lascoux_expand, triangularity_failures};
use crate::permcomb::{Composition, Permutation};
use crate::pipedreams::{self, PipeDream};
use crate::polyring::{Coeff, Monomial, Polynomial};
use crate::sortorder::{descending_product, is_sorted, primary_column_data, sigma_of, sort_of, OsEndpoint};

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    OrthodontiaFormula,
    DoubleSchubert,
    Sorting,
    SortedDescent,
    Operators,
    Specialization,
    Triangularity,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::OrthodontiaFormula,
        Suite::DoubleSchubert,
        Suite::Sorting,
        Suite::SortedDescent,
        Suite::Operators,
        Suite::Specialization,
        Suite::Triangularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OrthodontiaFormula => "thm11",
            Suite::DoubleSchubert => "cor-double-schub",
            Suite::Sorting => "prop-os1",
            Suite::SortedDescent => "thm-os2",
            Suite::Operators => "operators",
            Suite::Specialization => "lemma4",
            Suite::Triangularity => "triangularity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub item: String,
    pub detail: String,
}

impl Failure {
    fn new(item: impl fmt::Display, detail: impl Into<String>) -> Self {
        Failure { item: item.to_string(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub nmax: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub inner: InnerOmega,
    pub endpoint: OsEndpoint,
    pub seed: u64,
    /// Random instances for the operator suite.
    pub operator_samples: usize,
    /// Random instances for the specialization and round-trip suites.
    pub identity_samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            inner: InnerOmega::Barred,
            endpoint: OsEndpoint::AlphaPlusOne,
            seed: 0x5eed,
            operator_samples: 500,
            identity_samples: 200,
        }
    }
}

/// Run one suite. Permutation suites sweep `S_nmax`; the polynomial suites
/// use `nmax` as the number of variables.
pub fn run_suite(suite: Suite, nmax: usize, opts: &SuiteOptions) -> SuiteReport {
    let (checks, failures) = match suite {
        Suite::OrthodontiaFormula => orthodontia_formula_suite(nmax, opts.inner),
        Suite::DoubleSchubert => double_schubert_suite(nmax),
        Suite::Sorting => sorting_suite(nmax),
        Suite::SortedDescent => sorted_descent_suite(nmax, opts.endpoint),
        Suite::Operators => operators_suite(nmax, opts),
        Suite::Specialization => specialization_suite(nmax, opts),
        Suite::Triangularity => triangularity_suite(nmax, opts),
    };
    SuiteReport { suite, nmax, checks, failures }
}

fn sweep<T: Send + Sync>(items: Vec<T>, check: impl Fn(&T) -> Vec<Failure> + Sync) -> (usize, Vec<Failure>) {
    let failures = items.par_iter().flat_map_iter(&check).collect();
    (items.len(), failures)
}

fn pd_weight_sum(w: &Permutation, pds: &[PipeDream]) -> Polynomial {
    let n = w.len();
    let len = w.length();
    pds.iter().fold(Polynomial::zero(n, n), |acc, p| {
        if (p.num_crosses() - len) % 2 == 0 {
            &acc + &p.weight()
        } else {
            &acc - &p.weight()
        }
    })
}

fn orthodontia_formula_suite(n: usize, inner: InnerOmega) -> (usize, Vec<Failure>) {
    let groth = families::family_table(Family::DoubleGrothendieck, n);
    let pds = pipedreams::pipe_dream_table(n).unwrap_or_default();
    sweep(Permutation::all(n), |w| {
        let g = &groth[w];
        let mut out = Vec::new();
        match pds.get(w) {
            Some(list) if pd_weight_sum(w, list) == *g => {}
            Some(_) => out.push(Failure::new(w, "pipe dream sum differs from the recursion")),
            None if n <= pipedreams::MAX_N => out.push(Failure::new(w, "no pipe dreams found")),
            None => {}
        }
        match script_g(&Diagram::rothe(w), inner) {
            Ok(s) if s == *g => {}
            Ok(_) => out.push(Failure::new(w, "orthodontia formula differs from the recursion")),
            Err(e) => out.push(Failure::new(w, e.to_string())),
        }
        out
    })
}

fn double_schubert_suite(n: usize) -> (usize, Vec<Failure>) {
    let groth = families::family_table(Family::DoubleGrothendieck, n);
    let schub = families::family_table(Family::DoubleSchubert, n);
    sweep(Permutation::all(n), |w| {
        let mut out = Vec::new();
        let from_groth = groth[w].negate_y().lowest_degree_part().expect("nonzero");
        if from_groth != schub[w] {
            out.push(Failure::new(w, "lowest part of G(x,-y) differs from the divided-difference recursion"));
        }
        match script_s(&Diagram::rothe(w)) {
            Ok(s) if s == schub[w].negate_y() => {}
            Ok(_) => out.push(Failure::new(w, "orthodontia formula differs from S_w(x,-y)")),
            Err(e) => out.push(Failure::new(w, e.to_string())),
        }
        out
    })
}

fn column_sizes(w: &Permutation) -> Vec<usize> {
    Diagram::rothe(w).column_masks().iter().map(|m| m.count_ones() as usize).collect()
}

/// The cells removed when sorting `w`, as predicted from its primary data.
pub fn predicted_sort_difference(w: &Permutation) -> BTreeSet<(usize, usize)> {
    let p = primary_column_data(w);
    let lambda = column_sizes(&sigma_of(w));
    let mut out = BTreeSet::new();
    for b in 1..=p.beta {
        for a in 1..=lambda[b - 1] {
            out.insert((p.alpha + a, p.h - p.beta + b));
        }
    }
    out
}

fn as_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

/// Columns `h - β + b` grouped by `#D(σ)_b`.
fn sigma_column_groups(w: &Permutation) -> HashMap<usize, BTreeSet<usize>> {
    let p = primary_column_data(w);
    let lambda = column_sizes(&sigma_of(w));
    let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for b in 1..=p.beta {
        groups.entry(lambda[b - 1]).or_default().insert(p.h - p.beta + b);
    }
    groups
}

/// Which reading of the `K_α` update rule to use when sorting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KAlphaClause {
    /// `K_α = K'_α ∖ {h-β+1, …, h}` as printed.
    Literal,
    /// `K_α = (K'_α ∖ {h-β+1, …, h}) ∪ {h-β+b : #D(σ)_b = 0}`.
    Corrected,
}

/// Compare the orthodontic data of `w` and `w_sort`; `None` when they match.
pub fn sort_sequence_mismatch(w: &Permutation, clause: KAlphaClause) -> Option<String> {
    let p = primary_column_data(w);
    let s = Diagram::rothe(w).orthodontic_sequence().ok()?;
    let t = Diagram::rothe(&sort_of(w)).orthodontic_sequence().ok()?;
    if (&s.i, &s.j, &s.m) != (&t.i, &t.j, &t.m) {
        return Some("i, j or M changed under sorting".into());
    }
    let window: BTreeSet<usize> = (p.h - p.beta + 1..=p.h).collect();
    let groups = sigma_column_groups(w);
    for k in 1..=w.len() {
        let (actual, before) = (as_set(&s.k[k - 1]), as_set(&t.k[k - 1]));
        let expected = if k + 1 <= p.alpha || k > p.i1 {
            before
        } else if k == p.alpha {
            let mut e: BTreeSet<usize> = before.difference(&window).copied().collect();
            if clause == KAlphaClause::Corrected {
                e.extend(groups.get(&0).into_iter().flatten());
            }
            e
        } else {
            let a = k - p.alpha;
            let mut e = before;
            e.extend(groups.get(&a).into_iter().flatten());
            e
        };
        if actual != expected {
            return Some(format!("K_{k}: expected {expected:?}, found {actual:?}"));
        }
    }
    None
}

fn linear_product(cells: &BTreeSet<(usize, usize)>, n: usize) -> Polynomial {
    cells.iter().fold(Polynomial::one(n, n), |acc, &(a, b)| {
        &acc * &diffops::linear_factor(a, b, true, n, n).expect("cell inside the grid")
    })
}

fn sorting_suite(n: usize) -> (usize, Vec<Failure>) {
    let groth = families::family_table(Family::DoubleGrothendieck, n);
    let pds = if n <= 6 { pipedreams::pipe_dream_table(n).ok() } else { None };
    sweep(Permutation::all(n), |w| {
        let mut out = Vec::new();
        let sorted = sort_of(w);
        let (dw, ds) = (Diagram::rothe(w), Diagram::rothe(&sorted));
        let big: BTreeSet<_> = dw.cells().into_iter().collect();
        let small: BTreeSet<_> = ds.cells().into_iter().collect();
        if !small.is_subset(&big) {
            out.push(Failure::new(w, "D(w_sort) is not contained in D(w)"));
        }
        let diff: BTreeSet<_> = big.difference(&small).copied().collect();
        if diff != predicted_sort_difference(w) {
            out.push(Failure::new(w, "difference set does not match the primary data"));
        }
        if let Some(msg) = sort_sequence_mismatch(w, KAlphaClause::Corrected) {
            out.push(Failure::new(w, msg));
        }
        let factor = linear_product(&diff, n);
        match groth[w].div_exact(&factor) {
            Ok(Some(q)) if q == groth[&sorted] => {}
            _ => out.push(Failure::new(w, "G_w is not the cell product times G_{w_sort}")),
        }
        if let (Ok(a), Ok(b)) = (script_g(&dw, InnerOmega::Barred), script_g(&ds, InnerOmega::Barred)) {
            if a != &factor * &b {
                out.push(Failure::new(w, "orthodontia formula does not factor under sorting"));
            }
        }
        if let Some(table) = &pds {
            if let Some(cell) = forced_cross_violation(w, &table[w]) {
                out.push(Failure::new(w, cell));
            }
        }
        out
    })
}

/// The cells `{(i, j) : i <= #D(w)_j, j <= h}` that every pipe dream of `w` must cross.
pub fn forced_cross_cells(w: &Permutation) -> Vec<(usize, usize)> {
    let p = primary_column_data(w);
    let sizes = column_sizes(w);
    (1..=p.h.min(w.len())).flat_map(|j| (1..=sizes[j - 1]).map(move |i| (i, j))).collect()
}

fn forced_cross_violation(w: &Permutation, pds: &[PipeDream]) -> Option<String> {
    let cells = forced_cross_cells(w);
    pds.iter().find_map(|p| {
        cells
            .iter()
            .find(|&&(i, j)| !p.contains(i, j))
            .map(|c| format!("pipe dream {:?} has no cross at {c:?}", p.crosses()))
    })
}

/// The shape of the first orthodontic steps of a sorted nonidentity `w`.
pub fn sorted_structure_mismatch(w: &Permutation) -> Option<String> {
    let p = primary_column_data(w);
    let s = match Diagram::rothe(w).orthodontic_sequence() {
        Ok(s) => s,
        Err(e) => return Some(e.to_string()),
    };
    if s.steps() < p.beta {
        return Some(format!("only {} steps, expected at least beta = {}", s.steps(), p.beta));
    }
    for k in 1..=p.beta {
        if s.i[k - 1] + k != p.i1 + 1 {
            return Some(format!("row index i_{k} = {}", s.i[k - 1]));
        }
        if s.j[k - 1] != (p.h - p.beta + k) as isize {
            return Some(format!("column index j_{k} = {}", s.j[k - 1]));
        }
    }
    let window: BTreeSet<usize> = (p.h - p.beta + 1..=p.h).collect();
    if p.alpha > 0 && !as_set(&s.k[p.alpha - 1]).is_superset(&window) {
        return Some("K_alpha misses part of the window".into());
    }
    if let Some(k) = (p.alpha + 1..=p.i1).find(|&k| !s.k[k - 1].is_empty()) {
        return Some(format!("K_{k} is nonempty"));
    }
    if let Some(k) = (1..p.beta).find(|&k| !s.m[k - 1].is_empty()) {
        return Some(format!("M_{k} is nonempty"));
    }
    None
}

/// The predicted orthodontic data of `w s_{i_1} ⋯ s_{α+1}` from that of `w`.
pub fn predicted_descent_sequence(w: &Permutation, s: &OrthodonticSequence) -> OrthodonticSequence {
    let p = primary_column_data(w);
    let window: BTreeSet<usize> = (p.h - p.beta + 1..=p.h).collect();
    let mut k = s.k.clone();
    if p.alpha > 0 {
        k[p.alpha - 1] = as_set(&s.k[p.alpha - 1]).difference(&window).copied().collect();
    }
    let mut merged = window;
    merged.extend(s.m[p.beta - 1].iter().copied());
    k[p.alpha] = merged.into_iter().collect();
    OrthodonticSequence {
        k,
        i: s.i[p.beta..].to_vec(),
        j: s.j[p.beta..].to_vec(),
        m: s.m[p.beta..].to_vec(),
    }
}

/// For the chosen endpoint: the orthodontic data of `w'` and
/// `G_w = ∂̄_{i_1} ⋯ ∂̄_e G_{w'}`.
pub fn descent_mismatch(w: &Permutation, endpoint: OsEndpoint, groth: &HashMap<Permutation, Polynomial>) -> Option<String> {
    let p = primary_column_data(w);
    let next = match descending_product(w, endpoint) {
        Ok(v) => v,
        Err(e) => return Some(format!("w' undefined: {e}")),
    };
    let s = Diagram::rothe(w).orthodontic_sequence().ok()?;
    let actual = Diagram::rothe(&next).orthodontic_sequence().ok()?;
    if actual != predicted_descent_sequence(w, &s) {
        return Some(format!("w' = {next}: orthodontic data does not match"));
    }
    let last = match endpoint {
        OsEndpoint::Alpha => p.alpha,
        OsEndpoint::AlphaPlusOne => p.alpha + 1,
    };
    let word: Vec<Operator> = (last..=p.i1).rev().map(Operator::PartialBar).collect();
    match diffops::apply_word(&word, &groth[&next]) {
        Ok(g) if g == groth[w] => None,
        _ => Some(format!("w' = {next}: isobaric word does not recover G_w")),
    }
}

fn sorted_nonidentity(n: usize) -> Vec<Permutation> {
    Permutation::all(n).into_iter().filter(|w| !w.is_identity() && is_sorted(w)).collect()
}

fn sorted_descent_suite(n: usize, endpoint: OsEndpoint) -> (usize, Vec<Failure>) {
    let groth = families::family_table(Family::DoubleGrothendieck, n);
    sweep(sorted_nonidentity(n), |w| {
        let mut out = Vec::new();
        if let Some(msg) = sorted_structure_mismatch(w) {
            out.push(Failure::new(w, msg));
        }
        if let Some(msg) = descent_mismatch(w, endpoint, &groth) {
            out.push(Failure::new(w, format!("descent: {msg}")));
        }
        out
    })
}

/// A random integer polynomial with `terms` terms, coefficients in
/// `[-3, 3]`, total degree at most `max_total` and each exponent at most `max_each`.
pub fn random_polynomial(rng: &mut impl Rng, nx: usize, ny: usize, terms: usize, max_total: u32, max_each: u32) -> Polynomial {
    let mut out = Polynomial::zero(nx, ny);
    for _ in 0..terms {
        let mut budget = max_total;
        let mut exps = vec![0u8; nx + ny];
        let mut order: Vec<usize> = (0..nx + ny).collect();
        for k in (1..order.len()).rev() {
            order.swap(k, rng.random_range(0..=k));
        }
        for idx in order {
            let e = rng.random_range(0..=budget.min(max_each));
            exps[idx] = e as u8;
            budget -= e;
        }
        let c: Coeff = rng.random_range(-3..=3);
        out = &out + &Polynomial::from_terms(nx, ny, [(Monomial::from_exponents(&exps), c)]);
    }
    out
}

fn ops_of_kind(kind: usize, i: usize) -> Operator {
    match kind {
        0 => Operator::Partial(i),
        1 => Operator::PartialBar(i),
        2 => Operator::Pi(i),
        _ => Operator::PiBar(i),
    }
}

fn apply(word: &[Operator], f: &Polynomial) -> Polynomial {
    diffops::apply_word(word, f).expect("indices chosen in range")
}

/// Braid, commutation, nilpotence, idempotence and the defining quotient
/// identity on one polynomial. Returns the first failing identity.
pub fn operator_identities(f: &Polynomial) -> Option<String> {
    let n = f.nx();
    let names = ["partial", "isobaric", "demazure", "demazure-lascoux"];
    for (kind, name) in names.iter().enumerate() {
        let op = |i| ops_of_kind(kind, i);
        for i in 1..n.saturating_sub(1) {
            let lhs = apply(&[op(i), op(i + 1), op(i)], f);
            let rhs = apply(&[op(i + 1), op(i), op(i + 1)], f);
            if lhs != rhs {
                return Some(format!("{name}: braid relation fails at i = {i}"));
            }
        }
        for i in 1..n {
            for j in i + 2..n {
                if apply(&[op(i), op(j)], f) != apply(&[op(j), op(i)], f) {
                    return Some(format!("{name}: commutation fails at ({i}, {j})"));
                }
            }
            let twice = apply(&[op(i), op(i)], f);
            let bad = match kind {
                0 => !twice.is_zero(),
                2 | 3 => twice != apply(&[op(i)], f),
                _ => false,
            };
            if bad {
                return Some(format!("{name}: square law fails at i = {i}"));
            }
        }
    }
    for i in 1..n {
        let d = diffops::divided_difference(f, i).expect("in range");
        let xi = Polynomial::x(i, n, f.ny()).expect("in range");
        let xj = Polynomial::x(i + 1, n, f.ny()).expect("in range");
        if &d * &(&xi - &xj) != f - &f.swap_x(i).expect("in range") {
            return Some(format!("quotient identity fails at i = {i}"));
        }
        if f.ny() > 0 {
            let lhs = diffops::pi_double(f, i, 1).expect("in range").substitute_y(0);
            let rhs = diffops::demazure(&f.substitute_y(0), i).expect("in range");
            if lhs != rhs {
                return Some(format!("doubled demazure does not reduce at y = 0, i = {i}"));
            }
        }
    }
    None
}

fn permute_x(f: &Polynomial, perm: &[usize]) -> Polynomial {
    let nx = f.nx();
    Polynomial::from_terms(
        nx,
        f.ny(),
        f.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            for (k, &target) in perm.iter().enumerate() {
                e[target] = m.exponents()[k];
            }
            let _ = nx;
            (Monomial::from_exponents(&e), c)
        }),
    )
}

/// `Σ_σ σ(f)` over permutations of the `x` variables in `block` (0-based).
fn symmetrize(f: &Polynomial, block: std::ops::Range<usize>) -> Polynomial {
    let size = block.len();
    let mut out = Polynomial::zero(f.nx(), f.ny());
    for sigma in Permutation::all(size) {
        let mut perm: Vec<usize> = (0..f.nx() + f.ny()).collect();
        for (k, &v) in sigma.images().iter().enumerate() {
            perm[block.start + k] = block.start + v - 1;
        }
        out = &out + &permute_x(f, &perm);
    }
    out
}

/// One instance of the identity turning nested doubled operators into a
/// product followed by isobaric operators.
pub fn pi_to_del_instance(rng: &mut impl Rng, k: usize) -> Option<String> {
    let i = 1;
    let nx = i + k + 1;
    let ny = k + 1;
    let seed = random_polynomial(rng, nx, ny, 2, 2, 2);
    let g = symmetrize(&seed, i..i + k + 1);
    let js: Vec<usize> = (0..=k).map(|_| rng.random_range(1..=ny)).collect();
    let lhs_word: Vec<Operator> = (0..=k).rev().map(|a| Operator::PiBarDouble(i + a, js[a])).collect();
    let lhs = apply(&lhs_word, &g);
    let product = js.iter().fold(Polynomial::one(nx, ny), |acc, &j| {
        &acc * &diffops::linear_factor(i, j, true, nx, ny).expect("in range")
    });
    let rhs_word: Vec<Operator> = (0..=k).rev().map(|a| Operator::PartialBar(i + a)).collect();
    let rhs = apply(&rhs_word, &(&product * &g));
    (lhs != rhs).then(|| format!("k = {k}, j = {js:?}"))
}

fn operators_suite(n: usize, opts: &SuiteOptions) -> (usize, Vec<Failure>) {
    let items: Vec<u64> = (0..opts.operator_samples as u64).collect();
    let (mut checks, mut failures) = sweep(items, |&s| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ s.wrapping_mul(0x9e37_79b9));
        let nx = if n >= 3 { rng.random_range(3..=n) } else { n.max(2) };
        let terms = rng.random_range(1..=6);
        let f = random_polynomial(&mut rng, nx, 1, terms, 4, 4);
        operator_identities(&f)
            .map(|m| vec![Failure::new(format!("sample {s}"), m)])
            .unwrap_or_default()
    });
    let pd_items: Vec<(usize, u64)> = (0..=3usize).flat_map(|k| (0..5u64).map(move |s| (k, s))).collect();
    let (c2, f2) = sweep(pd_items, |&(k, s)| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1000 * k as u64 + s));
        pi_to_del_instance(&mut rng, k)
            .map(|m| vec![Failure::new("pi-to-del", m)])
            .unwrap_or_default()
    });
    checks += c2;
    failures.extend(f2);
    (checks, failures)
}

fn x_minus_one_product(i: usize, nx: usize, ny: usize) -> Polynomial {
    (1..=i).fold(Polynomial::one(nx, ny), |acc, a| {
        &acc * &(&Polynomial::x(a, nx, ny).expect("in range") - &Polynomial::one(nx, ny))
    })
}

/// The four specialization and flip identities on one random instance.
pub fn specialization_identities(rng: &mut impl Rng, n: usize) -> Option<String> {
    let ny = 3;
    let i = rng.random_range(1..=n);
    let cols: Vec<usize> = (1..=ny).filter(|_| rng.random_bool(0.5)).collect();
    let omega = diffops::omega(i, &cols, false, n, ny).expect("in range").substitute_y(-1);
    let expect = x_minus_one_product(i, n, 0).pow(cols.len() as u32);
    if omega != expect {
        return Some(format!("omega specialization: i = {i}, M = {cols:?}"));
    }

    let m = rng.random_range(0..=3);
    let terms = rng.random_range(1..=5);
    let f = random_polynomial(rng, n, 0, terms, 3 * n as u32, m);
    let lhs = (&x_minus_one_product(i, n, 0) * &f).flip(m + 1).expect("degree bounded");
    let rhs = diffops::phi(&f.flip(m).expect("degree bounded"), n - i).expect("in range");
    if lhs != rhs {
        return Some(format!("omega flip: i = {i}, m = {m}"));
    }

    if n >= 2 {
        let i = rng.random_range(1..n);
        let j = rng.random_range(1..=ny);
        let g = random_polynomial(rng, n, ny, terms, 4, 3);
        let lhs = diffops::pi_double(&g, i, j).expect("in range").substitute_y_at(j, -1).expect("in range");
        let xi = Polynomial::x(i, n, ny).expect("in range");
        let shifted = &(&xi - &Polynomial::one(n, ny)) * &g.substitute_y_at(j, -1).expect("in range");
        let rhs = diffops::divided_difference(&shifted, i).expect("in range");
        if lhs != rhs {
            return Some(format!("pi specialization: i = {i}, j = {j}"));
        }

        let xi = Polynomial::x(i, n, 0).expect("in range");
        let inner = diffops::divided_difference(&(&(&xi - &Polynomial::one(n, 0)) * &f), i).expect("in range");
        let lhs = inner.flip(m).expect("degree bounded");
        let rhs = diffops::demazure_lascoux(&f.flip(m).expect("degree bounded"), n - i).expect("in range");
        if lhs != rhs {
            return Some(format!("pi flip: i = {i}, m = {m}"));
        }
    }
    None
}

/// `π̄_i 𝔏_α` against the prediction: with `swapped` false the image is
/// `𝔏_α` when `α_i > α_{i+1}` and `𝔏_{α s_i}` when `α_i < α_{i+1}`; with
/// `swapped` true the two cases trade places. Equal neighbours are reported
/// separately by the ambiguity report.
pub fn lascoux_action_mismatch(alpha: &Composition, i: usize, swapped: bool, cache: &LascouxCache) -> Option<String> {
    let p = alpha.parts();
    let image = diffops::demazure_lascoux(&cache.get(alpha), i).expect("in range");
    let moves = (p[i - 1] < p[i]) != swapped;
    let expect = if moves { cache.get(&alpha.swap(i).expect("in range")) } else { cache.get(alpha) };
    (image != *expect).then(|| format!("alpha = {alpha}, i = {i}"))
}

/// `𝔏_α = x_1^ℓ ⋯ x_i^ℓ 𝔏_{α(i)}(x_{i+1}, …)` for `α ∈ C_{n,k,ℓ}`, `i <= k`.
pub fn constant_prefix_mismatch(alpha: &Composition, k: usize, cache: &LascouxCache) -> Option<String> {
    let n = alpha.len();
    let l = alpha.parts()[0];
    let full = cache.get(alpha);
    for i in 1..=k {
        let mut exps = vec![0u32; n];
        exps[..i].fill(l);
        let lead = Polynomial::monomial(&exps, &[], 1).expect("small");
        let tail = families::lascoux(&alpha.tail(i)).shift_x(i, n).expect("fits");
        if *full != &lead * &tail {
            return Some(format!("alpha = {alpha}, k = {k}, i = {i}"));
        }
    }
    None
}

/// Members of `C_{n,k,ℓ}`: first `k` parts equal `ℓ`, all parts at most `ℓ`.
pub fn constant_prefix_compositions(n: usize, k: usize, l: u32) -> Vec<Composition> {
    Composition::all_bounded(n - k, l)
        .into_iter()
        .map(|rest| {
            let mut parts = vec![l; k];
            parts.extend_from_slice(rest.parts());
            Composition::new(parts)
        })
        .collect()
}

/// The `π̄` / `φ` word predicted for the flipped specialization of `𝒮_D`.
///
/// Nested form: `φ_n` once per empty column, then for each step from the
/// innermost out `φ_{n-i_k}^{|M_k|}` followed by `π̄_{n-i_k}`, and finally
/// `φ_{n-a}^{|K_a|}`. With `hoist` every `φ` is applied first, which is the
/// form valid for inclusion-ordered diagrams.
pub fn operator_word_prediction(d: &Diagram, hoist: bool) -> Result<Polynomial> {
    let s = d.orthodontic_sequence()?;
    let n = d.nrows();
    let empty = d.column_masks().iter().filter(|&&m| m == 0).count();
    let mut phis: Vec<usize> = vec![n; empty];
    let mut word: Vec<Operator> = Vec::new();
    for k in (0..s.steps()).rev() {
        let step_phis = vec![n - s.i[k]; s.m[k].len()];
        if hoist {
            phis.extend(step_phis);
        } else {
            word.extend(step_phis.into_iter().map(Operator::Phi));
        }
        word.push(Operator::PiBar(n - s.i[k]));
    }
    for (a, cols) in s.k.iter().enumerate() {
        let ks = vec![n - a - 1; cols.len()];
        if hoist {
            phis.extend(ks);
        } else {
            word.extend(ks.into_iter().map(Operator::Phi));
        }
    }
    let mut f = Polynomial::one(n, 0);
    for k in phis {
        f = diffops::phi(&f, k)?;
    }
    for op in word {
        f = op.apply(&f)?;
    }
    Ok(f)
}

fn specialization_suite(n: usize, opts: &SuiteOptions) -> (usize, Vec<Failure>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut absorb = |(c, f): (usize, Vec<Failure>)| {
        checks += c;
        failures.extend(f);
    };
    let items: Vec<u64> = (0..opts.identity_samples as u64).collect();
    absorb(sweep(items, |&s| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(0x4444 + s));
        let nx = rng.random_range(1..=n.max(1));
        specialization_identities(&mut rng, nx)
            .map(|m| vec![Failure::new(format!("sample {s}"), m)])
            .unwrap_or_default()
    }));

    let cache = LascouxCache::new();
    let small = n.min(4);
    let action_cases: Vec<(Composition, usize)> = (2..=small)
        .flat_map(|m| Composition::all_bounded(m, 3))
        .flat_map(|a| (1..a.len()).map(move |i| (a.clone(), i)))
        .filter(|(a, i)| a.parts()[i - 1] != a.parts()[*i])
        .collect();
    absorb(sweep(action_cases, |(a, i)| {
        lascoux_action_mismatch(a, *i, true, &cache)
            .map(|m| vec![Failure::new("lascoux action", m)])
            .unwrap_or_default()
    }));

    let prefix_cases: Vec<(Composition, usize)> = (1..=small)
        .flat_map(|m| (1..=m).flat_map(move |k| (0..=3).flat_map(move |l| constant_prefix_compositions(m, k, l).into_iter().map(move |a| (a, k)))))
        .collect();
    absorb(sweep(prefix_cases, |(a, k)| {
        constant_prefix_mismatch(a, *k, &cache)
            .map(|m| vec![Failure::new("constant prefix", m)])
            .unwrap_or_default()
    }));

    let tiny = n.min(3);
    let mut words: Vec<(usize, Vec<usize>)> = Vec::new();
    for m in 1..=tiny {
        for len in 1..=3usize {
            let mut stack: Vec<Vec<usize>> = (0..=m).map(|k| vec![k]).collect();
            while let Some(word) = stack.pop() {
                if word.len() == len {
                    words.push((m, word));
                    continue;
                }
                let last = *word.last().expect("nonempty");
                for k in 0..=last {
                    let mut next = word.clone();
                    next.push(k);
                    stack.push(next);
                }
            }
        }
    }
    words.sort();
    absorb(sweep(words, |(m, word)| {
        let f = word.iter().fold(Polynomial::one(*m, 0), |acc, &k| diffops::phi(&acc, k).expect("k <= n"));
        match lascoux_expand(&f, &cache) {
            Ok(e) if graded_positive(&e).positive => Vec::new(),
            _ => vec![Failure::new("phi words", format!("n = {m}, word = {word:?}"))],
        }
    }));

    let diagrams: Vec<Diagram> = (1..=tiny)
        .flat_map(|r| (1..=tiny).flat_map(move |c| Diagram::all(r, c)))
        .filter(|d| d.columns_ordered_by_inclusion())
        .collect();
    absorb(sweep(diagrams, |d| {
        let target = flipped_specialization(d);
        let nested = operator_word_prediction(d, false);
        let hoisted = operator_word_prediction(d, true);
        match (target, nested, hoisted) {
            (Ok(t), Ok(a), Ok(b)) if t == a && t == b => Vec::new(),
            _ => vec![Failure::new("operator word", d.to_string())],
        }
    }));

    let g21: Vec<(Composition, Polynomial)> = (1..=tiny)
        .flat_map(|m| {
            let g = stable_grothendieck(&Permutation::new(vec![2, 1]).expect("valid"), m).expect("stabilizes");
            Composition::all_bounded(m, 2).into_iter().map(move |a| (a, g.clone()))
        })
        .collect();
    absorb(sweep(g21, |(a, g)| {
        let f = &*cache.get(a) * g;
        match lascoux_expand(&f, &cache) {
            Ok(e) if graded_positive(&e).positive && e.baseline_degree == Some(a.size() + 1) => Vec::new(),
            _ => vec![Failure::new("stable product", a.to_string())],
        }
    }));
    (checks, failures)
}

fn triangularity_suite(n: usize, opts: &SuiteOptions) -> (usize, Vec<Failure>) {
    let cache = LascouxCache::new();
    let mut checks = 0;
    let mut failures = Vec::new();
    for m in 1..=n.min(4) {
        checks += (5usize).pow(m as u32);
        failures.extend(
            triangularity_failures(m, 4, &cache)
                .into_iter()
                .map(|(beta, msg)| Failure::new(beta, msg)),
        );
    }
    let items: Vec<u64> = (0..opts.identity_samples as u64).collect();
    let (c, f) = sweep(items, |&s| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(0x7777 + s));
        let nx = rng.random_range(1..=n.clamp(1, 4));
        let terms = rng.random_range(0..=8);
        let f = random_polynomial(&mut rng, nx, 0, terms, 3 * nx as u32, 3);
        match lascoux_expand(&f, &cache) {
            Ok(e) if e.reconstruct() == f => Vec::new(),
            Ok(_) => vec![Failure::new(format!("sample {s}"), "round trip differs")],
            Err(e) => vec![Failure::new(format!("sample {s}"), e.to_string())],
        }
    });
    (checks + c, failures.into_iter().chain(f).collect())
}

/// Expansion via an uncached, differently-ordered construction of the basis.
pub fn independent_expansion(f: &Polynomial) -> Result<crate::lascouxbasis::LascouxExpansion> {
    expand_with(f, |beta| std::sync::Arc::new(families::lascoux_along_path(beta, families::PathChoice::Last)))
}

/// Outcome of one reading of an ambiguous statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl VariantOutcome {
    fn from_results(name: &str, results: Vec<Option<String>>) -> Self {
        let checked = results.len();
        let bad: Vec<String> = results.into_iter().flatten().collect();
        VariantOutcome {
            name: name.to_string(),
            checked,
            failures: bad.len(),
            first_counterexample: bad.into_iter().next(),
        }
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSection {
    pub title: String,
    pub scope: String,
    pub variants: Vec<VariantOutcome>,
}

impl ReportSection {
    /// Names of the readings with no failures.
    pub fn winners(&self) -> Vec<&str> {
        self.variants.iter().filter(|v| v.holds()).map(|v| v.name.as_str()).collect()
    }

    pub fn variant(&self, name: &str) -> Option<&VariantOutcome> {
        self.variants.iter().find(|v| v.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityReport {
    pub sections: Vec<ReportSection>,
}

impl AmbiguityReport {
    pub fn section(&self, title_prefix: &str) -> Option<&ReportSection> {
        self.sections.iter().find(|s| s.title.starts_with(title_prefix))
    }
}

impl fmt::Display for AmbiguityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Ambiguity report")?;
        writeln!(f, "================")?;
        for s in &self.sections {
            writeln!(f)?;
            writeln!(f, "{}", s.title)?;
            writeln!(f, "  scope: {}", s.scope)?;
            for v in &s.variants {
                let status = if v.holds() { "holds" } else { "FAILS" };
                writeln!(f, "  - {:<28} {status:<6} ({} checked, {} failures)", v.name, v.checked, v.failures)?;
                if let Some(cx) = &v.first_counterexample {
                    writeln!(f, "      first counterexample: {cx}")?;
                }
            }
            let winners = s.winners();
            if winners.is_empty() {
                writeln!(f, "  => no reading holds")?;
            } else {
                writeln!(f, "  => {}", winners.join(", "))?;
            }
        }
        Ok(())
    }
}

fn omega_section(nmax: usize) -> ReportSection {
    let groth: Vec<HashMap<Permutation, Polynomial>> =
        (0..=nmax).map(|n| if n >= 2 { families::family_table(Family::DoubleGrothendieck, n) } else { HashMap::new() }).collect();
    let perms: Vec<Permutation> = (2..=nmax).flat_map(Permutation::all).collect();
    let run = |inner: InnerOmega| -> Vec<Option<String>> {
        perms
            .par_iter()
            .map(|w| match script_g(&Diagram::rothe(w), inner) {
                Ok(g) if g == groth[w.len()][w] => None,
                Ok(_) => Some(format!("w = {w}")),
                Err(e) => Some(format!("w = {w}: {e}")),
            })
            .collect()
    };
    ReportSection {
        title: "Inner omega factors in the doubled Grothendieck orthodontia formula".into(),
        scope: format!("script_G(rothe(w)) = G_w for all w in S_2..S_{nmax}"),
        variants: vec![
            VariantOutcome::from_results("barred inner omega", run(InnerOmega::Barred)),
            VariantOutcome::from_results("unbarred inner omega", run(InnerOmega::Unbarred)),
        ],
    }
}

fn endpoint_section(nmax: usize) -> ReportSection {
    let mut alpha = Vec::new();
    let mut alpha_plus_one = Vec::new();
    for n in 2..=nmax {
        let groth = families::family_table(Family::DoubleGrothendieck, n);
        for w in sorted_nonidentity(n) {
            let tag = |m: Option<String>| m.map(|m| format!("w = {w}: {m}"));
            alpha.push(tag(descent_mismatch(&w, OsEndpoint::Alpha, &groth)));
            alpha_plus_one.push(tag(descent_mismatch(&w, OsEndpoint::AlphaPlusOne, &groth)));
        }
    }
    ReportSection {
        title: "Endpoint of the descending product in the second covering relation".into(),
        scope: format!("orthodontic data of w' and G_w = isobaric word on G_w', sorted nonidentity w in S_2..S_{nmax}"),
        variants: vec![
            VariantOutcome::from_results("w s_i1 ... s_alpha", alpha),
            VariantOutcome::from_results("w s_i1 ... s_(alpha+1)", alpha_plus_one),
        ],
    }
}

fn script_s_section(rows: usize, cols: usize) -> ReportSection {
    let diagrams: Vec<Diagram> = (1..=rows)
        .flat_map(|r| (1..=cols).flat_map(move |c| Diagram::all(r, c)))
        .filter(|d| d.is_percent_avoiding())
        .collect();
    let pairs: Vec<(Diagram, Polynomial, Polynomial)> = diagrams
        .par_iter()
        .map(|d| {
            let g = script_g(d, InnerOmega::Barred).expect("%-avoiding");
            (d.clone(), g, script_s(d).expect("%-avoiding"))
        })
        .collect();
    let compare = |negate: bool| -> Vec<Option<String>> {
        pairs
            .iter()
            .map(|(d, g, s)| {
                let base = if negate { g.negate_y() } else { g.clone() };
                (base.lowest_degree_part().ok().as_ref() != Some(s)).then(|| format!("D = {d}"))
            })
            .collect()
    };
    let leading: Vec<Option<String>> = pairs
        .iter()
        .map(|(d, _, s)| {
            let row_counts = d.row_counts();
            let ys = vec![0u32; s.ny()];
            (s.coeff(&row_counts, &ys) != 1).then(|| format!("D = {d}"))
        })
        .collect();
    ReportSection {
        title: "Relation between the doubled Schubert and Grothendieck orthodontia formulas".into(),
        scope: format!("all %-avoiding D in [r] x [c], r <= {rows}, c <= {cols}"),
        variants: vec![
            VariantOutcome::from_results("S_D = lowest part of G_D", compare(false)),
            VariantOutcome::from_results("S_D = lowest part of G_D(x,-y)", compare(true)),
            VariantOutcome::from_results("x^D has coefficient 1 in S_D", leading),
        ],
    }
}

fn k_alpha_section(nmax: usize) -> ReportSection {
    let perms = Permutation::all(nmax);
    let run = |clause| perms.par_iter().map(|w| sort_sequence_mismatch(w, clause).map(|m| format!("w = {w}: {m}"))).collect();
    ReportSection {
        title: "K_alpha clause when passing from w_sort to w".into(),
        scope: format!("all w in S_{nmax}"),
        variants: vec![
            VariantOutcome::from_results("literal: K'_alpha minus window", run(KAlphaClause::Literal)),
            VariantOutcome::from_results("keeps columns with #D(sigma)_b = 0", run(KAlphaClause::Corrected)),
        ],
    }
}

fn dominant_sigma_section(nmax: usize) -> ReportSection {
    let dominant: Vec<Permutation> = Permutation::all(nmax)
        .into_iter()
        .filter(|w| w.is_dominant() && !w.is_identity())
        .collect();
    let as_sorted: Vec<Option<String>> = dominant
        .iter()
        .map(|w| sorted_structure_mismatch(w).map(|m| format!("w = {w} treated as sorted: {m}")))
        .collect();
    let groth = families::family_table(Family::DoubleGrothendieck, nmax);
    let as_unsorted: Vec<Option<String>> = dominant
        .iter()
        .map(|w| {
            let diff = predicted_sort_difference(w);
            let ok = sort_of(w).is_identity()
                && diff == Diagram::rothe(w).cells().into_iter().collect()
                && groth[w].div_exact(&linear_product(&diff, nmax)).ok().flatten() == Some(Polynomial::one(nmax, nmax));
            (!ok).then(|| format!("w = {w}"))
        })
        .collect();
    ReportSection {
        title: "sigma(w) for dominant w".into(),
        scope: format!("dominant nonidentity w in S_{nmax}"),
        variants: vec![
            VariantOutcome::from_results("sigma = identity (w sorted)", as_sorted),
            VariantOutcome::from_results("sigma = w (w unsorted, w_sort = id)", as_unsorted),
        ],
    }
}

fn pi_spec_section(samples: usize, seed: u64) -> ReportSection {
    let run = |inner_value: Coeff| -> Vec<Option<String>> {
        (0..samples as u64)
            .map(|s| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9999 + s));
                let n = rng.random_range(2..=4);
                let (i, j) = (rng.random_range(1..n), rng.random_range(1..=2));
                let g = random_polynomial(&mut rng, n, 2, 4, 4, 3);
                let lhs = diffops::pi_double(&g, i, j).expect("in range").substitute_y_at(j, -1).expect("in range");
                let xi = Polynomial::x(i, n, 2).expect("in range");
                let shifted = &(&xi - &Polynomial::one(n, 2)) * &g.substitute_y_at(j, inner_value).expect("in range");
                (lhs != diffops::divided_difference(&shifted, i).expect("in range")).then(|| format!("f = {g}, i = {i}, j = {j}"))
            })
            .collect()
    };
    ReportSection {
        title: "Inner substitution in the doubled Demazure specialization".into(),
        scope: format!("{samples} random f, pi_(i,j)(f) at y_j = -1 against d_i((x_i - 1) f')"),
        variants: vec![
            VariantOutcome::from_results("f' = f at y_j = 1", run(1)),
            VariantOutcome::from_results("f' = f at y_j = -1", run(-1)),
        ],
    }
}

fn lascoux_action_section(cache: &LascouxCache) -> ReportSection {
    let items: Vec<(Composition, usize)> = (2..=4)
        .flat_map(|m| Composition::all_bounded(m, 3))
        .flat_map(|a| (1..a.len()).map(move |i| (a.clone(), i)))
        .collect();
    let (equal, distinct): (Vec<_>, Vec<_>) = items.into_iter().partition(|(a, i)| a.parts()[i - 1] == a.parts()[*i]);
    let run = |swapped| distinct.par_iter().map(|(a, i)| lascoux_action_mismatch(a, *i, swapped, cache)).collect();
    let fixed = equal
        .par_iter()
        .map(|(a, i)| {
            let image = diffops::demazure_lascoux(&cache.get(a), *i).expect("in range");
            (image != *cache.get(a)).then(|| format!("alpha = {a}, i = {i}"))
        })
        .collect();
    ReportSection {
        title: "Demazure-Lascoux operator applied to L_alpha".into(),
        scope: "entries <= 3, n <= 4".into(),
        variants: vec![
            VariantOutcome::from_results("fixed iff alpha_i > alpha_(i+1)", run(false)),
            VariantOutcome::from_results("fixed iff alpha_i < alpha_(i+1)", run(true)),
            VariantOutcome::from_results("fixed when alpha_i = alpha_(i+1)", fixed),
        ],
    }
}

/// Evaluate every competing reading and collect the outcomes.
pub fn ambiguity_report(nmax: usize) -> AmbiguityReport {
    let cache = LascouxCache::new();
    AmbiguityReport {
        sections: vec![
            omega_section(nmax),
            endpoint_section(nmax),
            script_s_section(3, 3),
            k_alpha_section(nmax),
            dominant_sigma_section(nmax),
            pi_spec_section(50, 7),
            lascoux_action_section(&cache),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm99".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { operator_samples: 20, identity_samples: 20, ..Default::default() };
        let r = run_suite(Suite::OrthodontiaFormula, 4, &opts);
        assert_eq!(r.checks, 24);
        assert!(r.passed(), "{:?}", r.failures);
        let r = run_suite(Suite::OrthodontiaFormula, 2, &opts);
        assert_eq!(r.checks, 2);
        for s in [Suite::DoubleSchubert, Suite::Sorting, Suite::SortedDescent, Suite::Operators] {
            let r = run_suite(s, 4, &opts);
            assert!(r.passed(), "{s}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }

    #[test]
    fn prediction_for_example_permutation() {
        let w: Permutation = "68342751".parse().unwrap();
        let diff = predicted_sort_difference(&w);
        let big: BTreeSet<_> = Diagram::rothe(&w).cells().into_iter().collect();
        let small: BTreeSet<_> = Diagram::rothe(&sort_of(&w)).cells().into_iter().collect();
        assert_eq!(diff, big.difference(&small).copied().collect());
        assert_eq!(diff.len(), 2);
    }

    #[test]
    fn symmetrized_polynomials_are_killed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_polynomial(&mut rng, 4, 1, 3, 3, 3);
        let g = symmetrize(&f, 1..4);
        assert!(diffops::divided_difference(&g, 2).unwrap().is_zero());
        assert!(diffops::divided_difference(&g, 3).unwrap().is_zero());
    }
}
