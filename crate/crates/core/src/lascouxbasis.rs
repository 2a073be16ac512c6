//! Expansion in the Lascoux basis, graded positivity, and the scan pipelines
//! built on them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::Diagram;
use crate::diffops::phi;
use crate::error::{Error, Result};
use crate::families::{lascoux, script_s, LascouxCache};
use crate::permcomb::{Composition, Permutation};
use crate::polyring::{Coeff, Polynomial};

/// `f = Σ coeffs[α] 𝔏_α`, with `baseline_degree` the lowest degree of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LascouxExpansion {
    pub n: usize,
    pub coeffs: BTreeMap<Composition, Coeff>,
    pub baseline_degree: Option<u32>,
}

impl LascouxExpansion {
    /// `Σ c_α 𝔏_α`, recomputed from scratch.
    pub fn reconstruct(&self) -> Polynomial {
        self.coeffs
            .iter()
            .fold(Polynomial::zero(self.n, 0), |acc, (a, &c)| &acc + &lascoux(a).scale(c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in canonical order (total degree, then composition).
    pub fn sorted_terms(&self) -> Vec<(&Composition, Coeff)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(a, &c)| (a, c)).collect();
        v.sort_by(|a, b| (a.0.size(), a.0).cmp(&(b.0.size(), b.0)));
        v
    }
}

impl std::fmt::Display for LascouxExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (k, c.abs()) {
                (0, 1) if c < 0 => write!(f, "-")?,
                (0, 1) => {}
                (0, m) => write!(f, "{}{m}*", if c < 0 { "-" } else { "" })?,
                (_, 1) => write!(f, " {sign} ")?,
                (_, m) => write!(f, " {sign} {m}*")?,
            }
            write!(f, "L[{a}]")?;
        }
        Ok(())
    }
}

/// Expand `f` (no `y` variables) using `provider` for the basis elements.
///
/// Each round takes the lowest degree part of the remainder, picks its
/// lex-smallest monomial `x^β` (x_1 most significant) and removes
/// `c 𝔏_β`. The round count is capped by the number of monomials with
/// every exponent at most the largest exponent of `f`.
pub fn expand_with<F>(f: &Polynomial, provider: F) -> Result<LascouxExpansion>
where
    F: Fn(&Composition) -> Arc<Polynomial>,
{
    if f.ny() != 0 {
        return Err(Error::YVariablesPresent);
    }
    let n = f.nx();
    let top = f.max_x_degree() as usize;
    let cap = (top + 1).checked_pow(n as u32).unwrap_or(usize::MAX);
    let mut remainder = f.clone();
    let mut coeffs = BTreeMap::new();
    let mut rounds = 0usize;
    while let Some(d) = remainder.min_degree() {
        let (exps, c) = remainder
            .terms()
            .filter(|(m, _)| m.total_degree() == d)
            .map(|(m, c)| (m.exponents().to_vec(), c))
            .min()
            .expect("degree part is nonempty");
        let beta = Composition::new(exps.iter().map(|&e| e as u32).collect());
        if rounds >= cap {
            return Err(Error::ExpansionDiverged { cap, monomial: beta.parts().to_vec() });
        }
        rounds += 1;
        let basis = provider(&beta);
        remainder = &remainder - &basis.scale(c);
        let slot = coeffs.entry(beta.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            coeffs.remove(&beta);
        }
    }
    Ok(LascouxExpansion { n, coeffs, baseline_degree: f.min_degree() })
}

/// Expand `f` in the Lascoux basis, memoizing basis elements in `cache`.
pub fn lascoux_expand(f: &Polynomial, cache: &LascouxCache) -> Result<LascouxExpansion> {
    expand_with(f, |a| cache.get(a))
}

/// Outcome of the graded sign test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub positive: bool,
    pub violations: Vec<Composition>,
}

/// Graded nonnegativity: every `c_α` has sign `(-1)^{|α| - d0}`.
pub fn graded_positive(e: &LascouxExpansion) -> Verdict {
    let d0 = e.baseline_degree.unwrap_or(0);
    let violations: Vec<Composition> = e
        .coeffs
        .iter()
        .filter(|(a, &c)| {
            let odd = (a.size() as i64 - d0 as i64).rem_euclid(2) == 1;
            (c < 0) != odd
        })
        .map(|(a, _)| a.clone())
        .collect();
    Verdict { positive: violations.is_empty(), violations }
}

/// The expansion and verdict for one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub flipped: Polynomial,
    pub expansion: LascouxExpansion,
    pub verdict: Verdict,
}

/// `x_1^m ⋯ x_n^m 𝒮_D(x_n^{-1}, …, x_1^{-1}; -1, …, -1)` with `m` the
/// number of columns of `D`.
pub fn flipped_specialization(d: &Diagram) -> Result<Polynomial> {
    script_s(d)?.substitute_y(-1).flip(d.ncols() as u32)
}

/// Expand the flipped specialization of `𝒮_D` and test graded positivity.
/// With `relax` the inclusion-order precondition is waived.
pub fn positivity_check(d: &Diagram, relax: bool, cache: &LascouxCache) -> Result<DiagramCheck> {
    if !relax && !d.columns_ordered_by_inclusion() {
        return Err(Error::NotInclusionOrdered);
    }
    let flipped = flipped_specialization(d)?;
    let expansion = lascoux_expand(&flipped, cache)?;
    let verdict = graded_positive(&expansion);
    Ok(DiagramCheck { flipped, expansion, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Positive,
    Violation,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub alpha: Composition,
    pub c: Coeff,
}

/// One line of a scan report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub item: String,
    pub verdict: Outcome,
    pub expansion: Vec<ExpansionTerm>,
    pub d0: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl ScanRecord {
    fn from_result(item: String, result: Result<LascouxExpansion>) -> Self {
        match result {
            Ok(e) => {
                let verdict = if graded_positive(&e).positive { Outcome::Positive } else { Outcome::Violation };
                let expansion = e
                    .sorted_terms()
                    .into_iter()
                    .map(|(a, c)| ExpansionTerm { alpha: a.clone(), c })
                    .collect();
                ScanRecord { item, verdict, expansion, d0: e.baseline_degree, error: None }
            }
            Err(err) => ScanRecord {
                item,
                verdict: Outcome::Error,
                expansion: Vec::new(),
                d0: None,
                error: Some(err.to_string()),
            },
        }
    }

    /// The expansion carried by the record.
    pub fn to_expansion(&self, n: usize) -> LascouxExpansion {
        LascouxExpansion {
            n,
            coeffs: self.expansion.iter().map(|t| (t.alpha.clone(), t.c)).collect(),
            baseline_degree: self.d0,
        }
    }
}

/// Counts over a finished scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub checked: usize,
    pub positive: usize,
    pub violations: usize,
    pub errors: usize,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> Self {
        let count = |o| records.iter().filter(|r| r.verdict == o).count();
        ScanSummary {
            checked: records.len(),
            positive: count(Outcome::Positive),
            violations: count(Outcome::Violation),
            errors: count(Outcome::Error),
        }
    }

    pub fn all_positive(&self) -> bool {
        self.positive == self.checked
    }
}

/// A scan item `φ_i(𝔏_α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiItem {
    pub alpha: Composition,
    pub i: usize,
}

impl PhiItem {
    pub fn key(&self) -> String {
        format!("alpha={};i={}", self.alpha, self.i)
    }

    pub fn polynomial(&self, cache: &LascouxCache) -> Result<Polynomial> {
        phi(&cache.get(&self.alpha), self.i)
    }
}

/// Items `(α, i)` for `α ∈ [0, max_entry]^n`, `i ∈ [n]`, in canonical order.
pub fn phi_lascoux_items(n: usize, max_entry: u32) -> Vec<PhiItem> {
    Composition::all_bounded(n, max_entry)
        .into_iter()
        .flat_map(|alpha| (1..=n).map(move |i| PhiItem { alpha: alpha.clone(), i }))
        .collect()
}

/// Expand `φ_i(𝔏_α)` for every item and record the verdicts.
pub fn phi_lascoux_scan(n: usize, max_entry: u32, cache: &LascouxCache) -> Vec<ScanRecord> {
    phi_lascoux_items(n, max_entry)
        .par_iter()
        .map(|item| {
            let result = item.polynomial(cache).and_then(|p| lascoux_expand(&p, cache));
            ScanRecord::from_result(item.key(), result)
        })
        .collect()
}

/// Run the diagram pipeline (inclusion order waived) on each diagram.
pub fn diagram_scan(diagrams: &[Diagram], cache: &LascouxCache) -> Vec<ScanRecord> {
    diagrams
        .par_iter()
        .map(|d| {
            let result = positivity_check(d, true, cache).map(|c| c.expansion);
            ScanRecord::from_result(d.to_string(), result)
        })
        .collect()
}

/// All %-avoiding diagrams in `[n] × [m]`, in enumeration order.
pub fn percent_avoiding_diagrams(n: usize, m: usize) -> Vec<Diagram> {
    Diagram::all(n, m).filter(|d| d.is_percent_avoiding()).collect()
}

/// The diagram pipeline on every %-avoiding `D ⊆ [n] × [m]`.
pub fn percent_avoiding_scan(n: usize, m: usize, cache: &LascouxCache) -> Vec<ScanRecord> {
    diagram_scan(&percent_avoiding_diagrams(n, m), cache)
}

/// The diagram pipeline on Rothe diagrams; items are keyed by permutation.
pub fn rothe_scan(perms: &[Permutation], cache: &LascouxCache) -> Vec<ScanRecord> {
    perms
        .par_iter()
        .map(|w| {
            let result = positivity_check(&Diagram::rothe(w), true, cache).map(|c| c.expansion);
            ScanRecord::from_result(w.to_string(), result)
        })
        .collect()
}

/// Failures of the triangularity premise for `𝔏_β`, `β ∈ [0, max_entry]^n`.
///
/// Checks that `x^β` has coefficient 1, is the lex-smallest monomial of the
/// lowest degree part (which sits in degree `|β|`), and that no exponent
/// exceeds `max β_i`.
pub fn triangularity_failures(n: usize, max_entry: u32, cache: &LascouxCache) -> Vec<(Composition, String)> {
    Composition::all_bounded(n, max_entry)
        .par_iter()
        .filter_map(|beta| {
            let l = cache.get(beta);
            let exps: Vec<u8> = beta.parts().iter().map(|&e| e as u8).collect();
            let problem = if l.coeff(beta.parts(), &[]) != 1 {
                Some("leading coefficient is not 1".to_string())
            } else if l.min_degree() != Some(beta.size()) {
                Some(format!("lowest degree {:?} differs from |beta|", l.min_degree()))
            } else if l
                .terms()
                .any(|(m, _)| m.total_degree() == beta.size() && m.exponents() < &exps[..])
            {
                Some("a lex-smaller monomial shares the lowest degree".to_string())
            } else if l.max_x_degree() > beta.max_part() {
                Some(format!("exponent {} exceeds max part", l.max_x_degree()))
            } else {
                None
            };
            problem.map(|p| (beta.clone(), p))
        })
        .collect()
}
