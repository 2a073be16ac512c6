//! Polynomial families indexed by permutations, compositions and diagrams.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::diagrams::{Diagram, OrthodonticSequence};
use crate::diffops::{self, demazure, demazure_lascoux, divided_difference, isobaric};
use crate::error::{Error, Result};
use crate::permcomb::{Composition, Permutation};
use crate::polyring::Polynomial;

/// The four permutation-indexed families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    DoubleGrothendieck,
    DoubleSchubert,
    Grothendieck,
    Schubert,
}

impl Family {
    /// The value at `w0 ∈ S_n`.
    pub fn top(self, n: usize) -> Polynomial {
        match self {
            Family::DoubleGrothendieck | Family::DoubleSchubert => {
                let barred = self == Family::DoubleGrothendieck;
                let mut out = Polynomial::one(n, n);
                for i in 1..n {
                    for j in 1..=n - i {
                        let factor = if barred {
                            diffops::linear_factor(i, j, true, n, n).expect("indices in range")
                        } else {
                            &Polynomial::x(i, n, n).expect("in range") - &Polynomial::y(j, n, n).expect("in range")
                        };
                        out = &out * &factor;
                    }
                }
                out
            }
            Family::Grothendieck | Family::Schubert => {
                let exps: Vec<u32> = (1..=n).map(|i| (n - i) as u32).collect();
                Polynomial::monomial(&exps, &[], 1).expect("small exponents")
            }
        }
    }

    fn step(self, f: &Polynomial, i: usize) -> Polynomial {
        match self {
            Family::DoubleGrothendieck | Family::Grothendieck => isobaric(f, i),
            Family::DoubleSchubert | Family::Schubert => divided_difference(f, i),
        }
        .expect("ascent index lies in 1..n")
    }
}

/// Which ascent to follow when climbing to `w0` (or sorting a composition).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PathChoice {
    #[default]
    First,
    Last,
}

/// Evaluate a family at `w` by climbing weak order to `w0` along one path
/// and applying the matching operator on the way back down.
pub fn along_path(family: Family, w: &Permutation, choice: PathChoice) -> Polynomial {
    let n = w.len();
    let mut word = Vec::new();
    let mut u = w.clone();
    loop {
        let ascents = (1..n).filter(|&i| u.is_ascent(i));
        let next = match choice {
            PathChoice::First => ascents.min(),
            PathChoice::Last => ascents.max(),
        };
        match next {
            Some(i) => {
                word.push(i);
                u = u.right_multiply_s(i).expect("ascent index in range");
            }
            None => break,
        }
    }
    word.iter().rev().fold(family.top(n), |acc, &i| family.step(&acc, i))
}

/// Every value of a family on `S_n`, computed in one sweep down weak order.
pub fn family_table(family: Family, n: usize) -> HashMap<Permutation, Polynomial> {
    let mut table = HashMap::new();
    let top = Permutation::longest(n);
    table.insert(top.clone(), family.top(n));
    let mut level = vec![top];
    while !level.is_empty() {
        let mut next = Vec::new();
        for w in &level {
            for i in 1..n {
                if w.is_ascent(i) {
                    continue;
                }
                let u = w.right_multiply_s(i).expect("index in range");
                if !table.contains_key(&u) {
                    let value = family.step(&table[w], i);
                    table.insert(u.clone(), value);
                    next.push(u);
                }
            }
        }
        level = next;
    }
    table
}

/// Double Grothendieck polynomial, ambient `(n, n)`.
pub fn double_grothendieck(w: &Permutation) -> Polynomial {
    along_path(Family::DoubleGrothendieck, w, PathChoice::First)
}

/// Double Schubert polynomial: lowest degree part of `G_w(x, -y)`.
pub fn double_schubert(w: &Permutation) -> Polynomial {
    double_grothendieck(w)
        .negate_y()
        .lowest_degree_part()
        .expect("double Grothendieck polynomials are nonzero")
}

/// Double Schubert polynomial straight from the `∂_i` recursion.
pub fn double_schubert_by_recursion(w: &Permutation) -> Polynomial {
    along_path(Family::DoubleSchubert, w, PathChoice::First)
}

/// Single Grothendieck polynomial, ambient `(n, 0)`.
pub fn grothendieck(w: &Permutation) -> Polynomial {
    along_path(Family::Grothendieck, w, PathChoice::First)
}

/// Single Schubert polynomial, ambient `(n, 0)`.
pub fn schubert(w: &Permutation) -> Polynomial {
    along_path(Family::Schubert, w, PathChoice::First)
}

fn dominant_monomial(alpha: &Composition) -> Polynomial {
    Polynomial::monomial(alpha.parts(), &[], 1).expect("small exponents")
}

fn sorting_word(alpha: &Composition, choice: PathChoice) -> (Vec<usize>, Composition) {
    let mut word = Vec::new();
    let mut beta = alpha.clone();
    loop {
        let p = beta.parts();
        let ascents = (1..p.len()).filter(|&i| p[i - 1] < p[i]);
        let next = match choice {
            PathChoice::First => ascents.min(),
            PathChoice::Last => ascents.max(),
        };
        match next {
            Some(i) => {
                word.push(i);
                beta = beta.swap(i).expect("index in range");
            }
            None => return (word, beta),
        }
    }
}

/// Lascoux polynomial via an explicit sorting path, without caching.
pub fn lascoux_along_path(alpha: &Composition, choice: PathChoice) -> Polynomial {
    let (word, partition) = sorting_word(alpha, choice);
    word.iter()
        .rev()
        .fold(dominant_monomial(&partition), |acc, &i| demazure_lascoux(&acc, i).expect("index in range"))
}

/// Lascoux polynomial in `x_1..x_n` with `n = alpha.len()`.
pub fn lascoux(alpha: &Composition) -> Polynomial {
    lascoux_along_path(alpha, PathChoice::First)
}

/// Key polynomial: lowest degree part of the Lascoux polynomial.
pub fn key(alpha: &Composition) -> Polynomial {
    lascoux(alpha).lowest_degree_part().expect("Lascoux polynomials are nonzero")
}

/// Key polynomial straight from the `π_i` recursion.
pub fn key_by_recursion(alpha: &Composition) -> Polynomial {
    let (word, partition) = sorting_word(alpha, PathChoice::First);
    word.iter()
        .rev()
        .fold(dominant_monomial(&partition), |acc, &i| demazure(&acc, i).expect("index in range"))
}

/// Thread-safe memo of Lascoux polynomials, shared across scan workers.
#[derive(Default)]
pub struct LascouxCache {
    table: RwLock<HashMap<Composition, Arc<Polynomial>>>,
}

impl LascouxCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, alpha: &Composition) -> Arc<Polynomial> {
        if let Some(p) = self.table.read().expect("cache lock").get(alpha) {
            return Arc::clone(p);
        }
        let value = if alpha.is_partition() {
            dominant_monomial(alpha)
        } else {
            let p = alpha.parts();
            let i = (1..p.len()).find(|&i| p[i - 1] < p[i]).expect("non-partition has an ascent");
            let below = self.get(&alpha.swap(i).expect("index in range"));
            demazure_lascoux(&below, i).expect("index in range")
        };
        let value = Arc::new(value);
        self.table
            .write()
            .expect("cache lock")
            .entry(alpha.clone())
            .or_insert_with(|| Arc::clone(&value));
        value
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot of the cached entries, sorted by composition.
    pub fn entries(&self) -> Vec<(Composition, Arc<Polynomial>)> {
        let mut v: Vec<_> = self
            .table
            .read()
            .expect("cache lock")
            .iter()
            .map(|(a, p)| (a.clone(), Arc::clone(p)))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn insert(&self, alpha: Composition, poly: Polynomial) {
        self.table.write().expect("cache lock").insert(alpha, Arc::new(poly));
    }
}

/// Which `ω` decorates the nested factors `ω_{i_k}^{M_k}` in the doubled
/// Grothendieck orthodontia formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerOmega {
    /// `ω̄_{i_k}^{M_k}` throughout.
    #[default]
    Barred,
    /// `ω_{i_k}^{M_k}` nested inside barred `π̄` and `ω̄^K`.
    Unbarred,
}

/// Number of extra `y` slots needed in front of `y_1`: an adjusted column
/// index `j_k` can be `<= 0` for diagrams that are not Rothe diagrams.
pub fn y_offset(seq: &OrthodonticSequence) -> usize {
    seq.j.iter().map(|&j| (1 - j).max(0) as usize).max().unwrap_or(0)
}

fn shifted_columns(cols: &[usize], offset: usize) -> Vec<usize> {
    cols.iter().map(|c| c + offset).collect()
}

struct Decoration {
    outer_barred: bool,
    inner_barred: bool,
    pi_barred: bool,
}

/// `ω_i^M · f`, one linear factor at a time so the product is never expanded on its own.
fn times_omega(f: Polynomial, i: usize, columns: &[usize], barred: bool) -> Result<Polynomial> {
    let (nx, ny) = f.ambient();
    let mut acc = f;
    for &c in columns {
        for a in 1..=i {
            acc = acc.checked_mul(&diffops::linear_factor(a, c, barred, nx, ny)?)?;
        }
    }
    Ok(acc)
}

fn orthodontia_formula(d: &Diagram, deco: Decoration) -> Result<Polynomial> {
    let seq = d.orthodontic_sequence()?;
    let nx = d.nrows();
    let offset = y_offset(&seq);
    let ny = d.ncols() + offset;
    let mut acc = Polynomial::one(nx, ny);
    for k in (0..seq.steps()).rev() {
        let (i, j) = (seq.i[k], (seq.j[k] + offset as isize) as usize);
        let inner = times_omega(acc, i, &shifted_columns(&seq.m[k], offset), deco.inner_barred)?;
        acc = if deco.pi_barred {
            diffops::pibar_double(&inner, i, j)?
        } else {
            diffops::pi_double(&inner, i, j)?
        };
    }
    for (a, cols) in seq.k.iter().enumerate() {
        if !cols.is_empty() {
            acc = times_omega(acc, a + 1, &shifted_columns(cols, offset), deco.outer_barred)?;
        }
    }
    Ok(acc)
}

/// `𝒢_D(x, y)`: the doubled Grothendieck orthodontia formula.
///
/// The ambient is `(rows, columns + y_offset)`; `y` slot `s` stands for
/// `y_{s - y_offset}`. For Rothe diagrams the offset is zero.
pub fn script_g(d: &Diagram, inner: InnerOmega) -> Result<Polynomial> {
    orthodontia_formula(
        d,
        Decoration {
            outer_barred: true,
            inner_barred: inner == InnerOmega::Barred,
            pi_barred: true,
        },
    )
}

/// `𝒮_D(x, y)`: the doubled Schubert orthodontia formula (unbarred throughout).
pub fn script_s(d: &Diagram) -> Result<Polynomial> {
    orthodontia_formula(
        d,
        Decoration {
            outer_barred: false,
            inner_barred: false,
            pi_barred: false,
        },
    )
}

/// Stable Grothendieck polynomial `G_w(x_1..x_nvars)`: the limit of
/// `G_{1^N x w}(x_1..x_nvars, 0, ..)` as `N` grows.
pub fn stable_grothendieck(w: &Permutation, nvars: usize) -> Result<Polynomial> {
    let cap = nvars + w.length() + 2;
    let mut previous: Option<Polynomial> = None;
    for shift in 0..=cap {
        let u = w.shift(shift).trimmed();
        let g = grothendieck(&u);
        let restricted = if g.nx() <= nvars {
            g.with_ambient(nvars, 0)?
        } else {
            g.truncate_x(nvars)
        };
        if previous.as_ref() == Some(&restricted) {
            return Ok(restricted);
        }
        previous = Some(restricted);
    }
    Err(Error::NoStabilization(cap))
}
