//! Sparse polynomials with exact integer coefficients in `x_1..x_n, y_1..y_m`.
//!
//! A monomial is a dense exponent vector: the first `n` slots are the
//! `x`-exponents, the remaining `m` are the `y`-exponents. Coefficients are
//! `i128` and every arithmetic step is overflow-checked, so a result is
//! either exact or the computation panics.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{check_index, Error, Result};

pub type Coeff = i128;

pub(crate) type Exponents = SmallVec<[u8; 16]>;

/// Dense exponent vector `(x_1..x_n, y_1..y_m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Exponents);

impl Monomial {
    pub fn from_exponents(exps: &[u8]) -> Self {
        Monomial(exps.iter().copied().collect())
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub(crate) fn add_exps(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn sub_exps(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a - b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Which variable family an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

fn checked_coeff_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_coeff_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow")
}

/// A polynomial in `Z[x_1..x_n, y_1..y_m]` with ambient `(n, m)` fixed at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nx: usize,
    ny: usize,
    terms: FxHashMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(nx: usize, ny: usize) -> Self {
        Polynomial {
            nx,
            ny,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(c: Coeff, nx: usize, ny: usize) -> Self {
        let mut p = Polynomial::zero(nx, ny);
        if c != 0 {
            p.terms.insert(Monomial(smallvec::smallvec![0; nx + ny]), c);
        }
        p
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Polynomial::constant(1, nx, ny)
    }

    /// The variable `x_i` (1-based).
    pub fn x(i: usize, nx: usize, ny: usize) -> Result<Self> {
        check_index(i, nx)?;
        let mut exps: Exponents = smallvec::smallvec![0; nx + ny];
        exps[i - 1] = 1;
        Ok(Polynomial::from_terms(nx, ny, [(Monomial(exps), 1)]))
    }

    /// The variable `y_j` (1-based).
    pub fn y(j: usize, nx: usize, ny: usize) -> Result<Self> {
        check_index(j, ny)?;
        let mut exps: Exponents = smallvec::smallvec![0; nx + ny];
        exps[nx + j - 1] = 1;
        Ok(Polynomial::from_terms(nx, ny, [(Monomial(exps), 1)]))
    }

    /// `c * x^xexp * y^yexp`.
    pub fn monomial(xexp: &[u32], yexp: &[u32], c: Coeff) -> Result<Self> {
        let mut exps = Exponents::new();
        for &e in xexp.iter().chain(yexp) {
            exps.push(u8::try_from(e).map_err(|_| Error::ExponentOverflow)?);
        }
        Ok(Polynomial::from_terms(xexp.len(), yexp.len(), [(Monomial(exps), c)]))
    }

    /// Accumulate terms, merging duplicates and dropping zeros.
    pub fn from_terms(nx: usize, ny: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Polynomial::zero(nx, ny);
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nx + ny);
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c == 0 {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = checked_coeff_add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Coeff)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Terms in canonical order: total degree ascending, then exponent
    /// vector `(x_1.., y_1..)` lexicographically ascending.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, Coeff)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| (a.0.total_degree(), a.0).cmp(&(b.0.total_degree(), b.0)));
        v
    }

    /// Coefficient of `x^xexp y^yexp` (0 when absent or lengths disagree).
    pub fn coeff(&self, xexp: &[u32], yexp: &[u32]) -> Coeff {
        if xexp.len() != self.nx || yexp.len() != self.ny {
            return 0;
        }
        let mut exps = Exponents::new();
        for &e in xexp.iter().chain(yexp) {
            match u8::try_from(e) {
                Ok(v) => exps.push(v),
                Err(_) => return 0,
            }
        }
        self.terms.get(&Monomial(exps)).copied().unwrap_or(0)
    }

    /// Coefficient of a monomial in this ambient.
    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.nx, self.ny, other.nx, other.ny));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = Polynomial::zero(self.nx, self.ny);
        out.terms.reserve(self.terms.len().max(other.terms.len()));
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.add_exps(b), checked_coeff_mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Coeff) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(self.nx, self.ny);
        }
        Polynomial {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), checked_coeff_mul(v, c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nx, self.ny);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiply by the monomial `x^exps` (exponents over the full ambient).
    pub(crate) fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nx: self.nx,
            ny: self.ny,
            terms: self.terms.iter().map(|(k, &v)| (k.add_exps(m), v)).collect(),
        }
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    /// Sum of the terms of total degree `d`.
    pub fn degree_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Sum of the terms of minimal total degree.
    pub fn lowest_degree_part(&self) -> Result<Polynomial> {
        let d = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.degree_part(d))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.total_degree()
    }

    /// Replace every `y_j` by `c`; the result lives in ambient `(n, 0)`.
    pub fn substitute_y(&self, c: Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.nx, 0);
        for (m, v) in self.terms() {
            let ydeg: u32 = m.0[self.nx..].iter().map(|&e| e as u32).sum();
            let factor = c.checked_pow(ydeg).expect("coefficient overflow");
            out.add_term(Monomial(m.0[..self.nx].iter().copied().collect()), checked_coeff_mul(v, factor));
        }
        out
    }

    /// Replace the single variable `y_j` by `c`, keeping the ambient.
    pub fn substitute_y_at(&self, j: usize, c: Coeff) -> Result<Polynomial> {
        check_index(j, self.ny)?;
        let slot = self.nx + j - 1;
        let mut out = Polynomial::zero(self.nx, self.ny);
        for (m, v) in self.terms() {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[slot], 0);
            let factor = c.checked_pow(e as u32).expect("coefficient overflow");
            out.add_term(Monomial(exps), checked_coeff_mul(v, factor));
        }
        Ok(out)
    }

    /// Replace the single variable `x_i` by `c`, keeping the ambient.
    pub fn substitute_x_at(&self, i: usize, c: Coeff) -> Result<Polynomial> {
        check_index(i, self.nx)?;
        let mut out = Polynomial::zero(self.nx, self.ny);
        for (m, v) in self.terms() {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[i - 1], 0);
            let factor = c.checked_pow(e as u32).expect("coefficient overflow");
            out.add_term(Monomial(exps), checked_coeff_mul(v, factor));
        }
        Ok(out)
    }

    /// `y_j -> -y_j` for every `j`.
    pub fn negate_y(&self) -> Polynomial {
        Polynomial {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let ydeg: u32 = m.0[self.nx..].iter().map(|&e| e as u32).sum();
                    (m.clone(), if ydeg % 2 == 1 { -c } else { c })
                })
                .collect(),
        }
    }

    /// The exponent involution `x_1^cap..x_n^cap f(x_n^-1, .., x_1^-1)`.
    pub fn flip(&self, cap: u32) -> Result<Polynomial> {
        if self.ny != 0 {
            return Err(Error::YVariablesPresent);
        }
        let n = self.nx;
        for i in 1..=n {
            let degree = self.per_variable_degree(Var::X, i)?;
            if degree > cap {
                return Err(Error::DegreeExceedsCap { var: i, degree, cap });
            }
        }
        let cap = u8::try_from(cap).map_err(|_| Error::ExponentOverflow)?;
        Ok(Polynomial {
            nx: n,
            ny: 0,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (Monomial((0..n).map(|i| cap - m.0[n - 1 - i]).collect()), c))
                .collect(),
        })
    }

    /// Largest exponent of the named variable (0 for the zero polynomial).
    pub fn per_variable_degree(&self, which: Var, i: usize) -> Result<u32> {
        let slot = match which {
            Var::X => {
                check_index(i, self.nx)?;
                i - 1
            }
            Var::Y => {
                check_index(i, self.ny)?;
                self.nx + i - 1
            }
        };
        Ok(self.terms.keys().map(|m| m.0[slot] as u32).max().unwrap_or(0))
    }

    /// Largest exponent of any single `x` variable.
    pub fn max_x_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.0[..self.nx].iter().map(|&e| e as u32))
            .max()
            .unwrap_or(0)
    }

    /// Apply the transposition `s_i` to the `x` variables.
    pub fn swap_x(&self, i: usize) -> Result<Polynomial> {
        check_index(i, self.nx.saturating_sub(1))?;
        Ok(Polynomial {
            nx: self.nx,
            ny: self.ny,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let mut e = m.0.clone();
                    e.swap(i - 1, i);
                    (Monomial(e), c)
                })
                .collect(),
        })
    }

    /// Re-embed into a larger ambient `(nx, ny)`, padding with zero exponents.
    /// Shrinking is allowed only when the dropped variables do not occur.
    pub fn with_ambient(&self, nx: usize, ny: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(nx, ny);
        for (m, c) in self.terms() {
            let (xs, ys) = m.0.split_at(self.nx);
            if xs.iter().skip(nx).any(|&e| e > 0) || ys.iter().skip(ny).any(|&e| e > 0) {
                return Err(Error::AmbientMismatch(self.nx, self.ny, nx, ny));
            }
            let mut exps = Exponents::new();
            exps.extend((0..nx).map(|i| xs.get(i).copied().unwrap_or(0)));
            exps.extend((0..ny).map(|j| ys.get(j).copied().unwrap_or(0)));
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    /// Set `x_{k+1}, .., x_n` to zero and drop them from the ambient.
    pub fn truncate_x(&self, k: usize) -> Polynomial {
        let k = k.min(self.nx);
        let mut out = Polynomial::zero(k, self.ny);
        for (m, c) in self.terms() {
            if m.0[k..self.nx].iter().all(|&e| e == 0) {
                let exps: Exponents = m.0[..k].iter().chain(&m.0[self.nx..]).copied().collect();
                out.add_term(Monomial(exps), c);
            }
        }
        out
    }

    /// Rename `x_i -> x_{i + offset}` inside the ambient `(new_nx, ny)`.
    pub fn shift_x(&self, offset: usize, new_nx: usize) -> Result<Polynomial> {
        if self.nx + offset > new_nx {
            return Err(Error::AmbientMismatch(self.nx, self.ny, new_nx, self.ny));
        }
        let mut out = Polynomial::zero(new_nx, self.ny);
        for (m, c) in self.terms() {
            let mut exps: Exponents = smallvec::smallvec![0; new_nx + self.ny];
            exps[offset..offset + self.nx].copy_from_slice(&m.0[..self.nx]);
            exps[new_nx..].copy_from_slice(&m.0[self.nx..]);
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` over the integers, or `None` when the
    /// divisor does not divide. Uses lex division (x_1 heaviest), which is
    /// exact for a single divisor.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ambient(divisor)?;
        let (lead, lead_c) = match divisor.terms.iter().max_by(|a, b| a.0.cmp(b.0)) {
            Some((m, &c)) => (m.clone(), c),
            None => return Err(Error::ZeroPolynomial),
        };
        let mut rem: BTreeMap<Monomial, Coeff> = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        let mut quotient = Polynomial::zero(self.nx, self.ny);
        while let Some((top, &c)) = rem.iter().next_back() {
            if !lead.divides(top) || c % lead_c != 0 {
                return Ok(None);
            }
            let qm = top.sub_exps(&lead);
            let qc = c / lead_c;
            for (m, &dc) in &divisor.terms {
                let key = m.add_exps(&qm);
                let v = rem.entry(key.clone()).or_insert(0);
                *v = checked_coeff_add(*v, -checked_coeff_mul(qc, dc));
                if *v == 0 {
                    rem.remove(&key);
                }
            }
            quotient.add_term(qm, qc);
        }
        Ok(Some(quotient))
    }

    /// LaTeX rendering in display order.
    pub fn to_latex(&self) -> String {
        self.render(|var, idx, exp| {
            if exp == 1 {
                format!("{var}_{{{idx}}}")
            } else {
                format!("{var}_{{{idx}}}^{{{exp}}}")
            }
        }, " ")
    }

    fn display_terms(&self) -> Vec<(&Monomial, Coeff)> {
        // Degree ascending, then lexicographically descending so that x1
        // precedes x2 within a degree.
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| a.0.total_degree().cmp(&b.0.total_degree()).then_with(|| b.0.cmp(a.0)));
        v
    }

    fn render(&self, var: impl Fn(char, usize, u8) -> String, sep: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(slot, &e)| {
                    if slot < self.nx {
                        var('x', slot + 1, e)
                    } else {
                        var('y', slot - self.nx + 1, e)
                    }
                })
                .collect();
            let body = factors.join(sep);
            let abs = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if body.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs == 1 {
                out.push_str(&body);
            } else {
                out.push_str(&abs.to_string());
                out.push_str(sep);
                out.push_str(&body);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization is infallible")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(
            |var, idx, exp| {
                if exp == 1 {
                    format!("{var}{idx}")
                } else {
                    format!("{var}{idx}^{exp}")
                }
            },
            "*",
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}, {}]({})", self.nx, self.ny, self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

/// Wire form: `{"n":…, "m":…, "terms":[{"x":[…],"y":[…],"c":…}, …]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    m: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<u32>,
    y: Vec<u32>,
    c: Coeff,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                x: m.0[..self.nx].iter().map(|&e| e as u32).collect(),
                y: m.0[self.nx..].iter().map(|&e| e as u32).collect(),
                c,
            })
            .collect();
        PolyJson {
            n: self.nx,
            m: self.ny,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(deserializer)?;
        let mut p = Polynomial::zero(raw.n, raw.m);
        for t in raw.terms {
            if t.x.len() != raw.n || t.y.len() != raw.m {
                return Err(D::Error::custom(format!(
                    "term exponent lengths ({}, {}) do not match ambient ({}, {})",
                    t.x.len(),
                    t.y.len(),
                    raw.n,
                    raw.m
                )));
            }
            let term = Polynomial::monomial(&t.x, &t.y, t.c).map_err(D::Error::custom)?;
            p = p.checked_add(&term).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}
