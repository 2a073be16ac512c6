//! Divided-difference operators and the multiplication operators built
//! from them.
//!
//! All operators act on `x` variables only; `y` variables ride along as
//! part of the coefficient frame.

use crate::error::{check_index, Error, Result};
use crate::polyring::{Monomial, Polynomial};

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`, computed term by term.
///
/// For `x_i^a x_{i+1}^b u` with `a > b` the quotient is
/// `u (x_i x_{i+1})^b Σ_{k<a-b} x_i^k x_{i+1}^{a-b-1-k}`; `a < b` gives the
/// negated mirror, and `a = b` vanishes.
pub fn divided_difference(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    let (p, q) = (i - 1, i);
    let mut out = Polynomial::zero(f.nx(), f.ny());
    for (m, c) in f.terms() {
        let (a, b) = (m.0[p], m.0[q]);
        if a == b {
            continue;
        }
        let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
        for k in 0..hi - lo {
            let mut e = m.0.clone();
            e[p] = lo + k;
            e[q] = hi - 1 - k;
            out.add_term(Monomial(e), sign * c);
        }
    }
    Ok(out)
}

fn x_monomial(f: &Polynomial, i: usize) -> Monomial {
    let mut e: crate::polyring::Exponents = smallvec::smallvec![0; f.nx() + f.ny()];
    e[i - 1] = 1;
    Monomial(e)
}

/// `∂̄_i f = ∂_i((1 - x_{i+1}) f)`.
pub fn isobaric(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    let shifted = f.mul_monomial(&x_monomial(f, i + 1));
    divided_difference(&(f - &shifted), i)
}

/// `π_i f = ∂_i(x_i f)`.
pub fn demazure(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    divided_difference(&f.mul_monomial(&x_monomial(f, i)), i)
}

/// `π̄_i f = ∂̄_i(x_i f)`.
pub fn demazure_lascoux(f: &Polynomial, i: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    isobaric(&f.mul_monomial(&x_monomial(f, i)), i)
}

/// `x_i + y_j`, or `x_i + y_j - x_i y_j` when `barred`.
pub fn linear_factor(i: usize, j: usize, barred: bool, nx: usize, ny: usize) -> Result<Polynomial> {
    let xi = Polynomial::x(i, nx, ny)?;
    let yj = Polynomial::y(j, nx, ny)?;
    let sum = &xi + &yj;
    Ok(if barred { &sum - &(&xi * &yj) } else { sum })
}

/// `π_{i,j} f = ∂_i((x_i + y_j) f)`.
pub fn pi_double(f: &Polynomial, i: usize, j: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    let factor = linear_factor(i, j, false, f.nx(), f.ny())?;
    divided_difference(&(&factor * f), i)
}

/// `π̄_{i,j} f = ∂̄_i((x_i + y_j - x_i y_j) f)`.
pub fn pibar_double(f: &Polynomial, i: usize, j: usize) -> Result<Polynomial> {
    check_index(i, f.nx().saturating_sub(1))?;
    let factor = linear_factor(i, j, true, f.nx(), f.ny())?;
    isobaric(&(&factor * f), i)
}

/// `ω_i^M = Π_{a ≤ i, c ∈ M} (x_a + y_c)`, barred: `(x_a + y_c - x_a y_c)`.
pub fn omega(i: usize, columns: &[usize], barred: bool, nx: usize, ny: usize) -> Result<Polynomial> {
    if i > nx {
        return Err(Error::IndexOutOfRange { index: i, max: nx });
    }
    let mut out = Polynomial::one(nx, ny);
    for &c in columns {
        check_index(c, ny)?;
        for a in 1..=i {
            out = &out * &linear_factor(a, c, barred, nx, ny)?;
        }
    }
    Ok(out)
}

/// `φ_i f = x_1 ⋯ x_i (1 - x_{i+1}) ⋯ (1 - x_n) f` for `0 ≤ i ≤ n`.
pub fn phi(f: &Polynomial, i: usize) -> Result<Polynomial> {
    if f.ny() != 0 {
        return Err(Error::YVariablesPresent);
    }
    let n = f.nx();
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut out = f.clone();
    for a in 1..=n {
        let xa = Polynomial::x(a, n, 0)?;
        out = if a <= i {
            &out * &xa
        } else {
            &out - &(&out * &xa)
        };
    }
    Ok(out)
}

/// A single operator in a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Partial(usize),
    PartialBar(usize),
    Pi(usize),
    PiBar(usize),
    PiDouble(usize, usize),
    PiBarDouble(usize, usize),
    Phi(usize),
    Multiply(Polynomial),
}

impl Operator {
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        match self {
            Operator::Partial(i) => divided_difference(f, *i),
            Operator::PartialBar(i) => isobaric(f, *i),
            Operator::Pi(i) => demazure(f, *i),
            Operator::PiBar(i) => demazure_lascoux(f, *i),
            Operator::PiDouble(i, j) => pi_double(f, *i, *j),
            Operator::PiBarDouble(i, j) => pibar_double(f, *i, *j),
            Operator::Phi(i) => phi(f, *i),
            Operator::Multiply(g) => f.checked_mul(g),
        }
    }
}

/// Apply a word as written: `[A, B, C]` computes `A(B(C(f)))`.
pub fn apply_word(word: &[Operator], f: &Polynomial) -> Result<Polynomial> {
    word.iter().rev().try_fold(f.clone(), |acc, op| op.apply(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, n: usize) -> Polynomial {
        Polynomial::x(i, n, 0).unwrap()
    }

    #[test]
    fn divided_difference_examples() {
        let (x1, x2) = (x(1, 2), x(2, 2));
        assert_eq!(divided_difference(&x1, 1).unwrap(), Polynomial::one(2, 0));
        assert!(divided_difference(&(&x1 * &x2), 1).unwrap().is_zero());
        let f = &(&x1 * &x1) * &x2;
        assert_eq!(divided_difference(&f, 1).unwrap(), &x1 * &x2);
        assert_eq!(divided_difference(&x2, 1).unwrap(), Polynomial::constant(-1, 2, 0));
        assert!(divided_difference(&x1, 2).is_err());
        assert!(divided_difference(&x1, 0).is_err());
    }

    #[test]
    fn isobaric_examples() {
        let (x1, x2) = (x(1, 2), x(2, 2));
        assert_eq!(isobaric(&Polynomial::one(2, 0), 1).unwrap(), Polynomial::one(2, 0));
        assert_eq!(isobaric(&x1, 1).unwrap(), Polynomial::one(2, 0));
        let expect = &(&x1 + &x2) - &(&x1 * &x2);
        assert_eq!(isobaric(&(&x1 * &x1), 1).unwrap(), expect);
        assert_eq!(isobaric(&(&x1 * &x2), 1).unwrap(), &x1 * &x2);
    }

    #[test]
    fn demazure_examples() {
        let (x1, x2) = (x(1, 2), x(2, 2));
        assert_eq!(demazure(&Polynomial::one(2, 0), 1).unwrap(), Polynomial::one(2, 0));
        assert_eq!(demazure(&x1, 1).unwrap(), &x1 + &x2);
        let expect = &(&x1 + &x2) - &(&x1 * &x2);
        assert_eq!(demazure_lascoux(&x1, 1).unwrap(), expect);
    }

    #[test]
    fn doubled_operator_examples() {
        let one = Polynomial::one(2, 1);
        assert_eq!(pi_double(&one, 1, 1).unwrap(), one);
        assert_eq!(pibar_double(&one, 1, 1).unwrap(), one);
        assert!(pi_double(&one, 1, 2).is_err());
        assert!(pi_double(&one, 2, 1).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(2, &[], false, 2, 1).unwrap(), Polynomial::one(2, 1));
        assert_eq!(omega(1, &[1], false, 2, 1).unwrap(), linear_factor(1, 1, false, 2, 1).unwrap());
        let expect = &linear_factor(1, 1, true, 2, 1).unwrap() * &linear_factor(2, 1, true, 2, 1).unwrap();
        assert_eq!(omega(2, &[1], true, 2, 1).unwrap(), expect);
        assert!(omega(3, &[1], true, 2, 1).is_err());
        assert!(omega(1, &[2], true, 2, 1).is_err());
    }

    #[test]
    fn phi_examples() {
        let one = Polynomial::one(3, 0);
        assert_eq!(phi(&one, 3).unwrap(), &(&x(1, 3) * &x(2, 3)) * &x(3, 3));
        let one2 = Polynomial::one(2, 0);
        assert_eq!(phi(&one2, 1).unwrap(), &x(1, 2) - &(&x(1, 2) * &x(2, 2)));
        assert_eq!(phi(&Polynomial::one(1, 1), 1), Err(Error::YVariablesPresent));
        assert!(phi(&one2, 3).is_err());
    }

    #[test]
    fn word_application_order() {
        let x1 = x(1, 3);
        let word = [Operator::Pi(2), Operator::Pi(1)];
        let direct = demazure(&demazure(&x1, 1).unwrap(), 2).unwrap();
        assert_eq!(apply_word(&word, &x1).unwrap(), direct);
    }
}
