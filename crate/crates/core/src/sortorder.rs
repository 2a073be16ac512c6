//! Primary column data, sorting of permutations and the orthodontic sort order.

use serde::{Deserialize, Serialize};

use crate::diagrams::{as_standard_interval, rows_of, Diagram};
use crate::error::{Error, Result};
use crate::permcomb::Permutation;

/// Location and shape of the first column of `D(w)` that is not `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryColumnData {
    pub h: usize,
    pub c: Vec<usize>,
    pub alpha: usize,
    pub i1: usize,
    pub beta: usize,
}

pub fn primary_column_data(w: &Permutation) -> PrimaryColumnData {
    let n = w.len();
    let d = Diagram::rothe(w);
    let first_bad = d.column_masks().iter().position(|&m| as_standard_interval(m).is_none());
    let Some(h) = first_bad else {
        return PrimaryColumnData { h: n, c: Vec::new(), alpha: 0, i1: n, beta: n };
    };
    let mask = d.column_masks()[h];
    let alpha = mask.trailing_ones() as usize;
    let i1 = (1..n)
        .find(|&i| mask >> (i - 1) & 1 == 0 && mask >> i & 1 == 1)
        .expect("a column that is not [k] has a missing tooth");
    PrimaryColumnData { h, c: rows_of(mask), alpha, i1, beta: i1 - alpha }
}

/// `σ(w) ∈ S_β` with `σ(k) = w(α + k) - (h - β)`.
///
/// For dominant `w` the window is all of `w`, so `σ(w) = w`.
pub fn sigma_of(w: &Permutation) -> Permutation {
    let p = primary_column_data(w);
    let shift = p.h - p.beta;
    let images = (1..=p.beta).map(|k| w.image(p.alpha + k) - shift).collect();
    Permutation::new(images).expect("the window maps onto [h - beta + 1, h]")
}

pub fn is_sorted(w: &Permutation) -> bool {
    sigma_of(w).is_identity()
}

/// `w` with `w(α+1), …, w(i_1)` rearranged increasingly.
pub fn sort_of(w: &Permutation) -> Permutation {
    let p = primary_column_data(w);
    let mut images = w.images().to_vec();
    images[p.alpha..p.i1].sort_unstable();
    Permutation::new(images).expect("rearranging values keeps a permutation")
}

/// Last index of the descending product `s_{i_1} s_{i_1 - 1} ⋯` in the
/// second covering relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OsEndpoint {
    /// Stop at `s_α`.
    Alpha,
    /// Stop at `s_{α+1}`.
    #[default]
    AlphaPlusOne,
}

/// `w s_{i_1} s_{i_1 - 1} ⋯ s_e` for the chosen endpoint `e`.
pub fn descending_product(w: &Permutation, endpoint: OsEndpoint) -> Result<Permutation> {
    let p = primary_column_data(w);
    let last = match endpoint {
        OsEndpoint::Alpha => p.alpha,
        OsEndpoint::AlphaPlusOne => p.alpha + 1,
    };
    if last == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: w.len().saturating_sub(1) });
    }
    (last..=p.i1).rev().try_fold(w.clone(), |u, k| u.right_multiply_s(k))
}

/// Immediate predecessors of `w` under the two generating relations.
pub fn os_covers(w: &Permutation, endpoint: OsEndpoint) -> Result<Vec<Permutation>> {
    if w.is_identity() {
        return Ok(Vec::new());
    }
    if !is_sorted(w) {
        return Ok(vec![sort_of(w)]);
    }
    Ok(vec![descending_product(w, endpoint)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn primary_data_examples() {
        let p = primary_column_data(&w("68342751"));
        assert_eq!(p, PrimaryColumnData { h: 4, c: vec![1, 2, 6], alpha: 2, i1: 5, beta: 3 });
        let p = primary_column_data(&w("321"));
        assert_eq!(p, PrimaryColumnData { h: 3, c: vec![], alpha: 0, i1: 3, beta: 3 });
        let p = primary_column_data(&w("132"));
        assert_eq!(p, PrimaryColumnData { h: 1, c: vec![2], alpha: 0, i1: 1, beta: 1 });
    }

    #[test]
    fn sigma_and_sort_examples() {
        assert_eq!(sigma_of(&w("68342751")), w("231"));
        assert_eq!(sort_of(&w("68342751")), w("68234751"));
        assert_eq!(sigma_of(&w("132")), Permutation::identity(1));
        assert_eq!(sort_of(&w("132")), w("132"));
        assert_eq!(sigma_of(&w("321")), w("321"));
        assert!(sort_of(&w("321")).is_identity());
        for v in Permutation::all(5) {
            let s = sort_of(&v);
            assert_eq!(is_sorted(&v), s == v, "{v}");
            assert!(is_sorted(&s) || s.is_identity(), "{v}");
        }
    }

    #[test]
    fn covers_examples() {
        assert!(os_covers(&Permutation::identity(3), OsEndpoint::AlphaPlusOne).unwrap().is_empty());
        assert_eq!(os_covers(&w("68342751"), OsEndpoint::AlphaPlusOne).unwrap(), vec![w("68234751")]);
        assert_eq!(os_covers(&w("132"), OsEndpoint::AlphaPlusOne).unwrap(), vec![w("312")]);
        assert!(os_covers(&w("132"), OsEndpoint::Alpha).is_err());
    }

    #[test]
    fn predecessor_chains_reach_identity() {
        for v in Permutation::all(5) {
            let mut u = v.clone();
            let mut steps = 0;
            while let Some(next) = os_covers(&u, OsEndpoint::AlphaPlusOne).unwrap().pop() {
                u = next;
                steps += 1;
                assert!(steps < 200, "no termination from {v}");
            }
            assert!(u.is_identity());
        }
    }
}
