//! Pipe dreams by brute force, and the weighted sum over them.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffops::linear_factor;
use crate::error::{Error, Result};
use crate::permcomb::Permutation;
use crate::polyring::Polynomial;

/// Largest grid size accepted by the enumerators.
pub const MAX_N: usize = 7;

/// Staircase cells in reading order: rows top to bottom, right to left
/// within a row. Bit `b` of a cross mask refers to `cells(n)[b]`.
fn cells(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in (1..=n - i).rev() {
            out.push((i, j));
        }
    }
    out
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::TooLarge { what: "pipe dream grid", n, limit: MAX_N });
    }
    Ok(())
}

/// A filling of the staircase `{(i, j) : i + j <= n}`, stored as its set of crosses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PipeDreamWire", into = "PipeDreamWire")]
pub struct PipeDream {
    n: usize,
    mask: u64,
}

#[derive(Serialize, Deserialize)]
struct PipeDreamWire {
    n: usize,
    crosses: Vec<(usize, usize)>,
}

impl TryFrom<PipeDreamWire> for PipeDream {
    type Error = Error;
    fn try_from(w: PipeDreamWire) -> Result<Self> {
        PipeDream::new(w.n, &w.crosses)
    }
}

impl From<PipeDream> for PipeDreamWire {
    fn from(p: PipeDream) -> Self {
        PipeDreamWire { n: p.n, crosses: p.crosses() }
    }
}

impl PipeDream {
    pub fn new(n: usize, crosses: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let layout = cells(n);
        let mut mask = 0u64;
        for &(i, j) in crosses {
            let bit = layout
                .iter()
                .position(|&c| c == (i, j))
                .ok_or(Error::IndexOutOfRange { index: i + j, max: n })?;
            mask |= 1 << bit;
        }
        Ok(Self { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Crosses sorted by row, then column.
    pub fn crosses(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = cells(self.n)
            .into_iter()
            .enumerate()
            .filter(|(b, _)| self.mask >> b & 1 == 1)
            .map(|(_, c)| c)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        cells(self.n)
            .iter()
            .position(|&c| c == (i, j))
            .is_some_and(|b| self.mask >> b & 1 == 1)
    }

    pub fn num_crosses(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// The Demazure product of the crosses in reading order.
    pub fn demazure_product(&self) -> Permutation {
        let mut w = Permutation::identity(self.n);
        for (b, (i, j)) in cells(self.n).into_iter().enumerate() {
            if self.mask >> b & 1 == 1 {
                w = w.demazure_star(i + j - 1).expect("antidiagonal index below n");
            }
        }
        w
    }

    /// `Π_{(i,j) ∈ P} (x_i + y_j - x_i y_j)` in ambient `(n, n)`.
    pub fn weight(&self) -> Polynomial {
        let n = self.n;
        self.crosses().into_iter().fold(Polynomial::one(n, n), |acc, (i, j)| {
            &acc * &linear_factor(i, j, true, n, n).expect("staircase indices are in range")
        })
    }
}

/// Demazure product on a fixed-size array, used by the sweeps.
fn fast_product(layout: &[usize], n: usize, mask: u64) -> [u8; MAX_N] {
    let mut w = [0u8; MAX_N];
    for (k, v) in w.iter_mut().enumerate().take(n) {
        *v = k as u8 + 1;
    }
    let mut rest = mask;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let s = layout[b];
        if w[s - 1] < w[s] {
            w.swap(s - 1, s);
        }
    }
    w
}

fn antidiagonals(n: usize) -> Vec<usize> {
    cells(n).into_iter().map(|(i, j)| i + j - 1).collect()
}

fn sort_canonical(list: &mut [PipeDream]) {
    list.sort_by_cached_key(|p| p.crosses());
}

/// All pipe dreams whose Demazure product is `w`, sorted by cross set.
pub fn enumerate_pd(w: &Permutation) -> Result<Vec<PipeDream>> {
    let n = w.len();
    check_size(n)?;
    let layout = antidiagonals(n);
    let target: Vec<u8> = w.images().iter().map(|&v| v as u8).collect();
    let total = 1u64 << layout.len();
    let mut out: Vec<PipeDream> = (0..total)
        .into_par_iter()
        .filter(|&mask| fast_product(&layout, n, mask)[..n] == target[..])
        .map(|mask| PipeDream { n, mask })
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// Every pipe dream of size `n`, bucketed by Demazure product.
pub fn pipe_dream_table(n: usize) -> Result<HashMap<Permutation, Vec<PipeDream>>> {
    check_size(n)?;
    let layout = antidiagonals(n);
    let total = 1u64 << layout.len();
    let buckets = (0..total)
        .into_par_iter()
        .fold(HashMap::<[u8; MAX_N], Vec<u64>>::new, |mut acc, mask| {
            acc.entry(fast_product(&layout, n, mask)).or_default().push(mask);
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_default().extend(v);
            }
            a
        });
    Ok(buckets
        .into_iter()
        .map(|(key, masks)| {
            let w = Permutation::new(key[..n].iter().map(|&v| v as usize).collect()).expect("product is a permutation");
            let mut list: Vec<_> = masks.into_iter().map(|mask| PipeDream { n, mask }).collect();
            sort_canonical(&mut list);
            (w, list)
        })
        .collect())
}

/// `Σ_{P ∈ PD(w)} (-1)^{|P| - ℓ(w)} Π_{(i,j) ∈ P} (x_i + y_j - x_i y_j)`.
///
/// The sign only matters for pipe dreams with redundant crosses.
pub fn weight_sum(w: &Permutation) -> Result<Polynomial> {
    let n = w.len();
    let len = w.length();
    Ok(enumerate_pd(w)?.iter().fold(Polynomial::zero(n, n), |acc, p| {
        if (p.num_crosses() - len) % 2 == 0 {
            &acc + &p.weight()
        } else {
            &acc - &p.weight()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn demazure_product_examples() {
        assert!(PipeDream::new(3, &[]).unwrap().demazure_product().is_identity());
        let full = PipeDream::new(3, &[(1, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(full.demazure_product(), w("321"));
        assert_eq!(PipeDream::new(3, &[(1, 1)]).unwrap().demazure_product(), w("213"));
        assert!(PipeDream::new(3, &[(2, 2)]).is_err());
    }

    #[test]
    fn fast_product_agrees() {
        let n = 5;
        let layout = antidiagonals(n);
        for mask in 0..1u64 << layout.len() {
            let p = PipeDream { n, mask };
            let fast = fast_product(&layout, n, mask);
            let slow: Vec<u8> = p.demazure_product().images().iter().map(|&v| v as u8).collect();
            assert_eq!(fast[..n], slow[..]);
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_pd(&Permutation::identity(3)).unwrap().len(), 1);
        assert_eq!(enumerate_pd(&w("1423")).unwrap().len(), 5);
        let top = enumerate_pd(&w("321")).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].num_crosses(), 3);
        assert!(enumerate_pd(&Permutation::identity(8)).is_err());
    }

    #[test]
    fn table_matches_enumeration() {
        let table = pipe_dream_table(4).unwrap();
        assert_eq!(table.len(), 24);
        assert_eq!(table.values().map(Vec::len).sum::<usize>(), 64);
        for v in Permutation::all(4) {
            assert_eq!(table[&v], enumerate_pd(&v).unwrap());
            assert_eq!(table[&v].len() == 1, v.is_dominant(), "{v}");
        }
    }

    #[test]
    fn weight_sum_examples() {
        assert_eq!(weight_sum(&Permutation::identity(3)).unwrap(), Polynomial::one(3, 3));
        assert_eq!(weight_sum(&w("21")).unwrap(), linear_factor(1, 1, true, 2, 2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let p = PipeDream::new(4, &[(1, 2), (2, 1)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":4,"crosses":[[1,2],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<PipeDream>(&s).unwrap(), p);
    }
}
