//! Permutations in one-line notation and integer compositions.
//!
//! Everything is 1-based: `w.image(1)` is the first letter of the one-line
//! word, and `s_j` swaps positions `j` and `j + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_index, Error, ParseError, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The longest element `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// All of `S_n`, in lexicographic order of one-line words.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w s_j`: swap the entries in positions `j` and `j + 1`.
    pub fn right_multiply_s(&self, j: usize) -> Result<Permutation> {
        check_index(j, self.len().saturating_sub(1))?;
        let mut images = self.images.clone();
        images.swap(j - 1, j);
        Ok(Permutation { images })
    }

    /// True when `w s_j` is longer than `w`, i.e. `w(j) < w(j+1)`.
    pub fn is_ascent(&self, j: usize) -> bool {
        self.images[j - 1] < self.images[j]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        }
    }

    /// Demazure (0-Hecke) right action: `w * s_j = w s_j` if that is longer, else `w`.
    pub fn demazure_star(&self, j: usize) -> Result<Permutation> {
        check_index(j, self.len().saturating_sub(1))?;
        if self.is_ascent(j) {
            self.right_multiply_s(j)
        } else {
            Ok(self.clone())
        }
    }

    /// True iff no subsequence of `self` is order-isomorphic to `pattern`.
    pub fn avoids_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return true;
        }
        if k == 0 {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        !self.contains_from(0, &mut chosen, &pattern.images)
    }

    fn contains_from(&self, start: usize, chosen: &mut Vec<usize>, pattern: &[usize]) -> bool {
        if chosen.len() == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - chosen.len();
        for pos in start..=self.len() - remaining {
            let v = self.images[pos];
            let t = chosen.len();
            // Relative order with every earlier chosen entry must match the pattern.
            let consistent = chosen.iter().enumerate().all(|(s, &prev)| {
                (pattern[s] < pattern[t]) == (self.images[prev] < v)
            });
            if consistent {
                chosen.push(pos);
                if self.contains_from(pos + 1, chosen, pattern) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// 132-avoiding.
    pub fn is_dominant(&self) -> bool {
        self.avoids_pattern(&Permutation { images: vec![1, 3, 2] })
    }

    /// 2143-avoiding.
    pub fn is_vexillary(&self) -> bool {
        self.avoids_pattern(&Permutation {
            images: vec![2, 1, 4, 3],
        })
    }

    /// `1^shift x w`: fixes `1..=shift` and acts as `w` shifted up by `shift`.
    pub fn shift(&self, shift: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=shift).collect();
        images.extend(self.images.iter().map(|&v| v + shift));
        Permutation { images }
    }

    /// The same permutation regarded as an element of `S_n` for `n >= len`.
    pub fn extend_to(&self, n: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.len() + 1..=n);
        Permutation { images }
    }

    /// Drop trailing fixed points, giving the smallest `S_n` containing `w`.
    pub fn trimmed(&self) -> Permutation {
        let mut images = self.images.clone();
        while let Some(&last) = images.last() {
            if last == images.len() {
                images.pop();
            } else {
                break;
            }
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let images = if trimmed.contains(',') {
            parse_int_list(trimmed)?
        } else {
            let mut out = Vec::new();
            for (pos, ch) in trimmed.char_indices() {
                match ch.to_digit(10) {
                    Some(d) => out.push(d as usize),
                    None => {
                        return Err(ParseError::new(trimmed, pos, format!("unexpected character {ch:?}")).into())
                    }
                }
            }
            out
        };
        Permutation::new(images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_int_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in s.split(',') {
        let t = token.trim();
        match t.parse::<T>() {
            Ok(v) => out.push(v),
            Err(_) => {
                return Err(ParseError::new(s, offset, format!("expected a nonnegative integer, found {t:?}")).into())
            }
        }
        offset += token.len() + 1;
    }
    Ok(out)
}

/// A weak composition `(a_1, ..., a_n)` of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn zero(n: usize) -> Self {
        Composition { parts: vec![0; n] }
    }

    /// Every composition of length `n` with entries in `0..=max_entry`,
    /// lexicographically ordered.
    pub fn all_bounded(n: usize, max_entry: u32) -> Vec<Composition> {
        let mut out = vec![Composition { parts: Vec::new() }];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..=max_entry).map(move |v| {
                        let mut parts = c.parts.clone();
                        parts.push(v);
                        Composition { parts }
                    })
                })
                .collect();
        }
        out
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|alpha|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// Weakly decreasing.
    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// `alpha . s_i`: swap entries `i` and `i + 1`.
    pub fn swap(&self, i: usize) -> Result<Composition> {
        check_index(i, self.len().saturating_sub(1))?;
        let mut parts = self.parts.clone();
        parts.swap(i - 1, i);
        Ok(Composition { parts })
    }

    pub fn sorted_decreasing(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition { parts }
    }

    /// Drop the first `i` entries.
    pub fn tail(&self, i: usize) -> Composition {
        Composition {
            parts: self.parts[i..].to_vec(),
        }
    }
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Composition { parts: Vec::new() });
        }
        Ok(Composition {
            parts: parse_int_list(trimmed)?,
        })
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Composition {
            parts: Vec::deserialize(deserializer)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Brute-force pattern containment over every index subset, independent
    /// of the pruned search in `avoids_pattern`.
    fn contains_brute(w: &Permutation, pat: &Permutation) -> bool {
        let n = w.len();
        let k = pat.len();
        (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).any(|mask| {
            let vals: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| w.images()[i]).collect();
            (0..k).all(|a| (0..k).all(|b| (vals[a] < vals[b]) == (pat.images()[a] < pat.images()[b])))
        })
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(3).length(), 0);
        assert_eq!(p("321").length(), 3);
        assert_eq!(p("31542").length(), 5);
    }

    #[test]
    fn right_multiply_examples() {
        assert_eq!(p("321").right_multiply_s(1).unwrap(), p("231"));
        assert_eq!(p("1423").right_multiply_s(2).unwrap(), p("1243"));
        let w = p("31542");
        for j in 1..5 {
            let ws = w.right_multiply_s(j).unwrap();
            assert_eq!(ws.right_multiply_s(j).unwrap(), w);
            assert_eq!((ws.length() as i64 - w.length() as i64).abs(), 1);
        }
        assert_eq!(w.right_multiply_s(5), Err(Error::IndexOutOfRange { index: 5, max: 4 }));
        assert!(w.right_multiply_s(0).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("31542").inverse(), p("25143"));
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        for w in Permutation::all(4) {
            assert_eq!(w.inverse().inverse(), w);
            assert!(w.compose(&w.inverse()).is_identity());
        }
    }

    #[test]
    fn pattern_examples() {
        assert!(p("321").avoids_pattern(&p("132")));
        assert!(!p("2143").avoids_pattern(&p("2143")));
        assert!(!p("68342751").avoids_pattern(&p("132")));
    }

    #[test]
    fn pattern_search_matches_brute_force() {
        for pat in [p("132"), p("2143"), p("21"), p("321")] {
            for w in Permutation::all(5) {
                assert_eq!(w.avoids_pattern(&pat), !contains_brute(&w, &pat), "{w} vs {pat}");
            }
        }
    }

    #[test]
    fn demazure_star_examples() {
        assert_eq!(Permutation::identity(3).demazure_star(1).unwrap(), p("213"));
        assert_eq!(p("213").demazure_star(1).unwrap(), p("213"));
        assert_eq!(p("231").demazure_star(2).unwrap(), p("231"));
        for w in Permutation::all(4) {
            for j in 1..4 {
                let once = w.demazure_star(j).unwrap();
                assert_eq!(once.demazure_star(j).unwrap(), once);
            }
        }
    }

    #[test]
    fn formatting_round_trips() {
        let w = p("31542");
        assert_eq!(w.to_string(), "31542");
        let big = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("3x1".parse::<Permutation>().is_err());
        assert!("112".parse::<Permutation>().is_err());

        let a: Composition = "3,2,1".parse().unwrap();
        assert_eq!(a.parts(), &[3, 2, 1]);
        assert_eq!(a.to_string(), "3,2,1");
        match "3,x".parse::<Composition>() {
            Err(Error::Parse(e)) => assert_eq!(e.position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shift_and_trim() {
        let w = p("21");
        assert_eq!(w.shift(2), p("1243"));
        assert_eq!(p("1243").trimmed(), p("1243"));
        assert_eq!(p("2134").trimmed(), p("21"));
        assert_eq!(w.extend_to(4), p("2134"));
    }

    #[test]
    fn composition_helpers() {
        assert_eq!(Composition::all_bounded(3, 2).len(), 27);
        let a = Composition::new(vec![0, 2, 1]);
        assert_eq!(a.sorted_decreasing().parts(), &[2, 1, 0]);
        assert!(!a.is_partition());
        assert_eq!(a.swap(1).unwrap().parts(), &[2, 0, 1]);
        assert_eq!(a.size(), 3);
    }
}
