//! Diagrams in `[n] x [m]`, stored column by column, and the double
//! orthodontia algorithm.
//!
//! A column is a set of rows held as a bitmask (bit `r - 1` for row `r`),
//! so `n <= 32`. Stripped columns are replaced by the empty column rather
//! than removed, which keeps every recorded column index pointing at its
//! original position.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::permcomb::{Composition, Permutation};

pub const MAX_ROWS: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    nrows: usize,
    columns: Vec<u32>,
}

pub(crate) fn standard_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// `Some(k)` when the column is exactly `[k]` (including `k = 0`).
pub(crate) fn as_standard_interval(mask: u32) -> Option<usize> {
    if mask & mask.wrapping_add(1) == 0 {
        Some(mask.count_ones() as usize)
    } else {
        None
    }
}

pub(crate) fn rows_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl Diagram {
    /// Build from explicit columns of 1-based row indices.
    pub fn new(nrows: usize, columns: &[Vec<usize>]) -> Result<Self> {
        if nrows > MAX_ROWS {
            return Err(Error::TooLarge {
                what: "diagram",
                n: nrows,
                limit: MAX_ROWS,
            });
        }
        let mut masks = Vec::with_capacity(columns.len());
        for col in columns {
            let mut mask = 0u32;
            for &r in col {
                if r == 0 || r > nrows {
                    return Err(Error::IndexOutOfRange { index: r, max: nrows });
                }
                mask |= 1 << (r - 1);
            }
            masks.push(mask);
        }
        Ok(Diagram { nrows, columns: masks })
    }

    pub fn from_masks(nrows: usize, columns: Vec<u32>) -> Result<Self> {
        if nrows > MAX_ROWS {
            return Err(Error::TooLarge {
                what: "diagram",
                n: nrows,
                limit: MAX_ROWS,
            });
        }
        let allowed = standard_mask(nrows);
        if let Some(bad) = columns.iter().find(|&&c| c & !allowed != 0) {
            return Err(Error::IndexOutOfRange {
                index: 32 - bad.leading_zeros() as usize,
                max: nrows,
            });
        }
        Ok(Diagram { nrows, columns })
    }

    pub fn empty(nrows: usize, ncols: usize) -> Self {
        Diagram {
            nrows,
            columns: vec![0; ncols],
        }
    }

    /// Rothe diagram `{(i, j) : i < w^-1(j), j < w(i)}` in `[n] x [n]`.
    pub fn rothe(w: &Permutation) -> Self {
        let n = w.len();
        let winv = w.inverse();
        let columns = (1..=n)
            .map(|j| {
                (1..winv.image(j))
                    .filter(|&i| j < w.image(i))
                    .fold(0u32, |m, i| m | 1 << (i - 1))
            })
            .collect();
        Diagram { nrows: n, columns }
    }

    /// Skyline diagram: row `i` holds `alpha_i` left-justified boxes.
    pub fn skyline(alpha: &Composition) -> Self {
        let columns = (1..=alpha.max_part())
            .map(|j| {
                alpha
                    .parts()
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a >= j)
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Diagram {
            nrows: alpha.len(),
            columns,
        }
    }

    /// Every diagram in `[n] x [m]`, ordered by the binary counter over cells.
    pub fn all(nrows: usize, ncols: usize) -> impl Iterator<Item = Diagram> {
        let cells = nrows * ncols;
        assert!(cells < 64, "too many cells to enumerate");
        (0u64..1 << cells).map(move |bits| Diagram {
            nrows,
            columns: (0..ncols)
                .map(|j| ((bits >> (j * nrows)) & ((1u64 << nrows) - 1)) as u32)
                .collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_masks(&self) -> &[u32] {
        &self.columns
    }

    /// Rows of column `j` (1-based), ascending.
    pub fn column(&self, j: usize) -> Vec<usize> {
        rows_of(self.columns[j - 1])
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j <= self.columns.len() && i <= self.nrows && self.columns[j - 1] >> (i - 1) & 1 == 1
    }

    /// All boxes `(row, column)`, column-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, &m)| rows_of(m).into_iter().map(move |i| (i, j + 1)))
            .collect()
    }

    pub fn num_boxes(&self) -> usize {
        self.columns.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.iter().all(|&m| m == 0)
    }

    /// Number of boxes in each row: the exponent vector of `x^D`.
    pub fn row_counts(&self) -> Vec<u32> {
        (0..self.nrows)
            .map(|r| self.columns.iter().filter(|&&m| m >> r & 1 == 1).count() as u32)
            .collect()
    }

    /// True when every column is `[k]` for some `k`.
    pub fn all_columns_standard(&self) -> bool {
        self.columns.iter().all(|&m| as_standard_interval(m).is_some())
    }

    /// No rows `i1 < i2` and columns `j1 < j2` with boxes at `(i2, j1)` and
    /// `(i1, j2)` but not at `(i1, j1)` or `(i2, j2)`.
    pub fn is_percent_avoiding(&self) -> bool {
        let cols = &self.columns;
        for j1 in 0..cols.len() {
            for j2 in j1 + 1..cols.len() {
                // rows present in j1 but not j2, and rows present in j2 but not j1
                let only1 = cols[j1] & !cols[j2];
                let only2 = cols[j2] & !cols[j1];
                // forbidden: some i1 in only2 lies strictly above some i2 in only1
                if only2 != 0 && only1 != 0 && only2.trailing_zeros() < 31 - only1.leading_zeros() {
                    return false;
                }
            }
        }
        true
    }

    /// Every pair of columns is comparable under inclusion.
    pub fn columns_ordered_by_inclusion(&self) -> bool {
        let cols = &self.columns;
        (0..cols.len()).all(|a| {
            (a + 1..cols.len()).all(|b| {
                let both = cols[a] & cols[b];
                both == cols[a] || both == cols[b]
            })
        })
    }

    /// Exchange rows `i` and `i + 1` in every column.
    pub fn swap_rows(&self, i: usize) -> Diagram {
        let (lo, hi) = (1u32 << (i - 1), 1u32 << i);
        Diagram {
            nrows: self.nrows,
            columns: self
                .columns
                .iter()
                .map(|&m| {
                    let keep = m & !(lo | hi);
                    let moved_up = if m & hi != 0 { lo } else { 0 };
                    let moved_down = if m & lo != 0 { hi } else { 0 };
                    keep | moved_up | moved_down
                })
                .collect(),
        }
    }

    /// The double orthodontic sequence; rejects diagrams that are not %-avoiding.
    pub fn orthodontic_sequence(&self) -> Result<OrthodonticSequence> {
        Ok(self.orthodontia(false)?.sequence)
    }

    /// Run the orthodontia algorithm, keeping every intermediate diagram.
    /// With `allow_any`, diagrams that are not %-avoiding are attempted too;
    /// the run then fails if a column without a missing tooth turns up.
    pub fn orthodontia(&self, allow_any: bool) -> Result<OrthodontiaTrace> {
        if !allow_any && !self.is_percent_avoiding() {
            return Err(Error::NotPercentAvoiding);
        }
        let n = self.nrows;
        let mut k_sets = vec![Vec::new(); n];
        let mut current = self.clone();
        let mut diagrams = vec![self.clone()];
        for (j, col) in current.columns.iter_mut().enumerate() {
            if *col != 0 {
                if let Some(k) = as_standard_interval(*col) {
                    k_sets[k - 1].push(j + 1);
                    *col = 0;
                }
            }
        }
        diagrams.push(current.clone());

        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut m_sets = Vec::new();
        let step_cap = 4 * (n + 1) * (n + 1) * (current.ncols() + 1);
        while let Some(j) = current.columns.iter().position(|&m| m != 0) {
            if rows.len() > step_cap {
                return Err(Error::OrthodontiaStalled { column: j + 1 });
            }
            let c = current.columns[j];
            let tooth = (1..n)
                .find(|&i| c >> (i - 1) & 1 == 0 && c >> i & 1 == 1)
                .ok_or(Error::OrthodontiaStalled { column: j + 1 })?;
            let gaps_above = (1..=tooth).filter(|&a| c >> (a - 1) & 1 == 0).count();
            rows.push(tooth);
            cols.push(j as isize + 1 - gaps_above as isize);

            current = current.swap_rows(tooth);
            diagrams.push(current.clone());
            let target = standard_mask(tooth);
            let mut stripped = Vec::new();
            for (jj, col) in current.columns.iter_mut().enumerate() {
                if *col == target {
                    stripped.push(jj + 1);
                    *col = 0;
                }
            }
            m_sets.push(stripped);
            diagrams.push(current.clone());
        }
        Ok(OrthodontiaTrace {
            sequence: OrthodonticSequence {
                k: k_sets,
                i: rows,
                j: cols,
                m: m_sets,
            },
            diagrams,
        })
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

/// Text form `n=<rows>;c1;c2;…` with comma-separated rows per column.
impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.nrows)?;
        for &m in &self.columns {
            let rows: Vec<String> = rows_of(m).iter().map(|r| r.to_string()).collect();
            write!(f, ";{}", rows.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pieces = s.split(';');
        let head = pieces.next().unwrap_or("");
        let nrows: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| ParseError::new(s, 0, "expected leading `n=<rows>`"))?;
        let mut offset = head.len() + 1;
        let mut columns = Vec::new();
        for piece in pieces {
            let mut col = Vec::new();
            let mut local = 0;
            for tok in piece.split(',') {
                let t = tok.trim();
                if !t.is_empty() {
                    let r: usize = t
                        .parse()
                        .map_err(|_| ParseError::new(s, offset + local, format!("bad row index {t:?}")))?;
                    if r == 0 || r > nrows {
                        return Err(ParseError::new(s, offset + local, format!("row {r} outside 1..={nrows}")).into());
                    }
                    col.push(r);
                }
                local += tok.len() + 1;
            }
            columns.push(col);
            offset += piece.len() + 1;
        }
        Diagram::new(nrows, &columns)
    }
}

/// The data `(K, i, j, M)` driving the orthodontia formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthodonticSequence {
    /// `k[a - 1]` = columns stripped initially as `[a]`, for `a = 1..=n`.
    pub k: Vec<Vec<usize>>,
    /// Missing-tooth rows, one per step.
    pub i: Vec<usize>,
    /// Adjusted column indices, one per step. These are positive for
    /// Rothe diagrams but can drop to zero or below in general.
    pub j: Vec<isize>,
    /// Columns stripped as `[i_k]` after step `k`.
    pub m: Vec<Vec<usize>>,
}

impl OrthodonticSequence {
    pub fn steps(&self) -> usize {
        self.i.len()
    }
}

#[derive(Clone, Debug)]
pub struct OrthodontiaTrace {
    pub sequence: OrthodonticSequence,
    /// `D`, `D_-`, then for each step the swapped and the stripped diagram.
    pub diagrams: Vec<Diagram>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Direct evaluation of the forbidden 2x2 pattern over every quadruple.
    fn percent_brute(d: &Diagram) -> bool {
        let (n, m) = (d.nrows(), d.ncols());
        for i1 in 1..=n {
            for i2 in i1 + 1..=n {
                for j1 in 1..=m {
                    for j2 in j1 + 1..=m {
                        if d.contains(i2, j1) && d.contains(i1, j2) && !d.contains(i1, j1) && !d.contains(i2, j2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn rothe_examples() {
        assert!(Diagram::rothe(&Permutation::identity(4)).is_empty());
        assert_eq!(Diagram::rothe(&w("21")).cells(), vec![(1, 1)]);
        let d = Diagram::rothe(&w("31542"));
        assert_eq!(d.column(1), vec![1]);
        assert_eq!(d.column(2), vec![1, 3, 4]);
        assert_eq!(d.column(3), Vec::<usize>::new());
        assert_eq!(d.column(4), vec![3]);
        assert_eq!(d.column(5), Vec::<usize>::new());
        for v in Permutation::all(5) {
            assert_eq!(Diagram::rothe(&v).num_boxes(), v.length());
        }
    }

    #[test]
    fn skyline_examples() {
        assert!(Diagram::skyline(&Composition::zero(3)).is_empty());
        let d = Diagram::skyline(&Composition::new(vec![2, 1]));
        assert_eq!((d.column(1), d.column(2)), (vec![1, 2], vec![1]));
        let d = Diagram::skyline(&Composition::new(vec![0, 1]));
        assert_eq!(d.ncols(), 1);
        assert_eq!(d.column(1), vec![2]);
    }

    #[test]
    fn percent_avoiding_examples() {
        for v in Permutation::all(5) {
            assert!(Diagram::rothe(&v).is_percent_avoiding(), "{v}");
        }
        let bad = Diagram::new(2, &[vec![2], vec![1]]).unwrap();
        assert!(!bad.is_percent_avoiding());
        assert!(Diagram::empty(3, 3).is_percent_avoiding());
    }

    #[test]
    fn percent_avoiding_matches_brute_force() {
        for d in Diagram::all(3, 3) {
            assert_eq!(d.is_percent_avoiding(), percent_brute(&d), "{d}");
        }
        for d in Diagram::all(4, 3) {
            assert_eq!(d.is_percent_avoiding(), percent_brute(&d), "{d}");
        }
    }

    #[test]
    fn inclusion_order_examples() {
        for a in Composition::all_bounded(3, 3) {
            if a.is_partition() {
                assert!(Diagram::skyline(&a).columns_ordered_by_inclusion());
            }
        }
        assert!(!Diagram::new(2, &[vec![1], vec![2]]).unwrap().columns_ordered_by_inclusion());
        // D(2143) = {(1,1), (3,3)}: columns {1} and {3} are incomparable.
        let d = Diagram::rothe(&w("2143"));
        assert_eq!(d.cells(), vec![(1, 1), (3, 3)]);
        assert!(!d.columns_ordered_by_inclusion());
    }

    #[test]
    fn orthodontic_sequence_examples() {
        let s = Diagram::rothe(&w("21")).orthodontic_sequence().unwrap();
        assert_eq!(s.k, vec![vec![1], vec![]]);
        assert!(s.i.is_empty() && s.j.is_empty() && s.m.is_empty());

        let s = Diagram::rothe(&w("132")).orthodontic_sequence().unwrap();
        assert_eq!(s.k, vec![Vec::<usize>::new(); 3]);
        assert_eq!((s.i.clone(), s.j.clone(), s.m.clone()), (vec![1], vec![1], vec![vec![2]]));

        let s = Diagram::rothe(&w("31542")).orthodontic_sequence().unwrap();
        assert_eq!(s.k, vec![vec![1], vec![], vec![], vec![], vec![]]);
        assert_eq!(s.i, vec![2, 3, 1]);
        assert_eq!(s.j, vec![1, 1, 3]);
        assert_eq!(s.m, vec![vec![], vec![2], vec![4]]);
    }

    #[test]
    fn orthodontia_rejects_forbidden_configuration() {
        let bad = Diagram::new(2, &[vec![2], vec![1]]).unwrap();
        assert_eq!(bad.orthodontic_sequence(), Err(Error::NotPercentAvoiding));
        // The override runs the steps anyway.
        assert!(bad.orthodontia(true).is_ok());
    }

    #[test]
    fn orthodontia_preserves_percent_avoidance() {
        for d in Diagram::all(3, 3).filter(Diagram::is_percent_avoiding) {
            let trace = d.orthodontia(false).unwrap();
            assert!(trace.diagrams.iter().all(Diagram::is_percent_avoiding), "{d}");
            assert!(trace.diagrams.last().unwrap().is_empty());
            let s = &trace.sequence;
            assert!(s.i.iter().all(|&i| i >= 1 && i < d.nrows()));
            let mut seen: Vec<usize> = s.k.iter().chain(s.m.iter()).flatten().copied().collect();
            let before = seen.len();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(before, seen.len(), "a column was stripped twice in {d}");
        }
    }

    #[test]
    fn dominant_iff_standard_columns() {
        for v in Permutation::all(5) {
            let d = Diagram::rothe(&v);
            let sizes: Vec<u32> = d.column_masks().iter().map(|m| m.count_ones()).collect();
            let decreasing = sizes.windows(2).all(|p| p[0] >= p[1]);
            assert_eq!(v.is_dominant(), d.all_columns_standard() && decreasing, "{v}");
            assert_eq!(v.is_dominant(), d.all_columns_standard(), "{v}");
        }
    }

    #[test]
    fn vexillary_cross_check() {
        for n in 1..=6 {
            for v in Permutation::all(n) {
                assert_eq!(v.is_vexillary(), Diagram::rothe(&v).columns_ordered_by_inclusion(), "{v}");
            }
        }
    }

    #[test]
    fn text_format() {
        let d = Diagram::rothe(&w("31542"));
        assert_eq!(d.to_string(), "n=5;1;1,3,4;;3;");
        assert_eq!("n=5;1;1,3,4;;3;".parse::<Diagram>().unwrap(), d);
        assert_eq!("n=2;1;".parse::<Diagram>().unwrap(), Diagram::rothe(&w("21")));
        assert_eq!("n=3".parse::<Diagram>().unwrap().ncols(), 0);
        match "n=3;1;4".parse::<Diagram>() {
            Err(Error::Parse(e)) => assert_eq!(e.position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!("m=3;1".parse::<Diagram>().is_err());
    }
}
