//! Exhaustive structural invariants over small diagrams and permutations.

use orthodontia::families::{
    along_path, double_grothendieck, family_table, grothendieck, script_g, script_s, Family,
};
use orthodontia::{Diagram, InnerOmega, PathChoice, Permutation, Polynomial};
use rayon::prelude::*;

#[test]
fn orthodontia_of_inclusion_ordered_diagrams() {
    let diagrams: Vec<Diagram> = Diagram::all(4, 4).filter(|d| d.columns_ordered_by_inclusion()).collect();
    assert!(diagrams.len() > 1000);
    diagrams.par_iter().for_each(|d| {
        let trace = d.orthodontia(false).unwrap();
        for step in &trace.diagrams {
            assert!(step.columns_ordered_by_inclusion(), "{d}: {step}");
            assert!(step.is_percent_avoiding(), "{d}: {step}");
        }
        let s = trace.sequence;
        for (k, cols) in s.k.iter().enumerate() {
            if !cols.is_empty() {
                assert!(!s.i.contains(&(k + 1)), "{d}: K_{} nonempty but row reused", k + 1);
            }
        }
        for (k, cols) in s.m.iter().enumerate() {
            if !cols.is_empty() {
                assert!(!s.i[k + 1..].contains(&s.i[k]), "{d}: i_{} reappears", k + 1);
            }
        }
    });
}

#[test]
fn script_s_leading_monomial() {
    let diagrams: Vec<Diagram> = Diagram::all(4, 4).filter(|d| d.is_percent_avoiding()).collect();
    diagrams.par_iter().for_each(|d| {
        let s = script_s(d).unwrap();
        let ys = vec![0; s.ny()];
        assert_eq!(s.coeff(&d.row_counts(), &ys), 1, "{d}");
    });
}

// The doubled Grothendieck side grows to about a million terms for the
// densest 4x4 diagrams, so the comparison stops at six boxes there.
#[test]
fn script_s_is_lowest_part_of_script_g() {
    let small = Diagram::all(3, 3);
    let sparse = Diagram::all(4, 4).filter(|d| d.num_boxes() <= 6);
    let diagrams: Vec<Diagram> = small.chain(sparse).filter(|d| d.is_percent_avoiding()).collect();
    diagrams.par_iter().for_each(|d| {
        let g = script_g(d, InnerOmega::Barred).unwrap();
        assert_eq!(g.lowest_degree_part().unwrap(), script_s(d).unwrap(), "{d}");
    });
}

#[test]
fn rothe_diagrams_avoid_the_forbidden_pattern() {
    let pattern: Permutation = "132".parse().unwrap();
    for w in Permutation::all(5) {
        let d = Diagram::rothe(&w);
        assert!(d.is_percent_avoiding(), "{w}");
        let sizes: Vec<u32> = d.column_masks().iter().map(|m| m.count_ones()).collect();
        let nested = d.all_columns_standard() && sizes.windows(2).all(|p| p[0] >= p[1]);
        assert_eq!(w.avoids_pattern(&pattern), nested, "{w}");
    }
}

#[test]
fn descending_paths_agree() {
    for w in Permutation::all(4) {
        let first = along_path(Family::DoubleGrothendieck, &w, PathChoice::First);
        let last = along_path(Family::DoubleGrothendieck, &w, PathChoice::Last);
        assert_eq!(first, last, "{w}");
    }
}

#[test]
fn single_but_not_double_factorization() {
    let big: Permutation = "2413".parse().unwrap();
    let small: Permutation = "1324".parse().unwrap();
    let x1x2 = Polynomial::monomial(&[1, 1, 0, 0], &[], 1).unwrap();
    assert_eq!(grothendieck(&big), &x1x2 * &grothendieck(&small).with_ambient(4, 0).unwrap());
    let quotient = double_grothendieck(&big).div_exact(&double_grothendieck(&small)).unwrap();
    assert!(quotient.is_none());
}

#[test]
fn schubert_is_lowest_part_of_grothendieck() {
    let groth = family_table(Family::DoubleGrothendieck, 4);
    let schub = family_table(Family::DoubleSchubert, 4);
    for (w, g) in &groth {
        assert_eq!(g.negate_y().lowest_degree_part().unwrap(), schub[w], "{w}");
    }
}
