//! Randomized algebraic properties.

use orthodontia::diffops::{self, Operator};
use orthodontia::suites::{operator_identities, pi_to_del_instance};
use orthodontia::{Monomial, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NX: usize = 3;
const NY: usize = 2;

/// Polynomials in `x_1..x_3, y_1..y_2` with exponents at most `max_exp`.
fn poly(ny: usize, max_exp: u8) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_exp, NX + ny), -4i128..=4);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        Polynomial::from_terms(NX, ny, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

fn nonzero(ny: usize, max_exp: u8) -> impl Strategy<Value = Polynomial> {
    poly(ny, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

fn x_cap(f: &Polynomial) -> u32 {
    f.max_x_degree()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in poly(NY, 3), g in poly(NY, 3), h in poly(NY, 3)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(NX, NY), f.clone());
    }

    #[test]
    fn flip_is_multiplicative(f in poly(0, 3), g in poly(0, 3)) {
        let (a, b) = (x_cap(&f), x_cap(&g));
        let lhs = (&f * &g).flip(a + b).unwrap();
        prop_assert_eq!(lhs, &f.flip(a).unwrap() * &g.flip(b).unwrap());
        prop_assert_eq!(f.flip(a).unwrap().flip(a).unwrap(), f);
    }

    #[test]
    fn lowest_part_is_multiplicative(f in nonzero(NY, 3), g in nonzero(NY, 3)) {
        let lhs = (&f * &g).lowest_degree_part().unwrap();
        prop_assert_eq!(lhs, &f.lowest_degree_part().unwrap() * &g.lowest_degree_part().unwrap());
    }

    #[test]
    fn operator_relations(f in poly(1, 4)) {
        prop_assert_eq!(operator_identities(&f), None);
    }

    #[test]
    fn divided_difference_leibniz(f in poly(1, 3), g in poly(1, 3), i in 1usize..NX) {
        // ∂_i(fg) = ∂_i(f) g + s_i(f) ∂_i(g)
        let lhs = diffops::divided_difference(&(&f * &g), i).unwrap();
        let rhs = &(&diffops::divided_difference(&f, i).unwrap() * &g)
            + &(&f.swap_x(i).unwrap() * &diffops::divided_difference(&g, i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn doubled_operators_at_zero(f in poly(NY, 3), i in 1usize..NX, j in 1usize..=NY) {
        let at_zero = f.substitute_y(0);
        let pi = Operator::PiDouble(i, j).apply(&f).unwrap().substitute_y(0);
        prop_assert_eq!(pi, diffops::demazure(&at_zero, i).unwrap());
        let pibar = Operator::PiBarDouble(i, j).apply(&f).unwrap().substitute_y(0);
        prop_assert_eq!(pibar, diffops::demazure_lascoux(&at_zero, i).unwrap());
    }

    #[test]
    fn pi_to_del(seed in any::<u64>(), k in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(pi_to_del_instance(&mut rng, k), None);
    }

    #[test]
    fn json_round_trip(f in poly(NY, 3)) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Polynomial>(&text).unwrap(), f);
    }
}
