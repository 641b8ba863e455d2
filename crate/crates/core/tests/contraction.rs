mod common;

use common::{quiver_for, rng};
use ncgeom::dder::{contract, reduced_contract, reduced_contract_dr};
use ncgeom::forms::dr_project;
use ncgeom::{sample, Rational};
use proptest::prelude::*;

fn sign(n: usize) -> Rational {
    Rational::from_integer(if n.is_multiple_of(2) { 1 } else { -1 }.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn contraction_is_a_graded_derivation(seed in any::<u64>()) {
        let q = quiver_for(seed);
        let mut r = rng(seed);
        let theta = sample::double_derivation(&q, &mut r, 2, 2);
        let (du, dv) = ((seed % 3) as usize, ((seed / 3) % 2) as usize);
        let u = sample::form(&q, &mut r, du, 2, 2);
        let v = sample::form(&q, &mut r, dv, 2, 2);
        let lhs = contract(&theta, &(&u * &v)).unwrap();
        let mut rhs = contract(&theta, &u).unwrap().right_mul(&v);
        rhs.add_assign(&contract(&theta, &v).unwrap().left_mul(&u).scale(&sign(du)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_is_flattened_contraction(seed in any::<u64>()) {
        let q = quiver_for(seed);
        let mut r = rng(seed);
        let theta = sample::double_derivation(&q, &mut r, 2, 2);
        let u = sample::form(&q, &mut r, 1 + (seed % 3) as usize, 3, 2);
        prop_assert_eq!(reduced_contract(&theta, &u).unwrap(), contract(&theta, &u).unwrap().flatten());
    }

    #[test]
    fn reduced_contraction_descends_in_degree_two(seed in any::<u64>()) {
        let q = quiver_for(seed);
        let mut r = rng(seed);
        let theta = sample::double_derivation(&q, &mut r, 2, 2);
        let du = (seed % 3) as usize;
        let u = sample::form(&q, &mut r, du, 2, 2);
        let v = sample::form(&q, &mut r, 2 - du, 2, 2);
        let uv = reduced_contract(&theta, &(&u * &v)).unwrap();
        let vu = reduced_contract(&theta, &(&v * &u)).unwrap();
        prop_assert_eq!(uv.clone(), vu.scale(&sign(du * (2 - du))));
        let w = &u * &v;
        prop_assert_eq!(reduced_contract_dr(&theta, &dr_project(&w).unwrap()).unwrap(), uv);
    }
}
