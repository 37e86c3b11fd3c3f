use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use mcop::config::random_marking;
use mcop::linalg::{
    fourier_motzkin_feasible, integer_kernel, smith_normal_form, strict_lp_feasible, ExactMatrix,
    StrictInequalitySystem, StrictOutcome,
};
use mcop::pipedream::{perm_from_pipes, perm_from_set, twisted_perm};
use mcop::polytope::{lattice_points, Weight};
use mcop::poset::{ElementSet, Kind, Poset};
use mcop::rep::weyl_dim;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn sized_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn poset_strategy() -> impl Strategy<Value = Poset> {
    prop_oneof![Just((Kind::A, 3)), Just((Kind::A, 4)), Just((Kind::C, 2))]
        .prop_map(|(k, n)| Poset::new(k, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_factorization(rows in sized_matrix()) {
        let m = ExactMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), ExactMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), ExactMatrix::identity(m.cols()));
        let f = s.invariant_factors();
        prop_assert_eq!(f.len(), m.rank());
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_basis_is_annihilated(rows in sized_matrix()) {
        let m = ExactMatrix::from_rows(&rows).unwrap();
        let k = integer_kernel(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn simplex_agrees_with_fourier_motzkin(rows in (1usize..7).prop_flat_map(|r| matrix(r, 3))) {
        let mut sys = StrictInequalitySystem::new(3);
        for r in rows.iter().filter(|r| r.iter().any(|&x| x != 0)) {
            sys.push(r.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        }
        let lp = strict_lp_feasible(&sys).unwrap();
        let fm = fourier_motzkin_feasible(&sys).unwrap();
        match (&lp, &fm) {
            (StrictOutcome::Feasible(a), StrictOutcome::Feasible(b)) => {
                prop_assert!(sys.is_satisfied_by(a) && sys.is_satisfied_by(b));
            }
            (StrictOutcome::Infeasible, StrictOutcome::Infeasible) => {}
            _ => prop_assert!(false, "simplex {:?} vs elimination {:?}", lp, fm),
        }
    }

    #[test]
    fn random_markings_count_dimensions(
        p in poset_strategy(),
        seed in any::<u64>(),
        density in 0.0f64..=1.0,
        entries in prop::collection::vec(0u32..=2, 3),
    ) {
        let o = random_marking(&p, seed, density).unwrap();
        prop_assert!(p.diagonal().is_subset(o.members()));
        let lambda = Weight::new(entries[..p.weight_len()].to_vec());
        let count = lattice_points(&p, &o, &lambda).unwrap().len();
        prop_assert_eq!(BigInt::from(count), weyl_dim(p.kind(), p.n(), &lambda).unwrap());
    }

    #[test]
    fn pipes_agree_with_products(p in poset_strategy(), bits in any::<u128>()) {
        let m = ElementSet::from_bits(bits & p.full().bits());
        prop_assert_eq!(perm_from_pipes(&p, m), perm_from_set(&p, m));
        prop_assert!(twisted_perm(&p, m, m).is_identity());
    }
}
