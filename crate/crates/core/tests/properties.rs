mod common;

use common::{random_matrix, random_module, random_unimodular};
use crystalk::abelian::{FGAbelianGroup, GroupExpression};
use crystalk::linalg::{
    cokernel_structure, hermite_normal_form, kernel_basis, pure_kernel, rational_rank, smith_invariants,
    smith_normal_form, solve_integer, IntMatrix,
};
use crystalk::repring::{a_j, a_j_inclusion_exclusion, r_vector, s_m};
use crystalk::zpmod::ZpModule;
use crystalk::Int;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..6, 1usize..6, any::<u64>()).prop_map(|(r, c, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_matrix(&mut rng, r, c, 9)
    })
}

fn group() -> impl Strategy<Value = FGAbelianGroup> {
    (0usize..4, prop::collection::vec(1u64..40, 0..4))
        .prop_map(|(f, t)| FGAbelianGroup::new(f, t.into_iter().map(Int::from)))
}

fn module(p: u64) -> impl Strategy<Value = ZpModule> {
    any::<u64>().prop_map(move |seed| random_module(&mut ChaCha8Rng::seed_from_u64(seed), p, 6))
}

fn chain_ok(d: &[Int]) -> bool {
    d.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[0].divides(&w[1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_factorisation(m in matrix()) {
        let (d, u, v) = smith_normal_form(&m);
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        let diag: Vec<Int> = (0..d.rows().min(d.cols())).map(|i| d.row(i)[i].clone()).collect();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        prop_assert!(chain_ok(&diag));
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                prop_assert!(i == j || d.row(i)[j].is_zero());
            }
        }
        let nonzero: Vec<Int> = diag.into_iter().filter(|x| !x.is_zero()).collect();
        prop_assert_eq!(smith_invariants(&m), nonzero);
    }

    #[test]
    fn hnf_is_left_multiple(m in matrix()) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn kernel_is_pure(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols(), m.cols() - rational_rank(&m));
        prop_assert!(m.mul(&k).is_zero());
        prop_assert!(cokernel_structure(&k).torsion().is_empty());
        prop_assert_eq!(pure_kernel(&m).rank(), k.cols());
    }

    #[test]
    fn cokernel_free_rank(m in matrix()) {
        prop_assert_eq!(cokernel_structure(&m).free_rank(), m.rows() - rational_rank(&m));
    }

    #[test]
    fn cokernel_unimodular_invariance(m in matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, _) = random_unimodular(&mut rng, m.rows(), 6);
        let (v, _) = random_unimodular(&mut rng, m.cols(), 6);
        prop_assert_eq!(cokernel_structure(&u.mul(&m).mul(&v)), cokernel_structure(&m));
    }

    #[test]
    fn solve_integer_finds_solutions(m in matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x0 = random_matrix(&mut rng, m.cols(), 1, 5).column(0);
        let b = m.mul_vec(&x0);
        let x = solve_integer(&m, &b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn direct_sum_laws(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&FGAbelianGroup::trivial()), a.clone());
    }

    #[test]
    fn duals(a in group()) {
        prop_assert_eq!(a.hom_dual(), FGAbelianGroup::free(a.free_rank()));
        prop_assert_eq!(a.ext_dual(), a.torsion_subgroup());
        prop_assert_eq!(a.hom_dual().direct_sum(&a.ext_dual()), a.clone());
        prop_assert_eq!(a.ext_dual().ext_dual(), a.ext_dual());
    }

    #[test]
    fn expression_round_trip(a in group(), b in group()) {
        let e = GroupExpression::from_group(&a).plus(&GroupExpression::from_group(&b));
        let once = e.evaluate();
        prop_assert_eq!(once.evaluate(), once.clone());
        prop_assert_eq!(once.to_group(), Some(a.direct_sum(&b)));
        let parsed: GroupExpression = once.to_string().parse().unwrap();
        prop_assert_eq!(parsed.to_string(), once.to_string());
        prop_assert_eq!(e.free_rank() as usize, a.free_rank() + b.free_rank());
    }

    #[test]
    fn a_j_counts_agree(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), k in 1u64..4, j in 0u64..40) {
        let n = k * (p - 1);
        prop_assert_eq!(a_j(p, k, j), a_j_inclusion_exclusion(p, k, j));
        if j <= n {
            prop_assert_eq!(a_j(p, k, j), a_j(p, k, n - j));
        } else {
            prop_assert_eq!(a_j(p, k, j), 0);
        }
        let pk = p.pow(k as u32);
        prop_assert_eq!(s_m(p, k, n + 1), pk);
        prop_assert!(s_m(p, k, j) <= s_m(p, k, j + 1));
    }

    #[test]
    fn r_vector_symmetric_for_odd_p(p in prop::sample::select(vec![3u64, 5, 7]), k in 1u64..3) {
        let r = r_vector(p, k).unwrap();
        let n = (k * (p - 1)) as usize;
        prop_assert_eq!(r.len(), n + 1);
        for m in 0..=n {
            prop_assert_eq!(r[m], r[n - m]);
        }
    }
}

fn tate_properties(m: &ZpModule) -> Result<(), TestCaseError> {
    let p = m.p();
    let dual = m.dual();
    for i in -3..=3 {
        let t = m.tate(i).unwrap();
        prop_assert_eq!(&t, &dual.tate(-i).unwrap(), "duality at i={}", i);
        prop_assert_eq!(&t, &m.tate(i + 2).unwrap(), "periodicity at i={}", i);
        prop_assert!(t.free_rank() == 0 && t.elementary_rank(p).is_some());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tate_random_modules_p3(m in module(3)) {
        tate_properties(&m)?;
    }

    #[test]
    fn tate_random_modules_p5(m in module(5)) {
        tate_properties(&m)?;
    }

    #[test]
    fn module_constructions_keep_order(m in module(3), n in module(3)) {
        prop_assert!(m.has_valid_order());
        prop_assert!(m.dual().has_valid_order());
        prop_assert!(m.direct_sum(&n).unwrap().has_valid_order());
        let t = m.tensor(&n).unwrap();
        prop_assert!(t.has_valid_order());
        prop_assert_eq!(t.rank(), m.rank() * n.rank());
        for j in 0..=m.rank().min(3) {
            prop_assert!(m.exterior_power(j).unwrap().has_valid_order());
        }
    }

    #[test]
    fn tate_additive(m in module(3), n in module(3)) {
        let s = m.direct_sum(&n).unwrap();
        for i in 0..2 {
            prop_assert_eq!(s.tate(i).unwrap(), m.tate(i).unwrap().direct_sum(&n.tate(i).unwrap()));
        }
    }

    #[test]
    fn regular_tensor_is_acyclic(m in module(3)) {
        let free = ZpModule::regular(3).unwrap().tensor(&m).unwrap();
        prop_assert!(free.tate(0).unwrap().is_trivial());
        prop_assert!(free.tate(1).unwrap().is_trivial());
    }

    #[test]
    fn norm_sequence(m in module(5)) {
        let n = m.norm_matrix();
        let shifted = m.action().sub(&IntMatrix::identity(m.rank()));
        prop_assert!(n.mul(&shifted).is_zero());
        prop_assert!(shifted.mul(&n).is_zero());
        prop_assert_eq!(rational_rank(&n), m.invariants_rank());
    }
}
