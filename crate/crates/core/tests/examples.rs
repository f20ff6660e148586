use crystalk::abelian::{ko_point_table, FGAbelianGroup, GroupExpression, Summand};
use crystalk::crystal::oracle::brute_force_cohomology_bgamma;
use crystalk::crystal::{
    abelianization, canonical_gamma, euler_characteristic_quotient, finite_subgroup_data, validate_gamma, Theorems,
};
use crystalk::linalg::{
    cokernel_structure, hermite_normal_form, kernel_basis, rational_rank, smith_normal_form, solve_integer, IntMatrix,
};
use crystalk::repring::{a_vector, lambda_class, lambda_class_total, r_sum_identities, r_vector, s_m, RepClass};
use crystalk::zpmod::ZpModule;
use crystalk::{Error, Int};
use num_bigint::BigInt;
use num_rational::BigRational;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn g(free: usize, torsion: &[u64]) -> FGAbelianGroup {
    FGAbelianGroup::new(free, torsion.iter().map(|&t| Int::from(t)))
}

fn grp(e: GroupExpression) -> FGAbelianGroup {
    e.evaluate().to_group().unwrap()
}

fn rep(p: u64, q: i64, reg: i64) -> RepClass {
    let r = |x: i64| BigRational::from_integer(BigInt::from(x));
    RepClass::new(p, r(q), r(reg))
}

const CYC3: [[i64; 2]; 2] = [[0, -1], [1, -1]];

#[test]
fn normal_form_examples() {
    assert_eq!(smith_normal_form(&IntMatrix::identity(2)).0, IntMatrix::identity(2));
    assert_eq!(smith_normal_form(&m(&[&[3]])).0, m(&[&[3]]));
    assert_eq!(smith_normal_form(&m(&[&[2, 4], &[6, 8]])).0, m(&[&[2, 0], &[0, 4]]));
    assert_eq!(hermite_normal_form(&IntMatrix::identity(3)).0, IntMatrix::identity(3));
    assert_eq!(hermite_normal_form(&m(&[&[0, 1], &[1, 0]])).0, IntMatrix::identity(2));
    assert_eq!(hermite_normal_form(&m(&[&[2, 1], &[0, 3]])).0, m(&[&[2, 1], &[0, 3]]));
}

#[test]
fn lattice_examples() {
    let k = kernel_basis(&m(&[&[1, 1]]));
    assert_eq!(k.cols(), 1);
    let v = k.column(0);
    assert!(v == ints(&[1, -1]) || v == ints(&[-1, 1]));
    assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
    let shifted = IntMatrix::from_rows(&CYC3).sub(&IntMatrix::identity(2));
    assert_eq!(kernel_basis(&shifted).cols(), 0);

    assert_eq!(solve_integer(&m(&[&[2]]), &ints(&[4])), Some(ints(&[2])));
    assert_eq!(solve_integer(&m(&[&[2]]), &ints(&[3])), None);
    assert_eq!(solve_integer(&m(&[&[1, 1], &[0, 2]]), &ints(&[3, 4])), Some(ints(&[1, 2])));

    assert_eq!(cokernel_structure(&m(&[&[3]])), FGAbelianGroup::cyclic(3));
    assert_eq!(cokernel_structure(&IntMatrix::identity(2)), FGAbelianGroup::trivial());
    assert_eq!(cokernel_structure(&shifted), FGAbelianGroup::cyclic(3));

    assert_eq!(rational_rank(&IntMatrix::identity(4)), 4);
    assert_eq!(rational_rank(&IntMatrix::zeros(3, 2)), 0);
    assert_eq!(rational_rank(&m(&[&[1, 2], &[2, 4]])), 1);
}

#[test]
fn abelian_group_examples() {
    assert_eq!(g(0, &[2]).direct_sum(&g(0, &[3])), g(0, &[6]));
    assert_eq!(g(1, &[]).direct_sum(&g(2, &[])), g(3, &[]));
    assert_eq!(g(0, &[2]).direct_sum(&g(0, &[4])).torsion(), &ints(&[2, 4])[..]);
    assert_eq!(g(3, &[5]).hom_dual(), g(3, &[]));
    assert_eq!(g(0, &[7]).hom_dual(), FGAbelianGroup::trivial());
    assert_eq!(g(3, &[5]).ext_dual(), g(0, &[5]));
    assert_eq!(g(4, &[]).ext_dual(), FGAbelianGroup::trivial());
    assert_eq!(g(0, &[2, 4]).ext_dual(), g(0, &[2, 4]));

    assert_eq!(ko_point_table(0, false), FGAbelianGroup::free(1));
    assert_eq!(ko_point_table(-4, false), FGAbelianGroup::free(1));
    assert_eq!(ko_point_table(-1, true), FGAbelianGroup::trivial());

    assert_eq!(grp(GroupExpression::new([Summand::ko(1, 3)])), FGAbelianGroup::elementary(2, 3));
    assert_eq!(grp(GroupExpression::new([Summand::ko(3, 5)])), FGAbelianGroup::trivial());
    assert_eq!(grp(GroupExpression::new([Summand::Free(2), Summand::ko(4, 1)])), FGAbelianGroup::free(3));
}

#[test]
fn module_examples() {
    let p = 3;
    let cyc = ZpModule::cyclotomic(p).unwrap();
    let reg = ZpModule::regular(p).unwrap();
    let triv = ZpModule::trivial(p, 1).unwrap();
    assert_eq!(ZpModule::trivial(p, 2).unwrap().direct_sum(&ZpModule::trivial(p, 3).unwrap()).unwrap(), ZpModule::trivial(p, 5).unwrap());
    assert_eq!(cyc.exterior_power(0).unwrap(), triv);
    assert_eq!(cyc.exterior_power(2).unwrap(), triv);
    assert_eq!(ZpModule::trivial(p, 4).unwrap().invariants_rank(), 4);
    assert_eq!(cyc.invariants_rank(), 0);
    let (r, basis) = reg.invariants();
    assert_eq!(r, 1);
    let v = basis.column(0);
    assert!(v.iter().all(|x| *x == v[0]) && v[0].abs().is_one());
    assert_eq!(ZpModule::trivial(p, 2).unwrap().coinvariants(), FGAbelianGroup::free(2));
    assert_eq!(cyc.coinvariants(), FGAbelianGroup::cyclic(3));
    assert_eq!(reg.coinvariants(), FGAbelianGroup::free(1));

    for p in [2, 3, 5, 7] {
        let triv = ZpModule::trivial(p, 1).unwrap();
        let reg = ZpModule::regular(p).unwrap();
        let cyc = ZpModule::cyclotomic(p).unwrap();
        assert_eq!(triv.tate(0).unwrap(), FGAbelianGroup::cyclic(p));
        for i in -2..=2 {
            assert!(reg.tate(i).unwrap().is_trivial());
        }
        assert!(cyc.tate(0).unwrap().is_trivial());
        assert_eq!(cyc.tate(1).unwrap(), FGAbelianGroup::cyclic(p));
        assert_eq!(triv.group_homology(1).unwrap(), FGAbelianGroup::cyclic(p));
    }
    assert_eq!(cyc.group_cohomology(1).unwrap(), cyc.coinvariants());
}

#[test]
fn representation_ring_examples() {
    assert_eq!(lambda_class(3, 0).unwrap(), RepClass::trivial(3));
    assert_eq!(lambda_class(5, 1).unwrap(), rep(5, -1, 1));
    assert_eq!(lambda_class(3, 2).unwrap(), RepClass::trivial(3));
    assert_eq!(lambda_class_total(3, 2, 0).unwrap(), RepClass::trivial(3));
    assert_eq!(lambda_class_total(3, 2, 2).unwrap(), rep(3, 3, 1));
    assert!(lambda_class_total(3, 1, 3).unwrap().is_zero());

    assert_eq!(r_vector(3, 1).unwrap(), vec![1, 0, 1]);
    assert_eq!(r_vector(7, 1).unwrap(), vec![1, 0, 3, 2, 3, 0, 1]);
    assert_eq!(r_vector(3, 2).unwrap(), vec![1, 0, 4, 0, 1]);
    assert_eq!(a_vector(3, 2), vec![1, 2, 3, 2, 1]);
    for p in [2u64, 3, 5, 7] {
        assert!(a_vector(p, 1).iter().all(|&a| a == 1));
        for mm in 0..=p + 3 {
            assert_eq!(s_m(p, 1, mm), mm.min(p));
        }
    }

    let s = r_sum_identities(3, 1).unwrap();
    assert_eq!((s.sum_all, s.alternating), (2, 2));
    let s = r_sum_identities(3, 2).unwrap();
    assert_eq!((s.sum_all, s.sum_even, s.sum_odd, s.alternating), (6, 6, 0, 6));
    let s = r_sum_identities(2, 3).unwrap();
    assert_eq!((s.sum_even, s.sum_odd), (4, 0));
}

#[test]
fn descriptor_examples() {
    let d = validate_gamma(3, IntMatrix::from_rows(&CYC3)).unwrap();
    assert_eq!((d.n, d.k), (2, 1));
    assert!(matches!(validate_gamma(3, IntMatrix::identity(2)), Err(Error::WrongOrder(_))));
    let dinf = validate_gamma(2, m(&[&[-1]])).unwrap();
    assert_eq!((dinf.n, dinf.k), (1, 1));

    assert_eq!(canonical_gamma(3, 1).unwrap(), d);
    for k in 1..4 {
        assert_eq!(canonical_gamma(2, k).unwrap().rho, IntMatrix::identity(k).neg());
    }
    assert_eq!(canonical_gamma(5, 2).unwrap().n, 8);

    let f = finite_subgroup_data(&d).unwrap();
    assert_eq!((f.cokernel, f.class_count, f.fixed_point_count), (FGAbelianGroup::cyclic(3), 3, 3));
    let f = finite_subgroup_data(&dinf).unwrap();
    assert_eq!((f.cokernel, f.class_count), (FGAbelianGroup::cyclic(2), 2));
    let f = finite_subgroup_data(&canonical_gamma(3, 2).unwrap()).unwrap();
    assert_eq!((f.cokernel, f.class_count), (FGAbelianGroup::elementary(3, 2), 9));

    assert_eq!(abelianization(&d).unwrap(), FGAbelianGroup::elementary(3, 2));
    assert_eq!(abelianization(&dinf).unwrap(), FGAbelianGroup::elementary(2, 2));
    assert_eq!(abelianization(&canonical_gamma(5, 2).unwrap()).unwrap(), FGAbelianGroup::elementary(5, 3));

    assert_eq!(euler_characteristic_quotient(&d).unwrap(), 2);
    assert_eq!(euler_characteristic_quotient(&canonical_gamma(3, 2).unwrap()).unwrap(), 6);
    assert_eq!(euler_characteristic_quotient(&dinf).unwrap(), 1);
}

#[test]
fn cohomology_examples() {
    let t31 = Theorems::for_parameters(3, 1).unwrap();
    let t32 = Theorems::for_parameters(3, 2).unwrap();
    assert_eq!(grp(t31.cohomology_bgamma(2).unwrap()), g(1, &[3, 3]));
    assert_eq!(grp(t31.homology_bgamma(3).unwrap()), FGAbelianGroup::elementary(3, 3));
    for t in [&t31, &t32] {
        assert!(t.cohomology_quotient(1).unwrap().evaluate().is_zero());
        assert!(t.restriction_map_data(1).unwrap().kernel.evaluate().is_zero());
        assert!(t.restriction_map_data(0).unwrap().kernel.evaluate().is_zero());
    }
    assert!(t31.cohomology_quotient(3).unwrap().evaluate().is_zero());
    assert_eq!(grp(t32.cohomology_quotient(3).unwrap()), FGAbelianGroup::elementary(3, 3));
    assert_eq!(grp(t31.restriction_map_data(2).unwrap().image_torsion), FGAbelianGroup::elementary(3, 3));

    let d = canonical_gamma(3, 1).unwrap();
    assert_eq!(grp(brute_force_cohomology_bgamma(&d, 0).unwrap()), FGAbelianGroup::free(1));
    assert!(brute_force_cohomology_bgamma(&d, 1).unwrap().evaluate().is_zero());
}
