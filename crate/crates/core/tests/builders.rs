use num_traits::{One, Zero};

use qhf_core::analysis::{analyze, solve_antipode_relative};
use qhf_core::builders::*;
use qhf_core::duality::dual_construct;
use qhf_core::group::{all_subgroups, FiniteGroup, MatchedPair, Subgroup};
use qhf_core::hypergroup::{run_pipeline, QuantumGroupContext};
use qhf_core::structure::{verify_structure, Kind};
use qhf_core::sweep::catalog;
use qhf_core::{Matrix, Scalar};

fn small_groups() -> Vec<FiniteGroup> {
    catalog().iter().map(|c| c.build().unwrap()).filter(|g| g.order <= 8).collect()
}

fn one_if(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

#[test]
fn function_algebra_matches_the_group_table() {
    for g in small_groups() {
        let t = build_function_algebra(&g).unwrap();
        let cop = t.coproduct_tensor();
        let mult = t.algebra().mult_tensor();
        for x in g.elements() {
            for a in g.elements() {
                for b in g.elements() {
                    // Δ(δ_x) = Σ_{ab=x} δ_a⊗δ_b and δ_a δ_b = δ(a,b) δ_a.
                    assert_eq!(cop.get(x, a, b), &one_if(g.mul(a, b) == x));
                    assert_eq!(mult.get(a, b, x), &one_if(a == b && b == x));
                }
            }
            assert_eq!(t.counit()[x], one_if(x == g.identity));
            assert_eq!(t.apply_antipode(&t.basis(x)).unwrap(), t.basis(g.inv(x)));
        }
        assert!(verify_structure(&t).all_pass());
    }
}

#[test]
fn group_algebra_matches_the_group_table() {
    for g in small_groups() {
        let t = build_group_algebra(&g).unwrap();
        let cop = t.coproduct_tensor();
        let mult = t.algebra().mult_tensor();
        for x in g.elements() {
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(cop.get(x, a, b), &one_if(a == x && b == x));
                    assert_eq!(mult.get(a, b, x), &one_if(g.mul(a, b) == x));
                }
            }
            assert!(t.counit()[x].is_one());
            assert_eq!(t.apply_star(&t.basis(x)).unwrap(), t.basis(g.inv(x)));
        }
        assert!(verify_structure(&t).all_pass());
    }
}

#[test]
fn z2_function_algebra_by_hand() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let t = build_function_algebra(&g).unwrap();
    // Δ(δ_0) = δ_0⊗δ_0 + δ_1⊗δ_1, Δ(δ_1) = δ_0⊗δ_1 + δ_1⊗δ_0.
    assert_eq!(t.cop(&t.basis(0)), Matrix::from_int_rows(&[&[1, 0], &[0, 1]]));
    assert_eq!(t.cop(&t.basis(1)), Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
}

#[test]
fn pairing_between_function_and_group_algebra() {
    for g in small_groups() {
        let p = function_group_pairing(&g).unwrap();
        assert!(p.verify().all_pass());
    }
}

#[test]
fn haar_data_of_group_and_function_algebras() {
    for g in small_groups() {
        for t in [build_function_algebra(&g).unwrap(), build_group_algebra(&g).unwrap()] {
            let an = analyze(&t);
            assert!(an.ledger.all_pass());
            assert_eq!(an.delta.as_ref(), Some(t.unit().unwrap()));
            assert!(an.nu.as_ref().is_some_and(|n| n.is_one()));
            let phi = an.phi.as_ref().unwrap();
            assert_eq!(solve_antipode_relative(&t, phi).unwrap().clone(), t.antipode().unwrap().clone());
        }
    }
}

#[test]
fn trivial_and_full_subgroups() {
    for g in small_groups() {
        let ctx = QuantumGroupContext::new(build_function_algebra(&g).unwrap()).unwrap();
        for (h, dim) in [(Subgroup::trivial(&g), g.order), (Subgroup::whole(&g), 1)] {
            let (ind, k) = subgroup_idempotents(&g, &h).unwrap();
            assert_eq!(ind.iter().filter(|x| !x.is_zero()).count(), h.order());
            let r = run_pipeline(&ctx, &k).unwrap();
            assert!(r.all_pass(), "{:?}", r.failures());
            assert_eq!(r.quotient.dim, dim);
            assert_eq!(r.corner.dim, dim);
            let direct = double_coset_direct(&g, &h).unwrap();
            assert_eq!(direct.dim, dim);
            assert!(direct.all_pass());
        }
    }
}

#[test]
fn double_coset_blocks_in_s3() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let mut sizes: Vec<(usize, usize)> = all_subgroups(&g).iter().map(|h| (h.order(), h.double_cosets(&g).len())).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![(1, 6), (2, 2), (2, 2), (2, 2), (3, 2), (6, 1)]);
}

#[test]
fn fourier_of_the_cointegral_is_k() {
    let g = FiniteGroup::dihedral(4).unwrap();
    let t = build_function_algebra(&g).unwrap();
    let phi = analyze(&t).phi.unwrap();
    for h in all_subgroups(&g) {
        let (ind, k) = subgroup_idempotents(&g, &h).unwrap();
        let (f, _) = fourier_normalized(&t, &phi, &ind).unwrap();
        assert_eq!(f, k, "{}", h.label(&g));
    }
}

#[test]
fn identity_epimorphism_gives_the_unit() {
    let g = FiniteGroup::cyclic(4).unwrap();
    let epi = HopfEpimorphism::identity(build_function_algebra(&g).unwrap()).unwrap();
    assert!(epi.verify().all_pass());
    let x = hopf_epi_idempotent(&epi).unwrap();
    assert!(x.checks.all_pass());
    // B = A, so k = φ_A and h = 1_G, the same data as restriction to H = G.
    assert_eq!(&x.h, epi.source.unit().unwrap());
    let whole = HopfEpimorphism::restriction(&g, &Subgroup::whole(&g)).unwrap();
    assert_eq!(hopf_epi_idempotent(&whole).unwrap().k, x.k);
}

#[test]
fn corrupted_epimorphism_is_rejected() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let h = all_subgroups(&g).into_iter().find(|h| h.order() == 3).unwrap();
    let epi = HopfEpimorphism::restriction(&g, &h).unwrap();
    let mut map = epi.map.clone();
    let v = map[(0, 0)].clone() + Scalar::one();
    map[(0, 0)] = v;
    assert!(HopfEpimorphism::new(epi.source.clone(), epi.target.clone(), map).is_err());
}

#[test]
fn bicrossproduct_with_trivial_actions_is_a_tensor_product() {
    let mp = MatchedPair::trivial(FiniteGroup::cyclic(3).unwrap(), FiniteGroup::cyclic(2).unwrap()).unwrap();
    assert!(mp.right_action_trivial());
    let a = bicrossproduct_right_left(&mp).unwrap();
    let b = bicrossproduct_left_right(&mp).unwrap();
    assert_eq!(a.dim(), 6);
    assert!(a.algebra().is_commutative());
    assert!(verify_structure(&a).all_pass());
    assert!(verify_structure(&b).all_pass());
    assert_eq!(mp.right_orbits().len(), 3);
    let bk = bicross_idempotent(&mp, &b).unwrap();
    assert!(bk.central);
}

#[test]
fn dual_of_the_s3_bicrossproduct_carries_the_b_star() {
    let mp = MatchedPair::s3_example();
    let a = bicrossproduct_right_left(&mp).unwrap();
    let b = bicrossproduct_left_right(&mp).unwrap();
    assert_eq!(a.kind(), Kind::QuantumGroup);
    let (dual, pairing) = dual_construct(&a).unwrap();
    assert!(pairing.verify().all_pass());
    assert_eq!(dual.star(), b.star());
    assert!(bicross_pairing(&mp).unwrap().verify().all_pass());
    let bk = bicross_idempotent(&mp, &b).unwrap();
    assert!(!bk.central);
    assert!(!bk.right_action_trivial);
    assert!(bk.report.is_regular());
}
