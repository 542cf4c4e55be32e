mod common;

use common::{commutator_failures, ctx, p, part, rf, vanishing_failures};
use qcapelli::capelli::{check_cartan_element, proportionality, XVariant};
use qcapelli::family::{FamilyKind, Partition};
use qcapelli::scalar::RatFunc;

#[test]
fn first_h_vectors() {
    let cases = [(FamilyKind::AI, 1, "x[1,1]"), (FamilyKind::AI, 2, "x[1,1]"), (FamilyKind::AII, 2, "x[1,2]"), (FamilyKind::Diagonal, 2, "x[1,3]")];
    for (kind, n, want) in cases {
        let h = ctx(kind, n).build_h(1).unwrap();
        assert!(proportionality(&h.poly, &p(want)).is_some(), "{kind}: {}", h.poly);
    }
}

#[test]
fn top_h_vector_of_rank_two() {
    // in type AI, rank 2, H_2 spans the weight-(2,2) space killed by E_1
    let c = ctx(FamilyKind::AI, 2);
    let h = c.build_h(2).unwrap();
    assert_eq!(h.weight, vec![2, 2]);
    assert_eq!(c.tower().weight_of(&h.poly).unwrap(), vec![2, 2]);
    assert_eq!(h.poly.terms().len(), 2);
}

#[test]
fn h_vectors_are_highest_weight() {
    for kind in FamilyKind::ALL {
        for n in 1..=3 {
            let c = ctx(kind, n);
            for r in 1..=n {
                let h = c.build_h(r).unwrap();
                let lambda = Partition::new(vec![1; r]).unwrap();
                assert_eq!(h.weight, c.tower().fam.weight_2lambda(&lambda).unwrap());
                assert_eq!(c.tower().weight_of(&h.poly).unwrap(), h.weight);
                for e in c.uq.all_e() {
                    assert!(c.uq.act_left(&e, &h.poly).unwrap().is_zero(), "{kind} n={n} r={r}");
                }
            }
        }
    }
}

#[test]
fn h_vectors_commute() {
    for kind in FamilyKind::ALL {
        let c = ctx(kind, 3);
        for a in 1..=3 {
            for b in a + 1..=3 {
                let (ha, hb) = (c.build_h(a).unwrap().poly, c.build_h(b).unwrap().poly);
                let x = &c.tower().x;
                assert_eq!(x.mul(&ha, &hb).unwrap(), x.mul(&hb, &ha).unwrap(), "{kind} {a} {b}");
            }
        }
    }
}

#[test]
fn dual_vectors_are_lowest_weight_and_orthogonal() {
    for kind in FamilyKind::ALL {
        for n in 1..=2 {
            let c = ctx(kind, n);
            for gamma in Partition::all_up_to(2, n) {
                let hs = c.build_hstar(&gamma).unwrap();
                let wt: Vec<i64> = c.tower().fam.weight_2lambda(&gamma).unwrap().iter().map(|x| -x).collect();
                assert_eq!(c.tower().weight_of(&hs).unwrap(), wt);
                for f in c.uq.all_f() {
                    assert!(c.uq.act_left(&f, &hs).unwrap().is_zero());
                }
                for mu in Partition::all_of_size(gamma.size(), n) {
                    let h = c.build_h2mu(&mu).unwrap().poly;
                    let v = c.tower().pairing(&hs, &h).unwrap();
                    assert_eq!(v.is_zero(), mu != gamma, "{kind} <H*_{gamma}, H_{mu}>");
                }
            }
        }
    }
}

#[test]
fn star_examples() {
    let c = ctx(FamilyKind::AI, 2);
    // x_{12} ↦ d_{21} = q d_{12}
    assert_eq!(c.star(&p("x[1,2]")).unwrap(), p("q * d[1,2]"));
    assert_eq!(c.build_hstar(&part("2")).unwrap(), p("d[1,1] d[1,1]"));
    let c = ctx(FamilyKind::Diagonal, 1);
    assert_eq!(c.build_hstar(&part("1")).unwrap(), p("d[1,2]"));
}

#[test]
fn rank_one_capelli_operators() {
    let c = ctx(FamilyKind::AI, 1);
    let op = c.build_capelli(&part("1")).unwrap();
    assert_eq!(op.element, p("q * x[1,1] d[1,1]"));
    assert_eq!(op.pairing, rf("q^-1"));
    for k in 0..=4 {
        let want = &(&RatFunc::q_pow(4 * k) - &RatFunc::one()) * &(&RatFunc::q_pow(4) - &RatFunc::one()).inv().unwrap();
        assert_eq!(c.eigenvalue(&part("1"), &part(&k.to_string())).unwrap(), want);
    }
    let c = ctx(FamilyKind::Diagonal, 1);
    assert_eq!(c.build_capelli(&part("1")).unwrap().element, p("x[1,2] d[1,2]"));
}

#[test]
fn capelli_normalization_and_degree() {
    for kind in FamilyKind::ALL {
        for n in 1..=2 {
            let c = ctx(kind, n);
            for i in 1..=n {
                let lambda = Partition::new(vec![1; i]).unwrap();
                let op = c.build_capelli(&lambda).unwrap();
                assert_eq!(op.degree(), 2 * i, "{kind} n={n}");
                let h = c.build_h2mu(&lambda).unwrap().poly;
                let hs = c.build_hstar(&lambda).unwrap();
                assert_eq!(op.pairing, c.tower().pairing(&hs, &h).unwrap());
                let lead: Vec<_> = op.coeffs.iter().filter(|(j, _, _)| *j == 0).collect();
                assert_eq!(lead.len(), 1);
                assert_eq!(lead[0].2, op.pairing.inv().unwrap());
                assert_eq!(op.apply(c.tower(), &h).unwrap(), h);
            }
        }
    }
}

#[test]
fn factored_application_matches_element() {
    for kind in FamilyKind::ALL {
        let c = ctx(kind, 2);
        for lambda in Partition::all_up_to(2, 2).into_iter().skip(1) {
            let op = c.build_capelli(&lambda).unwrap();
            for mu in Partition::all_up_to(2, 2) {
                let h = c.build_h2mu(&mu).unwrap().poly;
                let x = c.tower().x.mul(&p(&format!("x{}", first_gen(&c))), &h).unwrap();
                for t in [h, x] {
                    assert_eq!(op.apply(c.tower(), &t).unwrap(), c.tower().act_pd_on_p(&op.element, &t).unwrap(), "{kind} {lambda}");
                }
            }
        }
    }
}

fn first_gen(c: &qcapelli::capelli::CapelliContext) -> String {
    let (i, j) = c.tower().fam.canonical[0];
    format!("[{i},{j}]")
}

#[test]
fn dual_basis_agrees_with_invariant_solve() {
    for kind in FamilyKind::ALL {
        let c = ctx(kind, 2);
        let op = c.build_capelli(&part("1")).unwrap();
        assert_eq!(op.element, c.capelli_by_invariant_solve(&part("1")).unwrap(), "{kind}");
    }
}

#[test]
fn capelli_operators_are_invariant() {
    for kind in FamilyKind::ALL {
        let c = ctx(kind, 2);
        for lambda in Partition::all_up_to(2, 2) {
            let op = c.build_capelli(&lambda).unwrap();
            assert!(c.tower().weight_of(&op.element).unwrap().iter().all(|&x| x == 0));
            for u in c.uq.all_e().iter().chain(c.uq.all_f().iter()) {
                assert!(c.uq.act_left(u, &op.element).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn vanishing_and_semisimplicity() {
    for kind in FamilyKind::ALL {
        let bad = vanishing_failures(&ctx(kind, 2), 2);
        assert!(bad.is_empty(), "{kind}: {bad:?}");
    }
}

#[test]
fn capelli_operators_commute() {
    for kind in FamilyKind::ALL {
        let bad = commutator_failures(&ctx(kind, 2), 2);
        assert!(bad.is_empty(), "{kind}: {bad:?}");
    }
}

#[test]
fn eigenvectors_outside_the_vanishing_range() {
    // C_(1) on H_{2μ} for |μ| = 2 gives a nonzero scalar
    for kind in FamilyKind::ALL {
        let c = ctx(kind, 2);
        for mu in Partition::all_of_size(2, 2) {
            let e = c.eigenvalue(&part("1"), &mu).unwrap();
            assert!(!e.is_zero());
            assert!(c.acts_as_scalar(&part("1"), &mu, &e).unwrap());
        }
    }
}

#[test]
fn cartan_element_acts_as_k_minus_one() {
    for kind in FamilyKind::ALL {
        for n in 1..=2 {
            let c = ctx(kind, n);
            for v in XVariant::for_kind(kind) {
                let bad = check_cartan_element(c.tower(), v, 4).unwrap();
                assert!(bad.is_empty(), "{kind} n={n} {v:?}: {} failures", bad.len());
            }
        }
    }
    let c = ctx(FamilyKind::AI, 3);
    assert!(check_cartan_element(c.tower(), XVariant::Single, 2).unwrap().is_empty());
}

#[test]
fn too_many_parts_is_rejected() {
    let c = ctx(FamilyKind::AI, 1);
    assert!(c.build_capelli(&part("1,1")).is_err());
    assert!(c.build_h2mu(&part("1,1")).is_err());
}
