mod common;

use common::{diagonal_relation_failures, p, pairing_failures, rf, special_relation_failures, tower, triangularity_failures};
use qcapelli::family::FamilyKind;
use qcapelli::freealg::{GenId, NCPoly, Sym};
use qcapelli::scalar::RatFunc;

#[test]
fn cross_relations_are_triangular() {
    for kind in FamilyKind::ALL {
        for n in 1..=3 {
            let bad = triangularity_failures(&tower(kind, n));
            assert!(bad.is_empty(), "{kind} n={n}: {bad:?}");
        }
    }
}

#[test]
fn special_cross_relations() {
    for kind in [FamilyKind::AI, FamilyKind::AII] {
        for n in 1..=3 {
            let bad = special_relation_failures(&tower(kind, n));
            assert!(bad.is_empty(), "{kind} n={n}: {bad:?}");
        }
    }
}

#[test]
fn diagonal_cross_relations_simplify() {
    for n in 1..=3 {
        let bad = diagonal_relation_failures(&tower(FamilyKind::Diagonal, n));
        assert!(bad.is_empty(), "n={n}: {bad:?}");
    }
}

#[test]
fn rank_one_cross_rules() {
    let tw = tower(FamilyKind::AI, 1);
    assert_eq!(tw.nf(&p("d[1,1] x[1,1]")).unwrap(), p("q^4 * x[1,1] d[1,1] + q^-1"));
    let tw = tower(FamilyKind::AII, 1);
    assert_eq!(tw.nf(&p("d[1,2] x[1,2]")).unwrap(), p("q^2 * x[1,2] d[1,2] + 1"));
    let tw = tower(FamilyKind::Diagonal, 1);
    assert_eq!(tw.nf(&p("d[1,2] x[1,2]")).unwrap(), p("q^2 * x[1,2] d[1,2] + 1"));
}

#[test]
fn pairing_is_graded_duality() {
    for kind in FamilyKind::ALL {
        for n in 1..=2 {
            let bad = pairing_failures(&tower(kind, n), 3);
            assert!(bad.is_empty(), "{kind} n={n}: {bad:?}");
        }
    }
}

#[test]
fn pbw_deformation_count() {
    for kind in FamilyKind::ALL {
        let tw = tower(kind, 2);
        for r in 0..=3 {
            let mixed: usize = (0..=r).map(|k| if k == 0 { 1 } else { tw.xd.count_normal_words(k) }).sum();
            let dim = |sys: &qcapelli::freealg::RewriteSystem, u: usize| if u == 0 { 1 } else { sys.count_normal_words(u) };
            let mut product = 0;
            for u in 0..=r {
                for v in 0..=r - u {
                    product += dim(&tw.x, u) * dim(&tw.d, v);
                }
            }
            assert_eq!(mixed, product, "{kind} r={r}");
        }
    }
}

#[test]
fn normal_words_put_x_before_d() {
    let tw = tower(FamilyKind::AI, 2);
    for w in tw.xd.normal_words(3) {
        let split = w.iter().position(|g| g.sym == Sym::D).unwrap_or(w.len());
        assert!(w[split..].iter().all(|g| g.sym == Sym::D));
    }
}

#[test]
fn embedding_examples() {
    let tw = tower(FamilyKind::AI, 1);
    assert_eq!(tw.embed(&p("x[1,1]")).unwrap(), p("t[1,1] t[1,1]"));
    assert_eq!(tw.embed(&p("d[1,1]")).unwrap(), p("q^-2 * del[1,1] del[1,1]"));
    let tw = tower(FamilyKind::Diagonal, 1);
    assert_eq!(tw.embed(&p("x[1,2]")).unwrap(), p("t[1,1] t[2,2]"));
    let tw = tower(FamilyKind::AII, 1);
    assert_eq!(tw.embed(&p("x[1,2]")).unwrap(), p("t[1,1] t[2,2] + -q * t[1,2] t[2,1]"));
    // embedded generators satisfy the relations of P_θ
    for kind in FamilyKind::ALL {
        let tw = tower(kind, 2);
        for (&(a, b), rhs) in tw.x.rules() {
            let lhs = tw.embed(&NCPoly::gen(a).concat(&NCPoly::gen(b))).unwrap();
            assert_eq!(lhs, tw.embed(rhs).unwrap(), "{kind} {a}{b}");
        }
        for (&(a, b), rhs) in tw.d.rules() {
            let lhs = tw.embed(&NCPoly::gen(a).concat(&NCPoly::gen(b))).unwrap();
            assert_eq!(lhs, tw.embed(rhs).unwrap(), "{kind} {a}{b}");
        }
    }
}

#[test]
fn express_round_trip() {
    for kind in FamilyKind::ALL {
        let tw = tower(kind, 2);
        for r in 1..=2 {
            for w in tw.x.normal_words(r).into_iter().take(12) {
                let m = NCPoly::term(w, RatFunc::one());
                let back = tw.express(Sym::X, &tw.embed(&m).unwrap(), r).unwrap();
                assert_eq!(back, m, "{kind}");
            }
        }
    }
}

#[test]
fn action_and_pairing_examples() {
    let tw = tower(FamilyKind::AI, 1);
    assert_eq!(tw.act_pd_on_p(&p("d[1,1]"), &p("x[1,1]")).unwrap(), NCPoly::constant(rf("q^-1")));
    assert_eq!(tw.act_pd_on_p(&p("d[1,1]"), &p("x[1,1] x[1,1]")).unwrap(), p("(q^3 + q^-1) * x[1,1]"));
    assert_eq!(tw.pairing(&p("d[1,1]"), &p("x[1,1]")).unwrap(), rf("q^-1"));
    assert_eq!(tw.pairing(&p("d[1,1]"), &p("x[1,1] x[1,1]")).unwrap(), RatFunc::zero());
    assert_eq!(tw.pairing(&p("d[1,1] d[1,1]"), &p("x[1,1] x[1,1]")).unwrap(), rf("q^2 + q^-2"));
    // d annihilates constants; x acts by multiplication
    let tw = tower(FamilyKind::AII, 2);
    assert!(tw.act_pd_on_p(&p("d[1,2]"), &NCPoly::one()).unwrap().is_zero());
    assert_eq!(tw.act_pd_on_p(&p("x[1,2]"), &p("x[3,4]")).unwrap(), tw.x.mul(&p("x[1,2]"), &p("x[3,4]")).unwrap());
}

#[test]
fn action_is_a_module_action() {
    // (ab)·p = a·(b·p)
    for kind in FamilyKind::ALL {
        let tw = tower(kind, 2);
        let gens: Vec<GenId> = tw.d_gens().into_iter().chain(tw.x_gens()).collect();
        let target = tw.x.mul(&NCPoly::gen(tw.x_gens()[0]), &NCPoly::gen(*tw.x_gens().last().unwrap())).unwrap();
        for &a in gens.iter().take(4) {
            for &b in gens.iter().rev().take(4) {
                let ab = tw.nf(&NCPoly::gen(a).concat(&NCPoly::gen(b))).unwrap();
                let lhs = tw.act_pd_on_p(&ab, &target).unwrap();
                let rhs = tw.act_pd_on_p(&NCPoly::gen(a), &tw.act_pd_on_p(&NCPoly::gen(b), &target).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{kind} {a} {b}");
            }
        }
    }
}
