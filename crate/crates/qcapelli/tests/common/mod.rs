#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use qcapelli::algebras::relations::cross_constant;
use qcapelli::algebras::AlgebraTower;
use qcapelli::capelli::CapelliContext;
use qcapelli::family::{standard_r, FamilyDescriptor, FamilyKind, Partition};
use qcapelli::freealg::{word, GenId, NCPoly, Sym};
use qcapelli::scalar::linalg::Matrix;
use qcapelli::scalar::RatFunc;
use qcapelli::uqmod::Uq;

type Cache = Mutex<HashMap<(FamilyKind, usize), Arc<CapelliContext>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Shared context per (family, n) within one test binary.
pub fn ctx(kind: FamilyKind, n: usize) -> Arc<CapelliContext> {
    if let Some(c) = cache().lock().unwrap().get(&(kind, n)) {
        return c.clone();
    }
    let fam = FamilyDescriptor::new(kind, n).unwrap();
    let tower = Arc::new(AlgebraTower::build(&fam).unwrap());
    let c = Arc::new(CapelliContext::new(Arc::new(Uq::new(tower).unwrap())));
    cache().lock().unwrap().entry((kind, n)).or_insert(c).clone()
}

pub fn tower(kind: FamilyKind, n: usize) -> Arc<AlgebraTower> {
    ctx(kind, n).uq.tower.clone()
}

pub fn uq(kind: FamilyKind, n: usize) -> Arc<Uq> {
    ctx(kind, n).uq.clone()
}

pub fn p(s: &str) -> NCPoly {
    NCPoly::parse(s).unwrap()
}

pub fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Weyl dimension of the gl_N module with highest weight w.
pub fn weyl_dimension(w: &[i64]) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            num *= (w[i] - w[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

fn xd(e: usize, f: usize, a: usize, b: usize) -> qcapelli::freealg::Word {
    word(&[GenId::x(e, f), GenId::d(a, b)])
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Cross rules d_{ab}x_{ef} violating the triangular shape
/// q^{δ_af+δ_ae+δ_bf+δ_be}x_{ef}d_{ab} + constant + higher x_{e'f'}d_{a'b'}.
pub fn triangularity_failures(tw: &AlgebraTower) -> Vec<String> {
    let fam = &tw.fam;
    let mut bad = Vec::new();
    for &(a, b) in &fam.canonical {
        for &(e, f) in &fam.canonical {
            let Some(rule) = tw.xd.rule(GenId::d(a, b), GenId::x(e, f)) else {
                bad.push(format!("no rule for d{a}{b} x{e}{f}"));
                continue;
            };
            let mut rest = rule.clone();
            let lead = RatFunc::q_pow(delta(a, f) + delta(a, e) + delta(b, f) + delta(b, e));
            rest.add_term(xd(e, f, a, b), -lead);
            if (a, b) == (e, f) {
                rest.add_term(Default::default(), -cross_constant(fam, a, b));
            }
            let ok = rest.terms().keys().all(|w| {
                if w.len() != 2 || w[0].sym != Sym::X || w[1].sym != Sym::D {
                    return false;
                }
                let ((e2, f2), (a2, b2)) = (w[0].idx(), w[1].idx());
                e2 >= e && f2 >= f && a2 >= a && b2 >= b && (e2, f2, a2, b2) != (e, f, a, b)
            });
            if !ok {
                bad.push(format!("d{a}{b} x{e}{f} -> {rule}"));
            }
        }
    }
    bad
}

/// The special cross relations for d_{an}x_{en} (types AI, AII) and
/// d_{nn}x_{ef} (type AI), compared with the rewrite rules.
pub fn special_relation_failures(tw: &AlgebraTower) -> Vec<String> {
    let fam = &tw.fam;
    let one = RatFunc::one();
    let m = fam.big_n;
    let mut bad = Vec::new();
    let mut check = |lhs: (usize, usize, usize, usize), want: NCPoly| {
        let (a, b, e, f) = lhs;
        let got = tw.xd.rule(GenId::d(a, b), GenId::x(e, f)).cloned().unwrap_or_default();
        if got != want {
            bad.push(format!("d{a}{b} x{e}{f}: got {got}, want {want}"));
        }
    };
    if fam.kind == FamilyKind::Diagonal {
        return bad;
    }
    for a in 1..m {
        for e in 1..m {
            let mut want = NCPoly::term(xd(e, m, a, m), RatFunc::q_pow(1 + delta(a, e)));
            if a == e {
                // x_{2n,2n} = 0 in type AII
                let top = if fam.kind == FamilyKind::AII { m - 1 } else { m };
                for a2 in a + 1..=top {
                    let c = &RatFunc::q_pow(2 + delta(a2, m)) * &(&RatFunc::q_pow(-2) - &one);
                    want.add_term(xd(a2, m, a2, m), -c);
                }
                want.add_term(Default::default(), cross_constant(fam, a, m));
            }
            check((a, m, e, m), want);
        }
    }
    if fam.kind == FamilyKind::AI {
        let n = m;
        for &(e, f) in &fam.canonical {
            let mut want = NCPoly::term(xd(e, f, n, n), RatFunc::q_pow(2 * delta(n, f) + 2 * delta(n, e)));
            if e == n && f == n {
                want.add_term(Default::default(), RatFunc::q_pow(-1));
            }
            check((n, n, e, f), want);
        }
    }
    bad
}

/// Diagonal cross rules against
/// d_{a,b+n}x_{e,f+n} = Σ (R^{t2})^{rl}_{ea}(R^{t2})^{jk}_{fb} x_{r,j+n}d_{l,k+n} + δ_ae δ_bf.
pub fn diagonal_relation_failures(tw: &AlgebraTower) -> Vec<String> {
    let n = tw.fam.n;
    let rt2 = |i: usize, j: usize, k: usize, l: usize| standard_r(i, l, k, j);
    let mut bad = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for e in 1..=n {
                for f in 1..=n {
                    let mut want = NCPoly::zero();
                    for r in 1..=n {
                        for l in 1..=n {
                            for j in 1..=n {
                                for k in 1..=n {
                                    let c = &rt2(r, l, e, a) * &rt2(j, k, f, b);
                                    if !c.is_zero() {
                                        want.add_term(xd(r, j + n, l, k + n), c);
                                    }
                                }
                            }
                        }
                    }
                    if a == e && b == f {
                        want.add_term(Default::default(), RatFunc::one());
                    }
                    let got = tw.xd.rule(GenId::d(a, b + n), GenId::x(e, f + n)).cloned().unwrap_or_default();
                    if got != want {
                        bad.push(format!("d{a},{} x{e},{}: got {got}, want {want}", b + n, f + n));
                    }
                }
            }
        }
    }
    bad
}

/// Degree-r pairing blocks (by weight) that are not square and invertible,
/// and cross-degree pairings that do not vanish.
pub fn pairing_failures(tw: &AlgebraTower, max_r: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for r in 1..=max_r {
        let xs = tw.x.normal_words(r);
        let ds = tw.d.normal_words(r);
        let mut weights: Vec<Vec<i64>> = xs.iter().map(|w| tw.word_weight(w)).collect();
        weights.sort();
        weights.dedup();
        for wt in weights {
            let neg: Vec<i64> = wt.iter().map(|v| -v).collect();
            let bx: Vec<_> = xs.iter().filter(|w| tw.word_weight(w) == wt).collect();
            let bd: Vec<_> = ds.iter().filter(|w| tw.word_weight(w) == neg).collect();
            if bx.len() != bd.len() {
                bad.push(format!("r={r} weight {wt:?}: {} x vs {} d monomials", bx.len(), bd.len()));
                continue;
            }
            let rows = bd
                .iter()
                .map(|d| bx.iter().map(|x| tw.pairing(&NCPoly::term((*d).clone(), RatFunc::one()), &NCPoly::term((*x).clone(), RatFunc::one())).unwrap()).collect())
                .collect();
            let g = Matrix::from_rows(rows);
            if g.rank() != bx.len() {
                bad.push(format!("r={r} weight {wt:?}: Gram matrix singular"));
            }
        }
        // cross degrees: a few d-monomials of degree r against x of degree s ≠ r
        for s in 0..=max_r {
            if s == r {
                continue;
            }
            let xs_s = if s == 0 { vec![Default::default()] } else { tw.x.normal_words(s) };
            for d in ds.iter().take(4) {
                for x in xs_s.iter().take(6) {
                    let v = tw.pairing(&NCPoly::term(d.clone(), RatFunc::one()), &NCPoly::term(x.clone(), RatFunc::one())).unwrap();
                    if !v.is_zero() {
                        bad.push(format!("<deg {r}, deg {s}> nonzero"));
                    }
                }
            }
        }
    }
    bad
}

/// Eigenvalue conditions of the vanishing property: C_λ acts on H_{2μ} by 1
/// if μ = λ and by 0 if |μ| ≤ |λ|, μ ≠ λ; also by a scalar on all of U·H_{2μ}.
pub fn vanishing_failures(c: &CapelliContext, max_lambda: u32) -> Vec<String> {
    let n = c.tower().fam.n;
    let mut bad = Vec::new();
    for lambda in Partition::all_up_to(max_lambda, n) {
        for mu in Partition::all_up_to(lambda.size(), n) {
            let want = if mu == lambda { RatFunc::one() } else { RatFunc::zero() };
            match c.eigenvalue(&lambda, &mu) {
                Ok(e) if e == want => {}
                Ok(e) => bad.push(format!("eig({lambda},{mu}) = {e}")),
                Err(e) => bad.push(format!("eig({lambda},{mu}): {e}")),
            }
            if !c.acts_as_scalar(&lambda, &mu, &want).unwrap_or(false) {
                bad.push(format!("C_{lambda} not scalar on U·H_2{mu}"));
            }
        }
    }
    bad
}

/// Nonzero commutators C_λC_μ − C_μC_λ for |λ|, |μ| ≤ max.
pub fn commutator_failures(c: &CapelliContext, max: u32) -> Vec<String> {
    let parts = Partition::all_up_to(max, c.tower().fam.n);
    let mut bad = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !c.commutator(a, b).map(|z| z.is_zero()).unwrap_or(false) {
                bad.push(format!("[C_{a}, C_{b}] ≠ 0"));
            }
        }
    }
    bad
}

fn t2(a: (usize, usize), b: (usize, usize)) -> NCPoly {
    NCPoly::term(word(&[GenId::t(a.0, a.1), GenId::t(b.0, b.1)]), RatFunc::one())
}

/// The quantum matrix relations written out by hand: (i) row and column
/// q-commutation, (ii) the two four-index relations.
pub fn listed_relations(n: usize) -> Vec<NCPoly> {
    let q = RatFunc::q();
    let mut v = Vec::new();
    for k in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                v.push(t2((k, i), (k, j)).sub(&t2((k, j), (k, i)).scale(&q)));
                v.push(t2((i, k), (j, k)).sub(&t2((j, k), (i, k)).scale(&q)));
            }
        }
    }
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    v.push(t2((i, l), (k, j)).sub(&t2((k, j), (i, l))));
                    let lhs = t2((i, j), (k, l)).sub(&t2((k, l), (i, j)));
                    v.push(lhs.sub(&t2((k, j), (i, l)).scale(&RatFunc::q_minus_qinv())));
                }
            }
        }
    }
    v
}

pub fn all_t(n: usize) -> Vec<GenId> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| GenId::t(i, j))).collect()
}

/// The special P_θ relations: x_{en}x_{nn} = q²x_{nn}x_{en} and
/// x_{an}x_{en} = q x_{en}x_{an} (a < e < n) in type AI, the latter with n
/// replaced by 2n in type AII.
pub fn p_theta_special_failures(tw: &AlgebraTower) -> Vec<String> {
    let m = tw.fam.big_n;
    let mut rels = Vec::new();
    match tw.fam.kind {
        FamilyKind::AI => {
            for e in 1..m {
                rels.push(format!("x[{e},{m}] x[{m},{m}] + -q^2 * x[{m},{m}] x[{e},{m}]"));
            }
        }
        FamilyKind::AII => {}
        FamilyKind::Diagonal => return Vec::new(),
    }
    for e in 1..m {
        for a in 1..e {
            rels.push(format!("x[{a},{m}] x[{e},{m}] + -q * x[{e},{m}] x[{a},{m}]"));
        }
    }
    rels.into_iter().filter(|r| !tw.x.normal_form(&p(r)).map(|z| z.is_zero()).unwrap_or(false)).collect()
}
