//! Actions of U_q(g) on the algebras of the tower.
//!
//! On t and ∂ the generators act by the explicit formulas; on x and d the
//! action on generators is derived by pushing the action through the
//! embedding and reading the result back as a degree-1 element. Products are
//! handled with the coproduct Δ(E) = E⊗1 + K⊗E, Δ(F) = F⊗K⁻¹ + 1⊗F.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebras::AlgebraTower;
use crate::error::{Error, Result};
use crate::family::{weight_dot, FamilyDescriptor, FamilyKind, WeightVec};
use crate::freealg::{word, GenId, NCPoly, Sym, Word};
use crate::scalar::{Echelon, RatFunc, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UGen {
    E(usize),
    F(usize),
    /// K_β for an integral weight β.
    K(WeightVec),
}

impl UGen {
    /// K_{α_i}^{±1}.
    pub fn k_alpha(fam: &FamilyDescriptor, i: usize, inverse: bool) -> UGen {
        let a = fam.alpha(i);
        UGen::K(if inverse { a.iter().map(|x| -x).collect() } else { a })
    }

    pub fn validate(&self, fam: &FamilyDescriptor) -> Result<()> {
        match self {
            UGen::E(i) | UGen::F(i) if !fam.ef_indices().contains(i) => {
                Err(Error::Invalid(format!("no generator with index {i} for {} n={}", fam.kind, fam.n)))
            }
            UGen::K(b) if b.len() != fam.big_n => Err(Error::Invalid(format!("K weight must have {} entries", fam.big_n))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for UGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UGen::E(i) => write!(f, "E{i}"),
            UGen::F(i) => write!(f, "F{i}"),
            UGen::K(b) => write!(f, "K{b:?}"),
        }
    }
}

/// Linear combination of products of generators; a word [g₁, …, g_k]
/// stands for g₁⋯g_k.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UExpr {
    pub terms: Vec<(RatFunc, Vec<UGen>)>,
}

impl UExpr {
    pub fn gen(g: UGen) -> UExpr {
        UExpr { terms: vec![(RatFunc::one(), vec![g])] }
    }

    pub fn one() -> UExpr {
        UExpr { terms: vec![(RatFunc::one(), vec![])] }
    }

    pub fn scale(&self, c: &RatFunc) -> UExpr {
        UExpr { terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect() }
    }

    pub fn add(&self, o: &UExpr) -> UExpr {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        UExpr { terms }
    }

    pub fn sub(&self, o: &UExpr) -> UExpr {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn mul(&self, o: &UExpr) -> UExpr {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &o.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                terms.push((a * b, w));
            }
        }
        UExpr { terms }
    }

    /// ab − c·ba.
    pub fn twisted_commutator(a: &UExpr, b: &UExpr, c: &RatFunc) -> UExpr {
        a.mul(b).sub(&b.mul(a).scale(c))
    }

    /// Counit: E and F map to 0, K to 1.
    pub fn counit(&self) -> RatFunc {
        let mut c = RatFunc::zero();
        for (a, w) in &self.terms {
            if w.iter().all(|g| matches!(g, UGen::K(_))) {
                c += a;
            }
        }
        c
    }
}

impl FromStr for UGen {
    type Err = Error;

    /// `E1`, `F2`, `K1` (= K_{α₁}), `Kinv1`.
    fn from_str(s: &str) -> Result<UGen> {
        let bad = || Error::Parse(format!("bad operator '{s}' (expected E<i>, F<i>, K<i> or Kinv<i>)"));
        let s = s.trim();
        let (head, num) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let i: usize = num.parse().map_err(|_| bad())?;
        match head {
            "E" => Ok(UGen::E(i)),
            "F" => Ok(UGen::F(i)),
            // resolved against a family by `Uq::parse_op`
            "K" => Ok(UGen::K(vec![i as i64])),
            "Kinv" => Ok(UGen::K(vec![-(i as i64)])),
            _ => Err(bad()),
        }
    }
}

/// Left weight of a letter under K.
fn left_weight(fam: &FamilyDescriptor, g: GenId, acc: &mut [i64]) {
    let (i, j) = g.idx();
    match g.sym {
        Sym::T => acc[i - 1] += 1,
        Sym::Del => acc[i - 1] -= 1,
        Sym::X => {
            acc[i - 1] += 1;
            acc[j - 1] += 1;
        }
        Sym::D => {
            acc[i - 1] -= 1;
            acc[j - 1] -= 1;
        }
    }
    let _ = fam;
}

/// Right weight of a t or ∂ letter.
fn right_weight(g: GenId, acc: &mut [i64]) {
    let (_, j) = g.idx();
    match g.sym {
        Sym::T => acc[j - 1] += 1,
        Sym::Del => acc[j - 1] -= 1,
        _ => unreachable!("right action is only defined on t and ∂"),
    }
}

fn single(c: RatFunc, g: GenId) -> NCPoly {
    NCPoly::term(word(&[g]), c)
}

/// The explicit left action of E_k / F_k on a t or ∂ letter.
pub fn act_on_t_left(fam: &FamilyDescriptor, e: bool, k: usize, g: GenId) -> NCPoly {
    let (i, j) = g.idx();
    let q = RatFunc::q();
    let out = match (g.sym, e) {
        (Sym::T, true) if i == k + 1 => single(RatFunc::one(), GenId::t(k, j)),
        (Sym::T, false) if i == k => single(RatFunc::one(), GenId::t(k + 1, j)),
        (Sym::Del, true) if i == k => single(-RatFunc::q_pow(-1), GenId::del(k + 1, j)),
        (Sym::Del, false) if i == k + 1 => single(-q, GenId::del(k, j)),
        _ => NCPoly::zero(),
    };
    keep_existing(fam, out)
}

/// The explicit right action of E_k / F_k on a t or ∂ letter.
pub fn act_on_t_right(fam: &FamilyDescriptor, g: GenId, e: bool, k: usize) -> NCPoly {
    let (i, j) = g.idx();
    let q = RatFunc::q();
    let out = match (g.sym, e) {
        (Sym::T, true) if j == k => single(RatFunc::one(), GenId::t(i, k + 1)),
        (Sym::T, false) if j == k + 1 => single(RatFunc::one(), GenId::t(i, k)),
        (Sym::Del, true) if j == k + 1 => single(-q, GenId::del(i, k)),
        (Sym::Del, false) if j == k => single(-RatFunc::q_pow(-1), GenId::del(i, k + 1)),
        _ => NCPoly::zero(),
    };
    keep_existing(fam, out)
}

fn keep_existing(fam: &FamilyDescriptor, p: NCPoly) -> NCPoly {
    p.filter(|w| w.iter().all(|g| fam.t_exists(g.i as usize, g.j as usize)))
}

/// Derived actions of E_i, F_i on the canonical x and d generators.
#[derive(Clone, Debug, Default)]
pub struct ActionTable {
    /// (is_e, i, generator) → degree-1 image.
    pub images: HashMap<(bool, usize, GenId), NCPoly>,
}

/// The tower together with its derived action table.
pub struct Uq {
    pub tower: Arc<AlgebraTower>,
    pub table: ActionTable,
}

impl Uq {
    pub fn new(tower: Arc<AlgebraTower>) -> Result<Uq> {
        let mut uq = Uq { tower, table: ActionTable::default() };
        let fam = uq.tower.fam.clone();
        let mut images = HashMap::new();
        for i in fam.ef_indices() {
            for e in [true, false] {
                for (sym, gens) in [(Sym::X, uq.tower.x_gens()), (Sym::D, uq.tower.d_gens())] {
                    for g in gens {
                        let emb = uq.tower.embed(&NCPoly::gen(g))?;
                        let img = uq.act_words_left(e, i, &emb)?;
                        let back = uq.tower.express(sym, &img, 1).map_err(|err| {
                            crate::error::internal("uqmod", format!("image of {g} under {}{i} left the generator span: {err}", if e { "E" } else { "F" }))
                        })?;
                        images.insert((e, i, g), back);
                    }
                }
            }
        }
        uq.table.images = images;
        Ok(uq)
    }

    pub fn fam(&self) -> &FamilyDescriptor {
        &self.tower.fam
    }

    /// Resolves `K<i>` / `Kinv<i>` parsed by `UGen::from_str` to K_{α_i}^{±1}.
    pub fn parse_op(&self, s: &str) -> Result<UGen> {
        let g: UGen = s.parse()?;
        let g = match g {
            UGen::K(v) => UGen::k_alpha(self.fam(), v[0].unsigned_abs() as usize, v[0] < 0),
            g => g,
        };
        if let UGen::K(_) = &g {
            let i = s.trim_start_matches(|c: char| !c.is_ascii_digit()).parse::<usize>().unwrap_or(0);
            if i == 0 || i >= self.fam().big_n {
                return Err(Error::Invalid(format!("no K_alpha with index {i}")));
            }
        }
        g.validate(self.fam())?;
        Ok(g)
    }

    fn normalize(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut t = NCPoly::zero();
        let mut del = NCPoly::zero();
        let mut xd = NCPoly::zero();
        for (w, c) in p.terms() {
            let target = match w.first().map(|g| g.sym) {
                Some(Sym::T) => &mut t,
                Some(Sym::Del) => &mut del,
                _ => &mut xd,
            };
            target.add_term(w.clone(), c.clone());
        }
        let mut out = self.tower.t.normal_form(&t)?;
        out.add_scaled(&RatFunc::one(), &self.tower.del.normal_form(&del)?);
        out.add_scaled(&RatFunc::one(), &self.tower.nf(&xd)?);
        Ok(out)
    }

    fn letter_left(&self, e: bool, i: usize, g: GenId) -> NCPoly {
        match g.sym {
            Sym::T | Sym::Del => act_on_t_left(self.fam(), e, i, g),
            Sym::X | Sym::D => self.table.images.get(&(e, i, g)).cloned().unwrap_or_default(),
        }
    }

    /// E_i or F_i applied to every word of p by the coproduct rule, then
    /// normalized.
    fn act_words_left(&self, e: bool, i: usize, p: &NCPoly) -> Result<NCPoly> {
        let fam = self.fam();
        let alpha = fam.alpha(i);
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let wts: Vec<WeightVec> = w
                .iter()
                .map(|g| {
                    let mut v = vec![0; fam.big_n];
                    left_weight(fam, *g, &mut v);
                    v
                })
                .collect();
            for pos in 0..w.len() {
                let img = self.letter_left(e, i, w[pos]);
                if img.is_zero() {
                    continue;
                }
                // E: K_i on the letters before; F: K_i⁻¹ on the letters after
                let exp: i64 = if e {
                    wts[..pos].iter().map(|v| weight_dot(&alpha, v)).sum()
                } else {
                    -wts[pos + 1..].iter().map(|v| weight_dot(&alpha, v)).sum::<i64>()
                };
                let coef = c.mul_q_pow(exp);
                let pre = NCPoly::term(w[..pos].into(), coef);
                let post = NCPoly::term(w[pos + 1..].into(), RatFunc::one());
                out.add_scaled(&RatFunc::one(), &pre.concat(&img).concat(&post));
            }
        }
        self.normalize(&out)
    }

    fn act_words_right(&self, p: &NCPoly, e: bool, i: usize) -> Result<NCPoly> {
        let fam = self.fam();
        let alpha = fam.alpha(i);
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            let wts: Vec<WeightVec> = w
                .iter()
                .map(|g| {
                    let mut v = vec![0; fam.big_n];
                    right_weight(*g, &mut v);
                    v
                })
                .collect();
            for pos in 0..w.len() {
                let img = act_on_t_right(fam, w[pos], e, i);
                if img.is_zero() {
                    continue;
                }
                let exp: i64 = if e {
                    wts[..pos].iter().map(|v| weight_dot(&alpha, v)).sum()
                } else {
                    -wts[pos + 1..].iter().map(|v| weight_dot(&alpha, v)).sum::<i64>()
                };
                let pre = NCPoly::term(w[..pos].into(), c.mul_q_pow(exp));
                let post = NCPoly::term(w[pos + 1..].into(), RatFunc::one());
                out.add_scaled(&RatFunc::one(), &pre.concat(&img).concat(&post));
            }
        }
        self.normalize(&out)
    }

    fn k_left(&self, beta: &[i64], p: &NCPoly) -> NCPoly {
        let fam = self.fam();
        NCPoly::from_terms(p.terms().iter().map(|(w, c)| {
            let mut v = vec![0; fam.big_n];
            for g in w {
                left_weight(fam, *g, &mut v);
            }
            (w.clone(), c.mul_q_pow(weight_dot(beta, &v)))
        }))
    }

    fn k_right(&self, p: &NCPoly, beta: &[i64]) -> NCPoly {
        let fam = self.fam();
        NCPoly::from_terms(p.terms().iter().map(|(w, c)| {
            let mut v = vec![0; fam.big_n];
            for g in w {
                right_weight(*g, &mut v);
            }
            (w.clone(), c.mul_q_pow(weight_dot(beta, &v)))
        }))
    }

    pub fn act_gen_left(&self, g: &UGen, p: &NCPoly) -> Result<NCPoly> {
        g.validate(self.fam())?;
        match g {
            UGen::E(i) => self.act_words_left(true, *i, p),
            UGen::F(i) => self.act_words_left(false, *i, p),
            UGen::K(b) => Ok(self.k_left(b, p)),
        }
    }

    /// u·p for p in t, ∂, P_θ, D_θ or PD_θ (mixed words in normal form).
    pub fn act_left(&self, u: &UExpr, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (c, w) in &u.terms {
            let mut cur = p.clone();
            for g in w.iter().rev() {
                if cur.is_zero() {
                    break;
                }
                cur = self.act_gen_left(g, &cur)?;
            }
            out.add_scaled(c, &cur);
        }
        Ok(out)
    }

    pub fn act_gen_right(&self, p: &NCPoly, g: &UGen) -> Result<NCPoly> {
        g.validate(self.fam())?;
        let p = self.to_t(p)?;
        match g {
            UGen::E(i) => self.act_words_right(&p, true, *i),
            UGen::F(i) => self.act_words_right(&p, false, *i),
            UGen::K(b) => Ok(self.k_right(&p, b)),
        }
    }

    /// p·u. Elements of P_θ or D_θ are first embedded in t or ∂; the
    /// result is returned there.
    pub fn act_right(&self, p: &NCPoly, u: &UExpr) -> Result<NCPoly> {
        let p = self.to_t(p)?;
        let mut out = NCPoly::zero();
        for (c, w) in &u.terms {
            let mut cur = p.clone();
            for g in w {
                if cur.is_zero() {
                    break;
                }
                cur = self.act_gen_right(&cur, g)?;
            }
            out.add_scaled(c, &cur);
        }
        Ok(out)
    }

    fn to_t(&self, p: &NCPoly) -> Result<NCPoly> {
        if p.terms().keys().any(|w| w.iter().any(|g| matches!(g.sym, Sym::X | Sym::D))) {
            self.tower.embed(p)
        } else {
            Ok(p.clone())
        }
    }

    pub fn weight_of(&self, p: &NCPoly) -> Result<WeightVec> {
        self.tower.weight_of(p)
    }

    pub fn all_e(&self) -> Vec<UExpr> {
        self.fam().ef_indices().into_iter().map(|i| UExpr::gen(UGen::E(i))).collect()
    }

    pub fn all_f(&self) -> Vec<UExpr> {
        self.fam().ef_indices().into_iter().map(|i| UExpr::gen(UGen::F(i))).collect()
    }

    /// Generators of the coideal subalgebra B_θ, with display names.
    pub fn btheta_generators(&self) -> Vec<(String, UExpr)> {
        let fam = self.fam();
        let g = |u: UGen| UExpr::gen(u);
        let kinv = |i: usize| g(UGen::k_alpha(fam, i, true));
        let mut out = Vec::new();
        match fam.kind {
            FamilyKind::AI => {
                for i in 1..fam.n {
                    out.push((format!("F{i} - E{i} K{i}^-1"), g(UGen::F(i)).sub(&g(UGen::E(i)).mul(&kinv(i)))));
                }
            }
            FamilyKind::AII => {
                for i in (1..fam.big_n).step_by(2) {
                    out.push((format!("E{i}"), g(UGen::E(i))));
                    out.push((format!("F{i}"), g(UGen::F(i))));
                    out.push((format!("K{i}"), g(UGen::k_alpha(fam, i, false))));
                    out.push((format!("K{i}^-1"), kinv(i)));
                }
                // (ad E_{i−1}E_{i+1})·E_i; ad E_j acts on a vector of weight β
                // as m ↦ E_j m − q^{(α_j,β)} m E_j, which here is a
                // q⁻¹-commutator at both steps
                let qi = RatFunc::q_pow(-1);
                for i in (2..fam.big_n).step_by(2) {
                    let inner = UExpr::twisted_commutator(&g(UGen::E(i + 1)), &g(UGen::E(i)), &qi);
                    let outer = UExpr::twisted_commutator(&g(UGen::E(i - 1)), &inner, &qi);
                    let b = g(UGen::F(i)).sub(&outer.mul(&kinv(i)).scale(&RatFunc::q_pow(3)));
                    out.push((format!("B{i}"), b));
                }
            }
            FamilyKind::Diagonal => {
                let n = fam.n;
                for i in 1..n {
                    out.push((format!("B{i}"), g(UGen::F(i)).sub(&g(UGen::E(n + i)).mul(&kinv(i)).scale(&RatFunc::q()))));
                    out.push((format!("B{}", n + i), g(UGen::F(n + i)).sub(&g(UGen::E(i)).mul(&kinv(n + i)).scale(&RatFunc::q()))));
                }
                for j in 1..=n {
                    let mut b = vec![0; fam.big_n];
                    b[j - 1] = -1;
                    b[n + j - 1] = 1;
                    let neg: Vec<i64> = b.iter().map(|x| -x).collect();
                    out.push((format!("K_e{j}^-1 K_e{}", n + j), g(UGen::K(b))));
                    out.push((format!("K_e{}^-1 K_e{j}", n + j), g(UGen::K(neg))));
                }
            }
        }
        out
    }

    /// Violations of x·b = ε(b)x over canonical generators x and B_θ
    /// generators b, as (generator name, x generator).
    pub fn check_btheta_invariance(&self) -> Result<Vec<(String, GenId)>> {
        let mut bad = Vec::new();
        for (name, b) in self.btheta_generators() {
            for g in self.tower.x_gens() {
                let x = NCPoly::gen(g);
                let lhs = self.act_right(&x, &b)?;
                let rhs = self.tower.embed(&x)?.scale(&b.counit());
                if lhs != rhs {
                    bad.push((name.clone(), g));
                }
            }
        }
        Ok(bad)
    }

    /// Breadth-first closure of `seed` under `ops`, keeping a linearly
    /// independent subset; fails once more than `cap` vectors are found.
    pub fn module_closure(&self, seed: &NCPoly, ops: &[UExpr], cap: usize) -> Result<Vec<NCPoly>> {
        let mut ech: Echelon<Word> = Echelon::new();
        let mut basis = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        let seed = self.normalize(seed)?;
        if seed.is_zero() {
            return Ok(basis);
        }
        ech.insert(&to_vec(&seed));
        basis.push(seed.clone());
        queue.push_back(seed);
        while let Some(v) = queue.pop_front() {
            for op in ops {
                let img = self.act_left(op, &v)?;
                if img.is_zero() || !ech.insert(&to_vec(&img)) {
                    continue;
                }
                if basis.len() >= cap {
                    return Err(Error::ClosureBudget(cap));
                }
                basis.push(img.clone());
                queue.push_back(img);
            }
        }
        Ok(basis)
    }
}

pub(crate) fn to_vec(p: &NCPoly) -> SparseVec<Word> {
    p.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect()
}
