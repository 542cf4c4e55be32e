//! The concrete algebras: quantum matrices (t), their opposite (∂), P_θ (x),
//! D_θ (d) and the quantum Weyl algebra PD_θ, together with the embeddings
//! x ↦ t, d ↦ ∂, the action of PD_θ on P_θ and the pairing.

pub mod relations;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::family::{FamilyDescriptor, WeightVec};
use crate::freealg::{derive_rewrite_rules, derive_rules_where, word, GenId, NCPoly, RewriteSystem, Sym, Word};
use crate::scalar::linalg::solve_combination;
use crate::scalar::{RatFunc, SparseVec};

pub struct AlgebraTower {
    pub fam: FamilyDescriptor,
    pub t: RewriteSystem,
    pub del: RewriteSystem,
    pub x: RewriteSystem,
    pub d: RewriteSystem,
    pub xd: RewriteSystem,
    embed_cache: RwLock<HashMap<Word, Arc<NCPoly>>>,
    act_cache: RwLock<HashMap<(GenId, Word), Arc<NCPoly>>>,
}

impl std::fmt::Debug for AlgebraTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraTower({} n={})", self.fam.kind, self.fam.n)
    }
}

/// Rewrite system of quantum matrices (with the block-zero convention).
pub fn t_system(fam: &FamilyDescriptor) -> Result<RewriteSystem> {
    derive_rewrite_rules(&relations::t_relations(fam), &t_gens(fam, Sym::T))
}

fn t_gens(fam: &FamilyDescriptor, sym: Sym) -> Vec<GenId> {
    let n = fam.big_n;
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| fam.t_exists(i, j)).map(|(i, j)| GenId::new(sym, i, j)).collect()
}

fn canonical_gens(fam: &FamilyDescriptor, sym: Sym) -> Vec<GenId> {
    fam.canonical.iter().map(|&(i, j)| GenId::new(sym, i, j)).collect()
}

impl AlgebraTower {
    pub fn build(fam: &FamilyDescriptor) -> Result<AlgebraTower> {
        let t_rel = relations::t_relations(fam);
        let t = derive_rewrite_rules(&t_rel, &t_gens(fam, Sym::T))?;
        // the ∂ algebra is the opposite algebra: reversed relations
        let del_rel: Vec<NCPoly> = t_rel.iter().map(|r| r.reverse_map(|g| g.with_sym(Sym::Del))).collect();
        let del = derive_rewrite_rules(&del_rel, &t_gens(fam, Sym::Del))?;
        let xg = canonical_gens(fam, Sym::X);
        let dg = canonical_gens(fam, Sym::D);
        let x = derive_rewrite_rules(&relations::x_relations(fam), &xg)?;
        let d = derive_rewrite_rules(&relations::d_relations(fam), &dg)?;
        let mut all = xg.clone();
        all.extend(dg.iter().cloned());
        let cross = derive_rules_where(&relations::cross_relations(fam), &all, &|g, h| g.sym == Sym::D && h.sym == Sym::X)?;
        let xd = RewriteSystem::merge(&[&x, &d, &cross], HashMap::new());
        Ok(AlgebraTower {
            fam: fam.clone(),
            t,
            del,
            x,
            d,
            xd,
            embed_cache: RwLock::new(HashMap::new()),
            act_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn x_gens(&self) -> Vec<GenId> {
        canonical_gens(&self.fam, Sym::X)
    }

    pub fn d_gens(&self) -> Vec<GenId> {
        canonical_gens(&self.fam, Sym::D)
    }

    /// Σ_{r,s} t_{ir} J_{rs} t_{js} for raw indices, normalized.
    pub fn embed_x_raw(&self, i: usize, j: usize) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for (&(r, s), c) in &self.fam.j {
            if self.fam.t_exists(i, r) && self.fam.t_exists(j, s) {
                p.add_term(word(&[GenId::t(i, r), GenId::t(j, s)]), c.clone());
            }
        }
        self.t.normal_form(&p)
    }

    /// Σ_{r,s} q^{−2r̂} ∂_{ir} J_{rs} ∂_{js} for raw indices, normalized. The
    /// twist sits on the index of the first factor; on the second one the
    /// linear relations of D_θ fail in type AII.
    pub fn embed_d_raw(&self, i: usize, j: usize) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for (&(r, s), c) in &self.fam.j {
            if self.fam.t_exists(i, r) && self.fam.t_exists(j, s) {
                p.add_term(word(&[GenId::del(i, r), GenId::del(j, s)]), c.mul_q_pow(-2 * self.fam.s_hat(r)));
            }
        }
        self.del.normal_form(&p)
    }

    /// Image of an x-word (or d-word) in the t-algebra (or ∂-algebra).
    pub fn embed_word(&self, w: &Word) -> Result<Arc<NCPoly>> {
        if let Some(hit) = self.embed_cache.read().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let out = match w.len() {
            0 => NCPoly::one(),
            1 => {
                let (i, j) = w[0].idx();
                match w[0].sym {
                    Sym::X => self.embed_x_raw(i, j)?,
                    Sym::D => self.embed_d_raw(i, j)?,
                    _ => return Err(Error::Invalid(format!("cannot embed {}", w[0]))),
                }
            }
            k => {
                let head = self.embed_word(&w[..k - 1].into())?;
                let last = self.embed_word(&word(&[w[k - 1]]))?;
                let sys = if w[0].sym == Sym::X { &self.t } else { &self.del };
                sys.mul(&head, &last)?
            }
        };
        let out = Arc::new(out);
        self.embed_cache.write().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Image of an x-polynomial in the t-algebra (or d in ∂).
    pub fn embed(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(c, &*self.embed_word(w)?);
        }
        Ok(out)
    }

    /// Weight of a word: t, x count +ε (left index / both indices), ∂, d count −ε.
    pub fn word_weight(&self, w: &[GenId]) -> WeightVec {
        let mut v = vec![0i64; self.fam.big_n];
        for g in w {
            let (i, j) = g.idx();
            match g.sym {
                Sym::T => v[i - 1] += 1,
                Sym::Del => v[i - 1] -= 1,
                Sym::X => {
                    v[i - 1] += 1;
                    v[j - 1] += 1;
                }
                Sym::D => {
                    v[i - 1] -= 1;
                    v[j - 1] -= 1;
                }
            }
        }
        v
    }

    /// Common weight of all terms.
    pub fn weight_of(&self, p: &NCPoly) -> Result<WeightVec> {
        let mut it = p.terms().keys().map(|w| self.word_weight(w));
        let Some(first) = it.next() else { return Ok(vec![0; self.fam.big_n]) };
        if it.any(|w| w != first) {
            return Err(Error::NotHomogeneous);
        }
        Ok(first)
    }

    /// Normal words of degree r in P_θ (or D_θ) with a given weight.
    pub fn monomials_of_weight(&self, sym: Sym, r: usize, wt: &[i64]) -> Vec<Word> {
        let sys = if sym == Sym::X { &self.x } else { &self.d };
        sys.normal_words(r).into_iter().filter(|w| self.word_weight(w) == wt).collect()
    }

    /// Writes a t-polynomial (∂-polynomial for `sym = D`) homogeneous of
    /// degree 2r as an element of P_θ (D_θ).
    pub fn express(&self, sym: Sym, p: &NCPoly, r: usize) -> Result<NCPoly> {
        let p = if sym == Sym::X { self.t.normal_form(p)? } else { self.del.normal_form(p)? };
        if p.is_zero() {
            return Ok(NCPoly::zero());
        }
        if p.terms().keys().any(|w| w.len() != 2 * r) {
            return Err(Error::NotInP(format!("not homogeneous of degree {}", 2 * r)));
        }
        let mut out = NCPoly::zero();
        // split by weight; each weight space is solved separately
        let mut by_weight: std::collections::BTreeMap<WeightVec, SparseVec<Word>> = Default::default();
        for (w, c) in p.terms() {
            let wt = self.word_weight(w);
            by_weight.entry(wt).or_default().insert(w.clone(), c.clone());
        }
        for (wt, target) in by_weight {
            let monos = self.monomials_of_weight(sym, r, &wt);
            let cols: Vec<SparseVec<Word>> =
                monos.iter().map(|m| self.embed_word(m).map(|e| e.terms().clone())).collect::<Result<_>>()?;
            let Some(sol) = solve_combination(&cols, &target) else {
                return Err(Error::NotInP(format!("weight {wt:?} component outside the image")));
            };
            for (m, c) in monos.into_iter().zip(sol) {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Normal form in PD_θ.
    pub fn nf(&self, p: &NCPoly) -> Result<NCPoly> {
        self.xd.normal_form(p)
    }

    /// d·m for a d generator and an ordered x-word, projected to P_θ.
    fn act_gen(&self, d: GenId, m: &Word) -> Result<Arc<NCPoly>> {
        if m.is_empty() {
            return Ok(Arc::new(NCPoly::zero()));
        }
        let key = (d, m.clone());
        if let Some(hit) = self.act_cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let head = m[0];
        let rest: Word = m[1..].into();
        let rule = self.xd.rule(d, head).ok_or_else(|| crate::error::internal("algebras", format!("no cross rule for {d} {head}")))?;
        let mut out = NCPoly::zero();
        for (w, c) in rule.terms() {
            let split = w.iter().position(|g| g.sym == Sym::D).unwrap_or(w.len());
            let xs: Word = w[..split].into();
            let ds: Word = w[split..].into();
            let tail = self.act_word(&ds, &NCPoly::term(rest.clone(), RatFunc::one()))?;
            if tail.is_zero() {
                continue;
            }
            let prod = self.x.mul(&NCPoly::term(xs, c.clone()), &tail)?;
            out.add_scaled(&RatFunc::one(), &prod);
        }
        let out = Arc::new(out);
        self.act_cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Action of a d-word on an element of P_θ (rightmost letter first).
    pub fn act_word(&self, dw: &[GenId], p: &NCPoly) -> Result<NCPoly> {
        let mut cur = p.clone();
        for &d in dw.iter().rev() {
            let mut next = NCPoly::zero();
            for (m, c) in cur.terms() {
                next.add_scaled(c, &*self.act_gen(d, m)?);
            }
            cur = next;
            if cur.is_zero() {
                break;
            }
        }
        Ok(cur)
    }

    /// Action of PD_θ on P_θ: normal form with every d-containing word
    /// dropped. `a` must be in mixed normal form.
    pub fn act_pd_on_p(&self, a: &NCPoly, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            let split = w.iter().position(|g| g.sym == Sym::D).unwrap_or(w.len());
            let tail = self.act_word(&w[split..], p)?;
            if tail.is_zero() {
                continue;
            }
            let xs: Word = w[..split].into();
            out.add_scaled(&RatFunc::one(), &self.x.mul(&NCPoly::term(xs, c.clone()), &tail)?);
        }
        Ok(out)
    }

    /// ⟨d, p⟩ = constant term of d·p.
    pub fn pairing(&self, d: &NCPoly, p: &NCPoly) -> Result<RatFunc> {
        Ok(self.act_pd_on_p(d, p)?.constant_term())
    }
}
