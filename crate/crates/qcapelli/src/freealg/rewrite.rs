//! PBW rewriting with degree-2 rules.
//!
//! A normal form is built letter by letter: the normal form of `w·g` is the
//! sum of the insertions of `g` into the ordered words of `nf(w)`. Insertions
//! are memoized per system, which makes repeated normalization in the same
//! algebra cheap.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::ncpoly::{fmt_word, word, GenId, NCPoly, Word};
use crate::error::{Error, Result};
use crate::scalar::{Echelon, RatFunc, SparseVec};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

pub struct RewriteSystem {
    gens: Vec<GenId>,
    rules: HashMap<(GenId, GenId), NCPoly>,
    budget: usize,
    cache: RwLock<HashMap<(Word, GenId), Arc<NCPoly>>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem { gens: self.gens.clone(), rules: self.rules.clone(), budget: self.budget, cache: RwLock::new(HashMap::new()) }
    }
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem").field("gens", &self.gens.len()).field("rules", &self.rules.len()).finish()
    }
}

impl RewriteSystem {
    pub fn new(mut gens: Vec<GenId>, rules: HashMap<(GenId, GenId), NCPoly>) -> Self {
        gens.sort();
        gens.dedup();
        RewriteSystem { gens, rules, budget: DEFAULT_STEP_BUDGET, cache: RwLock::new(HashMap::new()) }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn rules(&self) -> &HashMap<(GenId, GenId), NCPoly> {
        &self.rules
    }

    /// Rules sorted by left-hand side.
    pub fn sorted_rules(&self) -> Vec<((GenId, GenId), &NCPoly)> {
        let mut v: Vec<_> = self.rules.iter().map(|(k, p)| (*k, p)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn rule(&self, a: GenId, b: GenId) -> Option<&NCPoly> {
        self.rules.get(&(a, b))
    }

    /// Union of generator sets and rules.
    pub fn merge(parts: &[&RewriteSystem], extra: HashMap<(GenId, GenId), NCPoly>) -> RewriteSystem {
        let mut gens = Vec::new();
        let mut rules = HashMap::new();
        for p in parts {
            gens.extend_from_slice(&p.gens);
            rules.extend(p.rules.iter().map(|(k, v)| (*k, v.clone())));
        }
        rules.extend(extra);
        RewriteSystem::new(gens, rules)
    }

    fn insert(&self, u: &Word, g: GenId, steps: &mut usize) -> Result<Arc<NCPoly>> {
        let Some(&a) = u.last() else {
            return Ok(Arc::new(NCPoly::gen(g)));
        };
        let Some(rhs) = self.rules.get(&(a, g)) else {
            let mut w = u.clone();
            w.push(g);
            return Ok(Arc::new(NCPoly::term(w, RatFunc::one())));
        };
        let key = (u.clone(), g);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        *steps += 1;
        if *steps > self.budget {
            return Err(Error::RewriteBudget(*steps));
        }
        let prefix: Word = u[..u.len() - 1].into();
        let mut out = NCPoly::zero();
        for (w, c) in rhs.terms() {
            let mut acc = NCPoly::term(prefix.clone(), c.clone());
            for &b in w {
                acc = self.append(&acc, b, steps)?;
            }
            out.add_scaled(&RatFunc::one(), &acc);
        }
        let out = Arc::new(out);
        self.cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// nf(p · g) for p already in normal form.
    fn append(&self, p: &NCPoly, g: GenId, steps: &mut usize) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (v, c) in p.terms() {
            let ins = self.insert(v, g, steps)?;
            out.add_scaled(c, &ins);
        }
        Ok(out)
    }

    pub fn normal_form_word(&self, w: &[GenId]) -> Result<NCPoly> {
        let mut steps = 0;
        let mut acc = NCPoly::one();
        for &g in w {
            acc = self.append(&acc, g, &mut steps)?;
        }
        Ok(acc)
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            if self.is_normal(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_scaled(c, &self.normal_form_word(w)?);
            }
        }
        Ok(out)
    }

    /// Normal form of a·b for a in normal form.
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w2, c2) in b.terms() {
            let mut steps = 0;
            let mut acc = a.scale(c2);
            for &g in w2 {
                acc = self.append(&acc, g, &mut steps)?;
            }
            out.add_scaled(&RatFunc::one(), &acc);
        }
        Ok(out)
    }

    pub fn is_normal(&self, w: &[GenId]) -> bool {
        w.windows(2).all(|p| !self.rules.contains_key(&(p[0], p[1])))
    }

    /// Number of irreducible words of length r.
    pub fn count_normal_words(&self, r: usize) -> usize {
        fn rec(rs: &RewriteSystem, last: Option<GenId>, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            rs.gens
                .iter()
                .filter(|&&g| last.is_none_or(|a| !rs.rules.contains_key(&(a, g))))
                .map(|&g| rec(rs, Some(g), left - 1))
                .sum()
        }
        rec(self, None, r)
    }

    /// Irreducible words of length r in ascending order.
    pub fn normal_words(&self, r: usize) -> Vec<Word> {
        fn rec(rs: &RewriteSystem, cur: &mut Word, left: usize, out: &mut Vec<Word>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for &g in &rs.gens {
                if cur.last().is_some_and(|&a| rs.rules.contains_key(&(a, g))) {
                    continue;
                }
                cur.push(g);
                rec(rs, cur, left - 1, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, &mut Word::new(), r, &mut out);
        out
    }

    /// For each word of length 3..=up_to_degree with at least two reducible
    /// positions, reduces once at every reducible position, normalizes, and
    /// reports words whose results disagree.
    pub fn check_local_confluence(&self, up_to_degree: usize) -> Result<Vec<ConfluenceViolation>> {
        let mut bad = Vec::new();
        for len in 3..=up_to_degree {
            let mut cur = Word::new();
            self.confluence_rec(&mut cur, len, &mut bad)?;
        }
        Ok(bad)
    }

    fn confluence_rec(&self, cur: &mut Word, len: usize, bad: &mut Vec<ConfluenceViolation>) -> Result<()> {
        if cur.len() == len {
            let positions: Vec<usize> = (0..len - 1).filter(|&k| self.rules.contains_key(&(cur[k], cur[k + 1]))).collect();
            if positions.len() < 2 {
                return Ok(());
            }
            let mut results = Vec::new();
            for &k in &positions {
                let rhs = &self.rules[&(cur[k], cur[k + 1])];
                let mut once = NCPoly::zero();
                for (w, c) in rhs.terms() {
                    let mut nw: Word = cur[..k].into();
                    nw.extend_from_slice(w);
                    nw.extend_from_slice(&cur[k + 2..]);
                    once.add_term(nw, c.clone());
                }
                results.push(self.normal_form(&once)?);
            }
            if results.windows(2).any(|r| r[0] != r[1]) {
                bad.push(ConfluenceViolation { word: cur.clone(), results });
            }
            return Ok(());
        }
        for g in self.gens.clone() {
            cur.push(g);
            self.confluence_rec(cur, len, bad)?;
            cur.pop();
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceViolation {
    pub word: Word,
    pub results: Vec<NCPoly>,
}

/// Column class used while solving: out-of-order pairs are eliminated first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Col(u8, Word);

fn col_of(w: &Word) -> Col {
    let class = match w.len() {
        2 if w[0] > w[1] => 0,
        2 => 1,
        1 => 2,
        0 => 3,
        _ => 4,
    };
    Col(class, w.clone())
}

/// Derives a rule g·h → (ordered words) for every pair g > h from the span
/// of the given relations (each an NCPoly that equals zero in the algebra).
pub fn derive_rewrite_rules(relations: &[NCPoly], gens: &[GenId]) -> Result<RewriteSystem> {
    derive_rules_where(relations, gens, &|_, _| true)
}

/// As [`derive_rewrite_rules`], solving only the pairs selected by `need`.
pub fn derive_rules_where(relations: &[NCPoly], gens: &[GenId], need: &dyn Fn(GenId, GenId) -> bool) -> Result<RewriteSystem> {
    let mut ech: Echelon<Col> = Echelon::new();
    for r in relations {
        if r.degree() > 2 {
            return Err(Error::Invalid("relation of degree above 2".into()));
        }
        let row: SparseVec<Col> = r.terms().iter().map(|(w, c)| (col_of(w), c.clone())).collect();
        ech.insert(&row);
    }
    let mut rules = HashMap::new();
    let mut missing = Vec::new();
    for pivot in ech.rows().keys() {
        if pivot.0 != 0 {
            return Err(Error::IncompletePresentation(format!(
                "relation among ordered words with leading term {}",
                fmt_word(&pivot.1)
            )));
        }
    }
    let mut sorted = gens.to_vec();
    sorted.sort();
    for &g in &sorted {
        for &h in &sorted {
            if g <= h || !need(g, h) {
                continue;
            }
            let key = Col(0, word(&[g, h]));
            match ech.rows().get(&key) {
                Some(row) if row.keys().skip(1).all(|c| c.0 != 0) => {
                    let rhs = NCPoly::from_terms(row.iter().skip(1).map(|(c, v)| (c.1.clone(), -v)));
                    rules.insert((g, h), rhs);
                }
                _ => missing.push(format!("{g} {h}")),
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompletePresentation(format!("unsolved pairs: {}", missing.join(", "))));
    }
    Ok(RewriteSystem::new(sorted, rules))
}

/// Rules as a map for callers that assemble systems from pieces.
pub fn rules_by_lhs(rs: &RewriteSystem) -> BTreeMap<(GenId, GenId), NCPoly> {
    rs.rules.iter().map(|(k, v)| (*k, v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize) -> GenId {
        GenId::t(i, j)
    }

    /// Hand-listed quantum matrix relations for N = 2.
    fn mat2_relations() -> Vec<NCPoly> {
        let q = RatFunc::q();
        let w = |a: GenId, b: GenId| word(&[a, b]);
        let rel = |terms: Vec<(Word, RatFunc)>| NCPoly::from_terms(terms);
        let one = RatFunc::one();
        vec![
            rel(vec![(w(t(1, 1), t(1, 2)), one.clone()), (w(t(1, 2), t(1, 1)), -&q)]),
            rel(vec![(w(t(2, 1), t(2, 2)), one.clone()), (w(t(2, 2), t(2, 1)), -&q)]),
            rel(vec![(w(t(1, 1), t(2, 1)), one.clone()), (w(t(2, 1), t(1, 1)), -&q)]),
            rel(vec![(w(t(1, 2), t(2, 2)), one.clone()), (w(t(2, 2), t(1, 2)), -&q)]),
            rel(vec![(w(t(1, 2), t(2, 1)), one.clone()), (w(t(2, 1), t(1, 2)), -one.clone())]),
            rel(vec![
                (w(t(1, 1), t(2, 2)), one.clone()),
                (w(t(2, 2), t(1, 1)), -one.clone()),
                (w(t(2, 1), t(1, 2)), -RatFunc::q_minus_qinv()),
            ]),
        ]
    }

    fn mat2() -> RewriteSystem {
        derive_rewrite_rules(&mat2_relations(), &[t(1, 1), t(1, 2), t(2, 1), t(2, 2)]).unwrap()
    }

    #[test]
    fn quantum_matrix_normal_forms() {
        let rs = mat2();
        let nf = |w: &[GenId]| rs.normal_form_word(w).unwrap();
        assert_eq!(nf(&[t(1, 2), t(1, 1)]), NCPoly::term(word(&[t(1, 1), t(1, 2)]), RatFunc::q_pow(-1)));
        assert_eq!(nf(&[t(2, 1), t(1, 2)]), NCPoly::term(word(&[t(1, 2), t(2, 1)]), RatFunc::one()));
        let expect = NCPoly::from_terms([
            (word(&[t(1, 1), t(2, 2)]), RatFunc::one()),
            (word(&[t(1, 2), t(2, 1)]), -RatFunc::q_minus_qinv()),
        ]);
        assert_eq!(nf(&[t(2, 2), t(1, 1)]), expect);
        let a = NCPoly::gen(t(1, 2));
        let b = NCPoly::term(word(&[t(1, 1), t(2, 2)]), RatFunc::one());
        assert_eq!(rs.mul(&a, &b).unwrap(), NCPoly::term(word(&[t(1, 1), t(1, 2), t(2, 2)]), RatFunc::q_pow(-1)));
        assert_eq!(rs.mul(&NCPoly::one(), &a).unwrap(), a);
    }

    #[test]
    fn quantum_matrix_confluence() {
        let rs = mat2();
        assert!(rs.check_local_confluence(3).unwrap().is_empty());
        assert_eq!(rs.count_normal_words(3), 20);
    }

    #[test]
    fn trivial_systems() {
        let rs = derive_rewrite_rules(&[], &[t(1, 1)]).unwrap();
        assert!(rs.rules().is_empty());
        assert!(rs.check_local_confluence(3).unwrap().is_empty());
        let err = derive_rewrite_rules(&[], &[t(1, 1), t(1, 2)]).unwrap_err();
        assert!(matches!(err, Error::IncompletePresentation(_)));
    }

    #[test]
    fn budget_is_enforced() {
        let rs = mat2().with_budget(0);
        assert!(matches!(rs.normal_form_word(&[t(2, 2), t(1, 1)]), Err(Error::RewriteBudget(_))));
    }
}
