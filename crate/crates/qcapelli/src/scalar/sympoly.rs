//! Commutative polynomials in x₁..x_n with ℚ(q) coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: RatFunc) -> Self {
        let mut p = SymPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = SymPoly::zero(nvars);
        p.add_term(e, RatFunc::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: RatFunc) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, k: &RatFunc) -> SymPoly {
        let mut r = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut r = SymPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// Evaluates at arbitrary ℚ(q) values.
    pub fn eval(&self, vals: &[RatFunc]) -> Result<RatFunc> {
        if vals.len() != self.nvars {
            return Err(Error::Invalid(format!("expected {} values, got {}", self.nvars, vals.len())));
        }
        let mut acc = RatFunc::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in vals.iter().zip(e) {
                if k > 0 {
                    t = &t * &v.pow(k as i64);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitutes x_i := q^{exps_i}.
    pub fn eval_at_q_powers(&self, exps: &[i64]) -> Result<RatFunc> {
        if exps.len() != self.nvars {
            return Err(Error::Invalid(format!("expected {} exponents, got {}", self.nvars, exps.len())));
        }
        let mut acc = RatFunc::zero();
        for (e, c) in &self.terms {
            let k: i64 = e.iter().zip(exps).map(|(&a, &b)| a as i64 * b).sum();
            acc += &c.mul_q_pow(k);
        }
        Ok(acc)
    }

    /// Rescales variables: x_i := s_i x_i.
    pub fn rescale(&self, s: &[RatFunc]) -> SymPoly {
        let mut r = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in s.iter().zip(e) {
                if k > 0 {
                    t = &t * &v.pow(k as i64);
                }
            }
            r.add_term(e.clone(), t);
        }
        r
    }

    /// Applies a permutation of the variables: x_i := x_{perm[i]}.
    pub fn permute(&self, perm: &[usize]) -> SymPoly {
        let mut r = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] += k;
            }
            r.add_term(f, c.clone());
        }
        r
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut first = true;
        for e in keys {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = &self.terms[e];
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            if mon.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                f.write_str(&mon.join("*"))?;
            } else {
                write!(f, "({c})*{}", mon.join("*"))?;
            }
        }
        Ok(())
    }
}
