//! Generators, words and noncommutative polynomials.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::RatFunc;

/// Symbol kinds. The derived order puts t before ∂ and x before d, so the
/// mixed normal form (x-block then d-block) is the ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    T,
    Del,
    X,
    D,
}

impl Sym {
    pub fn name(self) -> &'static str {
        match self {
            Sym::T => "t",
            Sym::Del => "del",
            Sym::X => "x",
            Sym::D => "d",
        }
    }
}

/// An indexed generator; ordered by kind then row-major on (i, j).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId {
    pub sym: Sym,
    pub i: u8,
    pub j: u8,
}

impl GenId {
    pub fn new(sym: Sym, i: usize, j: usize) -> Self {
        GenId { sym, i: i as u8, j: j as u8 }
    }

    pub fn t(i: usize, j: usize) -> Self {
        GenId::new(Sym::T, i, j)
    }

    pub fn del(i: usize, j: usize) -> Self {
        GenId::new(Sym::Del, i, j)
    }

    pub fn x(i: usize, j: usize) -> Self {
        GenId::new(Sym::X, i, j)
    }

    pub fn d(i: usize, j: usize) -> Self {
        GenId::new(Sym::D, i, j)
    }

    pub fn idx(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    pub fn with_sym(&self, sym: Sym) -> Self {
        GenId { sym, ..*self }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.sym.name(), self.i, self.j)
    }
}

impl fmt::Debug for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Word = SmallVec<[GenId; 8]>;

pub fn word(gs: &[GenId]) -> Word {
    Word::from_slice(gs)
}

pub fn fmt_word(w: &Word) -> String {
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

/// Finitely supported ℚ(q)-combination of words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        NCPoly::term(Word::new(), c)
    }

    pub fn gen(g: GenId) -> Self {
        NCPoly::term(word(&[g]), RatFunc::one())
    }

    pub fn term(w: Word, c: RatFunc) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, RatFunc)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, RatFunc> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, RatFunc> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&Word::new())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// self += c·p
    pub fn add_scaled(&mut self, c: &RatFunc, p: &NCPoly) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &p.terms {
            self.add_term(w.clone(), c * a);
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_scaled(&RatFunc::one(), o);
        r
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        r.add_scaled(&RatFunc::from_int(-1), o);
        r
    }

    pub fn scale(&self, c: &RatFunc) -> NCPoly {
        let mut r = NCPoly::zero();
        r.add_scaled(c, self);
        r
    }

    /// Concatenation product without normalization.
    pub fn concat(&self, o: &NCPoly) -> NCPoly {
        let mut r = NCPoly::zero();
        for (w1, a) in &self.terms {
            for (w2, b) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, a * b);
            }
        }
        r
    }

    /// Replaces every generator by a polynomial (a ring map on the free
    /// algebra); `f` returning None keeps the generator.
    pub fn substitute(&self, f: &dyn Fn(GenId) -> Option<NCPoly>) -> NCPoly {
        let mut r = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(c.clone());
            for g in w {
                let img = f(*g).unwrap_or_else(|| NCPoly::gen(*g));
                acc = acc.concat(&img);
                if acc.is_zero() {
                    break;
                }
            }
            r.add_scaled(&RatFunc::one(), &acc);
        }
        r
    }

    /// Reverses every word and renames generators.
    pub fn reverse_map(&self, f: impl Fn(GenId) -> GenId) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.iter().rev().map(|g| f(*g)).collect(), c.clone())))
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> NCPoly {
        NCPoly { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Parses the textual form `coef * g[i,j] g[k,l] + ...`.
    pub fn parse(s: &str) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for term in split_top(s, '+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let (coef, gens) = match split_top(term, '*').as_slice() {
                [g] if g.contains('[') => ("1".to_string(), g.clone()),
                [c] => (c.clone(), String::new()),
                [c, g] => (c.clone(), g.clone()),
                _ => return Err(Error::Parse(format!("cannot read term '{term}'"))),
            };
            let (coef, gens) = if coef.contains('[') { ("1".to_string(), format!("{coef} {gens}")) } else { (coef, gens) };
            let c: RatFunc = coef.trim().parse()?;
            let mut w = Word::new();
            for tok in gens.split_whitespace() {
                w.push(parse_gen(tok)?);
            }
            out.add_term(w, c);
        }
        Ok(out)
    }
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

pub fn parse_gen(tok: &str) -> Result<GenId> {
    let bad = || Error::Parse(format!("bad generator '{tok}'"));
    let open = tok.find('[').ok_or_else(bad)?;
    let sym = match &tok[..open] {
        "t" => Sym::T,
        "del" => Sym::Del,
        "x" => Sym::X,
        "d" => Sym::D,
        _ => return Err(bad()),
    };
    let inner = tok[open + 1..].strip_suffix(']').ok_or_else(bad)?;
    let mut it = inner.split(',').map(|x| x.trim().parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(i)), Some(Ok(j)), None) if i >= 1 && j >= 1 && i < 256 && j < 256 => Ok(GenId::new(sym, i, j)),
        _ => Err(bad()),
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                if w.is_empty() {
                    cs
                } else {
                    format!("{cs} * {}", fmt_word(w))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
