//! Quadratic relations read off from the matrix equations.
//!
//! Matrices are N²×N² with rows and columns indexed by pairs (i, j) and
//! entries in the free algebra; products concatenate entries in order.

use std::collections::BTreeMap;

use crate::family::{FamilyDescriptor, FamilyKind};
use crate::freealg::{GenId, NCPoly, Sym};
use crate::scalar::RatFunc;

type Pair = (usize, usize);

#[derive(Clone, Debug, Default)]
pub struct NcMat {
    rows: BTreeMap<Pair, BTreeMap<Pair, NCPoly>>,
}

impl NcMat {
    fn set(&mut self, r: Pair, c: Pair, p: NCPoly) {
        if !p.is_zero() {
            self.rows.entry(r).or_default().insert(c, p);
        }
    }

    /// R-type scalar matrix from an entry function f(i,j,k,l) = M^{ij}_{kl}.
    pub fn scalar(n: usize, f: impl Fn(usize, usize, usize, usize) -> RatFunc) -> NcMat {
        let mut m = NcMat::default();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let v = f(i, j, k, l);
                        if !v.is_zero() {
                            m.set((i, j), (k, l), NCPoly::constant(v));
                        }
                    }
                }
            }
        }
        m
    }

    /// A ⊗ I where A has entries a(i,k).
    pub fn first_slot(n: usize, a: &dyn Fn(usize, usize) -> NCPoly) -> NcMat {
        let mut m = NcMat::default();
        for i in 1..=n {
            for k in 1..=n {
                let e = a(i, k);
                if e.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    m.set((i, j), (k, j), e.clone());
                }
            }
        }
        m
    }

    /// I ⊗ A.
    pub fn second_slot(n: usize, a: &dyn Fn(usize, usize) -> NCPoly) -> NcMat {
        let mut m = NcMat::default();
        for j in 1..=n {
            for l in 1..=n {
                let e = a(j, l);
                if e.is_zero() {
                    continue;
                }
                for i in 1..=n {
                    m.set((i, j), (i, l), e.clone());
                }
            }
        }
        m
    }

    pub fn mul(&self, o: &NcMat) -> NcMat {
        let mut m = NcMat::default();
        for (r, row) in &self.rows {
            let mut acc: BTreeMap<Pair, NCPoly> = BTreeMap::new();
            for (k, a) in row {
                if let Some(orow) = o.rows.get(k) {
                    for (c, b) in orow {
                        let e = acc.entry(*c).or_default();
                        *e = e.add(&a.concat(b));
                    }
                }
            }
            for (c, p) in acc {
                m.set(*r, c, p);
            }
        }
        m
    }

    pub fn sub(&self, o: &NcMat) -> NcMat {
        let mut m = self.clone();
        for (r, row) in &o.rows {
            for (c, p) in row {
                let cur = m.rows.get(r).and_then(|x| x.get(c)).cloned().unwrap_or_default();
                let d = cur.sub(p);
                let e = m.rows.entry(*r).or_default();
                if d.is_zero() {
                    e.remove(c);
                } else {
                    e.insert(*c, d);
                }
            }
        }
        m
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> Vec<(Pair, Pair, NCPoly)> {
        let mut v = Vec::new();
        for (r, row) in &self.rows {
            for (c, p) in row {
                if !p.is_zero() {
                    v.push((*r, *c, p.clone()));
                }
            }
        }
        v
    }
}

/// Generator t_{ij} (or ∂_{ij}) as a polynomial, zero off the blocks.
pub fn t_entry(fam: &FamilyDescriptor, sym: Sym, i: usize, j: usize) -> NCPoly {
    if fam.t_exists(i, j) {
        NCPoly::gen(GenId::new(sym, i, j))
    } else {
        NCPoly::zero()
    }
}

/// x_{ij} (or d_{ij}) after the linear relations.
pub fn canonical_entry(fam: &FamilyDescriptor, sym: Sym, i: usize, j: usize) -> NCPoly {
    match fam.canonicalize(i, j, sym == Sym::D) {
        None => NCPoly::zero(),
        Some((c, (a, b))) => NCPoly::term(crate::freealg::word(&[GenId::new(sym, a, b)]), c),
    }
}

/// Entries of R T₁ T₂ − T₂ T₁ R.
pub fn t_relations(fam: &FamilyDescriptor) -> Vec<NCPoly> {
    let n = fam.big_n;
    let r = NcMat::scalar(n, |i, j, k, l| fam.r.entry(i, j, k, l));
    let t = |i: usize, k: usize| t_entry(fam, Sym::T, i, k);
    let t1 = NcMat::first_slot(n, &t);
    let t2 = NcMat::second_slot(n, &t);
    let lhs = r.mul(&t1).mul(&t2);
    let rhs = t2.mul(&t1).mul(&r);
    lhs.sub(&rhs).entries().into_iter().map(|e| e.2).collect()
}

/// Entries of R X₁ R^{t1} X₂ − X₂ R^{t1} X₁ R in canonical x generators.
pub fn x_relations(fam: &FamilyDescriptor) -> Vec<NCPoly> {
    let n = fam.big_n;
    let r = NcMat::scalar(n, |i, j, k, l| fam.r.entry(i, j, k, l));
    let rt1 = NcMat::scalar(n, |i, j, k, l| fam.r.t1(i, j, k, l));
    let x = |i: usize, k: usize| canonical_entry(fam, Sym::X, i, k);
    let x1 = NcMat::first_slot(n, &x);
    let x2 = NcMat::second_slot(n, &x);
    let lhs = r.mul(&x1).mul(&rt1).mul(&x2);
    let rhs = x2.mul(&rt1).mul(&x1).mul(&r);
    lhs.sub(&rhs).entries().into_iter().map(|e| e.2).collect()
}

/// Relations of D_θ: the image of the x relations under the
/// anti-isomorphism x_{ij} ↦ d_{ji}, rewritten in canonical d generators.
pub fn d_relations(fam: &FamilyDescriptor) -> Vec<NCPoly> {
    let canon = |g: GenId| {
        let (i, j) = g.idx();
        Some(canonical_entry(fam, Sym::D, i, j))
    };
    x_relations(fam)
        .iter()
        .map(|r| r.reverse_map(|g| GenId::d(g.j as usize, g.i as usize)).substitute(&canon))
        .filter(|r| !r.is_zero())
        .collect()
}

/// The cross relation for d_{ab} x_{ef}: returns the right-hand side
/// Σ (R^{t2})^{wr}_{xq}(R^{t2})^{pq}_{ma}(R^{t2})^{xy}_{fl}(R^{t2})^{ml}_{eb} x_{pw}d_{ry} + q^{−δ_{ef}}δ_{ae}δ_{bf}
/// with raw (non-canonical) generator indices.
pub fn cross_rhs_raw(fam: &FamilyDescriptor, a: usize, b: usize, e: usize, f: usize) -> BTreeMap<(Pair, Pair), RatFunc> {
    // index R^{t2} entries by their lower pair
    let mut by_lower: BTreeMap<Pair, Vec<(Pair, RatFunc)>> = BTreeMap::new();
    for ([i, j, k, l], v) in fam.r.t2_entries() {
        by_lower.entry((k, l)).or_default().push(((i, j), v));
    }
    let empty = Vec::new();
    let get = |k: usize, l: usize| by_lower.get(&(k, l)).unwrap_or(&empty);
    let mut out: BTreeMap<(Pair, Pair), RatFunc> = BTreeMap::new();
    for ((m, l), c4) in get(e, b) {
        for ((p, qq), c2) in get(*m, a) {
            for ((x, y), c3) in get(f, *l) {
                for ((w, r), c1) in get(*x, *qq) {
                    let c = &(&(c1 * c2) * c3) * c4;
                    let e = out.entry(((*p, *w), (*r, *y))).or_default();
                    *e += &c;
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Constant term of d_{ab}x_{ab} for a canonical pair. In type AI the
/// off-diagonal value is forced by confluence once d_{aa}x_{aa} has q⁻¹.
pub fn cross_constant(fam: &FamilyDescriptor, a: usize, b: usize) -> RatFunc {
    if a == b {
        RatFunc::q_pow(-1)
    } else if fam.kind == FamilyKind::AI {
        "1/(1 + q^2)".parse().unwrap()
    } else {
        RatFunc::one()
    }
}

/// Relation d_{ab}x_{ef} − (right-hand side) for canonical pairs.
pub fn cross_relation(fam: &FamilyDescriptor, a: usize, b: usize, e: usize, f: usize) -> NCPoly {
    let lhs = canonical_entry(fam, Sym::D, a, b).concat(&canonical_entry(fam, Sym::X, e, f));
    let mut rhs = NCPoly::zero();
    for (((p, w), (r, y)), c) in cross_rhs_raw(fam, a, b, e, f) {
        let t = canonical_entry(fam, Sym::X, p, w).concat(&canonical_entry(fam, Sym::D, r, y));
        rhs.add_scaled(&c, &t);
    }
    if a == e && b == f {
        rhs.add_term(Default::default(), cross_constant(fam, a, b));
    }
    lhs.sub(&rhs)
}

/// Cross relations for all pairs of canonical generators.
pub fn cross_relations(fam: &FamilyDescriptor) -> Vec<NCPoly> {
    let mut v = Vec::new();
    for &(a, b) in &fam.canonical {
        for &(e, f) in &fam.canonical {
            v.push(cross_relation(fam, a, b, e, f));
        }
    }
    v
}
