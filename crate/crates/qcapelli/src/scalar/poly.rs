//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients. Coefficients are stored from the constant term upward and
//! the vector never carries trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Builds from low-to-high coefficients, trimming zeros.
    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    /// Number of leading zero coefficients from the constant term, i.e. the
    /// largest k with q^k dividing the polynomial.
    pub fn valuation(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by q^k; caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k.min(self.0.len())..].to_vec())
    }

    /// Multiplies by q^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        Poly(c)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut c = long.0.clone();
        for (i, x) in short.0.iter().enumerate() {
            c[i] += x;
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut c = self.0.clone();
        c.resize(n, BigInt::zero());
        for (i, x) in o.0.iter().enumerate() {
            c[i] -= x;
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.0.len() == 1 {
            return self.scale(&o.0[0]);
        }
        if self.0.len() == 1 {
            return o.scale(&self.0[0]);
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division by an integer; caller guarantees divisibility.
    pub fn div_int(&self, k: &BigInt) -> Poly {
        if k.is_one() {
            return self.clone();
        }
        Poly(self.0.iter().map(|c| c / k).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.div_int(&g)
    }

    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let mut r = self.clone();
        let lb = b.lc();
        let db = b.degree();
        while !r.is_zero() && r.degree() >= db {
            let k = r.degree() - db;
            let lr = r.lc();
            let g = lr.gcd(&lb);
            let (mr, mb) = (&lb / &g, &lr / &g);
            r = r.scale(&mr).sub(&b.shift_up(k).scale(&mb));
        }
        r
    }

    /// Greatest common divisor in ℤ[q], with positive leading coefficient.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.primitive().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return Poly::constant(c);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    /// Exact quotient; panics if `o` does not divide `self` in ℤ[q].
    pub fn div_exact(&self, o: &Poly) -> Poly {
        assert!(!o.is_zero(), "polynomial division by zero");
        if o.0.len() == 1 {
            return self.div_int(&o.0[0]);
        }
        if self.is_zero() {
            return Poly::zero();
        }
        let mut r = self.0.clone();
        let db = o.degree();
        let lb = o.lc();
        let mut quo = vec![BigInt::zero(); self.degree() + 1 - db];
        for k in (0..quo.len()).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let (qk, rem) = c.div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, b) in o.0.iter().enumerate() {
                r[k + j] -= &qk * b;
            }
            quo[k] = qk;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Poly::from_coeffs(quo)
    }

    /// Evaluates at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}
