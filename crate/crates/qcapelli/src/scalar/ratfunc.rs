//! Elements of ℚ(q) in canonical form.
//!
//! A value is stored as `q^shift · num / den` where neither `num` nor `den`
//! is divisible by `q`, the two are coprime in ℤ[q] and `den` has positive
//! leading coefficient. Laurent polynomials therefore always have `den = 1`,
//! which keeps the common case free of gcd computations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { shift: 0, num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(k: i64) -> Self {
        RatFunc::from_bigint(BigInt::from(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { shift: 0, num: Poly::constant(k), den: Poly::one() }
    }

    /// The monomial q^k.
    pub fn q_pow(k: i64) -> Self {
        RatFunc { shift: k, num: Poly::one(), den: Poly::one() }
    }

    pub fn q() -> Self {
        RatFunc::q_pow(1)
    }

    /// c·q^k.
    pub fn monomial(c: i64, k: i64) -> Self {
        if c == 0 {
            return RatFunc::zero();
        }
        RatFunc { shift: k, num: Poly::from_i64s(&[c]), den: Poly::one() }
    }

    /// q − q⁻¹.
    pub fn q_minus_qinv() -> Self {
        RatFunc::q() - RatFunc::q_pow(-1)
    }

    /// Laurent polynomial Σ c_k q^(low+k).
    pub fn laurent(low: i64, coeffs: &[i64]) -> Self {
        RatFunc::from_parts(low, Poly::from_i64s(coeffs), Poly::one())
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(RatFunc::from_parts(0, num, den))
    }

    fn from_parts(mut shift: i64, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        shift += vn as i64 - vd as i64;
        let mut num = if vn > 0 { num.shift_down(vn) } else { num };
        let mut den = if vd > 0 { den.shift_down(vd) } else { den };
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            if den.lc().is_negative() {
                num = num.neg();
                den = den.neg();
            }
        }
        RatFunc { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True for c·q^k with c an integer.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.coeffs().len() == 1
    }

    /// True when the denominator is a power of q.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Numerator and denominator as ordinary polynomials (the shift folded in).
    pub fn num_den(&self) -> (Poly, Poly) {
        if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.shift) as usize))
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { shift: -self.shift, num, den })
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, k: i64) -> RatFunc {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut acc = RatFunc::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplies by q^k.
    pub fn mul_q_pow(&self, k: i64) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { shift: self.shift + k, num: self.num.clone(), den: self.den.clone() }
    }

    fn mul_ref(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { shift, num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() { (self.num.clone(), o.den.clone()) } else { (self.num.div_exact(&g1), o.den.div_exact(&g1)) };
        let (n2, d1) = if g2.is_one() { (o.num.clone(), self.den.clone()) } else { (o.num.div_exact(&g2), self.den.div_exact(&g2)) };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.lc().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        if den.is_one() || den.coeffs().len() == 1 {
            return RatFunc::from_parts(shift, num, den);
        }
        RatFunc { shift, num, den }
    }

    fn add_ref(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = o.num.shift_up((o.shift - s) as usize);
        if self.den == o.den {
            return RatFunc::from_parts(s, a.add(&b), self.den.clone());
        }
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        RatFunc::from_parts(s, num, self.den.mul(&o.den))
    }

    /// Evaluates at q = x modulo a prime p; None if the denominator vanishes.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let ev = |poly: &Poly| -> u64 {
            let m = BigInt::from(p);
            let mut acc: u64 = 0;
            for c in poly.coeffs().iter().rev() {
                let cm = ((c % &m) + &m) % &m;
                let cm: u64 = cm.try_into().unwrap();
                acc = ((acc as u128 * x as u128 + cm as u128) % p as u128) as u64;
            }
            acc
        };
        let n = ev(&self.num);
        let d = ev(&self.den);
        if d == 0 {
            return None;
        }
        let xs = if self.shift >= 0 { pow_mod(x, self.shift as u64, p) } else { inv_mod(pow_mod(x, (-self.shift) as u64, p), p)? };
        Some(mul_mod(mul_mod(n, inv_mod(d, p)?, p), xs, p))
    }

    /// Sort key used for deterministic output only.
    fn sort_key(&self) -> (i64, &Poly, &Poly) {
        (self.shift, &self.num, &self.den)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.sort_key(), other.sort_key());
        a.0.cmp(&b.0)
            .then_with(|| a.1.coeffs().cmp(b.1.coeffs()))
            .then_with(|| a.2.coeffs().cmp(b.2.coeffs()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &'a RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(self, o)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(&self, &o)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &'a RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(&self, o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&b.neg()));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, o: &RatFunc) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, o: &RatFunc) {
        *self = self.add_ref(&o.neg());
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, o: &RatFunc) {
        *self = self.mul_ref(o);
    }
}

impl From<i64> for RatFunc {
    fn from(k: i64) -> Self {
        RatFunc::from_int(k)
    }
}

fn fmt_poly(p: &Poly) -> (String, usize) {
    let mut out = String::new();
    let mut terms = 0;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if terms == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mon = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        if k == 0 {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mon);
        } else {
            out.push_str(&format!("{a}*{mon}"));
        }
        terms += 1;
    }
    if terms == 0 {
        out.push('0');
    }
    (out, terms)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.num_den();
        let (ns, nt) = fmt_poly(&n);
        if d.is_one() {
            return f.write_str(&ns);
        }
        let (ds, dt) = fmt_poly(&d);
        let ns = if nt > 1 { format!("({ns})") } else { ns };
        let ds = if dt > 1 || ds.contains('*') { format!("({ds})") } else { ds };
        write!(f, "{ns}/{ds}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Recursive-descent reader for expressions such as `(q^4 - 1)/(q^2 - 1)`,
/// `2*q^-3` or `q^2 + q^-2`.
struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in rational function", self.pos))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                b'q' | b'(' => acc = acc * self.unary()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.int()?;
            let e: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFunc::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::from_bigint(self.int()?)),
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut r = Reader { s: s.as_bytes(), pos: 0 };
        let v = r.expr()?;
        if r.peek().is_some() {
            return Err(r.err("trailing input"));
        }
        Ok(v)
    }
}
