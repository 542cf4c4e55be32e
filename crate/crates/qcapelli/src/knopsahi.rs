//! Knop-Sahi interpolation polynomials from their vanishing conditions, and
//! the comparison with Capelli eigenvalues.

use rayon::prelude::*;
use serde::Serialize;

use crate::capelli::CapelliContext;
use crate::error::{Error, Result};
use crate::family::Partition;
use crate::scalar::linalg::Matrix;
use crate::scalar::{RatFunc, SymPoly};

/// m_ν(y_1, …, y_n): the sum over distinct rearrangements of ν.
pub fn monomial_symmetric(nu: &Partition, n: usize) -> Result<SymPoly> {
    if nu.len() > n {
        return Err(Error::Invalid(format!("{nu} has more than {n} parts")));
    }
    let mut e = nu.padded(n);
    e.sort();
    let mut p = SymPoly::zero(n);
    loop {
        p.add_term(e.clone(), RatFunc::one());
        if !next_permutation(&mut e) {
            break;
        }
    }
    Ok(p)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// P*_λ(x; a, g) in the variables x_1, …, x_n.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationPoly {
    pub lambda: Partition,
    pub n: usize,
    pub a: RatFunc,
    pub g: RatFunc,
    pub poly: SymPoly,
    /// c_λ = P*_λ(a^λ)⁻¹ for the unnormalized polynomial.
    pub c_lambda: RatFunc,
    pub normalized: bool,
}

impl InterpolationPoly {
    /// Value at x = (a^{μ_1}, …, a^{μ_n}).
    pub fn eval_at_a_power(&self, mu: &Partition) -> Result<RatFunc> {
        let vals: Vec<RatFunc> = mu.padded(self.n).iter().map(|&m| self.a.pow(m as i64)).collect();
        self.poly.eval(&vals)
    }

    /// The polynomial in y_i = x_i g^{−i}.
    pub fn in_y(&self) -> SymPoly {
        let s: Vec<RatFunc> = (1..=self.n).map(|i| self.g.pow(i as i64)).collect();
        self.poly.rescale(&s)
    }

    /// Whether every transposition of the y variables fixes the polynomial.
    pub fn is_symmetric_in_y(&self) -> bool {
        let y = self.in_y();
        (0..self.n.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(i, i + 1);
            y.permute(&perm) == y
        })
    }
}

/// Number of unknowns and of vanishing conditions of the system for λ.
pub fn system_shape(lambda: &Partition, n: usize) -> (usize, usize) {
    let all = Partition::all_up_to(lambda.size(), n);
    (all.len(), all.len() - 1)
}

/// Solves for P*_λ: symmetric in y_i = x_i g^{−i}, of degree |λ|, vanishing
/// at a^μ for μ ≠ λ with |μ| ≤ |λ|. The coefficient of m_λ(y) is 1 unless
/// `normalized`, in which case the value at a^λ is 1.
pub fn knop_sahi(lambda: &Partition, n: usize, a: &RatFunc, g: &RatFunc, normalized: bool) -> Result<InterpolationPoly> {
    if a.is_zero() || g.is_zero() {
        return Err(Error::Invalid("a and g must be nonzero".into()));
    }
    if lambda.len() > n {
        return Err(Error::Invalid(format!("{lambda} has more than {n} parts")));
    }
    let basis_parts = Partition::all_up_to(lambda.size(), n);
    let basis: Vec<SymPoly> = basis_parts.iter().map(|nu| monomial_symmetric(nu, n)).collect::<Result<_>>()?;
    let ginv = g.inv()?;
    let y_at = |mu: &Partition| -> Vec<RatFunc> {
        mu.padded(n).iter().enumerate().map(|(i, &m)| &a.pow(m as i64) * &ginv.pow(i as i64 + 1)).collect()
    };
    let mut rows = Vec::new();
    for mu in basis_parts.iter().filter(|mu| *mu != lambda) {
        let y = y_at(mu);
        rows.push(basis.iter().map(|b| b.eval(&y)).collect::<Result<Vec<_>>>()?);
    }
    let kernel = if rows.is_empty() { vec![vec![RatFunc::one()]] } else { Matrix::from_rows(rows).nullspace() };
    if kernel.len() != 1 {
        return Err(Error::Degenerate(format!("kernel of dimension {} for {lambda}", kernel.len())));
    }
    let top = basis_parts.iter().position(|nu| nu == lambda).expect("λ is among its own basis partitions");
    let lead = kernel[0][top].clone();
    if lead.is_zero() {
        return Err(Error::Degenerate(format!("no m_{lambda} term in the solution")));
    }
    let mut y_poly = SymPoly::zero(n);
    for (c, b) in kernel[0].iter().zip(&basis) {
        y_poly = y_poly.add(&b.scale(&c.checked_div(&lead)?));
    }
    let s: Vec<RatFunc> = (1..=n).map(|i| ginv.pow(i as i64)).collect();
    let poly = y_poly.rescale(&s);
    let mut ip = InterpolationPoly { lambda: lambda.clone(), n, a: a.clone(), g: g.clone(), poly, c_lambda: RatFunc::one(), normalized: false };
    let at_lambda = ip.eval_at_a_power(lambda)?;
    if at_lambda.is_zero() {
        return Err(Error::Degenerate(format!("nondegeneracy violated: P*_{lambda}(a^{lambda}) = 0")));
    }
    ip.c_lambda = at_lambda.inv()?;
    if normalized {
        ip.poly = ip.poly.scale(&ip.c_lambda);
        ip.normalized = true;
    }
    Ok(ip)
}

/// One cell of the eigenvalue table.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCell {
    pub lambda: String,
    pub mu: String,
    pub eigenvalue: RatFunc,
    pub interpolation: RatFunc,
    pub pass: bool,
}

/// Compares eig(λ, μ) with c_λP*_λ(q^{mμ}; a, g) for all |λ| ≤ max_lambda,
/// |μ| ≤ max_mu with at most n parts.
pub fn verify_eigenvalues(ctx: &CapelliContext, max_lambda: u32, max_mu: u32) -> Result<Vec<EigenCell>> {
    let fam = &ctx.tower().fam;
    let lambdas = Partition::all_up_to(max_lambda, fam.n);
    let mus = Partition::all_up_to(max_mu, fam.n);
    let per_lambda: Vec<Vec<EigenCell>> = lambdas
        .par_iter()
        .map(|lambda| {
            let ks = knop_sahi(lambda, fam.n, &fam.a_param, &fam.g_param, true)?;
            mus.iter()
                .map(|mu| {
                    let eigenvalue = ctx.eigenvalue(lambda, mu)?;
                    let exps: Vec<i64> = mu.padded(fam.n).iter().map(|&m| fam.m_exponent * m as i64).collect();
                    let interpolation = ks.poly.eval_at_q_powers(&exps)?;
                    let pass = eigenvalue == interpolation;
                    Ok(EigenCell { lambda: lambda.to_string(), mu: mu.to_string(), eigenvalue, interpolation, pass })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_lambda.into_iter().flatten().collect())
}
