//! Polynomials in real variables with multivector coefficients.
//!
//! A term is `x^α · C`: a real monomial times a multivector. Real monomials
//! commute with everything, so products and derivatives are plain term
//! rewriting and exact up to coefficient rounding.

use std::collections::BTreeMap;

use crate::clifford::{Multivector, Signature};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    sig: Signature,
    vars: usize,
    terms: BTreeMap<Vec<u32>, Multivector>,
}

impl Polynomial {
    pub fn zero(sig: Signature, vars: usize) -> Self {
        Self {
            sig,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: Signature, vars: usize, c: Multivector) -> Self {
        Self::monomial(sig, vars, vec![0; vars], c)
    }

    pub fn monomial(sig: Signature, vars: usize, exps: Vec<u32>, c: Multivector) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Self::zero(sig, vars);
        p.add_term(exps, c);
        p
    }

    /// The coordinate function `x_i` times `c`.
    pub fn variable(sig: Signature, vars: usize, i: usize, c: Multivector) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        Self::monomial(sig, vars, exps, c)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Multivector)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Multivector) {
        let entry = self
            .terms
            .entry(exps)
            .or_insert_with(|| Multivector::zero(c.signature()));
        *entry += c;
        let zero = entry.coeffs().iter().all(|&x| x == 0.0);
        if zero {
            // keep the map free of exact zeros so `is_zero` is meaningful
            self.terms.retain(|_, v| v.coeffs().iter().any(|&x| x != 0.0));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.sig, self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(s));
        }
        out
    }

    /// Product with multivector coefficients multiplied in order.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.sig, self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, *ca * *cb);
            }
        }
        out
    }

    /// `m · P`.
    pub fn left_mul(&self, m: &Multivector) -> Self {
        let mut out = Self::zero(self.sig, self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), *m * *c);
        }
        out
    }

    /// `P · m`.
    pub fn right_mul(&self, m: &Multivector) -> Self {
        let mut out = Self::zero(self.sig, self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), *c * *m);
        }
        out
    }

    /// Exact `∂P/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.sig, self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c.scale(e[i] as f64));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        (0..self.vars).fold(Self::zero(self.sig, self.vars), |acc, i| {
            acc.add(&self.partial(i).partial(i))
        })
    }

    pub fn eval(&self, x: &[f64]) -> Multivector {
        debug_assert_eq!(x.len(), self.vars);
        let mut out = Multivector::zero(self.sig);
        for (e, c) in &self.terms {
            let mono: f64 = e
                .iter()
                .zip(x)
                .map(|(&k, &xi)| xi.powi(k as i32))
                .product();
            out += c.scale(mono);
        }
        out
    }

    /// Largest coefficient norm, for scaling tolerances.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_respects_coefficient_order() {
        let s = Signature::negative(2).unwrap();
        let e1 = Multivector::generator(s, 1).unwrap();
        let e2 = Multivector::generator(s, 2).unwrap();
        let p = Polynomial::variable(s, 3, 1, e1);
        let q = Polynomial::variable(s, 3, 2, e2);
        let pq = p.mul(&q);
        let qp = q.mul(&p);
        assert!(pq.add(&qp).is_zero());
        assert_eq!(pq.degree(), 2);
    }

    #[test]
    fn derivatives() {
        let s = Signature::negative(1).unwrap();
        let one = Multivector::one(s);
        // x0^3 x1
        let p = Polynomial::monomial(s, 2, vec![3, 1], one);
        let d = p.partial(0);
        assert_eq!(d, Polynomial::monomial(s, 2, vec![2, 1], one.scale(3.0)));
        assert!(p.partial(1).partial(1).is_zero());
        let lap = p.laplacian();
        assert_eq!(lap, Polynomial::monomial(s, 2, vec![1, 1], one.scale(6.0)));
        assert_eq!(p.eval(&[2.0, 0.5]).scalar_part(), 4.0);
    }
}
