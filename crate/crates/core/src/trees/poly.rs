use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

/// Sparse multivariate polynomial: exponent vectors (fixed arity) mapped to
/// nonzero coefficients, kept in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    arity: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity], C::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: C) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// The indeterminate with index `k`.
    pub fn var(arity: usize, k: usize) -> Self {
        let mut e = vec![0; arity];
        e[k] = 1;
        Self::monomial(e, C::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: C) {
        assert_eq!(exponents.len(), self.arity, "exponent arity");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(c) => {
                let sum = c.clone() + coeff;
                if sum.is_zero() {
                    self.terms.remove(&exponents);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(exponents, coeff);
            }
        }
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity, "evaluation point arity");
        self.terms.iter().fold(C::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(c.clone(), |m, (&k, x)| {
                (0..k).fold(m, |m, _| m * x.clone())
            });
            acc + m
        })
    }

    /// Sum of coefficients.
    pub fn eval_ones(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    /// Total degree of every term, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl<'a, C: Scalar> Add for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Scalar> Mul for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}
