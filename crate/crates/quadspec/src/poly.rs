//! Sparse holomorphic polynomials in `n` variables.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::matcore::c64;
use crate::multiindex::MultiIndex;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<MultiIndex, Complex64>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], c64(1.0, 0.0))
    }

    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let mut p = Poly::zero(alpha.len());
        p.terms.insert(alpha, c);
        p
    }

    pub fn coeff(&self, alpha: &[u32]) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().filter(|(_, c)| c.norm() > 0.0).map(|(a, _)| a.iter().sum()).max()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Complex64) {
        *self.terms.entry(alpha).or_default() += c;
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), *c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), c * s)).collect() }
    }

    /// `x_j · p`.
    pub fn times_x(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            let mut b = a.clone();
            b[j] += 1;
            out.add_term(b, *c);
        }
        out
    }

    /// `∂p/∂x_j`.
    pub fn d(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            if a[j] > 0 {
                let mut b = a.clone();
                b[j] -= 1;
                out.add_term(b, c * a[j] as f64);
            }
        }
        out
    }

    /// Keep only the coefficients whose multi-index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), *c)).collect() }
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                let mut m = *c;
                for (xj, &aj) in x.iter().zip(a) {
                    m *= xj.powu(aj);
                }
                m
            })
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Poly) -> f64 {
        let diff = self.add(&other.scale(c64(-1.0, 0.0)));
        diff.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}
