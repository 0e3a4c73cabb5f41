//! Exact multivariate polynomials and total-degree truncated power series.
//!
//! Both containers keep a sparse map from [`ExponentVector`] to a nonzero
//! coefficient. Zero coefficients are pruned on every write, so two values
//! are equal exactly when their maps are equal.
//!
//! Variables are indexed from zero internally (`z1` lives at index 0); leaf
//! pairs and permutations use the 1-based numbering of the domain.

mod exponent;
mod format;
mod permutation;
mod series;
mod symmetric;

pub use exponent::ExponentVector;
pub use format::{parse_polynomial, PolynomialJson, TermJson};
pub use permutation::Permutation;
pub use series::{geometric_expand, Series};
pub use symmetric::{complete_homogeneous, complete_homogeneous_in, elementary_symmetric, elementary_symmetric_in};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

pub(crate) type TermMap<C> = HashMap<ExponentVector, C>;

/// Adds `coeff` into `map[key]`, removing the entry if it cancels to zero.
pub(crate) fn accumulate<C: Coefficient>(map: &mut TermMap<C>, key: ExponentVector, coeff: C) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + coeff;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
        std::collections::hash_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
    }
}

pub(crate) fn sorted_terms<C>(map: &TermMap<C>) -> Vec<(&ExponentVector, &C)> {
    let mut terms: Vec<_> = map.iter().collect();
    terms.sort_by(|a, b| a.0.cmp(b.0));
    terms
}

fn check_vars(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

/// A polynomial in `num_vars` variables with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    num_vars: usize,
    terms: TermMap<C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: HashMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, C::one())
    }

    pub fn constant(num_vars: usize, c: C) -> Self {
        let mut p = Self::zero(num_vars);
        accumulate(&mut p.terms, ExponentVector::zeros(num_vars), c);
        p
    }

    /// The single term `c * z^e`.
    pub fn monomial(e: ExponentVector, c: C) -> Self {
        let mut p = Self::zero(e.len());
        accumulate(&mut p.terms, e, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            check_vars(num_vars, e.len())?;
            accumulate(&mut p.terms, e, c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in canonical order (graded, then lexicographic).
    pub fn terms(&self) -> Vec<(&ExponentVector, &C)> {
        sorted_terms(&self.terms)
    }

    pub(crate) fn term_map(&self) -> &TermMap<C> {
        &self.terms
    }

    pub fn coefficient(&self, e: &ExponentVector) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&ExponentVector::zeros(self.num_vars))
    }

    /// Maximum total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_vars(self.num_vars, other.num_vars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_vars(self.num_vars, other.num_vars)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                accumulate(&mut out.terms, ea.add(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Multiplies by `z_{var+1}^power` (0-based `var`).
    pub fn mul_var_power(&self, var: usize, power: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.bump(var, power);
                (e, c.clone())
            })
            .collect();
        Polynomial { num_vars: self.num_vars, terms }
    }

    /// Writes `self = Σ_i f_i z_{var+1}^i` and returns `[f_0, f_1, ...]`.
    pub fn split_by_var(&self, var: usize) -> Vec<Self> {
        let mut parts: Vec<Self> = Vec::new();
        for (e, c) in &self.terms {
            let power = e.get(var) as usize;
            if parts.len() <= power {
                parts.resize_with(power + 1, || Self::zero(self.num_vars));
            }
            let mut rest = e.clone();
            rest.set(var, 0);
            accumulate(&mut parts[power].terms, rest, c.clone());
        }
        parts
    }

    /// Reinterprets the polynomial in a ring with more variables; the new
    /// variables do not occur.
    pub fn embed(&self, num_vars: usize) -> Result<Self> {
        if num_vars < self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, found: num_vars });
        }
        let terms = self.terms.iter().map(|(e, c)| (e.extended(num_vars), c.clone())).collect();
        Ok(Polynomial { num_vars, terms })
    }

    /// Renames `z_k` to `z_{π(k)}`.
    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        check_vars(self.num_vars, perm.len())?;
        let terms = self.terms.iter().map(|(e, c)| (perm.apply(e), c.clone())).collect();
        Ok(Polynomial { num_vars: self.num_vars, terms })
    }

    /// The power series of this polynomial, truncated at total degree `cap`.
    pub fn to_series(&self, cap: u32) -> Series<C> {
        Series::from_polynomial(self, cap)
    }

    /// Converts coefficients into another ring.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.clone(), f(c));
        }
        out
    }
}

impl<C: Coefficient> std::ops::Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Coefficient> std::ops::Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl<C: Coefficient> std::ops::Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}
