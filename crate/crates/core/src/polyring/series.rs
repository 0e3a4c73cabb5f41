use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::{accumulate, check_vars, sorted_terms, ExponentVector, Permutation, Polynomial, TermMap};

/// A formal power series known exactly through total degree `cap`.
///
/// No stored monomial exceeds the cap; asking for one that does is an
/// [`Error::OutOfPrecision`], never a silent zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    num_vars: usize,
    cap: u32,
    terms: TermMap<C>,
}

impl<C: Coefficient> Series<C> {
    pub fn zero(num_vars: usize, cap: u32) -> Self {
        Series { num_vars, cap, terms: HashMap::new() }
    }

    pub fn one(num_vars: usize, cap: u32) -> Self {
        Polynomial::one(num_vars).to_series(cap)
    }

    pub fn from_polynomial(p: &Polynomial<C>, cap: u32) -> Self {
        let terms =
            p.term_map().iter().filter(|(e, _)| e.degree() <= cap).map(|(e, c)| (e.clone(), c.clone())).collect();
        Series { num_vars: p.num_vars(), cap, terms }
    }

    pub fn from_terms<I>(num_vars: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        let mut s = Self::zero(num_vars, cap);
        for (e, c) in terms {
            check_vars(num_vars, e.len())?;
            if e.degree() > cap {
                return Err(Error::OutOfPrecision { degree: e.degree(), cap });
            }
            accumulate(&mut s.terms, e, c);
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// The maximal total degree through which the series is exact.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> Vec<(&ExponentVector, &C)> {
        sorted_terms(&self.terms)
    }

    pub(crate) fn term_map(&self) -> &TermMap<C> {
        &self.terms
    }

    pub fn coefficient_at(&self, e: &ExponentVector) -> Result<C> {
        check_vars(self.num_vars, e.len())?;
        if e.degree() > self.cap {
            return Err(Error::OutOfPrecision { degree: e.degree(), cap: self.cap });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(C::zero))
    }

    /// Drops every term above `cap`. The cap can only decrease.
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        let terms = self.terms.iter().filter(|(e, _)| e.degree() <= cap).map(|(e, c)| (e.clone(), c.clone())).collect();
        Series { num_vars: self.num_vars, cap, terms }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_vars(self.num_vars, other.num_vars)?;
        let cap = self.cap.min(other.cap);
        let mut out = self.truncate(cap);
        for (e, c) in &other.terms {
            if e.degree() <= cap {
                accumulate(&mut out.terms, e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_vars(self.num_vars, other.num_vars)?;
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.num_vars, cap);
        let mut rhs: Vec<_> = other.terms.iter().map(|(e, c)| (e.degree(), e, c)).collect();
        rhs.sort_by_key(|t| t.0);
        for (ea, ca) in &self.terms {
            let da = ea.degree();
            if da > cap {
                continue;
            }
            for &(db, eb, cb) in &rhs {
                if da + db > cap {
                    break;
                }
                accumulate(&mut out.terms, ea.add(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Multiplies by a polynomial, keeping this series' cap.
    pub fn mul_polynomial(&self, p: &Polynomial<C>) -> Result<Self> {
        self.checked_mul(&p.to_series(self.cap))
    }

    /// Multiplies by `1 / (1 - z^step)`, i.e. by `Σ_k z^{k·step}`.
    ///
    /// `step` must have positive total degree.
    pub fn mul_geometric(&self, step: &ExponentVector) -> Result<Self> {
        check_vars(self.num_vars, step.len())?;
        let ds = step.degree();
        if ds == 0 {
            return Err(Error::Internal("geometric step of degree zero".into()));
        }
        let mut out = Self::zero(self.num_vars, self.cap);
        out.terms.reserve(self.terms.len() * 2);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let mut d = e.degree();
            while d <= self.cap {
                accumulate(&mut out.terms, e.clone(), c.clone());
                e = e.add(step);
                d += ds;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Series {
            num_vars: self.num_vars,
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn permute(&self, perm: &Permutation) -> Result<Self> {
        check_vars(self.num_vars, perm.len())?;
        let terms = self.terms.iter().map(|(e, c)| (perm.apply(e), c.clone())).collect();
        Ok(Series { num_vars: self.num_vars, cap: self.cap, terms })
    }

    /// The stored terms as a polynomial (forgetting the cap).
    pub fn to_polynomial(&self) -> Polynomial<C> {
        Polynomial::from_terms(self.num_vars, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
            .expect("series keys have the declared length")
    }

    pub(crate) fn from_map(num_vars: usize, cap: u32, terms: TermMap<C>) -> Self {
        debug_assert!(terms.keys().all(|e| e.len() == num_vars && e.degree() <= cap));
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Series { num_vars, cap, terms }
    }
}

impl<C: Coefficient> std::ops::Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        self.checked_add(rhs).expect("series variable counts differ")
    }
}

impl<C: Coefficient> std::ops::Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        self.checked_sub(rhs).expect("series variable counts differ")
    }
}

impl<C: Coefficient> std::ops::Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        self.checked_mul(rhs).expect("series variable counts differ")
    }
}

/// Expands `1 / Π_{(i,j)} (1 - z_i z_j)` through total degree `cap`.
///
/// Pairs are 1-based with `i < j <= num_vars`. The coefficient of `z^λ` is the
/// number of ways to write λ as a sum of the vectors `r_{i,j}` over the pairs.
pub fn geometric_expand<C: Coefficient>(pairs: &[(usize, usize)], num_vars: usize, cap: u32) -> Result<Series<C>> {
    let mut s = Series::one(num_vars, cap);
    for &(i, j) in pairs {
        if i == 0 || i > num_vars {
            return Err(Error::IndexOutOfRange { index: i, bound: num_vars });
        }
        if j == 0 || j > num_vars {
            return Err(Error::IndexOutOfRange { index: j, bound: num_vars });
        }
        if i >= j {
            return Err(Error::InvalidPair { i, j, n: num_vars });
        }
        s = s.mul_geometric(&ExponentVector::pair(num_vars, i, j))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = Series<BigInt>;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn all_pairs(n: usize) -> Vec<(usize, usize)> {
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    }

    #[test]
    fn truncation_contract() {
        let x = S::from_terms(2, 1, [(ev(&[1, 0]), BigInt::from(1)), (ev(&[0, 1]), BigInt::from(1))]).unwrap();
        assert!((&x * &x).is_empty());
        assert_eq!((&x * &x).cap(), 1);
    }

    #[test]
    fn caps_combine_by_min() {
        let a = S::one(2, 3);
        let b = S::one(2, 5);
        assert_eq!((&a + &b).cap(), 3);
        assert_eq!((&a * &b).cap(), 3);
    }

    #[test]
    fn two_variables_geometric() {
        let w: S = geometric_expand(&[(1, 2)], 2, 6).unwrap();
        let expected = S::from_terms(2, 6, (0..=3).map(|k| (ev(&[k, k]), BigInt::from(1)))).unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn empty_product_is_one() {
        let w: S = geometric_expand(&[], 3, 4).unwrap();
        assert_eq!(w, S::one(3, 4));
    }

    #[test]
    fn four_variables_unit_gradation() {
        // [1,1,1,1] = r12+r34 = r13+r24 = r14+r23.
        let w: S = geometric_expand(&all_pairs(4), 4, 4).unwrap();
        assert_eq!(w.coefficient_at(&ev(&[1, 1, 1, 1])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn out_of_range_pair() {
        assert_eq!(
            geometric_expand::<BigInt>(&[(1, 4)], 3, 2).unwrap_err(),
            Error::IndexOutOfRange { index: 4, bound: 3 }
        );
        assert!(geometric_expand::<BigInt>(&[(2, 2)], 3, 2).is_err());
    }

    #[test]
    fn coefficient_beyond_cap_errors() {
        let s = S::one(2, 2);
        assert_eq!(s.coefficient_at(&ev(&[1, 1])).unwrap(), BigInt::from(0));
        assert_eq!(s.coefficient_at(&ev(&[2, 1])).unwrap_err(), Error::OutOfPrecision { degree: 3, cap: 2 });
        assert!(s.coefficient_at(&ev(&[1])).is_err());
    }

    fn pair_list() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..5).prop_flat_map(|n| {
            let pairs = all_pairs(n);
            (Just(n), prop::collection::vec(prop::sample::select(pairs), 0..5))
        })
    }

    proptest! {
        #[test]
        fn geometric_expand_inverts_the_denominator((n, pairs) in pair_list(), cap in 0u32..7) {
            let g: S = geometric_expand(&pairs, n, cap).unwrap();
            let mut denom = Polynomial::<BigInt>::one(n);
            for &(i, j) in &pairs {
                let f = Polynomial::from_terms(n, [
                    (ExponentVector::zeros(n), BigInt::from(1)),
                    (ExponentVector::pair(n, i, j), BigInt::from(-1)),
                ]).unwrap();
                denom = &denom * &f;
            }
            prop_assert_eq!(g.mul_polynomial(&denom).unwrap(), S::one(n, cap));
        }

        #[test]
        fn permutation_is_a_group_action(seed in 0u64..1000) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 4;
            let s = S::from_terms(n, 6, [
                (ev(&[2, 1, 0, 0]), BigInt::from(3)),
                (ev(&[0, 1, 0, 5]), BigInt::from(-2)),
                (ev(&[1, 1, 1, 1]), BigInt::from(7)),
            ]).unwrap();
            let pi = Permutation::random(n, &mut rng);
            let rho = Permutation::random(n, &mut rng);
            prop_assert_eq!(
                s.permute(&pi.compose(&rho)).unwrap(),
                s.permute(&rho).unwrap().permute(&pi).unwrap()
            );
        }
    }
}
