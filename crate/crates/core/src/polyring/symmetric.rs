use itertools::Itertools;

use crate::scalar::Coefficient;

use super::{ExponentVector, Polynomial};

/// The elementary symmetric polynomial σ_k in `v` variables.
///
/// σ_0 = 1 and σ_k = 0 for k < 0 or k > v.
pub fn elementary_symmetric<C: Coefficient>(v: usize, k: i64) -> Polynomial<C> {
    elementary_symmetric_in(v, k, v)
}

/// σ_k of the first `v` variables, inside a ring of `num_vars >= v` variables.
pub fn elementary_symmetric_in<C: Coefficient>(v: usize, k: i64, num_vars: usize) -> Polynomial<C> {
    assert!(v <= num_vars, "symmetric polynomial in {v} variables does not fit {num_vars}");
    if k < 0 {
        return Polynomial::zero(num_vars);
    }
    let terms = (0..v).combinations(k as usize).map(|vars| {
        let mut e = ExponentVector::zeros(num_vars);
        for x in vars {
            e.bump(x, 1);
        }
        (e, C::one())
    });
    Polynomial::from_terms(num_vars, terms).expect("lengths match")
}

/// The complete homogeneous symmetric polynomial h_k in `v` variables: the
/// sum of all monomials of degree k.
///
/// h_0 = 1 and h_k = 0 for k < 0.
pub fn complete_homogeneous<C: Coefficient>(v: usize, k: i64) -> Polynomial<C> {
    complete_homogeneous_in(v, k, v)
}

/// h_k of the first `v` variables, inside a ring of `num_vars >= v` variables.
pub fn complete_homogeneous_in<C: Coefficient>(v: usize, k: i64, num_vars: usize) -> Polynomial<C> {
    assert!(v <= num_vars, "symmetric polynomial in {v} variables does not fit {num_vars}");
    if k < 0 {
        return Polynomial::zero(num_vars);
    }
    if k == 0 {
        return Polynomial::one(num_vars);
    }
    let terms = (0..v).combinations_with_replacement(k as usize).map(|vars| {
        let mut e = ExponentVector::zeros(num_vars);
        for x in vars {
            e.bump(x, 1);
        }
        (e, C::one())
    });
    Polynomial::from_terms(num_vars, terms).expect("lengths match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Polynomial<BigInt>;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_cases_print_as_expected() {
        assert_eq!(elementary_symmetric::<BigInt>(3, 2).to_string(), "z1*z2 + z1*z3 + z2*z3");
        assert_eq!(complete_homogeneous::<BigInt>(2, 2).to_string(), "z1^2 + z1*z2 + z2^2");
    }

    #[test]
    fn guards() {
        assert_eq!(elementary_symmetric::<BigInt>(3, 0), P::one(3));
        assert_eq!(complete_homogeneous::<BigInt>(3, 0), P::one(3));
        assert!(elementary_symmetric::<BigInt>(3, -1).is_zero());
        assert!(complete_homogeneous::<BigInt>(3, -2).is_zero());
        assert!(elementary_symmetric::<BigInt>(3, 4).is_zero());
        assert_eq!(elementary_symmetric::<BigInt>(0, 0), P::one(0));
    }

    #[test]
    fn term_counts() {
        for v in 1..=5u64 {
            for k in 0..=5u64 {
                let e: P = elementary_symmetric(v as usize, k as i64);
                let h: P = complete_homogeneous(v as usize, k as i64);
                let expected_e = if k <= v { binomial(v, k) } else { 0 };
                assert_eq!(e.len() as u64, expected_e);
                assert_eq!(h.len() as u64, binomial(v + k - 1, k));
                assert!(e.terms().iter().chain(h.terms().iter()).all(|(_, c)| **c == BigInt::from(1)));
            }
        }
    }

    #[test]
    fn newton_identity() {
        for v in 1..=5 {
            for s in 1..=6i64 {
                let mut acc = P::zero(v);
                for r in 0..=s {
                    let term = &elementary_symmetric::<BigInt>(v, r) * &complete_homogeneous(v, s - r);
                    acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                assert!(acc.is_zero(), "v={v} s={s}");
            }
        }
    }

    #[test]
    fn embedding_uses_leading_variables() {
        let e: P = elementary_symmetric_in(2, 1, 4);
        assert_eq!(e.to_string(), "z1 + z2");
        assert_eq!(e.num_vars(), 4);
    }
}
