//! Riemann–Roch on the plane blown up at four general points, checked
//! against the five-variable Hilbert series.
//!
//! A divisor `Σ a_ij E_ij` over the ten lines `E_ij` is rewritten in the
//! Picard basis `E01, E02, E03, E04, E12`, mapped to a gradation of `G(2,5)`,
//! and its Euler characteristic compared with the series coefficient there.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_unique;
use crate::polyring::{ExponentVector, Series};
use crate::scalar::Field;
use crate::Rational;

/// The ten index pairs `0 <= i < j <= 4` in lexicographic order.
pub const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Largest total degree among the family's gradations.
pub const FAMILY_DEGREE: u32 = 24;

/// Number of monomials of degree at most two in five variables.
pub const FORM_TERMS: usize = 21;

/// `Σ a_ij E_ij`, coefficients in [`PAIRS`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor10(pub [i64; 10]);

impl Divisor10 {
    /// `-2K = Σ E_ij`.
    pub fn minus_two_k() -> Self {
        Divisor10([1; 10])
    }

    pub fn unit(k: usize) -> Self {
        let mut a = [0; 10];
        a[k] = 1;
        Divisor10(a)
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Option<i64> {
        PAIRS.iter().position(|&p| p == (i.min(j), i.max(j))).map(|k| self.0[k])
    }

    pub fn add(&self, other: &Self) -> Self {
        Divisor10(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn scale(&self, s: i64) -> Self {
        Divisor10(self.0.map(|a| a * s))
    }
}

/// Coefficients `(a01, a02, a03, a04, a12)` in the Picard basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor5(pub [i64; 5]);

impl Divisor5 {
    pub fn add(&self, other: &Self) -> Self {
        Divisor5(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }
}

pub fn base_change(d: &Divisor10) -> Divisor5 {
    let [a01, a02, a03, a04, a12, a13, a14, a23, a24, a34] = d.0;
    Divisor5([
        a01 + a23 + a24 + a34,
        a02 + a13 + a14 + a34,
        a03 - a13 - a23 - a34,
        a04 - a14 - a24 - a34,
        a12 + a13 + a14 + a23 + a24 + a34,
    ])
}

/// The torus weight of the sections of `O(d)`, possibly with negative
/// entries.
pub fn kapranov_weights(d: &Divisor5) -> [i64; 5] {
    let [a01, a02, a03, a04, a12] = d.0;
    [a01 + a02 + a03 + a04, a01, a02, a03 + a12, a04 + a12]
}

/// [`kapranov_weights`] as a monomial exponent; negative weights have no
/// monomial and are rejected.
pub fn kapranov_grading(d: &Divisor5) -> Result<ExponentVector> {
    kapranov_weights(d)
        .iter()
        .map(|&w| u32::try_from(w).map_err(|_| Error::InvalidArgument(format!("negative weight {w} in {:?}", d.0))))
        .collect::<Result<Vec<u32>>>()
        .map(ExponentVector::new)
}

/// `χ(O(d)) = ½(D² - K·D) + 1` in the Picard basis.
pub fn euler_characteristic(d: &Divisor5) -> Result<BigInt> {
    let [a01, a02, a03, a04, a12] = d.0.map(|a| Rational::from_integer(BigInt::from(a)));
    let two = Rational::from_integer(BigInt::from(2));
    let square =
        -(a01.clone() * &a01) - a02.clone() * &a02 - a03.clone() * &a03 - a04.clone() * &a04 - a12.clone() * &a12
            + two.clone() * &a12 * (a01.clone() + &a02);
    let canonical = a01 + a02 + a03 + a04 + a12;
    let chi = (square + canonical) / two + Rational::one();
    if !chi.is_integer() {
        return Err(Error::Internal(format!("Euler characteristic {chi} of {:?} is not an integer", d.0)));
    }
    Ok(chi.to_integer())
}

/// `b_i b_j` for `i <= j` over `b = [1, a01, a02, a03, a04, a12]`.
pub fn monomial_values(d: &Divisor5) -> Vec<i64> {
    let b: Vec<i64> = std::iter::once(1).chain(d.0).collect();
    (0..b.len()).flat_map(|i| (i..b.len()).map(move |j| (i, j))).map(|(i, j)| b[i] * b[j]).collect()
}

/// `-2K + s1 E_k + s2 E_l` for `k <= l` and signs `s1, s2`, duplicates
/// included, 220 entries.
pub fn divisor_family() -> Vec<Divisor10> {
    let mut out = Vec::with_capacity(220);
    for k in 0..10 {
        for l in k..10 {
            for s1 in [1, -1] {
                for s2 in [1, -1] {
                    out.push(
                        Divisor10::minus_two_k().add(&Divisor10::unit(k).scale(s1)).add(&Divisor10::unit(l).scale(s2)),
                    );
                }
            }
        }
    }
    out
}

/// A quadratic polynomial in `(a01, ..., a12)` with coefficients in the
/// [`monomial_values`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<F> {
    pub coefficients: Vec<F>,
}

impl<F: Field> QuadraticForm<F> {
    pub fn evaluate(&self, d: &Divisor5) -> F {
        self.coefficients.iter().zip(monomial_values(d)).fold(F::zero(), |acc, (c, m)| acc + c.clone() * F::from_int(m))
    }
}

/// The Riemann–Roch quadratic `1 + ½Σa - ½Σa² + a12(a01 + a02)`.
pub fn riemann_roch_form() -> QuadraticForm<Rational> {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut coefficients = vec![Rational::zero(); FORM_TERMS];
    let mut k = 0;
    for i in 0..6 {
        for j in i..6 {
            coefficients[k] = match (i, j) {
                (0, 0) => Rational::one(),
                (0, _) => half.clone(),
                (1, 5) | (2, 5) => Rational::one(),
                _ if i == j => -half.clone(),
                _ => Rational::zero(),
            };
            k += 1;
        }
    }
    QuadraticForm { coefficients }
}

fn check_w5(w5: &Series<BigInt>) -> Result<()> {
    if w5.num_vars() != 5 {
        return Err(Error::Dimension { expected: 5, found: w5.num_vars() });
    }
    if w5.cap() < FAMILY_DEGREE {
        return Err(Error::OutOfPrecision { degree: FAMILY_DEGREE, cap: w5.cap() });
    }
    Ok(())
}

fn family_grading(d: &Divisor5) -> Result<ExponentVector> {
    let g = kapranov_grading(d)?;
    if g.degree() > FAMILY_DEGREE {
        return Err(Error::Internal(format!("family gradation {g} exceeds degree {FAMILY_DEGREE}")));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoEntry {
    pub divisor10: [i64; 10],
    pub divisor5: [i64; 5],
    pub grading: Vec<u32>,
    #[serde(with = "crate::report::bigint_number")]
    pub chi: BigInt,
    #[serde(with = "crate::report::bigint_number")]
    pub series_coeff: BigInt,
    pub status: crate::report::Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelPezzoReport {
    pub cap: u32,
    pub total: usize,
    pub passed: usize,
    pub entries: Vec<DelPezzoEntry>,
}

impl DelPezzoReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Compares `χ(O(D))` with the coefficient of `W_5` at the gradation of `D`
/// for every member of [`divisor_family`].
pub fn verify_against_series(w5: &Series<BigInt>) -> Result<DelPezzoReport> {
    check_w5(w5)?;
    let entries = divisor_family()
        .par_iter()
        .map(|d| {
            let d5 = base_change(d);
            let grading = family_grading(&d5)?;
            let chi = euler_characteristic(&d5)?;
            let series_coeff = w5.coefficient_at(&grading)?;
            let status = crate::report::Status::from_bool(chi == series_coeff);
            Ok(DelPezzoEntry { divisor10: d.0, divisor5: d5.0, grading: grading.into_vec(), chi, series_coeff, status })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = entries.iter().filter(|e| e.status == crate::report::Status::Pass).count();
    Ok(DelPezzoReport { cap: w5.cap(), total: entries.len(), passed, entries })
}

/// Solves for the quadratic form whose values on the family are the series
/// coefficients at the corresponding gradations.
pub fn fit_quadratic_form(w5: &Series<BigInt>) -> Result<QuadraticForm<Rational>> {
    check_w5(w5)?;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for d in divisor_family() {
        let d5 = base_change(&d);
        rows.push(monomial_values(&d5).into_iter().map(|m| Rational::from_integer(BigInt::from(m))).collect());
        rhs.push(Rational::from_integer(w5.coefficient_at(&family_grading(&d5)?)?));
    }
    let solution = solve_unique(&rows, &rhs)?;
    Ok(QuadraticForm { coefficients: solution.solution })
}
