use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponents of a monomial `z^λ = z1^λ1 … zn^λn`.
///
/// `Ord` is the canonical term order: ascending total degree, and within one
/// degree the lexicographic order in which `z1^2` precedes `z1*z2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The exponent of `z_i z_j` for a 1-based pair `i < j`.
    ///
    /// Panics if either index exceeds `n`.
    pub fn pair(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] += 1;
        v[j - 1] += 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, value: u32) {
        self.0[var] = value;
    }

    pub fn bump(&mut self, var: usize, by: u32) {
        self.0[var] += by;
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(ExponentVector)
    }

    pub(crate) fn extended(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(n, 0);
        ExponentVector(v)
    }

    /// Every exponent vector of length `n` with total degree at most `cap`,
    /// in canonical order.
    pub fn all_up_to(n: usize, cap: u32) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        for d in 0..=cap {
            let mut cur = vec![0; n];
            compositions(n, d, 0, &mut cur, &mut out);
        }
        out
    }
}

// Emits compositions of `remaining` into the slots `pos..`, first slot largest
// first, which is the canonical in-degree order.
fn compositions(n: usize, remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if n == 0 {
        if remaining == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(ExponentVector(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for v in (0..=remaining).rev() {
        cur[pos] = v;
        compositions(n, remaining - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
