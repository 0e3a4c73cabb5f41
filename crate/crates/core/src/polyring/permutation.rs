use crate::error::{Error, Result};

use super::ExponentVector;

/// A permutation of the variables, sending `z_k` to `z_{π(k)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `images[k-1] = π(k)` with 1-based values.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::InvalidPermutation { len: n, detail: format!("image {img} out of range") });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation { len: n, detail: format!("image {img} repeated") });
            }
            map.push(img - 1);
        }
        Ok(Permutation(map))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based image of the 0-based index `k`.
    pub fn image(&self, k: usize) -> usize {
        self.0[k]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn apply(&self, e: &ExponentVector) -> ExponentVector {
        let mut out = vec![0; e.len()];
        for (k, &x) in e.as_slice().iter().enumerate() {
            out[self.0[k]] = x;
        }
        ExponentVector::new(out)
    }

    /// All `n!` permutations, in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(Permutation).collect()
    }

    /// A uniformly random permutation drawn from `rng`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1, 3]).is_err());
        assert!(Permutation::from_one_based(&[1, 4, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn swap_moves_exponents() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(swap.apply(&ExponentVector::new(vec![2, 1])), ExponentVector::new(vec![1, 2]));
    }

    #[test]
    fn counts_all() {
        assert_eq!(Permutation::all(5).len(), 120);
    }
}
