use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{LeafPair, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    /// `x_ij x_kl - x_ik x_jl`, when `w_ij` meets `w_kl`.
    W1,
    /// `x_il x_jk - x_ik x_jl`, when `w_il` meets `w_jk`.
    W2,
}

/// A binomial generator of the toric ideal of the tree, with the exponent of
/// `t` that the third Plücker monomial carries in the degeneration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRelation {
    pub quadruple: [usize; 4],
    pub kind: RelationKind,
    pub t_exponent: usize,
}

impl fmt::Display for IdealRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.quadruple;
        match self.kind {
            RelationKind::W1 => write!(f, "W1({i},{j},{k},{l}): x{i}{j}*x{k}{l} - x{i}{k}*x{j}{l}")?,
            RelationKind::W2 => write!(f, "W2({i},{j},{k},{l}): x{i}{l}*x{j}{k} - x{i}{k}*x{j}{l}")?,
        }
        write!(f, "  [t^{}]", self.t_exponent)
    }
}

impl Tree {
    /// One relation per quadruple `i < j < k < l`, in lexicographic order.
    /// Empty for fewer than four leaves.
    pub fn ideal_relations(&self) -> Result<Vec<IdealRelation>> {
        let n = self.n_leaves();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    for l in k + 1..=n {
                        out.push(self.relation(i, j, k, l)?);
                    }
                }
            }
        }
        Ok(out)
    }

    fn relation(&self, i: usize, j: usize, k: usize, l: usize) -> Result<IdealRelation> {
        let d = |a, b| self.dist(a, b) as i64;
        let first = self.meets(LeafPair { i, j }, LeafPair { i: k, j: l });
        let second = self.meets(LeafPair { i, j: l }, LeafPair { i: j, j: k });
        let (kind, t) = match (first, second) {
            (true, false) => (RelationKind::W1, d(i, k) + d(j, l) - d(i, l) - d(j, k)),
            (false, true) => (RelationKind::W2, d(i, l) + d(j, k) - d(i, j) - d(k, l)),
            _ => return Err(Error::Internal(format!("intersection trichotomy fails at ({i},{j},{k},{l})"))),
        };
        if t <= 0 {
            return Err(Error::Internal(format!("non-positive t exponent {t} at ({i},{j},{k},{l})")));
        }
        Ok(IdealRelation { quadruple: [i, j, k, l], kind, t_exponent: t as usize })
    }
}
