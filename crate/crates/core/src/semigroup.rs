//! The semigroup `S(T)` of edge labellings generated by leaf paths.
//!
//! Every element has exactly one decomposition into paths in which no two
//! paths intersect in an unordered way; [`decompose`] constructs it by
//! peeling cherries. [`count_gradation`] counts the same objects on the
//! caterpillar without touching any tree: non-embracing multisets of pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::ExponentVector;
use crate::trees::{LeafPair, Tree};

/// A multiset of leaf paths `Σ a_ij w_ij`, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathMultiset(BTreeMap<LeafPair, u64>);

impl PathMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, pair: LeafPair, mult: u64) {
        if mult > 0 {
            *self.0.entry(pair).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, pair: LeafPair) -> u64 {
        self.0.get(&pair).copied().unwrap_or(0)
    }

    /// Pairs with positive multiplicity in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (LeafPair, u64)> + '_ {
        self.0.iter().map(|(&p, &m)| (p, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of paths counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// The edge labelling `Σ a_ij w_ij` on `tree`.
    pub fn sum_on(&self, tree: &Tree) -> Result<Vec<i64>> {
        let mut x = vec![0i64; tree.num_edges()];
        for (p, m) in self.iter() {
            let w = tree.path(p.i, p.j)?;
            for (xe, &we) in x.iter_mut().zip(&w.indicator) {
                *xe += m as i64 * we as i64;
            }
        }
        Ok(x)
    }

    /// `Σ a_ij r_ij ∈ Z^n`.
    pub fn gradation(&self, n: usize) -> ExponentVector {
        let mut e = ExponentVector::zeros(n);
        for (p, m) in self.iter() {
            e.bump(p.i - 1, m as u32);
            e.bump(p.j - 1, m as u32);
        }
        e
    }

    /// True when no two distinct pairs in the support intersect in an
    /// unordered way on `tree`.
    pub fn is_canonical(&self, tree: &Tree) -> bool {
        let support: Vec<LeafPair> = self.0.keys().copied().collect();
        support.iter().enumerate().all(|(a, &p)| support[a + 1..].iter().all(|&q| !tree.is_unordered(p, q)))
    }

    pub fn to_json(&self) -> PathMultisetJson {
        PathMultisetJson { pairs: self.iter().map(|(p, m)| PairMultJson { i: p.i, j: p.j, mult: m }).collect() }
    }

    pub fn from_json(json: &PathMultisetJson) -> Result<Self> {
        let mut out = Self::new();
        for t in &json.pairs {
            out.add(LeafPair::new(t.i, t.j)?, t.mult);
        }
        Ok(out)
    }
}

impl FromIterator<(LeafPair, u64)> for PathMultiset {
    fn from_iter<I: IntoIterator<Item = (LeafPair, u64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (p, m) in iter {
            out.add(p, m);
        }
        out
    }
}

impl fmt::Display for PathMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (p, m)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{m}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMultJson {
    pub i: usize,
    pub j: usize,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathMultisetJson {
    pub pairs: Vec<PairMultJson>,
}

fn check_shape(tree: &Tree, x: &[i64]) -> Result<()> {
    if x.len() != tree.num_edges() {
        return Err(Error::Dimension { expected: tree.num_edges(), found: x.len() });
    }
    Ok(())
}

/// The unique decomposition of `x` into leaf paths, no two of which
/// intersect in an unordered way.
///
/// Fails with [`Error::NotInSemigroup`] naming the violated constraint when
/// `x` is not a non-negative combination of paths.
pub fn decompose(tree: &Tree, x: &[i64]) -> Result<PathMultiset> {
    check_shape(tree, x)?;
    if let Some(e) = x.iter().position(|&v| v < 0) {
        return Err(Error::NotInSemigroup(format!("edge e{} carries negative value {}", e + 1, x[e])));
    }
    let names: Vec<usize> = (1..=tree.num_edges()).collect();
    let result = peel(tree, x, &names)?;
    if result.sum_on(tree)? != x {
        return Err(Error::Internal("decomposition does not sum to the input".into()));
    }
    Ok(result)
}

/// Non-negative half of `a + b - c`, the number of paths through the two
/// edges `a` and `b` of a vertex whose third edge carries `c`.
fn through_count(a: i64, b: i64, c: i64, names: (usize, usize, usize)) -> Result<i64> {
    let s = a + b - c;
    let (na, nb, nc) = names;
    if s % 2 != 0 {
        return Err(Error::NotInSemigroup(format!("e{na} + e{nb} - e{nc} = {s} is odd")));
    }
    if s < 0 {
        return Err(Error::NotInSemigroup(format!("e{na} + e{nb} - e{nc} = {s} is negative")));
    }
    Ok(s / 2)
}

fn peel(tree: &Tree, x: &[i64], names: &[usize]) -> Result<PathMultiset> {
    let n = tree.n_leaves();
    let mut out = PathMultiset::new();
    if n == 2 {
        out.add(LeafPair { i: 1, j: 2 }, x[0] as u64);
        return Ok(out);
    }
    if n == 3 {
        let e: Vec<usize> = (1..=3).map(|l| tree.leaf_edge(l)).collect();
        let v: Vec<i64> = e.iter().map(|&k| x[k]).collect();
        let nm = |a: usize, b: usize, c: usize| (names[e[a]], names[e[b]], names[e[c]]);
        out.add(LeafPair { i: 1, j: 2 }, through_count(v[0], v[1], v[2], nm(0, 1, 2))? as u64);
        out.add(LeafPair { i: 1, j: 3 }, through_count(v[0], v[2], v[1], nm(0, 2, 1))? as u64);
        out.add(LeafPair { i: 2, j: 3 }, through_count(v[1], v[2], v[0], nm(1, 2, 0))? as u64);
        return Ok(out);
    }

    // Peel the highest-numbered consecutive cherry (l, l+1); on a
    // caterpillar that is (n-1, n) and the smaller tree is the
    // caterpillar on n-1 leaves with the same edge numbering.
    let l = *tree.consecutive_cherries().last().expect("trees with n >= 4 have a consecutive cherry");
    let (smaller, edge_map) = tree.prune_cherry(l)?;
    let e1 = tree.leaf_edge(l);
    let e2 = tree.leaf_edge(l + 1);
    let hub_leaf_edge = smaller.leaf_edge(l);
    let ev = edge_map.iter().position(|&m| m == Some(hub_leaf_edge)).expect("hub edge survives pruning");

    let k = through_count(x[e1], x[e2], x[ev], (names[e1], names[e2], names[ev]))?;
    let y1 = x[e1] - k;
    let y2 = x[e2] - k;
    if y1 < 0 || y2 < 0 {
        let (bad, name) = if y1 < 0 { (y1, names[e1]) } else { (y2, names[e2]) };
        return Err(Error::NotInSemigroup(format!("{bad} paths would leave through e{name}")));
    }

    let mut sub_x = vec![0; smaller.num_edges()];
    let mut sub_names = vec![0; smaller.num_edges()];
    for (e, m) in edge_map.iter().enumerate() {
        if let Some(m) = *m {
            sub_x[m] = x[e];
            sub_names[m] = names[e];
        }
    }
    let sub = peel(&smaller, &sub_x, &sub_names)?;

    let lift = |a: usize| if a > l { a + 1 } else { a };
    let mut remaining_first = y1 as u64;
    for (p, m) in sub.iter() {
        if !p.contains(l) {
            out.add(LeafPair { i: lift(p.i), j: lift(p.j) }, m);
            continue;
        }
        // Paths ending at the hub arrive in lexicographic order of their
        // other endpoint; the first y1 continue to l, the rest to l+1.
        let other = lift(if p.i == l { p.j } else { p.i });
        let to_first = m.min(remaining_first);
        remaining_first -= to_first;
        out.add(LeafPair::sorted(other, l), to_first);
        out.add(LeafPair::sorted(other, l + 1), m - to_first);
    }
    if remaining_first != 0 {
        return Err(Error::NotInSemigroup(format!(
            "edge e{} is not matched by the paths through its vertex",
            names[ev]
        )));
    }
    out.add(LeafPair { i: l, j: l + 1 }, k as u64);
    Ok(out)
}

/// Whether `x` lies in `S(tree)`. Errors only on a wrong-length input.
pub fn is_member(tree: &Tree, x: &[i64]) -> Result<bool> {
    check_shape(tree, x)?;
    match decompose(tree, x) {
        Ok(_) => Ok(true),
        Err(Error::NotInSemigroup(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The values on the leaf edges, in leaf order: the torus weight of `x`.
pub fn gradation(tree: &Tree, x: &[i64]) -> Result<ExponentVector> {
    check_shape(tree, x)?;
    (1..=tree.n_leaves())
        .map(|l| {
            let v = x[tree.leaf_edge(l)];
            u32::try_from(v).map_err(|_| Error::NotInSemigroup(format!("leaf {l} carries negative value {v}")))
        })
        .collect::<Result<Vec<u32>>>()
        .map(ExponentVector::new)
}

/// The number of ways to write λ as a sum of vectors `r_ij` in which no
/// term embraces another. This is the dimension of the λ-graded piece.
pub fn count_gradation(n: usize, lambda: &ExponentVector) -> BigInt {
    BigInt::from(count_decompositions(n, lambda, true))
}

/// Counts multisets of pairs summing to λ; with `non_embracing` the support
/// must contain no pair embracing another.
pub(crate) fn count_decompositions(n: usize, lambda: &ExponentVector, non_embracing: bool) -> u64 {
    if lambda.len() != n || lambda.degree() % 2 == 1 {
        return 0;
    }
    let pairs = LeafPair::all(n);
    let mut residual: Vec<u32> = lambda.as_slice().to_vec();
    let mut chosen = Vec::new();
    let mut count = 0u64;
    backtrack(&pairs, 0, &mut residual, &mut chosen, non_embracing, &mut |_| count += 1);
    count
}

type Visitor<'a> = dyn FnMut(&[(LeafPair, u32)]) + 'a;

// Visits every multiset of pairs (in lexicographic pair order) that exhausts
// `residual`. Leaving the block of pairs starting at leaf i requires the
// residual at i to be zero, since no later pair touches it.
fn backtrack(
    pairs: &[LeafPair],
    at: usize,
    residual: &mut [u32],
    chosen: &mut Vec<(LeafPair, u32)>,
    non_embracing: bool,
    visit: &mut Visitor<'_>,
) {
    if at == pairs.len() {
        if residual.iter().all(|&r| r == 0) {
            visit(chosen);
        }
        return;
    }
    let p = pairs[at];
    if at > 0 && pairs[at - 1].i != p.i && residual[pairs[at - 1].i - 1] != 0 {
        return;
    }
    let max = residual[p.i - 1].min(residual[p.j - 1]);
    let blocked = non_embracing && max > 0 && chosen.iter().any(|(q, _)| q.embraces(&p) || p.embraces(q));
    let top = if blocked { 0 } else { max };
    for m in (0..=top).rev() {
        residual[p.i - 1] -= m;
        residual[p.j - 1] -= m;
        if m > 0 {
            chosen.push((p, m));
        }
        backtrack(pairs, at + 1, residual, chosen, non_embracing, visit);
        if m > 0 {
            chosen.pop();
        }
        residual[p.i - 1] += m;
        residual[p.j - 1] += m;
    }
}

/// Every multiset of pairs summing to λ, without the embracing filter.
pub fn all_decompositions(n: usize, lambda: &ExponentVector) -> Vec<PathMultiset> {
    if lambda.len() != n || lambda.degree() % 2 == 1 {
        return Vec::new();
    }
    let pairs = LeafPair::all(n);
    let mut residual: Vec<u32> = lambda.as_slice().to_vec();
    let mut out = Vec::new();
    backtrack(&pairs, 0, &mut residual, &mut Vec::new(), false, &mut |c| {
        out.push(c.iter().map(|&(p, m)| (p, m as u64)).collect())
    });
    out
}

/// An element of `S(T)` with its canonical decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub values: Vec<i64>,
    pub decomposition: PathMultiset,
}

/// Largest total degree [`enumerate_gradation_elements`] accepts.
pub const ENUMERATION_DEGREE_LIMIT: u32 = 24;

/// All elements of `S(tree)` lying in gradation λ, sorted by their values.
pub fn enumerate_gradation_elements(tree: &Tree, lambda: &ExponentVector) -> Result<Vec<GradedElement>> {
    let n = tree.n_leaves();
    if lambda.len() != n {
        return Err(Error::Dimension { expected: n, found: lambda.len() });
    }
    if lambda.degree() > ENUMERATION_DEGREE_LIMIT {
        return Err(Error::Capacity(format!(
            "gradation of total degree {} exceeds the enumeration limit {ENUMERATION_DEGREE_LIMIT}",
            lambda.degree()
        )));
    }
    let mut values = BTreeSet::new();
    for m in all_decompositions(n, lambda) {
        values.insert(m.sum_on(tree)?);
    }
    values.into_iter().map(|v| Ok(GradedElement { decomposition: decompose(tree, &v)?, values: v })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(i: usize, j: usize) -> LeafPair {
        LeafPair::new(i, j).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn decomposes_the_two_path_example() {
        let t = Tree::caterpillar(4).unwrap();
        let m = decompose(&t, &[1, 1, 2, 1, 1]).unwrap();
        assert_eq!(m, [(pair(1, 3), 1), (pair(2, 4), 1)].into_iter().collect());
        assert_eq!(m.to_string(), "{(1,3):1, (2,4):1}");
    }

    #[test]
    fn three_leaf_linear_system() {
        let t = Tree::caterpillar(3).unwrap();
        let m = decompose(&t, &[2, 2, 2]).unwrap();
        assert_eq!(m, [(pair(1, 2), 1), (pair(1, 3), 1), (pair(2, 3), 1)].into_iter().collect());
        assert!(matches!(decompose(&t, &[1, 0, 0]), Err(Error::NotInSemigroup(_))));
        assert!(decompose(&t, &[0, 0, 0]).unwrap().is_empty());
    }

    #[test]
    fn membership() {
        let t = Tree::caterpillar(4).unwrap();
        assert!(is_member(&t, &[1, 1, 2, 1, 1]).unwrap());
        assert!(is_member(&t, &[0; 5]).unwrap());
        assert!(!is_member(&t, &[1, 0, 0, 0, 0]).unwrap());
        assert!(!is_member(&t, &[-1, 1, 0, 0, 0]).unwrap());
        assert!(is_member(&t, &[1, 1]).is_err());
    }

    #[test]
    fn failure_names_the_constraint() {
        let t = Tree::caterpillar(5).unwrap();
        let Err(Error::NotInSemigroup(msg)) = decompose(&t, &[1, 0, 1, 0, 0, 0, 0]) else { panic!() };
        assert!(msg.contains('e'), "{msg}");
    }

    #[test]
    fn gradation_is_the_leaf_restriction() {
        let t = Tree::caterpillar(4).unwrap();
        assert_eq!(gradation(&t, &[1, 1, 2, 1, 1]).unwrap(), ev(&[1, 1, 1, 1]));
        assert_eq!(gradation(&t, &[0; 5]).unwrap(), ev(&[0; 4]));
        let w13: Vec<i64> = t.path(1, 3).unwrap().indicator.iter().map(|&b| b as i64).collect();
        assert_eq!(gradation(&t, &w13).unwrap(), ev(&[1, 0, 1, 0]));
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(count_gradation(4, &ev(&[1, 1, 1, 1])), BigInt::from(2));
        assert_eq!(count_gradation(4, &ev(&[1, 1, 1, 0])), BigInt::from(0));
        assert_eq!(count_gradation(4, &ev(&[0, 0, 0, 0])), BigInt::from(1));
        assert_eq!(count_decompositions(4, &ev(&[1, 1, 1, 1]), false), 3);
        assert_eq!(all_decompositions(4, &ev(&[1, 1, 1, 1])).len(), 3);
    }

    #[test]
    fn enumerates_the_unit_gradation() {
        let t = Tree::caterpillar(4).unwrap();
        let els = enumerate_gradation_elements(&t, &ev(&[1, 1, 1, 1])).unwrap();
        let values: Vec<_> = els.iter().map(|e| e.values.clone()).collect();
        assert_eq!(values, vec![vec![1, 1, 0, 1, 1], vec![1, 1, 2, 1, 1]]);
        assert_eq!(els[0].decomposition, [(pair(1, 2), 1), (pair(3, 4), 1)].into_iter().collect());
        assert_eq!(els[1].decomposition, [(pair(1, 3), 1), (pair(2, 4), 1)].into_iter().collect());

        let zero = enumerate_gradation_elements(&t, &ev(&[0; 4])).unwrap();
        assert_eq!(zero, vec![GradedElement { values: vec![0; 5], decomposition: PathMultiset::new() }]);
        assert!(enumerate_gradation_elements(&t, &ev(&[7, 7, 7, 7])).is_err());
    }

    #[test]
    fn single_path_gradation() {
        let t = Tree::caterpillar(6).unwrap();
        for p in LeafPair::all(6) {
            let els = enumerate_gradation_elements(&t, &ExponentVector::pair(6, p.i, p.j)).unwrap();
            let w: Vec<i64> = t.path(p.i, p.j).unwrap().indicator.iter().map(|&b| b as i64).collect();
            assert_eq!(els.len(), 1);
            assert_eq!(els[0].values, w);
        }
    }

    #[test]
    fn json_roundtrip() {
        let m: PathMultiset = [(pair(1, 3), 2), (pair(2, 4), 1)].into_iter().collect();
        let json = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(json, r#"{"pairs":[{"i":1,"j":3,"mult":2},{"i":2,"j":4,"mult":1}]}"#);
        assert_eq!(PathMultiset::from_json(&serde_json::from_str(&json).unwrap()).unwrap(), m);
    }
}
