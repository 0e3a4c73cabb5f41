//! Planar 3-valent trees with circularly numbered leaves.
//!
//! A [`Tree`] stores, for every vertex, its neighbours in anticlockwise
//! order. Leaves are numbered `1..=n` and edges `0..2n-3` by a depth-first
//! walk from leaf 1 that visits neighbours in that cyclic order, so the leaf
//! numbering is the circular order and edges are numbered in preorder. On a
//! caterpillar this reproduces the numbering
//! `e1=(l1,v1), e2=(l2,v1), e_{2k-1}=(v_{k-1},v_k), e_{2k}=(l_{k+1},v_k), e_{2n-3}=(l_n,v_{n-2})`
//! (1-based edge names; index `e-1` in the vectors).

mod parse;
mod relations;

pub use parse::{parse_tree, random_tree_spec};
pub use relations::{IdealRelation, RelationKind};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of distinct leaves, stored with `i < j` (1-based).
///
/// The derived order is the lexicographic order on pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeafPair {
    pub i: usize,
    pub j: usize,
}

impl LeafPair {
    /// Requires `1 <= i < j`.
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::InvalidPair { i, j, n: 0 });
        }
        Ok(LeafPair { i, j })
    }

    /// The pair `{a, b}` with its endpoints sorted; `a != b`.
    pub fn sorted(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        LeafPair { i: a.min(b), j: a.max(b) }
    }

    pub fn contains(&self, leaf: usize) -> bool {
        self.i == leaf || self.j == leaf
    }

    pub fn shares_endpoint(&self, other: &LeafPair) -> bool {
        self.contains(other.i) || self.contains(other.j)
    }

    /// `self` embraces `other` when `i < i' < j' < j`.
    pub fn embraces(&self, other: &LeafPair) -> bool {
        self.i < other.i && other.j < self.j
    }

    /// All pairs of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<LeafPair> {
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| LeafPair { i, j })).collect()
    }
}

impl fmt::Display for LeafPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Edge-incidence bit set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct EdgeSet(Vec<u64>);

impl EdgeSet {
    fn new(num_edges: usize) -> Self {
        EdgeSet(vec![0; num_edges.div_ceil(64).max(1)])
    }

    fn insert(&mut self, e: usize) {
        self.0[e / 64] |= 1 << (e % 64);
    }

    pub(crate) fn contains(&self, e: usize) -> bool {
        self.0[e / 64] >> (e % 64) & 1 == 1
    }

    pub(crate) fn intersects(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// The 0/1 edge indicator of the path between two leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathVector {
    pub pair: LeafPair,
    pub indicator: Vec<u8>,
}

impl PathVector {
    /// The number of edges on the path.
    pub fn length(&self) -> usize {
        self.indicator.iter().map(|&x| x as usize).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionKind {
    Disjoint,
    Ordered,
    Unordered,
}

/// How two leaf paths meet.
///
/// `dual` is present exactly when the paths share an edge but no endpoint; it
/// is the other division of the four leaves into two intersecting paths, and
/// `w_p + w_q = w_{dual.0} + w_{dual.1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub kind: IntersectionKind,
    pub dual: Option<(LeafPair, LeafPair)>,
}

/// A planar-embedded tree whose internal vertices all have degree three.
#[derive(Clone, Debug)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
    leaf_vertex: Vec<usize>,
    leaf_of_vertex: Vec<Option<usize>>,
    /// Edge index -> (end nearer leaf 1, far end).
    edge_ends: Vec<(usize, usize)>,
    /// Vertex -> index of the edge towards leaf 1 (`None` at leaf 1).
    parent_edge: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    paths: Vec<EdgeSet>,
}

impl Tree {
    /// Builds a tree from neighbour lists in anticlockwise order.
    ///
    /// `first_leaf` is the vertex numbered leaf 1. Every vertex must have
    /// degree one or three (two leaves joined by one edge is the only other
    /// shape accepted), and the graph must be a connected tree.
    pub fn from_cyclic_adjacency(adj: Vec<Vec<usize>>, first_leaf: usize) -> Result<Self> {
        let nv = adj.len();
        if nv < 2 {
            return Err(Error::InvalidTree("a tree needs at least two leaves".into()));
        }
        if first_leaf >= nv {
            return Err(Error::InvalidTree(format!("first leaf {first_leaf} is not a vertex")));
        }
        let mut degree_sum = 0;
        for (v, nbrs) in adj.iter().enumerate() {
            degree_sum += nbrs.len();
            if nbrs.iter().any(|&w| w >= nv || w == v) {
                return Err(Error::InvalidTree(format!("vertex {v} has an invalid neighbour")));
            }
            match nbrs.len() {
                1 | 3 => {}
                d => return Err(Error::InvalidTree(format!("vertex {v} has degree {d}"))),
            }
            for &w in nbrs {
                if !adj[w].contains(&v) {
                    return Err(Error::InvalidTree(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        if degree_sum != 2 * (nv - 1) {
            return Err(Error::InvalidTree("graph is not a tree (edge count != vertices - 1)".into()));
        }
        if adj[first_leaf].len() != 1 {
            return Err(Error::InvalidTree("leaf 1 must have degree one".into()));
        }

        let num_edges = nv - 1;
        let mut leaf_vertex = Vec::new();
        let mut leaf_of_vertex = vec![None; nv];
        let mut edge_ends = Vec::with_capacity(num_edges);
        let mut parent_edge = vec![None; nv];
        let mut parent = vec![None; nv];
        let mut depth = vec![0; nv];
        let mut visited = vec![false; nv];

        // Iterative preorder walk; each frame is (vertex, next neighbour offset).
        visited[first_leaf] = true;
        leaf_of_vertex[first_leaf] = Some(1);
        leaf_vertex.push(first_leaf);
        let mut stack: Vec<(usize, usize)> = vec![(first_leaf, 0)];
        while let Some(&mut (v, ref mut offset)) = stack.last_mut() {
            let nbrs = &adj[v];
            let start = match parent[v] {
                Some(p) => nbrs.iter().position(|&w| w == p).expect("parent is a neighbour") + 1,
                None => 0,
            };
            let budget = if parent[v].is_some() { nbrs.len() - 1 } else { nbrs.len() };
            if *offset == budget {
                stack.pop();
                continue;
            }
            let w = nbrs[(start + *offset) % nbrs.len()];
            *offset += 1;
            if visited[w] {
                return Err(Error::InvalidTree("graph contains a cycle".into()));
            }
            visited[w] = true;
            parent[w] = Some(v);
            depth[w] = depth[v] + 1;
            parent_edge[w] = Some(edge_ends.len());
            edge_ends.push((v, w));
            if adj[w].len() == 1 {
                leaf_of_vertex[w] = Some(leaf_vertex.len() + 1);
                leaf_vertex.push(w);
            } else {
                stack.push((w, 0));
            }
        }
        if visited.iter().any(|&b| !b) {
            return Err(Error::InvalidTree("graph is disconnected".into()));
        }

        let mut tree = Tree { adj, leaf_vertex, leaf_of_vertex, edge_ends, parent_edge, parent, depth, paths: vec![] };
        let n = tree.n_leaves();
        let mut paths = Vec::with_capacity(n * (n - 1) / 2);
        for p in LeafPair::all(n) {
            paths.push(tree.walk(tree.leaf_vertex[p.i - 1], tree.leaf_vertex[p.j - 1]));
        }
        tree.paths = paths;
        Ok(tree)
    }

    /// The caterpillar tree: spine `v_1..v_{n-2}`, leaves 1,2 on `v_1`, leaf
    /// `k+1` on `v_k`, and leaves `n-1`, `n` on `v_{n-2}`.
    pub fn caterpillar(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTree(format!("caterpillar needs n >= 2, got {n}")));
        }
        if n == 2 {
            return Tree::from_cyclic_adjacency(vec![vec![1], vec![0]], 0);
        }
        // Leaves are vertices 0..n, spine vertex v_k is n + k - 1.
        let spine = |k: usize| n + k - 1;
        let mut adj = vec![Vec::new(); 2 * n - 2];
        if n == 3 {
            adj[spine(1)] = vec![0, 1, 2];
        } else {
            adj[spine(1)] = vec![spine(2), 0, 1];
            for k in 2..n - 2 {
                adj[spine(k)] = vec![spine(k - 1), k, spine(k + 1)];
            }
            adj[spine(n - 2)] = vec![spine(n - 3), n - 2, n - 1];
        }
        adj[0] = vec![spine(1)];
        adj[1] = vec![spine(1)];
        for leaf in 3..=n {
            let k = (leaf - 1).min(n - 2);
            adj[leaf - 1] = vec![spine(k)];
        }
        Tree::from_cyclic_adjacency(adj, 0)
    }

    pub fn n_leaves(&self) -> usize {
        self.leaf_vertex.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_internal_vertices(&self) -> usize {
        self.adj.iter().filter(|a| a.len() == 3).count()
    }

    /// 0-based index of the edge incident to `leaf` (1-based).
    pub fn leaf_edge(&self, leaf: usize) -> usize {
        // Leaf 1 is the traversal root; its edge is the first one numbered.
        self.parent_edge[self.leaf_vertex[leaf - 1]].unwrap_or(0)
    }

    fn check_leaf(&self, leaf: usize) -> Result<()> {
        if leaf == 0 || leaf > self.n_leaves() {
            Err(Error::IndexOutOfRange { index: leaf, bound: self.n_leaves() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_pair(&self, p: LeafPair) -> Result<()> {
        if p.i == 0 || p.i >= p.j || p.j > self.n_leaves() {
            return Err(Error::InvalidPair { i: p.i, j: p.j, n: self.n_leaves() });
        }
        Ok(())
    }

    fn pair_index(&self, p: LeafPair) -> usize {
        let n = self.n_leaves();
        // Offset of the block of pairs starting at i, then j within it.
        (p.i - 1) * (2 * n - p.i) / 2 + (p.j - p.i - 1)
    }

    pub(crate) fn path_set(&self, p: LeafPair) -> &EdgeSet {
        &self.paths[self.pair_index(p)]
    }

    fn walk(&self, mut a: usize, mut b: usize) -> EdgeSet {
        let mut set = EdgeSet::new(self.num_edges());
        while a != b {
            if self.depth[a] >= self.depth[b] {
                set.insert(self.parent_edge[a].expect("non-root has a parent edge"));
                a = self.parent[a].expect("non-root has a parent");
            } else {
                set.insert(self.parent_edge[b].expect("non-root has a parent edge"));
                b = self.parent[b].expect("non-root has a parent");
            }
        }
        set
    }

    /// The edge indicator of the path between leaves `i < j`.
    pub fn path(&self, i: usize, j: usize) -> Result<PathVector> {
        let pair = LeafPair { i, j };
        self.check_pair(pair)?;
        let set = self.path_set(pair);
        let indicator = (0..self.num_edges()).map(|e| set.contains(e) as u8).collect();
        Ok(PathVector { pair, indicator })
    }

    /// The number of edges between leaves `i` and `j` (order irrelevant, 0 when equal).
    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        self.check_leaf(i)?;
        self.check_leaf(j)?;
        if i == j {
            return Ok(0);
        }
        Ok(self.path_set(LeafPair::sorted(i, j)).len())
    }

    pub(crate) fn dist(&self, a: usize, b: usize) -> usize {
        if a == b {
            0
        } else {
            self.path_set(LeafPair::sorted(a, b)).len()
        }
    }

    pub(crate) fn meets(&self, p: LeafPair, q: LeafPair) -> bool {
        self.path_set(p).intersects(self.path_set(q))
    }

    /// Classifies how the paths of two leaf pairs intersect.
    pub fn classify_intersection(&self, p: LeafPair, q: LeafPair) -> Result<Intersection> {
        self.check_pair(p)?;
        self.check_pair(q)?;
        if !self.meets(p, q) {
            return Ok(Intersection { kind: IntersectionKind::Disjoint, dual: None });
        }
        if p.shares_endpoint(&q) {
            return Ok(Intersection { kind: IntersectionKind::Ordered, dual: None });
        }
        let mut leaves = [p.i, p.j, q.i, q.j];
        leaves.sort_unstable();
        let [a, b, c, d] = leaves;
        let divisions = [
            (LeafPair::sorted(a, b), LeafPair::sorted(c, d)),
            (LeafPair::sorted(a, c), LeafPair::sorted(b, d)),
            (LeafPair::sorted(a, d), LeafPair::sorted(b, c)),
        ];
        let this = (p.min(q), p.max(q));
        let mut duals = divisions.iter().filter(|&&(x, y)| (x, y) != this && self.meets(x, y));
        let dual = match (duals.next(), duals.next()) {
            (Some(&dual), None) => dual,
            _ => return Err(Error::Internal(format!("no unique dual for {p} and {q}"))),
        };
        let kind = if this < dual { IntersectionKind::Ordered } else { IntersectionKind::Unordered };
        Ok(Intersection { kind, dual: Some(dual) })
    }

    pub(crate) fn is_unordered(&self, p: LeafPair, q: LeafPair) -> bool {
        matches!(self.classify_intersection(p, q), Ok(Intersection { kind: IntersectionKind::Unordered, .. }))
    }

    /// All 2-tuples `(p, q)`, `p < q`, whose paths intersect in an unordered
    /// way, in lexicographic order.
    pub fn unordered_pairs(&self) -> Vec<(LeafPair, LeafPair)> {
        let pairs = LeafPair::all(self.n_leaves());
        let mut out = Vec::new();
        for (a, &p) in pairs.iter().enumerate() {
            for &q in &pairs[a + 1..] {
                if self.is_unordered(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Cherries `(l, l+1)` with both leaves on one vertex, by leaf number.
    /// The wrap-around cherry `{1, n}` is not listed.
    pub fn consecutive_cherries(&self) -> Vec<usize> {
        (1..self.n_leaves())
            .filter(|&l| {
                let a = self.leaf_vertex[l - 1];
                let b = self.leaf_vertex[l];
                self.adj[a][0] == self.adj[b][0] && self.adj[self.adj[a][0]].len() == 3
            })
            .collect()
    }

    /// Removes the leaves `l` and `l+1` of a consecutive cherry; their common
    /// neighbour becomes leaf `l` of the smaller tree.
    ///
    /// Returns the tree and, for every edge of `self`, its index in the
    /// smaller tree (`None` for the two removed edges).
    pub fn prune_cherry(&self, l: usize) -> Result<(Tree, Vec<Option<usize>>)> {
        if !self.consecutive_cherries().contains(&l) {
            return Err(Error::InvalidTree(format!("leaves {l},{} do not form a cherry", l + 1)));
        }
        let gone = [self.leaf_vertex[l - 1], self.leaf_vertex[l]];
        let hub = self.adj[gone[0]][0];
        let mut new_id = vec![usize::MAX; self.num_vertices()];
        let mut next = 0;
        for (v, id) in new_id.iter_mut().enumerate() {
            if !gone.contains(&v) {
                *id = next;
                next += 1;
            }
        }
        let adj = (0..self.num_vertices())
            .filter(|v| !gone.contains(v))
            .map(|v| self.adj[v].iter().filter(|w| !gone.contains(w)).map(|&w| new_id[w]).collect())
            .collect();
        let first = if l == 1 { hub } else { self.leaf_vertex[0] };
        let smaller = Tree::from_cyclic_adjacency(adj, new_id[first])?;
        let edge_map =
            self.edge_ends
                .iter()
                .map(|&(a, b)| {
                    if gone.contains(&a) || gone.contains(&b) {
                        None
                    } else {
                        smaller.edge_between(new_id[a], new_id[b])
                    }
                })
                .collect();
        debug_assert_eq!(smaller.leaf_of_vertex[new_id[hub]], Some(l));
        Ok((smaller, edge_map))
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        if self.parent[b] == Some(a) {
            self.parent_edge[b]
        } else if self.parent[a] == Some(b) {
            self.parent_edge[a]
        } else {
            None
        }
    }

    /// Leaf-to-leaf distances `d(i,j)`, 1-based rows and columns shifted to 0.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.n_leaves();
        (1..=n).map(|i| (1..=n).map(|j| self.dist(i, j)).collect()).collect()
    }

    /// Renders the tree in the nested-parentheses format, rooted at the
    /// edge incident to leaf 1.
    pub fn to_spec(&self) -> String {
        fn node(t: &Tree, v: usize, from: usize, out: &mut String) {
            if t.adj[v].len() == 1 {
                out.push('*');
                return;
            }
            let nbrs = &t.adj[v];
            let at = nbrs.iter().position(|&w| w == from).expect("came from a neighbour");
            out.push('(');
            node(t, nbrs[(at + 1) % 3], v, out);
            out.push(',');
            node(t, nbrs[(at + 2) % 3], v, out);
            out.push(')');
        }
        let root = self.leaf_vertex[0];
        let mut out = String::from("(*,");
        node(self, self.adj[root][0], root, &mut out);
        out.push(')');
        out
    }
}

/// Two trees are equal when they have the same leaf count and identical
/// path indicators for every pair, i.e. the same labelled, edge-numbered tree.
impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.n_leaves() == other.n_leaves() && self.num_edges() == other.num_edges() && self.paths == other.paths
    }
}

impl Eq for Tree {}
