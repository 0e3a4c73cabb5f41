use rand::Rng;

use crate::error::{Error, Result};

use super::Tree;

/// Parses the nested-parentheses tree format.
///
/// `*` is a leaf and `(X,Y)` an internal vertex with two children; the
/// outermost `(A,B)` is the edge joining `A` and `B`. Leaves are numbered by
/// left-to-right occurrence. Whitespace is ignored.
pub fn parse_tree(text: &str) -> Result<Tree> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, adj: Vec::new(), first_leaf: None };
    p.expect(b'(')?;
    let a = p.node()?;
    p.expect(b',')?;
    let b = p.node()?;
    p.expect(b')')?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input after the tree");
    }
    // Each side's parent is the other side of the root edge.
    p.adj[a].insert(0, b);
    p.adj[b].insert(0, a);
    Tree::from_cyclic_adjacency(p.adj, p.first_leaf.expect("a parsed tree has a leaf"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    adj: Vec<Vec<usize>>,
    first_leaf: Option<usize>,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", byte as char))
        }
    }

    /// Parses a subtree and returns its root vertex; the parent link is
    /// added by the caller at position 0 of the neighbour list.
    fn node(&mut self) -> Result<usize> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'*') => {
                self.pos += 1;
                let v = self.adj.len();
                self.adj.push(Vec::new());
                self.first_leaf.get_or_insert(v);
                Ok(v)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let v = self.adj.len();
                self.adj.push(Vec::new());
                let mut children = vec![self.node()?];
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.node()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
                if children.len() != 2 {
                    return Err(Error::Parse {
                        position: open,
                        message: format!(
                            "internal vertex of degree {} (needs exactly two children)",
                            children.len() + 1
                        ),
                    });
                }
                for &c in &children {
                    self.adj[c].insert(0, v);
                }
                self.adj[v].extend(children);
                Ok(v)
            }
            _ => self.err("expected '*' or '('"),
        }
    }
}

/// A random tree with `n >= 2` leaves in the nested-parentheses format.
///
/// Shapes come from randomly splitting leaf counts, so every shape has
/// positive probability (not uniform).
pub fn random_tree_spec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> String {
    assert!(n >= 2, "a tree needs at least two leaves");
    fn subtree<R: Rng + ?Sized>(k: usize, rng: &mut R, out: &mut String) {
        if k == 1 {
            out.push('*');
            return;
        }
        let left = rng.gen_range(1..k);
        out.push('(');
        subtree(left, rng, out);
        out.push(',');
        subtree(k - left, rng, out);
        out.push(')');
    }
    let left = rng.gen_range(1..n);
    let mut out = String::from("(");
    subtree(left, rng, &mut out);
    out.push(',');
    subtree(n - left, rng, &mut out);
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn four_leaves_is_the_caterpillar() {
        assert_eq!(parse_tree("((*,*),(*,*))").unwrap(), Tree::caterpillar(4).unwrap());
        assert_eq!(parse_tree(" ( (*, *) ,( * ,*) ) ").unwrap(), Tree::caterpillar(4).unwrap());
    }

    #[test]
    fn two_and_three_leaves() {
        let t = parse_tree("(*,*)").unwrap();
        assert_eq!((t.n_leaves(), t.num_edges()), (2, 1));
        assert_eq!(parse_tree("((*,*),*)").unwrap(), Tree::caterpillar(3).unwrap());
    }

    #[test]
    fn caterpillar_spec_parses_to_caterpillar() {
        for n in 3..=9 {
            let t = Tree::caterpillar(n).unwrap();
            assert_eq!(parse_tree(&t.to_spec()).unwrap(), t, "n={n}");
        }
        assert_eq!(parse_tree("((*,*),(*,(*,*)))").unwrap(), Tree::caterpillar(5).unwrap());
    }

    #[test]
    fn degree_two_vertex_is_rejected() {
        let err = parse_tree("((*),*)").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 1, .. }), "{err:?}");
        assert!(matches!(parse_tree("((*,*,*),*)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn malformed_syntax() {
        for bad in ["", "*", "(*,*", "(*;*)", "(*,*))", "(*,x)", "((*,*),)"] {
            assert!(matches!(parse_tree(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn random_specs_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(2..=10);
            let spec = random_tree_spec(n, &mut rng);
            let t = parse_tree(&spec).unwrap();
            assert_eq!(t.n_leaves(), n);
            assert_eq!(t.num_edges(), 2 * n - 3);
            assert_eq!(parse_tree(&t.to_spec()).unwrap(), t);
        }
    }
}
