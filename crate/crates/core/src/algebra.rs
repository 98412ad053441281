//! The graph algebra of a digraph: `x ∘ y = x` when `(x, y)` is an edge and
//! `∞` otherwise. Bracketing identities are decided by comparing sets of
//! homomorphisms from DFS trees into the graph.

use std::fmt;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::trees::{bracketing_to_dfs, Bracketing, DfsTree, Term};

/// Default cap on the size of a single homomorphism set.
pub const DEFAULT_MAX_HOMS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraElement {
    Vertex(usize),
    Infinity,
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraElement::Vertex(v) => write!(f, "{v}"),
            AlgebraElement::Infinity => f.write_str("∞"),
        }
    }
}

pub fn product(g: &Digraph, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement {
    match (x, y) {
        (AlgebraElement::Vertex(u), AlgebraElement::Vertex(v)) if g.has_edge(u, v) => x,
        _ => AlgebraElement::Infinity,
    }
}

/// Value of `t` under `assignment`, where `assignment[i]` is the value of `x{i+1}`.
///
/// # Panics
/// If the assignment is shorter than the bracketing.
pub fn eval_bracketing(g: &Digraph, t: &Bracketing, assignment: &[AlgebraElement]) -> AlgebraElement {
    assert!(assignment.len() >= t.size(), "assignment covers {} of {} variables", assignment.len(), t.size());
    fn eval(g: &Digraph, term: &Term, a: &[AlgebraElement]) -> AlgebraElement {
        match term {
            Term::Leaf(i) => a[i - 1],
            Term::Node(l, r) => {
                let x = eval(g, l, a);
                if x == AlgebraElement::Infinity {
                    return x;
                }
                product(g, x, eval(g, r, a))
            }
        }
    }
    eval(g, t.term(), assignment)
}

/// All homomorphisms of a DFS tree into a digraph, each stored as the vector
/// of images of `x1..xn`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    tree_size: usize,
    images: Vec<u32>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.images.len() / self.tree_size
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn tree_size(&self) -> usize {
        self.tree_size
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.images.chunks_exact(self.tree_size)
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        if map.len() != self.tree_size {
            return false;
        }
        let key: Vec<u32> = map.iter().map(|&v| v as u32).collect();
        let maps: Vec<&[u32]> = self.iter().collect();
        maps.binary_search(&key.as_slice()).is_ok()
    }

    /// The flattened, concatenated image vectors.
    pub fn as_flat(&self) -> &[u32] {
        &self.images
    }
}

/// Enumerates `Hom(tree, g)` by assigning vertices in index order. Each
/// vertex's parent is placed first, so its candidates are the outneighbours
/// of the parent's image; increasing candidate order yields sorted output.
pub fn homomorphisms(tree: &DfsTree, g: &Digraph, max_homs: u64) -> Result<HomSet> {
    let n = tree.len();
    let roots: Vec<usize> = (0..g.vertex_count()).collect();
    let parent: Vec<usize> = (0..n).map(|v| tree.parent(v).unwrap_or(0)).collect();
    let mut image = vec![0usize; n];
    let mut cursor = vec![0usize; n];
    let mut images = Vec::new();
    let mut count = 0u64;
    let mut i = 0;
    loop {
        let candidates = if i == 0 { &roots[..] } else { g.out_neighbors(image[parent[i]]) };
        if cursor[i] < candidates.len() {
            image[i] = candidates[cursor[i]];
            cursor[i] += 1;
            if i + 1 == n {
                count += 1;
                if count > max_homs {
                    return Err(Error::HomBudget { cap: max_homs });
                }
                images.extend(image.iter().map(|&v| v as u32));
            } else {
                i += 1;
                cursor[i] = 0;
            }
        } else if i == 0 {
            break;
        } else {
            i -= 1;
        }
    }
    Ok(HomSet { tree_size: n, images })
}

/// Whether `g` satisfies the tree identity, i.e. both trees have the same
/// homomorphisms into `g`.
pub fn satisfies_tree_identity(g: &Digraph, t: &DfsTree, u: &DfsTree, max_homs: u64) -> Result<bool> {
    if t.len() != u.len() {
        return Err(Error::SizeMismatch { left: t.len(), right: u.len() });
    }
    if t == u {
        return Ok(true);
    }
    let left = homomorphisms(t, g, max_homs)?;
    let right = homomorphisms(u, g, max_homs)?;
    Ok(left.len() == right.len() && left == right)
}

/// Whether the graph algebra of `g` satisfies `t ≈ u`.
pub fn satisfies_identity(g: &Digraph, t: &Bracketing, u: &Bracketing, max_homs: u64) -> Result<bool> {
    if t.size() != u.size() {
        return Err(Error::SizeMismatch { left: t.size(), right: u.size() });
    }
    satisfies_tree_identity(g, &bracketing_to_dfs(t), &bracketing_to_dfs(u), max_homs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Walk {
    /// Vertices of an open walk; must be at least as long as the tree is high.
    Open(Vec<usize>),
    /// Vertices of a closed walk, first equal to last.
    Closed(Vec<usize>),
}

/// The collapsing map sending each tree vertex to the walk vertex at its
/// depth (taken modulo the length for a closed walk). Always a homomorphism.
pub fn collapse_on_walk(tree: &DfsTree, g: &Digraph, walk: &Walk) -> Result<Vec<usize>> {
    let vertices = match walk {
        Walk::Open(vs) | Walk::Closed(vs) => vs,
    };
    if vertices.is_empty() {
        return Err(Error::InvalidWalk("empty walk".into()));
    }
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::InvalidWalk(format!("vertex {v} is not in the graph")));
    }
    if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::InvalidWalk(format!("({}, {}) is not an edge", g.label(w[0]), g.label(w[1]))));
    }
    let length = vertices.len() - 1;
    match walk {
        Walk::Open(_) => {
            if length < tree.height() as usize {
                return Err(Error::InvalidWalk(format!(
                    "walk of length {length} is shorter than the tree height {}",
                    tree.height()
                )));
            }
            Ok(tree.depths().iter().map(|&d| vertices[d as usize]).collect())
        }
        Walk::Closed(_) => {
            if length == 0 || vertices[0] != vertices[length] {
                return Err(Error::InvalidWalk("a closed walk needs length at least 1 and equal ends".into()));
            }
            Ok(tree.depths().iter().map(|&d| vertices[d as usize % length]).collect())
        }
    }
}
