//! Bracketings and the encodings they are in bijection with.
//!
//! A bracketing of size `n` is a full parenthesization of `x1 x2 ... xn`.
//! Its graph (edge `xi -> xj` whenever some subterm `(t1 t2)` has leftmost
//! variables `xi` in `t1` and `xj` in `t2`) is a [`DfsTree`]: a tree rooted at
//! `x1` in which every rooted subtree occupies a contiguous index interval.
//! DFS trees are in turn determined by their depth sequences ([`ZagSequence`])
//! and by the up/down record of a depth-first traversal ([`DyckPath`]).
//!
//! Vertex indices in this module are 0-based: vertex `i` is the variable
//! `x{i+1}`. Textual forms (terms, zag strings) use the 1-based names.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of trees a single enumeration may emit.
pub const DEFAULT_MAX_TREES: u64 = 1_000_000;

/// A raw term over 1-based variable indices. Any shape is representable;
/// [`Bracketing`] is the validated form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf(usize),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    pub fn leaf_count(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn leftmost(&self) -> usize {
        match self {
            Term::Leaf(i) => *i,
            Term::Node(l, _) => l.leftmost(),
        }
    }

    fn leaves_into(&self, out: &mut Vec<usize>) {
        match self {
            Term::Leaf(i) => out.push(*i),
            Term::Node(l, r) => {
                l.leaves_into(out);
                r.leaves_into(out);
            }
        }
    }

    fn shifted(&self, by: usize) -> Term {
        match self {
            Term::Leaf(i) => Term::Leaf(i + by),
            Term::Node(l, r) => Term::Node(Box::new(l.shifted(by)), Box::new(r.shifted(by))),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, outermost: bool) -> fmt::Result {
        match self {
            Term::Leaf(i) => write!(f, "x{i}"),
            Term::Node(l, r) => {
                if !outermost {
                    f.write_str("(")?;
                }
                l.write(f, false)?;
                r.write(f, false)?;
                if !outermost {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// A bracketing of `x1 ... xn`: leaves read left to right are exactly `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bracketing {
    term: Term,
    size: usize,
}

impl Bracketing {
    /// The single bracketing of size 1.
    pub fn variable() -> Self {
        Bracketing { term: Term::Leaf(1), size: 1 }
    }

    /// `(left right)`, with the variables of `right` renumbered to follow those of `left`.
    pub fn product(left: &Bracketing, right: &Bracketing) -> Self {
        Bracketing {
            term: Term::Node(Box::new(left.term.clone()), Box::new(right.term.shifted(left.size))),
            size: left.size + right.size,
        }
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_bracketing(text)
    }
}

impl TryFrom<Term> for Bracketing {
    type Error = Error;

    fn try_from(term: Term) -> Result<Self> {
        let mut leaves = Vec::new();
        term.leaves_into(&mut leaves);
        for (pos, &leaf) in leaves.iter().enumerate() {
            if leaf != pos + 1 {
                return Err(Error::InvalidTree(format!("leaf {} carries x{leaf}, expected x{}", pos + 1, pos + 1)));
            }
        }
        Ok(Bracketing { size: leaves.len(), term })
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.write(f, true)
    }
}

impl FromStr for Bracketing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bracketing(s)
    }
}

impl Serialize for Bracketing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bracketing {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct TermParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    leaves: Vec<(usize, usize)>,
}

impl<'a> TermParser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::TermSyntax { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'x') | Some(b'('))
    }

    // expr := atom atom?
    fn expr(&mut self) -> Result<Term> {
        let left = self.atom()?;
        if !self.starts_atom() {
            return Ok(left);
        }
        let right = self.atom()?;
        if self.starts_atom() {
            return self.error(self.pos, "product of more than two factors needs parentheses");
        }
        Ok(Term::Node(Box::new(left), Box::new(right)))
    }

    // atom := 'x' digits | '(' expr ')'
    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if digits_start == self.pos {
                    return self.error(self.pos, "expected a variable index after 'x'");
                }
                let digits = std::str::from_utf8(&self.bytes[digits_start..self.pos]).expect("ascii digits");
                let index: usize = match digits.parse() {
                    Ok(i) if i >= 1 => i,
                    _ => return self.error(digits_start, format!("bad variable index '{digits}'")),
                };
                self.leaves.push((index, start));
                Ok(Term::Leaf(index))
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => self.error(self.pos, format!("expected ')' but found '{}'", c as char)),
                    None => self.error(open, "unclosed '('"),
                }
            }
            Some(c) => self.error(self.pos, format!("unexpected character '{}'", c as char)),
            None => self.error(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses a term such as `((x1((x2x3)x4))x5)(x6(x7x8))`.
///
/// Juxtaposition is the product; every internal node except the outermost
/// must be parenthesized. Variables must read `x1, x2, ..., xn` left to right.
pub fn parse_bracketing(text: &str) -> Result<Bracketing> {
    let mut parser = TermParser { bytes: text.as_bytes(), pos: 0, leaves: Vec::new() };
    let term = parser.expr()?;
    if let Some(c) = parser.peek() {
        return parser.error(parser.pos, format!("unexpected trailing '{}'", c as char));
    }
    for (expected, &(index, position)) in (1..).zip(parser.leaves.iter()) {
        if index != expected {
            let message = if parser.leaves.iter().any(|&(i, _)| i == expected) {
                format!("variable x{index} appears out of left-to-right order (expected x{expected})")
            } else {
                format!("variable indices are not contiguous: found x{index}, expected x{expected}")
            };
            return Err(Error::TermSyntax { position, message });
        }
    }
    Ok(Bracketing { size: parser.leaves.len(), term })
}

/// A DFS tree on `x1..xn`, rooted at `x1`.
///
/// Ordering is lexicographic on depth sequences, which is a total order since
/// a DFS tree is determined by its depths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DfsTree {
    depth: Vec<u32>,
    parent: Vec<usize>,
}

impl DfsTree {
    /// Builds a tree from the 1-based parents of `x2, ..., xn`.
    ///
    /// `from_parents(&[1, 2])` is the chain `x1 -> x2 -> x3`; an empty slice is
    /// the single-vertex tree.
    pub fn from_parents(parents: &[usize]) -> Result<Self> {
        let mut parent = Vec::with_capacity(parents.len() + 1);
        parent.push(0);
        for (i, &p) in parents.iter().enumerate() {
            let vertex = i + 2;
            if p == 0 || p >= vertex {
                return Err(Error::InvalidTree(format!(
                    "parent of x{vertex} must lie in x1..x{}, got {p}",
                    vertex - 1
                )));
            }
            parent.push(p - 1);
        }
        Self::from_parent_indices(parent)
    }

    /// `parent[0]` is ignored; `parent[i]` is the 0-based parent of vertex `i`.
    fn from_parent_indices(mut parent: Vec<usize>) -> Result<Self> {
        if parent.is_empty() {
            return Err(Error::InvalidTree("a DFS tree has at least one vertex".into()));
        }
        parent[0] = 0;
        let mut depth = vec![0u32; parent.len()];
        for i in 1..parent.len() {
            let p = parent[i];
            if p >= i {
                return Err(Error::InvalidTree(format!("x{} has parent x{} with a larger index", i + 1, p + 1)));
            }
            // contiguity: the parent of x_{i+1} is x_i or one of its ancestors
            let mut a = i - 1;
            while a != p && a != 0 {
                a = parent[a];
            }
            if a != p {
                return Err(Error::InvalidTree(format!(
                    "subtree intervals broken: parent x{} of x{} is not x{} or one of its ancestors",
                    p + 1,
                    i + 1,
                    i
                )));
            }
            depth[i] = depth[p] + 1;
        }
        Ok(DfsTree { depth, parent })
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v > 0).then(|| self.parent[v])
    }

    /// 1-based parents of `x2..xn`, the inverse of [`DfsTree::from_parents`].
    pub fn parent_array(&self) -> Vec<usize> {
        self.parent[1..].iter().map(|p| p + 1).collect()
    }

    pub fn height(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Children of `v` in increasing index order.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (v + 1..self.len()).filter(|&c| self.parent[c] == v).collect()
    }

    /// Edges `(parent, child)` ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.len()).map(move |c| (self.parent[c], c))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v + 1 >= self.len() || self.parent[v + 1] != v
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Last index of the subtree rooted at `v`; the subtree is `v..=end`.
    pub fn subtree_end(&self, v: usize) -> usize {
        let mut end = v;
        while end + 1 < self.len() && self.depth[end + 1] > self.depth[v] {
            end += 1;
        }
        end
    }

    pub fn is_chain(&self) -> bool {
        self.depth.iter().enumerate().all(|(i, &d)| d as usize == i)
    }

    pub fn is_star(&self) -> bool {
        self.depth.iter().skip(1).all(|&d| d == 1)
    }
}

/// A depth sequence of a DFS tree: `d1 = 0` and `1 <= d(i+1) <= d(i) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZagSequence(Vec<u32>);

impl ZagSequence {
    pub fn new(depths: Vec<u32>) -> Result<Self> {
        match depths.first() {
            None => return Err(Error::InvalidZag("empty sequence".into())),
            Some(&d) if d != 0 => return Err(Error::InvalidZag(format!("must start with 0, got {d}"))),
            _ => {}
        }
        for (i, w) in depths.windows(2).enumerate() {
            if w[1] < 1 || w[1] > w[0] + 1 {
                return Err(Error::InvalidZag(format!(
                    "entry {} is {} after {}; needs 1 <= d <= {}",
                    i + 2,
                    w[1],
                    w[0],
                    w[0] + 1
                )));
            }
        }
        Ok(ZagSequence(depths))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ZagSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for ZagSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let depths = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidZag(format!("'{}' is not a nonnegative integer", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        ZagSequence::new(depths)
    }
}

impl Serialize for ZagSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    U,
    D,
}

/// A Dyck path over `U`/`D` steps; semilength `n - 1` for a tree of size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath(Vec<Step>);

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for (i, step) in steps.iter().enumerate() {
            height += match step {
                Step::U => 1,
                Step::D => -1,
            };
            if height < 0 {
                return Err(Error::InvalidDyck(format!("goes below the axis at step {}", i + 1)));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyck(format!("ends at height {height}, not 0")));
        }
        Ok(DyckPath(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.0 {
            f.write_str(match step {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                other => Err(Error::InvalidDyck(format!("unexpected step '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The graph `G(t)` of a bracketing.
pub fn bracketing_to_dfs(t: &Bracketing) -> DfsTree {
    fn visit(term: &Term, parent: &mut [usize]) -> usize {
        match term {
            Term::Leaf(i) => i - 1,
            Term::Node(l, r) => {
                let a = visit(l, parent);
                let b = visit(r, parent);
                parent[b] = a;
                a
            }
        }
    }
    let mut parent = vec![0; t.size()];
    visit(t.term(), &mut parent);
    DfsTree::from_parent_indices(parent).expect("graph of a bracketing is a DFS tree")
}

/// The unique bracketing whose graph is `tree`.
pub fn dfs_to_bracketing(tree: &DfsTree) -> Bracketing {
    // children c1 < ... < ck of v give ((..((v S(c1)) S(c2))..) S(ck))
    fn build(tree: &DfsTree, v: usize) -> Term {
        tree.children(v)
            .into_iter()
            .fold(Term::Leaf(v + 1), |acc, c| Term::Node(Box::new(acc), Box::new(build(tree, c))))
    }
    Bracketing { term: build(tree, 0), size: tree.len() }
}

pub fn depth_sequence(tree: &DfsTree) -> ZagSequence {
    ZagSequence(tree.depth.clone())
}

pub fn zag_to_dfs(zag: &ZagSequence) -> DfsTree {
    let depths = zag.as_slice();
    let mut parent = vec![0usize; depths.len()];
    // path[k] is the most recent vertex at depth k
    let mut path: Vec<usize> = vec![0];
    for (i, &d) in depths.iter().enumerate().skip(1) {
        let d = d as usize;
        parent[i] = path[d - 1];
        path.truncate(d);
        path.push(i);
    }
    DfsTree { depth: depths.to_vec(), parent }
}

/// The up/down record of a depth-first traversal visiting children in
/// increasing order and returning to the root.
pub fn dfs_to_dyck(tree: &DfsTree) -> DyckPath {
    let d = tree.depths();
    let mut steps = Vec::with_capacity(2 * (d.len() - 1));
    for w in d.windows(2) {
        // climb down to the parent of the next vertex, then one step up
        for _ in 0..(w[0] + 1 - w[1]) {
            steps.push(Step::D);
        }
        steps.push(Step::U);
    }
    for _ in 0..d[d.len() - 1] {
        steps.push(Step::D);
    }
    DyckPath(steps)
}

pub fn dyck_to_dfs(path: &DyckPath) -> DfsTree {
    let mut depths = vec![0u32];
    let mut height = 0u32;
    for step in path.steps() {
        match step {
            Step::U => {
                height += 1;
                depths.push(height);
            }
            Step::D => height -= 1,
        }
    }
    zag_to_dfs(&ZagSequence(depths))
}

/// `C_k = binom(2k, k) / (k + 1)`, exactly.
pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// Lexicographic stream of the DFS trees of a fixed size.
#[derive(Clone, Debug)]
pub struct DfsTrees {
    next: Option<Vec<u32>>,
}

impl Iterator for DfsTrees {
    type Item = DfsTree;

    fn next(&mut self) -> Option<DfsTree> {
        let current = self.next.take()?;
        let tree = zag_to_dfs(&ZagSequence(current.clone()));
        // successor: bump the rightmost entry that can still grow, reset the tail to 1
        let mut succ = current;
        let mut i = succ.len();
        while i > 2 {
            i -= 1;
            if succ[i] <= succ[i - 1] {
                succ[i] += 1;
                for d in &mut succ[i + 1..] {
                    *d = 1;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(tree)
    }
}

/// Every DFS tree of size `n` exactly once, in lexicographic order of depth
/// sequences. Fails up front if `catalan(n - 1)` exceeds `max_trees`.
pub fn enumerate_dfs_trees(n: usize, max_trees: u64) -> Result<DfsTrees> {
    if n == 0 {
        return Err(Error::InvalidArgument("tree size must be at least 1".into()));
    }
    let count = catalan(n - 1);
    if count > BigUint::from(max_trees) {
        return Err(Error::TreeBudget { n, count: count.to_string(), cap: max_trees });
    }
    let mut first = vec![1u32; n];
    first[0] = 0;
    Ok(DfsTrees { next: Some(first) })
}

/// All bracketings of size `n`, built directly by splitting the outermost
/// product. Independent of the DFS-tree machinery; intended for small `n`.
pub fn all_bracketings(n: usize) -> Vec<Bracketing> {
    fn terms(lo: usize, hi: usize) -> Vec<Term> {
        if lo == hi {
            return vec![Term::Leaf(lo)];
        }
        let mut out = Vec::new();
        for split in lo..hi {
            let lefts = terms(lo, split);
            let rights = terms(split + 1, hi);
            for l in &lefts {
                for r in &rights {
                    out.push(Term::Node(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
        }
        out
    }
    if n == 0 {
        return Vec::new();
    }
    terms(1, n).into_iter().map(|term| Bracketing { term, size: n }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "((x1((x2x3)x4))x5)(x6(x7x8))";

    fn leaf(i: usize) -> Term {
        Term::Leaf(i)
    }

    fn node(l: Term, r: Term) -> Term {
        Term::Node(Box::new(l), Box::new(r))
    }

    fn zag(s: &str) -> ZagSequence {
        s.parse().unwrap()
    }

    #[test]
    fn parses_left_nested_term() {
        let t = parse_bracketing("(x1x2)x3").unwrap();
        assert_eq!(t.term(), &node(node(leaf(1), leaf(2)), leaf(3)));
        assert_eq!(t.to_string(), "(x1x2)x3");
    }

    #[test]
    fn parses_figure_one_term() {
        let t = parse_bracketing(FIG1).unwrap();
        assert_eq!(t.size(), 8);
        assert_eq!(t.to_string(), FIG1);
        let expected = node(
            node(node(leaf(1), node(node(leaf(2), leaf(3)), leaf(4))), leaf(5)),
            node(leaf(6), node(leaf(7), leaf(8))),
        );
        assert_eq!(t.term(), &expected);
    }

    #[test]
    fn outer_parentheses_and_whitespace_are_optional() {
        let a = parse_bracketing("((x1x2)x3)").unwrap();
        let b = parse_bracketing(" ( x1 x2 ) x3 ").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_bracketing("x1").unwrap(), Bracketing::variable());
    }

    #[test]
    fn rejects_out_of_order_indices() {
        let err = parse_bracketing("(x1x3)x2").unwrap_err();
        match err {
            Error::TermSyntax { position, message } => {
                assert_eq!(position, 3);
                assert!(message.contains("out of left-to-right order"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_gaps_and_syntax_errors() {
        assert!(matches!(parse_bracketing("x1x3"), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing("x1x2x3"), Err(Error::TermSyntax { position: 4, .. })));
        assert!(matches!(parse_bracketing("(x1x2"), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing("x1)"), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing("x0"), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing("y1"), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing(""), Err(Error::TermSyntax { .. })));
        assert!(matches!(parse_bracketing("x"), Err(Error::TermSyntax { .. })));
    }

    #[test]
    fn product_renumbers_right_factor() {
        let x = Bracketing::variable();
        let xx = Bracketing::product(&x, &x);
        assert_eq!(Bracketing::product(&x, &xx).to_string(), "x1(x2x3)");
        assert_eq!(Bracketing::product(&xx, &xx).to_string(), "(x1x2)(x3x4)");
    }

    #[test]
    fn term_validation() {
        assert!(Bracketing::try_from(node(leaf(2), leaf(1))).is_err());
        assert_eq!(Bracketing::try_from(node(leaf(1), leaf(2))).unwrap().size(), 2);
    }

    #[test]
    fn graphs_of_the_associative_law() {
        let right = bracketing_to_dfs(&parse_bracketing("x1(x2x3)").unwrap());
        assert_eq!(right.parent_array(), vec![1, 2]);
        assert_eq!(right.depths(), &[0, 1, 2]);
        let left = bracketing_to_dfs(&parse_bracketing("(x1x2)x3").unwrap());
        assert_eq!(left.parent_array(), vec![1, 1]);
        assert_eq!(left.depths(), &[0, 1, 1]);
    }

    #[test]
    fn figure_one_tree() {
        let tree = bracketing_to_dfs(&parse_bracketing(FIG1).unwrap());
        let edges: Vec<_> = tree.edges().map(|(p, c)| (p + 1, c + 1)).collect();
        assert_eq!(edges, vec![(1, 2), (2, 3), (2, 4), (1, 5), (1, 6), (6, 7), (7, 8)]);
        assert_eq!(depth_sequence(&tree), zag("0,1,2,2,1,1,2,3"));
        assert_eq!(dfs_to_dyck(&tree).to_string(), "UUDUDDUDUUUDDD");
        assert_eq!(dfs_to_bracketing(&tree).to_string(), FIG1);
    }

    #[test]
    fn inverse_examples() {
        let t = DfsTree::from_parents(&[1, 1]).unwrap();
        assert_eq!(dfs_to_bracketing(&t).to_string(), "(x1x2)x3");
        let t = DfsTree::from_parents(&[1, 2]).unwrap();
        assert_eq!(dfs_to_bracketing(&t).to_string(), "x1(x2x3)");
    }

    #[test]
    fn zag_examples() {
        let chain = zag_to_dfs(&zag("0,1,2,3"));
        assert!(chain.is_chain());
        assert_eq!(chain.parent_array(), vec![1, 2, 3]);
        assert_eq!(zag_to_dfs(&zag("0,1,2,1")).parent_array(), vec![1, 2, 1]);
    }

    #[test]
    fn zag_with_depths_0121_is_unique() {
        // oracle: scan every tree of size 4 and keep those with these depths
        let matches: Vec<_> =
            enumerate_dfs_trees(4, DEFAULT_MAX_TREES).unwrap().filter(|t| t.depths() == [0, 1, 2, 1]).collect();
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].parent_array(), vec![1, 2, 1]);
    }

    #[test]
    fn dyck_examples() {
        let chain2 = DfsTree::from_parents(&[1]).unwrap();
        assert_eq!(dfs_to_dyck(&chain2).to_string(), "UD");
        let t = dyck_to_dfs(&"UUDD".parse().unwrap());
        assert!(t.is_chain());
        assert_eq!(t.len(), 3);
        // the other size-3 tree backtracks mid-path
        assert_eq!(dfs_to_dyck(&DfsTree::from_parents(&[1, 1]).unwrap()).to_string(), "UDUD");
        let single = dyck_to_dfs(&"".parse().unwrap());
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn malformed_dyck_paths() {
        assert!(matches!("UDD".parse::<DyckPath>(), Err(Error::InvalidDyck(_))));
        assert!(matches!("DU".parse::<DyckPath>(), Err(Error::InvalidDyck(_))));
        assert!(matches!("UUD".parse::<DyckPath>(), Err(Error::InvalidDyck(_))));
        assert!(matches!("UXD".parse::<DyckPath>(), Err(Error::InvalidDyck(_))));
    }

    #[test]
    fn malformed_zag_sequences() {
        assert!("1,1".parse::<ZagSequence>().is_err());
        assert!("0,2".parse::<ZagSequence>().is_err());
        assert!("0,1,0".parse::<ZagSequence>().is_err());
        assert!("0,1,3".parse::<ZagSequence>().is_err());
        assert!("".parse::<ZagSequence>().is_err());
        assert!("0,a".parse::<ZagSequence>().is_err());
        assert!("0".parse::<ZagSequence>().is_ok());
    }

    #[test]
    fn invalid_parent_arrays() {
        assert!(DfsTree::from_parents(&[2]).is_err());
        assert!(DfsTree::from_parents(&[0]).is_err());
        // x3 under x1 closes x2's subtree, so x4 cannot return to x2
        assert!(DfsTree::from_parents(&[1, 1, 2]).is_err());
        assert!(DfsTree::from_parents(&[1, 2, 2]).is_ok());
    }

    #[test]
    fn enumeration_small_sizes() {
        let depths = |n| -> Vec<Vec<u32>> {
            enumerate_dfs_trees(n, DEFAULT_MAX_TREES).unwrap().map(|t| t.depths().to_vec()).collect()
        };
        assert_eq!(depths(1), vec![vec![0]]);
        assert_eq!(depths(3), vec![vec![0, 1, 1], vec![0, 1, 2]]);
        assert_eq!(
            depths(4),
            vec![vec![0, 1, 1, 1], vec![0, 1, 1, 2], vec![0, 1, 2, 1], vec![0, 1, 2, 2], vec![0, 1, 2, 3]]
        );
        assert_eq!(enumerate_dfs_trees(8, DEFAULT_MAX_TREES).unwrap().count(), 429);
    }

    #[test]
    fn enumeration_matches_brute_force_zag_filter() {
        // oracle: all sequences in [0, n)^n passing the zag condition, sorted
        for n in 1..=6usize {
            let mut brute = Vec::new();
            let total = n.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let seq: Vec<u32> = (0..n)
                    .map(|_| {
                        let d = (c % n) as u32;
                        c /= n;
                        d
                    })
                    .collect();
                let ok = seq[0] == 0 && seq.windows(2).all(|w| w[1] >= 1 && w[1] <= w[0] + 1);
                if ok {
                    brute.push(seq);
                }
            }
            brute.sort();
            let got: Vec<Vec<u32>> =
                enumerate_dfs_trees(n, DEFAULT_MAX_TREES).unwrap().map(|t| t.depths().to_vec()).collect();
            assert_eq!(got, brute, "n = {n}");
        }
    }

    #[test]
    fn enumeration_budget_and_bad_size() {
        assert!(matches!(enumerate_dfs_trees(15, DEFAULT_MAX_TREES), Err(Error::TreeBudget { .. })));
        assert!(enumerate_dfs_trees(5, 14).is_ok());
        assert!(matches!(enumerate_dfs_trees(5, 13), Err(Error::TreeBudget { .. })));
        assert!(matches!(enumerate_dfs_trees(0, 10), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(2), BigUint::from(2u32));
        assert_eq!(catalan(11), BigUint::from(58786u32));
        // binomial form (2k choose k)/(k+1), evaluated independently
        for k in 0..30usize {
            let mut binom = BigUint::one();
            for j in 0..k {
                binom = binom * BigUint::from(2 * k - j) / BigUint::from(j + 1);
            }
            assert_eq!(catalan(k), binom / BigUint::from(k + 1), "k = {k}");
        }
    }

    #[test]
    fn all_bracketings_are_distinct_and_counted() {
        for n in 1..=7 {
            let all = all_bracketings(n);
            let set: std::collections::HashSet<_> = all.iter().map(|b| b.to_string()).collect();
            assert_eq!(BigUint::from(set.len()), catalan(n - 1));
        }
    }

    #[test]
    fn chain_and_star_dyck_shapes() {
        for n in 2..=9 {
            for t in enumerate_dfs_trees(n, DEFAULT_MAX_TREES).unwrap() {
                let p = dfs_to_dyck(&t).to_string();
                let chain_path = "U".repeat(n - 1) + &"D".repeat(n - 1);
                let star_path = "UD".repeat(n - 1);
                assert_eq!(t.is_chain(), p == chain_path);
                assert_eq!(t.is_star(), p == star_path);
            }
        }
    }

    #[test]
    fn tree_accessors() {
        let t = bracketing_to_dfs(&parse_bracketing(FIG1).unwrap());
        assert_eq!(t.height(), 3);
        assert_eq!(t.children(0), vec![1, 4, 5]);
        assert_eq!(t.leaves(), vec![2, 3, 4, 7]);
        assert_eq!(t.subtree_end(1), 3);
        assert_eq!(t.subtree_end(5), 7);
        assert_eq!(t.parent(0), None);
        assert_eq!(t.parent(6), Some(5));
    }
}
