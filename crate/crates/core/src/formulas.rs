//! Closed forms and counting recurrences for spectra of special graphs.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::trees::{catalan, DfsTree, ZagSequence};

/// Number of DFS trees of size `n` with height at most `h`, by dynamic
/// programming over the last depth of a zag sequence.
pub fn bounded_height_count(h: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut ways = vec![BigUint::zero(); h + 1];
    ways[0] = BigUint::one();
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); h + 1];
        // the next depth d' can follow any depth d >= d' - 1
        let mut suffix = BigUint::zero();
        for d in (1..=h).rev() {
            suffix += &ways[d];
            next[d] = &suffix + &ways[d - 1];
        }
        ways = next;
    }
    ways.into_iter().sum()
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// The same count from the linear recurrence
/// `T(n+1) = Σ_k (-1)^k C(h-k, k+1) T(n-k)`, seeded with `C_{n-1}` for
/// `n <= h + 1` where every tree fits.
pub fn bounded_height_by_recurrence(h: usize, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut values: Vec<BigInt> = vec![BigInt::zero()];
    for k in 1..=n {
        let value = if k <= h + 1 {
            BigInt::from(catalan(k - 1))
        } else {
            (0..=h.saturating_sub(1) / 2)
                .map(|j| {
                    let term = binomial(h - j, j + 1) * &values[k - 1 - j];
                    if j % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        };
        values.push(value);
    }
    values[n].to_biguint().expect("counts are nonnegative")
}

/// Fibonacci numbers with `F_1 = F_2 = 1`.
pub fn fibonacci(k: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Known closed forms for heights 2, 3 and 4 (for `n >= 2`).
pub fn bounded_height_closed_form(h: usize, n: usize) -> Option<BigUint> {
    if n < 2 {
        return None;
    }
    match h {
        2 => Some(BigUint::from(2u32).pow((n - 2) as u32)),
        3 => Some(fibonacci(2 * n - 3)),
        4 => Some((BigUint::from(3u32).pow((n - 2) as u32) + 1u32) / 2u32),
        _ => None,
    }
}

/// Memoized `T_h(n)` for `h <= max_h`, `n <= max_n`.
#[derive(Clone, Debug)]
pub struct BoundedHeightTable {
    rows: Vec<Vec<BigUint>>,
}

impl BoundedHeightTable {
    pub fn new(max_h: usize, max_n: usize) -> Self {
        let rows = (0..=max_h).map(|h| (0..=max_n).map(|n| bounded_height_count(h, n)).collect()).collect();
        BoundedHeightTable { rows }
    }

    pub fn get(&self, h: usize, n: usize) -> Option<&BigUint> {
        self.rows.get(h)?.get(n)
    }

    pub fn max_h(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn max_n(&self) -> usize {
        self.rows[0].len() - 1
    }
}

/// `C_{m,n}`: zag sequences of length `n + 1` whose steps lie in `[2 - m, 1]`.
pub fn modular_catalan(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    // depths after the root range over 1..=n
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[1] = BigUint::one();
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); n + 1];
        for (d, w) in ways.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            let lowest = (d + 2).saturating_sub(m).max(1);
            for slot in &mut next[lowest..=(d + 1).min(n)] {
                *slot += w;
            }
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

/// Dyck paths of semilength `n` with no factor `D^m U`, counted over states
/// (height, length of the trailing run of downs, capped at `m`).
pub fn modular_catalan_by_dyck(m: usize, n: usize) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    let mut states: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
    // (ups so far, height, trailing downs)
    states.insert((0, 0, 0), BigUint::one());
    for _ in 0..2 * n {
        let mut next: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
        for ((ups, height, run), count) in states {
            if ups < n && run < m {
                *next.entry((ups + 1, height + 1, 0)).or_default() += &count;
            }
            if height > 0 {
                *next.entry((ups, height - 1, (run + 1).min(m))).or_default() += &count;
            }
        }
        states = next;
    }
    Ok(states.into_iter().filter(|((ups, h, _), _)| *ups == n && *h == 0).map(|(_, c)| c).sum())
}

/// Spectrum of the directed path of length `len`.
pub fn path_spectrum(len: usize, n: usize) -> BigUint {
    let base = bounded_height_count(len, n);
    if n <= len + 1 {
        base
    } else {
        base + 1u32
    }
}

/// Spectrum of the directed path of length `len >= 1` with a loop on its last vertex.
pub fn path_with_loop_spectrum(len: usize, n: usize) -> Result<BigUint> {
    if len == 0 {
        return Err(Error::InvalidArgument("path length must be at least 1".into()));
    }
    Ok(bounded_height_count(len, n))
}

/// The ten digraphs on two vertices `u, v`, up to swapping them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoVertexCase {
    /// No edges.
    Empty,
    /// `{vv}`.
    OneLoop,
    /// `{uu, vv}`.
    TwoLoops,
    /// `{uv}`.
    Edge,
    /// `{uu, uv}`.
    EdgeLoopAtSource,
    /// `{uv, vv}`.
    EdgeLoopAtTarget,
    /// `{uu, uv, vv}`.
    EdgeBothLoops,
    /// `{uv, vu}`.
    TwoCycle,
    /// `{uv, vu, vv}`.
    TwoCycleOneLoop,
    /// `{uu, uv, vu, vv}`.
    Complete,
}

// edge bits: uu = 1, uv = 2, vu = 4, vv = 8
const TWO_VERTEX_MASKS: [(TwoVertexCase, u8); 10] = [
    (TwoVertexCase::Empty, 0),
    (TwoVertexCase::OneLoop, 8),
    (TwoVertexCase::TwoLoops, 9),
    (TwoVertexCase::Edge, 2),
    (TwoVertexCase::EdgeLoopAtSource, 3),
    (TwoVertexCase::EdgeLoopAtTarget, 10),
    (TwoVertexCase::EdgeBothLoops, 11),
    (TwoVertexCase::TwoCycle, 6),
    (TwoVertexCase::TwoCycleOneLoop, 14),
    (TwoVertexCase::Complete, 15),
];

impl TwoVertexCase {
    pub const ALL: [TwoVertexCase; 10] = [
        TwoVertexCase::Empty,
        TwoVertexCase::OneLoop,
        TwoVertexCase::TwoLoops,
        TwoVertexCase::Edge,
        TwoVertexCase::EdgeLoopAtSource,
        TwoVertexCase::EdgeLoopAtTarget,
        TwoVertexCase::EdgeBothLoops,
        TwoVertexCase::TwoCycle,
        TwoVertexCase::TwoCycleOneLoop,
        TwoVertexCase::Complete,
    ];

    fn mask(self) -> u8 {
        TWO_VERTEX_MASKS.iter().find(|(c, _)| *c == self).map(|(_, m)| *m).unwrap()
    }

    /// Identifies a two-vertex digraph, trying both vertex orders.
    pub fn identify(g: &Digraph) -> Result<Self> {
        if g.vertex_count() != 2 {
            return Err(Error::UnknownTwoVertexCase(format!("{} vertices", g.vertex_count())));
        }
        let bit = |u, v, b: u8| if g.has_edge(u, v) { b } else { 0 };
        let forward = bit(0, 0, 1) | bit(0, 1, 2) | bit(1, 0, 4) | bit(1, 1, 8);
        let swapped = bit(1, 1, 1) | bit(1, 0, 2) | bit(0, 1, 4) | bit(0, 0, 8);
        TWO_VERTEX_MASKS
            .iter()
            .find(|(_, m)| *m == forward || *m == swapped)
            .map(|(c, _)| *c)
            .ok_or_else(|| Error::UnknownTwoVertexCase(format!("edge mask {forward:#06b}")))
    }

    /// A representative on vertices `u = 0`, `v = 1`, labelled `u` and `v`.
    pub fn graph(self) -> Digraph {
        let mask = self.mask();
        let edges = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let present = edges.into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
        Digraph::with_labels(vec!["u".into(), "v".into()], present).expect("two-vertex graph")
    }

    pub fn edge_set(self) -> &'static str {
        match self {
            TwoVertexCase::Empty => "{}",
            TwoVertexCase::OneLoop => "{vv}",
            TwoVertexCase::TwoLoops => "{uu,vv}",
            TwoVertexCase::Edge => "{uv}",
            TwoVertexCase::EdgeLoopAtSource => "{uu,uv}",
            TwoVertexCase::EdgeLoopAtTarget => "{uv,vv}",
            TwoVertexCase::EdgeBothLoops => "{uu,uv,vv}",
            TwoVertexCase::TwoCycle => "{uv,vu}",
            TwoVertexCase::TwoCycleOneLoop => "{uv,vu,vv}",
            TwoVertexCase::Complete => "{uu,uv,vu,vv}",
        }
    }

    fn growth(self) -> Growth {
        match self {
            TwoVertexCase::Empty
            | TwoVertexCase::OneLoop
            | TwoVertexCase::TwoLoops
            | TwoVertexCase::EdgeLoopAtTarget
            | TwoVertexCase::Complete => Growth::Constant(1),
            TwoVertexCase::Edge => Growth::Constant(2),
            TwoVertexCase::EdgeLoopAtSource | TwoVertexCase::TwoCycle => Growth::PowersOfTwo,
            TwoVertexCase::EdgeBothLoops | TwoVertexCase::TwoCycleOneLoop => Growth::Catalan,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Growth {
    /// The given value from `n = 3` on.
    Constant(u32),
    PowersOfTwo,
    Catalan,
}

impl Growth {
    fn eval(self, n: usize) -> BigUint {
        if n <= 2 {
            return BigUint::one();
        }
        match self {
            Growth::Constant(c) => BigUint::from(c),
            Growth::PowersOfTwo => BigUint::from(2u32).pow((n - 2) as u32),
            Growth::Catalan => catalan(n - 1),
        }
    }

    fn formula(self) -> String {
        match self {
            Growth::Constant(c) => c.to_string(),
            Growth::PowersOfTwo => "2^(n-2)".into(),
            Growth::Catalan => "C(n-1)".into(),
        }
    }
}

/// Closed-form spectrum of a two-vertex digraph, identified up to isomorphism.
pub fn two_vertex_spectrum(g: &Digraph) -> Result<ClosedFormSpectrum> {
    Ok(ClosedFormSpectrum::TwoVertex(TwoVertexCase::identify(g)?))
}

/// The two three-vertex graphs whose spectrum is `2^(n-2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreeVertexCase {
    /// `{uv, vv, uw, ww}`.
    OutStarSinkLoops,
    /// `{uv, vv, vw, wv, ww}`.
    LoopPathTwoCycle,
}

impl ThreeVertexCase {
    pub const ALL: [ThreeVertexCase; 2] = [ThreeVertexCase::OutStarSinkLoops, ThreeVertexCase::LoopPathTwoCycle];

    pub fn graph(self) -> Digraph {
        let edges: &[(usize, usize)] = match self {
            ThreeVertexCase::OutStarSinkLoops => &[(0, 1), (1, 1), (0, 2), (2, 2)],
            ThreeVertexCase::LoopPathTwoCycle => &[(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)],
        };
        Digraph::with_labels(vec!["u".into(), "v".into(), "w".into()], edges.iter().copied())
            .expect("three-vertex graph")
    }
}

pub fn three_vertex_special_spectrum(case: ThreeVertexCase) -> ClosedFormSpectrum {
    ClosedFormSpectrum::ThreeVertex(case)
}

/// A graph family with a known spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family", content = "parameter")]
pub enum ClosedFormSpectrum {
    Path(usize),
    PathWithFinalLoop(usize),
    Cycle(usize),
    TwoVertex(TwoVertexCase),
    ThreeVertex(ThreeVertexCase),
}

impl ClosedFormSpectrum {
    /// `s_n` for `n >= 1`.
    pub fn eval(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::InvalidArgument("size must be at least 1".into()));
        }
        match *self {
            ClosedFormSpectrum::Path(len) => Ok(path_spectrum(len, n)),
            ClosedFormSpectrum::PathWithFinalLoop(len) => path_with_loop_spectrum(len, n),
            ClosedFormSpectrum::Cycle(m) => modular_catalan(m, n - 1),
            ClosedFormSpectrum::TwoVertex(case) => Ok(case.growth().eval(n)),
            ClosedFormSpectrum::ThreeVertex(_) => Ok(Growth::PowersOfTwo.eval(n)),
        }
    }

    pub fn formula(&self) -> String {
        match *self {
            ClosedFormSpectrum::Path(len) => {
                format!("T_{len}(n) for n <= {}, T_{len}(n) + 1 after", len + 1)
            }
            ClosedFormSpectrum::PathWithFinalLoop(len) => format!("T_{len}(n)"),
            ClosedFormSpectrum::Cycle(m) => format!("C_{{{m},n-1}}"),
            ClosedFormSpectrum::TwoVertex(case) => case.growth().formula(),
            ClosedFormSpectrum::ThreeVertex(_) => Growth::PowersOfTwo.formula(),
        }
    }

    /// A graph of this family.
    pub fn graph(&self) -> Result<Digraph> {
        match *self {
            ClosedFormSpectrum::Path(len) => Ok(Digraph::path(len)),
            ClosedFormSpectrum::PathWithFinalLoop(0) => {
                Err(Error::InvalidArgument("path length must be at least 1".into()))
            }
            ClosedFormSpectrum::PathWithFinalLoop(len) => Ok(Digraph::path_with_final_loop(len)),
            ClosedFormSpectrum::Cycle(0) => Err(Error::InvalidArgument("cycle length must be at least 1".into())),
            ClosedFormSpectrum::Cycle(m) => Ok(Digraph::cycle(m)),
            ClosedFormSpectrum::TwoVertex(case) => Ok(case.graph()),
            ClosedFormSpectrum::ThreeVertex(case) => Ok(case.graph()),
        }
    }
}

impl fmt::Display for ClosedFormSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedFormSpectrum::Path(len) => write!(f, "path({len})"),
            ClosedFormSpectrum::PathWithFinalLoop(len) => write!(f, "path-with-final-loop({len})"),
            ClosedFormSpectrum::Cycle(m) => write!(f, "cycle({m})"),
            ClosedFormSpectrum::TwoVertex(case) => write!(f, "two-vertex{}", case.edge_set()),
            ClosedFormSpectrum::ThreeVertex(ThreeVertexCase::OutStarSinkLoops) => {
                f.write_str("three-vertex{uv,vv,uw,ww}")
            }
            ClosedFormSpectrum::ThreeVertex(ThreeVertexCase::LoopPathTwoCycle) => {
                f.write_str("three-vertex{uv,vv,vw,wv,ww}")
            }
        }
    }
}

/// Number of classes of trees of size `n` that agree up to level `h`.
pub fn level_equivalence_count(h: usize, n: usize) -> BigUint {
    bounded_height_count(h + 1, n)
}

/// Replaces every depth above `h + 1` by `h + 1`.
pub fn truncate_zag(zag: &ZagSequence, h: u32) -> ZagSequence {
    ZagSequence::new(zag.as_slice().iter().map(|&d| d.min(h + 1)).collect()).expect("truncation keeps the zag shape")
}

/// Makes every descendant of a depth-`h` vertex a child of that vertex.
pub fn truncate_tree(tree: &DfsTree, h: u32) -> DfsTree {
    let parents: Vec<usize> = (1..tree.len())
        .map(|v| {
            let mut p = tree.parent(v).expect("non-root");
            while tree.depth(p) > h {
                p = tree.parent(p).expect("depth above zero");
            }
            p + 1
        })
        .collect();
    DfsTree::from_parents(&parents).expect("truncation keeps the DFS shape")
}
