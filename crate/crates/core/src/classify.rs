//! Decision procedures: associativity, the undirected trichotomy, tree-pair
//! parameters and antiassociativity with a witness identity.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::satisfies_identity;
use crate::digraph::whirl_certificate;
use crate::digraph::{longest_pleasant_path, scc, undirected_shape, ComponentShape, Digraph, Shape, WhirlCert};
use crate::error::{Error, Result};
use crate::trees::{catalan, dfs_to_bracketing, Bracketing, DfsTree};

/// Associativity: for every edge `(u, v)`, `u` and `v` have the same outneighbours.
pub fn is_associative(g: &Digraph) -> bool {
    g.edges().all(|(u, v)| g.out_neighbors(u) == g.out_neighbors(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UndirectedKind {
    Constant1,
    PowersOfTwo,
    Catalan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndirectedClass {
    pub kind: UndirectedKind,
    pub components: Vec<ComponentShape>,
}

impl UndirectedClass {
    /// The spectrum value `s_n` this class forces.
    pub fn predicted(&self, n: usize) -> BigUint {
        match self.kind {
            UndirectedKind::Constant1 => BigUint::from(1u32),
            UndirectedKind::PowersOfTwo => BigUint::from(2u32).pow(n.saturating_sub(2) as u32),
            UndirectedKind::Catalan => catalan(n.saturating_sub(1)),
        }
    }
}

pub fn classify_undirected(g: &Digraph) -> Result<UndirectedClass> {
    let components = undirected_shape(g)?;
    let shapes = || components.iter().map(|c| c.shape);
    let kind = if shapes().all(|s| matches!(s, Shape::Trivial | Shape::CompleteWithLoops)) {
        UndirectedKind::Constant1
    } else if shapes().all(|s| s != Shape::Other) {
        UndirectedKind::PowersOfTwo
    } else {
        UndirectedKind::Catalan
    };
    Ok(UndirectedClass { kind, components })
}

/// Parameters of a pair of distinct trees of equal size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreePairParams {
    /// Smaller of the two heights.
    pub h: u32,
    /// Largest modulus to which the depth sequences are congruent.
    pub m: u32,
    /// Largest level up to which both trees agree.
    pub l: u32,
}

pub fn tree_pair_params(t: &DfsTree, u: &DfsTree) -> Result<TreePairParams> {
    if t.len() != u.len() {
        return Err(Error::SizeMismatch { left: t.len(), right: u.len() });
    }
    if t == u {
        return Err(Error::IdenticalTrees);
    }
    let h = t.height().min(u.height());
    let pairs = || t.depths().iter().zip(u.depths()).filter(|(a, b)| a != b);
    let m = pairs().fold(0u32, |acc, (&a, &b)| acc.gcd(&a.abs_diff(b)));
    // level k is safe while every vertex at depth <= k in either tree has equal depths
    let l = pairs().map(|(&a, &b)| a.min(b)).min().expect("distinct trees differ somewhere") - 1;
    Ok(TreePairParams { h, m, l })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentEvidence {
    pub vertices: Vec<String>,
    /// Present when the component is a whirl.
    pub whirl: Option<WhirlCert>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// Every nontrivial strongly connected component is a whirl.
    pub components_are_whirls: bool,
    /// No nontrivial component reaches another.
    pub no_path_between_components: bool,
    /// Pleasant paths have bounded length (always true for finite graphs).
    pub pleasant_paths_bounded: bool,
    /// Whirl sizes are bounded (always true for finite graphs).
    pub whirl_sizes_bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub size: usize,
    pub left: Bracketing,
    pub right: Bracketing,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntiassocReport {
    pub antiassociative: bool,
    pub conditions: Conditions,
    pub components: Vec<ComponentEvidence>,
    pub longest_pleasant_path: i64,
    /// Pleasant path bound used by the witness, `max(0, longest_pleasant_path)`.
    pub p: usize,
    /// Least common multiple of the whirl sizes (1 when there are none).
    pub m: u64,
    pub witness: Option<Witness>,
}

struct Structure {
    components: Vec<ComponentEvidence>,
    conditions: Conditions,
    longest: i64,
    p: usize,
    m: u64,
}

fn analyse(g: &Digraph) -> Structure {
    let sccs = scc(g);
    let nontrivial = sccs.nontrivial_components();
    let components: Vec<ComponentEvidence> = nontrivial
        .iter()
        .map(|&c| {
            let vertices = &sccs.components()[c];
            ComponentEvidence {
                vertices: vertices.iter().map(|&v| g.label(v).to_string()).collect(),
                whirl: whirl_certificate(g, vertices).expect("nontrivial component"),
            }
        })
        .collect();
    let no_path = nontrivial.iter().all(|&a| nontrivial.iter().all(|&b| a == b || !sccs.reaches(a, b)));
    let longest = longest_pleasant_path(g);
    let m = components.iter().filter_map(|c| c.whirl.as_ref()).fold(1u64, |acc, w| acc.lcm(&(w.m as u64)));
    Structure {
        conditions: Conditions {
            components_are_whirls: components.iter().all(|c| c.whirl.is_some()),
            no_path_between_components: no_path,
            pleasant_paths_bounded: true,
            whirl_sizes_bounded: true,
        },
        components,
        longest,
        p: longest.max(0) as usize,
        m,
    }
}

/// The pair of trees from the sufficiency construction: two chains joined by
/// an edge leaving the first chain at `x{P+2}` on one side and `x{P+M+2}` on
/// the other.
fn witness_trees(p: usize, m: usize) -> (DfsTree, DfsTree) {
    let first_chain = 2 * p + m + 4;
    let n = 3 * p + m + 6;
    let build = |attach: usize| {
        let parents: Vec<usize> = (2..=n).map(|j| if j == first_chain + 1 { attach } else { j - 1 }).collect();
        DfsTree::from_parents(&parents).expect("witness trees are DFS trees")
    };
    (build(p + 2), build(p + m + 2))
}

/// A nontrivial bracketing identity satisfied by `g`, or an error when `g`
/// is antiassociative.
pub fn witness_identity(g: &Digraph) -> Result<(Bracketing, Bracketing)> {
    let s = analyse(g);
    if !(s.conditions.components_are_whirls && s.conditions.no_path_between_components) {
        return Err(Error::Antiassociative);
    }
    let m = usize::try_from(s.m).map_err(|_| Error::InvalidArgument("whirl sizes overflow".into()))?;
    let (t, u) = witness_trees(s.p, m);
    Ok((dfs_to_bracketing(&t), dfs_to_bracketing(&u)))
}

/// Decides antiassociativity. When some identity holds, the witness is
/// attached and checked against the homomorphism criterion.
pub fn is_antiassociative(g: &Digraph, max_homs: u64) -> Result<AntiassocReport> {
    let s = analyse(g);
    let antiassociative = !(s.conditions.components_are_whirls && s.conditions.no_path_between_components);
    let witness = if antiassociative {
        None
    } else {
        let (left, right) = witness_identity(g)?;
        let verified = satisfies_identity(g, &left, &right, max_homs)?;
        if !verified {
            log::error!("witness identity {left} = {right} fails in the graph");
        }
        Some(Witness { size: left.size(), left, right, verified })
    };
    Ok(AntiassocReport {
        antiassociative,
        conditions: s.conditions,
        components: s.components,
        longest_pleasant_path: s.longest,
        p: s.p,
        m: s.m,
        witness,
    })
}
