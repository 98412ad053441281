//! Associative spectra: how many distinct term operations the bracketings of
//! each size induce, computed by grouping DFS trees with equal homomorphism
//! sets, and independently by comparing full value tables.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{eval_bracketing, homomorphisms, AlgebraElement, HomSet, DEFAULT_MAX_HOMS};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::trees::{
    all_bracketings, bracketing_to_dfs, catalan, depth_sequence, enumerate_dfs_trees, DfsTree, ZagSequence,
    DEFAULT_MAX_TREES,
};

/// Default cap on term evaluations for the value-table oracle.
pub const DEFAULT_MAX_ORACLE: u64 = 50_000_000;

/// Explosion guards shared by every spectrum computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_trees: u64,
    pub max_homs: u64,
    pub max_oracle: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_trees: DEFAULT_MAX_TREES, max_homs: DEFAULT_MAX_HOMS, max_oracle: DEFAULT_MAX_ORACLE }
    }
}

/// Digest of a homomorphism set: 128 bits of SHA-256 over the sorted image
/// vectors, plus the exact cardinality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomSignature {
    digest: [u8; 16],
    size: u64,
}

impl HomSignature {
    pub fn of(homs: &HomSet) -> Self {
        let mut hasher = Sha256::new();
        hasher.update((homs.tree_size() as u64).to_le_bytes());
        hasher.update((homs.len() as u64).to_le_bytes());
        for &v in homs.as_flat() {
            hasher.update(v.to_le_bytes());
        }
        let full = hasher.finalize();
        let mut digest = [0u8; 16];
        digest.copy_from_slice(&full[..16]);
        HomSignature { digest, size: homs.len() as u64 }
    }

    pub fn size(&self) -> u64 {
        self.size
    }
}

/// One block of the fine spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineClass {
    /// Trees in lexicographic order of depth sequences; the first is the representative.
    pub members: Vec<DfsTree>,
    /// Number of homomorphisms each member has into the graph.
    pub hom_count: u64,
}

impl FineClass {
    pub fn representative(&self) -> &DfsTree {
        &self.members[0]
    }
}

struct ClassSlot {
    homs: HomSet,
    index: usize,
}

/// Streams the trees of size `n`, grouping them by homomorphism set. Classes
/// come out ordered by their least depth sequence. Only one hom set per class
/// is retained; digest matches are confirmed by full comparison.
fn partition_by_homs(g: &Digraph, n: usize, budget: Budget, keep_members: bool) -> Result<Vec<FineClass>> {
    let mut slots: HashMap<HomSignature, Vec<ClassSlot>> = HashMap::new();
    let mut classes: Vec<FineClass> = Vec::new();
    for tree in enumerate_dfs_trees(n, budget.max_trees)? {
        let homs = homomorphisms(&tree, g, budget.max_homs)?;
        let signature = HomSignature::of(&homs);
        let bucket = slots.entry(signature).or_default();
        match bucket.iter().find(|slot| slot.homs == homs) {
            Some(slot) => {
                if keep_members {
                    classes[slot.index].members.push(tree);
                }
            }
            None => {
                if !bucket.is_empty() {
                    log::warn!("hom signature collision at size {n}");
                }
                bucket.push(ClassSlot { homs, index: classes.len() });
                classes.push(FineClass { members: vec![tree], hom_count: signature.size });
            }
        }
    }
    Ok(classes)
}

/// Partition of all trees of size `n` into classes with equal hom sets.
pub fn fine_spectrum(g: &Digraph, n: usize, budget: Budget) -> Result<Vec<FineClass>> {
    partition_by_homs(g, n, budget, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    HomSignature,
    TermTable,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub n: usize,
    pub s_n: u64,
    /// Least depth sequence of each class, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ZagSequence>>,
    pub method: Method,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SpectrumResult {
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumResult {
    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.s_n).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,s_n,method\n");
        for e in &self.entries {
            let method = match e.method {
                Method::HomSignature => "hom-signature",
                Method::TermTable => "term-table",
                Method::ClosedForm => "closed-form",
            };
            let _ = writeln!(out, "{},{},{}", e.n, e.s_n, method);
        }
        out
    }
}

fn collect_spectrum(max_n: usize, mut entry: impl FnMut(usize) -> Result<SpectrumEntry>) -> Result<SpectrumResult> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("spectrum length must be at least 1".into()));
    }
    let mut result = SpectrumResult::default();
    for n in 1..=max_n {
        match entry(n) {
            Ok(e) => result.entries.push(e),
            Err(source) => return Err(Error::SpectrumIncomplete { completed: n - 1, source: Box::new(source) }),
        }
    }
    Ok(result)
}

/// `s_1, ..., s_max_n` by hom-signature classes, with class representatives.
pub fn spectrum(g: &Digraph, max_n: usize, budget: Budget) -> Result<SpectrumResult> {
    collect_spectrum(max_n, |n| {
        let classes = partition_by_homs(g, n, budget, false)?;
        Ok(SpectrumEntry {
            n,
            s_n: classes.len() as u64,
            classes: Some(classes.iter().map(|c| depth_sequence(c.representative())).collect()),
            method: Method::HomSignature,
        })
    })
}

/// Every assignment of `V ∪ {∞}` to `n` variables, in mixed-radix order.
fn assignments(vertex_count: usize, n: usize) -> impl Iterator<Item = Vec<AlgebraElement>> {
    let base = vertex_count + 1;
    let element = move |digit: usize| {
        if digit == vertex_count {
            AlgebraElement::Infinity
        } else {
            AlgebraElement::Vertex(digit)
        }
    };
    let mut digits = Some(vec![0usize; n]);
    std::iter::from_fn(move || {
        let current = digits.take()?;
        let out = current.iter().map(|&d| element(d)).collect();
        let mut next = current;
        if let Some(i) = (0..n).rev().find(|&i| next[i] + 1 < base) {
            next[i] += 1;
            for d in &mut next[i + 1..] {
                *d = 0;
            }
            digits = Some(next);
        }
        Some(out)
    })
}

fn oracle_work(g: &Digraph, n: usize, cap: u64) -> Result<()> {
    let work = catalan(n - 1) * BigUint::from(g.vertex_count() + 1).pow(n as u32);
    if work.to_u64().is_none_or(|w| w > cap) {
        return Err(Error::OracleBudget { work: work.to_string(), cap });
    }
    Ok(())
}

/// Value tables of all bracketings of size `n`, grouped: each group lists the
/// bracketings (as trees) sharing one table.
fn term_table_groups(g: &Digraph, n: usize, budget: Budget) -> Result<Vec<Vec<DfsTree>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("size must be at least 1".into()));
    }
    oracle_work(g, n, budget.max_oracle)?;
    let inputs: Vec<Vec<AlgebraElement>> = assignments(g.vertex_count(), n).collect();
    let mut groups: HashMap<Vec<AlgebraElement>, Vec<DfsTree>> = HashMap::new();
    for t in all_bracketings(n) {
        let table = inputs.iter().map(|a| eval_bracketing(g, &t, a)).collect();
        groups.entry(table).or_default().push(bracketing_to_dfs(&t));
    }
    let mut groups: Vec<Vec<DfsTree>> = groups.into_values().collect();
    for group in &mut groups {
        group.sort();
    }
    groups.sort();
    Ok(groups)
}

/// Number of distinct term operations of size `n`, found by evaluating every
/// bracketing on every assignment. Independent of the homomorphism machinery.
pub fn spectrum_via_term_tables(g: &Digraph, n: usize, budget: Budget) -> Result<u64> {
    Ok(term_table_groups(g, n, budget)?.len() as u64)
}

/// `s_1, ..., s_max_n` by the value-table oracle.
pub fn term_table_spectrum(g: &Digraph, max_n: usize, budget: Budget) -> Result<SpectrumResult> {
    collect_spectrum(max_n, |n| {
        let groups = term_table_groups(g, n, budget)?;
        Ok(SpectrumEntry {
            n,
            s_n: groups.len() as u64,
            classes: Some(groups.iter().map(|grp| depth_sequence(&grp[0])).collect()),
            method: Method::TermTable,
        })
    })
}

/// Partition of the trees of size `n` by `key`, classes ordered by least member.
pub fn classes_by_key<K: Hash + Eq>(
    n: usize,
    max_trees: u64,
    key: impl Fn(&DfsTree) -> K,
) -> Result<Vec<Vec<DfsTree>>> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<DfsTree>> = Vec::new();
    for tree in enumerate_dfs_trees(n, max_trees)? {
        let k = key(&tree);
        match index.get(&k) {
            Some(&i) => classes[i].push(tree),
            None => {
                index.insert(k, classes.len());
                classes.push(vec![tree]);
            }
        }
    }
    Ok(classes)
}

fn count_keys<K: Hash + Eq>(n: usize, max_trees: u64, key: impl Fn(&DfsTree) -> K) -> Result<u64> {
    let keys: HashSet<K> = enumerate_dfs_trees(n, max_trees)?.map(|t| key(&t)).collect();
    Ok(keys.len() as u64)
}

fn parity_key(t: &DfsTree) -> Vec<u32> {
    t.depths().iter().map(|d| d % 2).collect()
}

/// Trees of size `n` grouped by depth sequence modulo 2.
pub fn parity_classes(n: usize, max_trees: u64) -> Result<Vec<Vec<DfsTree>>> {
    classes_by_key(n, max_trees, parity_key)
}

pub fn parity_class_count(n: usize, max_trees: u64) -> Result<u64> {
    count_keys(n, max_trees, parity_key)
}

/// Trees of size `n` grouped by leaf set.
pub fn leaf_classes(n: usize, max_trees: u64) -> Result<Vec<Vec<DfsTree>>> {
    classes_by_key(n, max_trees, DfsTree::leaves)
}

pub fn leaf_equivalence_count(n: usize, max_trees: u64) -> Result<u64> {
    count_keys(n, max_trees, DfsTree::leaves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zags(classes: &[Vec<DfsTree>]) -> Vec<Vec<String>> {
        classes.iter().map(|c| c.iter().map(|t| depth_sequence(t).to_string()).collect()).collect()
    }

    fn fine_zags(g: &Digraph, n: usize) -> Vec<Vec<String>> {
        let classes: Vec<Vec<DfsTree>> =
            fine_spectrum(g, n, Budget::default()).unwrap().into_iter().map(|c| c.members).collect();
        zags(&classes)
    }

    #[test]
    fn fine_examples() {
        let k2 = Digraph::complete_with_loops(2);
        let classes = fine_spectrum(&k2, 4, Budget::default()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), 5);
        assert_eq!(classes[0].hom_count, 16);

        assert_eq!(
            fine_zags(&Digraph::cycle(2), 4),
            vec![vec!["0,1,1,1"], vec!["0,1,1,2"], vec!["0,1,2,1", "0,1,2,3"], vec!["0,1,2,2"]]
        );
        let edge = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(fine_zags(&edge, 3), vec![vec!["0,1,1"], vec!["0,1,2"]]);
    }

    #[test]
    fn spectrum_examples() {
        let b = Budget::default();
        assert_eq!(spectrum(&Digraph::path(1), 5, b).unwrap().counts(), vec![1, 1, 2, 2, 2]);
        assert_eq!(spectrum(&Digraph::cycle(2), 6, b).unwrap().counts(), vec![1, 1, 2, 4, 8, 16]);
        let g = Digraph::from_edges(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(spectrum(&g, 5, b).unwrap().counts(), vec![1, 1, 2, 5, 14]);
    }

    #[test]
    fn representatives_are_least() {
        let s = spectrum(&Digraph::cycle(2), 4, Budget::default()).unwrap();
        let reps: Vec<String> = s.entries[3].classes.as_ref().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(reps, vec!["0,1,1,1", "0,1,1,2", "0,1,2,1", "0,1,2,2"]);
    }

    #[test]
    fn term_table_examples() {
        let b = Budget::default();
        let edge = Digraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(spectrum_via_term_tables(&edge, 3, b).unwrap(), 2);
        assert_eq!(spectrum_via_term_tables(&Digraph::cycle(1), 4, b).unwrap(), 1);
        assert_eq!(spectrum_via_term_tables(&Digraph::cycle(2), 4, b).unwrap(), 4);
        let t = term_table_spectrum(&Digraph::cycle(2), 5, b).unwrap();
        let h = spectrum(&Digraph::cycle(2), 5, b).unwrap();
        assert_eq!(t.counts(), h.counts());
        assert_eq!(t.entries[4].classes, h.entries[4].classes);
    }

    #[test]
    fn budgets_report_progress() {
        let tight = Budget { max_trees: 14, ..Budget::default() };
        match spectrum(&Digraph::cycle(2), 7, tight) {
            Err(Error::SpectrumIncomplete { completed: 5, source }) => {
                assert!(matches!(*source, Error::TreeBudget { n: 6, .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
        let tight = Budget { max_homs: 3, ..Budget::default() };
        let err = spectrum(&Digraph::complete_with_loops(2), 3, tight).unwrap_err();
        assert!(err.is_budget());
        let tight = Budget { max_oracle: 100, ..Budget::default() };
        assert!(matches!(spectrum_via_term_tables(&Digraph::cycle(2), 4, tight), Err(Error::OracleBudget { .. })));
        assert!(spectrum(&Digraph::cycle(2), 0, Budget::default()).is_err());
    }

    #[test]
    fn parity_and_leaf_examples() {
        assert_eq!(parity_class_count(2, 100).unwrap(), 1);
        assert_eq!(parity_class_count(3, 100).unwrap(), 2);
        assert_eq!(parity_class_count(4, 100).unwrap(), 4);
        assert_eq!(leaf_equivalence_count(2, 100).unwrap(), 1);
        assert_eq!(leaf_equivalence_count(4, 100).unwrap(), 4);
        assert_eq!(zags(&leaf_classes(3, 100).unwrap()), vec![vec!["0,1,1"], vec!["0,1,2"]]);
        for n in 2..=8 {
            for class in leaf_classes(n, 10_000).unwrap() {
                let leaves = class[0].leaves();
                assert!(leaves.contains(&(n - 1)));
                assert!(!leaves.contains(&0));
            }
        }
    }

    #[test]
    fn assignments_cover_everything() {
        let all: Vec<_> = assignments(2, 3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 27);
        assert_eq!(all[0], vec![AlgebraElement::Vertex(0); 3]);
        assert_eq!(all[26], vec![AlgebraElement::Infinity; 3]);
    }

    #[test]
    fn csv_output() {
        let s = spectrum(&Digraph::path(1), 3, Budget::default()).unwrap();
        assert_eq!(s.to_csv(), "n,s_n,method\n1,1,hom-signature\n2,1,hom-signature\n3,2,hom-signature\n");
    }
}
