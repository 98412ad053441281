//! Finite digraphs and the structural analyses the classification needs:
//! strongly connected components, whirl certificates, pleasant paths and
//! the shapes of undirected components.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite digraph with labelled vertices. Loops are allowed; the edge
/// relation is a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    adjacency: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    /// Vertices are labelled by their indices.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("a digraph needs at least one vertex".into()));
        }
        let mut seen = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(label.as_str(), i) {
                return Err(Error::InvalidGraph(format!("label '{label}' used by vertices {j} and {i}")));
            }
        }
        let mut adjacency = vec![false; n * n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if adjacency[u * n + v] {
                log::warn!("duplicate edge ({}, {}) ignored", labels[u], labels[v]);
            }
            adjacency[u * n + v] = true;
        }
        let out = (0..n).map(|u| (0..n).filter(|&v| adjacency[u * n + v]).collect()).collect();
        Ok(Digraph { labels, adjacency, out })
    }

    /// The directed cycle `0 -> 1 -> ... -> m-1 -> 0`; `cycle(1)` is a loop.
    pub fn cycle(m: usize) -> Self {
        Self::from_edges(m, (0..m).map(|i| (i, (i + 1) % m))).expect("valid cycle")
    }

    /// The directed path `0 -> 1 -> ... -> len`.
    pub fn path(len: usize) -> Self {
        Self::from_edges(len + 1, (0..len).map(|i| (i, i + 1))).expect("valid path")
    }

    /// The directed path of length `len` with a loop on its last vertex.
    pub fn path_with_final_loop(len: usize) -> Self {
        Self::from_edges(len + 1, (0..len).map(|i| (i, i + 1)).chain([(len, len)])).expect("valid path")
    }

    pub fn complete_with_loops(k: usize) -> Self {
        Self::from_edges(k, (0..k).flat_map(|u| (0..k).map(move |v| (u, v)))).expect("valid complete graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u * self.vertex_count() + v]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Outneighbours of `u`, increasing.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(u, v)| self.has_edge(v, u))
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges: Vec<_> = vertices
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| {
                vertices.iter().enumerate().filter(move |&(_, &v)| self.has_edge(u, v)).map(move |(j, _)| (i, j))
            })
            .collect();
        Digraph::with_labels(labels, edges).expect("induced subgraph of a valid graph")
    }
}

/// Renders the edge-list format accepted by [`parse_digraph`].
impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut mentioned = vec![false; self.vertex_count()];
        for (u, v) in self.edges() {
            mentioned[u] = true;
            mentioned[v] = true;
        }
        for (v, _) in mentioned.iter().enumerate().filter(|(_, m)| !**m) {
            writeln!(f, "{}", self.labels[v])?;
        }
        for (u, v) in self.edges() {
            writeln!(f, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}

/// Parses the edge-list format: one `from to` pair per line, a lone label
/// declares a vertex, `#` starts a comment. Vertices are numbered in order of
/// first appearance; duplicate edges are dropped with a warning.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() - 1
        })
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                intern(v, &mut labels);
            }
            [u, v] => {
                let u = intern(u, &mut labels);
                let v = intern(v, &mut labels);
                edges.push((u, v));
            }
            _ => {
                return Err(Error::GraphSyntax {
                    line: lineno + 1,
                    message: format!("expected 'label' or 'label label', got {} fields", tokens.len()),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::GraphSyntax { line: 0, message: "no vertices".into() });
    }
    Digraph::with_labels(labels, edges)
}

/// Strongly connected components with triviality flags and reachability
/// between components.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    component: Vec<usize>,
    members: Vec<Vec<usize>>,
    nontrivial: Vec<bool>,
    reach: Vec<Vec<bool>>,
}

impl SccDecomposition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Component vertex sets, numbered by smallest member.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A component is trivial when it is a single vertex without a loop.
    pub fn is_nontrivial(&self, c: usize) -> bool {
        self.nontrivial[c]
    }

    pub fn nontrivial_components(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.nontrivial[c]).collect()
    }

    /// Whether some walk leads from component `a` to component `b` (reflexive).
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }
}

/// Kosaraju's algorithm, iterative.
pub fn scc(g: &Digraph) -> SccDecomposition {
    let n = g.vertex_count();
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        reverse[v].push(u);
    }

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&v) = g.out_neighbors(u).get(*next) {
                *next += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }

    let mut raw = vec![usize::MAX; n];
    let mut count = 0;
    for &root in order.iter().rev() {
        if raw[root] != usize::MAX {
            continue;
        }
        raw[root] = count;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &reverse[u] {
                if raw[v] == usize::MAX {
                    raw[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }

    // renumber by smallest member
    let mut renumber = vec![usize::MAX; count];
    let mut next = 0;
    for v in 0..n {
        if renumber[raw[v]] == usize::MAX {
            renumber[raw[v]] = next;
            next += 1;
        }
    }
    let component: Vec<usize> = raw.iter().map(|&c| renumber[c]).collect();
    let mut members = vec![Vec::new(); count];
    for v in 0..n {
        members[component[v]].push(v);
    }
    let nontrivial = members.iter().map(|m| m.len() > 1 || g.has_loop(m[0])).collect();

    let mut successors = vec![Vec::new(); count];
    for (u, v) in g.edges() {
        let (a, b) = (component[u], component[v]);
        if a != b {
            successors[a].push(b);
        }
    }
    let reach = (0..count)
        .map(|a| {
            let mut seen = vec![false; count];
            seen[a] = true;
            let mut queue = VecDeque::from([a]);
            while let Some(c) = queue.pop_front() {
                for &d in &successors[c] {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
            seen
        })
        .collect();

    SccDecomposition { component, members, nontrivial, reach }
}

/// Block assignment exhibiting a vertex set as an `m`-whirl: edges run
/// exactly from each block to the next one, cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhirlCert {
    pub m: usize,
    pub vertices: Vec<usize>,
    /// `block[i]` is the block of `vertices[i]`, in `0..m`.
    pub block: Vec<usize>,
}

impl WhirlCert {
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.m];
        for (&v, &b) in self.vertices.iter().zip(&self.block) {
            blocks[b].push(v);
        }
        blocks
    }

    /// Rechecks the block edge condition over every ordered pair.
    pub fn verify(&self, g: &Digraph) -> bool {
        let nonempty = self.blocks().iter().all(|b| !b.is_empty());
        nonempty
            && self.vertices.iter().zip(&self.block).all(|(&x, &bx)| {
                self.vertices.iter().zip(&self.block).all(|(&y, &by)| g.has_edge(x, y) == (by == (bx + 1) % self.m))
            })
    }
}

fn bfs_within(g: &Digraph, inside: &[bool], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.out_neighbors(u) {
            if inside[v] && dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Length of a shortest cycle inside the subgraph induced by `vertices`.
pub fn shortest_cycle(g: &Digraph, vertices: &[usize]) -> Option<usize> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in vertices {
        inside[v] = true;
    }
    let mut best: Option<usize> = None;
    for &v in vertices {
        let dist = bfs_within(g, &inside, v);
        for &u in vertices {
            if let Some(d) = dist[u] {
                if g.has_edge(u, v) {
                    best = Some(best.map_or(d + 1, |b| b.min(d + 1)));
                }
            }
        }
    }
    best
}

/// Certifies the strongly connected vertex set `component` as a whirl.
///
/// Uses `m` = shortest cycle length and blocks = BFS distance from the first
/// vertex mod `m`, then verifies the edge condition on every pair. A whirl's
/// block structure is forced once one vertex is placed, so a failed check
/// means no certificate exists.
pub fn whirl_certificate(g: &Digraph, component: &[usize]) -> Result<Option<WhirlCert>> {
    match component {
        [] => return Err(Error::InvalidArgument("empty component".into())),
        [v] if !g.has_loop(*v) => return Err(Error::TrivialComponent(*v)),
        _ => {}
    }
    let Some(m) = shortest_cycle(g, component) else {
        return Ok(None);
    };
    let mut inside = vec![false; g.vertex_count()];
    for &v in component {
        inside[v] = true;
    }
    let dist = bfs_within(g, &inside, component[0]);
    let mut block = Vec::with_capacity(component.len());
    for &v in component {
        match dist[v] {
            Some(d) => block.push(d % m),
            None => return Ok(None),
        }
    }
    let cert = WhirlCert { m, vertices: component.to_vec(), block };
    Ok(cert.verify(g).then_some(cert))
}

/// Vertices lying in trivial strongly connected components.
pub fn pleasant_vertices(g: &Digraph, sccs: &SccDecomposition) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| !sccs.is_nontrivial(sccs.component_of(v))).collect()
}

/// Longest path (in edges) through pleasant vertices only, or -1 when there
/// are none. The pleasant subgraph is acyclic, so this is a DAG longest path.
pub fn longest_pleasant_path(g: &Digraph) -> i64 {
    let sccs = scc(g);
    let pleasant = pleasant_vertices(g, &sccs);
    if pleasant.is_empty() {
        return -1;
    }
    let mut is_pleasant = vec![false; g.vertex_count()];
    for &v in &pleasant {
        is_pleasant[v] = true;
    }
    let mut indegree = vec![0usize; g.vertex_count()];
    for &u in &pleasant {
        for &v in g.out_neighbors(u) {
            if is_pleasant[v] {
                indegree[v] += 1;
            }
        }
    }
    let mut longest = vec![0i64; g.vertex_count()];
    let mut queue: VecDeque<usize> = pleasant.iter().copied().filter(|&v| indegree[v] == 0).collect();
    let mut processed = 0;
    let mut best = 0;
    while let Some(u) = queue.pop_front() {
        processed += 1;
        best = best.max(longest[u]);
        for &v in g.out_neighbors(u) {
            if is_pleasant[v] {
                longest[v] = longest[v].max(longest[u] + 1);
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
    }
    debug_assert_eq!(processed, pleasant.len(), "pleasant subgraph has a cycle");
    best
}

/// Whether a nontrivial strongly connected component reaches a different one.
pub fn has_inter_scc_path(g: &Digraph) -> bool {
    let sccs = scc(g);
    let nontrivial = sccs.nontrivial_components();
    nontrivial.iter().any(|&a| nontrivial.iter().any(|&b| a != b && sccs.reaches(a, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Trivial,
    CompleteWithLoops,
    CompleteBipartite,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentShape {
    pub vertices: Vec<usize>,
    pub shape: Shape,
}

fn require_symmetric(g: &Digraph) -> Result<()> {
    match g.edges().find(|&(u, v)| !g.has_edge(v, u)) {
        Some((u, v)) => Err(Error::Asymmetric { from: g.label(u).into(), to: g.label(v).into() }),
        None => Ok(()),
    }
}

/// Shape of each connected component of an undirected graph.
pub fn undirected_shape(g: &Digraph) -> Result<Vec<ComponentShape>> {
    require_symmetric(g)?;
    let sccs = scc(g);
    Ok(sccs
        .components()
        .iter()
        .map(|vs| ComponentShape { vertices: vs.clone(), shape: component_shape(g, vs) })
        .collect())
}

fn component_shape(g: &Digraph, vs: &[usize]) -> Shape {
    if vs.len() == 1 && !g.has_loop(vs[0]) {
        return Shape::Trivial;
    }
    if vs.iter().all(|&u| vs.iter().all(|&v| g.has_edge(u, v))) {
        return Shape::CompleteWithLoops;
    }
    if vs.iter().any(|&v| g.has_loop(v)) {
        return Shape::Other;
    }
    let mut side = vec![None; g.vertex_count()];
    side[vs[0]] = Some(false);
    let mut queue = VecDeque::from([vs[0]]);
    while let Some(u) = queue.pop_front() {
        let su = side[u].unwrap();
        for &v in g.out_neighbors(u) {
            match side[v] {
                None => {
                    side[v] = Some(!su);
                    queue.push_back(v);
                }
                Some(sv) if sv == su => return Shape::Other,
                Some(_) => {}
            }
        }
    }
    let complete = vs.iter().all(|&u| vs.iter().all(|&v| (side[u] != side[v]) == g.has_edge(u, v)));
    if complete {
        Shape::CompleteBipartite
    } else {
        Shape::Other
    }
}
