//! Finite graph algorithms with verifiable certificates: chordality via
//! maximum cardinality search, perfect elimination ordering checks, chordless
//! cycle extraction, graph powers, BFS distances and maximal cliques.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, ExecMode};

/// Finite simple graph; symmetric, irreflexive edge set. Neighbor lists are
/// kept sorted so traversals are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                v: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(Error::PreconditionViolation("self-loop".into()));
        }
        if !self.has_edge(u, v) {
            let pos = self.adj[u].binary_search(&v).unwrap_err();
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Sorted (i, j) pairs with i < j.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distances from `v`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphWire {
            n: self.n,
            edges: self.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = GraphWire::deserialize(d)?;
        let edges: Vec<(usize, usize)> = wire.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(wire.n, &edges).map_err(serde::de::Error::custom)
    }
}

/// Verifiable outcome of the chordality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum ChordalityCertificate {
    /// Perfect elimination ordering: each vertex's later neighbors form a
    /// clique.
    Peo { ordering: Vec<usize> },
    /// Cycle of length >= 4 with no chord.
    ChordlessCycle { cycle: Vec<usize> },
}

impl ChordalityCertificate {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalityCertificate::Peo { .. })
    }
}

/// Chordality test with certificate: a PEO from maximum cardinality search
/// when chordal, otherwise a verified chordless cycle. MCS breaks ties by
/// lowest vertex index, so certificates are deterministic.
pub fn is_chordal(g: &Graph) -> ChordalityCertificate {
    let order = mcs_order(g);
    let peo: Vec<usize> = order.iter().rev().copied().collect();
    if verify_peo(g, &peo) {
        return ChordalityCertificate::Peo { ordering: peo };
    }
    let cycle = extract_chordless_cycle(g, &peo)
        .expect("PEO check failed, so the graph is not chordal and a cycle exists");
    debug_assert!(verify_chordless_cycle(g, &cycle));
    ChordalityCertificate::ChordlessCycle { cycle }
}

/// MCS visit order: repeatedly pick the unvisited vertex with the most
/// visited neighbors, lowest index on ties.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    // Bucket queue over weights.
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n + 1];
    for v in 0..n {
        buckets[0].insert(v);
    }
    let mut max_weight = 0usize;
    for _ in 0..n {
        while buckets[max_weight].is_empty() {
            max_weight = max_weight.saturating_sub(1);
            if max_weight == 0 {
                break;
            }
        }
        // Lowest index among maximum weight.
        let mut w = max_weight;
        loop {
            if let Some(&v) = buckets[w].iter().next() {
                buckets[w].remove(&v);
                visited[v] = true;
                order.push(v);
                for &u in g.neighbors(v) {
                    if !visited[u] {
                        buckets[weight[u]].remove(&u);
                        weight[u] += 1;
                        buckets[weight[u]].insert(u);
                        max_weight = max_weight.max(weight[u]);
                    }
                }
                break;
            }
            if w == 0 {
                break;
            }
            w -= 1;
        }
    }
    order
}

/// Checks the PEO property: for each vertex, later neighbors form a clique.
pub fn verify_peo(g: &Graph, ordering: &[usize]) -> bool {
    let n = g.n();
    if ordering.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in ordering {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                if !g.has_edge(x, y) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks a claimed chordless cycle: length >= 4, distinct vertices,
/// consecutive pairs are edges (cyclically), non-consecutive pairs are not.
pub fn verify_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for &v in cycle {
        if v >= g.n() || !seen.insert(v) {
            return false;
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

pub fn verify_certificate(g: &Graph, cert: &ChordalityCertificate) -> bool {
    match cert {
        ChordalityCertificate::Peo { ordering } => verify_peo(g, ordering),
        ChordalityCertificate::ChordlessCycle { cycle } => verify_chordless_cycle(g, cycle),
    }
}

/// Extracts a verified chordless cycle from a non-chordal graph.
///
/// For each broken triangle (v; x, y) -- edges vx, vy present, xy absent --
/// a shortest x-y path avoiding N[v] \ {x, y} closes through v into a
/// chordless cycle. Failed-PEO triples are tried first, then all broken
/// triangles; on a non-chordal graph some triple always succeeds (take any
/// chordless cycle c1..ck: the triple (c2; c1, c3) works).
fn extract_chordless_cycle(g: &Graph, peo: &[usize]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for &v in peo {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                if !g.has_edge(x, y) {
                    candidates.push((v, x.min(y), x.max(y)));
                }
            }
        }
    }
    // Fallback: every broken triangle, in deterministic order.
    for v in 0..n {
        let nb = g.neighbors(v);
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                if !g.has_edge(x, y) {
                    candidates.push((v, x, y));
                }
            }
        }
    }
    for (v, x, y) in candidates {
        if let Some(path) = shortest_path_avoiding(g, x, y, v) {
            let mut cycle = vec![v];
            cycle.extend(path);
            if verify_chordless_cycle(g, &cycle) {
                return Some(cycle);
            }
        }
    }
    None
}

/// Shortest x-y path in the graph minus N[v] \ {x, y}. Returns the path
/// including both endpoints, or None.
fn shortest_path_avoiding(g: &Graph, x: usize, y: usize, v: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &u in g.neighbors(v) {
        blocked[u] = true;
    }
    blocked[x] = false;
    blocked[y] = false;
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            let mut path = vec![y];
            let mut cur = y;
            while cur != x {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if !seen[w] && !blocked[w] {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Graph power: edge {v, w} iff 1 <= d(v, w) <= k.
pub fn graph_power(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    let rows = par::map_indexed(ExecMode::Parallel, n, |v| {
        let dist = g.bfs_distances(v);
        (0..n)
            .filter(|&w| w != v && matches!(dist[w], Some(d) if d <= k))
            .collect::<Vec<usize>>()
    });
    let mut out = Graph::new(n);
    for (v, row) in rows.into_iter().enumerate() {
        for w in row {
            if v < w {
                out.add_edge(v, w).expect("valid");
            }
        }
    }
    out
}

/// Connected with exactly n - 1 edges.
pub fn is_tree(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let reached = g.bfs_distances(0).iter().filter(|d| d.is_some()).count();
    reached == n && g.edge_count() == n - 1
}

/// BFS shortest-path distance; None encodes infinity.
pub fn distance(g: &Graph, v: usize, w: usize) -> Result<Option<usize>> {
    if v >= g.n() || w >= g.n() {
        return Err(Error::VertexOutOfRange {
            v: v.max(w),
            n: g.n(),
        });
    }
    Ok(g.bfs_distances(v)[w])
}

/// All maximal cliques, sorted. Chordal graphs go through the PEO (at most n
/// cliques); general graphs run Bron-Kerbosch with a pivot and an output cap.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let cert = is_chordal(g);
    let mut cliques = match cert {
        ChordalityCertificate::Peo { ordering } => chordal_cliques(g, &ordering),
        ChordalityCertificate::ChordlessCycle { .. } => bron_kerbosch(g, cap)?,
    };
    if cliques.len() > cap {
        return Err(Error::CliqueCapExceeded { cap });
    }
    cliques.sort();
    Ok(cliques)
}

/// Maximal cliques of a chordal graph from a PEO: candidates {v} + later
/// neighbors, kept when not contained in an earlier candidate.
fn chordal_cliques(g: &Graph, peo: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut cliques = Vec::new();
    for (i, &v) in peo.iter().enumerate() {
        let mut cand: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > i)
            .collect();
        cand.push(v);
        cand.sort_unstable();
        // cand is non-maximal iff some earlier neighbor of v is adjacent to
        // all of cand.
        let dominated = g.neighbors(v).iter().any(|&u| {
            pos[u] < i && cand.iter().all(|&w| w == u || g.has_edge(u, w))
        });
        if !dominated {
            cliques.push(cand);
        }
    }
    cliques
}

fn bron_kerbosch(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn recurse(
        g: &Graph,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if p.is_empty() && x.is_empty() {
            if out.len() >= cap {
                return Err(Error::CliqueCapExceeded { cap });
            }
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return Ok(());
        }
        // Pivot: vertex of P union X with most neighbors in P.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&w| g.has_edge(u, w)).count(), usize::MAX - u))
            .unwrap();
        let branch: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !g.has_edge(pivot, v))
            .collect();
        for v in branch {
            r.push(v);
            let p2: Vec<usize> = p.iter().copied().filter(|&u| g.has_edge(v, u)).collect();
            let x2: Vec<usize> = x.iter().copied().filter(|&u| g.has_edge(v, u)).collect();
            recurse(g, r, p2, x2, out, cap)?;
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    recurse(
        g,
        &mut r,
        (0..g.n()).collect(),
        Vec::new(),
        &mut out,
        cap,
    )?;
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::Graph;
    use rand::Rng;

    pub(crate) fn random_graph(n: usize, density: f64, rng: &mut impl Rng) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(density) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    pub(crate) fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            let parent = rng.gen_range(0..v);
            g.add_edge(parent, v).unwrap();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::{random_graph, random_tree};
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete_graph(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Brute-force chordality: enumerate all simple cycles of length >= 4 and
    /// look for one without a chord. Exponential; n <= 8 only.
    pub(crate) fn brute_force_chordal(g: &Graph) -> bool {
        let n = g.n();
        fn dfs(
            g: &Graph,
            start: usize,
            path: &mut Vec<usize>,
            on_path: &mut Vec<bool>,
            found_chordless: &mut bool,
        ) {
            if *found_chordless {
                return;
            }
            let last = *path.last().unwrap();
            for &next in g.neighbors(last) {
                if next == start && path.len() >= 4 {
                    // Canonical orientation: second vertex smaller than last.
                    if path[1] < *path.last().unwrap() {
                        let mut has_chord = false;
                        let k = path.len();
                        'outer: for i in 0..k {
                            for j in (i + 2)..k {
                                if i == 0 && j == k - 1 {
                                    continue;
                                }
                                if g.has_edge(path[i], path[j]) {
                                    has_chord = true;
                                    break 'outer;
                                }
                            }
                        }
                        if !has_chord {
                            *found_chordless = true;
                            return;
                        }
                    }
                } else if next > start && !on_path[next] {
                    path.push(next);
                    on_path[next] = true;
                    dfs(g, start, path, on_path, found_chordless);
                    on_path[next] = false;
                    path.pop();
                }
            }
        }
        let mut found = false;
        for start in 0..n {
            let mut path = vec![start];
            let mut on_path = vec![false; n];
            on_path[start] = true;
            dfs(g, start, &mut path, &mut on_path, &mut found);
            if found {
                return false;
            }
        }
        true
    }

    #[test]
    fn c4_is_not_chordal() {
        let cert = is_chordal(&cycle_graph(4));
        match &cert {
            ChordalityCertificate::ChordlessCycle { cycle } => assert_eq!(cycle.len(), 4),
            _ => panic!("C4 must not be chordal"),
        }
        assert!(verify_certificate(&cycle_graph(4), &cert));
    }

    #[test]
    fn k5_and_band_are_chordal() {
        assert!(is_chordal(&complete_graph(5)).is_chordal());
        let mut band = Graph::new(10);
        for i in 0..10usize {
            for j in (i + 1)..10usize.min(i + 3) {
                band.add_edge(i, j).unwrap();
            }
        }
        assert!(is_chordal(&band).is_chordal());
    }

    #[test]
    fn verifier_rejects_bad_cycle() {
        let c4 = cycle_graph(4);
        assert!(verify_certificate(
            &c4,
            &ChordalityCertificate::ChordlessCycle {
                cycle: vec![0, 1, 2, 3]
            }
        ));
        // (1,3) is not an edge in the claimed order 0,1,3,2.
        assert!(!verify_certificate(
            &c4,
            &ChordalityCertificate::ChordlessCycle {
                cycle: vec![0, 1, 3, 2]
            }
        ));
        // K4 minus one edge is chordal.
        let mut g = complete_graph(4);
        g = Graph::from_edges(4, &g.edges().into_iter().filter(|&e| e != (2, 3)).collect::<Vec<_>>())
            .unwrap();
        let cert = is_chordal(&g);
        assert!(cert.is_chordal());
        assert!(verify_certificate(&g, &cert));
    }

    #[test]
    fn power_examples() {
        let p5 = path_graph(5);
        let sq = graph_power(&p5, 2);
        assert!(sq.has_edge(0, 2));
        assert!(!sq.has_edge(0, 3));
        assert_eq!(graph_power(&p5, 1), p5);
        // Star K_{1,3} squared is K4 (BFS distance oracle: leaves pairwise at
        // distance 2 through the hub).
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(graph_power(&star, 2), complete_graph(4));
    }

    #[test]
    fn power_distance_law_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let g = random_graph(12, 0.2, &mut rng);
            for k in 1..4 {
                let p = graph_power(&g, k);
                for v in 0..12 {
                    let dist = g.bfs_distances(v);
                    for w in 0..12 {
                        if v == w {
                            continue;
                        }
                        let expect = matches!(dist[w], Some(d) if d >= 1 && d <= k);
                        assert_eq!(p.has_edge(v, w), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn tree_checks() {
        assert!(is_tree(&path_graph(5)));
        assert!(!is_tree(&cycle_graph(4)));
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_tree(&two_edges));
    }

    #[test]
    fn distances() {
        let p5 = path_graph(5);
        assert_eq!(distance(&p5, 0, 4).unwrap(), Some(4));
        assert_eq!(distance(&p5, 2, 2).unwrap(), Some(0));
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance(&disconnected, 0, 3).unwrap(), None);
        assert!(distance(&p5, 0, 9).is_err());
    }

    /// Brute-force maximal clique oracle: all maximal vertex subsets that are
    /// cliques.
    fn brute_force_cliques(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut cliques = Vec::new();
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let is_clique = verts
                .iter()
                .enumerate()
                .all(|(a, &x)| verts[a + 1..].iter().all(|&y| g.has_edge(x, y)));
            if !is_clique {
                continue;
            }
            let maximal = (0..n)
                .filter(|&u| mask & (1 << u) == 0)
                .all(|u| !verts.iter().all(|&x| g.has_edge(u, x)));
            if maximal {
                cliques.push(verts);
            }
        }
        cliques.sort();
        cliques
    }

    #[test]
    fn clique_examples() {
        assert_eq!(
            maximal_cliques(&complete_graph(4), 100).unwrap(),
            vec![vec![0, 1, 2, 3]]
        );
        assert_eq!(
            maximal_cliques(&path_graph(3), 100).unwrap(),
            vec![vec![0, 1], vec![1, 2]]
        );
        // Banded graph |i-j| <= 2 on 6 vertices: cliques {i, i+1, i+2}.
        let mut band = Graph::new(6);
        for i in 0..6usize {
            for j in (i + 1)..6usize.min(i + 3) {
                band.add_edge(i, j).unwrap();
            }
        }
        let got = maximal_cliques(&band, 100).unwrap();
        assert_eq!(got, brute_force_cliques(&band));
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn cliques_match_brute_force_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..120 {
            let n = rng.gen_range(1..9);
            let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
            assert_eq!(maximal_cliques(&g, 10_000).unwrap(), brute_force_cliques(&g));
        }
    }

    #[test]
    fn clique_cap_is_honored() {
        // Complement of a perfect matching on 2k vertices has 2^k maximal
        // cliques.
        let mut g = complete_graph(12);
        let edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !(v == u + 1 && u % 2 == 0))
            .collect();
        g = Graph::from_edges(12, &edges).unwrap();
        assert!(matches!(
            maximal_cliques(&g, 10),
            Err(Error::CliqueCapExceeded { cap: 10 })
        ));
        assert_eq!(maximal_cliques(&g, 100).unwrap().len(), 64);
    }

    #[test]
    fn certificates_sound_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let n = rng.gen_range(1..=30);
            let g = random_graph(n, rng.gen_range(0.05..0.6), &mut rng);
            let cert = is_chordal(&g);
            assert!(verify_certificate(&g, &cert), "g = {:?}", g.edges());
        }
    }

    #[test]
    fn agrees_with_cycle_enumeration_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(n, rng.gen_range(0.1..0.9), &mut rng);
            let cert = is_chordal(&g);
            assert_eq!(cert.is_chordal(), brute_force_chordal(&g), "g = {:?}", g.edges());
            assert!(verify_certificate(&g, &cert));
        }
    }

    #[test]
    fn tree_powers_are_chordal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let n = rng.gen_range(2..=40);
            let tree = random_tree(n, &mut rng);
            assert!(is_tree(&tree));
            for k in 1..=4 {
                assert!(is_chordal(&graph_power(&tree, k)).is_chordal());
            }
        }
    }

    /// The 4-sun: K4 plus four outer vertices, each adjacent to a
    /// consecutive pair of the inner square. Chordal, but its square has the
    /// outer 4-cycle chordless. Stored fixture standing in for a
    /// non-machine-readable figure.
    pub(crate) fn four_sun() -> Graph {
        let mut edges = vec![];
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((i, j));
            }
        }
        edges.extend_from_slice(&[(4, 0), (4, 1), (5, 1), (5, 2), (6, 2), (6, 3), (7, 3), (7, 0)]);
        Graph::from_edges(8, &edges).unwrap()
    }

    #[test]
    fn chordal_square_need_not_be_chordal() {
        let g = four_sun();
        assert!(is_chordal(&g).is_chordal());
        let sq = graph_power(&g, 2);
        let cert = is_chordal(&sq);
        assert!(!cert.is_chordal());
        assert!(verify_certificate(&sq, &cert));
        // The outer vertices form the chordless 4-cycle.
        assert!(verify_chordless_cycle(&sq, &[4, 5, 6, 7]));
    }

    #[test]
    fn graph_json_round_trip() {
        let g = four_sun();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["n"], 8);
    }
}
