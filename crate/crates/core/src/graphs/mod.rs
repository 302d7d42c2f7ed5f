//! Trivalent multigraph machinery: girth, bridges, random generation with
//! girth constraints, chained graphs, and the asymptotic counting formulas
//! for regular graphs with girth constraints, validated by Monte Carlo over
//! the pairing model.

pub mod blocks;
pub mod catalog;

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// A finite multigraph: parallel edges are repeated pairs, a self-loop is a
/// pair `(v, v)`. Endpoints are stored normalized (`u <= v`); the edge list
/// order is preserved and meaningful for deterministic constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Girth of a multigraph: 1 for a self-loop, 2 for a parallel pair, the
/// shortest simple cycle length otherwise, and `Infinite` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, w: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= w,
            Girth::Infinite => true,
        }
    }

    pub fn as_finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) out of range for {vertices} vertices"
                )));
            }
        }
        let edges = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree of a vertex; a self-loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Adjacency lists carrying edge indices. A self-loop at `v` appears as
    /// two entries `(v, idx)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, idx));
            adj[v].push((u, idx));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.vertices
    }

    fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    fn has_parallel(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .filter(|&&(u, v)| u != v)
            .any(|&e| !seen.insert(e))
    }

    /// Deduplicated simple adjacency (no loops, parallels collapsed).
    fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| u != v)
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut adj = vec![Vec::new(); self.vertices];
        for (u, v) in pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Girth with multigraph conventions. Per-vertex breadth-first search on
    /// the simplified graph; every detected closed walk bounds a cycle from
    /// above and roots on a shortest cycle attain it.
    pub fn girth(&self) -> Girth {
        if self.has_loop() {
            return Girth::Finite(1);
        }
        if self.has_parallel() {
            return Girth::Finite(2);
        }
        let adj = self.simple_adjacency();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.vertices];
        let mut parent = vec![usize::MAX; self.vertices];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.vertices {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if best != usize::MAX && 2 * dist[x] >= best {
                    break;
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// True iff the girth is strictly below `limit`. Depth-capped variant of
    /// [`MultiGraph::girth`]; cheap for small limits.
    pub fn girth_below(&self, limit: usize) -> bool {
        if limit <= 1 {
            return false;
        }
        if self.has_loop() {
            return true;
        }
        if limit == 2 {
            return false;
        }
        if self.has_parallel() {
            return true;
        }
        if limit == 3 {
            return false;
        }
        let adj = self.simple_adjacency();
        let cap = (limit - 1) / 2;
        let mut dist = vec![usize::MAX; self.vertices];
        let mut parent = vec![usize::MAX; self.vertices];
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.vertices {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if dist[x] > cap {
                    break;
                }
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y && dist[x] + dist[y] + 1 < limit {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Edge indices whose removal disconnects the graph. Edge-indexed
    /// Tarjan lowlink search, so one member of a parallel pair is never a
    /// bridge and self-loops are never bridges.
    pub fn bridges(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Domain(
                "bridge search requires a connected graph".into(),
            ));
        }
        if self.vertices == 0 {
            return Ok(Vec::new());
        }
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; self.vertices];
        let mut low = vec![usize::MAX; self.vertices];
        let mut result = Vec::new();
        let mut timer = 0usize;
        // frames: (vertex, entry edge index or MAX, position in adjacency)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        while let Some(frame) = stack.last_mut() {
            let (v, entry_edge, pos) = (frame.0, frame.1, frame.2);
            if pos < adj[v].len() {
                frame.2 += 1;
                let (to, eid) = adj[v][pos];
                if to == v || eid == entry_edge {
                    continue;
                }
                if disc[to] == usize::MAX {
                    disc[to] = timer;
                    low[to] = timer;
                    timer += 1;
                    stack.push((to, eid, 0));
                } else {
                    low[v] = low[v].min(disc[to]);
                }
            } else {
                stack.pop();
                if let Some(parent_frame) = stack.last() {
                    let p = parent_frame.0;
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        result.push(entry_edge);
                    }
                }
            }
        }
        result.sort_unstable();
        Ok(result)
    }

    /// Hex SHA-256 of the canonical serialization; used to fingerprint
    /// certificate and report documents.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.vertices.to_le_bytes());
        for &(u, v) in &self.edges {
            hasher.update(u.to_le_bytes());
            hasher.update(v.to_le_bytes());
        }
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A connected 3-regular multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicGraph {
    graph: MultiGraph,
}

impl CubicGraph {
    pub fn new(graph: MultiGraph) -> Result<Self> {
        if graph.vertex_count() == 0 || graph.vertex_count() % 2 != 0 {
            return Err(Error::Domain(format!(
                "cubic graph needs a positive even vertex count, got {}",
                graph.vertex_count()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::Domain("cubic graph must be connected".into()));
        }
        for v in 0..graph.vertex_count() {
            let d = graph.degree(v);
            if d != 3 {
                return Err(Error::Domain(format!("vertex {v} has degree {d}, want 3")));
            }
        }
        Ok(CubicGraph { graph })
    }

    pub fn as_graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }
}

impl std::ops::Deref for CubicGraph {
    type Target = MultiGraph;

    fn deref(&self) -> &MultiGraph {
        &self.graph
    }
}

/// One uniform pairing-model sample: three stubs per vertex, uniformly
/// random perfect matching of the stubs. May be disconnected and may carry
/// loops and parallel edges.
pub fn sample_pairing(vertex_count: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let mut stubs: Vec<usize> = (0..vertex_count)
        .flat_map(|v| std::iter::repeat(v).take(3))
        .collect();
    stubs.shuffle(rng);
    let edges: Vec<(usize, usize)> = stubs
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    MultiGraph::new(vertex_count, edges).expect("stub endpoints are in range")
}

/// Configuration-model generation with rejection: resample the whole
/// matching until the graph is connected with girth at least `min_girth`.
/// Deterministic given the seed.
///
/// Rejection is only viable for small girth targets; the acceptance
/// probability collapses roughly like `exp(-sum 2^i/2i)` as the target
/// grows (see [`wormald_prediction`]), so high-girth blocks come from
/// [`blocks::block_with_girth`] instead.
pub fn random_cubic_with_girth(
    vertex_count: usize,
    min_girth: usize,
    seed: u64,
    retry_budget: u64,
) -> Result<CubicGraph> {
    if vertex_count < 4 || vertex_count % 2 != 0 {
        return Err(Error::Domain(format!(
            "vertex count must be even and at least 4, got {vertex_count}"
        )));
    }
    if min_girth < 1 {
        return Err(Error::Domain("min_girth must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retry_budget {
        let g = sample_pairing(vertex_count, &mut rng);
        if g.is_connected() && !g.girth_below(min_girth) {
            return Ok(CubicGraph::new(g).expect("pairing sample is cubic"));
        }
    }
    Err(Error::Generation {
        attempts: retry_budget,
        reason: format!(
            "no connected cubic graph on {vertex_count} vertices with girth >= {min_girth}; \
             the vertex count may be too small for this girth"
        ),
    })
}

/// Fraction of uniform pairings with girth at least `min_girth`, with its
/// binomial standard error. No rejection: every sample counts.
pub fn pairing_girth_probability(
    vertex_count: usize,
    min_girth: usize,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if trials < 1000 {
        return Err(Error::Domain(format!(
            "at least 1000 trials required, got {trials}"
        )));
    }
    if vertex_count % 2 != 0 || vertex_count == 0 {
        return Err(Error::Domain(format!(
            "vertex count must be even and positive, got {vertex_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let g = sample_pairing(vertex_count, &mut rng);
        if !g.girth_below(min_girth) {
            hits += 1;
        }
    }
    let p = hits as f64 / trials as f64;
    let stderr = (p * (1.0 - p) / trials as f64).sqrt();
    Ok((p, stderr))
}

/// Limiting probability that a random `n`-regular pairing has girth at
/// least `w`: `exp(-sum_{i=1}^{w-1} (n-1)^i / (2i))`.
pub fn wormald_prediction(n: usize, min_girth: usize) -> f64 {
    let mut sum = 0.0;
    for i in 1..min_girth {
        sum += ((n - 1) as f64).powi(i as i32) / (2.0 * i as f64);
    }
    (-sum).exp()
}

/// Natural log of the asymptotic count of unlabeled `n`-regular graphs with
/// `edge_count` edges and girth at least `min_girth`, computed entirely in
/// log-domain via log-gamma:
/// `-sum_{i=1}^{w-1} (n-1)^i/(2i) + ln (2E)! - E ln 2 - ln E! - ln V! - V ln n!`
/// with `V = 2E/n`.
pub fn asymptotic_count(n: usize, edge_count: usize, min_girth: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("regularity must be >= 3, got {n}")));
    }
    if min_girth < 3 {
        return Err(Error::Domain(format!(
            "girth bound must be >= 3, got {min_girth}"
        )));
    }
    if (2 * edge_count) % n != 0 {
        return Err(Error::Domain(format!(
            "2E = {} is not divisible by n = {n}",
            2 * edge_count
        )));
    }
    let vertices = 2 * edge_count / n;
    let ln_fact = |k: usize| statrs::function::gamma::ln_gamma(k as f64 + 1.0);
    let mut exponent = 0.0;
    for i in 1..min_girth {
        exponent += ((n - 1) as f64).powi(i as i32) / (2.0 * i as f64);
    }
    Ok(-exponent + ln_fact(2 * edge_count)
        - edge_count as f64 * std::f64::consts::LN_2
        - ln_fact(edge_count)
        - ln_fact(vertices)
        - vertices as f64 * ln_fact(n))
}

/// Minimal girth the chain graph needs so that the cuffs realize the
/// systole: the least integer `W` with `W * d(eps) >= 2 eps`.
pub fn required_girth(epsilon: f64) -> Result<usize> {
    let d = crate::hypgeom::compute_d(epsilon)?;
    let ratio = 2.0 * epsilon / d;
    if !ratio.is_finite() || ratio > 1.0e6 {
        return Err(Error::Unsupported(format!(
            "required girth {ratio:e} at cuff length {epsilon} is out of range"
        )));
    }
    Ok((ratio.ceil() as usize).max(1))
}

/// Smallest even block size for which the library can construct a cubic
/// graph of the given girth.
///
/// Girths up to 8 use the classical cage sizes (K4, K_{3,3}, Petersen,
/// Heawood, McGee, Tutte-Coxeter). Girths 9 and 10 use the Harries graph
/// (70 vertices, girth 10); girths 11 and 12 use the 126-vertex girth-12
/// incidence graph. Rejection sampling is hopeless beyond girth 6 or so,
/// which is why these anchors are explicit constructions.
pub fn min_block_size(min_girth: usize) -> Result<usize> {
    match min_girth {
        0 => Err(Error::Domain("girth bound must be at least 1".into())),
        1 | 2 => Ok(2),
        3 => Ok(4),
        4 => Ok(6),
        5 => Ok(10),
        6 => Ok(14),
        7 => Ok(24),
        8 => Ok(30),
        9 | 10 => Ok(70),
        11 | 12 => Ok(126),
        _ => Err(Error::Unsupported(format!(
            "girth bounds above 12 are not supported (requested {min_girth})"
        ))),
    }
}

/// Combinatorial plan for the chained graph: `g0` full blocks of size `V0`
/// plus one last block of size `V1`, satisfying
/// `2 genus - 2 = g0 (V0 + 2) + (V1 + 2) - 2` with `V0 <= V1 <= 2 V0 + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPlan {
    pub genus: usize,
    pub block_size: usize,
    pub block_count_full: usize,
    pub last_block_size: usize,
    pub required_girth: usize,
}

/// Solve the chain equation for `(g0, V1)` given the genus and block size.
/// Among the (at most two) solutions the one with maximal `g0` (minimal
/// `V1`) is returned.
pub fn chain_plan(genus: usize, block_size: usize, required_girth: usize) -> Result<ChainPlan> {
    if block_size < 2 || block_size % 2 != 0 {
        return Err(Error::Domain(format!(
            "block size must be even and at least 2, got {block_size}"
        )));
    }
    let min_genus = block_size + 2;
    if genus < min_genus {
        return Err(Error::Domain(format!(
            "genus {genus} too small for block size {block_size}; minimum supported genus is {min_genus}"
        )));
    }
    let total = 2 * genus - 2;
    let g0 = (total - block_size) / (block_size + 2);
    let v1 = total - g0 * (block_size + 2);
    debug_assert!(v1 >= block_size && v1 <= 2 * block_size + 2);
    debug_assert!(v1 % 2 == 0);
    Ok(ChainPlan {
        genus,
        block_size,
        block_count_full: g0,
        last_block_size: v1,
        required_girth,
    })
}

/// Join the blocks into the chained cubic graph: one edge of a block is
/// subdivided per attachment point and consecutive blocks are connected by
/// an edge between the two new vertices. Interior blocks receive two new
/// vertices, end blocks one; no simple cycle crosses a connecting edge and
/// subdivision only lengthens cycles, so the girth is at least the minimum
/// block girth. The connecting edges are exactly the bridges whenever the
/// blocks themselves are bridgeless.
pub fn build_chain(plan: &ChainPlan, blocks: &[CubicGraph]) -> Result<CubicGraph> {
    let expected = plan.block_count_full + 1;
    if blocks.len() != expected {
        return Err(Error::Domain(format!(
            "plan wants {expected} blocks, got {}",
            blocks.len()
        )));
    }
    for (i, block) in blocks.iter().enumerate() {
        let want = if i < plan.block_count_full {
            plan.block_size
        } else {
            plan.last_block_size
        };
        if block.vertex_count() != want {
            return Err(Error::Domain(format!(
                "block {i} has {} vertices, plan wants {want}",
                block.vertex_count()
            )));
        }
        if !block.girth().at_least(plan.required_girth) {
            return Err(Error::Domain(format!(
                "block {i} has girth {} below the required {}",
                block.girth(),
                plan.required_girth
            )));
        }
    }
    if plan.block_count_full == 0 {
        return Ok(blocks[0].clone());
    }

    // Choose attachment edges per block: lexicographically first non-bridge,
    // non-loop edges, in order.
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let need = if i == 0 || i == blocks.len() - 1 { 1 } else { 2 };
        let internal_bridges: std::collections::HashSet<usize> =
            block.bridges()?.into_iter().collect();
        let mut candidates: Vec<(usize, usize, usize)> = block
            .edges()
            .iter()
            .enumerate()
            .filter(|&(idx, &(u, v))| u != v && !internal_bridges.contains(&idx))
            .map(|(idx, &(u, v))| (u, v, idx))
            .collect();
        candidates.sort_unstable();
        if candidates.len() < need {
            return Err(Error::Domain(format!(
                "block {i} has only {} eligible attachment edges, need {need}",
                candidates.len()
            )));
        }
        chosen.push(candidates[..need].iter().map(|&(_, _, idx)| idx).collect());
    }

    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0usize;
    for block in blocks {
        offsets.push(total);
        total += block.vertex_count();
    }
    let sub_base = total;
    let g0 = plan.block_count_full;
    total += 2 * g0;

    let mut edges = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let off = offsets[i];
        // attachment vertices for this block: left (from bridge i-1), right (bridge i)
        let right_sub = sub_base + 2 * i; // valid when i < g0
        let left_sub = sub_base + 2 * (i.wrapping_sub(1)) + 1; // valid when i > 0
        let mut subdivide: BTreeMap<usize, usize> = BTreeMap::new();
        if i < g0 {
            subdivide.insert(chosen[i][0], right_sub);
        }
        if i > 0 {
            let idx = if i == blocks.len() - 1 {
                chosen[i][0]
            } else {
                chosen[i][1]
            };
            subdivide.insert(idx, left_sub);
        }
        for (idx, &(u, v)) in block.edges().iter().enumerate() {
            match subdivide.get(&idx) {
                Some(&z) => {
                    edges.push((off + u, z));
                    edges.push((z, off + v));
                }
                None => edges.push((off + u, off + v)),
            }
        }
    }
    for i in 0..g0 {
        edges.push((sub_base + 2 * i, sub_base + 2 * i + 1));
    }

    CubicGraph::new(MultiGraph::new(total, edges)?)
}

/// The small-cuff chain family: a path of `2 genus - 2` vertices with
/// self-loops at both ends, double edges inside consecutive pairs and
/// single connecting edges between pairs. Cubic, girth 1, and the
/// connecting edges are its `genus - 1` bridges.
pub fn build_small_eps_chain(genus: usize) -> Result<CubicGraph> {
    if genus < 2 {
        return Err(Error::Domain(format!(
            "chain surface needs genus >= 2, got {genus}"
        )));
    }
    let n = 2 * genus - 2;
    let mut edges = Vec::with_capacity(3 * genus - 3);
    edges.push((0, 0));
    for i in 0..genus - 1 {
        edges.push((2 * i, 2 * i + 1));
        if 2 * i + 2 < n {
            edges.push((2 * i + 1, 2 * i + 2));
            edges.push((2 * i + 1, 2 * i + 2));
        }
    }
    edges.push((n - 1, n - 1));
    CubicGraph::new(MultiGraph::new(n, edges)?)
}

/// On-disk graph document: vertex count, edge list (repeats are parallel
/// edges, `(v, v)` is a loop) and a free-form metadata map. Serialization
/// is byte-stable for identical inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl GraphFile {
    pub fn from_graph(graph: &MultiGraph, meta: BTreeMap<String, serde_json::Value>) -> Self {
        GraphFile {
            vertices: graph.vertex_count(),
            edges: graph.edges().to_vec(),
            meta,
        }
    }

    pub fn to_graph(&self) -> Result<MultiGraph> {
        MultiGraph::new(self.vertices, self.edges.clone())
    }

    pub fn to_cubic(&self) -> Result<CubicGraph> {
        CubicGraph::new(self.to_graph()?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
