//! The implicit disjointness graph on all r-subsets of `[n]`.
//!
//! Vertices are r-sets; two vertices are adjacent iff the sets are disjoint
//! (the complement of the intersection graph that is complete multipartite at
//! `n = 2r`). The graph is never materialised as a matrix: neighbours of a
//! vertex are enumerated as r-subsets of the complement of its elements.
//! Only the exact minimum-cut search builds adjacency lists, and that is
//! gated behind a much smaller budget.

use serde::Serialize;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::setfam::{enumerate_rsets, full_mask, ksubsets_of_mask, Family, RSet, UniverseParams};

/// True iff the two r-sets are disjoint, i.e. adjacent in the disjointness
/// graph (equivalently: not an edge of the intersection graph).
pub fn are_adjacent(a: RSet, b: RSet) -> bool {
    debug_assert_eq!(a.universe(), b.universe());
    a.is_disjoint_from(b)
}

fn check_forbidden_shape(params: &UniverseParams, forbidden: &Family) -> Result<()> {
    if forbidden.universe() != params.n || forbidden.r() != params.r {
        return Err(Error::domain(format!(
            "forbidden family has (n={}, r={}), parameters say (n={}, r={})",
            forbidden.universe(),
            forbidden.r(),
            params.n,
            params.r
        )));
    }
    Ok(())
}

/// Sorted masks of `C([n], r) \ forbidden`.
fn surviving_vertices(
    params: &UniverseParams,
    forbidden: &Family,
    budget: u64,
) -> Result<Vec<u64>> {
    check_forbidden_shape(params, forbidden)?;
    Ok(enumerate_rsets(params, budget)?
        .map(|s| s.bits())
        .filter(|&m| !forbidden.contains_mask(m))
        .collect())
}

// ---------------------------------------------------------------------------
// Component decomposition
// ---------------------------------------------------------------------------

/// Partition of `C([n], r) \ forbidden` into connected components of the
/// disjointness graph. Component ids are assigned in order of each
/// component's first canonical vertex.
#[derive(Clone, Debug)]
pub struct ComponentLabeling {
    params: UniverseParams,
    forbidden: Family,
    /// Surviving vertex masks, canonical order.
    vertices: Vec<u64>,
    /// Component id per vertex, parallel to `vertices`.
    labels: Vec<u32>,
    component_count: u32,
}

impl ComponentLabeling {
    pub fn params(&self) -> &UniverseParams {
        &self.params
    }

    pub fn forbidden(&self) -> &Family {
        &self.forbidden
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn component_count(&self) -> u32 {
        self.component_count
    }

    /// Component id of a surviving vertex, `None` for forbidden/unknown sets.
    pub fn label_of(&self, s: RSet) -> Option<u32> {
        self.vertices
            .binary_search(&s.bits())
            .ok()
            .map(|i| self.labels[i])
    }

    /// `(vertex, component id)` pairs in canonical vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (RSet, u32)> + '_ {
        let n = self.params.n;
        self.vertices
            .iter()
            .zip(&self.labels)
            .map(move |(&m, &c)| (RSet::from_bits(n, m).expect("stored mask is valid"), c))
    }

    /// All members of one component, as a family.
    pub fn component_family(&self, id: u32) -> Family {
        let masks = self
            .vertices
            .iter()
            .zip(&self.labels)
            .filter(|&(_, &c)| c == id)
            .map(|(&m, _)| m);
        Family::from_masks(self.params.n, self.params.r, masks).expect("component members are valid")
    }

    /// Sizes of all components, indexed by component id.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.component_count as usize];
        for &c in &self.labels {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// Breadth-first component labeling of the disjointness graph restricted to
/// the vertices outside `forbidden`.
pub fn components_avoiding(
    params: &UniverseParams,
    forbidden: &Family,
    budget: u64,
) -> Result<ComponentLabeling> {
    let vertices = surviving_vertices(params, forbidden, budget)?;
    const UNLABELED: u32 = u32::MAX;
    let mut labels = vec![UNLABELED; vertices.len()];
    let mut component_count = 0u32;
    let universe = full_mask(params.n);
    let mut queue: std::collections::VecDeque<usize> = Default::default();

    for start in 0..vertices.len() {
        if labels[start] != UNLABELED {
            continue;
        }
        let id = component_count;
        component_count += 1;
        labels[start] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for nb in ksubsets_of_mask(universe & !vertices[v], params.r) {
                if let Ok(u) = vertices.binary_search(&nb) {
                    if labels[u] == UNLABELED {
                        labels[u] = id;
                        queue.push_back(u);
                    }
                }
            }
        }
    }

    Ok(ComponentLabeling {
        params: *params,
        forbidden: forbidden.clone(),
        vertices,
        labels,
        component_count,
    })
}

/// True iff deleting `forbidden` leaves the disjointness graph with at most
/// one component.
pub fn is_connected_avoiding(
    params: &UniverseParams,
    forbidden: &Family,
    budget: u64,
) -> Result<bool> {
    Ok(components_avoiding(params, forbidden, budget)?.component_count() <= 1)
}

// ---------------------------------------------------------------------------
// Shortest-path oracle
// ---------------------------------------------------------------------------

/// Shortest disjointness-walk from `a` to `b` avoiding `forbidden`, or `None`
/// when the endpoints lie in different components.
///
/// Deterministic: the queue is served in insertion order and neighbours are
/// expanded in canonical bitmask order, so the returned path is reproducible.
pub fn bfs_path_avoiding(
    params: &UniverseParams,
    forbidden: &Family,
    a: RSet,
    b: RSet,
    budget: u64,
) -> Result<Option<Vec<RSet>>> {
    check_endpoint(params, forbidden, a, "start")?;
    check_endpoint(params, forbidden, b, "target")?;
    if a == b {
        return Err(Error::domain("path endpoints must differ"));
    }

    let vertices = surviving_vertices(params, forbidden, budget)?;
    let rank = |mask: u64| vertices.binary_search(&mask).expect("endpoint survives");
    let (src, dst) = (rank(a.bits()), rank(b.bits()));

    const UNSEEN: u32 = u32::MAX;
    let mut parent = vec![UNSEEN; vertices.len()];
    let mut queue = std::collections::VecDeque::new();
    parent[src] = src as u32;
    queue.push_back(src);
    let universe = full_mask(params.n);

    'bfs: while let Some(v) = queue.pop_front() {
        for nb in ksubsets_of_mask(universe & !vertices[v], params.r) {
            if let Ok(u) = vertices.binary_search(&nb) {
                if parent[u] == UNSEEN {
                    parent[u] = v as u32;
                    if u == dst {
                        break 'bfs;
                    }
                    queue.push_back(u);
                }
            }
        }
    }

    if parent[dst] == UNSEEN {
        return Ok(None);
    }
    let mut path = vec![dst];
    while *path.last().unwrap() != src {
        path.push(parent[*path.last().unwrap()] as usize);
    }
    path.reverse();
    Ok(Some(
        path.into_iter()
            .map(|v| RSet::from_bits(params.n, vertices[v]).expect("stored mask is valid"))
            .collect(),
    ))
}

fn check_endpoint(
    params: &UniverseParams,
    forbidden: &Family,
    s: RSet,
    role: &str,
) -> Result<()> {
    if s.universe() != params.n || s.size() != params.r {
        return Err(Error::domain(format!(
            "{role} set {s} is not an {}-subset of [{}]",
            params.r, params.n
        )));
    }
    if forbidden.contains(s) {
        return Err(Error::domain(format!(
            "{role} set {s} lies in the forbidden family"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact minimum disconnecting sets
// ---------------------------------------------------------------------------

/// A minimum disconnecting set together with a certified two-sided split of
/// the remaining vertices.
#[derive(Clone, Debug, Serialize)]
pub struct CutWitness {
    pub cut: Family,
    pub side_a: Family,
    pub side_b: Family,
}

impl CutWitness {
    pub fn size(&self) -> usize {
        self.cut.len()
    }
}

/// Adjacency lists of the full disjointness graph, by canonical rank.
fn adjacency(params: &UniverseParams, vertices: &[u64]) -> Vec<Vec<u32>> {
    let universe = full_mask(params.n);
    vertices
        .iter()
        .map(|&m| {
            ksubsets_of_mask(universe & !m, params.r)
                .map(|nb| vertices.binary_search(&nb).expect("closed under complement") as u32)
                .collect()
        })
        .collect()
}

/// Smallest family of r-sets whose deletion disconnects the disjointness
/// graph, or `None` if no disconnecting set of size `<= max_size` exists.
///
/// At `n = 2r` the graph is a perfect matching on complement pairs and is
/// already disconnected, so the empty cut is returned. Otherwise the size is
/// found by vertex-split maximum flow over all non-adjacent vertex pairs and
/// the reported cut is the lexicographically smallest one of that size under
/// the canonical family order.
pub fn min_disconnecting_set(
    params: &UniverseParams,
    max_size: u32,
    exact_budget: u64,
) -> Result<Option<CutWitness>> {
    let required = params.binom_n_r();
    if required > exact_budget {
        return Err(Error::Budget {
            required,
            budget: exact_budget,
        });
    }

    if params.l == 0 {
        if params.r < 2 {
            return Err(Error::domain(
                "n = 2r with r = 1 is a single edge; no two-sided split exists",
            ));
        }
        let empty = Family::empty(params.n, params.r)?;
        let labeling = components_avoiding(params, &empty, exact_budget)?;
        let (side_a, side_b) = split_sides(&labeling);
        return Ok(Some(CutWitness {
            cut: empty,
            side_a,
            side_b,
        }));
    }

    let empty = Family::empty(params.n, params.r)?;
    let vertices = surviving_vertices(params, &empty, exact_budget)?;
    let adj = adjacency(params, &vertices);

    let Some(cstar) = global_min_cut_value(&adj) else {
        // Every pair of vertices is adjacent (r = 1): no cut exists.
        return Ok(None);
    };
    if cstar > max_size {
        return Ok(None);
    }

    let cut_ranks = lex_min_cut(&adj, cstar);
    let cut = Family::from_masks(
        params.n,
        params.r,
        cut_ranks.iter().map(|&v| vertices[v as usize]),
    )?;
    let labeling = components_avoiding(params, &cut, exact_budget)?;
    debug_assert!(labeling.component_count() >= 2);
    let (side_a, side_b) = split_sides(&labeling);
    Ok(Some(CutWitness { cut, side_a, side_b }))
}

/// Splits a disconnected labeling into two nonempty sides: the last
/// component alone versus everything else, keeping the component of the
/// canonically smallest vertex in side a.
fn split_sides(labeling: &ComponentLabeling) -> (Family, Family) {
    let last = labeling.component_count() - 1;
    let n = labeling.params().n;
    let r = labeling.params().r;
    let mut a_masks = Vec::new();
    let mut b_masks = Vec::new();
    for (s, c) in labeling.iter() {
        if c == last {
            b_masks.push(s.bits());
        } else {
            a_masks.push(s.bits());
        }
    }
    (
        Family::from_masks(n, r, a_masks).expect("side members are valid"),
        Family::from_masks(n, r, b_masks).expect("side members are valid"),
    )
}

/// Minimum over all non-adjacent vertex pairs of the pairwise vertex cut;
/// `None` when every pair is adjacent.
fn global_min_cut_value(adj: &[Vec<u32>]) -> Option<u32> {
    let v = adj.len();
    let alive = vec![true; v];
    let mut best: Option<u32> = None;
    for s in 0..v {
        for t in s + 1..v {
            if adj[s].binary_search(&(t as u32)).is_ok() {
                continue;
            }
            let bound = best.map(|b| b.saturating_sub(1)).unwrap_or(u32::MAX);
            let flow = pairwise_vertex_cut(adj, &alive, 0, s, t, bound);
            if let Some(f) = flow {
                if best.is_none_or(|b| f < b) {
                    best = Some(f);
                }
            }
        }
    }
    best
}

/// Lexicographically smallest disconnecting set of exactly `cstar` vertices,
/// as ascending ranks. Greedy prefix extension; each step keeps the smallest
/// vertex for which a completion among strictly larger vertices still exists.
fn lex_min_cut(adj: &[Vec<u32>], cstar: u32) -> Vec<u32> {
    let v = adj.len();
    let mut prefix: Vec<u32> = Vec::with_capacity(cstar as usize);
    let mut alive = vec![true; v];

    while (prefix.len() as u32) < cstar {
        let start = prefix.last().map(|&x| x as usize + 1).unwrap_or(0);
        let remaining = cstar - prefix.len() as u32 - 1;
        let mut placed = false;
        for cand in start..v {
            alive[cand] = false;
            // Cut members below `cand` are fixed by the prefix; everything
            // else below `cand` is banned from the completion.
            if completion_exists(adj, &alive, cand + 1, remaining) {
                prefix.push(cand as u32);
                placed = true;
                break;
            }
            alive[cand] = true;
        }
        assert!(placed, "a cut of the certified size must exist");
    }
    prefix
}

/// Is there a set of at most `budget` vertices, all with rank >= `min_free`,
/// whose removal disconnects the graph induced on `alive`?
fn completion_exists(adj: &[Vec<u32>], alive: &[bool], min_free: usize, budget: u32) -> bool {
    let v = adj.len();
    for s in 0..v {
        if !alive[s] {
            continue;
        }
        for t in s + 1..v {
            if !alive[t] || adj[s].binary_search(&(t as u32)).is_ok() {
                continue;
            }
            if let Some(f) = pairwise_vertex_cut(adj, alive, min_free, s, t, budget) {
                if f <= budget {
                    return true;
                }
            }
        }
    }
    false
}

const FLOW_INF: u32 = u32::MAX / 4;

/// Minimum number of cuttable vertices separating `s` from `t` in the graph
/// induced on `alive`, where only vertices of rank >= `min_free` may be cut
/// (others have infinite capacity). Returns `None` when the value exceeds
/// `bound` (the search stops augmenting past it) or no finite cut exists.
///
/// Standard vertex-split reduction: vertex v becomes v_in -> v_out with the
/// vertex capacity; edges get infinite capacity both ways; flow runs from
/// s_out to t_in.
fn pairwise_vertex_cut(
    adj: &[Vec<u32>],
    alive: &[bool],
    min_free: usize,
    s: usize,
    t: usize,
    bound: u32,
) -> Option<u32> {
    let v = adj.len();
    let node_in = |x: usize| 2 * x;
    let node_out = |x: usize| 2 * x + 1;
    let mut flow = FlowNetwork::new(2 * v);
    for x in 0..v {
        if !alive[x] {
            continue;
        }
        let cap = if x >= min_free { 1 } else { FLOW_INF };
        flow.add_edge(node_in(x), node_out(x), cap);
        for &y in &adj[x] {
            let y = y as usize;
            if alive[y] {
                flow.add_edge(node_out(x), node_in(y), FLOW_INF);
            }
        }
    }
    let value = flow.max_flow(node_out(s), node_in(t), bound.saturating_add(1));
    if value > bound {
        None
    } else {
        Some(value)
    }
}

/// Dinic's algorithm, capped: augmentation stops once `limit` is reached.
struct FlowNetwork {
    head: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u32>,
    level: Vec<u32>,
    next_edge: Vec<u32>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            next_edge: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let id = self.to.len() as u32;
        self.head[from].push(id);
        self.to.push(to as u32);
        self.cap.push(cap);
        self.head[to].push(id + 1);
        self.to.push(from as u32);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &e in &self.head[v] {
                let u = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[u] == u32::MAX {
                    self.level[u] = self.level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: u32) -> u32 {
        if v == t {
            return pushed;
        }
        while (self.next_edge[v] as usize) < self.head[v].len() {
            let e = self.head[v][self.next_edge[v] as usize] as usize;
            let u = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[u] == self.level[v] + 1 {
                let got = self.dfs(u, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.next_edge[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut total = 0;
        while total < limit && self.bfs(s, t) {
            self.next_edge.fill(0);
            loop {
                let pushed = self.dfs(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }
}

// ---------------------------------------------------------------------------
// Complete multipartite structure at n = 2r
// ---------------------------------------------------------------------------

/// The verified part structure of the intersection graph on `C([2r], r)`.
#[derive(Clone, Debug, Serialize)]
pub struct KPartiteReport {
    pub r: u32,
    pub n: u32,
    /// Number of parts: `C(2r-1, r)`.
    pub k: u64,
    /// Each part is a complement pair `{X, [2r] \ X}` with `2r ∉ X`.
    pub parts: Vec<(RSet, RSet)>,
}

/// Checks that the intersection graph on `C([2r], r)` is complete k-partite
/// with `k = C(2r-1, r)` parts, each a complement pair.
///
/// Every complement pair must be non-adjacent in the intersection graph and
/// every cross-part pair adjacent; any violation is an error (none can occur
/// for valid inputs, the scan is the certificate).
pub fn check_complete_kpartite(r: u32, budget: u64) -> Result<KPartiteReport> {
    if r < 1 {
        return Err(Error::domain("requires r >= 1"));
    }
    let params = crate::setfam::make_params(2 * r, r)?;
    let required = params.binom_n_r();
    if required > budget {
        return Err(Error::Budget {
            required,
            budget,
        });
    }

    // Parts indexed by the canonical r-subsets of [2r-1].
    let mut parts = Vec::new();
    for x_bits in ksubsets_of_mask(full_mask(2 * r - 1), r) {
        let x = RSet::from_bits(2 * r, x_bits)?;
        let y = x.complement_in(2 * r)?;
        parts.push((x, y));
    }
    let k = binomial((2 * r - 1) as u64, r as u64);
    debug_assert_eq!(parts.len() as u64, k);

    for (i, &(xi, yi)) in parts.iter().enumerate() {
        if xi.intersects(yi) {
            return Err(Error::domain(format!(
                "complement pair ({xi}, {yi}) intersects; structure check failed"
            )));
        }
        for &(xj, yj) in &parts[i + 1..] {
            for (u, v) in [(xi, xj), (xi, yj), (yi, xj), (yi, yj)] {
                if u.is_disjoint_from(v) {
                    return Err(Error::domain(format!(
                        "cross-part pair ({u}, {v}) is disjoint; structure check failed"
                    )));
                }
            }
        }
    }

    Ok(KPartiteReport {
        r,
        n: 2 * r,
        k,
        parts,
    })
}
