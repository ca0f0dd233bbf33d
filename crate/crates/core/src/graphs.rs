//! Simple graphs on the columns `1..=n` of the generic matrix, chordality
//! via maximum cardinality search, and chordless-cycle search.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Default vertex limit for the exhaustive chordless-cycle search.
pub const CYCLE_SEARCH_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid edge ({0}, {1}): endpoints must satisfy 1 <= i < j <= {2}")]
    BadEdge(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is not chordal: chordless cycle {}", fmt_cycle(.0))]
    NotChordal(Vec<usize>),
    #[error("exhaustive cycle search is limited to {guard} vertices, graph has {n}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn fmt_cycle(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![BTreeSet::new(); n + 1],
        };
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        if i == 0 || i >= j || j > self.n {
            return Err(GraphError::BadEdge(i, j, self.n));
        }
        if !self.edges.insert((i, j)) {
            return Err(GraphError::DuplicateEdge(i, j));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("no edges")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).expect("valid edges")
    }

    /// The cycle `1-2-...-k-1`; needs `k >= 3`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "cycle needs at least 3 vertices");
        Self::new(k, (1..k).map(|i| (i, i + 1)).chain([(1, k)])).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).expect("valid edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(i, j))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        Graph::new(
            self.n + other.n,
            self.edges()
                .chain(other.edges().map(|(i, j)| (i + shift, j + shift))),
        )
        .expect("shifted edges stay valid")
    }

    /// Connected components, each sorted, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(k, &a)| vs[k + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Parses the graph file format: the first content line is either `n` or
    /// `complete <n>`, then one `i j` edge per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let perr = |line: usize, message: String| GraphError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing vertex count".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let parse_n = |w: &str| {
            w.parse::<usize>()
                .map_err(|_| perr(hline, format!("expected a vertex count, found '{w}'")))
        };
        match words.as_slice() {
            ["complete", k] => {
                let g = Graph::complete(parse_n(k)?);
                if let Some((line, _)) = lines.next() {
                    return Err(perr(line, "no edges allowed after 'complete <n>'".into()));
                }
                Ok(g)
            }
            [k] => {
                let mut g = Graph::empty(parse_n(k)?);
                for (line, l) in lines {
                    let ends: Vec<&str> = l.split_whitespace().collect();
                    let [a, b] = ends.as_slice() else {
                        return Err(perr(line, format!("expected 'i j', found '{l}'")));
                    };
                    let endpoint = |w: &str| {
                        w.parse::<usize>()
                            .map_err(|_| perr(line, format!("bad vertex '{w}'")))
                    };
                    let (i, j) = (endpoint(a)?, endpoint(b)?);
                    g.add_edge(i, j).map_err(|e| perr(line, e.to_string()))?;
                }
                Ok(g)
            }
            _ => Err(perr(
                hline,
                format!("expected 'n' or 'complete n', found '{header}'"),
            )),
        }
    }

    /// Renders in the graph file format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self.edges().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "G(n={}; {})", self.n, es.join(" "))
    }
}

/// A vertex ordering in which every vertex's earlier neighbours form a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    order: Vec<usize>,
}

impl EliminationOrder {
    /// Accepts `order` only if it is a permutation of `1..=n` satisfying the
    /// clique condition.
    pub fn verified(g: &Graph, order: Vec<usize>) -> Option<Self> {
        satisfies_clique_condition(g, &order).then_some(EliminationOrder { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.order
    }
}

pub fn satisfies_clique_condition(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n + 1];
    for (k, &v) in order.iter().enumerate() {
        if v == 0 || v > n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = k;
    }
    order.iter().enumerate().all(|(k, &v)| {
        let earlier: Vec<usize> = g.neighbors(v).filter(|&w| pos[w] < k).collect();
        g.is_clique(&earlier)
    })
}

/// Maximum cardinality search: repeatedly visit the unvisited vertex with the
/// most visited neighbours, breaking ties by lowest label.
///
/// On a chordal graph every vertex's previously visited neighbours form a
/// clique. Components come out contiguously, each starting at its lowest vertex.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n + 1];
    let mut visited = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (1..=n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !visited[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// A chordless induced cycle of length at least 4.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

pub fn is_chordal(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    match EliminationOrder::verified(g, order) {
        Some(o) => Chordality::Chordal(o),
        None => Chordality::NotChordal(
            chordless_cycle_witness(g).expect("a graph without a perfect ordering has a long hole"),
        ),
    }
}

/// Finds a chordless cycle of length ≥ 4, normalised to start at its lowest
/// vertex and continue towards the smaller of that vertex's two cycle
/// neighbours.
///
/// For each vertex `v` with non-adjacent neighbours `u < w`, a shortest
/// `u`–`w` path avoiding `v` and the rest of `N(v)` closes a hole through `v`.
/// Every hole arises this way from any of its vertices.
pub fn chordless_cycle_witness(g: &Graph) -> Option<Vec<usize>> {
    for v in 1..=g.n() {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (a, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[a + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let blocked = |x: usize| x == v || (g.has_edge(v, x) && x != u && x != w);
                if let Some(path) = shortest_path(g, u, w, blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(normalise_cycle(cycle));
                }
            }
        }
    }
    None
}

fn shortest_path(
    g: &Graph,
    from: usize,
    to: usize,
    blocked: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev = vec![0usize; g.n() + 1];
    let mut seen = vec![false; g.n() + 1];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if !seen[y] && !blocked(y) {
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

fn normalise_cycle(mut c: Vec<usize>) -> Vec<usize> {
    let min_pos = c
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(k, _)| k)
        .unwrap_or(0);
    c.rotate_left(min_pos);
    if c.len() > 2 && c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

/// True when `cycle` lists at least 4 distinct vertices forming an induced
/// cycle of `g` in the given cyclic order.
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let distinct: BTreeSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != k || cycle.iter().any(|&v| v == 0 || v > g.n()) {
        return false;
    }
    (0..k).all(|a| {
        (a + 1..k).all(|b| {
            let consecutive = b == a + 1 || (a == 0 && b == k - 1);
            g.has_edge(cycle[a], cycle[b]) == consecutive
        })
    })
}

/// Vertices of a longest chordless induced cycle (length ≥ 4), if any.
pub fn longest_chordless_cycle_vertices(
    g: &Graph,
    guard: usize,
) -> Result<Option<Vec<usize>>, GraphError> {
    let n = g.n();
    if n > guard || n > 30 {
        return Err(GraphError::GuardExceeded {
            n,
            guard: guard.min(30),
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v + 1).fold(0u32, |m, w| m | 1 << (w - 1)))
        .collect();
    let mut best: Option<u32> = None;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones();
        if size < 4 || best.is_some_and(|b| b.count_ones() >= size) {
            continue;
        }
        if (0..n).all(|v| set & (1 << v) == 0 || (adj[v] & set).count_ones() == 2)
            && is_connected_within(&adj, set)
        {
            best = Some(set);
        }
    }
    Ok(best.map(|set| {
        let start = set.trailing_zeros() as usize;
        let mut cycle = vec![start + 1];
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            let next = (0..n)
                .find(|&w| adj[cur] & set & (1 << w) != 0 && w != prev)
                .expect("2-regular");
            if next == start {
                break;
            }
            cycle.push(next + 1);
            prev = cur;
            cur = next;
        }
        normalise_cycle(cycle)
    }))
}

fn is_connected_within(adj: &[u32], set: u32) -> bool {
    let start = set & set.wrapping_neg();
    let mut reached = start;
    loop {
        let mut frontier = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            frontier |= adj[v] & set;
        }
        if frontier == reached {
            return reached == set;
        }
        reached = frontier;
    }
}

/// Length of a longest chordless induced cycle, or `None` when `g` is chordal.
pub fn longest_chordless_cycle(g: &Graph) -> Result<Option<usize>, GraphError> {
    longest_chordless_cycle_with_guard(g, CYCLE_SEARCH_GUARD)
}

pub fn longest_chordless_cycle_with_guard(
    g: &Graph,
    guard: usize,
) -> Result<Option<usize>, GraphError> {
    Ok(longest_chordless_cycle_vertices(g, guard)?.map(|c| c.len()))
}

/// Lower bound on the projective dimension of the module of logarithmic
/// derivations coming from a chordless cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdimBound {
    /// `pdim >= cycle.len() - 3`; in particular the arrangement is not free.
    AtLeast { bound: usize, cycle: Vec<usize> },
    /// The graph is chordal: no obstruction. This does not certify freeness.
    NoObstruction,
}

pub fn pdim_lower_bound(g: &Graph) -> Result<PdimBound, GraphError> {
    pdim_lower_bound_with_guard(g, CYCLE_SEARCH_GUARD)
}

pub fn pdim_lower_bound_with_guard(g: &Graph, guard: usize) -> Result<PdimBound, GraphError> {
    Ok(match longest_chordless_cycle_vertices(g, guard)? {
        Some(cycle) => PdimBound::AtLeast {
            bound: cycle.len() - 3,
            cycle,
        },
        None => PdimBound::NoObstruction,
    })
}

/// Column order for building the complement one column at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOrder {
    pub order: Vec<usize>,
    /// `earlier[k]` counts neighbours of `order[k]` that precede it.
    pub earlier: Vec<usize>,
    /// Index into `order` where each connected component starts.
    pub component_starts: Vec<usize>,
}

pub fn chordal_build_order(g: &Graph) -> Result<BuildOrder, GraphError> {
    let order = match is_chordal(g) {
        Chordality::Chordal(o) => o.into_vec(),
        Chordality::NotChordal(w) => return Err(GraphError::NotChordal(w)),
    };
    let mut pos = vec![0usize; g.n() + 1];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let earlier: Vec<usize> = order
        .iter()
        .enumerate()
        .map(|(k, &v)| g.neighbors(v).filter(|&w| pos[w] < k).count())
        .collect();
    let component_starts = (0..order.len()).filter(|&k| earlier[k] == 0).collect();
    Ok(BuildOrder {
        order,
        earlier,
        component_starts,
    })
}
