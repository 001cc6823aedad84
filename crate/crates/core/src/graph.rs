//! Finite simple undirected graphs: construction, edge-list I/O, generators
//! and connectivity validation.
//!
//! Vertices are always `0..n`.
//!
//! # Edge-list format
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (exactly m lines, 0 <= u, v < n, u != v)
//! ```
//!
//! Blank lines are ignored. Duplicate edges (in either orientation) are
//! merged. Self-loops are an error.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Upper limit on the vertex count accepted from text input.
pub const MAX_PARSED_VERTICES: usize = 1 << 22;

/// Number of reseeded attempts `gnp` makes before giving up.
pub const GNP_MAX_RETRIES: u32 = 1000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices from an edge iterator. Duplicates are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidParams("a graph needs at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Canonical edge-list text; [`parse_edge_list`] inverts it.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line \"n m\"".into()))?;
    let (n, m) = parse_pair(header)
        .ok_or_else(|| Error::Parse(format!("line {hline}: malformed header {header:?}")))?;
    if n == 0 {
        return Err(Error::Parse(format!("line {hline}: vertex count must be positive")));
    }
    if n > MAX_PARSED_VERTICES {
        return Err(Error::Parse(format!(
            "line {hline}: vertex count {n} exceeds limit {MAX_PARSED_VERTICES}"
        )));
    }

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::Parse(format!(
                "line {lineno}: more than the {m} edges declared in the header"
            )));
        }
        let (u, v) = parse_pair(line)
            .ok_or_else(|| Error::Parse(format!("line {lineno}: malformed edge {line:?}")))?;
        if u >= n || v >= n {
            return Err(Error::Parse(format!(
                "line {lineno}: vertex {} out of range for n = {n}",
                u.max(v)
            )));
        }
        if u == v {
            return Err(Error::Parse(format!("line {lineno}: self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were given",
            edges.len()
        )));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub issues: Vec<String>,
}

pub fn validate(g: &Graph) -> ValidationReport {
    let n = g.n();
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    let mut first_unreached = None;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        if components == 1 {
            first_unreached = Some(start);
        }
        component[start] = components;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if component[v] == usize::MAX {
                    component[v] = components;
                    queue.push_back(v);
                }
            }
        }
        components += 1;
    }
    let mut issues = Vec::new();
    if let Some(v) = first_unreached {
        let unreached = component.iter().filter(|&&c| c != 0).count();
        issues.push(format!(
            "{components} connected components; {unreached} vertices unreachable from vertex 0 \
             (first: {v})"
        ));
    }
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count();
    if n > 1 && isolated > 0 {
        issues.push(format!("{isolated} isolated vertices"));
    }
    ValidationReport {
        connected: components == 1,
        n,
        m: g.edge_count(),
        components,
        issues,
    }
}

/// A named graph family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    /// `cycle(1)` is a single vertex and `cycle(2)` a single edge.
    Cycle(usize),
    Complete(usize),
    /// Vertex 0 is the centre; `n` counts the centre.
    Star(usize),
    Hypercube(u32),
    Grid(usize, usize),
    /// Erdős–Rényi with exact edge probability `num/den`.
    Gnp { n: usize, num: u64, den: u64 },
}

/// A generated graph plus how many reseeds it took (always 0 except `gnp`).
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub retries: u32,
}

pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    generate_with_info(family, seed).map(|g| g.graph)
}

pub fn generate_with_info(family: &Family, seed: u64) -> Result<Generated> {
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::InvalidParams(format!("{what} needs n >= 1")))
        } else {
            Ok(n)
        }
    };
    let plain = |graph: Result<Graph>| graph.map(|graph| Generated { graph, retries: 0 });
    match *family {
        Family::Path(n) => {
            let n = positive(n, "path")?;
            plain(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))))
        }
        Family::Cycle(n) => {
            let n = positive(n, "cycle")?;
            let closing = (n > 2).then_some((n - 1, 0));
            plain(Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).chain(closing)))
        }
        Family::Complete(n) => {
            let n = positive(n, "complete")?;
            plain(Graph::from_edges(
                n,
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
            ))
        }
        Family::Star(n) => {
            let n = positive(n, "star")?;
            plain(Graph::from_edges(n, (1..n).map(|v| (0, v))))
        }
        Family::Hypercube(d) => {
            if d > 20 {
                return Err(Error::InvalidParams(format!("hypercube dimension {d} > 20")));
            }
            let n = 1usize << d;
            plain(Graph::from_edges(
                n,
                (0..n).flat_map(|u| {
                    (0..d)
                        .map(move |b| (u, u ^ (1 << b)))
                        .filter(|&(u, v)| u < v)
                }),
            ))
        }
        Family::Grid(rows, cols) => {
            if rows == 0 || cols == 0 {
                return Err(Error::InvalidParams("grid needs rows, cols >= 1".into()));
            }
            let id = move |r: usize, c: usize| r * cols + c;
            let right = (0..rows).flat_map(move |r| (1..cols).map(move |c| (id(r, c - 1), id(r, c))));
            let down = (1..rows).flat_map(move |r| (0..cols).map(move |c| (id(r - 1, c), id(r, c))));
            plain(Graph::from_edges(rows * cols, right.chain(down)))
        }
        Family::Gnp { n, num, den } => gnp(n, num, den, seed),
    }
}

/// G(n, num/den), conditioned on connectivity by reseeding.
///
/// Attempt `r` draws from a ChaCha8 stream keyed by `(seed, r)`; each vertex
/// pair `i < j`, in lexicographic order, consumes one uniform draw from
/// `0..den` and becomes an edge iff the draw is below `num`.
fn gnp(n: usize, num: u64, den: u64, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(Error::InvalidParams("gnp needs n >= 1".into()));
    }
    if den == 0 || num > den {
        return Err(Error::InvalidParams(format!(
            "gnp probability {num}/{den} is not in [0, 1]"
        )));
    }
    for retry in 0..=GNP_MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(retry as u64);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_range(0..den) < num {
                    edges.push((i, j));
                }
            }
        }
        let graph = Graph::from_edges(n, edges)?;
        if validate(&graph).connected {
            return Ok(Generated { graph, retries: retry });
        }
    }
    Err(Error::GenerationFailed { retries: GNP_MAX_RETRIES })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Star(n) => write!(f, "star:{n}"),
            Family::Hypercube(d) => write!(f, "hypercube:{d}"),
            Family::Grid(r, c) => write!(f, "grid:{r},{c}"),
            Family::Gnp { n, num, den } => write!(f, "gnp:{n},{num}/{den}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses generator specs of the form `family:param[,param...]`, for
    /// example `path:5`, `grid:3,4` or `gnp:20,1/4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("generator spec {s:?}: {why}"));
        let (name, rest) = s.split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let params: Vec<&str> = rest.split(',').map(str::trim).collect();
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("bad integer {t:?}")));
        let expect = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s), got {}", params.len())))
            }
        };
        match name.trim() {
            "path" | "cycle" | "complete" | "star" | "hypercube" => {
                expect(1)?;
                let v = int(params[0])?;
                Ok(match name.trim() {
                    "path" => Family::Path(v),
                    "cycle" => Family::Cycle(v),
                    "complete" => Family::Complete(v),
                    "star" => Family::Star(v),
                    _ => Family::Hypercube(
                        u32::try_from(v).map_err(|_| bad("dimension too large"))?,
                    ),
                })
            }
            "grid" => {
                expect(2)?;
                Ok(Family::Grid(int(params[0])?, int(params[1])?))
            }
            "gnp" => {
                expect(2)?;
                let n = int(params[0])?;
                let (num, den) = params[1]
                    .split_once('/')
                    .ok_or_else(|| bad("probability must be written num/den"))?;
                let num = num.trim().parse().map_err(|_| bad("bad probability numerator"))?;
                let den = den.trim().parse().map_err(|_| bad("bad probability denominator"))?;
                Ok(Family::Gnp { n, num, den })
            }
            other => Err(bad(&format!("unknown family {other:?}"))),
        }
    }
}
