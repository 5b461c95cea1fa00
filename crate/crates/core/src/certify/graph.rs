//! Horocycle intersection graph and the degree-bounded greedy pairing.

use crate::error::{Error, Result};

/// Cusps whose horocycles of length `c` meet. An edge joins two cusps whose horocycles
/// touch; a self-intersection flag marks a cusp whose horocycle meets itself.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub self_intersect: Vec<bool>,
    /// Degree cap `H`.
    pub degree_cap: usize,
    /// Horocycle length `C` at which intersections were recorded.
    pub c: f64,
}

fn invalid(detail: impl Into<String>) -> Error {
    Error::Input { field: "horocycle_graph".into(), detail: detail.into() }
}

impl IntersectionGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn validate(&self) -> Result<()> {
        if self.self_intersect.len() != self.vertices {
            return Err(invalid(format!(
                "self_intersect has {} flags for {} vertices",
                self.self_intersect.len(),
                self.vertices
            )));
        }
        if self.degree_cap == 0 {
            return Err(invalid("degree cap H must be at least 1"));
        }
        if !(self.c > 0.0) {
            return Err(invalid(format!("horocycle length C must be positive, got {}", self.c)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            if u >= self.vertices || v >= self.vertices {
                return Err(invalid(format!("edge ({u}, {v}) names a missing vertex")));
            }
            if u == v {
                return Err(invalid(format!("loop at {u}; use self_intersect")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        let adj = self.adjacency();
        for (v, list) in adj.iter().enumerate() {
            if list.len() > self.degree_cap {
                return Err(invalid(format!("vertex {v} has degree {} above H = {}", list.len(), self.degree_cap)));
            }
            if list.is_empty() && !self.self_intersect[v] {
                return Err(invalid(format!("vertex {v} has neither an edge nor a self-intersection")));
            }
        }
        Ok(())
    }

    /// Vertices of degree ≥ 1.
    pub fn touched(&self) -> usize {
        self.adjacency().iter().filter(|l| !l.is_empty()).count()
    }

    /// `V − x + ⌊x/2H⌋`.
    pub fn guarantee(&self) -> usize {
        let x = self.touched();
        self.vertices - x + x / (2 * self.degree_cap)
    }
}

/// One pants found by the pairing: a self-intersecting cusp, or two touching cusps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PantsSeed {
    Single(usize),
    Pair(usize, usize),
}

/// Greedy pairing: while edges remain, take a maximum-degree vertex (smallest index on ties),
/// pair it with its smallest-index neighbour, delete both and every vertex left isolated.
/// Originally isolated vertices become singletons.
pub fn find_disjoint_pants(graph: &IntersectionGraph) -> Result<Vec<PantsSeed>> {
    graph.validate()?;
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        graph.adjacency().into_iter().map(|l| l.into_iter().collect()).collect();
    let mut out: Vec<PantsSeed> = (0..graph.vertices).filter(|&v| adj[v].is_empty()).map(PantsSeed::Single).collect();
    let mut alive: Vec<bool> = adj.iter().map(|s| !s.is_empty()).collect();
    loop {
        let pick = (0..graph.vertices).filter(|&v| alive[v]).max_by(|&a, &b| adj[a].len().cmp(&adj[b].len()).then(b.cmp(&a)));
        let Some(v) = pick else { break };
        let w = *adj[v].iter().next().expect("alive vertices keep an edge");
        out.push(PantsSeed::Pair(v.min(w), v.max(w)));
        let mut touched = Vec::new();
        for x in [v, w] {
            alive[x] = false;
            for y in std::mem::take(&mut adj[x]) {
                adj[y].remove(&x);
                touched.push(y);
            }
        }
        for y in touched {
            if alive[y] && adj[y].is_empty() {
                alive[y] = false;
            }
        }
    }
    Ok(out)
}
