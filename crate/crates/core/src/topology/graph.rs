//! Weighted graphs and Kruskal spanning forests.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    /// `(min, max)` endpoint order.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Maximize,
    Minimize,
}

/// Undirected weighted graph without loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedGraph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(n_vertices: usize) -> Self {
        Self { n_vertices, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        if u == v {
            return Err(Error::Invalid(format!("self-loop on vertex {u}")));
        }
        let bound = u.max(v);
        if bound >= self.n_vertices {
            return Err(Error::IndexOutOfRange { index: bound, len: self.n_vertices });
        }
        let key = (u.min(v), u.max(v));
        if self.edges.iter().any(|e| e.key() == key) {
            return Err(Error::Invalid(format!("duplicate edge {key:?}")));
        }
        if !weight.is_finite() {
            return Err(Error::Invalid(format!("edge {key:?} has non-finite weight")));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Same edge set with weights replaced by `f(u, v, old_weight)`.
    pub fn reweighted(&self, f: impl Fn(usize, usize, f64) -> f64) -> WeightedGraph {
        WeightedGraph {
            n_vertices: self.n_vertices,
            edges: self.edges.iter().map(|e| Edge { weight: f(e.u, e.v, e.weight), ..*e }).collect(),
        }
    }
}

/// Disjoint sets with path compression and union by rank.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Optimal spanning tree of every connected component (Kruskal).
///
/// Edges are scanned by weight (ascending to minimize, descending to
/// maximize) with ties broken by `(min(u,v), max(u,v))`, so the result is
/// deterministic. The returned edges are sorted by `(min, max)` endpoint.
pub fn spanning_forest(graph: &WeightedGraph, objective: Objective) -> Vec<Edge> {
    let mut order: Vec<&Edge> = graph.edges().iter().collect();
    order.sort_by(|a, b| {
        let by_weight = match objective {
            Objective::Minimize => a.weight.total_cmp(&b.weight),
            Objective::Maximize => b.weight.total_cmp(&a.weight),
        };
        by_weight.then(a.key().cmp(&b.key()))
    });
    let mut sets = UnionFind::new(graph.n_vertices());
    let mut forest: Vec<Edge> = order.into_iter().filter(|e| sets.union(e.u, e.v)).copied().collect();
    forest.sort_by_key(Edge::key);
    forest
}
