//! Extreme-point adjacency, paths and diameter on the 1-skeleton of the
//! stable-matching polytope.
//!
//! Two stable matchings are adjacent exactly when their between-subgraph
//! has one nontrivial component. Flipping one component at a time gives a
//! path whose length is the number of nontrivial components.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_star, build_star_unchecked, StarSubgraph};
use crate::instance::{Instance, Pair};
use crate::matching::{enumerate_stable_with_cap, Matching, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Adjacency {
    pub adjacent: bool,
    pub nontrivial_components: usize,
}

pub fn are_adjacent(instance: &Instance, mu: &Matching, nu: &Matching) -> Result<Adjacency> {
    if mu == nu {
        return Err(Error::EqualMatchings);
    }
    Ok(adjacency_of(&build_star(instance, mu, nu)?))
}

fn adjacency_of(star: &StarSubgraph) -> Adjacency {
    Adjacency {
        adjacent: star.nontrivial_count() == 1,
        nontrivial_components: star.nontrivial_count(),
    }
}

/// Isolated vertices plus, on component `i`, the pairs of `μ'` when
/// `take_second(i)` and of `μ` otherwise.
fn recombine(star: &StarSubgraph, take_second: impl Fn(usize) -> bool) -> Result<Matching> {
    let (mu, nu) = star.matchings();
    let mut pairs: Vec<Pair> = star.isolated_vertices().to_vec();
    for (i, component) in star.nontrivial_components().iter().enumerate() {
        let source = if take_second(i + 1) { nu } else { mu };
        pairs.extend(source.restricted_to(component));
    }
    Matching::from_pairs(pairs)
        .map_err(|e| Error::Internal(format!("recombined pairs do not form a matching: {e}")))
}

/// `μ = μ⁰, μ¹, …, μᵏ = μ'` where `μʲ` agrees with `μ'` on components
/// `1..=j` and with `μ` on the rest.
pub fn path_between(instance: &Instance, mu: &Matching, nu: &Matching) -> Result<Vec<Matching>> {
    let star = build_star(instance, mu, nu)?;
    let k = star.nontrivial_count();
    let path = (0..=k)
        .map(|j| recombine(&star, |i| i <= j))
        .collect::<Result<Vec<_>>>()?;
    if path.first() != Some(mu) || path.last() != Some(nu) {
        return Err(Error::Internal(
            "component-wise path does not start at μ and end at μ'".into(),
        ));
    }
    Ok(path)
}

/// For a pair with at least two nontrivial components, the two matchings
/// obtained by swapping component 1; `x_μ + x_μ' = x_μ̄ + x_μ̄'`.
pub fn non_adjacency_witness(
    instance: &Instance,
    mu: &Matching,
    nu: &Matching,
) -> Result<Option<(Matching, Matching)>> {
    let star = build_star(instance, mu, nu)?;
    if star.nontrivial_count() < 2 {
        return Ok(None);
    }
    let bar = recombine(&star, |i| i == 1)?;
    let bar_prime = recombine(&star, |i| i != 1)?;
    Ok(Some((bar, bar_prime)))
}

/// Stable matchings as nodes, adjacent pairs as edges.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    nodes: Vec<Matching>,
    edges: Vec<(usize, usize)>,
    neighbours: Vec<Vec<usize>>,
    index: HashMap<Matching, usize>,
}

pub fn build_skeleton(instance: &Instance) -> Result<SkeletonGraph> {
    build_skeleton_with_cap(instance, DEFAULT_ENUMERATION_CAP)
}

pub fn build_skeleton_with_cap(instance: &Instance, cap: usize) -> Result<SkeletonGraph> {
    let nodes = enumerate_stable_with_cap(instance, cap)?;
    Ok(SkeletonGraph::from_nodes(instance, nodes))
}

impl SkeletonGraph {
    /// `nodes` must be distinct stable matchings of `instance`.
    pub fn from_nodes(instance: &Instance, nodes: Vec<Matching>) -> Self {
        let mut edges = Vec::new();
        let mut neighbours = vec![Vec::new(); nodes.len()];
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                let star = build_star_unchecked(instance, &nodes[a], &nodes[b]);
                if star.nontrivial_count() == 1 {
                    edges.push((a, b));
                    neighbours[a].push(b);
                    neighbours[b].push(a);
                }
            }
        }
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        SkeletonGraph {
            nodes,
            edges,
            neighbours,
            index,
        }
    }

    pub fn nodes(&self) -> &[Matching] {
        &self.nodes
    }

    /// Edges as `(a, b)` node positions with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn node_index(&self, m: &Matching) -> Result<usize> {
        self.index
            .get(m)
            .copied()
            .ok_or_else(|| Error::UnknownNode(m.to_string()))
    }

    fn bfs(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.neighbours[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, mu: &Matching, nu: &Matching) -> Result<usize> {
        let a = self.node_index(mu)?;
        let b = self.node_index(nu)?;
        self.bfs(a)[b].ok_or(Error::Disconnected)
    }

    /// Largest shortest-path distance over all node pairs.
    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for start in 0..self.nodes.len() {
            for d in self.bfs(start) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// All-pairs distances, row per node.
    pub fn distances(&self) -> Result<Vec<Vec<usize>>> {
        (0..self.nodes.len())
            .map(|s| {
                self.bfs(s)
                    .into_iter()
                    .map(|d| d.ok_or(Error::Disconnected))
                    .collect()
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph skeleton {\n");
        for m in &self.nodes {
            writeln!(out, "  \"{m}\";").unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  \"{}\" -- \"{}\";", self.nodes[a], self.nodes[b]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<String> = self.nodes.iter().map(ToString::to_string).collect();
        serde_json::json!({ "format": 1, "nodes": nodes, "edges": self.edges })
    }
}
