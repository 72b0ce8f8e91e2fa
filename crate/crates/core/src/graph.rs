//! The marriage graph on acceptable pairs and its subgraph between two
//! stable matchings.
//!
//! An edge `(m,w) -> (m,w')` records that `m` weakly prefers `w'` to `w`; an
//! edge `(m,w) -> (m',w)` records that `w` weakly prefers `m'` to `m`. Ties
//! therefore show up as antiparallel pairs.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Pair, PersonId, Side};
use crate::matching::{ensure_stable, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: Pair,
    pub to: Pair,
    /// Whose preference the edge represents.
    pub rep: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarriageGraph {
    vertices: Vec<Pair>,
    edges: Vec<Edge>,
}

impl MarriageGraph {
    pub fn vertices(&self) -> &[Pair] {
        &self.vertices
    }

    /// Edges sorted by the canonical positions of (tail, head).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, from: Pair, to: Pair) -> bool {
        self.edges.iter().any(|e| e.from == from && e.to == to)
    }

    /// Heads of the edges leaving `v`.
    pub fn successors(&self, v: Pair) -> impl Iterator<Item = Pair> + '_ {
        self.edges.iter().filter(move |e| e.from == v).map(|e| e.to)
    }

    pub fn to_dot(&self) -> String {
        dot("gamma", &self.vertices, &self.edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json(&self.vertices, &self.edges)
    }
}

pub fn build_gamma(instance: &Instance) -> MarriageGraph {
    let vertices = instance.acceptable_pairs().to_vec();
    let mut by_man: HashMap<usize, Vec<Pair>> = HashMap::new();
    let mut by_woman: HashMap<usize, Vec<Pair>> = HashMap::new();
    for &v in &vertices {
        by_man.entry(v.man).or_default().push(v);
        by_woman.entry(v.woman).or_default().push(v);
    }
    let mut edges = Vec::new();
    for &v in &vertices {
        for &u in &by_man[&v.man] {
            if u.woman != v.woman
                && instance.man_score(v.man, Some(u.woman))
                    <= instance.man_score(v.man, Some(v.woman))
            {
                edges.push(Edge {
                    from: v,
                    to: u,
                    rep: Side::Man,
                });
            }
        }
        for &u in &by_woman[&v.woman] {
            if u.man != v.man
                && instance.woman_score(v.woman, Some(u.man))
                    <= instance.woman_score(v.woman, Some(v.man))
            {
                edges.push(Edge {
                    from: v,
                    to: u,
                    rep: Side::Woman,
                });
            }
        }
    }
    sort_edges(instance, &mut edges);
    MarriageGraph { vertices, edges }
}

fn sort_edges(instance: &Instance, edges: &mut [Edge]) {
    edges.sort_by_key(|e| (instance.pair_index(e.from), instance.pair_index(e.to)));
}

/// `a` lies between `b` and `c` in the order of `judge`:
/// `a = b`, `a = c`, `b < a ≤ c`, or `c < a ≤ b`. `None` is ⊥.
pub fn x_between(
    instance: &Instance,
    judge: PersonId,
    a: Option<PersonId>,
    b: Option<PersonId>,
    c: Option<PersonId>,
) -> Result<bool> {
    let sa = instance.score(judge, a)?;
    let sb = instance.score(judge, b)?;
    let sc = instance.score(judge, c)?;
    Ok(between(a == b, a == c, sa, sb, sc))
}

/// Scores are "lower is better", so `b < a` reads `sa < sb`.
#[cfg(not(feature = "mutant-xbetween"))]
fn between(a_is_b: bool, a_is_c: bool, sa: usize, sb: usize, sc: usize) -> bool {
    a_is_b || a_is_c || (sa < sb && sc <= sa) || (sa < sc && sb <= sa)
}

#[cfg(feature = "mutant-xbetween")]
fn between(a_is_b: bool, a_is_c: bool, sa: usize, sb: usize, sc: usize) -> bool {
    a_is_b || !a_is_c || (sa < sb && sc <= sa) || (sa < sc && sb <= sa)
}

/// Induced subgraph of the marriage graph on the pairs lying between two
/// stable matchings, with its weak components.
#[derive(Debug, Clone)]
pub struct StarSubgraph {
    mu: Matching,
    mu_prime: Matching,
    vertices: Vec<Pair>,
    edges: Vec<Edge>,
    nontrivial: Vec<Vec<Pair>>,
    isolated: Vec<Pair>,
}

impl StarSubgraph {
    pub fn matchings(&self) -> (&Matching, &Matching) {
        (&self.mu, &self.mu_prime)
    }

    pub fn vertices(&self) -> &[Pair] {
        &self.vertices
    }

    pub fn contains(&self, v: Pair) -> bool {
        self.vertices.binary_search_by(|p| p.cmp(&v)).is_ok()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Nontrivial components, ordered by their smallest vertex. Component
    /// `i` of the usual 1-based numbering is `nontrivial_components()[i - 1]`.
    pub fn nontrivial_components(&self) -> &[Vec<Pair>] {
        &self.nontrivial
    }

    pub fn nontrivial_count(&self) -> usize {
        self.nontrivial.len()
    }

    /// Isolated vertices in canonical order.
    pub fn isolated_vertices(&self) -> &[Pair] {
        &self.isolated
    }

    /// 1-based nontrivial component containing `v`, or 0 if `v` is isolated.
    pub fn component_of(&self, v: Pair) -> Option<usize> {
        if self.isolated.contains(&v) {
            return Some(0);
        }
        self.nontrivial
            .iter()
            .position(|c| c.contains(&v))
            .map(|i| i + 1)
    }

    pub fn to_dot(&self) -> String {
        dot_with_components("star", &self.vertices, &self.edges, |v| {
            self.component_of(v)
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json_with_components(&self.vertices, &self.edges, |v| self.component_of(v))
    }
}

/// Builds the between-subgraph of two stable matchings. Unstable inputs are
/// rejected.
pub fn build_star(instance: &Instance, mu: &Matching, mu_prime: &Matching) -> Result<StarSubgraph> {
    ensure_stable(instance, mu)?;
    ensure_stable(instance, mu_prime)?;
    Ok(build_star_unchecked(instance, mu, mu_prime))
}

pub(crate) fn build_star_unchecked(
    instance: &Instance,
    mu: &Matching,
    mu_prime: &Matching,
) -> StarSubgraph {
    let vertices: Vec<Pair> = instance
        .acceptable_pairs()
        .iter()
        .copied()
        .filter(|&Pair { man, woman }| {
            let (a, b, c) = (Some(woman), mu.wife(man), mu_prime.wife(man));
            let for_man = between(
                a == b,
                a == c,
                instance.man_score(man, a),
                instance.man_score(man, b),
                instance.man_score(man, c),
            );
            let (a, b, c) = (Some(man), mu.husband(woman), mu_prime.husband(woman));
            for_man
                && between(
                    a == b,
                    a == c,
                    instance.woman_score(woman, a),
                    instance.woman_score(woman, b),
                    instance.woman_score(woman, c),
                )
        })
        .collect();
    let gamma = build_gamma(instance);
    let keep = |p: &Pair| vertices.binary_search(p).is_ok();
    let edges: Vec<Edge> = gamma
        .edges
        .into_iter()
        .filter(|e| keep(&e.from) && keep(&e.to))
        .collect();

    let components = weak_components(&vertices, &edges);
    let (nontrivial, trivial): (Vec<_>, Vec<_>) = components.into_iter().partition(|c| c.len() > 1);
    let mut isolated: Vec<Pair> = trivial.into_iter().flatten().collect();
    isolated.sort();
    StarSubgraph {
        mu: mu.clone(),
        mu_prime: mu_prime.clone(),
        vertices,
        edges,
        nontrivial,
        isolated,
    }
}

/// Weak components, each sorted, ordered by smallest vertex. `vertices`
/// must be sorted.
fn weak_components(vertices: &[Pair], edges: &[Edge]) -> Vec<Vec<Pair>> {
    let index = |p: &Pair| {
        vertices
            .binary_search(p)
            .expect("edge endpoint is a vertex")
    };
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (
            find(&mut parent, index(&e.from)),
            find(&mut parent, index(&e.to)),
        );
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<Pair>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        let root = find(&mut parent, i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(v);
    }
    groups
}

/// Subgraph of a star induced by the vertices involving one person.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBlock {
    pub owner: PersonId,
    pub vertices: Vec<Pair>,
    pub edges: Vec<Edge>,
}

pub fn principal_block(star: &StarSubgraph, owner: PersonId) -> Result<PrincipalBlock> {
    let vertices: Vec<Pair> = star
        .vertices
        .iter()
        .copied()
        .filter(|v| v.involves(owner))
        .collect();
    if vertices.is_empty() {
        return Err(Error::EmptyBlock(owner));
    }
    let edges = star
        .edges
        .iter()
        .copied()
        .filter(|e| vertices.contains(&e.from) && vertices.contains(&e.to))
        .collect();
    Ok(PrincipalBlock {
        owner,
        vertices,
        edges,
    })
}

/// Isolated vertices of the star; these coincide with `μ ∩ μ'` for stable
/// inputs.
pub fn isolated_vertices(star: &StarSubgraph) -> Vec<Pair> {
    star.isolated.clone()
}

/// Restriction of `matching` to the `i`-th (1-based) nontrivial component.
pub fn restrict(star: &StarSubgraph, matching: &Matching, i: usize) -> Vec<Pair> {
    matching.restricted_to(&star.nontrivial[i - 1])
}

fn label(p: Pair) -> String {
    format!("m{},w{}", p.man, p.woman)
}

fn rep_name(side: Side) -> &'static str {
    match side {
        Side::Man => "man",
        Side::Woman => "woman",
    }
}

fn gamma_components(vertices: &[Pair], edges: &[Edge]) -> impl Fn(Pair) -> Option<usize> {
    let mut ids = HashMap::new();
    let mut next = 1;
    for comp in weak_components(vertices, edges) {
        let id = if comp.len() > 1 {
            next += 1;
            next - 1
        } else {
            0
        };
        for v in comp {
            ids.insert(v, id);
        }
    }
    move |v| ids.get(&v).copied()
}

fn dot(name: &str, vertices: &[Pair], edges: &[Edge]) -> String {
    dot_with_components(name, vertices, edges, gamma_components(vertices, edges))
}

fn dot_with_components(
    name: &str,
    vertices: &[Pair],
    edges: &[Edge],
    component: impl Fn(Pair) -> Option<usize>,
) -> String {
    let mut out = format!("digraph {name} {{\n");
    for &v in vertices {
        let c = component(v).unwrap_or(0);
        writeln!(out, "  \"{}\" [component={c}];", label(v)).unwrap();
    }
    for e in edges {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [rep={}];",
            label(e.from),
            label(e.to),
            rep_name(e.rep)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex {
    label: String,
    component: usize,
}

#[derive(Serialize)]
struct JsonEdge {
    from: String,
    to: String,
    rep: &'static str,
}

fn json(vertices: &[Pair], edges: &[Edge]) -> serde_json::Value {
    json_with_components(vertices, edges, gamma_components(vertices, edges))
}

fn json_with_components(
    vertices: &[Pair],
    edges: &[Edge],
    component: impl Fn(Pair) -> Option<usize>,
) -> serde_json::Value {
    let vertices: Vec<JsonVertex> = vertices
        .iter()
        .map(|&v| JsonVertex {
            label: label(v),
            component: component(v).unwrap_or(0),
        })
        .collect();
    let edges: Vec<JsonEdge> = edges
        .iter()
        .map(|e| JsonEdge {
            from: label(e.from),
            to: label(e.to),
            rep: rep_name(e.rep),
        })
        .collect();
    serde_json::json!({ "format": 1, "vertices": vertices, "edges": edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_instance, sample_pair};
    use crate::instance::tight_family;

    fn p(m: usize, w: usize) -> Pair {
        Pair::new(m, w)
    }

    fn matching(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_of_sample() {
        let g = build_gamma(&sample_instance());
        assert_eq!(g.vertices().len(), 7);
        assert_eq!(g.edges().len(), 11);
        let expected = [
            (p(3, 1), p(3, 2)),
            (p(3, 2), p(3, 1)),
            (p(2, 3), p(2, 4)),
            (p(2, 4), p(2, 3)),
            (p(1, 2), p(3, 2)),
            (p(3, 2), p(1, 2)),
            (p(1, 4), p(1, 2)),
            (p(1, 4), p(2, 4)),
            (p(2, 3), p(2, 1)),
            (p(2, 4), p(2, 1)),
            (p(3, 1), p(2, 1)),
        ];
        for (a, b) in expected {
            assert!(g.has_edge(a, b), "missing {a} -> {b}");
        }
        let rep = |a, b| {
            g.edges()
                .iter()
                .find(|e| e.from == a && e.to == b)
                .unwrap()
                .rep
        };
        assert_eq!(rep(p(1, 4), p(2, 4)), Side::Woman);
        assert_eq!(rep(p(1, 4), p(1, 2)), Side::Man);
    }

    #[test]
    fn gamma_small_cases() {
        let empty = build_gamma(&Instance::new(2, 2, []));
        assert!(empty.vertices().is_empty() && empty.edges().is_empty());
        let one = build_gamma(&tight_family(1));
        assert_eq!(one.vertices(), &[p(1, 1), p(1, 2)]);
        assert_eq!(one.edges().len(), 2);
        assert!(one.has_edge(p(1, 1), p(1, 2)) && one.has_edge(p(1, 2), p(1, 1)));
    }

    #[test]
    fn x_between_cases() {
        let inst = sample_instance();
        let (m, w) = (PersonId::man, PersonId::woman);
        assert!(x_between(&inst, m(2), Some(w(3)), Some(w(3)), Some(w(1))).unwrap());
        assert!(!x_between(&inst, m(2), Some(w(3)), Some(w(1)), Some(w(4))).unwrap());
        assert!(x_between(&inst, m(2), None, Some(w(1)), None).unwrap());
        // w4 < w2 for m1, so w4 is not between w2 and w2.
        assert!(!x_between(&inst, m(1), Some(w(4)), Some(w(2)), Some(w(2))).unwrap());
        // ⊥ < w4 ≤ w2 with the arguments in either order.
        assert!(x_between(&inst, m(1), Some(w(4)), Some(w(2)), None).unwrap());
        assert!(x_between(&inst, m(1), Some(w(2)), Some(w(2)), None).unwrap());
        // ⊥ < w4 ≤ w2.
        assert!(x_between(&inst, m(1), Some(w(4)), None, Some(w(2))).unwrap());
        assert!(x_between(&inst, m(2), Some(w(1)), Some(w(1)), Some(w(3))).is_ok());
        assert!(x_between(&inst, m(1), Some(w(1)), None, None).is_err());
    }

    #[test]
    fn star_of_sample_pair() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        let star = build_star(&inst, &mu, &nu).unwrap();
        assert_eq!(star.vertices(), &[p(1, 2), p(1, 4), p(2, 1), p(3, 2)]);
        assert_eq!(star.edges().len(), 3);
        for (a, b) in [(p(1, 2), p(3, 2)), (p(3, 2), p(1, 2)), (p(1, 4), p(1, 2))] {
            assert!(star.edges().iter().any(|e| e.from == a && e.to == b));
        }
        assert_eq!(star.isolated_vertices(), &[p(2, 1)]);
        assert_eq!(star.nontrivial_count(), 1);
        assert_eq!(
            star.nontrivial_components()[0],
            vec![p(1, 2), p(1, 4), p(3, 2)]
        );
    }

    #[test]
    fn star_of_equal_matchings() {
        let inst = sample_instance();
        let (mu, _) = sample_pair();
        let star = build_star(&inst, &mu, &mu).unwrap();
        assert_eq!(star.nontrivial_count(), 0);
        assert_eq!(isolated_vertices(&star), mu.pairs());
        assert_eq!(star.vertices(), mu.pairs());
    }

    #[test]
    fn star_of_tight_family() {
        let inst = tight_family(2);
        let star = build_star(&inst, &matching("m1-w1,m2-w2"), &matching("m1-w3,m2-w4")).unwrap();
        assert_eq!(star.nontrivial_count(), 2);
        assert_eq!(star.nontrivial_components()[0], vec![p(1, 1), p(1, 3)]);
        assert_eq!(star.nontrivial_components()[1], vec![p(2, 2), p(2, 4)]);
        assert!(isolated_vertices(&star).is_empty());
        assert_eq!(star.component_of(p(2, 4)), Some(2));
    }

    #[test]
    fn star_rejects_unstable() {
        let inst = tight_family(1);
        assert_eq!(
            build_star(&inst, &Matching::empty(), &matching("m1-w1")).unwrap_err(),
            Error::Unstable(p(1, 1))
        );
    }

    #[test]
    fn principal_blocks_of_sample() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        let star = build_star(&inst, &mu, &nu).unwrap();
        let w2 = principal_block(&star, PersonId::woman(2)).unwrap();
        assert_eq!(w2.vertices, vec![p(1, 2), p(3, 2)]);
        assert_eq!(w2.edges.len(), 2);
        let m1 = principal_block(&star, PersonId::man(1)).unwrap();
        assert_eq!(m1.vertices, vec![p(1, 2), p(1, 4)]);
        assert_eq!(
            m1.edges,
            vec![Edge {
                from: p(1, 4),
                to: p(1, 2),
                rep: Side::Man
            }]
        );
        assert_eq!(
            principal_block(&star, PersonId::woman(3)),
            Err(Error::EmptyBlock(PersonId::woman(3)))
        );
    }

    #[test]
    fn exports() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        let star = build_star(&inst, &mu, &nu).unwrap();
        let dot = star.to_dot();
        assert!(dot.contains("\"m1,w4\" -> \"m1,w2\" [rep=man];"));
        assert!(dot.contains("\"m2,w1\" [component=0];"));
        assert!(dot.contains("\"m3,w2\" [component=1];"));
        let json = star.to_json();
        assert_eq!(json["format"], 1);
        assert_eq!(json["edges"].as_array().unwrap().len(), 3);
        let g = build_gamma(&inst).to_json();
        assert_eq!(g["vertices"].as_array().unwrap().len(), 7);
    }
}
