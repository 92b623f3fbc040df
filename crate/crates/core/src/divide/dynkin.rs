use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::form::{CriticalPoint, CycleLattice};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexTag {
    Plus,
    Double,
    Minus,
}

impl VertexTag {
    fn symbol(self) -> &'static str {
        match self {
            VertexTag::Plus => "⊕",
            VertexTag::Double => "•",
            VertexTag::Minus => "⊖",
        }
    }

    fn dot_shape(self) -> &'static str {
        match self {
            VertexTag::Plus => "doublecircle",
            VertexTag::Double => "circle",
            VertexTag::Minus => "diamond",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinVertex {
    pub name: String,
    pub tag: VertexTag,
}

/// An undirected edge, stored as a pair of vertex names.
pub type DynkinEdge = [String; 2];

/// Undirected graph with one vertex per basis element and an edge wherever
/// the intersection form is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynkinGraph {
    pub vertices: Vec<DynkinVertex>,
    pub edges: Vec<DynkinEdge>,
}

impl DynkinGraph {
    pub fn from_lattice(lat: &CycleLattice) -> Self {
        let vertices: Vec<DynkinVertex> = lat
            .basis()
            .iter()
            .map(|p| DynkinVertex {
                name: p.to_string(),
                tag: match p {
                    CriticalPoint::Plus(_) => VertexTag::Plus,
                    CriticalPoint::Double(_) => VertexTag::Double,
                    CriticalPoint::Minus(_) => VertexTag::Minus,
                },
            })
            .collect();
        let j = lat.form();
        let mut edges = Vec::new();
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                if !j[(a, b)].is_zero() {
                    edges.push([vertices[a].name.clone(), vertices[b].name.clone()]);
                }
            }
        }
        DynkinGraph { vertices, edges }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: DynkinGraph = serde_json::from_str(text)?;
        g.adjacency()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graphs serialize")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn adjacency(&self) -> Result<Vec<BTreeSet<usize>>> {
        let index: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(k, v)| (v.name.as_str(), k)).collect();
        if index.len() != self.vertices.len() {
            return Err(Error::Parse("duplicate vertex names".into()));
        }
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for [a, b] in &self.edges {
            let (Some(&x), Some(&y)) = (index.get(a.as_str()), index.get(b.as_str())) else {
                return Err(Error::Parse(format!("edge {}-{} names an unknown vertex", a, b)));
            };
            if x == y {
                return Err(Error::Parse(format!("loop at {}", a)));
            }
            adj[x].insert(y);
            adj[y].insert(x);
        }
        Ok(adj)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dynkin {\n");
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "  \"{}\" [shape={}, label=\"{} {}\"];",
                v.name,
                v.tag.dot_shape(),
                v.tag.symbol(),
                v.name
            );
        }
        for [a, b] in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", a, b);
        }
        out.push_str("}\n");
        out
    }

    /// Whether a bijection of vertices preserving tags and adjacency exists.
    pub fn is_isomorphic(&self, other: &DynkinGraph) -> Result<bool> {
        let (a1, a2) = (self.adjacency()?, other.adjacency()?);
        if a1.len() != a2.len() || self.edges.len() != other.edges.len() {
            return Ok(false);
        }
        let key = |g: &DynkinGraph, adj: &[BTreeSet<usize>], v: usize| (g.vertices[v].tag, adj[v].len());
        let mut k1: Vec<_> = (0..a1.len()).map(|v| key(self, &a1, v)).collect();
        let mut k2: Vec<_> = (0..a2.len()).map(|v| key(other, &a2, v)).collect();
        k1.sort();
        k2.sort();
        if k1 != k2 {
            return Ok(false);
        }
        let mut map = vec![usize::MAX; a1.len()];
        let mut used = vec![false; a2.len()];
        Ok(extend(0, self, other, &a1, &a2, &mut map, &mut used))
    }
}

fn extend(
    v: usize,
    g1: &DynkinGraph,
    g2: &DynkinGraph,
    a1: &[BTreeSet<usize>],
    a2: &[BTreeSet<usize>],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == a1.len() {
        return true;
    }
    for w in 0..a2.len() {
        if used[w] || g1.vertices[v].tag != g2.vertices[w].tag || a1[v].len() != a2[w].len() {
            continue;
        }
        // adjacency to already mapped vertices must agree
        let consistent = (0..v).all(|u| a1[v].contains(&u) == a2[w].contains(&map[u]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(v + 1, g1, g2, a1, a2, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[(&str, VertexTag)], es: &[(&str, &str)]) -> DynkinGraph {
        DynkinGraph {
            vertices: vs.iter().map(|(n, t)| DynkinVertex { name: n.to_string(), tag: *t }).collect(),
            edges: es.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
    }

    #[test]
    fn isomorphism_respects_tags() {
        use VertexTag::*;
        let a = graph(&[("x", Double), ("y", Minus), ("z", Double)], &[("x", "y"), ("y", "z")]);
        let b = graph(&[("p", Double), ("q", Double), ("r", Minus)], &[("p", "r"), ("r", "q")]);
        let c = graph(&[("p", Double), ("q", Minus), ("r", Double)], &[("p", "q"), ("p", "r")]);
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!a.is_isomorphic(&c).unwrap());
    }

    #[test]
    fn dot_output() {
        let g = graph(&[("D1", VertexTag::Double), ("R-1", VertexTag::Minus)], &[("D1", "R-1")]);
        let dot = g.to_dot();
        assert!(dot.contains("shape=circle"));
        assert!(dot.contains("shape=diamond"));
        assert!(dot.contains("\"D1\" -- \"R-1\""));
    }

    #[test]
    fn bad_edges() {
        assert!(DynkinGraph::from_json(r#"{"vertices": [{"name": "a", "tag": "plus"}], "edges": [["a", "b"]]}"#).is_err());
    }
}
