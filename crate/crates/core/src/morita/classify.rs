//! The weak Morita classification database at a fixed global dimension:
//! nodes are (group, twist-orbit) pairs, edges carry duality-datum
//! witnesses, and classes are the connected components under union-find.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::engine::Workspace;
use crate::error::{Error, Result};
use crate::group::catalog::{catalog, CATALOG_MAX_ORDER};

use super::datum::{dual_node, OrbitCache, PointedCategoryNode};
use super::enumerate::{expand_prefix, prefixes, DatumSpec};
use super::unionfind::UnionFind;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeRecord {
    pub group: String,
    pub class: Vec<i64>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub witness: EdgeWitness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeWitness {
    #[serde(flatten)]
    pub spec: DatumSpec,
    pub epsilon_modulus: i64,
    pub epsilon_values: Vec<i64>,
    pub f_values: Vec<usize>,
    pub f_hat_values: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MoritaDatabase {
    pub schema: String,
    pub version: String,
    pub dimension: usize,
    pub max_order: usize,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    pub classes: Vec<Vec<usize>>,
}

impl MoritaDatabase {
    pub fn node_index(&self, node: &PointedCategoryNode) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.group == node.group && n.class == node.class)
    }

    pub fn class_of(&self, idx: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&idx))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("database serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let db: MoritaDatabase = serde_json::from_value(v.clone())
            .map_err(|e| Error::BadInput(format!("bad database JSON: {e}")))?;
        if db.schema != SCHEMA {
            return Err(Error::BadInput(format!("unknown schema {}", db.schema)));
        }
        Ok(db)
    }
}

pub const SCHEMA: &str = "morita-db/1";

/// Classify all pointed fusion categories of global dimension n up to weak
/// Morita equivalence. `jobs` bounds the worker count; any value produces
/// byte-identical output.
pub fn classify(ws: &Workspace, n: usize, jobs: usize) -> Result<MoritaDatabase> {
    if n > CATALOG_MAX_ORDER {
        return Err(Error::OrderOutOfCatalog(n, CATALOG_MAX_ORDER));
    }
    let orbit_cache = OrbitCache::default();
    // Nodes: every (group, twist orbit) pair at this order.
    let mut nodes: Vec<NodeRecord> = Vec::new();
    for entry in catalog().of_order(n) {
        let orbits = orbit_cache.get(ws, &entry.key)?;
        for orbit in &orbits.orbits {
            nodes.push(NodeRecord {
                group: entry.key.clone(),
                class: orbit[0].clone(),
                orbit_size: orbit.len(),
            });
        }
    }
    nodes.sort_by(|a, b| (&a.group, &a.class).cmp(&(&b.group, &b.class)));
    let index_of: HashMap<(String, Vec<i64>), usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| ((n.group.clone(), n.class.clone()), i))
        .collect();

    // Edges from the enumeration, evaluated in parallel per prefix.
    let prefix_list = prefixes(ws, n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::ResourceBound(format!("cannot build worker pool: {e}")))?;
    let results: Result<Vec<Vec<(usize, usize, EdgeWitness)>>> = pool.install(|| {
        prefix_list
            .par_iter()
            .map(|prefix| {
                let mut out = Vec::new();
                for item in expand_prefix(ws, prefix)? {
                    let (from_node, to_node) = dual_node(ws, &orbit_cache, &item.datum)?;
                    let from = *index_of
                        .get(&(from_node.group.clone(), from_node.class.clone()))
                        .ok_or_else(|| Error::Mismatch("edge endpoint is not a node".into()))?;
                    let to = *index_of
                        .get(&(to_node.group.clone(), to_node.class.clone()))
                        .ok_or_else(|| Error::Mismatch("edge endpoint is not a node".into()))?;
                    let witness = EdgeWitness {
                        spec: item.spec,
                        epsilon_modulus: item.datum.epsilon.modulus,
                        epsilon_values: item.datum.epsilon.values.clone(),
                        f_values: item.datum.f.values.clone(),
                        f_hat_values: item.datum.f_hat.values.clone(),
                    };
                    out.push((from, to, witness));
                }
                Ok(out)
            })
            .collect()
    });
    let mut edges: Vec<EdgeRecord> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for batch in results? {
        for (from, to, witness) in batch {
            if seen.contains_key(&(from, to)) {
                continue;
            }
            seen.insert((from, to), edges.len());
            edges.push(EdgeRecord { from, to, witness });
        }
    }
    // Double-dual symmetry: the reverse of every directed edge must arise
    // from some datum.
    for &(from, to) in seen.keys() {
        if !seen.contains_key(&(to, from)) {
            return Err(Error::Mismatch(format!(
                "edge {from}->{to} has no reverse witness; double-dual symmetry violated"
            )));
        }
    }

    let mut uf = UnionFind::new(nodes.len());
    for e in &edges {
        uf.union(e.from, e.to);
    }
    let classes = uf.classes();
    Ok(MoritaDatabase {
        schema: SCHEMA.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        dimension: n,
        max_order: CATALOG_MAX_ORDER,
        nodes,
        edges,
        classes,
    })
}

pub struct CheckResult {
    pub node_a: PointedCategoryNode,
    pub node_b: PointedCategoryNode,
    pub equivalent: bool,
    /// Indices into `db.edges` forming a witness path when equivalent.
    pub chain: Vec<usize>,
}

/// Decide equivalence of two nodes (twist coordinates are canonicalized to
/// their orbit representative first) and produce a witnessed chain.
pub fn check_equivalence(
    ws: &Workspace,
    db: &MoritaDatabase,
    a: &PointedCategoryNode,
    b: &PointedCategoryNode,
) -> Result<CheckResult> {
    let orbit_cache = OrbitCache::default();
    let canon = |node: &PointedCategoryNode| -> Result<PointedCategoryNode> {
        let orbits = orbit_cache.get(ws, &node.group)?;
        if node.class.len() != orbits.h.factors.len() {
            return Err(Error::BadInput(format!(
                "twist coordinates for {} need {} components",
                node.group,
                orbits.h.factors.len()
            )));
        }
        let reduced: Vec<i64> = node
            .class
            .iter()
            .zip(&orbits.h.factors)
            .map(|(&c, &d)| c.rem_euclid(d))
            .collect();
        Ok(PointedCategoryNode {
            group: node.group.clone(),
            class: orbits.canonical_rep(&reduced),
        })
    };
    let node_a = canon(a)?;
    let node_b = canon(b)?;
    let ia = db
        .node_index(&node_a)
        .ok_or_else(|| Error::BadInput(format!("{node_a} is not in the database")))?;
    let ib = db
        .node_index(&node_b)
        .ok_or_else(|| Error::BadInput(format!("{node_b} is not in the database")))?;
    // Breadth-first search for a witness chain.
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; db.nodes.len()];
    let mut visited = vec![false; db.nodes.len()];
    let mut queue = std::collections::VecDeque::new();
    visited[ia] = true;
    queue.push_back(ia);
    while let Some(cur) = queue.pop_front() {
        if cur == ib {
            break;
        }
        for (ei, e) in db.edges.iter().enumerate() {
            let next = if e.from == cur {
                e.to
            } else if e.to == cur {
                e.from
            } else {
                continue;
            };
            if !visited[next] {
                visited[next] = true;
                prev[next] = Some((cur, ei));
                queue.push_back(next);
            }
        }
    }
    let equivalent = visited[ib];
    let mut chain = Vec::new();
    if equivalent && ia != ib {
        let mut cur = ib;
        while let Some((p, ei)) = prev[cur] {
            chain.push(ei);
            cur = p;
        }
        chain.reverse();
    }
    Ok(CheckResult {
        node_a,
        node_b,
        equivalent,
        chain,
    })
}
