//! Weighted rooted trees: a unique root, every other vertex with one
//! predecessor, non-negative charges, and every non-root vertex of charge 0
//! branching at least twice.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ROOT: &str = "alpha";
pub const DEFAULT_CHARGE_BOUND: u32 = 4;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightedTree {
    pub vertices: Vec<String>,
    /// Predecessor of every non-root vertex.
    pub parent: BTreeMap<String, String>,
    pub charge: BTreeMap<String, u32>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub vertex: Option<String>,
    pub message: String,
}

fn violation(vertex: Option<&str>, message: impl Into<String>) -> Violation {
    Violation {
        vertex: vertex.map(str::to_string),
        message: message.into(),
    }
}

impl WeightedTree {
    pub fn trivial(charge: u32) -> Self {
        WeightedTree {
            vertices: vec![ROOT.to_string()],
            parent: BTreeMap::new(),
            charge: BTreeMap::from([(ROOT.to_string(), charge)]),
        }
    }

    /// Builds a tree from `(vertex, parent, charge)` triples; the root has
    /// no parent.
    pub fn from_edges(items: &[(&str, Option<&str>, u32)]) -> Self {
        WeightedTree {
            vertices: items.iter().map(|(v, _, _)| v.to_string()).collect(),
            parent: items
                .iter()
                .filter_map(|(v, p, _)| p.map(|p| (v.to_string(), p.to_string())))
                .collect(),
            charge: items.iter().map(|(v, _, c)| (v.to_string(), *c)).collect(),
        }
    }

    pub fn root(&self) -> Option<&str> {
        let roots: Vec<&String> = self.vertices.iter().filter(|v| !self.parent.contains_key(*v)).collect();
        (roots.len() == 1).then(|| roots[0].as_str())
    }

    pub fn children(&self, v: &str) -> Vec<&str> {
        let mut c: Vec<&str> = self
            .parent
            .iter()
            .filter(|(_, p)| p.as_str() == v)
            .map(|(c, _)| c.as_str())
            .collect();
        c.sort();
        c
    }

    pub fn total_charge(&self) -> u32 {
        self.charge.values().sum()
    }

    /// Vertices whose surfaces are contracted onto the root surface.
    pub fn contracted_vertices(&self) -> Vec<&str> {
        let root = self.root();
        self.vertices.iter().map(String::as_str).filter(|v| Some(*v) != root).collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                out.push(violation(Some(v), "duplicate vertex"));
            }
        }
        for (c, p) in &self.parent {
            if !seen.contains(c.as_str()) {
                out.push(violation(Some(c), "parent entry for an unknown vertex"));
            }
            if !seen.contains(p.as_str()) {
                out.push(violation(Some(c), format!("predecessor {p} is not a vertex")));
            }
        }
        for v in &self.vertices {
            if !self.charge.contains_key(v) {
                out.push(violation(Some(v), "missing charge"));
            }
        }
        for c in self.charge.keys() {
            if !seen.contains(c.as_str()) {
                out.push(violation(Some(c), "charge for an unknown vertex"));
            }
        }
        let roots: Vec<&String> = self.vertices.iter().filter(|v| !self.parent.contains_key(*v)).collect();
        match roots.len() {
            0 => out.push(violation(None, "no root")),
            1 => {}
            _ => {
                for r in &roots[1..] {
                    out.push(violation(Some(r), "second vertex without predecessor"));
                }
            }
        }
        for v in &self.vertices {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent.get(cur) {
                cur = p;
                steps += 1;
                if steps > self.vertices.len() {
                    out.push(violation(Some(v), "cycle through predecessors"));
                    break;
                }
            }
        }
        if roots.len() == 1 {
            for v in &self.vertices {
                if v == roots[0] {
                    continue;
                }
                if self.charge.get(v) == Some(&0) && self.children(v).len() < 2 {
                    out.push(violation(Some(v), "charge 0 with fewer than two successors"));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Sorted recursive encoding; equal exactly for isomorphic trees.
    pub fn canonical(&self) -> String {
        match self.root() {
            Some(r) => self.encode(r, true),
            None => String::new(),
        }
    }

    /// Canonical encoding with the charges forgotten.
    pub fn shape_canonical(&self) -> String {
        match self.root() {
            Some(r) => self.encode(r, false),
            None => String::new(),
        }
    }

    fn encode(&self, v: &str, charges: bool) -> String {
        let mut kids: Vec<String> = self.children(v).into_iter().map(|c| self.encode(c, charges)).collect();
        kids.sort();
        let label = if charges {
            self.charge.get(v).copied().unwrap_or(0).to_string()
        } else {
            String::new()
        };
        format!("{label}({})", kids.join(","))
    }
}

pub fn tree_iso(a: &WeightedTree, b: &WeightedTree) -> bool {
    a.canonical() == b.canonical()
}

/// Tree with the charges forgotten, together with a weighting of total
/// charge `n` witnessing membership in `T_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TreeShape {
    pub vertices: Vec<String>,
    pub parent: BTreeMap<String, String>,
    pub witness: WeightedTree,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Enumeration {
    pub charge: u32,
    pub weighted: Vec<WeightedTree>,
    pub shapes: Vec<TreeShape>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Node {
    charge: u32,
    children: Vec<Node>,
}

/// All non-root subtrees of total charge `c`, canonical and sorted.
fn subtrees(c: u32, memo: &mut BTreeMap<u32, Vec<Node>>) -> Vec<Node> {
    if let Some(v) = memo.get(&c) {
        return v.clone();
    }
    let mut out = Vec::new();
    for own in 0..=c {
        // a charge-0 vertex branches, so each child carries less than c
        let max_part = if own == 0 { c.saturating_sub(1) } else { c - own };
        for kids in forests(c - own, max_part, memo) {
            if own == 0 && kids.len() < 2 {
                continue;
            }
            out.push(Node {
                charge: own,
                children: kids,
            });
        }
    }
    out.sort();
    memo.insert(c, out.clone());
    out
}

/// Multisets of non-root subtrees with total charge `c`, each of charge at
/// most `max_part`.
fn forests(c: u32, max_part: u32, memo: &mut BTreeMap<u32, Vec<Node>>) -> Vec<Vec<Node>> {
    fn go(
        rest: u32,
        max_part: u32,
        min_index: usize,
        acc: &mut Vec<Node>,
        out: &mut Vec<Vec<Node>>,
        memo: &mut BTreeMap<u32, Vec<Node>>,
    ) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            let options = subtrees(part, memo);
            let start = if part == max_part { min_index } else { 0 };
            for (i, t) in options.iter().enumerate().skip(start) {
                acc.push(t.clone());
                go(rest - part, part, i, acc, out, memo);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(c, max_part, 0, &mut Vec::new(), &mut out, memo);
    out
}

fn to_weighted(root: &Node) -> WeightedTree {
    let mut items: Vec<(String, Option<String>, u32)> = vec![(ROOT.to_string(), None, root.charge)];
    let mut queue: Vec<(String, &Node)> = vec![(ROOT.to_string(), root)];
    let mut next = 1;
    while !queue.is_empty() {
        let mut following = Vec::new();
        for (name, node) in queue {
            for child in &node.children {
                let cname = format!("v{next}");
                next += 1;
                items.push((cname.clone(), Some(name.clone()), child.charge));
                following.push((cname, child));
            }
        }
        queue = following;
    }
    WeightedTree {
        vertices: items.iter().map(|(v, _, _)| v.clone()).collect(),
        parent: items
            .iter()
            .filter_map(|(v, p, _)| p.clone().map(|p| (v.clone(), p)))
            .collect(),
        charge: items.iter().map(|(v, _, c)| (v.clone(), *c)).collect(),
    }
}

/// Weighted trees of total charge `n` up to isomorphism, and the set `T_n`
/// of their shapes.
pub fn enumerate(n: u32, bound: u32) -> Result<Enumeration> {
    if n > bound {
        return Err(Error::BoundExceeded { charge: n, bound });
    }
    let mut memo = BTreeMap::new();
    let mut roots = Vec::new();
    for own in 0..=n {
        for kids in forests(n - own, n - own, &mut memo) {
            roots.push(Node {
                charge: own,
                children: kids,
            });
        }
    }
    let weighted: Vec<WeightedTree> = roots.iter().map(to_weighted).collect();
    let mut shapes: BTreeMap<String, TreeShape> = BTreeMap::new();
    for t in &weighted {
        debug_assert!(t.is_valid(), "enumerated an invalid tree {t:?}");
        shapes.entry(t.shape_canonical()).or_insert_with(|| TreeShape {
            vertices: t.vertices.clone(),
            parent: t.parent.clone(),
            witness: t.clone(),
        });
    }
    Ok(Enumeration {
        charge: n,
        weighted,
        shapes: shapes.into_values().collect(),
    })
}
