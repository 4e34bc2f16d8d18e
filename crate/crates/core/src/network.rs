//! Acyclic networks with tail-less input edges, intermediate edges and
//! per-node message demands.
//!
//! Message `j` (1-based) is generated on exactly one input edge. A demand
//! `(v, j)` is resolved to that input edge whenever edge sets are needed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub String);

impl NodeId {
    pub fn new(s: impl Into<String>) -> Self {
        Self(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputEdge {
    pub edge: EdgeId,
    pub head: NodeId,
    pub msg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: NodeId,
    pub head: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub node: NodeId,
    pub msg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("network has a cycle through node {0}")]
    Cycle(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkViolation {
    DuplicateNode(NodeId),
    DuplicateEdge(EdgeId),
    UnknownEndpoint { edge: EdgeId, node: NodeId },
    /// Messages must be exactly `1..=m`, one per input edge.
    MessageIndex { edge: EdgeId, msg: usize },
    UnknownDemandNode(NodeId),
    UnknownDemandMessage { node: NodeId, msg: usize },
    Cycle(NodeId),
}

impl fmt::Display for NetworkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkViolation::DuplicateNode(v) => write!(f, "duplicate node {v}"),
            NetworkViolation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            NetworkViolation::UnknownEndpoint { edge, node } => {
                write!(f, "edge {edge} refers to unknown node {node}")
            }
            NetworkViolation::MessageIndex { edge, msg } => {
                write!(f, "input edge {edge} carries message {msg}, which is out of range or repeated")
            }
            NetworkViolation::UnknownDemandNode(v) => write!(f, "demand at unknown node {v}"),
            NetworkViolation::UnknownDemandMessage { node, msg } => {
                write!(f, "node {node} demands nonexistent message {msg}")
            }
            NetworkViolation::Cycle(v) => write!(f, "acyclicity fails: cycle through node {v}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Network {
    pub nodes: Vec<NodeId>,
    pub inputs: Vec<InputEdge>,
    pub edges: Vec<Edge>,
    pub demands: Vec<Demand>,
}

impl Network {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, v: impl Into<NodeId>) -> NodeId {
        let v = v.into();
        self.nodes.push(v.clone());
        v
    }

    pub fn add_input(&mut self, edge: u32, head: impl Into<NodeId>, msg: usize) {
        self.inputs.push(InputEdge { edge: EdgeId(edge), head: head.into(), msg });
    }

    pub fn add_edge(&mut self, id: u32, tail: impl Into<NodeId>, head: impl Into<NodeId>) {
        self.edges.push(Edge { id: EdgeId(id), tail: tail.into(), head: head.into() });
    }

    pub fn add_demand(&mut self, node: impl Into<NodeId>, msg: usize) {
        self.demands.push(Demand { node: node.into(), msg });
    }

    /// Number of messages, one per input edge.
    pub fn message_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn input_edge_for(&self, msg: usize) -> Option<EdgeId> {
        self.inputs.iter().find(|s| s.msg == msg).map(|s| s.edge)
    }

    pub fn input(&self, e: EdgeId) -> Option<&InputEdge> {
        self.inputs.iter().find(|s| s.edge == e)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|x| x.id == e)
    }

    pub fn is_input(&self, e: EdgeId) -> bool {
        self.input(e).is_some()
    }

    /// Every edge id: input edges first, then intermediate edges, each in
    /// declaration order.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.inputs.iter().map(|s| s.edge).chain(self.edges.iter().map(|e| e.id)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.inputs.len() + self.edges.len()
    }

    pub fn has_node(&self, v: &NodeId) -> bool {
        self.nodes.contains(v)
    }

    pub fn demands_at(&self, v: &NodeId) -> Vec<usize> {
        let mut out: Vec<usize> = self.demands.iter().filter(|d| &d.node == v).map(|d| d.msg).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn validate(&self) -> Verdict<NetworkViolation> {
        let mut seen = BTreeSet::new();
        for v in &self.nodes {
            if !seen.insert(v) {
                return Verdict::Violation(NetworkViolation::DuplicateNode(v.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        for e in self.edge_ids() {
            if !ids.insert(e) {
                return Verdict::Violation(NetworkViolation::DuplicateEdge(e));
            }
        }
        for s in &self.inputs {
            if !seen.contains(&s.head) {
                return Verdict::Violation(NetworkViolation::UnknownEndpoint {
                    edge: s.edge,
                    node: s.head.clone(),
                });
            }
        }
        for e in &self.edges {
            for v in [&e.tail, &e.head] {
                if !seen.contains(v) {
                    return Verdict::Violation(NetworkViolation::UnknownEndpoint { edge: e.id, node: v.clone() });
                }
            }
        }
        let m = self.message_count();
        let mut msgs = BTreeSet::new();
        for s in &self.inputs {
            if s.msg == 0 || s.msg > m || !msgs.insert(s.msg) {
                return Verdict::Violation(NetworkViolation::MessageIndex { edge: s.edge, msg: s.msg });
            }
        }
        for d in &self.demands {
            if !seen.contains(&d.node) {
                return Verdict::Violation(NetworkViolation::UnknownDemandNode(d.node.clone()));
            }
            if d.msg == 0 || d.msg > m {
                return Verdict::Violation(NetworkViolation::UnknownDemandMessage {
                    node: d.node.clone(),
                    msg: d.msg,
                });
            }
        }
        match self.topological_nodes() {
            Ok(_) => Verdict::Ok,
            Err(NetworkError::Cycle(v)) => Verdict::Violation(NetworkViolation::Cycle(v)),
            Err(_) => unreachable!("endpoints already checked"),
        }
    }

    /// `In(v)` (incoming intermediate and input edges) and `Out(v)` (outgoing
    /// intermediate edges plus the input edges of messages demanded at `v`),
    /// each sorted by edge id.
    pub fn in_out_sets(&self, v: &NodeId) -> Result<(Vec<EdgeId>, Vec<EdgeId>), NetworkError> {
        if !self.has_node(v) {
            return Err(NetworkError::UnknownNode(v.clone()));
        }
        let mut ins: Vec<EdgeId> = self
            .inputs
            .iter()
            .filter(|s| &s.head == v)
            .map(|s| s.edge)
            .chain(self.edges.iter().filter(|e| &e.head == v).map(|e| e.id))
            .collect();
        let mut outs: Vec<EdgeId> = self.edges.iter().filter(|e| &e.tail == v).map(|e| e.id).collect();
        outs.extend(self.demands_at(v).into_iter().filter_map(|j| self.input_edge_for(j)));
        ins.sort();
        outs.sort();
        outs.dedup();
        Ok((ins, outs))
    }

    /// Incoming edges of `v` (input and intermediate), sorted by id.
    pub fn in_edges(&self, v: &NodeId) -> Vec<EdgeId> {
        let mut ins: Vec<EdgeId> = self
            .inputs
            .iter()
            .filter(|s| &s.head == v)
            .map(|s| s.edge)
            .chain(self.edges.iter().filter(|e| &e.head == v).map(|e| e.id))
            .collect();
        ins.sort();
        ins
    }

    /// Nodes in a topological order of the intermediate-edge graph; ties go
    /// to the earliest declared node.
    pub fn topological_nodes(&self) -> Result<Vec<NodeId>, NetworkError> {
        let index: HashMap<&NodeId, usize> = self.nodes.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut indeg = vec![0usize; self.nodes.len()];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            let t = *index.get(&e.tail).ok_or_else(|| NetworkError::UnknownNode(e.tail.clone()))?;
            let h = *index.get(&e.head).ok_or_else(|| NetworkError::UnknownNode(e.head.clone()))?;
            indeg[h] += 1;
            succ[t].push(h);
        }
        let mut ready: BTreeSet<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for &h in &succ[i] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        if order.len() < self.nodes.len() {
            let stuck = (0..self.nodes.len()).find(|&i| indeg[i] > 0).expect("some node left");
            return Err(NetworkError::Cycle(self.nodes[stuck].clone()));
        }
        Ok(order.into_iter().map(|i| self.nodes[i].clone()).collect())
    }

    /// Input edges by message index, then intermediate edges so that each
    /// edge follows every edge entering its tail; ties broken by edge id.
    pub fn ancestral_order(&self) -> Result<Vec<EdgeId>, NetworkError> {
        let mut inputs: Vec<&InputEdge> = self.inputs.iter().collect();
        inputs.sort_by_key(|s| s.msg);
        let mut order: Vec<EdgeId> = inputs.iter().map(|s| s.edge).collect();

        let mut pending: HashMap<&NodeId, usize> = HashMap::new();
        for e in &self.edges {
            if !self.has_node(&e.tail) {
                return Err(NetworkError::UnknownNode(e.tail.clone()));
            }
            *pending.entry(&e.head).or_default() += 1;
        }
        let mut by_tail: BTreeMap<&NodeId, Vec<&Edge>> = BTreeMap::new();
        for e in &self.edges {
            by_tail.entry(&e.tail).or_default().push(e);
        }
        let mut ready: BTreeSet<(EdgeId, usize)> = BTreeSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if pending.get(&e.tail).copied().unwrap_or(0) == 0 {
                ready.insert((e.id, i));
            }
        }
        while let Some((id, i)) = ready.pop_first() {
            order.push(id);
            let head = &self.edges[i].head;
            let left = pending.get_mut(head).expect("counted");
            *left -= 1;
            if *left == 0 {
                for (j, e) in self.edges.iter().enumerate() {
                    if &e.tail == head {
                        ready.insert((e.id, j));
                    }
                }
            }
        }
        if order.len() < self.edge_count() {
            let stuck = self
                .edges
                .iter()
                .find(|e| !order.contains(&e.id))
                .expect("some edge left");
            return Err(NetworkError::Cycle(stuck.tail.clone()));
        }
        Ok(order)
    }
}

/// Whether there is a node bijection carrying `a` onto `b` that preserves
/// intermediate edges (with multiplicity), the head of each message's input
/// edge, and every node's demand set. Edge ids and node names are ignored.
pub fn is_isomorphic(a: &Network, b: &Network) -> bool {
    if a.nodes.len() != b.nodes.len()
        || a.edges.len() != b.edges.len()
        || a.message_count() != b.message_count()
    {
        return false;
    }
    let (Some(sa), Some(sb)) = (Summary::of(a), Summary::of(b)) else {
        return false;
    };
    let order = match a.topological_nodes() {
        Ok(o) => o.iter().map(|v| sa.index[v]).collect::<Vec<_>>(),
        Err(_) => (0..a.nodes.len()).collect(),
    };
    let mut map = vec![usize::MAX; a.nodes.len()];
    let mut used = vec![false; b.nodes.len()];
    sa.extend(&sb, &order, 0, &mut map, &mut used)
}

struct Summary<'a> {
    index: HashMap<&'a NodeId, usize>,
    /// (in-degree, out-degree, demanded messages, generated messages)
    signature: Vec<(usize, usize, Vec<usize>, Vec<usize>)>,
    /// edge multiplicity between node indices
    count: HashMap<(usize, usize), usize>,
}

impl<'a> Summary<'a> {
    fn of(net: &'a Network) -> Option<Self> {
        let index: HashMap<&NodeId, usize> = net.nodes.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut signature: Vec<(usize, usize, Vec<usize>, Vec<usize>)> =
            vec![(0, 0, Vec::new(), Vec::new()); net.nodes.len()];
        let mut count = HashMap::new();
        for e in &net.edges {
            let t = *index.get(&e.tail)?;
            let h = *index.get(&e.head)?;
            signature[t].1 += 1;
            signature[h].0 += 1;
            *count.entry((t, h)).or_default() += 1;
        }
        for d in &net.demands {
            signature[*index.get(&d.node)?].2.push(d.msg);
        }
        for s in &net.inputs {
            signature[*index.get(&s.head)?].3.push(s.msg);
        }
        for sig in signature.iter_mut() {
            sig.2.sort_unstable();
            sig.2.dedup();
            sig.3.sort_unstable();
        }
        Some(Self { index, signature, count })
    }

    fn extend(&self, other: &Summary, order: &[usize], pos: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&x) = order.get(pos) else {
            return true;
        };
        for y in 0..used.len() {
            if used[y] || self.signature[x] != other.signature[y] {
                continue;
            }
            let consistent = order[..pos].iter().chain(std::iter::once(&x)).all(|&z| {
                let w = if z == x { y } else { map[z] };
                self.count.get(&(x, z)) == other.count.get(&(y, w))
                    && self.count.get(&(z, x)) == other.count.get(&(w, y))
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend(other, order, pos + 1, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
}
