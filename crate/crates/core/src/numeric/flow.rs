//! Edmonds-Karp maximum flow with exact capacities.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Capacity {
    Finite(Rational),
    /// Symbolic unbounded capacity; never stands in for a large number.
    Infinite,
}

impl Capacity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Capacity::Infinite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    pub vertices: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(vertices: usize, source: usize, sink: usize) -> Result<Self> {
        if source == sink {
            return Err(Error::input("source and sink must differ"));
        }
        if source >= vertices || sink >= vertices {
            return Err(Error::input("source or sink out of range"));
        }
        Ok(FlowNetwork {
            vertices,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> Result<usize> {
        if tail >= self.vertices || head >= self.vertices {
            return Err(Error::input(format!("arc {}->{} out of range", tail, head)));
        }
        if let Capacity::Finite(c) = &capacity {
            if c.is_negative() {
                return Err(Error::input(format!("arc {}->{} has negative capacity", tail, head)));
            }
        }
        self.arcs.push(FlowArc { tail, head, capacity });
        Ok(self.arcs.len() - 1)
    }

    pub fn add_finite(&mut self, tail: usize, head: usize, capacity: Rational) -> Result<usize> {
        self.add_arc(tail, head, Capacity::Finite(capacity))
    }

    pub fn add_infinite(&mut self, tail: usize, head: usize) -> Result<usize> {
        self.add_arc(tail, head, Capacity::Infinite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxFlow {
    pub value: Rational,
    /// Flow on each arc, indexed like `FlowNetwork::arcs`.
    pub flows: Vec<Rational>,
    /// `true` for vertices on the source side of a minimum cut.
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    /// Total capacity of arcs leaving the source side. `None` if an
    /// infinite arc crosses the cut, which cannot happen for a maximum flow.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> Option<Rational> {
        let mut total = Rational::zero();
        for arc in &net.arcs {
            if self.source_side[arc.tail] && !self.source_side[arc.head] {
                match &arc.capacity {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return None,
                }
            }
        }
        Some(total)
    }
}

/// Computes a maximum flow by shortest augmenting paths. Adjacency is scanned
/// in arc insertion order, so results are deterministic.
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    if net.source == net.sink {
        return Err(Error::input("source and sink must differ"));
    }
    let n = net.vertices;
    // adjacency entries: (arc index, forward?)
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (idx, arc) in net.arcs.iter().enumerate() {
        if arc.tail >= n || arc.head >= n {
            return Err(Error::input("arc endpoint out of range"));
        }
        adj[arc.tail].push((idx, true));
        adj[arc.head].push((idx, false));
    }
    let mut flows = vec![Rational::zero(); net.arcs.len()];
    let mut value = Rational::zero();

    // Residual capacity: `None` is infinite.
    let residual = |flows: &[Rational], idx: usize, forward: bool| -> Option<Rational> {
        if forward {
            match &net.arcs[idx].capacity {
                Capacity::Infinite => None,
                Capacity::Finite(c) => Some(c - &flows[idx]),
            }
        } else {
            Some(flows[idx].clone())
        }
    };
    let has_residual = |flows: &[Rational], idx: usize, forward: bool| -> bool {
        residual(flows, idx, forward).is_none_or(|r| r.is_positive())
    };

    loop {
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[net.source] = true;
        let mut queue = VecDeque::from([net.source]);
        while let Some(u) = queue.pop_front() {
            if u == net.sink {
                break;
            }
            for &(idx, forward) in &adj[u] {
                let arc = &net.arcs[idx];
                let v = if forward { arc.head } else { arc.tail };
                if seen[v] || !has_residual(&flows, idx, forward) {
                    continue;
                }
                seen[v] = true;
                parent[v] = Some((idx, forward));
                queue.push_back(v);
            }
        }
        if !seen[net.sink] {
            let cut = MaxFlow {
                value,
                flows,
                source_side: seen,
            };
            return Ok(cut);
        }
        let mut path = Vec::new();
        let mut v = net.sink;
        while v != net.source {
            let (idx, forward) = parent[v].expect("BFS parent");
            path.push((idx, forward));
            let arc = &net.arcs[idx];
            v = if forward { arc.tail } else { arc.head };
        }
        let bottleneck = path
            .iter()
            .filter_map(|&(idx, forward)| residual(&flows, idx, forward))
            .min()
            .ok_or_else(|| Error::Unbounded("source reaches sink through infinite arcs only".into()))?;
        for &(idx, forward) in &path {
            if forward {
                flows[idx] += &bottleneck;
            } else {
                flows[idx] -= &bottleneck;
            }
        }
        value += bottleneck;
    }
}
