//! Closed 3-net diagrams as combinatorial maps.
//!
//! Every node owns a contiguous block of darts in counterclockwise order; an
//! edge is a pair of darts. Crossings have four darts, the strand through
//! slots 0 and 2 passes over the strand through slots 1 and 3. Trivalent
//! nodes have three darts.
//!
//! Faces follow `φ(d) = ccw_prev(partner(d))`: cross the edge, then turn to the
//! previous dart at the new node. The face then lies on the left of the
//! traversal, so a face boundary runs counterclockwise around its region.

mod build;
mod canon;
mod face;
mod parse;
pub mod tangle;

use std::ops::Range;

use thiserror::Error;

pub use build::{MapBuilder, Slot, SlotKind};
pub use face::Face;

pub type Dart = usize;
pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Trivalent,
    Crossing,
}

impl NodeKind {
    pub fn degree(self) -> usize {
        match self {
            NodeKind::Trivalent => 3,
            NodeKind::Crossing => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("line {line}: unknown node tag `{tag}`")]
    UnknownTag { line: usize, tag: String },
    #[error("line {line}: `{tag}` expects {expected} edge labels, found {found}")]
    Arity {
        line: usize,
        tag: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid edge label `{label}` (labels are positive integers)")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: edge label {label} appears {count} times, expected exactly 2")]
    LabelCount {
        line: usize,
        label: u64,
        count: usize,
    },
    #[error(
        "not a planar diagram: component with {nodes} nodes, {edges} edges and {faces} faces has genus {genus}"
    )]
    NotPlanar {
        nodes: usize,
        edges: usize,
        faces: usize,
        genus: i64,
    },
    #[error("dart {0} is not paired")]
    Unpaired(Dart),
    #[error("node {0} is not a crossing")]
    NotACrossing(NodeId),
}

/// A closed 3-net diagram. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram {
    kinds: Vec<NodeKind>,
    offsets: Vec<usize>,
    owner: Vec<NodeId>,
    partner: Vec<Dart>,
    free_loops: usize,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram::with_free_loops(0)
    }

    pub fn with_free_loops(n: usize) -> Self {
        Diagram {
            kinds: Vec::new(),
            offsets: vec![0],
            owner: Vec::new(),
            partner: Vec::new(),
            free_loops: n,
        }
    }

    /// Builds a diagram from node kinds and a dart pairing; darts are numbered
    /// node by node in slot order.
    pub(crate) fn from_parts(kinds: Vec<NodeKind>, partner: Vec<Dart>, free_loops: usize) -> Self {
        let mut offsets = Vec::with_capacity(kinds.len() + 1);
        let mut owner = Vec::with_capacity(partner.len());
        offsets.push(0);
        for (n, k) in kinds.iter().enumerate() {
            owner.extend(std::iter::repeat_n(n, k.degree()));
            offsets.push(owner.len());
        }
        debug_assert_eq!(owner.len(), partner.len());
        debug_assert!(partner
            .iter()
            .enumerate()
            .all(|(d, &p)| partner[p] == d && p != d));
        Diagram {
            kinds,
            offsets,
            owner,
            partner,
            free_loops,
        }
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn dart_count(&self) -> usize {
        self.partner.len()
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty() && self.free_loops == 0
    }

    pub fn kind(&self, n: NodeId) -> NodeKind {
        self.kinds[n]
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn darts(&self, n: NodeId) -> Range<Dart> {
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn dart(&self, n: NodeId, slot: usize) -> Dart {
        self.offsets[n] + slot
    }

    pub fn node_of(&self, d: Dart) -> NodeId {
        self.owner[d]
    }

    pub fn slot(&self, d: Dart) -> usize {
        d - self.offsets[self.owner[d]]
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.offsets[n + 1] - self.offsets[n]
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.partner[d]
    }

    pub fn ccw_next(&self, d: Dart) -> Dart {
        let n = self.owner[d];
        let base = self.offsets[n];
        base + (d - base + 1) % self.degree(n)
    }

    pub fn ccw_prev(&self, d: Dart) -> Dart {
        let n = self.owner[d];
        let base = self.offsets[n];
        let deg = self.degree(n);
        base + (d - base + deg - 1) % deg
    }

    /// Next dart along the face on the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.ccw_prev(self.partner[d])
    }

    pub fn crossings(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.kinds.len()).filter(|&n| self.kinds[n] == NodeKind::Crossing)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn trivalent_count(&self) -> usize {
        self.kinds.len() - self.crossing_count()
    }

    pub fn is_planar(&self) -> bool {
        self.kinds.iter().all(|&k| k == NodeKind::Trivalent)
    }

    /// Connected components as sorted node lists (free loops excluded).
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut comp = vec![usize::MAX; self.node_count()];
        let mut out = Vec::new();
        for start in 0..self.node_count() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut nodes = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < nodes.len() {
                let n = nodes[i];
                i += 1;
                for d in self.darts(n) {
                    let m = self.owner[self.partner[d]];
                    if comp[m] == usize::MAX {
                        comp[m] = id;
                        nodes.push(m);
                    }
                }
            }
            nodes.sort_unstable();
            out.push(nodes);
        }
        out
    }

    /// The sub-diagram on a set of nodes closed under adjacency, without free
    /// loops.
    pub fn induced(&self, nodes: &[NodeId]) -> Diagram {
        let mut index = vec![usize::MAX; self.node_count()];
        let mut kinds = Vec::with_capacity(nodes.len());
        let mut offsets = Vec::with_capacity(nodes.len());
        let mut total = 0;
        for (i, &n) in nodes.iter().enumerate() {
            index[n] = i;
            kinds.push(self.kinds[n]);
            offsets.push(total);
            total += self.degree(n);
        }
        let mut partner = vec![0; total];
        for (i, &n) in nodes.iter().enumerate() {
            for d in self.darts(n) {
                let p = self.partner[d];
                let m = index[self.owner[p]];
                debug_assert!(m != usize::MAX, "node set not closed under adjacency");
                partner[offsets[i] + self.slot(d)] = offsets[m] + self.slot(p);
            }
        }
        Diagram::from_parts(kinds, partner, 0)
    }

    /// Connected components as separate diagrams; free loops are dropped.
    pub fn split_components(&self) -> Vec<Diagram> {
        let comps = self.components();
        if comps.len() == 1 {
            let mut d = self.clone();
            d.free_loops = 0;
            return vec![d];
        }
        comps.iter().map(|c| self.induced(c)).collect()
    }

    pub fn without_free_loops(&self) -> Diagram {
        let mut d = self.clone();
        d.free_loops = 0;
        d
    }

    pub fn add_free_loops(&self, n: usize) -> Diagram {
        let mut d = self.clone();
        d.free_loops += n;
        d
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let shift = self.dart_count();
        let mut kinds = self.kinds.clone();
        kinds.extend_from_slice(&other.kinds);
        let mut partner = self.partner.clone();
        partner.extend(other.partner.iter().map(|&p| p + shift));
        Diagram::from_parts(kinds, partner, self.free_loops + other.free_loops)
    }

    /// Swaps over- and under-strand at every crossing by rotating its slots
    /// one step: new slot `k` is old slot `k + 1`.
    pub fn mirror(&self) -> Diagram {
        let new_slot = |d: Dart| -> Dart {
            let n = self.owner[d];
            match self.kinds[n] {
                NodeKind::Trivalent => d,
                NodeKind::Crossing => self.offsets[n] + (self.slot(d) + 3) % 4,
            }
        };
        let mut partner = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            partner[new_slot(d)] = new_slot(self.partner[d]);
        }
        Diagram::from_parts(self.kinds.clone(), partner, self.free_loops)
    }

    /// Copy with crossing `c` flipped (the other strand over).
    pub fn flip_crossing(&self, c: NodeId) -> Result<Diagram, NetError> {
        if self.kinds.get(c) != Some(&NodeKind::Crossing) {
            return Err(NetError::NotACrossing(c));
        }
        let new_slot = |d: Dart| -> Dart {
            if self.owner[d] == c {
                self.offsets[c] + (self.slot(d) + 3) % 4
            } else {
                d
            }
        };
        let mut partner = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            partner[new_slot(d)] = new_slot(self.partner[d]);
        }
        Ok(Diagram::from_parts(
            self.kinds.clone(),
            partner,
            self.free_loops,
        ))
    }

    /// Replaces the nodes `removed` by a pattern attached to `ports`.
    ///
    /// `ports` lists darts of removed nodes whose edges leave the removed
    /// region (or join two ports); every other dart of a removed node must be
    /// paired inside the region. `pattern` receives one free builder slot per
    /// port, in the order given, standing for the far end of that port's edge.
    pub fn replace<F>(&self, removed: &[NodeId], ports: &[Dart], pattern: F) -> Diagram
    where
        F: FnOnce(&mut MapBuilder, &[Slot]),
    {
        let mut gone = vec![false; self.node_count()];
        for &n in removed {
            gone[n] = true;
        }
        let mut b = MapBuilder::new();
        b.add_free_loops(self.free_loops);
        let mut new_node = vec![usize::MAX; self.node_count()];
        for n in 0..self.node_count() {
            if !gone[n] {
                new_node[n] = b.add_node(self.kinds[n].into());
            }
        }
        let at = |d: Dart| Slot::new(new_node[self.owner[d]], self.slot(d));
        for d in 0..self.dart_count() {
            let p = self.partner[d];
            if d < p && !gone[self.owner[d]] && !gone[self.owner[p]] {
                b.connect(at(d), at(p));
            }
        }
        let mut port_index = vec![usize::MAX; self.dart_count()];
        for (i, &d) in ports.iter().enumerate() {
            debug_assert!(gone[self.owner[d]]);
            port_index[d] = i;
        }
        let wires: Vec<NodeId> = ports.iter().map(|_| b.add_node(SlotKind::Wire)).collect();
        for (i, &d) in ports.iter().enumerate() {
            let p = self.partner[d];
            if !gone[self.owner[p]] {
                b.connect(Slot::new(wires[i], 0), at(p));
            } else {
                let j = port_index[p];
                assert!(j != usize::MAX, "port {d} leads to an interior dart");
                if i < j {
                    b.connect(Slot::new(wires[i], 0), Slot::new(wires[j], 0));
                }
            }
        }
        let slots: Vec<Slot> = wires.iter().map(|&w| Slot::new(w, 1)).collect();
        pattern(&mut b, &slots);
        b.finish().expect("replacement pattern pairs every port")
    }

    /// Face orbits of `face_next`; `result.0[d]` is the face containing `d`.
    pub fn face_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.dart_count()];
        let mut count = 0;
        for start in 0..self.dart_count() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while label[d] == usize::MAX {
                label[d] = count;
                d = self.face_next(d);
            }
            count += 1;
        }
        (label, count)
    }

    /// Checks `V − E + F = 2` on every component.
    pub fn validate(&self) -> Result<(), NetError> {
        let (label, _) = self.face_labels();
        for comp in self.components() {
            let darts: Vec<Dart> = comp.iter().flat_map(|&n| self.darts(n)).collect();
            let mut faces: Vec<usize> = darts.iter().map(|&d| label[d]).collect();
            faces.sort_unstable();
            faces.dedup();
            let (v, e, f) = (comp.len(), darts.len() / 2, faces.len());
            let chi = v as i64 - e as i64 + f as i64;
            if chi != 2 {
                return Err(NetError::NotPlanar {
                    nodes: v,
                    edges: e,
                    faces: f,
                    genus: (2 - chi) / 2,
                });
            }
        }
        Ok(())
    }

    /// An edge (given by either dart) whose removal disconnects its component.
    /// On a genus-0 map these are exactly the edges with the same face on
    /// both sides.
    pub fn find_bridge(&self) -> Option<Dart> {
        let (label, _) = self.face_labels();
        (0..self.dart_count()).find(|&d| label[d] == label[self.partner[d]])
    }

    /// Serialises to NET text; edge labels are assigned in dart order.
    pub fn to_net(&self) -> String {
        let mut label = vec![0usize; self.dart_count()];
        let mut next = 1;
        for d in 0..self.dart_count() {
            if label[d] == 0 {
                label[d] = next;
                label[self.partner[d]] = next;
                next += 1;
            }
        }
        let mut out = String::new();
        for n in 0..self.node_count() {
            out.push(match self.kinds[n] {
                NodeKind::Trivalent => 'V',
                NodeKind::Crossing => 'X',
            });
            for d in self.darts(n) {
                out.push(' ');
                out.push_str(&label[d].to_string());
            }
            out.push('\n');
        }
        for _ in 0..self.free_loops {
            out.push_str("O\n");
        }
        out
    }
}

impl std::fmt::Debug for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Diagram {{ {} }}",
            self.to_net().trim_end().replace('\n', "; ")
        )
    }
}

impl From<NodeKind> for SlotKind {
    fn from(k: NodeKind) -> Self {
        match k {
            NodeKind::Trivalent => SlotKind::Trivalent,
            NodeKind::Crossing => SlotKind::Crossing,
        }
    }
}
