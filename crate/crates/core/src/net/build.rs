//! Incremental construction of diagrams.
//!
//! Besides crossings and trivalent nodes the builder knows bivalent *wires*,
//! which are spliced out by [`MapBuilder::finish`]. A closed chain of wires
//! becomes a free loop. Wires make local rewrites easy: patterns attach to
//! wire ends without caring what lies beyond.

use super::{Dart, Diagram, NetError, NodeId, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    Trivalent,
    Crossing,
    Wire,
}

impl SlotKind {
    fn degree(self) -> usize {
        match self {
            SlotKind::Trivalent => 3,
            SlotKind::Crossing => 4,
            SlotKind::Wire => 2,
        }
    }
}

/// A (node, slot) position in a [`MapBuilder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub node: NodeId,
    pub slot: usize,
}

impl Slot {
    pub const fn new(node: NodeId, slot: usize) -> Self {
        Slot { node, slot }
    }
}

#[derive(Clone, Debug, Default)]
pub struct MapBuilder {
    kinds: Vec<SlotKind>,
    offsets: Vec<usize>,
    partner: Vec<Option<Dart>>,
    free_loops: usize,
}

impl MapBuilder {
    pub fn new() -> Self {
        MapBuilder::default()
    }

    pub fn add_node(&mut self, kind: SlotKind) -> NodeId {
        self.kinds.push(kind);
        self.offsets.push(self.partner.len());
        self.partner
            .extend(std::iter::repeat_n(None, kind.degree()));
        self.kinds.len() - 1
    }

    pub fn add_free_loops(&mut self, n: usize) {
        self.free_loops += n;
    }

    fn dart(&self, s: Slot) -> Dart {
        debug_assert!(s.slot < self.kinds[s.node].degree());
        self.offsets[s.node] + s.slot
    }

    /// Joins two slots by an edge. Panics if either is already joined.
    pub fn connect(&mut self, a: Slot, b: Slot) {
        let (x, y) = (self.dart(a), self.dart(b));
        assert!(x != y, "cannot join a slot to itself");
        assert!(
            self.partner[x].is_none() && self.partner[y].is_none(),
            "slot joined twice"
        );
        self.partner[x] = Some(y);
        self.partner[y] = Some(x);
    }

    pub fn is_connected(&self, s: Slot) -> bool {
        self.partner[self.dart(s)].is_some()
    }

    /// Splices out wires and compacts the remaining nodes.
    pub fn finish(self) -> Result<Diagram, NetError> {
        let mut partner = Vec::with_capacity(self.partner.len());
        for (d, p) in self.partner.iter().enumerate() {
            partner.push(p.ok_or(NetError::Unpaired(d))?);
        }
        let mut free_loops = self.free_loops;
        for (n, &k) in self.kinds.iter().enumerate() {
            if k != SlotKind::Wire {
                continue;
            }
            let (w0, w1) = (self.offsets[n], self.offsets[n] + 1);
            let (a, b) = (partner[w0], partner[w1]);
            if a == w1 {
                free_loops += 1;
            } else {
                partner[a] = b;
                partner[b] = a;
            }
        }
        let mut new_dart = vec![usize::MAX; partner.len()];
        let mut kinds = Vec::new();
        let mut next = 0;
        for (n, &k) in self.kinds.iter().enumerate() {
            let kind = match k {
                SlotKind::Wire => continue,
                SlotKind::Trivalent => NodeKind::Trivalent,
                SlotKind::Crossing => NodeKind::Crossing,
            };
            kinds.push(kind);
            for s in 0..k.degree() {
                new_dart[self.offsets[n] + s] = next;
                next += 1;
            }
        }
        let mut out = vec![0; next];
        for (d, &nd) in new_dart.iter().enumerate() {
            if nd != usize::MAX {
                out[nd] = new_dart[partner[d]];
            }
        }
        Ok(Diagram::from_parts(kinds, out, free_loops))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_chain_becomes_loop() {
        let mut b = MapBuilder::new();
        let w: Vec<_> = (0..3).map(|_| b.add_node(SlotKind::Wire)).collect();
        b.connect(Slot::new(w[0], 1), Slot::new(w[1], 0));
        b.connect(Slot::new(w[1], 1), Slot::new(w[2], 0));
        b.connect(Slot::new(w[2], 1), Slot::new(w[0], 0));
        let d = b.finish().unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.node_count(), 0);
    }

    #[test]
    fn wires_between_nodes_vanish() {
        let mut b = MapBuilder::new();
        let u = b.add_node(SlotKind::Trivalent);
        let v = b.add_node(SlotKind::Trivalent);
        let w = b.add_node(SlotKind::Wire);
        b.connect(Slot::new(u, 0), Slot::new(w, 0));
        b.connect(Slot::new(w, 1), Slot::new(v, 2));
        b.connect(Slot::new(u, 1), Slot::new(v, 1));
        b.connect(Slot::new(u, 2), Slot::new(v, 0));
        let d = b.finish().unwrap();
        assert_eq!(d.node_count(), 2);
        assert_eq!(d.partner(0), 5);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn unpaired_slot_is_an_error() {
        let mut b = MapBuilder::new();
        b.add_node(SlotKind::Wire);
        assert_eq!(b.finish().unwrap_err(), NetError::Unpaired(0));
    }
}
