//! Canonical codes: equal iff two diagrams are isomorphic as rotation systems
//! with over/under data. Reflections are not identified.

use super::{Dart, Diagram, NodeKind};

const UNSEEN: u32 = u32::MAX;

impl Diagram {
    /// Breadth-first code of the component containing `root`, discovering
    /// each node through the dart it was entered by.
    fn rooted_code(&self, root: Dart, index: &mut [u32], entry: &mut [usize], out: &mut Vec<u32>) {
        let mut queue = vec![self.node_of(root)];
        index[queue[0]] = 0;
        entry[queue[0]] = self.slot(root);
        let mut head = 0;
        while head < queue.len() {
            let n = queue[head];
            head += 1;
            let deg = self.degree(n);
            let e = entry[n];
            out.push(match self.kind(n) {
                NodeKind::Trivalent => 0,
                NodeKind::Crossing if e.is_multiple_of(2) => 1,
                NodeKind::Crossing => 2,
            });
            for k in 0..deg {
                let p = self.partner(self.dart(n, (e + k) % deg));
                let m = self.node_of(p);
                if index[m] == UNSEEN {
                    index[m] = queue.len() as u32;
                    entry[m] = self.slot(p);
                    queue.push(m);
                }
                let rel = (self.slot(p) + self.degree(m) - entry[m]) % self.degree(m);
                out.push(index[m]);
                out.push(rel as u32);
            }
        }
        for &n in &queue {
            index[n] = UNSEEN;
        }
    }

    fn component_code(&self, nodes: &[usize], index: &mut [u32], entry: &mut [usize]) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::new();
        // Only trivalent roots are tried when any exist; they are fewer and
        // their tag is minimal, so the minimum is still attained among them.
        let has_trivalent = nodes.iter().any(|&n| self.kind(n) == NodeKind::Trivalent);
        for &n in nodes {
            if has_trivalent && self.kind(n) != NodeKind::Trivalent {
                continue;
            }
            for root in self.darts(n) {
                buf.clear();
                self.rooted_code(root, index, entry, &mut buf);
                if best.as_ref().is_none_or(|b| buf < *b) {
                    best = Some(buf.clone());
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Byte string identifying the diagram up to isomorphism.
    pub fn canonical_code(&self) -> Vec<u8> {
        let mut index = vec![UNSEEN; self.node_count()];
        let mut entry = vec![0; self.node_count()];
        let mut codes: Vec<Vec<u32>> = self
            .components()
            .iter()
            .map(|c| self.component_code(c, &mut index, &mut entry))
            .collect();
        codes.sort_unstable();
        let mut out = Vec::new();
        out.extend_from_slice(&(self.free_loops() as u32).to_le_bytes());
        for c in codes {
            out.extend_from_slice(&(c.len() as u32).to_le_bytes());
            for x in c {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        out
    }
}
