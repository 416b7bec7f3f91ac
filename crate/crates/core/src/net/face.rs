use super::{Dart, Diagram, NodeId, NodeKind};

/// One face orbit. `boundary[i]` is the dart leaving the `i`-th corner along
/// the face, so `boundary[i + 1] = face_next(boundary[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Dart>,
    /// Distinct trivalent nodes on the boundary.
    pub trivalent_count: usize,
    /// Distinct crossings on the boundary.
    pub crossing_count: usize,
    /// No node and no edge is visited twice.
    pub is_simple: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

impl Diagram {
    fn face_from(&self, start: Dart) -> Face {
        let mut boundary = vec![start];
        let mut d = self.face_next(start);
        while d != start {
            boundary.push(d);
            d = self.face_next(d);
        }
        let mut nodes: Vec<NodeId> = boundary.iter().map(|&d| self.node_of(d)).collect();
        let mut edges: Vec<Dart> = boundary.iter().map(|&d| d.min(self.partner(d))).collect();
        let len = nodes.len();
        nodes.sort_unstable();
        nodes.dedup();
        edges.sort_unstable();
        edges.dedup();
        let crossing_count = nodes
            .iter()
            .filter(|&&n| self.kind(n) == NodeKind::Crossing)
            .count();
        Face {
            trivalent_count: nodes.len() - crossing_count,
            crossing_count,
            is_simple: nodes.len() == len && edges.len() == len,
            boundary,
        }
    }

    pub fn faces(&self) -> Vec<Face> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for start in 0..self.dart_count() {
            if seen[start] {
                continue;
            }
            let f = self.face_from(start);
            for &d in &f.boundary {
                seen[d] = true;
            }
            out.push(f);
        }
        out
    }

    /// The darts pointing away from a crossing-free face, one per corner, in
    /// counterclockwise order around the face.
    pub fn external_darts(&self, face: &Face) -> Vec<Dart> {
        face.boundary.iter().map(|&d| self.ccw_prev(d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::net::Diagram;

    #[test]
    fn theta_faces() {
        let d: Diagram = "V 1 2 3\nV 3 2 1".parse().unwrap();
        let faces = d.faces();
        assert_eq!(faces.len(), 3);
        for f in &faces {
            assert!(f.is_simple);
            assert_eq!(f.trivalent_count, 2);
        }
    }

    #[test]
    fn tetrahedron_faces() {
        let d: Diagram = "V 1 2 3\nV 4 1 6\nV 5 2 4\nV 6 3 5".parse().unwrap();
        let faces = d.faces();
        assert_eq!(faces.len(), 4);
        for f in &faces {
            assert!(f.is_simple);
            assert_eq!(f.trivalent_count, 3);
        }
    }

    #[test]
    fn free_loop_has_no_faces() {
        let d: Diagram = "O".parse().unwrap();
        assert!(d.faces().is_empty());
    }

    #[test]
    fn bridge_face_is_not_simple() {
        let d: Diagram = "V 1 1 2\nV 2 3 3".parse().unwrap();
        assert!(d.faces().iter().any(|f| !f.is_simple));
    }
}
