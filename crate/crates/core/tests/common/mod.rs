//! Random diagram generators shared by the integration tests.
#![allow(dead_code)]

use g2net_core::net::tangle::{TangleOp, TangleWord};
use g2net_core::net::{Diagram, MapBuilder, Slot, SlotKind};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random closed tangle word with exactly `crossings` crossings; trivalent
/// vertices appear when `vertices` is set.
pub fn random_word(
    rng: &mut impl Rng,
    crossings: usize,
    vertices: bool,
    max_strands: usize,
) -> TangleWord {
    let mut ops = Vec::new();
    let mut strands = 0usize;
    let mut placed = 0;
    let push = |ops: &mut Vec<TangleOp>, strands: &mut usize, op: TangleOp| {
        debug_assert!(op.fits(*strands));
        *strands = op.strands_after(*strands);
        ops.push(op);
    };
    while placed < crossings {
        if strands < 2 {
            let at = rng.random_range(0..=strands);
            push(&mut ops, &mut strands, TangleOp::Cup(at));
            continue;
        }
        let roll: f64 = rng.random();
        let op = if roll < 0.55 {
            placed += 1;
            TangleOp::Cross {
                at: rng.random_range(0..strands - 1),
                top_over: rng.random(),
            }
        } else if roll < 0.7 && strands < max_strands {
            TangleOp::Cup(rng.random_range(0..=strands))
        } else if roll < 0.8 && strands > 2 {
            TangleOp::Cap(rng.random_range(0..strands - 1))
        } else if vertices && roll < 0.9 && strands < max_strands {
            TangleOp::Split(rng.random_range(0..strands))
        } else if vertices && strands > 2 {
            TangleOp::Merge(rng.random_range(0..strands - 1))
        } else {
            continue;
        };
        push(&mut ops, &mut strands, op);
    }
    close(&mut ops, &mut strands, rng);
    TangleWord::new(ops)
}

fn close(ops: &mut Vec<TangleOp>, strands: &mut usize, rng: &mut impl Rng) {
    while *strands > 0 {
        let op = if *strands == 1 {
            TangleOp::Cup(1)
        } else if *strands % 2 == 1 {
            TangleOp::Merge(rng.random_range(0..*strands - 1))
        } else {
            TangleOp::Cap(rng.random_range(0..*strands - 1))
        };
        *strands = op.strands_after(*strands);
        ops.push(op);
    }
}

pub fn random_diagram(rng: &mut impl Rng, crossings: usize, vertices: bool) -> Diagram {
    random_word(rng, crossings, vertices, 5)
        .build()
        .expect("random words close up")
}

/// Number of open strands just before operation `index`.
pub fn strands_before(word: &TangleWord, index: usize) -> usize {
    word.ops[..index]
        .iter()
        .fold(0, |s, op| op.strands_after(s))
}

/// A random position in `word` with at least `need` open strands.
pub fn random_position(
    rng: &mut impl Rng,
    word: &TangleWord,
    need: usize,
) -> Option<(usize, usize)> {
    let spots: Vec<(usize, usize)> = (0..=word.ops.len())
        .map(|i| (i, strands_before(word, i)))
        .filter(|&(_, s)| s >= need)
        .collect();
    spots.choose(rng).copied()
}

pub fn with_inserted(word: &TangleWord, index: usize, ops: &[TangleOp]) -> TangleWord {
    let mut out = word.ops.clone();
    out.splice(index..index, ops.iter().copied());
    TangleWord::new(out)
}

/// Random connected bridgeless planar trivalent map: start from the theta
/// net and repeatedly join two distinct edges of one face by a new edge.
pub fn random_bridgeless_planar(rng: &mut impl Rng, vertices: usize) -> Diagram {
    let mut d: Diagram = "V 1 2 3\nV 3 2 1".parse().unwrap();
    while d.node_count() + 2 <= vertices {
        let faces = d.faces();
        let face = faces.choose(rng).unwrap();
        let n = face.len();
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        d = add_chord(&d, face.boundary[i], face.boundary[j]);
    }
    d
}

/// Subdivides the edges of boundary darts `a` and `b` (same face, distinct
/// edges) and joins the new vertices across the face.
fn add_chord(d: &Diagram, a: usize, b: usize) -> Diagram {
    let mut builder = MapBuilder::new();
    let nodes: Vec<_> = (0..d.node_count())
        .map(|_| builder.add_node(SlotKind::Trivalent))
        .collect();
    let at = |x: usize| Slot::new(nodes[d.node_of(x)], d.slot(x));
    let cut = |x: usize| x == a || x == b || d.partner(x) == a || d.partner(x) == b;
    for x in 0..d.dart_count() {
        let p = d.partner(x);
        if x < p && !cut(x) {
            builder.connect(at(x), at(p));
        }
    }
    // new vertex slots: 0 toward the far end, 1 into the face, 2 back
    let u = builder.add_node(SlotKind::Trivalent);
    let v = builder.add_node(SlotKind::Trivalent);
    for (w, x) in [(u, a), (v, b)] {
        builder.connect(Slot::new(w, 0), at(d.partner(x)));
        builder.connect(Slot::new(w, 2), at(x));
    }
    builder.connect(Slot::new(u, 1), Slot::new(v, 1));
    let out = builder.finish().unwrap();
    out.validate()
        .expect("chord insertion keeps the map planar");
    out
}
