//! Diagrams from words of elementary tangles.
//!
//! Strands run left to right and are numbered top to bottom. Each operation
//! acts on the strands at positions `i` and `i + 1` (or `i` alone for
//! [`TangleOp::Split`]); the word must end with no strands left open.

use super::{Diagram, MapBuilder, NetError, Slot, SlotKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TangleOp {
    /// Opens two new strands at `i`, `i + 1`.
    Cup(usize),
    /// Joins strands `i` and `i + 1`.
    Cap(usize),
    /// Crossing of strands `i` and `i + 1`. With `top_over` the strand
    /// coming from the upper left passes over.
    Cross { at: usize, top_over: bool },
    /// Strands `i` and `i + 1` meet in a trivalent vertex.
    Merge(usize),
    /// Strand `i` forks into two.
    Split(usize),
}

impl TangleOp {
    /// Number of open strands after the operation, given the number before.
    pub fn strands_after(self, before: usize) -> usize {
        match self {
            TangleOp::Cup(_) => before + 2,
            TangleOp::Split(_) => before + 1,
            TangleOp::Cap(_) => before - 2,
            TangleOp::Merge(_) => before - 1,
            TangleOp::Cross { .. } => before,
        }
    }

    /// Whether the operation is defined on `before` open strands.
    pub fn fits(self, before: usize) -> bool {
        match self {
            TangleOp::Cup(i) => i <= before,
            TangleOp::Split(i) => i < before,
            TangleOp::Cap(i) | TangleOp::Merge(i) | TangleOp::Cross { at: i, .. } => i + 1 < before,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TangleError {
    #[error("operation {index} ({op:?}) does not fit {strands} open strands")]
    DoesNotFit {
        index: usize,
        op: TangleOp,
        strands: usize,
    },
    #[error("{0} strands left open")]
    NotClosed(usize),
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TangleWord {
    pub ops: Vec<TangleOp>,
}

impl TangleWord {
    pub fn new(ops: Vec<TangleOp>) -> Self {
        TangleWord { ops }
    }

    /// Closure of a braid on `n` strands: nested cups, the braid on the top
    /// `n` positions, nested caps. `gens` uses `±(i + 1)` for a crossing of
    /// strands `i` and `i + 1`, positive meaning `top_over`.
    pub fn braid_closure(n: usize, gens: &[i32]) -> Self {
        let mut ops: Vec<TangleOp> = (0..n).map(TangleOp::Cup).collect();
        for &g in gens {
            assert!(
                g != 0 && (g.unsigned_abs() as usize) < n,
                "generator out of range"
            );
            ops.push(TangleOp::Cross {
                at: g.unsigned_abs() as usize - 1,
                top_over: g > 0,
            });
        }
        ops.extend((0..n).rev().map(TangleOp::Cap));
        TangleWord { ops }
    }

    pub fn build(&self) -> Result<Diagram, TangleError> {
        let mut b = MapBuilder::new();
        let mut open: Vec<Slot> = Vec::new();
        for (index, &op) in self.ops.iter().enumerate() {
            if !op.fits(open.len()) {
                return Err(TangleError::DoesNotFit {
                    index,
                    op,
                    strands: open.len(),
                });
            }
            match op {
                TangleOp::Cup(i) => {
                    let w = b.add_node(SlotKind::Wire);
                    open.splice(i..i, [Slot::new(w, 0), Slot::new(w, 1)]);
                }
                TangleOp::Cap(i) => {
                    b.connect(open[i], open[i + 1]);
                    open.drain(i..i + 2);
                }
                TangleOp::Cross { at: i, top_over } => {
                    let x = b.add_node(SlotKind::Crossing);
                    // slots of (LT, LB, RB, RT)
                    let [lt, lb, rb, rt] = if top_over { [0, 1, 2, 3] } else { [3, 0, 1, 2] };
                    b.connect(open[i], Slot::new(x, lt));
                    b.connect(open[i + 1], Slot::new(x, lb));
                    open[i] = Slot::new(x, rt);
                    open[i + 1] = Slot::new(x, rb);
                }
                TangleOp::Merge(i) => {
                    let v = b.add_node(SlotKind::Trivalent);
                    b.connect(open[i], Slot::new(v, 1));
                    b.connect(open[i + 1], Slot::new(v, 2));
                    open.splice(i..i + 2, [Slot::new(v, 0)]);
                }
                TangleOp::Split(i) => {
                    let v = b.add_node(SlotKind::Trivalent);
                    b.connect(open[i], Slot::new(v, 1));
                    open.splice(i..i + 1, [Slot::new(v, 0), Slot::new(v, 2)]);
                }
            }
        }
        if !open.is_empty() {
            return Err(TangleError::NotClosed(open.len()));
        }
        let d = b.finish()?;
        d.validate()?;
        Ok(d)
    }
}
