//! Crossing resolution.
//!
//! A crossing with darts `d0..d3` (counterclockwise, `d0–d2` over) is replaced
//! by four crossing-free pictures:
//!
//! * `P1`: arcs `d0–d1`, `d2–d3`
//! * `P2`: arcs `d1–d2`, `d3–d0`
//! * `T1`: two trivalent nodes joined by an edge, grouping `{d0,d1} | {d2,d3}`
//! * `T2`: the same, grouping `{d1,d2} | {d3,d0}`
//!
//! Which of `P1`/`P2` carries `λ` depends on the handedness convention, see
//! [`Convention`].

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeffs::CoefficientTable;
use crate::net::{Diagram, MapBuilder, NetError, NodeId, NodeKind, Slot, SlotKind};
use crate::reduce::{EvalError, Evaluator};
use crate::ring::FieldValue;

/// Assignment of the resolution coefficients to the four pictures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `P1: λ, P2: μ, T1: σ, T2: ρ`.
    #[default]
    A,
    /// The mirror assignment `P1: μ, P2: λ, T1: ρ, T2: σ`.
    B,
}

impl Convention {
    pub fn other(self) -> Self {
        match self {
            Convention::A => Convention::B,
            Convention::B => Convention::A,
        }
    }
}

/// The convention under which the bundled trefoil (closure of three
/// `top_over` crossings) has its listed, non-palindromic value. Under the
/// other convention it evaluates to the `q ↔ q⁻¹` mirror. The kink
/// `X 1 2 2 1` then gives `q⁶` times a circle.
pub const CALIBRATED: Convention = Convention::B;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Picture {
    P1,
    P2,
    T1,
    T2,
}

impl Picture {
    pub const ALL: [Picture; 4] = [Picture::P1, Picture::P2, Picture::T1, Picture::T2];

    /// Attaches the picture to four port slots given in counterclockwise order.
    pub fn attach(self, b: &mut MapBuilder, s: &[Slot]) {
        match self {
            Picture::P1 => {
                b.connect(s[0], s[1]);
                b.connect(s[2], s[3]);
            }
            Picture::P2 => {
                b.connect(s[1], s[2]);
                b.connect(s[3], s[0]);
            }
            Picture::T1 => attach_h(b, [s[0], s[1], s[2], s[3]]),
            Picture::T2 => attach_h(b, [s[1], s[2], s[3], s[0]]),
        }
    }
}

/// Two trivalent nodes `x(s0, s1, ·)`, `y(s2, s3, ·)` joined by an edge.
pub(crate) fn attach_h(b: &mut MapBuilder, s: [Slot; 4]) {
    let x = b.add_node(SlotKind::Trivalent);
    let y = b.add_node(SlotKind::Trivalent);
    b.connect(s[0], Slot::new(x, 0));
    b.connect(s[1], Slot::new(x, 1));
    b.connect(s[2], Slot::new(y, 0));
    b.connect(s[3], Slot::new(y, 1));
    b.connect(Slot::new(x, 2), Slot::new(y, 2));
}

/// Coefficient of each picture in the crossing-free expansion of a crossing.
pub fn resolution_coefficient(t: &CoefficientTable, conv: Convention, p: Picture) -> &FieldValue {
    match (conv, p) {
        (Convention::A, Picture::P1) | (Convention::B, Picture::P2) => &t.lambda,
        (Convention::A, Picture::P2) | (Convention::B, Picture::P1) => &t.mu,
        (Convention::A, Picture::T1) | (Convention::B, Picture::T2) => &t.sigma,
        (Convention::A, Picture::T2) | (Convention::B, Picture::T1) => &t.rho,
    }
}

/// `d` with crossing `c` replaced by `picture`.
pub fn replace_crossing(d: &Diagram, c: NodeId, picture: Picture) -> Result<Diagram, NetError> {
    if c >= d.node_count() || d.kind(c) != NodeKind::Crossing {
        return Err(NetError::NotACrossing(c));
    }
    let ports: Vec<_> = d.darts(c).collect();
    Ok(d.replace(&[c], &ports, |b, s| picture.attach(b, s)))
}

/// Finite formal sum of diagrams, merged by canonical code.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearCombination {
    terms: BTreeMap<Vec<u8>, (Diagram, FieldValue)>,
}

impl LinearCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: Diagram, c: FieldValue) -> Self {
        let mut lc = Self::new();
        lc.add(d, c);
        lc
    }

    pub fn add(&mut self, d: Diagram, c: FieldValue) {
        if c.is_zero() {
            return;
        }
        let key = d.canonical_code();
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert((d, c));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &e.get().1 + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.get_mut().1 = sum;
                }
            }
        }
    }

    pub fn extend_scaled(&mut self, other: LinearCombination, factor: &FieldValue) {
        for (_, (d, c)) in other.terms {
            self.add(d, &c * factor);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &FieldValue)> {
        self.terms.values().map(|(d, c)| (d, c))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Diagram, FieldValue)> {
        self.terms.into_values()
    }

    pub fn coefficient_of(&self, d: &Diagram) -> Option<&FieldValue> {
        self.terms.get(&d.canonical_code()).map(|(_, c)| c)
    }
}

/// The four-term crossing-free expansion of crossing `c`.
pub fn resolve_crossing(
    d: &Diagram,
    c: NodeId,
    conv: Convention,
    table: &CoefficientTable,
) -> Result<LinearCombination, NetError> {
    let mut lc = LinearCombination::new();
    for p in Picture::ALL {
        lc.add(
            replace_crossing(d, c, p)?,
            resolution_coefficient(table, conv, p).clone(),
        );
    }
    Ok(lc)
}

/// Which crossing [`expand`] resolves next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingOrder {
    First,
    Last,
}

/// Resolves every crossing, merging terms after each round.
pub fn expand(
    d: &Diagram,
    conv: Convention,
    order: CrossingOrder,
    table: &CoefficientTable,
) -> LinearCombination {
    let mut lc = LinearCombination::single(d.clone(), FieldValue::one());
    loop {
        let (done, todo): (Vec<_>, Vec<_>) = lc.into_terms().partition(|(d, _)| d.is_planar());
        if todo.is_empty() {
            let mut out = LinearCombination::new();
            for (d, c) in done {
                out.add(d, c);
            }
            return out;
        }
        let resolved: Vec<LinearCombination> = todo
            .par_iter()
            .map(|(d, c)| {
                let crossing = match order {
                    CrossingOrder::First => d.crossings().next(),
                    CrossingOrder::Last => d.crossings().last(),
                }
                .expect("non-planar term has a crossing");
                let part =
                    resolve_crossing(d, crossing, conv, table).expect("crossing id is valid");
                let mut scaled = LinearCombination::new();
                scaled.extend_scaled(part, c);
                scaled
            })
            .collect();
        lc = LinearCombination::new();
        for (d, c) in done {
            lc.add(d, c);
        }
        for part in resolved {
            lc.extend_scaled(part, &FieldValue::one());
        }
    }
}

/// `I(d) − [α I(d flipped at c) + β I(A) + γ I(B) + δ I(H)]` where `A`, `B`, `H`
/// are the pictures that the four-term relation attaches to `β`, `γ`, `δ` in
/// the evaluator's convention. The coefficients are always the standard
/// ones, so an evaluator built from a perturbed table shows a nonzero
/// residual.
pub fn four_term_residual(ev: &Evaluator, d: &Diagram, c: NodeId) -> Result<FieldValue, EvalError> {
    let t = CoefficientTable::standard();
    let (beta_p, gamma_p, delta_p) = match ev.config().convention {
        Convention::A => (Picture::P1, Picture::P2, Picture::T2),
        Convention::B => (Picture::P2, Picture::P1, Picture::T1),
    };
    let lhs = ev.evaluate(d)?;
    let flipped = ev.evaluate(&d.flip_crossing(c)?)?;
    let rhs = &(&(&t.alpha * &flipped)
        + &(&t.beta * &ev.evaluate(&replace_crossing(d, c, beta_p)?)?))
        + &(&(&t.gamma * &ev.evaluate(&replace_crossing(d, c, gamma_p)?)?)
            + &(&t.delta * &ev.evaluate(&replace_crossing(d, c, delta_p)?)?));
    Ok(&lhs - &rhs)
}
