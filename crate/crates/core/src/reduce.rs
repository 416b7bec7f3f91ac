//! Evaluation of closed diagrams.
//!
//! The evaluator works on one connected component at a time, memoised by
//! canonical code:
//!
//! 1. a bridge forces the value 0;
//! 2. a crossing-free face with one, two or three trivalent corners is
//!    replaced by its single-term rule;
//! 3. otherwise a crossing is resolved into four crossing-free pictures;
//! 4. otherwise a face with four or five corners is replaced by its
//!    multi-term rule.
//!
//! Free loops contribute a factor of `7c` each and components multiply.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::CoefficientTable;
use crate::net::{Dart, Diagram, Face, MapBuilder, NetError, NodeId, NodeKind, Slot, SlotKind};
use crate::ring::FieldValue;
use crate::skein::{self, attach_h, Convention, LinearCombination};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no reducible face in a connected bridgeless planar net: {0:?}")]
    Stuck(Diagram),
    #[error("memo cache conflict: one diagram produced two different values")]
    CacheConflict,
    #[error("diagram contains crossings")]
    HasCrossings,
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshKind {
    Loop,
    Tadpole,
    Bigon,
    Triangle,
    Square,
    Pentagon,
}

impl MeshKind {
    pub const ALL: [MeshKind; 6] = [
        MeshKind::Loop,
        MeshKind::Tadpole,
        MeshKind::Bigon,
        MeshKind::Triangle,
        MeshKind::Square,
        MeshKind::Pentagon,
    ];

    pub fn from_corners(n: usize) -> Option<MeshKind> {
        MeshKind::ALL.get(n).copied()
    }

    pub fn corners(self) -> usize {
        self as usize
    }
}

/// A simple crossing-free face with at most five corners, all trivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshMatch {
    pub face: Face,
    pub kind: MeshKind,
    /// One dart per corner pointing away from the face, counterclockwise.
    pub external: Vec<Dart>,
}

impl MeshMatch {
    pub fn new(d: &Diagram, face: Face) -> Option<MeshMatch> {
        if !face.is_simple || face.crossing_count > 0 {
            return None;
        }
        let kind = MeshKind::from_corners(face.len())?;
        let external = d.external_darts(&face);
        Some(MeshMatch {
            face,
            kind,
            external,
        })
    }

    pub fn corners<'a>(&'a self, d: &'a Diagram) -> impl Iterator<Item = NodeId> + 'a {
        self.face.boundary.iter().map(|&x| d.node_of(x))
    }
}

/// Coefficients of the mesh rules.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshCoefficients {
    pub loop_value: FieldValue,
    pub bigon: FieldValue,
    pub triangle: FieldValue,
    /// Each of the two arc pairings of a square.
    pub square_arcs: FieldValue,
    /// Each of the two two-vertex trees of a square.
    pub square_tree: FieldValue,
    /// Each of the five "arc plus vertex" completions of a pentagon.
    pub pentagon_arc: FieldValue,
    /// Each of the five three-vertex trees of a pentagon.
    pub pentagon_tree: FieldValue,
}

impl MeshCoefficients {
    pub fn from_table(t: &CoefficientTable) -> Self {
        MeshCoefficients {
            loop_value: t.seven_c.clone(),
            bigon: FieldValue::r(),
            triangle: t.t.clone(),
            square_arcs: t.square_pairing(),
            square_tree: t.square_tree(),
            pentagon_arc: -(&t.d * &t.d),
            pentagon_tree: -t.d.clone(),
        }
    }
}

/// Which crossing to resolve first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CrossingChoice {
    /// A crossing on a shortest face that contains one.
    #[default]
    SmallestFace,
    /// The crossing with the lowest node id.
    First,
}

#[derive(Clone, Debug)]
pub struct EvalConfig {
    pub convention: Convention,
    pub memo: bool,
    pub parallel: bool,
    pub bridge_shortcut: bool,
    /// Largest face rule the evaluator may use.
    pub max_mesh: MeshKind,
    pub crossing_choice: CrossingChoice,
    pub table: CoefficientTable,
    pub mesh: MeshCoefficients,
}

impl Default for EvalConfig {
    fn default() -> Self {
        let table = CoefficientTable::standard().clone();
        EvalConfig {
            convention: skein::CALIBRATED,
            memo: true,
            parallel: true,
            bridge_shortcut: true,
            max_mesh: MeshKind::Pentagon,
            crossing_choice: CrossingChoice::SmallestFace,
            mesh: MeshCoefficients::from_table(&table),
            table,
        }
    }
}

impl EvalConfig {
    /// Replaces the table and recomputes the mesh coefficients from it.
    pub fn with_table(mut self, table: CoefficientTable) -> Self {
        self.mesh = MeshCoefficients::from_table(&table);
        self.table = table;
        self
    }
}

#[derive(Debug, Default)]
struct Counters {
    rules: [AtomicU64; 6],
    crossings: AtomicU64,
    cache_hits: AtomicU64,
    cache_misses: AtomicU64,
    bridges: AtomicU64,
    live_terms: AtomicUsize,
    peak_terms: AtomicUsize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub loop_rules: u64,
    pub tadpole_rules: u64,
    pub bigon_rules: u64,
    pub triangle_rules: u64,
    pub square_rules: u64,
    pub pentagon_rules: u64,
    pub crossings_resolved: u64,
    pub bridge_zeros: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub peak_terms: usize,
}

pub struct Evaluator {
    config: EvalConfig,
    cache: DashMap<Vec<u8>, FieldValue>,
    counters: Counters,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(EvalConfig::default())
    }
}

/// Keeps the live-term counter honest across early returns.
struct LiveTerms<'a>(&'a Counters, usize);

impl<'a> LiveTerms<'a> {
    fn new(c: &'a Counters, n: usize) -> Self {
        let now = c.live_terms.fetch_add(n, Ordering::Relaxed) + n;
        c.peak_terms.fetch_max(now, Ordering::Relaxed);
        LiveTerms(c, n)
    }
}

impl Drop for LiveTerms<'_> {
    fn drop(&mut self) {
        self.0.live_terms.fetch_sub(self.1, Ordering::Relaxed);
    }
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Evaluator {
            config,
            cache: DashMap::new(),
            counters: Counters::default(),
        }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.config.table
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn clear_cache(&self) {
        self.cache.clear();
    }

    pub fn stats(&self) -> Stats {
        let c = &self.counters;
        let rule = |k: MeshKind| c.rules[k as usize].load(Ordering::Relaxed);
        Stats {
            loop_rules: rule(MeshKind::Loop),
            tadpole_rules: rule(MeshKind::Tadpole),
            bigon_rules: rule(MeshKind::Bigon),
            triangle_rules: rule(MeshKind::Triangle),
            square_rules: rule(MeshKind::Square),
            pentagon_rules: rule(MeshKind::Pentagon),
            crossings_resolved: c.crossings.load(Ordering::Relaxed),
            bridge_zeros: c.bridges.load(Ordering::Relaxed),
            cache_hits: c.cache_hits.load(Ordering::Relaxed),
            cache_misses: c.cache_misses.load(Ordering::Relaxed),
            peak_terms: c.peak_terms.load(Ordering::Relaxed),
        }
    }

    fn count(&self, k: MeshKind) {
        self.counters.rules[k as usize].fetch_add(1, Ordering::Relaxed);
    }

    /// The invariant of a closed diagram.
    pub fn evaluate(&self, d: &Diagram) -> Result<FieldValue, EvalError> {
        let mut value = FieldValue::one();
        for _ in 0..d.free_loops() {
            self.count(MeshKind::Loop);
            value = &value * &self.config.mesh.loop_value;
        }
        if d.node_count() == 0 {
            return Ok(value);
        }
        for part in d.split_components() {
            if value.is_zero() {
                break;
            }
            value = &value * &self.connected(&part)?;
        }
        Ok(value)
    }

    /// [`Evaluator::evaluate`] restricted to crossing-free input.
    pub fn reduce_closed_planar(&self, d: &Diagram) -> Result<FieldValue, EvalError> {
        if !d.is_planar() {
            return Err(EvalError::HasCrossings);
        }
        self.evaluate(d)
    }

    fn connected(&self, d: &Diagram) -> Result<FieldValue, EvalError> {
        if !self.config.memo {
            return self.compute(d);
        }
        let key = d.canonical_code();
        if let Some(v) = self.cache.get(&key) {
            self.counters.cache_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v.clone());
        }
        self.counters.cache_misses.fetch_add(1, Ordering::Relaxed);
        let v = self.compute(d)?;
        match self.cache.entry(key) {
            dashmap::mapref::entry::Entry::Occupied(e) => {
                if *e.get() != v {
                    return Err(EvalError::CacheConflict);
                }
            }
            dashmap::mapref::entry::Entry::Vacant(e) => {
                e.insert(v.clone());
            }
        }
        Ok(v)
    }

    fn compute(&self, d: &Diagram) -> Result<FieldValue, EvalError> {
        if self.config.bridge_shortcut && d.find_bridge().is_some() {
            self.counters.bridges.fetch_add(1, Ordering::Relaxed);
            return Ok(FieldValue::zero());
        }
        let faces = d.faces();
        let best = faces
            .into_iter()
            .filter_map(|f| MeshMatch::new(d, f))
            .filter(|m| m.kind <= self.config.max_mesh)
            .min_by_key(|m| m.kind);
        if let Some(m) = &best {
            if m.kind <= MeshKind::Triangle || d.is_planar() {
                let lc = self.apply_mesh_rule(d, m)?;
                return self.combine(lc);
            }
        }
        if !d.is_planar() {
            let c = self.choose_crossing(d);
            self.counters.crossings.fetch_add(1, Ordering::Relaxed);
            let lc = skein::resolve_crossing(d, c, self.config.convention, &self.config.table)?;
            return self.combine(lc);
        }
        Err(EvalError::Stuck(d.clone()))
    }

    fn combine(&self, lc: LinearCombination) -> Result<FieldValue, EvalError> {
        let _live = LiveTerms::new(&self.counters, lc.len());
        let terms: Vec<(Diagram, FieldValue)> = lc.into_terms().collect();
        let eval = |(d, c): &(Diagram, FieldValue)| -> Result<FieldValue, EvalError> {
            Ok(c * &self.evaluate(d)?)
        };
        let parts: Vec<FieldValue> = if self.config.parallel && terms.len() > 1 {
            terms.par_iter().map(eval).collect::<Result<_, _>>()?
        } else {
            terms.iter().map(eval).collect::<Result<_, _>>()?
        };
        Ok(parts.into_iter().sum())
    }

    fn choose_crossing(&self, d: &Diagram) -> NodeId {
        match self.config.crossing_choice {
            CrossingChoice::First => d.crossings().next().expect("has a crossing"),
            CrossingChoice::SmallestFace => d
                .faces()
                .iter()
                .filter(|f| f.crossing_count > 0)
                .min_by_key(|f| f.len())
                .and_then(|f| {
                    f.boundary
                        .iter()
                        .map(|&x| d.node_of(x))
                        .find(|&n| d.kind(n) == NodeKind::Crossing)
                })
                .expect("has a crossing"),
        }
    }

    /// Replaces the mesh by the right-hand side of its rule.
    pub fn apply_mesh_rule(
        &self,
        d: &Diagram,
        m: &MeshMatch,
    ) -> Result<LinearCombination, EvalError> {
        self.count(m.kind);
        let coeff = &self.config.mesh;
        let corners: Vec<NodeId> = m.corners(d).collect();
        let mut lc = LinearCombination::new();
        if m.kind == MeshKind::Tadpole {
            return Ok(lc);
        }
        for (pattern, c) in mesh_patterns(m.kind, coeff) {
            let term = d.replace(&corners, &m.external, |b, s| pattern.attach(b, s));
            debug_assert!(
                complexity(&term) < complexity(d),
                "mesh rule did not shrink {d:?}"
            );
            lc.add(term, c);
        }
        Ok(lc)
    }

    /// Finds the smallest admissible mesh.
    pub fn find_mesh(&self, d: &Diagram) -> Option<MeshMatch> {
        d.faces()
            .into_iter()
            .filter_map(|f| MeshMatch::new(d, f))
            .filter(|m| m.kind <= self.config.max_mesh)
            .min_by_key(|m| m.kind)
    }
}

/// `Σ (faces − 1)` over components plus free loops; every mesh rule lowers it.
pub fn complexity(d: &Diagram) -> usize {
    let (label, _) = d.face_labels();
    let mut total = d.free_loops();
    for comp in d.components() {
        let mut faces: Vec<usize> = comp
            .iter()
            .flat_map(|&n| d.darts(n))
            .map(|x| label[x])
            .collect();
        faces.sort_unstable();
        faces.dedup();
        total += faces.len() - 1;
    }
    total
}

/// Crossing-free pictures on `n` boundary points used by the mesh rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Arc joining ports 0 and 1.
    Arc,
    /// One trivalent node on ports 0, 1, 2.
    Vertex,
    /// Arcs on ports `(i, i+1)` and `(i+2, i+3)` of a square.
    ArcPair(usize),
    /// Two-vertex tree grouping `{i, i+1} | {i+2, i+3}` of a square.
    Tree2(usize),
    /// Arc on `(i, i+1)` and a vertex on `i+2, i+3, i+4` of a pentagon.
    ArcVertex(usize),
    /// Three-vertex tree of a pentagon with `i` on the middle vertex and the
    /// pairs `{i+1, i+2}`, `{i+3, i+4}` on the outer ones.
    Tree3(usize),
}

impl Pattern {
    pub fn attach(self, b: &mut MapBuilder, s: &[Slot]) {
        let n = s.len();
        let at = |k: usize| s[k % n];
        match self {
            Pattern::Arc => b.connect(s[0], s[1]),
            Pattern::Vertex => attach_vertex(b, [s[0], s[1], s[2]]),
            Pattern::ArcPair(i) => {
                b.connect(at(i), at(i + 1));
                b.connect(at(i + 2), at(i + 3));
            }
            Pattern::Tree2(i) => attach_h(b, [at(i), at(i + 1), at(i + 2), at(i + 3)]),
            Pattern::ArcVertex(i) => {
                b.connect(at(i), at(i + 1));
                attach_vertex(b, [at(i + 2), at(i + 3), at(i + 4)]);
            }
            Pattern::Tree3(i) => {
                let c = b.add_node(SlotKind::Trivalent);
                let u = b.add_node(SlotKind::Trivalent);
                let w = b.add_node(SlotKind::Trivalent);
                b.connect(at(i), Slot::new(c, 0));
                b.connect(Slot::new(c, 1), Slot::new(u, 2));
                b.connect(Slot::new(c, 2), Slot::new(w, 2));
                b.connect(at(i + 1), Slot::new(u, 0));
                b.connect(at(i + 2), Slot::new(u, 1));
                b.connect(at(i + 3), Slot::new(w, 0));
                b.connect(at(i + 4), Slot::new(w, 1));
            }
        }
    }

    /// Every crossing-free closure with trivalent vertices for `n` ports
    /// that the rules of size `n` use.
    pub fn family(kind: MeshKind) -> Vec<Pattern> {
        match kind {
            MeshKind::Loop | MeshKind::Tadpole => vec![],
            MeshKind::Bigon => vec![Pattern::Arc],
            MeshKind::Triangle => vec![Pattern::Vertex],
            MeshKind::Square => vec![
                Pattern::ArcPair(0),
                Pattern::ArcPair(1),
                Pattern::Tree2(0),
                Pattern::Tree2(1),
            ],
            MeshKind::Pentagon => (0..5)
                .map(Pattern::ArcVertex)
                .chain((0..5).map(Pattern::Tree3))
                .collect(),
        }
    }

    pub fn name(self) -> String {
        match self {
            Pattern::Arc => "arc".into(),
            Pattern::Vertex => "vertex".into(),
            Pattern::ArcPair(i) => {
                format!("arcs({i}{},{}{})", (i + 1) % 4, (i + 2) % 4, (i + 3) % 4)
            }
            Pattern::Tree2(i) => format!("tree({i}{}|{}{})", (i + 1) % 4, (i + 2) % 4, (i + 3) % 4),
            Pattern::ArcVertex(i) => format!(
                "arc({i}{})+vertex({}{}{})",
                (i + 1) % 5,
                (i + 2) % 5,
                (i + 3) % 5,
                (i + 4) % 5
            ),
            Pattern::Tree3(i) => format!(
                "tree({i}|{}{}|{}{})",
                (i + 1) % 5,
                (i + 2) % 5,
                (i + 3) % 5,
                (i + 4) % 5
            ),
        }
    }
}

fn attach_vertex(b: &mut MapBuilder, s: [Slot; 3]) {
    let v = b.add_node(SlotKind::Trivalent);
    for (k, slot) in s.into_iter().enumerate() {
        b.connect(slot, Slot::new(v, k));
    }
}

fn mesh_patterns(kind: MeshKind, c: &MeshCoefficients) -> Vec<(Pattern, FieldValue)> {
    Pattern::family(kind)
        .into_iter()
        .map(|p| {
            let coeff = match p {
                Pattern::Arc => c.bigon.clone(),
                Pattern::Vertex => c.triangle.clone(),
                Pattern::ArcPair(_) => c.square_arcs.clone(),
                Pattern::Tree2(_) => c.square_tree.clone(),
                Pattern::ArcVertex(_) => c.pentagon_arc.clone(),
                Pattern::Tree3(_) => c.pentagon_tree.clone(),
            };
            (p, coeff)
        })
        .collect()
}

/// A polygon of `n` trivalent corners whose external darts are closed off by
/// `cap`. Node `i` is corner `i`; the polygon face contains dart 1.
pub fn capped_polygon(n: usize, cap: Pattern) -> Result<Diagram, NetError> {
    let mut b = MapBuilder::new();
    // corner slots: 0 outward, 1 toward the next corner, 2 toward the previous
    let corners: Vec<NodeId> = (0..n).map(|_| b.add_node(SlotKind::Trivalent)).collect();
    for i in 0..n {
        b.connect(Slot::new(corners[i], 1), Slot::new(corners[(i + 1) % n], 2));
    }
    // seen from outside the polygon the ports run clockwise
    let ports: Vec<Slot> = corners.iter().rev().map(|&c| Slot::new(c, 0)).collect();
    cap.attach(&mut b, &ports);
    let d = b.finish()?;
    d.validate()?;
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureCheck {
    pub rule: MeshKind,
    pub capping: String,
    pub left: String,
    pub right: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ClosureReport {
    pub checks: Vec<ClosureCheck>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClosureCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

/// Closes the square and pentagon rules with every capping and compares both
/// sides, each reduced only with strictly smaller rules.
pub fn verify_rule_closures(config: &EvalConfig) -> Result<ClosureReport, EvalError> {
    let mut report = ClosureReport::default();
    for kind in [MeshKind::Square, MeshKind::Pentagon] {
        let n = kind.corners();
        let mut smaller = config.clone();
        smaller.max_mesh = MeshKind::from_corners(n - 1).expect("n > 0");
        smaller.memo = false;
        let ev = Evaluator::new(smaller);
        let full = Evaluator::new(config.clone());
        for cap in Pattern::family(kind) {
            let d = capped_polygon(n, cap)?;
            let face = d
                .faces()
                .into_iter()
                .find(|f| f.boundary.contains(&1))
                .expect("dart 1 lies on a face");
            let m = MeshMatch::new(&d, face).expect("polygon face is a mesh");
            debug_assert_eq!(m.kind, kind);
            let left = ev.evaluate(&d)?;
            let mut right = FieldValue::zero();
            for (term, c) in full.apply_mesh_rule(&d, &m)?.into_terms() {
                right = &right + &(&c * &ev.evaluate(&term)?);
            }
            report.checks.push(ClosureCheck {
                rule: kind,
                capping: cap.name(),
                ok: left == right,
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }
    Ok(report)
}
