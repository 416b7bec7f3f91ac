//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use g2net_core::bundled::{self, EXAMPLES};
use g2net_core::coeffs::{seven_c, CoefficientTable, Summand};
use g2net_core::liealg::{unknot_exponents, RootDataG2};
use g2net_core::net::tangle::{TangleOp, TangleWord};
use g2net_core::reduce::{verify_rule_closures, MeshKind};
use g2net_core::skein;
use g2net_core::{Diagram, EvalConfig, Evaluator, FieldValue};
use num_rational::BigRational;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn value(ev: &Evaluator, d: &Diagram) -> Result<FieldValue, String> {
    ev.evaluate(d)
        .map_err(|e| format!("evaluation failed: {e}"))
}

fn build(w: &TangleWord) -> Diagram {
    w.build().expect("test words close up")
}

/// Random closed word with up to `max` crossings, vertices at random.
fn word(rng: &mut impl Rng, max: usize) -> TangleWord {
    let k = rng.random_range(0..=max);
    let vertices = rng.random();
    common::random_word(rng, k, vertices, 5)
}

fn diagram(rng: &mut impl Rng, min: usize, max: usize) -> Diagram {
    let k = rng.random_range(min..=max);
    let vertices = rng.random();
    common::random_diagram(rng, k, vertices)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn unknot() -> Outcome {
    let d: Diagram = "O".parse().map_err(|e| format!("{e}"))?;
    let expected: FieldValue = "q^5+q^4+q+1+q^-1+q^-4+q^-5".parse().unwrap();
    let mut best = Duration::MAX;
    for _ in 0..20 {
        let ev = Evaluator::default();
        let t = Instant::now();
        let v = value(&ev, &d)?;
        best = best.min(t.elapsed());
        ensure(v == expected, || format!("got {v}"))?;
    }
    ensure(best < Duration::from_millis(1), || format!("took {best:?}"))?;
    Ok(format!("value 7c in {best:?}"))
}

fn examples() -> Outcome {
    let mut slowest = Duration::ZERO;
    for e in &EXAMPLES {
        let ev = Evaluator::default();
        let t = Instant::now();
        let v = value(&ev, &e.diagram())?;
        let took = t.elapsed();
        slowest = slowest.max(took);
        ensure(v == e.expected(), || {
            format!("{}: got {v}, expected {}", e.name, e.expected())
        })?;
        ensure(took < Duration::from_secs(1), || {
            format!("{} took {took:?}", e.name)
        })?;
    }
    let ev = Evaluator::default();
    let fig8 = value(&ev, &bundled::find("figure-eight").unwrap().diagram())?;
    ensure(fig8 == fig8.invert_q(), || {
        "figure-eight is not palindromic".into()
    })?;
    let trefoil = bundled::find("trefoil").unwrap();
    ensure(trefoil.expected() != trefoil.expected().invert_q(), || {
        "trefoil value is palindromic, calibration is vacuous".into()
    })?;
    let other = Evaluator::new(EvalConfig {
        convention: skein::CALIBRATED.other(),
        ..EvalConfig::default()
    });
    let mirrored = value(&other, &trefoil.diagram())?;
    ensure(mirrored == trefoil.expected().invert_q(), || {
        "the other convention does not give the mirrored trefoil".into()
    })?;
    let t = CoefficientTable::standard();
    let k4 = value(&ev, &bundled::find("tetrahedron").unwrap().diagram())?;
    let path = &(&t.t * &FieldValue::r()) * &t.seven_c;
    ensure(k4 == path, || "tetrahedron differs from t*r*7c".into())?;
    Ok(format!(
        "{} examples match, slowest {slowest:?}; calibrated convention {:?}",
        EXAMPLES.len(),
        skein::CALIBRATED
    ))
}

fn coefficient_identities() -> Outcome {
    let t = CoefficientTable::build();
    let residuals = t.identity_residuals();
    for (name, r) in &residuals {
        ensure(r.is_zero(), || format!("{name}: residual {r}"))?;
    }
    Ok(format!("{} identities exact", residuals.len()))
}

fn lie_oracle() -> Outcome {
    let data = RootDataG2::default();
    let derived = data
        .derive_skein_coefficients()
        .map_err(|e| e.to_string())?;
    let t = CoefficientTable::standard();
    ensure(
        derived.alpha == t.alpha
            && derived.beta == t.beta
            && derived.gamma == t.gamma
            && derived.delta == t.delta,
        || "derived (alpha, beta, gamma, delta) differ from the table".into(),
    )?;
    let chords = data.chord_eigenvalues().map_err(|e| e.to_string())?;
    let want = [rat(1, 2), rat(1, 4), rat(0, 1), rat(-1, 12)];
    for (s, w) in Summand::ALL.iter().zip(&want) {
        ensure(&chords[s] == w, || {
            format!("chord on {s:?} is {}", chords[s])
        })?;
    }
    let casimir: Vec<BigRational> = Summand::ALL
        .iter()
        .map(|&s| data.casimir_eigenvalue(data.highest_weight(s)).unwrap())
        .collect();
    ensure(
        casimir == [rat(0, 1), rat(1, 2), rat(1, 1), rat(7, 6)],
        || format!("Casimir ratios {casimir:?}"),
    )?;
    let dims: Vec<BigRational> = Summand::ALL
        .iter()
        .map(|&s| data.weyl_dimension(data.highest_weight(s)).unwrap())
        .collect();
    let total: BigRational = dims.iter().sum();
    ensure(
        dims == [rat(1, 1), rat(7, 1), rat(14, 1), rat(27, 1)] && total == rat(49, 1),
        || format!("dimensions {dims:?}"),
    )?;
    let (m, n) = unknot_exponents(&data);
    ensure(m == [2, 3, 5, 7, 9, 12] && n == [1, 3, 4, 5, 6, 9], || {
        format!("exponents {m:?} {n:?}")
    })?;
    let u = FieldValue::from_poly(data.unknot_product());
    let sq = seven_c().substitute_q_power(2).map_err(|e| e.to_string())?;
    ensure(u == sq, || format!("unknot product {u}"))?;
    Ok("skein coefficients, chords, Casimirs, dimensions, unknot all agree".into())
}

fn four_term() -> Outcome {
    let mut rng = common::rng(4);
    let ev = Evaluator::default();
    let mut checked = 0;
    let mut nonzero = 0;
    for i in 0..50 {
        let k = rng.random_range(1..=5);
        let d = common::random_diagram(&mut rng, k, i % 2 == 1);
        for c in d.crossings().collect::<Vec<_>>() {
            let r = skein::four_term_residual(&ev, &d, c).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || {
                format!("diagram {i} crossing {c}: residual {r}\n{}", d.to_net())
            })?;
            checked += 1;
        }
        if !value(&ev, &d)?.is_zero() {
            nonzero += 1;
        }
    }
    Ok(format!(
        "{checked} crossings on 50 diagrams ({nonzero} with nonzero value)"
    ))
}

fn invariance() -> Outcome {
    let mut rng = common::rng(6);
    let ev = Evaluator::default();
    // Reidemeister II
    let mut r2 = 0;
    while r2 < 25 {
        let base = word(&mut rng, 4);
        let Some((at, s)) = common::random_position(&mut rng, &base, 2) else {
            continue;
        };
        let i = rng.random_range(0..s - 1);
        let x = rng.random();
        let moved = common::with_inserted(
            &base,
            at,
            &[
                TangleOp::Cross { at: i, top_over: x },
                TangleOp::Cross {
                    at: i,
                    top_over: !x,
                },
            ],
        );
        let (a, b) = (value(&ev, &build(&base))?, value(&ev, &build(&moved))?);
        ensure(a == b, || format!("R2 fails on {:?}", moved.ops))?;
        r2 += 1;
    }
    // Reidemeister III
    let mut r3 = 0;
    while r3 < 25 {
        let base = word(&mut rng, 3);
        let Some((at, s)) = common::random_position(&mut rng, &base, 3) else {
            continue;
        };
        let i = rng.random_range(0..s - 2);
        let x = rng.random();
        let c = |at| TangleOp::Cross { at, top_over: x };
        let left = common::with_inserted(&base, at, &[c(i), c(i + 1), c(i)]);
        let right = common::with_inserted(&base, at, &[c(i + 1), c(i), c(i + 1)]);
        let (a, b) = (value(&ev, &build(&left))?, value(&ev, &build(&right))?);
        ensure(a == b, || format!("R3 fails on {:?}", left.ops))?;
        r3 += 1;
    }
    // framed Reidemeister I and vertex twist
    let q6 = FieldValue::q_pow(6);
    let q3 = -FieldValue::q_pow(3);
    let mut local = 0;
    while local < 20 {
        let base = word(&mut rng, 3);
        let Some((at, s)) = common::random_position(&mut rng, &base, 2) else {
            continue;
        };
        let i = rng.random_range(0..s - 1);
        let plain = value(&ev, &build(&base))?;
        if plain.is_zero() {
            continue;
        }
        for x in [true, false] {
            let kink = common::with_inserted(
                &base,
                at,
                &[
                    TangleOp::Cup(i + 1),
                    TangleOp::Cross { at: i, top_over: x },
                    TangleOp::Cap(i + 1),
                ],
            );
            let want = if x { q6.clone() } else { q6.inv().unwrap() };
            let got = value(&ev, &build(&kink))?;
            ensure(got == &plain * &want, || {
                format!("kink factor wrong on {:?}", kink.ops)
            })?;
            // a crossing closed directly by a cap is the rotated picture
            let curl = common::with_inserted(
                &base,
                at,
                &[
                    TangleOp::Cup(i),
                    TangleOp::Cross { at: i, top_over: x },
                    TangleOp::Cap(i),
                ],
            );
            let got = value(&ev, &build(&curl))?;
            ensure(got == &(&plain * &want.invert_q()) * &seven_c(), || {
                format!("curl factor wrong on {:?}", curl.ops)
            })?;
        }
        let merged = common::with_inserted(&base, at, &[TangleOp::Merge(i), TangleOp::Split(i)]);
        let untwisted = value(&ev, &build(&merged))?;
        for x in [true, false] {
            let twisted = common::with_inserted(
                &base,
                at,
                &[
                    TangleOp::Cross { at: i, top_over: x },
                    TangleOp::Merge(i),
                    TangleOp::Split(i),
                ],
            );
            let want = if x { q3.invert_q() } else { q3.clone() };
            let got = value(&ev, &build(&twisted))?;
            ensure(got == &untwisted * &want, || {
                format!("vertex twist wrong on {:?}", twisted.ops)
            })?;
        }
        local += 1;
    }
    // mirror
    let mut mirrors = 0;
    for e in &EXAMPLES {
        let d = e.diagram();
        ensure(
            value(&ev, &d.mirror())? == value(&ev, &d)?.invert_q(),
            || format!("mirror fails on {}", e.name),
        )?;
        mirrors += 1;
    }
    for _ in 0..25 {
        let d = diagram(&mut rng, 1, 6);
        ensure(
            value(&ev, &d.mirror())? == value(&ev, &d)?.invert_q(),
            || format!("mirror fails on\n{}", d.to_net()),
        )?;
        mirrors += 1;
    }
    // disjoint unions
    for _ in 0..25 {
        let a = diagram(&mut rng, 0, 4);
        let b = diagram(&mut rng, 0, 4);
        let fresh = Evaluator::default();
        let joint = value(&fresh, &a.disjoint_union(&b))?;
        ensure(joint == &value(&ev, &a)? * &value(&ev, &b)?, || {
            "union is not multiplicative".into()
        })?;
    }
    Ok(format!(
        "R2 x{r2}, R3 x{r3}, kink/twist x{local} (top-over: kink q^6, closed curl q^-6, twist -q^-3), mirror x{mirrors}, unions x25"
    ))
}

fn closures() -> Outcome {
    let report = verify_rule_closures(&EvalConfig::default()).map_err(|e| e.to_string())?;
    if let Some(f) = report.failures().next() {
        return Err(format!(
            "{:?} capped by {}: {} != {}",
            f.rule, f.capping, f.left, f.right
        ));
    }
    let n = report.checks.len();

    // perturbed gamma: closures and the four-term relation must both notice
    let t = CoefficientTable::standard();
    let bad = CoefficientTable::from_skein(
        t.alpha.clone(),
        t.beta.clone(),
        &t.gamma + &FieldValue::one(),
        t.delta.clone(),
    );
    let cfg = EvalConfig::default().with_table(bad);
    let bad_report = verify_rule_closures(&cfg).map_err(|e| e.to_string())?;
    ensure(!bad_report.passed(), || {
        "closures pass with perturbed gamma".into()
    })?;
    let bad_ev = Evaluator::new(cfg);
    let hopf = bundled::find("hopf").unwrap().diagram();
    let residual = skein::four_term_residual(&bad_ev, &hopf, 0).map_err(|e| e.to_string())?;
    ensure(!residual.is_zero(), || {
        "four-term residual vanishes with perturbed gamma".into()
    })?;

    // swapped pentagon coefficients
    let mut swapped = EvalConfig::default();
    std::mem::swap(
        &mut swapped.mesh.pentagon_arc,
        &mut swapped.mesh.pentagon_tree,
    );
    let swapped_report = verify_rule_closures(&swapped).map_err(|e| e.to_string())?;
    let pent_fail = swapped_report
        .failures()
        .any(|f| f.rule == MeshKind::Pentagon);
    ensure(pent_fail, || {
        "closures pass with swapped pentagon shapes".into()
    })?;
    Ok(format!(
        "{n} cappings exact; perturbed gamma fails {} cappings and the four-term check; swapped pentagon fails {}",
        bad_report.failures().count(),
        swapped_report.failures().count()
    ))
}

fn mesh_existence() -> Outcome {
    let mut rng = common::rng(8);
    let ev = Evaluator::default();
    for i in 0..200 {
        let n = 2 * rng.random_range(1..=15);
        let d = common::random_bridgeless_planar(&mut rng, n);
        ensure(d.find_bridge().is_none(), || {
            format!("map {i} has a bridge")
        })?;
        let m = ev
            .find_mesh(&d)
            .ok_or_else(|| format!("map {i} has no small face\n{}", d.to_net()))?;
        ensure(m.kind <= MeshKind::Pentagon, || "oversized mesh".into())?;
        value(&ev, &d)?;
    }
    Ok("200 maps with 2..30 vertices, all reduced without getting stuck".into())
}

fn performance() -> Outcome {
    let mut rng = common::rng(9);
    let mut words: Vec<(usize, Vec<i32>)> = vec![
        (3, vec![1, -2, 1, -2, 1, -2, 1, -2]),
        (3, vec![1, 2, 1, 2, 1, 2, 1, 2]),
        (4, vec![1, -2, 3, -2, 1, -2, 3, -2]),
        (4, vec![1, 2, 3, 1, 2, 3, 1, 2]),
        (5, vec![1, -2, 3, -4, 1, -2, 3, -4]),
    ];
    for _ in 0..5 {
        let n: usize = rng.random_range(3..=5);
        let w = (0..8)
            .map(|_| {
                let g = rng.random_range(1..n) as i32;
                if rng.random() {
                    g
                } else {
                    -g
                }
            })
            .collect();
        words.push((n, w));
    }
    let mut slowest = Duration::ZERO;
    for (n, w) in &words {
        let d = TangleWord::braid_closure(*n, w).build().unwrap();
        let ev = Evaluator::default();
        let t = Instant::now();
        value(&ev, &d)?;
        let took = t.elapsed();
        slowest = slowest.max(took);
        ensure(took <= Duration::from_secs(10), || {
            format!("{w:?} took {took:?}")
        })?;
    }
    // memo on and off agree
    let mut compared = 0;
    for k in [4, 5, 6] {
        for _ in 0..3 {
            let d = diagram(&mut rng, k, k);
            let on = value(&Evaluator::default(), &d)?;
            let off = value(
                &Evaluator::new(EvalConfig {
                    memo: false,
                    ..EvalConfig::default()
                }),
                &d,
            )?;
            ensure(on == off, || {
                format!("memo changes the value of\n{}", d.to_net())
            })?;
            compared += 1;
        }
    }
    let fig8x2 = TangleWord::braid_closure(3, &[1, -2, 1, -2, 1, -2])
        .build()
        .unwrap();
    let off = Evaluator::new(EvalConfig {
        memo: false,
        ..EvalConfig::default()
    });
    ensure(
        value(&Evaluator::default(), &fig8x2)? == value(&off, &fig8x2)?,
        || "memo changes a 6-crossing braid closure".into(),
    )?;
    Ok(format!(
        "{} eight-crossing diagrams, slowest {slowest:?}; memo on/off equal on {} diagrams",
        words.len(),
        compared + 1
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("unknot value and runtime", unknot),
        ("example table", examples),
        ("coefficient identities", coefficient_identities),
        ("Lie-theoretic oracle", lie_oracle),
        ("four-term relation residuals", four_term),
        ("invariance suites", invariance),
        ("rule-closure oracle and mutations", closures),
        ("small-face existence", mesh_existence),
        ("performance and memo soundness", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!(
                "criterion {} ({name}): PASS [{:.2?}] {detail}",
                i + 1,
                t.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {} ({name}): FAIL [{:.2?}] {detail}",
                    i + 1,
                    t.elapsed()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
