//! The `verify` subcommand: deterministic consistency checks over the Lie
//! algebra data, the coefficient table, the mesh rules and a family of
//! small braid closures.

use g2net_core::bundled;
use g2net_core::coeffs::{seven_c, Summand};
use g2net_core::liealg::RootDataG2;
use g2net_core::net::tangle::{TangleOp, TangleWord};
use g2net_core::reduce::verify_rule_closures;
use g2net_core::skein;
use g2net_core::{CoefficientTable, Diagram, EvalConfig, Evaluator, FieldValue};
use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::json;

use crate::{Failure, CHECK_FAILED};

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        let (ok, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check {
            name: name.into(),
            ok,
            detail,
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn run(as_json: bool, out: &mut String) -> Result<(), Failure> {
    let mut checks = Vec::new();
    lie_checks(&mut checks);
    for (name, r) in CoefficientTable::build().identity_residuals() {
        let outcome = if r.is_zero() {
            Ok(String::new())
        } else {
            Err(format!("residual {r}"))
        };
        checks.push(Check::new(format!("identity {name}"), outcome));
    }
    match verify_rule_closures(&EvalConfig::default()) {
        Ok(report) => {
            for c in report.checks {
                let outcome = if c.ok {
                    Ok(String::new())
                } else {
                    Err(format!("{} != {}", c.left, c.right))
                };
                checks.push(Check::new(
                    format!("closure {:?} capped by {}", c.rule, c.capping),
                    outcome,
                ));
            }
        }
        Err(e) => checks.push(Check::new("closures", Err(e.to_string()))),
    }
    let ev = Evaluator::default();
    for ex in &bundled::EXAMPLES {
        let outcome = ev
            .evaluate(&ex.diagram())
            .map_err(|e| e.to_string())
            .and_then(|v| {
                if v == ex.expected() {
                    Ok(String::new())
                } else {
                    Err(format!("got {v}"))
                }
            });
        checks.push(Check::new(format!("example {}", ex.name), outcome));
    }
    checks.push(Check::new("four-term relation", four_term(&ev)));
    checks.push(Check::new("Reidemeister II", reidemeister_two(&ev)));
    checks.push(Check::new("Reidemeister III", reidemeister_three(&ev)));
    checks.push(Check::new("framed kink", kinks(&ev)));
    checks.push(Check::new("vertex twist", twists(&ev)));
    checks.push(Check::new("mirror", mirrors(&ev)));
    checks.push(Check::new("disjoint union", unions(&ev)));

    let failed = checks.iter().filter(|c| !c.ok).count();
    if as_json {
        let doc: Vec<_> = checks
            .iter()
            .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
            .collect();
        let _ = writeln!(out, "{}", serde_json::Value::Array(doc));
    } else {
        for c in &checks {
            let mark = if c.ok { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{mark} {}", c.name);
            } else {
                let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
            }
        }
        let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
    }
    if failed > 0 {
        return Err(Failure(CHECK_FAILED, format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn lie_checks(out: &mut Vec<Check>) {
    let data = RootDataG2::default();
    let t = CoefficientTable::standard();
    out.push(Check::new(
        "lie: skein coefficients match the table",
        data.derive_skein_coefficients()
            .map_err(|e| e.to_string())
            .and_then(|s| {
                ensure(
                    s.alpha == t.alpha
                        && s.beta == t.beta
                        && s.gamma == t.gamma
                        && s.delta == t.delta,
                    || "derived coefficients differ".into(),
                )
                .map(|_| String::new())
            }),
    ));
    out.push(Check::new(
        "lie: chord eigenvalues",
        data.chord_eigenvalues()
            .map_err(|e| e.to_string())
            .and_then(|m| {
                let got: Vec<_> = Summand::ALL.iter().map(|s| m[s].clone()).collect();
                ensure(
                    got == [rat(1, 2), rat(1, 4), rat(0, 1), rat(-1, 12)],
                    || format!("{got:?}"),
                )
                .map(|_| "1/2, 1/4, 0, -1/12".into())
            }),
    ));
    let per_summand =
        |f: &dyn Fn(Summand) -> Result<BigRational, String>| -> Result<Vec<BigRational>, String> {
            Summand::ALL.iter().map(|&s| f(s)).collect()
        };
    out.push(Check::new(
        "lie: Casimir ratios",
        per_summand(&|s| {
            data.casimir_eigenvalue(data.highest_weight(s))
                .map_err(|e| e.to_string())
        })
        .and_then(|c| {
            ensure(c == [rat(0, 1), rat(1, 2), rat(1, 1), rat(7, 6)], || {
                format!("{c:?}")
            })
            .map(|_| "0, 1/2, 1, 7/6".into())
        }),
    ));
    out.push(Check::new(
        "lie: Weyl dimensions",
        per_summand(&|s| {
            data.weyl_dimension(data.highest_weight(s))
                .map_err(|e| e.to_string())
        })
        .and_then(|d| {
            let total: BigRational = d.iter().sum();
            ensure(
                d == [rat(1, 1), rat(7, 1), rat(14, 1), rat(27, 1)] && total == rat(49, 1),
                || format!("{d:?}"),
            )
            .map(|_| "1 + 7 + 14 + 27 = 49".into())
        }),
    ));
    out.push(Check::new(
        "lie: unknot product",
        seven_c()
            .substitute_q_power(2)
            .map_err(|e| e.to_string())
            .and_then(|sq| {
                let u = FieldValue::from_poly(data.unknot_product());
                ensure(u == sq, || format!("got {u}")).map(|_| String::new())
            }),
    ));
}

/// Braid words on two and three strands with up to three letters.
fn braid_words() -> Vec<(usize, Vec<i32>)> {
    let mut out = Vec::new();
    for (n, letters) in [(2usize, vec![1, -1]), (3, vec![1, -1, 2, -2])] {
        let mut layer: Vec<Vec<i32>> = vec![vec![]];
        for _ in 0..3 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |&g| {
                        let mut w = w.clone();
                        w.push(g);
                        w
                    })
                })
                .collect();
            out.extend(layer.iter().map(|w| (n, w.clone())));
        }
    }
    out
}

fn build(w: &TangleWord) -> Result<Diagram, String> {
    w.build().map_err(|e| e.to_string())
}

fn value(ev: &Evaluator, d: &Diagram) -> Result<FieldValue, String> {
    ev.evaluate(d).map_err(|e| e.to_string())
}

/// `word` with `ops` inserted right after the opening cups.
fn insert_after_cups(n: usize, gens: &[i32], ops: &[TangleOp]) -> TangleWord {
    let mut w = TangleWord::braid_closure(n, gens);
    w.ops.splice(n..n, ops.iter().copied());
    w
}

fn cross(at: usize, top_over: bool) -> TangleOp {
    TangleOp::Cross { at, top_over }
}

fn four_term(ev: &Evaluator) -> Result<String, String> {
    let mut diagrams: Vec<Diagram> = bundled::EXAMPLES.iter().map(|e| e.diagram()).collect();
    for (n, w) in braid_words().into_iter().filter(|(_, w)| w.len() <= 2) {
        diagrams.push(build(&TangleWord::braid_closure(n, &w))?);
        diagrams.push(build(&insert_after_cups(
            n,
            &w,
            &[TangleOp::Merge(0), TangleOp::Split(0)],
        ))?);
    }
    let mut checked = 0;
    for d in &diagrams {
        for c in d.crossings() {
            let r = skein::four_term_residual(ev, d, c).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || {
                format!("residual {r} at crossing {c} of\n{}", d.to_net())
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} crossings on {} diagrams",
        diagrams.len()
    ))
}

fn reidemeister_two(ev: &Evaluator) -> Result<String, String> {
    let mut n_checked = 0;
    for (n, w) in braid_words().into_iter().filter(|(_, w)| w.len() <= 2) {
        let base = value(ev, &build(&TangleWord::braid_closure(n, &w))?)?;
        for i in 0..n - 1 {
            for x in [true, false] {
                let moved = insert_after_cups(n, &w, &[cross(i, x), cross(i, !x)]);
                ensure(value(ev, &build(&moved)?)? == base, || {
                    format!("fails on {:?}", moved.ops)
                })?;
                n_checked += 1;
            }
        }
    }
    Ok(format!("{n_checked} moves"))
}

fn reidemeister_three(ev: &Evaluator) -> Result<String, String> {
    let mut n_checked = 0;
    for (n, w) in braid_words()
        .into_iter()
        .filter(|(n, w)| *n == 3 && w.len() <= 2)
    {
        for x in [true, false] {
            let left = insert_after_cups(n, &w, &[cross(0, x), cross(1, x), cross(0, x)]);
            let right = insert_after_cups(n, &w, &[cross(1, x), cross(0, x), cross(1, x)]);
            ensure(
                value(ev, &build(&left)?)? == value(ev, &build(&right)?)?,
                || format!("fails on {:?}", left.ops),
            )?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} moves"))
}

fn kinks(ev: &Evaluator) -> Result<String, String> {
    let q6 = FieldValue::q_pow(6);
    let mut n_checked = 0;
    for (n, w) in braid_words().into_iter().filter(|(_, w)| w.len() <= 2) {
        let base = value(ev, &build(&TangleWord::braid_closure(n, &w))?)?;
        for x in [true, false] {
            let kink = insert_after_cups(n, &w, &[TangleOp::Cup(1), cross(0, x), TangleOp::Cap(1)]);
            let want = if x { q6.clone() } else { q6.invert_q() };
            ensure(value(ev, &build(&kink)?)? == &base * &want, || {
                format!("fails on {:?}", kink.ops)
            })?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} kinks, factor q^6 or q^-6"))
}

fn twists(ev: &Evaluator) -> Result<String, String> {
    let q3 = -FieldValue::q_pow(3);
    let vertex = [TangleOp::Merge(0), TangleOp::Split(0)];
    let mut n_checked = 0;
    for (n, w) in braid_words().into_iter().filter(|(_, w)| w.len() <= 2) {
        let plain = value(ev, &build(&insert_after_cups(n, &w, &vertex))?)?;
        for x in [true, false] {
            let twisted = insert_after_cups(n, &w, &[cross(0, x), vertex[0], vertex[1]]);
            let want = if x { q3.invert_q() } else { q3.clone() };
            ensure(value(ev, &build(&twisted)?)? == &plain * &want, || {
                format!("fails on {:?}", twisted.ops)
            })?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} twists, factor -q^3 or -q^-3"))
}

fn mirrors(ev: &Evaluator) -> Result<String, String> {
    let mut diagrams: Vec<Diagram> = bundled::EXAMPLES.iter().map(|e| e.diagram()).collect();
    for (n, w) in braid_words().into_iter().filter(|(_, w)| w.len() == 3) {
        diagrams.push(build(&TangleWord::braid_closure(n, &w))?);
    }
    for d in &diagrams {
        ensure(value(ev, &d.mirror())? == value(ev, d)?.invert_q(), || {
            format!("fails on\n{}", d.to_net())
        })?;
    }
    Ok(format!("{} diagrams", diagrams.len()))
}

fn unions(ev: &Evaluator) -> Result<String, String> {
    let diagrams: Vec<Diagram> = bundled::EXAMPLES.iter().map(|e| e.diagram()).collect();
    let mut n_checked = 0;
    for a in &diagrams {
        for b in &diagrams {
            let joint = value(ev, &a.disjoint_union(b))?;
            ensure(joint == &value(ev, a)? * &value(ev, b)?, || {
                "union is not multiplicative".into()
            })?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} pairs"))
}
