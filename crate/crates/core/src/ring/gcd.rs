//! Polynomial gcd over `Z[q, r]`.
//!
//! Polynomials are viewed as elements of `Z[q][r]`: a dense vector (indexed by
//! r-degree) of dense univariate polynomials in `q`. The gcd is the product of
//! the gcd of the r-contents (a univariate gcd in `Z[q]`) and the gcd of the
//! primitive parts, computed with a primitive pseudo-remainder sequence in `r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{LaurentPoly, Monomial};

/// Dense polynomial in `q` with integer coefficients, index = degree.
type UPoly = Vec<BigInt>;
/// Dense polynomial in `r` whose coefficients are `UPoly`s.
type BPoly = Vec<UPoly>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trim_b(p: &mut BPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len() - 1
}

fn u_content(p: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_scalar(p: &UPoly, s: &BigInt) -> UPoly {
    p.iter().map(|c| c / s).collect()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn u_scale(a: &UPoly, s: &BigInt) -> UPoly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

/// Primitive part with positive leading coefficient.
fn u_primitive(p: &UPoly) -> UPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = u_content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    u_div_scalar(p, &c)
}

/// Pseudo-remainder of `a` by `b` (deg a >= deg b).
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = deg(b);
    let lb = b.last().unwrap().clone();
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient `a / b` in `Z[q]`, `None` if it does not exist.
fn u_div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = deg(b);
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qc * c;
        }
        quot[shift] = qc;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

/// gcd in `Z[q]`, primitive with positive leading coefficient.
fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_primitive(b);
    }
    if b.is_empty() {
        return u_primitive(a);
    }
    let cont = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![cont];
        }
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    u_scale(&x, &cont)
}

fn b_deg(p: &BPoly) -> usize {
    p.len() - 1
}

fn b_content(p: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in p {
        g = u_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn b_div_u(p: &BPoly, c: &UPoly) -> BPoly {
    p.iter()
        .map(|x| u_div_exact(x, c).expect("content divides every coefficient"))
        .collect()
}

fn b_primitive(p: &BPoly) -> BPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let c = b_content(p);
    let mut out = b_div_u(p, &c);
    if out.last().unwrap().last().unwrap().is_negative() {
        for x in out.iter_mut() {
            for c in x.iter_mut() {
                *c = -&*c;
            }
        }
    }
    out
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let db = b_deg(b);
    let lb = b.last().unwrap().clone();
    while !r.is_empty() && r.len() > db {
        let dr = b_deg(&r);
        let lr = r.last().unwrap().clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = u_mul(c, &lb);
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = u_sub(&r[i + shift], &u_mul(&lr, c));
        }
        trim_b(&mut r);
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    let cont = u_gcd(&b_content(a), &b_content(b));
    let (mut x, mut y) = (b_primitive(a), b_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![cont];
        }
        let r = b_prem(&x, &y);
        x = y;
        y = b_primitive(&r);
    }
    x.iter().map(|c| u_mul(c, &cont)).collect()
}

/// Converts a nonzero Laurent polynomial to an integral polynomial in
/// `Z[q][r]` after dividing out its rational content and lowest monomial.
fn to_bpoly(p: &LaurentPoly) -> BPoly {
    let low = p.min_exponents().expect("nonzero polynomial");
    let content = p.content();
    let max = p.max_exponents().unwrap();
    let mut out: BPoly = vec![Vec::new(); (max.r - low.r) as usize + 1];
    for (m, c) in p.terms() {
        let c = c / &content;
        debug_assert!(c.is_integer());
        let row = &mut out[(m.r - low.r) as usize];
        let qi = (m.q - low.q) as usize;
        if row.len() <= qi {
            row.resize(qi + 1, BigInt::zero());
        }
        row[qi] = c.to_integer();
    }
    out
}

fn from_bpoly(p: &BPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().flat_map(|(ri, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(qi, c)| {
                (
                    Monomial::new(qi as i32, ri as i32),
                    BigRational::from_integer(c.clone()),
                )
            })
    }))
}

/// Greatest common divisor of two nonzero Laurent polynomials, up to units.
///
/// The result lies in `Z[q, r]`, is primitive, is divisible by neither `q`
/// nor `r`, and has a positive leading coefficient.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert!(!a.is_zero() && !b.is_zero(), "gcd of zero polynomial");
    if a.is_monomial() || b.is_monomial() {
        return LaurentPoly::one();
    }
    let ga = to_bpoly(a);
    let gb = to_bpoly(b);
    let mut g = if ga.len() == 1 && gb.len() == 1 {
        vec![u_gcd(&ga[0], &gb[0])]
    } else {
        b_gcd(&ga, &gb)
    };
    // strip any power of q or r so the result is a canonical representative
    while g.first().is_some_and(|row| row.is_empty()) {
        g.remove(0);
    }
    let qmin = g
        .iter()
        .filter_map(|row| row.iter().position(|c| !c.is_zero()))
        .min()
        .unwrap_or(0);
    if qmin > 0 {
        for row in g.iter_mut() {
            if !row.is_empty() {
                row.drain(..qmin);
            }
        }
    }
    from_bpoly(&g)
}
