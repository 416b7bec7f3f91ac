use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{LaurentPoly, Monomial};
use super::RingError;

/// An element of the fraction field `Frac(Z[q^±1, r^±1])`.
///
/// Always stored in canonical form:
/// * `num` and `den` are coprime;
/// * `den` has no negative exponents, its lowest q- and r-exponents are 0,
///   its coefficients are coprime integers and its leading coefficient
///   (lexicographic in `(r, q)`) is positive;
/// * zero is `0 / 1`.
///
/// Two values are equal iff their canonical forms are identical, so the
/// derived `PartialEq`/`Hash` are the field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldValue {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FieldValue {
    pub fn zero() -> Self {
        FieldValue {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn q() -> Self {
        Self::from_poly(LaurentPoly::q())
    }

    pub fn r() -> Self {
        Self::from_poly(LaurentPoly::r())
    }

    pub fn q_pow(e: i32) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        FieldValue {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn is_r_free(&self) -> bool {
        self.num.is_r_free() && self.den.is_r_free()
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() || num.is_monomial() {
            return Self::normalize_units(num, den);
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self::normalize_units(num, den)
        } else {
            let num = num.div_exact(&g).expect("gcd divides numerator");
            let den = den.div_exact(&g).expect("gcd divides denominator");
            Self::normalize_units(num, den)
        }
    }

    /// Moves unit factors (monomials and rational scalars) from the
    /// denominator into the numerator. Assumes `num` and `den` coprime.
    fn normalize_units(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let low = den.min_exponents().unwrap();
        let mut scale = den.content();
        if den.leading().unwrap().1.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        let shift = low.inv();
        FieldValue {
            num: num.mul_term(shift, &inv),
            den: den.mul_term(shift, &inv),
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalize_units(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &FieldValue) -> Result<Self, RingError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(FieldValue {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
        .renormalized())
    }

    fn renormalized(self) -> Self {
        Self::normalize_units(self.num, self.den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FieldValue {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        FieldValue {
            num: self.num.shift(m),
            den: self.den.clone(),
        }
    }

    /// The automorphism `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        Self::normalize_units(self.num.invert_q(), self.den.invert_q())
    }

    /// Substitutes `r -> expr`, where `expr` must not involve `r`.
    pub fn substitute_r(&self, expr: &FieldValue) -> Result<Self, RingError> {
        if !expr.is_r_free() {
            return Err(RingError::NotFreeOfR);
        }
        let num = substitute_r_poly(&self.num, expr)?;
        let den = substitute_r_poly(&self.den, expr)?;
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        num.checked_div(&den)
    }

    /// Substitutes `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_q_power(&self, k: i32) -> Result<Self, RingError> {
        if k == 0 {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::reduce(
            self.num.map_q_exponents(k),
            self.den.map_q_exponents(k),
        ))
    }

    /// Substitutes a nonzero rational for `q`, keeping `r` symbolic.
    pub fn substitute_q(&self, q: &BigRational) -> Result<Self, RingError> {
        let den = self.den.substitute_q(q)?;
        if den.is_zero() {
            return Err(RingError::Pole);
        }
        FieldValue::new(self.num.substitute_q(q)?, den)
    }

    /// Exact evaluation at nonzero rationals `q` and `r`.
    pub fn eval(&self, q: &BigRational, r: &BigRational) -> Result<BigRational, RingError> {
        let d = self.den.eval(q, r)?;
        if d.is_zero() {
            return Err(RingError::Pole);
        }
        Ok(self.num.eval(q, r)? / d)
    }

    /// Evaluation of an `r`-free value at `q`.
    pub fn eval_q(&self, q: &BigRational) -> Result<BigRational, RingError> {
        if !self.is_r_free() {
            return Err(RingError::NotFreeOfR);
        }
        self.eval(q, &BigRational::one())
    }
}

fn substitute_r_poly(p: &LaurentPoly, expr: &FieldValue) -> Result<FieldValue, RingError> {
    let mut acc = FieldValue::zero();
    let mut by_r: std::collections::BTreeMap<i32, LaurentPoly> = Default::default();
    for (m, c) in p.terms() {
        let slot = by_r.entry(m.r).or_default();
        *slot = &*slot + &LaurentPoly::monomial(Monomial::new(m.q, 0), c.clone());
    }
    for (e, coeff) in by_r {
        acc = &acc + &(&FieldValue::from_poly(coeff) * &expr.pow(e)?);
    }
    Ok(acc)
}

impl Add for &FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: &FieldValue) -> FieldValue {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        match (self.den.is_one(), rhs.den.is_one()) {
            (true, true) => FieldValue::from_poly(&self.num + &rhs.num),
            // (a d + n) / d is already reduced when gcd(n, d) = 1
            (true, false) => {
                FieldValue::normalize_units(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone())
            }
            (false, true) => {
                FieldValue::normalize_units(&(&rhs.num * &self.den) + &self.num, self.den.clone())
            }
            (false, false) => {
                if self.den == rhs.den {
                    return FieldValue::reduce(&self.num + &rhs.num, self.den.clone());
                }
                let g = gcd(&self.den, &rhs.den);
                let (d1, d2) = if g.is_one() {
                    (self.den.clone(), rhs.den.clone())
                } else {
                    (
                        self.den.div_exact(&g).unwrap(),
                        rhs.den.div_exact(&g).unwrap(),
                    )
                };
                let num = &(&self.num * &d2) + &(&rhs.num * &d1);
                if num.is_zero() {
                    return FieldValue::zero();
                }
                let den = &self.den * &d2;
                if g.is_one() {
                    return FieldValue::normalize_units(num, den);
                }
                // any common factor of num and den divides g
                let h = gcd(&num, &g);
                if h.is_one() {
                    FieldValue::normalize_units(num, den)
                } else {
                    FieldValue::normalize_units(
                        num.div_exact(&h).unwrap(),
                        den.div_exact(&h).unwrap(),
                    )
                }
            }
        }
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        FieldValue {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: &FieldValue) -> FieldValue {
        self + &(-rhs)
    }
}

impl Mul for &FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: &FieldValue) -> FieldValue {
        if self.is_zero() || rhs.is_zero() {
            return FieldValue::zero();
        }
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        FieldValue::normalize_units(&n1 * &n2, &d1 * &d2)
    }
}

fn cancel(n: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if d.is_monomial() || n.is_monomial() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: FieldValue) -> FieldValue {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $method(self, rhs: &FieldValue) -> FieldValue {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        -&self
    }
}

impl std::iter::Sum for FieldValue {
    fn sum<I: Iterator<Item = FieldValue>>(iter: I) -> Self {
        iter.fold(FieldValue::zero(), |a, b| &a + &b)
    }
}

impl From<LaurentPoly> for FieldValue {
    fn from(p: LaurentPoly) -> Self {
        FieldValue::from_poly(p)
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
