use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RingError;

/// Exponent pair of a monomial `q^q * r^r`.
///
/// Ordered lexicographically by `(r, q)`; the leading term of a polynomial is
/// its largest monomial in this order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub r: i32,
    pub q: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { r: 0, q: 0 };

    pub fn new(q: i32, r: i32) -> Self {
        Monomial { r, q }
    }

    pub fn inv(self) -> Monomial {
        Monomial {
            r: -self.r,
            q: -self.q,
        }
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            r: self.r + other.r,
            q: self.q + other.q,
        }
    }
}

/// A Laurent polynomial in `q` and `r` with rational coefficients.
///
/// Terms are kept sorted by ascending monomial with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn r() -> Self {
        Self::monomial(Monomial::new(0, 1), BigRational::one())
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Monomial::new(e, 0), BigRational::one())
    }

    /// Builds a polynomial in `q` alone from `(exponent, coefficient)` pairs.
    pub fn from_q_coeffs<I: IntoIterator<Item = (i32, i64)>>(coeffs: I) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .map(|(e, c)| (Monomial::new(e, 0), BigRational::from_integer(c.into()))),
        )
    }

    /// Collects arbitrary terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_sorted_unchecked(terms: Vec<(Monomial, BigRational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// True for a single term `c * q^a * r^b`, i.e. a unit of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    pub fn trailing(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Smallest q- and r-exponents occurring (each taken separately).
    pub fn min_exponents(&self) -> Option<Monomial> {
        let first = self.terms.first()?.0;
        Some(self.terms.iter().fold(first, |acc, (m, _)| Monomial {
            r: acc.r.min(m.r),
            q: acc.q.min(m.q),
        }))
    }

    pub fn max_exponents(&self) -> Option<Monomial> {
        let first = self.terms.first()?.0;
        Some(self.terms.iter().fold(first, |acc, (m, _)| Monomial {
            r: acc.r.max(m.r),
            q: acc.q.max(m.q),
        }))
    }

    pub fn is_r_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.r == 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Multiplies by the monomial `q^m.q * r^m.r`.
    pub fn shift(&self, m: Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k * m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: Monomial, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k * m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `q -> q^k` (k may be negative).
    pub fn map_q_exponents(&self, k: i32) -> LaurentPoly {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q * k, m.r), c.clone())),
        )
    }

    /// Applies `q -> q^{-1}`.
    pub fn invert_q(&self) -> LaurentPoly {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::new(-m.q, m.r), c.clone()))
            .collect();
        terms.sort_by_key(|a| a.0);
        Self::from_sorted_unchecked(terms)
    }

    /// Exact rational evaluation at nonzero `q` and `r`.
    /// Substitutes a nonzero rational for `q`, keeping `r`.
    pub fn substitute_q(&self, q: &BigRational) -> Result<LaurentPoly, RingError> {
        if q.is_zero() {
            return Err(RingError::Pole);
        }
        Ok(LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(0, m.r), c * q.pow(m.q))),
        ))
    }

    pub fn eval(&self, q: &BigRational, r: &BigRational) -> Result<BigRational, RingError> {
        if q.is_zero() || r.is_zero() {
            return Err(RingError::Pole);
        }
        let mut q_cache: BTreeMap<i32, BigRational> = BTreeMap::new();
        let mut r_cache: BTreeMap<i32, BigRational> = BTreeMap::new();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let qp = q_cache.entry(m.q).or_insert_with(|| q.pow(m.q)).clone();
            let rp = r_cache.entry(m.r).or_insert_with(|| r.pow(m.r));
            acc += c * qp * &*rp;
        }
        Ok(acc)
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    /// Divides by a polynomial known (or suspected) to divide `self` exactly.
    ///
    /// Returns `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (lead_m, lead_c) = divisor.leading()?.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let inv = lead_c.recip();
            return Some(self.mul_term(lead_m.inv(), &inv));
        }
        let floor = self.trailing()?.0 * divisor.trailing()?.0.inv();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m * lead_m.inv();
            if qm < floor {
                return None;
            }
            let qc = c / &lead_c;
            rem = &rem - &divisor.mul_term(qm, &qc);
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Some(Self::from_sorted_unchecked(quotient))
    }

    fn merge(&self, other: &LaurentPoly, negate_other: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other {
                        -&b[j].1
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate_other { -c } else { c.clone() }));
        }
        Self::from_sorted_unchecked(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.is_monomial() {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(*m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(*m, c);
        }
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(*ma * *mb).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(c: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(c.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = qpoly(&[(1, 1), (-1, 1)]);
        let b = qpoly(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, qpoly(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn exact_division() {
        let num = qpoly(&[(2, 1), (0, -1)]);
        let den = qpoly(&[(1, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den), Some(qpoly(&[(1, 1), (0, 1)])));
        assert_eq!(qpoly(&[(2, 1), (0, 1)]).div_exact(&den), None);
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        let a = qpoly(&[(3, 1), (-2, 2), (0, -1)]);
        let b = &qpoly(&[(1, 1), (-4, 1)]) + &LaurentPoly::r();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = qpoly(&[(1, 1), (1, -1), (0, 3)]);
        assert_eq!(a.len(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_exact() {
        let seven_c = qpoly(&[(5, 1), (4, 1), (1, 1), (0, 1), (-1, 1), (-4, 1), (-5, 1)]);
        let two = BigRational::from_integer(2.into());
        let v = seven_c.eval(&two, &BigRational::one()).unwrap();
        assert_eq!(v, BigRational::new(1651.into(), 32.into()));
    }

    #[test]
    fn content_of_rational_poly() {
        let p = LaurentPoly::from_terms([
            (Monomial::new(0, 0), BigRational::new(2.into(), 3.into())),
            (Monomial::new(1, 0), BigRational::new(4.into(), 9.into())),
        ]);
        assert_eq!(p.content(), BigRational::new(2.into(), 9.into()));
    }
}
