//! Root data of `g2` and an independent derivation of the skein coefficients.
//!
//! Everything here is computed from the integer Gram matrix of the simple
//! roots (short root of squared length 2). The only external normalisation is
//! the choice of the adjoint Casimir as unit, which removes the unspecified
//! scale of the invariant form.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::coeffs::Summand;
use crate::ring::{FieldValue, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("weight ({0}, {1}) is not dominant")]
    NonDominant(i64, i64),
    #[error("linear system for the skein coefficients is singular")]
    Singular,
    #[error("chord eigenvalue on {0:?} does not give an integral q-exponent")]
    NonIntegralExponent(Summand),
}

/// A vector in simple-root coordinates `x α₁ + y α₂`.
pub type RootVector = [i64; 2];

/// A weight in the fundamental-weight basis `a ω₁ + b ω₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }
}

#[derive(Clone, Debug)]
pub struct RootDataG2 {
    /// Gram matrix of `(α₁, α₂)`; `α₁` short.
    pub gram: [[i64; 2]; 2],
    pub positive_roots: [RootVector; 6],
    /// `ω₁ = 2α₁ + α₂`, `ω₂ = 3α₁ + 2α₂`.
    pub fundamental_weights: [RootVector; 2],
}

impl Default for RootDataG2 {
    fn default() -> Self {
        RootDataG2 {
            gram: [[2, -3], [-3, 6]],
            positive_roots: [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]],
            fundamental_weights: [[2, 1], [3, 2]],
        }
    }
}

impl RootDataG2 {
    pub fn inner(&self, x: RootVector, y: RootVector) -> i64 {
        let g = &self.gram;
        x[0] * (g[0][0] * y[0] + g[0][1] * y[1]) + x[1] * (g[1][0] * y[0] + g[1][1] * y[1])
    }

    pub fn to_roots(&self, w: Weight) -> RootVector {
        let [w1, w2] = self.fundamental_weights;
        [w.a * w1[0] + w.b * w2[0], w.a * w1[1] + w.b * w2[1]]
    }

    /// Half the sum of the positive roots, `ω₁ + ω₂`.
    pub fn delta(&self) -> RootVector {
        self.to_roots(Weight::new(1, 1))
    }

    pub fn highest_weight(&self, s: Summand) -> Weight {
        match s {
            Summand::C => Weight::new(0, 0),
            Summand::V => Weight::new(1, 0),
            Summand::L => Weight::new(0, 1),
            Summand::W => Weight::new(2, 0),
        }
    }

    /// `(λ, λ + 2δ)` in the Gram normalisation.
    pub fn casimir_raw(&self, w: Weight) -> Result<i64, LieError> {
        if !w.is_dominant() {
            return Err(LieError::NonDominant(w.a, w.b));
        }
        let l = self.to_roots(w);
        let d = self.delta();
        Ok(self.inner(l, [l[0] + 2 * d[0], l[1] + 2 * d[1]]))
    }

    /// Casimir eigenvalue normalised so that the adjoint representation gets 1.
    pub fn casimir_eigenvalue(&self, w: Weight) -> Result<BigRational, LieError> {
        let adjoint = self.casimir_raw(self.highest_weight(Summand::L))?;
        Ok(BigRational::new(
            self.casimir_raw(w)?.into(),
            adjoint.into(),
        ))
    }

    /// `(λ + δ, α)` for every positive root `α`.
    pub fn shifted_exponents(&self, w: Weight) -> Vec<i64> {
        let l = self.to_roots(w);
        let d = self.delta();
        let shifted = [l[0] + d[0], l[1] + d[1]];
        self.positive_roots
            .iter()
            .map(|&a| self.inner(shifted, a))
            .collect()
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, w: Weight) -> Result<BigRational, LieError> {
        if !w.is_dominant() {
            return Err(LieError::NonDominant(w.a, w.b));
        }
        let top = self.shifted_exponents(w);
        let bottom = self.shifted_exponents(Weight::new(0, 0));
        Ok(top
            .iter()
            .zip(&bottom)
            .map(|(&m, &n)| BigRational::new(m.into(), n.into()))
            .product())
    }

    /// Eigenvalues of the chord operator on each summand of `V ⊗ V`, in units
    /// of `ĥ²/h`: `c_V − c_U / 2`.
    pub fn chord_eigenvalues(&self) -> Result<BTreeMap<Summand, BigRational>, LieError> {
        let c_v = self.casimir_eigenvalue(self.highest_weight(Summand::V))?;
        let half = BigRational::new(1.into(), 2.into());
        Summand::ALL
            .iter()
            .map(|&s| {
                let c_u = self.casimir_eigenvalue(self.highest_weight(s))?;
                Ok((s, &c_v - &c_u * &half))
            })
            .collect()
    }

    /// Sign of the flip map on each summand: `+1` on `Sym²V = C ⊕ W`, `−1` on
    /// `∧²V = V ⊕ L`.
    pub fn flip_signs(&self) -> BTreeMap<Summand, i64> {
        [
            (Summand::C, 1),
            (Summand::V, -1),
            (Summand::L, -1),
            (Summand::W, 1),
        ]
        .into_iter()
        .collect()
    }

    /// Crossing eigenvalues `flip_U · q^{∓12·chord_U}`; `positive` selects the
    /// upper sign.
    pub fn crossing_eigenvalues(
        &self,
        positive: bool,
    ) -> Result<BTreeMap<Summand, FieldValue>, LieError> {
        let chords = self.chord_eigenvalues()?;
        let signs = self.flip_signs();
        let twelve = BigRational::from_integer(12.into());
        Summand::ALL
            .iter()
            .map(|&s| {
                let e = &chords[&s] * &twelve;
                if !e.is_integer() {
                    return Err(LieError::NonIntegralExponent(s));
                }
                let e: i64 = e.to_integer().try_into().expect("small exponent");
                let e = if positive { -e } else { e };
                let v =
                    FieldValue::q_pow(e as i32).scale(&BigRational::from_integer(signs[&s].into()));
                Ok((s, v))
            })
            .collect()
    }

    /// `Π_{α>0} (u^{m_α} − u^{−m_α}) / (u^{n_α} − u^{−n_α})` with
    /// `m_α = (λ_V + δ, α)`, `n_α = (δ, α)`, as a Laurent polynomial in `u`
    /// (stored in the `q` slot).
    pub fn unknot_product(&self) -> LaurentPoly {
        let quantum = |e: i64| -> LaurentPoly {
            let e = e as i32;
            LaurentPoly::from_q_coeffs([(e, 1), (-e, -1)])
        };
        let num = self
            .shifted_exponents(self.highest_weight(Summand::V))
            .into_iter()
            .map(quantum)
            .fold(LaurentPoly::one(), |a, b| &a * &b);
        let den = self
            .shifted_exponents(Weight::new(0, 0))
            .into_iter()
            .map(quantum)
            .fold(LaurentPoly::one(), |a, b| &a * &b);
        num.div_exact(&den)
            .expect("Weyl quantum dimension is a Laurent polynomial")
    }

    /// Solves for `(α, β, γ, δ)` in
    /// `positive = α·negative + β·identity + γ·cupcap + δ·H` over the four
    /// summands. The circle value in the cup-cap column is taken from
    /// [`RootDataG2::unknot_product`] under `q = u²`.
    pub fn derive_skein_coefficients(&self) -> Result<SkeinCoefficients, LieError> {
        let pos = self.crossing_eigenvalues(true)?;
        let neg = self.crossing_eigenvalues(false)?;
        let circle = half_exponents(&self.unknot_product());
        let mut rows = Vec::new();
        for s in Summand::ALL {
            let cup = if s == Summand::C {
                circle.clone()
            } else {
                FieldValue::zero()
            };
            let h = if s == Summand::V {
                FieldValue::r()
            } else {
                FieldValue::zero()
            };
            rows.push(vec![
                neg[&s].clone(),
                FieldValue::one(),
                cup,
                h,
                pos[&s].clone(),
            ]);
        }
        let x = solve(rows)?;
        Ok(SkeinCoefficients {
            alpha: x[0].clone(),
            beta: x[1].clone(),
            gamma: x[2].clone(),
            delta: x[3].clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkeinCoefficients {
    pub alpha: FieldValue,
    pub beta: FieldValue,
    pub gamma: FieldValue,
    pub delta: FieldValue,
}

/// Rewrites a polynomial in `u` with only even exponents as one in `q = u²`.
fn half_exponents(p: &LaurentPoly) -> FieldValue {
    let terms = p.terms().iter().map(|(m, c)| {
        debug_assert!(m.q % 2 == 0);
        (crate::ring::Monomial::new(m.q / 2, m.r), c.clone())
    });
    FieldValue::from_poly(LaurentPoly::from_terms(terms))
}

/// Gauss–Jordan elimination on an augmented `n × (n+1)` matrix.
fn solve(mut m: Vec<Vec<FieldValue>>) -> Result<Vec<FieldValue>, LieError> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(LieError::Singular)?;
        m.swap(col, pivot);
        let inv = m[col][col].inv().map_err(|_| LieError::Singular)?;
        for x in &mut m[col][col..] {
            *x = &*x * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Exponent multisets `m_α` and `n_α` used in the unknot product.
pub fn unknot_exponents(data: &RootDataG2) -> (Vec<i64>, Vec<i64>) {
    let mut m = data.shifted_exponents(data.highest_weight(Summand::V));
    let mut n = data.shifted_exponents(Weight::new(0, 0));
    m.sort_unstable();
    n.sort_unstable();
    (m, n)
}
