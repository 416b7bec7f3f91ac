//! Named constants of the skein relation and the mesh rules.

use std::sync::OnceLock;

use crate::ring::{FieldValue, LaurentPoly};

fn poly(s: &str) -> FieldValue {
    FieldValue::from_poly(
        s.parse::<LaurentPoly>()
            .expect("constant polynomial literal"),
    )
}

fn div(a: &FieldValue, b: &FieldValue) -> FieldValue {
    a.checked_div(b).expect("nonzero constant denominator")
}

/// `7c`, the value of an unknotted circle.
pub fn seven_c() -> FieldValue {
    poly("q^5+q^4+q+1+q^-1+q^-4+q^-5")
}

/// The value of `r` at which the skein relation becomes the quantum g2
/// spider relation.
pub fn spider_r() -> FieldValue {
    poly("-q^2-q-1-q^-2-q^-3-q^-4")
}

/// All constants, built from their closed forms.
///
/// Fields are public so that test harnesses can perturb single entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub seven_c: FieldValue,
    pub alpha: FieldValue,
    pub beta: FieldValue,
    pub gamma: FieldValue,
    pub delta: FieldValue,
    pub lambda: FieldValue,
    pub mu: FieldValue,
    pub rho: FieldValue,
    pub sigma: FieldValue,
    pub t: FieldValue,
    pub g: FieldValue,
    pub d: FieldValue,
}

impl CoefficientTable {
    pub fn build() -> Self {
        let gamma = div(&poly("-q^7+q^-6-q+1"), &seven_c());
        let delta = div(&poly("q^4-q^-3-q+1"), &FieldValue::r());
        Self::from_skein(FieldValue::q(), poly("q-1"), gamma, delta)
    }

    /// Derives every other entry from the four skein coefficients. Used with
    /// deliberately wrong inputs to check that the consistency tests notice.
    pub fn from_skein(
        alpha: FieldValue,
        beta: FieldValue,
        gamma: FieldValue,
        delta: FieldValue,
    ) -> Self {
        let r = FieldValue::r();
        let seven_c = seven_c();
        let one_minus_a2 = &FieldValue::one() - &(&alpha * &alpha);
        let lambda = div(&(&(&alpha * &gamma) + &beta), &one_minus_a2);
        let mu = div(&(&(&alpha * &beta) + &gamma), &one_minus_a2);
        let rho = div(&delta, &one_minus_a2);
        let sigma = &alpha * &rho;
        let t = div(
            &(&(&poly("-q^3") + &(&alpha * &poly("q^-3"))) - &gamma),
            &delta,
        );
        let g = poly("q^6+q^5+q^4+q^2+q+1");
        let d = div(&(&r * &poly("q^3")), &g);
        CoefficientTable {
            seven_c,
            alpha,
            beta,
            gamma,
            delta,
            lambda,
            mu,
            rho,
            sigma,
            t,
            g,
            d,
        }
    }

    /// Shared instance of [`CoefficientTable::build`].
    pub fn standard() -> &'static CoefficientTable {
        static TABLE: OnceLock<CoefficientTable> = OnceLock::new();
        TABLE.get_or_init(CoefficientTable::build)
    }

    /// Coefficient `r²q⁵/(g(q⁴+1))` of each arc pairing in the square rule.
    pub fn square_pairing(&self) -> FieldValue {
        let r = FieldValue::r();
        let num = &(&r * &r) * &poly("q^5");
        div(&num, &(&self.g * &poly("q^4+1")))
    }

    /// Coefficient `rq²(q²+1)/g` of each two-vertex tree in the square rule.
    pub fn square_tree(&self) -> FieldValue {
        div(&(&FieldValue::r() * &poly("q^4+q^2")), &self.g)
    }

    pub fn entries(&self) -> [(&'static str, &FieldValue); 12] {
        [
            ("7c", &self.seven_c),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
            ("lambda", &self.lambda),
            ("mu", &self.mu),
            ("rho", &self.rho),
            ("sigma", &self.sigma),
            ("t", &self.t),
            ("g", &self.g),
            ("d", &self.d),
        ]
    }

    /// Residuals of the defining identities; all are zero for a correct table.
    pub fn identity_residuals(&self) -> Vec<(&'static str, FieldValue)> {
        let one_minus_a2 = &FieldValue::one() - &(&self.alpha * &self.alpha);
        let a = &self.alpha;
        vec![
            (
                "gamma*7c = -q^7+q^-6-q+1",
                &(&self.gamma * &self.seven_c) - &poly("-q^7+q^-6-q+1"),
            ),
            (
                "delta*r = q^4-q^-3-q+1",
                &(&self.delta * &FieldValue::r()) - &poly("q^4-q^-3-q+1"),
            ),
            (
                "lambda*(1-alpha^2) = alpha*gamma+beta",
                &(&self.lambda * &one_minus_a2) - &(&(a * &self.gamma) + &self.beta),
            ),
            (
                "mu*(1-alpha^2) = alpha*beta+gamma",
                &(&self.mu * &one_minus_a2) - &(&(a * &self.beta) + &self.gamma),
            ),
            (
                "rho*(1-alpha^2) = delta",
                &(&self.rho * &one_minus_a2) - &self.delta,
            ),
            ("sigma = alpha*rho", &self.sigma - &(a * &self.rho)),
            (
                "t*delta = -q^3+alpha*q^-3-gamma",
                &(&self.t * &self.delta) - &(&(&poly("-q^3") + &(a * &poly("q^-3"))) - &self.gamma),
            ),
            (
                "d*g = r*q^3",
                &(&self.d * &self.g) - &(&FieldValue::r() * &poly("q^3")),
            ),
        ]
    }
}

/// Irreducible summands of `V ⊗ V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Summand {
    C,
    V,
    L,
    W,
}

impl Summand {
    pub const ALL: [Summand; 4] = [Summand::C, Summand::V, Summand::L, Summand::W];
}

/// Columns of the eigenvalue table: the five local pictures on four endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigenColumn {
    PositiveCrossing,
    NegativeCrossing,
    Identity,
    CupCap,
    H,
}

impl EigenColumn {
    pub const ALL: [EigenColumn; 5] = [
        EigenColumn::PositiveCrossing,
        EigenColumn::NegativeCrossing,
        EigenColumn::Identity,
        EigenColumn::CupCap,
        EigenColumn::H,
    ];
}

/// Eigenvalues of the five local pictures on `C, V, L, W` (rows), columns in
/// [`EigenColumn::ALL`] order.
pub fn eigenvalue_table() -> [[FieldValue; 5]; 4] {
    let z = FieldValue::zero;
    let o = FieldValue::one;
    [
        [poly("q^-6"), poly("q^6"), o(), seven_c(), z()],
        [poly("-q^-3"), poly("-q^3"), o(), z(), FieldValue::r()],
        [poly("-1"), poly("-1"), o(), z(), z()],
        [poly("q"), poly("q^-1"), o(), z(), z()],
    ]
}
