//! Example diagrams shipped with the crate, with their known values.

use crate::coeffs::seven_c;
use crate::net::Diagram;
use crate::ring::FieldValue;

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub net: &'static str,
    /// Expected value divided by `7c`.
    expected_over_loop: &'static str,
}

impl Example {
    pub fn diagram(&self) -> Diagram {
        self.net.parse().expect("bundled examples parse")
    }

    pub fn expected(&self) -> FieldValue {
        let rest: FieldValue = self
            .expected_over_loop
            .parse()
            .expect("bundled expected values parse");
        &rest * &seven_c()
    }
}

pub const EXAMPLES: [Example; 6] = [
    Example {
        name: "unknot",
        net: include_str!("../data/unknot.net"),
        expected_over_loop: "1",
    },
    Example {
        name: "hopf",
        net: include_str!("../data/hopf.net"),
        expected_over_loop: "q^7+q^5+q^2+1+q^-2+q^-5+q^-7",
    },
    Example {
        name: "trefoil",
        net: include_str!("../data/trefoil.net"),
        expected_over_loop:
            "q^8+q^6-q^5+q^3-q^2+q-1+q^-1+q^-4-2*q^-5+2*q^-6-q^-7-q^-9-q^-10+q^-11-q^-12+q^-13",
    },
    Example {
        name: "figure-eight",
        net: include_str!("../data/figure-eight.net"),
        expected_over_loop:
            "q^14-q^13+2*q^12-2*q^11+q^9-2*q^8+4*q^7-4*q^6+4*q^5-2*q^4-q^3+3*q^2-5*q+5\
            -5*q^-1+3*q^-2-q^-3-2*q^-4+4*q^-5-4*q^-6+4*q^-7-2*q^-8+q^-9-2*q^-11+2*q^-12-q^-13+q^-14",
    },
    Example {
        name: "theta",
        net: include_str!("../data/theta.net"),
        expected_over_loop: "r",
    },
    Example {
        name: "tetrahedron",
        net: include_str!("../data/tetrahedron.net"),
        expected_over_loop: "(-q^3*r^2+q^2*r^2-q*r^2)/(q^4+1)",
    },
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for e in &EXAMPLES {
            e.diagram();
            e.expected();
        }
        assert!(find("hopf").is_some());
        assert!(find("nope").is_none());
    }
}
