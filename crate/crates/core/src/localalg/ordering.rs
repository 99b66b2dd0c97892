use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::field::Coeff;
use crate::poly::{Mono, Poly};

/// Monomial orderings used by the standard-basis engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoOrder {
    /// Negative degree ordering: lower total degree is larger, ties by reverse lexicographic order.
    /// The constant 1 is the largest monomial.
    LocalDegree,
    /// Degree reverse lexicographic; every variable is larger than 1.
    GlobalDegRevLex,
    /// Block ordering: the exponent of variable `var` decides first, then degrevlex.
    Eliminate { var: usize },
}

impl MonoOrder {
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonoOrder::LocalDegree => b.degree().cmp(&a.degree()).then_with(|| a.revlex_cmp(b)),
            MonoOrder::GlobalDegRevLex => a.cmp(b),
            MonoOrder::Eliminate { var } => a.exps()[var].cmp(&b.exps()[var]).then_with(|| a.cmp(b)),
        }
    }

    pub fn is_local(self) -> bool {
        matches!(self, MonoOrder::LocalDegree)
    }

    /// Leading term of `f`, i.e. its largest monomial under this ordering.
    pub fn leading(self, f: &Poly) -> Option<(&Mono, &Coeff)> {
        match self {
            MonoOrder::GlobalDegRevLex => f.terms().next_back(),
            MonoOrder::LocalDegree => {
                // Lowest degree block; within it the ascending map order is revlex, so take its last entry.
                let mut it = f.terms();
                let first = it.next()?;
                let d = first.0.degree();
                let mut best = first;
                for t in it {
                    if t.0.degree() != d {
                        break;
                    }
                    best = t;
                }
                Some(best)
            }
            MonoOrder::Eliminate { .. } => f.terms().max_by(|a, b| self.cmp(a.0, b.0)),
        }
    }

    /// `deg(f) − deg(LM(f))`, the ecart used by Mora's normal form.
    pub fn ecart(self, f: &Poly) -> i64 {
        match self.leading(f) {
            Some((m, _)) => f.degree() as i64 - m.degree() as i64,
            None => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    #[test]
    fn local_ordering_prefers_low_degree() {
        let f = parse_poly("x^3+x*y+y^2+x^2", &["x", "y"], Field::rationals()).unwrap();
        let (m, _) = MonoOrder::LocalDegree.leading(&f).unwrap();
        // degree-2 block {x^2, x*y, y^2}: revlex makes x^2 largest
        assert_eq!(m, &Mono::new(&[2, 0]));
        let (g, _) = MonoOrder::GlobalDegRevLex.leading(&f).unwrap();
        assert_eq!(g, &Mono::new(&[3, 0]));
        assert!(MonoOrder::LocalDegree.cmp(&Mono::one(2), &Mono::var(2, 0)).is_gt());
        assert!(MonoOrder::GlobalDegRevLex.cmp(&Mono::one(2), &Mono::var(2, 0)).is_lt());
    }

    #[test]
    fn elimination_block() {
        let o = MonoOrder::Eliminate { var: 2 };
        assert!(o.cmp(&Mono::new(&[0, 0, 1]), &Mono::new(&[5, 5, 0])).is_gt());
        assert!(o.cmp(&Mono::new(&[2, 0, 1]), &Mono::new(&[1, 0, 1])).is_gt());
    }
}
