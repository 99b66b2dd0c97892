//! Quasihomogeneity, semi-quasihomogeneity, inner Newton non-degeneracy and the
//! characteristic-zero μ = τ test.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::equiv::Equivalence;
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::linalg::nullspace;
use crate::localalg::{self, global};
use crate::newton::{rational, CPolytope};
use crate::poly::{Mono, Poly};

/// `f` is quasihomogeneous of type `(weights; degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QHType {
    pub weights: Vec<i64>,
    pub degree: i64,
}

/// Weight search cap per variable when the support leaves several directions free.
const QH_SEARCH_CAP: i64 = 32;

/// Positive primitive weights putting the whole support on one hyperplane. When several
/// directions qualify the one with smallest L1 norm, then lexicographically smallest, wins.
pub fn detect_qh(f: &Poly) -> Option<QHType> {
    let support: Vec<&Mono> = f.support().collect();
    let first = *support.first()?;
    let n = f.nvars();
    let rows: Vec<Vec<BigRational>> = support[1..]
        .iter()
        .map(|m| (0..n).map(|i| rational::q(m.exps()[i] as i64 - first.exps()[i] as i64)).collect())
        .collect();
    let ns = nullspace(&rows, n);
    let fits = |w: &[i64]| support.iter().all(|m| m.weighted(w) == first.weighted(w));
    let w = match ns.len() {
        0 => return None,
        1 => {
            let mut w = rational::primitive(&ns[0]);
            if w.iter().all(|&x| x <= 0) {
                w.iter_mut().for_each(|x| *x = -*x);
            }
            if w.iter().any(|&x| x <= 0) {
                return None;
            }
            w
        }
        _ => (n as i64..=QH_SEARCH_CAP * n as i64)
            .find_map(|s| compositions(s, n).into_iter().find(|w| rational::gcd_vec(w) == 1 && fits(w)))?,
    };
    let degree = first.weighted(&w);
    (degree > 0).then_some(QHType { weights: w, degree })
}

/// Positive integer vectors of length `n` summing to `s`, in lexicographic order.
fn compositions(s: i64, n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for a in 1..=s - (n as i64 - 1) {
        for mut rest in compositions(s - a, n - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Principal part `In_w(f)`: the terms of minimal weighted degree.
pub fn principal_part(f: &Poly, w: &[i64]) -> Poly {
    match f.support().map(|m| m.weighted(w)).min() {
        None => f.clone(),
        Some(d) => f.filter(|m| m.weighted(w) == d),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SQHReport {
    pub mode: Equivalence,
    pub weights: Vec<i64>,
    pub degree: i64,
    pub principal_part: Poly,
    /// `μ` or `τ` of the principal part.
    pub principal_invariant: ExtNat,
    pub semi_quasihomogeneous: bool,
    /// `μ` or `τ` of `f` itself.
    pub invariant: ExtNat,
    /// `Π (d/w_i − 1)`, right mode only.
    pub formula: Option<String>,
    pub formula_matches: Option<bool>,
}

pub fn sqh_check(f: &Poly, w: &[i64], mode: Equivalence) -> Result<SQHReport> {
    if w.len() != f.nvars() || w.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidWeights("need one positive weight per variable".into()));
    }
    let inw = principal_part(f, w);
    let degree = f.support().map(|m| m.weighted(w)).min().ok_or(Error::ZeroPolynomial)?;
    let principal_invariant = mode.invariant(&inw)?;
    let invariant = mode.invariant(f)?;
    let sqh = principal_invariant.is_finite();
    let (formula, formula_matches) = if mode == Equivalence::Right && sqh {
        let prod = w.iter().fold(BigRational::one(), |acc, &wi| {
            acc * (BigRational::new(degree.into(), wi.into()) - BigRational::one())
        });
        let matches = invariant.finite().map(|m| BigRational::from_integer(m.into()) == prod);
        (Some(rational::to_string(&prod)), matches)
    } else {
        (None, None)
    };
    Ok(SQHReport {
        mode,
        weights: w.to_vec(),
        degree,
        principal_part: inw,
        principal_invariant,
        semi_quasihomogeneous: sqh,
        invariant,
        formula,
        formula_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceVerdict {
    /// Index into the polytope's face list.
    pub face: usize,
    pub dimension: usize,
    pub initial_form: Poly,
    pub passes: bool,
    /// Coordinates set to zero for a common zero of the face Jacobian, when one exists.
    pub failing_pattern: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct INNDReport {
    pub innd: bool,
    pub faces: Vec<FaceVerdict>,
}

impl INNDReport {
    pub fn failing(&self) -> Option<&FaceVerdict> {
        self.faces.iter().find(|f| !f.passes)
    }
}

fn substitute_zero(p: &Poly, zero: &[usize]) -> Poly {
    p.filter(|m| zero.iter().all(|&i| m.exps()[i] == 0))
}

/// Whether `jj(g)` has a common zero with exactly the coordinates in `zero` vanishing,
/// over the algebraic closure.
fn has_zero_with_pattern(partials: &[Poly], zero: &[usize], n: usize) -> Result<bool> {
    let field = partials[0].field();
    let gens: Vec<Poly> = partials.iter().map(|p| substitute_zero(p, zero)).filter(|p| !p.is_zero()).collect();
    if gens.is_empty() {
        return Ok(true);
    }
    let mut prod = Poly::one(field, n);
    for i in (0..n).filter(|i| !zero.contains(i)) {
        prod = prod.mul(&Poly::var(field, n, i));
    }
    let sat = global::saturate(&gens, &prod)?;
    Ok(!global::is_unit_ideal(&sat))
}

/// Inner Newton non-degeneracy of `f` along every inner face of `P`.
pub fn innd_check(f: &Poly, p: &CPolytope) -> Result<INNDReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    let n = f.nvars();
    let mut faces = Vec::new();
    for (idx, face) in p.faces().iter().enumerate().filter(|(_, fc)| fc.inner) {
        let g = p.face_initial_form(face, f);
        let partials = g.gradient();
        let mut failing = None;
        'patterns: for mask in 0u32..(1 << n) - 1 {
            let zero: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let meets = face
                .vertices
                .iter()
                .any(|&v| zero.iter().all(|&i| num_traits::Zero::is_zero(&p.vertices()[v][i])));
            if !meets {
                continue;
            }
            if has_zero_with_pattern(&partials, &zero, n)? {
                failing = Some(zero);
                break 'patterns;
            }
        }
        faces.push(FaceVerdict {
            face: idx,
            dimension: face.dimension,
            initial_form: g,
            passes: failing.is_none(),
            failing_pattern: failing,
        });
    }
    Ok(INNDReport { innd: faces.iter().all(|f| f.passes), faces })
}

#[derive(Clone, Debug, Serialize)]
pub struct SaitoReport {
    pub mu: ExtNat,
    pub tau: ExtNat,
    pub in_jacobian: bool,
    /// Right equivalent to a quasihomogeneous polynomial.
    pub quasihomogeneous: bool,
}

/// Characteristic-zero test `μ(f) = τ(f)`, cross-checked against `f ∈ jj(f)`.
pub fn saito_check(f: &Poly) -> Result<SaitoReport> {
    if !f.field().is_rational() {
        return Err(Error::Unsupported("the μ = τ criterion needs characteristic 0".into()));
    }
    let mu = localalg::milnor(f)?;
    if !mu.is_finite() {
        return Err(Error::Infinite("Milnor number".into()));
    }
    let tau = localalg::tjurina(f)?;
    let in_jacobian = localalg::ideal_membership(f, &localalg::jacobian_ideal(f))?.member;
    let quasihomogeneous = mu == tau;
    if quasihomogeneous != in_jacobian {
        return Err(Error::Unsupported(format!("inconsistent verdicts: mu={mu}, tau={tau}, f in jj(f)={in_jacobian}")));
    }
    Ok(SaitoReport { mu, tau, in_jacobian, quasihomogeneous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::newton::Extension;
    use crate::parse::parse_poly;

    fn p2(s: &str, ch: u64) -> Poly {
        let field = if ch == 0 { Field::rationals() } else { Field::prime(ch) };
        parse_poly(s, &["x", "y"], field).unwrap()
    }

    #[test]
    fn qh_detection() {
        let q10 = parse_poly("x^2*z+y^3+z^4", &["x", "y", "z"], Field::rationals()).unwrap();
        assert_eq!(detect_qh(&q10), Some(QHType { weights: vec![9, 8, 6], degree: 24 }));
        assert_eq!(detect_qh(&p2("x^4+x^2*y^2+y^5", 0)), None);
        assert_eq!(detect_qh(&p2("x^3", 0)), Some(QHType { weights: vec![1, 1], degree: 3 }));
        assert_eq!(detect_qh(&p2("x^2-y^3", 0)), Some(QHType { weights: vec![3, 2], degree: 6 }));
        assert_eq!(detect_qh(&p2("x^2+x*y", 0)), Some(QHType { weights: vec![1, 1], degree: 2 }));
        assert_eq!(detect_qh(&p2("x^2+y", 0)), Some(QHType { weights: vec![1, 2], degree: 2 }));
        assert_eq!(detect_qh(&p2("x^2+x", 0)), None);
    }

    #[test]
    fn sqh_examples() {
        let q10 = parse_poly("x^2*z+y^3+z^4", &["x", "y", "z"], Field::rationals()).unwrap();
        let r = sqh_check(&q10, &[9, 8, 6], Equivalence::Right).unwrap();
        assert!(r.semi_quasihomogeneous);
        assert_eq!(r.formula.as_deref(), Some("10"));
        assert_eq!(r.formula_matches, Some(true));
        let f = p2("x^7+x^6*y+y^4", 7);
        let c = sqh_check(&f, &[4, 7], Equivalence::Contact).unwrap();
        assert_eq!(c.principal_invariant, ExtNat::Finite(21));
        assert_eq!(c.invariant, ExtNat::Finite(17));
        let r = sqh_check(&f, &[4, 7], Equivalence::Right).unwrap();
        assert!(!r.semi_quasihomogeneous);
    }

    #[test]
    fn innd_examples() {
        let f = p2("x^3+y^3", 5);
        let p = CPolytope::from_poly(&f, Extension::default()).unwrap();
        assert!(innd_check(&f, &p).unwrap().innd);
        let g = p2("x^2+y^2", 2);
        let pg = CPolytope::from_poly(&g, Extension::default()).unwrap();
        let r = innd_check(&g, &pg).unwrap();
        assert!(!r.innd);
        assert_eq!(r.failing().unwrap().failing_pattern, Some(vec![]));
        let t = p2("x^5+x^2*y^2+y^4", 7);
        let pt = CPolytope::from_poly(&t, Extension::default()).unwrap();
        assert!(innd_check(&t, &pt).unwrap().innd);
    }

    #[test]
    fn saito() {
        assert!(saito_check(&p2("x^3+y^3", 0)).unwrap().quasihomogeneous);
        assert!(saito_check(&p2("x^2+y^7", 0)).unwrap().quasihomogeneous);
        let r = saito_check(&p2("x^5+y^5+x^3*y^3", 0)).unwrap();
        assert_eq!(r.mu, ExtNat::Finite(16));
        assert!(!r.quasihomogeneous);
        assert!(saito_check(&p2("x^3+y^3", 5)).is_err());
    }
}
