//! Determinacy bounds and the normal-form reduction `f ~ In_P(f) + Σ c_α x^α`.

use serde::Serialize;

use crate::equiv::Equivalence;
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::field::Coeff;
use crate::grading::{Condition, GradedAlgebra, Generator, RegularBasis, Status};
use crate::localalg;
use crate::newton::CPolytope;
use crate::poly::{Automorphism, Mono, Poly};

fn ord(f: &Poly) -> Result<i64> {
    f.order().finite().map(|o| o as i64).ok_or(Error::ZeroPolynomial)
}

/// `2μ(f) − ord(f) + 2` (right) or `2τ(f) − ord(f) + 2` (contact).
pub fn determinacy_generic(f: &Poly, mode: Equivalence) -> Result<u64> {
    let inv = mode
        .invariant(f)?
        .finite()
        .ok_or_else(|| Error::Infinite(format!("{} of the input", mode.invariant_name())))?;
    Ok((2 * inv as i64 - ord(f)? + 2).max(0) as u64)
}

/// Minimal `k` with `m^{k+2} ⊆ m²·jj(f)` (right) or `m·⟨f⟩ + m²·jj(f)` (contact).
pub fn k0(f: &Poly, mode: Equivalence) -> Result<u64> {
    let n = f.nvars();
    let field = f.field();
    let mut gens = Vec::new();
    for df in localalg::jacobian_ideal(f).iter().filter(|p| !p.is_zero()) {
        for i in 0..n {
            for j in i..n {
                gens.push(df.mul_term(&Mono::var(n, i).mul(&Mono::var(n, j)), &field.one()));
            }
        }
    }
    if mode == Equivalence::Contact {
        for i in 0..n {
            gens.push(f.mul_term(&Mono::var(n, i), &field.one()));
        }
    }
    let c = localalg::min_power_containment(&gens)?
        .finite()
        .ok_or_else(|| Error::Infinite("no power of m lies in the tangent ideal".into()))?;
    Ok(c.saturating_sub(2))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminacyReport {
    pub mode: Equivalence,
    pub generic: Option<u64>,
    /// `max{v_P(In_P f), v_P(b) : b ∈ B}`.
    pub filtered_degree: Option<i64>,
    pub filtered: Option<u64>,
    pub k0: Option<u64>,
}

/// `d` and the smallest `k` with `m^{k+1} ⊆ F_{d+1}`.
pub fn determinacy_filtered(p: &CPolytope, f: &Poly, basis: &RegularBasis) -> Result<(i64, u64)> {
    if basis.status != Status::Finite {
        return Err(Error::Infinite("regular basis".into()));
    }
    let vf = p.val(f).ok_or(Error::ZeroPolynomial)?;
    let d = basis.max_valuation().map_or(vf, |b| b.max(vf));
    Ok((d, p.power_inside(d + 1).saturating_sub(1) as u64))
}

pub fn determinacy(p: &CPolytope, f: &Poly, mode: Equivalence) -> Result<DeterminacyReport> {
    let generic = determinacy_generic(f, mode).ok();
    let mut gr = GradedAlgebra::new(p, f, mode.graded_mode())?;
    let rb = gr.regular_basis(None);
    let filtered = determinacy_filtered(p, f, &rb).ok();
    Ok(DeterminacyReport {
        mode,
        generic,
        filtered_degree: filtered.map(|x| x.0),
        filtered: filtered.map(|x| x.1),
        k0: k0(f, mode).ok(),
    })
}

/// Truncation of `f` at the generic determinacy bound, for inputs where the filtered
/// route is unavailable.
pub fn generic_truncation(f: &Poly, mode: Equivalence) -> Result<(u64, Poly)> {
    let k = determinacy_generic(f, mode)?;
    Ok((k, f.truncate(k as u32)))
}

/// One elimination at valuation `degree`.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub degree: i64,
    pub automorphism: Automorphism,
    /// Quotient-basis terms left at this degree.
    pub basis_terms: Vec<(Mono, Coeff)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormResult {
    pub mode: Equivalence,
    pub principal_part: Poly,
    pub tail: Vec<(Mono, Coeff)>,
    pub normal_form: Poly,
    pub log: Vec<Step>,
    /// Terms of valuation above the filtered degree left after the last step.
    pub residual: Poly,
    pub residual_valuation: ExtNat,
    pub filtered_degree: i64,
    pub determinacy: u64,
    pub k0: u64,
    /// Highest total degree kept during the reduction.
    pub cutoff: u32,
}

impl NormalFormResult {
    pub fn tail_support(&self) -> Vec<Mono> {
        self.tail.iter().map(|(m, _)| m.clone()).collect()
    }
}

/// Applies a transformation log to `f`, truncating above `cutoff`.
pub fn replay(f: &Poly, log: &[Step], cutoff: u32) -> Result<Poly> {
    let mut g = f.truncate(cutoff);
    for s in log {
        g = s.automorphism.apply(&g, cutoff)?;
    }
    Ok(g)
}

fn degree_part(p: &CPolytope, g: &Poly, d: i64) -> Poly {
    g.filter(|m| p.val_mono(m) == d)
}

fn step_with(
    gr: &mut GradedAlgebra<'_>,
    fp: &Poly,
    current: &Poly,
    d: i64,
    mode: Equivalence,
    cutoff: u32,
) -> Result<(Poly, Step)> {
    let p = gr.polytope();
    let n = fp.nvars();
    let field = fp.field();
    let g = degree_part(p, &current.sub(fp), d);
    let piece = gr.piece(d);
    let (basis_terms, comb) = piece.decompose(&g);
    let mut b = vec![Poly::zero(field, n); n];
    let mut b0 = Poly::zero(field, n);
    for (j, c) in comb {
        match &piece.generators[j] {
            Generator::Derivation { alpha, var } => b[*var].add_term(alpha.clone(), c),
            Generator::Multiple { alpha } => b0.add_term(alpha.clone(), c),
        }
    }
    let unit = if mode == Equivalence::Contact && !b0.is_zero() {
        Some(Poly::one(field, n).add(&b0).unit_inverse(cutoff)?)
    } else {
        None
    };
    let automorphism = Automorphism { shifts: b.iter().map(Poly::neg).collect(), unit };
    automorphism.validate()?;
    let next = automorphism.apply(current, cutoff)?;
    Ok((next, Step { degree: d, automorphism, basis_terms }))
}

/// Eliminates the valuation-`d` part of `current − fP` up to quotient-basis terms. Lower
/// valuations of `current − fP` must already consist of basis terms.
pub fn reduce_step(p: &CPolytope, fp: &Poly, current: &Poly, d: i64, mode: Equivalence, cutoff: u32) -> Result<(Poly, Step)> {
    let mut gr = GradedAlgebra::new(p, fp, mode.graded_mode())?;
    step_with(&mut gr, fp, current, d, mode, cutoff)
}

fn condition_name(mode: Equivalence) -> Condition {
    match mode {
        Equivalence::Right => Condition::AA,
        Equivalence::Contact => Condition::AAC,
    }
}

pub fn normal_form(p: &CPolytope, f: &Poly, mode: Equivalence) -> Result<NormalFormResult> {
    let fp = p.initial_form(f);
    let vp = p.val(&fp).ok_or(Error::ZeroPolynomial)?;
    let mut gr = GradedAlgebra::new(p, &fp, mode.graded_mode())?;
    let rb = gr.regular_basis(None);
    if rb.status != Status::Finite {
        let w = rb.witness.as_ref().expect("witness");
        return Err(Error::ConditionFails {
            condition: format!("{:?}", condition_name(mode)),
            reason: format!("no vanishing monomial on ray {:?} up to multiple {}", w.ray, w.bound),
        });
    }
    let (d_filter, kf) = determinacy_filtered(p, &fp, &rb)?;
    let k0 = k0(f, mode)?;
    let ordf = ord(f)?;
    let cutoff = ((2 * k0 as i64 - ordf + 2).max(kf as i64)).max(1) as u32;

    let mut current = f.truncate(cutoff);
    let mut tail: Vec<(Mono, Coeff)> = Vec::new();
    let mut fixed = Poly::zero(f.field(), f.nvars());
    let mut log = Vec::new();
    let mut last = vp;
    loop {
        let residual = current.sub(&fp).sub(&fixed);
        let Some(d) = p.val(&residual) else { break };
        if d > d_filter {
            break;
        }
        if d <= last {
            return Err(Error::Unsupported(format!("reduction stalled at valuation {d}")));
        }
        let (next, step) = step_with(&mut gr, &fp, &current, d, mode, cutoff)?;
        for (m, c) in &step.basis_terms {
            fixed.add_term(m.clone(), c.clone());
            tail.push((m.clone(), c.clone()));
        }
        current = next;
        last = d;
        if !step.automorphism.is_identity() || !step.basis_terms.is_empty() {
            log.push(step);
        }
    }
    let residual = current.sub(&fp).sub(&fixed);
    let residual_valuation = p.val(&residual).map_or(ExtNat::Infinite, |v| ExtNat::Finite(v as u64));
    Ok(NormalFormResult {
        mode,
        normal_form: fp.add(&fixed),
        principal_part: fp,
        tail,
        log,
        residual,
        residual_valuation,
        filtered_degree: d_filter,
        determinacy: kf,
        k0,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::newton::Extension;
    use crate::parse::parse_poly;

    fn poly(s: &str, vars: &[&str], ch: u64) -> Poly {
        let field = if ch == 0 { Field::rationals() } else { Field::prime(ch) };
        parse_poly(s, vars, field).unwrap()
    }

    #[test]
    fn generic_bounds() {
        assert_eq!(determinacy_generic(&poly("x^12+x^3*y^2+y^3", &["x", "y"], 3), Equivalence::Contact).unwrap(), 41);
        assert_eq!(determinacy_generic(&poly("x^2+y^2", &["x", "y"], 0), Equivalence::Right).unwrap(), 2);
        assert_eq!(determinacy_generic(&poly("x^5+x^2*y^2+y^4", &["x", "y"], 2), Equivalence::Contact).unwrap(), 30);
    }

    #[test]
    fn filtered_bounds() {
        let f = poly("x^2*z+y^3+z^4", &["x", "y", "z"], 2);
        let p = CPolytope::from_integer_weights(&[vec![9, 8, 6]], 1).unwrap();
        let r = determinacy(&p, &f, Equivalence::Contact).unwrap();
        assert_eq!(r.filtered_degree, Some(35));
        assert_eq!(r.filtered, Some(5));
        let e = poly("x^12+x^3*y^2+y^3", &["x", "y"], 3);
        let pe = CPolytope::from_poly(&e, Extension::default()).unwrap();
        let r = determinacy(&pe, &e, Equivalence::Contact).unwrap();
        assert_eq!((r.filtered_degree, r.filtered, r.generic), (Some(112), Some(18), Some(41)));
    }

    #[test]
    fn single_reduction_step() {
        let p = CPolytope::from_integer_weights(&[vec![1, 1]], 1).unwrap();
        let fp = poly("x^3+y^3", &["x", "y"], 0);
        let g = poly("x^3+y^3+x^2*y^2", &["x", "y"], 0);
        let (next, step) = reduce_step(&p, &fp, &g, 4, Equivalence::Right, 6).unwrap();
        assert!(step.basis_terms.is_empty());
        let q = Field::rationals();
        let expected = poly("y^2", &["x", "y"], 0).scale(&q.from_ratio(-1, 3).unwrap());
        assert_eq!(step.automorphism.shifts[0], expected);
        assert!(p.val(&next.sub(&fp)).unwrap() > 4);
        let (same, id) = reduce_step(&p, &fp, &fp, 4, Equivalence::Right, 6).unwrap();
        assert_eq!(same, fp);
        assert!(id.automorphism.is_identity());
    }

    #[test]
    fn q10_normal_form() {
        let vars = ["x", "y", "z"];
        let f = poly("x^2*z+y^3+z^4+x*y*z^2+x^2*y^2+y*z^3+x*y*z^3+y^2*z^3", &vars, 2);
        let p = CPolytope::from_integer_weights(&[vec![9, 8, 6]], 1).unwrap();
        let nf = normal_form(&p, &f, Equivalence::Contact).unwrap();
        let allowed = [[1, 1, 2], [1, 0, 3], [0, 1, 3], [1, 1, 3]];
        for m in nf.tail_support() {
            assert!(allowed.iter().any(|a| Mono::new(a) == m), "{m}");
        }
        assert_eq!(replay(&f, &nf.log, nf.cutoff).unwrap(), nf.normal_form.add(&nf.residual));
        assert_eq!(localalg::tjurina(&nf.normal_form).unwrap(), localalg::tjurina(&f).unwrap());
    }

    #[test]
    fn qh_right_mode() {
        let p = CPolytope::from_integer_weights(&[vec![1, 1]], 1).unwrap();
        let g = poly("x^3+y^3+x^2*y^2", &["x", "y"], 0);
        let nf = normal_form(&p, &g, Equivalence::Right).unwrap();
        assert_eq!(nf.normal_form, poly("x^3+y^3", &["x", "y"], 0));
        assert!(nf.tail.is_empty());
    }

    #[test]
    fn refuses_without_aac() {
        let f = poly("x^5+x^2*y^2+y^4", &["x", "y"], 2);
        let p = CPolytope::from_poly(&f, Extension::default()).unwrap();
        assert!(matches!(normal_form(&p, &f, Equivalence::Contact), Err(Error::ConditionFails { .. })));
    }

    #[test]
    fn e33_tail() {
        let f = poly("x^12+x^3*y^2+y^3+x*y^3+x^8*y+x^2*y^4+x^4*y^3+x^13", &["x", "y"], 3);
        let p = CPolytope::from_integer_weights(&[vec![6, 27], vec![8, 24]], 1).unwrap();
        let nf = normal_form(&p, &f, Equivalence::Contact).unwrap();
        let allowed = [[1, 3], [2, 3], [2, 4]].map(|a| Mono::new(&a));
        assert!(nf.tail_support().iter().all(|m| allowed.contains(m)));
        assert_eq!(nf.determinacy, 18);
        assert_eq!(replay(&f, &nf.log, nf.cutoff).unwrap(), nf.normal_form.add(&nf.residual));
        let trunc = normal_form(&p, &f.truncate(18), Equivalence::Contact).unwrap();
        assert_eq!(trunc.tail, nf.tail);
    }

    #[test]
    fn tpq_determinacy() {
        for (a, b) in [(3u32, 7u32), (4, 5), (5, 6)] {
            let (pa, qb) = (a as i64, b as i64);
            let f = poly(&format!("x^{a}+y^{b}+x^2*y^2"), &["x", "y"], 0);
            let p = CPolytope::from_integer_weights(&[vec![2 * qb, pa * qb - 2 * qb], vec![pa * qb - 2 * pa, 2 * pa]], 1).unwrap();
            let r = determinacy(&p, &f, Equivalence::Contact).unwrap();
            assert_eq!(r.filtered, Some(a.max(b) as u64), "T_{a},{b}");
            let nf = normal_form(&p, &f, Equivalence::Contact).unwrap();
            assert!(nf.tail.is_empty());
        }
    }
}
