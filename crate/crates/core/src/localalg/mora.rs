//! Standard bases by Mora's tangent-cone algorithm, with optional cofactor tracking.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::field::{Coeff, Field};
use crate::poly::{Mono, Poly};

use super::ordering::MonoOrder;

/// `unit · element = Σ comb_i · generator_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub unit: Poly,
    pub comb: Vec<Poly>,
}

#[derive(Clone, Debug)]
struct Elem {
    poly: Poly,
    /// Leading monomial and coefficient; `None` for the zero polynomial.
    lead: Option<(Mono, Coeff)>,
    ecart: i64,
    cert: Option<Certificate>,
}

impl Elem {
    fn new(poly: Poly, order: MonoOrder, cert: Option<Certificate>) -> Elem {
        let lead = order.leading(&poly).map(|(m, c)| (m.clone(), c.clone()));
        let ecart = order.ecart(&poly);
        Elem { poly, lead, ecart, cert }
    }

    fn lm(&self) -> &Mono {
        &self.lead.as_ref().expect("nonzero element").0
    }

    fn lc(&self) -> &Coeff {
        &self.lead.as_ref().expect("nonzero element").1
    }

    fn is_zero(&self) -> bool {
        self.lead.is_none()
    }
}

/// Result of a standard-basis computation.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    pub generators: Vec<Poly>,
    pub order: MonoOrder,
    pub leading: Vec<Mono>,
    /// Expressions of each basis element in the input generators, when tracked.
    pub certificates: Option<Vec<Certificate>>,
    /// Some `c` with `m^c` inside the ideal, once detected (untracked local bases only).
    corner: Option<u32>,
    input: Vec<Poly>,
    field: Field,
    nvars: usize,
}

/// Dimension of a quotient ring together with its standard monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub dimension: ExtNat,
    pub standard_monomials: Vec<Mono>,
}

/// `h − c·x^β·t` together with the updated certificate.
fn reduce_by(h: &Elem, t: &Elem, order: MonoOrder) -> Elem {
    let beta = t.lm().quotient_of(h.lm()).expect("divisible");
    let c = h.lc().div(t.lc());
    let poly = h.poly.sub(&t.poly.mul_term(&beta, &c));
    let cert = match (&h.cert, &t.cert) {
        (Some(ch), Some(ct)) => {
            // u_h·h = A_h, u_t·t = A_t  ⇒  u_h·u_t·(h − c x^β t) = u_t·A_h − c x^β u_h·A_t
            let unit = ch.unit.mul(&ct.unit);
            let comb = ch
                .comb
                .iter()
                .zip(&ct.comb)
                .map(|(ah, at)| ct.unit.mul(ah).sub(&ch.unit.mul(at).mul_term(&beta, &c)))
                .collect();
            Some(Certificate { unit, comb })
        }
        _ => None,
    };
    Elem::new(poly, order, cert)
}

/// Mora's weak normal form of `h` with respect to `basis`. With `corner = Some(c)` the
/// ideal contains `m^c` and all terms of degree `≥ c` are dropped along the way.
fn nf_mora(h: Elem, basis: &[Elem], order: MonoOrder, corner: Option<u32>) -> Elem {
    let mut h = cut(h, order, corner);
    let mut extra: Vec<Elem> = Vec::new();
    while !h.is_zero() {
        let best = basis
            .iter()
            .chain(extra.iter())
            .filter(|t| t.lm().divides(h.lm()))
            .min_by_key(|t| t.ecart)
            .cloned();
        let Some(t) = best else { break };
        if order.is_local() && t.ecart > h.ecart {
            extra.push(h.clone());
        }
        h = cut(reduce_by(&h, &t, order), order, corner);
    }
    h
}

fn cut(h: Elem, order: MonoOrder, corner: Option<u32>) -> Elem {
    match corner {
        Some(c) if h.cert.is_none() && h.poly.degree() >= c => Elem::new(h.poly.filter(|m| m.degree() < c), order, None),
        _ => h,
    }
}

/// Smallest `c` such that every monomial of degree `c` is divisible by one of `leads`.
fn highest_corner(leads: &[&Mono], n: usize) -> Option<u32> {
    let mut top = 1;
    for i in 0..n {
        let a = leads
            .iter()
            .filter(|m| m.exps().iter().enumerate().all(|(j, e)| j == i || *e == 0))
            .map(|m| m.exps()[i])
            .min()?;
        top += a - 1;
    }
    let low = leads.iter().map(|m| m.degree()).min().unwrap_or(0);
    (low..=top).find(|&k| Mono::of_degree(n, k).iter().all(|m| leads.iter().any(|l| l.divides(m))))
}

/// Top-reduction followed by tail reduction, for global orderings.
fn nf_global_full(h: Poly, basis: &[Elem], order: MonoOrder) -> Poly {
    let mut rem = Poly::zero(h.field(), h.nvars());
    let mut h = h;
    while let Some((lm, lc)) = order.leading(&h).map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|t| t.lm().divides(&lm)) {
            Some(t) => {
                let beta = t.lm().quotient_of(&lm).expect("divisible");
                h = h.sub(&t.poly.mul_term(&beta, &lc.div(t.lc())));
            }
            None => {
                rem.add_term(lm.clone(), lc.clone());
                h = h.sub(&Poly::term(h.field(), lm, lc));
            }
        }
    }
    rem
}

fn spoly(a: &Elem, b: &Elem, order: MonoOrder) -> Elem {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l).expect("lcm");
    let mb = b.lm().quotient_of(&l).expect("lcm");
    let ca = a.lc().inv().expect("nonzero");
    let cb = b.lc().inv().expect("nonzero");
    let poly = a.poly.mul_term(&ma, &ca).sub(&b.poly.mul_term(&mb, &cb));
    let cert = match (&a.cert, &b.cert) {
        (Some(x), Some(y)) => {
            let unit = x.unit.mul(&y.unit);
            let comb = x
                .comb
                .iter()
                .zip(&y.comb)
                .map(|(ax, ay)| {
                    y.unit
                        .mul(ax)
                        .mul_term(&ma, &ca)
                        .sub(&x.unit.mul(ay).mul_term(&mb, &cb))
                })
                .collect();
            Some(Certificate { unit, comb })
        }
        _ => None,
    };
    Elem::new(poly, order, cert)
}

/// Buchberger/Mora completion. Returns the (non-minimalized) list of basis elements.
fn complete(gens: &[Poly], order: MonoOrder, track: bool) -> (Vec<Elem>, Option<u32>) {
    let Some(first) = gens.first() else { return (Vec::new(), None) };
    let (field, n) = (first.field(), first.nvars());
    let k = gens.len();
    let mut basis: Vec<Elem> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut corner: Option<u32> = None;
    let add = |e: Elem, basis: &mut Vec<Elem>, pairs: &mut Vec<(usize, usize)>, corner: &mut Option<u32>| {
        let idx = basis.len();
        for j in 0..idx {
            pairs.push((j, idx));
        }
        basis.push(e);
        if order.is_local() && !track {
            let leads: Vec<&Mono> = basis.iter().map(Elem::lm).collect();
            *corner = highest_corner(&leads, n).or(*corner);
        }
    };
    for (i, g) in gens.iter().enumerate() {
        let cert = track.then(|| {
            let mut comb = vec![Poly::zero(field, n); k];
            comb[i] = Poly::one(field, n);
            Certificate {
                unit: Poly::one(field, n),
                comb,
            }
        });
        let e = nf_mora(Elem::new(g.clone(), order, cert), &basis, order, corner);
        if !e.is_zero() {
            add(e, &mut basis, &mut pairs, &mut corner);
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree first, ties by insertion
        let (pi, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| basis[*i].lm().lcm(basis[*j].lm()).degree())
            .expect("nonempty");
        let (i, j) = pairs.remove(pi);
        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        // the s-polynomial lies in m^c
        if corner.is_some_and(|c| basis[i].lm().lcm(basis[j].lm()).degree() >= c) {
            continue;
        }
        if chain_criterion(&basis, &pairs, i, j) {
            continue;
        }
        let h = nf_mora(spoly(&basis[i], &basis[j], order), &basis, order, corner);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs, &mut corner);
        }
    }
    (basis, corner)
}

/// Chain test: the pair (i,j) is redundant if some `k` has `LM_k | lcm(LM_i, LM_j)`
/// and both pairs (i,k), (j,k) were already treated.
fn chain_criterion(basis: &[Elem], pending: &[(usize, usize)], i: usize, j: usize) -> bool {
    let l = basis[i].lm().lcm(basis[j].lm());
    let is_pending = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].lm().divides(&l)
            && !is_pending(i, k)
            && !is_pending(j, k)
    })
}

fn check_gens(gens: &[Poly]) -> Result<(Field, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    for g in gens {
        first.check_same_ring(g)?;
    }
    Ok((first.field(), first.nvars()))
}

fn build(gens: &[Poly], order: MonoOrder, track: bool) -> Result<StandardBasis> {
    let (field, nvars) = check_gens(gens)?;
    let (all, corner) = complete(gens, order, track);
    // minimalize: drop elements whose leading monomial is divisible by another kept one
    let mut keep: Vec<bool> = vec![true; all.len()];
    for a in 0..all.len() {
        for b in 0..all.len() {
            if a != b && keep[b] && all[b].lm().divides(all[a].lm()) && (all[b].lm() != all[a].lm() || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let kept: Vec<&Elem> = all.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| e).collect();
    Ok(StandardBasis {
        generators: kept.iter().map(|e| e.poly.clone()).collect(),
        leading: kept.iter().map(|e| e.lm().clone()).collect(),
        certificates: if track {
            Some(kept.iter().map(|e| e.cert.clone().expect("tracked")).collect())
        } else {
            None
        },
        order,
        corner,
        input: gens.to_vec(),
        field,
        nvars,
    })
}

/// Standard basis of the ideal generated by `gens` (in the localization for local orderings).
pub fn std_basis(gens: &[Poly], order: MonoOrder) -> Result<StandardBasis> {
    build(gens, order, false)
}

/// Like [`std_basis`], also recording how each basis element arises from the generators.
pub fn std_basis_tracked(gens: &[Poly], order: MonoOrder) -> Result<StandardBasis> {
    build(gens, order, true)
}

/// Outcome of a membership test. The certificate satisfies
/// `unit·g = Σ cofactors_i·generator_i` with `unit` invertible in the local ring
/// (for global orderings it is a nonzero constant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Option<MembershipCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

impl MembershipCertificate {
    /// Checks `unit·g = Σ cofactors_i·gens_i` exactly.
    pub fn verify(&self, g: &Poly, gens: &[Poly]) -> bool {
        if self.unit.constant_term().is_zero() || self.cofactors.len() != gens.len() {
            return false;
        }
        let rhs = self
            .cofactors
            .iter()
            .zip(gens)
            .fold(Poly::zero(g.field(), g.nvars()), |acc, (a, b)| acc.add(&a.mul(b)));
        self.unit.mul(g) == rhs
    }
}

impl StandardBasis {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn input(&self) -> &[Poly] {
        &self.input
    }

    fn elems(&self, extra_slot: bool) -> Vec<Elem> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let cert = self.certificates.as_ref().map(|c| {
                    let mut c = c[i].clone();
                    if extra_slot {
                        c.comb.push(Poly::zero(self.field, self.nvars));
                    }
                    c
                });
                Elem::new(g.clone(), self.order, cert)
            })
            .collect()
    }

    /// Weak normal form (local) or fully reduced normal form (global).
    pub fn normal_form(&self, g: &Poly) -> Poly {
        let elems = self.elems(false);
        if self.order.is_local() {
            nf_mora(Elem::new(g.clone(), self.order, None), &elems, self.order, self.corner).poly
        } else {
            nf_global_full(g.clone(), &elems, self.order)
        }
    }

    pub fn contains(&self, g: &Poly) -> bool {
        self.normal_form(g).is_zero()
    }

    /// Membership test, with a certificate in terms of the input generators when the
    /// basis was computed with tracking.
    pub fn membership(&self, g: &Poly) -> Membership {
        if self.certificates.is_none() {
            return Membership {
                member: self.contains(g),
                certificate: None,
            };
        }
        let (field, n, k) = (self.field, self.nvars, self.input.len());
        // Track g as an extra coordinate: the running h satisfies u·h = Σ c_i·gen_i + c_g·g.
        let mut comb = vec![Poly::zero(field, n); k + 1];
        comb[k] = Poly::one(field, n);
        let start = Certificate {
            unit: Poly::one(field, n),
            comb,
        };
        let h = nf_mora(Elem::new(g.clone(), self.order, Some(start)), &self.elems(true), self.order, None);
        if !h.is_zero() {
            return Membership {
                member: false,
                certificate: None,
            };
        }
        let mut comb = h.cert.expect("tracked").comb;
        let cg = comb.pop().expect("g slot");
        // 0 = Σ c_i·gen_i + c_g·g  ⇒  c_g·g = Σ (−c_i)·gen_i
        Membership {
            member: true,
            certificate: Some(MembershipCertificate {
                unit: cg,
                cofactors: comb.iter().map(Poly::neg).collect(),
            }),
        }
    }

    /// Dimension of the quotient by this ideal, from the leading ideal.
    pub fn vdim(&self) -> QuotientReport {
        let Some(bounds) = self.pure_power_bounds() else {
            return QuotientReport {
                dimension: ExtNat::Infinite,
                standard_monomials: Vec::new(),
            };
        };
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        loop {
            let m = Mono::new(&cur);
            if !self.leading.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    out.sort();
                    return QuotientReport {
                        dimension: ExtNat::Finite(out.len() as u64),
                        standard_monomials: out,
                    };
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// For each variable the smallest pure power in the leading ideal, if all exist.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        (0..self.nvars)
            .map(|i| {
                self.leading
                    .iter()
                    .filter(|m| m.exps().iter().enumerate().all(|(j, e)| j == i || *e == 0))
                    .map(|m| m.exps()[i])
                    .min()
            })
            .collect()
    }

    /// Smallest `k` with `m^k` contained in the ideal.
    pub fn min_power_containment(&self) -> ExtNat {
        let Some(bounds) = self.pure_power_bounds() else {
            return ExtNat::Infinite;
        };
        let dim = self.vdim().dimension.finite().unwrap_or(0);
        let ceiling = (2 * dim).max(bounds.iter().map(|&b| b as u64).sum()) as u32;
        for k in 0..=ceiling {
            // With a local degree ordering, m^k ⊆ I iff every degree-k monomial is a leading monomial.
            if Mono::of_degree(self.nvars, k)
                .iter()
                .all(|m| self.leading.iter().any(|l| l.divides(m)))
            {
                return ExtNat::Finite(k as u64);
            }
        }
        ExtNat::Infinite
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Mono::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ps(field: Field, v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| parse_poly(s, &["x", "y"], field).unwrap()).collect()
    }

    #[test]
    fn already_a_basis() {
        let sb = std_basis(&ps(Field::rationals(), &["2*x", "3*y^2"]), MonoOrder::LocalDegree).unwrap();
        let mut lead = sb.leading.clone();
        lead.sort();
        assert_eq!(lead, vec![Mono::new(&[1, 0]), Mono::new(&[0, 2])]);
        assert_eq!(sb.vdim().dimension, ExtNat::Finite(2));
    }

    #[test]
    fn local_units_collapse() {
        let sb = std_basis(&ps(Field::rationals(), &["x+y^2", "y+x^2"]), MonoOrder::LocalDegree).unwrap();
        let mut lead = sb.leading.clone();
        lead.sort();
        assert_eq!(lead, vec![Mono::new(&[0, 1]), Mono::new(&[1, 0])]);
        assert_eq!(sb.vdim().dimension, ExtNat::Finite(1));
    }

    #[test]
    fn vdim_box_and_infinite() {
        let q = Field::rationals();
        let sb = std_basis(&ps(q, &["x^4", "y^6"]), MonoOrder::LocalDegree).unwrap();
        assert_eq!(sb.vdim().dimension, ExtNat::Finite(24));
        let sb = std_basis(&ps(q, &["x^4"]), MonoOrder::LocalDegree).unwrap();
        assert_eq!(sb.vdim().dimension, ExtNat::Infinite);
        assert_eq!(sb.min_power_containment(), ExtNat::Infinite);
    }

    #[test]
    fn power_containment() {
        let q = Field::rationals();
        let sb = std_basis(&ps(q, &["x", "y"]), MonoOrder::LocalDegree).unwrap();
        assert_eq!(sb.min_power_containment(), ExtNat::Finite(1));
        let sb = std_basis(&ps(q, &["x^2", "y^2"]), MonoOrder::LocalDegree).unwrap();
        assert_eq!(sb.min_power_containment(), ExtNat::Finite(3));
    }

    #[test]
    fn certificates_reproduce_member() {
        let q = Field::rationals();
        let gens = ps(q, &["x+y^2", "y+x^2"]);
        let sb = std_basis_tracked(&gens, MonoOrder::LocalDegree).unwrap();
        let g = parse_poly("x^3-2*y", &["x", "y"], q).unwrap();
        let m = sb.membership(&g);
        assert!(m.member);
        assert!(m.certificate.unwrap().verify(&g, &gens));
        assert!(!sb.membership(&parse_poly("x", &["x", "y"], q).unwrap().add(&Poly::one(q, 2))).member);
    }
}
