//! Graded algebras of the Milnor and Tjurina algebras with respect to a C-polytope,
//! regular bases and the conditions A, AA, AC, AAC.

mod piece;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::localalg;
use crate::newton::CPolytope;
use crate::poly::{Mono, Poly};

pub use piece::{graded_piece, GrMode, GradedPiece, Generator};
use piece::{check_input, expected_piece, plain_pieces, PlainPieces};

/// Smallest vanishing lattice point on one extremal ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayResult {
    /// Primitive direction of the ray.
    pub ray: Vec<i64>,
    /// Multiple `k` with `x^{k·ray}` zero in the graded algebra, if found.
    pub vanishing_multiple: Option<u32>,
    pub bound: u32,
}

impl RayResult {
    pub fn point(&self) -> Option<Mono> {
        self.vanishing_multiple.map(|k| {
            let e: Vec<u32> = self.ray.iter().map(|&r| r as u32 * k).collect();
            Mono::new(&e)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RayCriterion {
    pub rays: Vec<RayResult>,
    /// Every monomial of valuation at least this vanishes (present when every ray vanishes).
    pub region_bound: Option<i64>,
}

impl RayCriterion {
    pub fn holds(&self) -> bool {
        self.region_bound.is_some()
    }

    pub fn witness(&self) -> Option<&RayResult> {
        self.rays.iter().find(|r| r.vanishing_multiple.is_none())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularBasis {
    pub status: Status,
    /// Basis monomials with their valuations, sorted by valuation then monomial order.
    pub basis: Vec<(Mono, i64)>,
    pub witness: Option<RayResult>,
    pub dimension: ExtNat,
}

impl RegularBasis {
    pub fn monomials(&self) -> Vec<Mono> {
        self.basis.iter().map(|(m, _)| m.clone()).collect()
    }

    pub fn max_valuation(&self) -> Option<i64> {
        self.basis.iter().map(|(_, v)| *v).max()
    }
}

/// Lazily computed graded algebra of `f` with respect to `P`.
pub struct GradedAlgebra<'a> {
    p: &'a CPolytope,
    f: &'a Poly,
    mode: GrMode,
    partials: Vec<Poly>,
    pieces: BTreeMap<i64, GradedPiece>,
    plain: Option<PlainPieces>,
    known_zero: Vec<Mono>,
}

impl<'a> GradedAlgebra<'a> {
    pub fn new(p: &'a CPolytope, f: &'a Poly, mode: GrMode) -> Result<Self> {
        check_input(p, f)?;
        let plain = if mode.is_plain() { Some(plain_pieces(p, f, mode)?) } else { None };
        Ok(GradedAlgebra {
            p,
            f,
            mode,
            partials: f.gradient(),
            pieces: BTreeMap::new(),
            plain,
            known_zero: Vec::new(),
        })
    }

    pub fn mode(&self) -> GrMode {
        self.mode
    }

    pub fn polytope(&self) -> &CPolytope {
        self.p
    }

    pub fn piece(&mut self, d: i64) -> &GradedPiece {
        if !self.pieces.contains_key(&d) {
            let piece = match &self.plain {
                Some(pp) => match pp.pieces.get(&d) {
                    Some(x) => x.clone(),
                    None => graded_piece(self.p, self.f, d, self.mode).expect("validated input"),
                },
                None => expected_piece(self.p, self.f, &self.partials, d, self.mode),
            };
            self.pieces.insert(d, piece);
        }
        &self.pieces[&d]
    }

    /// Whether the class of `m` vanishes, via the lattice-cone shortcut when a known
    /// vanishing monomial shares a facet cone with the cofactor.
    pub fn vanishes(&mut self, m: &Mono) -> bool {
        if self.vanishes_by_cone(m) {
            return true;
        }
        self.vanishes_direct(m)
    }

    pub fn vanishes_by_cone(&self, m: &Mono) -> bool {
        let nf = self.p.weights().len();
        self.known_zero.iter().any(|z| {
            z.quotient_of(m).is_some_and(|rest| {
                (0..nf).any(|i| self.p.in_facet_cone(i, z) && self.p.in_facet_cone(i, &rest))
            })
        })
    }

    /// Linear-algebra test, without the cone shortcut.
    pub fn vanishes_direct(&mut self, m: &Mono) -> bool {
        let d = self.p.val_mono(m);
        let zero = self.piece(d).kills(m);
        if zero && !self.known_zero.contains(m) {
            self.known_zero.push(m.clone());
        }
        zero
    }

    /// Default ray scan length: four times the plain-mode dimension, at least 8.
    pub fn default_ray_bound(&self) -> u32 {
        let inv = if self.mode.is_contact() {
            localalg::tjurina(self.f)
        } else {
            localalg::milnor(self.f)
        };
        match inv.ok().and_then(ExtNat::finite) {
            Some(e) => (4 * e as u32).max(8),
            None => 32,
        }
    }

    pub fn ray_criterion(&mut self, bound: Option<u32>) -> RayCriterion {
        let bound = bound.unwrap_or_else(|| self.default_ray_bound());
        let mut rays: Vec<Vec<i64>> = self
            .p
            .faces()
            .iter()
            .filter(|f| f.dimension == 0)
            .map(|f| f.rays[0].clone())
            .collect();
        rays.sort();
        rays.dedup();
        let mut out = Vec::new();
        for ray in rays {
            let mut hit = None;
            for k in 1..=bound {
                let e: Vec<u32> = ray.iter().map(|&r| r as u32 * k).collect();
                if self.vanishes(&Mono::new(&e)) {
                    hit = Some(k);
                    break;
                }
            }
            out.push(RayResult { ray, vanishing_multiple: hit, bound });
        }
        let region_bound = if out.iter().all(|r| r.vanishing_multiple.is_some()) {
            Some(self.region_bound(&out))
        } else {
            None
        };
        RayCriterion { rays: out, region_bound }
    }

    /// Every lattice point of a facet cone is `Σ c_r·r` over `n` of its rays; if some
    /// `c_r ≥ k_r` it vanishes, so survivors have valuation below the sum of the `n`
    /// largest `k_r·v(r)`.
    fn region_bound(&self, rays: &[RayResult]) -> i64 {
        let n = self.p.nvars();
        let value = |ray: &[i64]| -> i64 {
            let r = rays.iter().find(|x| x.ray == ray).expect("ray scanned");
            let m = Mono::new(&ray.iter().map(|&x| x as u32).collect::<Vec<_>>());
            r.vanishing_multiple.expect("vanishing") as i64 * self.p.val_mono(&m)
        };
        self.p
            .facets()
            .map(|facet| {
                let mut vals: Vec<i64> = facet.rays.iter().map(|r| value(r)).collect();
                vals.sort_by(|a, b| b.cmp(a));
                vals.iter().take(n).sum::<i64>()
            })
            .max()
            .unwrap_or(0)
    }

    /// Regular basis by enumeration of every degree below the ray-criterion bound.
    pub fn regular_basis(&mut self, bound: Option<u32>) -> RegularBasis {
        if let Some(pp) = &self.plain {
            let basis: Vec<(Mono, i64)> = pp
                .pieces
                .iter()
                .flat_map(|(d, piece)| piece.quotient_basis.iter().map(move |m| (m.clone(), *d)))
                .collect();
            return RegularBasis {
                status: Status::Finite,
                dimension: ExtNat::Finite(basis.len() as u64),
                basis,
                witness: None,
            };
        }
        let rc = self.ray_criterion(bound);
        let Some(top) = rc.region_bound else {
            return RegularBasis {
                status: Status::Infinite,
                basis: Vec::new(),
                witness: rc.witness().cloned(),
                dimension: ExtNat::Infinite,
            };
        };
        let mut degrees: Vec<i64> = self.p.monomials_below(top).iter().map(|m| self.p.val_mono(m)).collect();
        degrees.sort();
        degrees.dedup();
        let mut basis = Vec::new();
        for d in degrees {
            let piece = self.piece(d);
            basis.extend(piece.quotient_basis.iter().map(|m| (m.clone(), d)));
        }
        RegularBasis {
            status: Status::Finite,
            dimension: ExtNat::Finite(basis.len() as u64),
            basis,
            witness: None,
        }
    }
}

pub fn regular_basis(p: &CPolytope, f: &Poly, mode: GrMode) -> Result<RegularBasis> {
    if mode.is_plain() {
        return Err(Error::InvalidArgument("regular bases are defined for modes A and AC".into()));
    }
    Ok(GradedAlgebra::new(p, f, mode)?.regular_basis(None))
}

pub fn vanishes_in_gr(p: &CPolytope, f: &Poly, m: &Mono, mode: GrMode) -> Result<bool> {
    Ok(GradedAlgebra::new(p, f, mode)?.vanishes(m))
}

pub fn ray_criterion(p: &CPolytope, f: &Poly, mode: GrMode) -> Result<RayCriterion> {
    if mode.is_plain() {
        return Err(Error::InvalidArgument("the ray criterion applies to modes A and AC".into()));
    }
    Ok(GradedAlgebra::new(p, f, mode)?.ray_criterion(None))
}

/// Dimension of `gr_P(M_f)` or `gr_P(T_f)` summed over all pieces.
pub fn plain_dimension(p: &CPolytope, f: &Poly, mode: GrMode) -> Result<u64> {
    check_input(p, f)?;
    let pp = plain_pieces(p, f, mode.plain())?;
    Ok(pp.pieces.values().map(|x| x.dimension() as u64).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    A,
    AA,
    AC,
    AAC,
}

impl Condition {
    pub fn mode(self) -> GrMode {
        match self {
            Condition::A | Condition::AA => GrMode::A,
            Condition::AC | Condition::AAC => GrMode::AC,
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Condition::A),
            "AA" => Ok(Condition::AA),
            "AC" => Ok(Condition::AC),
            "AAC" => Ok(Condition::AAC),
            _ => Err(Error::InvalidArgument(format!("unknown condition {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConditionCertificate {
    /// Dimension of the graded algebra next to `μ(f)` or `τ(f)`.
    Dimensions { graded: u64, invariant: ExtNat },
    /// Extremal ray with no vanishing lattice point up to the bound.
    Ray(RayResult),
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: bool,
    pub certificate: ConditionCertificate,
}

pub fn check_condition(p: &CPolytope, f: &Poly, which: Condition) -> Result<ConditionReport> {
    let mut gr = GradedAlgebra::new(p, f, which.mode())?;
    let rb = gr.regular_basis(None);
    condition_from_basis(f, which, &rb)
}

/// Evaluates a condition from an already computed regular basis of the matching mode.
pub fn condition_from_basis(f: &Poly, which: Condition, rb: &RegularBasis) -> Result<ConditionReport> {
    let Some(graded) = rb.dimension.finite() else {
        let witness = rb.witness.clone().expect("infinite status carries a witness");
        return Ok(ConditionReport { condition: which, holds: false, certificate: ConditionCertificate::Ray(witness) });
    };
    let invariant = if which.mode().is_contact() { localalg::tjurina(f)? } else { localalg::milnor(f)? };
    let holds = match which {
        Condition::AA | Condition::AAC => true,
        Condition::A | Condition::AC => invariant == ExtNat::Finite(graded),
    };
    Ok(ConditionReport { condition: which, holds, certificate: ConditionCertificate::Dimensions { graded, invariant } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::newton::Extension;
    use crate::parse::parse_poly;

    fn setup(s: &str, vars: &[&str], ch: u64) -> (CPolytope, Poly) {
        let field = if ch == 0 { Field::rationals() } else { Field::prime(ch) };
        let f = parse_poly(s, vars, field).unwrap();
        (CPolytope::from_poly(&f, Extension::SingleWeight).unwrap(), f)
    }

    fn monos(v: &[&[u32]]) -> Vec<Mono> {
        let mut out: Vec<Mono> = v.iter().map(|e| Mono::new(e)).collect();
        out.sort();
        out
    }

    #[test]
    fn degree_zero_piece() {
        let (p, f) = setup("x^5+x^2*y^2+y^4", &["x", "y"], 7);
        for mode in [GrMode::A, GrMode::AC, GrMode::PlainMilnor, GrMode::PlainTjurina] {
            let piece = graded_piece(&p, &f, 0, mode).unwrap();
            assert_eq!(piece.quotient_basis, vec![Mono::one(2)]);
        }
    }

    #[test]
    fn q10_char_two_basis() {
        let (p, f) = setup("x^2*z+y^3+z^4", &["x", "y", "z"], 2);
        let rb = regular_basis(&p, &f, GrMode::AC).unwrap();
        let expected = monos(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[0, 0, 2],
            &[1, 1, 1], &[1, 0, 2], &[0, 1, 2], &[0, 0, 3], &[1, 1, 2], &[1, 0, 3], &[0, 1, 3], &[1, 1, 3],
        ]);
        let mut got = rb.monomials();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(rb.max_valuation(), Some(35));
    }

    #[test]
    fn e33_char_three() {
        let (p, f) = setup("x^12+x^3*y^2+y^3", &["x", "y"], 3);
        let rb = regular_basis(&p, &f, GrMode::AC).unwrap();
        assert_eq!(rb.dimension, ExtNat::Finite(22));
        let mut expected: Vec<Mono> = (0..=12).map(|i| Mono::new(&[i, 0])).collect();
        for e in [[0, 1], [1, 1], [2, 1], [0, 2], [1, 2], [2, 2], [1, 3], [2, 3], [2, 4]] {
            expected.push(Mono::new(&e));
        }
        expected.sort();
        let mut got = rb.monomials();
        got.sort();
        assert_eq!(got, expected);
        let mut gr = GradedAlgebra::new(&p, &f, GrMode::AC).unwrap();
        for m in [[15, 0], [0, 15], [9, 6]] {
            assert!(gr.vanishes_direct(&Mono::new(&m)));
        }
        let aac = check_condition(&p, &f, Condition::AAC).unwrap();
        let ac = check_condition(&p, &f, Condition::AC).unwrap();
        assert!(aac.holds);
        assert!(!ac.holds);
    }

    #[test]
    fn t45_char_two_infinite() {
        let (p, f) = setup("x^5+x^2*y^2+y^4", &["x", "y"], 2);
        let mut gr = GradedAlgebra::new(&p, &f, GrMode::AC).unwrap();
        for n in 4..=6 {
            assert!(!gr.piece(20 * n).kills(&Mono::new(&[0, 4 * n as u32])));
        }
        let rb = gr.regular_basis(None);
        assert_eq!(rb.status, Status::Infinite);
        assert_eq!(rb.witness.unwrap().ray, vec![0, 1]);
    }

    #[test]
    fn tpq_cone_propagation() {
        // char 5 divides p = 5 only
        let (p, f) = setup("x^5+x^2*y^2+y^6", &["x", "y"], 5);
        let mut gr = GradedAlgebra::new(&p, &f, GrMode::AC).unwrap();
        assert!(gr.vanishes_direct(&Mono::new(&[2, 2])));
        assert!(gr.vanishes_by_cone(&Mono::new(&[4, 4])));
        assert!(gr.vanishes_direct(&Mono::new(&[4, 4])));
    }

    #[test]
    fn plain_dimension_is_tjurina() {
        let (p, f) = setup("x^5+x^2*y^2+y^4", &["x", "y"], 2);
        assert_eq!(plain_dimension(&p, &f, GrMode::PlainTjurina).unwrap(), 16);
        let (p, f) = setup("x^12+x^3*y^2+y^3", &["x", "y"], 3);
        assert_eq!(plain_dimension(&p, &f, GrMode::PlainTjurina).unwrap(), 21);
    }
}
