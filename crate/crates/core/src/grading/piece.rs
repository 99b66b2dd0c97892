//! Single graded pieces `F_d/(image + F_{d+1})`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::linalg::{Echelon, SparseVec};
use crate::localalg::{self, StandardBasis};
use crate::newton::CPolytope;
use crate::poly::{Mono, Poly};

/// Which graded object is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrMode {
    /// `gr_P(M_f)`: image is `jj(f) ∩ F_d`.
    PlainMilnor,
    /// `gr_P(T_f)`: image is `tj(f) ∩ F_d`.
    PlainTjurina,
    /// `gr_P^A(M_f)`.
    A,
    /// `gr_P^AC(T_f)`.
    AC,
}

impl GrMode {
    pub fn is_plain(self) -> bool {
        matches!(self, GrMode::PlainMilnor | GrMode::PlainTjurina)
    }

    pub fn is_contact(self) -> bool {
        matches!(self, GrMode::PlainTjurina | GrMode::AC)
    }

    pub fn plain(self) -> GrMode {
        if self.is_contact() {
            GrMode::PlainTjurina
        } else {
            GrMode::PlainMilnor
        }
    }
}

impl std::str::FromStr for GrMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain-milnor" => Ok(GrMode::PlainMilnor),
            "plain-tjurina" => Ok(GrMode::PlainTjurina),
            "a" => Ok(GrMode::A),
            "ac" => Ok(GrMode::AC),
            _ => Err(Error::InvalidArgument(format!("unknown graded mode {s:?}"))),
        }
    }
}

/// A spanning element of the expected-valuation image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// `x^alpha·∂_var f`.
    Derivation { alpha: Mono, var: usize },
    /// `x^alpha·f`.
    Multiple { alpha: Mono },
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedPiece {
    pub degree: i64,
    pub mode: GrMode,
    pub ambient: Vec<Mono>,
    /// Empty in plain modes, where the image is an intersection rather than a span.
    pub generators: Vec<Generator>,
    pub image_rank: usize,
    pub quotient_basis: Vec<Mono>,
    #[serde(skip)]
    echelon: Echelon,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn column(&self, m: &Mono) -> Option<usize> {
        self.ambient.binary_search(m).ok()
    }

    /// Coordinates of the degree-`d` part of `g`.
    pub fn vector(&self, g: &Poly) -> SparseVec {
        g.terms()
            .filter_map(|(m, c)| self.column(m).map(|i| (i, c.clone())))
            .collect()
    }

    /// Whether the class of `m` is zero.
    pub fn kills(&self, m: &Mono) -> bool {
        match self.column(m) {
            Some(i) => self.echelon.contains(SparseVec::from([(i, self.echelon.field().one())])),
            None => true,
        }
    }

    pub fn contains_vector(&self, v: SparseVec) -> bool {
        self.echelon.contains(v)
    }

    /// Splits the degree-`d` part of `g` into quotient-basis terms and a combination of
    /// generators (by index into `generators`). Only meaningful outside plain modes.
    pub fn decompose(&self, g: &Poly) -> (Vec<(Mono, Coeff)>, SparseVec) {
        let (rem, comb) = self.echelon.reduce(self.vector(g));
        let rest = rem.into_iter().map(|(i, c)| (self.ambient[i].clone(), c)).collect();
        (rest, comb)
    }
}

fn project(p: &CPolytope, g: &Poly, d: i64, index: &BTreeMap<&Mono, usize>) -> SparseVec {
    let mut v = SparseVec::new();
    for (m, c) in g.terms() {
        if p.val_mono(m) == d {
            if let Some(&i) = index.get(m) {
                v.insert(i, c.clone());
            }
        }
    }
    v
}

/// Degree-`d` piece of `gr_P^A(M_f)` or `gr_P^AC(T_f)`.
pub(crate) fn expected_piece(p: &CPolytope, f: &Poly, partials: &[Poly], d: i64, mode: GrMode) -> GradedPiece {
    let field = f.field();
    let vf = p.val(f).expect("f ≠ 0");
    let ambient = p.monomials_of_valuation(d);
    let index: BTreeMap<&Mono, usize> = ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut gens: Vec<Generator> = Vec::new();
    let mut echelon = Echelon::new(field, true);
    let mut seen = std::collections::BTreeSet::new();
    for (i, df) in partials.iter().enumerate() {
        for delta in df.support() {
            for gamma in &ambient {
                let Some(alpha) = delta.quotient_of(gamma) else { continue };
                let mut shifted: Vec<i64> = alpha.exps().iter().map(|&e| e as i64).collect();
                shifted[i] -= 1;
                if p.lambda(&shifted) + vf < d || !seen.insert((alpha.clone(), i)) {
                    continue;
                }
                let v = project(p, &df.mul_term(&alpha, &field.one()), d, &index);
                if !v.is_empty() {
                    echelon.insert(v, gens.len());
                    gens.push(Generator::Derivation { alpha, var: i });
                }
            }
        }
    }
    if mode == GrMode::AC {
        for delta in f.support() {
            for gamma in &ambient {
                let Some(alpha) = delta.quotient_of(gamma) else { continue };
                if p.val_mono(&alpha) + vf < d || !seen.insert((alpha.clone(), usize::MAX)) {
                    continue;
                }
                let v = project(p, &f.mul_term(&alpha, &field.one()), d, &index);
                if !v.is_empty() {
                    echelon.insert(v, gens.len());
                    gens.push(Generator::Multiple { alpha });
                }
            }
        }
    }
    finish(d, mode, ambient, gens, echelon)
}

fn finish(d: i64, mode: GrMode, ambient: Vec<Mono>, generators: Vec<Generator>, echelon: Echelon) -> GradedPiece {
    let quotient_basis = ambient
        .iter()
        .enumerate()
        .filter(|(i, _)| !echelon.is_pivot(*i))
        .map(|(_, m)| m.clone())
        .collect();
    GradedPiece {
        degree: d,
        mode,
        image_rank: echelon.rank(),
        ambient,
        generators,
        quotient_basis,
        echelon,
    }
}

/// All pieces of `gr_P(K[[x]]/I)` at once, computed in `K[[x]]/F_D` where `F_D ⊆ I`.
#[derive(Clone, Debug)]
pub(crate) struct PlainPieces {
    pub pieces: BTreeMap<i64, GradedPiece>,
}

pub(crate) fn plain_pieces(p: &CPolytope, f: &Poly, mode: GrMode) -> Result<PlainPieces> {
    let gens = if mode.is_contact() {
        localalg::tjurina_ideal(f)
    } else {
        localalg::jacobian_ideal(f)
    };
    let what = if mode.is_contact() { "Tjurina" } else { "Milnor" };
    let sb: StandardBasis = localalg::local_basis(&gens)?
        .ok_or_else(|| Error::Infinite(format!("{what} algebra: zero ideal")))?;
    let c = sb
        .min_power_containment()
        .finite()
        .ok_or_else(|| Error::Infinite(format!("{what} algebra has infinite dimension")))? as u32;
    let n = f.nvars();
    let mut top = 0i64;
    for m in Mono::up_to_degree(n, c.saturating_sub(1)) {
        if !sb.contains(&Poly::monomial(f.field(), m.clone())) {
            top = top.max(p.val_mono(&m) + 1);
        }
    }
    let field = f.field();
    let columns = p.monomials_below(top);
    let mut order: Vec<&Mono> = columns.iter().collect();
    order.sort_by(|a, b| p.val_mono(a).cmp(&p.val_mono(b)).then_with(|| a.cmp(b)));
    let index: BTreeMap<&Mono, usize> = order.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut echelon = Echelon::new(field, false);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for alpha in &columns {
            let v: SparseVec = g
                .terms()
                .filter_map(|(m, c)| index.get(&m.mul(alpha)).map(|&i| (i, c.clone())))
                .collect();
            if !v.is_empty() {
                echelon.insert(v, 0);
            }
        }
    }
    // rows whose pivot has valuation d project to an echelon basis of the degree-d image
    let mut by_degree: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
    for col in echelon.pivot_columns() {
        let row = echelon.row_for_pivot(col).expect("pivot");
        by_degree.entry(p.val_mono(order[col])).or_default().push(row.clone());
    }
    let mut pieces = BTreeMap::new();
    let mut degrees: Vec<i64> = columns.iter().map(|m| p.val_mono(m)).collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        let ambient = p.monomials_of_valuation(d);
        let local: BTreeMap<&Mono, usize> = ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut e = Echelon::new(field, false);
        for row in by_degree.get(&d).into_iter().flatten() {
            let v: SparseVec = row
                .iter()
                .filter(|(k, _)| p.val_mono(order[**k]) == d)
                .map(|(k, c)| (local[order[*k]], c.clone()))
                .collect();
            e.insert(v, 0);
        }
        pieces.insert(d, finish(d, mode, ambient, Vec::new(), e));
    }
    Ok(PlainPieces { pieces })
}

/// Graded piece of degree `d`.
pub fn graded_piece(p: &CPolytope, f: &Poly, d: i64, mode: GrMode) -> Result<GradedPiece> {
    check_input(p, f)?;
    if d < 0 {
        return Err(Error::InvalidArgument("negative degree".into()));
    }
    if mode.is_plain() {
        let pp = plain_pieces(p, f, mode)?;
        return Ok(pp
            .pieces
            .get(&d)
            .cloned()
            .unwrap_or_else(|| finish(d, mode, p.monomials_of_valuation(d), Vec::new(), full_echelon(f, p, d))));
    }
    Ok(expected_piece(p, f, &f.gradient(), d, mode))
}

/// Echelon killing every ambient monomial (pieces beyond `F_D ⊆ I`).
fn full_echelon(f: &Poly, p: &CPolytope, d: i64) -> Echelon {
    let mut e = Echelon::new(f.field(), false);
    for i in 0..p.monomials_of_valuation(d).len() {
        e.insert(SparseVec::from([(i, f.field().one())]), 0);
    }
    e
}

pub(crate) fn check_input(p: &CPolytope, f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    if p.nvars() != f.nvars() {
        return Err(Error::RingMismatch(format!(
            "polytope has {} variables, polynomial {}",
            p.nvars(),
            f.nvars()
        )));
    }
    Ok(())
}
