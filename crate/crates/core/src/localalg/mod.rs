//! Local algebra: Milnor and Tjurina numbers, quotient dimensions, membership,
//! power containment and saturation.

pub mod global;
pub mod mora;
pub mod ordering;

pub use global::{groebner, is_unit_ideal, quotient, saturate};
pub use mora::{std_basis, std_basis_tracked, Membership, MembershipCertificate, QuotientReport, StandardBasis};
pub use ordering::MonoOrder;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::poly::Poly;

fn require_in_max_ideal(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

/// Generators of the Jacobian ideal `jj(f)`; an all-zero gradient yields `[0]`.
pub fn jacobian_ideal(f: &Poly) -> Vec<Poly> {
    let g: Vec<Poly> = f.gradient().into_iter().filter(|p| !p.is_zero()).collect();
    if g.is_empty() {
        vec![Poly::zero(f.field(), f.nvars())]
    } else {
        g
    }
}

/// Generators of the Tjurina ideal `⟨f⟩ + jj(f)`.
pub fn tjurina_ideal(f: &Poly) -> Vec<Poly> {
    let mut g = vec![f.clone()];
    g.extend(f.gradient().into_iter().filter(|p| !p.is_zero()));
    g
}

/// Local quotient dimension `dim K[[x]]/I`.
pub fn local_quotient(gens: &[Poly]) -> Result<QuotientReport> {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(QuotientReport {
            dimension: ExtNat::Infinite,
            standard_monomials: Vec::new(),
        });
    }
    Ok(std_basis(&nonzero, MonoOrder::LocalDegree)?.vdim())
}

/// Local standard basis of the nonzero generators; `None` for the zero ideal.
pub fn local_basis(gens: &[Poly]) -> Result<Option<StandardBasis>> {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(None);
    }
    std_basis(&nonzero, MonoOrder::LocalDegree).map(Some)
}

/// Milnor number `μ(f) = dim K[[x]]/jj(f)`.
pub fn milnor(f: &Poly) -> Result<ExtNat> {
    require_in_max_ideal(f)?;
    Ok(local_quotient(&jacobian_ideal(f))?.dimension)
}

/// Tjurina number `τ(f) = dim K[[x]]/(⟨f⟩ + jj(f))`.
pub fn tjurina(f: &Poly) -> Result<ExtNat> {
    require_in_max_ideal(f)?;
    Ok(local_quotient(&tjurina_ideal(f))?.dimension)
}

/// Membership of `g` in the local ideal generated by `gens`, with certificate.
pub fn ideal_membership(g: &Poly, gens: &[Poly]) -> Result<Membership> {
    let nonzero: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(Membership {
            member: g.is_zero(),
            certificate: None,
        });
    }
    Ok(std_basis_tracked(&nonzero, MonoOrder::LocalDegree)?.membership(g))
}

/// Smallest `k` with `m^k ⊆ I` in the local ring.
pub fn min_power_containment(gens: &[Poly]) -> Result<ExtNat> {
    Ok(match local_basis(gens)? {
        Some(sb) => sb.min_power_containment(),
        None => ExtNat::Infinite,
    })
}
