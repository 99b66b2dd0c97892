//! Global Gröbner bases, ideal quotients and saturation in `K[x]`.

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly};

use super::mora::std_basis;
use super::ordering::MonoOrder;

/// Reduced Gröbner basis with monic elements, sorted by leading monomial.
pub fn groebner(gens: &[Poly], order: MonoOrder) -> Result<Vec<Poly>> {
    if order.is_local() {
        return Err(Error::InvalidArgument("groebner needs a global ordering".into()));
    }
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let sb = std_basis(&nonzero, order)?;
    // interreduce the minimal basis
    let mut out: Vec<Poly> = Vec::new();
    for (i, g) in sb.generators.iter().enumerate() {
        let others: Vec<Poly> = sb
            .generators
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lm = sb.leading[i].clone();
        let lc = g.coeff(&lm);
        let tail = g.sub(&Poly::term(g.field(), lm.clone(), lc.clone()));
        let reduced_tail = if others.is_empty() {
            tail
        } else {
            reduce_full(&tail, &others, order)
        };
        let p = reduced_tail.add(&Poly::term(g.field(), lm, lc.clone()));
        out.push(p.scale(&lc.inv().expect("nonzero")));
    }
    out.sort_by(|a, b| {
        let la = order.leading(a).expect("nonzero").0;
        let lb = order.leading(b).expect("nonzero").0;
        order.cmp(la, lb)
    });
    Ok(out)
}

/// Full multivariate division remainder of `f` by `divisors` under a global ordering.
pub fn reduce_full(f: &Poly, divisors: &[Poly], order: MonoOrder) -> Poly {
    let leads: Vec<(Mono, Poly)> = divisors
        .iter()
        .filter_map(|d| order.leading(d).map(|(m, _)| (m.clone(), d.clone())))
        .collect();
    let mut rem = Poly::zero(f.field(), f.nvars());
    let mut h = f.clone();
    while let Some((lm, lc)) = order.leading(&h).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().find(|(m, _)| m.divides(&lm)) {
            Some((m, d)) => {
                let beta = m.quotient_of(&lm).expect("divisible");
                let dc = d.coeff(m);
                h = h.sub(&d.mul_term(&beta, &lc.div(&dc)));
            }
            None => {
                rem.add_term(lm.clone(), lc.clone());
                h = h.sub(&Poly::term(h.field(), lm, lc));
            }
        }
    }
    rem
}

/// Exact quotient `f / g`; errors if `g` does not divide `f`.
pub fn divide_exact(f: &Poly, g: &Poly) -> Result<Poly> {
    let order = MonoOrder::GlobalDegRevLex;
    let (gm, gc) = order.leading(g).ok_or(Error::ZeroPolynomial)?;
    let (gm, gc) = (gm.clone(), gc.clone());
    let mut q = Poly::zero(f.field(), f.nvars());
    let mut h = f.clone();
    while let Some((lm, lc)) = order.leading(&h).map(|(m, c)| (m.clone(), c.clone())) {
        let beta = gm
            .quotient_of(&lm)
            .ok_or_else(|| Error::InvalidArgument("inexact division".into()))?;
        let c = lc.div(&gc);
        q.add_term(beta.clone(), c.clone());
        h = h.sub(&g.mul_term(&beta, &c));
    }
    Ok(q)
}

fn extend(p: &Poly, n: usize) -> Poly {
    let mut r = Poly::zero(p.field(), n + 1);
    for (m, c) in p.terms() {
        let mut e = m.exps().to_vec();
        e.push(0);
        r.add_term(Mono::new(&e), c.clone());
    }
    r
}

fn restrict(p: &Poly, n: usize) -> Poly {
    let mut r = Poly::zero(p.field(), n);
    for (m, c) in p.terms() {
        r.add_term(Mono::new(&m.exps()[..n]), c.clone());
    }
    r
}

/// Ideal quotient `I : g = (I ∩ ⟨g⟩)/g`, with the intersection computed by eliminating `t`
/// from `t·I + (1−t)·g`. Returns a reduced degrevlex basis.
pub fn quotient(ideal: &[Poly], g: &Poly) -> Result<Vec<Poly>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ideal: Vec<&Poly> = ideal.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = ideal.first() else { return Ok(Vec::new()) };
    let (field, n) = (first.field(), first.nvars());
    let t = Poly::var(field, n + 1, n);
    let one_minus_t = Poly::one(field, n + 1).sub(&t);
    let mut gens: Vec<Poly> = ideal.iter().map(|p| extend(p, n).mul(&t)).collect();
    gens.push(extend(g, n).mul(&one_minus_t));
    let gb = groebner(&gens, MonoOrder::Eliminate { var: n })?;
    let mut out = Vec::new();
    for p in gb.iter().filter(|p| p.support().all(|m| m.exps()[n] == 0)) {
        out.push(divide_exact(&restrict(p, n), g)?);
    }
    groebner(&out, MonoOrder::GlobalDegRevLex)
}

/// Saturation `I : g^∞` by iterated quotients until the reduced basis stabilizes.
pub fn saturate(ideal: &[Poly], g: &Poly) -> Result<Vec<Poly>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut cur = groebner(ideal, MonoOrder::GlobalDegRevLex)?;
    loop {
        if cur.is_empty() {
            return Ok(cur);
        }
        let next = quotient(&cur, g)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Whether a reduced basis describes the unit ideal.
pub fn is_unit_ideal(basis: &[Poly]) -> bool {
    basis.iter().any(|p| p.len() == 1 && p.support().all(Mono::is_one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y"], Field::rationals()).unwrap()
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturate(&[p("x*y")], &p("x")).unwrap(), vec![p("y")]);
        assert_eq!(saturate(&[p("x")], &p("y")).unwrap(), vec![p("x")]);
        let s = saturate(&[p("x^2"), p("x*y")], &p("x")).unwrap();
        assert!(is_unit_ideal(&s));
    }

    #[test]
    fn quotient_by_element() {
        let q = quotient(&[p("x^2"), p("x*y")], &p("x")).unwrap();
        assert_eq!(q, vec![p("y"), p("x")]);
    }

    #[test]
    fn reduced_basis() {
        let gb = groebner(&[p("x^2-y"), p("x*y-1")], MonoOrder::GlobalDegRevLex).unwrap();
        for g in &gb {
            assert!(reduce_full(&p("x^3-x*y"), &gb, MonoOrder::GlobalDegRevLex).is_zero() || !g.is_zero());
        }
        assert!(reduce_full(&p("x^3-1"), &gb, MonoOrder::GlobalDegRevLex).is_zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(divide_exact(&p("x^2-y^2"), &p("x+y")).unwrap(), p("x-y"));
        assert!(divide_exact(&p("x^2+y"), &p("x+y")).is_err());
    }
}
