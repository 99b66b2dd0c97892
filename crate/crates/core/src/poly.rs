//! Sparse multivariate polynomials, derivations and truncated substitutions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::field::{Coeff, Field};

pub type Exps = SmallVec<[u32; 4]>;

/// A monomial `x^α`. The `Ord` instance is degree-reverse-lexicographic with
/// total degree compared first; it only fixes iteration and printing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mono(Exps);

impl Mono {
    pub fn new(exps: &[u32]) -> Self {
        Mono(Exps::from_slice(exps))
    }

    pub fn one(n: usize) -> Self {
        Mono(smallvec::smallvec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Mono::one(n);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Option<Mono> {
        if self.divides(other) {
            Some(Mono(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Dot product with an integer weight vector.
    pub fn weighted(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Lower `x_i` by one, if possible.
    pub fn lower(&self, i: usize) -> Option<Mono> {
        if self.0[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[i] -= 1;
        Some(m)
    }

    pub fn raise(&self, i: usize, by: u32) -> Mono {
        let mut m = self.clone();
        m.0[i] += by;
        m
    }

    /// Reverse-lexicographic comparison of two monomials of the same degree:
    /// the one with the smaller exponent at the last differing variable is greater.
    pub fn revlex_cmp(&self, other: &Mono) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    /// All monomials of total degree `d` in `n` variables, in descending degrevlex order.
    pub fn of_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Mono::new(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials of total degree at most `d`, ascending.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        for k in 0..=d {
            let mut v = Mono::of_degree(n, k);
            v.reverse();
            out.extend(v);
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.revlex_cmp(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&display_names(self.nvars())))
    }
}

thread_local! {
    static NAMES: std::cell::RefCell<Option<Vec<String>>> = const { std::cell::RefCell::new(None) };
}

/// Runs `body` with `Display` (and hence serialization) of polynomials and monomials in
/// `names.len()` variables using `names`.
pub fn with_variable_names<R>(names: &[String], body: impl FnOnce() -> R) -> R {
    let saved = NAMES.with(|c| c.replace(Some(names.to_vec())));
    let out = body();
    NAMES.with(|c| *c.borrow_mut() = saved);
    out
}

fn display_names(n: usize) -> Vec<String> {
    NAMES
        .with(|c| c.borrow().as_ref().filter(|v| v.len() == n).cloned())
        .unwrap_or_else(|| default_names(n))
}

/// Variable names used when none are given: `x,y,z,w` for up to four variables, else `x1..xn`.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// A polynomial over a prime field or `Q` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Mono, Coeff>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Coeff) -> Self {
        Poly::term(field, Mono::one(nvars), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Poly::constant(field, nvars, field.one())
    }

    pub fn term(field: Field, mono: Mono, c: Coeff) -> Self {
        let mut p = Poly::zero(field, mono.nvars());
        p.add_term(mono, c);
        p
    }

    pub fn monomial(field: Field, mono: Mono) -> Self {
        Poly::term(field, mono, field.one())
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Poly::monomial(field, Mono::var(nvars, i))
    }

    /// Builds a polynomial from `(exponents, integer coefficient)` pairs.
    pub fn from_int_terms(field: Field, nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Mono::new(e), field.from_i64(*c));
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Mono> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Mono) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Mono::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Mono, c: Coeff) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn check_same_ring(&self, other: &Poly) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!(
                "{} in {} variables vs {} in {} variables",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.check_same_ring(other).is_ok());
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·x^m·self`.
    pub fn mul_term(&self, m: &Mono, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_trunc(other, None)
    }

    /// Product keeping only terms of total degree `<= cutoff` (all terms when `None`).
    pub fn mul_trunc(&self, other: &Poly, cutoff: Option<u32>) -> Poly {
        debug_assert!(self.check_same_ring(other).is_ok());
        let mut r = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(k) = cutoff {
                    if m1.degree() + m2.degree() > k {
                        continue;
                    }
                }
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_ring(other)?;
        Ok(self.mul(other))
    }

    pub fn pow_trunc(&self, k: u32, cutoff: Option<u32>) -> Poly {
        let mut r = Poly::one(self.field, self.nvars).truncate_opt(cutoff);
        for _ in 0..k {
            r = r.mul_trunc(self, cutoff);
        }
        r
    }

    /// Terms of total degree `<= cutoff`.
    pub fn truncate(&self, cutoff: u32) -> Poly {
        self.filter(|m| m.degree() <= cutoff)
    }

    fn truncate_opt(self, cutoff: Option<u32>) -> Poly {
        match cutoff {
            Some(k) => self.truncate(k),
            None => self,
        }
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|m| m.degree() == d)
    }

    /// The order `ord(f)`: smallest total degree in the support.
    pub fn order(&self) -> ExtNat {
        match self.terms.keys().next() {
            Some(m) => ExtNat::Finite(m.degree() as u64),
            None => ExtNat::Infinite,
        }
    }

    /// Largest total degree in the support; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Mono::degree)
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let k = self.field.from_i64(e as i64);
            if k.is_zero() {
                continue;
            }
            r.add_term(m.lower(i).expect("positive exponent"), c * &k);
        }
        r
    }

    /// All partial derivatives `∂_1 f, …, ∂_n f`.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Simultaneous substitution `x_i ↦ images[i]`, truncated at total degree `cutoff`.
    pub fn compose(&self, images: &[Poly], cutoff: Option<u32>) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::RingMismatch(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target_n = images.first().map_or(self.nvars, Poly::nvars);
        for g in images {
            if g.nvars != target_n || g.field != self.field {
                return Err(Error::RingMismatch("substitution images differ in ring".into()));
            }
        }
        let mut max_e = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (k, e) in m.exps().iter().enumerate() {
                max_e[k] = max_e[k].max(*e);
            }
        }
        // powers[i][e] = images[i]^e
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.nvars);
        for (i, g) in images.iter().enumerate() {
            let mut v = vec![Poly::one(self.field, target_n).truncate_opt(cutoff)];
            for e in 1..=max_e[i] as usize {
                let next = v[e - 1].mul_trunc(g, cutoff);
                v.push(next);
            }
            powers.push(v);
        }
        let mut r = Poly::zero(self.field, target_n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, target_n, c.clone()).truncate_opt(cutoff);
            for (i, e) in m.exps().iter().enumerate() {
                if *e > 0 {
                    t = t.mul_trunc(&powers[i][*e as usize], cutoff);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Power-series inverse of a unit, correct up to total degree `cutoff`.
    pub fn unit_inverse(&self, cutoff: u32) -> Result<Poly> {
        let c0 = self.constant_term();
        let inv0 = c0.inv().ok_or(Error::NotAUnit)?;
        // u = c0·(1 − h), u^{-1} = c0^{-1}·Σ h^k
        let h = self.scale(&inv0).neg().add(&Poly::one(self.field, self.nvars)).truncate(cutoff);
        let mut sum = Poly::one(self.field, self.nvars);
        let mut pw = Poly::one(self.field, self.nvars);
        for _ in 0..cutoff {
            pw = pw.mul_trunc(&h, Some(cutoff));
            if pw.is_zero() {
                break;
            }
            sum = sum.add(&pw);
        }
        Ok(sum.scale(&inv0))
    }

    /// Replaces every coefficient by its image in `field` (rationals reduce mod p).
    pub fn map_field(&self, field: Field) -> Result<Poly> {
        let mut r = Poly::zero(field, self.nvars);
        for (m, c) in &self.terms {
            let img = match c {
                Coeff::Fp { value, .. } => {
                    if !field.is_rational() && field.characteristic() == c.field().characteristic() {
                        c.clone()
                    } else {
                        field.from_i64(*value as i64)
                    }
                }
                Coeff::Q(q) => {
                    let num = field.from_bigint(q.numer());
                    let den = field.from_bigint(q.denom());
                    let inv = den.inv().ok_or_else(|| {
                        Error::InvalidArgument(format!("denominator {} vanishes in {field}", q.denom()))
                    })?;
                    &num * &inv
                }
            };
            r.add_term(m.clone(), img);
        }
        Ok(r)
    }

    /// Writes the polynomial with the given variable names, highest term first.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mono = m.fmt_with(names);
            if m.is_one() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&display_names(self.nvars)))
    }
}

/// A derivation `ξ = Σ b_i ∂_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Derivation {
    pub coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Derivation {
            coeffs: vec![Poly::zero(field, nvars); nvars],
        }
    }

    /// The monomial derivation `x^α ∂_i`.
    pub fn monomial(field: Field, alpha: Mono, i: usize) -> Self {
        let n = alpha.nvars();
        let mut d = Derivation::zero(field, n);
        d.coeffs[i] = Poly::monomial(field, alpha);
        d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if self.coeffs.len() != f.nvars() {
            return Err(Error::RingMismatch("derivation arity".into()));
        }
        let mut r = Poly::zero(f.field(), f.nvars());
        for (i, b) in self.coeffs.iter().enumerate() {
            if !b.is_zero() {
                r = r.add(&b.mul(&f.partial(i)));
            }
        }
        Ok(r)
    }
}

/// A coordinate change `x_i ↦ x_i + g_i`, optionally followed by multiplication with a unit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Automorphism {
    /// The perturbations `g_i`.
    pub shifts: Vec<Poly>,
    pub unit: Option<Poly>,
}

impl Automorphism {
    pub fn identity(field: Field, nvars: usize) -> Self {
        Automorphism {
            shifts: vec![Poly::zero(field, nvars); nvars],
            unit: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_identity(&self) -> bool {
        self.shifts.iter().all(Poly::is_zero) && self.unit.as_ref().is_none_or(|u| u.is_one_poly())
    }

    /// Images `x_i + g_i`.
    pub fn images(&self) -> Vec<Poly> {
        let n = self.shifts.len();
        self.shifts
            .iter()
            .enumerate()
            .map(|(i, g)| Poly::var(g.field(), n, i).add(g))
            .collect()
    }

    /// Checks that no image has a constant term and that the linear part is invertible.
    pub fn validate(&self) -> Result<()> {
        let images = self.images();
        let n = images.len();
        let field = match images.first() {
            Some(p) => p.field(),
            None => return Ok(()),
        };
        let mut mat = vec![vec![field.zero(); n]; n];
        for (i, g) in images.iter().enumerate() {
            if !g.constant_term().is_zero() {
                return Err(Error::InvalidArgument(format!("image of variable {i} has a constant term")));
            }
            for (j, row) in mat[i].iter_mut().enumerate() {
                *row = g.coeff(&Mono::var(n, j));
            }
        }
        if crate::linalg::dense_rank(mat) < n {
            return Err(Error::InvalidArgument("linear part is not invertible".into()));
        }
        if let Some(u) = &self.unit {
            if u.constant_term().is_zero() {
                return Err(Error::NotAUnit);
            }
        }
        Ok(())
    }

    /// `u·f(x + g)`, truncated at total degree `cutoff`.
    pub fn apply(&self, f: &Poly, cutoff: u32) -> Result<Poly> {
        let r = f.compose(&self.images(), Some(cutoff))?;
        Ok(match &self.unit {
            Some(u) => r.mul_trunc(u, Some(cutoff)),
            None => r,
        })
    }

    /// Inverse up to degree `cutoff`, for shifts of order at least 2. The unit of the
    /// inverse is `(u∘ψ)^{-1}` where `ψ` is the inverse coordinate change.
    pub fn inverse(&self, cutoff: u32) -> Result<Automorphism> {
        for g in &self.shifts {
            if let ExtNat::Finite(o) = g.order() {
                if o < 2 {
                    return Err(Error::Unsupported(
                        "inverse needs coordinate shifts of order at least 2".into(),
                    ));
                }
            }
        }
        let n = self.shifts.len();
        let field = self.shifts.first().map(Poly::field).unwrap_or(Field::rationals());
        // ψ_i = x_i + h_i with h_i = −g_i(ψ); iterate to a fixed point.
        let mut h: Vec<Poly> = vec![Poly::zero(field, n); n];
        for _ in 0..=cutoff {
            let psi = Automorphism { shifts: h.clone(), unit: None }.images();
            let next: Vec<Poly> = self
                .shifts
                .iter()
                .map(|g| g.compose(&psi, Some(cutoff)).map(|p| p.neg()))
                .collect::<Result<_>>()?;
            if next == h {
                break;
            }
            h = next;
        }
        let psi = Automorphism { shifts: h.clone(), unit: None };
        let unit = match &self.unit {
            Some(u) => Some(u.compose(&psi.images(), Some(cutoff))?.unit_inverse(cutoff)?),
            None => None,
        };
        Ok(Automorphism { shifts: h, unit })
    }
}

impl Poly {
    pub fn is_one_poly(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(field: Field, s: &str) -> Poly {
        parse_poly(s, &["x", "y"], field).unwrap()
    }

    #[test]
    fn frobenius_in_char_two() {
        let f2 = Field::prime(2);
        let s = p(f2, "x+y");
        assert_eq!(s.mul(&s).to_string(), "x^2+y^2");
        assert_eq!(s.mul(&Poly::one(f2, 2)), s);
    }

    #[test]
    fn difference_of_squares() {
        let q = Field::rationals();
        let a = p(q, "x^2+y^3");
        let b = p(q, "x^2-y^3");
        assert_eq!(a.mul(&b).to_string(), "-y^6+x^4");
    }

    #[test]
    fn partials_reduce_mod_p() {
        let f2 = Field::prime(2);
        assert_eq!(p(f2, "x^5+x^2*y^2+y^4").partial(0).to_string(), "x^4");
        let f3 = Field::prime(3);
        let g = parse_poly("x^3+x*y^3+z^2", &["x", "y", "z"], f3).unwrap();
        assert!(g.partial(1).is_zero());
        let f5 = Field::prime(5);
        assert!(p(f5, "x^5").partial(0).is_zero());
    }

    #[test]
    fn substitution() {
        let f2 = Field::prime(2);
        let phi = Automorphism {
            shifts: vec![p(f2, "y"), Poly::zero(f2, 2)],
            unit: None,
        };
        assert_eq!(phi.apply(&p(f2, "x^2"), 10).unwrap().to_string(), "x^2+y^2");
        let q = Field::rationals();
        let phi = Automorphism {
            shifts: vec![p(q, "y^2"), Poly::zero(q, 2)],
            unit: None,
        };
        assert_eq!(phi.apply(&p(q, "x*y"), 10).unwrap().to_string(), "y^3+x*y");
        let id = Automorphism::identity(q, 2);
        let f = p(q, "x^3-2*x*y+7");
        assert_eq!(id.apply(&f, 10).unwrap(), f);
    }

    #[test]
    fn geometric_series() {
        let q = Field::rationals();
        assert_eq!(p(q, "1+x").unit_inverse(2).unwrap().to_string(), "x^2-x+1");
        assert_eq!(p(q, "1").unit_inverse(5).unwrap().to_string(), "1");
        let f2 = Field::prime(2);
        assert_eq!(p(f2, "1+x").unit_inverse(2).unwrap().to_string(), "x^2+x+1");
        assert_eq!(p(q, "x").unit_inverse(2), Err(Error::NotAUnit));
    }

    #[test]
    fn orders() {
        let q = Field::rationals();
        let f = parse_poly("x^2*z+y^3+z^4", &["x", "y", "z"], q).unwrap();
        assert_eq!(f.order(), ExtNat::Finite(3));
        assert_eq!(p(q, "1+x").order(), ExtNat::Finite(0));
        assert_eq!(Poly::zero(q, 2).order(), ExtNat::Infinite);
    }

    #[test]
    fn printing_order_is_descending() {
        let f2 = Field::prime(2);
        assert_eq!(p(f2, "y^4+x^2*y^2+x^5").to_string(), "x^5+x^2*y^2+y^4");
        let q = Field::rationals();
        assert_eq!(p(q, "-x+3*y^2").to_string(), "3*y^2-x");
    }

    #[test]
    fn automorphism_inverse_round_trip() {
        let q = Field::rationals();
        let phi = Automorphism {
            shifts: vec![p(q, "y^2"), p(q, "x*y")],
            unit: Some(p(q, "1+x")),
        };
        let inv = phi.inverse(8).unwrap();
        let f = p(q, "x^3+y^3");
        let back = inv.apply(&phi.apply(&f, 8).unwrap(), 8).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn degenerate_linear_part_rejected() {
        let q = Field::rationals();
        let phi = Automorphism {
            shifts: vec![p(q, "-x+y"), Poly::zero(q, 2)],
            unit: None,
        };
        assert!(phi.validate().is_err());
        let ok = Automorphism {
            shifts: vec![p(q, "y"), Poly::zero(q, 2)],
            unit: None,
        };
        assert!(ok.validate().is_ok());
    }
}
