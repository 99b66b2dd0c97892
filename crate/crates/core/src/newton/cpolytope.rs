//! C-polytopes, the piecewise linear function `λ_P` and the valuation `v_P`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::localalg;
use crate::poly::{Derivation, Mono, Poly};

use super::diagram::{newton_diagram, subsets, NewtonData};
use super::rational::{self, q, Q};

/// How a non-convenient Newton diagram is completed to a C-polytope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extension {
    /// Add virtual points `M_i·e_i` on the missing axes.
    #[default]
    VirtualPoints,
    /// Use the hyperplane of the unique compact facet.
    SingleWeight,
}

impl std::str::FromStr for Extension {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "virtual" | "virtual-points" => Ok(Extension::VirtualPoints),
            "single" | "single-weight" => Ok(Extension::SingleWeight),
            _ => Err(Error::InvalidArgument(format!("unknown extension rule {s:?}"))),
        }
    }
}

/// Where a polytope came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    Weights,
    NewtonDiagram,
    Extended { rule: Extension, virtual_points: Vec<Mono> },
}

fn ser_points<S: Serializer>(pts: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = pts.iter().map(|p| p.iter().map(rational::to_string).collect()).collect();
    v.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Indices of the weights whose facets contain the face.
    pub weights: Vec<usize>,
    pub dimension: usize,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
    pub inner: bool,
    /// Primitive lattice vectors spanning the cone over the face.
    pub rays: Vec<Vec<i64>>,
}

/// A C-polytope `P` given by irredundant integer weights `W_i` and a scale `N_P`,
/// so that `λ_i = W_i/N_P` and `v_P(x^α) = min_i W_i·α`.
#[derive(Clone, Debug, Serialize)]
pub struct CPolytope {
    nvars: usize,
    weights: Vec<Vec<i64>>,
    scale: i64,
    #[serde(serialize_with = "ser_points")]
    vertices: Vec<Vec<Q>>,
    faces: Vec<Face>,
    origin: Origin,
}

/// `v_P(f)` together with the facets attaining it on each minimal term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub value: ExtNat,
    pub attaining: Vec<(Mono, Vec<usize>)>,
}

impl CPolytope {
    /// Polytope with `λ_i = w_i` for rational weight vectors.
    pub fn from_weights(ws: &[Vec<Q>]) -> Result<Self> {
        let Some(first) = ws.first() else {
            return Err(Error::InvalidWeights("empty weight list".into()));
        };
        let n = first.len();
        if n == 0 || ws.iter().any(|w| w.len() != n) {
            return Err(Error::InvalidWeights("weight vectors of unequal length".into()));
        }
        if ws.iter().flatten().any(|x| !x.is_positive()) {
            return Err(Error::InvalidWeights("weight entries must be positive".into()));
        }
        let mut scale = BigInt::one();
        for x in ws.iter().flatten() {
            scale = scale.lcm(x.denom());
        }
        let s = Q::from_integer(scale.clone());
        let ints: Vec<Vec<i64>> = ws
            .iter()
            .map(|w| {
                w.iter()
                    .map(|x| (x * &s).to_integer().to_i64().ok_or_else(|| Error::InvalidWeights("weight too large".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        let scale = scale.to_i64().ok_or_else(|| Error::InvalidWeights("weight scale too large".into()))?;
        Ok(Self::build(ints, scale, Origin::Weights))
    }

    /// Polytope with `λ_i = W_i/scale` for integer weights.
    pub fn from_integer_weights(ws: &[Vec<i64>], scale: i64) -> Result<Self> {
        if scale <= 0 {
            return Err(Error::InvalidWeights("scale must be positive".into()));
        }
        let qs: Vec<Vec<Q>> = ws.iter().map(|w| w.iter().map(|&x| Q::new(x.into(), scale.into())).collect()).collect();
        Self::from_weights(&qs)
    }

    /// The Newton diagram of a convenient `f`, or its completion by `rule` otherwise.
    pub fn from_poly(f: &Poly, rule: Extension) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.constant_term().is_zero() {
            return Err(Error::ConstantTerm);
        }
        let nd = newton_diagram(f)?;
        if nd.convenient {
            let ws = facet_weights(&nd);
            return Ok(Self::from_weights(&ws)?.with_origin(Origin::NewtonDiagram));
        }
        let compact: Vec<_> = nd.compact_facets().cloned().collect();
        if rule == Extension::SingleWeight {
            if compact.len() != 1 {
                return Err(Error::Unsupported(format!(
                    "single-weight extension needs exactly one compact facet, found {}",
                    compact.len()
                )));
            }
            let ws = facet_weights(&nd);
            return Ok(Self::from_weights(&ws)?.with_origin(Origin::Extended { rule, virtual_points: Vec::new() }));
        }
        let n = f.nvars();
        let missing: Vec<usize> = (0..n)
            .filter(|&i| !f.support().any(|m| m.degree() == m.exps()[i]))
            .collect();
        let mut points = Vec::new();
        for &i in &missing {
            let m = if compact.is_empty() {
                2 * fallback_bound(f)?
            } else {
                compact
                    .iter()
                    .map(|h| Integer::div_ceil(&h.offset, &h.normal[i]))
                    .max()
                    .expect("nonempty")
            };
            points.push(Mono::var(n, i).raise(i, (m as u32).saturating_sub(1)));
        }
        let mut g = f.clone();
        for p in &points {
            g.add_term(p.clone(), f.field().one());
        }
        let nd2 = newton_diagram(&g)?;
        let ws = facet_weights(&nd2);
        Ok(Self::from_weights(&ws)?.with_origin(Origin::Extended { rule, virtual_points: points }))
    }

    fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    fn build(raw: Vec<Vec<i64>>, scale: i64, origin: Origin) -> Self {
        let n = raw[0].len();
        let mut uniq: Vec<Vec<i64>> = Vec::new();
        for w in raw {
            if !uniq.contains(&w) {
                uniq.push(w);
            }
        }
        uniq.sort();
        let all_vertices = vertices_of(&uniq, scale, n);
        // a weight is needed iff its facet has dimension n−1
        let weights: Vec<Vec<i64>> = uniq
            .iter()
            .filter(|w| {
                let on: Vec<&Vec<Q>> = all_vertices
                    .iter()
                    .filter(|v| rational::dot_iq(w, v) == q(scale))
                    .collect();
                rational::affine_dim(&on) == n as i64 - 1
            })
            .cloned()
            .collect();
        let vertices = vertices_of(&weights, scale, n);
        let mut p = CPolytope { nvars: n, weights, scale, vertices, faces: Vec::new(), origin };
        p.faces = p.compute_faces();
        p
    }

    fn compute_faces(&self) -> Vec<Face> {
        let n = self.nvars;
        let s = q(self.scale);
        let on: Vec<BTreeSet<usize>> = self
            .vertices
            .iter()
            .map(|v| (0..self.weights.len()).filter(|&i| rational::dot_iq(&self.weights[i], v) == s).collect())
            .collect();
        let zero_at: Vec<BTreeSet<usize>> = self
            .vertices
            .iter()
            .map(|v| (0..n).filter(|&c| v[c].is_zero()).collect())
            .collect();
        let nv = self.vertices.len();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.weights.len())
            .map(|i| (0..nv).filter(|&v| on[v].contains(&i)).collect())
            .collect();
        while let Some(set) = frontier.pop() {
            if set.is_empty() || !seen.insert(set.clone()) {
                continue;
            }
            for i in 0..self.weights.len() {
                let t: Vec<usize> = set.iter().copied().filter(|&v| on[v].contains(&i)).collect();
                if t.len() < set.len() {
                    frontier.push(t);
                }
            }
            for c in 0..n {
                let t: Vec<usize> = set.iter().copied().filter(|&v| zero_at[v].contains(&c)).collect();
                if t.len() < set.len() {
                    frontier.push(t);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|set| {
                let pts: Vec<&Vec<Q>> = set.iter().map(|&v| &self.vertices[v]).collect();
                let weights: Vec<usize> = (0..self.weights.len())
                    .filter(|&i| set.iter().all(|&v| on[v].contains(&i)))
                    .collect();
                let inner = (0..n).all(|c| set.iter().any(|&v| !self.vertices[v][c].is_zero()));
                Face {
                    weights,
                    dimension: rational::affine_dim(&pts).max(0) as usize,
                    rays: set.iter().map(|&v| rational::primitive(&self.vertices[v])).collect(),
                    vertices: set,
                    inner,
                }
            })
            .collect();
        faces.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// `N_P`.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> + '_ {
        let d = self.nvars - 1;
        self.faces.iter().filter(move |f| f.dimension == d)
    }

    pub fn inner_faces(&self) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.inner).collect()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Single-weight (quasihomogeneous) polytope.
    pub fn is_single_weight(&self) -> bool {
        self.weights.len() == 1
    }

    /// `N_P·λ_P(α)` for an integer vector, possibly with negative entries.
    pub fn lambda(&self, alpha: &[i64]) -> i64 {
        self.weights
            .iter()
            .map(|w| w.iter().zip(alpha).map(|(a, b)| a * b).sum::<i64>())
            .min()
            .expect("at least one weight")
    }

    pub fn val_mono(&self, m: &Mono) -> i64 {
        self.weights.iter().map(|w| m.weighted(w)).min().expect("at least one weight")
    }

    /// Weights attaining `λ_P` at `m`.
    pub fn attaining(&self, m: &Mono) -> Vec<usize> {
        let v = self.val_mono(m);
        (0..self.weights.len()).filter(|&i| m.weighted(&self.weights[i]) == v).collect()
    }

    /// Whether `m` lies in the cone over facet `i`.
    pub fn in_facet_cone(&self, i: usize, m: &Mono) -> bool {
        m.weighted(&self.weights[i]) == self.val_mono(m)
    }

    /// `min_i v_P(x_i)`.
    pub fn min_var_valuation(&self) -> i64 {
        (0..self.nvars).map(|i| self.val_mono(&Mono::var(self.nvars, i))).min().expect("nvars ≥ 1")
    }

    pub fn valuation(&self, f: &Poly) -> Valuation {
        let Some(v) = f.support().map(|m| self.val_mono(m)).min() else {
            return Valuation { value: ExtNat::Infinite, attaining: Vec::new() };
        };
        let attaining = f
            .support()
            .filter(|m| self.val_mono(m) == v)
            .map(|m| (m.clone(), self.attaining(m)))
            .collect();
        Valuation { value: ExtNat::Finite(v as u64), attaining }
    }

    /// `v_P(f)` as an integer; `None` for `f = 0`.
    pub fn val(&self, f: &Poly) -> Option<i64> {
        f.support().map(|m| self.val_mono(m)).min()
    }

    /// `N_P·min λ_P(α − e_i)` over the monomial derivations of `ξ`.
    pub fn valuation_derivation(&self, xi: &Derivation) -> Result<i64> {
        let mut best: Option<i64> = None;
        for (i, c) in xi.coeffs.iter().enumerate() {
            for m in c.support() {
                let mut a: Vec<i64> = m.exps().iter().map(|&e| e as i64).collect();
                a[i] -= 1;
                let v = self.lambda(&a);
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        best.ok_or(Error::ZeroPolynomial)
    }

    pub fn initial_form(&self, f: &Poly) -> Poly {
        match self.val(f) {
            None => f.clone(),
            Some(v) => f.filter(|m| self.val_mono(m) == v),
        }
    }

    /// Sum of the terms of `f` lying in the cone over facet `i` with value `v_P(f)`.
    pub fn facet_initial_form(&self, i: usize, f: &Poly) -> Poly {
        let w = &self.weights[i];
        match f.support().map(|m| m.weighted(w)).min() {
            None => f.clone(),
            Some(v) => f.filter(|m| m.weighted(w) == v),
        }
    }

    /// Terms of `f` on the face: `v_P`-minimal terms lying in the cone of every facet of the face.
    pub fn face_initial_form(&self, face: &Face, f: &Poly) -> Poly {
        let Some(v) = self.val(f) else { return f.clone() };
        f.filter(|m| face.weights.iter().all(|&i| m.weighted(&self.weights[i]) == v) && self.on_face(face, m))
    }

    /// Whether the point `m/v_P(m)` lies on the face.
    fn on_face(&self, face: &Face, m: &Mono) -> bool {
        // coordinates vanishing on every vertex of the face must vanish on m
        (0..self.nvars).all(|c| m.exps()[c] == 0 || face.vertices.iter().any(|&v| !self.vertices[v][c].is_zero()))
    }

    /// Monomials with `v_P = d`, ascending.
    pub fn monomials_of_valuation(&self, d: i64) -> Vec<Mono> {
        let mut out = BTreeSet::new();
        for w in &self.weights {
            weighted_walk(w, d, &mut vec![0; self.nvars], 0, &mut |e| {
                let m = Mono::new(e);
                if m.weighted(w) == d && self.val_mono(&m) == d {
                    out.insert(m);
                }
            });
        }
        out.into_iter().collect()
    }

    /// Monomials with `v_P < bound`, ascending.
    pub fn monomials_below(&self, bound: i64) -> Vec<Mono> {
        let mut out = BTreeSet::new();
        if bound <= 0 {
            return Vec::new();
        }
        for w in &self.weights {
            weighted_walk(w, bound - 1, &mut vec![0; self.nvars], 0, &mut |e| {
                out.insert(Mono::new(e));
            });
        }
        out.into_iter().collect()
    }

    /// Smallest `k` such that every monomial of degree `k` has valuation `≥ d`.
    pub fn power_inside(&self, d: i64) -> u32 {
        let m = self.min_var_valuation();
        if d <= 0 {
            return 0;
        }
        Integer::div_ceil(&d, &m) as u32
    }

    /// Largest `k` such that every monomial of valuation `≥ d` lies in `m^k`.
    pub fn power_containing(&self, d: i64) -> u32 {
        let mx = (0..self.nvars)
            .map(|i| self.weights.iter().map(|w| w[i]).max().expect("weight"))
            .max()
            .expect("nvars ≥ 1");
        if d <= 0 {
            0
        } else {
            Integer::div_ceil(&d, &mx) as u32
        }
    }
}

/// Calls `visit` on every exponent vector with `w·e ≤ max`.
fn weighted_walk(w: &[i64], max: i64, e: &mut Vec<u32>, i: usize, visit: &mut impl FnMut(&[u32])) {
    if i == w.len() {
        visit(e);
        return;
    }
    let used: i64 = e[..i].iter().zip(w).map(|(a, b)| *a as i64 * b).sum();
    let mut k = 0u32;
    while used + k as i64 * w[i] <= max {
        e[i] = k;
        weighted_walk(w, max, e, i + 1, visit);
        k += 1;
    }
    e[i] = 0;
}

/// `λ = w/c` for every compact facet of the diagram.
fn facet_weights(nd: &NewtonData) -> Vec<Vec<Q>> {
    nd.compact_facets()
        .map(|h| h.normal.iter().map(|&w| Q::new(w.into(), h.offset.into())).collect())
        .collect()
}

fn fallback_bound(f: &Poly) -> Result<i64> {
    let tau = localalg::tjurina(f)?;
    let ExtNat::Finite(t) = tau else {
        return Err(Error::Infinite("no compact facet and τ(f) = ∞; supply weights explicitly".into()));
    };
    let ord = f.order().finite().expect("nonzero") as i64;
    Ok(2 * t as i64 - ord + 2)
}

/// Vertices of `{r ≥ 0 : min_i W_i·r = s}`.
fn vertices_of(ws: &[Vec<i64>], s: i64, n: usize) -> Vec<Vec<Q>> {
    let m = ws.len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for k in 1..=n.min(m) {
        for is in subsets(m, k) {
            for js in subsets(n, n - k) {
                let mut a: Vec<Vec<Q>> = is.iter().map(|&i| ws[i].iter().map(|&x| q(x)).collect()).collect();
                let mut b: Vec<Q> = vec![q(s); k];
                for &j in &js {
                    a.push((0..n).map(|c| q((c == j) as i64)).collect());
                    b.push(Q::zero());
                }
                let Some(r) = rational::solve(&a, &b) else { continue };
                if !rational::is_nonneg(&r) {
                    continue;
                }
                if ws.iter().any(|w| rational::dot_iq(w, &r) < q(s)) {
                    continue;
                }
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::{parse_poly, parse_weights};

    fn poly(s: &str, vars: &[&str], f: Field) -> Poly {
        parse_poly(s, vars, f).unwrap()
    }

    fn pw(s: &str, n: usize) -> CPolytope {
        CPolytope::from_weights(&parse_weights(s, n).unwrap()).unwrap()
    }

    fn qq(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn two_weight_polytope() {
        let p = pw("1,2;3,1", 2);
        assert_eq!(p.scale(), 1);
        assert_eq!(
            p.vertices(),
            &[vec![qq(0, 1), qq(1, 1)], vec![qq(1, 5), qq(2, 5)], vec![qq(1, 1), qq(0, 1)]]
        );
        assert_eq!(p.facets().count(), 2);
        let dup = pw("1,2;1,2;3,1", 2);
        assert_eq!(dup.weights(), p.weights());
        assert_eq!(dup.vertices(), p.vertices());
    }

    #[test]
    fn redundant_weight_dropped() {
        // (2,2) dominates min((1,2),(3,1)) only where it is never the minimum
        let p = pw("1,2;3,1;4,4", 2);
        assert_eq!(p.weights(), &[vec![1, 2], vec![3, 1]]);
    }

    #[test]
    fn simplex() {
        let p = pw("1,1,1", 3);
        assert_eq!(p.vertices().len(), 3);
        let inner = p.inner_faces();
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0].dimension, 2);
    }

    #[test]
    fn piecewise_valuation() {
        let q0 = Field::rationals();
        let p = pw("1,2;3,1", 2);
        assert_eq!(p.val(&poly("x^7+y^7", &["x", "y"], q0)), Some(7));
        let g = poly("x^8+x*y^7", &["x", "y"], q0);
        assert_eq!(p.val(&g), Some(8));
        assert_eq!(p.val_mono(&Mono::new(&[1, 7])), 10);
        assert_eq!(p.initial_form(&g), poly("x^8", &["x", "y"], q0));
        let w = CPolytope::from_integer_weights(&[vec![4, 7]], 1).unwrap();
        assert_eq!(w.initial_form(&poly("x^7+x^6*y+y^4", &["x", "y"], q0)), poly("x^7+y^4", &["x", "y"], q0));
        let q10 = CPolytope::from_integer_weights(&[vec![9, 8, 6]], 1).unwrap();
        assert_eq!(q10.val_mono(&Mono::new(&[1, 1, 3])), 35);
        assert_eq!(q10.monomials_of_valuation(24).len(), 3);
        assert_eq!(q10.monomials_below(9), vec![Mono::new(&[0, 0, 0]), Mono::new(&[0, 0, 1]), Mono::new(&[0, 1, 0])]);
    }

    #[test]
    fn ties_reported_as_sets() {
        let p = pw("1,2;3,1", 2);
        let v = p.valuation(&poly("x*y^2+x^5", &["x", "y"], Field::rationals()));
        assert_eq!(v.value, ExtNat::Finite(5));
        assert_eq!(v.attaining, vec![(Mono::new(&[1, 2]), vec![0, 1]), (Mono::new(&[5, 0]), vec![0])]);
    }

    #[test]
    fn derivation_valuations() {
        let f2 = Field::prime(2);
        let t45 = CPolytope::from_integer_weights(&[vec![4, 6], vec![5, 5]], 1).unwrap();
        for n in 2..8u32 {
            let xi = Derivation::monomial(f2, Mono::new(&[2, 4 * n - 6]), 0);
            assert_eq!(t45.valuation_derivation(&xi).unwrap(), 20 * n as i64 - 25);
        }
        for (p, qv) in [(4i64, 5i64), (5, 6), (5, 7), (3, 7)] {
            let tpq = CPolytope::from_integer_weights(&[vec![2 * qv, p * qv - 2 * qv], vec![p * qv - 2 * p, 2 * p]], 1).unwrap();
            let dx = Derivation::monomial(f2, Mono::one(2), 0);
            assert_eq!(tpq.valuation_derivation(&dx).unwrap(), 2 * p - p * qv);
            let euler = Derivation::monomial(f2, Mono::var(2, 1), 1);
            assert_eq!(tpq.valuation_derivation(&euler).unwrap(), 0);
        }
    }

    #[test]
    fn from_convenient_poly() {
        let f2 = Field::prime(2);
        let p = CPolytope::from_poly(&poly("x^5+x^2*y^2+y^4", &["x", "y"], f2), Extension::default()).unwrap();
        assert_eq!(p.scale(), 20);
        assert_eq!(p.weights(), &[vec![4, 6], vec![5, 5]]);
        let e33 = CPolytope::from_poly(&poly("x^12+x^3*y^2+y^3", &["x", "y"], f2), Extension::default()).unwrap();
        assert_eq!(e33.scale(), 72);
        assert_eq!(e33.weights(), &[vec![6, 27], vec![8, 24]]);
        let w11 = CPolytope::from_poly(&poly("x^7+x^3*y^2+y^4", &["x", "y"], f2), Extension::default()).unwrap();
        assert_eq!(w11.scale(), 84);
    }

    #[test]
    fn tpq_inner_faces() {
        let q0 = Field::rationals();
        let p = CPolytope::from_poly(&poly("x^4+x^2*y^2+y^5", &["x", "y"], q0), Extension::default()).unwrap();
        let inner = p.inner_faces();
        assert_eq!(inner.len(), 3);
        let pts: Vec<&Vec<Q>> = inner.iter().filter(|f| f.dimension == 0).map(|f| &p.vertices()[f.vertices[0]]).collect();
        assert_eq!(pts, vec![&vec![qq(2, 1), qq(2, 1)]]);
        let single = CPolytope::from_poly(&poly("x^4+y^7", &["x", "y"], q0), Extension::default()).unwrap();
        assert_eq!(single.inner_faces().len(), 1);
        assert_eq!(single.inner_faces()[0].dimension, 1);
    }

    #[test]
    fn non_convenient_extension() {
        let q0 = Field::rationals();
        let vars = ["x", "y", "z"];
        let f = poly("x^2*z+y^3+z^4", &vars, q0);
        let single = CPolytope::from_poly(&f, Extension::SingleWeight).unwrap();
        assert_eq!(single.weights(), &[vec![9, 8, 6]]);
        assert_eq!(single.scale(), 24);
        let ext = CPolytope::from_poly(&f, Extension::VirtualPoints).unwrap();
        assert_eq!(ext.initial_form(&f), f);
        let fig = poly("x*y^4+x^2*y^3+x^3*y^2-x^4*y^2+x^7", &["x", "y"], q0);
        let p = CPolytope::from_poly(&fig, Extension::VirtualPoints).unwrap();
        assert_eq!(p.weights().len(), 2);
        assert_eq!(p.initial_form(&fig), poly("x*y^4+x^2*y^3+x^3*y^2+x^7", &["x", "y"], q0));
        assert!(matches!(p.origin(), Origin::Extended { virtual_points, .. } if virtual_points == &vec![Mono::new(&[0, 5])]));
    }
}
