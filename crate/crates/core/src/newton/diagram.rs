//! Newton polyhedron `Γ_+(f)` and Newton diagram `Γ(f)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::poly::{Mono, Poly};

use super::rational::{self, q, Q};

/// Supporting inequality `normal·r ≥ offset` of the Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Halfspace {
    pub fn eval(&self, m: &Mono) -> i64 {
        m.weighted(&self.normal)
    }

    pub fn is_tight(&self, m: &Mono) -> bool {
        self.eval(m) == self.offset
    }

    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&w| w > 0)
    }
}

/// A compact face of `Γ_+(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramFace {
    pub dimension: usize,
    pub vertices: Vec<Mono>,
    /// Indices into `gamma_plus` of the facets containing the face.
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonData {
    pub nvars: usize,
    pub support: Vec<Mono>,
    pub gamma_plus: Vec<Halfspace>,
    /// Vertices of `Γ_+(f)`, all of which are compact faces.
    pub vertices: Vec<Mono>,
    pub gamma: Vec<DiagramFace>,
    /// Lattice points in the region between `Γ(f)` and the origin (origin excluded).
    pub gamma_minus: Vec<Mono>,
    pub convenient: bool,
}

impl NewtonData {
    /// Compact facets, i.e. facets with a strictly positive normal.
    pub fn compact_facets(&self) -> impl Iterator<Item = &Halfspace> + '_ {
        self.gamma_plus.iter().filter(|h| h.is_compact())
    }

    /// The supporting hyperplane values `min_{s} w·s` along `w`.
    pub fn support_value(&self, w: &[i64]) -> i64 {
        self.support.iter().map(|m| m.weighted(w)).min().unwrap_or(0)
    }
}

/// Minimal elements of the support under componentwise order.
fn minimal_points(f: &Poly) -> Vec<Mono> {
    let all: Vec<Mono> = f.support().cloned().collect();
    all.iter()
        .filter(|m| !all.iter().any(|o| o != *m && o.divides(m)))
        .cloned()
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

fn facets_of(points: &[Mono], n: usize) -> Vec<Halfspace> {
    let mut found: BTreeSet<Halfspace> = BTreeSet::new();
    for m in 1..=n.min(points.len()) {
        let dirs = combinations(n, n - m);
        for pts in combinations(points.len(), m) {
            let base = points[pts[0]].exps();
            for ks in &dirs {
                let mut rows: Vec<Vec<Q>> = Vec::new();
                for &j in &pts[1..] {
                    let e = points[j].exps();
                    rows.push((0..n).map(|c| q(e[c] as i64 - base[c] as i64)).collect());
                }
                for &k in ks {
                    rows.push((0..n).map(|c| q((c == k) as i64)).collect());
                }
                let ns = nullspace(&rows, n);
                if ns.len() != 1 {
                    continue;
                }
                let mut w = rational::primitive(&ns[0]);
                if w.iter().all(|&x| x <= 0) {
                    w.iter_mut().for_each(|x| *x = -*x);
                }
                if w.iter().any(|&x| x < 0) {
                    continue;
                }
                let c = points[pts[0]].weighted(&w);
                if points.iter().all(|p| p.weighted(&w) >= c) {
                    found.insert(Halfspace { normal: w, offset: c });
                }
            }
        }
    }
    // coordinate facets r_k ≥ 0 are reported only if they are genuine facets
    found.into_iter().collect()
}

fn affine_dim_monos(ms: &[Mono]) -> usize {
    let pts: Vec<Vec<Q>> = ms.iter().map(|m| m.exps().iter().map(|&e| q(e as i64)).collect()).collect();
    let refs: Vec<&Vec<Q>> = pts.iter().collect();
    rational::affine_dim(&refs).max(0) as usize
}

/// Exact Newton polyhedron and diagram of `f`.
pub fn newton_diagram(f: &Poly) -> Result<NewtonData> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let points = minimal_points(f);
    let gamma_plus = facets_of(&points, n);

    let tight = |m: &Mono| -> BTreeSet<usize> {
        gamma_plus.iter().enumerate().filter(|(_, h)| h.is_tight(m)).map(|(i, _)| i).collect()
    };
    let normals_rank = |set: &BTreeSet<usize>| -> usize {
        let rows: Vec<Vec<Q>> = set.iter().map(|&i| gamma_plus[i].normal.iter().map(|&w| q(w)).collect()).collect();
        n - nullspace(&rows, n).len()
    };
    let vertices: Vec<Mono> = points.iter().filter(|p| normals_rank(&tight(p)) == n).cloned().collect();

    // compact faces: closure of facet vertex sets under intersection with tight sets
    let vtight: Vec<BTreeSet<usize>> = vertices.iter().map(&tight).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..gamma_plus.len())
        .map(|h| (0..vertices.len()).filter(|&v| vtight[v].contains(&h)).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| !s.is_empty())
        .collect();
    while let Some(s) = frontier.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for h in 0..gamma_plus.len() {
            let t: Vec<usize> = s.iter().copied().filter(|&v| vtight[v].contains(&h)).collect();
            if !t.is_empty() && t.len() < s.len() && !seen.contains(&t) {
                frontier.push(t);
            }
        }
    }
    let mut gamma = Vec::new();
    let mut kept: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in seen {
        let common: BTreeSet<usize> = s
            .iter()
            .map(|&v| vtight[v].clone())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap_or_default();
        let sum: Vec<i64> = (0..n).map(|c| common.iter().map(|&h| gamma_plus[h].normal[c]).sum()).collect();
        if sum.iter().any(|&x| x <= 0) {
            continue;
        }
        let full: Vec<usize> = (0..vertices.len()).filter(|&v| common.is_subset(&vtight[v])).collect();
        if !kept.insert(full.clone()) {
            continue;
        }
        let vs: Vec<Mono> = full.iter().map(|&v| vertices[v].clone()).collect();
        gamma.push(DiagramFace {
            dimension: affine_dim_monos(&vs),
            vertices: vs,
            facets: common.into_iter().collect(),
        });
    }
    gamma.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.vertices.cmp(&b.vertices)));

    let convenient = (0..n).all(|i| f.support().any(|m| m.exps()[i] > 0 && m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0)));
    let mut data = NewtonData {
        nvars: n,
        support: f.support().cloned().collect(),
        gamma_plus,
        vertices,
        gamma,
        gamma_minus: Vec::new(),
        convenient,
    };
    data.gamma_minus = gamma_minus_points(&data);
    Ok(data)
}

/// Lattice points `α ≠ 0` on a segment from the origin to a point of `Γ(f)`.
fn gamma_minus_points(d: &NewtonData) -> Vec<Mono> {
    let n = d.nvars;
    let positive: Vec<&Halfspace> = d.gamma_plus.iter().filter(|h| h.offset > 0).collect();
    if positive.is_empty() {
        return Vec::new();
    }
    let bound: Vec<u32> = (0..n).map(|i| d.vertices.iter().map(|v| v.exps()[i]).max().unwrap_or(0)).collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if e.iter().any(|&x| x > 0) {
            let m = Mono::new(&e);
            // t = min over positive-offset facets of w·α/c; the ray meets ∂Γ_+ at α/t
            let t = positive
                .iter()
                .map(|h| Q::new(m.weighted(&h.normal).into(), h.offset.into()))
                .min()
                .expect("nonempty");
            if t <= q(1) && t > q(0) {
                let sum: Vec<i64> = (0..n)
                    .map(|c| {
                        positive
                            .iter()
                            .filter(|h| Q::new(m.weighted(&h.normal).into(), h.offset.into()) == t)
                            .map(|h| h.normal[c])
                            .sum()
                    })
                    .collect();
                if sum.iter().all(|&x| x > 0) {
                    out.push(m);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if e[i] < bound[i] {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    fn nd(s: &str) -> NewtonData {
        newton_diagram(&parse_poly(s, &["x", "y"], Field::rationals()).unwrap()).unwrap()
    }

    #[test]
    fn non_convenient_diagram() {
        let d = nd("x*y^4+x^2*y^3+x^3*y^2-x^4*y^2+x^7");
        assert!(!d.convenient);
        assert_eq!(d.vertices, vec![Mono::new(&[1, 4]), Mono::new(&[3, 2]), Mono::new(&[7, 0])]);
        assert!(d.gamma.iter().all(|f| !f.vertices.contains(&Mono::new(&[4, 2]))));
        let edges: Vec<_> = d.gamma.iter().filter(|f| f.dimension == 1).collect();
        assert_eq!(edges.len(), 2);
        // (2,3) lies on the edge from (1,4) to (3,2)
        let h = d.compact_facets().find(|h| h.normal == vec![1, 1]).unwrap();
        assert!(h.is_tight(&Mono::new(&[2, 3])));
    }

    #[test]
    fn two_term_diagram() {
        let d = nd("x^4+y^7");
        assert!(d.convenient);
        let compact: Vec<_> = d.compact_facets().collect();
        assert_eq!(compact, vec![&Halfspace { normal: vec![7, 4], offset: 28 }]);
        assert_eq!(d.gamma.iter().filter(|f| f.dimension == 1).count(), 1);
    }

    #[test]
    fn t45_diagram() {
        let d = nd("x^5+x^2*y^2+y^4");
        assert!(d.convenient);
        assert_eq!(d.vertices, vec![Mono::new(&[0, 4]), Mono::new(&[2, 2]), Mono::new(&[5, 0])]);
        assert_eq!(d.gamma.len(), 5);
        assert!(d.gamma_minus.contains(&Mono::new(&[1, 1])));
        assert!(d.gamma_minus.contains(&Mono::new(&[2, 2])));
        assert!(!d.gamma_minus.contains(&Mono::new(&[3, 2])));
    }

    #[test]
    fn monomial_diagram() {
        let d = nd("x*y");
        assert_eq!(d.vertices, vec![Mono::new(&[1, 1])]);
        assert_eq!(d.gamma.len(), 1);
        assert_eq!(d.compact_facets().count(), 0);
    }
}
