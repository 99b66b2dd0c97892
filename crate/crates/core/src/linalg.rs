//! Exact linear algebra: an incremental sparse row echelon form and small dense helpers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Coeff, Field};

/// Sparse vector indexed by column.
pub type SparseVec = BTreeMap<usize, Coeff>;

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    comb: SparseVec,
}

/// Row echelon form built one vector at a time. The pivot of a row is its smallest
/// column index, so callers choose pivot preference through the column numbering.
/// With tracking enabled every stored row remembers its expression in the inserted
/// generators, which lets [`Echelon::reduce`] return a certificate.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    track: bool,
    rows: Vec<Row>,
    pivots: BTreeMap<usize, usize>,
}

fn axpy(target: &mut SparseVec, a: &Coeff, x: &SparseVec) {
    for (k, v) in x {
        let t = a * v;
        match target.entry(*k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !t.is_zero() {
                    e.insert(t);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &t;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl Echelon {
    pub fn new(field: Field, track: bool) -> Self {
        Echelon {
            field,
            track,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Stored row with the given pivot column.
    pub fn row_for_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivots.get(&col).map(|&r| &self.rows[r].vec)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Eliminates pivot columns from `v`. Returns the remainder and, when tracking,
    /// coefficients `c` with `v = remainder + Σ c_g·generator_g`.
    pub fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut comb = SparseVec::new();
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .map(|(k, _)| *k)
                .find(|k| self.pivots.contains_key(k));
            let Some(col) = next else { break };
            let r = &self.rows[self.pivots[&col]];
            let c = v[&col].clone();
            axpy(&mut v, &-&c, &r.vec);
            if self.track {
                axpy(&mut comb, &c, &r.comb);
            }
            from = col + 1;
        }
        (v, comb)
    }

    /// Adds generator `id` with vector `v`. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec, id: usize) -> bool {
        let (mut rem, comb) = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let mut row_comb = SparseVec::new();
        if self.track {
            // rem = v − Σ comb·gens
            row_comb.insert(id, self.field.one());
            axpy(&mut row_comb, &-&self.field.one(), &comb);
            for c in row_comb.values_mut() {
                *c = &*c * &inv;
            }
            row_comb.retain(|_, c| !c.is_zero());
        }
        for c in rem.values_mut() {
            *c = &*c * &inv;
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { vec: rem, comb: row_comb });
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Rank of a dense matrix over a field.
pub fn dense_rank(mut m: Vec<Vec<Coeff>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero");
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the rational nullspace `{x : A x = 0}` in reduced form.
pub fn nullspace(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for k in 0..cols {
            m[rank][k] = &m[rank][k] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(f: Field, entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|(k, v)| (*k, f.from_i64(*v)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    #[test]
    fn rank_and_certificate() {
        let f = Field::prime(7);
        let mut e = Echelon::new(f, true);
        let g0 = sv(f, &[(0, 1), (1, 2)]);
        let g1 = sv(f, &[(1, 3), (2, 1)]);
        let g2 = sv(f, &[(0, 1), (1, 5), (2, 1)]); // g0 + g1
        assert!(e.insert(g0.clone(), 0));
        assert!(e.insert(g1.clone(), 1));
        assert!(!e.insert(g2.clone(), 2));
        assert_eq!(e.rank(), 2);
        let target = sv(f, &[(0, 2), (1, 1), (2, 3), (3, 4)]);
        let (rem, comb) = e.reduce(target.clone());
        let mut rebuilt = rem.clone();
        for (id, c) in &comb {
            let g = [&g0, &g1][*id];
            axpy(&mut rebuilt, c, g);
        }
        assert_eq!(rebuilt, target);
        assert!(rem.keys().all(|k| !e.is_pivot(*k)));
    }

    #[test]
    fn dense_rank_over_f2() {
        let f = Field::prime(2);
        let m = vec![
            vec![f.from_i64(1), f.from_i64(1)],
            vec![f.from_i64(1), f.from_i64(1)],
        ];
        assert_eq!(dense_rank(m), 1);
    }

    #[test]
    fn nullspace_of_line() {
        let a = vec![vec![BigRational::from_integer(2.into()), BigRational::from_integer((-3).into())]];
        let ns = nullspace(&a, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], BigRational::new(3.into(), 2.into()));
    }
}
