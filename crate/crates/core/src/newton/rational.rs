//! Small helpers for exact rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::nullspace;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Scales a nonzero rational vector to the primitive integer vector with the same direction.
pub fn primitive(v: &[Q]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("weight entry fits in i64"))
        .collect()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| a.gcd(&b))
}

pub fn dot_iq(w: &[i64], r: &[Q]) -> Q {
    w.iter().zip(r).map(|(a, b)| q(*a) * b).fold(Q::zero(), |s, t| s + t)
}

/// Affine dimension of a finite point set (−1 for the empty set).
pub fn affine_dim(points: &[&Vec<Q>]) -> i64 {
    let Some(first) = points.first() else { return -1 };
    let rows: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    let cols = first.len();
    (cols - nullspace_rows_rank(&rows, cols)) as i64
}

/// `cols − rank` computed through the nullspace of the row space.
fn nullspace_rows_rank(rows: &[Vec<Q>], cols: usize) -> usize {
    nullspace(rows, cols).len()
}

/// Solves the square system `A x = b`; `None` if singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = b.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for k in c..=n {
            m[c][k] = &m[c][k] * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

pub fn is_nonneg(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[q(4), q(6)]), vec![2, 3]);
        assert_eq!(primitive(&[Q::new(1.into(), 5.into()), Q::new(3.into(), 10.into())]), vec![2, 3]);
    }

    #[test]
    fn affine_dimension() {
        let a = vec![q(0), q(1)];
        let b = vec![q(1), q(0)];
        let c = vec![q(2), q(-1)];
        assert_eq!(affine_dim(&[&a]), 0);
        assert_eq!(affine_dim(&[&a, &b, &c]), 1);
    }
}
