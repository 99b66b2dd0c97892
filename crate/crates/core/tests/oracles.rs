//! Values checked against a separate modular linear-algebra oracle written here.

use std::collections::{BTreeMap, HashMap};

use possing::equiv::Equivalence;
use possing::field::Field;
use possing::localalg;
use possing::newton::CPolytope;
use possing::normalform;
use possing::parse::parse_poly;
use possing::selftest::{E7_FIXTURE, W11_FIXTURE};
use possing::{ExtNat, Poly};

const BIG: u64 = 32003;

type Exps = Vec<u32>;

#[derive(Clone)]
struct P {
    p: u64,
    terms: HashMap<Exps, u64>,
}

fn pw(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv(a: u64, m: u64) -> u64 {
    pw(a, m - 2, m)
}

impl P {
    fn parse(s: &str, vars: &[&str], p: u64) -> P {
        let mut terms = HashMap::new();
        for t in s.split('+') {
            let mut e = vec![0; vars.len()];
            let mut c = 1u64;
            for f in t.split('*') {
                let (base, exp) = f.split_once('^').unwrap_or((f, "1"));
                match vars.iter().position(|v| *v == base) {
                    Some(i) => e[i] += exp.parse::<u32>().unwrap(),
                    None => c = c * base.parse::<u64>().unwrap() % p,
                }
            }
            *terms.entry(e).or_insert(0) += c;
        }
        let mut out = P { p, terms };
        out.clean();
        out
    }

    fn clean(&mut self) {
        let p = self.p;
        self.terms.retain(|_, c| {
            *c %= p;
            *c != 0
        });
    }

    fn deriv(&self, i: usize) -> P {
        let mut terms = HashMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                *terms.entry(d).or_insert(0) += c * (e[i] as u64 % self.p);
            }
        }
        let mut out = P { p: self.p, terms };
        out.clean();
        out
    }

    fn mul(&self, o: &P) -> P {
        let mut terms: HashMap<Exps, u64> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Exps = a.iter().zip(b).map(|(s, t)| s + t).collect();
                let slot = terms.entry(e).or_insert(0);
                *slot = (*slot + x * y) % self.p;
            }
        }
        let mut out = P { p: self.p, terms };
        out.clean();
        out
    }

    fn add(&self, o: &P) -> P {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            *out.terms.entry(e.clone()).or_insert(0) += c;
        }
        out.clean();
        out
    }

    fn order(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).min().unwrap_or(u32::MAX)
    }
}

fn monomials(n: usize, below: u32) -> Vec<Exps> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for head in 0..below {
        for mut rest in monomials(n - 1, below - head) {
            rest.insert(0, head);
            out.push(rest);
        }
    }
    out.sort_by_key(|e| e.iter().sum::<u32>());
    out
}

/// dim k[x]/(I + m^N) by row reduction over F_p.
fn truncated_dim(gens: &[P], n: usize, big_n: u32) -> usize {
    let p = gens[0].p;
    let cols = monomials(n, big_n);
    let index: HashMap<&Exps, usize> = cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for g in gens {
        for m in &cols {
            let mut row: BTreeMap<usize, u64> = BTreeMap::new();
            for (e, c) in &g.terms {
                let s: Exps = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&j) = index.get(&s) {
                    row.insert(j, *c);
                }
            }
            while let Some((&lead, &c)) = row.iter().next() {
                let Some(piv) = pivots.get(&lead) else {
                    let k = inv(c, p);
                    row.values_mut().for_each(|v| *v = *v * k % p);
                    pivots.insert(lead, row);
                    break;
                };
                for (&j, &v) in piv {
                    let slot = row.entry(j).or_insert(0);
                    *slot = (*slot + p - v * c % p) % p;
                }
                row.retain(|_, v| *v != 0);
            }
        }
    }
    cols.len() - pivots.len()
}

/// Local colength. Equal consecutive truncations force m^N into the ideal by Nakayama.
fn colength(gens: &[P], n: usize) -> Option<usize> {
    let mut prev = truncated_dim(gens, n, 1);
    for big_n in 2..40 {
        let d = truncated_dim(gens, n, big_n);
        if d == prev {
            return Some(d);
        }
        prev = d;
    }
    None
}

fn jacobian(f: &P, n: usize) -> Vec<P> {
    (0..n).map(|i| f.deriv(i)).collect()
}

fn tjurina_gens(f: &P, n: usize) -> Vec<P> {
    let mut g = jacobian(f, n);
    g.push(f.clone());
    g
}

fn lib(s: &str, vars: &[&str], ch: u64) -> Poly {
    let field = if ch == 0 { Field::rationals() } else { Field::prime(ch) };
    parse_poly(s, vars, field).unwrap()
}

fn fin(v: Option<usize>) -> ExtNat {
    v.map_or(ExtNat::Infinite, |d| ExtNat::Finite(d as u64))
}

#[test]
fn tpq_milnor_and_tjurina_numbers() {
    let xy = ["x", "y"];
    for (p, q) in [(4, 5), (5, 6), (5, 7)] {
        let s = format!("x^{p}+x^2*y^2+y^{q}");
        for ch in [0, 2, 3, 5, 7] {
            let o = P::parse(&s, &xy, if ch == 0 { BIG } else { ch });
            let f = lib(&s, &xy, ch);
            assert_eq!(localalg::milnor(&f).unwrap(), fin(colength(&jacobian(&o, 2), 2)), "{s} char {ch}");
            assert_eq!(localalg::tjurina(&f).unwrap(), fin(colength(&tjurina_gens(&o, 2), 2)), "{s} char {ch}");
        }
    }
}

#[test]
fn generic_contact_bound_t45_char_2() {
    let s = "x^4+x^2*y^2+y^5";
    let o = P::parse(s, &["x", "y"], 2);
    let tau = colength(&tjurina_gens(&o, 2), 2).unwrap() as u64;
    assert_eq!(tau, 16);
    let bound = 2 * tau - o.order() as u64 + 2;
    assert_eq!(normalform::determinacy_generic(&lib(s, &["x", "y"], 2), Equivalence::Contact).unwrap(), bound);
}

#[test]
fn fixture_tjurina_numbers() {
    for (s, vars) in [(E7_FIXTURE, vec!["x", "y", "z"]), (W11_FIXTURE, vec!["x", "y"])] {
        for ch in [0, 2, 3, 5] {
            let o = P::parse(s, &vars, if ch == 0 { BIG } else { ch });
            let f = lib(s, &vars, ch);
            assert_eq!(localalg::tjurina(&f).unwrap(), fin(colength(&tjurina_gens(&o, vars.len()), vars.len())), "{s} char {ch}");
        }
    }
}

#[test]
fn first_reduction_step_solves_for_the_shift() {
    let xy = ["x", "y"];
    let ch = 7;
    let g = P::parse("x^3+y^3+x^2*y^2", &xy, ch);
    // find c with no degree-4 term in g(x + c*y^2, y)
    let solve = (0..ch).find(|&c| {
        let x = P::parse("x", &xy, ch).add(&P { p: ch, terms: HashMap::from([(vec![0, 2], c)]) });
        let y = P::parse("y", &xy, ch);
        let img = x.mul(&x).mul(&x).add(&y.mul(&y).mul(&y)).add(&x.mul(&x).mul(&y).mul(&y));
        img.terms.keys().all(|e| e.iter().sum::<u32>() != 4)
    });
    let c = solve.expect("a shift exists");
    let p = CPolytope::from_integer_weights(&[vec![1, 1]], 1).unwrap();
    let fp = lib("x^3+y^3", &xy, ch);
    let (_, step) = normalform::reduce_step(&p, &fp, &lib("x^3+y^3+x^2*y^2", &xy, ch), 4, Equivalence::Right, 6).unwrap();
    assert_eq!(step.automorphism.shifts[0], lib(&format!("{c}*y^2"), &xy, ch));
    assert_eq!(g.order(), 3);
}
