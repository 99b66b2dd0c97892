//! Property predicates over random bivariate inputs. Each predicate returns a
//! [`Verdict`]; inputs outside the hypotheses of a property are reported as skipped.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::equiv::Equivalence;
use crate::ext::ExtNat;
use crate::field::Field;
use crate::grading::{check_condition, plain_dimension, Condition, GrMode, GradedAlgebra};
use crate::localalg;
use crate::newton::{CPolytope, Extension};
use crate::nondeg::innd_check;
use crate::normalform::{normal_form, replay};
use crate::poly::{Mono, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Verdict::Fail(format!($($msg)*));
        }
    };
}

macro_rules! ok_or_skip {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(_) => return Verdict::Skip,
        }
    };
}

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `x^a + y^b + Σ c·x^i y^j` over `F_p`.
pub fn convenient(p: u64, a: u32, b: u32, terms: &[(u32, u32, i64)]) -> Poly {
    let field = Field::prime(p);
    let mut f = Poly::zero(field, 2);
    f.add_term(Mono::new(&[a, 0]), field.one());
    f.add_term(Mono::new(&[0, b]), field.one());
    for &(i, j, c) in terms {
        f.add_term(Mono::new(&[i, j]), field.from_i64(c));
    }
    f
}

pub fn random_terms(rng: &mut StdRng, max: usize) -> Vec<(u32, u32, i64)> {
    let k = rng.gen_range(1..=max);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(2..=6u32);
            let i = rng.gen_range(0..=d);
            (i, d - i, rng.gen_range(1..=6i64))
        })
        .collect()
}

pub fn random_convenient(rng: &mut StdRng) -> Poly {
    let p = PRIMES[rng.gen_range(0..4)];
    let (a, b) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
    let terms = random_terms(rng, 4);
    convenient(p, a, b, &terms)
}

pub fn random_poly(rng: &mut StdRng, field: Field) -> Poly {
    let mut f = Poly::zero(field, 2);
    for (i, j, c) in random_terms(rng, 4) {
        f.add_term(Mono::new(&[i, j]), field.from_i64(c));
    }
    f
}

/// One or two random weight vectors in two variables.
pub fn random_polytope(rng: &mut StdRng) -> CPolytope {
    let k = rng.gen_range(1..=2);
    let ws: Vec<Vec<i64>> = (0..k).map(|_| vec![rng.gen_range(1..=7), rng.gen_range(1..=7)]).collect();
    CPolytope::from_integer_weights(&ws, 1).expect("positive weights")
}

/// Adds random terms of `w`-degree above `d` (at most total degree 8) to `f`.
pub fn weighted_tail(rng: &mut StdRng, f: &Poly, w: &[i64], d: i64) -> Poly {
    let field = f.field();
    let above: Vec<Mono> = Mono::up_to_degree(f.nvars(), 8)
        .into_iter()
        .filter(|m| m.exps().iter().zip(w).map(|(&e, &x)| e as i64 * x).sum::<i64>() > d)
        .collect();
    let mut g = f.clone();
    for _ in 0..rng.gen_range(1..=4) {
        let m = above[rng.gen_range(0..above.len())].clone();
        g.add_term(m, field.from_i64(rng.gen_range(1..=9)));
    }
    g
}

/// Subadditivity of `v_P`, and `v_P(fg) = v_P(f)+v_P(g)` exactly when some facet attains
/// both `v_P(f)` and `v_P(g)`.
pub fn valuation_laws(p: &CPolytope, f: &Poly, g: &Poly) -> Verdict {
    let (Some(vf), Some(vg)) = (p.val(f), p.val(g)) else { return Verdict::Skip };
    let vfg = p.val(&f.mul(g)).expect("domain");
    ensure!(vfg >= vf + vg, "v(fg) = {vfg} < {vf} + {vg}");
    if let Some(vs) = p.val(&f.add(g)) {
        ensure!(vs >= vf.min(vg), "v(f+g) = {vs} < min({vf}, {vg})");
    }
    let facet_val = |w: &[i64], h: &Poly| {
        h.support()
            .map(|m| m.exps().iter().zip(w).map(|(&e, &x)| e as i64 * x).sum::<i64>())
            .min()
            .expect("nonzero")
    };
    let common = p.weights().iter().any(|w| facet_val(w, f) == vf && facet_val(w, g) == vg);
    ensure!(common == (vfg == vf + vg), "facet criterion: common facet {common}, v(fg) = {vfg}, v(f)+v(g) = {}", vf + vg);
    Verdict::Pass
}

/// `dim gr_P(T_f) = τ(f)`.
pub fn graded_dimension(p: &CPolytope, f: &Poly) -> Verdict {
    let Some(tau) = ok_or_skip!(localalg::tjurina(f)).finite() else { return Verdict::Skip };
    let dim = ok_or_skip!(plain_dimension(p, f, GrMode::PlainTjurina));
    ensure!(dim == tau, "dim gr_P(T_f) = {dim}, tau = {tau}");
    Verdict::Pass
}

/// `gr^A` and `gr^AC` agree for `f` and `In_P(f)` in every degree up to `top`.
pub fn tail_invariance(p: &CPolytope, f: &Poly, top: i64) -> Verdict {
    let fp = p.initial_form(f);
    if fp == *f {
        return Verdict::Skip;
    }
    for mode in [GrMode::A, GrMode::AC] {
        let mut a = ok_or_skip!(GradedAlgebra::new(p, f, mode));
        let mut b = ok_or_skip!(GradedAlgebra::new(p, &fp, mode));
        for d in 0..=top {
            let (qa, qb) = (a.piece(d).quotient_basis.clone(), b.piece(d).quotient_basis.clone());
            ensure!(qa == qb, "{mode:?} degree {d}: {} vs {}", qa.len(), qb.len());
        }
    }
    Verdict::Pass
}

/// For quasihomogeneous `f ∈ m^3` of type `(w; d)` with coprime weights:
/// `μ < ∞ ⇔ (τ < ∞ and char ∤ d)`, and then `μ = τ`.
pub fn euler(f: &Poly, w: &[i64], d: i64) -> Verdict {
    if f.order() < ExtNat::Finite(3) || w.iter().fold(0, |g, &x| num_integer::gcd(g, x)) != 1 {
        return Verdict::Skip;
    }
    let mu = ok_or_skip!(localalg::milnor(f));
    let tau = ok_or_skip!(localalg::tjurina(f));
    let ch = f.field().characteristic() as i64;
    let divides = ch != 0 && d % ch == 0;
    ensure!(mu.is_finite() == (tau.is_finite() && !divides), "mu = {mu:?}, tau = {tau:?}, d = {d}");
    if mu.is_finite() {
        ensure!(mu == tau, "mu = {mu:?} but tau = {tau:?}");
    }
    Verdict::Pass
}

/// INND implies AA, AAC and `τ ≤ μ < ∞`.
pub fn innd_consequences(p: &CPolytope, f: &Poly) -> Verdict {
    let rep = ok_or_skip!(innd_check(f, p));
    if !rep.innd {
        return Verdict::Skip;
    }
    for c in [Condition::AA, Condition::AAC] {
        let r = ok_or_skip!(check_condition(p, f, c));
        ensure!(r.holds, "INND but {c:?} fails");
    }
    let mu = ok_or_skip!(localalg::milnor(f));
    let tau = ok_or_skip!(localalg::tjurina(f));
    ensure!(mu.is_finite() && tau <= mu, "INND but mu = {mu:?}, tau = {tau:?}");
    Verdict::Pass
}

/// `τ` is preserved by the contact normal form, and replaying the log reproduces it.
pub fn normal_form_invariants(p: &CPolytope, f: &Poly) -> Verdict {
    let nf = ok_or_skip!(normal_form(p, f, Equivalence::Contact));
    let replayed = ok_or_skip!(replay(f, &nf.log, nf.cutoff));
    ensure!(replayed == nf.normal_form.add(&nf.residual), "replay differs: {replayed} vs {}", nf.normal_form);
    let (a, b) = (ok_or_skip!(localalg::tjurina(f)), ok_or_skip!(localalg::tjurina(&nf.normal_form)));
    ensure!(a == b, "tau(f) = {a:?}, tau(nf) = {b:?}");
    Verdict::Pass
}

/// Truncating at any degree `≥` the filtered bound leaves the normal form unchanged.
pub fn truncation_stability(p: &CPolytope, f: &Poly) -> Verdict {
    let nf = ok_or_skip!(normal_form(p, f, Equivalence::Contact));
    let k = nf.determinacy as u32;
    if f.degree() <= k {
        return Verdict::Skip;
    }
    let t = ok_or_skip!(normal_form(p, &f.truncate(k), Equivalence::Contact));
    ensure!(t.tail == nf.tail, "truncation at {k} changes the tail");
    Verdict::Pass
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub name: &'static str,
    pub cases: usize,
    pub checked: usize,
    pub skipped: usize,
    pub counterexample: Option<String>,
}

/// Draws inputs until `cases` of them satisfy the hypotheses (at most `50·cases` draws).
fn tally(name: &'static str, cases: usize, mut one: impl FnMut(usize) -> (Verdict, String)) -> Summary {
    let mut s = Summary { name, cases, checked: 0, skipped: 0, counterexample: None };
    for i in 0..50 * cases {
        if s.checked == cases {
            break;
        }
        match one(i) {
            (Verdict::Pass, _) => s.checked += 1,
            (Verdict::Skip, _) => s.skipped += 1,
            (Verdict::Fail(msg), input) => {
                s.counterexample = Some(format!("{input}: {msg}"));
                break;
            }
        }
    }
    s
}

/// Random quasihomogeneous polynomial over a random prime field.
pub fn random_qh(rng: &mut StdRng) -> (Poly, Vec<i64>, i64) {
    let field = Field::prime(PRIMES[rng.gen_range(0..4)]);
    let w = vec![rng.gen_range(1..=4i64), rng.gen_range(1..=4i64)];
    let d = w[0] * w[1] * rng.gen_range(1..=3i64);
    let mut f = Poly::zero(field, 2);
    for i in 0..=(d / w[0]) {
        let rest = d - i * w[0];
        if rest % w[1] == 0 && rng.gen_bool(0.7) {
            f.add_term(Mono::new(&[i as u32, (rest / w[1]) as u32]), field.from_i64(rng.gen_range(1..=6)));
        }
    }
    (f, w, d)
}

/// Runs every property on `cases` random inputs drawn from a generator seeded with `seed`.
pub fn run_all(cases: usize, seed: u64) -> Vec<Summary> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    out.push(tally("valuation laws and facet criterion", cases, |_| {
        let p = random_polytope(&mut r);
        let field = Field::prime(PRIMES[r.gen_range(0..4)]);
        let (f, g) = (random_poly(&mut r, field), random_poly(&mut r, field));
        (valuation_laws(&p, &f, &g), format!("P = {:?}, f = {f}, g = {g}", p.weights()))
    }));
    out.push(tally("dim gr_P(T_f) = tau(f)", cases, |_| {
        let f = random_convenient(&mut r);
        let Ok(p) = CPolytope::from_poly(&f, Extension::default()) else { return (Verdict::Skip, String::new()) };
        (graded_dimension(&p, &f), format!("f = {f} over {}", f.field()))
    }));
    out.push(tally("gr^A, gr^AC invariant under higher tails", cases, |_| {
        let f = random_convenient(&mut r);
        let Ok(p) = CPolytope::from_poly(&f, Extension::default()) else { return (Verdict::Skip, String::new()) };
        let top = p.val(&f).unwrap_or(0) + 2 * p.weights().iter().flatten().max().copied().unwrap_or(1);
        (tail_invariance(&p, &f, top), format!("f = {f} over {}", f.field()))
    }));
    out.push(tally("Euler formula consequences", cases, |_| {
        let (f, w, d) = random_qh(&mut r);
        if f.is_zero() {
            return (Verdict::Skip, String::new());
        }
        (euler(&f, &w, d), format!("f = {f} over {}, w = {w:?}", f.field()))
    }));
    out.push(tally("INND implies AA, AAC, tau <= mu < inf", cases, |_| {
        let f = random_convenient(&mut r);
        let Ok(p) = CPolytope::from_poly(&f, Extension::default()) else { return (Verdict::Skip, String::new()) };
        (innd_consequences(&p, &f), format!("f = {f} over {}", f.field()))
    }));
    out.push(tally("normal form: tau preserved, log replays", cases, |_| {
        let f = random_convenient(&mut r);
        let Ok(p) = CPolytope::from_poly(&f, Extension::default()) else { return (Verdict::Skip, String::new()) };
        (normal_form_invariants(&p, &f), format!("f = {f} over {}", f.field()))
    }));
    out.push(tally("truncation at the filtered bound", cases, |_| {
        let f = random_convenient(&mut r);
        let Ok(p) = CPolytope::from_poly(&f, Extension::default()) else { return (Verdict::Skip, String::new()) };
        (truncation_stability(&p, &f), format!("f = {f} over {}", f.field()))
    }));
    out
}
