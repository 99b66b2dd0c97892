//! Built-in fixture table and randomized property checks, shared by the `selftest`
//! command and the acceptance suite.

pub mod props;

use serde::Serialize;

use crate::equiv::Equivalence;
use crate::error::Result;
use crate::ext::ExtNat;
use crate::field::Field;
use crate::grading::{check_condition, regular_basis, Condition, ConditionCertificate, GrMode, GradedAlgebra};
use crate::localalg;
use crate::newton::{CPolytope, Extension};
use crate::nondeg::sqh_check;
use crate::normalform::{determinacy, determinacy_generic, normal_form, replay};
use crate::parse::parse_poly;
use crate::poly::{Mono, Poly};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "T45 over F_2"),
    (2, "Q10 over F_2"),
    (3, "E33 over F_3"),
    (4, "T_pq family"),
    (5, "semi-quasihomogeneous Milnor formula"),
    (6, "x^7+x^6y+y^4 over F_7"),
    (7, "E7 fixture"),
    (8, "W11 fixture"),
    (9, "randomized properties"),
];

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, name: impl Into<String>, expected: T, observed: T) {
        let passed = expected == observed;
        self.checks.push(Check {
            name: name.into(),
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
            passed,
        });
    }

    fn holds(&mut self, name: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, passed: bool) {
        self.checks.push(Check { name: name.into(), expected: expected.into(), observed: observed.into(), passed });
    }

    fn result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.holds(name, "a value", format!("error: {e}"), false);
                None
            }
        }
    }
}

fn field(ch: u64) -> Field {
    if ch == 0 {
        Field::rationals()
    } else {
        Field::prime(ch)
    }
}

fn poly(s: &str, vars: &[&str], ch: u64) -> Poly {
    parse_poly(s, vars, field(ch)).expect("fixture polynomial parses")
}

fn monos(list: &[&[u32]]) -> Vec<Mono> {
    let mut v: Vec<Mono> = list.iter().map(|e| Mono::new(e)).collect();
    v.sort();
    v
}

fn sorted(mut v: Vec<Mono>) -> Vec<Mono> {
    v.sort();
    v
}

fn show(ms: &[Mono]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

/// `dim K[x]/(I + m^N)`, by linear algebra on all monomials of degree `< N`. Equals the
/// local quotient dimension once `m^N ⊆ I`.
pub fn truncated_quotient_dim(gens: &[Poly], top: u32) -> u64 {
    use crate::linalg::{Echelon, SparseVec};
    let Some(first) = gens.first() else { return 0 };
    let (fd, n) = (first.field(), first.nvars());
    let cols = Mono::up_to_degree(n, top - 1);
    let index: std::collections::BTreeMap<&Mono, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut e = Echelon::new(fd, false);
    for g in gens {
        for a in &cols {
            let v: SparseVec = g.terms().filter_map(|(m, c)| index.get(&m.mul(a)).map(|&i| (i, c.clone()))).collect();
            if !v.is_empty() {
                e.insert(v, 0);
            }
        }
    }
    (cols.len() - e.rank()) as u64
}

/// Dimension from [`truncated_quotient_dim`], requiring the value to be stable between two
/// truncation levels above `hint`.
pub fn oracle_dim(gens: &[Poly], hint: u64) -> Option<u64> {
    let a = truncated_quotient_dim(gens, hint as u32 + 1);
    let b = truncated_quotient_dim(gens, hint as u32 + 3);
    (a == b).then_some(a)
}

fn criterion_1() -> Vec<Check> {
    let mut r = Recorder::new();
    let f = poly("x^5+x^2*y^2+y^4", &["x", "y"], 2);
    let p = CPolytope::from_integer_weights(&[vec![4, 6], vec![5, 5]], 1).expect("weights");
    if let Some(t) = r.result("tau", localalg::tjurina(&f)) {
        r.eq("tau(f)", ExtNat::Finite(16), t);
    }
    if let Some(rep) = r.result("AAC", check_condition(&p, &f, Condition::AAC)) {
        r.eq("AAC holds", false, rep.holds);
        let ray = match rep.certificate {
            ConditionCertificate::Ray(w) => Some(w.ray),
            ConditionCertificate::Dimensions { .. } => None,
        };
        r.eq("witness ray", Some(vec![0, 1]), ray);
    }
    if let Some(mut gr) = r.result("graded algebra", GradedAlgebra::new(&p, &f, GrMode::AC)) {
        for n in 4..=6u32 {
            let m = Mono::new(&[0, 4 * n]);
            let killed = gr.piece(20 * n as i64).kills(&m);
            r.eq(format!("y^{} survives in degree {}", 4 * n, 20 * n), true, !killed);
        }
    }
    r.checks
}

fn criterion_2() -> Vec<Check> {
    let mut r = Recorder::new();
    let f = poly("x^2*z+y^3+z^4", &["x", "y", "z"], 2);
    let p = CPolytope::from_integer_weights(&[vec![9, 8, 6]], 1).expect("weights");
    let expected = monos(&[
        &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[0, 0, 2],
        &[1, 1, 1], &[1, 0, 2], &[0, 1, 2], &[0, 0, 3], &[1, 1, 2], &[1, 0, 3], &[0, 1, 3], &[1, 1, 3],
    ]);
    r.eq("v_P(f)", Some(24), p.val(&f));
    if let Some(rb) = r.result("regular basis", regular_basis(&p, &f, GrMode::AC)) {
        r.eq("regular basis", show(&expected), show(&sorted(rb.monomials())));
        r.eq("max basis valuation", Some(35), rb.max_valuation());
    }
    if let Some(d) = r.result("determinacy", determinacy(&p, &f, Equivalence::Contact)) {
        r.eq("filtered degree d", Some(35), d.filtered_degree);
        r.eq("filtered contact determinacy", Some(5), d.filtered);
    }
    r.checks
}

fn criterion_3() -> Vec<Check> {
    let mut r = Recorder::new();
    let f = poly("x^12+x^3*y^2+y^3", &["x", "y"], 3);
    let p = CPolytope::from_integer_weights(&[vec![6, 27], vec![8, 24]], 1).expect("weights");
    if let Some(t) = r.result("tau", localalg::tjurina(&f)) {
        r.eq("tau(f)", ExtNat::Finite(21), t);
    }
    let mut expected: Vec<Mono> = (0..=12).map(|i| Mono::new(&[i, 0])).collect();
    for e in [[0, 1], [1, 1], [2, 1], [0, 2], [1, 2], [2, 2], [1, 3], [2, 3], [2, 4]] {
        expected.push(Mono::new(&e));
    }
    if let Some(rb) = r.result("regular basis", regular_basis(&p, &f, GrMode::AC)) {
        r.eq("dim gr^AC", ExtNat::Finite(22), rb.dimension);
        r.eq("regular basis", show(&sorted(expected)), show(&sorted(rb.monomials())));
    }
    for (c, want) in [(Condition::AAC, true), (Condition::AC, false)] {
        if let Some(rep) = r.result("condition", check_condition(&p, &f, c)) {
            r.eq(format!("{c:?} holds"), want, rep.holds);
        }
    }
    let g = poly("x^12+x^3*y^2+y^3+x*y^3+x^8*y+x^2*y^4+x^4*y^3+x^13+x^2*y^3", &["x", "y"], 3);
    if let Some(nf) = r.result("normal form", normal_form(&p, &g, Equivalence::Contact)) {
        let allowed = monos(&[&[1, 3], &[2, 3], &[2, 4]]);
        let tail = nf.tail_support();
        r.holds(
            "normal-form tail",
            format!("subset of {:?}", show(&allowed)),
            format!("{:?}", show(&tail)),
            tail.iter().all(|m| allowed.contains(m)),
        );
    }
    if let Some(d) = r.result("determinacy", determinacy(&p, &f, Equivalence::Contact)) {
        r.eq("filtered contact determinacy", Some(18), d.filtered);
    }
    if let Some(k) = r.result("generic bound", determinacy_generic(&f, Equivalence::Contact)) {
        r.eq("generic bound", 41, k);
    }
    r.checks
}

/// Characteristics exercised for `T_pq`: `Q`, primes dividing exactly `p`, exactly `q`,
/// primes dividing `pq−2(p+q)`, and 2.
pub fn tpq_characteristics(p: u64, q: u64) -> Vec<u64> {
    let mut out = vec![0];
    let primes = |n: u64| (2..=n).filter(move |&d| n.is_multiple_of(d) && crate::field::is_prime(d));
    out.extend(primes(p).filter(|d| !q.is_multiple_of(*d)));
    out.extend(primes(q).filter(|d| !p.is_multiple_of(*d)));
    out.extend(primes(p * q - 2 * (p + q)));
    out.push(2);
    out.sort();
    out.dedup();
    out
}

fn tpq_polytope(p: i64, q: i64) -> CPolytope {
    CPolytope::from_integer_weights(&[vec![2 * q, p * q - 2 * q], vec![p * q - 2 * p, 2 * p]], 1).expect("weights")
}

fn criterion_4() -> Vec<Check> {
    let mut r = Recorder::new();
    for (p, q) in [(4u64, 5u64), (5, 6), (5, 7)] {
        for ch in tpq_characteristics(p, q) {
            let tag = format!("T_{p},{q} char {ch}");
            let fp = poly(&format!("x^{p}+x^2*y^2+y^{q}"), &["x", "y"], ch);
            let divides = |n: u64| ch != 0 && n.is_multiple_of(ch);
            let mu = r.result(&tag, localalg::milnor(&fp));
            let tau = r.result(&tag, localalg::tjurina(&fp));
            let (Some(mu), Some(tau)) = (mu, tau) else { continue };
            if ch == 2 {
                let oracle = |gens: &[Poly], v: ExtNat| v.finite().and_then(|h| oracle_dim(gens, h)).map(ExtNat::Finite);
                let om = oracle(&localalg::jacobian_ideal(&fp), mu).unwrap_or(ExtNat::Infinite);
                r.eq(format!("{tag}: mu against linear-algebra oracle"), om, mu);
                let ot = oracle(&localalg::tjurina_ideal(&fp), tau).unwrap_or(ExtNat::Infinite);
                r.eq(format!("{tag}: tau against linear-algebra oracle"), ot, tau);
                continue;
            }
            if !divides(2 * p * q) {
                r.eq(format!("{tag}: mu"), ExtNat::Finite(p + q + 1), mu);
            }
            let m = p * q - 2 * (p + q);
            let want = if divides(m) || (divides(p) && divides(q)) { p + q + 1 } else { p + q };
            r.eq(format!("{tag}: tau"), ExtNat::Finite(want), tau);
            let poly_p = tpq_polytope(p as i64, q as i64);
            if let Some(d) = r.result(&tag, determinacy(&poly_p, &fp, Equivalence::Contact)) {
                r.eq(format!("{tag}: contact determinacy"), Some(p.max(q)), d.filtered);
            }
            let f = poly(&format!("x^{p}+x^2*y^2+y^{q}+x^3*y^3+x^{p}*y+x*y^{q}"), &["x", "y"], ch);
            if let Some(nf) = r.result(&tag, normal_form(&poly_p, &f, Equivalence::Contact)) {
                r.eq(format!("{tag}: normal form"), fp.to_string(), nf.normal_form.to_string());
            }
        }
    }
    r.checks
}

fn criterion_5() -> Vec<Check> {
    let mut r = Recorder::new();
    let f = poly("x^2*z+y^3+z^4", &["x", "y", "z"], 0);
    if let Some(rep) = r.result("sqh", sqh_check(&f, &[9, 8, 6], Equivalence::Right)) {
        r.eq("mu(In_w f)", ExtNat::Finite(10), rep.principal_invariant);
        r.eq("(24/9-1)(24/8-1)(24/6-1)", Some("10".to_string()), rep.formula);
    }
    let mut rng = props::rng(5);
    for i in 0..20 {
        let g = props::weighted_tail(&mut rng, &f, &[9, 8, 6], 24);
        if let Some(rep) = r.result("sqh", sqh_check(&g, &[9, 8, 6], Equivalence::Right)) {
            r.eq(format!("perturbation {i}: mu(f) = mu(In_w f)"), rep.principal_invariant, rep.invariant);
        }
    }
    r.checks
}

fn criterion_6() -> Vec<Check> {
    let mut r = Recorder::new();
    let f = poly("x^7+x^6*y+y^4", &["x", "y"], 7);
    if let Some(rep) = r.result("contact", sqh_check(&f, &[4, 7], Equivalence::Contact)) {
        r.eq("tau(f)", ExtNat::Finite(17), rep.invariant);
        r.eq("tau(In_w f)", ExtNat::Finite(21), rep.principal_invariant);
    }
    if let Some(rep) = r.result("right", sqh_check(&f, &[4, 7], Equivalence::Right)) {
        r.eq("mu(f)", ExtNat::Finite(21), rep.invariant);
        r.eq("mu(In_w f)", ExtNat::Infinite, rep.principal_invariant);
    }
    r.checks
}

/// Perturbation of `x^3+xy^3+z^2` by every monomial of weighted degree 19..25 that the
/// fixture uses.
pub const E7_FIXTURE: &str = "x^3+x*y^3+z^2+x^2*y^2+y^5+y^3*z+y^4*z+x*y^2*z";
pub const W11_FIXTURE: &str = "x^7+x^3*y^2+y^4+x*y^4+x^2*y^3+x^6*y+x^2*y^5+x^4*y^2+x^5*y^2";

fn criterion_7() -> Vec<Check> {
    let mut r = Recorder::new();
    let vars = ["x", "y", "z"];
    let p = CPolytope::from_integer_weights(&[vec![6, 4, 9]], 1).expect("weights");
    let cases: [(u64, u64, u64, &[&[u32]]); 4] = [
        (0, 7, 4, &[]),
        (5, 7, 4, &[]),
        (3, 9, 4, &[&[2, 2, 0]]),
        (2, 14, 5, &[&[0, 3, 1], &[0, 4, 1]]),
    ];
    for (ch, tau, det, tail) in cases {
        let f = poly(E7_FIXTURE, &vars, ch);
        let inp = p.initial_form(&f);
        if let Some(t) = r.result("tau", localalg::tjurina(&inp)) {
            r.eq(format!("char {ch}: tau(In_P f)"), ExtNat::Finite(tau), t);
        }
        if let Some(d) = r.result("determinacy", determinacy(&p, &f, Equivalence::Contact)) {
            r.eq(format!("char {ch}: filtered contact determinacy"), Some(det), d.filtered);
        }
        if let Some(nf) = r.result("normal form", normal_form(&p, &f, Equivalence::Contact)) {
            r.eq(format!("char {ch}: tail support"), show(&monos(tail)), show(&sorted(nf.tail_support())));
        }
    }
    r.checks
}

fn criterion_8() -> Vec<Check> {
    let mut r = Recorder::new();
    let vars = ["x", "y"];
    let cases: [(u64, &[&[u32]]); 4] = [
        (0, &[]),
        (5, &[]),
        (3, &[&[1, 4], &[2, 3], &[2, 4], &[2, 5]]),
        (2, &[&[6, 1]]),
    ];
    for (ch, allowed) in cases {
        let f = poly(W11_FIXTURE, &vars, ch);
        let p = match r.result("polytope", CPolytope::from_poly(&f, Extension::default())) {
            Some(p) => p,
            None => continue,
        };
        let allowed = monos(allowed);
        let name = format!("char {ch}: tail support");
        match normal_form(&p, &f, Equivalence::Contact) {
            Ok(nf) => {
                let tail = sorted(nf.tail_support());
                let ok = tail.iter().all(|m| allowed.contains(m));
                r.holds(name, format!("subset of {:?}", show(&allowed)), format!("{:?}", show(&tail)), ok);
            }
            Err(e) => r.holds(name, format!("subset of {:?}", show(&allowed)), format!("error: {e}"), false),
        }
    }
    r.checks
}

fn criterion_9(cases: usize) -> Vec<Check> {
    props::run_all(cases, 9)
        .into_iter()
        .map(|s| Check {
            name: s.name.to_string(),
            expected: format!("{} applicable cases, no counterexample", s.cases),
            observed: match &s.counterexample {
                Some(c) => format!("counterexample: {c}"),
                None => format!("{} checked, {} not applicable", s.checked, s.skipped),
            },
            passed: s.counterexample.is_none() && s.checked == s.cases,
        })
        .collect()
}

/// Runs one criterion. `cases` is the number of random cases per property (criterion 9).
pub fn criterion(id: u8, cases: usize) -> Option<CriterionOutcome> {
    let (_, title) = *CRITERIA.iter().find(|(i, _)| *i == id)?;
    let checks = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        _ => criterion_9(cases),
    };
    Some(CriterionOutcome { id, title, checks })
}

/// All criteria, evaluated on separate threads.
pub fn run_all(cases: usize) -> Vec<CriterionOutcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|(id, _)| s.spawn(move || criterion(*id, cases).expect("known id")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}

/// Replays the log of a normal-form computation and compares with its output.
pub fn replay_matches(f: &Poly, p: &CPolytope, mode: Equivalence) -> Result<bool> {
    let nf = normal_form(p, f, mode)?;
    Ok(replay(f, &nf.log, nf.cutoff)? == nf.normal_form.add(&nf.residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agrees_on_a_monomial_ideal() {
        let q = Field::prime(5);
        let gens = [Poly::monomial(q, Mono::new(&[3, 0])), Poly::monomial(q, Mono::new(&[0, 2]))];
        assert_eq!(oracle_dim(&gens, 6), Some(6));
        assert_eq!(truncated_quotient_dim(&gens, 2), 3);
    }
}
