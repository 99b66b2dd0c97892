use proptest::prelude::*;

use possing::field::Field;
use possing::newton::{CPolytope, Extension};
use possing::poly::{Mono, Poly};
use possing::selftest::props::{self, Verdict};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

fn term() -> impl Strategy<Value = (u32, u32, i64)> {
    (2u32..=6).prop_flat_map(|d| (0..=d, Just(d), 1i64..=6)).prop_map(|(i, d, c)| (i, d - i, c))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(props::PRIMES.to_vec())
}

prop_compose! {
    fn convenient()(p in prime(), a in 2u32..=6, b in 2u32..=6, terms in prop::collection::vec(term(), 0..=4)) -> Poly {
        props::convenient(p, a, b, &terms)
    }
}

prop_compose! {
    fn pair()(p in prime(), f in prop::collection::vec(term(), 1..=4), g in prop::collection::vec(term(), 1..=4)) -> (Poly, Poly) {
        let field = Field::prime(p);
        let build = |ts: &[(u32, u32, i64)]| {
            let mut h = Poly::zero(field, 2);
            for &(i, j, c) in ts {
                h.add_term(Mono::new(&[i, j]), field.from_i64(c));
            }
            h
        };
        (build(&f), build(&g))
    }
}

prop_compose! {
    fn polytope()(ws in prop::collection::vec((1i64..=7, 1i64..=7), 1..=2)) -> CPolytope {
        let ws: Vec<Vec<i64>> = ws.into_iter().map(|(a, b)| vec![a, b]).collect();
        CPolytope::from_integer_weights(&ws, 1).unwrap()
    }
}

prop_compose! {
    fn quasihomogeneous()(p in prime(), w0 in 1i64..=4, w1 in 1i64..=4, k in 1i64..=3, mask in any::<u32>(), coeffs in prop::collection::vec(1i64..=6, 13)) -> (Poly, Vec<i64>, i64) {
        let field = Field::prime(p);
        let d = w0 * w1 * k;
        let mut f = Poly::zero(field, 2);
        for i in 0..=(d / w0) {
            let rest = d - i * w0;
            if rest % w1 == 0 && mask & (1 << i) != 0 {
                f.add_term(Mono::new(&[i as u32, (rest / w1) as u32]), field.from_i64(coeffs[i as usize]));
            }
        }
        (f, vec![w0, w1], d)
    }
}

fn assert_verdict(v: Verdict) -> Result<(), TestCaseError> {
    match v {
        Verdict::Fail(msg) => Err(TestCaseError::fail(msg)),
        Verdict::Pass => Ok(()),
        Verdict::Skip => Err(TestCaseError::reject("outside hypotheses")),
    }
}

fn newton(f: &Poly) -> Result<CPolytope, TestCaseError> {
    CPolytope::from_poly(f, Extension::default()).map_err(|_| TestCaseError::reject("no polytope"))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn valuation_subadditive_with_facet_criterion(p in polytope(), (f, g) in pair()) {
        assert_verdict(props::valuation_laws(&p, &f, &g))?;
    }

    #[test]
    fn graded_tjurina_dimension(f in convenient()) {
        let p = newton(&f)?;
        assert_verdict(props::graded_dimension(&p, &f))?;
    }

    #[test]
    fn expected_gradings_ignore_higher_tails(f in convenient()) {
        let p = newton(&f)?;
        let top = p.val(&f).unwrap() + 2 * p.weights().iter().flatten().max().copied().unwrap();
        assert_verdict(props::tail_invariance(&p, &f, top))?;
    }

    #[test]
    fn euler_consequences((f, w, d) in quasihomogeneous()) {
        prop_assume!(!f.is_zero());
        assert_verdict(props::euler(&f, &w, d))?;
    }

    #[test]
    fn innd_implies_almost_conditions(f in convenient()) {
        let p = newton(&f)?;
        assert_verdict(props::innd_consequences(&p, &f))?;
    }

    #[test]
    fn normal_form_preserves_tau_and_replays(f in convenient()) {
        let p = newton(&f)?;
        assert_verdict(props::normal_form_invariants(&p, &f))?;
    }

    #[test]
    fn normal_form_stable_under_truncation(f in convenient()) {
        let p = newton(&f)?;
        assert_verdict(props::truncation_stability(&p, &f))?;
    }
}
