use proptest::prelude::*;
use uppertail::pattern::IndependencePolynomial;
use uppertail::rates::{rate_localized_i, rate_poisson, rate_regular, rate_star_localized_ii, theta_star_root, RegularBranch};
use uppertail::PatternGraph;

fn arb_poly() -> impl Strategy<Value = IndependencePolynomial> {
    (1u64..20, prop::collection::vec(0u64..50, 0..5), 1u64..10).prop_map(|(i1, mid, top)| {
        let mut c = vec![1, i1];
        c.extend(mid);
        c.push(top);
        IndependencePolynomial::from_coefficients(c).unwrap()
    })
}

proptest! {
    #[test]
    fn theta_root_solves_and_increases(poly in arb_poly(), d1 in 1e-3f64..50.0, d2 in 1e-3f64..50.0) {
        let (lo, hi) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
        prop_assume!(hi - lo > 1e-6);
        let (t_lo, t_hi) = (theta_star_root(&poly, lo).unwrap(), theta_star_root(&poly, hi).unwrap());
        prop_assert!(t_lo < t_hi);
        for (d, t) in [(lo, t_lo), (hi, t_hi)] {
            prop_assert!((poly.eval(t) - (1.0 + d)).abs() <= 1e-9 * (1.0 + d));
        }
    }

    #[test]
    fn poisson_rate_is_convex(a in 0.0f64..100.0, b in 0.0f64..100.0) {
        let mid = rate_poisson((a + b) / 2.0).unwrap();
        prop_assert!(mid <= (rate_poisson(a).unwrap() + rate_poisson(b).unwrap()) / 2.0 + 1e-12);
    }

    #[test]
    fn star_rate_flat_below_first_jump(r in 2usize..8, delta in 0.01f64..20.0, frac in 0.0f64..0.999) {
        let rho = frac / delta;
        let want = delta.powf(1.0 / r as f64) / r as f64;
        prop_assert!((rate_star_localized_ii(r, delta, rho).unwrap() - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn star_localized_rate_is_delta(r in 2usize..7, delta in 1e-3f64..100.0) {
        let rate = rate_localized_i(&PatternGraph::star(r).unwrap(), delta).unwrap().rate;
        prop_assert!((rate - delta).abs() <= 1e-9 * delta.max(1.0));
    }
}

#[test]
fn poisson_rate_superlinear() {
    assert_eq!(rate_poisson(0.0).unwrap(), 0.0);
    assert!(rate_poisson(1e3).unwrap() / 1e3 > rate_poisson(10.0).unwrap() / 10.0);
}

#[test]
fn regular_rate_switches_branch() {
    for h in [
        PatternGraph::clique(3).unwrap(),
        PatternGraph::cycle(4).unwrap(),
        PatternGraph::clique(4).unwrap(),
        PatternGraph::cycle(5).unwrap(),
    ] {
        let d0 = rate_regular(&h, 1.0).unwrap().crossover.expect("crossover");
        let below = rate_regular(&h, d0 * 0.99).unwrap().branch.unwrap();
        let above = rate_regular(&h, d0 * 1.01).unwrap().branch.unwrap();
        assert_ne!(below, above, "{:?}", h.edges());
        assert!([below, above].contains(&RegularBranch::Hub));
    }
}
