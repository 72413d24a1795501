use proptest::prelude::*;

use qmock::mocktheta::{
    closed_b, closed_c, f_recurrence, g2_series, phi32_check, Phi32Args, Phi32C,
};
use qmock::partitions::{is_obar_b, is_obar_c, list_family, Family, FamilyParams, OverPartition};
use qmock::probability::{
    exact_report, g2_real, mc_estimate, prob_w_recurrence, EventModel, ProbabilityParams,
};
use qmock::qseries::{poch_finite, poch_finite_inv, poch_inf, poch_inf_inv};
use qmock::{Monomial, TruncatedSeries};

fn series(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (0..=max_order).prop_flat_map(|n| {
        prop::collection::vec(-50i64..=50, n + 1).prop_map(|c| TruncatedSeries::from_i64s(&c))
    })
}

fn unit_series(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (series(max_order), prop::bool::ANY).prop_map(|(s, neg)| {
        let mut c = s.to_i64s().unwrap();
        c[0] = if neg { -1 } else { 1 };
        TruncatedSeries::from_i64s(&c)
    })
}

fn monomial(max_exp: usize) -> impl Strategy<Value = Monomial> {
    (prop::bool::ANY, 0..=max_exp)
        .prop_map(|(neg, e)| Monomial::new(if neg { -1 } else { 1 }, e).unwrap())
}

fn params() -> impl Strategy<Value = FamilyParams> {
    (3u32..=8)
        .prop_flat_map(|d| (Just(d), 1..=(d - 1) / 2))
        .prop_map(|(d, r)| FamilyParams::new(d, r).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.truncate(b.order()));
        prop_assert_eq!((&a * &b).order(), a.order().min(b.order()));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(15)) {
        let inv = a.invert().unwrap();
        let one = TruncatedSeries::one(a.order());
        prop_assert_eq!(&a * &inv, one.clone());
        prop_assert_eq!(&inv * &a, one);
    }

    #[test]
    fn binomial_division_undoes_multiplication(a in series(20), m in monomial(6)) {
        prop_assume!(m.exponent() >= 1);
        prop_assert_eq!(a.mul_one_minus(m).div_one_minus(m).unwrap(), a.clone());
        prop_assert_eq!(a.div_one_minus(m).unwrap().mul_one_minus(m), a);
    }

    #[test]
    fn pochhammer_inverses(a in monomial(4), step in 1usize..5, n in 0usize..8, order in 0usize..40) {
        prop_assume!(a.exponent() >= 1);
        let one = TruncatedSeries::one(order);
        prop_assert_eq!(&poch_finite(a, step, n, order) * &poch_finite_inv(a, step, n, order).unwrap(), one.clone());
        prop_assert_eq!(&poch_inf(a, step, order) * &poch_inf_inv(a, step, order).unwrap(), one);
    }

    #[test]
    fn pochhammer_stable_under_truncation(a in monomial(4), step in 1usize..5, lo in 0usize..30, extra in 0usize..30) {
        prop_assume!(a.exponent() >= 1);
        prop_assert_eq!(poch_inf(a, step, lo + extra).truncate(lo), poch_inf(a, step, lo));
        // a finite product long enough is indistinguishable from the infinite one
        let n = lo / step + 2;
        prop_assert_eq!(poch_finite(a, step, n, lo), poch_inf(a, step, lo));
    }

    #[test]
    fn generating_functions_stable_under_truncation(p in params(), lo in 0usize..25, extra in 0usize..20) {
        let hi = lo + extra;
        prop_assert_eq!(closed_b(p, hi).truncate(lo), closed_b(p, lo));
        prop_assert_eq!(closed_c(p, hi).truncate(lo), closed_c(p, lo));
        prop_assert_eq!(f_recurrence(Monomial::ONE, p, hi).truncate(lo), f_recurrence(Monomial::ONE, p, lo));
        let x = Monomial::neg(p.r() as usize);
        prop_assert_eq!(
            g2_series(x, p.d() as usize, hi).unwrap().truncate(lo),
            g2_series(x, p.d() as usize, lo).unwrap()
        );
    }

    #[test]
    fn phi32_transformation_holds(
        step in 1usize..4,
        a in monomial(6),
        b in monomial(6),
        c in monomial(6),
        d in monomial(6),
        e in monomial(6),
        infinite_c in prop::bool::ANY,
    ) {
        let c = if infinite_c { Phi32C::Infinity } else { Phi32C::Finite(c) };
        let args = Phi32Args { a, b, c, d, e, step };
        // only arguments whose denominators carry a positive power of q are admissible
        if let Ok(rep) = phi32_check(args, 30) {
            prop_assert!(rep.pass, "{:?} residual index {:?}", args, rep.first_nonzero_residual_index);
        }
    }

    #[test]
    fn series_json_round_trip(a in series(20)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

}

proptest! {
    // each case runs both exact pipelines, which is slow in debug builds
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_probabilities_are_ordered(p in params(), q in 0.05f64..0.85) {
        let pp = ProbabilityParams::new(p, q).unwrap();
        let rep = exact_report(&pp).unwrap();
        prop_assert!(rep.prob_w > 0.0 && rep.prob_w <= rep.prob_x && rep.prob_x <= 1.0);
        for k in 0..4 {
            let (a, b) = (prob_w_recurrence(k, &pp), prob_w_recurrence(k + 1, &pp));
            prop_assert!((0.0..=1.0).contains(&a) && a <= b);
        }
        prop_assert!(rep.abs_err_part1 < 1e-8 && rep.abs_err_part2 < 1e-8);
    }

    #[test]
    fn g2_real_in_unit_interval(p in params(), q in 0.01f64..0.99) {
        let g = g2_real(&ProbabilityParams::new(p, q).unwrap());
        prop_assert!(g > 0.0 && g < 1.0, "g2 = {}", g);
    }
}

#[test]
fn obar_b_and_c_are_disjoint() {
    for p in FamilyParams::grid(&[3, 4, 5]) {
        for n in 0..=30 {
            for l in list_family(Family::ObarB, p, n) {
                if n > 0 {
                    assert!(!is_obar_c(&l, p).unwrap().ok, "{l} in both, {p}");
                }
            }
            for l in list_family(Family::ObarC, p, n) {
                if n > 0 {
                    assert!(!is_obar_b(&l, p).unwrap().ok, "{l} in both, {p}");
                }
            }
        }
    }
}

#[test]
fn multiples_of_d_never_both_overlined_and_plain() {
    for p in FamilyParams::grid(&[3, 4, 5]) {
        for n in 0..=30 {
            for l in list_family(Family::ObarB, p, n) {
                for part in l.parts().iter().filter(|x| x.value % p.d() == 0) {
                    let twin = l
                        .parts()
                        .iter()
                        .any(|y| y.value == part.value && y.overlined != part.overlined);
                    assert!(!twin, "{l}, {p}");
                }
            }
        }
    }
}

#[test]
fn overpartition_text_round_trip() {
    for p in FamilyParams::grid(&[3, 5]) {
        for l in list_family(Family::ObarB, p, 20) {
            assert_eq!(l.to_string().parse::<OverPartition>().unwrap(), l);
            let json = serde_json::to_string(&l).unwrap();
            assert_eq!(serde_json::from_str::<OverPartition>(&json).unwrap(), l);
        }
    }
}

fn mc_params(samples: u64, model: EventModel) -> ProbabilityParams {
    let mut p = ProbabilityParams::new(FamilyParams::new(3, 1).unwrap(), 0.5).unwrap();
    p.mc.samples = samples;
    p.mc.seed = 42;
    p.mc.model = model;
    p
}

#[test]
fn mc_independent_of_worker_count() {
    let p = mc_params(30_000, EventModel::Literal);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_estimate(&p).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.cond_part2.to_bits(), b.cond_part2.to_bits());
    assert_eq!(a.cond_w_given_x.to_bits(), b.cond_w_given_x.to_bits());
    assert_eq!(a, mc_estimate(&p).unwrap());
}

#[test]
fn mc_stderr_shrinks_like_root_two() {
    let small = mc_estimate(&mc_params(100_000, EventModel::Literal)).unwrap();
    let large = mc_estimate(&mc_params(200_000, EventModel::Literal)).unwrap();
    let ratio = small.mc_stderr.unwrap() / large.mc_stderr.unwrap();
    assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn mc_probabilities_are_ordered() {
    for model in [EventModel::Literal, EventModel::Disjoint] {
        let rep = mc_estimate(&mc_params(50_000, model)).unwrap();
        assert!(rep.prob_w <= rep.prob_x && rep.prob_x <= 1.0, "{model:?}");
    }
}

#[test]
fn disjoint_model_reproduces_exact_marginals() {
    // the disjoint event model is the one the recurrence describes
    let p = mc_params(400_000, EventModel::Disjoint);
    let mc = mc_estimate(&p).unwrap();
    let exact = exact_report(&p).unwrap();
    let n = p.mc.samples as f64;
    for (est, truth) in [(mc.prob_w, exact.prob_w), (mc.prob_x, exact.prob_x)] {
        let se = (truth * (1.0 - truth) / n).sqrt();
        assert!((est - truth).abs() < 4.0 * se, "{est} vs {truth}");
    }
    let details = mc.mc.unwrap();
    assert!((details.ratio_part2 - exact.g2).abs() < 4.0 * details.ratio_part2_stderr);
}
