use hzeta::asymptotic::eval_lambda;
use hzeta::constants::gkbj;
use hzeta::format::format_value;
use hzeta::gengamma::{exact_log_gengamma, log_gengamma};
use hzeta::hurwitz::hurwitz_deriv;
use hzeta::{Context, Error};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

fn ctx() -> Context {
    Context::new(20).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn log_gengamma_functional_equation(k in 0u32..=4, x in 0.05f64..30.0) {
        let c = ctx();
        let xf = c.real(x);
        let hi = log_gengamma(&c, k, &Float::with_val(c.bits(), &xf + 1u32)).unwrap();
        let lo = log_gengamma(&c, k, &xf).unwrap();
        let step = Float::with_val(c.bits(), xf.ln_ref()) * Float::with_val(c.bits(), (&xf).pow(k));
        let resid = Float::with_val(c.bits(), &hi.value - &lo.value) - step;
        let tol = hi.err + lo.err + c.precision().target_eps();
        prop_assert!(resid.abs() <= tol);
    }

    #[test]
    fn hurwitz_forward_difference(k in 0u32..=4, w in 0.05f64..40.0) {
        let c = ctx();
        let wf = c.real(w);
        let hi = hurwitz_deriv(&c, k, &Float::with_val(c.bits(), &wf + 1u32)).unwrap();
        let lo = hurwitz_deriv(&c, k, &wf).unwrap();
        let step = Float::with_val(c.bits(), wf.ln_ref()) * Float::with_val(c.bits(), (&wf).pow(k));
        let resid = Float::with_val(c.bits(), &hi.value - &lo.value) - step;
        prop_assert!(resid.abs() <= hi.err + lo.err + c.precision().target_eps());
    }

    #[test]
    fn reported_truncation_error_is_honest(k in 0u32..=4, x in 50i64..400, tail in prop::sample::select(vec![5usize, 10, 20])) {
        let c = ctx();
        let l = gkbj(&c, k).unwrap();
        let lambda = eval_lambda(&c, k as i32, &c.real(x), tail).unwrap();
        let exact = exact_log_gengamma(&c, k, x).unwrap();
        let dev = Float::with_val(c.bits(), &l.value + &lambda.value) - &exact.value;
        prop_assert!(dev.abs() <= l.err + lambda.err + exact.err);
    }

    #[test]
    fn formatted_values_parse_back(v in -1e6f64..1e6, digits in 3u32..40) {
        let c = Context::new(digits).unwrap();
        let x = c.real(v);
        let s = format_value(&x, digits);
        let back = Float::with_val(c.bits(), Float::parse(&s).unwrap());
        let ulp = Float::with_val(c.bits(), x.abs_ref()).max(&c.real(1e-300))
            * Float::with_val(c.bits(), Float::i_pow_u(10, digits - 1)).recip();
        prop_assert!(Float::with_val(c.bits(), &back - &x).abs() <= ulp);
    }

    #[test]
    fn higher_precision_agrees(k in 0u32..=6, x in 0.1f64..25.0) {
        let lo = Context::new(15).unwrap();
        let hi = Context::new(35).unwrap();
        let a = log_gengamma(&lo, k, &lo.real(x)).unwrap();
        let b = log_gengamma(&hi, k, &hi.real(x)).unwrap();
        let d = Float::with_val(hi.bits(), &a.value - &b.value).abs();
        prop_assert!(d <= a.err + b.err + lo.precision().target_eps());
    }
}

#[test]
fn small_arguments_are_refused_unshifted() {
    let c = ctx();
    assert!(matches!(
        eval_lambda(&c, 0, &c.real(0.5), 20),
        Err(Error::ArgumentTooSmall { .. })
    ));
    assert!(eval_lambda(&c, 0, &c.real(1000), 20).is_ok());
    assert!(eval_lambda(&c, -3, &c.real(1000), 20).is_err());
}

#[test]
fn lambda_matches_exact_sum_in_quoted_regime() {
    let c = Context::new(30).unwrap();
    let l0 = gkbj(&c, 0).unwrap();
    let v = eval_lambda(&c, 0, &c.real(100), 20).unwrap();
    let exact = exact_log_gengamma(&c, 0, 100).unwrap();
    let d = Float::with_val(c.bits(), &l0.value + &v.value) - &exact.value;
    assert!(d.abs() < 1e-29);
}
