use num_complex::Complex64;
use proptest::prelude::*;

use logcoef::series::TruncatedSeries;

const ORDER: usize = 12;

fn coeffs(scale: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-scale..scale, -scale..scale), ORDER + 1).prop_map(|v| {
        v.into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect()
    })
}

fn series(scale: f64) -> impl Strategy<Value = TruncatedSeries> {
    coeffs(scale).prop_map(|v| TruncatedSeries::new(&v, ORDER).unwrap())
}

fn unit_series(scale: f64) -> impl Strategy<Value = TruncatedSeries> {
    coeffs(scale).prop_map(|mut v| {
        v[0] = Complex64::new(1.0, 0.0);
        TruncatedSeries::new(&v, ORDER).unwrap()
    })
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

proptest! {
    #[test]
    fn ring_laws(a in series(1.0), b in series(1.0), c in series(1.0)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
        let one = TruncatedSeries::one(ORDER).unwrap();
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in series(1.0), b in unit_series(0.5)) {
        let q = a.mul(&b).unwrap().div(&b).unwrap();
        prop_assert!(close(&q, &a, 1e-12));
    }

    #[test]
    fn exp_log_round_trip(u in unit_series(0.5)) {
        let back = u.log_unit().unwrap().exp().unwrap();
        prop_assert!(close(&back, &u, 1e-12));
        let l = u.log_unit().unwrap();
        prop_assert!(close(&l.exp().unwrap().log_unit().unwrap(), &l, 1e-12));
    }

    #[test]
    fn pow_round_trip(u in unit_series(0.5), beta in 0.2f64..5.0) {
        let back = u.pow_real(beta).unwrap().pow_real(1.0 / beta).unwrap();
        prop_assert!(close(&back, &u, 1e-10));
    }

    #[test]
    fn pow_special_exponents(u in unit_series(0.5)) {
        prop_assert!(close(&u.pow_real(1.0).unwrap(), &u, 1e-14));
        prop_assert_eq!(u.pow_real(0.0).unwrap(), TruncatedSeries::one(ORDER).unwrap());
        prop_assert!(close(&u.pow_real(2.0).unwrap(), &u.mul(&u).unwrap(), 1e-12));
    }

    #[test]
    fn pow_matches_exp_of_scaled_log(u in unit_series(0.5), beta in -3.0f64..3.0) {
        let via_log = u.log_unit().unwrap().scale(Complex64::new(beta, 0.0)).exp().unwrap();
        prop_assert!(close(&u.pow_real(beta).unwrap(), &via_log, 1e-10));
    }

    #[test]
    fn derivative_of_antiderivative(a in series(1.0)) {
        let back = a.integrate_termwise().differentiate();
        let mut top_dropped = a.coeffs().to_vec();
        top_dropped[ORDER] = Complex64::new(0.0, 0.0);
        prop_assert!(close(&back, &TruncatedSeries::new(&top_dropped, ORDER).unwrap(), 1e-14));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in series(1.0), b in series(1.0), re in -0.2f64..0.2, im in -0.2f64..0.2) {
        // products agree up to the truncated tail, tiny at |z| ≤ 0.29
        let z = Complex64::new(re, im);
        let prod = a.mul(&b).unwrap().evaluate(z);
        prop_assert!((prod - a.evaluate(z) * b.evaluate(z)).norm() < 1e-4);
    }
}
