//! Truncated formal power series, scalar and with polynomial coefficients.

mod bivariate;
mod fps;

pub use bivariate::PolySeries;
pub use fps::Fps;

use num_traits::One;

use crate::error::Result;
use crate::kernel::{int, ratio, Rational};

/// `(e^{λt} - 1)/λ`, with coefficients `λ^{n-1}/n!`; equals `t` at `λ = 0`.
pub fn expm1_scaled(lambda: &Rational, order: usize) -> Fps {
    let mut out = Vec::with_capacity(order + 1);
    out.push(int(0));
    let mut term = Rational::one();
    for n in 1..=order {
        term /= int(n as i64);
        out.push(term.clone());
        term *= lambda;
    }
    Fps::new(out, order)
}

/// `e_λ(t) - 1 = (1 + λt)^{1/λ} - 1`; `e^t - 1` at `λ = 0`.
pub fn degenerate_expm1(lambda: &Rational, order: usize) -> Result<Fps> {
    if lambda == &int(0) {
        return Ok(&Fps::exp_linear(&int(1), order) - &Fps::one(order));
    }
    let base = Fps::new(vec![int(1), lambda.clone()], order);
    Ok(&base.pow_rational(&lambda.recip())? - &Fps::one(order))
}

/// `log_λ(1 + t) = ((1 + t)^λ - 1)/λ`; `log(1 + t)` at `λ = 0`.
pub fn degenerate_log1p(lambda: &Rational, order: usize) -> Result<Fps> {
    if lambda == &int(0) {
        return Ok(Fps::log1p(order));
    }
    let base = Fps::new(vec![int(1), int(1)], order);
    Ok((&base.pow_rational(lambda)? - &Fps::one(order)).scale(&lambda.recip()))
}

/// `u = t/2 + (1 + t²/4)^{1/2}`, the series with `u - 1/u = t`.
/// `√(t² + 4) = 2(1 + t²/4)^{1/2}` keeps the constant term a unit.
pub fn central_root(order: usize) -> Result<Fps> {
    let q = Fps::new(vec![int(1), int(0), ratio(1, 4)], order);
    let root = q.pow_rational(&ratio(1, 2))?;
    Ok(&root + &Fps::monomial(1, ratio(1, 2), order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{factorial, sign};
    use proptest::prelude::*;

    fn fps(c: &[Rational], order: usize) -> Fps {
        Fps::new(c.to_vec(), order)
    }

    fn expm1(order: usize) -> Fps {
        expm1_scaled(&int(1), order)
    }

    #[test]
    fn arithmetic() {
        let a = fps(&[int(1), int(1)], 4);
        let b = fps(&[int(1), int(-1)], 4);
        assert_eq!(&a * &b, fps(&[int(1), int(0), int(-1)], 4));
        let t = Fps::t(5);
        assert_eq!(t.div(&t).unwrap(), Fps::one(4));
        // t/(e^t - 1) = 1 - t/2 + t²/12 + 0 t³
        let q = Fps::t(4).div(&expm1(4)).unwrap();
        assert_eq!(q, fps(&[int(1), ratio(-1, 2), ratio(1, 12), int(0)], 3));
    }

    #[test]
    fn division_errors() {
        let t2 = Fps::monomial(2, int(1), 5);
        assert!(matches!(
            Fps::t(5).div(&t2),
            Err(crate::Error::OrderUnderflow { .. })
        ));
        assert!(matches!(
            Fps::one(5).div(&Fps::zero(5)),
            Err(crate::Error::ZeroDivisor)
        ));
    }

    #[test]
    fn composition() {
        let n = 10;
        assert_eq!(expm1(n).compose(&Fps::log1p(n)).unwrap(), Fps::t(n));
        let f = Fps::log1p(n);
        assert_eq!(f.compose(&Fps::t(n)).unwrap(), f);
        assert!(matches!(
            f.compose(&Fps::one(n)),
            Err(crate::Error::InnerNotDelta)
        ));
    }

    #[test]
    fn reversion_examples() {
        let n = 12;
        assert_eq!(expm1(n).revert().unwrap(), Fps::log1p(n));
        // t/(t-1) is its own inverse
        let f = Fps::t(n).div(&fps(&[int(-1), int(1)], n)).unwrap();
        assert_eq!(f.revert().unwrap(), f);
        let lambda = ratio(1, 2);
        let e = expm1_scaled(&lambda, n);
        let log = Fps::log1p(n).scale_arg(&lambda).scale(&lambda.recip());
        assert_eq!(e.revert().unwrap(), log);
        assert!(Fps::one(n).revert().is_err());
    }

    #[test]
    fn exp_log_pow() {
        let n = 8;
        let e = Fps::t(n).exp().unwrap();
        for i in 0..=n {
            assert_eq!(e.coeff(i), &factorial(i).recip());
        }
        let l = Fps::log1p(n);
        for i in 1..=n {
            assert_eq!(l.coeff(i), &(sign(i - 1) / int(i as i64)));
        }
        assert_eq!(l.exp().unwrap(), fps(&[int(1), int(1)], n));
        assert!(Fps::one(n).exp().is_err());
        assert!(Fps::t(n).log().is_err());

        let one_t = fps(&[int(1), int(1)], 4);
        assert_eq!(
            one_t.pow_rational(&int(2)).unwrap(),
            fps(&[int(1), int(2), int(1)], 4)
        );
        let q = fps(&[int(1), int(0), ratio(1, 4)], 4);
        assert_eq!(
            q.pow_rational(&ratio(1, 2)).unwrap(),
            fps(&[int(1), int(0), ratio(1, 8), int(0), ratio(-1, 128)], 4)
        );
        let el = degenerate_expm1(&ratio(1, 2), 2).unwrap();
        assert_eq!(&el + &Fps::one(2), fps(&[int(1), int(1), ratio(1, 4)], 2));
        assert!(Fps::t(3).pow_rational(&ratio(1, 2)).is_err());
    }

    #[test]
    fn central_root_squares_back() {
        let n = 12;
        let s = central_root(n).unwrap();
        let sqrt = (&s - &Fps::monomial(1, ratio(1, 2), n)).scale(&int(2));
        assert_eq!(&sqrt * &sqrt, fps(&[int(4), int(0), int(1)], n));
        // u - 1/u = t
        assert_eq!(&s - &s.inverse().unwrap(), Fps::t(n));
    }

    #[test]
    fn degenerate_pair_is_inverse() {
        for lambda in [ratio(1, 2), ratio(-1, 3), int(2), int(0)] {
            let e = degenerate_expm1(&lambda, 10).unwrap();
            let l = degenerate_log1p(&lambda, 10).unwrap();
            assert_eq!(e.compose(&l).unwrap(), Fps::t(10), "λ = {lambda}");
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
    }

    fn delta_series(order: usize) -> impl Strategy<Value = Fps> {
        (
            small_rational().prop_filter("nonzero", |r| r != &int(0)),
            prop::collection::vec(small_rational(), order - 1),
        )
            .prop_map(move |(lead, rest)| {
                let mut c = vec![int(0), lead];
                c.extend(rest);
                Fps::new(c, order)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn revert_is_two_sided_inverse(f in delta_series(12)) {
            let g = f.revert().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), Fps::t(12));
            prop_assert_eq!(g.compose(&f).unwrap(), Fps::t(12));
        }

        #[test]
        fn exp_log_round_trip(f in delta_series(9)) {
            prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
        }

        #[test]
        fn rational_powers_add(
            c in prop::collection::vec(small_rational(), 6),
            a in small_rational(),
            b in small_rational(),
        ) {
            let mut cs = vec![int(1)];
            cs.extend(c);
            let f = Fps::new(cs, 6);
            let lhs = f.pow_rational(&(&a + &b)).unwrap();
            let rhs = &f.pow_rational(&a).unwrap() * &f.pow_rational(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
