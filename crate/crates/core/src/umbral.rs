//! Linear functionals and operators given by power series, Sheffer pairs and
//! their polynomial sequences.
//!
//! A series `f(t) = Σ a_k t^k / k!` acts on polynomials in two ways: as the
//! functional `⟨f(t) | x^n⟩ = a_n` and as the operator `t^k x^n = (n)_k x^{n-k}`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{binomial, factorial, int, ratio, Polynomial, Rational};
use crate::report::Check;
use crate::series::{Fps, PolySeries};

/// `⟨f(t) | p(x)⟩ = Σ_k [t^k]f · k! · [x^k]p`.
pub fn functional_apply(f: &Fps, p: &Polynomial) -> Result<Rational> {
    let Some(d) = p.degree() else {
        return Ok(Rational::zero());
    };
    if f.trunc_order() < d {
        return Err(Error::InsufficientOrder {
            needed: d,
            available: f.trunc_order(),
        });
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (k, c)| {
            acc + f.coeff(k) * factorial(k) * c
        }))
}

/// `f(t) p(x) = Σ_k [t^k]f · D^k p`.
pub fn operator_apply(f: &Fps, p: &Polynomial) -> Result<Polynomial> {
    let Some(d) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    if f.trunc_order() < d {
        return Err(Error::InsufficientOrder {
            needed: d,
            available: f.trunc_order(),
        });
    }
    let mut out = Polynomial::zero();
    let mut deriv = p.clone();
    for k in 0..=d {
        if !f.coeff(k).is_zero() {
            out = &out + &deriv.scale(f.coeff(k));
        }
        deriv = deriv.derivative();
    }
    Ok(out)
}

/// A series supplied to any requested truncation order.
pub type SeriesFn = Arc<dyn Fn(usize) -> Result<Fps> + Send + Sync>;

/// `(g, f)` with `g` invertible and `f` a delta series.
#[derive(Clone)]
pub struct ShefferPair {
    g: SeriesFn,
    f: SeriesFn,
}

impl fmt::Debug for ShefferPair {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = (self.g)(3).map(|s| s.coeffs().to_vec());
        let f = (self.f)(3).map(|s| s.coeffs().to_vec());
        fmt.debug_struct("ShefferPair")
            .field("g", &g)
            .field("f", &f)
            .finish()
    }
}

impl ShefferPair {
    pub fn new<G, F>(g: G, f: F) -> Result<Self>
    where
        G: Fn(usize) -> Result<Fps> + Send + Sync + 'static,
        F: Fn(usize) -> Result<Fps> + Send + Sync + 'static,
    {
        let pair = ShefferPair {
            g: Arc::new(g),
            f: Arc::new(f),
        };
        let g2 = pair.g(2)?;
        let f2 = pair.f(2)?;
        if g2.coeff(0).is_zero() {
            return Err(Error::InvalidPair("g has zero constant term".into()));
        }
        if !f2.coeff(0).is_zero() {
            return Err(Error::InvalidPair("f has nonzero constant term".into()));
        }
        if f2.coeff(1).is_zero() {
            return Err(Error::InvalidPair("f has zero linear term".into()));
        }
        Ok(pair)
    }

    /// Associated pair `(1, f)`.
    pub fn associated<F>(f: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Fps> + Send + Sync + 'static,
    {
        Self::new(|n| Ok(Fps::one(n)), f)
    }

    pub fn g(&self, order: usize) -> Result<Fps> {
        (self.g)(order)
    }

    pub fn f(&self, order: usize) -> Result<Fps> {
        (self.f)(order)
    }

    /// Compositional inverse of `f`.
    pub fn fbar(&self, order: usize) -> Result<Fps> {
        self.f(order)?.revert()
    }

    /// `(1, f)`, sharing `f`.
    pub fn to_associated(&self) -> ShefferPair {
        ShefferPair {
            g: Arc::new(|n| Ok(Fps::one(n))),
            f: self.f.clone(),
        }
    }

    /// `g = 1` on every coefficient up to `order`.
    pub fn is_associated(&self, order: usize) -> Result<bool> {
        Ok(self.g(order)? == Fps::one(order))
    }

    /// `1 / g(f̄(t))`.
    pub fn ginv_fbar(&self, order: usize) -> Result<Fps> {
        self.g(order)?.compose(&self.fbar(order)?)?.inverse()
    }
}

/// `s_0..s_N` from `(1/g(f̄(t))) e^{x f̄(t)} = Σ s_n(x) t^n / n!`.
///
/// The coefficient of `x^j` in `s_n` is `n!/j! [t^n] (1/g(f̄)) f̄^j`.
pub fn sheffer_polys(pair: &ShefferPair, max_n: usize) -> Result<Vec<Polynomial>> {
    let fbar = pair.fbar(max_n)?;
    let ginv = pair.ginv_fbar(max_n)?;
    let mut cols = Vec::with_capacity(max_n + 1);
    let mut term = ginv;
    for j in 0..=max_n {
        cols.push(term.scale(&factorial(j).recip()));
        term = &term * &fbar;
    }
    Ok((0..=max_n)
        .map(|n| {
            let nf = factorial(n);
            Polynomial::new((0..=n).map(|j| cols[j].coeff(n) * &nf).collect())
        })
        .collect())
}

/// Same sequence through `s_{n+1} = (x - g'(t)/g(t)) (1/f'(t)) s_n`.
pub fn sheffer_polys_recurrence(pair: &ShefferPair, max_n: usize) -> Result<Vec<Polynomial>> {
    // Derivatives lose one order, so request one more.
    let g = pair.g(max_n + 1)?;
    let f = pair.f(max_n + 1)?;
    let u = g.derivative().div(&g.truncate(max_n))?;
    let h = f.derivative().inverse()?;
    let mut out = vec![Polynomial::constant(g.coeff(0).recip())];
    for n in 0..max_n {
        let hs = operator_apply(&h, &out[n])?;
        let next = &(&Polynomial::x() * &hs) - &operator_apply(&u, &hs)?;
        out.push(next);
    }
    Ok(out)
}

/// Same sequence through functionals:
/// `s_n = Σ_j (1/j!) ⟨g(f̄)^{-1} f̄^j | x^n⟩ x^j`.
pub fn sheffer_polys_functional(pair: &ShefferPair, max_n: usize) -> Result<Vec<Polynomial>> {
    let fbar = pair.fbar(max_n)?;
    let ginv = pair.ginv_fbar(max_n)?;
    let mut funcs = Vec::with_capacity(max_n + 1);
    let mut term = ginv;
    for _ in 0..=max_n {
        funcs.push(term.clone());
        term = &term * &fbar;
    }
    (0..=max_n)
        .map(|n| {
            let xn = Polynomial::monomial(n, int(1));
            let coeffs = (0..=n)
                .map(|j| Ok(functional_apply(&funcs[j], &xn)? / factorial(j)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::new(coeffs))
        })
        .collect()
}

/// `c_k` with `p = Σ c_k s_k`, from `c_k = ⟨g(t) f(t)^k | p(x)⟩ / k!`.
pub fn expand_in_sheffer(p: &Polynomial, pair: &ShefferPair) -> Result<Vec<Rational>> {
    let Some(d) = p.degree() else {
        return Ok(Vec::new());
    };
    let g = pair.g(d)?;
    let f = pair.f(d)?;
    let mut term = g;
    let mut out = Vec::with_capacity(d + 1);
    for k in 0..=d {
        out.push(functional_apply(&term, p)? / factorial(k));
        term = &term * &f;
    }
    Ok(out)
}

/// Sample points for two-variable identities, past any degree bound used here.
pub fn sample_points() -> [(Rational, Rational); 5] {
    [
        (ratio(1, 2), ratio(-2, 3)),
        (int(3), ratio(1, 5)),
        (ratio(-7, 4), int(2)),
        (ratio(5, 3), ratio(5, 3)),
        (int(0), int(-3)),
    ]
}

/// The standard property checks for one pair, for `n, k <= max_n`.
pub fn pair_checks(pair: &ShefferPair, max_n: usize) -> Vec<Check> {
    let range = [0, max_n];
    let s = match sheffer_polys(pair, max_n) {
        Ok(s) => s,
        Err(e) => {
            return vec![Check::run("sheffer.generate", range, |_| Err(e))];
        }
    };
    let mut checks = Vec::new();

    checks.push(Check::run("umbral.biorthogonality", range, |b| {
        let g = pair.g(max_n)?;
        let f = pair.f(max_n)?;
        let mut term = g;
        for k in 0..=max_n {
            for (n, sn) in s.iter().enumerate() {
                let want = if n == k {
                    factorial(n)
                } else {
                    Rational::zero()
                };
                b.compare(n, k, &want, &functional_apply(&term, sn)?);
            }
            term = &term * &f;
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.delta_lowers", range, |b| {
        let f = pair.f(max_n)?;
        for n in 1..=max_n {
            let got = operator_apply(&f, &s[n])?;
            let want = s[n - 1].scale(&int(n as i64));
            b.compare_display(n, n - 1, &want, &got);
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.binomial", range, |b| {
        let g = pair.g(max_n)?;
        let q = s
            .iter()
            .map(|sn| operator_apply(&g, sn))
            .collect::<Result<Vec<_>>>()?;
        for (n, sn) in s.iter().enumerate() {
            for (i, (x, y)) in sample_points().iter().enumerate() {
                let lhs = sn.eval(&(x + y));
                let rhs = (0..=n).fold(Rational::zero(), |acc, j| {
                    acc + binomial(n, j) * s[j].eval(x) * q[n - j].eval(y)
                });
                b.compare(n, i, &lhs, &rhs);
            }
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.associated_factor", range, |b| {
        let ginv = pair.g(max_n)?.inverse()?;
        let q = sheffer_polys(&pair.to_associated(), max_n)?;
        for n in 0..=max_n {
            let got = operator_apply(&ginv, &q[n])?;
            b.compare_display(n, n, &s[n], &got);
        }
        // f = t: s_n = (1/g) x^n
        if pair.f(max_n)? == Fps::t(max_n) {
            for (n, sn) in s.iter().enumerate() {
                let got = operator_apply(&ginv, &Polynomial::monomial(n, int(1)))?;
                b.compare_display(n, 0, sn, &got);
            }
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.functional_expansion", range, |b| {
        for (n, (a, c)) in s
            .iter()
            .zip(sheffer_polys_functional(pair, max_n)?)
            .enumerate()
        {
            b.compare_display(n, 0, a, &c);
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.recurrence", range, |b| {
        for (n, (a, c)) in s
            .iter()
            .zip(sheffer_polys_recurrence(pair, max_n)?)
            .enumerate()
        {
            b.compare_display(n, 0, a, &c);
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.scaling", range, |b| {
        let g = pair.g(max_n)?;
        let f = pair.f(max_n)?;
        let scales = [ratio(1, 2), ratio(-2, 3), int(3)];
        let mut h = g;
        for k in 0..=max_n {
            for (i, a) in scales.iter().enumerate() {
                let p = &s[max_n - k];
                let lhs = functional_apply(&h.scale_arg(a), p)?;
                let rhs = functional_apply(&h, &p.scale_arg(a))?;
                b.compare(k, i, &lhs, &rhs);
            }
            h = &h * &f;
        }
        Ok(())
    }));

    checks.push(Check::run("umbral.expand_round_trip", range, |b| {
        for n in 0..=max_n {
            let c = expand_in_sheffer(&s[n], pair)?;
            for (k, ck) in c.iter().enumerate() {
                let want = if k == n {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                b.compare(n, k, &want, ck);
            }
            let p = Polynomial::monomial(n, int(1));
            let back: Polynomial = expand_in_sheffer(&p, pair)?
                .iter()
                .zip(&s)
                .map(|(c, sk)| sk.scale(c))
                .sum();
            b.compare_display(n, n, &p, &back);
        }
        Ok(())
    }));

    checks
}

/// Sheffer polynomials from a bivariate generating function
/// `A(t) e^{x B(t)}`, used as an independent check for `sheffer_polys`.
pub fn polys_from_bivariate(a: &Fps, b: &Fps) -> Result<Vec<Polynomial>> {
    let order = a.trunc_order().min(b.trunc_order());
    let xb = PolySeries::from_fps(b).mul_poly(&Polynomial::x());
    let gf = PolySeries::from_fps(a).mul(&xb.exp()?);
    Ok((0..=order)
        .map(|n| gf.coeff(n).scale(&factorial(n)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::falling_factorial;
    use crate::series::expm1_scaled;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn expm1(n: usize) -> Fps {
        expm1_scaled(&int(1), n)
    }

    #[test]
    fn functional_examples() {
        for n in 0..6 {
            for k in 0..6 {
                let want = if n == k { factorial(n) } else { int(0) };
                let got = functional_apply(
                    &Fps::monomial(k, int(1), 6),
                    &Polynomial::monomial(n, int(1)),
                );
                assert_eq!(got.unwrap(), want);
            }
        }
        let e2t = Fps::exp_linear(&int(2), 4);
        assert_eq!(functional_apply(&e2t, &p(&[-1, 0, 1])).unwrap(), int(3));
        let sq = &expm1(4) * &expm1(4);
        assert_eq!(functional_apply(&sq, &p(&[0, 0, 1])).unwrap(), int(2));
        assert!(matches!(
            functional_apply(&Fps::one(1), &p(&[0, 0, 1])),
            Err(Error::InsufficientOrder {
                needed: 2,
                available: 1
            })
        ));
    }

    #[test]
    fn operator_examples() {
        let t2 = Fps::monomial(2, int(1), 3);
        assert_eq!(operator_apply(&t2, &p(&[0, 0, 0, 1])).unwrap(), p(&[0, 6]));
        let et = Fps::exp_linear(&int(1), 3);
        assert_eq!(operator_apply(&et, &p(&[0, 0, 1])).unwrap(), p(&[1, 2, 1]));
        let avg = expm1(3).div(&Fps::t(3)).unwrap();
        assert_eq!(
            operator_apply(&avg, &Polynomial::x()).unwrap(),
            Polynomial::new(vec![ratio(1, 2), int(1)])
        );
    }

    #[test]
    fn sheffer_examples() {
        let ident = ShefferPair::associated(|n| Ok(Fps::t(n))).unwrap();
        for (n, s) in sheffer_polys(&ident, 6).unwrap().iter().enumerate() {
            assert_eq!(s, &Polynomial::monomial(n, int(1)));
        }
        let bern =
            ShefferPair::new(|n| expm1(n + 1).div(&Fps::t(n + 1)), |n| Ok(Fps::t(n))).unwrap();
        assert_eq!(
            sheffer_polys(&bern, 1).unwrap()[1],
            Polynomial::new(vec![ratio(-1, 2), int(1)])
        );
        let ff = ShefferPair::associated(|n| Ok(expm1(n))).unwrap();
        assert_eq!(sheffer_polys(&ff, 3).unwrap()[3], p(&[0, 2, -3, 1]));
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(ShefferPair::new(|n| Ok(Fps::zero(n)), |n| Ok(Fps::t(n))).is_err());
        assert!(ShefferPair::associated(|n| Ok(Fps::one(n))).is_err());
        assert!(ShefferPair::associated(|n| Ok(Fps::monomial(2, int(1), n))).is_err());
    }

    #[test]
    fn expansion_examples() {
        let ff = ShefferPair::associated(|n| Ok(expm1(n))).unwrap();
        assert_eq!(
            expand_in_sheffer(&Polynomial::monomial(4, int(1)), &ff).unwrap(),
            vec![int(0), int(1), int(7), int(6), int(1)]
        );
        let ident = ShefferPair::associated(|n| Ok(Fps::t(n))).unwrap();
        assert_eq!(
            expand_in_sheffer(&falling_factorial(3, &int(1)), &ident).unwrap(),
            vec![int(0), int(2), int(-3), int(1)]
        );
    }

    #[test]
    fn all_routes_agree_for_a_mixed_pair() {
        let pair = ShefferPair::new(
            |n| Ok(Fps::exp_linear(&ratio(-3, 2), n)),
            |n| Ok(expm1_scaled(&ratio(1, 2), n)),
        )
        .unwrap();
        for c in pair_checks(&pair, 8) {
            assert!(c.passed(), "{c:?}");
        }
        let fbar = pair.fbar(8).unwrap();
        let a = pair.ginv_fbar(8).unwrap();
        assert_eq!(
            polys_from_bivariate(&a, &fbar).unwrap(),
            sheffer_polys(&pair, 8).unwrap()
        );
    }
}
