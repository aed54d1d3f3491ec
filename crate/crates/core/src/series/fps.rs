use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{factorial, int, Polynomial, Rational};

/// Truncated power series `Σ_{i <= N} c_i t^i` over the rationals.
///
/// `coeffs.len() == trunc_order + 1` always; every coefficient up to
/// `t^{trunc_order}` is exact, nothing beyond it is known. Binary operations
/// keep the smaller of the two truncation orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fps {
    coeffs: Vec<Rational>,
}

impl Fps {
    /// Pads with zeros or truncates so that the series is valid to `order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Fps { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(1, Rational::one(), order)
    }

    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, order)
    }

    pub fn from_poly(p: &Polynomial, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    /// Builds from exponential-generating-function coefficients:
    /// `Σ a_n t^n / n!`.
    pub fn from_egf(a: &[Rational], order: usize) -> Self {
        Self::new(
            a.iter()
                .enumerate()
                .map(|(n, v)| v / factorial(n))
                .collect(),
            order,
        )
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        Fps {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `e^{c t}`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for n in 0..=order {
            out.push(term.clone());
            term = term * c / int(n as i64 + 1);
        }
        Fps { coeffs: out }
    }

    /// `log(1 + t)`.
    pub fn log1p(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                crate::kernel::sign(n - 1) / int(n as i64)
            }
        })
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`. Panics past the truncation order.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// `n! [t^n]`, the coefficient of `t^n / n!`.
    pub fn egf_coeff(&self, n: usize) -> Rational {
        &self.coeffs[n] * factorial(n)
    }

    /// Smallest exponent with a nonzero coefficient, `None` if the known
    /// part is identically zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_delta(&self) -> bool {
        self.trunc_order() >= 1 && self.coeffs[0].is_zero() && !self.coeffs[1].is_zero()
    }

    pub fn truncate(&self, order: usize) -> Fps {
        assert!(
            order <= self.trunc_order(),
            "cannot extend a truncated series"
        );
        Fps {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Fps {
        Fps {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `f(a t)`.
    pub fn scale_arg(&self, a: &Rational) -> Fps {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= a;
        }
        Fps { coeffs: out }
    }

    /// Formal derivative; valid one order lower than `self`.
    pub fn derivative(&self) -> Fps {
        if self.trunc_order() == 0 {
            return Fps::zero(0);
        }
        Fps {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Fps {
        let mut acc = Fps::one(self.trunc_order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Fps> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::OrderUnderflow {
                divisor: self.valuation().unwrap_or(self.trunc_order() + 1),
                dividend: 0,
            });
        }
        let inv0 = c0.recip();
        let n = self.trunc_order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for i in 1..=n {
            let s = (1..=i).fold(Rational::zero(), |acc, j| {
                acc + &self.coeffs[j] * &out[i - j]
            });
            out.push(-s * &inv0);
        }
        Ok(Fps { coeffs: out })
    }

    /// `self / divisor`. When the divisor has order `v > 0` the dividend must
    /// vanish to order `v` as well; the result then loses `v` orders.
    pub fn div(&self, divisor: &Fps) -> Result<Fps> {
        let v = divisor.valuation().ok_or(Error::ZeroDivisor)?;
        if v > 0 {
            let dividend = self.valuation().unwrap_or(self.trunc_order() + 1);
            if dividend < v {
                return Err(Error::OrderUnderflow {
                    divisor: v,
                    dividend,
                });
            }
            if self.trunc_order() < v {
                return Err(Error::InsufficientOrder {
                    needed: v,
                    available: self.trunc_order(),
                });
            }
        }
        let a = Fps {
            coeffs: self.coeffs[v..].to_vec(),
        };
        let b = Fps {
            coeffs: divisor.coeffs[v..].to_vec(),
        };
        let order = a.trunc_order().min(b.trunc_order());
        Ok(&a.truncate(order) * &b.truncate(order).inverse()?)
    }

    /// `self(inner(t))` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Fps) -> Result<Fps> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InnerNotDelta);
        }
        let order = self.trunc_order().min(inner.trunc_order());
        let inner = inner.truncate(order);
        let mut acc = Fps::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series, to the same order.
    ///
    /// Newton iteration `g <- g - (f(g) - t) / f'(g)`; each step doubles the
    /// number of correct coefficients.
    pub fn revert(&self) -> Result<Fps> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let n = self.trunc_order();
        // f' is only known to order n-1; the missing t^n term of f' only
        // affects the correction beyond t^n, so padding with zero is exact.
        let df = Fps::new(self.derivative().coeffs, n);
        let t = Fps::t(n);
        let mut g = Fps::monomial(1, self.coeffs[1].recip(), n);
        let mut correct = 1;
        while correct < n {
            let residual = &self.compose(&g)? - &t;
            let slope = df.compose(&g)?;
            g = &g - &residual.div(&slope)?;
            correct *= 2;
        }
        Ok(g)
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<Fps> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        let n = self.trunc_order();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        // m e_m = Σ_{k=1}^m k f_k e_{m-k}
        for m in 1..=n {
            let s = (1..=m).fold(Rational::zero(), |acc, k| {
                acc + &self.coeffs[k] * int(k as i64) * &e[m - k]
            });
            e.push(s / int(m as i64));
        }
        Ok(Fps { coeffs: e })
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<Fps> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.trunc_order();
        let mut l = vec![Rational::zero(); n + 1];
        // m l_m = m f_m - Σ_{k=1}^{m-1} k l_k f_{m-k}
        for m in 1..=n {
            let s = (1..m).fold(Rational::zero(), |acc, k| {
                acc + int(k as i64) * &l[k] * &self.coeffs[m - k]
            });
            l[m] = (int(m as i64) * &self.coeffs[m] - s) / int(m as i64);
        }
        Ok(Fps { coeffs: l })
    }

    /// `f^e` for rational `e`, constant term of `f` must be 1.
    ///
    /// Uses `f P' = e f' P`, i.e. `m P_m = Σ_{k=1}^m ((e+1)k - m) f_k P_{m-k}`.
    pub fn pow_rational(&self, e: &Rational) -> Result<Fps> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.trunc_order();
        let e1 = e + Rational::one();
        let mut p: Vec<Rational> = Vec::with_capacity(n + 1);
        p.push(Rational::one());
        for m in 1..=n {
            let s = (1..=m).fold(Rational::zero(), |acc, k| {
                acc + (&e1 * int(k as i64) - int(m as i64)) * &self.coeffs[k] * &p[m - k]
            });
            p.push(s / int(m as i64));
        }
        Ok(Fps { coeffs: p })
    }

    /// `f(-t) = -f(t)` on the known coefficients.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }
}

impl Add for &Fps {
    type Output = Fps;
    fn add(self, rhs: &Fps) -> Fps {
        let n = self.trunc_order().min(rhs.trunc_order());
        Fps {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &Fps {
    type Output = Fps;
    fn sub(self, rhs: &Fps) -> Fps {
        let n = self.trunc_order().min(rhs.trunc_order());
        Fps {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Mul for &Fps {
    type Output = Fps;
    fn mul(self, rhs: &Fps) -> Fps {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Fps { coeffs: out }
    }
}

impl Neg for &Fps {
    type Output = Fps;
    fn neg(self) -> Fps {
        Fps {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Fps {
            type Output = Fps;
            fn $m(self, rhs: Fps) -> Fps { (&self).$m(&rhs) }
        }
        impl $tr<&Fps> for Fps {
            type Output = Fps;
            fn $m(self, rhs: &Fps) -> Fps { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Fps {
    type Output = Fps;
    fn neg(self) -> Fps {
        -&self
    }
}
