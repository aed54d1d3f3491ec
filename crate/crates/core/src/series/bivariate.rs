use super::Fps;
use crate::error::{Error, Result};
use crate::kernel::{int, pow_i, Polynomial, Rational};

/// Truncated power series in `t` whose coefficients are polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    coeffs: Vec<Polynomial>,
}

impl PolySeries {
    pub fn new(mut coeffs: Vec<Polynomial>, order: usize) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        PolySeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Polynomial::one()], order)
    }

    pub fn from_fps(f: &Fps) -> Self {
        PolySeries {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| Polynomial::constant(c.clone()))
                .collect(),
        }
    }

    /// `f(c(x) t)`: the coefficient of `t^n` becomes `f_n c(x)^n`.
    pub fn substitute_scaled(f: &Fps, c: &Polynomial) -> Self {
        let mut pow = Polynomial::one();
        let mut out = Vec::with_capacity(f.trunc_order() + 1);
        for a in f.coeffs() {
            out.push(pow.scale(a));
            pow = &pow * c;
        }
        PolySeries { coeffs: out }
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Polynomial {
        &self.coeffs[n]
    }

    pub fn add(&self, rhs: &PolySeries) -> PolySeries {
        let n = self.trunc_order().min(rhs.trunc_order());
        PolySeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolySeries) -> PolySeries {
        let n = self.trunc_order().min(rhs.trunc_order());
        PolySeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, rhs: &PolySeries) -> PolySeries {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut out = vec![Polynomial::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        PolySeries { coeffs: out }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Exact coefficientwise division by a polynomial; errors if any
    /// coefficient leaves a remainder.
    pub fn div_poly_exact(&self, p: &Polynomial) -> Result<PolySeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(p)?;
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::Precondition(format!("{c} is not divisible by {p}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(PolySeries { coeffs })
    }

    /// `outer(self)` for a scalar series `outer`; `self` needs a zero
    /// constant term.
    pub fn compose_into(&self, outer: &Fps) -> Result<PolySeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InnerNotDelta);
        }
        let order = self.trunc_order().min(outer.trunc_order());
        let inner = PolySeries {
            coeffs: self.coeffs[..=order].to_vec(),
        };
        let mut acc = PolySeries::new(Vec::new(), order);
        for c in outer.coeffs()[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + &Polynomial::constant(c.clone());
        }
        Ok(acc)
    }

    /// `exp(self)` for zero constant term.
    pub fn exp(&self) -> Result<PolySeries> {
        self.compose_into(&Fps::exp_linear(&int(1), self.trunc_order()))
    }

    /// `1 / (1 - self)` for zero constant term, as a geometric series.
    pub fn geometric(&self) -> Result<PolySeries> {
        let n = self.trunc_order();
        self.compose_into(&Fps::from_fn(n, |_| int(1)))
    }

    /// Coefficient of `t^n` times `scale^n`, handy for EGF extraction.
    pub fn scaled_coeff(&self, n: usize, scale: &Rational) -> Polynomial {
        self.coeffs[n].scale(&pow_i(scale, n as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::factorial;

    #[test]
    fn exp_of_xt_gives_monomials() {
        let xt = PolySeries::new(vec![Polynomial::zero(), Polynomial::x()], 6);
        let e = xt.exp().unwrap();
        for n in 0..=6 {
            assert_eq!(
                e.coeff(n).scale(&factorial(n)),
                Polynomial::monomial(n, int(1))
            );
        }
    }

    #[test]
    fn geometric_inverts() {
        let s = PolySeries::new(
            vec![Polynomial::zero(), Polynomial::x(), Polynomial::one()],
            5,
        );
        let g = s.geometric().unwrap();
        let back = g.mul(&PolySeries::one(5).sub(&s));
        assert_eq!(back, PolySeries::one(5));
    }
}
