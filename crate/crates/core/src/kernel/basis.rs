//! Factorial-type polynomial bases and conversion between triangular bases.

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{factorial, int, ratio, Rational};
use crate::error::{Error, Result};

/// Generalized falling factorial `x(x-λ)...(x-(n-1)λ)`; `1` for `n = 0`.
pub fn falling_factorial(n: usize, lambda: &Rational) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::linear(-(lambda * int(i as i64)))
    })
}

/// Generalized rising factorial `x(x+λ)...(x+(n-1)λ)`; `1` for `n = 0`.
pub fn rising_factorial(n: usize, lambda: &Rational) -> Polynomial {
    (0..n).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::linear(lambda * int(i as i64))
    })
}

/// Central factorial `x^{[n,λ]} = x (x + (n/2 - 1)λ)_{n-1,λ}`; `1` for `n = 0`.
/// `λ = 1` gives the ordinary central factorial `x^{[n]}`.
pub fn central_factorial(n: usize, lambda: &Rational) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let offset = (ratio(n as i64, 2) - int(1)) * lambda;
    let inner = falling_factorial(n - 1, lambda).shift(&offset);
    &Polynomial::x() * &inner
}

/// The binomial polynomial `C(x + c, n) = (x + c)_n / n!`.
pub fn binomial_poly(c: &Rational, n: usize) -> Polynomial {
    falling_factorial(n, &Rational::one())
        .shift(c)
        .scale(&factorial(n).recip())
}

/// Expresses `p` in a basis whose `k`-th element has degree exactly `k`.
///
/// Returns `c_0..c_d` (`d = deg p`, empty for `p = 0`) with
/// `p = Σ c_k basis[k]`. Elimination runs from the top degree down.
pub fn express_in_basis(p: &Polynomial, basis: &[Polynomial]) -> Result<Vec<Rational>> {
    let Some(d) = p.degree() else {
        return Ok(Vec::new());
    };
    if basis.len() <= d {
        return Err(Error::Precondition(format!(
            "basis has {} elements, need {}",
            basis.len(),
            d + 1
        )));
    }
    for (k, b) in basis.iter().take(d + 1).enumerate() {
        if b.degree() != Some(k) {
            return Err(Error::Precondition(format!(
                "basis element {k} has degree {:?}",
                b.degree()
            )));
        }
    }
    let mut rem = p.clone();
    let mut out = vec![Rational::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rem.coeff(k) / basis[k].leading();
        if !c.is_zero() {
            rem = &rem - &basis[k].scale(&c);
        }
        out[k] = c;
    }
    debug_assert!(rem.is_zero());
    Ok(out)
}

/// Row `n` of the change-of-basis triangle: `source[n]` expanded in `target`,
/// padded with zeros to length `n + 1`.
pub fn conversion_row(
    source: &Polynomial,
    target: &[Polynomial],
    n: usize,
) -> Result<Vec<Rational>> {
    let mut row = express_in_basis(source, target)?;
    row.resize(n + 1, Rational::zero());
    Ok(row)
}
