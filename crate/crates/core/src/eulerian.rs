//! Eulerian numbers, classical and associated with a polynomial family.
//!
//! Rows are padded to length `n + 1` with `A_{n,n} = 0` for `n >= 1` and
//! `A_{0,0} = 1`, so classical and associated tables share one shape. The
//! associated numbers are the coefficients of `p_n` in the basis
//! `C(x+n-k-1, n)`.

use num_traits::{One, Zero};

use crate::associated::{bar_transform, s2_triangle};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::families::Family;
use crate::kernel::{
    binomial, binomial_i, binomial_poly, factorial, format_rational, int, pow_i, sign, Polynomial,
    Rational, Triangle,
};
use crate::numbers;
use crate::report::{Check, CheckBuilder};
use crate::series::{Fps, PolySeries};

/// Largest `n` the permutation enumeration accepts.
pub const ORACLE_MAX_N: usize = 9;

/// Classical rows `A_0..A_7` as commonly tabulated.
pub const LISTED_ROWS: [&[i64]; 8] = [
    &[1],
    &[1],
    &[1, 1],
    &[1, 4, 1],
    &[1, 11, 11, 1],
    &[1, 26, 66, 26, 1],
    &[1, 57, 302, 302, 57, 1],
    &[1, 120, 1191, 2416, 1191, 120, 1],
];

const NOT_VANISHING: &str = "p_n(0) ≠ 0";

/// `A_{n,k} = (k+1) A_{n-1,k} + (n-k) A_{n-1,k-1}`, `A_{n,0} = 1`.
pub fn classical_recurrence(max_n: usize) -> Triangle {
    let mut rows: Vec<Vec<Rational>> = vec![vec![int(1)]];
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let at = |k: i64| {
            usize::try_from(k)
                .ok()
                .and_then(|k| prev.get(k))
                .cloned()
                .unwrap_or_default()
        };
        let mut row = vec![Rational::zero(); n + 1];
        row[0] = int(1);
        for k in 1..n {
            let k = k as i64;
            row[k as usize] = int(k + 1) * at(k) + int(n as i64 - k) * at(k - 1);
        }
        rows.push(row);
    }
    Triangle::from_rows("eulerian", rows).expect("triangular rows")
}

/// `A_{n,k} = Σ_{i<=k} (-1)^i (k+1-i)^n C(n+1,i)`.
pub fn classical_explicit(max_n: usize) -> Triangle {
    Triangle::from_fn("eulerian_explicit", max_n, |n, k| {
        if n > 0 && k == n {
            return Ok(Rational::zero());
        }
        Ok((0..=k).fold(Rational::zero(), |acc, i| {
            acc + sign(i) * pow_i(&int((k + 1 - i) as i64), n as i64) * binomial(n + 1, i)
        }))
    })
    .expect("triangular rows")
}

/// `A_{n,k}` by the triangle recurrence, cross-checked by the explicit sum.
pub fn eulerian_classical(n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let a = classical_recurrence(n).get(n, k)?.clone();
    let b = classical_explicit(n).get(n, k)?.clone();
    if a != b {
        return Err(Error::RouteMismatch {
            what: "classical Eulerian".into(),
            n,
            k,
            left: format_rational(&a),
            right: format_rational(&b),
        });
    }
    Ok(a)
}

/// `A_0(x)..A_N(x)`.
pub fn classical_polys(max_n: usize) -> Vec<Polynomial> {
    let t = classical_recurrence(max_n);
    t.rows()
        .iter()
        .map(|r| Polynomial::new(r.clone()))
        .collect()
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Number of permutations of `[n]` with each descent count, padded to
/// length `n + 1`. Work is split by the first entry.
pub fn descent_counts(n: usize, strategy: Strategy) -> Result<Vec<u64>> {
    if n == 0 || n > ORACLE_MAX_N {
        return Err(Error::OracleLimit {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let firsts: Vec<u8> = (0..n as u8).collect();
    let partials = exec::map_with(strategy, firsts, |first| {
        let mut counts = vec![0u64; n + 1];
        let mut rest: Vec<u8> = (0..n as u8).filter(|&x| x != first).collect();
        loop {
            let mut d = usize::from(rest.first().is_some_and(|&r| first > r));
            d += rest.windows(2).filter(|w| w[0] > w[1]).count();
            counts[d] += 1;
            if !next_permutation(&mut rest) {
                break;
            }
        }
        counts
    });
    let mut total = vec![0u64; n + 1];
    for p in partials {
        for (t, c) in total.iter_mut().zip(p) {
            *t += c;
        }
    }
    Ok(total)
}

/// Permutations of `[n]` with exactly `k` descents.
pub fn descent_oracle(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    Ok(descent_counts(n, Strategy::default())?[k])
}

/// `A_{n,k}(P) = Σ_{l<=k} (-1)^l C(n+1,l) p_n(k-l+1)`.
pub fn assoc_triangle(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    let mut t = Triangle::from_fn(format!("{}:eulerian", fam.id), max_n, |n, k| {
        Ok((0..=k).fold(Rational::zero(), |acc, l| {
            acc + sign(l) * binomial(n + 1, l) * ps[n].eval(&int((k - l + 1) as i64))
        }))
    })?;
    t.params = fam.params.clone();
    Ok(t)
}

pub fn eulerian_assoc(fam: &Family, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    Ok(assoc_triangle(fam, n)?.get(n, k)?.clone())
}

/// `A_n(x;P) = Σ_k A_{n,k}(P) x^k`.
pub fn eulerian_poly_assoc(fam: &Family, n: usize) -> Result<Polynomial> {
    Ok(Polynomial::new(
        assoc_triangle(fam, n)?.row(n).unwrap().to_vec(),
    ))
}

/// `A_n(x;P) = Σ_k p_{n,k} (1-x)^{n-k} A_k(x)`, through the classical
/// polynomials.
pub fn assoc_polys_via_monomials(fam: &Family, max_n: usize) -> Result<Vec<Polynomial>> {
    let ps = fam.polys(max_n)?;
    let a = classical_polys(max_n);
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    Ok(ps
        .iter()
        .enumerate()
        .map(|(n, p)| {
            (0..=n)
                .map(|k| (&one_minus_x.pow(n - k) * &a[k]).scale(&p.coeff(k)))
                .sum()
        })
        .collect())
}

/// Coefficients of `p_n` in the basis `C(x+n-k-1, n)`.
pub fn worpitzky_expand(fam: &Family, n: usize) -> Result<Vec<Rational>> {
    Ok(assoc_triangle(fam, n)?.row(n).unwrap().to_vec())
}

/// `Σ_k c_k C(x+n-k-1, n)`.
pub fn worpitzky_rebuild(coeffs: &[Rational], n: usize) -> Polynomial {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| binomial_poly(&int(n as i64 - k as i64 - 1), n).scale(c))
        .sum()
}

/// `n! [t^n]` of `e^F / g(F) / (1 - x H)`, where `F = f̄((1-x)t)` and
/// `H = (e^F - 1)/(1-x)`. This is the associated Eulerian GF with the
/// factor `1 - x` cancelled.
fn eulerian_gf_from(fbar: &Fps, ginv: &Fps, max_n: usize) -> Result<Vec<Polynomial>> {
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    let big_f = PolySeries::substitute_scaled(&fbar.truncate(max_n), &one_minus_x);
    let e_f = big_f.exp()?;
    let ginv_f = big_f.compose_into(&ginv.truncate(max_n))?;
    let h = e_f
        .sub(&PolySeries::one(max_n))
        .div_poly_exact(&one_minus_x)?;
    let geo = h.mul_poly(&Polynomial::x()).geometric()?;
    let gf = e_f.mul(&ginv_f).mul(&geo);
    Ok((0..=max_n)
        .map(|n| gf.coeff(n).scale(&factorial(n)))
        .collect())
}

/// `A_0(x;P)..A_N(x;P)` from the bivariate generating function.
pub fn eulerian_gf_assoc(fam: &Family, max_n: usize) -> Result<Vec<Polynomial>> {
    let pair = fam.pair()?;
    eulerian_gf_from(&pair.fbar(max_n)?, &pair.g(max_n)?.inverse()?, max_n)
}

/// Classical `(1-x)/(e^{t(x-1)} - x)`.
pub fn classical_gf(max_n: usize) -> Result<Vec<Polynomial>> {
    eulerian_gf_from(&Fps::t(max_n), &Fps::one(max_n), max_n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AFromS2,
    S2FromA,
}

fn require_vanishing(fam: &Family, n: usize) -> Result<()> {
    if fam.vanishes_at_zero(n)? {
        Ok(())
    } else {
        Err(Error::FrobeniusHypothesis(fam.id.clone()))
    }
}

/// `Σ_{j=1}^{k+1} j! S(n,j) C(n-j, k-j+1) (-1)^{k-j+1}` for a row of any
/// S2-like triangle.
fn a_from_s2(s2: &Triangle, n: usize, k: usize) -> Rational {
    let (n, k) = (n as i64, k as i64);
    (1..=k + 1).fold(Rational::zero(), |acc, j| {
        acc + factorial(j as usize)
            * s2.at(n, j)
            * binomial_i(n - j, k - j + 1)
            * pow_i(&int(-1), k - j + 1)
    })
}

/// `(1/k!) Σ_{j=1}^{k} C(n-j, k-j) A_{n,j-1}`.
fn s2_from_a(a: &Triangle, n: usize, k: usize) -> Rational {
    let (n, k) = (n as i64, k as i64);
    (1..=k).fold(Rational::zero(), |acc, j| {
        acc + binomial_i(n - j, k - j) * a.at(n, j - 1)
    }) / factorial(k as usize)
}

/// Converts between `A_{n,k}(P)` and `S2(n,k;P)` for families with
/// `p_n(0) = 0`. Needs `n >= 1`.
pub fn frobenius_bridge(fam: &Family, n: usize, k: usize, dir: Direction) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    if n == 0 {
        return Err(Error::Precondition(
            "the Frobenius bridge needs n >= 1".into(),
        ));
    }
    require_vanishing(fam, n)?;
    Ok(match dir {
        Direction::AFromS2 => a_from_s2(&s2_triangle(fam, n)?, n, k),
        Direction::S2FromA => s2_from_a(&assoc_triangle(fam, n)?, n, k),
    })
}

fn compare_polys(b: &mut CheckBuilder, n: usize, expected: &Polynomial, got: &Polynomial) {
    b.compare_rows(n, expected.coeffs(), got.coeffs());
}

/// First `m` coefficients of `A(x) / (1-x)^{n+1}`.
fn divided_series(a: &Polynomial, n: usize, m: usize) -> Vec<Rational> {
    (0..m)
        .map(|j| {
            (0..=j).fold(Rational::zero(), |acc, i| {
                acc + a.coeff(i) * binomial(n + j - i, j - i)
            })
        })
        .collect()
}

/// `A_n(x;P)/(1-x)^{n+1} = Σ_j x^j p_n(j+1)`, to `m` coefficients.
pub fn series_identity(fam: &Family, n: usize, m: usize) -> Check {
    Check::run("eulerian.power_series", [n, n], |b| {
        let a = eulerian_poly_assoc(fam, n)?;
        let p = fam.poly(n)?;
        let got = divided_series(&a, n, m);
        for (j, g) in got.iter().enumerate() {
            b.compare(n, j, &p.eval(&int(j as i64 + 1)), g);
        }
        Ok(())
    })
}

/// Bar-family recurrences: the polynomial form
/// `A_{n+1}(x;P̄) = (1+nx) A_n(x;P) + x(1-x) A_n'(x;P)` and the entrywise
/// `A_{n,k}(P̄) = (k+1) A_{n-1,k}(P) + (n-k) A_{n-1,k-1}(P)`.
pub fn bar_recurrence(fam: &Family, max_n: usize) -> Vec<Check> {
    let bar = bar_transform(fam);
    let poly = Check::run("eulerian.bar_polynomial", [0, max_n], |b| {
        let a = assoc_triangle(fam, max_n)?;
        let abar = assoc_triangle(&bar, max_n + 1)?;
        let x1mx = Polynomial::from_ints(&[0, 1, -1]);
        for n in 0..=max_n {
            let an = Polynomial::new(a.row(n).unwrap().to_vec());
            let lin = Polynomial::from_ints(&[1, n as i64]);
            let rhs = &(&lin * &an) + &(&x1mx * &an.derivative());
            let lhs = Polynomial::new(abar.row(n + 1).unwrap().to_vec());
            compare_polys(b, n + 1, &rhs, &lhs);
        }
        Ok(())
    });
    let entries = Check::run("eulerian.bar_entries", [1, max_n], |b| {
        let a = assoc_triangle(fam, max_n)?;
        let abar = assoc_triangle(&bar, max_n)?;
        let ps = fam.polys(max_n)?;
        let one = int(1);
        for n in 1..=max_n as i64 {
            for k in 0..=n {
                let rhs = int(k + 1) * a.at(n - 1, k) + int(n - k) * a.at(n - 1, k - 1);
                b.compare(n as usize, k as usize, &rhs, &abar.at(n, k));
            }
            b.compare(
                n as usize,
                0,
                &ps[n as usize - 1].eval(&one),
                &abar.at(n, 0),
            );
        }
        Ok(())
    });
    vec![poly, entries]
}

/// `g = 1` and `f(-t) = -f(t)`.
pub fn has_odd_delta(fam: &Family, order: usize) -> Result<bool> {
    let pair = fam.pair()?;
    Ok(pair.is_associated(order)? && pair.f(order)?.is_odd())
}

/// `A_{n,k}(P) = A_{n,n-1-k}(P)` for `1 <= n`, `0 <= k <= n-1`.
pub fn symmetry(fam: &Family, max_n: usize) -> Result<Check> {
    if !has_odd_delta(fam, max_n + 1)? {
        return Err(Error::Precondition(format!(
            "{}: symmetry needs g = 1 and an odd f",
            fam.label()
        )));
    }
    Ok(Check::run("eulerian.symmetry", [1, max_n], |b| {
        let a = assoc_triangle(fam, max_n)?;
        symmetric_rows(b, &a, max_n);
        Ok(())
    }))
}

fn symmetric_rows(b: &mut CheckBuilder, a: &Triangle, max_n: usize) {
    for n in 1..=max_n as i64 {
        for k in 0..n {
            b.compare(n as usize, k as usize, &a.at(n, n - 1 - k), &a.at(n, k));
        }
    }
}

/// `Σ_{i=1}^m i^n x^i` against its closed form through `A_0..A_n`, at a
/// rational point `x0 ∉ {0, 1}`.
pub fn power_sum_check(n: usize, m: usize, x0: &Rational) -> Result<Check> {
    if x0.is_zero() || x0.is_one() || m == 0 {
        return Err(Error::Precondition(
            "needs m >= 1 and x0 not in {0, 1}".into(),
        ));
    }
    let id = format!("classical.power_sum(n={n},m={m},x={})", format_rational(x0));
    Ok(Check::run(id, [n, n], |b| {
        let a = classical_polys(n);
        let lhs = (1..=m as i64).fold(Rational::zero(), |acc, i| {
            acc + pow_i(&int(i), n as i64) * pow_i(x0, i)
        });
        let xm1 = x0 - int(1);
        let ni = n as i64;
        let mut rhs = (1..=ni).fold(Rational::zero(), |acc, l| {
            acc + pow_i(&int(-1), ni + l)
                * binomial(n, l as usize)
                * pow_i(x0, m as i64 + 1)
                * a[(ni - l) as usize].eval(x0)
                / pow_i(&xm1, ni - l + 1)
                * pow_i(&int(m as i64), l)
        });
        rhs += pow_i(&int(-1), ni) * x0 * (pow_i(x0, m as i64) - int(1)) / pow_i(&xm1, ni + 1)
            * a[n].eval(x0);
        b.compare(n, m, &lhs, &rhs);
        Ok(())
    }))
}

/// The sample points for the power-sum identity.
pub fn power_sum_points() -> [(usize, usize, Rational); 3] {
    [
        (2, 3, int(2)),
        (3, 4, crate::kernel::ratio(1, 2)),
        (4, 5, int(-1)),
    ]
}

/// Every classical identity up to `max_n`; the descent oracle runs to
/// `min(max_n, oracle_n)`.
pub fn classical_checks(max_n: usize, oracle_n: usize) -> Vec<Check> {
    let rec = classical_recurrence(max_n);
    let polys = classical_polys(max_n);
    let range = [0, max_n];
    let mut out = Vec::new();

    out.push(Check::run("classical.listed_rows", [0, 7], |b| {
        let rec = classical_recurrence(7);
        for (n, row) in LISTED_ROWS.iter().enumerate() {
            let mut want: Vec<Rational> = row.iter().map(|&v| int(v)).collect();
            want.resize(n + 1, Rational::zero());
            b.compare_rows(n, &want, rec.row(n).unwrap());
        }
        Ok(())
    }));

    let top = max_n.min(oracle_n).min(ORACLE_MAX_N);
    out.push(Check::run("classical.descent_oracle", [1, top], |b| {
        for n in 1..=top {
            let counts = descent_counts(n, Strategy::default())?;
            let got: Vec<Rational> = counts
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect();
            b.compare_rows(n, rec.row(n).unwrap(), &got);
        }
        Ok(())
    }));

    out.push(Check::run("classical.binomial_recurrence", range, |b| {
        let mut a = vec![Polynomial::one()];
        let xm1 = Polynomial::from_ints(&[-1, 1]);
        for n in 1..=max_n {
            let next: Polynomial = (0..n)
                .map(|k| (&a[k] * &xm1.pow(n - 1 - k)).scale(&binomial(n, k)))
                .sum();
            a.push(next);
        }
        for n in 0..=max_n {
            compare_polys(b, n, &polys[n], &a[n]);
        }
        Ok(())
    }));

    out.push(Check::run("classical.gf", range, |b| {
        for (n, p) in classical_gf(max_n)?.iter().enumerate() {
            compare_polys(b, n, &polys[n], p);
        }
        Ok(())
    }));

    out.push(Check::run("classical.power_series", range, |b| {
        for n in 0..=max_n {
            let got = divided_series(&polys[n], n, n + 5);
            for (j, g) in got.iter().enumerate() {
                b.compare(n, j, &pow_i(&int(j as i64 + 1), n as i64), g);
            }
        }
        Ok(())
    }));

    out.push(Check::run("classical.derivative_recurrence", range, |b| {
        let x1mx = Polynomial::from_ints(&[0, 1, -1]);
        let mut a = Polynomial::one();
        compare_polys(b, 0, &polys[0], &a);
        for n in 1..=max_n {
            let lin = Polynomial::from_ints(&[1, n as i64 - 1]);
            a = &(&lin * &a) + &(&x1mx * &a.derivative());
            compare_polys(b, n, &polys[n], &a);
        }
        Ok(())
    }));

    let explicit = classical_explicit(max_n);
    out.push(Check::run("classical.triangle_recurrence", range, |b| {
        for n in 0..=max_n as i64 {
            b.compare(n as usize, 0, &int(1), &explicit.at(n, 0));
            if n < 2 {
                continue;
            }
            for k in 1..n {
                let rhs =
                    int(k + 1) * explicit.at(n - 1, k) + int(n - k) * explicit.at(n - 1, k - 1);
                b.compare(n as usize, k as usize, &rhs, &explicit.at(n, k));
            }
        }
        Ok(())
    }));

    out.push(Check::run("classical.explicit_sum", range, |b| {
        for n in 0..=max_n {
            b.compare_rows(n, polys[n].coeffs(), explicit.row(n).unwrap());
        }
        Ok(())
    }));

    out.push(Check::run("classical.worpitzky", range, |b| {
        for n in 0..=max_n {
            let row = rec.row(n).unwrap();
            let lower = worpitzky_rebuild(row, n);
            let upper: Polynomial = row
                .iter()
                .enumerate()
                .map(|(k, c)| binomial_poly(&int(k as i64), n).scale(c))
                .sum();
            let xn = Polynomial::monomial(n, int(1));
            compare_polys(b, n, &xn, &lower);
            compare_polys(b, n, &xn, &upper);
        }
        Ok(())
    }));

    for (n, m, x0) in power_sum_points() {
        out.push(
            power_sum_check(n, m, &x0)
                .unwrap_or_else(|e| Check::run("classical.power_sum", [n, n], |_| Err(e))),
        );
    }

    out.push(Check::run("classical.symmetry", [1, max_n], |b| {
        symmetric_rows(b, &rec, max_n);
        Ok(())
    }));

    out.push(Check::run("classical.row_sum", range, |b| {
        for n in 0..=max_n {
            let s: Rational = rec.row(n).unwrap().iter().sum();
            b.compare(n, 0, &factorial(n), &s);
        }
        Ok(())
    }));

    out.push(Check::run("classical.frobenius", range, |b| {
        let s2 = numbers::stirling2(max_n)?;
        for n in 0..=max_n as i64 {
            b.compare(n as usize, 0, &int(1), &rec.at(n, 0));
            for k in 1..n.max(1) {
                // sign exponent k-l-1, same parity as k-l+1
                let got = (1..=k + 1).fold(Rational::zero(), |acc, l| {
                    acc + factorial(l as usize)
                        * s2.at(n, l)
                        * binomial_i(n - l, k - l + 1)
                        * pow_i(&int(-1), k - l - 1)
                });
                b.compare(n as usize, k as usize, &rec.at(n, k), &got);
            }
        }
        Ok(())
    }));

    out.push(Check::run("classical.frobenius_inverse", [1, max_n], |b| {
        let s2 = numbers::stirling2(max_n)?;
        for n in 1..=max_n {
            for k in 1..=n {
                b.compare(n, k, &s2.at(n as i64, k as i64), &s2_from_a(&rec, n, k));
            }
        }
        Ok(())
    }));
    out
}

/// Every associated-Eulerian identity that applies to `fam`, with
/// inapplicable ones reported as skipped.
pub fn family_checks(fam: &Family, max_n: usize) -> Vec<Check> {
    let range = [0, max_n];
    let mut out = Vec::new();
    let tri = assoc_triangle(fam, max_n);

    out.push(Check::run("eulerian.alternating_sum", range, |b| {
        let a = tri.clone()?;
        for (n, p) in assoc_polys_via_monomials(fam, max_n)?.iter().enumerate() {
            b.compare_rows(n, p.coeffs(), a.row(n).unwrap());
        }
        Ok(())
    }));

    out.push(Check::run("eulerian.power_series", range, |b| {
        let a = tri.clone()?;
        let ps = fam.polys(max_n)?;
        for n in 0..=max_n {
            let got = divided_series(&Polynomial::new(a.row(n).unwrap().to_vec()), n, n + 5);
            for (j, g) in got.iter().enumerate() {
                b.compare(n, j, &ps[n].eval(&int(j as i64 + 1)), g);
            }
        }
        Ok(())
    }));

    out.extend(bar_recurrence(fam, max_n));

    if fam.sheffer.is_some() {
        out.push(Check::run("eulerian.gf", range, |b| {
            let a = tri.clone()?;
            for (n, p) in eulerian_gf_assoc(fam, max_n)?.iter().enumerate() {
                b.compare_rows(n, a.row(n).unwrap(), p.coeffs());
            }
            Ok(())
        }));
    } else {
        out.push(Check::skipped("eulerian.gf", range, "no Sheffer pair"));
    }

    match fam.sheffer.as_ref().map(|_| has_odd_delta(fam, max_n + 1)) {
        Some(Ok(true)) => out.push(symmetry(fam, max_n).expect("gate checked")),
        Some(Ok(false)) => out.push(Check::skipped(
            "eulerian.symmetry",
            range,
            "needs g = 1 and odd f",
        )),
        Some(Err(e)) => out.push(Check::run("eulerian.symmetry", range, |_| Err(e))),
        None => out.push(Check::skipped(
            "eulerian.symmetry",
            range,
            "no Sheffer pair",
        )),
    }

    let vanishing = fam.vanishes_at_zero(max_n);
    match vanishing {
        Ok(true) => {
            out.push(Check::run("eulerian.vanishing", [1, max_n], |b| {
                let a = tri.clone()?;
                let s2 = s2_triangle(fam, max_n)?;
                let ps = fam.polys(max_n)?;
                for n in 1..=max_n {
                    b.compare(n, 0, &Rational::zero(), &s2.at(n as i64, 0));
                    b.compare(n, n, &Rational::zero(), &a.at(n as i64, n as i64));
                    let lead = (1..=n).fold(Rational::zero(), |acc, k| {
                        acc + sign(n - k) * ps[n].coeff(k)
                    });
                    b.compare(n, n - 1, &lead, &a.at(n as i64, n as i64 - 1));
                }
                Ok(())
            }));
            out.push(Check::run("eulerian.frobenius", [1, max_n], |b| {
                let a = tri.clone()?;
                let s2 = s2_triangle(fam, max_n)?;
                for n in 1..=max_n {
                    for k in 0..=n {
                        b.compare(n, k, &a.at(n as i64, k as i64), &a_from_s2(&s2, n, k));
                    }
                }
                Ok(())
            }));
            out.push(Check::run("eulerian.frobenius_inverse", [1, max_n], |b| {
                let s2 = s2_triangle(fam, max_n)?;
                let mut rows = vec![vec![int(1)]];
                for n in 1..=max_n {
                    rows.push((0..=n).map(|k| a_from_s2(&s2, n, k)).collect());
                }
                let a = Triangle::from_rows("frobenius", rows)?;
                for n in 1..=max_n {
                    for k in 0..=n {
                        b.compare(n, k, &s2.at(n as i64, k as i64), &s2_from_a(&a, n, k));
                    }
                }
                Ok(())
            }));
        }
        Ok(false) => {
            for id in [
                "eulerian.vanishing",
                "eulerian.frobenius",
                "eulerian.frobenius_inverse",
            ] {
                out.push(Check::skipped(id, [1, max_n], NOT_VANISHING));
            }
        }
        Err(e) => out.push(Check::run("eulerian.vanishing", range, |_| Err(e))),
    }

    out.push(Check::run("eulerian.row_sum", range, |b| {
        let a = tri.clone()?;
        let ps = fam.polys(max_n)?;
        for n in 0..=max_n {
            let s: Rational = a.row(n).unwrap().iter().sum();
            b.compare(n, 0, &(ps[n].coeff(n) * factorial(n)), &s);
        }
        Ok(())
    }));

    out.push(Check::run("eulerian.worpitzky", range, |b| {
        let a = tri.clone()?;
        let ps = fam.polys(max_n)?;
        for n in 0..=max_n {
            compare_polys(b, n, &ps[n], &worpitzky_rebuild(a.row(n).unwrap(), n));
        }
        Ok(())
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family, sample_params};
    use crate::kernel::ratio;

    fn fam(id: &str) -> Family {
        family(id, &sample_params(id).unwrap()[0]).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(eulerian_classical(4, 1).unwrap(), int(11));
        assert_eq!(eulerian_classical(7, 3).unwrap(), int(2416));
        for n in 0..8 {
            assert_eq!(eulerian_classical(n, 0).unwrap(), int(1));
        }
        assert!(eulerian_classical(2, 3).is_err());
    }

    #[test]
    fn descents() {
        assert_eq!(
            descent_counts(3, Strategy::Sequential).unwrap(),
            vec![1, 4, 1, 0]
        );
        assert_eq!(descent_oracle(1, 0).unwrap(), 1);
        assert!(matches!(
            descent_counts(10, Strategy::Sequential),
            Err(Error::OracleLimit { .. })
        ));
        assert_eq!(
            descent_counts(7, Strategy::Sequential).unwrap(),
            descent_counts(7, Strategy::Parallel).unwrap()
        );
    }

    #[test]
    fn monomial_reduces_to_classical() {
        let a = assoc_triangle(&fam("monomial"), 8).unwrap();
        assert_eq!(a.rows(), classical_recurrence(8).rows());
        let row5: Vec<Rational> = [1, 26, 66, 26, 1, 0].iter().map(|&v| int(v)).collect();
        assert_eq!(a.row(5).unwrap(), &row5[..]);
        assert_eq!(eulerian_assoc(&fam("bernoulli"), 0, 0).unwrap(), int(1));
    }

    #[test]
    fn worpitzky_small() {
        let x2 = worpitzky_rebuild(&[int(1), int(1), int(0)], 2);
        assert_eq!(x2, Polynomial::monomial(2, int(1)));
    }

    #[test]
    fn frobenius_gate_and_values() {
        let bern = fam("bernoulli");
        assert!(matches!(
            frobenius_bridge(&bern, 3, 1, Direction::AFromS2),
            Err(Error::FrobeniusHypothesis(_))
        ));
        let mono = fam("monomial");
        assert_eq!(
            frobenius_bridge(&mono, 3, 1, Direction::AFromS2).unwrap(),
            int(4)
        );
        let rising = fam("rising");
        let lah = numbers::lah(6).unwrap();
        for n in 1..=6 {
            for k in 0..=n {
                let s = frobenius_bridge(&rising, n, k, Direction::S2FromA).unwrap();
                assert_eq!(s, lah.at(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn power_sums() {
        let c = power_sum_check(2, 3, &int(2)).unwrap();
        assert!(c.passed());
        assert!(power_sum_check(2, 3, &int(1)).is_err());
        for (n, m, x0) in power_sum_points() {
            assert!(power_sum_check(n, m, &x0).unwrap().passed());
        }
    }

    #[test]
    fn gf_examples() {
        let gf = classical_gf(6).unwrap();
        for (n, p) in gf.iter().enumerate() {
            assert_eq!(p, &classical_polys(6)[n]);
        }
        let f = family("falling_deg", &[("lambda".to_string(), ratio(1, 2))].into()).unwrap();
        let gf = eulerian_gf_assoc(&f, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(gf[n], eulerian_poly_assoc(&f, n).unwrap());
        }
        assert!(series_identity(&fam("bernoulli"), 3, 6).passed());
    }

    #[test]
    fn classical_all_pass() {
        let checks = classical_checks(10, 8);
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn symmetry_gate() {
        for id in ["central", "central_deg", "mittag_leffler"] {
            assert!(has_odd_delta(&fam(id), 9).unwrap(), "{id}");
        }
        assert!(symmetry(&fam("bell"), 6).is_err());
    }

    #[test]
    fn every_family_passes() {
        for f in crate::families::all_samples().unwrap() {
            let checks = family_checks(&f, 8);
            let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
            assert!(bad.is_empty(), "{}: {bad:#?}", f.label());
        }
    }
}
