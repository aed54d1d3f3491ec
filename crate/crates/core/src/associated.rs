//! Stirling numbers of both kinds associated with a polynomial family:
//!
//! ```text
//! p_n(x) = Σ_k S2(n,k;P) (x)_k        (x)_n = Σ_k S1(n,k;P) p_k(x)
//! ```
//!
//! The basis-conversion routes are primary and work for every family. The
//! functional, explicit-sum and generating-function routes are cross-checks.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::kernel::{
    binomial, conversion_row, factorial, falling_factorial, format_rational, int, ratio, sign,
    Polynomial, Rational, Triangle,
};
use crate::numbers::{self, egf_triangle};
use crate::report::{Check, Report};
use crate::series::{expm1_scaled, Fps};
use crate::umbral::functional_apply;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::First => "s1",
            Kind::Second => "s2",
        }
    }
}

fn falling_basis(max_n: usize) -> Vec<Polynomial> {
    (0..=max_n).map(|k| falling_factorial(k, &int(1))).collect()
}

fn named(fam: &Family, kind: Kind, t: Triangle) -> Triangle {
    let mut t = t;
    t.name = format!("{}:{}", fam.id, kind.tag());
    t.params = fam.params.clone();
    t
}

/// `S2(·,·;P)` by expanding each `p_n` in falling factorials.
pub fn s2_triangle(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    let basis = falling_basis(max_n);
    let rows = ps
        .iter()
        .enumerate()
        .map(|(n, p)| conversion_row(p, &basis[..=n], n))
        .collect::<Result<Vec<_>>>()?;
    Ok(named(fam, Kind::Second, Triangle::from_rows("", rows)?))
}

/// `S1(·,·;P)` by solving `(x)_n = Σ_k S1(n,k;P) p_k` against the
/// triangular basis `p_0..p_n`.
pub fn s1_triangle(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    let rows = (0..=max_n)
        .map(|n| conversion_row(&falling_factorial(n, &int(1)), &ps[..=n], n))
        .collect::<Result<Vec<_>>>()?;
    Ok(named(fam, Kind::First, Triangle::from_rows("", rows)?))
}

pub fn triangle(fam: &Family, kind: Kind, max_n: usize) -> Result<Triangle> {
    match kind {
        Kind::First => s1_triangle(fam, max_n),
        Kind::Second => s2_triangle(fam, max_n),
    }
}

/// Finite differences at the integers:
/// `(1/k!) Σ_j (-1)^{k-j} C(k,j) p_n(j)`.
pub fn s2_finite_difference(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    Triangle::from_fn("s2_finite_difference", max_n, |n, k| {
        let s = (0..=k).fold(Rational::zero(), |acc, j| {
            acc + sign(k - j) * binomial(k, j) * ps[n].eval(&int(j as i64))
        });
        Ok(s / factorial(k))
    })
}

/// `Σ_l S2(l,k) p_{n,l}` from the monomial coefficients.
pub fn s2_explicit(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    let s2 = numbers::stirling2(max_n)?;
    Triangle::from_fn("s2_explicit", max_n, |n, k| {
        Ok((k..=n).fold(Rational::zero(), |acc, l| {
            acc + s2.at(l as i64, k as i64) * ps[n].coeff(l)
        }))
    })
}

/// `(1/k!) ⟨(e^t - 1)^k | p_n⟩` as an umbral functional.
pub fn s2_functional(fam: &Family, max_n: usize) -> Result<Triangle> {
    let ps = fam.polys(max_n)?;
    let e = expm1_scaled(&int(1), max_n);
    let pows: Vec<Fps> = (0..=max_n).map(|k| e.pow(k)).collect();
    Triangle::from_fn("s2_functional", max_n, |n, k| {
        Ok(functional_apply(&pows[k], &ps[n])? / factorial(k))
    })
}

/// `Σ_n S2(n,k;P) t^n/n! = (1/g(f̄)) (e^{f̄} - 1)^k / k!`.
pub fn s2_assoc_gf(fam: &Family, k: usize, order: usize) -> Result<Fps> {
    let pair = fam.pair()?;
    let pre = pair.ginv_fbar(order)?;
    let base = exp_associated(&pair.f(order)?, order)?;
    Ok((&pre * &base.pow(k)).scale(&factorial(k).recip()))
}

pub fn s2_gf(fam: &Family, max_n: usize) -> Result<Triangle> {
    let pair = fam.pair()?;
    let pre = pair.ginv_fbar(max_n)?;
    let base = exp_associated(&pair.f(max_n)?, max_n)?;
    egf_triangle("s2_gf", &pre, &base, max_n)
}

/// `(1/k!) ⟨g f^k | (x)_n⟩`, valid for any Sheffer pair.
pub fn s1_sheffer(fam: &Family, max_n: usize) -> Result<Triangle> {
    let pair = fam.pair()?;
    let g = pair.g(max_n)?;
    let f = pair.f(max_n)?;
    let falling = falling_basis(max_n);
    let mut ops = Vec::with_capacity(max_n + 1);
    let mut fk = Fps::one(max_n);
    for _ in 0..=max_n {
        ops.push(&g * &fk);
        fk = &fk * &f;
    }
    Triangle::from_fn("s1_sheffer", max_n, |n, k| {
        Ok(functional_apply(&ops[k], &falling[n])? / factorial(k))
    })
}

/// `Σ_n S1(n,k;P) t^n/n! = (f(log(1+t)))^k / k!`, only for `g = 1`.
pub fn s1_assoc_gf(fam: &Family, k: usize, order: usize) -> Result<Fps> {
    let base = s1_gf_base(fam, order)?;
    Ok(base.pow(k).scale(&factorial(k).recip()))
}

fn s1_gf_base(fam: &Family, order: usize) -> Result<Fps> {
    let pair = fam.pair()?;
    if !pair.is_associated(order)? {
        return Err(Error::NotAssociated(fam.id.clone()));
    }
    log_associated(&pair.f(order)?, order)
}

pub fn s1_gf(fam: &Family, max_n: usize) -> Result<Triangle> {
    let base = s1_gf_base(fam, max_n)?;
    egf_triangle("s1_gf", &Fps::one(max_n), &base, max_n)
}

/// `L_f t = f(log(1+t))`.
pub fn log_associated(f: &Fps, order: usize) -> Result<Fps> {
    if !f.is_delta() {
        return Err(Error::NotDelta);
    }
    f.truncate(order).compose(&Fps::log1p(order))
}

/// `E_f t = e^{f̄(t)} - 1`.
pub fn exp_associated(f: &Fps, order: usize) -> Result<Fps> {
    if !f.is_delta() {
        return Err(Error::NotDelta);
    }
    let e = f.truncate(order).revert()?.exp()?;
    Ok(&e - &Fps::one(order))
}

fn entry(t: &Triangle, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    Ok(t.get(n, k)?.clone())
}

/// `S2(n,k;P)`, computed by finite differences and by the explicit sum;
/// the two must agree.
pub fn s2_assoc(fam: &Family, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let a = entry(&s2_finite_difference(fam, n)?, n, k)?;
    let b = entry(&s2_explicit(fam, n)?, n, k)?;
    if a != b {
        return Err(Error::RouteMismatch {
            what: format!("{} S2", fam.label()),
            n,
            k,
            left: format_rational(&a),
            right: format_rational(&b),
        });
    }
    Ok(a)
}

/// `S1(n,k;P)` by the triangular solve, cross-checked by the Sheffer
/// functional when a pair is available.
pub fn s1_assoc(fam: &Family, n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    let a = entry(&s1_triangle(fam, n)?, n, k)?;
    if fam.sheffer.is_some() {
        let b = entry(&s1_sheffer(fam, n)?, n, k)?;
        if a != b {
            return Err(Error::RouteMismatch {
                what: format!("{} S1", fam.label()),
                n,
                k,
                left: format_rational(&a),
                right: format_rational(&b),
            });
        }
    }
    Ok(a)
}

/// `P̄`: `p̄_0 = 1`, `p̄_n = x p_{n-1}`.
pub fn bar_transform(fam: &Family) -> Family {
    let inner = fam.clone();
    Family::new(
        format!("{}_bar", fam.id),
        fam.params.clone(),
        move |max_n| {
            let mut out = vec![Polynomial::one()];
            if max_n > 0 {
                let ps = inner.polys(max_n - 1)?;
                out.extend(ps.iter().map(|p| p * &Polynomial::x()));
            }
            Ok(out)
        },
    )
}

fn compare_triangles(
    id: &str,
    max_n: usize,
    expected: impl FnOnce() -> Result<Triangle>,
    got: impl FnOnce() -> Result<Triangle>,
) -> Check {
    Check::run(id, [0, max_n], |b| {
        let (e, g) = (expected()?, got()?);
        for n in 0..=max_n {
            b.compare_rows(n, e.row(n).unwrap(), g.row(n).unwrap());
        }
        Ok(())
    })
}

/// Agreement of every S2 and S1 route with the basis conversions.
pub fn route_checks(fam: &Family, max_n: usize) -> Vec<Check> {
    let s2 = || s2_triangle(fam, max_n);
    let s1 = || s1_triangle(fam, max_n);
    let mut out = vec![
        compare_triangles("s2.finite_difference", max_n, s2, || {
            s2_finite_difference(fam, max_n)
        }),
        compare_triangles("s2.explicit_sum", max_n, s2, || s2_explicit(fam, max_n)),
        compare_triangles("s2.functional", max_n, s2, || s2_functional(fam, max_n)),
    ];
    if fam.sheffer.is_none() {
        for id in ["s2.gf", "s1.sheffer_functional", "s1.gf"] {
            out.push(Check::skipped(id, [0, max_n], "no Sheffer pair"));
        }
        return out;
    }
    out.push(compare_triangles("s2.gf", max_n, s2, || s2_gf(fam, max_n)));
    out.push(compare_triangles(
        "s1.sheffer_functional",
        max_n,
        s1,
        || s1_sheffer(fam, max_n),
    ));
    match fam.pair().and_then(|p| p.is_associated(max_n)) {
        Ok(true) => out.push(compare_triangles("s1.gf", max_n, s1, || s1_gf(fam, max_n))),
        Ok(false) => out.push(Check::skipped("s1.gf", [0, max_n], "g != 1")),
        Err(e) => out.push(Check::run("s1.gf", [0, max_n], |_| Err(e))),
    }
    out
}

/// `p_{n,l} = Σ_k S1(k,l) S2(n,k;P)`.
pub fn monomial_roundtrip(fam: &Family, max_n: usize) -> Check {
    Check::run("s2.monomial_roundtrip", [0, max_n], |b| {
        let ps = fam.polys(max_n)?;
        let s2 = s2_triangle(fam, max_n)?;
        let s1 = numbers::stirling1(max_n)?;
        for (n, p) in ps.iter().enumerate() {
            let n = n as i64;
            for l in 0..=n {
                let got = (l..=n).fold(Rational::zero(), |acc, k| acc + s1.at(k, l) * s2.at(n, k));
                b.compare(n as usize, l as usize, &p.coeff(l as usize), &got);
            }
        }
        Ok(())
    })
}

/// `(-1)^n Σ_k S1(n,k;P) p_k(-1) = n!`.
pub fn falling_at_minus_one(fam: &Family, max_n: usize) -> Check {
    Check::run("s1.alternating_factorial", [0, max_n], |b| {
        let ps = fam.polys(max_n)?;
        let s1 = s1_triangle(fam, max_n)?;
        let m1 = int(-1);
        for n in 0..=max_n {
            let sum = (0..=n).fold(Rational::zero(), |acc, k| {
                acc + s1.at(n as i64, k as i64) * ps[k].eval(&m1)
            });
            b.compare(n, 0, &factorial(n), &(sign(n) * sum));
        }
        Ok(())
    })
}

/// The S1 solve reproduces `(x)_n = Σ_k S1(n,k;P) p_k`.
pub fn solve_reconstructs(fam: &Family, max_n: usize) -> Check {
    Check::run("s1.reconstructs_falling", [0, max_n], |b| {
        let ps = fam.polys(max_n)?;
        let s1 = s1_triangle(fam, max_n)?;
        for n in 0..=max_n {
            let rebuilt: Polynomial = (0..=n)
                .map(|k| ps[k].scale(&s1.at(n as i64, k as i64)))
                .sum();
            b.compare_display(n, 0, &falling_factorial(n, &int(1)), &rebuilt);
        }
        Ok(())
    })
}

/// `S2(n+1,k;P̄) = S2(n,k-1;P) + k S2(n,k;P)` and
/// `S1(n+1,k;P̄) = S1(n,k-1;P) - n S1(n,k;P̄)`.
pub fn bar_checks(fam: &Family, max_n: usize) -> Vec<Check> {
    let bar = bar_transform(fam);
    let s2 = Check::run("s2.bar_recurrence", [0, max_n], |b| {
        let p = s2_triangle(fam, max_n)?;
        let q = s2_triangle(&bar, max_n + 1)?;
        for n in 0..=max_n as i64 {
            for k in 0..=n + 1 {
                let rhs = p.at(n, k - 1) + int(k) * p.at(n, k);
                b.compare(n as usize + 1, k as usize, &rhs, &q.at(n + 1, k));
            }
        }
        Ok(())
    });
    let s1 = Check::run("s1.bar_recurrence", [0, max_n], |b| {
        let p = s1_triangle(fam, max_n)?;
        let q = s1_triangle(&bar, max_n + 1)?;
        for n in 0..=max_n as i64 {
            for k in 0..=n + 1 {
                let rhs = p.at(n, k - 1) - int(n) * q.at(n, k);
                b.compare(n as usize + 1, k as usize, &rhs, &q.at(n + 1, k));
            }
        }
        Ok(())
    });
    vec![s2, s1]
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-30..=30), rng.gen_range(1..=12))
}

/// Seed for the inverse-relation vectors; mixes in the family label so
/// different families see different vectors.
fn seed_for(fam: &Family, seed: u64) -> u64 {
    fam.label().bytes().fold(seed, |h, b| {
        h.wrapping_mul(0x100000001b3).wrapping_add(b as u64)
    })
}

/// Both triangle products equal the identity, and the two inverse-relation
/// pairs round-trip `trials` random rational vectors.
pub fn verify_orthogonality(fam: &Family, max_n: usize, trials: usize, seed: u64) -> Report {
    let mut report = Report::new("orthogonality", fam.label());
    let tris = s1_triangle(fam, max_n).and_then(|a| Ok((a, s2_triangle(fam, max_n)?)));
    let (s1, s2) = match tris {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::run("orthogonality.generate", [0, max_n], |_| Err(e)));
            return report;
        }
    };
    for (id, a, b) in [
        ("orthogonality.s1_s2", &s1, &s2),
        ("orthogonality.s2_s1", &s2, &s1),
    ] {
        report.push(Check::run(id, [0, max_n], |c| {
            let prod = a.product(b);
            for n in 0..=max_n {
                for l in 0..=n {
                    c.compare(n, l, &numbers::delta(n, l), prod.get(n, l)?);
                }
            }
            Ok(())
        }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(fam, seed));
    let at = |t: &Triangle, n: usize, k: usize| t.at(n as i64, k as i64);
    report.push(Check::run("inverse.lower", [0, max_n], |c| {
        for _ in 0..trials {
            let v: Vec<Rational> = (0..=max_n).map(|_| random_rational(&mut rng)).collect();
            for (fwd, back) in [(&s2, &s1), (&s1, &s2)] {
                let a: Vec<Rational> = (0..=max_n)
                    .map(|n| (0..=n).map(|k| at(fwd, n, k) * &v[k]).sum())
                    .collect();
                for n in 0..=max_n {
                    let got: Rational = (0..=n).map(|k| at(back, n, k) * &a[k]).sum();
                    c.compare(n, 0, &v[n], &got);
                }
            }
        }
        Ok(())
    }));
    report.push(Check::run("inverse.upper", [0, max_n], |c| {
        let m = max_n;
        for _ in 0..trials {
            let v: Vec<Rational> = (0..=m).map(|_| random_rational(&mut rng)).collect();
            for (fwd, back) in [(&s2, &s1), (&s1, &s2)] {
                let a: Vec<Rational> = (0..=m)
                    .map(|n| (n..=m).map(|k| at(fwd, k, n) * &v[k]).sum())
                    .collect();
                for n in 0..=m {
                    let got: Rational = (n..=m).map(|k| at(back, k, n) * &a[k]).sum();
                    c.compare(n, 0, &v[n], &got);
                }
            }
        }
        Ok(())
    }));
    report
}

/// Every closed form the family carries against the basis conversions.
pub fn oracle_checks(fam: &Family, max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for (kind, oracles) in [
        (Kind::Second, &fam.s2_oracles),
        (Kind::First, &fam.s1_oracles),
    ] {
        for o in oracles {
            out.push(compare_triangles(
                &format!("oracle.{}.{}", kind.tag(), o.name),
                max_n,
                || triangle(fam, kind, max_n),
                || (o.compute)(max_n),
            ));
        }
    }
    out
}

/// `L_f` and `E_f` are mutually inverse under composition.
pub fn log_exp_check(f: &Fps, order: usize) -> Check {
    Check::run("assoc.log_exp_inverse", [0, order], |b| {
        let l = log_associated(f, order)?;
        let e = exp_associated(f, order)?;
        let t = Fps::t(order);
        for (lhs, name) in [(l.compose(&e)?, 0), (e.compose(&l)?, 1)] {
            for i in 0..=order {
                b.compare(i, name, t.coeff(i), lhs.coeff(i));
            }
        }
        Ok(())
    })
}

/// Everything this module knows how to verify for one family.
pub fn full_report(fam: &Family, max_n: usize, seed: u64) -> Report {
    let mut r = verify_orthogonality(fam, max_n, 5, seed);
    r.suite = "associated".into();
    r.extend(route_checks(fam, max_n));
    r.extend(oracle_checks(fam, max_n));
    r.extend(bar_checks(fam, max_n));
    r.push(monomial_roundtrip(fam, max_n));
    r.push(falling_at_minus_one(fam, max_n));
    r.push(solve_reconstructs(fam, max_n));
    if let Some(pair) = &fam.sheffer {
        r.push(match pair.f(max_n + 2) {
            Ok(f) => log_exp_check(&f, max_n + 2),
            Err(e) => Check::run("assoc.log_exp_inverse", [0, max_n], |_| Err(e)),
        });
    }
    r
}
