//! Classical number triangles and scalar sequences.
//!
//! Every triangle with a polynomial-basis definition is computed by exact
//! basis conversion; the `*_gf` functions extract the same numbers from their
//! exponential generating functions and serve as an independent route.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{
    binomial, central_factorial, conversion_row, factorial, falling_factorial, format_rational,
    int, pow_i, ratio, rising_factorial, Polynomial, Rational, Triangle,
};
use crate::series::{central_root, degenerate_expm1, degenerate_log1p, expm1_scaled, Fps};

/// Names accepted by [`classical`].
pub const CLASSICAL_NAMES: &[&str] = &[
    "stirling1",
    "stirling2",
    "stirling1_deg",
    "stirling2_deg",
    "lah",
    "lah_deg",
    "central1",
    "central2",
    "central1_deg",
    "central2_deg",
    "central_r1",
    "central_r2",
    "gould_hopper",
];

/// Parameter values keyed by name (`lambda`, `r`, `s`, `a`).
pub type Params = BTreeMap<String, Rational>;

fn param(params: &Params, id: &str, key: &str) -> Result<Rational> {
    params.get(key).cloned().ok_or_else(|| Error::MissingParam {
        id: id.to_string(),
        param: key.to_string(),
    })
}

/// Looks up a classical triangle by name, memoized per `(name, params, max_n)`.
pub fn classical(name: &str, params: &Params, max_n: usize) -> Result<Arc<Triangle>> {
    let lambda = || param(params, name, "lambda");
    match name {
        "stirling1" => stirling1(max_n),
        "stirling2" => stirling2(max_n),
        "stirling1_deg" => stirling1_deg(&lambda()?, max_n),
        "stirling2_deg" => stirling2_deg(&lambda()?, max_n),
        "lah" => lah(max_n),
        "lah_deg" => lah_deg(&lambda()?, max_n),
        "central1" => central1(max_n),
        "central2" => central2(max_n),
        "central1_deg" => central1_deg(&lambda()?, max_n),
        "central2_deg" => central2_deg(&lambda()?, max_n),
        "central_r1" => central_r1(&lambda()?, max_n),
        "central_r2" => central_r2(&lambda()?, max_n),
        "gould_hopper" => gould_hopper(
            &param(params, name, "r")?,
            &param(params, name, "s")?,
            max_n,
        ),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

type Cache = Mutex<HashMap<(String, Vec<String>), Arc<Triangle>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Returns a cached snapshot covering `max_n`, computing a new one if needed.
/// The lock is not held while computing.
fn memo(
    name: &str,
    params: &[(&str, &Rational)],
    max_n: usize,
    compute: impl FnOnce() -> Result<Triangle>,
) -> Result<Arc<Triangle>> {
    let key = (
        name.to_string(),
        params
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect(),
    );
    if let Some(t) = cache().lock().unwrap().get(&key) {
        if t.max_n() >= max_n {
            return Ok(if t.max_n() == max_n {
                t.clone()
            } else {
                Arc::new(t.truncated(max_n))
            });
        }
    }
    let mut t = compute()?;
    for (k, v) in params {
        t = t.with_param(k, (*v).clone());
    }
    let t = Arc::new(t);
    cache().lock().unwrap().insert(key, t.clone());
    Ok(t)
}

/// Triangle whose row `n` expresses `source(n)` in the basis `target(0..=n)`.
pub fn conversion_triangle(
    name: &str,
    max_n: usize,
    source: impl Fn(usize) -> Polynomial,
    target: impl Fn(usize) -> Polynomial,
) -> Result<Triangle> {
    let basis: Vec<Polynomial> = (0..=max_n).map(target).collect();
    let rows = (0..=max_n)
        .map(|n| conversion_row(&source(n), &basis[..=n], n))
        .collect::<Result<Vec<_>>>()?;
    Triangle::from_rows(name, rows)
}

/// Triangle of `n! [t^n] prefactor(t) base(t)^k / k!`.
pub fn egf_triangle(name: &str, prefactor: &Fps, base: &Fps, max_n: usize) -> Result<Triangle> {
    if base.trunc_order() < max_n || prefactor.trunc_order() < max_n {
        return Err(Error::InsufficientOrder {
            needed: max_n,
            available: base.trunc_order().min(prefactor.trunc_order()),
        });
    }
    if !base.coeff(0).is_zero() {
        return Err(Error::InnerNotDelta);
    }
    let mut cols = Vec::with_capacity(max_n + 1);
    let mut term = prefactor.truncate(max_n);
    let base = base.truncate(max_n);
    for k in 0..=max_n {
        cols.push(term.scale(&factorial(k).recip()));
        term = &term * &base;
    }
    Triangle::from_fn(name, max_n, |n, k| Ok(cols[k].egf_coeff(n)))
}

fn monomial(n: usize) -> Polynomial {
    Polynomial::monomial(n, int(1))
}

/// Signed Stirling numbers of the first kind: `(x)_n = Σ S1(n,k) x^k`.
pub fn stirling1(max_n: usize) -> Result<Arc<Triangle>> {
    memo("stirling1", &[], max_n, || {
        let mut rows = vec![vec![int(1)]];
        for n in 0..max_n {
            let prev: &Vec<Rational> = &rows[n];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_else(Rational::zero);
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k == 0 { Rational::zero() } else { at(k - 1) };
                    left - at(k) * int(n as i64)
                })
                .collect();
            rows.push(row);
        }
        Triangle::from_rows("stirling1", rows)
    })
}

/// Stirling numbers of the second kind: `x^n = Σ S2(n,k) (x)_k`.
pub fn stirling2(max_n: usize) -> Result<Arc<Triangle>> {
    memo("stirling2", &[], max_n, || {
        let mut rows = vec![vec![int(1)]];
        for n in 0..max_n {
            let prev: &Vec<Rational> = &rows[n];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_else(Rational::zero);
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k == 0 { Rational::zero() } else { at(k - 1) };
                    left + at(k) * int(k as i64)
                })
                .collect();
            rows.push(row);
        }
        Triangle::from_rows("stirling2", rows)
    })
}

/// `(x)_{n,λ} = Σ S2λ(n,k) (x)_k`.
pub fn stirling2_deg(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("stirling2_deg", &[("lambda", lambda)], max_n, || {
        let one = int(1);
        conversion_triangle(
            "stirling2_deg",
            max_n,
            |n| falling_factorial(n, lambda),
            |k| falling_factorial(k, &one),
        )
    })
}

/// `(x)_n = Σ S1λ(n,k) (x)_{k,λ}`.
pub fn stirling1_deg(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("stirling1_deg", &[("lambda", lambda)], max_n, || {
        let one = int(1);
        conversion_triangle(
            "stirling1_deg",
            max_n,
            |n| falling_factorial(n, &one),
            |k| falling_factorial(k, lambda),
        )
    })
}

/// Unsigned Lah numbers `L(n,k) = C(n-1,k-1) n!/k!`.
pub fn lah(max_n: usize) -> Result<Arc<Triangle>> {
    memo("lah", &[], max_n, || {
        Triangle::from_fn("lah", max_n, |n, k| {
            Ok(match (n, k) {
                (0, 0) => int(1),
                (_, 0) => int(0),
                _ => binomial(n - 1, k - 1) * factorial(n) / factorial(k),
            })
        })
    })
}

/// `⟨x⟩_{n,λ} = Σ Lλ(n,k) (x)_k`.
pub fn lah_deg(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("lah_deg", &[("lambda", lambda)], max_n, || {
        let one = int(1);
        conversion_triangle(
            "lah_deg",
            max_n,
            |n| rising_factorial(n, lambda),
            |k| falling_factorial(k, &one),
        )
    })
}

/// `x^{[n]} = Σ T1(n,k) x^k`.
pub fn central1(max_n: usize) -> Result<Arc<Triangle>> {
    memo("central1", &[], max_n, || {
        conversion_triangle(
            "central1",
            max_n,
            |n| central_factorial(n, &int(1)),
            monomial,
        )
    })
}

/// `x^n = Σ T2(n,k) x^{[k]}`.
pub fn central2(max_n: usize) -> Result<Arc<Triangle>> {
    memo("central2", &[], max_n, || {
        conversion_triangle("central2", max_n, monomial, |k| {
            central_factorial(k, &int(1))
        })
    })
}

/// `x^{[n]} = Σ T1λ(n,k) (x)_{k,λ}`.
pub fn central1_deg(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("central1_deg", &[("lambda", lambda)], max_n, || {
        conversion_triangle(
            "central1_deg",
            max_n,
            |n| central_factorial(n, &int(1)),
            |k| falling_factorial(k, lambda),
        )
    })
}

/// `(x)_{n,λ} = Σ T2λ(n,k) x^{[k]}`.
pub fn central2_deg(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("central2_deg", &[("lambda", lambda)], max_n, || {
        conversion_triangle(
            "central2_deg",
            max_n,
            |n| falling_factorial(n, lambda),
            |k| central_factorial(k, &int(1)),
        )
    })
}

/// `x^{[n,λ]} = Σ R1λ(n,k) x^k`.
pub fn central_r1(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("central_r1", &[("lambda", lambda)], max_n, || {
        conversion_triangle(
            "central_r1",
            max_n,
            |n| central_factorial(n, lambda),
            monomial,
        )
    })
}

/// `x^n = Σ R2λ(n,k) x^{[k,λ]}`.
pub fn central_r2(lambda: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    memo("central_r2", &[("lambda", lambda)], max_n, || {
        conversion_triangle("central_r2", max_n, monomial, |k| {
            central_factorial(k, lambda)
        })
    })
}

/// `(rx + s)_n = Σ G(n,k;r,s) (x)_k`; `r` must be nonzero.
pub fn gould_hopper(r: &Rational, s: &Rational, max_n: usize) -> Result<Arc<Triangle>> {
    if r.is_zero() {
        return Err(Error::InvalidParam("gould_hopper needs r != 0".into()));
    }
    memo("gould_hopper", &[("r", r), ("s", s)], max_n, || {
        let one = int(1);
        let lin = Polynomial::new(vec![s.clone(), r.clone()]);
        conversion_triangle(
            "gould_hopper",
            max_n,
            |n| falling_factorial(n, &one).compose(&lin),
            |k| falling_factorial(k, &one),
        )
    })
}

/// Generating-function routes, one per named triangle.
pub fn classical_gf(name: &str, params: &Params, max_n: usize) -> Result<Triangle> {
    let n = max_n;
    let one = Fps::one(n);
    let lambda = || param(params, name, "lambda");
    let (pre, base) = match name {
        "stirling1" => (one, Fps::log1p(n)),
        "stirling2" => (one, expm1_scaled(&int(1), n)),
        "stirling1_deg" => (one, degenerate_log1p(&lambda()?, n)?),
        "stirling2_deg" => (one, degenerate_expm1(&lambda()?, n)?),
        "lah" => (one, Fps::t(n).div(&Fps::new(vec![int(1), int(-1)], n + 1))?),
        // (1 - λt)^{-1/λ} - 1
        "lah_deg" => (one, degenerate_expm1(&-lambda()?, n)?),
        "central1" => (one, central_root(n)?.log()?.scale(&int(2))),
        "central2" => (one, central_sinh(&int(1), n)),
        "central1_deg" => (one, central_u_pow(&lambda()?, n)?),
        "central2_deg" => (one, degenerate_half_sinh(&lambda()?, n)?),
        "central_r1" => {
            let l = lambda()?;
            if l.is_zero() {
                (one, Fps::t(n))
            } else {
                let log_u = central_root(n)?.log()?.scale_arg(&l);
                (one, log_u.scale(&(int(2) / &l)))
            }
        }
        "central_r2" => (one, central_sinh(&lambda()?, n)),
        "gould_hopper" => {
            let r = param(params, name, "r")?;
            let s = param(params, name, "s")?;
            let onep = Fps::new(vec![int(1), int(1)], n);
            let pre = onep.pow_rational(&s)?;
            (pre, &onep.pow_rational(&r)? - &one)
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    egf_triangle(name, &pre, &base, max_n)
}

/// `(e^{λt/2} - e^{-λt/2})/λ`, equal to `t` at `λ = 0`.
pub fn central_sinh(lambda: &Rational, order: usize) -> Fps {
    Fps::from_fn(order, |n| {
        if n % 2 == 0 {
            Rational::zero()
        } else {
            pow_i(lambda, n as i64 - 1) * pow_i(&ratio(1, 2), n as i64 - 1) / factorial(n)
        }
    })
}

/// `(u^{2λ} - 1)/λ` with `u = t/2 + (1 + t²/4)^{1/2}`; `2 log u` at `λ = 0`.
pub fn central_u_pow(lambda: &Rational, order: usize) -> Result<Fps> {
    let u = central_root(order)?;
    if lambda.is_zero() {
        return Ok(u.log()?.scale(&int(2)));
    }
    Ok((&u.pow_rational(&(lambda * int(2)))? - &Fps::one(order)).scale(&lambda.recip()))
}

/// `e_λ^{1/2}(t) - e_λ^{-1/2}(t)`; `e^{t/2} - e^{-t/2}` at `λ = 0`.
pub fn degenerate_half_sinh(lambda: &Rational, order: usize) -> Result<Fps> {
    if lambda.is_zero() {
        return Ok(central_sinh(&int(1), order));
    }
    let base = Fps::new(vec![int(1), lambda.clone()], order);
    let e = lambda.recip() * ratio(1, 2);
    Ok(&base.pow_rational(&e)? - &base.pow_rational(&-e)?)
}

/// A named list of exact values indexed by `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSequence {
    pub name: String,
    pub values: Vec<Rational>,
}

/// `bernoulli`, `euler`, `bernoulli2nd`, or `bell` (needs param `a`).
pub fn scalar_sequence(name: &str, params: &Params, max_n: usize) -> Result<ScalarSequence> {
    let values = match name {
        "bernoulli" => bernoulli_numbers(max_n),
        "euler" => euler_numbers(max_n),
        "bernoulli2nd" => bernoulli2nd_numbers(max_n)?,
        "bell" => bell_values(&param(params, name, "a")?, max_n)?,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(ScalarSequence {
        name: name.to_string(),
        values,
    })
}

/// `B_n` with `B_1 = -1/2`, from `Σ_{k<=n} C(n+1,k) B_k = 0`.
pub fn bernoulli_numbers(max_n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![int(1)];
    for n in 1..=max_n {
        let s = (0..n).fold(Rational::zero(), |acc, k| acc + binomial(n + 1, k) * &b[k]);
        b.push(-s / int(n as i64 + 1));
    }
    b
}

/// `E_n = E_n(0)`, the constant terms of the Euler polynomials, from
/// `2 E_n = -Σ_{k<n} C(n,k) E_k`.
pub fn euler_numbers(max_n: usize) -> Vec<Rational> {
    let mut e: Vec<Rational> = vec![int(1)];
    for n in 1..=max_n {
        let s = (0..n).fold(Rational::zero(), |acc, k| acc + binomial(n, k) * &e[k]);
        e.push(-s / int(2));
    }
    e
}

/// `b_n = n! [t^n] t / log(1 + t)`.
pub fn bernoulli2nd_numbers(max_n: usize) -> Result<Vec<Rational>> {
    let n = max_n + 1;
    let q = Fps::t(n).div(&Fps::log1p(n))?;
    Ok((0..=max_n).map(|i| q.egf_coeff(i)).collect())
}

/// Bell polynomial values `Bel_n(a) = Σ_k S2(n,k) a^k`.
pub fn bell_values(a: &Rational, max_n: usize) -> Result<Vec<Rational>> {
    let s2 = stirling2(max_n)?;
    Ok((0..=max_n)
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, k| {
                acc + s2.at(n as i64, k as i64) * pow_i(a, k as i64)
            })
        })
        .collect())
}

/// Kronecker delta.
pub fn delta(n: usize, k: usize) -> Rational {
    if n == k {
        Rational::one()
    } else {
        Rational::zero()
    }
}
