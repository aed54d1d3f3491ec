//! The worked polynomial families, each with its generator, Sheffer pair
//! where one exists, and closed-form oracles for the associated Stirling
//! numbers.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{
    binomial, binomial_poly, central_factorial, factorial, falling_factorial, falling_value,
    format_rational, int, pow_i, ratio, rising_factorial, sign, Polynomial, Rational, Triangle,
};
use crate::numbers::{self, Params};
use crate::series::{central_root, degenerate_log1p, expm1_scaled, Fps};
use crate::umbral::ShefferPair;

/// All family ids, in a fixed order.
pub const FAMILY_IDS: &[&str] = &[
    "monomial",
    "falling_deg",
    "rising",
    "rising_deg",
    "central",
    "central_bell",
    "central_bell_deg",
    "central_deg",
    "lah_bell",
    "lah_bell_deg",
    "bell",
    "bell_partial_deg",
    "bell_full_deg",
    "mittag_leffler",
    "laguerre_m1",
    "bernoulli",
    "euler",
    "gould_hopper",
    "bernoulli2nd",
    "poisson_charlier",
    "bernoulli_product",
];

/// Parameter names each family requires.
pub fn required_params(id: &str) -> Result<&'static [&'static str]> {
    Ok(match id {
        "falling_deg" | "rising_deg" | "central_bell_deg" | "central_deg" | "lah_bell_deg"
        | "bell_partial_deg" | "bell_full_deg" => &["lambda"],
        "gould_hopper" => &["r", "s"],
        "poisson_charlier" => &["a"],
        _ if FAMILY_IDS.contains(&id) => &[],
        _ => return Err(Error::UnknownFamily(id.to_string())),
    })
}

/// Parameter samples used by the verification suites.
pub fn sample_params(id: &str) -> Result<Vec<Params>> {
    let one = |k: &str, v: Rational| Params::from([(k.to_string(), v)]);
    Ok(match required_params(id)? {
        [] => vec![Params::new()],
        ["lambda"] => [ratio(1, 2), ratio(-1, 3), int(2)]
            .into_iter()
            .map(|l| one("lambda", l))
            .collect(),
        ["r", "s"] => vec![
            Params::from([("r".to_string(), int(2)), ("s".to_string(), int(3))]),
            Params::from([("r".to_string(), int(1)), ("s".to_string(), int(-1))]),
        ],
        ["a"] => vec![one("a", int(1)), one("a", ratio(-1, 2))],
        _ => unreachable!(),
    })
}

pub type PolyGen = Arc<dyn Fn(usize) -> Result<Vec<Polynomial>> + Send + Sync>;
pub type TriangleFn = Arc<dyn Fn(usize) -> Result<Triangle> + Send + Sync>;

/// A closed form for a full triangle up to a requested row.
#[derive(Clone)]
pub struct Oracle {
    pub name: String,
    pub compute: TriangleFn,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({})", self.name)
    }
}

/// A polynomial sequence `p_0, p_1, ...` with `deg p_n = n` and `p_0 = 1`.
#[derive(Clone)]
pub struct Family {
    pub id: String,
    pub params: Params,
    generator: PolyGen,
    pub sheffer: Option<ShefferPair>,
    pub s2_oracles: Vec<Oracle>,
    pub s1_oracles: Vec<Oracle>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("id", &self.id)
            .field("params", &self.label())
            .field("sheffer", &self.sheffer.is_some())
            .field("s2_oracles", &self.s2_oracles)
            .field("s1_oracles", &self.s1_oracles)
            .finish()
    }
}

impl Family {
    pub fn new<G>(id: impl Into<String>, params: Params, generator: G) -> Self
    where
        G: Fn(usize) -> Result<Vec<Polynomial>> + Send + Sync + 'static,
    {
        Family {
            id: id.into(),
            params,
            generator: Arc::new(generator),
            sheffer: None,
            s2_oracles: Vec::new(),
            s1_oracles: Vec::new(),
        }
    }

    /// Builds a family from a per-index generator.
    pub fn from_fn<G>(id: impl Into<String>, params: Params, p: G) -> Self
    where
        G: Fn(usize) -> Result<Polynomial> + Send + Sync + 'static,
    {
        Self::new(id, params, move |max_n| (0..=max_n).map(&p).collect())
    }

    pub fn with_sheffer(mut self, pair: ShefferPair) -> Self {
        self.sheffer = Some(pair);
        self
    }

    pub fn s2_oracle<F>(mut self, name: &str, f: F) -> Self
    where
        F: Fn(usize) -> Result<Triangle> + Send + Sync + 'static,
    {
        self.s2_oracles.push(Oracle {
            name: name.to_string(),
            compute: Arc::new(f),
        });
        self
    }

    pub fn s1_oracle<F>(mut self, name: &str, f: F) -> Self
    where
        F: Fn(usize) -> Result<Triangle> + Send + Sync + 'static,
    {
        self.s1_oracles.push(Oracle {
            name: name.to_string(),
            compute: Arc::new(f),
        });
        self
    }

    /// `p_0..p_{max_n}`, checked against the standing hypotheses.
    pub fn polys(&self, max_n: usize) -> Result<Vec<Polynomial>> {
        let ps = (self.generator)(max_n)?;
        if ps.len() != max_n + 1 {
            return Err(Error::Precondition(format!(
                "{}: generator returned {} polynomials, expected {}",
                self.id,
                ps.len(),
                max_n + 1
            )));
        }
        if ps[0] != Polynomial::one() {
            return Err(Error::Precondition(format!(
                "{}: p_0 = {} != 1",
                self.id, ps[0]
            )));
        }
        for (n, p) in ps.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::Precondition(format!(
                    "{}: deg p_{n} != {n}",
                    self.id
                )));
            }
        }
        Ok(ps)
    }

    pub fn poly(&self, n: usize) -> Result<Polynomial> {
        Ok(self.polys(n)?.pop().expect("nonempty"))
    }

    pub fn pair(&self) -> Result<&ShefferPair> {
        self.sheffer
            .as_ref()
            .ok_or_else(|| Error::NoShefferPair(self.id.clone()))
    }

    pub fn param(&self, key: &str) -> Result<Rational> {
        self.params
            .get(key)
            .cloned()
            .ok_or_else(|| Error::MissingParam {
                id: self.id.clone(),
                param: key.to_string(),
            })
    }

    /// `id` or `id(k=v,...)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.id.clone();
        }
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect();
        format!("{}({})", self.id, ps.join(","))
    }

    /// `p_n(0) = 0` for every `1 <= n <= max_n`.
    pub fn vanishes_at_zero(&self, max_n: usize) -> Result<bool> {
        Ok(self
            .polys(max_n)?
            .iter()
            .skip(1)
            .all(|p| p.coeff(0).is_zero()))
    }
}

fn param(params: &Params, id: &str, key: &str) -> Result<Rational> {
    params.get(key).cloned().ok_or_else(|| Error::MissingParam {
        id: id.to_string(),
        param: key.to_string(),
    })
}

fn tri(name: &str, max_n: usize, f: impl Fn(i64, i64) -> Rational) -> Result<Triangle> {
    Triangle::from_fn(name, max_n, |n, k| Ok(f(n as i64, k as i64)))
}

fn sum(lo: i64, hi: i64, f: impl Fn(i64) -> Rational) -> Rational {
    (lo..=hi).fold(Rational::zero(), |acc, l| acc + f(l))
}

fn binom(n: i64, k: i64) -> Rational {
    crate::kernel::binomial_i(n, k)
}

fn sgn(e: i64) -> Rational {
    sign(e.unsigned_abs() as usize)
}

/// Polynomial `Σ_k c_k basis_k`.
fn combine(coeffs: &[Rational], basis: impl Fn(usize) -> Polynomial) -> Polynomial {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| basis(k).scale(c))
        .sum()
}

fn x_pow(k: usize) -> Polynomial {
    Polynomial::monomial(k, int(1))
}

/// Oracle from a GF: `n! [t^n] prefactor · base^k / k!`.
fn gf_oracle(
    name: &'static str,
    series: impl Fn(usize) -> Result<(Fps, Fps)> + Send + Sync + 'static,
) -> impl Fn(usize) -> Result<Triangle> + Send + Sync + 'static {
    move |max_n| {
        let (pre, base) = series(max_n)?;
        numbers::egf_triangle(name, &pre, &base, max_n)
    }
}

/// Bernoulli polynomials `B_n(x) = Σ_k C(n,k) B_{n-k} x^k`.
pub fn bernoulli_polys(max_n: usize) -> Vec<Polynomial> {
    let b = numbers::bernoulli_numbers(max_n);
    (0..=max_n)
        .map(|n| Polynomial::new((0..=n).map(|k| binomial(n, k) * &b[n - k]).collect()))
        .collect()
}

/// Euler polynomials `E_n(x) = Σ_l C(n,l) E_l x^{n-l}`.
pub fn euler_polys(max_n: usize) -> Vec<Polynomial> {
    let e = numbers::euler_numbers(max_n);
    (0..=max_n)
        .map(|n| Polynomial::new((0..=n).map(|k| binomial(n, k) * &e[n - k]).collect()))
        .collect()
}

/// Builds the family `id` with the given parameters.
pub fn family(id: &str, params: &Params) -> Result<Family> {
    let required = required_params(id)?;
    let mut own = Params::new();
    for key in required {
        own.insert(key.to_string(), param(params, id, key)?);
    }
    let lam = || own["lambda"].clone();
    let one = int(1);
    let fam = match id {
        "monomial" => Family::from_fn(id, own, |n| Ok(x_pow(n)))
            .with_sheffer(ShefferPair::associated(|n| Ok(Fps::t(n)))?)
            .s2_oracle("stirling2", |m| Ok((*numbers::stirling2(m)?).clone()))
            .s1_oracle("stirling1", |m| Ok((*numbers::stirling1(m)?).clone())),

        "falling_deg" => {
            let l = lam();
            let (l1, l2, l3, l4) = (l.clone(), l.clone(), l.clone(), l.clone());
            Family::from_fn(id, own, move |n| Ok(falling_factorial(n, &l1)))
                .with_sheffer(ShefferPair::associated(move |n| Ok(expm1_scaled(&l2, n)))?)
                .s2_oracle("stirling2_deg", move |m| {
                    Ok((*numbers::stirling2_deg(&l3, m)?).clone())
                })
                .s1_oracle("stirling1_deg", move |m| {
                    Ok((*numbers::stirling1_deg(&l4, m)?).clone())
                })
        }

        "rising" => Family::from_fn(id, own, move |n| Ok(rising_factorial(n, &one)))
            .with_sheffer(ShefferPair::associated(|n| Ok(expm1_scaled(&int(-1), n)))?)
            .s2_oracle("lah", |m| Ok((*numbers::lah(m)?).clone()))
            .s2_oracle("lah_stirling_sum", |m| {
                let (s1, s2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
                tri("lah_stirling_sum", m, |n, k| {
                    sum(k, n, |l| sgn(n - l) * s1.at(n, l) * s2.at(l, k))
                })
            })
            .s1_oracle("signed_lah", |m| {
                let l = numbers::lah(m)?;
                tri("signed_lah", m, |n, k| sgn(n - k) * l.at(n, k))
            })
            .s1_oracle(
                "gf_1_minus_inverse",
                gf_oracle("gf", |m| {
                    let inv = Fps::one(m).div(&Fps::new(vec![int(1), int(1)], m))?;
                    Ok((Fps::one(m), &Fps::one(m) - &inv))
                }),
            ),

        "rising_deg" => {
            let l = lam();
            let (l1, l2, l3, l4, l5) = (l.clone(), l.clone(), l.clone(), l.clone(), l.clone());
            let mut fam = Family::from_fn(id, own, move |n| Ok(rising_factorial(n, &l1)))
                .with_sheffer(ShefferPair::associated(move |n| {
                    Ok(expm1_scaled(&-l2.clone(), n))
                })?)
                .s2_oracle("lah_deg", move |m| Ok((*numbers::lah_deg(&l3, m)?).clone()))
                .s2_oracle("lah_deg_stirling_sum", {
                    let l = l.clone();
                    move |m| {
                        let (s1, s2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
                        let ml = -l.clone();
                        tri("lah_deg_stirling_sum", m, |n, k| {
                            sum(k, n, |j| pow_i(&ml, n - j) * s1.at(n, j) * s2.at(j, k))
                        })
                    }
                })
                .s1_oracle("stirling1_deg_neg", move |m| {
                    Ok((*numbers::stirling1_deg(&-l4.clone(), m)?).clone())
                })
                .s1_oracle(
                    "gf_deg_inverse_power",
                    gf_oracle("gf", move |m| {
                        // (1 - (1+t)^{-λ})/λ, i.e. log_{-λ}(1+t)
                        Ok((Fps::one(m), degenerate_log1p(&-l5.clone(), m)?))
                    }),
                );
            if !l.is_zero() {
                let l6 = l.clone();
                fam = fam.s1_oracle("scaled_lah_reciprocal", move |m| {
                    let ld = numbers::lah_deg(&l6.recip(), m)?;
                    let ml = -l6.clone();
                    tri("scaled_lah_reciprocal", m, |n, k| {
                        pow_i(&ml, n - k) * ld.at(n, k)
                    })
                });
            }
            fam
        }

        "central" => Family::from_fn(id, own, move |n| Ok(central_factorial(n, &one)))
            .with_sheffer(ShefferPair::associated(|n| {
                Ok(numbers::central_sinh(&int(1), n))
            })?)
            .s2_oracle("central1_stirling2", |m| {
                Ok(numbers::central1(m)?.product(&*numbers::stirling2(m)?))
            })
            .s2_oracle(
                "gf_half_t_root",
                gf_oracle("gf", |m| {
                    // (t/2)(t + √(t²+4)) with √(t²+4) = 2(1 + t²/4)^{1/2}
                    let root = Fps::new(vec![int(1), int(0), ratio(1, 4)], m)
                        .pow_rational(&ratio(1, 2))?;
                    let inner = &Fps::t(m) + &root.scale(&int(2));
                    Ok((Fps::one(m), (&Fps::t(m) * &inner).scale(&ratio(1, 2))))
                }),
            )
            .s1_oracle("stirling1_central2", |m| {
                Ok(numbers::stirling1(m)?.product(&*numbers::central2(m)?))
            }),

        "central_bell" => Family::new(id, own, |m| {
            let t2 = numbers::central2(m)?;
            Ok((0..=m)
                .map(|n| Polynomial::new(t2.row(n).unwrap().to_vec()))
                .collect())
        })
        .with_sheffer(ShefferPair::associated(|n| {
            numbers::central_u_pow(&int(0), n)
        })?)
        .s2_oracle("central2_stirling2", |m| {
            Ok(numbers::central2(m)?.product(&*numbers::stirling2(m)?))
        })
        .s2_oracle(
            "gf_exp_sinh",
            gf_oracle("gf", |m| {
                let e = numbers::central_sinh(&int(1), m).exp()?;
                Ok((Fps::one(m), &e - &Fps::one(m)))
            }),
        )
        .s1_oracle("stirling1_central1", |m| {
            Ok(numbers::stirling1(m)?.product(&*numbers::central1(m)?))
        }),

        "central_bell_deg" => {
            let l = lam();
            let (l1, l2, l3, l4, l5) = (l.clone(), l.clone(), l.clone(), l.clone(), l);
            Family::new(id, own, move |m| {
                let t2 = numbers::central2_deg(&l1, m)?;
                Ok((0..=m)
                    .map(|n| Polynomial::new(t2.row(n).unwrap().to_vec()))
                    .collect())
            })
            .with_sheffer(ShefferPair::associated(move |n| {
                numbers::central_u_pow(&l2, n)
            })?)
            .s2_oracle("central2_deg_stirling2", move |m| {
                Ok(numbers::central2_deg(&l3, m)?.product(&*numbers::stirling2(m)?))
            })
            .s2_oracle(
                "gf_exp_deg_sinh",
                gf_oracle("gf", move |m| {
                    let e = numbers::degenerate_half_sinh(&l4, m)?.exp()?;
                    Ok((Fps::one(m), &e - &Fps::one(m)))
                }),
            )
            .s1_oracle("stirling1_central1_deg", move |m| {
                Ok(numbers::stirling1(m)?.product(&*numbers::central1_deg(&l5, m)?))
            })
        }

        "central_deg" => {
            let l = lam();
            let (l1, l2, l3, l4, l5) = (l.clone(), l.clone(), l.clone(), l.clone(), l);
            Family::from_fn(id, own, move |n| Ok(central_factorial(n, &l1)))
                .with_sheffer(ShefferPair::associated(move |n| {
                    Ok(numbers::central_sinh(&l2, n))
                })?)
                .s2_oracle("central_r1_stirling2", move |m| {
                    Ok(numbers::central_r1(&l3, m)?.product(&*numbers::stirling2(m)?))
                })
                .s2_oracle(
                    "gf_root_power",
                    gf_oracle("gf", move |m| {
                        // ((λt + √(λ²t² + 4))/2)^{2/λ} - 1 = u(λt)^{2/λ} - 1
                        let base = if l4.is_zero() {
                            &Fps::exp_linear(&int(1), m) - &Fps::one(m)
                        } else {
                            let u = central_root(m)?.scale_arg(&l4);
                            &u.pow_rational(&(int(2) / &l4))? - &Fps::one(m)
                        };
                        Ok((Fps::one(m), base))
                    }),
                )
                .s1_oracle("stirling1_central_r2", move |m| {
                    Ok(numbers::stirling1(m)?.product(&*numbers::central_r2(&l5, m)?))
                })
        }

        "lah_bell" => Family::new(id, own, |m| {
            let l = numbers::lah(m)?;
            Ok((0..=m)
                .map(|n| Polynomial::new(l.row(n).unwrap().to_vec()))
                .collect())
        })
        .with_sheffer(ShefferPair::associated(|n| {
            Fps::t(n).div(&Fps::new(vec![int(1), int(1)], n))
        })?)
        .s2_oracle("lah_stirling2", |m| {
            Ok(numbers::lah(m)?.product(&*numbers::stirling2(m)?))
        })
        .s1_oracle("stirling1_signed_lah", |m| {
            let (s1, l) = (numbers::stirling1(m)?, numbers::lah(m)?);
            tri("stirling1_signed_lah", m, |n, k| {
                sum(k, n, |j| sgn(j - k) * s1.at(n, j) * l.at(j, k))
            })
        }),

        "lah_bell_deg" => {
            let l = lam();
            let (l1, l2, l3, l4, l5) = (l.clone(), l.clone(), l.clone(), l.clone(), l);
            Family::new(id, own, move |m| {
                let lah = numbers::lah(m)?;
                Ok((0..=m)
                    .map(|n| combine(lah.row(n).unwrap(), |k| falling_factorial(k, &l1)))
                    .collect())
            })
            .with_sheffer(ShefferPair::associated(move |n| {
                let e = expm1_scaled(&l2, n);
                e.div(&(&Fps::one(n) + &e))
            })?)
            .s2_oracle("lah_lah_deg_neg", move |m| {
                Ok(numbers::lah(m)?.product(&*numbers::lah_deg(&-l3.clone(), m)?))
            })
            .s1_oracle("stirling1_deg_signed_lah", move |m| {
                let (s1, lah) = (numbers::stirling1_deg(&l4, m)?, numbers::lah(m)?);
                tri("stirling1_deg_signed_lah", m, |n, k| {
                    sum(k, n, |j| sgn(j - k) * s1.at(n, j) * lah.at(j, k))
                })
            })
            .s1_oracle(
                "gf_log_ratio",
                gf_oracle("gf", move |m| {
                    let lg = degenerate_log1p(&l5, m)?;
                    Ok((Fps::one(m), lg.div(&(&Fps::one(m) + &lg))?))
                }),
            )
        }

        "bell" => Family::new(id, own, |m| {
            let s2 = numbers::stirling2(m)?;
            Ok((0..=m)
                .map(|n| Polynomial::new(s2.row(n).unwrap().to_vec()))
                .collect())
        })
        .with_sheffer(ShefferPair::associated(|n| Ok(Fps::log1p(n)))?)
        .s2_oracle("stirling2_stirling2", |m| {
            let s2 = numbers::stirling2(m)?;
            Ok(s2.product(&s2))
        })
        .s1_oracle("stirling1_stirling1", |m| {
            let s1 = numbers::stirling1(m)?;
            Ok(s1.product(&s1))
        }),

        "bell_partial_deg" => {
            let l = lam();
            let (l1, l2, l3, l4) = (l.clone(), l.clone(), l.clone(), l);
            Family::new(id, own, move |m| {
                let s2 = numbers::stirling2_deg(&l1, m)?;
                Ok((0..=m)
                    .map(|n| Polynomial::new(s2.row(n).unwrap().to_vec()))
                    .collect())
            })
            .with_sheffer(ShefferPair::associated(move |n| degenerate_log1p(&l2, n))?)
            .s2_oracle("stirling2_deg_stirling2", move |m| {
                Ok(numbers::stirling2_deg(&l3, m)?.product(&*numbers::stirling2(m)?))
            })
            .s1_oracle("stirling1_stirling1_deg", move |m| {
                Ok(numbers::stirling1(m)?.product(&*numbers::stirling1_deg(&l4, m)?))
            })
        }

        "bell_full_deg" => {
            let l = lam();
            let (l1, l2, l3, l4, l5) = (l.clone(), l.clone(), l.clone(), l.clone(), l);
            Family::new(id, own, move |m| {
                let s2 = numbers::stirling2_deg(&l1, m)?;
                Ok((0..=m)
                    .map(|n| combine(s2.row(n).unwrap(), |k| falling_factorial(k, &l1)))
                    .collect())
            })
            .with_sheffer(ShefferPair::associated(move |n| {
                degenerate_log1p(&l2, n)?.compose(&expm1_scaled(&l2, n))
            })?)
            .s2_oracle("stirling2_deg_lah_deg_neg", move |m| {
                Ok(numbers::stirling2_deg(&l3, m)?.product(&*numbers::lah_deg(&-l3.clone(), m)?))
            })
            .s1_oracle("stirling1_deg_stirling1_deg", move |m| {
                let s1 = numbers::stirling1_deg(&l4, m)?;
                Ok(s1.product(&s1))
            })
            .s1_oracle(
                "gf_nested_log",
                gf_oracle("gf", move |m| {
                    let lg = degenerate_log1p(&l5, m)?;
                    Ok((Fps::one(m), lg.compose(&lg)?))
                }),
            )
        }

        "mittag_leffler" => Family::from_fn(id, own, |n| {
            let zero = int(0);
            let s: Polynomial = (0..=n)
                .map(|j| {
                    let shift = int(n as i64 - j as i64 - 1);
                    &binomial_poly(&zero, j) * &binomial_poly(&shift, n - j)
                })
                .sum();
            Ok(s.scale(&factorial(n)))
        })
        .with_sheffer(ShefferPair::associated(|n| {
            let e = expm1_scaled(&int(1), n);
            e.div(&(&e + &Fps::constant(int(2), n)))
        })?)
        .s2_oracle("pow2_lah", |m| {
            let l = numbers::lah(m)?;
            tri("pow2_lah", m, |n, k| pow_i(&int(2), k) * l.at(n, k))
        })
        .s1_oracle("signed_lah_over_pow2", |m| {
            let l = numbers::lah(m)?;
            tri("signed_lah_over_pow2", m, |n, k| {
                sgn(n - k) * l.at(n, k) / pow_i(&int(2), n)
            })
        })
        .s1_oracle(
            "gf_half_ratio",
            gf_oracle("gf", |m| {
                let half = Fps::monomial(1, ratio(1, 2), m);
                Ok((Fps::one(m), half.div(&(&Fps::one(m) + &half))?))
            }),
        ),

        "laguerre_m1" => Family::new(id, own, |m| {
            let l = numbers::lah(m)?;
            Ok((0..=m)
                .map(|n| {
                    Polynomial::new(
                        (0..=n)
                            .map(|k| sign(k) * l.at(n as i64, k as i64))
                            .collect(),
                    )
                })
                .collect())
        })
        .with_sheffer(ShefferPair::associated(|n| {
            Fps::t(n).div(&Fps::new(vec![int(-1), int(1)], n))
        })?)
        .s2_oracle("signed_lah_stirling2", |m| {
            let (l, s2) = (numbers::lah(m)?, numbers::stirling2(m)?);
            tri("signed_lah_stirling2", m, |n, k| {
                sum(k, n, |j| sgn(j) * l.at(n, j) * s2.at(j, k))
            })
        })
        .s1_oracle("signed_stirling1_lah", |m| {
            let (s1, l) = (numbers::stirling1(m)?, numbers::lah(m)?);
            tri("signed_stirling1_lah", m, |n, k| {
                sgn(k) * sum(k, n, |j| s1.at(n, j) * l.at(j, k))
            })
        }),

        "bernoulli" => Family::new(id, own, |m| Ok(bernoulli_polys(m)))
            .with_sheffer(ShefferPair::new(
                |n| expm1_scaled(&int(1), n + 1).div(&Fps::t(n + 1)),
                |n| Ok(Fps::t(n)),
            )?)
            .s2_oracle("stirling2_binomial_bernoulli", |m| {
                let (s2, b) = (numbers::stirling2(m)?, numbers::bernoulli_numbers(m));
                tri("stirling2_binomial_bernoulli", m, |n, k| {
                    sum(k, n, |l| s2.at(l, k) * binom(n, l) * &b[(n - l) as usize])
                })
            })
            .s2_oracle("binomial_stirling2_bernoulli", |m| {
                let (s2, b) = (numbers::stirling2(m)?, numbers::bernoulli_numbers(m));
                tri("binomial_stirling2_bernoulli", m, |n, k| {
                    sum(0, n - k, |l| binom(n, l) * s2.at(n - l, k) * &b[l as usize])
                })
            })
            .s2_oracle(
                "gf_bernoulli",
                gf_oracle("gf", |m| {
                    let e = expm1_scaled(&int(1), m + 1);
                    Ok((Fps::t(m + 1).div(&e)?, e.truncate(m)))
                }),
            )
            .s1_oracle("stirling1_rising_ratio", |m| {
                let s1 = numbers::stirling1(m)?;
                tri("stirling1_rising_ratio", m, |n, k| {
                    sum(k, n, |l| {
                        s1.at(n, l) / int(l + 1) * falling_value(&int(l + 1), k as usize)
                    }) / factorial(k as usize)
                })
            }),

        "euler" => Family::new(id, own, |m| Ok(euler_polys(m)))
            .with_sheffer(ShefferPair::new(
                |n| Ok((&Fps::exp_linear(&int(1), n) + &Fps::one(n)).scale(&ratio(1, 2))),
                |n| Ok(Fps::t(n)),
            )?)
            .s2_oracle("binomial_stirling2_euler", |m| {
                let (s2, e) = (numbers::stirling2(m)?, numbers::euler_numbers(m));
                tri("binomial_stirling2_euler", m, |n, k| {
                    sum(0, n - k, |l| binom(n, l) * s2.at(n - l, k) * &e[l as usize])
                })
            })
            .s2_oracle("binomial_stirling2_euler_alt", |m| {
                let (s2, e) = (numbers::stirling2(m)?, numbers::euler_numbers(m));
                tri("binomial_stirling2_euler_alt", m, |n, k| {
                    sum(k, n, |l| binom(n, l) * s2.at(l, k) * &e[(n - l) as usize])
                })
            })
            .s2_oracle(
                "gf_euler",
                gf_oracle("gf", |m| {
                    let denom = &Fps::exp_linear(&int(1), m) + &Fps::one(m);
                    Ok((
                        Fps::constant(int(2), m).div(&denom)?,
                        expm1_scaled(&int(1), m),
                    ))
                }),
            )
            .s1_oracle("stirling1_falling_half", |m| {
                let s1 = numbers::stirling1(m)?;
                tri("stirling1_falling_half", m, |n, k| {
                    let s = sum(k, n, |l| s1.at(n, l) * falling_value(&int(l), k as usize));
                    s / (int(2) * factorial(k as usize)) + s1.at(n, k) / int(2)
                })
            }),

        "gould_hopper" => {
            let r = own["r"].clone();
            let s = own["s"].clone();
            if r.is_zero() {
                return Err(Error::InvalidParam("gould_hopper needs r != 0".into()));
            }
            let lin = Polynomial::new(vec![s.clone(), r.clone()]);
            let (r1, s1v) = (r.clone(), s.clone());
            let (r2, s2v) = (r.clone(), s.clone());
            let (r3, s3v) = (r.clone(), s.clone());
            Family::from_fn(id, own, move |n| {
                Ok(falling_factorial(n, &one).compose(&lin))
            })
            .with_sheffer(ShefferPair::new(
                {
                    let c = -(&s / &r);
                    move |n| Ok(Fps::exp_linear(&c, n))
                },
                {
                    let ir = r.recip();
                    move |n| Ok(expm1_scaled(&ir, n).scale(&ir))
                },
            )?)
            .s2_oracle("gould_hopper_triple_sum", move |m| {
                let (st1, st2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
                tri("gould_hopper_triple_sum", m, |n, k| {
                    sum(k, n, |l| {
                        sum(k, l, |j| {
                            binom(n, l)
                                * pow_i(&r1, j)
                                * falling_value(&s1v, (n - l) as usize)
                                * st1.at(l, j)
                                * st2.at(j, k)
                        })
                    })
                })
            })
            .s2_oracle(
                "gf_gould_hopper",
                gf_oracle("gf", move |m| {
                    // (1+t)^s ((1+t)^r - 1)^k / k!
                    let onep = Fps::new(vec![int(1), int(1)], m);
                    Ok((
                        onep.pow_rational(&s3v)?,
                        &onep.pow_rational(&r3)? - &Fps::one(m),
                    ))
                }),
            )
            .s1_oracle("gould_hopper_inverse_sum", move |m| {
                let (st1, st2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
                let ms = -s2v.clone();
                tri("gould_hopper_inverse_sum", m, |n, k| {
                    sum(k, n, |l| {
                        sum(k, l, |i| {
                            pow_i(&ms, l - i) / pow_i(&r2, l)
                                * binom(l, i)
                                * st1.at(n, l)
                                * st2.at(i, k)
                        })
                    })
                })
            })
        }

        "bernoulli2nd" => Family::new(id, own, |m| {
            let b = numbers::bernoulli2nd_numbers(m)?;
            Ok((0..=m)
                .map(|n| {
                    let c: Vec<Rational> = (0..=n).map(|j| binomial(n, j) * &b[n - j]).collect();
                    combine(&c, |j| falling_factorial(j, &int(1)))
                })
                .collect())
        })
        .with_sheffer(ShefferPair::new(
            |n| Fps::t(n + 1).div(&expm1_scaled(&int(1), n + 1)),
            |n| Ok(expm1_scaled(&int(1), n)),
        )?)
        .s2_oracle("binomial_b2", |m| {
            let b = numbers::bernoulli2nd_numbers(m)?;
            tri("binomial_b2", m, |n, k| binom(n, k) * &b[(n - k) as usize])
        })
        .s2_oracle("binomial_b2_double_sum", |m| {
            let b = numbers::bernoulli2nd_numbers(m)?;
            let (s1, s2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
            tri("binomial_b2_double_sum", m, |n, k| {
                sum(k, n, |j| {
                    sum(k, j, |l| {
                        binom(n, j) * &b[(n - j) as usize] * s1.at(j, l) * s2.at(l, k)
                    })
                })
            })
        })
        .s1_oracle("binomial_stirling1_bernoulli", |m| {
            let (s1, b) = (numbers::stirling1(m)?, numbers::bernoulli_numbers(m));
            tri("binomial_stirling1_bernoulli", m, |n, k| {
                binom(n, k) * sum(0, n - k, |l| s1.at(n - k, l) * &b[l as usize])
            })
        }),

        "poisson_charlier" => {
            let a = own["a"].clone();
            if a.is_zero() {
                return Err(Error::InvalidParam("poisson_charlier needs a != 0".into()));
            }
            let (a1, a2, a3, a4, a5, a6) = (
                a.clone(),
                a.clone(),
                a.clone(),
                a.clone(),
                a.clone(),
                a.clone(),
            );
            Family::from_fn(id, own, move |n| {
                let c: Vec<Rational> = (0..=n)
                    .map(|k| binomial(n, k) * sign(n - k) * pow_i(&a1, -(k as i64)))
                    .collect();
                Ok(combine(&c, |k| falling_factorial(k, &int(1))))
            })
            .with_sheffer(ShefferPair::new(
                move |n| expm1_scaled(&int(1), n).scale(&a2).exp(),
                move |n| Ok(expm1_scaled(&int(1), n).scale(&a3)),
            )?)
            .s2_oracle("binomial_signed_power", move |m| {
                tri("binomial_signed_power", m, |n, k| {
                    binom(n, k) * sgn(n - k) * pow_i(&a4, -k)
                })
            })
            .s2_oracle("binomial_signed_power_double_sum", move |m| {
                let (s1, s2) = (numbers::stirling1(m)?, numbers::stirling2(m)?);
                tri("binomial_signed_power_double_sum", m, |n, k| {
                    sum(k, n, |j| {
                        sum(k, j, |l| {
                            sgn(n - j) * pow_i(&a5, -j) * binom(n, j) * s1.at(j, l) * s2.at(l, k)
                        })
                    })
                })
            })
            .s1_oracle("binomial_stirling1_bell", move |m| {
                let s1 = numbers::stirling1(m)?;
                let bel = numbers::bell_values(&a6, m)?;
                tri("binomial_stirling1_bell", m, |n, k| {
                    pow_i(&a6, k)
                        * binom(n, k)
                        * sum(0, n - k, |l| s1.at(n - k, l) * &bel[l as usize])
                })
            })
        }

        "bernoulli_product" => Family::new(id, own, |m| {
            let bp = bernoulli_polys(m);
            Ok((0..=m)
                .map(|n| (0..=n).map(|k| &bp[k] * &bp[n - k]).sum())
                .collect())
        })
        .s2_oracle("bernoulli_product_expansion", bernoulli_product_s2)
        .s1_oracle("bernoulli_product_back_substitution", |m| {
            bernoulli_product_s1(m)
        }),

        _ => return Err(Error::UnknownFamily(id.to_string())),
    };
    Ok(fam)
}

/// `p_n = (2/(n+2)) Σ_{m<=n-2} C(n+2,m) B_{n-m} B_m(x) + (n+1) B_n(x)`.
pub fn bernoulli_product_alt(max_n: usize) -> Vec<Polynomial> {
    let b = numbers::bernoulli_numbers(max_n);
    let bp = bernoulli_polys(max_n);
    (0..=max_n)
        .map(|n| {
            let head: Polynomial = (0..=n.saturating_sub(2))
                .take_while(|&m| m + 2 <= n)
                .map(|m| bp[m].scale(&(binomial(n + 2, m) * &b[n - m])))
                .sum();
            &head.scale(&ratio(2, n as i64 + 2)) + &bp[n].scale(&int(n as i64 + 1))
        })
        .collect()
}

/// S2 of the Bernoulli-product family through the Bernoulli expansion:
/// `(2/(n+2)) Σ_m C(n+2,m) B_{n-m} β(m,k) + (n+1) β(n,k)`,
/// with `β(m,k) = Σ_l C(m,l) S2(m-l,k) B_l`.
pub fn bernoulli_product_s2(max_n: usize) -> Result<Triangle> {
    let s2 = numbers::stirling2(max_n)?;
    let b = numbers::bernoulli_numbers(max_n);
    let beta = |m: i64, k: i64| sum(0, m - k, |l| binom(m, l) * s2.at(m - l, k) * &b[l as usize]);
    tri("bernoulli_product_expansion", max_n, |n, k| {
        let head = sum(0, n - 2, |m| {
            binom(n + 2, m) * &b[(n - m) as usize] * beta(m, k)
        });
        head * ratio(2, n + 2) + int(n + 1) * beta(n, k)
    })
}

/// S1 of the Bernoulli-product family from `Γ = A S`: `γ_m` expands `(x)_n`
/// in Bernoulli polynomials, `A` is upper triangular with diagonal
/// `1, 2, ..., n+1`, and `S` is found by back substitution.
pub fn bernoulli_product_s1(max_n: usize) -> Result<Triangle> {
    let s1 = numbers::stirling1(max_n)?;
    let b = numbers::bernoulli_numbers(max_n);
    let mut rows = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let ni = n as i64;
        let gamma: Vec<Rational> = (0..=ni)
            .map(|m| {
                sum(m, ni, |l| {
                    s1.at(ni, l) / int(l + 1) * falling_value(&int(l + 1), m as usize)
                }) / factorial(m as usize)
            })
            .collect();
        let eps = |m: usize, k: usize| ratio(2, k as i64 + 2) * binomial(k + 2, m) * &b[k - m];
        let mut s = vec![Rational::zero(); n + 1];
        for m in (0..=n).rev() {
            let tail = ((m + 2)..=n).fold(Rational::zero(), |acc, k| acc + eps(m, k) * &s[k]);
            s[m] = (&gamma[m] - tail) / int(m as i64 + 1);
        }
        rows.push(s);
    }
    Triangle::from_rows("bernoulli_product_back_substitution", rows)
}

/// Every family at every sample parameter set.
pub fn all_samples() -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for id in FAMILY_IDS {
        for p in sample_params(id)? {
            out.push(family(id, &p)?);
        }
    }
    Ok(out)
}

/// Every family at its first sample parameter set.
pub fn all_default() -> Result<Vec<Family>> {
    FAMILY_IDS
        .iter()
        .map(|id| family(id, &sample_params(id)?[0]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let none = Params::new();
        assert_eq!(
            family("monomial", &none).unwrap().poly(3).unwrap(),
            x_pow(3)
        );
        assert_eq!(
            family("bernoulli", &none).unwrap().poly(1).unwrap(),
            Polynomial::new(vec![ratio(-1, 2), int(1)])
        );
        assert_eq!(
            family("bernoulli_product", &none).unwrap().poly(2).unwrap(),
            Polynomial::new(vec![ratio(7, 12), int(-3), int(3)])
        );
    }

    #[test]
    fn errors() {
        let none = Params::new();
        assert!(matches!(
            family("nope", &none),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            family("falling_deg", &none),
            Err(Error::MissingParam { .. })
        ));
        let bad_r = Params::from([("r".into(), int(0)), ("s".into(), int(1))]);
        assert!(matches!(
            family("gould_hopper", &bad_r),
            Err(Error::InvalidParam(_))
        ));
        let bad_a = Params::from([("a".into(), int(0))]);
        assert!(matches!(
            family("poisson_charlier", &bad_a),
            Err(Error::InvalidParam(_))
        ));
        assert!(family("bernoulli_product", &none).unwrap().pair().is_err());
    }

    #[test]
    fn sheffer_pairs_reproduce_generators() {
        for fam in all_samples().unwrap() {
            let Some(pair) = &fam.sheffer else { continue };
            let direct = fam.polys(10).unwrap();
            let gf = crate::umbral::sheffer_polys(pair, 10).unwrap();
            assert_eq!(direct, gf, "{}", fam.label());
        }
    }

    #[test]
    fn bernoulli_product_identity() {
        let fam = family("bernoulli_product", &Params::new()).unwrap();
        assert_eq!(fam.polys(8).unwrap(), bernoulli_product_alt(8));
    }

    #[test]
    fn labels() {
        let f = family("gould_hopper", &sample_params("gould_hopper").unwrap()[0]).unwrap();
        assert_eq!(f.label(), "gould_hopper(r=2,s=3)");
        assert_eq!(FAMILY_IDS.len(), 21);
    }
}
