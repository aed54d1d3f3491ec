#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use umbra::associated::{self, Kind};
use umbra::eulerian::{self, classical_explicit, classical_recurrence, eulerian_classical};
use umbra::families::{family, Family};
use umbra::kernel::{falling_factorial, int, ratio};
use umbra::numbers::Params;
use umbra::report::Check;
use umbra::umbral::{sheffer_polys, ShefferPair};
use umbra::{Fps, Polynomial, Rational};

const N: usize = 6;

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    small().prop_filter("nonzero", |r| *r != int(0))
}

fn truncated(coeffs: Vec<Rational>) -> impl Fn(usize) -> umbra::Result<Fps> {
    move |order| {
        let mut c = coeffs.clone();
        c.resize(order + 1, int(0));
        Ok(Fps::new(c, order))
    }
}

/// Sheffer family with polynomial `g` and `f` of low degree.
fn sheffer_family() -> impl Strategy<Value = Family> {
    (
        prop::collection::vec(small(), 0..3),
        nonzero(),
        prop::collection::vec(small(), 0..3),
        any::<bool>(),
    )
        .prop_map(|(g_tail, f1, f_tail, associated)| {
            let mut g = vec![int(1)];
            if !associated {
                g.extend(g_tail);
            }
            let mut f = vec![int(0), f1];
            f.extend(f_tail);
            let pair = ShefferPair::new(truncated(g), truncated(f)).unwrap();
            let gen = pair.clone();
            Family::new("random_sheffer", Params::new(), move |n| {
                sheffer_polys(&gen, n)
            })
            .with_sheffer(pair)
        })
}

/// `p_0 = 1` and `p_n` of exact degree `n` with random coefficients.
fn free_family() -> impl Strategy<Value = Family> {
    prop::collection::vec((nonzero(), prop::collection::vec(small(), N)), N).prop_map(|rows| {
        let polys: Vec<Polynomial> = std::iter::once(Polynomial::one())
            .chain(rows.into_iter().enumerate().map(|(i, (lead, low))| {
                let n = i + 1;
                let mut c: Vec<Rational> = low.into_iter().take(n).collect();
                c.push(lead);
                Polynomial::new(c)
            }))
            .collect();
        Family::from_fn("random_free", Params::new(), move |n| {
            polys
                .get(n)
                .cloned()
                .ok_or(umbra::Error::IndexOutOfRange { n, k: 0 })
        })
    })
}

fn all_pass(checks: &[Check]) -> Result<(), TestCaseError> {
    for c in checks {
        prop_assert!(
            c.passed(),
            "{} failed: {:?} {:?}",
            c.identity_id,
            c.first_failure,
            c.note
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sheffer_families_satisfy_everything(fam in sheffer_family(), seed in any::<u64>()) {
        all_pass(&associated::full_report(&fam, N, seed).checks)?;
        all_pass(&eulerian::family_checks(&fam, N))?;
    }

    #[test]
    fn free_families_satisfy_orthogonality(fam in free_family(), seed in any::<u64>()) {
        all_pass(&associated::verify_orthogonality(&fam, N, 3, seed).checks)?;
        all_pass(&[
            associated::monomial_roundtrip(&fam, N),
            associated::falling_at_minus_one(&fam, N),
            associated::solve_reconstructs(&fam, N),
        ])?;
        all_pass(&associated::bar_checks(&fam, N))?;
    }

    #[test]
    fn free_families_eulerian(fam in free_family()) {
        let tri = eulerian::assoc_triangle(&fam, N).unwrap();
        let via_monomials = eulerian::assoc_polys_via_monomials(&fam, N).unwrap();
        for n in 0..=N {
            let row = Polynomial::new(tri.row(n).unwrap().to_vec());
            prop_assert_eq!(&row, &via_monomials[n]);
            let w = eulerian::worpitzky_expand(&fam, n).unwrap();
            prop_assert_eq!(eulerian::worpitzky_rebuild(&w, n), fam.poly(n).unwrap());
        }
        all_pass(&eulerian::family_checks(&fam, N))?;
    }

    #[test]
    fn first_kind_reconstructs_falling(fam in free_family()) {
        let s1 = associated::triangle(&fam, Kind::First, N).unwrap();
        let ps = fam.polys(N).unwrap();
        for n in 0..=N {
            let mut acc = Polynomial::zero();
            for (k, p) in ps.iter().enumerate().take(n + 1) {
                acc = &acc + &p.scale(s1.get(n, k).unwrap());
            }
            prop_assert_eq!(acc, falling_factorial(n, &int(1)));
        }
    }

    #[test]
    fn degenerate_orthogonality(lambda in nonzero(), seed in any::<u64>()) {
        for id in ["falling_deg", "rising_deg", "central_deg", "lah_bell_deg", "bell_full_deg"] {
            let mut p = Params::new();
            p.insert("lambda".into(), lambda.clone());
            let fam = family(id, &p).unwrap();
            all_pass(&associated::verify_orthogonality(&fam, N, 2, seed).checks)?;
            all_pass(&associated::oracle_checks(&fam, N))?;
        }
    }

    #[test]
    fn classical_routes_agree(n in 0usize..14, k in 0usize..14) {
        let explicit = eulerian_classical(n, k.min(n)).unwrap();
        let table = classical_recurrence(n);
        prop_assert_eq!(table.get(n, k.min(n)).unwrap(), &explicit);
    }
}

#[test]
fn classical_tables_agree() {
    assert_eq!(
        classical_explicit(16).rows(),
        classical_recurrence(16).rows()
    );
}
