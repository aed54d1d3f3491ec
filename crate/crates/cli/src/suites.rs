//! Verification suites over one family or all of them.

use clap::ValueEnum;
use umbra::associated;
use umbra::eulerian;
use umbra::exec;
use umbra::families::{family, required_params, sample_params, Family, FAMILY_IDS};
use umbra::numbers::Params;
use umbra::report::{Check, Report};
use umbra::umbral::pair_checks;
use umbra::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Orthogonality,
    Closedforms,
    Eulerian,
    Umbral,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Closedforms => "closedforms",
            Suite::Eulerian => "eulerian",
            Suite::Umbral => "umbral",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Orthogonality,
                Suite::Closedforms,
                Suite::Eulerian,
                Suite::Umbral,
            ],
            s => vec![s],
        }
    }
}

/// Families to verify. Parameters given on the command line override the
/// sample values; missing ones fall back to the samples.
pub fn select(id: &str, given: &Params) -> Result<Vec<Family>> {
    let ids: Vec<&str> = if id == "all" {
        FAMILY_IDS.to_vec()
    } else {
        vec![id]
    };
    let mut out: Vec<Family> = Vec::new();
    for id in ids {
        let required = required_params(id)?;
        for mut p in sample_params(id)? {
            for key in required {
                if let Some(v) = given.get(*key) {
                    p.insert(key.to_string(), v.clone());
                }
            }
            let f = family(id, &p)?;
            if !out.iter().any(|g| g.label() == f.label()) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

fn run_one(suite: Suite, fam: &Family, max_n: usize, seed: u64) -> Report {
    let mut r = Report::new(suite.name(), fam.label());
    match suite {
        Suite::Orthogonality => {
            r.extend(associated::verify_orthogonality(fam, max_n, 5, seed).checks)
        }
        Suite::Closedforms => {
            r.extend(associated::route_checks(fam, max_n));
            r.extend(associated::oracle_checks(fam, max_n));
            r.extend(associated::bar_checks(fam, max_n));
            r.push(associated::monomial_roundtrip(fam, max_n));
            r.push(associated::falling_at_minus_one(fam, max_n));
            r.push(associated::solve_reconstructs(fam, max_n));
        }
        Suite::Eulerian => r.extend(eulerian::family_checks(fam, max_n)),
        Suite::Umbral => match &fam.sheffer {
            Some(pair) => {
                r.extend(pair_checks(pair, max_n));
                r.push(match pair.f(max_n) {
                    Ok(f) => associated::log_exp_check(&f, max_n),
                    Err(e) => Check::run("assoc.log_exp_inverse", [0, max_n], |_| Err(e)),
                });
            }
            None => r.push(Check::skipped("umbral", [0, max_n], "no Sheffer pair")),
        },
        Suite::All => unreachable!("expanded before running"),
    }
    r.sorted()
}

/// Runs the suites, fanning out over families. Output is sorted by family
/// label, then suite, then identity id.
pub fn run(suite: Suite, fams: &[Family], classical: bool, max_n: usize, seed: u64) -> Vec<Report> {
    let jobs: Vec<(Suite, Family)> = suite
        .expand()
        .into_iter()
        .flat_map(|s| fams.iter().map(move |f| (s, f.clone())))
        .collect();
    let mut reports = exec::map(jobs, |(s, f)| run_one(s, &f, max_n, seed));
    if classical && suite.expand().contains(&Suite::Eulerian) {
        let mut r = Report::new("eulerian", "classical");
        r.extend(eulerian::classical_checks(max_n, max_n.min(8)));
        reports.push(r.sorted());
    }
    reports.sort_by(|a, b| (&a.family, &a.suite).cmp(&(&b.family, &b.suite)));
    reports
}
