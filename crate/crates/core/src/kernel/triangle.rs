//! Lower-triangular number arrays `T(n, k)`, `0 <= k <= n <= max_n`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub name: String,
    pub params: BTreeMap<String, Rational>,
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    /// Builds a triangle from explicit rows; row `n` must have `n + 1` entries.
    pub fn from_rows(name: impl Into<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::Precondition(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(Triangle {
            name: name.into(),
            params: BTreeMap::new(),
            rows,
        })
    }

    pub fn from_fn<F>(name: impl Into<String>, max_n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Rational>,
    {
        let rows = (0..=max_n)
            .map(|n| (0..=n).map(|k| f(n, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(name, rows)
    }

    pub fn with_param(mut self, key: &str, value: Rational) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[Rational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&Rational> {
        if k > n {
            return Err(Error::IndexOutOfRange { n, k });
        }
        self.rows
            .get(n)
            .map(|r| &r[k])
            .ok_or(Error::IndexOutOfRange { n, k })
    }

    /// Entry with the convention `T(n, k) = 0` outside `0 <= k <= n`.
    /// Panics if `n` is beyond the computed range.
    pub fn at(&self, n: i64, k: i64) -> Rational {
        if n < 0 || k < 0 || k > n {
            return Rational::zero();
        }
        assert!(
            (n as usize) < self.rows.len(),
            "{}: row {n} not computed (max_n = {})",
            self.name,
            self.max_n()
        );
        self.rows[n as usize][k as usize].clone()
    }

    /// Restricts to rows `0..=max_n`.
    pub fn truncated(&self, max_n: usize) -> Triangle {
        Triangle {
            name: self.name.clone(),
            params: self.params.clone(),
            rows: self.rows.iter().take(max_n + 1).cloned().collect(),
        }
    }

    /// Matrix product `(self · other)(n, l) = Σ_k self(n, k) other(k, l)`.
    pub fn product(&self, other: &Triangle) -> Triangle {
        let m = self.max_n().min(other.max_n());
        let rows = (0..=m)
            .map(|n| {
                (0..=n)
                    .map(|l| {
                        (l..=n).fold(Rational::zero(), |acc, k| {
                            acc + &self.rows[n][k] * &other.rows[k][l]
                        })
                    })
                    .collect()
            })
            .collect();
        Triangle {
            name: format!("{}*{}", self.name, other.name),
            params: BTreeMap::new(),
            rows,
        }
    }

    /// First entry that differs from the identity matrix.
    pub fn identity_defect(&self) -> Option<(usize, usize, Rational)> {
        for (n, row) in self.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let want = if n == k {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if *v != want {
                    return Some((n, k, v.clone()));
                }
            }
        }
        None
    }

    /// Renders each entry as `p` or `p/q`.
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    #[test]
    fn shape_and_access() {
        let t = Triangle::from_fn("pascal", 4, |n, k| Ok(crate::kernel::binomial(n, k))).unwrap();
        assert_eq!(t.max_n(), 4);
        assert_eq!(*t.get(4, 2).unwrap(), int(6));
        assert!(t.get(2, 3).is_err());
        assert!(t.get(5, 0).is_err());
        assert_eq!(t.at(3, -1), int(0));
        assert_eq!(t.at(3, 4), int(0));
        assert!(Triangle::from_rows("bad", vec![vec![int(1)], vec![int(1)]]).is_err());
    }

    #[test]
    fn pascal_inverse_is_signed_pascal() {
        let p = Triangle::from_fn("p", 6, |n, k| Ok(crate::kernel::binomial(n, k))).unwrap();
        let q = Triangle::from_fn("q", 6, |n, k| {
            Ok(crate::kernel::sign(n - k) * crate::kernel::binomial(n, k))
        })
        .unwrap();
        assert_eq!(p.product(&q).identity_defect(), None);
        assert!(p.product(&p).identity_defect().is_some());
    }
}
