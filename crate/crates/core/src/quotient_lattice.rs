//! Exact arithmetic in the quotient lattice `N = Z^n / Z(1, ..., 1)`.
//!
//! Every class is stored by its canonical representative, the one whose
//! minimum coordinate is zero. Indicator vectors `e_A` of proper nonempty
//! subsets are therefore their own representatives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z^n / Z(1, ..., 1)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    /// Canonical representative of `raw`: subtract the minimum coordinate.
    pub fn canonicalize(n: usize, raw: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                min: 2,
                max: usize::MAX,
            });
        }
        if raw.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: raw.len(),
            });
        }
        let min = *raw.iter().min().expect("n >= 2");
        let coords = raw
            .iter()
            .map(|&x| x.checked_sub(min).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    /// The class of `e_A = sum of e_i over i in A`; elements are 1-based.
    pub fn indicator(n: usize, subset: &[usize]) -> Result<Self> {
        let mut raw = vec![0i64; n];
        for &i in subset {
            if i == 0 || i > n {
                return Err(Error::InvalidSubset { element: i, n });
            }
            raw[i - 1] = 1;
        }
        Self::canonicalize(n, &raw)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::canonicalize(n, &vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    /// Elements `i` (1-based) where the representative is nonzero. For an
    /// indicator vector `e_A` this recovers `A`.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let raw = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(self.n(), &raw)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let raw = self
            .coords
            .iter()
            .map(|x| x.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(self.n(), &raw)
    }

    /// Image under the chart `v -> (v_1 - v_n, ..., v_{n-1} - v_n)`, an
    /// isomorphism `N -> Z^{n-1}`.
    pub fn chart(&self) -> Vec<i64> {
        let last = self.coords[self.n() - 1];
        self.coords[..self.n() - 1]
            .iter()
            .map(|x| x - last)
            .collect()
    }
}

impl TryFrom<Vec<i64>> for LatticeVector {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Self::canonicalize(raw.len(), &raw)
    }
}

impl From<LatticeVector> for Vec<i64> {
    fn from(v: LatticeVector) -> Self {
        v.coords
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical form of the coordinate-wise sum.
pub fn sum_vectors(vs: &[LatticeVector]) -> Result<LatticeVector> {
    let (first, rest) = vs.split_first().ok_or(Error::EmptyInput)?;
    let zero = LatticeVector::zero(first.n())?;
    rest.iter()
        .try_fold(first.checked_add(&zero)?, |acc, v| acc.checked_add(v))
}

/// Whether `vs` extends to a basis of `N`.
///
/// The chart images form an integer `k x (n-1)` matrix; the set extends to
/// a basis exactly when its Smith normal form has `k` invariant factors, all
/// equal to one.
pub fn is_unimodular_extendable(vs: &[LatticeVector]) -> Result<bool> {
    let Some(first) = vs.first() else {
        return Ok(true);
    };
    let n = first.n();
    if let Some(v) = vs.iter().find(|v| v.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.n(),
        });
    }
    if vs.len() > n - 1 {
        return Err(Error::TooManyVectors {
            count: vs.len(),
            rank: n - 1,
        });
    }
    let matrix: Vec<Vec<i64>> = vs.iter().map(LatticeVector::chart).collect();
    let factors = invariant_factors(matrix)?;
    Ok(factors.len() == vs.len() && factors.iter().all(|&d| d == 1))
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn invariant_factors(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
            else {
                return Ok(factors);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];

            let mut clean = true;
            let pivot_row = a[t].clone();
            for row in a.iter_mut().skip(t + 1) {
                let q = row[t] / p;
                if q != 0 {
                    for (x, &y) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                        *x = checked_mul_sub(*x, q, y)?;
                    }
                }
                clean &= row[t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = checked_mul_sub(row[j], q, row[t])?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and go again.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let other = a[i].clone();
                    for (x, &y) in a[t][t..].iter_mut().zip(&other[t..]) {
                        *x = x.checked_add(y).ok_or(Error::Overflow)?;
                    }
                }
                None => {
                    factors.push(p.checked_abs().ok_or(Error::Overflow)?);
                    break;
                }
            }
        }
    }
    Ok(factors)
}

fn checked_mul_sub(x: i64, q: i64, y: i64) -> Result<i64> {
    q.checked_mul(y)
        .and_then(|qy| x.checked_sub(qy))
        .ok_or(Error::Overflow)
}
