//! Fourier–Motzkin feasibility for systems of linear equations and
//! non-strict inequalities over `Q`.
//!
//! Equalities are eliminated first by exact Gaussian elimination; the
//! remaining inequalities are projected one variable at a time. Derived rows
//! whose ancestor set exceeds `eliminated + 1` are dropped (Chernikov's rule),
//! which keeps the intermediate systems small on the instances we see.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::rref;
use crate::ring::{primitive_bigint, Scalar};

/// Upper bound on the number of rows alive at any elimination step.
pub const DEFAULT_ROW_CAP: usize = 200_000;

#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub nvars: usize,
    /// `a · y = b`
    pub eqs: Vec<(Vec<Scalar>, Scalar)>,
    /// `a · y >= b`
    pub ineqs: Vec<(Vec<Scalar>, Scalar)>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            ..Default::default()
        }
    }

    pub fn eq(&mut self, a: Vec<Scalar>, b: Scalar) -> &mut Self {
        self.eqs.push((a, b));
        self
    }

    pub fn ge(&mut self, a: Vec<Scalar>, b: Scalar) -> &mut Self {
        self.ineqs.push((a, b));
        self
    }

    /// Adds `y_i >= 0` for every variable.
    pub fn nonneg(&mut self) -> &mut Self {
        for i in 0..self.nvars {
            let mut a = vec![Scalar::zero(); self.nvars];
            a[i] = Scalar::from_integer(1.into());
            self.ineqs.push((a, Scalar::zero()));
        }
        self
    }

    pub fn feasible(&self) -> Result<bool> {
        feasible(self, DEFAULT_ROW_CAP)
    }
}

#[derive(Clone)]
struct Row {
    /// coefficients followed by the constant: `a · y + c >= 0`
    v: Vec<BigInt>,
    hist: Vec<u64>,
}

fn hist_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

fn hist_count(h: &[u64]) -> usize {
    h.iter().map(|w| w.count_ones() as usize).sum()
}

fn to_int_row(coeffs: &[Scalar], constant: &Scalar) -> Vec<BigInt> {
    let all: Vec<Scalar> = coeffs.iter().chain(std::iter::once(constant)).cloned().collect();
    match crate::ring::primitive_integer(&all) {
        Some(v) => v,
        None => vec![BigInt::zero(); all.len()],
    }
}

pub fn feasible(sys: &LinearSystem, row_cap: usize) -> Result<bool> {
    let n = sys.nvars;
    for (a, _) in sys.eqs.iter().chain(&sys.ineqs) {
        if a.len() != n {
            return Err(Error::dims("fm::feasible", "row length differs from variable count"));
        }
    }

    // Equalities: y_p = b_r - sum_f m[r][f] y_f
    let mut aug: Vec<Vec<Scalar>> = sys
        .eqs
        .iter()
        .map(|(a, b)| {
            let mut r = a.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    for row in aug.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Ok(false);
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let m = sys.ineqs.len();
    let words = m.div_ceil(64).max(1);
    let mut rows: Vec<Row> = Vec::with_capacity(m);
    for (idx, (a, b)) in sys.ineqs.iter().enumerate() {
        let mut coeffs: Vec<Scalar> = free.iter().map(|&f| a[f].clone()).collect();
        let mut constant = -b.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if a[p].is_zero() {
                continue;
            }
            constant += &a[p] * &aug[r][n];
            for (k, &f) in free.iter().enumerate() {
                if !aug[r][f].is_zero() {
                    coeffs[k] -= &a[p] * &aug[r][f];
                }
            }
        }
        let mut hist = vec![0u64; words];
        hist[idx / 64] |= 1 << (idx % 64);
        rows.push(Row {
            v: to_int_row(&coeffs, &constant),
            hist,
        });
    }

    let nf = free.len();
    let mut alive: Vec<bool> = vec![true; nf];
    let mut eliminated = 0usize;
    loop {
        // drop variable-free rows, checking their sign
        let mut kept = Vec::with_capacity(rows.len());
        for r in rows {
            if r.v[..nf].iter().all(Zero::is_zero) {
                if r.v[nf].is_negative() {
                    return Ok(false);
                }
            } else {
                kept.push(r);
            }
        }
        rows = kept;
        if rows.is_empty() {
            return Ok(true);
        }

        let mut best: Option<(usize, i128)> = None;
        for j in (0..nf).filter(|&j| alive[j]) {
            let pos = rows.iter().filter(|r| r.v[j].is_positive()).count() as i128;
            let neg = rows.iter().filter(|r| r.v[j].is_negative()).count() as i128;
            if pos + neg == 0 {
                continue;
            }
            let score = pos * neg - pos - neg;
            if best.is_none_or(|(_, s)| score < s) {
                best = Some((j, score));
            }
        }
        let Some((j, _)) = best else {
            return Ok(true);
        };
        alive[j] = false;
        eliminated += 1;

        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.v[j].is_positive() {
                pos.push(r);
            } else if r.v[j].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        let mut seen: HashSet<Vec<BigInt>> = rest.iter().map(|r| r.v.clone()).collect();
        for p in &pos {
            for q in &neg {
                let hist = hist_union(&p.hist, &q.hist);
                if hist_count(&hist) > eliminated + 1 {
                    continue;
                }
                let a = p.v[j].clone();
                let b = -q.v[j].clone();
                let mut v: Vec<BigInt> = p.v.iter().zip(&q.v).map(|(x, y)| &b * x + &a * y).collect();
                v[j] = BigInt::zero();
                primitive_bigint(&mut v);
                if seen.insert(v.clone()) {
                    rest.push(Row { v, hist });
                }
            }
        }
        if rest.len() > row_cap {
            return Err(Error::ResourceCap(format!(
                "Fourier-Motzkin produced more than {row_cap} rows"
            )));
        }
        rows = rest;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cone_membership_as_feasibility() {
        // (5,2) = a (1,0) + b (2,1) + c (3,2), a,b,c >= 0
        let mut s = LinearSystem::new(3);
        s.eq(v(&[1, 2, 3]), int(5)).eq(v(&[0, 1, 2]), int(2)).nonneg();
        assert!(s.feasible().unwrap());

        // (1,1) is outside the cone spanned by (1,0) and (3,2)
        let mut s = LinearSystem::new(2);
        s.eq(v(&[1, 3]), int(1)).eq(v(&[0, 2]), int(1)).nonneg();
        assert!(!s.feasible().unwrap());
    }

    #[test]
    fn contradictory_inequalities() {
        let mut s = LinearSystem::new(2);
        s.ge(v(&[1, 1]), int(1)).ge(v(&[-1, 0]), int(0)).ge(v(&[0, -1]), int(0));
        assert!(!s.feasible().unwrap());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut s = LinearSystem::new(2);
        s.eq(v(&[1, 1]), int(1)).eq(v(&[2, 2]), int(3));
        assert!(!s.feasible().unwrap());
    }

    #[test]
    fn unbounded_direction_is_feasible() {
        let mut s = LinearSystem::new(2);
        s.ge(v(&[1, -1]), int(4)).ge(v(&[0, 1]), int(7));
        assert!(s.feasible().unwrap());
    }
}
