#![allow(dead_code)]

use num_bigint::BigInt;
use pocoh::{Mat, RingSpec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn rand_rows(r: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| r.gen_range(lo..=hi)).collect())
        .collect()
}

pub fn zmat(rows: &[Vec<i64>], cols: usize) -> Mat {
    if rows.is_empty() {
        return Mat::zeros(0, cols, RingSpec::Integers);
    }
    Mat::from_i64_rows(rows, RingSpec::Integers).unwrap()
}

pub fn ring_mat(rows: &[Vec<i64>], cols: usize, ring: &RingSpec) -> Mat {
    zmat(rows, cols).with_ring(ring.clone()).unwrap()
}

/// Every point of `[lo, hi]^n`.
pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn to_i64_cols(cols: &[Vec<Scalar>]) -> Vec<Vec<i64>> {
    cols.iter()
        .map(|c| c.iter().map(|v| i64::try_from(v.to_integer()).unwrap()).collect())
        .collect()
}

/// `m x >= 0` and the listed coordinates nonnegative.
pub fn solves(m: &Mat, sign_cols: &[usize], x: &[Scalar]) -> bool {
    sign_cols.iter().all(|&c| x[c] >= q(0)) && m.apply(x).iter().all(|v| *v >= q(0))
}
