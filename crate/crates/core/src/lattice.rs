//! Linear equations over `Z` and its localizations.
//!
//! `B y = c` is brought to column echelon form `B V = H` with `V`
//! unimodular over `Z` (hence also over every localization), after which
//! the triangular system `H z = c` is solved by forward substitution,
//! checking at each pivot that the quotient stays in the ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{common_denominator, RingSpec, Scalar};

struct Echelon {
    h: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    /// (row, column) of every pivot, rows increasing
    pivots: Vec<(usize, usize)>,
}

fn column_echelon(b: Vec<Vec<BigInt>>, k: usize) -> Echelon {
    let m = b.len();
    let mut h = b;
    let mut v: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut col = 0;
    let mut pivots = Vec::new();

    // column ops: (c_p, c_q) <- (c_p, c_q) * [[a, b], [c, d]]
    let combine = |mat: &mut Vec<Vec<BigInt>>, p: usize, q: usize, t: [&BigInt; 4]| {
        for row in mat.iter_mut() {
            let x = row[p].clone();
            let y = row[q].clone();
            row[p] = t[0] * &x + t[2] * &y;
            row[q] = t[1] * &x + t[3] * &y;
        }
    };

    for i in 0..m {
        if col == k {
            break;
        }
        for j in col + 1..k {
            if h[i][j].is_zero() {
                continue;
            }
            let a = h[i][col].clone();
            let bb = h[i][j].clone();
            let eg = a.extended_gcd(&bb);
            let g = eg.gcd;
            // new col = x*c_col + y*c_j ; new j = -(b/g)*c_col + (a/g)*c_j
            let t00 = eg.x.clone();
            let t10 = eg.y.clone();
            let t01 = -(&bb / &g);
            let t11 = &a / &g;
            combine(&mut h, col, j, [&t00, &t01, &t10, &t11]);
            combine(&mut v, col, j, [&t00, &t01, &t10, &t11]);
        }
        if !h[i][col].is_zero() {
            if h[i][col].is_negative() {
                for row in h.iter_mut() {
                    row[col] = -row[col].clone();
                }
                for row in v.iter_mut() {
                    row[col] = -row[col].clone();
                }
            }
            pivots.push((i, col));
            col += 1;
        }
    }
    Echelon { h, v, pivots }
}

/// Some solution of `B y = c` with every coordinate in `ring`, if one exists.
/// `ring` must be `Integers` or `LocalizedIntegers`.
pub fn solve_in_ring(b: &[Vec<Scalar>], c: &[Scalar], k: usize, ring: &RingSpec) -> Result<Option<Vec<Scalar>>> {
    if matches!(ring, RingSpec::Rationals) {
        return Err(Error::Unsupported("lattice solve over Q".into()));
    }
    if b.len() != c.len() || b.iter().any(|r| r.len() != k) {
        return Err(Error::dims("solve_in_ring", "system shape"));
    }
    // scale each row to integer coefficients
    let mut rows = Vec::with_capacity(b.len());
    let mut rhs = Vec::with_capacity(b.len());
    for (r, ci) in b.iter().zip(c) {
        let d = Scalar::from_integer(common_denominator(r));
        rows.push(r.iter().map(|x| (x * &d).to_integer()).collect::<Vec<_>>());
        rhs.push(ci * &d);
    }
    let ech = column_echelon(rows, k);
    let mut z = vec![Scalar::zero(); k];
    let mut next_pivot = ech.pivots.iter().peekable();
    let npiv = ech.pivots.len();
    for i in 0..ech.h.len() {
        let mut residual = rhs[i].clone();
        let upto = match next_pivot.peek() {
            Some(&&(r, col)) if r == i => col,
            _ => npiv,
        };
        for (j, zj) in z.iter().enumerate().take(upto) {
            if !ech.h[i][j].is_zero() {
                residual -= Scalar::from_integer(ech.h[i][j].clone()) * zj;
            }
        }
        match next_pivot.peek() {
            Some(&&(r, col)) if r == i => {
                let q = residual / Scalar::from_integer(ech.h[i][col].clone());
                if !ring.contains(&q) {
                    return Ok(None);
                }
                z[col] = q;
                next_pivot.next();
            }
            _ => {
                if !residual.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let y = (0..k)
        .map(|i| {
            ech.v[i]
                .iter()
                .zip(&z)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Scalar::zero(), |acc, (a, b)| acc + Scalar::from_integer(a.clone()) * b)
        })
        .collect();
    Ok(Some(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, int};

    fn rows(r: &[&[i64]]) -> Vec<Vec<Scalar>> {
        r.iter().map(|x| x.iter().map(|&v| int(v)).collect()).collect()
    }

    fn check(b: &[Vec<Scalar>], c: &[Scalar], y: &[Scalar]) {
        for (r, ci) in b.iter().zip(c) {
            let s = r.iter().zip(y).fold(Scalar::zero(), |a, (p, q)| a + p * q);
            assert_eq!(&s, ci);
        }
    }

    #[test]
    fn integer_solutions() {
        let b = rows(&[&[2, 4]]);
        assert!(solve_in_ring(&b, &[int(3)], 2, &RingSpec::Integers).unwrap().is_none());
        let y = solve_in_ring(&b, &[int(6)], 2, &RingSpec::Integers).unwrap().unwrap();
        check(&b, &[int(6)], &y);
        let b = rows(&[&[3, 5]]);
        let y = solve_in_ring(&b, &[int(1)], 2, &RingSpec::Integers).unwrap().unwrap();
        check(&b, &[int(1)], &y);
    }

    #[test]
    fn localized_solutions() {
        let z2 = RingSpec::localized([2]).unwrap();
        let b = rows(&[&[4, 0], &[0, 3]]);
        // 3 y2 = 1 has no solution in Z[1/2]
        assert!(solve_in_ring(&b, &[int(1), int(1)], 2, &z2).unwrap().is_none());
        let c = [int(1), int(3)];
        let y = solve_in_ring(&b, &c, 2, &z2).unwrap().unwrap();
        assert_eq!(y, vec![frac(1, 4), int(1)]);
    }

    #[test]
    fn inconsistent_rows() {
        let b = rows(&[&[1, 1], &[2, 2]]);
        assert!(solve_in_ring(&b, &[int(1), int(3)], 2, &RingSpec::Integers).unwrap().is_none());
        let y = solve_in_ring(&b, &[int(1), int(2)], 2, &RingSpec::Integers).unwrap().unwrap();
        check(&b, &[int(1), int(2)], &y);
    }
}
