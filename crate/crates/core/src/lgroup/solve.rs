use num_bigint::BigInt;

use crate::cone::ConeRep;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_basis_capped, HilbertBasis, DEFAULT_COMPLETION_CAP};
use crate::matrix::Mat;
use crate::ring::{RingSpec, Scalar};

use super::pl::{decompose_pl, presentation_cone, LPresentation};
use super::term::{term_to_diff_of_meets, LatticeTerm, LinFunc, DEFAULT_NODE_CAP};

/// Split every convex piece of `K` until all of `fs` are linear on each
/// cell; returns the cells with the functionals of `fs` on them.
fn common_refinement(
    k: &[ConeRep],
    fs: &[LatticeTerm],
    piece_cap: usize,
) -> Result<Vec<(ConeRep, Vec<LinFunc>)>> {
    let diffs = fs
        .iter()
        .map(|f| term_to_diff_of_meets(f, DEFAULT_NODE_CAP))
        .collect::<Result<Vec<_>>>()?;
    let mut cells: Vec<(ConeRep, Vec<LinFunc>)> = k.iter().map(|c| (c.clone(), Vec::new())).collect();
    for d in &diffs {
        let mut next = Vec::new();
        for (cell, funcs) in &cells {
            for (piece, f) in decompose_pl(d, cell, piece_cap)?.pieces {
                let mut fl = funcs.clone();
                fl.push(f);
                next.push((piece, fl));
            }
            if next.len() > piece_cap {
                return Err(Error::ResourceCap(format!(
                    "common refinement exceeds {piece_cap} pieces"
                )));
            }
        }
        cells = next;
    }
    Ok(cells)
}

/// Hilbert basis of `{λ ∈ N^m : Σ λ_i f_i >= 0 on K}` for the zero set `K`
/// of the presentation.
pub fn lgroup_solve(pres: &LPresentation, fs: &[LatticeTerm], piece_cap: usize) -> Result<HilbertBasis> {
    if fs.is_empty() {
        return Err(Error::Precondition("no terms to solve for".into()));
    }
    for f in fs {
        if f.dim()? != pres.n {
            return Err(Error::dims("lgroup_solve", "term length differs from the presentation"));
        }
    }
    let k = presentation_cone(pres, piece_cap)?;
    let cells = common_refinement(&k.pieces, fs, piece_cap)?;
    // one inequality Σ λ_i f_i(x) >= 0 per ray x of every cell
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (cell, funcs) in &cells {
        for ray in cell.rays() {
            rows.push(funcs.iter().map(|f| f.eval_int(&ray)).collect());
        }
    }
    rows.sort();
    rows.dedup();
    let m = fs.len();
    let q: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|v| Scalar::from_integer(v.clone())).collect())
        .collect();
    let mat = Mat::from_rows(&q, m, RingSpec::Integers)?;
    hilbert_basis_capped(&mat, DEFAULT_COMPLETION_CAP)
}

/// The first `depth` continued-fraction convergents `p/q` of √2.
pub fn sqrt2_convergents(depth: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(depth);
    let (mut p, mut q) = (1u64, 1u64);
    for _ in 0..depth {
        out.push((p, q));
        (p, q) = (p + 2 * q, p + q);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrationalRow {
    pub p: u64,
    pub q: u64,
    pub basis: HilbertBasis,
}

/// Hilbert bases of `{(x, y) ∈ N² : q x − p y >= 0}` for each slope `p/q`.
pub fn irrational_demo(convergents: &[(u64, u64)]) -> Result<Vec<IrrationalRow>> {
    convergents
        .iter()
        .map(|&(p, q)| {
            if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
                return Err(Error::Precondition(format!(
                    "({p}, {q}) is not a pair of positive coprime integers"
                )));
            }
            let pi = i64::try_from(p).map_err(|_| Error::Overflow("irrational_demo"))?;
            let qi = i64::try_from(q).map_err(|_| Error::Overflow("irrational_demo"))?;
            let m = Mat::from_i64_rows(&[vec![qi, -pi]], RingSpec::Integers)?;
            Ok(IrrationalRow {
                p,
                q,
                basis: hilbert_basis_capped(&m, DEFAULT_COMPLETION_CAP)?,
            })
        })
        .collect()
}
