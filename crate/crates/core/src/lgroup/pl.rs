use crate::cone::{cone_intersect, hrep_to_vrep, ConeRep, PolyCone};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{RingSpec, Scalar};

use super::term::{term_to_diff_of_meets, DiffOfMeets, LatticeTerm, LinFunc, DEFAULT_NODE_CAP};

/// Cap on the number of convex pieces a decomposition may produce.
pub const DEFAULT_PIECE_CAP: usize = 10_000;

/// A function that is linear on each of finitely many convex cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunc {
    pub dim: usize,
    pub pieces: Vec<(ConeRep, LinFunc)>,
}

impl PLFunc {
    /// Value at `x`, from the first piece containing it.
    pub fn eval(&self, x: &[Scalar]) -> Result<Option<Scalar>> {
        for (c, f) in &self.pieces {
            if c.contains(x)? {
                return Ok(Some(f.eval(x)));
            }
        }
        Ok(None)
    }

    pub fn domain(&self) -> PolyCone {
        PolyCone {
            dim: self.dim,
            pieces: self.pieces.iter().map(|(c, _)| c.clone()).collect(),
        }
    }

    /// On every pair of pieces, the two functionals agree on the rays both contain.
    pub fn is_consistent(&self) -> Result<bool> {
        for (i, (ci, fi)) in self.pieces.iter().enumerate() {
            for (cj, fj) in &self.pieces[i + 1..] {
                for r in ci.rays() {
                    let rq: Vec<Scalar> = r.iter().map(|v| Scalar::from_integer(v.clone())).collect();
                    if cj.contains(&rq)? && fi.eval_int(&r) != fj.eval_int(&r) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn whole_space(n: usize) -> Result<ConeRep> {
    if n == 0 {
        return Err(Error::dims("lgroup", "zero generators"));
    }
    hrep_to_vrep(&ConeRep::whole_space(n))
}

fn with_rows(k: &ConeRep, rows: Vec<Vec<Scalar>>) -> Result<ConeRep> {
    if rows.is_empty() {
        return k.complete();
    }
    let h = Mat::from_rows(&rows, k.dim(), RingSpec::Rationals)?;
    cone_intersect(k, &ConeRep::from_hrep(h)?)
}

/// Split the convex cone `k` into the cells on which `⋀ pos` is attained at
/// a fixed `pos[i]` and `⋀ neg` at a fixed `neg[j]`; on that cell the function
/// is `pos[i] − neg[j]`. Each cell is the union of the permutation cells
/// whose orderings start with `i` and `j`, so there are at most `k!·l!`
/// (in fact `k·l`). Cells of lower dimension than `k` are dropped, since the
/// full-dimensional ones already cover `k`.
pub fn decompose_pl(d: &DiffOfMeets, k: &ConeRep, piece_cap: usize) -> Result<PLFunc> {
    let n = k.dim();
    if d.pos.iter().chain(&d.neg).any(|f| f.dim() != n) {
        return Err(Error::dims("decompose_pl", "functional length differs from cone"));
    }
    let candidates = d.pos.len() * d.neg.len();
    if candidates > piece_cap {
        return Err(Error::ResourceCap(format!(
            "{candidates} candidate pieces exceed the cap of {piece_cap}"
        )));
    }
    let k = k.complete()?;
    let full = k.span_dim();
    let mut pieces: Vec<(ConeRep, LinFunc)> = Vec::new();
    for (i, fi) in d.pos.iter().enumerate() {
        for (j, gj) in d.neg.iter().enumerate() {
            let mut rows = Vec::new();
            for (a, fa) in d.pos.iter().enumerate() {
                if a != i {
                    rows.push(fa.sub(fi).as_scalars());
                }
            }
            for (b, gb) in d.neg.iter().enumerate() {
                if b != j {
                    rows.push(gb.sub(gj).as_scalars());
                }
            }
            let cell = with_rows(&k, rows)?;
            if cell.span_dim() < full {
                continue;
            }
            let f = fi.sub(gj);
            let mut dup = false;
            for (c, g) in &pieces {
                if *g == f && c.same_set(&cell)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                pieces.push((cell, f));
            }
        }
    }
    Ok(PLFunc { dim: n, pieces })
}

/// Keep only cones not contained in another one of the list.
fn prune_contained(cones: Vec<ConeRep>) -> Vec<ConeRep> {
    let mut kept: Vec<ConeRep> = Vec::new();
    for c in cones {
        if kept.iter().any(|k| c.vrep_inside(k)) {
            continue;
        }
        kept.retain(|k| !k.vrep_inside(&c));
        kept.push(c);
    }
    kept
}

/// `{x ∈ k : t(x) >= 0}` as a union of convex cones.
pub fn nonneg_region_on(t: &LatticeTerm, k: &ConeRep, piece_cap: usize) -> Result<PolyCone> {
    let d = term_to_diff_of_meets(t, DEFAULT_NODE_CAP)?;
    let pl = decompose_pl(&d, k, piece_cap)?;
    let mut cones = Vec::with_capacity(pl.pieces.len());
    for (c, f) in &pl.pieces {
        cones.push(with_rows(c, vec![f.as_scalars()])?);
    }
    if cones.is_empty() {
        // k itself is {0}
        cones.push(k.complete()?);
    }
    PolyCone::new(k.dim(), prune_contained(cones))
}

/// `{x : t(x) >= 0}` in `Q^n`.
pub fn nonneg_region(t: &LatticeTerm, piece_cap: usize) -> Result<PolyCone> {
    let n = t.dim()?;
    nonneg_region_on(t, &whole_space(n)?, piece_cap)
}

/// A finitely presented abelian ℓ-group: `n` generators modulo the ℓ-ideal
/// generated by the relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPresentation {
    pub n: usize,
    pub relators: Vec<LatticeTerm>,
}

impl LPresentation {
    pub fn new(n: usize, relators: Vec<LatticeTerm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::dims("LPresentation", "zero generators"));
        }
        for r in &relators {
            if r.dim()? != n {
                return Err(Error::dims("LPresentation", "relator length differs from n"));
            }
        }
        Ok(LPresentation { n, relators })
    }

    /// `p = Σ |p_i|`, the zero functional when there are no relators.
    pub fn p(&self) -> LatticeTerm {
        if self.relators.is_empty() {
            return LatticeTerm::Lin(LinFunc::zero(self.n));
        }
        LatticeTerm::Add(self.relators.iter().cloned().map(LatticeTerm::abs).collect())
    }

    fn check(&self, t: &LatticeTerm) -> Result<()> {
        if t.dim()? != self.n {
            return Err(Error::dims("lgroup", "term length differs from the presentation"));
        }
        Ok(())
    }
}

/// The zero set `K = Z(p)` of the presentation, computed as `{−p >= 0}`.
pub fn presentation_cone(pres: &LPresentation, piece_cap: usize) -> Result<PolyCone> {
    if pres.relators.is_empty() {
        return PolyCone::new(pres.n, vec![whole_space(pres.n)?]);
    }
    nonneg_region(&LatticeTerm::neg(pres.p()), piece_cap)
}

/// `f = g` in the presented ℓ-group: `f − g` vanishes on `K`, checked on
/// every ray of every linear piece.
pub fn pl_equal(pres: &LPresentation, f: &LatticeTerm, g: &LatticeTerm, piece_cap: usize) -> Result<bool> {
    pres.check(f)?;
    pres.check(g)?;
    let k = presentation_cone(pres, piece_cap)?;
    let d = term_to_diff_of_meets(&LatticeTerm::sub(f.clone(), g.clone()), DEFAULT_NODE_CAP)?;
    for piece in &k.pieces {
        let pl = decompose_pl(&d, piece, piece_cap)?;
        for (c, h) in &pl.pieces {
            if c.rays().iter().any(|r| !h.eval_int(r).eq(&0.into())) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, int};
    use num_bigint::BigInt;

    fn x() -> LatticeTerm {
        LatticeTerm::lin(&[1, 0])
    }

    fn y() -> LatticeTerm {
        LatticeTerm::lin(&[0, 1])
    }

    fn grid() -> Vec<Vec<Scalar>> {
        let vals = [int(-2), frac(-1, 3), int(0), frac(1, 2), int(1), int(3)];
        vals.iter()
            .flat_map(|a| vals.iter().map(move |b| vec![a.clone(), b.clone()]))
            .collect()
    }

    #[test]
    fn meet_splits_in_two() {
        let d = term_to_diff_of_meets(&LatticeTerm::meet(x(), y()), DEFAULT_NODE_CAP).unwrap();
        let pl = decompose_pl(&d, &whole_space(2).unwrap(), DEFAULT_PIECE_CAP).unwrap();
        assert_eq!(pl.pieces.len(), 2);
        assert!(pl.is_consistent().unwrap());
        for p in grid() {
            assert_eq!(pl.eval(&p).unwrap().unwrap(), d.eval(&p));
        }
        let single = term_to_diff_of_meets(&x(), DEFAULT_NODE_CAP).unwrap();
        let pl = decompose_pl(&single, &whole_space(2).unwrap(), DEFAULT_PIECE_CAP).unwrap();
        assert_eq!(pl.pieces.len(), 1);
    }

    #[test]
    fn four_candidates_at_most() {
        let t = LatticeTerm::sub(
            LatticeTerm::meet(x(), y()),
            LatticeTerm::meet(x(), LatticeTerm::lin(&[0, 2])),
        );
        let d = term_to_diff_of_meets(&t, DEFAULT_NODE_CAP).unwrap();
        let pl = decompose_pl(&d, &whole_space(2).unwrap(), DEFAULT_PIECE_CAP).unwrap();
        assert!(pl.pieces.len() <= 4);
        for p in grid() {
            assert_eq!(pl.eval(&p).unwrap().unwrap(), t.eval(&p));
        }
    }

    #[test]
    fn regions() {
        // the orthant, as the union of its two halves on either side of the diagonal
        let r = nonneg_region(&LatticeTerm::meet(x(), y()), DEFAULT_PIECE_CAP).unwrap();
        assert_eq!(r.all_rays(), vec![vec![BigInt::from(0), 1.into()], vec![1.into(), 0.into()], vec![1.into(), 1.into()]]);
        for p in grid() {
            assert_eq!(r.contains(&p).unwrap(), p[0] >= int(0) && p[1] >= int(0));
        }

        let j = LatticeTerm::join(x(), y());
        let r = nonneg_region(&j, DEFAULT_PIECE_CAP).unwrap();
        for p in grid() {
            assert_eq!(r.contains(&p).unwrap(), j.eval(&p) >= int(0));
        }

        let line = LatticeTerm::neg(LatticeTerm::abs(LatticeTerm::sub(x(), y())));
        let r = nonneg_region(&line, DEFAULT_PIECE_CAP).unwrap();
        assert_eq!(r.pieces.len(), 1);
        assert!(r.contains(&[int(-2), int(-2)]).unwrap());
        assert!(!r.contains(&[int(1), int(0)]).unwrap());
    }

    #[test]
    fn presentations() {
        let free = LPresentation::new(2, vec![]).unwrap();
        let k = presentation_cone(&free, DEFAULT_PIECE_CAP).unwrap();
        assert!(k.contains(&[int(-5), int(7)]).unwrap());

        let diag = LPresentation::new(2, vec![LatticeTerm::sub(x(), y())]).unwrap();
        let k = presentation_cone(&diag, DEFAULT_PIECE_CAP).unwrap();
        assert!(k.contains(&[int(3), int(3)]).unwrap());
        assert!(k.contains(&[int(-3), int(-3)]).unwrap());
        assert!(!k.contains(&[int(3), int(2)]).unwrap());

        let half = LPresentation::new(
            1,
            vec![LatticeTerm::meet(LatticeTerm::lin(&[1]), LatticeTerm::lin(&[0]))],
        )
        .unwrap();
        let k = presentation_cone(&half, DEFAULT_PIECE_CAP).unwrap();
        assert!(k.contains(&[int(4)]).unwrap());
        assert!(!k.contains(&[int(-1)]).unwrap());
    }

    #[test]
    fn equality_in_quotients() {
        let diag = LPresentation::new(2, vec![LatticeTerm::sub(x(), y())]).unwrap();
        let free = LPresentation::new(2, vec![]).unwrap();
        assert!(pl_equal(&diag, &x(), &y(), DEFAULT_PIECE_CAP).unwrap());
        assert!(!pl_equal(&free, &x(), &y(), DEFAULT_PIECE_CAP).unwrap());
        let j = LatticeTerm::join(x(), y());
        assert!(pl_equal(&free, &j, &j, DEFAULT_PIECE_CAP).unwrap());
        // x ∨ y = x + y − (x ∧ y) holds in the free group
        let alt = LatticeTerm::sub(LatticeTerm::Add(vec![x(), y()]), LatticeTerm::meet(x(), y()));
        assert!(pl_equal(&free, &j, &alt, DEFAULT_PIECE_CAP).unwrap());
    }
}
