//! Rational convex polyhedral cones in inequality (H) and ray (V) form,
//! converted into each other by the double description method.
//!
//! An H-representation is a matrix whose rows `p` mean `p · x >= 0`. A
//! V-representation is a matrix whose columns positively generate the cone;
//! the lineality space, when nontrivial, is included as `± basis` columns
//! and also reported separately.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, dot_int, independent_rows, inverse, kernel, rank_int};
use crate::matrix::Mat;
use crate::ring::{primitive_integer, RingSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRep {
    dim: usize,
    hrep: Option<Mat>,
    vrep: Option<Mat>,
    lineality: Option<Mat>,
}

/// A finite union of convex cones of the same dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCone {
    pub dim: usize,
    pub pieces: Vec<ConeRep>,
}

fn q(v: &BigInt) -> Scalar {
    Scalar::from_integer(v.clone())
}

fn int_column_mat(cols: &[Vec<BigInt>], dim: usize) -> Mat {
    let c: Vec<Vec<Scalar>> = cols.iter().map(|v| v.iter().map(q).collect()).collect();
    Mat::from_columns(&c, dim, RingSpec::Rationals).expect("consistent column lengths")
}

fn int_row_mat(rows: &[Vec<BigInt>], dim: usize) -> Mat {
    let r: Vec<Vec<Scalar>> = rows.iter().map(|v| v.iter().map(q).collect()).collect();
    Mat::from_rows(&r, dim, RingSpec::Rationals).expect("consistent row lengths")
}

/// Clear denominators and divide by the gcd. Rays keep their orientation;
/// lineality generators are flipped so that the first nonzero entry is positive.
pub fn ray_canonicalize(v: &[Scalar], lineality: bool) -> Result<Vec<BigInt>> {
    let mut w = primitive_integer(v).ok_or(Error::ZeroVector)?;
    if lineality {
        if let Some(first) = w.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                w.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
    }
    Ok(w)
}

impl ConeRep {
    pub fn from_hrep(hrep: Mat) -> Result<Self> {
        let dim = hrep.cols();
        Ok(ConeRep {
            dim,
            hrep: Some(hrep.with_ring(RingSpec::Rationals)?),
            vrep: None,
            lineality: None,
        })
    }

    pub fn from_vrep(vrep: Mat) -> Result<Self> {
        let dim = vrep.rows();
        Ok(ConeRep {
            dim,
            hrep: None,
            vrep: Some(vrep.with_ring(RingSpec::Rationals)?),
            lineality: None,
        })
    }

    /// Both representations given; the invariant is checked.
    pub fn from_both(hrep: Mat, vrep: Mat) -> Result<Self> {
        if hrep.cols() != vrep.rows() {
            return Err(Error::dims("ConeRep::from_both", "hrep/vrep dimension"));
        }
        let c = ConeRep {
            dim: hrep.cols(),
            hrep: Some(hrep.with_ring(RingSpec::Rationals)?),
            vrep: Some(vrep.with_ring(RingSpec::Rationals)?),
            lineality: None,
        };
        if !c.is_consistent() {
            return Err(Error::Precondition("a ray violates an inequality".into()));
        }
        Ok(c)
    }

    /// All of `Q^n`.
    pub fn whole_space(dim: usize) -> Self {
        ConeRep {
            dim,
            hrep: Some(Mat::zeros(0, dim, RingSpec::Rationals)),
            vrep: None,
            lineality: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hrep(&self) -> Option<&Mat> {
        self.hrep.as_ref()
    }

    pub fn vrep(&self) -> Option<&Mat> {
        self.vrep.as_ref()
    }

    pub fn lineality(&self) -> Option<&Mat> {
        self.lineality.as_ref()
    }

    /// Every ray satisfies every inequality.
    pub fn is_consistent(&self) -> bool {
        match (&self.hrep, &self.vrep) {
            (Some(h), Some(v)) => v
                .columns()
                .iter()
                .all(|r| h.apply(r).iter().all(|s| !s.is_negative())),
            _ => true,
        }
    }

    /// Both representations present.
    pub fn complete(&self) -> Result<ConeRep> {
        match (&self.hrep, &self.vrep) {
            (Some(_), Some(_)) if self.lineality.is_some() => Ok(self.clone()),
            (Some(_), _) => hrep_to_vrep(self),
            (None, Some(_)) => vrep_to_hrep(self),
            (None, None) => Err(Error::Precondition("cone without any representation".into())),
        }
    }

    /// `x` satisfies every inequality (H-representation required).
    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        let h = self
            .hrep
            .as_ref()
            .ok_or_else(|| Error::Precondition("membership needs an H-representation".into()))?;
        if x.len() != self.dim {
            return Err(Error::dims("ConeRep::contains", "point dimension"));
        }
        Ok(h.apply(x).iter().all(|s| !s.is_negative()))
    }

    /// Rays (V-representation columns), as integer vectors.
    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        self.vrep
            .as_ref()
            .map(|v| {
                v.columns()
                    .iter()
                    .map(|c| c.iter().map(|x| x.to_integer()).collect())
                    .collect()
            })
            .unwrap_or_default()
    }

    /// The cone is `{0}` (no generating rays).
    pub fn is_trivial(&self) -> bool {
        self.vrep.as_ref().is_some_and(|v| v.cols() == 0)
    }

    /// Dimension of the linear span (V-representation required).
    pub fn span_dim(&self) -> usize {
        self.vrep
            .as_ref()
            .map_or(0, |v| crate::linalg::rank(&v.columns(), self.dim))
    }

    /// Mutual containment, via both representations.
    pub fn same_set(&self, other: &ConeRep) -> Result<bool> {
        if self.dim != other.dim {
            return Ok(false);
        }
        let a = self.complete()?;
        let b = other.complete()?;
        Ok(a.vrep_inside(&b) && b.vrep_inside(&a))
    }

    /// Every ray of `self` lies in `other`.
    pub fn vrep_inside(&self, other: &ConeRep) -> bool {
        let (Some(v), Some(h)) = (&self.vrep, &other.hrep) else {
            return false;
        };
        v.columns()
            .iter()
            .all(|r| h.apply(r).iter().all(|s| !s.is_negative()))
    }
}

fn integer_rows(h: &Mat) -> Vec<Vec<BigInt>> {
    h.row_vecs()
        .iter()
        .filter_map(|r| primitive_integer(r))
        .collect()
}

/// Incremental double description on a pointed cone `{z : rows · z >= 0}`
/// in `Q^r`, where the rows have full column rank `r`. Returns primitive
/// extreme rays.
fn double_description(rows: &[Vec<BigInt>], r: usize) -> Vec<Vec<BigInt>> {
    let as_q: Vec<Vec<Scalar>> = rows.iter().map(|v| v.iter().map(q).collect()).collect();
    let basis = independent_rows(&as_q, r);
    debug_assert_eq!(basis.len(), r);

    let square: Vec<Vec<Scalar>> = basis.iter().map(|&i| as_q[i].clone()).collect();
    let inv = inverse(&square).expect("independent rows");
    // ray j is column j of the inverse: tight on every basis row but j
    struct Ray {
        v: Vec<BigInt>,
        zeros: Vec<usize>,
    }
    let mut rays: Vec<Ray> = (0..r)
        .map(|j| {
            let col: Vec<Scalar> = (0..r).map(|i| inv[i][j].clone()).collect();
            let v = primitive_integer(&col).expect("nonzero column of an inverse");
            let zeros = basis
                .iter()
                .copied()
                .filter(|&b| dot_int(&rows[b], &v).is_zero())
                .collect();
            Ray { v, zeros }
        })
        .collect();
    let mut processed: Vec<usize> = basis.clone();

    for (idx, a) in rows.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|ray| dot_int(a, &ray.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = rays[p]
                    .zeros
                    .iter()
                    .copied()
                    .filter(|z| rays[n].zeros.contains(z))
                    .collect();
                if r >= 2 && common.len() < r - 2 {
                    continue;
                }
                let common_rows: Vec<&[BigInt]> = common.iter().map(|&c| rows[c].as_slice()).collect();
                if rank_int(&common_rows, r) + 2 != r {
                    continue;
                }
                let sp = &vals[p];
                let sn = -&vals[n];
                let mut v: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[n].v)
                    .map(|(x, y)| &sn * x + sp * y)
                    .collect();
                crate::ring::primitive_bigint(&mut v);
                let mut zeros = common;
                zeros.push(idx);
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                ray.zeros.push(idx);
            }
            next.push(ray);
        }
        for ray in new_rays {
            if !next.iter().any(|x| x.v == ray.v) {
                next.push(ray);
            }
        }
        rays = next;
        processed.push(idx);
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// H- to V-representation.
pub fn hrep_to_vrep(c: &ConeRep) -> Result<ConeRep> {
    let n = c.dim;
    if n == 0 {
        return Err(Error::dims("hrep_to_vrep", "zero ambient dimension"));
    }
    let h = c
        .hrep
        .as_ref()
        .ok_or_else(|| Error::Precondition("hrep_to_vrep needs an H-representation".into()))?;
    let rows = integer_rows(h);
    let rows_q: Vec<Vec<Scalar>> = rows.iter().map(|v| v.iter().map(q).collect()).collect();

    let lin: Vec<Vec<BigInt>> = kernel(&rows_q, n)
        .iter()
        .map(|v| ray_canonicalize(v, true))
        .collect::<Result<_>>()?;

    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    if !rows.is_empty() {
        // parametrize the row space W by an independent subset of rows
        let basis = independent_rows(&rows_q, n);
        let r = basis.len();
        let reduced: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|a| basis.iter().map(|&b| dot_int(a, &rows[b])).collect())
            .collect();
        for z in double_description(&reduced, r) {
            let x: Vec<Scalar> = (0..n)
                .map(|i| {
                    basis
                        .iter()
                        .zip(&z)
                        .fold(BigInt::zero(), |acc, (&b, zb)| acc + &rows[b][i] * zb)
                })
                .map(|v| q(&v))
                .collect();
            gens.push(ray_canonicalize(&x, false)?);
        }
    }
    for l in &lin {
        gens.push(l.clone());
        gens.push(l.iter().map(|x| -x).collect());
    }
    gens.sort();
    gens.dedup();

    Ok(ConeRep {
        dim: n,
        hrep: Some(h.clone()),
        vrep: Some(int_column_mat(&gens, n)),
        lineality: Some(int_column_mat(&lin, n)),
    })
}

/// V- to H-representation, by running the double description method on the dual cone.
pub fn vrep_to_hrep(c: &ConeRep) -> Result<ConeRep> {
    let n = c.dim;
    if n == 0 {
        return Err(Error::dims("vrep_to_hrep", "zero ambient dimension"));
    }
    let v = c
        .vrep
        .as_ref()
        .ok_or_else(|| Error::Precondition("vrep_to_hrep needs a V-representation".into()))?;
    let mut rays: Vec<Vec<BigInt>> = v
        .columns()
        .iter()
        .filter(|col| col.iter().any(|x| !x.is_zero()))
        .map(|col| ray_canonicalize(col, false))
        .collect::<Result<_>>()?;
    rays.sort();
    rays.dedup();

    let dual = hrep_to_vrep(&ConeRep::from_hrep(int_row_mat(&rays, n))?)?;
    let facets = dual.rays();
    let hrep = int_row_mat(&facets, n);
    let facets_q: Vec<Vec<Scalar>> = facets.iter().map(|f| f.iter().map(q).collect()).collect();
    let lin: Vec<Vec<BigInt>> = kernel(&facets_q, n)
        .iter()
        .map(|v| ray_canonicalize(v, true))
        .collect::<Result<_>>()?;
    Ok(ConeRep {
        dim: n,
        hrep: Some(hrep),
        vrep: Some(int_column_mat(&rays, n)),
        lineality: Some(int_column_mat(&lin, n)),
    })
}

/// Intersection: concatenated inequalities, rays recomputed.
pub fn cone_intersect(a: &ConeRep, b: &ConeRep) -> Result<ConeRep> {
    if a.dim != b.dim {
        return Err(Error::dims(
            "cone_intersect",
            format!("{} vs {}", a.dim, b.dim),
        ));
    }
    let ha = match &a.hrep {
        Some(h) => h.clone(),
        None => vrep_to_hrep(a)?.hrep.expect("computed"),
    };
    let hb = match &b.hrep {
        Some(h) => h.clone(),
        None => vrep_to_hrep(b)?.hrep.expect("computed"),
    };
    hrep_to_vrep(&ConeRep::from_hrep(ha.vstack(&hb)?)?)
}

/// Append one inequality `p · x >= 0`.
pub fn cone_with_inequality(c: &ConeRep, p: &[Scalar]) -> Result<ConeRep> {
    let row = Mat::from_rows(&[p.to_vec()], c.dim, RingSpec::Rationals)?;
    cone_intersect(c, &ConeRep::from_hrep(row)?)
}

impl PolyCone {
    pub fn new(dim: usize, pieces: Vec<ConeRep>) -> Result<Self> {
        if pieces.iter().any(|p| p.dim != dim) {
            return Err(Error::dims("PolyCone::new", "piece dimension"));
        }
        Ok(PolyCone { dim, pieces })
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        for p in &self.pieces {
            if p.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Distinct rays over all pieces.
    pub fn all_rays(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = self.pieces.iter().flat_map(|p| p.rays()).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Value of `p · x` for an integer functional and ray.
pub fn eval_int(p: &[Scalar], x: &[BigInt]) -> Scalar {
    let xq: Vec<Scalar> = x.iter().map(q).collect();
    dot(p, &xq)
}
