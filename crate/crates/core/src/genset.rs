//! Finite generating sets of semimodules: a matrix `S` standing for
//! `{S Y : Y a nonnegative column over the ring}`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{vrep_to_hrep, ConeRep};
use crate::error::{Error, Result};
use crate::fm::LinearSystem;
use crate::hilbert::{prune_signed, signed_membership, DEFAULT_COMPLETION_CAP};
use crate::lattice::solve_in_ring;
use crate::matrix::Mat;
use crate::ring::{to_i64, RingSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSet {
    gens: Mat,
    nonneg: bool,
}

impl GenSet {
    /// Wrap a generator matrix (columns are generators). The nonneg flag is
    /// derived from the entries.
    pub fn new(gens: Mat) -> Self {
        let nonneg = gens.is_nonneg();
        GenSet { gens, nonneg }
    }

    /// Wrap with an explicit flag; setting it on a matrix with a negative
    /// entry is an error.
    pub fn with_flag(gens: Mat, nonneg: bool) -> Result<Self> {
        if nonneg && !gens.is_nonneg() {
            return Err(Error::Precondition(
                "nonneg flag set on a generator matrix with negative entries".into(),
            ));
        }
        Ok(GenSet { gens, nonneg })
    }

    pub fn empty(dim: usize, ring: RingSpec) -> Self {
        GenSet {
            gens: Mat::zeros(dim, 0, ring),
            nonneg: true,
        }
    }

    pub fn from_columns(cols: &[Vec<Scalar>], dim: usize, ring: RingSpec) -> Result<Self> {
        Ok(GenSet::new(Mat::from_columns(cols, dim, ring)?))
    }

    pub fn gens(&self) -> &Mat {
        &self.gens
    }

    pub fn ring(&self) -> &RingSpec {
        self.gens.ring()
    }

    pub fn nonneg(&self) -> bool {
        self.nonneg
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.gens.rows()
    }

    /// Number of generators `k`.
    pub fn len(&self) -> usize {
        self.gens.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.cols() == 0
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        self.gens.columns()
    }

    /// `S · coeffs`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        self.gens.apply(coeffs)
    }

    /// Drop zero and duplicate columns and sort the rest lexicographically.
    /// The nonneg flag is kept.
    pub fn canonicalize(&self) -> GenSet {
        let mut cols: Vec<Vec<Scalar>> = self
            .gens
            .columns()
            .into_iter()
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        cols.sort();
        cols.dedup();
        let gens = Mat::from_columns(&cols, self.dim(), self.ring().clone())
            .expect("columns come from a valid matrix");
        GenSet {
            gens,
            nonneg: self.nonneg,
        }
    }

    /// Decide `x ∈ {S Y : Y >= 0}` over the ring of the generating set.
    pub fn contains(&self, x: &[Scalar]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::dims(
                "genset_membership",
                format!("point of length {} for dimension {}", x.len(), self.dim()),
            ));
        }
        if !x.iter().all(|v| self.ring().contains(v)) {
            return Ok(false);
        }
        match self.ring() {
            RingSpec::Rationals => self.rational_feasible(x),
            RingSpec::Integers => {
                if !self.gens.is_nonneg() {
                    if !self.in_rational_cone(x)? {
                        return Ok(false);
                    }
                    return Ok(signed_membership(self, x, DEFAULT_COMPLETION_CAP)?.is_some());
                }
                Ok(self.integer_witness(x)?.is_some())
            }
            RingSpec::LocalizedIntegers(_) => self.localized_member(x),
        }
    }

    /// `x` in the rational cone of the generators, through its inequalities.
    fn in_rational_cone(&self, x: &[Scalar]) -> Result<bool> {
        let gens = self.gens.clone().with_ring(RingSpec::Rationals)?;
        vrep_to_hrep(&ConeRep::from_vrep(gens)?)?.contains(x)
    }

    fn system(&self, x: &[Scalar]) -> LinearSystem {
        let k = self.len();
        let mut sys = LinearSystem::new(k);
        for (i, xi) in x.iter().enumerate() {
            sys.eq(self.gens.row(i).to_vec(), xi.clone());
        }
        sys.nonneg();
        sys
    }

    fn rational_feasible(&self, x: &[Scalar]) -> Result<bool> {
        self.system(x).feasible()
    }

    /// Over a localization `L` of `Z`: the feasible region `{Y >= 0 : S Y = x}`
    /// contains an `L`-point iff it is nonempty and the affine hull of its
    /// relative interior (coordinates that are forced to zero pinned to zero)
    /// contains an `L`-point, because `L` is dense in `R`. A coefficient can be
    /// positive iff its generator lies in the smallest face of the cone
    /// containing `x`, i.e. on every inequality that is tight at `x`.
    fn localized_member(&self, x: &[Scalar]) -> Result<bool> {
        let gens = self.gens.clone().with_ring(RingSpec::Rationals)?;
        let cone = vrep_to_hrep(&ConeRep::from_vrep(gens)?)?;
        if !cone.contains(x)? {
            return Ok(false);
        }
        let k = self.len();
        let n = self.dim();
        let tight: Vec<Vec<Scalar>> = cone
            .hrep()
            .expect("vrep_to_hrep fills the H-representation")
            .row_vecs()
            .into_iter()
            .filter(|h| h.iter().zip(x).map(|(a, b)| a * b).sum::<Scalar>().is_zero())
            .collect();
        let columns = self.columns();
        let forced_zero: Vec<usize> = (0..k)
            .filter(|&i| {
                tight
                    .iter()
                    .any(|h| !h.iter().zip(&columns[i]).map(|(a, b)| a * b).sum::<Scalar>().is_zero())
            })
            .collect();
        let mut rows: Vec<Vec<Scalar>> = (0..n).map(|r| self.gens.row(r).to_vec()).collect();
        let mut rhs = x.to_vec();
        for &i in &forced_zero {
            let mut unit = vec![Scalar::zero(); k];
            unit[i] = Scalar::from_integer(1.into());
            rows.push(unit);
            rhs.push(Scalar::zero());
        }
        Ok(solve_in_ring(&rows, &rhs, k, self.ring())?.is_some())
    }

    /// Depth-first search for nonnegative integer multiplicities `c` with
    /// `S c = x`. Requires nonnegative integer generators.
    pub fn integer_witness(&self, x: &[Scalar]) -> Result<Option<Vec<BigInt>>> {
        if !self.gens.is_nonneg() || !self.gens.entries().iter().all(|e| e.is_integer()) {
            return Err(Error::Unsupported(
                "integer search needs nonnegative integer generators".into(),
            ));
        }
        if x.iter().any(|v| !v.is_integer() || v.is_negative()) {
            return Ok(None);
        }
        let target: Vec<BigInt> = x.iter().map(|v| v.to_integer()).collect();
        let cols: Vec<Vec<BigInt>> = self
            .gens
            .columns()
            .into_iter()
            .map(|c| c.iter().map(|v| v.to_integer()).collect())
            .collect();
        // zero generators contribute nothing
        let order: Vec<usize> = (0..cols.len())
            .filter(|&j| cols[j].iter().any(|v| !v.is_zero()))
            .collect();
        let mut mult = vec![BigInt::zero(); cols.len()];
        let mut failed = HashSet::new();
        if dfs(&cols, &order, 0, target, &mut mult, &mut failed) {
            Ok(Some(mult))
        } else {
            Ok(None)
        }
    }
}

fn dfs(
    cols: &[Vec<BigInt>],
    order: &[usize],
    depth: usize,
    rest: Vec<BigInt>,
    mult: &mut [BigInt],
    failed: &mut HashSet<(usize, Vec<BigInt>)>,
) -> bool {
    if rest.iter().all(Zero::is_zero) {
        return true;
    }
    if depth == order.len() || failed.contains(&(depth, rest.clone())) {
        return false;
    }
    let g = &cols[order[depth]];
    // largest c with c*g <= rest
    let bound = g
        .iter()
        .zip(&rest)
        .filter(|(gi, _)| !gi.is_zero())
        .map(|(gi, ri)| ri / gi)
        .min()
        .expect("generator is nonzero");
    let mut c = bound;
    while !c.is_negative() {
        let next: Vec<BigInt> = rest.iter().zip(g).map(|(r, gi)| r - &c * gi).collect();
        if dfs(cols, order, depth + 1, next, mult, failed) {
            mult[order[depth]] = c;
            return true;
        }
        c -= 1;
    }
    failed.insert((depth, rest));
    false
}

/// Reduce a nonnegative integer generating set to the irreducible elements
/// of the monoid it generates (its Hilbert basis).
pub fn minimal_integer_generators(s: &GenSet) -> Result<GenSet> {
    let canon = s.canonicalize();
    let mut cols = canon.columns();
    // larger columns first so that sums are tested against smaller parts
    cols.sort_by_key(|c| std::cmp::Reverse(c.iter().fold(Scalar::zero(), |a, b| a + b)));
    let mut i = 0;
    while i < cols.len() {
        let rest: Vec<Vec<Scalar>> = cols
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .collect();
        let others = GenSet::from_columns(&rest, s.dim(), s.ring().clone())?;
        if others.integer_witness(&cols[i])?.is_some() {
            cols.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(GenSet::from_columns(&cols, s.dim(), s.ring().clone())?.canonicalize())
}

/// Drop integer generators (of any sign) that are found to be nonnegative
/// integer combinations of the remaining ones. Only explicit witnesses remove
/// a generator, so the generated set never changes; the result need not be
/// minimal.
pub fn pruned_integer_generators(s: &GenSet) -> Result<GenSet> {
    if s.gens().is_nonneg() {
        return minimal_integer_generators(s);
    }
    let canon = s.canonicalize();
    let cols = canon
        .columns()
        .iter()
        .map(|c| c.iter().map(|v| to_i64(&v.to_integer())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let kept: Vec<Vec<Scalar>> = prune_signed(cols)?
        .into_iter()
        .map(|c| c.into_iter().map(|v| Scalar::from_integer(v.into())).collect())
        .collect();
    GenSet::with_flag(Mat::from_columns(&kept, s.dim(), s.ring().clone())?, s.nonneg()).map(|g| g.canonicalize())
}
