//! Matrix transforms between presentations of partially ordered modules.
//!
//! Module elements are columns of `R^d`; a "row of module elements" `U`
//! is the `d × n` matrix holding them, so `U X` for a column `X ∈ R^n` is an
//! element of `R^d`, ordered componentwise.

use num_traits::{One, Signed, Zero};

use crate::cone::{hrep_to_vrep, ConeRep};
use crate::error::{Error, Result};
use crate::genset::{minimal_integer_generators, pruned_integer_generators, GenSet};
use crate::hilbert::{solve_mixed_z_capped, MixedSystem, DEFAULT_COMPLETION_CAP};
use crate::linalg::kernel;
use crate::matrix::Mat;
use crate::ring::{common_denominator, RingSpec, Scalar};

/// A spanning row `U` together with generators of `{X : U X >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub spanning: Mat,
    pub solset: GenSet,
}

impl Presentation {
    /// Solve `U X >= 0` with `X` unconstrained, through the doubled system
    /// `U (Y - Z) >= 0, Y, Z >= 0`.
    pub fn of(u: &Mat) -> Result<Self> {
        let n = u.cols();
        let doubled = u.hstack(&u.neg())?;
        let sys = MixedSystem::all_signed(doubled);
        let pq = solve_mixed(&sys, u.ring())?;
        Ok(Presentation {
            spanning: u.clone(),
            solset: related_to_presented(&pq, n)?,
        })
    }
}

fn same_ring(op: &'static str, a: &RingSpec, b: &RingSpec) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch {
            op,
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(())
}

/// Keep coordinates `start..end` of every generator. Projections of
/// nonnegative integer generators are reduced to the irreducible ones.
fn project_rows(g: &GenSet, start: usize, end: usize) -> Result<GenSet> {
    let gens = g.gens().row_block(start, end);
    let flag = g.nonneg() || gens.is_nonneg();
    let out = GenSet::with_flag(gens, flag)?.canonicalize();
    if flag && *out.ring() == RingSpec::Integers {
        return minimal_integer_generators(&out);
    }
    Ok(out)
}

/// `P - Q` for generators `(P; Q)` of the doubled system on `(Y, Z)`.
pub fn related_to_presented(doubled: &GenSet, n: usize) -> Result<GenSet> {
    if doubled.dim() != 2 * n {
        return Err(Error::dims(
            "related_to_presented",
            format!("doubled dimension {} for {n} unknowns", doubled.dim()),
        ));
    }
    let g = doubled.gens();
    let diff = g.row_block(0, n).sub(&g.row_block(n, 2 * n))?;
    Ok(GenSet::new(diff).canonicalize())
}

/// Generators of `{Y : V Y >= 0}` from generators `s` of `{X : U X >= 0}`,
/// where `V = U M` and `U = V N`: the blocks `[I - NM | NM - I | N S]`.
pub fn change_spanning(u: &Mat, v: &Mat, m: &Mat, n: &Mat, s: &GenSet) -> Result<GenSet> {
    if u.mul(m)? != *v {
        return Err(Error::Precondition("V differs from U M".into()));
    }
    if v.mul(n)? != *u {
        return Err(Error::Precondition("U differs from V N".into()));
    }
    if s.dim() != u.cols() {
        return Err(Error::dims("change_spanning", "generators do not match U"));
    }
    same_ring("change_spanning", u.ring(), s.ring())?;
    let nm = n.mul(m)?;
    let id = Mat::identity(v.cols(), v.ring().clone());
    let gens = id
        .sub(&nm)?
        .hstack(&nm.sub(&id)?)?
        .hstack(&n.mul(s.gens())?)?;
    Ok(GenSet::new(gens).canonicalize())
}

/// Generators over `ring` of the solutions of a mixed system.
pub fn solve_mixed(sys: &MixedSystem, ring: &RingSpec) -> Result<GenSet> {
    solve_mixed_capped(sys, ring, DEFAULT_COMPLETION_CAP)
}

pub fn solve_mixed_capped(sys: &MixedSystem, ring: &RingSpec, cap: usize) -> Result<GenSet> {
    match ring {
        RingSpec::Integers => {
            let m = sys.m().with_ring(RingSpec::Integers)?;
            solve_mixed_z_capped(&MixedSystem::new(m, sys.sign_cols().to_vec())?, cap)
        }
        RingSpec::Rationals => solve_mixed_q(sys),
        RingSpec::LocalizedIntegers(_) => localize_lift_capped(sys, ring, cap),
    }
}

fn solve_mixed_q(sys: &MixedSystem) -> Result<GenSet> {
    let n = sys.m().cols();
    let m = sys.m().with_ring(RingSpec::Rationals)?;
    let mut rows = m.row_vecs();
    for &c in sys.sign_cols() {
        let mut e = vec![Scalar::zero(); n];
        e[c] = Scalar::one();
        rows.push(e);
    }
    let h = Mat::from_rows(&rows, n, RingSpec::Rationals)?;
    let cone = hrep_to_vrep(&ConeRep::from_hrep(h)?)?;
    let v = cone.vrep().expect("computed").clone();
    let nonneg = sys.sign_cols().len() == n;
    Ok(GenSet::with_flag(v, nonneg && cone.vrep().is_some_and(Mat::is_nonneg))?.canonicalize())
}

/// Over a localization `L` of `Z`: scale each row by a positive integer to
/// clear denominators, solve over `Z`, and read the same generators over `L`.
pub fn localize_lift(sys: &MixedSystem, ring: &RingSpec) -> Result<GenSet> {
    localize_lift_capped(sys, ring, DEFAULT_COMPLETION_CAP)
}

fn localize_lift_capped(sys: &MixedSystem, ring: &RingSpec, cap: usize) -> Result<GenSet> {
    if !matches!(ring, RingSpec::LocalizedIntegers(_)) {
        return Err(Error::Precondition(format!(
            "localize_lift needs a localization of Z, got {ring}"
        )));
    }
    let m = sys.m().with_ring(ring.clone())?;
    let rows: Vec<Vec<Scalar>> = m
        .row_vecs()
        .into_iter()
        .map(|r| {
            let d = Scalar::from_integer(common_denominator(&r));
            r.iter().map(|x| x * &d).collect()
        })
        .collect();
    let mz = Mat::from_rows(&rows, m.cols(), RingSpec::Integers)?;
    let gz = solve_mixed_z_capped(&MixedSystem::new(mz, sys.sign_cols().to_vec())?, cap)?;
    let gens = gz.gens().with_ring(ring.clone())?;
    GenSet::with_flag(gens, gz.nonneg())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSolution {
    pub gens: GenSet,
    /// Over `Q` only: a basis of the kernel as a vector space.
    pub module_basis: Option<Mat>,
}

/// Generators of `{X : U X = 0}` as a semimodule (signed).
pub fn solve_equation(u: &Mat, ring: &RingSpec) -> Result<EquationSolution> {
    let u = u.with_ring(ring.clone())?;
    let stacked = u.vstack(&u.neg())?;
    let sys = MixedSystem::new(stacked, vec![])?;
    let gens = solve_mixed(&sys, ring)?;
    let module_basis = if *ring == RingSpec::Rationals {
        let k = kernel(&u.row_vecs(), u.cols());
        Some(Mat::from_columns(&k, u.cols(), RingSpec::Rationals)?)
    } else {
        None
    };
    Ok(EquationSolution { gens, module_basis })
}

/// Generators of `{Y : (U M) Y >= 0}` from generators `s_u` of
/// `{X : U X >= 0}`: solve `M Y - S Z = 0` with `Z >= 0`, keep `Y`.
pub fn submodule_presentation(u: &Mat, m: &Mat, s_u: &GenSet, ring: &RingSpec) -> Result<GenSet> {
    if u.cols() != m.rows() || s_u.dim() != m.rows() {
        return Err(Error::dims("submodule_presentation", "U, M and S do not fit"));
    }
    let m = m.with_ring(ring.clone())?;
    let s = s_u.gens().with_ring(ring.clone())?;
    let q = m.cols();
    let k = s.cols();
    let row = m.hstack(&s.neg())?;
    let sys = MixedSystem::new(row.vstack(&row.neg())?, (q..q + k).collect())?;
    let sol = solve_mixed(&sys, ring)?;
    project_rows(&sol, 0, q)
}

/// The columns of `U S`: generators of the positive cone of the module.
pub fn positive_cone_generators(u: &Mat, s: &GenSet) -> Result<GenSet> {
    Ok(GenSet::new(u.mul(s.gens())?).canonicalize())
}

/// `[M | s_eq]`, generating `{X : U X >= 0}` when the columns of `V = U M`
/// generate the positive cone and `s_eq` generates `{X : U X = 0}`.
pub fn presentation_from_parts(u: &Mat, v: &Mat, m: &Mat, s_eq: &GenSet) -> Result<GenSet> {
    if u.mul(m)? != *v {
        return Err(Error::Precondition("V differs from U M".into()));
    }
    if s_eq.dim() != u.cols() {
        return Err(Error::dims("presentation_from_parts", "s_eq does not match U"));
    }
    Ok(GenSet::new(m.hstack(s_eq.gens())?).canonicalize())
}

/// Generators of the intersection of two finitely generated semimodules.
pub fn semimodule_intersect(b: &GenSet, c: &GenSet, ring: &RingSpec) -> Result<GenSet> {
    if b.dim() != c.dim() {
        return Err(Error::dims("semimodule_intersect", "ambient dimensions differ"));
    }
    if b.nonneg() != c.nonneg() {
        return Err(Error::Precondition(
            "intersection needs both generating sets nonnegative or both signed".into(),
        ));
    }
    let u = b.gens().with_ring(ring.clone())?;
    let v = c.gens().with_ring(ring.clone())?;
    let k = u.cols();
    if k == 0 || v.cols() == 0 {
        return Ok(GenSet::empty(b.dim(), ring.clone()));
    }
    let row = u.hstack(&v.neg())?;
    let sys = MixedSystem::all_signed(row.vstack(&row.neg())?);
    let sol = solve_mixed(&sys, ring)?;
    let p = sol.gens().row_block(0, k);
    let gens = u.mul(&p)?;
    let flag = b.nonneg() && gens.is_nonneg();
    Ok(GenSet::with_flag(gens, flag)?.canonicalize())
}

/// Nonnegative solutions of a finite family of systems `rows_i X >= 0`,
/// each solved separately and intersected.
pub fn direct_sum_solve(rows: &[Mat], ring: &RingSpec) -> Result<GenSet> {
    let Some(first) = rows.first() else {
        return Err(Error::Precondition("direct sum of no components".into()));
    };
    let n = first.cols();
    if rows.iter().any(|r| r.cols() != n) {
        return Err(Error::dims("direct_sum_solve", "components disagree on unknowns"));
    }
    let mut acc = solve_mixed(&MixedSystem::all_signed(first.clone()), ring)?;
    for r in &rows[1..] {
        let next = solve_mixed(&MixedSystem::all_signed(r.clone()), ring)?;
        acc = semimodule_intersect(&acc, &next, ring)?;
    }
    Ok(acc)
}

/// `{X >= 0 : U X + V Y >= 0 for some Y}`: nonnegative solutions in the
/// quotient by the convex submodule generated by the columns of `V`.
pub fn quotient_solve(u: &Mat, v: &Mat, ring: &RingSpec) -> Result<GenSet> {
    if u.rows() != v.rows() {
        return Err(Error::dims("quotient_solve", "U and V live in different modules"));
    }
    let u = u.with_ring(ring.clone())?;
    let v = v.with_ring(ring.clone())?;
    let p = u.cols();
    let sys = MixedSystem::new(u.hstack(&v)?, (0..p).collect())?;
    let sol = solve_mixed(&sys, ring)?;
    project_rows(&sol, 0, p)
}

/// Nonnegative matrix tuples `(ξ_1, …, ξ_n)` with `Σ a_j ξ_j >= 0`
/// componentwise. Unknowns are flattened row-major, one block of `m²` per `ξ_j`.
pub fn matrix_ring_solve(a: &[Mat], ring: &RingSpec) -> Result<GenSet> {
    let Some(first) = a.first() else {
        return Err(Error::Precondition("no coefficient matrices".into()));
    };
    let m = first.rows();
    if a.iter().any(|x| x.rows() != m || x.cols() != m) {
        return Err(Error::dims("matrix_ring_solve", "coefficients must be square of one size"));
    }
    let n = a.len();
    let nvars = n * m * m;
    let mut rows = Vec::with_capacity(m * m);
    for r in 0..m {
        for c in 0..m {
            let mut row = vec![Scalar::zero(); nvars];
            for (j, aj) in a.iter().enumerate() {
                for k in 0..m {
                    row[j * m * m + k * m + c] += &aj[(r, k)];
                }
            }
            rows.push(row);
        }
    }
    let mat = Mat::from_rows(&rows, nvars, ring.clone())?;
    solve_mixed(&MixedSystem::all_signed(mat), ring)
}

/// Split a flattened generator back into its `n` matrices of size `m × m`.
pub fn unflatten(v: &[Scalar], m: usize, ring: &RingSpec) -> Result<Vec<Mat>> {
    if m == 0 || !v.len().is_multiple_of(m * m) {
        return Err(Error::dims("unflatten", "length is not a multiple of m²"));
    }
    v.chunks(m * m)
        .map(|c| Mat::new(m, m, c.to_vec(), ring.clone()))
        .collect()
}

/// Generators of `{x >= 0 : Σ p_i x_i = 0}` over `Q`: for each pair
/// `p_i > 0 > p_j` the vector with `1/p_i` at `i` and `1/(-p_j)` at `j`, and a
/// unit vector at every `i` with `p_i = 0`.
pub fn field_equation_solve(p: &[Scalar]) -> GenSet {
    let n = p.len();
    let pos: Vec<usize> = (0..n).filter(|&i| p[i].is_positive()).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| p[i].is_negative()).collect();
    let mut cols = Vec::new();
    for &i in &pos {
        for &j in &neg {
            let mut v = vec![Scalar::zero(); n];
            v[i] = p[i].recip();
            v[j] = (-&p[j]).recip();
            cols.push(v);
        }
    }
    for i in (0..n).filter(|&i| p[i].is_zero()) {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        cols.push(v);
    }
    GenSet::from_columns(&cols, n, RingSpec::Rationals).expect("columns of length n")
}

/// Nonnegative rational solutions of `M x = 0`, one equation at a time:
/// with `S` generating the solutions so far, solve row `r S` and compose.
pub fn multi_equation_solve_q(m: &Mat) -> Result<GenSet> {
    let m = m.with_ring(RingSpec::Rationals)?;
    let n = m.cols();
    let mut s = Mat::identity(n, RingSpec::Rationals);
    for i in 0..m.rows() {
        if s.cols() == 0 {
            break;
        }
        let row = Mat::from_rows(&[m.row(i).to_vec()], n, RingSpec::Rationals)?;
        let reduced = row.mul(&s)?;
        let p = field_equation_solve(reduced.row(0));
        s = s.mul(p.gens())?;
    }
    Ok(GenSet::new(s).canonicalize())
}

/// The same solution set as [`solve_mixed`], built one inequality at a time:
/// with `S` generating the solutions of the first rows, the next row `r`
/// restricts the parameters to `{Z >= 0 : r S Z >= 0}`, whose generators `P`
/// give `S P` for the longer system.
pub fn solve_mixed_by_rows(sys: &MixedSystem, ring: &RingSpec) -> Result<GenSet> {
    let m = sys.m().with_ring(ring.clone())?;
    let n = m.cols();
    if m.rows() == 0 {
        return solve_mixed(sys, ring);
    }
    let first = MixedSystem::new(m.row_block(0, 1), sys.sign_cols().to_vec())?;
    let mut s = solve_mixed(&first, ring)?.gens().clone();
    for i in 1..m.rows() {
        if s.cols() == 0 {
            break;
        }
        let reduced = m.row_block(i, i + 1).mul(&s)?;
        let p = solve_mixed(&MixedSystem::all_signed(reduced), ring)?;
        s = s.mul(p.gens())?;
        if *ring == RingSpec::Integers {
            s = pruned_integer_generators(&GenSet::new(s))?.gens().clone();
        }
    }
    let flag = sys.sign_cols().len() == n && s.is_nonneg();
    let out = GenSet::with_flag(s, flag)?.canonicalize();
    if *ring == RingSpec::Integers {
        return pruned_integer_generators(&out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, int};

    fn zmat(rows: &[Vec<i64>]) -> Mat {
        Mat::from_i64_rows(rows, RingSpec::Integers).unwrap()
    }

    fn cols_i64(g: &GenSet) -> Vec<Vec<i64>> {
        g.columns()
            .iter()
            .map(|c| c.iter().map(|v| crate::ring::to_i64(&v.to_integer()).unwrap()).collect())
            .collect()
    }

    fn col(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn doubled_presentations() {
        let p = Presentation::of(&zmat(&[vec![1]])).unwrap();
        assert_eq!(cols_i64(&p.solset), vec![vec![1]]);
        let p = Presentation::of(&zmat(&[vec![0]])).unwrap();
        assert_eq!(cols_i64(&p.solset), vec![vec![-1], vec![1]]);
        let p = Presentation::of(&zmat(&[vec![1, 1]])).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                assert_eq!(p.solset.contains(&col(&[x, y])).unwrap(), x + y >= 0, "({x},{y})");
            }
        }
    }

    #[test]
    fn change_of_spanning_row() {
        let u = zmat(&[vec![1]]);
        let v = zmat(&[vec![2, 3]]);
        let m = zmat(&[vec![2, 3]]);
        let n = zmat(&[vec![-1], vec![1]]);
        let s = GenSet::new(zmat(&[vec![1]]));
        let g = change_spanning(&u, &v, &m, &n, &s).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![-3, 2], vec![-1, 1], vec![3, -2]]);
        assert!(g.contains(&col(&[1, 0])).unwrap());
        assert!(!g.contains(&col(&[-1, 0])).unwrap());

        let bad = zmat(&[vec![1], vec![1]]);
        assert!(matches!(
            change_spanning(&u, &v, &m, &bad, &s),
            Err(Error::Precondition(_))
        ));

        // sign flip: U = (1), V = (-1)
        let g = change_spanning(&u, &zmat(&[vec![-1]]), &zmat(&[vec![-1]]), &zmat(&[vec![-1]]), &s)
            .unwrap();
        assert!(g.contains(&col(&[-3])).unwrap());
        assert!(!g.contains(&col(&[1])).unwrap());
    }

    #[test]
    fn mixed_dispatch() {
        let sys = MixedSystem::all_signed(zmat(&[vec![2, -3]]));
        let q = solve_mixed(&sys, &RingSpec::Rationals).unwrap();
        assert_eq!(cols_i64(&q), vec![vec![1, 0], vec![3, 2]]);
        let z = solve_mixed(&sys, &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&z), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
        let z2 = RingSpec::localized([2]).unwrap();
        let l = solve_mixed(&sys, &z2).unwrap();
        assert_eq!(l.ring(), &z2);
        assert!(l.contains(&[frac(1, 2), frac(1, 4)]).unwrap());
        assert!(!l.contains(&[frac(1, 2), frac(1, 3)]).unwrap());
    }

    #[test]
    fn lifting_clears_denominators() {
        let z2 = RingSpec::localized([2]).unwrap();
        let a = MixedSystem::all_signed(zmat(&[vec![2, -1]]));
        let ga = localize_lift(&a, &z2).unwrap();
        assert_eq!(cols_i64(&ga), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert!(ga.contains(&[frac(1, 2), int(1)]).unwrap());
        let b = Mat::from_rows(&[vec![frac(1, 2), frac(-1, 4)]], 2, z2.clone()).unwrap();
        let gb = localize_lift(&MixedSystem::all_signed(b), &z2).unwrap();
        assert_eq!(ga, gb);
        let gz = localize_lift(&MixedSystem::all_signed(zmat(&[vec![0]])), &z2).unwrap();
        assert_eq!(cols_i64(&gz), vec![vec![1]]);
    }

    #[test]
    fn equations() {
        let e = solve_equation(&zmat(&[vec![2, -3]]), &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&e.gens), vec![vec![-3, -2], vec![3, 2]]);
        assert!(e.module_basis.is_none());
        let e = solve_equation(&zmat(&[vec![0, 0]]), &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&e.gens), vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
        let e = solve_equation(&zmat(&[vec![1]]), &RingSpec::Integers).unwrap();
        assert!(e.gens.is_empty());
        let e = solve_equation(&zmat(&[vec![2, -3]]), &RingSpec::Rationals).unwrap();
        assert_eq!(e.module_basis.unwrap().cols(), 1);
    }

    #[test]
    fn submodules() {
        let u = zmat(&[vec![1]]);
        let s = GenSet::new(zmat(&[vec![1]]));
        let g = submodule_presentation(&u, &zmat(&[vec![2]]), &s, &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![1]]);
        let g = submodule_presentation(&u, &zmat(&[vec![1]]), &s, &RingSpec::Integers).unwrap();
        assert_eq!(g.columns(), s.columns());
        // A = Z², U = (e1 e2), M = (1,1)ᵀ
        let u2 = Mat::identity(2, RingSpec::Integers);
        let s2 = GenSet::new(u2.clone());
        let g = submodule_presentation(&u2, &zmat(&[vec![1], vec![1]]), &s2, &RingSpec::Integers)
            .unwrap();
        assert_eq!(cols_i64(&g), vec![vec![1]]);
    }

    #[test]
    fn positive_cones_and_parts() {
        let u = zmat(&[vec![2, 3]]);
        let s = GenSet::new(zmat(&[vec![3, -3, -1], vec![-2, 2, 1]]));
        assert_eq!(cols_i64(&positive_cone_generators(&u, &s).unwrap()), vec![vec![1]]);
        let i2 = Mat::identity(2, RingSpec::Integers);
        let g = positive_cone_generators(&i2, &GenSet::new(i2.clone())).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![0, 1], vec![1, 0]]);

        let u = zmat(&[vec![2, -3]]);
        let m = zmat(&[vec![-1], vec![-1]]);
        let s_eq = solve_equation(&u, &RingSpec::Integers).unwrap().gens;
        let g = presentation_from_parts(&u, &zmat(&[vec![1]]), &m, &s_eq).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![-3, -2], vec![-1, -1], vec![3, 2]]);
        for x in -6..=6 {
            for y in -6..=6 {
                assert_eq!(g.contains(&col(&[x, y])).unwrap(), 2 * x - 3 * y >= 0, "({x},{y})");
            }
        }
        assert!(presentation_from_parts(&u, &zmat(&[vec![2]]), &m, &s_eq).is_err());
    }

    #[test]
    fn intersections() {
        let b = GenSet::new(zmat(&[vec![2, 0], vec![0, 1]]));
        let c = GenSet::new(zmat(&[vec![1, 0], vec![0, 2]]));
        let g = semimodule_intersect(&b, &c, &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![0, 2], vec![2, 0]]);
        let g = semimodule_intersect(&b, &b, &RingSpec::Integers).unwrap();
        assert_eq!(g, b.canonicalize());
        let g = semimodule_intersect(
            &GenSet::new(zmat(&[vec![1], vec![1]])),
            &GenSet::new(zmat(&[vec![1], vec![0]])),
            &RingSpec::Integers,
        )
        .unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn direct_sums() {
        let g = direct_sum_solve(&[zmat(&[vec![1, -1]]), zmat(&[vec![-1, 1]])], &RingSpec::Integers)
            .unwrap();
        assert_eq!(cols_i64(&g), vec![vec![1, 1]]);
        let one = direct_sum_solve(&[zmat(&[vec![2, -3]])], &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&one), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
        let with_zero =
            direct_sum_solve(&[zmat(&[vec![2, -3]]), zmat(&[vec![0, 0]])], &RingSpec::Integers)
                .unwrap();
        assert_eq!(with_zero, one);
    }

    #[test]
    fn quotients() {
        let u = Mat::identity(2, RingSpec::Integers);
        let g = quotient_solve(&u, &zmat(&[vec![0], vec![1]]), &RingSpec::Integers).unwrap();
        assert_eq!(cols_i64(&g), vec![vec![0, 1], vec![1, 0]]);
        let g = quotient_solve(&zmat(&[vec![2, -3]]), &zmat(&[vec![0]]), &RingSpec::Integers)
            .unwrap();
        assert_eq!(cols_i64(&g), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
        let g = quotient_solve(&zmat(&[vec![2, -3]]), &zmat(&[vec![1]]), &RingSpec::Integers)
            .unwrap();
        assert_eq!(cols_i64(&g), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn matrix_rings() {
        let a = zmat(&[vec![1, 0], vec![0, -1]]);
        let g = matrix_ring_solve(&[a], &RingSpec::Integers).unwrap();
        // E11 and E12 flattened row-major
        assert_eq!(cols_i64(&g), vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        let g = matrix_ring_solve(&[Mat::identity(2, RingSpec::Integers)], &RingSpec::Integers)
            .unwrap();
        assert_eq!(g.len(), 4);
        let scalar = matrix_ring_solve(&[zmat(&[vec![2]]), zmat(&[vec![-3]])], &RingSpec::Integers)
            .unwrap();
        assert_eq!(cols_i64(&scalar), vec![vec![1, 0], vec![2, 1], vec![3, 2]]);
        let parts = unflatten(&g.columns()[0], 2, &RingSpec::Integers).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn field_refinement() {
        let g = field_equation_solve(&[frac(2, 1), frac(-3, 1)]);
        assert_eq!(g.columns(), vec![vec![frac(1, 2), frac(1, 3)]]);
        let g = field_equation_solve(&[int(1), int(1), int(-1)]);
        assert_eq!(g.columns(), vec![col(&[1, 0, 1]), col(&[0, 1, 1])]);
        let g = field_equation_solve(&[int(0), int(0), int(0)]);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn equation_systems_over_q() {
        let m = Mat::from_i64_rows(&[vec![1, 1, -1], vec![1, -1, 0]], RingSpec::Rationals).unwrap();
        let g = multi_equation_solve_q(&m).unwrap();
        assert_eq!(g.len(), 1);
        let c = &g.columns()[0];
        assert_eq!(c[2], &c[0] * int(2));
        assert_eq!(c[0], c[1]);
        let m = Mat::from_i64_rows(&[vec![1, -1], vec![1, 0]], RingSpec::Rationals).unwrap();
        assert!(multi_equation_solve_q(&m).unwrap().is_empty());
    }

    #[test]
    fn row_by_row_matches_one_shot() {
        let m = zmat(&[vec![2, -3, 1], vec![-1, 1, 1]]);
        for ring in [RingSpec::Integers, RingSpec::Rationals] {
            let sys = MixedSystem::new(m.with_ring(ring.clone()).unwrap(), vec![0, 1]).unwrap();
            let a = solve_mixed(&sys, &ring).unwrap();
            let b = solve_mixed_by_rows(&sys, &ring).unwrap();
            for g in a.columns() {
                assert!(b.contains(&g).unwrap());
            }
            for g in b.columns() {
                assert!(a.contains(&g).unwrap());
            }
        }
    }
}
