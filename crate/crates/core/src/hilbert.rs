//! Hilbert bases of `{x ∈ Z^n : M x >= 0, x >= 0}` by a Contejean–Devie
//! completion, a brute-force box oracle to check them against, and mixed
//! systems in which some unknowns are free.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::matrix::Mat;
use crate::ring::{to_i64, RingSpec, Scalar};

/// Default bound on the number of vectors the completion may generate.
pub const DEFAULT_COMPLETION_CAP: usize = 1_000_000;
/// Default coordinate bound of the brute-force oracle.
pub const DEFAULT_BOX: u64 = 12;

/// Inequalities `m · (x, y) >= 0` where only the columns in `sign_cols` are
/// constrained to be nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSystem {
    m: Mat,
    sign_cols: Vec<usize>,
}

impl MixedSystem {
    pub fn new(m: Mat, mut sign_cols: Vec<usize>) -> Result<Self> {
        sign_cols.sort_unstable();
        sign_cols.dedup();
        if let Some(&c) = sign_cols.iter().find(|&&c| c >= m.cols()) {
            return Err(Error::dims(
                "MixedSystem::new",
                format!("sign column {c} out of range for {} columns", m.cols()),
            ));
        }
        Ok(MixedSystem { m, sign_cols })
    }

    /// Every unknown sign-constrained.
    pub fn all_signed(m: Mat) -> Self {
        let sign_cols = (0..m.cols()).collect();
        MixedSystem { m, sign_cols }
    }

    pub fn m(&self) -> &Mat {
        &self.m
    }

    pub fn sign_cols(&self) -> &[usize] {
        &self.sign_cols
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.m.cols())
            .filter(|c| self.sign_cols.binary_search(c).is_err())
            .collect()
    }

    /// Exact check that `x` solves the system.
    pub fn is_solution(&self, x: &[Scalar]) -> bool {
        x.len() == self.m.cols()
            && self.sign_cols.iter().all(|&c| !x[c].is_negative())
            && self.m.apply(x).iter().all(|v| !v.is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub basis: GenSet,
    /// Oracle box the basis was cross-checked against, if any.
    pub box_certified: Option<u64>,
}

fn integer_rows(m: &Mat) -> Result<Vec<Vec<i64>>> {
    m.row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    if !v.is_integer() {
                        return Err(Error::NotInRing {
                            value: v.to_string(),
                            ring: "Z".into(),
                        });
                    }
                    to_i64(&v.to_integer())
                })
                .collect()
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow("hilbert completion"))
    })
}

struct Completion<'a> {
    /// column `j` of the equation matrix `A`
    cols: &'a [Vec<i64>],
    cap: usize,
    /// coordinate that may not exceed 1
    bounded: Option<usize>,
    /// stop at the first solution whose `bounded` coordinate is 1
    first_hit: bool,
}

impl Completion<'_> {
    /// Minimal nonzero solutions of `A x = 0, x >= 0`.
    fn run(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.cols.len();
        let rows = self.cols.first().map_or(0, Vec::len);
        let mut basis: Vec<Vec<i64>> = Vec::new();
        let mut frontier: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
            .map(|j| {
                let mut x = vec![0; n];
                x[j] = 1;
                (x, self.cols[j].clone())
            })
            .collect();
        let mut total = frontier.len();
        while !frontier.is_empty() {
            let mut open = Vec::with_capacity(frontier.len());
            for (x, ax) in frontier {
                if ax.iter().all(|&v| v == 0) {
                    if !basis.iter().any(|b| dominates(&x, b)) {
                        if self.first_hit && self.bounded.is_some_and(|t| x[t] == 1) {
                            return Ok(vec![x]);
                        }
                        basis.push(x);
                    }
                } else {
                    open.push((x, ax));
                }
            }
            let mut seen: HashSet<Vec<i64>> = HashSet::new();
            let mut next = Vec::new();
            for (x, ax) in &open {
                for (j, col) in self.cols.iter().enumerate() {
                    if dot(ax, col)? >= 0 {
                        continue;
                    }
                    if self.bounded == Some(j) && x[j] >= 1 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j] = y[j].checked_add(1).ok_or(Error::Overflow("hilbert completion"))?;
                    if basis.iter().any(|b| dominates(&y, b)) || seen.contains(&y) {
                        continue;
                    }
                    let mut ay = Vec::with_capacity(rows);
                    for (a, c) in ax.iter().zip(col) {
                        ay.push(a.checked_add(*c).ok_or(Error::Overflow("hilbert completion"))?);
                    }
                    seen.insert(y.clone());
                    next.push((y, ay));
                }
            }
            total += next.len();
            if total > self.cap {
                return Err(Error::ResourceCap(format!(
                    "Hilbert basis completion generated more than {} vectors",
                    self.cap
                )));
            }
            frontier = next;
        }
        if self.first_hit {
            return Ok(Vec::new());
        }
        Ok(basis)
    }
}

/// `x >= b` componentwise.
fn dominates(x: &[i64], b: &[i64]) -> bool {
    x.iter().zip(b).all(|(p, q)| p >= q)
}

fn genset_from_i64(cols: &[Vec<i64>], dim: usize) -> GenSet {
    let c: Vec<Vec<Scalar>> = cols
        .iter()
        .map(|v| v.iter().map(|&x| Scalar::from_integer(x.into())).collect())
        .collect();
    GenSet::from_columns(&c, dim, RingSpec::Integers).expect("column lengths match")
}

fn satisfies(rows: &[Vec<i64>], x: &[i64]) -> bool {
    rows.iter().all(|r| dot(r, x).is_ok_and(|v| v >= 0))
}

pub fn hilbert_basis(m: &Mat) -> Result<HilbertBasis> {
    hilbert_basis_capped(m, DEFAULT_COMPLETION_CAP)
}

/// Minimal Hilbert basis of `{x ∈ Z^n : m x >= 0, x >= 0}`.
pub fn hilbert_basis_capped(m: &Mat, cap: usize) -> Result<HilbertBasis> {
    let n = m.cols();
    if n == 0 {
        return Err(Error::dims("hilbert_basis", "no unknowns"));
    }
    let mut rows = integer_rows(m)?;
    rows.retain(|r| r.iter().any(|&v| v != 0));
    rows.sort();
    rows.dedup();

    // a row whose negation is also present is an equation and needs no slack
    let negated = |r: &Vec<i64>| -> Vec<i64> { r.iter().map(|v| -v).collect() };
    let mut eqs: Vec<Vec<i64>> = Vec::new();
    let mut ineqs: Vec<Vec<i64>> = Vec::new();
    for r in &rows {
        let neg = negated(r);
        if rows.binary_search(&neg).is_ok() {
            if !eqs.contains(&neg) {
                eqs.push(r.clone());
            }
        } else {
            ineqs.push(r.clone());
        }
    }
    let s = ineqs.len();
    let k = eqs.len() + s;
    // columns of [E 0; I' -I]
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| eqs.iter().chain(&ineqs).map(|r| r[j]).collect())
        .collect();
    for i in 0..s {
        let mut c = vec![0; k];
        c[eqs.len() + i] = -1;
        cols.push(c);
    }

    let solutions = if k == 0 {
        (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                e
            })
            .collect()
    } else {
        Completion {
            cols: &cols,
            cap,
            bounded: None,
            first_hit: false,
        }
        .run()?
    };
    let mut projected: Vec<Vec<i64>> = solutions.into_iter().map(|x| x[..n].to_vec()).collect();
    projected.retain(|x| x.iter().any(|&v| v != 0));
    projected.sort();
    projected.dedup();

    // drop anything that is a solution plus another nonzero solution
    let keep: Vec<Vec<i64>> = projected
        .iter()
        .filter(|x| {
            !projected.iter().any(|y| {
                y != *x && dominates(x, y) && {
                    let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    satisfies(&rows, &d)
                }
            })
        })
        .cloned()
        .collect();

    Ok(HilbertBasis {
        basis: genset_from_i64(&keep, n).canonicalize(),
        box_certified: None,
    })
}

/// Irreducible solutions inside the box `[0, bound]^n`, by enumeration.
pub fn hilbert_oracle(m: &Mat, bound: u64) -> Result<GenSet> {
    let n = m.cols();
    if n == 0 {
        return Err(Error::dims("hilbert_oracle", "no unknowns"));
    }
    if bound == 0 {
        return Err(Error::Precondition("oracle box must be at least 1".into()));
    }
    let rows = integer_rows(m)?;
    let b = i64::try_from(bound).map_err(|_| Error::Overflow("hilbert_oracle"))?;

    let mut sols: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        let mut i = 0;
        while i < n && x[i] == b {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
        if satisfies(&rows, &x) {
            sols.push(x.clone());
        }
    }
    sols.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));

    let mut irreducible: Vec<Vec<i64>> = Vec::new();
    for s in &sols {
        let reducible = irreducible.iter().any(|h| {
            dominates(s, h) && {
                let d: Vec<i64> = s.iter().zip(h).map(|(a, b)| a - b).collect();
                satisfies(&rows, &d)
            }
        });
        if !reducible {
            irreducible.push(s.clone());
        }
    }
    Ok(genset_from_i64(&irreducible, n).canonicalize())
}

/// Compare the in-box part of `hb` with the oracle; on agreement the box is
/// recorded in `box_certified`.
pub fn certify(m: &Mat, hb: &mut HilbertBasis, bound: u64) -> Result<bool> {
    let oracle = hilbert_oracle(m, bound)?;
    let b = Scalar::from_integer(BigInt::from(bound));
    let in_box: Vec<Vec<Scalar>> = hb
        .basis
        .columns()
        .into_iter()
        .filter(|c| c.iter().all(|v| *v <= b))
        .collect();
    let ours = GenSet::from_columns(&in_box, m.cols(), RingSpec::Integers)?.canonicalize();
    let ok = ours == oracle;
    if ok {
        hb.box_certified = Some(bound);
    }
    Ok(ok)
}

/// Generators over `Z` of all integer solutions of a mixed system. Free
/// unknowns are split as `y = y0 - y1`; the result is nonnegative-flagged
/// iff there are no free unknowns.
pub fn solve_mixed_z(sys: &MixedSystem) -> Result<GenSet> {
    solve_mixed_z_capped(sys, DEFAULT_COMPLETION_CAP)
}

pub fn solve_mixed_z_capped(sys: &MixedSystem, cap: usize) -> Result<GenSet> {
    let m = &sys.m;
    let n = m.cols();
    if n == 0 {
        return Err(Error::dims("solve_mixed_z", "no unknowns"));
    }
    let free = sys.free_cols();
    // columns: original order, then one negated copy per free column
    let mut doubled = m.clone();
    for &f in &free {
        let negcol = m.select_columns(&[f]).neg();
        doubled = doubled.hstack(&negcol)?;
    }
    let doubled = doubled.with_ring(RingSpec::Integers)?;
    let hb = hilbert_basis_capped(&doubled, cap)?;
    let cols: Vec<Vec<Scalar>> = hb
        .basis
        .columns()
        .into_iter()
        .map(|c| {
            let mut x = c[..n].to_vec();
            for (i, &f) in free.iter().enumerate() {
                x[f] -= &c[n + i];
            }
            x
        })
        .collect();
    let gens = Mat::from_columns(&cols, n, RingSpec::Integers)?;
    let out = GenSet::with_flag(gens, free.is_empty())?.canonicalize();
    if free.is_empty() {
        return Ok(out);
    }
    crate::genset::pruned_integer_generators(&out)
}

const GUIDED_BUDGET: usize = 20_000;

/// Depth-first walk from the unit vector of column `t`, taking only steps
/// allowed by the completion (negative inner product with the current image),
/// most negative first, with iterative deepening on the total multiplicity.
/// A column is never combined with its negative. Any solution reached has
/// `t`-coordinate 1. Gives up after `budget` nodes.
fn guided_hit(cols: &[Vec<i64>], t: usize, budget: usize) -> Result<Option<Vec<i64>>> {
    let n = cols.len();
    let opposite: Vec<Option<usize>> = cols
        .iter()
        .map(|c| {
            cols.iter()
                .position(|d| c.iter().zip(d).all(|(a, b)| a.checked_neg() == Some(*b)) && c.iter().any(|&v| v != 0))
        })
        .collect();
    let mut start = vec![0; n];
    start[t] = 1;
    let mut nodes = 0usize;
    let mut depth = 2i64;
    loop {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack = vec![(start.clone(), cols[t].clone(), 1i64)];
        let mut truncated = false;
        while let Some((x, ax, size)) = stack.pop() {
            if ax.iter().all(|&v| v == 0) {
                return Ok(Some(x));
            }
            nodes += 1;
            if nodes >= budget {
                return Ok(None);
            }
            if size >= depth {
                truncated = true;
                continue;
            }
            let mut steps = Vec::new();
            for (j, col) in cols.iter().enumerate() {
                if j == t || opposite[j].is_some_and(|o| x[o] > 0) {
                    continue;
                }
                let d = dot(&ax, col)?;
                if d < 0 {
                    steps.push((d, j));
                }
            }
            // pushed in reverse so the most negative step is popped first
            steps.sort_unstable_by(|a, b| b.cmp(a));
            for (_, j) in steps {
                let mut y = x.clone();
                y[j] = y[j].checked_add(1).ok_or(Error::Overflow("hilbert completion"))?;
                if !seen.insert(y.clone()) {
                    continue;
                }
                let ay = ax
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, c)| a.checked_add(*c).ok_or(Error::Overflow("hilbert completion")))
                    .collect::<Result<Vec<_>>>()?;
                stack.push((y, ay, size + 1));
            }
        }
        if !truncated {
            return Ok(None);
        }
        depth *= 2;
    }
}

/// Nonnegative integer multiplicities `c` with `S c = x` for integer
/// generators of either sign, found as a Hilbert basis element with last
/// coordinate 1 of `{(c, t) >= 0 : S c - t x = 0}`.
pub fn signed_membership(s: &GenSet, x: &[Scalar], cap: usize) -> Result<Option<Vec<BigInt>>> {
    let k = s.len();
    let cols = match membership_columns(s, x)? {
        Trivial::Zero => return Ok(Some(vec![BigInt::zero(); k])),
        Trivial::Outside => return Ok(None),
        Trivial::No(cols) => cols,
    };
    if let Some(w) = guided_hit(&cols, k, GUIDED_BUDGET)? {
        return Ok(Some(w[..k].iter().map(|&c| BigInt::from(c)).collect()));
    }
    let hit = Completion {
        cols: &cols,
        cap,
        bounded: Some(k),
        first_hit: true,
    }
    .run()?;
    Ok(hit
        .first()
        .map(|w| w[..k].iter().map(|&c| BigInt::from(c)).collect()))
}

/// Remove columns that are nonnegative integer combinations of the others:
/// sums of two others by lookup, then a short guided search. Only explicit
/// witnesses remove a column.
pub(crate) fn prune_signed(mut cols: Vec<Vec<i64>>) -> Result<Vec<Vec<i64>>> {
    cols.sort_by_key(|c| std::cmp::Reverse(c.iter().map(|v| v.unsigned_abs()).sum::<u64>()));
    let mut i = 0;
    while i < cols.len() {
        let g = &cols[i];
        let mut count: HashMap<&[i64], usize> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            if j != i {
                *count.entry(c.as_slice()).or_default() += 1;
            }
        }
        let is_sum = cols.iter().enumerate().any(|(j, a)| {
            if j == i {
                return false;
            }
            let Some(diff) = g.iter().zip(a).map(|(x, y)| x.checked_sub(*y)).collect::<Option<Vec<_>>>() else {
                return false;
            };
            let need = if diff == *a { 2 } else { 1 };
            diff.iter().any(|&v| v != 0) && count.get(diff.as_slice()).is_some_and(|&n| n >= need)
        });
        if is_sum {
            cols.remove(i);
        } else {
            i += 1;
        }
    }
    let mut i = 0;
    while i < cols.len() {
        let mut system: Vec<Vec<i64>> = cols
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .collect();
        let t = system.len();
        system.push(cols[i].iter().map(|v| -v).collect());
        let budget = (50_000 / cols.len().max(1)).max(50);
        if t > 0 && guided_hit(&system, t, budget)?.is_some() {
            cols.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(cols)
}

enum Trivial {
    Zero,
    Outside,
    No(Vec<Vec<i64>>),
}

/// Columns of `[S | -x]`, unless `x` is zero or not integral.
fn membership_columns(s: &GenSet, x: &[Scalar]) -> Result<Trivial> {
    if x.len() != s.dim() {
        return Err(Error::dims("signed_membership", "point dimension"));
    }
    if x.iter().all(Zero::is_zero) {
        return Ok(Trivial::Zero);
    }
    if x.iter().any(|v| !v.is_integer()) || s.is_empty() {
        return Ok(Trivial::Outside);
    }
    let mut cols = integer_rows(&s.gens().transpose())?;
    cols.push(
        x.iter()
            .map(|v| to_i64(&v.to_integer()).map(|t| -t))
            .collect::<Result<_>>()?,
    );
    Ok(Trivial::No(cols))
}
