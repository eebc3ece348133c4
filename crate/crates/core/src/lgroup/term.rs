use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::Scalar;

/// Cap on the combined length of the two meet lists.
pub const DEFAULT_NODE_CAP: usize = 100_000;

/// The linear functional `x ↦ Σ coeffs_i x_i` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinFunc {
    pub coeffs: Vec<BigInt>,
}

impl LinFunc {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        LinFunc { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        LinFunc::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LinFunc::new(vec![BigInt::zero(); n])
    }

    /// The `i`-th coordinate function.
    pub fn coord(n: usize, i: usize) -> Self {
        let mut f = LinFunc::zero(n);
        f.coeffs[i] = BigInt::from(1);
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LinFunc) -> LinFunc {
        LinFunc::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LinFunc) -> LinFunc {
        LinFunc::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LinFunc {
        LinFunc::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .fold(Scalar::zero(), |acc, (c, v)| acc + Scalar::from_integer(c.clone()) * v)
    }

    pub fn eval_int(&self, x: &[BigInt]) -> BigInt {
        crate::linalg::dot_int(&self.coeffs, x)
    }

    pub fn as_scalars(&self) -> Vec<Scalar> {
        self.coeffs.iter().map(|c| Scalar::from_integer(c.clone())).collect()
    }
}

/// Expression over linear functionals built from sums, negation, meets and joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeTerm {
    Lin(LinFunc),
    Add(Vec<LatticeTerm>),
    Neg(Box<LatticeTerm>),
    Meet(Vec<LatticeTerm>),
    Join(Vec<LatticeTerm>),
}

impl LatticeTerm {
    pub fn lin(c: &[i64]) -> Self {
        LatticeTerm::Lin(LinFunc::from_i64(c))
    }

    pub fn neg(t: LatticeTerm) -> Self {
        LatticeTerm::Neg(Box::new(t))
    }

    pub fn sub(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Add(vec![a, LatticeTerm::neg(b)])
    }

    pub fn meet(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Meet(vec![a, b])
    }

    pub fn join(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Join(vec![a, b])
    }

    /// `|t| = t ∨ (-t)`.
    pub fn abs(t: LatticeTerm) -> Self {
        LatticeTerm::join(t.clone(), LatticeTerm::neg(t))
    }

    /// Common dimension of all leaves.
    pub fn dim(&self) -> Result<usize> {
        match self {
            LatticeTerm::Lin(f) => Ok(f.dim()),
            LatticeTerm::Neg(t) => t.dim(),
            LatticeTerm::Add(ts) | LatticeTerm::Meet(ts) | LatticeTerm::Join(ts) => {
                let Some(first) = ts.first() else {
                    return Err(Error::Precondition("lattice term node without arguments".into()));
                };
                let n = first.dim()?;
                for t in &ts[1..] {
                    if t.dim()? != n {
                        return Err(Error::dims("LatticeTerm", "leaves of different lengths"));
                    }
                }
                Ok(n)
            }
        }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        match self {
            LatticeTerm::Lin(f) => f.eval(x),
            LatticeTerm::Neg(t) => -t.eval(x),
            LatticeTerm::Add(ts) => ts.iter().fold(Scalar::zero(), |a, t| a + t.eval(x)),
            LatticeTerm::Meet(ts) => ts.iter().map(|t| t.eval(x)).min().expect("nonempty"),
            LatticeTerm::Join(ts) => ts.iter().map(|t| t.eval(x)).max().expect("nonempty"),
        }
    }
}

/// `(⋀ pos) − (⋀ neg)`, both lists nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOfMeets {
    pub pos: Vec<LinFunc>,
    pub neg: Vec<LinFunc>,
}

impl DiffOfMeets {
    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let m = |fs: &[LinFunc]| fs.iter().map(|f| f.eval(x)).min().expect("nonempty");
        m(&self.pos) - m(&self.neg)
    }

    fn normalized(mut pos: Vec<LinFunc>, mut neg: Vec<LinFunc>, cap: usize) -> Result<Self> {
        pos.sort();
        pos.dedup();
        neg.sort();
        neg.dedup();
        if pos.len() + neg.len() > cap {
            return Err(Error::ResourceCap(format!(
                "lattice term expands to more than {cap} linear pieces"
            )));
        }
        Ok(DiffOfMeets { pos, neg })
    }

    fn negate(self) -> Self {
        DiffOfMeets {
            pos: self.neg,
            neg: self.pos,
        }
    }
}

fn sums(a: &[LinFunc], b: &[LinFunc]) -> Vec<LinFunc> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.add(y))).collect()
}

fn add(a: &DiffOfMeets, b: &DiffOfMeets, cap: usize) -> Result<DiffOfMeets> {
    DiffOfMeets::normalized(sums(&a.pos, &b.pos), sums(&a.neg, &b.neg), cap)
}

/// `(A − B) ∧ (C − D) = ((A + D) ∧ (C + B)) − (B + D)`.
fn meet(a: &DiffOfMeets, b: &DiffOfMeets, cap: usize) -> Result<DiffOfMeets> {
    let mut pos = sums(&a.pos, &b.neg);
    pos.extend(sums(&b.pos, &a.neg));
    DiffOfMeets::normalized(pos, sums(&a.neg, &b.neg), cap)
}

/// Normal form `⋀ f_i − ⋀ g_j` of a lattice term. A join is rewritten as
/// `a ∨ b = −((−a) ∧ (−b))`, which is `a + b − (a ∧ b)` after the common
/// summand cancels.
pub fn term_to_diff_of_meets(t: &LatticeTerm, cap: usize) -> Result<DiffOfMeets> {
    let n = t.dim()?;
    convert(t, n, cap)
}

fn convert(t: &LatticeTerm, n: usize, cap: usize) -> Result<DiffOfMeets> {
    match t {
        LatticeTerm::Lin(f) => Ok(DiffOfMeets {
            pos: vec![f.clone()],
            neg: vec![LinFunc::zero(n)],
        }),
        LatticeTerm::Neg(a) => Ok(convert(a, n, cap)?.negate()),
        LatticeTerm::Add(ts) => {
            let mut acc = convert(&ts[0], n, cap)?;
            for x in &ts[1..] {
                acc = add(&acc, &convert(x, n, cap)?, cap)?;
            }
            Ok(acc)
        }
        LatticeTerm::Meet(ts) => {
            let mut acc = convert(&ts[0], n, cap)?;
            for x in &ts[1..] {
                acc = meet(&acc, &convert(x, n, cap)?, cap)?;
            }
            Ok(acc)
        }
        LatticeTerm::Join(ts) => {
            let mut acc = convert(&ts[0], n, cap)?.negate();
            for x in &ts[1..] {
                acc = meet(&acc, &convert(x, n, cap)?.negate(), cap)?;
            }
            Ok(acc.negate())
        }
    }
}
