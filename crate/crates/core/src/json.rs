//! JSON wire formats. Scalars travel as `["num", "den"]` pairs of decimal
//! strings so that no precision is lost.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::calculus::EquationSolution;
use crate::cone::{ConeRep, PolyCone};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::hilbert::HilbertBasis;
use crate::lgroup::{IrrationalRow, LPresentation, LatticeTerm, LinFunc};
use crate::matrix::Mat;
use crate::ring::{RingSpec, Scalar};

/// Version tag of the schemas under `schemas/`.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingJson {
    Name(String),
    Localized {
        #[serde(rename = "Zloc")]
        zloc: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatJson {
    pub ring: RingJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSetJson {
    pub ring: RingJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[String; 2]>,
    pub nonneg: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertBasisJson {
    pub basis: GenSetJson,
    pub box_certified: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<MatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<MatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lineality: Option<MatJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyConeJson {
    pub pieces: Vec<ConeJson>,
}

/// Integer literal: a JSON number or a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Num(i64),
    Str(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermJson {
    Lin {
        lin: Vec<IntJson>,
    },
    Node {
        op: String,
        args: Vec<TermJson>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LPresentationJson {
    pub n: usize,
    #[serde(default)]
    pub relators: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationJson {
    pub gens: GenSetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_basis: Option<MatJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrationalRowJson {
    pub p: u64,
    pub q: u64,
    pub size: usize,
    pub basis: GenSetJson,
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("{s:?} is not a decimal integer")))
}

pub fn scalar_from_json(p: &[String; 2]) -> Result<Scalar> {
    let num = parse_int(&p[0])?;
    let den = parse_int(&p[1])?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Scalar::new(num, den))
}

pub fn scalar_to_json(x: &Scalar) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

pub fn ring_from_json(r: &RingJson) -> Result<RingSpec> {
    match r {
        RingJson::Name(s) if s == "Z" => Ok(RingSpec::Integers),
        RingJson::Name(s) if s == "Q" => Ok(RingSpec::Rationals),
        RingJson::Name(s) => Err(Error::Parse(format!("unknown ring {s:?}"))),
        RingJson::Localized { zloc } => RingSpec::localized(zloc.iter().copied()),
    }
}

pub fn ring_to_json(r: &RingSpec) -> RingJson {
    match r {
        RingSpec::Integers => RingJson::Name("Z".into()),
        RingSpec::Rationals => RingJson::Name("Q".into()),
        RingSpec::LocalizedIntegers(p) => RingJson::Localized {
            zloc: p.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
        },
    }
}

fn mat_parts(ring: &RingJson, rows: usize, cols: usize, entries: &[[String; 2]]) -> Result<Mat> {
    let ring = ring_from_json(ring)?;
    let e = entries.iter().map(scalar_from_json).collect::<Result<Vec<_>>>()?;
    Mat::new(rows, cols, e, ring)
}

impl MatJson {
    pub fn to_mat(&self) -> Result<Mat> {
        mat_parts(&self.ring, self.rows, self.cols, &self.entries)
    }

    pub fn from_mat(m: &Mat) -> Self {
        MatJson {
            ring: ring_to_json(m.ring()),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(scalar_to_json).collect(),
        }
    }
}

impl GenSetJson {
    pub fn to_genset(&self) -> Result<GenSet> {
        GenSet::with_flag(mat_parts(&self.ring, self.rows, self.cols, &self.entries)?, self.nonneg)
    }

    pub fn from_genset(g: &GenSet) -> Self {
        let m = MatJson::from_mat(g.gens());
        GenSetJson {
            ring: m.ring,
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
            nonneg: g.nonneg(),
        }
    }
}

impl HilbertBasisJson {
    pub fn from_basis(h: &HilbertBasis) -> Self {
        HilbertBasisJson {
            basis: GenSetJson::from_genset(&h.basis),
            box_certified: h.box_certified,
        }
    }
}

impl ConeJson {
    pub fn to_cone(&self) -> Result<ConeRep> {
        let h = self.hrep.as_ref().map(MatJson::to_mat).transpose()?;
        let v = self.vrep.as_ref().map(MatJson::to_mat).transpose()?;
        for (m, what) in [(&h, "hrep columns"), (&v, "vrep rows")] {
            if let Some(m) = m {
                let d = if what == "hrep columns" { m.cols() } else { m.rows() };
                if d != self.dim {
                    return Err(Error::Parse(format!("{what} do not match dim {}", self.dim)));
                }
            }
        }
        match (h, v) {
            (Some(h), Some(v)) => ConeRep::from_both(h, v),
            (Some(h), None) => ConeRep::from_hrep(h),
            (None, Some(v)) => ConeRep::from_vrep(v),
            (None, None) => Err(Error::Parse("cone needs hrep or vrep".into())),
        }
    }

    pub fn from_cone(c: &ConeRep) -> Self {
        ConeJson {
            dim: c.dim(),
            hrep: c.hrep().map(MatJson::from_mat),
            vrep: c.vrep().map(MatJson::from_mat),
            lineality: c.lineality().map(MatJson::from_mat),
        }
    }
}

impl PolyConeJson {
    pub fn from_polycone(p: &PolyCone) -> Self {
        PolyConeJson {
            pieces: p.pieces.iter().map(ConeJson::from_cone).collect(),
        }
    }
}

impl TermJson {
    pub fn to_term(&self) -> Result<LatticeTerm> {
        match self {
            TermJson::Lin { lin } => {
                let c = lin
                    .iter()
                    .map(|v| match v {
                        IntJson::Num(n) => Ok(BigInt::from(*n)),
                        IntJson::Str(s) => parse_int(s),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(LatticeTerm::Lin(LinFunc::new(c)))
            }
            TermJson::Node { op, args } => {
                if args.is_empty() {
                    return Err(Error::Parse(format!("{op:?} node without arguments")));
                }
                let a = args.iter().map(TermJson::to_term).collect::<Result<Vec<_>>>()?;
                match op.as_str() {
                    "add" => Ok(LatticeTerm::Add(a)),
                    "meet" => Ok(LatticeTerm::Meet(a)),
                    "join" => Ok(LatticeTerm::Join(a)),
                    "neg" if a.len() == 1 => Ok(LatticeTerm::neg(a.into_iter().next().expect("one"))),
                    "neg" => Err(Error::Parse("neg takes exactly one argument".into())),
                    other => Err(Error::Parse(format!("unknown term operation {other:?}"))),
                }
            }
        }
    }
}

impl LPresentationJson {
    pub fn to_presentation(&self) -> Result<LPresentation> {
        let r = self.relators.iter().map(TermJson::to_term).collect::<Result<Vec<_>>>()?;
        LPresentation::new(self.n, r).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl EquationJson {
    pub fn from_solution(s: &EquationSolution) -> Self {
        EquationJson {
            gens: GenSetJson::from_genset(&s.gens),
            module_basis: s.module_basis.as_ref().map(MatJson::from_mat),
        }
    }
}

impl IrrationalRowJson {
    pub fn from_row(r: &IrrationalRow) -> Self {
        IrrationalRowJson {
            p: r.p,
            q: r.q,
            size: r.basis.basis.len(),
            basis: GenSetJson::from_genset(&r.basis.basis),
        }
    }
}
