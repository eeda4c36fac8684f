//! Family/construction tags and validated parameter points.

use std::fmt;

use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    LittleQJacobi,
    LittleQLaguerre,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::LittleQJacobi => "lqJacobi",
            Family::LittleQLaguerre => "lqLaguerre",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which end of the lattice the virtual states misbehave at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Construction {
    TypeI,
    TypeII,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::TypeI => "I",
            Construction::TypeII => "II",
        })
    }
}

/// A concrete parameter point `q^lambda = (a, b)`; `b` is zero for the Laguerre family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub family: Family,
    pub construction: Construction,
    pub q: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    /// Largest virtual index the point must support.
    pub dmax: usize,
}

impl Params {
    /// Validated constructor.
    pub fn new(
        family: Family,
        construction: Construction,
        q: Scalar,
        a: Scalar,
        b: Scalar,
        dmax: usize,
    ) -> Result<Self> {
        let p = Self::unchecked(family, construction, q, a, b, dmax);
        p.validate()?;
        Ok(p)
    }

    /// Skips range validation; used for shifted parameters and structural tests.
    pub fn unchecked(
        family: Family,
        construction: Construction,
        q: Scalar,
        a: Scalar,
        b: Scalar,
        dmax: usize,
    ) -> Self {
        Self {
            family,
            construction,
            q,
            a,
            b,
            dmax,
        }
    }

    pub fn jacobi(q: Scalar, a: Scalar, b: Scalar, dmax: usize) -> Result<Self> {
        Self::new(Family::LittleQJacobi, Construction::TypeII, q, a, b, dmax)
    }

    pub fn laguerre(q: Scalar, a: Scalar, dmax: usize) -> Result<Self> {
        Self::new(
            Family::LittleQLaguerre,
            Construction::TypeII,
            q,
            a,
            Scalar::zero(),
            dmax,
        )
    }

    pub fn is_jacobi(&self) -> bool {
        self.family == Family::LittleQJacobi
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let one = Scalar::one();
        if !(self.q.is_positive() && self.q < one) {
            return bad(format!("q = {} must satisfy 0 < q < 1", self.q));
        }
        if !(self.a.is_positive() && self.a < one) {
            return bad(format!("a = {} must satisfy 0 < a < 1", self.a));
        }
        let bound = scalar::pow(&self.q, 1 + self.dmax as i64);
        match self.family {
            Family::LittleQLaguerre => {
                if !self.b.is_zero() {
                    return bad(format!(
                        "b = {} must be 0 for the little q-Laguerre family",
                        self.b
                    ));
                }
            }
            Family::LittleQJacobi => {
                if self.b >= one {
                    return bad(format!("b = {} must satisfy b < 1", self.b));
                }
            }
        }
        if self.dmax == 0 {
            return Ok(());
        }
        match (self.construction, self.family) {
            (Construction::TypeII, Family::LittleQJacobi) => {
                if self.b >= bound {
                    return bad(format!(
                        "b = {} must satisfy b < q^{} = {}",
                        self.b,
                        1 + self.dmax,
                        bound
                    ));
                }
            }
            (Construction::TypeII, Family::LittleQLaguerre) => {}
            (Construction::TypeI, _) => {
                if self.a >= bound {
                    return bad(format!(
                        "a = {} must satisfy a < q^{} = {}",
                        self.a,
                        1 + self.dmax,
                        bound
                    ));
                }
            }
        }
        Ok(())
    }

    /// True outside the sub-range where positivity of the type II data is proven.
    pub fn in_extended_range(&self) -> bool {
        self.family == Family::LittleQJacobi
            && self.construction == Construction::TypeII
            && !self.b.is_positive()
    }

    /// `(a, b) -> (a q^{s1}, b q^{s2})` with everything else unchanged.
    pub fn shifted(&self, s1: i64, s2: i64) -> Self {
        let mut p = self.clone();
        p.a = &self.a * scalar::pow(&self.q, s1);
        if self.is_jacobi() {
            p.b = &self.b * scalar::pow(&self.q, s2);
        }
        p
    }

    /// `lambda + delta`.
    pub fn plus_delta(&self) -> Self {
        self.shifted(1, 1)
    }

    /// `lambda + M * delta_tilde` for the type II twist.
    pub fn plus_m_delta_tilde(&self, m: usize) -> Self {
        let m = m as i64;
        self.shifted(m, -m)
    }

    pub fn with_b(&self, b: Scalar) -> Self {
        let mut p = self.clone();
        p.b = b;
        p
    }

    pub fn with_construction(&self, c: Construction) -> Self {
        let mut p = self.clone();
        p.construction = c;
        p
    }
}
