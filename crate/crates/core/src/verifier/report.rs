use serde::Serialize;

use crate::darboux::IndexSet;
use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::scalar;
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            witness: witness.into(),
            bound: None,
        }
    }

    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Pass, witness)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, Status::Fail, witness)
    }

    pub fn with_bound(mut self, bound: String) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, witness)
    }

    /// Pass iff the residual is identically zero; the witness is its term count.
    pub fn from_residual(name: impl Into<String>, residual: &LaurentPoly) -> Self {
        let terms = residual.term_count();
        Self::from_bool(name, terms == 0, format!("residual terms: {terms}"))
    }

    /// Turns an error raised while computing a check into a failed check.
    pub fn from_result(name: impl Into<String>, r: Result<Check>) -> Self {
        let name = name.into();
        match r {
            Ok(mut c) => {
                c.name = name;
                c
            }
            Err(e) => Self::fail(name, format!("error: {e}")),
        }
    }

    pub fn downgrade(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Warn;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsEcho {
    pub family: String,
    #[serde(rename = "type")]
    pub construction: String,
    pub q: String,
    pub a: String,
    pub b: String,
    pub dmax: usize,
}

impl From<&Params> for ParamsEcho {
    fn from(p: &Params) -> Self {
        Self {
            family: p.family.name().to_string(),
            construction: p.construction.to_string(),
            q: scalar::format(&p.q),
            a: scalar::format(&p.a),
            b: scalar::format(&p.b),
            dmax: p.dmax,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub params: ParamsEcho,
    #[serde(rename = "D")]
    pub dset: IndexSet,
    pub overall: Status,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(p: &Params, d: &IndexSet) -> Self {
        Self {
            params: p.into(),
            dset: d.clone(),
            overall: Status::Pass,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        if c.status == Status::Fail {
            self.overall = Status::Fail;
        }
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.overall != Status::Fail
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Splits an error into the CLI-facing category.
pub fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::InvalidParams(_) | Error::InvalidIndexSet(_))
}
