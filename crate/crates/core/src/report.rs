//! Root reports shared by every solver, and their JSON form.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Khayyam,
    Descartes,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Khayyam => "khayyam",
            Self::Descartes => "descartes",
            Self::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "khayyam" => Ok(Self::Khayyam),
            "descartes" => Ok(Self::Descartes),
            "oracle" => Ok(Self::Oracle),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    /// Ascending by value.
    pub roots: Vec<Root>,
    /// Largest scaled polynomial residual over the roots.
    pub residual_max: f64,
    pub method: Method,
    /// No root is admissible under the method's rule.
    pub impossible: bool,
}

impl RootReport {
    pub fn new(method: Method, mut roots: Vec<Root>, residual_max: f64) -> Self {
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        let impossible = roots.is_empty();
        Self {
            roots,
            residual_max,
            method,
            impossible,
        }
    }

    /// Root values repeated by multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        expand(&self.roots)
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Moves every root by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        let roots = self
            .roots
            .iter()
            .map(|r| Root {
                value: r.value + delta,
                multiplicity: r.multiplicity,
            })
            .collect();
        Self::new(self.method, roots, self.residual_max)
    }
}

pub fn expand(roots: &[Root]) -> Vec<f64> {
    let mut out: Vec<f64> = roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity as usize))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Largest deviation `|a - b| / max(1, |b|)` between two root multisets,
/// or infinity when their sizes (counted with multiplicity) differ.
pub fn multiset_deviation(got: &[Root], want: &[Root]) -> f64 {
    let g = expand(got);
    let w = expand(want);
    if g.len() != w.len() {
        return f64::INFINITY;
    }
    g.iter()
        .zip(&w)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// The JSON document printed by `solve --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_id: Option<u8>,
    pub roots: Vec<Root>,
    pub residual_max: f64,
    pub impossible: bool,
}

impl SolveDocument {
    pub fn new(report: &RootReport, type_id: Option<u8>) -> Self {
        Self {
            method: report.method,
            type_id,
            roots: report.roots.clone(),
            residual_max: report.residual_max,
            impossible: report.impossible,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document holds only plain data")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document holds only plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc
            .roots
            .iter()
            .any(|r| !r.value.is_finite() || r.multiplicity == 0)
        {
            return Err(Error::Parse(
                "roots must be finite with multiplicity ≥ 1".into(),
            ));
        }
        if !(doc.residual_max >= 0.0) {
            return Err(Error::Parse(
                "residual_max must be a non-negative number".into(),
            ));
        }
        Ok(doc)
    }

    pub fn report(&self) -> RootReport {
        RootReport {
            roots: self.roots.clone(),
            residual_max: self.residual_max,
            method: self.method,
            impossible: self.impossible,
        }
    }
}
