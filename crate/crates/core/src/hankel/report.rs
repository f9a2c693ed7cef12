//! Case-by-case bound reports and the small certified inequalities they cite.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bernstein::{certify_upper_bound, Certificate, Policy, Region, SplitRule, SubProofRegistry, Verdict};
use crate::error::Result;
use crate::parallel::Execution;
use crate::poly::MultiPoly;
use crate::rational::{as_string, Rational};

/// Depth limit for the auxiliary one- and two-variable inequalities.
pub const AUX_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubResult {
    pub name: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub holds: bool,
}

impl SubResult {
    pub fn new(name: &str, detail: impl Into<String>, holds: bool) -> Self {
        SubResult {
            name: name.to_string(),
            detail: detail.into(),
            value: None,
            holds,
        }
    }

    pub fn with_value(mut self, v: &Rational) -> Self {
        self.value = Some(v.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCertificate {
    pub name: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub title: String,
    #[serde(with = "as_string")]
    pub claimed_bound: Rational,
    pub verdict: Verdict,
    pub cases: Vec<SubResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<NamedCertificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(title: &str, claimed_bound: Rational) -> Self {
        BoundReport {
            title: title.to_string(),
            claimed_bound,
            verdict: Verdict::Undecided,
            cases: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, r: SubResult) -> bool {
        let ok = r.holds;
        self.cases.push(r);
        ok
    }

    pub fn attach(&mut self, name: &str, certificate: Certificate) {
        self.certificates.push(NamedCertificate {
            name: name.to_string(),
            certificate,
        });
    }

    /// Proved iff every case holds.
    pub fn finish(mut self) -> Self {
        self.verdict = if !self.cases.is_empty() && self.cases.iter().all(|c| c.holds) {
            Verdict::Proved
        } else {
            Verdict::Failed
        };
        self
    }

    pub fn is_proved(&self) -> bool {
        self.verdict == Verdict::Proved
    }

    pub fn first_failure(&self) -> Option<&SubResult> {
        self.cases.iter().find(|c| !c.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## {}\n", self.title);
        let _ = writeln!(s, "Claimed bound: `{}`, verdict: **{}**\n", self.claimed_bound, self.verdict);
        let _ = writeln!(s, "| case | detail | value | holds |");
        let _ = writeln!(s, "|---|---|---|---|");
        for c in &self.cases {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                c.name,
                c.detail.replace('|', "\\|"),
                c.value.as_deref().unwrap_or(""),
                if c.holds { "yes" } else { "no" }
            );
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(s, "\nCertificates:\n");
            for nc in &self.certificates {
                let _ = writeln!(
                    s,
                    "- {}: {} nodes, verdict {}",
                    nc.name,
                    nc.certificate.nodes.len(),
                    nc.certificate.verdict
                );
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "\nNotes:\n");
            for n in &self.notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        s
    }
}

fn aux_policy(cuts: &[(usize, Vec<Rational>)], strict: bool, exec: Execution) -> Policy {
    let mut policy = Policy::adaptive(AUX_DEPTH + cuts.len()).strict(strict).with_exec(exec);
    policy.schedule = cuts
        .iter()
        .map(|(axis, points)| SplitRule::Cuts {
            axis: *axis,
            points: points.clone(),
        })
        .collect();
    policy
}

/// Certifies `p <= bound` (or `<`) on `region`, first cutting at the given points.
pub fn certify_le(
    p: &MultiPoly,
    bound: &Rational,
    region: &Region,
    strict: bool,
    cuts: &[(usize, Vec<Rational>)],
    exec: Execution,
) -> Result<Certificate> {
    certify_upper_bound(p, region, bound, &aux_policy(cuts, strict, exec), &SubProofRegistry::new())
}

/// Certifies `p >= bound` (or `>`) on `region`.
pub fn certify_ge(
    p: &MultiPoly,
    bound: &Rational,
    region: &Region,
    strict: bool,
    cuts: &[(usize, Vec<Rational>)],
    exec: Execution,
) -> Result<Certificate> {
    certify_le(&-p.clone(), &-bound.clone(), region, strict, cuts, exec)
}
