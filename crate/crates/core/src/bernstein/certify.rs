use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::region::Region;
use super::tensor::{to_bernstein_with, BernsteinTensor};
use crate::binomial::Binomials;
use crate::error::{Error, Result};
use crate::parallel::{map_indexed, Execution};
use crate::poly::MultiPoly;
use crate::rational::{as_repr, as_string, as_string_vec, Rational};

pub const CERTIFICATE_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Split,
    Failed,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Proved => "proved",
            Verdict::Split => "split",
            Verdict::Failed => "failed",
            Verdict::Undecided => "undecided",
        };
        f.write_str(s)
    }
}

/// How a box is cut when it cannot be decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitRule {
    /// Uniform grid with this many parts per axis.
    Uniform(Vec<usize>),
    /// Cut one axis at explicit points (interior points outside the box are skipped).
    Cuts {
        axis: usize,
        #[serde(with = "as_string_vec")]
        points: Vec<Rational>,
    },
    /// Bisect the axis with the largest Bernstein spread.
    Adaptive,
}

#[derive(Debug, Clone)]
pub struct Policy {
    /// `schedule[d]` is used at depth `d`; deeper levels bisect adaptively.
    pub schedule: Vec<SplitRule>,
    pub max_depth: usize,
    pub strict: bool,
    /// Named sub-proofs that may discharge a box.
    pub hand_chains: Vec<String>,
    pub exec: Execution,
}

impl Policy {
    pub fn adaptive(max_depth: usize) -> Self {
        Policy {
            schedule: Vec::new(),
            max_depth,
            strict: false,
            hand_chains: Vec::new(),
            exec: Execution::default(),
        }
    }

    /// A single uniform split level, nothing deeper.
    pub fn grid(counts: &[usize]) -> Self {
        Policy {
            schedule: vec![SplitRule::Uniform(counts.to_vec())],
            max_depth: 1,
            ..Self::adaptive(1)
        }
    }

    pub fn with_hand_chain(mut self, name: &str) -> Self {
        self.hand_chains.push(name.to_string());
        self
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    fn rule(&self, depth: usize) -> &SplitRule {
        self.schedule.get(depth).unwrap_or(&SplitRule::Adaptive)
    }
}

/// An independently verified argument that discharges `objective <= bound`
/// (or `<` when strict) on some boxes.
pub trait SubProof: Send + Sync {
    fn name(&self) -> &str;
    fn applies(&self, objective: &MultiPoly, region: &Region, bound: &Rational, strict: bool) -> bool;
    /// Runs the argument; `Ok(true)` means every step checked.
    fn verify(&self) -> Result<bool>;
}

#[derive(Clone, Default)]
pub struct SubProofRegistry {
    entries: BTreeMap<String, Arc<dyn SubProof>>,
    verified: Arc<Mutex<BTreeMap<String, bool>>>,
}

impl fmt::Debug for SubProofRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl SubProofRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, proof: Arc<dyn SubProof>) {
        self.entries.insert(proof.name().to_string(), proof);
    }

    pub fn with(mut self, proof: Arc<dyn SubProof>) -> Self {
        self.register(proof);
        self
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn get(&self, name: &str) -> Result<&Arc<dyn SubProof>> {
        self.entries
            .get(name)
            .ok_or_else(|| Error::UnknownSubProof(name.to_string()))
    }

    /// Runs a sub-proof once and caches the outcome.
    pub fn verified(&self, name: &str) -> Result<bool> {
        if let Some(&ok) = self.verified.lock().expect("cache lock").get(name) {
            return Ok(ok);
        }
        let ok = self.get(name)?.verify()?;
        self.verified
            .lock()
            .expect("cache lock")
            .insert(name.to_string(), ok);
        Ok(ok)
    }

    fn discharges(
        &self,
        name: &str,
        objective: &MultiPoly,
        region: &Region,
        bound: &Rational,
        strict: bool,
    ) -> Result<bool> {
        let proof = self.get(name)?;
        if !proof.applies(objective, region, bound, strict) {
            return Ok(false);
        }
        self.verified(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "as_string_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "as_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub index: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    pub region: Region,
    #[serde(with = "as_string")]
    pub max_beta: Rational,
    pub argmax: Vec<usize>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_proof: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: u32,
    pub objective_hash: String,
    pub objective: MultiPoly,
    pub degrees: Vec<usize>,
    #[serde(with = "as_repr")]
    pub bound: Rational,
    pub strict: bool,
    pub verdict: Verdict,
    /// Undecided leaf with the largest Bernstein maximum, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst: Option<usize>,
    pub nodes: Vec<Node>,
}

impl Certificate {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(|n| n.children.is_empty())
    }

    /// Indices from the root down to `index`.
    pub fn path_to(&self, index: usize) -> Vec<usize> {
        let mut path = vec![index];
        let mut cur = index;
        while let Some(p) = self.nodes.get(cur).and_then(|n| n.parent) {
            if path.contains(&p) || path.len() > self.nodes.len() {
                break;
            }
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn exceeds(value: &Rational, bound: &Rational, strict: bool) -> bool {
    if strict {
        value >= bound
    } else {
        value > bound
    }
}

fn corners(region: &Region) -> impl Iterator<Item = Vec<Rational>> + '_ {
    let d = region.dim();
    (0..1usize << d).map(move |mask| {
        let upper: Vec<bool> = (0..d).map(|k| mask >> (d - 1 - k) & 1 == 1).collect();
        region.corner(&upper)
    })
}

/// First box corner where the objective violates the bound.
fn corner_violation(p: &MultiPoly, region: &Region, bound: &Rational, strict: bool) -> Result<Option<Witness>> {
    for pt in corners(region) {
        let v = p.eval(&pt)?;
        if exceeds(&v, bound, strict) {
            return Ok(Some(Witness { point: pt, value: v }));
        }
    }
    Ok(None)
}

fn adaptive_axis(bt: &BernsteinTensor) -> Option<usize> {
    let region = bt.region();
    let mut best: Option<(usize, Rational)> = None;
    for k in 0..region.dim() {
        if region.interval(k).is_degenerate() {
            continue;
        }
        let s = bt.spread(k);
        if best.as_ref().is_none_or(|(_, b)| s > *b) {
            best = Some((k, s));
        }
    }
    match best {
        Some((k, s)) if !s.is_zero() => Some(k),
        _ => (0..region.dim())
            .filter(|&k| !region.interval(k).is_degenerate())
            .max_by(|&a, &b| {
                region
                    .interval(a)
                    .width()
                    .cmp(&region.interval(b).width())
                    .then(b.cmp(&a))
            }),
    }
}

fn split_region(rule: &SplitRule, bt: &BernsteinTensor) -> Result<Vec<Region>> {
    let region = bt.region();
    match rule {
        SplitRule::Uniform(counts) => region.split(counts),
        SplitRule::Cuts { axis, points } => {
            let iv = region
                .intervals()
                .get(*axis)
                .ok_or_else(|| Error::InvalidParameter(format!("axis {axis} out of range")))?;
            let mut out = Vec::new();
            let mut rest = region.clone();
            for pt in points.iter().filter(|pt| iv.lo < **pt && **pt < iv.hi) {
                let [l, r] = rest.split_at(*axis, pt)?;
                out.push(l);
                rest = r;
            }
            out.push(rest);
            Ok(out)
        }
        SplitRule::Adaptive => match adaptive_axis(bt) {
            Some(k) => Ok(region.split_at(k, &region.interval(k).midpoint())?.to_vec()),
            None => Ok(vec![region.clone()]),
        },
    }
}

struct Pending {
    region: Region,
    parent: Option<usize>,
    depth: usize,
}

struct Evaluated {
    tensor: BernsteinTensor,
    verdict: Verdict,
    sub_proof: Option<String>,
    witness: Option<Witness>,
    children: Vec<Region>,
}

/// Attempts to prove `p <= bound` (`<` with a strict policy) on `region`.
///
/// Boxes are processed level by level; within a level they may be evaluated
/// concurrently, but node indices follow box order so the result does not
/// depend on the execution mode.
pub fn certify_upper_bound(
    p: &MultiPoly,
    region: &Region,
    bound: &Rational,
    policy: &Policy,
    registry: &SubProofRegistry,
) -> Result<Certificate> {
    certify_with_degrees(p, p.degree_bounds(), region, bound, policy, registry)
}

pub fn certify_with_degrees(
    p: &MultiPoly,
    degrees: &[usize],
    region: &Region,
    bound: &Rational,
    policy: &Policy,
    registry: &SubProofRegistry,
) -> Result<Certificate> {
    if region.dim() != p.nvars() {
        return Err(Error::Arity {
            expected: p.nvars(),
            got: region.dim(),
        });
    }
    region.validate()?;
    for name in &policy.hand_chains {
        registry.get(name)?;
    }
    let binom = Binomials::up_to(degrees.iter().copied().max().unwrap_or(0));
    let mut nodes: Vec<Node> = Vec::new();
    let mut frontier = vec![Pending {
        region: region.clone(),
        parent: None,
        depth: 0,
    }];
    while !frontier.is_empty() {
        let results = map_indexed(policy.exec, &frontier, |_, job| {
            evaluate(p, degrees, job, bound, policy, registry, &binom)
        });
        let mut next = Vec::new();
        for (job, res) in frontier.into_iter().zip(results) {
            let ev = res?;
            let index = nodes.len();
            if let Some(parent) = job.parent {
                nodes[parent].children.push(index);
            }
            let (max, argmax) = ev.tensor.max();
            nodes.push(Node {
                index,
                parent: job.parent,
                depth: job.depth,
                region: job.region,
                max_beta: max.clone(),
                argmax,
                verdict: ev.verdict,
                children: Vec::new(),
                sub_proof: ev.sub_proof,
                witness: ev.witness,
            });
            for child in ev.children {
                next.push(Pending {
                    region: child,
                    parent: Some(index),
                    depth: job.depth + 1,
                });
            }
        }
        frontier = next;
    }
    let (verdict, worst) = overall(&nodes);
    Ok(Certificate {
        format: CERTIFICATE_FORMAT,
        objective_hash: p.content_hash(),
        objective: p.clone(),
        degrees: degrees.to_vec(),
        bound: bound.clone(),
        strict: policy.strict,
        verdict,
        worst,
        nodes,
    })
}

fn evaluate(
    p: &MultiPoly,
    degrees: &[usize],
    job: &Pending,
    bound: &Rational,
    policy: &Policy,
    registry: &SubProofRegistry,
    binom: &Binomials,
) -> Result<Evaluated> {
    let tensor = to_bernstein_with(p, degrees, &job.region, binom)?;
    let mut ev = Evaluated {
        verdict: Verdict::Undecided,
        sub_proof: None,
        witness: None,
        children: Vec::new(),
        tensor,
    };
    if !exceeds(ev.tensor.max().0, bound, policy.strict) {
        ev.verdict = Verdict::Proved;
        return Ok(ev);
    }
    if let Some(w) = corner_violation(p, &job.region, bound, policy.strict)? {
        ev.verdict = Verdict::Failed;
        ev.witness = Some(w);
        return Ok(ev);
    }
    for name in &policy.hand_chains {
        if registry.discharges(name, p, &job.region, bound, policy.strict)? {
            ev.verdict = Verdict::Proved;
            ev.sub_proof = Some(name.clone());
            return Ok(ev);
        }
    }
    if job.depth < policy.max_depth {
        let kids = split_region(policy.rule(job.depth), &ev.tensor)?;
        if kids.len() > 1 {
            ev.verdict = Verdict::Split;
            ev.children = kids;
        }
    }
    Ok(ev)
}

fn overall(nodes: &[Node]) -> (Verdict, Option<usize>) {
    let leaves = || nodes.iter().filter(|n| n.children.is_empty());
    let worst = leaves()
        .filter(|n| n.verdict == Verdict::Undecided)
        .fold(None::<&Node>, |acc, n| match acc {
            Some(a) if a.max_beta >= n.max_beta => Some(a),
            _ => Some(n),
        })
        .map(|n| n.index);
    let verdict = if leaves().any(|n| n.verdict == Verdict::Failed) {
        Verdict::Failed
    } else if worst.is_some() {
        Verdict::Undecided
    } else {
        Verdict::Proved
    };
    (verdict, worst)
}

/// Why a certificate was rejected, with the root-to-node path of the first bad node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(f, "node {}: {}", path.join("/"), self.reason)
    }
}

impl std::error::Error for Rejection {}

/// Independently re-checks a certificate. Returns the verdict it establishes
/// (which is [`Verdict::Proved`] only if every leaf is discharged).
pub fn replay(cert: &Certificate, registry: &SubProofRegistry) -> std::result::Result<Verdict, Rejection> {
    replay_with(cert, registry, Execution::default())
}

pub fn replay_with(
    cert: &Certificate,
    registry: &SubProofRegistry,
    exec: Execution,
) -> std::result::Result<Verdict, Rejection> {
    let reject = |i: usize, reason: String| Rejection {
        path: cert.path_to(i),
        reason,
    };
    let top = |reason: &str| Rejection {
        path: Vec::new(),
        reason: reason.to_string(),
    };
    if cert.format != CERTIFICATE_FORMAT {
        return Err(top("unsupported certificate format"));
    }
    if cert.objective.content_hash() != cert.objective_hash {
        return Err(top("objective hash mismatch"));
    }
    if cert.nodes.is_empty() {
        return Err(top("no nodes"));
    }
    let p = &cert.objective;
    if cert.degrees.len() != p.nvars() {
        return Err(top("degree list does not match the objective"));
    }

    // Tree shape: indices in order, each non-root node claimed by exactly its parent.
    let mut claimed = BTreeSet::new();
    for (i, n) in cert.nodes.iter().enumerate() {
        if n.index != i {
            return Err(reject(i, "index out of order".into()));
        }
        if n.region.dim() != p.nvars() || n.region.validate().is_err() {
            return Err(reject(i, "malformed box".into()));
        }
        match n.parent {
            None if i != 0 => return Err(reject(i, "orphan node".into())),
            Some(_) if i == 0 => return Err(reject(i, "root has a parent".into())),
            Some(parent) => {
                let ok = parent < i && cert.nodes[parent].children.contains(&i);
                if !ok {
                    return Err(reject(i, "node not listed by its parent".into()));
                }
                if n.depth != cert.nodes[parent].depth + 1 {
                    return Err(reject(i, "depth mismatch".into()));
                }
            }
            None => {}
        }
        for &c in &n.children {
            if c <= i || c >= cert.nodes.len() || !claimed.insert(c) {
                return Err(reject(i, format!("bad child reference {c}")));
            }
            if cert.nodes[c].parent != Some(i) {
                return Err(reject(i, format!("child {c} names another parent")));
            }
        }
    }

    let binom = Binomials::up_to(cert.degrees.iter().copied().max().unwrap_or(0));
    let checks = map_indexed(exec, &cert.nodes, |i, n| check_node(cert, i, n, registry, &binom));
    for (i, c) in checks.into_iter().enumerate() {
        if let Err(reason) = c {
            return Err(reject(i, reason));
        }
    }

    let (verdict, worst) = overall(&cert.nodes);
    if verdict != cert.verdict || worst != cert.worst {
        return Err(top("recorded overall verdict does not follow from the nodes"));
    }
    Ok(verdict)
}

fn check_node(
    cert: &Certificate,
    i: usize,
    n: &Node,
    registry: &SubProofRegistry,
    binom: &Binomials,
) -> std::result::Result<(), String> {
    let p = &cert.objective;
    let bt = to_bernstein_with(p, &cert.degrees, &n.region, binom).map_err(|e| e.to_string())?;
    let (max, argmax) = bt.max();
    if *max != n.max_beta {
        return Err(format!("recorded max {} but recomputed {}", n.max_beta, max));
    }
    if argmax != n.argmax {
        return Err("recorded argmax differs".into());
    }
    let leaf = n.children.is_empty();
    match n.verdict {
        Verdict::Proved if !leaf => Err("proved node has children".into()),
        Verdict::Proved => match &n.sub_proof {
            None if exceeds(max, &cert.bound, cert.strict) => {
                Err("Bernstein maximum does not establish the bound".into())
            }
            None => Ok(()),
            Some(name) => {
                let proof = registry.get(name).map_err(|e| e.to_string())?;
                if !proof.applies(p, &n.region, &cert.bound, cert.strict) {
                    return Err(format!("sub-proof {name:?} does not apply here"));
                }
                match registry.verified(name) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(format!("sub-proof {name:?} did not verify")),
                    Err(e) => Err(e.to_string()),
                }
            }
        },
        Verdict::Split => {
            if leaf {
                return Err("split node without children".into());
            }
            let kids: Vec<&Node> = n.children.iter().map(|&c| &cert.nodes[c]).collect();
            let mask = n.region.nondegenerate_mask();
            let mut total = Rational::zero();
            for (a, ka) in kids.iter().enumerate() {
                if !n.region.contains(&ka.region) {
                    return Err(format!("child {} leaves the box", ka.index));
                }
                total += ka.region.measure(&mask);
                for kb in &kids[a + 1..] {
                    if ka.region.interiors_overlap(&kb.region, &mask) {
                        return Err(format!("children {} and {} overlap", ka.index, kb.index));
                    }
                }
            }
            if total != n.region.measure(&mask) {
                return Err("children do not cover the box".into());
            }
            Ok(())
        }
        Verdict::Failed => {
            if !leaf {
                return Err("failed node has children".into());
            }
            let w = n.witness.as_ref().ok_or("failed node without witness")?;
            if !n.region.contains_point(&w.point) {
                return Err("witness outside the box".into());
            }
            let v = p.eval(&w.point).map_err(|e| e.to_string())?;
            if v != w.value || !exceeds(&v, &cert.bound, cert.strict) {
                return Err("witness does not violate the bound".into());
            }
            Ok(())
        }
        Verdict::Undecided if !leaf => Err("undecided node has children".into()),
        Verdict::Undecided => {
            let _ = i;
            Ok(())
        }
    }
}
