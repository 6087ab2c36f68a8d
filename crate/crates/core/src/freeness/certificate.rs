//! Replayable freeness proofs and their verifiers.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::lattice::char_poly;
use crate::poly::CharPoly;

/// Sorted multiset of nonnegative integers, the χ-roots of an arrangement.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct ExponentMultiset(Vec<u64>);

impl ExponentMultiset {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        ExponentMultiset(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn contains(&self, b: u64) -> bool {
        self.0.binary_search(&b).is_ok()
    }

    /// Multiset inclusion.
    pub fn is_submultiset_of(&self, other: &ExponentMultiset) -> bool {
        let mut it = other.0.iter().peekable();
        'outer: for x in &self.0 {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Removes one copy of `b`, if present.
    pub fn without(&self, b: u64) -> Option<ExponentMultiset> {
        let i = self.0.binary_search(&b).ok()?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(ExponentMultiset(v))
    }

    pub fn with(&self, b: u64) -> ExponentMultiset {
        let mut v = self.0.clone();
        let i = v.partition_point(|&x| x < b);
        v.insert(i, b);
        ExponentMultiset(v)
    }

    /// `Π (t - b)`
    pub fn to_poly(&self) -> CharPoly {
        let roots: Vec<i64> = self.0.iter().map(|&b| b as i64).collect();
        CharPoly::from_roots(&roots)
    }
}

impl fmt::Debug for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// χ-root multiset of `a`, if χ splits over the nonnegative integers.
pub fn exponents_if_chi_splits(a: &Arrangement) -> Option<ExponentMultiset> {
    exponents_of(&char_poly(a))
}

pub(crate) fn exponents_of(chi: &CharPoly) -> Option<ExponentMultiset> {
    chi.nonnegative_integer_roots()
        .ok()
        .flatten()
        .map(ExponentMultiset::new)
}

/// One restriction in a division chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionStep {
    /// Snapshot id of the arrangement being restricted.
    pub snapshot: String,
    pub hyperplane: usize,
    pub chi_before: CharPoly,
    pub chi_after: CharPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Terminal {
    pub snapshot: String,
    pub dim: usize,
}

/// A chain of restrictions ending in an arrangement of dimension at most
/// two (or an empty one), with each characteristic polynomial dividing the
/// previous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionCertificate {
    pub arrangement: String,
    pub steps: Vec<DivisionStep>,
    pub terminal: Terminal,
}

/// A node of an inductive-freeness proof tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum InductionNode {
    /// The empty arrangement.
    Empty,
    /// `A` is obtained by adding `hyperplane` to `A'` with restriction `A''`.
    Addition {
        hyperplane: usize,
        exp_deletion: ExponentMultiset,
        exp_restriction: ExponentMultiset,
        deletion: Arc<InductionNode>,
        restriction: Arc<InductionNode>,
    },
}

impl InductionNode {
    /// Number of nodes in the expanded tree.
    pub fn size(&self) -> usize {
        match self {
            InductionNode::Empty => 1,
            InductionNode::Addition {
                deletion,
                restriction,
                ..
            } => 1 + deletion.size() + restriction.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionCertificate {
    pub arrangement: String,
    pub exponents: ExponentMultiset,
    pub tree: Arc<InductionNode>,
}

/// Either kind of certificate, as stored in certificate files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Division(DivisionCertificate),
    Induction(InductionCertificate),
}

impl Certificate {
    pub fn verify(&self, a: &Arrangement) -> Result<(), VerifyError> {
        match self {
            Certificate::Division(c) => verify_division_certificate(a, c),
            Certificate::Induction(c) => verify_induction_certificate(a, c),
        }
    }
}

/// Why a certificate failed to replay. `step` is the index of the failing
/// division step, or the preorder index of the failing tree node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {message}")]
pub struct VerifyError {
    pub step: usize,
    pub message: String,
}

fn fail<T>(step: usize, message: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError {
        step,
        message: message.into(),
    })
}

/// Replays every restriction and divisibility test of `cert` against `a`.
pub fn verify_division_certificate(
    a: &Arrangement,
    cert: &DivisionCertificate,
) -> Result<(), VerifyError> {
    if cert.arrangement != a.snapshot_id() {
        return fail(0, "certificate was issued for a different arrangement");
    }
    let mut current = a.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        if step.snapshot != current.snapshot_id() {
            return fail(i, "snapshot mismatch");
        }
        if current.dim() <= 2 || current.is_empty() {
            return fail(i, "chain continues past a terminal arrangement");
        }
        let flat = match current.hyperplane_flat(step.hyperplane) {
            Ok(f) => f,
            Err(e) => return fail(i, e.to_string()),
        };
        let next = match current.restrict(&flat) {
            Ok(r) => r,
            Err(e) => return fail(i, e.to_string()),
        };
        let chi = char_poly(&current);
        if chi != step.chi_before {
            return fail(
                i,
                format!("recorded χ {} but computed {chi}", step.chi_before),
            );
        }
        let chi_next = char_poly(&next);
        if chi_next != step.chi_after {
            return fail(
                i,
                format!(
                    "recorded restriction χ {} but computed {chi_next}",
                    step.chi_after
                ),
            );
        }
        match chi_next.divides(&chi) {
            Ok(true) => {}
            _ => return fail(i, format!("{chi_next} does not divide {chi}")),
        }
        current = next;
    }
    let last = cert.steps.len();
    if cert.terminal.snapshot != current.snapshot_id() || cert.terminal.dim != current.dim() {
        return fail(
            last,
            "terminal arrangement does not match the replayed chain",
        );
    }
    if current.dim() > 2 && !current.is_empty() {
        return fail(last, format!("chain ends in dimension {}", current.dim()));
    }
    Ok(())
}

pub fn verify_induction_certificate(
    a: &Arrangement,
    cert: &InductionCertificate,
) -> Result<(), VerifyError> {
    if cert.arrangement != a.snapshot_id() {
        return fail(0, "certificate was issued for a different arrangement");
    }
    match exponents_if_chi_splits(a) {
        Some(e) if e == cert.exponents => {}
        _ => return fail(0, "recorded exponents are not the χ-roots"),
    }
    let mut counter = 0;
    verify_node(a, &cert.tree, &mut counter)
}

fn verify_node(
    a: &Arrangement,
    node: &InductionNode,
    counter: &mut usize,
) -> Result<(), VerifyError> {
    let id = *counter;
    *counter += 1;
    match node {
        InductionNode::Empty => {
            if !a.is_empty() {
                return fail(id, format!("leaf arrangement has {} hyperplanes", a.len()));
            }
            Ok(())
        }
        InductionNode::Addition {
            hyperplane,
            exp_deletion,
            exp_restriction,
            deletion,
            restriction,
        } => {
            let deleted = a.delete(*hyperplane).or_else(|e| fail(id, e.to_string()))?;
            let flat = a
                .hyperplane_flat(*hyperplane)
                .or_else(|e| fail(id, e.to_string()))?;
            let restricted = a.restrict(&flat).or_else(|e| fail(id, e.to_string()))?;
            if exponents_if_chi_splits(&deleted).as_ref() != Some(exp_deletion) {
                return fail(id, "deletion exponents do not match its χ-roots");
            }
            if exponents_if_chi_splits(&restricted).as_ref() != Some(exp_restriction) {
                return fail(id, "restriction exponents do not match its χ-roots");
            }
            if !exp_restriction.is_submultiset_of(exp_deletion) {
                return fail(
                    id,
                    "restriction exponents are not contained in deletion exponents",
                );
            }
            verify_node(&deleted, deletion, counter)?;
            verify_node(&restricted, restriction, counter)
        }
    }
}
