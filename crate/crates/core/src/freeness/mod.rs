//! Decision procedures for inductive and divisional freeness.
//!
//! Both searches walk hyperplanes in canonical order, depth first, and
//! return the first success, so their certificates are reproducible. Results
//! are memoized on the arrangement itself (its sorted normals), which is
//! exact because restriction coordinates are chosen deterministically.
//!
//! Exponents are the roots of χ. For any arrangement the searches certify,
//! the factorization theorem makes these the true exponents; an arrangement
//! whose χ does not split over the nonnegative integers is not free and is
//! rejected without further search.

mod certificate;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

pub use certificate::{
    exponents_if_chi_splits, verify_division_certificate, verify_induction_certificate,
    Certificate, DivisionCertificate, DivisionStep, ExponentMultiset, InductionCertificate,
    InductionNode, Terminal, VerifyError,
};

use crate::arrangement::{Arrangement, Flat};
use crate::lattice::{build_lattice, char_poly};
use crate::poly::CharPoly;
use certificate::exponents_of;

/// A search ran past its deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search interrupted by deadline")]
pub struct Interrupted;

type DivisionChain = Arc<(Vec<DivisionStep>, Terminal)>;

/// Search state shared across queries: χ cache and memo tables for both
/// freeness notions.
#[derive(Default)]
pub struct Solver {
    chi: HashMap<Arrangement, CharPoly>,
    divisional: HashMap<Arrangement, Option<DivisionChain>>,
    inductive: HashMap<Arrangement, Option<Arc<InductionNode>>>,
    deadline: Option<Instant>,
}

/// Outcome of a hereditary check: `failing` lists every flat X whose
/// restriction A^X is not in the class.
#[derive(Debug, Clone)]
pub struct HereditaryOutcome {
    pub holds: bool,
    pub failing: Vec<Flat>,
}

impl Solver {
    pub fn new() -> Self {
        Solver::default()
    }

    /// Aborts searches with [`Interrupted`] once `limit` has elapsed from
    /// now.
    pub fn with_timeout(limit: Duration) -> Self {
        Solver {
            deadline: Some(Instant::now() + limit),
            ..Solver::default()
        }
    }

    fn tick(&self) -> Result<(), Interrupted> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Interrupted),
            _ => Ok(()),
        }
    }

    pub fn char_poly(&mut self, a: &Arrangement) -> CharPoly {
        if let Some(c) = self.chi.get(a) {
            return c.clone();
        }
        let c = char_poly(a);
        self.chi.insert(a.clone(), c.clone());
        c
    }

    /// Divisional freeness with a certificate on success.
    pub fn divisional(
        &mut self,
        a: &Arrangement,
    ) -> Result<Option<DivisionCertificate>, Interrupted> {
        Ok(self.divisional_chain(a)?.map(|chain| DivisionCertificate {
            arrangement: a.snapshot_id(),
            steps: chain.0.clone(),
            terminal: chain.1.clone(),
        }))
    }

    fn divisional_chain(&mut self, a: &Arrangement) -> Result<Option<DivisionChain>, Interrupted> {
        if let Some(m) = self.divisional.get(a) {
            return Ok(m.clone());
        }
        self.tick()?;
        if a.dim() <= 2 || a.is_empty() {
            let chain = Arc::new((
                Vec::new(),
                Terminal {
                    snapshot: a.snapshot_id(),
                    dim: a.dim(),
                },
            ));
            self.divisional.insert(a.clone(), Some(chain.clone()));
            return Ok(Some(chain));
        }
        let chi = self.char_poly(a);
        let mut found = None;
        for h in 0..a.len() {
            let restricted = a.restrict_to_hyperplane(h).expect("index in range");
            let chi_r = self.char_poly(&restricted);
            if !chi_r.divides(&chi).expect("χ is monic") {
                continue;
            }
            if let Some(rest) = self.divisional_chain(&restricted)? {
                let mut steps = Vec::with_capacity(rest.0.len() + 1);
                steps.push(DivisionStep {
                    snapshot: a.snapshot_id(),
                    hyperplane: h,
                    chi_before: chi.clone(),
                    chi_after: chi_r,
                });
                steps.extend(rest.0.iter().cloned());
                found = Some(Arc::new((steps, rest.1.clone())));
                break;
            }
        }
        self.divisional.insert(a.clone(), found.clone());
        Ok(found)
    }

    /// Inductive freeness with a proof tree on success.
    pub fn inductive(
        &mut self,
        a: &Arrangement,
    ) -> Result<Option<InductionCertificate>, Interrupted> {
        let chi = self.char_poly(a);
        let Some(exponents) = exponents_of(&chi) else {
            return Ok(None);
        };
        Ok(self
            .inductive_node(a, chi)?
            .map(|tree| InductionCertificate {
                arrangement: a.snapshot_id(),
                exponents,
                tree,
            }))
    }

    // `chi` is χ(a), supplied by the caller: for a deletion it follows from
    // χ(A') = χ(A) + χ(A'') without building a lattice.
    fn inductive_node(
        &mut self,
        a: &Arrangement,
        chi: CharPoly,
    ) -> Result<Option<Arc<InductionNode>>, Interrupted> {
        if let Some(m) = self.inductive.get(a) {
            return Ok(m.clone());
        }
        self.tick()?;
        if a.is_empty() {
            let leaf = Arc::new(InductionNode::Empty);
            self.inductive.insert(a.clone(), Some(leaf.clone()));
            return Ok(Some(leaf));
        }
        let Some(exps) = exponents_of(&chi) else {
            self.inductive.insert(a.clone(), None);
            return Ok(None);
        };
        // In dimension at most two every hyperplane works.
        let candidates = if a.dim() <= 2 { 1 } else { a.len() };
        let mut found = None;
        for h in 0..candidates {
            let restricted = a.restrict_to_hyperplane(h).expect("index in range");
            // If A' and A'' are free with exp A'' ⊆ exp A', then A is free with
            // exp A = exp A'' ∪ {b} where b = |A| - |A''|.
            let b = (a.len() - restricted.len()) as u64;
            let Some(exp_res) = exps.without(b) else {
                continue;
            };
            let chi_res = self.char_poly(&restricted);
            if chi_res != exp_res.to_poly() {
                continue;
            }
            let exp_del = exp_res.with(b - 1);
            let chi_del = chi.add(&chi_res);
            let Some(res_node) = self.inductive_node(&restricted, chi_res)? else {
                continue;
            };
            let deleted = a.delete(h).expect("index in range");
            let Some(del_node) = self.inductive_node(&deleted, chi_del)? else {
                continue;
            };
            found = Some(Arc::new(InductionNode::Addition {
                hyperplane: h,
                exp_deletion: exp_del,
                exp_restriction: exp_res,
                deletion: del_node,
                restriction: res_node,
            }));
            break;
        }
        self.inductive.insert(a.clone(), found.clone());
        Ok(found)
    }

    pub fn hereditarily_divisional(
        &mut self,
        a: &Arrangement,
    ) -> Result<HereditaryOutcome, Interrupted> {
        self.hereditary(a, |s, r| Ok(s.divisional_chain(r)?.is_some()))
    }

    pub fn hereditarily_inductive(
        &mut self,
        a: &Arrangement,
    ) -> Result<HereditaryOutcome, Interrupted> {
        self.hereditary(a, |s, r| Ok(s.inductive(r)?.is_some()))
    }

    fn hereditary(
        &mut self,
        a: &Arrangement,
        mut check: impl FnMut(&mut Solver, &Arrangement) -> Result<bool, Interrupted>,
    ) -> Result<HereditaryOutcome, Interrupted> {
        let lattice = build_lattice(a);
        let mut failing = Vec::new();
        for flat in lattice.flats() {
            let restricted = a.restrict_unchecked(flat);
            if !check(self, &restricted)? {
                failing.push(flat.clone());
            }
        }
        Ok(HereditaryOutcome {
            holds: failing.is_empty(),
            failing,
        })
    }
}

fn unbounded<T>(r: Result<T, Interrupted>) -> T {
    r.unwrap_or_else(|_| unreachable!("solver without deadline cannot be interrupted"))
}

/// The division certificate of `a`, or `None` if `a` is not divisionally
/// free.
pub fn divisional_freeness(a: &Arrangement) -> Option<DivisionCertificate> {
    unbounded(Solver::new().divisional(a))
}

pub fn is_divisionally_free(a: &Arrangement) -> bool {
    divisional_freeness(a).is_some()
}

/// The induction certificate of `a`, or `None` if `a` is not inductively
/// free.
pub fn inductive_freeness(a: &Arrangement) -> Option<InductionCertificate> {
    unbounded(Solver::new().inductive(a))
}

pub fn is_inductively_free(a: &Arrangement) -> bool {
    inductive_freeness(a).is_some()
}

pub fn is_hereditarily_divisionally_free(a: &Arrangement) -> HereditaryOutcome {
    unbounded(Solver::new().hereditarily_divisional(a))
}

pub fn is_hereditarily_inductively_free(a: &Arrangement) -> HereditaryOutcome {
    unbounded(Solver::new().hereditarily_inductive(a))
}

/// χ-roots of a triple (A, A', A'') and whether they follow the
/// addition-deletion pattern {b_1..b_ℓ} / {b_1..b_ℓ - 1} / {b_1..b_{ℓ-1}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleReport {
    pub hyperplane: usize,
    pub exp_arrangement: Option<ExponentMultiset>,
    pub exp_deletion: Option<ExponentMultiset>,
    pub exp_restriction: Option<ExponentMultiset>,
    pub pattern_holds: bool,
}

pub fn verify_addition_triple(a: &Arrangement, h: usize) -> crate::Result<TripleReport> {
    let (_, deletion, restriction) = a.triple(h)?;
    let ea = exponents_if_chi_splits(a);
    let ed = exponents_if_chi_splits(&deletion);
    let er = exponents_if_chi_splits(&restriction);
    let pattern_holds = match (&ea, &ed, &er) {
        (Some(ea), Some(ed), Some(er)) => ea.values().iter().filter(|&&b| b > 0).any(|&b| {
            let base = ea.without(b).expect("b is an element");
            base == *er && base.with(b - 1) == *ed
        }),
        _ => false,
    };
    Ok(TripleReport {
        hyperplane: h,
        exp_arrangement: ea,
        exp_deletion: ed,
        exp_restriction: er,
        pattern_holds,
    })
}
