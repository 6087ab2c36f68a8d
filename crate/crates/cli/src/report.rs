//! Report payloads. Field order in these structs is the JSON field order.

use std::fmt::Write;

use arrangement_core::freeness::{Certificate, ExponentMultiset};
use arrangement_core::{Arrangement, CharPoly, Flat};
use serde::Serialize;

#[derive(Serialize)]
pub struct Report<P> {
    pub command: Vec<String>,
    pub arrangement: Summary,
    pub result: P,
    pub elapsed_ms: u64,
}

#[derive(Serialize, Clone, Copy)]
pub struct Summary {
    pub order: u32,
    pub dim: usize,
    pub hyperplanes: usize,
}

impl Summary {
    pub fn of(a: &Arrangement) -> Self {
        Summary {
            order: a.order(),
            dim: a.dim(),
            hyperplanes: a.len(),
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "order {}, dim {}, {} hyperplanes",
            self.order, self.dim, self.hyperplanes
        )
    }
}

#[derive(Serialize)]
pub struct ChiReport {
    pub coefficients: CharPoly,
    pub display: String,
    pub factored: Option<String>,
}

impl ChiReport {
    pub fn new(chi: &CharPoly) -> Self {
        ChiReport {
            coefficients: chi.clone(),
            display: chi.to_string(),
            factored: chi.factored_display(),
        }
    }
}

#[derive(Serialize)]
pub struct FlatReport {
    pub hyperplanes: Vec<usize>,
    pub dim: usize,
}

impl FlatReport {
    pub fn new(f: &Flat) -> Self {
        FlatReport {
            hyperplanes: f.indices(),
            dim: f.dim(),
        }
    }
}

#[derive(Serialize)]
pub struct CharPolyResult {
    pub chi: ChiReport,
    pub roots: Option<ExponentMultiset>,
    pub flat_counts: Vec<usize>,
}

#[derive(Serialize)]
pub struct CheckResult {
    pub mode: &'static str,
    pub verdict: bool,
    pub expected: Option<bool>,
    pub expectation_met: bool,
    pub chi: ChiReport,
    pub exponents: Option<ExponentMultiset>,
    pub certificate: Option<Certificate>,
    pub failing_flats: Option<Vec<FlatReport>>,
}

#[derive(Serialize)]
pub struct ConstructResult {
    pub operation: &'static str,
    pub selector: Option<String>,
    pub flat: Option<FlatReport>,
    pub output: Summary,
    pub written_to: Option<String>,
}

#[derive(Serialize)]
pub struct VerifyResult {
    pub kind: &'static str,
    pub valid: bool,
    pub failed_step: Option<usize>,
    pub message: Option<String>,
}

pub trait Text {
    fn text(&self, out: &mut String);
}

impl<P: Text> Report<P> {
    pub fn to_text(&self) -> String {
        let mut out = format!("arrangement: {}\n", self.arrangement);
        self.result.text(&mut out);
        let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

fn chi_line(out: &mut String, chi: &ChiReport) {
    let _ = writeln!(out, "chi: {}", chi.display);
    if let Some(f) = &chi.factored {
        let _ = writeln!(out, "factored: {f}");
    }
}

impl Text for CharPolyResult {
    fn text(&self, out: &mut String) {
        chi_line(out, &self.chi);
        match &self.roots {
            Some(r) => {
                let _ = writeln!(out, "roots: {r}");
            }
            None => out.push_str("roots: chi does not split over the nonnegative integers\n"),
        }
        let counts: Vec<String> = self.flat_counts.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "flats per codimension: {}", counts.join(" "));
    }
}

impl Text for CheckResult {
    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "{}: {}", self.mode, self.verdict);
        if let Some(e) = self.expected {
            let status = if self.expectation_met {
                "met"
            } else {
                "NOT met"
            };
            let _ = writeln!(out, "expected {e}: {status}");
        }
        chi_line(out, &self.chi);
        if let Some(e) = &self.exponents {
            let _ = writeln!(out, "exponents: {e}");
        }
        match &self.certificate {
            Some(Certificate::Division(c)) => {
                let _ = writeln!(
                    out,
                    "certificate: division chain of {} step(s), hyperplanes {:?}",
                    c.steps.len(),
                    c.steps.iter().map(|s| s.hyperplane).collect::<Vec<_>>()
                );
            }
            Some(Certificate::Induction(c)) => {
                let _ = writeln!(
                    out,
                    "certificate: induction tree with {} nodes",
                    c.tree.size()
                );
            }
            None => {}
        }
        if let Some(flats) = &self.failing_flats {
            let _ = writeln!(out, "failing flats: {}", flats.len());
            for f in flats {
                let _ = writeln!(out, "  dim {} cut out by {:?}", f.dim, f.hyperplanes);
            }
        }
    }
}

impl Text for ConstructResult {
    fn text(&self, out: &mut String) {
        let _ = write!(out, "{}", self.operation);
        if let Some(s) = &self.selector {
            let _ = write!(out, " at {s}");
        }
        out.push('\n');
        if let Some(f) = &self.flat {
            let _ = writeln!(out, "flat: dim {} cut out by {:?}", f.dim, f.hyperplanes);
        }
        let _ = writeln!(out, "result: {}", self.output);
        if let Some(p) = &self.written_to {
            let _ = writeln!(out, "written to {p}");
        }
    }
}

impl Text for VerifyResult {
    fn text(&self, out: &mut String) {
        if self.valid {
            let _ = writeln!(out, "{} certificate verifies", self.kind);
        } else {
            let _ = writeln!(
                out,
                "{} certificate rejected at step {}: {}",
                self.kind,
                self.failed_step.unwrap_or(0),
                self.message.as_deref().unwrap_or("")
            );
        }
    }
}
