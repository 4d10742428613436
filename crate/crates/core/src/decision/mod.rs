//! The decision engine: single-form cases, the corner gate, the face-by-face
//! analysis, the complete two-form procedure and the substitution fallback.

mod faces;
mod joint;
mod two_form;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::curve::{Certificate, CertificateKind, Curve};
use crate::geometry::{check_corner_condition, hull, isolating_normal, CornerCheck, NormalVector};
use crate::poly::{Axis, BivariatePoly, Exponent, Rational, Sign};
use crate::quasiform::{characteristic, main_form_nonnn_case, QuasiForm, QuasiFormError, SingleFormOutcome};
use crate::realroots::isolate_roots;
use crate::substitution::{search_descent, Budget, SearchReport};

pub use faces::{algorithm1, FaceAnalysis};
pub use joint::{condition_c1_axes, joint_4_6, joint_certificate, joint_point};
pub use two_form::{descent_case4, reduce_two_form, two_form_decide, RootCase, TwoFormReduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecisionError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("origin is not a stationary point (constant or linear terms present)")]
    NonStationary,
    #[error("expected exactly two quasi-homogeneous forms, found {0}")]
    NotTwoForms(usize),
    #[error("the characteristic polynomial vanishes at the root")]
    VanishingAtRoot,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<QuasiFormError> for DecisionError {
    fn from(e: QuasiFormError) -> Self {
        DecisionError::Internal(e.to_string())
    }
}

/// Outcome of the test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    LocalMin,
    NotLocalMin,
    Unresolved,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::LocalMin => "LocalMin",
            Status::NotLocalMin => "NotLocalMin",
            Status::Unresolved => "Unresolved",
        })
    }
}

/// One applied rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Short rule identifier.
    pub rule: String,
    /// The mathematical fact the rule relies on.
    pub basis: String,
    pub face: Option<NormalVector>,
    pub data: Value,
}

/// Result of [`decide`] and the component procedures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub trace: Vec<TraceStep>,
    /// Faces that need finer study when unresolved.
    pub unresolved: Vec<NormalVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
}

impl Verdict {
    fn local_min(trace: Vec<TraceStep>) -> Self {
        Verdict { status: Status::LocalMin, certificate: None, trace, unresolved: vec![], search: None }
    }

    fn not_local_min(certificate: Certificate, trace: Vec<TraceStep>) -> Self {
        Verdict { status: Status::NotLocalMin, certificate: Some(certificate), trace, unresolved: vec![], search: None }
    }
}

/// Settings for [`decide`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecideConfig {
    /// Number of forms `phi_1 .. phi_depth` examined per face.
    pub depth: usize,
    pub budget: Budget,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig { depth: 4, budget: Budget::default() }
    }
}

/// Collects trace steps.
#[derive(Default)]
pub(crate) struct Tracer {
    steps: Vec<TraceStep>,
}

impl Tracer {
    pub(crate) fn push(&mut self, rule: &str, basis: &str, face: Option<NormalVector>, data: Value) {
        self.steps.push(TraceStep { rule: rule.to_string(), basis: basis.to_string(), face, data });
    }

    pub(crate) fn take(self) -> Vec<TraceStep> {
        self.steps
    }
}

pub(crate) fn cert_data(c: &Certificate) -> Value {
    json!({
        "curve": c.curve.to_string(),
        "sigma": c.sigma,
        "leading": c.leading_approx(),
        "sample_t": c.sample.t.to_string(),
        "value": c.sample.value.to_string(),
    })
}

pub(crate) fn check_input(p: &BivariatePoly) -> Result<(), DecisionError> {
    if p.is_zero() {
        return Err(DecisionError::ZeroPolynomial);
    }
    if !p.is_stationary_origin() {
        return Err(DecisionError::NonStationary);
    }
    Ok(())
}

/// Certificate for a corner term that is negative or has an odd exponent.
///
/// Corners on an axis get an axis curve; others the scaled curve along a
/// normal isolating the corner.
pub(crate) fn corner_certificate(p: &BivariatePoly, corner: Exponent, witness: (i8, i8)) -> Option<Certificate> {
    let (s1, s2) = (Rational::from_integer(witness.0.into()), Rational::from_integer(witness.1.into()));
    let curve = if corner.0 == 0 {
        Curve::rational(vec![], vec![(1, s2)])
    } else if corner.1 == 0 {
        Curve::rational(vec![(1, s1)], vec![])
    } else {
        let a = isolating_normal(p, corner)?;
        Curve::rational(vec![(a.a1(), s1)], vec![(a.a2(), s2)])
    };
    let kind = if corner.0 == 0 || corner.1 == 0 { CertificateKind::AxisDescent } else { CertificateKind::ScaledPointDescent };
    Certificate::build(p, kind, curve)
}

/// Runs the corner gate; returns a certificate when it fails.
pub(crate) fn corner_gate(p: &BivariatePoly, tr: &mut Tracer) -> Result<Option<Certificate>, DecisionError> {
    match check_corner_condition(p) {
        CornerCheck::Holds => {
            tr.push(
                "corner-condition",
                "Pareto-optimal corner terms are positive with even exponents",
                None,
                json!({ "holds": true }),
            );
            Ok(None)
        }
        CornerCheck::Violated { corner, coef, witness } => {
            let cert = corner_certificate(p, corner, witness)
                .ok_or_else(|| DecisionError::Internal(format!("no certificate for corner {corner:?}")))?;
            let on_axis = corner.0 == 0 || corner.1 == 0;
            let (rule, basis) = if on_axis {
                ("axis-condition", "lowest axis term of p is negative somewhere on that axis")
            } else {
                ("corner-condition", "a Pareto-optimal corner term dominates along its isolating normal")
            };
            tr.push(
                rule,
                basis,
                None,
                json!({ "holds": false, "corner": corner, "coef": coef.to_string(), "witness": witness, "certificate": cert_data(&cert) }),
            );
            Ok(Some(cert))
        }
    }
}

/// Lowest-order terms of `p(x, 0)` and `p(0, y)` must be positive with even degree.
pub(crate) fn axis_gate(p: &BivariatePoly, tr: &mut Tracer) -> Option<Certificate> {
    for axis in [Axis::X, Axis::Y] {
        let r = p.axis_restriction(axis);
        let Some(o) = r.order() else { continue };
        let c = r.coeff(o);
        let sign = if Sign::of(&c) == Sign::Negative { 1 } else if o % 2 == 1 { -1 } else { 0 };
        if sign == 0 {
            continue;
        }
        let v = vec![(1, Rational::from_integer(sign.into()))];
        let curve = match axis {
            Axis::X => Curve::rational(v, vec![]),
            Axis::Y => Curve::rational(vec![], v),
        };
        let cert = Certificate::build(p, CertificateKind::AxisDescent, curve)?;
        tr.push(
            "axis-gate",
            "lowest axis term of p is negative somewhere on that axis",
            None,
            json!({ "axis": format!("{axis:?}"), "certificate": cert_data(&cert) }),
        );
        return Some(cert);
    }
    tr.push("axis-gate", "lowest axis terms are positive with even degree", None, json!({ "holds": true }));
    None
}

/// Support on a point or a line.
fn single_form_branch(p: &BivariatePoly, tr: &mut Tracer) -> Result<Verdict, DecisionError> {
    let h = hull(&p.support()).map_err(|_| DecisionError::ZeroPolynomial)?;
    // Record the characteristic polynomial when p is a form for a positive normal.
    if h.dimension == 1 {
        let (s, t) = (h.vertices[0], h.vertices[h.vertices.len() - 1]);
        let (da, db) = (t.0 as i64 - s.0 as i64, t.1 as i64 - s.1 as i64);
        if da != 0 && db != 0 && (da > 0) != (db > 0) {
            let a = NormalVector::reduced(db.unsigned_abs() as u32, da.unsigned_abs() as u32).expect("positive");
            let form = QuasiForm::from_poly(p, a)?;
            let ch = characteristic(&form)?;
            let roots = isolate_roots(&ch.g);
            tr.push(
                "single-form",
                "p is one quasi-homogeneous form; the origin is a minimum iff the form is nonnegative",
                Some(a),
                json!({ "form": form.to_string(), "g": ch.g.to_string() }),
            );
            tr.push(
                "form-nonnegative",
                "a form is nonnegative iff its end terms are positive with even exponents and g >= 0 on the reals",
                Some(a),
                json!({ "nonnegative": crate::quasiform::form_nonnegative(&form) }),
            );
            if roots.is_empty() {
                tr.push(
                    "weakly-nondegenerate",
                    "g has no real roots, so the form vanishes only on the axes",
                    Some(a),
                    json!({ "g": ch.g.to_string(), "real_roots": 0 }),
                );
            }
        }
    }
    match main_form_nonnn_case(p)? {
        SingleFormOutcome::LocalMin { reason } => {
            tr.push("single-form-verdict", "nonnegative dominant part", None, json!({ "reason": reason }));
            Ok(Verdict::local_min(std::mem::take(&mut tr.steps)))
        }
        SingleFormOutcome::NotLocalMin { certificate, reason } => {
            tr.push(
                "main-term",
                "the Pareto-minimal main term takes negative values near the origin",
                None,
                json!({ "reason": reason, "certificate": cert_data(&certificate) }),
            );
            Ok(Verdict::not_local_min(certificate, std::mem::take(&mut tr.steps)))
        }
    }
}

/// Decides whether the origin is a local minimum of `p`.
pub fn decide(p: &BivariatePoly, cfg: &DecideConfig) -> Result<Verdict, DecisionError> {
    check_input(p)?;
    let mut tr = Tracer::default();
    tr.push("stationarity", "no constant or linear terms", None, json!({ "terms": p.len() }));
    let h = hull(&p.support()).map_err(|_| DecisionError::ZeroPolynomial)?;
    if h.dimension < 2 {
        return single_form_branch(p, &mut tr);
    }
    if let Some(cert) = corner_gate(p, &mut tr)? {
        return Ok(Verdict::not_local_min(cert, tr.take()));
    }
    let analysis = faces::run(p, cfg.depth, &mut tr)?;
    let open = match analysis {
        FaceAnalysis::NotLocalMin(cert) => return Ok(Verdict::not_local_min(cert, tr.take())),
        FaceAnalysis::Resolved => vec![],
        FaceAnalysis::Open(faces) => faces,
    };
    let mut search_faces = Vec::new();
    for (a, roots, forms) in open {
        if forms == 2 {
            // p is exactly phi_1 + phi_2 for this normal, so the two-form verdict is final.
            let v = two_form_decide(p, a)?;
            tr.steps.extend(v.trace);
            return match (v.status, v.certificate) {
                (Status::NotLocalMin, Some(c)) => Ok(Verdict::not_local_min(c, tr.take())),
                // The two-form procedure already ran the axis gate.
                (Status::LocalMin, _) => Ok(Verdict::local_min(tr.take())),
                _ => Err(DecisionError::Internal("two-form procedure left the face open".into())),
            };
        }
        search_faces.push((a, roots));
    }
    if search_faces.is_empty() {
        return finish_local_min(p, tr);
    }
    let (cert, report) = search_descent(p, &search_faces, &cfg.budget);
    let unresolved: Vec<NormalVector> = search_faces.iter().map(|(a, _)| *a).collect();
    match cert {
        Some(c) => {
            tr.push(
                "substitution",
                "a curve with negative lowest-order term proves the origin is not a minimum",
                report.attempts.iter().find(|t| t.found).map(|t| t.normal),
                json!({ "attempts": report.attempts.len(), "certificate": cert_data(&c) }),
            );
            let mut v = Verdict::not_local_min(c, tr.take());
            v.search = Some(report);
            Ok(v)
        }
        None => {
            tr.push(
                "substitution",
                "bounded search is incomplete; exhaustion leaves the question open",
                None,
                json!({ "attempts": report.attempts.len(), "budget_exhausted": report.budget_exhausted }),
            );
            Ok(Verdict {
                status: Status::Unresolved,
                certificate: None,
                trace: tr.take(),
                unresolved,
                search: Some(report),
            })
        }
    }
}

fn finish_local_min(p: &BivariatePoly, mut tr: Tracer) -> Result<Verdict, DecisionError> {
    if let Some(c) = axis_gate(p, &mut tr) {
        return Ok(Verdict::not_local_min(c, tr.take()));
    }
    Ok(Verdict::local_min(tr.take()))
}
