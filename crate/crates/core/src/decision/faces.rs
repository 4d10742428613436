//! Face-by-face analysis over the group-3 faces.

use serde_json::json;

use crate::curve::{Certificate, CertificateKind};
use crate::geometry::{group3_faces, hull, NormalVector};
use crate::poly::{BivariatePoly, Sign};
use crate::quasiform::{characteristic, decompose, form_nonnegative, negativity_witness, Decomposition};
use crate::realroots::{isolate_roots, sign_at_root, AlgebraicNumber};

use super::joint::{condition_c1_axes, even_parity, joint_4_6, joint_certificate};
use super::two_form::two_form_decide;
use super::{cert_data, check_input, corner_gate, DecisionError, Status, Tracer, Verdict};

/// Result of the face loop.
#[derive(Clone, Debug)]
pub enum FaceAnalysis {
    NotLocalMin(Certificate),
    /// Every face satisfies the minimum conditions.
    Resolved,
    /// Faces left open: normal, open roots and number of forms.
    Open(Vec<(NormalVector, Vec<AlgebraicNumber>, usize)>),
}

const JOINT_NOTE: &str = "the even-parity sign condition holds, so the system is joint and the origin is not a minimum; \
     the descent curve confirms it";

fn approx(roots: &[AlgebraicNumber]) -> Vec<f64> {
    roots.iter().map(AlgebraicNumber::to_f64).collect()
}

/// Whether `phi_1 + ... + phi_{j-1}` is known to have a minimum: `phi_1 + phi_2`
/// has one and `phi_3 .. phi_{j-1}` are nonnegative.
fn partial_sum_premise(dec: &Decomposition, j: usize, tr: &mut Tracer) -> Result<bool, DecisionError> {
    let a = dec.normal;
    let two = dec.forms[0].to_poly() + dec.forms[1].to_poly();
    let v = two_form_decide(&two, a)?;
    let mut ok = v.status == Status::LocalMin;
    for f in &dec.forms[2..j - 1] {
        ok &= form_nonnegative(f);
    }
    tr.push(
        "partial-sum-premise",
        "a form nonzero at the root decides only if the lower partial sum has a minimum",
        Some(a),
        json!({ "level": j, "two_form": v.status.to_string(), "holds": ok }),
    );
    Ok(ok)
}

/// Analyses one face; `None` means the face is settled.
fn analyse_face(
    p: &BivariatePoly,
    a: NormalVector,
    depth: usize,
    tr: &mut Tracer,
) -> Result<Result<Option<Vec<AlgebraicNumber>>, Certificate>, DecisionError> {
    let dec = decompose(p, a);
    let phi1 = &dec.forms[0];
    let ch1 = characteristic(phi1)?;
    if !form_nonnegative(phi1) {
        let w = negativity_witness(phi1)?;
        let cert = Certificate::build(p, CertificateKind::ScaledPointDescent, w.curve)
            .ok_or_else(|| DecisionError::Internal("negative form value without descent".into()))?;
        tr.push(
            "form-nonnegative",
            "a main form taking a negative value gives a descent curve",
            Some(a),
            json!({ "nonnegative": false, "form": phi1.to_string(), "point": [w.x.to_string(), w.y.to_string()], "value": w.value.to_string(), "certificate": cert_data(&cert) }),
        );
        return Ok(Err(cert));
    }
    tr.push(
        "form-nonnegative",
        "end terms positive with even exponents and g >= 0 on the reals",
        Some(a),
        json!({ "nonnegative": true, "form": phi1.to_string(), "g": ch1.g.to_string() }),
    );
    let roots: Vec<AlgebraicNumber> = isolate_roots(&ch1.g).into_iter().map(|r| r.root).collect();
    if roots.is_empty() {
        tr.push(
            "weakly-nondegenerate",
            "g has no real roots, so the form vanishes only on the axes",
            Some(a),
            json!({ "g": ch1.g.to_string(), "real_roots": 0 }),
        );
        return Ok(Ok(None));
    }
    tr.push(
        "degenerate-face",
        "real roots of g are directions where the main form vanishes",
        Some(a),
        json!({ "g": ch1.g.to_string(), "roots": approx(&roots), "forms": dec.forms.len(), "levels": dec.levels() }),
    );
    if dec.forms.len() < 2 {
        return Ok(Ok(None));
    }
    if let Some((cert, axis)) = condition_c1_axes(p, &dec) {
        tr.push(
            "axis-condition",
            "the main form vanishes on an axis where the next form is negative",
            Some(a),
            json!({ "axis": axis, "certificate": cert_data(&cert) }),
        );
        return Ok(Err(cert));
    }
    let mut open = roots;
    let mut deferred = Vec::new();
    let max_j = depth.min(dec.forms.len());
    for j in 2..=max_j {
        let chj = characteristic(&dec.forms[j - 1])?;
        let mut still = Vec::new();
        for u0 in open {
            if sign_at_root(&chj.g, &u0) == Sign::Zero {
                still.push(u0);
                continue;
            }
            if joint_4_6(a, &chj, &u0)? {
                let cert = joint_certificate(p, a, &chj, &u0)
                    .ok_or_else(|| DecisionError::Internal("joint system without a descent point".into()))?;
                let mut data = json!({ "level": j, "u0": u0.to_f64(), "certificate": cert_data(&cert) });
                if even_parity(a, &chj) {
                    data["note"] = json!(JOINT_NOTE);
                }
                tr.push("jointness", "a point with phi_1 = 0 and phi_j < 0 gives a scaled descent curve", Some(a), data);
                return Ok(Err(cert));
            }
            tr.push(
                "not-joint",
                "phi_j is positive wherever phi_1 vanishes along this root",
                Some(a),
                json!({ "level": j, "u0": u0.to_f64() }),
            );
            if j >= 3 {
                deferred.push(u0);
            }
        }
        open = still;
        if open.is_empty() {
            if !deferred.is_empty() && !partial_sum_premise(&dec, j, tr)? {
                return Ok(Ok(Some(deferred)));
            }
            return Ok(Ok(None));
        }
        if j < max_j {
            tr.push(
                "deeper-level",
                "the next form vanishes at the root, so the following form decides",
                Some(a),
                json!({ "level": j, "open": approx(&open) }),
            );
        }
    }
    open.extend(deferred);
    Ok(Ok(Some(open)))
}

pub(crate) fn run(p: &BivariatePoly, depth: usize, tr: &mut Tracer) -> Result<FaceAnalysis, DecisionError> {
    let mut faces: Vec<NormalVector> = group3_faces(p).into_iter().filter_map(|f| f.normal).collect();
    faces.sort_by(|a, b| a.cmp_ratio(b));
    let mut open = Vec::new();
    for a in faces {
        match analyse_face(p, a, depth, tr)? {
            Err(cert) => return Ok(FaceAnalysis::NotLocalMin(cert)),
            Ok(None) => {}
            Ok(Some(roots)) => {
                let forms = decompose(p, a).forms.len();
                tr.push(
                    "open-face",
                    "the examined forms do not decide this face",
                    Some(a),
                    json!({ "roots": approx(&roots), "forms": forms }),
                );
                open.push((a, roots, forms));
            }
        }
    }
    Ok(if open.is_empty() { FaceAnalysis::Resolved } else { FaceAnalysis::Open(open) })
}

/// The face loop alone: `LocalMin` when every face is settled, `Unresolved`
/// with the open faces otherwise. `depth` bounds the forms examined per face.
pub fn algorithm1(p: &BivariatePoly, depth: usize) -> Result<Verdict, DecisionError> {
    check_input(p)?;
    let mut tr = Tracer::default();
    let h = hull(&p.support()).map_err(|_| DecisionError::ZeroPolynomial)?;
    if h.dimension < 2 {
        return Err(DecisionError::Precondition("Newton polygon has dimension below two".into()));
    }
    if let Some(cert) = corner_gate(p, &mut tr)? {
        return Ok(Verdict::not_local_min(cert, tr.take()));
    }
    Ok(match run(p, depth, &mut tr)? {
        FaceAnalysis::NotLocalMin(cert) => Verdict::not_local_min(cert, tr.take()),
        FaceAnalysis::Resolved => Verdict::local_min(tr.take()),
        FaceAnalysis::Open(faces) => Verdict {
            status: Status::Unresolved,
            certificate: None,
            trace: tr.take(),
            unresolved: faces.into_iter().map(|(a, _, _)| a).collect(),
            search: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn example5_resolution_levels() {
        let a = NormalVector::new(1, 2).unwrap();
        let v = algorithm1(&parse("y^2*(x^2+y)^2 + 3*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3").unwrap(), 4).unwrap();
        assert_eq!(v.status, Status::NotLocalMin);
        let j = v.trace.iter().find(|s| s.rule == "jointness").unwrap();
        assert_eq!(j.face, Some(a));
        assert_eq!(j.data["level"], 3);
        // Depth two stops before the deciding form.
        let v = algorithm1(&parse("y^2*(x^2+y)^2 + 3*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3").unwrap(), 2).unwrap();
        assert_eq!(v.status, Status::Unresolved);
        assert_eq!(v.unresolved, vec![a]);
    }

    #[test]
    fn example6_premise_fails() {
        let v = algorithm1(&parse("(x-y)^6 - (x-y)^2*x^5 + x^8").unwrap(), 4).unwrap();
        assert_eq!(v.status, Status::Unresolved);
        let step = v.trace.iter().find(|s| s.rule == "partial-sum-premise").unwrap();
        assert_eq!(step.data["holds"], false);
    }

    #[test]
    fn dimension_precondition() {
        assert!(matches!(algorithm1(&parse("x^2*y^2").unwrap(), 4), Err(DecisionError::Precondition(_))));
    }
}
