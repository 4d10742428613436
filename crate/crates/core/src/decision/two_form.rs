//! Complete decision for `p = phi_1 + phi_2`.
//!
//! Common factors of `g_1` and `g_2` are divided out in even powers, which
//! keeps the cofactor nonnegative. The reduced pair has roots where `g_2` is
//! nonzero or vanishes simply; the first kind is settled by jointness and the
//! second always admits a descent curve.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::curve::{Certificate, CertificateKind, Curve};
use crate::geometry::{hull, NormalVector};
use crate::poly::{int, BivariatePoly, Exponent, Rational, UniPoly};
use crate::quasiform::{characteristic, decompose, form_from_char, form_nonnegative, main_form_nonnn_case, negativity_witness, SingleFormOutcome};
use crate::realroots::{count_real_roots, isolate_roots, isolate_squarefree, multiplicity_in, squarefree, AlgebraicNumber};
use crate::substitution::leading_pair_candidates;

use super::joint::{condition_c1_axes, joint_4_6, joint_certificate};
use super::{axis_gate, cert_data, check_input, corner_gate, DecisionError, Tracer, Verdict};

/// One real root of `g_1` with multiplicities `k` in `g_1`, `l` in `g_2`, and the
/// power `m` of its factor divided out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCase {
    pub u0: f64,
    pub k: u32,
    pub l: u32,
    /// 1: `l = 0`; 2: `l` even and below `k`; 3: `k <= l`; 4: `l` odd and below `k`.
    pub case: u8,
    pub m: u32,
}

/// `p = F * reduced` with `F = x^(deg D * A2) D(x^-A2 y^A1) >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormReduction {
    pub normal: NormalVector,
    /// `D(u)`, a product of even powers.
    pub divisor: UniPoly,
    pub cofactor: BivariatePoly,
    pub reduced: BivariatePoly,
    pub cases: Vec<RootCase>,
}

fn classify(k: u32, l: u32) -> (u8, u32) {
    if l == 0 {
        (1, 0)
    } else if k <= l {
        (3, k)
    } else if l.is_multiple_of(2) {
        (2, l)
    } else {
        (4, l - 1)
    }
}

/// Divides the shared root factors out of a two-form polynomial with nonnegative `phi_1`.
pub fn reduce_two_form(p: &BivariatePoly, a: NormalVector) -> Result<TwoFormReduction, DecisionError> {
    let dec = decompose(p, a);
    if dec.forms.len() != 2 {
        return Err(DecisionError::NotTwoForms(dec.forms.len()));
    }
    if !form_nonnegative(&dec.forms[0]) {
        return Err(DecisionError::Precondition("the main form must be nonnegative".into()));
    }
    let ch1 = characteristic(&dec.forms[0])?;
    let ch2 = characteristic(&dec.forms[1])?;
    let sf2 = squarefree(&ch2.g);
    let mut divisor = UniPoly::one();
    let mut cases = Vec::new();
    for (f, k) in squarefree(&ch1.g) {
        if count_real_roots(&f) == 0 {
            continue;
        }
        let mut rest = f.clone();
        let mut groups = Vec::new();
        for (s, l) in &sf2 {
            let h = rest.gcd(s);
            if h.degree().unwrap_or(0) > 0 {
                rest = rest.exact_div(&h).expect("gcd divides");
                groups.push((h, *l));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            groups.push((rest, 0));
        }
        for (h, l) in groups {
            let (case, m) = classify(k, l);
            for r in isolate_squarefree(&h) {
                cases.push(RootCase { u0: r.to_f64(), k, l, case, m });
            }
            divisor = &divisor * &h.pow(m);
        }
    }
    cases.sort_by(|x, y| x.u0.total_cmp(&y.u0));
    let d = divisor.degree().expect("nonzero") as u32;
    let g1 = ch1.g.exact_div(&divisor).expect("divisor divides g1");
    let g2 = ch2.g.exact_div(&divisor).expect("divisor divides g2");
    let shift = d * a.a2();
    let main1: Exponent = (ch1.main.0 - shift, ch1.main.1);
    let main2: Exponent = (ch2.main.0 - shift, ch2.main.1);
    let reduced = form_from_char(a, main1, &g1)?.to_poly() + form_from_char(a, main2, &g2)?.to_poly();
    let cofactor = if d == 0 {
        BivariatePoly::constant(divisor.coeff(0))
    } else {
        form_from_char(a, (shift, 0), &divisor)?.to_poly()
    };
    Ok(TwoFormReduction { normal: a, divisor, cofactor, reduced, cases })
}

/// Moves a certificate for the reduced polynomial to `p`, perturbing the curve
/// off the zero set of the cofactor when needed.
fn lift(p: &BivariatePoly, c: &Certificate) -> Option<Certificate> {
    if let Some(l) = Certificate::build(p, c.kind, c.curve.clone()) {
        return Some(l);
    }
    let theta = c.curve.theta().cloned();
    let bump = |terms: &[(u32, UniPoly)], k: u32, s: i64| -> Vec<(u32, UniPoly)> {
        let mut out = terms.to_vec();
        out.extend(terms.iter().map(|(e, co)| (e + k, co.scale(&int(s)))));
        out
    };
    for k in 1..=64 {
        for s in [1, -1] {
            let (x, y) = (c.curve.x_terms(), c.curve.y_terms());
            let candidates = [
                Curve::new(theta.clone(), x.to_vec(), bump(y, k, s)),
                Curve::new(theta.clone(), bump(x, k, s), y.to_vec()),
            ];
            for curve in candidates {
                if let Some(l) = Certificate::build(p, CertificateKind::CurveDescent, curve) {
                    return Some(l);
                }
            }
        }
    }
    None
}

/// Descent for a root where `g_1` vanishes to even order `k >= 2` and `g_2` simply.
///
/// Along `x = c0 t^A1, y = d0 t^A2 (1 ± t^kappa)` the first form contributes
/// order `B1 + k kappa` and the second `B2 + kappa` with a sign set by the
/// perturbation, so a large enough `kappa` with the right sign descends.
pub fn descent_case4(p: &BivariatePoly, a: NormalVector, u0: &AlgebraicNumber) -> Result<Certificate, DecisionError> {
    let set = leading_pair_candidates(a, u0).map_err(|e| DecisionError::Internal(e.to_string()))?;
    let levels = decompose(p, a).levels();
    let gap = levels.last().copied().unwrap_or(0).saturating_sub(levels[0]) as u32;
    for kappa in 1..=gap + 2 {
        for (c0, d0) in &set.pairs {
            for s in [1, -1] {
                let y = vec![(a.a2(), d0.clone()), (a.a2() + kappa, d0.scale(&int(s)))];
                let curve = Curve::new(set.theta.clone(), vec![(a.a1(), c0.clone())], y);
                if let Some(c) = Certificate::build(p, CertificateKind::CurveDescent, curve) {
                    return Ok(c);
                }
            }
        }
    }
    Err(DecisionError::Internal(format!("no descent curve at u0 = {}", u0.to_f64())))
}

/// Linear terms in `p` give an axis descent.
fn linear_certificate(p: &BivariatePoly) -> Option<Certificate> {
    let minus_sign = |c: &Rational| if c.numer() > &0.into() { int(-1) } else { int(1) };
    if let Some(c) = p.coeff(1, 0) {
        return Certificate::build(p, CertificateKind::AxisDescent, Curve::rational(vec![(1, minus_sign(c))], vec![]));
    }
    let c = p.coeff(0, 1)?;
    Certificate::build(p, CertificateKind::AxisDescent, Curve::rational(vec![], vec![(1, minus_sign(c))]))
}

/// Decides the reduced polynomial, giving a certificate on it when the origin is not a minimum.
fn decide_reduced(q: &BivariatePoly, a: NormalVector, tr: &mut Tracer) -> Result<Option<Certificate>, DecisionError> {
    if let Some(c) = q.coeff(0, 0) {
        tr.push("reduced-constant", "the reduced polynomial is positive at the origin", Some(a), json!({ "constant": c.to_string() }));
        return Ok(None);
    }
    if !q.is_stationary_origin() {
        let c = linear_certificate(q).ok_or_else(|| DecisionError::Internal("linear term without descent".into()))?;
        tr.push("reduced-linear", "a linear term changes sign along its axis", Some(a), json!({ "certificate": cert_data(&c) }));
        return Ok(Some(c));
    }
    if hull(&q.support()).map_err(|_| DecisionError::ZeroPolynomial)?.dimension < 2 {
        return Ok(match main_form_nonnn_case(q)? {
            SingleFormOutcome::LocalMin { reason } => {
                tr.push("reduced-single-form", "nonnegative dominant part", Some(a), json!({ "reason": reason }));
                None
            }
            SingleFormOutcome::NotLocalMin { certificate, reason } => {
                tr.push("reduced-single-form", "negative dominant part", Some(a), json!({ "reason": reason }));
                Some(certificate)
            }
        });
    }
    if let Some(c) = corner_gate(q, tr)? {
        return Ok(Some(c));
    }
    let dec = decompose(q, a);
    let ch1 = characteristic(&dec.forms[0])?;
    let ch2 = characteristic(&dec.forms[1])?;
    let roots = isolate_roots(&ch1.g);
    for r in &roots {
        if multiplicity_in(&ch2.g, &r.root) > 0 {
            let c = descent_case4(q, a, &r.root)?;
            tr.push(
                "odd-contact-descent",
                "g_2 vanishes simply where g_1 vanishes to even order, so a perturbed curve descends",
                Some(a),
                json!({ "u0": r.root.to_f64(), "k": r.multiplicity, "certificate": cert_data(&c) }),
            );
            return Ok(Some(c));
        }
    }
    if let Some((c, axis)) = condition_c1_axes(q, &dec) {
        tr.push(
            "axis-condition",
            "the main form vanishes on an axis where the next form is negative",
            Some(a),
            json!({ "axis": axis, "certificate": cert_data(&c) }),
        );
        return Ok(Some(c));
    }
    for r in &roots {
        if joint_4_6(a, &ch2, &r.root)? {
            let c = joint_certificate(q, a, &ch2, &r.root)
                .ok_or_else(|| DecisionError::Internal("joint system without a descent point".into()))?;
            tr.push(
                "jointness",
                "a point with phi_1 = 0 and phi_2 < 0 gives a scaled descent curve",
                Some(a),
                json!({ "level": 2, "u0": r.root.to_f64(), "certificate": cert_data(&c) }),
            );
            return Ok(Some(c));
        }
    }
    tr.push(
        "not-joint",
        "phi_2 is positive off the axes wherever phi_1 vanishes",
        Some(a),
        json!({ "roots": roots.iter().map(|r| r.root.to_f64()).collect::<Vec<_>>() }),
    );
    Ok(None)
}

/// Decides `p` when it has exactly two forms for `a`.
///
/// Never answers `Unresolved`.
pub fn two_form_decide(p: &BivariatePoly, a: NormalVector) -> Result<Verdict, DecisionError> {
    check_input(p)?;
    let dec = decompose(p, a);
    if dec.forms.len() != 2 {
        return Err(DecisionError::NotTwoForms(dec.forms.len()));
    }
    let mut tr = Tracer::default();
    if hull(&p.support()).map_err(|_| DecisionError::ZeroPolynomial)?.dimension < 2 {
        return Ok(match main_form_nonnn_case(p)? {
            SingleFormOutcome::LocalMin { reason } => {
                tr.push("single-form-verdict", "nonnegative dominant part", Some(a), json!({ "reason": reason }));
                Verdict::local_min(tr.take())
            }
            SingleFormOutcome::NotLocalMin { certificate, reason } => {
                tr.push("main-term", "negative dominant part", Some(a), json!({ "reason": reason }));
                Verdict::not_local_min(certificate, tr.take())
            }
        });
    }
    if let Some(c) = corner_gate(p, &mut tr)? {
        return Ok(Verdict::not_local_min(c, tr.take()));
    }
    if !form_nonnegative(&dec.forms[0]) {
        let w = negativity_witness(&dec.forms[0])?;
        let c = Certificate::build(p, CertificateKind::ScaledPointDescent, w.curve)
            .ok_or_else(|| DecisionError::Internal("negative form value without descent".into()))?;
        tr.push("form-nonnegative", "a main form taking a negative value gives a descent curve", Some(a), json!({ "nonnegative": false, "certificate": cert_data(&c) }));
        return Ok(Verdict::not_local_min(c, tr.take()));
    }
    let red = reduce_two_form(p, a)?;
    tr.push(
        "two-form-reduction",
        "common root factors are divided out in even powers, leaving a nonnegative cofactor",
        Some(a),
        json!({ "divisor": red.divisor.to_string(), "reduced": red.reduced.to_string(), "cases": red.cases }),
    );
    match decide_reduced(&red.reduced, a, &mut tr)? {
        Some(c) => {
            let lifted = lift(p, &c).ok_or_else(|| DecisionError::Internal("certificate does not lift".into()))?;
            tr.push("lift", "the cofactor is positive along the curve", Some(a), json!({ "certificate": cert_data(&lifted) }));
            Ok(Verdict::not_local_min(lifted, tr.take()))
        }
        None => match axis_gate(p, &mut tr) {
            Some(c) => Ok(Verdict::not_local_min(c, tr.take())),
            None => Ok(Verdict::local_min(tr.take())),
        },
    }
}
