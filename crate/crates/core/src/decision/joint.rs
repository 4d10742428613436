//! Jointness of `phi_1 = 0, phi_j < 0` and the axis conditions.

use crate::curve::{Certificate, CertificateKind, Curve};
use crate::geometry::NormalVector;
use crate::poly::{int, BivariatePoly, Sign, UniPoly};
use crate::quasiform::{CharPoly, Decomposition};
use crate::realroots::{sign_at_root, AlgebraicNumber};

use super::DecisionError;

/// Whether `phi_1 = 0` and `phi_j < 0` have a common solution with `u = u0`.
///
/// `chj` is the characteristic polynomial of `phi_j`; requires `g_j(u0) != 0`.
/// Odd `e1*eta1 - e2*chi1` makes the system joint outright; otherwise a sign
/// condition on `u0` and `g_j(u0)` decides, using whichever of `e1`, `e2` is odd.
pub fn joint_4_6(a: NormalVector, chj: &CharPoly, u0: &AlgebraicNumber) -> Result<bool, DecisionError> {
    let gs = sign_at_root(&chj.g, u0);
    if gs == Sign::Zero {
        return Err(DecisionError::VanishingAtRoot);
    }
    let (e1, e2) = a.e();
    let (chi1, eta1) = (chj.main.0 as i64, chj.main.1 as i64);
    if (e1 * eta1 - e2 * chi1).rem_euclid(2) == 1 {
        return Ok(true);
    }
    let us = u0.sign();
    let exp = if e1.rem_euclid(2) == 1 { chi1 } else { eta1 };
    Ok(us.pow(exp as u64).mul(gs) == Sign::Negative)
}

/// Whether `e1*eta1 - e2*chi1` is even, so jointness rests on the sign condition.
pub(crate) fn even_parity(a: NormalVector, chj: &CharPoly) -> bool {
    let (e1, e2) = a.e();
    (e1 * chj.main.1 as i64 - e2 * chj.main.0 as i64).rem_euclid(2) == 0
}

fn root_poly(r: AlgebraicNumber) -> (Option<AlgebraicNumber>, UniPoly) {
    match r.as_rational() {
        Some(q) => (None, UniPoly::constant(q)),
        None => (Some(r), UniPoly::var()),
    }
}

/// A point `(x0, y0)` with `x0^-A2 y0^A1 = u0` where `phi_j` is negative, as the curve
/// `(x0 t^A1, y0 t^A2)`.
///
/// Positive rescaling reduces every solution to one with `x0 = ±1` (odd `A1`)
/// or `y0 = ±1` (odd `A2`), so trying both signs is exhaustive.
pub fn joint_point(a: NormalVector, chj: &CharPoly, u0: &AlgebraicNumber) -> Option<Curve> {
    let gs = sign_at_root(&chj.g, u0);
    if gs == Sign::Zero || u0.sign() == Sign::Zero {
        return None;
    }
    let (chi, eta) = (chj.main.0 as u64, chj.main.1 as u64);
    for s in [1i64, -1] {
        let unit = Sign::of_int(s);
        let (xs, ys, curve) = if a.a1() % 2 == 1 {
            let v = if unit.pow(a.a2() as u64) == Sign::Positive { u0.clone() } else { u0.neg() };
            let r = v.odd_root(a.a1());
            let ys = r.sign();
            let (theta, y0) = root_poly(r);
            (unit, ys, Curve::scaled_point(theta, UniPoly::constant(int(s)), a.a1(), y0, a.a2()))
        } else {
            let v = if unit.pow(a.a1() as u64) == Sign::Positive { u0.recip() } else { u0.recip().neg() };
            let r = v.odd_root(a.a2());
            let xs = r.sign();
            let (theta, x0) = root_poly(r);
            (xs, unit, Curve::scaled_point(theta, x0, a.a1(), UniPoly::constant(int(s)), a.a2()))
        };
        if xs.pow(chi).mul(ys.pow(eta)).mul(gs) == Sign::Negative {
            return Some(curve);
        }
    }
    None
}

/// Certificate on `p` from a solution of the joint system.
///
/// Sound whenever `g_2 .. g_{j-1}` vanish at `u0`: along the curve the forms
/// below level `j` are zero and `phi_j` is negative.
pub fn joint_certificate(p: &BivariatePoly, a: NormalVector, chj: &CharPoly, u0: &AlgebraicNumber) -> Option<Certificate> {
    Certificate::build(p, CertificateKind::ScaledPointDescent, joint_point(a, chj, u0)?)
}

/// Zeros of `phi_1` on an axis where `phi_2` is negative.
///
/// `phi_1` vanishes on the `y` axis when its trailing `alpha` is positive; then
/// `phi_2(0, y)` is its trailing term and must be positive with even degree.
/// The `x` axis is symmetric. Returns the axis certificate and a label.
pub fn condition_c1_axes(p: &BivariatePoly, dec: &Decomposition) -> Option<(Certificate, &'static str)> {
    let (phi1, phi2) = (dec.forms.first()?, dec.forms.get(1)?);
    let unit = |negative: bool| if negative { int(1) } else { int(-1) };
    let ((alpha_s, _), _) = phi1.trailing_term();
    let ((chi_v, eta_v), b_v) = phi2.trailing_term();
    if alpha_s > 0 && chi_v == 0 && (Sign::of(b_v) == Sign::Negative || eta_v % 2 == 1) {
        let curve = Curve::rational(vec![], vec![(1, unit(Sign::of(b_v) == Sign::Negative))]);
        return Certificate::build(p, CertificateKind::AxisDescent, curve).map(|c| (c, "y-axis"));
    }
    let ((_, beta_1), _) = phi1.main_term();
    let ((chi_1, eta_1), b_1) = phi2.main_term();
    if beta_1 > 0 && eta_1 == 0 && (Sign::of(b_1) == Sign::Negative || chi_1 % 2 == 1) {
        let curve = Curve::rational(vec![(1, unit(Sign::of(b_1) == Sign::Negative))], vec![]);
        return Certificate::build(p, CertificateKind::AxisDescent, curve).map(|c| (c, "x-axis"));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::verify_certificate;
    use crate::poly::{parse, rat};
    use crate::quasiform::{characteristic, decompose};
    use crate::realroots::isolate_roots;

    fn fig1(a: &str) -> BivariatePoly {
        parse(&format!("y^2*(x^2+y)^2 + 3*{a}*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3")).unwrap()
    }

    #[test]
    fn example5_level_two() {
        let a = NormalVector::new(1, 2).unwrap();
        for (s, joint) in [("0.99", true), ("1.01", false)] {
            let p = fig1(s);
            let dec = decompose(&p, a);
            let ch1 = characteristic(&dec.forms[0]).unwrap();
            let ch2 = characteristic(&dec.forms[1]).unwrap();
            let u0 = isolate_roots(&ch1.g)[0].root.clone();
            assert_eq!(u0.as_rational(), Some(rat(-1, 1)));
            assert!(even_parity(a, &ch2));
            assert_eq!(joint_4_6(a, &ch2, &u0).unwrap(), joint);
            assert_eq!(joint_point(a, &ch2, &u0).is_some(), joint);
            if joint {
                let c = joint_certificate(&p, a, &ch2, &u0).unwrap();
                assert!(verify_certificate(&p, &c));
                assert_eq!(c.sigma, 10);
            }
        }
        let p = fig1("1");
        let dec = decompose(&p, a);
        let ch2 = characteristic(&dec.forms[1]).unwrap();
        assert_eq!(joint_4_6(a, &ch2, &AlgebraicNumber::from_rational(rat(-1, 1))), Err(DecisionError::VanishingAtRoot));
    }

    #[test]
    fn formula_matches_enumeration() {
        // Every small normal, main exponent, root sign and g_j sign.
        for a1 in 1..5u32 {
            for a2 in 1..5u32 {
                let Some(a) = NormalVector::new(a1, a2) else { continue };
                for chi in 0..4u32 {
                    for eta in 0..4u32 {
                        for (u, g) in [(2, 1), (2, -1), (-3, 1), (-3, -1)] {
                            let ch = CharPoly {
                                g: UniPoly::constant(int(g)),
                                normal: a,
                                main: (chi, eta),
                                trailing: (chi, eta),
                            };
                            let u0 = AlgebraicNumber::from_rational(int(u));
                            assert_eq!(
                                joint_4_6(a, &ch, &u0).unwrap(),
                                joint_point(a, &ch, &u0).is_some(),
                                "A={a} chi={chi} eta={eta} u={u} g={g}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irrational_root_point() {
        // u0 = 2^(1/3) style root through an odd A1 = 3.
        let a = NormalVector::new(3, 1).unwrap();
        let ch = CharPoly { g: UniPoly::constant(int(-1)), normal: a, main: (2, 2), trailing: (2, 2) };
        let u0 = isolate_roots(&UniPoly::from_i64s(&[-2, 0, 1]))[1].root.clone();
        let curve = joint_point(a, &ch, &u0).unwrap();
        assert!(curve.theta().is_some());
    }

    #[test]
    fn example4_axis_conditions() {
        let a = NormalVector::new(1, 1).unwrap();
        let p = parse("x^2*(x-y)^2 + 2*y^5").unwrap();
        let (c, label) = condition_c1_axes(&p, &decompose(&p, a)).unwrap();
        assert_eq!(label, "y-axis");
        assert_eq!((c.curve.x_display(), c.curve.y_display()), ("0".into(), "-t".into()));
        let p = parse("y^2*(x-y)^2 + 2*x^5").unwrap();
        let (c, label) = condition_c1_axes(&p, &decompose(&p, a)).unwrap();
        assert_eq!(label, "x-axis");
        assert_eq!((c.curve.x_display(), c.curve.y_display()), ("-t".into(), "0".into()));
        assert!(condition_c1_axes(&fig1("1"), &decompose(&fig1("1"), NormalVector::new(1, 2).unwrap())).is_none());
    }
}
