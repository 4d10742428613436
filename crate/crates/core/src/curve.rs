//! Descent curves and non-minimality certificates.
//!
//! A certificate is a curve `(x(t), y(t))` with coefficients in `Q[θ]`
//! together with the order `σ` and coefficient of the lowest nonvanishing
//! term of `p(x(t), y(t))`, which must be negative. Each certificate also
//! carries a rational sample point where `p` is exactly negative, so it can be
//! re-checked without algebraic number arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{fmt_monomial_coef, parse_rational, BivariatePoly, Rational, Sign, UniPoly};
use crate::realroots::AlgebraicNumber;
use crate::series::{expand, ThetaField};

/// A parametric curve with coefficients polynomial in an optional real algebraic `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    theta: Option<AlgebraicNumber>,
    /// `(exponent of t, coefficient as a polynomial in θ)`, ascending, nonzero.
    x: Vec<(u32, UniPoly)>,
    y: Vec<(u32, UniPoly)>,
}

fn normalize(field: &ThetaField, mut terms: Vec<(u32, UniPoly)>) -> Vec<(u32, UniPoly)> {
    terms.sort_by_key(|(e, _)| *e);
    let mut out: Vec<(u32, UniPoly)> = Vec::new();
    for (e, c) in terms {
        let c = field.reduce(c);
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc = &*lc + &c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl Curve {
    /// A curve whose coefficients are polynomials in `θ`.
    pub fn new(theta: Option<AlgebraicNumber>, x: Vec<(u32, UniPoly)>, y: Vec<(u32, UniPoly)>) -> Self {
        let field = ThetaField::new(theta.clone());
        // A rational θ is substituted so coefficients stay plain rationals.
        let fold = |v: Vec<(u32, UniPoly)>| -> Vec<(u32, UniPoly)> {
            match theta.as_ref().and_then(|t| t.as_rational()) {
                Some(r) => v.into_iter().map(|(e, c)| (e, UniPoly::constant(c.eval(&r)))).collect(),
                None => v,
            }
        };
        let (x, y) = (fold(x), fold(y));
        let theta = field.theta().cloned();
        let x = normalize(&field, x);
        let y = normalize(&field, y);
        Curve { theta, x, y }
    }

    /// A curve with rational coefficients.
    pub fn rational(x: Vec<(u32, Rational)>, y: Vec<(u32, Rational)>) -> Self {
        let lift = |v: Vec<(u32, Rational)>| v.into_iter().map(|(e, c)| (e, UniPoly::constant(c))).collect();
        Curve::new(None, lift(x), lift(y))
    }

    /// `(x0 t^a1, y0 t^a2)`.
    pub fn scaled_point(theta: Option<AlgebraicNumber>, x0: UniPoly, a1: u32, y0: UniPoly, a2: u32) -> Self {
        Curve::new(theta, vec![(a1, x0)], vec![(a2, y0)])
    }

    pub fn theta(&self) -> Option<&AlgebraicNumber> {
        self.theta.as_ref()
    }

    pub fn field(&self) -> ThetaField {
        ThetaField::new(self.theta.clone())
    }

    pub fn x_terms(&self) -> &[(u32, UniPoly)] {
        &self.x
    }

    pub fn y_terms(&self) -> &[(u32, UniPoly)] {
        &self.y
    }

    /// The rational polynomials `(x(t), y(t))` when no `θ` is involved.
    pub fn as_rational(&self) -> Option<(UniPoly, UniPoly)> {
        if self.theta.is_some() {
            return None;
        }
        let conv = |v: &[(u32, UniPoly)]| UniPoly::from_terms(v.iter().map(|(e, c)| (*e as usize, c.coeff(0))));
        Some((conv(&self.x), conv(&self.y)))
    }

    fn dense(&self, which: &[(u32, UniPoly)], order: usize) -> Vec<UniPoly> {
        let mut v = vec![UniPoly::zero(); order + 1];
        for (e, c) in which {
            if (*e as usize) <= order {
                v[*e as usize] = c.clone();
            }
        }
        v
    }

    fn degree(which: &[(u32, UniPoly)]) -> Option<u32> {
        which.last().map(|(e, _)| *e)
    }

    fn low(which: &[(u32, UniPoly)]) -> Option<u32> {
        which.first().map(|(e, _)| *e)
    }

    /// Coefficients of `t^0 ..= t^order` in `p(x(t), y(t))`, as polynomials in `θ`.
    pub fn expand(&self, p: &BivariatePoly, order: usize) -> Vec<UniPoly> {
        let f = self.field();
        expand(&f, p, &self.dense(&self.x, order), &self.dense(&self.y, order), order)
    }

    /// Rational point on the curve at `t`, with `θ` replaced by `theta_approx`.
    pub fn point_at(&self, t: &Rational, theta_approx: &Rational) -> (Rational, Rational) {
        let f = self.field();
        let ev = |v: &[(u32, UniPoly)]| {
            v.iter()
                .map(|(e, c)| f.eval_at(c, theta_approx) * num_traits::pow(t.clone(), *e as usize))
                .fold(Rational::zero(), |a, b| a + b)
        };
        (ev(&self.x), ev(&self.y))
    }

    /// Image under swapping the coordinates.
    pub fn swapped(&self) -> Self {
        Curve { theta: self.theta.clone(), x: self.y.clone(), y: self.x.clone() }
    }

    fn render(&self, which: &[(u32, UniPoly)]) -> String {
        if which.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in which {
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if c.is_constant() {
                fmt_monomial_coef(&mut out, &c.coeff(0), &mono);
            } else {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push('(');
                out.push_str(&c.display_var("θ"));
                out.push(')');
                if !mono.is_empty() {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn x_display(&self) -> String {
        self.render(&self.x)
    }

    pub fn y_display(&self) -> String {
        self.render(&self.y)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x(t) = {}, y(t) = {}", self.x_display(), self.y_display())?;
        if let Some(t) = &self.theta {
            write!(f, ", θ = {t}")?;
        }
        Ok(())
    }
}

/// Lowest nonvanishing term of `p(x(t), y(t))`: order, coefficient in `θ`, and its sign.
///
/// Returns `None` when the substitution vanishes identically.
pub fn leading_term(p: &BivariatePoly, curve: &Curve) -> Option<(u32, UniPoly, Sign)> {
    let field = curve.field();
    let (dx, dy) = (Curve::degree(&curve.x), Curve::degree(&curve.y));
    let (lx, ly) = (Curve::low(&curve.x), Curve::low(&curve.y));
    let mut lowest: Option<u64> = None;
    let mut highest: u64 = 0;
    for ((a, b), _) in p.terms() {
        let part = |e: u32, d: Option<u32>| -> Option<u64> {
            if e == 0 {
                Some(0)
            } else {
                d.map(|d| d as u64 * e as u64)
            }
        };
        let (Some(l1), Some(l2)) = (part(a, lx), part(b, ly)) else {
            continue;
        };
        let h = part(a, dx).unwrap_or(0) + part(b, dy).unwrap_or(0);
        lowest = Some(lowest.map_or(l1 + l2, |l: u64| l.min(l1 + l2)));
        highest = highest.max(h);
    }
    let lowest = lowest?;
    let mut n = highest.min(lowest + 16);
    loop {
        let coeffs = curve.expand(p, n as usize);
        for (i, c) in coeffs.iter().enumerate().skip(lowest as usize) {
            if c.is_zero() {
                continue;
            }
            let s = field.sign(c);
            if s != Sign::Zero {
                return Some((i as u32, c.clone(), s));
            }
        }
        if n >= highest {
            return None;
        }
        n = highest.min(2 * n + 1);
    }
}

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Curve along a coordinate axis.
    AxisDescent,
    /// Curve `(x0 t^A1, y0 t^A2)`.
    ScaledPointDescent,
    /// General polynomial curve.
    CurveDescent,
}

/// A rational point on or near the curve where `p` is exactly negative.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub t: Rational,
    pub x: Rational,
    pub y: Rational,
    pub value: Rational,
}

/// Machine-checkable evidence that the origin is not a local minimum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "CertificateJson", try_from = "CertificateJson")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub curve: Curve,
    /// Order of the lowest nonvanishing term.
    pub sigma: u32,
    /// Its coefficient, as a polynomial in `θ`.
    pub leading: UniPoly,
    pub sample: SamplePoint,
}

impl Certificate {
    /// Builds a certificate when the curve's leading term is negative.
    pub fn build(p: &BivariatePoly, kind: CertificateKind, curve: Curve) -> Option<Certificate> {
        let (sigma, leading, sign) = leading_term(p, &curve)?;
        if sign != Sign::Negative {
            return None;
        }
        let sample = find_sample(p, &curve, sigma)?;
        Some(Certificate { kind, curve, sigma, leading, sample })
    }

    /// Numeric value of the leading coefficient.
    pub fn leading_approx(&self) -> f64 {
        let f = self.curve.field();
        let th = match self.curve.theta() {
            Some(t) => t.approx_within(&Rational::new(BigInt::one(), BigInt::from(1u64 << 40))),
            None => Rational::zero(),
        };
        f.eval_at(&self.leading, &th).to_f64().unwrap_or(f64::NAN)
    }

    /// The leading coefficient as an exact rational, when `θ` is absent.
    pub fn leading_rational(&self) -> Option<Rational> {
        self.curve.theta().is_none().then(|| self.leading.coeff(0))
    }

    /// Certificate for the mirror image `p(y, x)`.
    pub fn swapped(&self) -> Certificate {
        let s = &self.sample;
        Certificate {
            kind: self.kind,
            curve: self.curve.swapped(),
            sigma: self.sigma,
            leading: self.leading.clone(),
            sample: SamplePoint { t: s.t.clone(), x: s.y.clone(), y: s.x.clone(), value: s.value.clone() },
        }
    }
}

/// Searches `t = 2^-k`, `k >= 7`, for a rational point with `p < 0`.
fn find_sample(p: &BivariatePoly, curve: &Curve, sigma: u32) -> Option<SamplePoint> {
    let mut theta = curve.theta().cloned();
    for k in 7u32..400 {
        let t = Rational::new(BigInt::one(), BigInt::one() << k);
        let theta_approx = match theta.as_mut() {
            Some(th) => {
                let w = num_traits::pow(t.clone(), sigma as usize + 4);
                *th = th.refine_to_width(&w);
                (th.lo() + th.hi()) / Rational::from_integer(BigInt::from(2))
            }
            None => Rational::zero(),
        };
        let (x, y) = curve.point_at(&t, &theta_approx);
        let value = p.evaluate(&x, &y);
        if value.is_negative() {
            return Some(SamplePoint { t, x, y, value });
        }
    }
    None
}

/// True iff the curve's lowest term has order `σ` and a negative coefficient,
/// and the sample point evaluates to the stated negative value.
pub fn verify_certificate(p: &BivariatePoly, c: &Certificate) -> bool {
    let sample_ok = c.sample.value.is_negative() && p.evaluate(&c.sample.x, &c.sample.y) == c.sample.value;
    if !sample_ok {
        return false;
    }
    match leading_term(p, &c.curve) {
        Some((sigma, lead, Sign::Negative)) => sigma == c.sigma && lead == c.leading,
        _ => false,
    }
}

/// JSON form of a `θ` description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaJson {
    /// Defining polynomial coefficients, ascending.
    pub defining: Vec<String>,
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

/// JSON form of a certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: CertificateKind,
    pub x_t: String,
    pub y_t: String,
    pub sigma: u32,
    pub leading: String,
    pub leading_approx: f64,
    pub sample_t: String,
    pub sample_x: String,
    pub sample_y: String,
    pub value: String,
    pub theta: Option<ThetaJson>,
    /// `[exponent, [coefficients in θ, ascending]]`.
    pub x_terms: Vec<(u32, Vec<String>)>,
    pub y_terms: Vec<(u32, Vec<String>)>,
}

fn coeff_strings(u: &UniPoly) -> Vec<String> {
    u.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_coeffs(v: &[String]) -> Result<UniPoly, String> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| format!("invalid rational {s:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(UniPoly::from_coeffs)
}

impl From<Certificate> for CertificateJson {
    fn from(c: Certificate) -> Self {
        let terms = |v: &[(u32, UniPoly)]| v.iter().map(|(e, u)| (*e, coeff_strings(u))).collect();
        let leading = if c.leading.is_constant() {
            c.leading.coeff(0).to_string()
        } else {
            c.leading.display_var("θ")
        };
        CertificateJson {
            kind: c.kind,
            x_t: c.curve.x_display(),
            y_t: c.curve.y_display(),
            sigma: c.sigma,
            leading,
            leading_approx: c.leading_approx(),
            sample_t: c.sample.t.to_string(),
            sample_x: c.sample.x.to_string(),
            sample_y: c.sample.y.to_string(),
            value: c.sample.value.to_string(),
            theta: c.curve.theta().map(|t| ThetaJson {
                defining: coeff_strings(t.defining()),
                lo: t.lo().to_string(),
                hi: t.hi().to_string(),
                approx: t.to_f64(),
            }),
            x_terms: terms(c.curve.x_terms()),
            y_terms: terms(c.curve.y_terms()),
        }
    }
}

impl TryFrom<CertificateJson> for Certificate {
    type Error = String;
    fn try_from(j: CertificateJson) -> Result<Self, String> {
        let rat = |s: &str| parse_rational(s).ok_or_else(|| format!("invalid rational {s:?}"));
        let theta = match &j.theta {
            Some(t) => {
                let d = parse_coeffs(&t.defining)?;
                let (lo, hi) = (rat(&t.lo)?, rat(&t.hi)?);
                let th = if lo == hi {
                    AlgebraicNumber::from_rational(lo)
                } else {
                    AlgebraicNumber::from_interval(&d, lo, hi).ok_or("theta interval does not isolate a root")?
                };
                Some(th)
            }
            None => None,
        };
        let terms = |v: &[(u32, Vec<String>)]| -> Result<Vec<(u32, UniPoly)>, String> {
            v.iter().map(|(e, c)| Ok((*e, parse_coeffs(c)?))).collect()
        };
        let curve = Curve::new(theta, terms(&j.x_terms)?, terms(&j.y_terms)?);
        let leading = match curve.theta() {
            None => UniPoly::constant(rat(&j.leading)?),
            Some(_) => {
                // The leading coefficient is recomputed from the curve on verification.
                UniPoly::zero()
            }
        };
        Ok(Certificate {
            kind: j.kind,
            curve,
            sigma: j.sigma,
            leading,
            sample: SamplePoint {
                t: rat(&j.sample_t)?,
                x: rat(&j.sample_x)?,
                y: rat(&j.sample_y)?,
                value: rat(&j.value)?,
            },
        })
    }
}

/// Like [`verify_certificate`] but recomputes the leading coefficient instead of comparing it.
pub fn verify_curve_and_sample(p: &BivariatePoly, c: &Certificate) -> bool {
    let sample_ok = c.sample.value.is_negative() && p.evaluate(&c.sample.x, &c.sample.y) == c.sample.value;
    sample_ok && matches!(leading_term(p, &c.curve), Some((s, _, Sign::Negative)) if s == c.sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse, rat};

    fn example5(a: &str) -> BivariatePoly {
        parse(&format!("x^4*y^2 + 2*x^2*y^3 + y^4 + 3*{a}*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3")).unwrap()
    }

    #[test]
    fn example5_curve_certificate() {
        let p = example5("1");
        let curve = Curve::rational(vec![(1, int(1))], vec![(2, int(-1))]);
        let c = Certificate::build(&p, CertificateKind::ScaledPointDescent, curve).unwrap();
        assert_eq!(c.sigma, 14);
        assert_eq!(c.leading_rational(), Some(rat(-1, 100)));
        assert!(verify_certificate(&p, &c));
        assert!(c.sample.t <= rat(1, 100));
    }

    #[test]
    fn wrong_sign_curve_is_rejected() {
        let p = example5("1");
        let curve = Curve::rational(vec![(1, int(1))], vec![(2, int(1))]);
        assert!(Certificate::build(&p, CertificateKind::ScaledPointDescent, curve.clone()).is_none());
        let (s, _, sign) = leading_term(&p, &curve).unwrap();
        assert_eq!(sign, Sign::Positive);
        assert_eq!(s, 8);
    }

    #[test]
    fn example6_curve_certificate() {
        let p = parse("(x-y)^6 - (x-y)^2*x^5 + x^8").unwrap();
        let curve = Curve::rational(vec![(2, int(1)), (3, int(2))], vec![(2, int(1))]);
        let c = Certificate::build(&p, CertificateKind::CurveDescent, curve).unwrap();
        assert_eq!(c.sigma, 16);
        assert_eq!(c.leading_rational(), Some(int(-3)));
        assert!(verify_certificate(&p, &c));
    }

    #[test]
    fn algebraic_curve_certificate_round_trips() {
        // p = (y - 2x)^2 ... with descent along y = θ x, θ^3 = 2.
        let p = parse("(y^3 - 2*x^3)^2 - x^7").unwrap();
        let theta = AlgebraicNumber::from_rational(int(2)).odd_root(3);
        let curve = Curve::scaled_point(Some(theta), UniPoly::one(), 1, UniPoly::var(), 1);
        let c = Certificate::build(&p, CertificateKind::ScaledPointDescent, curve).unwrap();
        assert_eq!(c.sigma, 7);
        assert!(verify_certificate(&p, &c));
        let json = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert!(verify_curve_and_sample(&p, &back));
    }

    #[test]
    fn axis_curve() {
        let p = parse("x^2*(x-y)^2 + 2*y^5").unwrap();
        let curve = Curve::rational(vec![], vec![(1, int(-1))]);
        let c = Certificate::build(&p, CertificateKind::AxisDescent, curve).unwrap();
        assert_eq!(c.sigma, 5);
        assert_eq!(c.curve.x_display(), "0");
        assert_eq!(c.curve.y_display(), "-t");
    }
}
