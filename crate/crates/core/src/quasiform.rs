//! Quasi-homogeneous forms, their characteristic polynomials and the
//! single-form nonnegativity analysis.
//!
//! For `A = (A1, A2)` a form collects the terms with `A1*alpha + A2*beta = B`.
//! Writing the main term (largest alpha) as `a1 x^alpha1 y^beta1`, the form is
//! `x^alpha1 y^beta1 g(u)` with `u = x^-A2 y^A1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{Certificate, CertificateKind, Curve};
use crate::geometry::{hull, pareto, NormalVector};
use crate::poly::{fmt_monomial_coef, monomial_string, BivariatePoly, Exponent, Rational, Sign, UniPoly};
use crate::realroots::{isolate_roots, simplest_rational_between, univariate_nonnegative, AlgebraicNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasiFormError {
    #[error("polynomial is zero")]
    Zero,
    #[error("term x^{0}*y^{1} does not lie on the level line of the form")]
    NotQuasiHomogeneous(u32, u32),
    #[error("exponent step is not a multiple of A2")]
    NonIntegralExponent,
    #[error("characteristic polynomial needs alpha1 >= {needed}, got {alpha1}")]
    ExponentUnderflow { needed: u64, alpha1: u32 },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("root does not have multiplicity {0} in the characteristic polynomial")]
    NotARoot(u32),
    #[error("root reduction on forms needs a rational root")]
    IrrationalRoot,
    #[error("Newton polygon is two-dimensional")]
    DimensionTwo,
}

/// An `A`-quasi-homogeneous form, stored expanded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiForm {
    normal: NormalVector,
    level: u64,
    /// Nonzero terms by strictly decreasing alpha.
    #[serde(serialize_with = "ser_terms")]
    terms: Vec<(Exponent, Rational)>,
}

fn ser_terms<S: serde::Serializer>(t: &[(Exponent, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for ((a, b), c) in t {
        seq.serialize_element(&(a, b, c.to_string()))?;
    }
    seq.end()
}

impl QuasiForm {
    /// Wraps a nonzero polynomial whose terms share one `A`-level.
    pub fn from_poly(p: &BivariatePoly, a: NormalVector) -> Result<Self, QuasiFormError> {
        let mut terms: Vec<(Exponent, Rational)> = p.terms().map(|(e, c)| (e, c.clone())).collect();
        let first = terms.first().ok_or(QuasiFormError::Zero)?.0;
        let level = a.dot(first);
        if let Some((e, _)) = terms.iter().find(|(e, _)| a.dot(*e) != level) {
            return Err(QuasiFormError::NotQuasiHomogeneous(e.0, e.1));
        }
        terms.sort_by_key(|t| std::cmp::Reverse(t.0 .0));
        Ok(QuasiForm { normal: a, level, terms })
    }

    pub fn normal(&self) -> NormalVector {
        self.normal
    }

    /// The level `B = <A, (alpha, beta)>`.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn terms(&self) -> &[(Exponent, Rational)] {
        &self.terms
    }

    /// Term with the largest alpha.
    pub fn main_term(&self) -> (Exponent, &Rational) {
        let (e, c) = &self.terms[0];
        (*e, c)
    }

    /// Term with the smallest alpha.
    pub fn trailing_term(&self) -> (Exponent, &Rational) {
        let (e, c) = self.terms.last().expect("forms are nonempty");
        (*e, c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn to_poly(&self) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms.iter().cloned())
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        self.to_poly().evaluate(x, y)
    }
}

impl fmt::Display for QuasiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for ((a, b), c) in &self.terms {
            fmt_monomial_coef(&mut out, c, &monomial_string(*a, *b));
        }
        f.write_str(&out)
    }
}

/// Characteristic polynomial `g` of a form together with its anchoring exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub g: UniPoly,
    pub normal: NormalVector,
    /// `(alpha1, beta1)` of the main term.
    pub main: Exponent,
    /// `(alpha_s, beta_s)` of the trailing term.
    pub trailing: Exponent,
}

impl CharPoly {
    /// The direction `e = (-A2, A1)`.
    pub fn e(&self) -> (i64, i64) {
        self.normal.e()
    }

    pub fn level(&self) -> u64 {
        self.normal.dot(self.main)
    }
}

/// `g(u) = sum a_i u^((alpha1 - alpha_i) / A2)`.
pub fn characteristic(form: &QuasiForm) -> Result<CharPoly, QuasiFormError> {
    let a = form.normal;
    let (main, _) = form.main_term();
    let mut coeffs = Vec::with_capacity(form.terms.len());
    for ((al, be), c) in &form.terms {
        let step = main.0 - al;
        if step % a.a2() != 0 {
            return Err(QuasiFormError::NonIntegralExponent);
        }
        let v = step / a.a2();
        if *be as u64 != main.1 as u64 + v as u64 * a.a1() as u64 {
            return Err(QuasiFormError::NotQuasiHomogeneous(*al, *be));
        }
        coeffs.push((v as usize, c.clone()));
    }
    Ok(CharPoly { g: UniPoly::from_terms(coeffs), normal: a, main, trailing: form.trailing_term().0 })
}

/// Rebuilds `x^alpha1 y^beta1 g(x^-A2 y^A1)` as a form.
pub fn form_from_char(a: NormalVector, main: Exponent, g: &UniPoly) -> Result<QuasiForm, QuasiFormError> {
    let deg = g.degree().ok_or(QuasiFormError::Zero)? as u64;
    let needed = deg * a.a2() as u64;
    if needed > main.0 as u64 {
        return Err(QuasiFormError::ExponentUnderflow { needed, alpha1: main.0 });
    }
    let p = BivariatePoly::from_terms(
        g.terms().map(|(i, c)| ((main.0 - i as u32 * a.a2(), main.1 + i as u32 * a.a1()), c.clone())),
    );
    QuasiForm::from_poly(&p, a)
}

/// Forms of `p` ordered by strictly increasing level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub normal: NormalVector,
    pub forms: Vec<QuasiForm>,
}

impl Decomposition {
    pub fn levels(&self) -> Vec<u64> {
        self.forms.iter().map(|f| f.level).collect()
    }

    /// Sum of the forms.
    pub fn recombine(&self) -> BivariatePoly {
        self.forms.iter().fold(BivariatePoly::zero(), |acc, f| acc + f.to_poly())
    }
}

/// Groups the terms of `p` by `<A, (alpha, beta)>`.
pub fn decompose(p: &BivariatePoly, a: NormalVector) -> Decomposition {
    let mut by_level: std::collections::BTreeMap<u64, Vec<(Exponent, Rational)>> = Default::default();
    for (e, c) in p.terms() {
        by_level.entry(a.dot(e)).or_default().push((e, c.clone()));
    }
    let forms = by_level
        .into_values()
        .map(|t| QuasiForm::from_poly(&BivariatePoly::from_terms(t), a).expect("one level per group"))
        .collect();
    Decomposition { normal: a, forms }
}

fn even(v: u32) -> bool {
    v.is_multiple_of(2)
}

/// Positive main and trailing coefficients with even exponents at both ends.
fn end_terms_positive_even(form: &QuasiForm) -> bool {
    let ((a1, b1), c1) = form.main_term();
    let ((a_s, b_s), c_s) = form.trailing_term();
    c1.is_positive() && c_s.is_positive() && even(a1) && even(b1) && even(a_s) && even(b_s)
}

/// Nonnegativity on the whole plane.
pub fn form_nonnegative(form: &QuasiForm) -> bool {
    end_terms_positive_even(form) && characteristic(form).is_ok_and(|c| univariate_nonnegative(&c.g))
}

/// True iff `g` has no real roots, so the form vanishes only on the axes.
///
/// Requires positive end coefficients with even exponents.
pub fn form_weakly_nondegenerate(form: &QuasiForm) -> Result<bool, QuasiFormError> {
    if !end_terms_positive_even(form) {
        return Err(QuasiFormError::Precondition("end terms must be positive with even exponents"));
    }
    let c = characteristic(form)?;
    Ok(isolate_roots(&c.g).is_empty())
}

/// A rational point where a form is negative, and the scaled curve through it.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativityWitness {
    pub x: Rational,
    pub y: Rational,
    pub value: Rational,
    /// `(x t^A1, y t^A2)`, along which the form equals `value * t^B`.
    pub curve: Curve,
}

const SIGN_PAIRS: [(i64, i64); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// Rationals in every open gap between the real roots of `g` and zero.
fn gap_samples(g: &UniPoly) -> Vec<Rational> {
    let mut breaks: Vec<(Rational, Rational)> = isolate_roots(g)
        .into_iter()
        .map(|r| {
            let (mut n, _) = r.root.sign_separated();
            // Keep zero strictly outside so the gaps around it are nonempty.
            while n.lo().is_zero() || n.hi().is_zero() {
                n = n.refine();
            }
            (n.lo().clone(), n.hi().clone())
        })
        .collect();
    breaks.push((Rational::zero(), Rational::zero()));
    breaks.sort();
    let one = Rational::one();
    let mut out = vec![&breaks[0].0 - &one];
    for w in breaks.windows(2) {
        out.push(simplest_rational_between(&w[0].1, &w[1].0));
    }
    out.push(&breaks[breaks.len() - 1].1 + &one);
    out
}

/// Rationals converging to `v^(1/n)` for `v > 0`, simplest first.
fn root_approximations(v: &Rational, n: u32) -> impl Iterator<Item = Rational> {
    let v = v.clone();
    let (mut lo, mut hi) = (Rational::zero(), if v > Rational::one() { v.clone() } else { Rational::one() });
    let two = Rational::from_integer(BigInt::from(2));
    let exact = {
        let (num, den) = (v.numer(), v.denom());
        let (rn, rd) = (num.nth_root(n), den.nth_root(n));
        (num_traits::pow(rn.clone(), n as usize) == *num && num_traits::pow(rd.clone(), n as usize) == *den)
            .then(|| Rational::new(rn, rd))
    };
    exact.into_iter().chain((0..256).map(move |_| {
        for _ in 0..4 {
            let mid = (&lo + &hi) / &two;
            if num_traits::pow(mid.clone(), n as usize) < v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        simplest_rational_between(&lo, &hi)
    }))
}

/// Finds a rational point where the form is negative.
///
/// Errors when the form is nonnegative.
pub fn negativity_witness(form: &QuasiForm) -> Result<NegativityWitness, QuasiFormError> {
    let a = form.normal;
    let ch = characteristic(form)?;
    let (a1, b1) = ch.main;
    let samples = gap_samples(&ch.g);
    for (sx, sy) in SIGN_PAIRS {
        let pi = Sign::of_int(sx).pow(a1 as u64).mul(Sign::of_int(sy).pow(b1 as u64));
        let u_sign = Sign::of_int(sx).pow(a.a2() as u64).mul(Sign::of_int(sy).pow(a.a1() as u64));
        for u in samples.iter().filter(|u| Sign::of(u) == u_sign) {
            if pi.mul(ch.g.sign_at(u)) != Sign::Negative {
                continue;
            }
            // x = sx, y = sy*r with r^A1 = |u|.
            let x = Rational::from_integer(BigInt::from(sx));
            for r in root_approximations(&u.abs(), a.a1()) {
                let y = Rational::from_integer(BigInt::from(sy)) * r;
                let value = form.evaluate(&x, &y);
                if value.is_negative() {
                    let curve = Curve::rational(vec![(a.a1(), x.clone())], vec![(a.a2(), y.clone())]);
                    return Ok(NegativityWitness { x, y, value, curve });
                }
            }
        }
    }
    Err(QuasiFormError::Precondition("form is nonnegative"))
}

/// Outcome of the analysis of a polynomial with a Newton polygon of dimension at most one.
#[derive(Clone, Debug, PartialEq)]
pub enum SingleFormOutcome {
    LocalMin { reason: String },
    NotLocalMin { certificate: Certificate, reason: String },
}

/// Decides `p` when its support is a point or lies on one line.
///
/// If that line has a normal with positive components, `p` is a single form
/// and the origin is a minimum iff the form is nonnegative. Otherwise the
/// unique Pareto-minimal term dominates and must be positive with even exponents.
pub fn main_form_nonnn_case(p: &BivariatePoly) -> Result<SingleFormOutcome, QuasiFormError> {
    let support = p.support();
    let h = hull(&support).map_err(|_| QuasiFormError::Zero)?;
    if h.dimension == 2 {
        return Err(QuasiFormError::DimensionTwo);
    }
    if h.dimension == 1 {
        let (s, t) = (h.vertices[0], h.vertices[h.vertices.len() - 1]);
        let (da, db) = (t.0 as i64 - s.0 as i64, t.1 as i64 - s.1 as i64);
        // Normal (db, -da) up to sign; both positive iff the segment descends.
        if da != 0 && db != 0 && (da > 0) != (db > 0) {
            let a = NormalVector::reduced(db.unsigned_abs() as u32, da.unsigned_abs() as u32).expect("positive");
            let form = QuasiForm::from_poly(p, a)?;
            return if form_nonnegative(&form) {
                Ok(SingleFormOutcome::LocalMin {
                    reason: format!("single {a}-form is nonnegative"),
                })
            } else {
                let w = negativity_witness(&form)?;
                let certificate = Certificate::build(p, CertificateKind::ScaledPointDescent, w.curve)
                    .expect("negative form value gives a negative leading term");
                Ok(SingleFormOutcome::NotLocalMin {
                    certificate,
                    reason: format!("single {a}-form takes value {} at ({}, {})", w.value, w.x, w.y),
                })
            };
        }
    }
    let par = pareto(&support);
    debug_assert_eq!(par.len(), 1);
    let main = *par.iter().next().expect("nonempty support");
    let c = p.coeff(main.0, main.1).expect("support point");
    let mono = monomial_string(main.0, main.1);
    if c.is_positive() && even(main.0) && even(main.1) {
        return Ok(SingleFormOutcome::LocalMin {
            reason: format!("main term {c}*{mono} is positive with even exponents"),
        });
    }
    let witness = main_term_witness(c, main);
    let curve = Curve::rational(
        vec![(1, Rational::from_integer(BigInt::from(witness.0)))],
        vec![(1, Rational::from_integer(BigInt::from(witness.1)))],
    );
    let certificate = Certificate::build(p, CertificateKind::ScaledPointDescent, curve)
        .expect("dominant main term has negative sign along the witness");
    Ok(SingleFormOutcome::NotLocalMin {
        certificate,
        reason: format!("main term {c}*{mono} takes negative values"),
    })
}

/// Signs `(C1, C2)` with `c * C1^alpha * C2^beta < 0`.
pub fn main_term_witness(c: &Rational, e: Exponent) -> (i64, i64) {
    SIGN_PAIRS
        .into_iter()
        .find(|(s1, s2)| {
            Sign::of(c).mul(Sign::of_int(*s1).pow(e.0 as u64)).mul(Sign::of_int(*s2).pow(e.1 as u64)) == Sign::Negative
        })
        .unwrap_or((1, 1))
}

/// A form with a rational root factor removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub form: QuasiForm,
    /// The quotient is a single term: its characteristic polynomial is constant.
    pub constant: bool,
}

/// Divides `(y^A1 - u0 x^A2)^m` out of the form.
pub fn factor_out_root(form: &QuasiForm, u0: &AlgebraicNumber, m: u32) -> Result<Factored, QuasiFormError> {
    let u0 = u0.as_rational().ok_or(QuasiFormError::IrrationalRoot)?;
    let ch = characteristic(form)?;
    let lin = UniPoly::from_coeffs(vec![-u0, Rational::one()]);
    let g = ch.g.exact_div(&lin.pow(m)).ok_or(QuasiFormError::NotARoot(m))?;
    let a = form.normal;
    let shift = m * a.a2();
    if shift > ch.main.0 {
        return Err(QuasiFormError::NotARoot(m));
    }
    let f = form_from_char(a, (ch.main.0 - shift, ch.main.1), &g)?;
    let constant = g.is_constant();
    Ok(Factored { form: f, constant })
}

/// `y^A1 - u0 x^A2` as a polynomial.
pub fn root_factor(a: NormalVector, u0: &Rational) -> BivariatePoly {
    BivariatePoly::monomial(Rational::one(), 0, a.a1()) - BivariatePoly::monomial(u0.clone(), a.a2(), 0)
}
