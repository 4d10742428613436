//! Exact bivariate and univariate polynomial arithmetic.

mod parse;
mod uni;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};
pub use uni::UniPoly;

/// Exact rational number; always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n`, `n/d` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let value = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Rational::new(n, d)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let w: BigInt = whole.parse().ok()?;
        let f: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Rational::new(w * &scale + f, scale)
    } else {
        if !body.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Rational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -value } else { value })
}

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_int(v: i64) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn pow(self, e: u64) -> Sign {
        match self {
            Sign::Negative if e % 2 == 1 => Sign::Negative,
            Sign::Zero if e > 0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Appends `± c*mono` to `out`, omitting a unit coefficient when a monomial is present.
pub(crate) fn fmt_monomial_coef(out: &mut String, c: &Rational, mono: &str) {
    let neg = c.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if mono.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&a.to_string());
        out.push('*');
        out.push_str(mono);
    }
}

/// Coordinate axis selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// The line y = 0, giving p(x, 0).
    X,
    /// The line x = 0, giving p(0, y).
    Y,
}

/// Exponent pair (alpha, beta) of the monomial x^alpha y^beta.
pub type Exponent = (u32, u32);

/// Bivariate polynomial in x, y with exact rational coefficients.
///
/// The key set of `terms` is the support; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, alpha: u32, beta: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(alpha, beta, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Sums the given terms; repeated exponents are combined and zeros dropped.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, alpha: u32, beta: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, beta);
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms in ascending (alpha, beta) order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, alpha: u32, beta: u32) -> Option<&Rational> {
        self.terms.get(&(alpha, beta))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The support N_p: exponent pairs with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// Largest exponent of x and of y appearing in any term.
    pub fn max_exponents(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(ma, mb), &(a, b)| (ma.max(a), mb.max(b)))
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        let (ma, mb) = self.max_exponents();
        let xp = powers(x, ma);
        let yp = powers(y, mb);
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * &xp[a as usize] * &yp[b as usize])
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// The sum of terms whose exponent lies in `n`.
    pub fn shortening<'a, I: IntoIterator<Item = &'a Exponent>>(&self, n: I) -> Self {
        let mut out = Self::zero();
        for k in n {
            if let Some(c) = self.terms.get(k) {
                out.terms.insert(*k, c.clone());
            }
        }
        out
    }

    /// True iff p(0,0) = 0 and both first partial derivatives vanish at the origin.
    pub fn is_stationary_origin(&self) -> bool {
        self.terms.keys().all(|(a, b)| a + b >= 2)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BivariatePoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::constant(Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// p(y, x).
    pub fn swap_xy(&self) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    /// Multiplies by x^da y^db.
    pub fn shift(&self, da: u32, db: u32) -> Self {
        BivariatePoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + da, b + db), c.clone())).collect() }
    }

    /// Exact expansion of p(x(t), y(t)).
    pub fn substitute_curve(&self, xt: &UniPoly, yt: &UniPoly) -> UniPoly {
        let (ma, mb) = self.max_exponents();
        let xp = uni_powers(xt, ma);
        let yp = uni_powers(yt, mb);
        let mut acc = UniPoly::zero();
        for (&(a, b), c) in &self.terms {
            let term = (&xp[a as usize] * &yp[b as usize]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// p(x, 0) for [`Axis::X`] or p(0, y) for [`Axis::Y`].
    pub fn axis_restriction(&self, axis: Axis) -> UniPoly {
        UniPoly::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| match axis {
            Axis::X if b == 0 => Some((a as usize, c.clone())),
            Axis::Y if a == 0 => Some((b as usize, c.clone())),
            _ => None,
        }))
    }

    /// Terms in canonical print order: descending total degree, then descending x exponent.
    pub fn canonical_terms(&self) -> Vec<(Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2).cmp(&(a1 + b1)).then(a2.cmp(a1)));
        v
    }
}

fn powers(x: &Rational, n: u32) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(Rational::one());
    for i in 1..=n as usize {
        let next = &v[i - 1] * x;
        v.push(next);
    }
    v
}

fn uni_powers(x: &UniPoly, n: u32) -> Vec<UniPoly> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(UniPoly::one());
    for i in 1..=n as usize {
        let next = &v[i - 1] * x;
        v.push(next);
    }
    v
}

pub(crate) fn monomial_string(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    for (v, e) in [("x", a), ("y", b)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for ((a, b), c) in self.canonical_terms() {
            fmt_monomial_coef(&mut out, c, &monomial_string(a, b));
        }
        f.write_str(&out)
    }
}

impl FromStr for BivariatePoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivariatePoly {
            type Output = BivariatePoly;
            fn $m(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}
