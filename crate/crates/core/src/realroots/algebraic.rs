//! Real algebraic numbers given by a square-free defining polynomial and an
//! isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{count_roots_in, squarefree_part, sturm_sequence};
use crate::poly::{Rational, Sign, UniPoly};

/// A real algebraic number.
///
/// Either `lo == hi` and the number is that rational, or `lo < hi`, the
/// defining polynomial takes nonzero values of opposite sign at `lo` and
/// `hi`, and it has exactly one root in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

impl AlgebraicNumber {
    pub fn from_rational(r: Rational) -> Self {
        let defining = UniPoly::from_coeffs(vec![-r.clone(), Rational::one()]).primitive();
        AlgebraicNumber { defining, lo: r.clone(), hi: r }
    }

    pub(crate) fn from_root_of(_f: UniPoly, r: Rational) -> Self {
        Self::from_rational(r)
    }

    /// Trusted constructor: `f` square-free with a single sign-changing root in `(lo, hi)`.
    pub(crate) fn from_isolating(f: UniPoly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        debug_assert!(f.sign_at(&lo).mul(f.sign_at(&hi)) == Sign::Negative);
        AlgebraicNumber { defining: f.primitive(), lo, hi }
    }

    /// Builds from a square-free polynomial and an interval `(lo, hi]` that holds exactly one of its roots.
    pub fn from_interval(f: &UniPoly, lo: Rational, hi: Rational) -> Option<Self> {
        let f = squarefree_part(f);
        let seq = sturm_sequence(&f);
        if lo >= hi || count_roots_in(&seq, &lo, &hi) != 1 {
            return None;
        }
        Some(super::single_root(&f, lo, hi).detect_rational())
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// Halves the isolating interval.
    pub fn refine(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / two();
        let sm = self.defining.sign_at(&mid);
        if sm == Sign::Zero {
            return Self::from_rational(mid);
        }
        if sm == self.defining.sign_at(&self.lo) {
            AlgebraicNumber { defining: self.defining.clone(), lo: mid, hi: self.hi.clone() }
        } else {
            AlgebraicNumber { defining: self.defining.clone(), lo: self.lo.clone(), hi: mid }
        }
    }

    pub fn refine_to_width(&self, w: &Rational) -> Self {
        let mut cur = self.clone();
        while cur.width() > *w {
            cur = cur.refine();
        }
        cur
    }

    /// Midpoint of an interval refined to width at most `w`.
    pub fn approx_within(&self, w: &Rational) -> Rational {
        let r = self.refine_to_width(w);
        (r.lo + r.hi) / two()
    }

    pub fn to_f64(&self) -> f64 {
        let w = Rational::new(BigInt::one(), BigInt::one() << 60u32);
        self.approx_within(&w).to_f64().unwrap_or(f64::NAN)
    }

    /// Replaces the interval by a degenerate one when the root is rational.
    pub(crate) fn detect_rational(self) -> Self {
        if self.is_rational() {
            return self;
        }
        let f = &self.defining;
        if f.degree() == Some(1) {
            return Self::from_rational(-f.coeff(0) / f.coeff(1));
        }
        let ints = f.primitive_integer();
        let lc = ints.last().expect("nonzero").abs();
        let bound = Rational::new(BigInt::one(), &lc * &lc);
        let mut cur = self;
        while cur.width() >= bound {
            cur = cur.refine();
            if cur.is_rational() {
                return cur;
            }
        }
        let s = simplest_rational_between(&cur.lo, &cur.hi);
        if *s.denom() <= lc && cur.defining.eval(&s).is_zero() {
            return Self::from_rational(s);
        }
        cur
    }

    /// Sign of the number itself.
    pub fn sign(&self) -> Sign {
        self.sign_separated().1
    }

    /// A refined copy whose interval excludes zero (unless the number is zero), with its sign.
    pub fn sign_separated(&self) -> (Self, Sign) {
        let mut cur = self.clone();
        loop {
            if let Some(r) = cur.as_rational() {
                return (cur, Sign::of(&r));
            }
            if cur.lo >= Rational::zero() {
                return (cur, Sign::Positive);
            }
            if cur.hi <= Rational::zero() {
                return (cur, Sign::Negative);
            }
            let s0 = cur.defining.sign_at(&Rational::zero());
            if s0 == Sign::Zero {
                return (Self::from_rational(Rational::zero()), Sign::Zero);
            }
            if s0 == cur.defining.sign_at(&cur.lo) {
                cur.lo = Rational::zero();
            } else {
                cur.hi = Rational::zero();
            }
        }
    }

    /// Exact sign of `h` at this number.
    pub fn sign_of(&self, h: &UniPoly) -> Sign {
        if h.is_zero() {
            return Sign::Zero;
        }
        if let Some(r) = self.as_rational() {
            return h.sign_at(&r);
        }
        if h.is_constant() {
            return Sign::of(&h.coeff(0));
        }
        let g = h.gcd(&self.defining);
        if !g.is_constant() && g.sign_at(&self.lo) != g.sign_at(&self.hi) {
            return Sign::Zero;
        }
        let hs = squarefree_part(h);
        let seq = sturm_sequence(&hs);
        let mut cur = self.clone();
        loop {
            if let Some(r) = cur.as_rational() {
                return h.sign_at(&r);
            }
            if hs.sign_at(&cur.lo) != Sign::Zero && count_roots_in(&seq, &cur.lo, &cur.hi) == 0 {
                return h.sign_at(&cur.lo);
            }
            cur = cur.refine();
        }
    }

    /// Exact equality test.
    pub fn equals(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return a == b,
            (Some(a), None) => return other.sign_of(&UniPoly::from_coeffs(vec![-a, Rational::one()])) == Sign::Zero,
            (None, Some(b)) => return self.sign_of(&UniPoly::from_coeffs(vec![-b, Rational::one()])) == Sign::Zero,
            (None, None) => {}
        }
        let g = self.defining.gcd(&other.defining);
        if g.is_constant() {
            return false;
        }
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo > hi {
            return false;
        }
        if g.eval(&lo).is_zero() || g.eval(&hi).is_zero() {
            return true;
        }
        let seq = sturm_sequence(&g);
        count_roots_in(&seq, &lo, &hi) > 0
    }

    /// Refines two distinct numbers until their closed intervals are disjoint.
    pub fn separate(a: &Self, b: &Self) -> (Self, Self) {
        if a.equals(b) {
            return (a.clone(), b.clone());
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while a.lo <= b.hi && b.lo <= a.hi {
            a = a.refine();
            b = b.refine();
        }
        (a, b)
    }

    /// Total order on real algebraic numbers.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        let (a, b) = Self::separate(self, other);
        a.lo.cmp(&b.lo)
    }

    /// The negation.
    pub fn neg(&self) -> Self {
        let defining = self.defining.compose_scaled_power(&-Rational::one(), 1).primitive();
        AlgebraicNumber { defining, lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    /// The reciprocal. Panics on zero.
    pub fn recip(&self) -> Self {
        let (cur, s) = self.sign_separated();
        assert!(s != Sign::Zero, "reciprocal of zero");
        if let Some(r) = cur.as_rational() {
            return Self::from_rational(r.recip());
        }
        let defining = cur.defining.reverse().primitive();
        AlgebraicNumber { defining, lo: cur.hi.recip(), hi: cur.lo.recip() }
    }

    /// The real `n`-th root for odd `n`.
    pub fn odd_root(&self, n: u32) -> Self {
        assert!(n % 2 == 1, "odd root index required");
        if n == 1 {
            return self.clone();
        }
        let (w, s) = self.sign_separated();
        if s == Sign::Zero {
            return Self::from_rational(Rational::zero());
        }
        if let Some(r) = w.as_rational() {
            if let Some(root) = exact_odd_root(&r, n) {
                return Self::from_rational(root);
            }
        }
        let mut f = w.defining.clone();
        while f.coeff(0).is_zero() {
            f = f.exact_div(&UniPoly::var()).expect("divisible by u");
        }
        let d = f.compose_scaled_power(&Rational::one(), n as usize).primitive();
        let seq = sturm_sequence(&d);
        let mut w = w;
        let mut eps = Rational::one();
        loop {
            let (a, _) = odd_root_bracket(&w.lo, n, &eps);
            let (_, b) = odd_root_bracket(&w.hi, n, &eps);
            let da = d.sign_at(&a);
            let db = d.sign_at(&b);
            if da != Sign::Zero && db != Sign::Zero && count_roots_in(&seq, &a, &b) == 1 {
                return Self::from_isolating(d, a, b).detect_rational();
            }
            w = w.refine();
            if let Some(r) = w.as_rational() {
                return Self::from_rational(r).odd_root(n);
            }
            eps /= two();
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {} in ({}, {})", self.defining.display_var("z"), self.lo, self.hi),
        }
    }
}

fn exact_odd_root(r: &Rational, n: u32) -> Option<Rational> {
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let a = v.abs().nth_root(n);
        let a = if v.is_negative() { -a } else { a };
        (num_traits::pow(a.clone(), n as usize) == *v).then_some(a)
    };
    Some(Rational::new(root_int(r.numer())?, root_int(r.denom())?))
}

/// Rationals `a <= b` with `a^n <= v <= b^n` and `b - a <= eps`, for odd `n`.
fn odd_root_bracket(v: &Rational, n: u32, eps: &Rational) -> (Rational, Rational) {
    let big = v.abs() + Rational::one();
    let (mut a, mut b) = (-big.clone(), big);
    while &b - &a > *eps {
        let m = (&a + &b) / two();
        let mn = num_traits::pow(m.clone(), n as usize);
        match mn.cmp(v) {
            Ordering::Equal => return (m.clone(), m),
            Ordering::Less => a = m,
            Ordering::Greater => b = m,
        }
    }
    (a, b)
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    let zero = Rational::zero();
    if *lo < zero && zero < *hi {
        return zero;
    }
    if *hi <= zero {
        return -simplest_nonneg(&-hi.clone(), &-lo.clone());
    }
    simplest_nonneg(lo, hi)
}

fn simplest_nonneg(x: &Rational, y: &Rational) -> Rational {
    let n = x.floor();
    let next = &n + Rational::one();
    if next < *y {
        return next;
    }
    if *x == n {
        let k = (Rational::one() / (y - &n)).floor() + Rational::one();
        return n + k.recip();
    }
    let inner = simplest_nonneg(&(y - &n).recip(), &(x - &n).recip());
    n + inner.recip()
}
