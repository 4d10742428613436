//! Truncated substitution `p(x(t), y(t))` over pluggable coefficient rings.
//!
//! Curve coefficients may be rationals, elements of `Q[θ]` for a real
//! algebraic `θ`, or polynomials in undetermined coefficients over either.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::poly::{BivariatePoly, Rational, Sign, UniPoly};
use crate::realroots::AlgebraicNumber;

/// A commutative ring with a context object.
pub trait CoeffRing {
    type Elem: Clone + Debug + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Structural zero test; `false` does not imply a nonzero value at `θ`.
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn one(&self) -> Self::Elem {
        self.from_rational(&Rational::one())
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.from_rational(&-Rational::one()))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, a: &Self::Elem, r: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(r))
    }
}

/// The field of rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// `Q[θ]` modulo the square-free defining polynomial of `θ`, or plain `Q` when `θ` is absent.
///
/// Elements are polynomials in `θ` of degree below the defining polynomial's.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaField {
    theta: Option<AlgebraicNumber>,
}

impl ThetaField {
    pub fn rational() -> Self {
        ThetaField { theta: None }
    }

    pub fn new(theta: Option<AlgebraicNumber>) -> Self {
        let theta = theta.filter(|t| !t.is_rational());
        ThetaField { theta }
    }

    pub fn theta(&self) -> Option<&AlgebraicNumber> {
        self.theta.as_ref()
    }

    /// The generator `θ` itself.
    pub fn generator(&self) -> UniPoly {
        match &self.theta {
            Some(_) => self.reduce(UniPoly::var()),
            None => panic!("rational field has no generator"),
        }
    }

    pub fn reduce(&self, e: UniPoly) -> UniPoly {
        match &self.theta {
            Some(t) => e.rem(t.defining()),
            None => e,
        }
    }

    /// Exact sign of the element's value at `θ`.
    pub fn sign(&self, e: &UniPoly) -> Sign {
        match &self.theta {
            Some(t) => t.sign_of(e),
            None => Sign::of(&e.coeff(0)),
        }
    }

    /// Value with `θ` replaced by a rational approximation.
    pub fn eval_at(&self, e: &UniPoly, theta_approx: &Rational) -> Rational {
        match &self.theta {
            Some(_) => e.eval(theta_approx),
            None => e.coeff(0),
        }
    }
}

impl CoeffRing for ThetaField {
    type Elem = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero()
    }
    fn from_rational(&self, r: &Rational) -> UniPoly {
        UniPoly::constant(r.clone())
    }
    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_constant() || b.is_constant() {
            return a * b;
        }
        self.reduce(a * b)
    }
    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }
}

/// Sparse multivariate polynomial: exponent vector to nonzero coefficient.
pub type MPoly<E> = BTreeMap<Vec<u16>, E>;

/// Polynomials in `nvars` unknowns over a base ring.
#[derive(Clone, Debug)]
pub struct MPolyRing<R: CoeffRing> {
    pub nvars: usize,
    pub base: R,
}

impl<R: CoeffRing> MPolyRing<R> {
    pub fn new(nvars: usize, base: R) -> Self {
        MPolyRing { nvars, base }
    }

    pub fn constant(&self, c: R::Elem) -> MPoly<R::Elem> {
        let mut m = MPoly::new();
        if !self.base.is_zero(&c) {
            m.insert(vec![0; self.nvars], c);
        }
        m
    }

    /// The unknown with index `i`.
    pub fn var(&self, i: usize) -> MPoly<R::Elem> {
        let mut e = vec![0u16; self.nvars];
        e[i] = 1;
        let mut m = MPoly::new();
        m.insert(e, self.base.one());
        m
    }

    /// The constant term when the polynomial has no other terms.
    pub fn as_constant(&self, a: &MPoly<R::Elem>) -> Option<R::Elem> {
        match a.len() {
            0 => Some(self.base.zero()),
            1 => {
                let (e, c) = a.iter().next().expect("one entry");
                e.iter().all(|&d| d == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Indices of unknowns that occur.
    pub fn vars_in(&self, a: &MPoly<R::Elem>) -> Vec<usize> {
        (0..self.nvars).filter(|&i| a.keys().any(|e| e[i] > 0)).collect()
    }

    /// Replaces unknown `i` by the polynomial `v`.
    pub fn substitute(&self, a: &MPoly<R::Elem>, i: usize, v: &MPoly<R::Elem>) -> MPoly<R::Elem> {
        let maxd = a.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
        let mut pows = vec![self.one()];
        for d in 1..=maxd {
            let next = self.mul(&pows[d - 1], v);
            pows.push(next);
        }
        let mut out = MPoly::new();
        for (e, c) in a {
            let mut rest = e.clone();
            let d = rest[i] as usize;
            rest[i] = 0;
            let mut mono = MPoly::new();
            mono.insert(rest, c.clone());
            let term = self.mul(&mono, &pows[d]);
            out = self.add(&out, &term);
        }
        out
    }
}

impl<R: CoeffRing> CoeffRing for MPolyRing<R> {
    type Elem = MPoly<R::Elem>;
    fn zero(&self) -> Self::Elem {
        MPoly::new()
    }
    fn from_rational(&self, r: &Rational) -> Self::Elem {
        self.constant(self.base.from_rational(r))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        for (e, c) in b {
            match out.get_mut(e) {
                Some(v) => {
                    let s = self.base.add(v, c);
                    if self.base.is_zero(&s) {
                        out.remove(e);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    out.insert(e.clone(), c.clone());
                }
            }
        }
        out
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out: Self::Elem = MPoly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = self.base.mul(ca, cb);
                if self.base.is_zero(&c) {
                    continue;
                }
                match out.get_mut(&e) {
                    Some(v) => {
                        let s = self.base.add(v, &c);
                        if self.base.is_zero(&s) {
                            out.remove(&e);
                        } else {
                            *v = s;
                        }
                    }
                    None => {
                        out.insert(e, c);
                    }
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
}

/// Product of two truncated series, keeping orders `0..=order`.
pub fn series_mul<R: CoeffRing>(ring: &R, a: &[R::Elem], b: &[R::Elem], order: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ring.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if ring.is_zero(bj) {
                continue;
            }
            let prod = ring.mul(ai, bj);
            out[i + j] = ring.add(&out[i + j], &prod);
        }
    }
    out
}

fn series_order<R: CoeffRing>(ring: &R, a: &[R::Elem]) -> Option<usize> {
    a.iter().position(|c| !ring.is_zero(c))
}

/// Coefficients of `t^0 ..= t^order` in `p(x(t), y(t))`.
///
/// `x` and `y` are dense coefficient lists in `t`.
pub fn expand<R: CoeffRing>(ring: &R, p: &BivariatePoly, x: &[R::Elem], y: &[R::Elem], order: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); order + 1];
    if p.is_zero() {
        return out;
    }
    let (ma, mb) = p.max_exponents();
    let ox = series_order(ring, x);
    let oy = series_order(ring, y);
    let low = |a: u32, b: u32| -> Option<usize> {
        let xa = if a == 0 { Some(0) } else { ox.map(|o| o * a as usize) };
        let yb = if b == 0 { Some(0) } else { oy.map(|o| o * b as usize) };
        Some(xa? + yb?)
    };
    let powers = |s: &[R::Elem], n: u32| -> Vec<Vec<R::Elem>> {
        let mut v: Vec<Vec<R::Elem>> = Vec::with_capacity(n as usize + 1);
        let mut unit = vec![ring.zero(); order + 1];
        unit[0] = ring.one();
        v.push(unit);
        for i in 1..=n as usize {
            let next = series_mul(ring, &v[i - 1], s, order);
            v.push(next);
        }
        v
    };
    let needed_a = p.terms().filter(|&((a, b), _)| low(a, b).is_some_and(|l| l <= order)).map(|((a, _), _)| a).max();
    let needed_b = p.terms().filter(|&((a, b), _)| low(a, b).is_some_and(|l| l <= order)).map(|((_, b), _)| b).max();
    let (Some(na), Some(nb)) = (needed_a, needed_b) else {
        return out;
    };
    let xp = powers(x, na.min(ma));
    let yp = powers(y, nb.min(mb));
    for ((a, b), c) in p.terms() {
        if !low(a, b).is_some_and(|l| l <= order) {
            continue;
        }
        let prod = series_mul(ring, &xp[a as usize], &yp[b as usize], order);
        let cc = ring.from_rational(c);
        for (slot, v) in out.iter_mut().zip(prod.iter()) {
            if !ring.is_zero(v) {
                *slot = ring.add(slot, &ring.mul(v, &cc));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse};

    #[test]
    fn rational_expansion_matches_exact_substitution() {
        let p = parse("(x-y)^6 - (x-y)^2*x^5 + x^8").unwrap();
        let x = vec![int(0), int(0), int(1), int(2)];
        let y = vec![int(0), int(0), int(1)];
        let coeffs = expand(&Rationals, &p, &x, &y, 20);
        let exact = p.substitute_curve(&UniPoly::from_coeffs(x), &UniPoly::from_coeffs(y));
        for (i, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, exact.coeff(i), "order {i}");
        }
    }

    #[test]
    fn theta_field_arithmetic() {
        let sqrt2 = AlgebraicNumber::from_interval(&UniPoly::from_i64s(&[-2, 0, 1]), int(1), int(2)).unwrap();
        let f = ThetaField::new(Some(sqrt2));
        let th = f.generator();
        let sq = f.mul(&th, &th);
        assert_eq!(sq, UniPoly::constant(int(2)));
        assert_eq!(f.sign(&f.sub(&th, &f.from_rational(&int(1)))), Sign::Positive);
        assert_eq!(f.sign(&f.sub(&sq, &f.from_rational(&int(2)))), Sign::Zero);
    }

    #[test]
    fn mpoly_substitution() {
        let r = MPolyRing::new(2, Rationals);
        let c = r.var(0);
        let d = r.var(1);
        let diff = r.sub(&c, &d);
        let sq = r.mul(&diff, &diff);
        let back = r.substitute(&sq, 0, &d);
        assert!(back.is_empty());
        assert_eq!(r.vars_in(&sq), vec![0, 1]);
        assert_eq!(r.as_constant(&r.from_rational(&int(3))), Some(int(3)));
    }
}
