//! Exact real-root isolation for univariate rational polynomials.
//!
//! Roots are isolated with Sturm sequences and bisection over exact
//! rationals. Rational roots are detected and stored with a degenerate
//! interval; irrational roots keep an open isolating interval across which
//! the defining polynomial changes sign.

mod algebraic;

use num_traits::{Signed, Zero};

use crate::poly::{Rational, Sign, UniPoly};

pub use algebraic::{simplest_rational_between, AlgebraicNumber};

/// Yun square-free decomposition.
///
/// Returns primitive square-free factors with multiplicities such that
/// `g = c * prod(f_i^m_i)` for a nonzero constant `c`. Factors are pairwise
/// coprime and listed by increasing multiplicity. Constants give an empty list.
pub fn squarefree(g: &UniPoly) -> Vec<(UniPoly, u32)> {
    assert!(!g.is_zero(), "square-free decomposition of the zero polynomial");
    let mut out = Vec::new();
    if g.is_constant() {
        return out;
    }
    let f = g.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Square-free part `g / gcd(g, g')`, primitive.
pub fn squarefree_part(g: &UniPoly) -> UniPoly {
    if g.is_constant() {
        return UniPoly::one();
    }
    let gg = g.gcd(&g.derivative());
    g.exact_div(&gg).expect("gcd divides").primitive()
}

/// Sturm sequence of `f`; remainders are rescaled by positive constants only.
pub fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone()];
    if f.is_constant() {
        return seq;
    }
    seq.push(f.derivative());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        let lc = r.lc().abs();
        seq.push((-&r).scale(&lc.recip()));
    }
    seq
}

fn variations<I: IntoIterator<Item = Sign>>(signs: I) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[UniPoly], x: &Rational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

fn variations_at_infinity(seq: &[UniPoly], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s = Sign::of(&p.lc());
        if positive || p.degree().unwrap_or(0) % 2 == 0 {
            s
        } else {
            s.mul(Sign::Negative)
        }
    }))
}

/// Number of distinct real roots of the square-free `f` in `(lo, hi]`.
pub fn count_roots_in(seq: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    variations_at(seq, lo).saturating_sub(variations_at(seq, hi))
}

/// Number of distinct real roots of `g`.
pub fn count_real_roots(g: &UniPoly) -> usize {
    if g.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(&squarefree_part(g));
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Isolates the real roots of a square-free polynomial, in increasing order.
pub fn isolate_squarefree(f: &UniPoly) -> Vec<AlgebraicNumber> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let f = f.primitive();
    let seq = sturm_sequence(&f);
    let b = f.cauchy_bound();
    let lo = -b.clone();
    let total = count_roots_in(&seq, &lo, &b);
    isolate_rec(&f, &seq, lo, b, total, &mut out);
    out.into_iter().map(|r| r.detect_rational()).collect()
}

fn isolate_rec(
    f: &UniPoly,
    seq: &[UniPoly],
    lo: Rational,
    hi: Rational,
    count: usize,
    out: &mut Vec<AlgebraicNumber>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push(single_root(f, lo, hi));
        return;
    }
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    let left = count_roots_in(seq, &lo, &mid);
    isolate_rec(f, seq, lo, mid.clone(), left, out);
    isolate_rec(f, seq, mid, hi, count - left, out);
}

/// Shrinks `(lo, hi]` holding exactly one root of `f` to a sign-change interval.
fn single_root(f: &UniPoly, mut lo: Rational, mut hi: Rational) -> AlgebraicNumber {
    if f.eval(&hi).is_zero() {
        return AlgebraicNumber::from_root_of(f.clone(), hi);
    }
    let two = Rational::from_integer(2.into());
    while f.eval(&lo).is_zero() {
        let mid = (&lo + &hi) / &two;
        let fm = f.sign_at(&mid);
        if fm == Sign::Zero {
            return AlgebraicNumber::from_root_of(f.clone(), mid);
        }
        if fm != f.sign_at(&hi) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    AlgebraicNumber::from_isolating(f.clone(), lo, hi)
}

/// A real root with its multiplicity.
#[derive(Clone, Debug)]
pub struct RootEntry {
    pub root: AlgebraicNumber,
    pub multiplicity: u32,
}

/// Real roots in increasing order with pairwise disjoint intervals.
pub type RootList = Vec<RootEntry>;

/// All real roots of `g` with multiplicities, in increasing order.
pub fn isolate_roots(g: &UniPoly) -> RootList {
    let mut entries: Vec<RootEntry> = Vec::new();
    for (f, m) in squarefree(g) {
        for root in isolate_squarefree(&f) {
            entries.push(RootEntry { root, multiplicity: m });
        }
    }
    sort_disjoint(&mut entries);
    entries
}

/// Sorts roots of pairwise coprime factors, refining until intervals are disjoint.
fn sort_disjoint(entries: &mut [RootEntry]) {
    let n = entries.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = AlgebraicNumber::separate(&entries[i].root, &entries[j].root);
            entries[i].root = a;
            entries[j].root = b;
        }
    }
    entries.sort_by(|a, b| a.root.lo().cmp(b.root.lo()).then(a.root.hi().cmp(b.root.hi())));
}

/// True iff `g >= 0` on the whole real line.
pub fn univariate_nonnegative(g: &UniPoly) -> bool {
    if g.is_zero() {
        return true;
    }
    for (f, m) in squarefree(g) {
        if m % 2 == 1 && count_real_roots(&f) > 0 {
            return false;
        }
    }
    g.lc().is_positive()
}

/// Exact sign of `h` at the algebraic number `r`.
pub fn sign_at_root(h: &UniPoly, r: &AlgebraicNumber) -> Sign {
    r.sign_of(h)
}

/// Multiplicity of `r` as a root of `g` (zero when `g(r) != 0`).
pub fn multiplicity_in(g: &UniPoly, r: &AlgebraicNumber) -> u32 {
    assert!(!g.is_zero(), "multiplicity in the zero polynomial");
    for (f, m) in squarefree(g) {
        if r.sign_of(&f) == Sign::Zero {
            return m;
        }
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn squarefree_examples() {
        let f = up(&[1, -1]).pow(2);
        assert_eq!(squarefree(&f), vec![(up(&[-1, 1]), 2)]);
        let f = up(&[1, -1]).pow(6);
        assert_eq!(squarefree(&f), vec![(up(&[-1, 1]), 6)]);
        assert_eq!(squarefree(&up(&[1, 0, 1])), vec![(up(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn squarefree_mixed() {
        let f = &(&up(&[1, 1]) * &up(&[-2, 1]).pow(2)) * &up(&[0, 1]).pow(3);
        let sf = squarefree(&f);
        assert_eq!(sf, vec![(up(&[1, 1]), 1), (up(&[-2, 1]), 2), (up(&[0, 1]), 3)]);
    }

    #[test]
    fn isolate_examples() {
        assert!(isolate_roots(&up(&[2, 3, 2])).is_empty());
        let r = isolate_roots(&up(&[1, -2, 1]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].root.as_rational(), Some(int(1)));
        assert_eq!(r[0].multiplicity, 2);
        let r = isolate_roots(&up(&[0, -1, 0, 1]));
        let vals: Vec<_> = r.iter().map(|e| e.root.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![int(-1), int(0), int(1)]);
        assert!(r.iter().all(|e| e.multiplicity == 1));
    }

    #[test]
    fn isolates_irrational_roots() {
        let r = isolate_roots(&up(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        assert!(r[0].root.as_rational().is_none());
        assert!(r[0].root.hi() < r[1].root.lo());
        assert_eq!(r[1].root.sign(), Sign::Positive);
        assert_eq!(r[0].root.sign(), Sign::Negative);
    }

    #[test]
    fn nonnegativity_examples() {
        let g = UniPoly::from_coeffs(vec![int(1), rat(-199, 100), int(1)]);
        assert!(univariate_nonnegative(&g));
        let g = UniPoly::from_coeffs(vec![int(1), rat(-201, 100), int(1)]);
        assert!(!univariate_nonnegative(&g));
        assert!(!univariate_nonnegative(&up(&[0, 0, -1])));
        assert!(univariate_nonnegative(&up(&[1, -1]).pow(2)));
    }

    #[test]
    fn sign_at_root_examples() {
        let r = isolate_roots(&up(&[1, 1]).pow(2))[0].root.clone();
        let h = UniPoly::from_coeffs(vec![rat(297, 100), int(3)]);
        assert_eq!(sign_at_root(&h, &r), Sign::Negative);
        assert_eq!(sign_at_root(&up(&[3, 3]), &r), Sign::Zero);
        assert_eq!(sign_at_root(&up(&[-1]), &r), Sign::Negative);
    }

    #[test]
    fn sign_at_irrational_root() {
        let r = isolate_roots(&up(&[-2, 0, 1]))[1].root.clone();
        assert_eq!(sign_at_root(&up(&[-2, 0, 1]), &r), Sign::Zero);
        assert_eq!(sign_at_root(&UniPoly::from_coeffs(vec![rat(-141, 100), int(1)]), &r), Sign::Positive);
        assert_eq!(sign_at_root(&UniPoly::from_coeffs(vec![rat(-1415, 1000), int(1)]), &r), Sign::Negative);
        let shared = &up(&[-2, 0, 1]) * &up(&[5, 1]);
        assert_eq!(sign_at_root(&shared, &r), Sign::Zero);
    }

    #[test]
    fn multiplicity_examples() {
        let one_root = AlgebraicNumber::from_rational(int(1));
        assert_eq!(multiplicity_in(&up(&[1, -1]).pow(6), &one_root), 6);
        assert_eq!(multiplicity_in(&-&up(&[1, -1]).pow(2), &one_root), 2);
        assert_eq!(multiplicity_in(&up(&[1, 0, 1]), &one_root), 0);
    }

    #[test]
    fn counts_real_roots() {
        assert_eq!(count_real_roots(&up(&[0, -1, 0, 1])), 3);
        assert_eq!(count_real_roots(&up(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&up(&[1, -1]).pow(4)), 1);
    }
}
