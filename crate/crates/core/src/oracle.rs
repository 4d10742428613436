//! Brute-force checks for tests: a sampling falsifier and grid root counting.
//!
//! Points are dyadic rationals evaluated exactly in integer arithmetic. No
//! sign logic is shared with the decision engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::southwest_edges;
use crate::poly::{BivariatePoly, Rational, UniPoly};

/// Smallest sample value seen and where.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub minimum: Rational,
    pub point: (Rational, Rational),
    pub samples: usize,
}

impl SampleReport {
    /// The sample point when its value is negative.
    pub fn negative(&self) -> Option<((Rational, Rational), Rational)> {
        self.minimum.is_negative().then(|| (self.point.clone(), self.minimum.clone()))
    }
}

/// `p` scaled to integer coefficients, for evaluation at `(X / 2^s, Y / 2^s)`.
struct DyadicEval {
    /// `(alpha, beta, c)` with integer `c`.
    terms: Vec<(u32, u32, BigInt)>,
    /// Common denominator removed from the coefficients.
    denom: BigInt,
    deg: u32,
}

impl DyadicEval {
    fn new(p: &BivariatePoly) -> Self {
        let denom = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|((a, b), c)| (a, b, c.numer() * (&denom / c.denom())))
            .collect();
        DyadicEval { terms, denom, deg: p.total_degree() }
    }

    /// `p(X / 2^s, Y / 2^s) * denom * 2^(s deg)` as an integer.
    fn scaled(&self, x: &BigInt, y: &BigInt, s: u32) -> BigInt {
        let mut acc = BigInt::zero();
        for (a, b, c) in &self.terms {
            let shift = (s * (self.deg - a - b)) as usize;
            acc += (c * num_traits::pow(x.clone(), *a as usize) * num_traits::pow(y.clone(), *b as usize)) << shift;
        }
        acc
    }

    fn value(&self, scaled: BigInt, s: u32) -> Rational {
        Rational::new(scaled, &self.denom << (s * self.deg) as usize)
    }
}

fn dyadic(v: &BigInt, s: u32) -> Rational {
    Rational::new(v.clone(), BigInt::one() << s as usize)
}

/// Ray and grid magnitudes for `C`.
const MAGNITUDES: [(i64, u32); 5] = [(1, 0), (1, 1), (3, 1), (3, 2), (5, 2)];

/// Searches for a point with `0 < |x|, |y| <= radius` where `p < 0`.
///
/// Rays `(C1 q^A1, C2 q^A2)` cover every face normal of `p` plus a few small
/// normals, signs and magnitudes of `C`, and dyadic `q <= radius`. The rest of
/// the `n` samples form a uniform dyadic grid. Stops at the first negative value.
pub fn falsify_local_min(p: &BivariatePoly, radius: &Rational, n: usize) -> SampleReport {
    assert!(radius.is_positive(), "radius must be positive");
    let ev = DyadicEval::new(p);
    let mut best: Option<(Rational, (Rational, Rational))> = None;
    let mut samples = 0usize;
    let consider = |v: Rational, pt: (Rational, Rational), best: &mut Option<(Rational, (Rational, Rational))>| {
        if best.as_ref().is_none_or(|(m, _)| v < *m) {
            *best = Some((v, pt));
        }
    };

    // Largest k0 with 2^-k0 <= radius.
    let mut k0 = 0u32;
    while Rational::new(BigInt::one(), BigInt::one() << k0 as usize) > *radius {
        k0 += 1;
    }
    let mut normals: Vec<(u32, u32)> = southwest_edges(p).iter().filter_map(|f| f.normal).map(|a| (a.a1(), a.a2())).collect();
    normals.extend([(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]);
    normals.sort();
    normals.dedup();
    let ray_budget = n / 4;
    'rays: for k in k0..k0 + 24 {
        for &(a1, a2) in &normals {
            for &(m1, e1) in &MAGNITUDES {
                for &(m2, e2) in &MAGNITUDES {
                    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        if samples >= ray_budget {
                            break 'rays;
                        }
                        // x = s1 m1 2^-e1 2^(-k a1), y = s2 m2 2^-e2 2^(-k a2).
                        let sx = e1 + k * a1;
                        let sy = e2 + k * a2;
                        let s = sx.max(sy);
                        let x = BigInt::from(s1 * m1) << (s - sx) as usize;
                        let y = BigInt::from(s2 * m2) << (s - sy) as usize;
                        let v = ev.value(ev.scaled(&x, &y, s), s);
                        samples += 1;
                        let neg = v.is_negative();
                        consider(v, (dyadic(&x, s), dyadic(&y, s)), &mut best);
                        if neg {
                            break 'rays;
                        }
                    }
                }
            }
        }
    }
    if best.as_ref().is_some_and(|(m, _)| m.is_negative()) || samples >= n {
        let (minimum, point) = best.unwrap_or((Rational::zero(), (Rational::zero(), Rational::zero())));
        return SampleReport { minimum, point, samples };
    }

    // Grid points (i, j) / 2^s with |i|, |j| <= half and half / 2^s <= radius.
    let side = (((n - samples) as f64).sqrt() as i64).max(2) | 1;
    let half = side / 2;
    let mut s = k0;
    while BigInt::from(half) > (BigInt::one() << (s - k0) as usize) {
        s += 1;
    }
    let rows: Vec<i64> = (-half..=half).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = rows.len().div_ceil(threads);
    let results: Vec<Option<(BigInt, i64, i64)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = rows
            .chunks(chunk)
            .map(|rs| {
                let ev = &ev;
                scope.spawn(move || grid_rows(ev, rs, half, s))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("grid worker")).collect()
    });
    samples += (side * side) as usize;
    let grid_best = results.into_iter().flatten().min_by(|a, b| a.0.cmp(&b.0));
    if let Some((v, i, j)) = grid_best {
        let value = ev.value(v, s);
        consider(value, (dyadic(&BigInt::from(i), s), dyadic(&BigInt::from(j), s)), &mut best);
    }
    let (minimum, point) = best.unwrap_or((Rational::zero(), (Rational::zero(), Rational::zero())));
    SampleReport { minimum, point, samples }
}

/// Minimum scaled value over some grid rows, via Horner in `y` per row.
fn grid_rows(ev: &DyadicEval, rows: &[i64], half: i64, s: u32) -> Option<(BigInt, i64, i64)> {
    let max_b = ev.terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut best: Option<(BigInt, i64, i64)> = None;
    for &i in rows {
        // q_b = sum_a c x^a 2^(s (deg - a - b)), a polynomial in Y.
        let mut q = vec![BigInt::zero(); max_b + 1];
        let xi = BigInt::from(i);
        for (a, b, c) in &ev.terms {
            let shift = (s * (ev.deg - a - b)) as usize;
            q[*b as usize] += (c * num_traits::pow(xi.clone(), *a as usize)) << shift;
        }
        for j in -half..=half {
            let mut acc = BigInt::zero();
            for c in q.iter().rev() {
                acc = acc * j + c;
            }
            if best.as_ref().is_none_or(|(m, _, _)| acc < *m) {
                best = Some((acc, i, j));
            }
        }
    }
    best
}

/// Lower bound on the number of distinct real roots of `g` in `[lo, hi]`.
///
/// Counts sign changes and exact zeros of the square-free part on a uniform grid.
pub fn root_count_bruteforce(g: &UniPoly, lo: &Rational, hi: &Rational, steps: usize) -> usize {
    assert!(lo < hi, "empty interval");
    if g.is_constant() {
        return 0;
    }
    let f = g.exact_div(&g.gcd(&g.derivative())).expect("gcd divides").primitive_integer();
    let n = f.len() - 1;
    let h = (hi - lo) / Rational::from_integer(BigInt::from(steps.max(1)));
    // Grid points are (a + i b) / d; the sign of d^n f(x) is read off in integers.
    let d = lo.denom().lcm(h.denom());
    let a = (lo * Rational::from_integer(d.clone())).to_integer();
    let b = (&h * Rational::from_integer(d.clone())).to_integer();
    let mut dpow = vec![BigInt::one()];
    for k in 1..=n {
        dpow.push(&dpow[k - 1] * &d);
    }
    let scaled: Vec<BigInt> = (0..=n).map(|k| &f[k] * &dpow[n - k]).collect();
    let mut count = 0;
    let mut prev = 0i8;
    let mut num = a;
    for _ in 0..=steps.max(1) {
        let mut v = scaled[n].clone();
        for k in (0..n).rev() {
            v = v * &num + &scaled[k];
        }
        num += &b;
        let sign = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if sign == 0 || (prev != 0 && sign != prev) {
            count += 1;
        }
        // A zero resets the run so the change across it is not counted twice.
        prev = sign;
    }
    count
}
