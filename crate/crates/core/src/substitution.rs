//! Bounded search for descent curves with undetermined coefficients.
//!
//! Curves have the shape `x = c0 t^(nu A1) + sum c_i t^(nu A1 + i)`,
//! `y = d0 t^(nu A2) + sum d_i t^(nu A2 + i)` with `c0^e1 d0^e2 = u0` for a
//! root `u0` of the main characteristic polynomial. The search is sound but
//! incomplete: it only ever returns verified certificates.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{Certificate, CertificateKind, Curve};
use crate::geometry::NormalVector;
use crate::poly::{rat, BivariatePoly, Rational, Sign, UniPoly};
use crate::quasiform::decompose;
use crate::realroots::AlgebraicNumber;
use crate::series::{expand, CoeffRing, MPoly, MPolyRing, ThetaField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("leading pairs need a nonzero root")]
    ZeroRoot,
}

/// Which parity case produced a leading pair set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairCase {
    /// `e1` even: `{(1, u0^(1/e2)), (-1, u0^(1/e2))}`.
    #[serde(rename = "1")]
    One,
    /// `e2` even: `{(u0^(1/e1), 1), (u0^(1/e1), -1)}`.
    #[serde(rename = "2")]
    Two,
    /// Both odd: `{(1, r), (-1, -r)}` with `r = u0^(1/e2)`.
    #[serde(rename = "3a")]
    ThreeA,
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairCase::One => "1",
            PairCase::Two => "2",
            PairCase::ThreeA => "3a",
        })
    }
}

/// Two candidate leading pairs `(c0, d0)`, as polynomials in a common `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingPairSet {
    pub case: PairCase,
    pub theta: Option<AlgebraicNumber>,
    pub pairs: [(UniPoly, UniPoly); 2],
}

/// The candidate set for `A` and a nonzero root `u0`, chosen by the parities of `e = (-A2, A1)`.
pub fn leading_pair_candidates(a: NormalVector, u0: &AlgebraicNumber) -> Result<LeadingPairSet, SubstitutionError> {
    if u0.sign() == Sign::Zero {
        return Err(SubstitutionError::ZeroRoot);
    }
    let one = UniPoly::one();
    let minus = -UniPoly::one();
    // Odd roots of u0 are real; the value is θ when irrational.
    let root_poly = |r: &AlgebraicNumber| -> (Option<AlgebraicNumber>, UniPoly) {
        match r.as_rational() {
            Some(q) => (None, UniPoly::constant(q)),
            None => (Some(r.clone()), UniPoly::var()),
        }
    };
    if a.a2().is_multiple_of(2) {
        let (theta, r) = root_poly(&u0.odd_root(a.a1()));
        Ok(LeadingPairSet { case: PairCase::One, theta, pairs: [(one, r.clone()), (minus, r)] })
    } else if a.a1().is_multiple_of(2) {
        let (theta, r) = root_poly(&u0.recip().odd_root(a.a2()));
        Ok(LeadingPairSet { case: PairCase::Two, theta, pairs: [(r.clone(), one), (r, minus)] })
    } else {
        let (theta, r) = root_poly(&u0.odd_root(a.a1()));
        Ok(LeadingPairSet { case: PairCase::ThreeA, theta, pairs: [(one, r.clone()), (minus, -r)] })
    }
}

/// A curve shape with `unknowns` undetermined coefficients per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveTemplate {
    pub normal: NormalVector,
    pub nu: u32,
    pub theta: Option<AlgebraicNumber>,
    pub c0: UniPoly,
    pub d0: UniPoly,
    pub unknowns: usize,
    /// Highest order of `t` that is expanded.
    pub order: usize,
}

impl CurveTemplate {
    pub fn field(&self) -> ThetaField {
        ThetaField::new(self.theta.clone())
    }

    /// Ring of polynomials in `c_1..c_n, d_1..d_n` (indices `0..n` and `n..2n`).
    pub fn ring(&self) -> MPolyRing<ThetaField> {
        MPolyRing::new(2 * self.unknowns, self.field())
    }

    fn series(&self, lead: &UniPoly, start: usize, first_var: usize) -> Vec<MPoly<UniPoly>> {
        let ring = self.ring();
        let mut s = vec![ring.zero(); self.order + 1];
        if start <= self.order {
            s[start] = ring.constant(lead.clone());
        }
        for i in 1..=self.unknowns {
            if start + i <= self.order {
                s[start + i] = ring.var(first_var + i - 1);
            }
        }
        s
    }

    pub fn x_start(&self) -> usize {
        (self.nu * self.normal.a1()) as usize
    }

    pub fn y_start(&self) -> usize {
        (self.nu * self.normal.a2()) as usize
    }

    /// The curve with every unknown replaced by its value in `Q[θ]`.
    pub fn instantiate(&self, values: &[UniPoly]) -> Curve {
        let (xs, ys) = (self.x_start() as u32, self.y_start() as u32);
        let n = self.unknowns;
        let mut x = vec![(xs, self.c0.clone())];
        let mut y = vec![(ys, self.d0.clone())];
        for i in 0..n {
            x.push((xs + 1 + i as u32, values[i].clone()));
            y.push((ys + 1 + i as u32, values[n + i].clone()));
        }
        Curve::new(self.theta.clone(), x, y)
    }

    /// Display names of the unknowns.
    pub fn unknown_name(&self, i: usize) -> String {
        if i < self.unknowns {
            format!("c{}", i + 1)
        } else {
            format!("d{}", i - self.unknowns + 1)
        }
    }
}

/// Coefficients of `t^0 ..= t^order` in `p(x(t), y(t))` as polynomials in the unknowns.
pub fn expand_template(p: &BivariatePoly, tpl: &CurveTemplate) -> Vec<MPoly<UniPoly>> {
    let ring = tpl.ring();
    let x = tpl.series(&tpl.c0, tpl.x_start(), 0);
    let y = tpl.series(&tpl.d0, tpl.y_start(), tpl.unknowns);
    expand(&ring, p, &x, &y, tpl.order)
}

/// Limits of the search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nu: u32,
    /// Cap on the expansion order; the default is `nu` times the largest level.
    pub max_order: Option<usize>,
    #[serde(with = "grid_strings")]
    pub grid: Vec<Rational>,
    /// Undetermined coefficients per coordinate.
    pub unknowns: usize,
    /// Search-tree nodes per template.
    pub max_nodes: usize,
}

mod grid_strings {
    use super::Rational;
    use crate::poly::parse_rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(g.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {s:?}"))))
            .collect()
    }
}

/// The grid `{0, 1, -1, 2, -2, 1/2, -1/2}`.
pub fn default_grid() -> Vec<Rational> {
    vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2)]
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nu: 3, max_order: None, grid: default_grid(), unknowns: 2, max_nodes: 20_000 }
    }
}

/// One explored template.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub normal: NormalVector,
    /// Decimal approximation of the root.
    pub u0: f64,
    pub nu: u32,
    pub case: PairCase,
    pub c0: String,
    pub d0: String,
    pub order: usize,
    pub nodes: usize,
    pub found: bool,
}

/// What the search explored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub attempts: Vec<Attempt>,
    pub budget_exhausted: bool,
}

struct Dfs<'a> {
    ring: MPolyRing<ThetaField>,
    grid: &'a [Rational],
    nodes: usize,
    max_nodes: usize,
}

type Assignment = Vec<(usize, Rational)>;

impl Dfs<'_> {
    fn field(&self) -> &ThetaField {
        &self.ring.base
    }

    fn eval(&self, c: &MPoly<UniPoly>, asg: &[(usize, Rational)]) -> MPoly<UniPoly> {
        let mut out = c.clone();
        for (i, v) in asg {
            let k = self.ring.from_rational(v);
            out = self.ring.substitute(&out, *i, &k);
        }
        out
    }

    fn grid_assignments(&self, vars: &[usize]) -> Vec<Assignment> {
        let mut out: Vec<Assignment> = vec![vec![]];
        for &v in vars {
            out = out
                .into_iter()
                .flat_map(|a| {
                    self.grid.iter().map(move |g| {
                        let mut b = a.clone();
                        b.push((v, g.clone()));
                        b
                    })
                })
                .collect();
        }
        out
    }

    /// `v = -coef_(k-1) / (k coef_k)` for each unknown `v`, kept when it annihilates `c`.
    fn power_solutions(&self, c: &MPoly<UniPoly>) -> Vec<(usize, MPoly<UniPoly>)> {
        let mut out = Vec::new();
        for v in self.ring.vars_in(c) {
            let k = c.keys().map(|e| e[v]).max().unwrap_or(0);
            let part = |d: u16| -> MPoly<UniPoly> {
                c.iter()
                    .filter(|(e, _)| e[v] == d)
                    .map(|(e, x)| {
                        let mut e = e.clone();
                        e[v] = 0;
                        (e, x.clone())
                    })
                    .collect()
            };
            let Some(top) = self.ring.as_constant(&part(k)) else { continue };
            if !top.is_constant() || top.is_zero() {
                continue;
            }
            let inv = Rational::one() / (top.coeff(0) * Rational::from_integer(k.into()));
            let sol = self.ring.scale(&part(k - 1), &-inv);
            if self.ring.substitute(c, v, &sol).is_empty() {
                out.push((v, sol));
            }
        }
        out
    }

    fn apply(&self, v: &[MPoly<UniPoly>], i: usize, e: &MPoly<UniPoly>) -> Vec<MPoly<UniPoly>> {
        v.iter().map(|c| self.ring.substitute(c, i, e)).collect()
    }

    fn apply_all(&self, v: &[MPoly<UniPoly>], asg: &[(usize, Rational)]) -> Vec<MPoly<UniPoly>> {
        v.iter().map(|c| self.eval(c, asg)).collect()
    }

    /// Returns the values of the unknowns once a negative leading coefficient is reached.
    fn run(&mut self, coeffs: Vec<MPoly<UniPoly>>, values: Vec<MPoly<UniPoly>>, start: usize) -> Option<Vec<MPoly<UniPoly>>> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        for i in start..coeffs.len() {
            let c = &coeffs[i];
            if c.is_empty() {
                continue;
            }
            if let Some(k) = self.ring.as_constant(c) {
                match self.field().sign(&k) {
                    Sign::Negative => return Some(values),
                    Sign::Positive => return None,
                    Sign::Zero => continue,
                }
            }
            let vars = self.ring.vars_in(c);
            let grid = self.grid_assignments(&vars);
            let mut zeros = Vec::new();
            for asg in grid {
                let val = self.eval(c, &asg);
                let k = self.ring.as_constant(&val).expect("all unknowns assigned");
                match self.field().sign(&k) {
                    Sign::Negative => return Some(self.apply_all(&values, &asg)),
                    Sign::Zero => zeros.push(asg),
                    Sign::Positive => {}
                }
            }
            for (v, sol) in self.power_solutions(c) {
                let next = self.apply(&coeffs, v, &sol);
                let vals = self.apply(&values, v, &sol);
                if let Some(r) = self.run(next, vals, i) {
                    return Some(r);
                }
            }
            for asg in zeros {
                let next = self.apply_all(&coeffs, &asg);
                let vals = self.apply_all(&values, &asg);
                if let Some(r) = self.run(next, vals, i) {
                    return Some(r);
                }
                if self.nodes > self.max_nodes {
                    return None;
                }
            }
            return None;
        }
        None
    }
}

/// Searches one template; returns the instantiated curve and the node count.
pub fn search_template(p: &BivariatePoly, tpl: &CurveTemplate, budget: &Budget) -> (Option<Curve>, usize) {
    let ring = tpl.ring();
    let coeffs = expand_template(p, tpl);
    let values: Vec<MPoly<UniPoly>> = (0..2 * tpl.unknowns).map(|i| ring.var(i)).collect();
    let mut dfs = Dfs { ring: ring.clone(), grid: &budget.grid, nodes: 0, max_nodes: budget.max_nodes };
    let found = dfs.run(coeffs, values, 0);
    let curve = found.map(|vals| {
        // Unknowns still free are set to zero.
        let zero = ring.zero();
        let concrete: Vec<UniPoly> = vals
            .iter()
            .map(|v| {
                let mut v = v.clone();
                for i in 0..2 * tpl.unknowns {
                    v = ring.substitute(&v, i, &zero);
                }
                ring.as_constant(&v).expect("all unknowns eliminated")
            })
            .collect();
        tpl.instantiate(&concrete)
    });
    (curve, dfs.nodes)
}

/// Tries every face, root, `nu` and leading pair in order until a verified certificate appears.
pub fn search_descent(
    p: &BivariatePoly,
    faces: &[(NormalVector, Vec<AlgebraicNumber>)],
    budget: &Budget,
) -> (Option<Certificate>, SearchReport) {
    let mut report = SearchReport::default();
    for (a, roots) in faces {
        let max_level = decompose(p, *a).levels().last().copied().unwrap_or(0) as usize;
        for u0 in roots {
            let Ok(set) = leading_pair_candidates(*a, u0) else { continue };
            for nu in 1..=budget.max_nu {
                let mut order = nu as usize * max_level;
                if let Some(cap) = budget.max_order {
                    order = order.min(cap);
                }
                for (c0, d0) in &set.pairs {
                    let tpl = CurveTemplate {
                        normal: *a,
                        nu,
                        theta: set.theta.clone(),
                        c0: c0.clone(),
                        d0: d0.clone(),
                        unknowns: budget.unknowns,
                        order,
                    };
                    let (curve, nodes) = search_template(p, &tpl, budget);
                    if nodes > budget.max_nodes {
                        report.budget_exhausted = true;
                    }
                    let cert = curve.and_then(|c| Certificate::build(p, CertificateKind::CurveDescent, c));
                    let show = |e: &UniPoly| if e.is_constant() { e.coeff(0).to_string() } else { e.display_var("θ") };
                    report.attempts.push(Attempt {
                        normal: *a,
                        u0: u0.to_f64(),
                        nu,
                        case: set.case,
                        c0: show(c0),
                        d0: show(d0),
                        order,
                        nodes,
                        found: cert.is_some(),
                    });
                    if cert.is_some() {
                        return (cert, report);
                    }
                }
            }
        }
    }
    (None, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::verify_certificate;
    use crate::poly::{int, parse};

    fn nv(a: u32, b: u32) -> NormalVector {
        NormalVector::new(a, b).unwrap()
    }

    fn example6() -> BivariatePoly {
        parse("(x-y)^6 - (x-y)^2*x^5 + x^8").unwrap()
    }

    fn rational_pairs(s: &LeadingPairSet) -> Vec<(Rational, Rational)> {
        assert!(s.theta.is_none());
        s.pairs.iter().map(|(c, d)| (c.coeff(0), d.coeff(0))).collect()
    }

    #[test]
    fn candidate_cases() {
        let s = leading_pair_candidates(nv(1, 2), &AlgebraicNumber::from_rational(int(-1))).unwrap();
        assert_eq!(s.case, PairCase::One);
        assert_eq!(rational_pairs(&s), vec![(int(1), int(-1)), (int(-1), int(-1))]);
        let s = leading_pair_candidates(nv(1, 1), &AlgebraicNumber::from_rational(int(1))).unwrap();
        assert_eq!(s.case, PairCase::ThreeA);
        assert_eq!(rational_pairs(&s), vec![(int(1), int(1)), (int(-1), int(-1))]);
        let s = leading_pair_candidates(nv(2, 1), &AlgebraicNumber::from_rational(int(4))).unwrap();
        assert_eq!(s.case, PairCase::Two);
        assert_eq!(rational_pairs(&s), vec![(rat(1, 4), int(1)), (rat(1, 4), int(-1))]);
        assert!(leading_pair_candidates(nv(1, 1), &AlgebraicNumber::from_rational(int(0))).is_err());
    }

    #[test]
    fn irrational_candidate() {
        let u0 = AlgebraicNumber::from_rational(int(2));
        let s = leading_pair_candidates(nv(3, 2), &u0).unwrap();
        assert_eq!(s.case, PairCase::One);
        let th = s.theta.clone().unwrap();
        assert!((th.to_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-9);
    }

    fn tpl6(nu: u32, c0: i64, d0: i64, order: usize) -> CurveTemplate {
        CurveTemplate {
            normal: nv(1, 1),
            nu,
            theta: None,
            c0: UniPoly::constant(int(c0)),
            d0: UniPoly::constant(int(d0)),
            unknowns: 2,
            order,
        }
    }

    #[test]
    fn example6_nu1_starts_with_one() {
        for (c0, d0) in [(1, 1), (-1, -1)] {
            let tpl = tpl6(1, c0, d0, 8);
            let coeffs = expand_template(&example6(), &tpl);
            let ring = tpl.ring();
            let first = coeffs.iter().position(|c| !c.is_empty()).unwrap();
            assert_eq!(first, 8);
            assert_eq!(ring.as_constant(&coeffs[8]), Some(UniPoly::one()));
        }
    }

    #[test]
    fn example6_nu2_t16_coefficient() {
        let tpl = tpl6(2, 1, 1, 16);
        let coeffs = expand_template(&example6(), &tpl);
        let ring = tpl.ring();
        assert!(coeffs[..16].iter().all(|c| c.is_empty()));
        let (c1, d1) = (ring.var(0), ring.var(2));
        let diff = ring.sub(&c1, &d1);
        let expected = ring.sub(&ring.one(), &ring.mul(&diff, &diff));
        assert_eq!(coeffs[16], expected);
    }

    #[test]
    fn zero_polynomial_expands_to_zero() {
        let coeffs = expand_template(&BivariatePoly::zero(), &tpl6(1, 1, 1, 6));
        assert!(coeffs.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn example6_search() {
        let u0 = AlgebraicNumber::from_rational(int(1));
        let faces = vec![(nv(1, 1), vec![u0])];
        let budget = Budget { max_nu: 2, ..Budget::default() };
        let (cert, report) = search_descent(&example6(), &faces, &budget);
        let cert = cert.unwrap();
        assert_eq!(cert.sigma, 16);
        assert!(verify_certificate(&example6(), &cert));
        assert_eq!(cert.curve.x_display(), "t^2");
        assert_eq!(cert.curve.y_display(), "t^2 + 2*t^3");
        assert_eq!(cert.leading_rational(), Some(int(-3)));
        assert!(report.attempts.iter().filter(|a| a.nu == 1).all(|a| !a.found));
        let budget = Budget { max_nu: 1, ..Budget::default() };
        assert!(search_descent(&example6(), &faces, &budget).0.is_none());
    }

    #[test]
    fn power_solution_zeroes_linear_square() {
        // (c1 - d1)^2 at t^k followed by a negative constant.
        let tpl = tpl6(1, 1, 1, 4);
        let ring = tpl.ring();
        let diff = ring.sub(&ring.var(0), &ring.var(2));
        let sq = ring.mul(&diff, &diff);
        let shifted = ring.add(&diff, &ring.one());
        let sq2 = ring.mul(&shifted, &shifted);
        let dfs = Dfs { ring: ring.clone(), grid: &[], nodes: 0, max_nodes: 10 };
        assert_eq!(dfs.power_solutions(&sq).len(), 2);
        let sols = dfs.power_solutions(&sq2);
        assert!(sols.iter().all(|(v, s)| ring.substitute(&sq2, *v, s).is_empty()));
    }

    #[test]
    fn rescaling_lands_in_candidate_set() {
        // Scaling t by tau maps (c0, d0) to (c0 tau^A1, d0 tau^A2); with a rational tau
        // the image of a candidate pair is another valid pair, and undoing it recovers the candidate.
        for (a1, a2, u0) in [(1, 2, int(-1)), (2, 1, int(4)), (1, 1, int(1)), (3, 2, int(8))] {
            let a = nv(a1, a2);
            let set = leading_pair_candidates(a, &AlgebraicNumber::from_rational(u0.clone())).unwrap();
            for (c, d) in rational_pairs(&set) {
                for tau in [rat(1, 2), int(3), rat(2, 5)] {
                    let c0 = &c * num_traits::pow(tau.clone(), a1 as usize);
                    let d0 = &d * num_traits::pow(tau.clone(), a2 as usize);
                    let lhs = num_traits::pow(d0.clone(), a1 as usize) / num_traits::pow(c0.clone(), a2 as usize);
                    assert_eq!(lhs, u0);
                    let inv = Rational::one() / &tau;
                    let back = (
                        c0 * num_traits::pow(inv.clone(), a1 as usize),
                        d0 * num_traits::pow(inv, a2 as usize),
                    );
                    assert!(rational_pairs(&set).contains(&back));
                }
            }
        }
    }
}
