//! Fixture corpus and random generators shared by the integration tests.
#![allow(dead_code)]

use locmin::geometry::NormalVector;
use locmin::poly::{int, parse, rat, BivariatePoly, Rational, UniPoly};
use locmin::quasiform::{form_from_char, root_factor};
use rand::seq::SliceRandom;
use rand::Rng;

pub const P4: &str = "2*x^4*y^2 + 3*x^2*y^3 + 2*y^4";
pub const P1: &str = "2*x*y^2 - 3*x^2*y^3 + 5*x^3*y^4";
pub const P2: &str = "2*x*y^2 + 3*x^3*y^2 - 5*x^5*y^2";
pub const P3: &str = "2*x*y^2 + 3*x*y^3 + 4*x*y^5";
pub const EX4_Y: &str = "x^2*(x-y)^2 + 2*y^5";
pub const EX4_X: &str = "y^2*(x-y)^2 + 2*x^5";
pub const EX6: &str = "(x-y)^6 - (x-y)^2*x^5 + x^8";

pub fn example3(a: &str) -> String {
    format!("x^2*y^6 - (2 + ({a}))*x^4*y^5 + x^6*y^4 + y^10 - 10*x*y^9 - 0.1*x^8*y^4")
}

pub fn example5(a: &str) -> String {
    format!("y^2*(x^2+y)^2 + 3*({a})*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3")
}

/// Named polynomials covering every branch of the decision procedure.
pub fn corpus() -> Vec<(String, BivariatePoly)> {
    let mut v: Vec<(String, String)> = vec![
        ("p4".into(), P4.into()),
        ("p1".into(), P1.into()),
        ("p2".into(), P2.into()),
        ("p3".into(), P3.into()),
        ("example3(0.01)".into(), example3("0.01")),
        ("example3(-0.01)".into(), example3("-0.01")),
        ("example3(0)".into(), example3("0")),
        ("example4 y-axis".into(), EX4_Y.into()),
        ("example4 x-axis".into(), EX4_X.into()),
        ("example5(1.01)".into(), example5("1.01")),
        ("example5(1)".into(), example5("1")),
        ("example5(0.99)".into(), example5("0.99")),
        ("example6".into(), EX6.into()),
        ("example5 without phi3".into(), "y^2*(x^2+y)^2 + 3*1.01*x^6*y^2 + 3*x^4*y^3".into()),
        ("example6 two forms".into(), "(x-y)^6 - (x-y)^2*x^5".into()),
    ];
    for (s, name) in [
        ("x^2 + y^2", "sum of squares"),
        ("x^2*y^2", "monomial"),
        ("x^4 + y^4 + x^2*y^2", "quartic"),
        ("x^2 - y^4 + x*y^3", "saddle"),
        ("x^3 + y^2", "cusp"),
        ("(y - x^2)^2", "parabola valley"),
        ("(y - x^2)*(y - 3*x^2)", "Peano"),
        ("(y-x^2)^4 + x^6*y^2", "case 1 positive"),
        ("(y-x^2)^4 - x^6*y^2", "case 1 negative"),
        ("(y-x^2)^4 + x^3*y^2*(y-x^2)", "case 4"),
        ("(y-x^2)^4 + x^2*y^2*(y-x^2)^2", "case 2 positive"),
        ("(y-x^2)^4 - x^2*y^2*(y-x^2)^2", "case 2 negative"),
        ("(y-x^2)^4 + y^2*(y-x^2)^3", "case 4 odd"),
        ("(y-x^2)^4 - y^2*(y-x^2)^4", "case 3"),
        ("(x^2 - 2*y^2)^2 + x^6", "irrational root"),
        ("(x^2 - 2*y^2)^2 - x^5", "irrational root odd"),
        ("(y^3 - 2*x^2)^2 + x^5*y^3", "irrational root A=(3,2)"),
        ("x^2*y^2*(x-y)^2 + x^8 + y^8", "three factors"),
        ("x^6 + y^6 - 3*x^2*y^2", "Motzkin-like saddle"),
        ("x^4*y^2 + x^2*y^4 + x^6 + y^6", "sextic cross terms"),
        ("(x - y)^2 + x^3*y^3 + x^8", "odd cross term"),
    ] {
        v.push((name.to_string(), s.to_string()));
    }
    let mut out: Vec<(String, BivariatePoly)> = v.into_iter().map(|(n, s)| (n, parse(&s).expect("fixture parses"))).collect();
    let swapped: Vec<(String, BivariatePoly)> = out.iter().map(|(n, p)| (format!("{n} swapped"), p.swap_xy())).collect();
    out.extend(swapped);
    out
}

pub const NORMALS: [(u32, u32); 4] = [(1, 1), (1, 2), (2, 1), (1, 3)];

const ROOTS: [(i64, i64); 7] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1)];

fn linear(r: &Rational) -> UniPoly {
    UniPoly::from_coeffs(vec![-r.clone(), int(1)])
}

/// `phi_1 + phi_2` with `g_1` a positive multiple of even powers of real linear factors.
#[derive(Clone, Debug)]
pub struct TwoForm {
    pub p: BivariatePoly,
    pub a: NormalVector,
    pub g1: UniPoly,
    pub g2: UniPoly,
    pub roots: Vec<Rational>,
}

pub fn random_two_form<R: Rng>(rng: &mut R) -> TwoForm {
    let (a1, a2) = *NORMALS.choose(rng).unwrap();
    let a = NormalVector::new(a1, a2).unwrap();
    let mut pool: Vec<Rational> = ROOTS.iter().map(|&(n, d)| rat(n, d)).collect();
    pool.shuffle(rng);
    let nroots = rng.gen_range(1..=2);
    let roots: Vec<Rational> = pool[..nroots].to_vec();
    let mut g1 = UniPoly::constant(int(rng.gen_range(1..=3)));
    let mut mults = Vec::new();
    for r in &roots {
        let k = if nroots == 1 && rng.gen_bool(0.5) { 4 } else { 2 };
        mults.push(k);
        g1 = &g1 * &linear(r).pow(k);
    }
    if g1.degree().unwrap() <= 2 && rng.gen_bool(0.3) {
        g1 = &g1 * &UniPoly::from_i64s(&[1, 0, 1]);
    }
    let mut g2 = UniPoly::constant(int(*[-3, -2, -1, 1, 2, 3].choose(rng).unwrap()));
    for (r, k) in roots.iter().zip(&mults) {
        if rng.gen_bool(0.6) {
            let l = rng.gen_range(0..=k + 1);
            g2 = &g2 * &linear(r).pow(l);
        }
    }
    if rng.gen_bool(0.4) {
        let c0 = *[-2, -1, 1, 2].choose(rng).unwrap();
        let c1 = *[-1, 1, 2].choose(rng).unwrap();
        g2 = &g2 * &UniPoly::from_i64s(&[c0, c1]);
    }
    let d1 = g1.degree().unwrap() as u32;
    let d2 = g2.degree().unwrap() as u32;
    let mut alpha1 = d1 * a2 + 2 * rng.gen_range(0..=1);
    let mut beta1 = 2 * rng.gen_range(0..=1);
    if rng.gen_bool(0.1) {
        alpha1 += 1;
    } else if rng.gen_bool(0.1) {
        beta1 += 1;
    }
    let b1 = a1 * alpha1 + a2 * beta1;
    let chi1 = d2 * a2 + rng.gen_range(0..=3);
    let mut eta1 = rng.gen_range(0..=3);
    while a1 * chi1 + a2 * eta1 <= b1 {
        eta1 += 1;
    }
    let phi1 = form_from_char(a, (alpha1, beta1), &g1).unwrap().to_poly();
    let phi2 = form_from_char(a, (chi1, eta1), &g2).unwrap().to_poly();
    TwoForm { p: &phi1 + &phi2, a, g1, g2, roots }
}

/// `q` times an even power of a root factor, with `q` a random two-form sum.
pub struct FactoredFixture {
    pub p: BivariatePoly,
    pub q: BivariatePoly,
    pub a: NormalVector,
    pub u0: Rational,
    pub l: u32,
}

pub fn random_factored<R: Rng>(rng: &mut R) -> FactoredFixture {
    let t = random_two_form(rng);
    let u0 = if rng.gen_bool(0.5) {
        t.roots.choose(rng).unwrap().clone()
    } else {
        let (n, d) = *ROOTS.choose(rng).unwrap();
        rat(n, d)
    };
    let l = *[2u32, 4].choose(rng).unwrap();
    let p = &root_factor(t.a, &u0).pow(l) * &t.p;
    FactoredFixture { p, q: t.p, a: t.a, u0, l }
}

/// A univariate polynomial with known rational roots and multiplicities.
pub struct Planted {
    pub g: UniPoly,
    /// Sorted distinct roots with multiplicities.
    pub roots: Vec<(Rational, u32)>,
    pub nonnegative: bool,
}

pub fn random_planted<R: Rng>(rng: &mut R) -> Planted {
    let mut grid: Vec<i64> = (-12..=12).collect();
    grid.shuffle(rng);
    let n = rng.gen_range(0..=4);
    let mut roots: Vec<(Rational, u32)> = Vec::new();
    let mut deg = 0;
    for &k in grid.iter().take(n) {
        let m = rng.gen_range(1..=3).min(8 - deg);
        if m == 0 {
            break;
        }
        deg += m;
        roots.push((rat(k, 4), m));
    }
    let lc = [int(1), int(-1), int(2), int(-2), rat(3, 2), rat(-3, 2)].choose(rng).unwrap().clone();
    let mut g = UniPoly::constant(lc.clone());
    for (r, m) in &roots {
        g = &g * &linear(r).pow(*m);
    }
    if deg <= 6 && rng.gen_bool(0.4) {
        let c = [int(1), int(2), rat(1, 2)].choose(rng).unwrap().clone();
        g = &g * &UniPoly::from_coeffs(vec![c, int(0), int(1)]);
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    let nonnegative = lc > int(0) && roots.iter().all(|(_, m)| m % 2 == 0);
    Planted { g, roots, nonnegative }
}

pub fn random_support<R: Rng>(rng: &mut R, n: usize, max: u32) -> Vec<(u32, u32)> {
    (0..n).map(|_| (rng.gen_range(0..=max), rng.gen_range(0..=max))).collect()
}
