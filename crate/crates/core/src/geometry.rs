//! Lattice convex geometry of the Newton polygon: hull, Pareto set, corner
//! points and the southwestern edges with their integer normals.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{BivariatePoly, Exponent, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("convex hull of an empty point set")]
    EmptyInput,
}

/// Primitive direction `A = (a1, a2)` with both components positive and `gcd = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", try_from = "[u32; 2]")]
pub struct NormalVector {
    a1: u32,
    a2: u32,
}

impl NormalVector {
    /// Returns `None` unless both components are positive and coprime.
    pub fn new(a1: u32, a2: u32) -> Option<Self> {
        (a1 > 0 && a2 > 0 && a1.gcd(&a2) == 1).then_some(NormalVector { a1, a2 })
    }

    /// Divides by the gcd of two positive components.
    pub fn reduced(a1: u32, a2: u32) -> Option<Self> {
        if a1 == 0 || a2 == 0 {
            return None;
        }
        let g = a1.gcd(&a2);
        Some(NormalVector { a1: a1 / g, a2: a2 / g })
    }

    pub fn a1(&self) -> u32 {
        self.a1
    }

    pub fn a2(&self) -> u32 {
        self.a2
    }

    /// The direction `e = (-A2, A1)` along which forms are parametrised.
    pub fn e(&self) -> (i64, i64) {
        (-(self.a2 as i64), self.a1 as i64)
    }

    /// `<A, k>`.
    pub fn dot(&self, k: Exponent) -> u64 {
        self.a1 as u64 * k.0 as u64 + self.a2 as u64 * k.1 as u64
    }

    /// Ordering by the ratio `a1 / a2`.
    pub fn cmp_ratio(&self, other: &Self) -> Ordering {
        (self.a1 as u64 * other.a2 as u64).cmp(&(other.a1 as u64 * self.a2 as u64))
    }

    /// Swapped components, for the mirror image `p(y, x)`.
    pub fn swapped(&self) -> Self {
        NormalVector { a1: self.a2, a2: self.a1 }
    }
}

impl std::fmt::Display for NormalVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a1, self.a2)
    }
}

impl From<NormalVector> for [u32; 2] {
    fn from(a: NormalVector) -> Self {
        [a.a1, a.a2]
    }
}

impl TryFrom<[u32; 2]> for NormalVector {
    type Error = String;
    fn try_from(v: [u32; 2]) -> Result<Self, String> {
        NormalVector::new(v[0], v[1]).ok_or_else(|| format!("invalid normal vector ({}, {})", v[0], v[1]))
    }
}

/// Convex hull of a finite lattice set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    /// Corner points, counterclockwise for dimension 2, by lexicographic order otherwise.
    pub vertices: Vec<Exponent>,
    pub dimension: u8,
}

/// A face on the southwestern boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    /// Support points on the face, by increasing alpha.
    pub points: Vec<Exponent>,
    /// Normal for dimension-1 faces.
    pub normal: Option<NormalVector>,
    /// 1: single corner; 2: two corners only; 3: at least three points.
    pub group: u8,
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Monotone-chain hull; collinear points are not vertices.
pub fn hull<'a, I: IntoIterator<Item = &'a Exponent>>(points: I) -> Result<Polytope, GeometryError> {
    let pts: Vec<Exponent> = points.into_iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    match pts.len() {
        0 => return Err(GeometryError::EmptyInput),
        1 => return Ok(Polytope { vertices: pts, dimension: 0 }),
        _ => {}
    }
    let mut lower: Vec<Exponent> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Exponent> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() <= 2 {
        let first = pts[0];
        let last = pts[pts.len() - 1];
        return Ok(Polytope { vertices: vec![first, last], dimension: 1 });
    }
    Ok(Polytope { vertices: lower, dimension: 2 })
}

/// Pareto-minimal points under the componentwise order.
pub fn pareto<'a, I: IntoIterator<Item = &'a Exponent>>(points: I) -> BTreeSet<Exponent> {
    let pts: BTreeSet<Exponent> = points.into_iter().copied().collect();
    let mut out = BTreeSet::new();
    let mut best_beta: Option<u32> = None;
    for &(a, b) in &pts {
        if best_beta.is_none_or(|bb| b < bb) {
            out.insert((a, b));
            best_beta = Some(b);
        }
    }
    out
}

/// Pareto-minimal corner points of the Newton polygon that some positive direction isolates.
///
/// A Pareto point can be a hull vertex on the far side only; those never lead a form and are skipped.
pub fn omega(p: &BivariatePoly) -> BTreeSet<Exponent> {
    let support = p.support();
    let Ok(h) = hull(&support) else {
        return BTreeSet::new();
    };
    let corners: BTreeSet<Exponent> = h.vertices.into_iter().collect();
    // Lower convex chain of the Pareto staircase, collinear points dropped.
    let mut chain: Vec<Exponent> = Vec::new();
    for k in pareto(&support) {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], k) <= 0 {
            chain.pop();
        }
        chain.push(k);
    }
    chain.into_iter().filter(|k| corners.contains(k)).collect()
}

/// Points of `support` minimising `<A, k>`, by increasing alpha.
pub fn arg_min(support: &BTreeSet<Exponent>, a: NormalVector) -> Vec<Exponent> {
    let m = support.iter().map(|&k| a.dot(k)).min();
    support.iter().copied().filter(|&k| Some(a.dot(k)) == m).collect()
}

fn edge_normal(from: Exponent, to: Exponent) -> Option<NormalVector> {
    // Outward normal of a counterclockwise edge is (dy, -dx); southwestern iff both negative.
    let dx = to.0 as i64 - from.0 as i64;
    let dy = to.1 as i64 - from.1 as i64;
    let (n1, n2) = (dy, -dx);
    if n1 < 0 && n2 < 0 {
        NormalVector::reduced((-n1) as u32, (-n2) as u32)
    } else {
        None
    }
}

/// Southwestern dimension-1 faces ordered by increasing `a1/a2`, then
/// dimension-0 records for the points of [`omega`].
pub fn southwest_edges(p: &BivariatePoly) -> Vec<FaceRecord> {
    let support = p.support();
    let Ok(h) = hull(&support) else {
        return Vec::new();
    };
    let om = omega(p);
    let mut normals: Vec<NormalVector> = Vec::new();
    match h.dimension {
        2 => {
            let n = h.vertices.len();
            for i in 0..n {
                if let Some(a) = edge_normal(h.vertices[i], h.vertices[(i + 1) % n]) {
                    normals.push(a);
                }
            }
        }
        1 => {
            let (k1, k2) = (h.vertices[0], h.vertices[1]);
            if k2.0 > k1.0 && k2.1 < k1.1 {
                normals.push(NormalVector::reduced(k1.1 - k2.1, k2.0 - k1.0).expect("positive"));
            }
        }
        _ => {}
    }
    normals.sort_by(|a, b| a.cmp_ratio(b));
    let mut out: Vec<FaceRecord> = normals
        .into_iter()
        .map(|a| {
            let points = arg_min(&support, a);
            let group = if points.len() >= 3 { 3 } else { 2 };
            FaceRecord { points, normal: Some(a), group }
        })
        .collect();
    out.extend(om.into_iter().map(|k| FaceRecord { points: vec![k], normal: None, group: 1 }));
    out
}

/// Group-3 southwestern edges, ordered by increasing `a1/a2`.
pub fn group3_faces(p: &BivariatePoly) -> Vec<FaceRecord> {
    southwest_edges(p).into_iter().filter(|f| f.group == 3).collect()
}

/// Result of the corner-sign test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CornerCheck {
    Holds,
    Violated {
        corner: Exponent,
        coef: Rational,
        /// Signs `(C1, C2)` with `coef * C1^alpha * C2^beta < 0`.
        witness: (i8, i8),
    },
}

/// Every corner in [`omega`] must have a positive coefficient and even exponents.
pub fn check_corner_condition(p: &BivariatePoly) -> CornerCheck {
    use num_traits::Signed;
    for k in omega(p) {
        let c = p.coeff(k.0, k.1).expect("support point").clone();
        let witness = if c.is_negative() {
            (1, 1)
        } else if k.0 % 2 == 1 {
            (-1, 1)
        } else if k.1 % 2 == 1 {
            (1, -1)
        } else {
            continue;
        };
        return CornerCheck::Violated { corner: k, coef: c, witness };
    }
    CornerCheck::Holds
}

/// A primitive `A` for which `corner` is the unique minimiser of `<A, k>` over the support.
pub fn isolating_normal(p: &BivariatePoly, corner: Exponent) -> Option<NormalVector> {
    let support = p.support();
    let bound = p.total_degree().max(1) + 2;
    let mut candidates: Vec<NormalVector> = Vec::new();
    for a1 in 1..=bound {
        for a2 in 1..=bound {
            if let Some(a) = NormalVector::new(a1, a2) {
                candidates.push(a);
            }
        }
    }
    candidates.sort_by_key(|a| (a.a1 + a.a2, a.a1));
    candidates.into_iter().find(|&a| arg_min(&support, a) == vec![corner])
}

/// Serializable summary of the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonModel {
    pub support: Vec<Exponent>,
    pub hull: Polytope,
    pub pareto: Vec<Exponent>,
    pub omega: Vec<Exponent>,
    pub faces: Vec<FaceRecord>,
}

/// The full face model of `p`.
pub fn newton_model(p: &BivariatePoly) -> Result<NewtonModel, GeometryError> {
    let support = p.support();
    let h = hull(&support)?;
    Ok(NewtonModel {
        support: support.iter().copied().collect(),
        hull: h,
        pareto: pareto(&support).into_iter().collect(),
        omega: omega(p).into_iter().collect(),
        faces: southwest_edges(p),
    })
}
